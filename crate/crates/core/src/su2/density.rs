//! Density matrices in the coherent-state picture: the `Q` function, the
//! operators `P̂_{l,m}` that carry a spherical-harmonic expansion of `P`,
//! and the group-average form of the coherent projector.

use num_complex::Complex;
use num_traits::Zero;

use crate::error::{domain, Error, Result};
use crate::mathcore::linalg::{complex_weighted_outer_sum, inner, weighted_matrix_sum, ComplexMatrix};
use crate::mathcore::par_map;
use crate::mathcore::quadrature::{EulerAngles, QuadratureGrid, SpherePoint};
use crate::mathcore::special::{clebsch_gordan, spherical_harmonic};
use crate::scalar::{HalfInt, Real};

use super::rep::SpinRep;
use super::states::{coherent_state, grid_states};

/// Hermitian, unit-trace, positive semidefinite operator.
#[derive(Clone, Debug)]
pub struct DensityMatrix<T> {
    matrix: ComplexMatrix<T>,
    min_eigenvalue: T,
}

impl<T: Real> DensityMatrix<T> {
    pub fn new(matrix: ComplexMatrix<T>) -> Result<Self> {
        let min_eigenvalue = check_hermitian_unit_trace(&matrix)?;
        if min_eigenvalue < -T::tol(1e-10) {
            return Err(domain(format!("density matrix has eigenvalue {min_eigenvalue} < 0")));
        }
        Ok(Self { matrix, min_eigenvalue })
    }

    /// `|v><v|` for a unit vector.
    pub fn pure(v: &[Complex<T>]) -> Result<Self> {
        Self::new(ComplexMatrix::outer(v, v))
    }

    pub fn maximally_mixed(dim: usize) -> Self {
        let m = ComplexMatrix::identity(dim).scale_real(T::one() / T::from_usize_lossy(dim));
        Self {
            matrix: m,
            min_eigenvalue: T::one() / T::from_usize_lossy(dim),
        }
    }

    pub fn matrix(&self) -> &ComplexMatrix<T> {
        &self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn min_eigenvalue(&self) -> T {
        self.min_eigenvalue
    }
}

fn check_hermitian_unit_trace<T: Real>(m: &ComplexMatrix<T>) -> Result<T> {
    if !m.is_square() {
        return Err(Error::Dimension {
            expected: m.rows(),
            got: m.cols(),
        });
    }
    if !m.is_hermitian(T::tol(1e-12)) {
        return Err(domain(format!("operator is not Hermitian (defect {})", m.hermiticity_defect())));
    }
    let tr = m.trace();
    if (tr.re - T::one()).abs() > T::tol(1e-12) || tr.im.abs() > T::tol(1e-12) {
        return Err(domain(format!("trace {tr} differs from 1")));
    }
    Ok(m.hermitian_eigen()?.min())
}

/// `Q(n) = <μ, n|ρ|μ, n>`
pub fn q_function<T: Real>(rep: &SpinRep<T>, rho: &DensityMatrix<T>, mu: HalfInt, point: &SpherePoint<T>) -> Result<T> {
    if rho.dim() != rep.dim() {
        return Err(Error::Dimension {
            expected: rep.dim(),
            got: rho.dim(),
        });
    }
    let v = coherent_state(rep, mu, point)?;
    Ok(inner(&v, &rho.matrix.apply(&v)).re)
}

fn check_lm(l: u32, m: i32) -> Result<()> {
    if m.unsigned_abs() > l {
        return Err(domain(format!("|m| = {} exceeds l = {l}", m.abs())));
    }
    Ok(())
}

/// `∫ dn Y_{l,m}(n) |μ, n><μ, n|` by quadrature. Vanishes identically for
/// `l > 2j`, returned as an exact zero matrix.
pub fn p_operator<T: Real>(
    rep: &SpinRep<T>,
    mu: HalfInt,
    l: u32,
    m: i32,
    grid: &QuadratureGrid<T, SpherePoint<T>>,
) -> Result<ComplexMatrix<T>> {
    check_lm(l, m)?;
    grid.require("sphere_dn")?;
    rep.check_weight(mu)?;
    if l as i32 > rep.j().doubled() {
        return Ok(ComplexMatrix::zeros(rep.dim(), rep.dim()));
    }
    let states = grid_states(rep, mu, grid)?;
    let weights: Vec<Complex<T>> = grid
        .iter()
        .map(|(p, w)| spherical_harmonic(l, m, p.theta, p.phi).map(|y| y * w))
        .collect::<Result<_>>()?;
    Ok(complex_weighted_outer_sum(&states, &weights, rep.dim()))
}

/// Closed form of [`p_operator`]:
/// `<ν'|P̂_{l,m}|ν> = sqrt(4π(2l+1))/(2j+1) (j,ν; l,m | j,ν') (j,μ; l,0 | j,μ)`.
pub fn p_operator_closed_form<T: Real>(rep: &SpinRep<T>, mu: HalfInt, l: u32, m: i32) -> Result<ComplexMatrix<T>> {
    check_lm(l, m)?;
    rep.check_weight(mu)?;
    let j = rep.j();
    let dim = rep.dim();
    let lh = HalfInt::from_int(l as i32);
    let mh = HalfInt::from_int(m);
    let diag = clebsch_gordan::<T>(j, mu, lh, HalfInt::ZERO, j, mu)?;
    let pref = (T::lit(4.0) * T::PI() * T::from_i64_lossy(2 * l as i64 + 1)).sqrt() / T::from_usize_lossy(dim);
    let mut out = ComplexMatrix::zeros(dim, dim);
    for c in 0..dim {
        let nu = rep.weight_of(c);
        let nu_p = nu + mh;
        if nu_p.abs() > j {
            continue;
        }
        let r = rep.index(nu_p)?;
        let cg = clebsch_gordan::<T>(j, nu, lh, mh, j, nu_p)?;
        out[(r, c)] = Complex::new(pref * cg * diag, T::zero());
    }
    Ok(out)
}

/// Coefficients `C_{l,m}` of an expansion in spherical harmonics.
#[derive(Clone, Debug, PartialEq)]
pub struct PCoefficients<T> {
    lmax: u32,
    values: Vec<Complex<T>>,
}

impl<T: Real> PCoefficients<T> {
    pub fn zeros(lmax: u32) -> Self {
        let n = ((lmax + 1) * (lmax + 1)) as usize;
        Self {
            lmax,
            values: vec![Complex::zero(); n],
        }
    }

    #[inline]
    fn slot(l: u32, m: i32) -> usize {
        ((l * l + l) as i64 + m as i64) as usize
    }

    pub fn lmax(&self) -> u32 {
        self.lmax
    }

    pub fn get(&self, l: u32, m: i32) -> Complex<T> {
        if l > self.lmax || m.unsigned_abs() > l {
            return Complex::zero();
        }
        self.values[Self::slot(l, m)]
    }

    pub fn set(&mut self, l: u32, m: i32, c: Complex<T>) -> Result<()> {
        check_lm(l, m)?;
        if l > self.lmax {
            return Err(domain(format!("l = {l} exceeds lmax = {}", self.lmax)));
        }
        self.values[Self::slot(l, m)] = c;
        Ok(())
    }

    pub fn iter(&self) -> impl Iterator<Item = (u32, i32, Complex<T>)> + '_ {
        (0..=self.lmax).flat_map(move |l| (-(l as i32)..=l as i32).map(move |m| (l, m, self.get(l, m))))
    }
}

/// Operator `Σ C_{l,m} P̂_{l,m}` together with its spectral floor; the `P`
/// symbol need not be a positive function, so positivity is only reported.
#[derive(Clone, Debug)]
pub struct OperatorFromP<T> {
    pub operator: ComplexMatrix<T>,
    pub min_eigenvalue: T,
}

impl<T: Real> OperatorFromP<T> {
    pub fn into_density(self) -> Result<DensityMatrix<T>> {
        DensityMatrix::new(self.operator)
    }
}

/// `ρ = Σ_{l,m} C_{l,m} P̂_{l,m}`. Terms with `l > 2j` contribute nothing.
pub fn p_to_rho<T: Real>(rep: &SpinRep<T>, mu: HalfInt, coeffs: &PCoefficients<T>) -> Result<OperatorFromP<T>> {
    rep.check_weight(mu)?;
    let mut scale = T::zero();
    for (_, _, c) in coeffs.iter() {
        scale = scale.max(c.norm());
    }
    for (l, m, c) in coeffs.iter() {
        let sign = if m % 2 == 0 { T::one() } else { -T::one() };
        let mirror = coeffs.get(l, -m).conj() * sign;
        if (c - mirror).norm() > T::tol(1e-10) * (T::one() + scale) {
            return Err(domain(format!("coefficients violate C(l,-m) = (-1)^m conj C(l,m) at l = {l}, m = {m}")));
        }
    }
    let dim = rep.dim();
    let mut rho = ComplexMatrix::zeros(dim, dim);
    for (l, m, c) in coeffs.iter() {
        if l as i32 > rep.j().doubled() || c == Complex::zero() {
            continue;
        }
        rho = &rho + &p_operator_closed_form(rep, mu, l, m)?.scale(c);
    }
    let sym = (&rho + &rho.adjoint()).scale_real(T::lit(0.5));
    let min_eigenvalue = sym.hermitian_eigen()?.min();
    Ok(OperatorFromP {
        operator: rho,
        min_eigenvalue,
    })
}

/// Inverse of [`p_to_rho`] on operators of the spin-`j` space.
///
/// The `P̂_{l,m}` are orthogonal in the Hilbert–Schmidt product, so each
/// coefficient is a single projection. Fails with [`Error::Singular`] when
/// some `P̂_{l,m}` with `l ≤ 2j` vanishes, which happens for `μ = 0` and odd
/// `l`: those weights do not determine every operator.
pub fn rho_to_p<T: Real>(rep: &SpinRep<T>, mu: HalfInt, rho: &ComplexMatrix<T>) -> Result<PCoefficients<T>> {
    rep.check_weight(mu)?;
    if rho.rows() != rep.dim() || rho.cols() != rep.dim() {
        return Err(Error::Dimension {
            expected: rep.dim(),
            got: rho.rows(),
        });
    }
    let lmax = rep.j().doubled() as u32;
    let mut out = PCoefficients::zeros(lmax);
    for l in 0..=lmax {
        for m in -(l as i32)..=l as i32 {
            let p = p_operator_closed_form(rep, mu, l, m)?;
            let n2 = p.hs_inner(&p).re;
            if n2 < T::tol(1e-24) {
                return Err(Error::Singular);
            }
            out.set(l, m, p.hs_inner(rho) / n2)?;
        }
    }
    Ok(out)
}

/// `(2j+1)/(16π²) ∫ dg conj(<n|T(g)|n>) T(g)` over Euler angles with
/// `γ ∈ [0, 4π)`.
pub fn group_average_projector<T: Real>(
    rep: &SpinRep<T>,
    mu: HalfInt,
    point: &SpherePoint<T>,
    haar_grid: &QuadratureGrid<T, EulerAngles<T>>,
) -> Result<ComplexMatrix<T>> {
    haar_grid.require("haar")?;
    let n = coherent_state(rep, mu, point)?;
    let mats = par_map(haar_grid.nodes(), |e| rep.euler_operator(e));
    let norm = T::from_usize_lossy(rep.dim()) / (T::lit(16.0) * T::PI() * T::PI());
    let weights: Vec<Complex<T>> = mats
        .iter()
        .zip(haar_grid.weights())
        .map(|(m, &w)| inner(&n, &m.apply(&n)).conj() * (w * norm))
        .collect();
    weighted_matrix_sum(&mats, &weights)
}
