//! Heisenberg–Weyl coherent states on a truncated Fock space, the group
//! law of `W_N`, and the integrality test for period lattices.

use num_complex::Complex;
use num_traits::Zero;

use crate::error::{domain, Error, Result};
use crate::mathcore::linalg::{norm, weighted_outer_sum, ComplexMatrix, ComplexVector, HermitianEigen};
use crate::mathcore::par_map;
use crate::mathcore::quadrature::QuadratureGrid;
use crate::scalar::Real;

/// Element `(t, α)` of `W_N`.
#[derive(Clone, Debug, PartialEq)]
pub struct WeylElement<T> {
    pub t: T,
    pub alpha: Vec<Complex<T>>,
}

impl<T: Real> WeylElement<T> {
    pub fn new(t: T, alpha: Vec<Complex<T>>) -> Self {
        Self { t, alpha }
    }

    pub fn identity(n_modes: usize) -> Self {
        Self {
            t: T::zero(),
            alpha: vec![Complex::zero(); n_modes],
        }
    }

    pub fn n_modes(&self) -> usize {
        self.alpha.len()
    }

    /// `(s, α)(t, β) = (s + t + Im(α·β̄), α + β)`
    pub fn compose(&self, rhs: &Self) -> Result<Self> {
        if self.n_modes() != rhs.n_modes() {
            return Err(Error::Dimension {
                expected: self.n_modes(),
                got: rhs.n_modes(),
            });
        }
        let cross: T = self.alpha.iter().zip(&rhs.alpha).map(|(a, b)| (a * b.conj()).im).sum();
        Ok(Self {
            t: self.t + rhs.t + cross,
            alpha: self.alpha.iter().zip(&rhs.alpha).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn inverse(&self) -> Self {
        Self {
            t: -self.t,
            alpha: self.alpha.iter().map(|a| -a).collect(),
        }
    }
}

/// `N` bosonic modes, each truncated at occupation `cutoff`.
#[derive(Clone, Debug)]
pub struct FockSpace<T> {
    n_modes: usize,
    cutoff: usize,
    annihilators: Vec<ComplexMatrix<T>>,
    quadrature_eigen: HermitianEigen<T>,
}

/// Largest total dimension a multimode space may have.
pub const MAX_FOCK_DIM: usize = 4096;

pub const DEFAULT_CUTOFF: usize = 64;

impl<T: Real> FockSpace<T> {
    pub fn new(n_modes: usize, cutoff: usize) -> Result<Self> {
        if n_modes == 0 || cutoff == 0 {
            return Err(domain("need at least one mode and a positive cutoff"));
        }
        let single = cutoff + 1;
        let dim = single
            .checked_pow(n_modes as u32)
            .filter(|&d| d <= MAX_FOCK_DIM)
            .ok_or_else(|| domain(format!("Fock dimension {single}^{n_modes} exceeds {MAX_FOCK_DIM}")))?;
        let a1 = ComplexMatrix::from_fn(single, single, |r, c| {
            if c == r + 1 {
                Complex::new(T::from_usize_lossy(c).sqrt(), T::zero())
            } else {
                Complex::zero()
            }
        });
        let id = ComplexMatrix::identity(single);
        let annihilators = (0..n_modes)
            .map(|k| {
                let mut m = ComplexMatrix::identity(1);
                for i in 0..n_modes {
                    m = m.kron(if i == k { &a1 } else { &id });
                }
                debug_assert_eq!(m.rows(), dim);
                m
            })
            .collect();
        // i(a† - a) is Hermitian; exp(r(a† - a)) = exp(-ir · i(a† - a))
        let x = (&a1.adjoint() - &a1).scale(Complex::new(T::zero(), T::one()));
        let quadrature_eigen = x.hermitian_eigen()?;
        Ok(Self {
            n_modes,
            cutoff,
            annihilators,
            quadrature_eigen,
        })
    }

    pub fn single_mode(cutoff: usize) -> Result<Self> {
        Self::new(1, cutoff)
    }

    pub fn n_modes(&self) -> usize {
        self.n_modes
    }

    pub fn cutoff(&self) -> usize {
        self.cutoff
    }

    pub fn dim(&self) -> usize {
        (self.cutoff + 1).pow(self.n_modes as u32)
    }

    pub fn annihilators(&self) -> &[ComplexMatrix<T>] {
        &self.annihilators
    }

    /// Occupation numbers of basis index `i`, first mode most significant.
    pub fn occupations(&self, mut i: usize) -> Vec<usize> {
        let b = self.cutoff + 1;
        let mut occ = vec![0; self.n_modes];
        for slot in occ.iter_mut().rev() {
            *slot = i % b;
            i /= b;
        }
        occ
    }

    pub fn vacuum(&self) -> ComplexVector<T> {
        crate::mathcore::linalg::basis_vector(self.dim(), 0)
    }

    /// Single-mode number state `|n>`.
    pub fn number_state(&self, n: usize) -> Result<ComplexVector<T>> {
        if self.n_modes != 1 || n > self.cutoff {
            return Err(domain(format!("number state {n} unavailable in this space")));
        }
        Ok(crate::mathcore::linalg::basis_vector(self.dim(), n))
    }

    /// Largest deviation from `[a_i, a_j†] = δ_ij I` and `[a_i, a_j] = 0`,
    /// ignoring rows and columns at the truncation edge.
    pub fn commutator_defect(&self) -> T {
        let keep: Vec<usize> = (0..self.dim())
            .filter(|&i| self.occupations(i).iter().all(|&o| o < self.cutoff))
            .collect();
        let mut worst = T::zero();
        for (i, ai) in self.annihilators.iter().enumerate() {
            for (j, aj) in self.annihilators.iter().enumerate() {
                let c = ai.commutator(&aj.adjoint());
                let z = ai.commutator(aj);
                for &r in &keep {
                    for &s in &keep {
                        let expect = if i == j && r == s { T::one() } else { T::zero() };
                        worst = worst.max((c[(r, s)] - Complex::new(expect, T::zero())).norm());
                        worst = worst.max(z[(r, s)].norm());
                    }
                }
            }
        }
        worst
    }

    fn single_mode_displacement(&self, alpha: Complex<T>) -> ComplexMatrix<T> {
        if alpha.is_zero() {
            return ComplexMatrix::identity(self.cutoff + 1);
        }
        let r = alpha.norm();
        let phi = alpha.arg();
        let d = self.quadrature_eigen.map_spectrum(|l| Complex::from_polar(T::one(), -r * l));
        // e^{iφn} D(r) e^{-iφn}
        ComplexMatrix::from_fn(d.rows(), d.cols(), |a, b| {
            d[(a, b)] * Complex::from_polar(T::one(), phi * (T::from_usize_lossy(a) - T::from_usize_lossy(b)))
        })
    }

    fn single_mode_displace_vector(&self, alpha: Complex<T>, v: &[Complex<T>]) -> ComplexVector<T> {
        if alpha.is_zero() {
            return v.to_vec();
        }
        let r = alpha.norm();
        let phi = alpha.arg();
        let rot = |v: &[Complex<T>], s: T| -> ComplexVector<T> {
            v.iter()
                .enumerate()
                .map(|(n, c)| c * Complex::from_polar(T::one(), s * phi * T::from_usize_lossy(n)))
                .collect()
        };
        let w = rot(v, -T::one());
        let w = self.quadrature_eigen.apply_function(|l| Complex::from_polar(T::one(), -r * l), &w);
        rot(&w, T::one())
    }

    fn check_modes(&self, got: usize) -> Result<()> {
        if got != self.n_modes {
            return Err(Error::Dimension {
                expected: self.n_modes,
                got,
            });
        }
        Ok(())
    }
}

/// `D(α)` on the truncated space, with a flag set when some `|α_i|`
/// exceeds `cutoff/4`, beyond which truncation error is not controlled.
#[derive(Clone, Debug)]
pub struct Displacement<T> {
    pub matrix: ComplexMatrix<T>,
    pub truncation_warning: bool,
}

fn beyond_validity<T: Real>(space: &FockSpace<T>, alpha: &[Complex<T>]) -> bool {
    let limit = T::from_usize_lossy(space.cutoff) / T::lit(4.0);
    alpha.iter().any(|a| a.norm() > limit)
}

/// `D(α) = exp(α·a† - ᾱ·a)`
pub fn displacement_operator<T: Real>(alpha: &[Complex<T>], space: &FockSpace<T>) -> Result<Displacement<T>> {
    space.check_modes(alpha.len())?;
    let mut m = ComplexMatrix::identity(1);
    for &a in alpha {
        m = m.kron(&space.single_mode_displacement(a));
    }
    Ok(Displacement {
        matrix: m,
        truncation_warning: beyond_validity(space, alpha),
    })
}

/// `T(t, α) = e^{it} D(α)`
pub fn weyl_operator<T: Real>(g: &WeylElement<T>, space: &FockSpace<T>) -> Result<Displacement<T>> {
    let mut d = displacement_operator(&g.alpha, space)?;
    let two_pi = T::lit(2.0) * T::PI();
    let t = g.t - (g.t / two_pi).round() * two_pi;
    d.matrix = d.matrix.scale(Complex::from_polar(T::one(), t));
    Ok(d)
}

/// `|α> = D(α)|ψ₀>`.
pub fn weyl_coherent_state<T: Real>(
    alpha: &[Complex<T>],
    psi0: &[Complex<T>],
    space: &FockSpace<T>,
) -> Result<ComplexVector<T>> {
    space.check_modes(alpha.len())?;
    check_fiducial(psi0, space)?;
    if space.n_modes == 1 {
        return Ok(space.single_mode_displace_vector(alpha[0], psi0));
    }
    Ok(displacement_operator(alpha, space)?.matrix.apply(psi0))
}

fn check_fiducial<T: Real>(psi0: &[Complex<T>], space: &FockSpace<T>) -> Result<()> {
    if psi0.len() != space.dim() {
        return Err(Error::Dimension {
            expected: space.dim(),
            got: psi0.len(),
        });
    }
    let n = norm(psi0);
    if (n - T::one()).abs() > T::tol(1e-12) {
        return Err(Error::Unnormalized { norm: n.as_f64() });
    }
    let half = space.cutoff / 2;
    let outside = psi0
        .iter()
        .enumerate()
        .any(|(i, c)| *c != Complex::zero() && space.occupations(i).iter().any(|&o| o > half));
    if outside {
        return Err(Error::Headroom(format!("fiducial vector has support above occupation {half}")));
    }
    Ok(())
}

/// `|| (1/π) ∫ d²α |α><α| - I ||_max` on the leading `probe_dim` block.
pub fn weyl_identity_check<T: Real>(
    space: &FockSpace<T>,
    grid: &QuadratureGrid<T, Complex<T>>,
    psi0: &[Complex<T>],
    probe_dim: usize,
) -> Result<T> {
    grid.require("plane_d2alpha")?;
    let s = weyl_frame_operator(space, grid, psi0, probe_dim)?;
    Ok(s.scale_real(T::FRAC_1_PI()).max_abs_diff(&ComplexMatrix::identity(probe_dim)))
}

/// `∫ d²α |α><α|` on the leading `probe_dim` block, single mode.
pub fn weyl_frame_operator<T: Real>(
    space: &FockSpace<T>,
    grid: &QuadratureGrid<T, Complex<T>>,
    psi0: &[Complex<T>],
    probe_dim: usize,
) -> Result<ComplexMatrix<T>> {
    grid.require("plane_d2alpha")?;
    if space.n_modes != 1 {
        return Err(domain("phase-space quadrature is implemented for a single mode"));
    }
    if probe_dim == 0 || probe_dim > space.cutoff / 2 {
        return Err(domain(format!("probe_dim {probe_dim} must lie in 1..={}", space.cutoff / 2)));
    }
    check_fiducial(psi0, space)?;
    let states = par_map(grid.nodes(), |a| space.single_mode_displace_vector(*a, psi0));
    Ok(weighted_outer_sum(&states, grid.weights(), probe_dim))
}

/// Period lattice of `C^N` with theta characteristics `ε`.
#[derive(Clone, Debug, PartialEq)]
pub struct Lattice<T> {
    n_modes: usize,
    periods: Vec<Vec<Complex<T>>>,
    epsilon: Vec<T>,
}

impl<T: Real> Lattice<T> {
    /// `2N` periods in `C^N`, linearly independent over the reals.
    pub fn new(n_modes: usize, periods: Vec<Vec<Complex<T>>>, epsilon: Vec<T>) -> Result<Self> {
        if n_modes == 0 {
            return Err(domain("lattice needs at least one mode"));
        }
        if periods.len() != 2 * n_modes {
            return Err(Error::Dimension {
                expected: 2 * n_modes,
                got: periods.len(),
            });
        }
        if let Some(p) = periods.iter().find(|p| p.len() != n_modes) {
            return Err(Error::Dimension {
                expected: n_modes,
                got: p.len(),
            });
        }
        if !epsilon.is_empty() && epsilon.len() != 2 * n_modes {
            return Err(Error::Dimension {
                expected: 2 * n_modes,
                got: epsilon.len(),
            });
        }
        let rows: Vec<Vec<T>> = periods
            .iter()
            .map(|p| p.iter().flat_map(|z| [z.re, z.im]).collect())
            .collect();
        let gram: Vec<Vec<T>> = rows
            .iter()
            .map(|a| rows.iter().map(|b| a.iter().zip(b).map(|(x, y)| *x * *y).sum()).collect())
            .collect();
        let det = real_determinant(gram);
        if det.abs() <= T::tol(1e-12) {
            return Err(domain(format!("periods are not linearly independent over the reals (Gram determinant {det})")));
        }
        let epsilon = if epsilon.is_empty() { vec![T::zero(); 2 * n_modes] } else { epsilon };
        Ok(Self {
            n_modes,
            periods,
            epsilon,
        })
    }

    /// Single-mode lattice spanned by `ω₁, ω₂`.
    pub fn planar(w1: Complex<T>, w2: Complex<T>) -> Result<Self> {
        Self::new(1, vec![vec![w1], vec![w2]], Vec::new())
    }

    /// `ω₁ = sqrt(c)`, `ω₂ = i sqrt(c)`: the square lattice of cell area `c`.
    pub fn square(cell_area: T) -> Result<Self> {
        let s = cell_area.sqrt();
        Self::planar(Complex::new(s, T::zero()), Complex::new(T::zero(), s))
    }

    pub fn n_modes(&self) -> usize {
        self.n_modes
    }

    pub fn periods(&self) -> &[Vec<Complex<T>>] {
        &self.periods
    }

    pub fn epsilon(&self) -> &[T] {
        &self.epsilon
    }

    /// Multiplies every period by `s`.
    pub fn scaled(&self, s: T) -> Self {
        Self {
            n_modes: self.n_modes,
            periods: self.periods.iter().map(|p| p.iter().map(|z| z * s).collect()).collect(),
            epsilon: self.epsilon.clone(),
        }
    }

    /// Real volume of a fundamental cell: `|det|` of the real coordinate matrix.
    pub fn cell_volume(&self) -> T {
        let rows: Vec<Vec<T>> = self
            .periods
            .iter()
            .map(|p| p.iter().flat_map(|z| [z.re, z.im]).collect())
            .collect();
        real_determinant(rows).abs()
    }

    /// Points `Σ n_i ω_i` with every `|n_i| ≤ range`, single mode.
    pub fn points(&self, range: i64) -> Result<Vec<Complex<T>>> {
        if self.n_modes != 1 {
            return Err(domain("lattice enumeration is implemented for a single mode"));
        }
        let (w1, w2) = (self.periods[0][0], self.periods[1][0]);
        let mut out = Vec::new();
        for a in -range..=range {
            for b in -range..=range {
                out.push(w1 * T::from_i64_lossy(a) + w2 * T::from_i64_lossy(b));
            }
        }
        Ok(out)
    }
}

fn real_determinant<T: Real>(mut m: Vec<Vec<T>>) -> T {
    let n = m.len();
    let mut det = T::one();
    for col in 0..n {
        let piv = (col..n)
            .max_by(|&a, &b| m[a][col].abs().partial_cmp(&m[b][col].abs()).unwrap())
            .unwrap();
        if m[piv][col] == T::zero() {
            return T::zero();
        }
        if piv != col {
            m.swap(piv, col);
            det = -det;
        }
        det *= m[col][col];
        for r in col + 1..n {
            let f = m[r][col] / m[col][col];
            for c in col..n {
                let v = m[col][c];
                m[r][c] -= f * v;
            }
        }
    }
    det
}

/// Result of the integrality test on `B_ij = (1/π) Im(ω_i·ω̄_j)`.
#[derive(Clone, Debug, PartialEq)]
pub struct AdmissibilityReport<T> {
    pub admissible: bool,
    pub rounded: Vec<Vec<i64>>,
    pub raw: Vec<Vec<T>>,
    pub max_deviation: T,
}

pub const INTEGER_TOLERANCE: f64 = 1e-9;

pub fn lattice_admissible<T: Real>(lat: &Lattice<T>) -> AdmissibilityReport<T> {
    let p = &lat.periods;
    let raw: Vec<Vec<T>> = p
        .iter()
        .map(|wi| {
            p.iter()
                .map(|wj| wi.iter().zip(wj).map(|(a, b)| (a * b.conj()).im).sum::<T>() / T::PI())
                .collect()
        })
        .collect();
    let rounded: Vec<Vec<i64>> = raw
        .iter()
        .map(|r| r.iter().map(|x| x.round().to_i64().unwrap_or(i64::MAX)).collect())
        .collect();
    let max_deviation = raw
        .iter()
        .flatten()
        .map(|x| (*x - x.round()).abs())
        .fold(T::zero(), T::max);
    AdmissibilityReport {
        admissible: max_deviation <= T::lit(INTEGER_TOLERANCE),
        rounded,
        raw,
        max_deviation,
    }
}
