//! Discrete-series representations of SU(1,1) on the weighted space of
//! functions analytic in the unit disk, and their coherent states.

use std::fmt;
use std::sync::Arc;

use num_complex::Complex;
use num_traits::Zero;
use rustfft::{Fft, FftPlanner};

use crate::error::{domain, Error, Result};
use crate::mathcore::linalg::{weighted_outer_sum, ComplexMatrix, ComplexVector};
use crate::mathcore::par_map;
use crate::mathcore::quadrature::{DiskPoint, QuadratureGrid};
use crate::mathcore::sum::{CompensatedComplexSum, CompensatedSum};
use crate::scalar::Real;

pub const DEFAULT_CUTOFF: usize = 256;

/// Coherent states must keep all but this fraction of their norm below the cutoff.
pub const TAIL_TOLERANCE: f64 = 1e-10;

/// Largest norm fraction above `cutoff/2` accepted by [`group_action`].
pub const HEADROOM_TOLERANCE: f64 = 1e-10;

/// Closest approach to the unit circle accepted for a coherent-state label.
pub const BOUNDARY_MARGIN: f64 = 1e-6;

/// `[[α, β], [β̄, ᾱ]]` with `|α|² - |β|² = 1`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SU11Element<T> {
    alpha: Complex<T>,
    beta: Complex<T>,
}

impl<T: Real> SU11Element<T> {
    pub fn new(alpha: Complex<T>, beta: Complex<T>) -> Result<Self> {
        let d = alpha.norm_sqr() - beta.norm_sqr();
        if (d - T::one()).abs() > T::tol(1e-12) * (T::one() + alpha.norm_sqr()) {
            return Err(domain(format!("|α|² - |β|² = {d}, expected 1")));
        }
        Ok(Self { alpha, beta })
    }

    pub fn identity() -> Self {
        Self {
            alpha: Complex::new(T::one(), T::zero()),
            beta: Complex::zero(),
        }
    }

    /// `diag(e^{iφ/2}, e^{-iφ/2})`
    pub fn rotation(phi: T) -> Self {
        Self {
            alpha: Complex::from_polar(T::one(), phi / T::lit(2.0)),
            beta: Complex::zero(),
        }
    }

    /// `α = cosh(r/2) e^{iφ}`, `β = sinh(r/2) e^{iψ}`.
    pub fn from_parameters(r: T, phi: T, psi: T) -> Self {
        let h = r / T::lit(2.0);
        Self {
            alpha: Complex::from_polar(h.cosh(), phi),
            beta: Complex::from_polar(h.sinh(), psi),
        }
    }

    #[inline]
    pub fn alpha(&self) -> Complex<T> {
        self.alpha
    }

    #[inline]
    pub fn beta(&self) -> Complex<T> {
        self.beta
    }

    pub fn compose(&self, rhs: &Self) -> Self {
        Self {
            alpha: self.alpha * rhs.alpha + self.beta * rhs.beta.conj(),
            beta: self.alpha * rhs.beta + self.beta * rhs.alpha.conj(),
        }
    }

    pub fn inverse(&self) -> Self {
        Self {
            alpha: self.alpha.conj(),
            beta: -self.beta,
        }
    }

    /// `g·ζ = (αζ - β)/(ᾱ - β̄ζ)`, so that `T(g)|ζ>` is proportional to `|g·ζ>`.
    pub fn act(&self, zeta: &DiskPoint<T>) -> Result<DiskPoint<T>> {
        let z = zeta.zeta();
        DiskPoint::new((self.alpha * z - self.beta) / (self.alpha.conj() - self.beta.conj() * z))
    }
}

/// Discrete-series representation with Bargmann index `k > 1/2`, truncated
/// to the monomials `z^0..z^cutoff`.
#[derive(Clone)]
pub struct DiskRep<T> {
    k: T,
    cutoff: usize,
    /// `h_n = Γ(n+1)Γ(2k)/Γ(n+2k) = ||z^n||²`
    weights: Vec<T>,
    samples: usize,
    fft_forward: Arc<dyn Fft<f64>>,
}

impl<T: fmt::Debug> fmt::Debug for DiskRep<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("DiskRep")
            .field("k", &self.k)
            .field("cutoff", &self.cutoff)
            .finish()
    }
}

impl<T: Real> DiskRep<T> {
    /// `k ≤ 1/2` is rejected: the measure `(1-|z|²)^{2k-2} d²z` is then not
    /// normalizable.
    pub fn new(k: T, cutoff: usize) -> Result<Self> {
        if !(k > T::lit(0.5)) || !k.is_finite() {
            return Err(domain(format!("Bargmann index k = {k} must exceed 1/2")));
        }
        if cutoff < 2 {
            return Err(domain("cutoff must be at least 2"));
        }
        let two_k = T::lit(2.0) * k;
        let mut weights = Vec::with_capacity(cutoff + 1);
        let mut h = T::one();
        weights.push(h);
        for n in 1..=cutoff {
            let nf = T::from_usize_lossy(n);
            h = h * nf / (nf + two_k - T::one());
            weights.push(h);
        }
        let samples = (4 * (cutoff + 1)).next_power_of_two();
        let fft_forward = FftPlanner::new().plan_fft_forward(samples);
        Ok(Self {
            k,
            cutoff,
            weights,
            samples,
            fft_forward,
        })
    }

    pub fn with_default_cutoff(k: T) -> Result<Self> {
        Self::new(k, DEFAULT_CUTOFF)
    }

    #[inline]
    pub fn k(&self) -> T {
        self.k
    }

    #[inline]
    pub fn cutoff(&self) -> usize {
        self.cutoff
    }

    /// `||z^n||²`
    pub fn monomial_norm_sq(&self, n: usize) -> T {
        self.weights[n]
    }

    /// `π/(2k-1)`
    pub fn d_theoretical(&self) -> T {
        T::PI() / (T::lit(2.0) * self.k - T::one())
    }

    fn same_rep(&self, f: &DiskFunction<T>) -> Result<()> {
        if f.k != self.k || f.coefficients.len() != self.cutoff + 1 {
            return Err(domain(format!(
                "function built for k = {}, cutoff = {} used with k = {}, cutoff = {}",
                f.k,
                f.coefficients.len().saturating_sub(1),
                self.k,
                self.cutoff
            )));
        }
        Ok(())
    }
}

/// `f(z) = Σ c_n z^n`, stored by its Taylor coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct DiskFunction<T> {
    k: T,
    coefficients: ComplexVector<T>,
}

impl<T: Real> DiskFunction<T> {
    pub fn from_coefficients(rep: &DiskRep<T>, mut coefficients: ComplexVector<T>) -> Result<Self> {
        if coefficients.len() > rep.cutoff + 1 {
            return Err(Error::Dimension {
                expected: rep.cutoff + 1,
                got: coefficients.len(),
            });
        }
        coefficients.resize(rep.cutoff + 1, Complex::zero());
        Ok(Self { k: rep.k, coefficients })
    }

    /// From coordinates in the orthonormal basis `f_n`.
    pub fn from_orthonormal(rep: &DiskRep<T>, coords: &[Complex<T>]) -> Result<Self> {
        let c = coords
            .iter()
            .enumerate()
            .map(|(n, b)| *b / rep.weights.get(n).copied().unwrap_or(T::one()).sqrt())
            .collect();
        Self::from_coefficients(rep, c)
    }

    pub fn zero(rep: &DiskRep<T>) -> Self {
        Self {
            k: rep.k,
            coefficients: vec![Complex::zero(); rep.cutoff + 1],
        }
    }

    pub fn k(&self) -> T {
        self.k
    }

    /// Taylor coefficients `c_0..c_cutoff`.
    pub fn coefficients(&self) -> &[Complex<T>] {
        &self.coefficients
    }

    /// Coordinates `<f_n|f> = sqrt(h_n) c_n`.
    pub fn orthonormal(&self, rep: &DiskRep<T>) -> Result<ComplexVector<T>> {
        rep.same_rep(self)?;
        Ok(self
            .coefficients
            .iter()
            .zip(&rep.weights)
            .map(|(c, h)| *c * h.sqrt())
            .collect())
    }

    /// Index of the highest nonzero coefficient.
    pub fn degree(&self) -> Option<usize> {
        self.coefficients.iter().rposition(|c| *c != Complex::zero())
    }

    /// `f(z)` by Horner's rule.
    pub fn eval(&self, z: Complex<T>) -> Complex<T> {
        let top = self.degree().map_or(0, |d| d + 1);
        self.coefficients[..top]
            .iter()
            .rev()
            .fold(Complex::zero(), |acc, c| acc * z + c)
    }

    /// Fraction of the squared norm carried by `n > cutoff/2`.
    pub fn tail_fraction(&self, rep: &DiskRep<T>) -> Result<T> {
        let b = self.orthonormal(rep)?;
        let mut total = CompensatedSum::new();
        let mut tail = CompensatedSum::new();
        for (n, x) in b.iter().enumerate() {
            total.add(x.norm_sqr());
            if n > rep.cutoff / 2 {
                tail.add(x.norm_sqr());
            }
        }
        let t = total.value();
        Ok(if t > T::zero() { tail.value() / t } else { T::zero() })
    }
}

/// `f_n(z) = sqrt(Γ(n+2k)/(Γ(n+1)Γ(2k))) z^n`
pub fn basis_vector<T: Real>(rep: &DiskRep<T>, n: usize) -> Result<DiskFunction<T>> {
    if n > rep.cutoff {
        return Err(domain(format!("basis index {n} exceeds cutoff {}", rep.cutoff)));
    }
    let mut c = vec![Complex::zero(); rep.cutoff + 1];
    c[n] = Complex::new(rep.weights[n].sqrt().recip(), T::zero());
    DiskFunction::from_coefficients(rep, c)
}

/// `<f|g> = Σ h_n conj(f_n) g_n`
pub fn inner_product<T: Real>(rep: &DiskRep<T>, f: &DiskFunction<T>, g: &DiskFunction<T>) -> Result<Complex<T>> {
    rep.same_rep(f)?;
    rep.same_rep(g)?;
    let mut acc = CompensatedComplexSum::new();
    for ((a, b), h) in f.coefficients.iter().zip(&g.coefficients).zip(&rep.weights) {
        acc.add(a.conj() * b * *h);
    }
    Ok(acc.value())
}

pub fn norm<T: Real>(rep: &DiskRep<T>, f: &DiskFunction<T>) -> Result<T> {
    Ok(inner_product(rep, f, f)?.re.max(T::zero()).sqrt())
}

/// `(T(g) f)(z) = (βz + ᾱ)^{-2k} f((αz + β̄)/(βz + ᾱ))`.
///
/// The right side is sampled on the unit circle and its Taylor coefficients
/// recovered with an FFT. Inputs must leave the upper half of the
/// coefficient range essentially empty.
pub fn group_action<T: Real>(rep: &DiskRep<T>, g: &SU11Element<T>, f: &DiskFunction<T>) -> Result<DiskFunction<T>> {
    rep.same_rep(f)?;
    let tail = f.tail_fraction(rep)?;
    if tail > T::tol(HEADROOM_TOLERANCE) {
        return Err(Error::Headroom(format!(
            "input carries {tail} of its norm above half the cutoff ({})",
            rep.cutoff / 2
        )));
    }
    let (al, be) = (g.alpha, g.beta);
    let prefactor = al.conj().powf(-T::lit(2.0) * rep.k);
    let ratio = be / al.conj();
    let m = rep.samples;
    let step = T::lit(2.0) * T::PI() / T::from_usize_lossy(m);
    let mut buf: Vec<Complex<f64>> = (0..m)
        .map(|i| {
            let z = Complex::from_polar(T::one(), step * T::from_usize_lossy(i));
            let den = be * z + al.conj();
            let w = (al * z + be.conj()) / den;
            let jac = prefactor * (Complex::new(T::one(), T::zero()) + ratio * z).powf(-T::lit(2.0) * rep.k);
            let v = jac * f.eval(w);
            Complex::new(v.re.as_f64(), v.im.as_f64())
        })
        .collect();
    rep.fft_forward.process(&mut buf);
    let scale = 1.0 / m as f64;
    let coefficients = buf[..=rep.cutoff]
        .iter()
        .map(|c| Complex::new(T::lit(c.re * scale), T::lit(c.im * scale)))
        .collect();
    Ok(DiskFunction { k: rep.k, coefficients })
}

fn check_label<T: Real>(zeta: &DiskPoint<T>) -> Result<()> {
    if zeta.defect() < T::lit(2.0 * BOUNDARY_MARGIN) - T::lit(BOUNDARY_MARGIN * BOUNDARY_MARGIN) {
        return Err(domain(format!(
            "|ζ| = {} is closer than {BOUNDARY_MARGIN} to the unit circle",
            zeta.zeta().norm()
        )));
    }
    Ok(())
}

/// `<n|ζ> = (1-|ζ|²)^k sqrt(Γ(n+2k)/(Γ(n+1)Γ(2k))) ζ^n` for `n < len`.
pub fn coherent_coordinates<T: Real>(rep: &DiskRep<T>, zeta: &DiskPoint<T>, len: usize) -> ComplexVector<T> {
    let z = zeta.zeta();
    let lead = zeta.defect().powf(rep.k);
    let mut out = Vec::with_capacity(len);
    let mut power = Complex::new(lead, T::zero());
    for n in 0..len {
        let h = if n <= rep.cutoff {
            rep.weights[n]
        } else {
            extend_weight(rep, n)
        };
        out.push(power / h.sqrt());
        power *= z;
    }
    out
}

fn extend_weight<T: Real>(rep: &DiskRep<T>, n: usize) -> T {
    let two_k = T::lit(2.0) * rep.k;
    let mut h = rep.weights[rep.cutoff];
    for m in rep.cutoff + 1..=n {
        let mf = T::from_usize_lossy(m);
        h = h * mf / (mf + two_k - T::one());
    }
    h
}

/// `|ζ> = (1-|ζ|²)^k (1 - ζz)^{-2k}` truncated at the cutoff.
pub fn coherent_state<T: Real>(rep: &DiskRep<T>, zeta: &DiskPoint<T>) -> Result<DiskFunction<T>> {
    check_label(zeta)?;
    let b = coherent_coordinates(rep, zeta, rep.cutoff + 1);
    let head: T = crate::mathcore::sum::sum_real(b.iter().map(|x| x.norm_sqr()));
    let tail = T::one() - head;
    if tail > T::tol(TAIL_TOLERANCE) {
        return Err(Error::Headroom(format!(
            "coherent state at |ζ| = {} leaves {tail} of its norm beyond cutoff {}",
            zeta.zeta().norm(),
            rep.cutoff
        )));
    }
    DiskFunction::from_orthonormal(rep, &b)
}

/// `<ζ'|ζ> = (1-|ζ'|²)^k (1-|ζ|²)^k (1 - ζ̄'ζ)^{-2k}`
pub fn overlap<T: Real>(rep: &DiskRep<T>, z1: &DiskPoint<T>, z2: &DiskPoint<T>) -> Complex<T> {
    let base = Complex::new(T::one(), T::zero()) - z1.zeta().conj() * z2.zeta();
    base.powf(-T::lit(2.0) * rep.k) * (z1.defect() * z2.defect()).powf(rep.k)
}

/// `<ζ|ψ> = (1-|ζ|²)^k ψ(ζ̄)`
pub fn symbol<T: Real>(rep: &DiskRep<T>, psi: &DiskFunction<T>, zeta: &DiskPoint<T>) -> Result<Complex<T>> {
    rep.same_rep(psi)?;
    Ok(psi.eval(zeta.zeta().conj()) * zeta.defect().powf(rep.k))
}

/// `δ_{z'}(z) = (1 - z̄'z)^{-2k}`
pub fn reproducing_kernel<T: Real>(rep: &DiskRep<T>, z1: Complex<T>, z2: Complex<T>) -> Result<Complex<T>> {
    if !(z1.norm() < T::one() && z2.norm() < T::one()) {
        return Err(domain("kernel arguments must lie inside the unit disk"));
    }
    Ok((Complex::new(T::one(), T::zero()) - z1.conj() * z2).powf(-T::lit(2.0) * rep.k))
}

/// `Σ_{n ≤ cutoff} conj(f_n(z')) f_n(z)`
pub fn reproducing_kernel_series<T: Real>(rep: &DiskRep<T>, z1: Complex<T>, z2: Complex<T>) -> Complex<T> {
    let w = z1.conj() * z2;
    let mut acc = CompensatedComplexSum::new();
    let mut p = Complex::new(T::one(), T::zero());
    for h in &rep.weights {
        acc.add(p / *h);
        p *= w;
    }
    acc.value()
}

/// `δ_{z'}` as an element of the space, truncated at the cutoff.
pub fn delta_function<T: Real>(rep: &DiskRep<T>, z: Complex<T>) -> Result<DiskFunction<T>> {
    if !(z.norm() < T::one()) {
        return Err(domain("δ-function label must lie inside the unit disk"));
    }
    let mut c = Vec::with_capacity(rep.cutoff + 1);
    let mut p = Complex::new(T::one(), T::zero());
    for h in &rep.weights {
        c.push(p.conj() / *h);
        p *= z;
    }
    DiskFunction::from_coefficients(rep, c)
}

fn require_invariant<T: Real>(grid: &QuadratureGrid<T, DiskPoint<T>>) -> Result<T> {
    grid.require("disk_dmu")?;
    grid.edge_defect()
        .ok_or_else(|| domain("invariant disk grid carries no radial cutoff"))
}

/// `∫ dμ(ζ) |<0|ζ>|²` on the grid as given, cut off at `1-ε`.
pub fn d_constant_raw<T: Real>(rep: &DiskRep<T>, grid: &QuadratureGrid<T, DiskPoint<T>>) -> Result<T> {
    require_invariant(grid)?;
    Ok(grid.integrate(|p| p.defect().powf(T::lit(2.0) * rep.k)))
}

/// Richardson step in the edge defect `δ`: the neglected boundary layer
/// contributes `O(δ^{2k-1})`.
fn richardson<T: Real>(rep: &DiskRep<T>, d1: T, d2: T) -> (T, T) {
    let p = T::lit(2.0) * rep.k - T::one();
    let (a, b) = (d1.powf(p), d2.powf(p));
    (a / (a - b), -b / (a - b))
}

/// Nodes and weights of the grid and of the same grid with half the cutoff,
/// combined so that the `O(δ^{2k-1})` boundary-layer error cancels.
pub fn extrapolated_rule<T: Real>(
    rep: &DiskRep<T>,
    grid: &QuadratureGrid<T, DiskPoint<T>>,
) -> Result<(Vec<DiskPoint<T>>, Vec<T>)> {
    let d1 = require_invariant(grid)?;
    let half = grid.with_cutoff(cutoff_of(grid)? / T::lit(2.0))?;
    let d2 = require_invariant(&half)?;
    let (w2, w1) = richardson(rep, d1, d2);
    let nodes = half.nodes().iter().chain(grid.nodes()).copied().collect();
    let weights = half
        .weights()
        .iter()
        .map(|w| *w * w2)
        .chain(grid.weights().iter().map(|w| *w * w1))
        .collect();
    Ok((nodes, weights))
}

/// `∫ dμ(ζ) |<0|ζ>|²` extrapolated to `ε → 0`.
pub fn d_constant<T: Real>(rep: &DiskRep<T>, grid: &QuadratureGrid<T, DiskPoint<T>>) -> Result<T> {
    let (nodes, weights) = extrapolated_rule(rep, grid)?;
    let two_k = T::lit(2.0) * rep.k;
    Ok(crate::mathcore::sum::sum_real(
        nodes.iter().zip(&weights).map(|(p, w)| *w * p.defect().powf(two_k)),
    ))
}

fn cutoff_of<T: Real>(grid: &QuadratureGrid<T, DiskPoint<T>>) -> Result<T> {
    let d = require_invariant(grid)?;
    // δ = ε(2 - ε)
    Ok(T::one() - (T::one() - d).sqrt())
}

fn check_probe<T: Real>(rep: &DiskRep<T>, probe_dim: usize) -> Result<()> {
    if probe_dim == 0 || probe_dim > rep.cutoff / 2 {
        return Err(domain(format!("probe_dim {probe_dim} must lie in 1..={}", rep.cutoff / 2)));
    }
    Ok(())
}

/// `∫ dμ(ζ) |ζ><ζ|` on the leading `probe_dim` block, no extrapolation.
pub fn frame_operator_raw<T: Real>(
    rep: &DiskRep<T>,
    grid: &QuadratureGrid<T, DiskPoint<T>>,
    probe_dim: usize,
) -> Result<ComplexMatrix<T>> {
    require_invariant(grid)?;
    check_probe(rep, probe_dim)?;
    let states = par_map(grid.nodes(), |p| coherent_coordinates(rep, p, probe_dim));
    Ok(weighted_outer_sum(&states, grid.weights(), probe_dim))
}

/// [`frame_operator_raw`] extrapolated in the cutoff like [`d_constant`].
pub fn frame_operator<T: Real>(
    rep: &DiskRep<T>,
    grid: &QuadratureGrid<T, DiskPoint<T>>,
    probe_dim: usize,
) -> Result<ComplexMatrix<T>> {
    check_probe(rep, probe_dim)?;
    let (nodes, weights) = extrapolated_rule(rep, grid)?;
    let states = par_map(&nodes, |p| coherent_coordinates(rep, p, probe_dim));
    Ok(weighted_outer_sum(&states, &weights, probe_dim))
}

/// `|| c ∫ dμ(ζ) |ζ><ζ| - I ||_max` on the leading block.
pub fn identity_check_with_constant<T: Real>(
    rep: &DiskRep<T>,
    grid: &QuadratureGrid<T, DiskPoint<T>>,
    probe_dim: usize,
    constant: T,
) -> Result<T> {
    let s = frame_operator(rep, grid, probe_dim)?.scale_real(constant);
    Ok(s.max_abs_diff(&ComplexMatrix::identity(probe_dim)))
}

/// Completeness deviation with the constant `(2k-1)/π`.
pub fn identity_check<T: Real>(rep: &DiskRep<T>, grid: &QuadratureGrid<T, DiskPoint<T>>, probe_dim: usize) -> Result<T> {
    identity_check_with_constant(rep, grid, probe_dim, rep.d_theoretical().recip())
}
