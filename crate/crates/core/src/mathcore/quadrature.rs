//! Gauss rules and product grids for the plane, the sphere, the unit disk
//! and SU(2) Euler angles.

use std::fmt;

use num_complex::Complex;

use crate::error::{domain, Error, Result};
use crate::mathcore::linalg::ComplexMatrix;
use crate::mathcore::special::{jacobi_polynomial, jacobi_polynomial_derivative, ln_gamma};
use crate::mathcore::sum::sum_real;
use crate::scalar::Real;

/// Default sphere resolution `(n_theta, n_phi)`.
pub const SPHERE_DEFAULT: (usize, usize) = (64, 128);
/// Default disk resolution `(n_r, n_phi)`.
pub const DISK_DEFAULT: (usize, usize) = (48, 96);
/// Default plane grid `(radius, n_r, n_phi)`.
pub const PLANE_DEFAULT: (f64, usize, usize) = (6.0, 48, 96);
/// Default radial cutoff for the invariant disk measure.
pub const DISK_CUTOFF_DEFAULT: f64 = 1e-6;

const NEWTON_TOL: f64 = 1e-14;
const NEWTON_MAX_ITER: usize = 100;

/// Nodes and weights of an `n`-point Gauss–Jacobi rule for
/// `∫_{-1}^{1} (1-x)^a (1+x)^b f(x) dx`, nodes ascending.
///
/// Golub–Welsch eigenvalues seed a Newton iteration on the three-term
/// recurrence; weights come from the closed form in `P_n'`.
pub fn gauss_jacobi<T: Real>(n: usize, a: T, b: T) -> Result<(Vec<T>, Vec<T>)> {
    if n == 0 {
        return Err(domain("gauss_jacobi: need at least one node"));
    }
    if a <= -T::one() || b <= -T::one() {
        return Err(domain("gauss_jacobi: exponents must exceed -1"));
    }
    let one = T::one();
    let two = T::lit(2.0);

    // symmetric tridiagonal Jacobi matrix of the monic recurrence
    let mut jac = ComplexMatrix::<T>::zeros(n, n);
    for i in 0..n {
        let k = T::from_usize_lossy(i);
        let s = two * k + a + b;
        let diag = if i == 0 {
            (b - a) / (a + b + two)
        } else {
            (b * b - a * a) / (s * (s + two))
        };
        jac[(i, i)] = Complex::new(diag, T::zero());
        if i + 1 < n {
            let k1 = k + one;
            let s1 = two * k1 + a + b;
            let num = T::lit(4.0) * k1 * (k1 + a) * (k1 + b) * (k1 + a + b);
            let den = s1 * s1 * (s1 + one) * (s1 - one);
            let off = (num / den).sqrt();
            jac[(i, i + 1)] = Complex::new(off, T::zero());
            jac[(i + 1, i)] = Complex::new(off, T::zero());
        }
    }
    let seeds = jac.hermitian_eigen()?.values;

    let tol = T::tol(NEWTON_TOL);
    let ln_norm = ln_gamma(T::from_usize_lossy(n) + a + one) + ln_gamma(T::from_usize_lossy(n) + b + one)
        - ln_gamma(T::from_usize_lossy(n) + a + b + one)
        - ln_gamma(T::from_usize_lossy(n) + one)
        + (a + b + one) * two.ln();
    let norm = ln_norm.exp();

    let mut nodes = Vec::with_capacity(n);
    let mut weights = Vec::with_capacity(n);
    for mut x in seeds {
        for _ in 0..NEWTON_MAX_ITER {
            let p = jacobi_polynomial(n, a, b, x);
            let dp = jacobi_polynomial_derivative(n, a, b, x);
            let step = p / dp;
            x -= step;
            if step.abs() <= tol {
                break;
            }
        }
        let dp = jacobi_polynomial_derivative(n, a, b, x);
        nodes.push(x);
        weights.push(norm / ((one - x * x) * dp * dp));
    }
    Ok((nodes, weights))
}

/// Gauss–Legendre rule on `[-1, 1]`.
pub fn gauss_legendre<T: Real>(n: usize) -> Result<(Vec<T>, Vec<T>)> {
    gauss_jacobi(n, T::zero(), T::zero())
}

/// Measure a grid discretizes.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Measure {
    /// `d Re α d Im α` over a disk of the given radius.
    PlaneD2Alpha { radius: f64 },
    /// Area element `dn` on the unit sphere (total 4π).
    SphereDn,
    /// Invariant disk measure `d²ζ / (1 - |ζ|²)²`, truncated at radius `1 - cutoff`.
    DiskInvariant { cutoff: f64 },
    /// Normalized weighted measure `(2k-1)/π (1 - |z|²)^{2k-2} d²z` (total 1).
    DiskWeighted { k: f64 },
    /// Haar measure on SU(2) in z-y-z Euler angles, total volume 16π².
    Haar,
}

impl Measure {
    pub fn tag(&self) -> &'static str {
        match self {
            Measure::PlaneD2Alpha { .. } => "plane_d2alpha",
            Measure::SphereDn => "sphere_dn",
            Measure::DiskInvariant { .. } => "disk_dmu",
            Measure::DiskWeighted { .. } => "disk_dmu_k",
            Measure::Haar => "haar",
        }
    }
}

impl fmt::Display for Measure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Measure::PlaneD2Alpha { radius } => write!(f, "plane_d2alpha(radius={radius})"),
            Measure::SphereDn => write!(f, "sphere_dn"),
            Measure::DiskInvariant { cutoff } => write!(f, "disk_dmu(cutoff={cutoff})"),
            Measure::DiskWeighted { k } => write!(f, "disk_dmu_k(k={k})"),
            Measure::Haar => write!(f, "haar"),
        }
    }
}

/// Point on the unit sphere in polar angles.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SpherePoint<T> {
    pub theta: T,
    pub phi: T,
}

impl<T: Real> SpherePoint<T> {
    pub fn new(theta: T, phi: T) -> Self {
        Self { theta, phi }
    }

    pub fn north_pole() -> Self {
        Self::new(T::zero(), T::zero())
    }

    /// Polar angles of a (not necessarily unit) nonzero 3-vector.
    pub fn from_vector(v: [T; 3]) -> Self {
        let rho = (v[0] * v[0] + v[1] * v[1]).sqrt();
        let theta = rho.atan2(v[2]);
        let mut phi = v[1].atan2(v[0]);
        if phi < T::zero() {
            phi += T::lit(2.0) * T::PI();
        }
        Self { theta, phi }
    }

    /// `n = (sin θ cos φ, sin θ sin φ, cos θ)`
    pub fn unit_vector(&self) -> [T; 3] {
        let (st, ct) = self.theta.sin_cos();
        let (sp, cp) = self.phi.sin_cos();
        [st * cp, st * sp, ct]
    }

    pub fn dot(&self, other: &Self) -> T {
        let a = self.unit_vector();
        let b = other.unit_vector();
        a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
    }
}

/// Point of the open unit disk.
///
/// `defect = 1 - |ζ|²` is stored separately so that points generated near
/// the boundary keep full relative precision in `(1 - |ζ|²)^k` factors.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DiskPoint<T> {
    zeta: Complex<T>,
    defect: T,
}

impl<T: Real> DiskPoint<T> {
    pub fn new(zeta: Complex<T>) -> Result<Self> {
        let r = zeta.norm();
        if !(r < T::one()) {
            return Err(domain(format!("disk point |ζ| = {r} is not inside the unit disk")));
        }
        let defect = (T::one() - r) * (T::one() + r);
        Ok(Self { zeta, defect })
    }

    /// Point with `1 - |ζ|² = defect` at angle `phi`.
    pub fn from_defect(defect: T, phi: T) -> Result<Self> {
        if !(defect > T::zero() && defect <= T::one()) {
            return Err(domain(format!("disk defect {defect} outside (0, 1]")));
        }
        let r = (T::one() - defect).sqrt();
        Ok(Self {
            zeta: Complex::from_polar(r, phi),
            defect,
        })
    }

    pub fn origin() -> Self {
        Self {
            zeta: Complex::new(T::zero(), T::zero()),
            defect: T::one(),
        }
    }

    #[inline]
    pub fn zeta(&self) -> Complex<T> {
        self.zeta
    }

    /// `1 - |ζ|²`
    #[inline]
    pub fn defect(&self) -> T {
        self.defect
    }
}

/// z-y-z Euler angles of an SU(2) element (`γ ∈ [0, 4π)`).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EulerAngles<T> {
    pub alpha: T,
    pub beta: T,
    pub gamma: T,
}

/// Nodes with positive weights discretizing a measure.
#[derive(Clone, Debug)]
pub struct QuadratureGrid<T, P> {
    nodes: Vec<P>,
    weights: Vec<T>,
    measure: Measure,
    resolution: (usize, usize),
}

impl<T: Real, P: Clone> QuadratureGrid<T, P> {
    pub fn from_parts(nodes: Vec<P>, weights: Vec<T>, measure: Measure) -> Result<Self> {
        if nodes.len() != weights.len() {
            return Err(Error::Dimension {
                expected: nodes.len(),
                got: weights.len(),
            });
        }
        if let Some(w) = weights.iter().find(|w| !(**w > T::zero())) {
            return Err(domain(format!("quadrature weight {w} is not positive")));
        }
        let resolution = (nodes.len(), 1);
        Ok(Self {
            nodes,
            weights,
            measure,
            resolution,
        })
    }

    pub fn nodes(&self) -> &[P] {
        &self.nodes
    }

    pub fn weights(&self) -> &[T] {
        &self.weights
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn measure(&self) -> Measure {
        self.measure
    }

    /// Resolution the grid was built with (radial/polar, azimuthal).
    pub fn resolution(&self) -> (usize, usize) {
        self.resolution
    }

    pub fn iter(&self) -> impl Iterator<Item = (&P, T)> {
        self.nodes.iter().zip(self.weights.iter().copied())
    }

    pub fn total_weight(&self) -> T {
        sum_real(self.weights.iter().copied())
    }

    /// `Σ w_i f(x_i)` with compensated accumulation.
    pub fn integrate(&self, f: impl Fn(&P) -> T) -> T {
        sum_real(self.iter().map(|(p, w)| w * f(p)))
    }

    /// Complex-valued version of [`QuadratureGrid::integrate`].
    pub fn integrate_complex(&self, f: impl Fn(&P) -> Complex<T>) -> Complex<T> {
        crate::mathcore::sum::sum_complex(self.iter().map(|(p, w)| f(p) * w))
    }

    pub(crate) fn require(&self, expected: &'static str) -> Result<()> {
        if self.measure.tag() == expected {
            Ok(())
        } else {
            Err(Error::WrongMeasure {
                expected,
                got: self.measure.to_string(),
            })
        }
    }
}

fn uniform_angles<T: Real>(n: usize, period: T) -> Vec<T> {
    (0..n).map(|i| period * T::from_usize_lossy(i) / T::from_usize_lossy(n)).collect()
}

/// Gauss–Legendre in `cos θ` crossed with uniform `φ`; weights sum to 4π.
pub fn sphere_grid<T: Real>(n_theta: usize, n_phi: usize) -> Result<QuadratureGrid<T, SpherePoint<T>>> {
    if n_theta < 2 || n_phi < 2 {
        return Err(domain("sphere_grid: need n_theta >= 2 and n_phi >= 2"));
    }
    let (xs, ws) = gauss_legendre::<T>(n_theta)?;
    let two_pi = T::lit(2.0) * T::PI();
    let phis = uniform_angles(n_phi, two_pi);
    let dphi = two_pi / T::from_usize_lossy(n_phi);
    let mut nodes = Vec::with_capacity(n_theta * n_phi);
    let mut weights = Vec::with_capacity(n_theta * n_phi);
    for (&x, &w) in xs.iter().zip(&ws) {
        let theta = x.acos();
        for &phi in &phis {
            nodes.push(SpherePoint::new(theta, phi));
            weights.push(w * dphi);
        }
    }
    Ok(QuadratureGrid {
        nodes,
        weights,
        measure: Measure::SphereDn,
        resolution: (n_theta, n_phi),
    })
}

pub fn default_sphere_grid<T: Real>() -> QuadratureGrid<T, SpherePoint<T>> {
    sphere_grid(SPHERE_DEFAULT.0, SPHERE_DEFAULT.1).expect("default sphere grid")
}

/// Grid for `dμ_k(z) = (2k-1)/π (1-|z|²)^{2k-2} d²z`: Gauss–Jacobi in
/// `u = |z|²` with exponent `2k-2`, uniform in `φ`. Weights sum to 1.
pub fn disk_grid<T: Real>(k: T, n_r: usize, n_phi: usize) -> Result<QuadratureGrid<T, DiskPoint<T>>> {
    if !(k > T::lit(0.5)) {
        return Err(domain(format!(
            "disk_grid: k = {k} must exceed 1/2 (the weighted measure is not normalizable)"
        )));
    }
    if n_r == 0 || n_phi == 0 {
        return Err(domain("disk_grid: need n_r >= 1 and n_phi >= 1"));
    }
    let a = T::lit(2.0) * k - T::lit(2.0);
    let (xs, ws) = gauss_jacobi(n_r, a, T::zero())?;
    let two_pi = T::lit(2.0) * T::PI();
    let phis = uniform_angles(n_phi, two_pi);
    // (2k-1)/π · 2^{-a} · (1/2)(1/2) · 2π/n_phi
    let scale = (T::lit(2.0) * k - T::one()) * T::lit(2.0).powf(-a) / (T::lit(2.0) * T::from_usize_lossy(n_phi));
    let mut nodes = Vec::with_capacity(n_r * n_phi);
    let mut weights = Vec::with_capacity(n_r * n_phi);
    for (&x, &w) in xs.iter().zip(&ws) {
        let defect = (T::one() - x) / T::lit(2.0);
        for &phi in &phis {
            nodes.push(DiskPoint::from_defect(defect, phi)?);
            weights.push(w * scale);
        }
    }
    Ok(QuadratureGrid {
        nodes,
        weights,
        measure: Measure::DiskWeighted { k: k.as_f64() },
        resolution: (n_r, n_phi),
    })
}

/// Grid for the invariant measure `dμ(ζ) = d²ζ/(1-|ζ|²)²` on `|ζ| <= 1 - cutoff`.
///
/// The radial variable is `s = -ln(1 - |ζ|²)` on `[0, -ln δ]`, `δ` the defect at
/// the cutoff radius, with Gauss–Legendre nodes in `s`; integrands that carry
/// the coherent-state factor `(1-|ζ|²)^{2k}` become smooth and decaying in `s`.
pub fn disk_invariant_grid<T: Real>(
    cutoff: T,
    n_r: usize,
    n_phi: usize,
) -> Result<QuadratureGrid<T, DiskPoint<T>>> {
    if !(cutoff > T::zero() && cutoff < T::one()) {
        return Err(domain(format!("disk_invariant_grid: cutoff {cutoff} outside (0, 1)")));
    }
    if n_r == 0 || n_phi == 0 {
        return Err(domain("disk_invariant_grid: need n_r >= 1 and n_phi >= 1"));
    }
    let delta = cutoff * (T::lit(2.0) - cutoff);
    let s_max = -delta.ln();
    let (xs, ws) = gauss_legendre::<T>(n_r)?;
    let two_pi = T::lit(2.0) * T::PI();
    let phis = uniform_angles(n_phi, two_pi);
    let dphi = two_pi / T::from_usize_lossy(n_phi);
    let mut nodes = Vec::with_capacity(n_r * n_phi);
    let mut weights = Vec::with_capacity(n_r * n_phi);
    for (&x, &w) in xs.iter().zip(&ws) {
        let s = s_max * (x + T::one()) / T::lit(2.0);
        let defect = (-s).exp();
        // d²ζ/(1-|ζ|²)² = dφ dv / (2 v²),  dv = v ds
        let radial = w * s_max / T::lit(2.0) / (T::lit(2.0) * defect);
        for &phi in &phis {
            nodes.push(DiskPoint::from_defect(defect, phi)?);
            weights.push(radial * dphi);
        }
    }
    Ok(QuadratureGrid {
        nodes,
        weights,
        measure: Measure::DiskInvariant {
            cutoff: cutoff.as_f64(),
        },
        resolution: (n_r, n_phi),
    })
}

pub fn default_disk_invariant_grid<T: Real>() -> QuadratureGrid<T, DiskPoint<T>> {
    disk_invariant_grid(T::lit(DISK_CUTOFF_DEFAULT), DISK_DEFAULT.0, DISK_DEFAULT.1).expect("default disk grid")
}

impl<T: Real> QuadratureGrid<T, DiskPoint<T>> {
    /// Same resolution, different radial cutoff (invariant-measure grids only).
    pub fn with_cutoff(&self, cutoff: T) -> Result<Self> {
        self.require("disk_dmu")?;
        disk_invariant_grid(cutoff, self.resolution.0, self.resolution.1)
    }

    /// Defect `1 - |ζ|²` at the outer edge of an invariant-measure grid.
    pub fn edge_defect(&self) -> Option<T> {
        match self.measure {
            Measure::DiskInvariant { cutoff } => {
                let c = T::lit(cutoff);
                Some(c * (T::lit(2.0) - c))
            }
            _ => None,
        }
    }
}

/// Polar grid for `d²α` over `|α| <= radius`; weights sum to `π radius²`.
pub fn plane_grid<T: Real>(radius: T, n_r: usize, n_phi: usize) -> Result<QuadratureGrid<T, Complex<T>>> {
    if !(radius > T::zero()) {
        return Err(domain("plane_grid: radius must be positive"));
    }
    if n_r == 0 || n_phi == 0 {
        return Err(domain("plane_grid: need n_r >= 1 and n_phi >= 1"));
    }
    let (xs, ws) = gauss_legendre::<T>(n_r)?;
    let two_pi = T::lit(2.0) * T::PI();
    let phis = uniform_angles(n_phi, two_pi);
    let dphi = two_pi / T::from_usize_lossy(n_phi);
    let half = radius / T::lit(2.0);
    let mut nodes = Vec::with_capacity(n_r * n_phi);
    let mut weights = Vec::with_capacity(n_r * n_phi);
    for (&x, &w) in xs.iter().zip(&ws) {
        let r = half * (x + T::one());
        for &phi in &phis {
            nodes.push(Complex::from_polar(r, phi));
            weights.push(w * half * r * dphi);
        }
    }
    Ok(QuadratureGrid {
        nodes,
        weights,
        measure: Measure::PlaneD2Alpha {
            radius: radius.as_f64(),
        },
        resolution: (n_r, n_phi),
    })
}

pub fn default_plane_grid<T: Real>() -> QuadratureGrid<T, Complex<T>> {
    plane_grid(T::lit(PLANE_DEFAULT.0), PLANE_DEFAULT.1, PLANE_DEFAULT.2).expect("default plane grid")
}

/// Product grid over SU(2): uniform `α ∈ [0, 2π)`, Gauss–Legendre in `cos β`,
/// uniform `γ ∈ [0, 4π)`. Weights sum to 16π².
pub fn euler_grid<T: Real>(n: usize) -> Result<QuadratureGrid<T, EulerAngles<T>>> {
    if n < 2 {
        return Err(domain("euler_grid: need n >= 2"));
    }
    let (xs, ws) = gauss_legendre::<T>(n)?;
    let two_pi = T::lit(2.0) * T::PI();
    let alphas = uniform_angles(n, two_pi);
    let gammas = uniform_angles(n, T::lit(2.0) * two_pi);
    let da = two_pi / T::from_usize_lossy(n);
    let dg = T::lit(2.0) * two_pi / T::from_usize_lossy(n);
    let mut nodes = Vec::with_capacity(n * n * n);
    let mut weights = Vec::with_capacity(n * n * n);
    for &alpha in &alphas {
        for (&x, &w) in xs.iter().zip(&ws) {
            let beta = x.acos();
            for &gamma in &gammas {
                nodes.push(EulerAngles { alpha, beta, gamma });
                weights.push(w * da * dg);
            }
        }
    }
    Ok(QuadratureGrid {
        nodes,
        weights,
        measure: Measure::Haar,
        resolution: (n, n),
    })
}
