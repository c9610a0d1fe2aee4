//! Polynomial realization of the spin-`j` representation on polynomials of
//! degree `2j`, with `<z|j, μ> = sqrt(C(2j, j+μ)) z^{j+μ}`.

use num_complex::Complex;
use num_traits::{One, Zero};

use crate::error::{domain, Error, Result};
use crate::mathcore::linalg::ComplexVector;
use crate::mathcore::quadrature::SpherePoint;
use crate::mathcore::special::binomial;
use crate::scalar::{HalfInt, Real};

use super::rep::{SU2Element, SpinRep};

const MAX_TWICE_J: i32 = 50;

/// A point of the extended plane: the stereographic chart misses `θ = 0`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum ChartPoint<T> {
    Finite(Complex<T>),
    Infinity,
}

impl<T: Real> ChartPoint<T> {
    pub fn finite(&self) -> Option<Complex<T>> {
        match self {
            ChartPoint::Finite(z) => Some(*z),
            ChartPoint::Infinity => None,
        }
    }
}

/// `ζ = cot(θ/2) e^{iφ}`
pub fn stereographic<T: Real>(p: &SpherePoint<T>) -> ChartPoint<T> {
    let half = p.theta / T::lit(2.0);
    if half.sin() == T::zero() {
        return ChartPoint::Infinity;
    }
    ChartPoint::Finite(Complex::from_polar(half.cos() / half.sin(), p.phi))
}

/// Inverse of [`stereographic`].
pub fn inverse_stereographic<T: Real>(z: ChartPoint<T>) -> SpherePoint<T> {
    match z {
        ChartPoint::Infinity => SpherePoint::north_pole(),
        ChartPoint::Finite(z) => {
            let theta = T::lit(2.0) * T::one().atan2(z.norm());
            let phi = if z.norm() > T::zero() { z.arg() } else { T::zero() };
            SpherePoint::new(theta, phi)
        }
    }
}

/// Chart coordinate whose [`z_function`] reproduces `coherent_state` at `p`
/// up to a phase. The polynomial realization rotates the opposite way about
/// the third axis from the exponential section, so the azimuth is mirrored.
pub fn zeta_for_state<T: Real>(p: &SpherePoint<T>) -> ChartPoint<T> {
    stereographic(&SpherePoint::new(p.theta, T::PI() - p.phi))
}

fn check_size(rep_j: HalfInt) -> Result<()> {
    if rep_j.doubled() > MAX_TWICE_J {
        return Err(domain(format!("j = {rep_j} exceeds the polynomial realization limit 25")));
    }
    Ok(())
}

/// Coefficients in `z^0..z^{2j}` of
/// `sqrt((2j)!/((j+μ)!(j-μ)!)) (1+|ζ|²)^{-j} (z+ζ̄)^{j-μ} (1-ζz)^{j+μ}`.
///
/// At `ζ = ∞` the normalized limit `sqrt(C(2j, j+μ)) z^{j+μ}` is returned.
pub fn z_function<T: Real>(rep: &SpinRep<T>, mu: HalfInt, zeta: ChartPoint<T>) -> Result<ComplexVector<T>> {
    let j = rep.j();
    check_size(j)?;
    let idx = rep.index(mu)?;
    let n = j.doubled() as u32;
    let up = idx as u32;
    let down = n - up;
    let radical = binomial::<T>(n, up).sqrt();
    let mut out = vec![Complex::zero(); rep.dim()];
    let zeta = match zeta {
        ChartPoint::Infinity => {
            out[idx] = Complex::new(radical, T::zero());
            return Ok(out);
        }
        ChartPoint::Finite(z) => z,
    };
    // (1 + |ζ|²)^{-j} split evenly over the two factors keeps large |ζ| finite
    let scale = (T::one() + zeta.norm_sqr()).sqrt().recip();
    let a: Vec<Complex<T>> = (0..=down)
        .map(|i| (zeta.conj() * scale).powu(down - i) * binomial::<T>(down, i) * scale.powu(i))
        .collect();
    let b: Vec<Complex<T>> = (0..=up)
        .map(|i| (-zeta * scale).powu(i) * binomial::<T>(up, i) * scale.powu(up - i))
        .collect();
    for (p, x) in a.iter().enumerate() {
        for (q, y) in b.iter().enumerate() {
            out[p + q] += *x * *y;
        }
    }
    Ok(out.into_iter().map(|c| c * radical).collect())
}

trait PowU<T> {
    fn powu(self, n: u32) -> Self;
}

impl<T: Real> PowU<T> for T {
    fn powu(self, n: u32) -> T {
        self.powi(n as i32)
    }
}

/// Polynomial coefficients of the state `Σ c_μ |j, μ>`.
pub fn state_to_polynomial<T: Real>(rep: &SpinRep<T>, state: &[Complex<T>]) -> Result<ComplexVector<T>> {
    check_dim(rep, state.len())?;
    let n = rep.j().doubled() as u32;
    Ok(state
        .iter()
        .enumerate()
        .map(|(i, &c)| c * binomial::<T>(n, i as u32).sqrt())
        .collect())
}

/// Inverse of [`state_to_polynomial`].
pub fn polynomial_to_state<T: Real>(rep: &SpinRep<T>, poly: &[Complex<T>]) -> Result<ComplexVector<T>> {
    check_dim(rep, poly.len())?;
    let n = rep.j().doubled() as u32;
    Ok(poly
        .iter()
        .enumerate()
        .map(|(i, &c)| c / binomial::<T>(n, i as u32).sqrt())
        .collect())
}

/// Inner product of two polynomials in the realization's norm.
pub fn z_inner<T: Real>(rep: &SpinRep<T>, p: &[Complex<T>], q: &[Complex<T>]) -> Result<Complex<T>> {
    let a = polynomial_to_state(rep, p)?;
    let b = polynomial_to_state(rep, q)?;
    Ok(crate::mathcore::linalg::inner(&a, &b))
}

/// `(T f)(z) = (βz + ᾱ)^{2j} f((αz - β̄)/(βz + ᾱ))`
pub fn z_action<T: Real>(rep: &SpinRep<T>, g: &SU2Element<T>, poly: &[Complex<T>]) -> Result<ComplexVector<T>> {
    check_dim(rep, poly.len())?;
    let (al, be) = (g.alpha(), g.beta());
    let n = poly.len() - 1;
    let num = [-be.conj(), al];
    let den = [al.conj(), be];
    let mut out = vec![Complex::zero(); n + 1];
    for (p, &c) in poly.iter().enumerate() {
        if c == Complex::zero() {
            continue;
        }
        let mut term = vec![c];
        for _ in 0..p {
            term = poly_mul(&term, &num);
        }
        for _ in p..n {
            term = poly_mul(&term, &den);
        }
        for (o, t) in out.iter_mut().zip(term) {
            *o += t;
        }
    }
    Ok(out)
}

fn poly_mul<T: Real>(a: &[Complex<T>], b: &[Complex<T>]) -> Vec<Complex<T>> {
    let mut out = vec![Complex::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (k, y) in b.iter().enumerate() {
            out[i + k] += x * y;
        }
    }
    out
}

fn check_dim<T: Real>(rep: &SpinRep<T>, got: usize) -> Result<()> {
    if got != rep.dim() {
        return Err(Error::Dimension {
            expected: rep.dim(),
            got,
        });
    }
    Ok(())
}

/// Image of `ζ` under `g` with the accompanying phase factor.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum MobiusImage<T> {
    Finite { phase: Complex<T>, zeta: Complex<T> },
    /// `β̄ζ + ᾱ = 0`: the image is the point the chart misses.
    Infinity,
}

impl<T: Real> MobiusImage<T> {
    pub fn chart_point(&self) -> ChartPoint<T> {
        match self {
            MobiusImage::Finite { zeta, .. } => ChartPoint::Finite(*zeta),
            MobiusImage::Infinity => ChartPoint::Infinity,
        }
    }
}

/// `g·ζ = (αζ - β)/(β̄ζ + ᾱ)` and `((β̄ζ + ᾱ)/(βζ̄ + α))^μ`, so that
/// `T(g)|μ, ζ> = phase · |μ, g·ζ>`.
pub fn mobius_action<T: Real>(g: &SU2Element<T>, mu: HalfInt, zeta: Complex<T>) -> MobiusImage<T> {
    let (al, be) = (g.alpha(), g.beta());
    let a = be.conj() * zeta + al.conj();
    let mag = a.norm();
    if mag <= T::epsilon() * (T::one() + zeta.norm()) {
        return MobiusImage::Infinity;
    }
    let u = a / mag;
    // (A/Ā)^μ = u^{2μ}, an integer power
    let twice = mu.doubled();
    let phase = if twice >= 0 {
        u.powi(twice)
    } else {
        u.conj().powi(-twice)
    };
    MobiusImage::Finite {
        phase,
        zeta: (al * zeta - be) / a,
    }
}

/// `(1+|ζ'|²)^{-j} (1+|ζ|²)^{-j} (1 + ζ̄'ζ)^{2j}`
pub fn overlap_disk<T: Real>(rep: &SpinRep<T>, zeta1: Complex<T>, zeta2: Complex<T>) -> Complex<T> {
    let twice = rep.j().doubled();
    let s1 = (T::one() + zeta1.norm_sqr()).sqrt().recip();
    let s2 = (T::one() + zeta2.norm_sqr()).sqrt().recip();
    ((Complex::<T>::one() + zeta1.conj() * zeta2) * s1 * s2).powi(twice)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mathcore::linalg::{max_abs_diff, phase_insensitive_distance};
    use crate::su2::states::coherent_state;
    use std::f64::consts::{FRAC_PI_2, PI};

    fn h(t: i32) -> HalfInt {
        HalfInt::from_doubled(t)
    }

    #[test]
    fn pole_and_unit_examples() {
        let rep = SpinRep::<f64>::new(h(4)).unwrap();
        let p = z_function(&rep, h(4), ChartPoint::Finite(Complex::zero())).unwrap();
        assert!((p[0] - Complex::new(1.0, 0.0)).norm() < 1e-15);
        assert!(p[1..].iter().all(|c| c.norm() < 1e-15));
        match stereographic(&SpherePoint::new(FRAC_PI_2, 0.0)) {
            ChartPoint::Finite(z) => assert!((z - Complex::new(1.0, 0.0)).norm() < 1e-15),
            ChartPoint::Infinity => panic!(),
        }
        assert_eq!(stereographic(&SpherePoint::<f64>::north_pole()), ChartPoint::Infinity);
    }

    #[test]
    fn spin_half_unit_chart_point_is_mirrored_equator_state() {
        let rep = SpinRep::<f64>::new(h(1)).unwrap();
        let poly = z_function(&rep, h(1), ChartPoint::Finite(Complex::new(1.0, 0.0))).unwrap();
        let zs = polynomial_to_state(&rep, &poly).unwrap();
        let mirrored = coherent_state(&rep, h(1), &SpherePoint::new(FRAC_PI_2, PI)).unwrap();
        assert!(phase_insensitive_distance(&zs, &mirrored) < 1e-12);
        let direct = coherent_state(&rep, h(1), &SpherePoint::new(FRAC_PI_2, 0.0)).unwrap();
        assert!(phase_insensitive_distance(&zs, &direct) > 0.5);
    }

    #[test]
    fn matches_coherent_states_up_to_phase() {
        for twice in 0..=8 {
            let rep = SpinRep::<f64>::new(h(twice)).unwrap();
            for p in [SpherePoint::new(0.4, 1.3), SpherePoint::new(2.9, -2.0), SpherePoint::new(0.0, 0.0)] {
                for mu in rep.j().weights() {
                    let poly = z_function(&rep, mu, zeta_for_state(&p)).unwrap();
                    let zs = polynomial_to_state(&rep, &poly).unwrap();
                    let v = coherent_state(&rep, mu, &p).unwrap();
                    assert!(phase_insensitive_distance(&zs, &v) < 1e-10, "j={} μ={mu}", rep.j());
                }
            }
        }
    }

    #[test]
    fn z_action_equals_operator() {
        let rep = SpinRep::<f64>::new(h(3)).unwrap();
        let g = SU2Element::from_euler(0.7, 1.4, -2.2);
        let v: Vec<Complex<f64>> = (0..4).map(|i| Complex::new(0.3 * i as f64 - 0.4, 0.1 + 0.2 * i as f64)).collect();
        let via_poly = polynomial_to_state(&rep, &z_action(&rep, &g, &state_to_polynomial(&rep, &v).unwrap()).unwrap()).unwrap();
        let via_matrix = rep.operator(&g).apply(&v);
        assert!(max_abs_diff(&via_poly, &via_matrix) < 1e-12);
    }

    #[test]
    fn mobius_consistency() {
        let rep = SpinRep::<f64>::new(h(2)).unwrap();
        let diag = SU2Element::diagonal(0.7);
        for g in [SU2Element::identity(), diag, SU2Element::from_euler(0.3, 2.0, 1.1)] {
            for mu in rep.j().weights() {
                let zeta = Complex::new(0.6, -1.7);
                let lhs = z_action(&rep, &g, &z_function(&rep, mu, ChartPoint::Finite(zeta)).unwrap()).unwrap();
                let MobiusImage::Finite { phase, zeta: out } = mobius_action(&g, mu, zeta) else {
                    panic!()
                };
                let rhs: Vec<_> = z_function(&rep, mu, ChartPoint::Finite(out))
                    .unwrap()
                    .into_iter()
                    .map(|c| c * phase)
                    .collect();
                assert!(max_abs_diff(&lhs, &rhs) < 1e-10);
            }
        }
        let MobiusImage::Finite { phase, zeta } = mobius_action(&SU2Element::identity(), h(2), Complex::new(0.2, 0.3)) else {
            panic!()
        };
        assert!((phase - Complex::new(1.0, 0.0)).norm() < 1e-15);
        assert!((zeta - Complex::new(0.2, 0.3)).norm() < 1e-15);
    }

    #[test]
    fn mobius_pole_flag() {
        let g = SU2Element::from_euler(0.0, FRAC_PI_2, 0.0);
        // β̄ζ + ᾱ = 0 at ζ = -ᾱ/β̄
        let zeta = -g.alpha().conj() / g.beta().conj();
        assert_eq!(mobius_action(&g, h(2), zeta), MobiusImage::Infinity);
    }

    #[test]
    fn overlap_disk_examples() {
        let rep = SpinRep::<f64>::new(h(2)).unwrap();
        let o = overlap_disk(&rep, Complex::zero(), Complex::new(1.0, 0.0));
        assert!((o - Complex::new(0.5, 0.0)).norm() < 1e-15);
        let z = Complex::new(0.3, -2.0);
        assert!((overlap_disk(&rep, z, z) - Complex::new(1.0, 0.0)).norm() < 1e-14);
        let (a, b) = (Complex::new(0.5, 0.1), Complex::new(-1.2, 0.7));
        let pa = z_function(&rep, h(2), ChartPoint::Finite(a)).unwrap();
        let pb = z_function(&rep, h(2), ChartPoint::Finite(b)).unwrap();
        let zi = z_inner(&rep, &pa, &pb).unwrap();
        assert!((zi - overlap_disk(&rep, a, b)).norm() < 1e-12);
    }

    #[test]
    fn stereographic_round_trip() {
        let p = SpherePoint::new(1.2f64, 2.5);
        let q = inverse_stereographic(stereographic(&p));
        assert!((p.theta - q.theta).abs() < 1e-14 && (p.phi - q.phi).abs() < 1e-14);
    }
}
