//! Spin precession in a time-dependent field: the Schrödinger equation
//! `i dψ/dt = -(a·J) ψ` and its classical counterpart `dn/dt = -a × n`.

use num_complex::Complex;

use crate::error::{domain, Error, Result};
use crate::mathcore::linalg::{inner, norm, ComplexVector};
use crate::mathcore::quadrature::SpherePoint;
use crate::scalar::{HalfInt, Real};

use super::rep::SpinRep;
use super::states::coherent_state;

/// Norm drift that aborts an integration.
pub const NORM_DRIFT_LIMIT: f64 = 1e-8;

/// Field `a(t)`.
#[derive(Clone, Debug, PartialEq)]
pub enum Field<T> {
    Constant([T; 3]),
    /// `(b cos ωt, b sin ωt, c)`
    Rotating { amplitude: T, omega: T, axial: T },
    /// `(b cos ϑ, b sin ϑ, c)` with `ϑ = ωt + rt²/2`
    Chirped { amplitude: T, omega: T, rate: T, axial: T },
    /// Linear interpolation between samples, held constant outside them.
    Sampled(SampledField<T>),
}

#[derive(Clone, Debug, PartialEq)]
pub struct SampledField<T> {
    times: Vec<T>,
    values: Vec<[T; 3]>,
}

impl<T: Real> SampledField<T> {
    pub fn new(times: Vec<T>, values: Vec<[T; 3]>) -> Result<Self> {
        if times.is_empty() || times.len() != values.len() {
            return Err(domain("field samples need matching, non-empty time and value lists"));
        }
        if times.windows(2).any(|w| !(w[1] > w[0])) {
            return Err(domain("field sample times must be strictly increasing"));
        }
        if times.iter().chain(values.iter().flatten()).any(|x| !x.is_finite()) {
            return Err(domain("field samples must be finite"));
        }
        Ok(Self { times, values })
    }

    pub fn times(&self) -> &[T] {
        &self.times
    }

    pub fn values(&self) -> &[[T; 3]] {
        &self.values
    }

    fn at(&self, t: T) -> [T; 3] {
        let n = self.times.len();
        if t <= self.times[0] {
            return self.values[0];
        }
        if t >= self.times[n - 1] {
            return self.values[n - 1];
        }
        let k = self.times.partition_point(|&s| s <= t) - 1;
        let (t0, t1) = (self.times[k], self.times[k + 1]);
        let w = (t - t0) / (t1 - t0);
        let (a, b) = (self.values[k], self.values[k + 1]);
        [0, 1, 2].map(|i| a[i] + w * (b[i] - a[i]))
    }
}

impl<T: Real> Field<T> {
    pub fn at(&self, t: T) -> [T; 3] {
        match self {
            Field::Constant(a) => *a,
            Field::Rotating { amplitude, omega, axial } => {
                let (s, c) = (*omega * t).sin_cos();
                [*amplitude * c, *amplitude * s, *axial]
            }
            Field::Chirped {
                amplitude,
                omega,
                rate,
                axial,
            } => {
                let (s, c) = (*omega * t + *rate * t * t / T::lit(2.0)).sin_cos();
                [*amplitude * c, *amplitude * s, *axial]
            }
            Field::Sampled(f) => f.at(t),
        }
    }
}

#[derive(Clone, Debug)]
pub struct QuantumTrajectory<T> {
    pub times: Vec<T>,
    pub states: Vec<ComplexVector<T>>,
    pub max_norm_drift: T,
}

#[derive(Clone, Debug)]
pub struct ClassicalTrajectory<T> {
    pub times: Vec<T>,
    pub vectors: Vec<[T; 3]>,
    pub max_norm_drift: T,
}

fn step_plan<T: Real>(t_end: T, dt: T) -> Result<(usize, T)> {
    if !(dt > T::zero()) || !(t_end >= T::zero()) || !t_end.is_finite() {
        return Err(domain(format!("need t_end >= 0 and dt > 0, got t_end = {t_end}, dt = {dt}")));
    }
    let ratio = (t_end / dt).as_f64();
    let n = (ratio - 1e-9).ceil().max(0.0) as usize;
    if n == 0 {
        return Ok((0, T::zero()));
    }
    Ok((n, t_end / T::from_usize_lossy(n)))
}

/// Fixed-step RK4 for `dψ/dt = i (a(t)·J) ψ`. No renormalization: the
/// drift is reported and the run fails once it exceeds [`NORM_DRIFT_LIMIT`].
pub fn evolve_quantum<T: Real>(
    rep: &SpinRep<T>,
    field: &Field<T>,
    psi0: &[Complex<T>],
    t_end: T,
    dt: T,
) -> Result<QuantumTrajectory<T>> {
    if psi0.len() != rep.dim() {
        return Err(Error::Dimension {
            expected: rep.dim(),
            got: psi0.len(),
        });
    }
    let n0 = norm(psi0);
    if (n0 - T::one()).abs() > T::tol(1e-12) {
        return Err(Error::Unnormalized { norm: n0.as_f64() });
    }
    let (steps, h) = step_plan(t_end, dt)?;
    let i = Complex::new(T::zero(), T::one());
    let rhs = |t: T, v: &[Complex<T>]| -> ComplexVector<T> {
        rep.projected(field.at(t)).apply(v).into_iter().map(|x| x * i).collect()
    };
    let axpy = |v: &[Complex<T>], k: &[Complex<T>], s: T| -> ComplexVector<T> {
        v.iter().zip(k).map(|(a, b)| a + b * s).collect()
    };
    let mut psi = psi0.to_vec();
    let mut times = vec![T::zero()];
    let mut states = vec![psi.clone()];
    let mut max_drift = (n0 - T::one()).abs();
    let half = h / T::lit(2.0);
    for s in 0..steps {
        let t = h * T::from_usize_lossy(s);
        let k1 = rhs(t, &psi);
        let k2 = rhs(t + half, &axpy(&psi, &k1, half));
        let k3 = rhs(t + half, &axpy(&psi, &k2, half));
        let k4 = rhs(t + h, &axpy(&psi, &k3, h));
        let sixth = h / T::lit(6.0);
        for idx in 0..psi.len() {
            psi[idx] += (k1[idx] + (k2[idx] + k3[idx]) * T::lit(2.0) + k4[idx]) * sixth;
        }
        let t_next = h * T::from_usize_lossy(s + 1);
        let drift = (norm(&psi) - T::one()).abs();
        max_drift = max_drift.max(drift);
        if drift > T::tol(NORM_DRIFT_LIMIT) {
            return Err(Error::NormDrift {
                drift: drift.as_f64(),
                limit: NORM_DRIFT_LIMIT,
                t: t_next.as_f64(),
            });
        }
        times.push(t_next);
        states.push(psi.clone());
    }
    Ok(QuantumTrajectory {
        times,
        states,
        max_norm_drift: max_drift,
    })
}

fn cross<T: Real>(a: [T; 3], b: [T; 3]) -> [T; 3] {
    [a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]]
}

fn vnorm<T: Real>(v: [T; 3]) -> T {
    (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt()
}

/// Fixed-step RK4 for `dn/dt = -a(t) × n`.
pub fn evolve_classical<T: Real>(field: &Field<T>, n0: &SpherePoint<T>, t_end: T, dt: T) -> Result<ClassicalTrajectory<T>> {
    let (steps, h) = step_plan(t_end, dt)?;
    let rhs = |t: T, n: [T; 3]| -> [T; 3] { cross(field.at(t), n).map(|x| -x) };
    let add = |n: [T; 3], k: [T; 3], s: T| [0, 1, 2].map(|i| n[i] + k[i] * s);
    let mut n = n0.unit_vector();
    let mut times = vec![T::zero()];
    let mut vectors = vec![n];
    let mut max_drift = (vnorm(n) - T::one()).abs();
    let half = h / T::lit(2.0);
    for s in 0..steps {
        let t = h * T::from_usize_lossy(s);
        let k1 = rhs(t, n);
        let k2 = rhs(t + half, add(n, k1, half));
        let k3 = rhs(t + half, add(n, k2, half));
        let k4 = rhs(t + h, add(n, k3, h));
        let sixth = h / T::lit(6.0);
        n = [0, 1, 2].map(|i| n[i] + (k1[i] + (k2[i] + k3[i]) * T::lit(2.0) + k4[i]) * sixth);
        let t_next = h * T::from_usize_lossy(s + 1);
        let drift = (vnorm(n) - T::one()).abs();
        max_drift = max_drift.max(drift);
        if drift > T::tol(NORM_DRIFT_LIMIT) {
            return Err(Error::NormDrift {
                drift: drift.as_f64(),
                limit: NORM_DRIFT_LIMIT,
                t: t_next.as_f64(),
            });
        }
        times.push(t_next);
        vectors.push(n);
    }
    Ok(ClassicalTrajectory {
        times,
        vectors,
        max_norm_drift: max_drift,
    })
}

/// `<ψ|J|ψ>`
pub fn expectation_vector<T: Real>(rep: &SpinRep<T>, psi: &[Complex<T>]) -> [T; 3] {
    rep.generators().map(|g| inner(psi, &g.apply(psi)).re)
}

/// `1 - |<μ, n|ψ>|`
pub fn fidelity_deficit<T: Real>(rep: &SpinRep<T>, mu: HalfInt, n: [T; 3], psi: &[Complex<T>]) -> Result<T> {
    let v = coherent_state(rep, mu, &SpherePoint::from_vector(n))?;
    Ok(T::one() - inner(&v, psi).norm())
}

/// `max_n |<μ, n|ψ>|`, by a coarse sphere scan refined with a shrinking
/// compass search. Returns the fidelity and the maximizing point.
pub fn max_coherent_fidelity<T: Real>(rep: &SpinRep<T>, mu: HalfInt, psi: &[Complex<T>]) -> Result<(T, SpherePoint<T>)> {
    rep.check_weight(mu)?;
    let f = |th: T, ph: T| inner(&coherent_state(rep, mu, &SpherePoint::new(th, ph)).unwrap(), psi).norm();
    let (nt, np) = (36usize, 72usize);
    let dth = T::PI() / T::from_usize_lossy(nt);
    let dph = T::lit(2.0) * T::PI() / T::from_usize_lossy(np);
    let mut best = (f(T::zero(), T::zero()), T::zero(), T::zero());
    for a in 0..=nt {
        for b in 0..np {
            let th = dth * T::from_usize_lossy(a);
            let ph = dph * T::from_usize_lossy(b);
            let v = f(th, ph);
            if v > best.0 {
                best = (v, th, ph);
            }
        }
    }
    let (mut fv, mut th, mut ph): (T, T, T) = best;
    let mut step = dph;
    let floor = T::lit(1e-10);
    while step > floor {
        let mut moved = false;
        for (a, b) in [(step, T::zero()), (-step, T::zero()), (T::zero(), step), (T::zero(), -step)] {
            let v = f(th + a, ph + b);
            if v > fv {
                fv = v;
                th += a;
                ph += b;
                moved = true;
            }
        }
        if !moved {
            step /= T::lit(2.0);
        }
    }
    let p = SpherePoint::from_vector(SpherePoint::new(th, ph).unit_vector());
    Ok((fv, p))
}
