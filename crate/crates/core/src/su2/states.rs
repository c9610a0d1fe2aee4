use num_complex::Complex;

use crate::error::Result;
use crate::mathcore::linalg::{inner, weighted_outer_sum, ComplexMatrix, ComplexVector};
use crate::mathcore::par_map;
use crate::mathcore::quadrature::{QuadratureGrid, SpherePoint};
use crate::mathcore::special::{jacobi_polynomial, wigner_small_d};
use crate::scalar::{HalfInt, Real};

use super::rep::SpinRep;

/// `|μ, n> = exp(-iφ J_3) exp(-iθ J_2) |j, μ>`
pub fn coherent_state<T: Real>(rep: &SpinRep<T>, mu: HalfInt, point: &SpherePoint<T>) -> Result<ComplexVector<T>> {
    let e = rep.basis_state(mu)?;
    let v = rep.rotate_y(point.theta, &e);
    Ok(rep.rotate_z(point.phi, &v))
}

/// `<μ, n'|μ, n>` from the explicit vectors.
pub fn overlap<T: Real>(
    rep: &SpinRep<T>,
    mu: HalfInt,
    p1: &SpherePoint<T>,
    p2: &SpherePoint<T>,
) -> Result<Complex<T>> {
    let a = coherent_state(rep, mu, p1)?;
    let b = coherent_state(rep, mu, p2)?;
    Ok(inner(&a, &b))
}

/// `|d^j_{μμ}(θ)|` with `cos θ = n'·n`, through the Wigner sum.
pub fn overlap_modulus_wigner<T: Real>(j: HalfInt, mu: HalfInt, cos_theta: T) -> Result<T> {
    let theta = cos_theta.max(-T::one()).min(T::one()).acos();
    Ok(wigner_small_d(j, mu, mu, theta)?.abs())
}

/// `|cos(θ/2)^{2|μ|} P^{(0,2|μ|)}_{j-|μ|}(cos θ)|`
pub fn overlap_modulus_jacobi<T: Real>(j: HalfInt, mu: HalfInt, cos_theta: T) -> Result<T> {
    wigner_small_d::<T>(j, mu, mu, T::zero())?;
    let c = cos_theta.max(-T::one()).min(T::one());
    let m = mu.abs();
    let half_cos = ((T::one() + c) / T::lit(2.0)).sqrt();
    let n = ((j - m).doubled() / 2) as usize;
    let b = T::from_i64_lossy(m.doubled() as i64);
    Ok((half_cos.powi(m.doubled()) * jacobi_polynomial(n, T::zero(), b, c)).abs())
}

/// `|<j, n'|j, n>|² = ((1 + n'·n)/2)^{2j}`
pub fn highest_weight_overlap_sq<T: Real>(j: HalfInt, dot: T) -> T {
    ((T::one() + dot) / T::lit(2.0)).powi(j.doubled())
}

/// `4π/(2j+1)`
pub fn d_theoretical<T: Real>(j: HalfInt) -> T {
    T::lit(4.0) * T::PI() / T::from_i64_lossy(j.doubled() as i64 + 1)
}

/// `∫ |<μ, n0|μ, n>|² dn` with `n0` the north pole.
pub fn d_constant<T: Real>(rep: &SpinRep<T>, mu: HalfInt, grid: &QuadratureGrid<T, SpherePoint<T>>) -> Result<T> {
    grid.require("sphere_dn")?;
    let i = rep.index(mu)?;
    let states = grid_states(rep, mu, grid)?;
    let vals: Vec<T> = states.iter().map(|v| v[i].norm_sqr()).collect();
    Ok(crate::mathcore::sum::sum_real(vals.iter().zip(grid.weights()).map(|(&v, &w)| v * w)))
}

/// `|| c ∫ dn |μ,n><μ,n| - I ||_max`
pub fn identity_check_with_constant<T: Real>(
    rep: &SpinRep<T>,
    mu: HalfInt,
    grid: &QuadratureGrid<T, SpherePoint<T>>,
    constant: T,
) -> Result<T> {
    grid.require("sphere_dn")?;
    let states = grid_states(rep, mu, grid)?;
    let s = weighted_outer_sum(&states, grid.weights(), rep.dim()).scale_real(constant);
    Ok(s.max_abs_diff(&ComplexMatrix::identity(rep.dim())))
}

/// Resolution-of-identity deviation with the constant `(2j+1)/(4π)`.
pub fn identity_check<T: Real>(rep: &SpinRep<T>, mu: HalfInt, grid: &QuadratureGrid<T, SpherePoint<T>>) -> Result<T> {
    identity_check_with_constant(rep, mu, grid, T::one() / d_theoretical(rep.j()))
}

pub(crate) fn grid_states<T: Real>(
    rep: &SpinRep<T>,
    mu: HalfInt,
    grid: &QuadratureGrid<T, SpherePoint<T>>,
) -> Result<Vec<ComplexVector<T>>> {
    rep.check_weight(mu)?;
    Ok(par_map(grid.nodes(), |p| coherent_state(rep, mu, p).expect("weight checked")))
}
