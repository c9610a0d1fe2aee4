//! Special functions: log-gamma, Jacobi polynomials, Wigner small-d,
//! Clebsch–Gordan coefficients and spherical harmonics.
//!
//! Angular-momentum routines use the Condon–Shortley phase convention.

use num_complex::Complex;

use crate::error::{domain, Result};
use crate::scalar::{HalfInt, Real};

const LANCZOS_G: f64 = 7.0;
const LANCZOS_COEFFS: [f64; 9] = [
    0.999_999_999_999_809_9,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_1,
    -176.615_029_162_140_6,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_572e-6,
    1.505_632_735_149_311_6e-7,
];

/// `ln Γ(x)` for `x > 0` (Lanczos, g = 7).
pub fn ln_gamma<T: Real>(x: T) -> T {
    if x < T::lit(0.5) {
        // reflection: Γ(x)Γ(1-x) = π / sin(πx)
        let pi = T::PI();
        return (pi / (pi * x).sin().abs()).ln() - ln_gamma(T::one() - x);
    }
    let x = x - T::one();
    let mut acc = T::lit(LANCZOS_COEFFS[0]);
    for (i, &c) in LANCZOS_COEFFS.iter().enumerate().skip(1) {
        acc += T::lit(c) / (x + T::from_usize_lossy(i));
    }
    let t = x + T::lit(LANCZOS_G + 0.5);
    T::lit(0.5) * (T::lit(2.0) * T::PI()).ln() + (x + T::lit(0.5)) * t.ln() - t + acc.ln()
}

/// `ln n!`; exact product below 21, Lanczos above.
pub fn ln_factorial<T: Real>(n: u32) -> T {
    if n <= 20 {
        let mut p = 1u64;
        for k in 2..=n as u64 {
            p *= k;
        }
        T::lit(p as f64).ln()
    } else {
        ln_gamma(T::from_usize_lossy(n as usize + 1))
    }
}

/// `ln C(n, k)`
pub fn ln_binomial<T: Real>(n: u32, k: u32) -> T {
    ln_factorial::<T>(n) - ln_factorial::<T>(k) - ln_factorial::<T>(n - k)
}

/// `C(n, k)` as a scalar.
pub fn binomial<T: Real>(n: u32, k: u32) -> T {
    if k > n {
        return T::zero();
    }
    ln_binomial::<T>(n, k).exp().round()
}

/// `P_n^{(a,b)}(x)` by the three-term recurrence.
pub fn jacobi_polynomial<T: Real>(n: usize, a: T, b: T, x: T) -> T {
    jacobi_pair(n, a, b, x).0
}

/// `(P_n, P_{n-1})`; `P_{-1}` is reported as 0.
pub(crate) fn jacobi_pair<T: Real>(n: usize, a: T, b: T, x: T) -> (T, T) {
    let one = T::one();
    let two = T::lit(2.0);
    if n == 0 {
        return (one, T::zero());
    }
    let mut prev = one;
    let mut cur = (a + one) + (a + b + two) * (x - one) / two;
    for k in 2..=n {
        let kf = T::from_usize_lossy(k);
        let s = two * kf + a + b;
        let c1 = two * kf * (kf + a + b) * (s - two);
        let c2 = (s - one) * (s * (s - two) * x + a * a - b * b);
        let c3 = two * (kf + a - one) * (kf + b - one) * s;
        let next = (c2 * cur - c3 * prev) / c1;
        prev = cur;
        cur = next;
    }
    (cur, prev)
}

/// `d/dx P_n^{(a,b)}(x) = (n + a + b + 1)/2 · P_{n-1}^{(a+1,b+1)}(x)`.
pub fn jacobi_polynomial_derivative<T: Real>(n: usize, a: T, b: T, x: T) -> T {
    if n == 0 {
        return T::zero();
    }
    let nf = T::from_usize_lossy(n);
    (nf + a + b + T::one()) / T::lit(2.0) * jacobi_polynomial(n - 1, a + T::one(), b + T::one(), x)
}

fn check_weight(j: HalfInt, m: HalfInt, what: &str) -> Result<()> {
    if j.doubled() < 0 {
        return Err(domain(format!("{what}: negative angular momentum j = {j}")));
    }
    if !j.same_parity(m) {
        return Err(domain(format!("{what}: weight {m} does not match the character of j = {j}")));
    }
    if m.abs() > j {
        return Err(domain(format!("{what}: |{m}| exceeds j = {j}")));
    }
    Ok(())
}

#[inline]
fn half_to_u32(x: HalfInt) -> u32 {
    debug_assert!(x.is_integer() && x.doubled() >= 0);
    (x.doubled() / 2) as u32
}

/// Wigner small-d `d^j_{μν}(θ) = <j μ| exp(-iθ J_2) |j ν>` by the explicit
/// Wigner sum over log-factorials.
pub fn wigner_small_d<T: Real>(j: HalfInt, mu: HalfInt, nu: HalfInt, theta: T) -> Result<T> {
    check_weight(j, mu, "wigner_small_d")?;
    check_weight(j, nu, "wigner_small_d")?;
    let jpm = half_to_u32(j + mu);
    let jmm = half_to_u32(j - mu);
    let jpn = half_to_u32(j + nu);
    let jmn = half_to_u32(j - nu);
    let diff = (mu - nu).doubled() / 2; // μ - ν
    let prefactor = T::lit(0.5)
        * (ln_factorial::<T>(jpm) + ln_factorial::<T>(jmm) + ln_factorial::<T>(jpn) + ln_factorial::<T>(jmn));
    let (s_half, c_half) = (theta / T::lit(2.0)).sin_cos();
    let two_j = j.doubled();

    let s_min = (-diff).max(0);
    let s_max = (jpn as i32).min(jmm as i32);
    let mut total = T::zero();
    for s in s_min..=s_max {
        let denom = ln_factorial::<T>((jpn as i32 - s) as u32)
            + ln_factorial::<T>(s as u32)
            + ln_factorial::<T>((diff + s) as u32)
            + ln_factorial::<T>((jmm as i32 - s) as u32);
        // cos^(2j + ν - μ - 2s) sin^(μ - ν + 2s)
        let cos_exp = two_j - diff - 2 * s;
        let sin_exp = diff + 2 * s;
        let mag = (prefactor - denom).exp() * c_half.powi(cos_exp) * s_half.powi(sin_exp);
        let sign = if (diff + s).rem_euclid(2) == 0 { T::one() } else { -T::one() };
        total += sign * mag;
    }
    Ok(total)
}

/// Clebsch–Gordan coefficient `(j1 m1; j2 m2 | J M)` by the Racah sum.
pub fn clebsch_gordan<T: Real>(
    j1: HalfInt,
    m1: HalfInt,
    j2: HalfInt,
    m2: HalfInt,
    big_j: HalfInt,
    big_m: HalfInt,
) -> Result<T> {
    check_weight(j1, m1, "clebsch_gordan")?;
    check_weight(j2, m2, "clebsch_gordan")?;
    check_weight(big_j, big_m, "clebsch_gordan")?;
    if !(j1 + j2).same_parity(big_j) {
        return Err(domain(format!(
            "clebsch_gordan: J = {big_j} cannot couple {j1} and {j2} (integer/half-integer mismatch)"
        )));
    }
    if m1 + m2 != big_m || big_j > j1 + j2 || big_j < (j1 - j2).abs() {
        return Ok(T::zero());
    }
    let u = half_to_u32;
    let ln_tri = ln_factorial::<T>(u(big_j + j1 - j2))
        + ln_factorial::<T>(u(big_j - j1 + j2))
        + ln_factorial::<T>(u(j1 + j2 - big_j))
        - ln_factorial::<T>(u(j1 + j2 + big_j) + 1);
    let ln_m = ln_factorial::<T>(u(big_j + big_m))
        + ln_factorial::<T>(u(big_j - big_m))
        + ln_factorial::<T>(u(j1 - m1))
        + ln_factorial::<T>(u(j1 + m1))
        + ln_factorial::<T>(u(j2 - m2))
        + ln_factorial::<T>(u(j2 + m2));
    let pre = T::lit(0.5) * (ln_tri + ln_m);
    let two_j_plus_one = T::from_i64_lossy(big_j.doubled() as i64 + 1);

    let a = (j1 + j2 - big_j).doubled() / 2;
    let b = (j1 - m1).doubled() / 2;
    let c = (j2 + m2).doubled() / 2;
    let d = (big_j - j2 + m1).doubled() / 2;
    let e = (big_j - j1 - m2).doubled() / 2;
    let k_min = 0.max(-d).max(-e);
    let k_max = a.min(b).min(c);
    let mut total = T::zero();
    for k in k_min..=k_max {
        let den = ln_factorial::<T>(k as u32)
            + ln_factorial::<T>((a - k) as u32)
            + ln_factorial::<T>((b - k) as u32)
            + ln_factorial::<T>((c - k) as u32)
            + ln_factorial::<T>((d + k) as u32)
            + ln_factorial::<T>((e + k) as u32);
        let term = (pre - den).exp();
        total += if k % 2 == 0 { term } else { -term };
    }
    Ok(two_j_plus_one.sqrt() * total)
}

/// Orthonormal spherical harmonic `Y_{l,m}(θ, φ)` with the Condon–Shortley phase.
pub fn spherical_harmonic<T: Real>(l: u32, m: i32, theta: T, phi: T) -> Result<Complex<T>> {
    if m.unsigned_abs() > l {
        return Err(domain(format!("spherical_harmonic: |m| = {} exceeds l = {l}", m.abs())));
    }
    let ma = m.unsigned_abs();
    let x = theta.cos();
    let p = normalized_legendre(l, ma, x, theta.sin().abs());
    let y = Complex::from_polar(p, T::from_i64_lossy(ma as i64) * phi);
    if m >= 0 {
        Ok(y)
    } else if ma.is_multiple_of(2) {
        Ok(y.conj())
    } else {
        Ok(-y.conj())
    }
}

/// `sqrt((2l+1)/4π · (l-m)!/(l+m)!) P_l^m(x)` with the Condon–Shortley phase,
/// `m >= 0`, `sin_theta = sqrt(1 - x^2)`.
fn normalized_legendre<T: Real>(l: u32, m: u32, x: T, sin_theta: T) -> T {
    let four_pi = T::lit(4.0) * T::PI();
    let mut pmm = T::one() / four_pi;
    for k in 1..=m {
        let kf = T::from_usize_lossy(k as usize);
        pmm *= (T::lit(2.0) * kf - T::one()) / (T::lit(2.0) * kf);
    }
    let mf = T::from_usize_lossy(m as usize);
    let mut pmm = (pmm * (T::lit(2.0) * mf + T::one())).sqrt() * sin_theta.powi(m as i32);
    if m % 2 == 1 {
        pmm = -pmm;
    }
    if l == m {
        return pmm;
    }
    let mut prev = pmm;
    let mut cur = x * (T::lit(2.0) * mf + T::lit(3.0)).sqrt() * pmm;
    for ll in m + 2..=l {
        let lf = T::from_usize_lossy(ll as usize);
        let a = ((T::lit(4.0) * lf * lf - T::one()) / (lf * lf - mf * mf)).sqrt();
        let lm1 = lf - T::one();
        let b = ((lm1 * lm1 - mf * mf) / (T::lit(4.0) * lm1 * lm1 - T::one())).sqrt();
        let next = a * (x * cur - b * prev);
        prev = cur;
        cur = next;
    }
    cur
}
