use num_complex::Complex;
use num_traits::Zero;

use crate::error::{domain, Result};
use crate::mathcore::linalg::{ComplexMatrix, ComplexVector, HermitianEigen};
use crate::mathcore::quadrature::{EulerAngles, SpherePoint};
use crate::scalar::{HalfInt, Real};

/// Spin-`j` irreducible representation in the basis `|j, μ>`, `μ = -j..j`.
///
/// Basis index `i` holds weight `μ = i - j`, so the ordering matches the
/// monomials `z^{j+μ}` of the polynomial realization.
#[derive(Clone, Debug)]
pub struct SpinRep<T> {
    j: HalfInt,
    j1: ComplexMatrix<T>,
    j2: ComplexMatrix<T>,
    j3: ComplexMatrix<T>,
    j2_eigen: HermitianEigen<T>,
}

impl<T: Real> SpinRep<T> {
    pub fn new(j: HalfInt) -> Result<Self> {
        if j.doubled() < 0 {
            return Err(domain(format!("spin j = {j} must be non-negative")));
        }
        let dim = j.doubled() as usize + 1;
        let jr: T = j.to_real();
        let mut jp = ComplexMatrix::zeros(dim, dim);
        for i in 0..dim - 1 {
            // J+ |μ> = sqrt((j - μ)(j + μ + 1)) |μ + 1>
            let mu = T::from_usize_lossy(i) - jr;
            let c = ((jr - mu) * (jr + mu + T::one())).sqrt();
            jp[(i + 1, i)] = Complex::new(c, T::zero());
        }
        let jm = jp.adjoint();
        let half = T::lit(0.5);
        let j1 = (&jp + &jm).scale_real(half);
        let j2 = (&jp - &jm).scale(Complex::new(T::zero(), -half));
        let j3 = ComplexMatrix::diagonal(
            &(0..dim)
                .map(|i| Complex::new(T::from_usize_lossy(i) - jr, T::zero()))
                .collect::<Vec<_>>(),
        );
        let j2_eigen = j2.hermitian_eigen()?;
        Ok(Self {
            j,
            j1,
            j2,
            j3,
            j2_eigen,
        })
    }

    #[inline]
    pub fn j(&self) -> HalfInt {
        self.j
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.j.doubled() as usize + 1
    }

    pub fn generators(&self) -> [&ComplexMatrix<T>; 3] {
        [&self.j1, &self.j2, &self.j3]
    }

    pub fn j1(&self) -> &ComplexMatrix<T> {
        &self.j1
    }

    pub fn j2(&self) -> &ComplexMatrix<T> {
        &self.j2
    }

    pub fn j3(&self) -> &ComplexMatrix<T> {
        &self.j3
    }

    /// `n·J`
    pub fn projected(&self, n: [T; 3]) -> ComplexMatrix<T> {
        let a = self.j1.scale_real(n[0]);
        let b = self.j2.scale_real(n[1]);
        let c = self.j3.scale_real(n[2]);
        &(&a + &b) + &c
    }

    pub fn check_weight(&self, mu: HalfInt) -> Result<()> {
        if !mu.same_parity(self.j) {
            return Err(domain(format!("weight {mu} does not match the character of j = {}", self.j)));
        }
        if mu.abs() > self.j {
            return Err(domain(format!("|μ| = {} exceeds j = {}", mu.abs(), self.j)));
        }
        Ok(())
    }

    /// Basis index of weight `μ`.
    pub fn index(&self, mu: HalfInt) -> Result<usize> {
        self.check_weight(mu)?;
        Ok(((mu + self.j).doubled() / 2) as usize)
    }

    pub fn weight_of(&self, index: usize) -> HalfInt {
        HalfInt::from_doubled(2 * index as i32 - self.j.doubled())
    }

    pub fn basis_state(&self, mu: HalfInt) -> Result<ComplexVector<T>> {
        let i = self.index(mu)?;
        Ok(crate::mathcore::linalg::basis_vector(self.dim(), i))
    }

    /// `exp(-iθ J_2) v`, through the cached spectral decomposition of `J_2`.
    pub fn rotate_y(&self, theta: T, v: &[Complex<T>]) -> ComplexVector<T> {
        self.j2_eigen.apply_function(|l| Complex::from_polar(T::one(), -theta * l), v)
    }

    /// `exp(-iθ J_2)` as a matrix.
    pub fn rotation_y(&self, theta: T) -> ComplexMatrix<T> {
        self.j2_eigen.map_spectrum(|l| Complex::from_polar(T::one(), -theta * l))
    }

    /// `exp(-iφ J_3) v`
    pub fn rotate_z(&self, phi: T, v: &[Complex<T>]) -> ComplexVector<T> {
        v.iter()
            .enumerate()
            .map(|(i, &c)| {
                let mu: T = self.weight_of(i).to_real();
                c * Complex::from_polar(T::one(), -phi * mu)
            })
            .collect()
    }

    /// Representation operator `T(g)`.
    pub fn operator(&self, g: &SU2Element<T>) -> ComplexMatrix<T> {
        let (theta, half_sum, half_diff) = g.half_angles();
        let d = self.rotation_y(theta);
        let dim = self.dim();
        ComplexMatrix::from_fn(dim, dim, |r, c| {
            let mr = self.weight_of(r);
            let mc = self.weight_of(c);
            let s = (mr + mc).doubled() / 2;
            let df = (mr - mc).doubled() / 2;
            let ph = -(T::from_i64_lossy(s as i64) * half_sum + T::from_i64_lossy(df as i64) * half_diff);
            d[(r, c)] * Complex::from_polar(T::one(), ph)
        })
    }

    /// `exp(-iα J_3) exp(-iβ J_2) exp(-iγ J_3)`
    pub fn euler_operator(&self, e: &EulerAngles<T>) -> ComplexMatrix<T> {
        self.operator(&SU2Element::from_euler(e.alpha, e.beta, e.gamma))
    }
}

/// `[[α, β], [-β̄, ᾱ]]` with `|α|² + |β|² = 1`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SU2Element<T> {
    alpha: Complex<T>,
    beta: Complex<T>,
}

impl<T: Real> SU2Element<T> {
    pub fn new(alpha: Complex<T>, beta: Complex<T>) -> Result<Self> {
        let n = alpha.norm_sqr() + beta.norm_sqr();
        if (n - T::one()).abs() > T::tol(1e-12) {
            return Err(domain(format!("|α|² + |β|² = {n}, expected 1")));
        }
        Ok(Self { alpha, beta })
    }

    pub fn identity() -> Self {
        Self {
            alpha: Complex::new(T::one(), T::zero()),
            beta: Complex::zero(),
        }
    }

    /// `exp(-iφσ₃/2) exp(-iθσ₂/2) exp(-iψσ₃/2)`
    pub fn from_euler(phi: T, theta: T, psi: T) -> Self {
        let (s, c) = (theta / T::lit(2.0)).sin_cos();
        let sum = (phi + psi) / T::lit(2.0);
        let diff = (phi - psi) / T::lit(2.0);
        Self {
            alpha: Complex::from_polar(c, -sum),
            beta: -Complex::from_polar(s, -diff),
        }
    }

    /// Diagonal element `diag(e^{iψ/2}, e^{-iψ/2})`.
    pub fn diagonal(psi: T) -> Self {
        Self {
            alpha: Complex::from_polar(T::one(), psi / T::lit(2.0)),
            beta: Complex::zero(),
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

    /// `(θ, (φ+ψ)/2, (φ-ψ)/2)` reproducing `α` and `β` exactly through
    /// [`SU2Element::from_euler`]'s formulas.
    pub(crate) fn half_angles(&self) -> (T, T, T) {
        let theta = T::lit(2.0) * self.beta.norm().atan2(self.alpha.norm());
        let half_sum = if self.alpha.norm() > T::zero() {
            -self.alpha.arg()
        } else {
            T::zero()
        };
        let half_diff = if self.beta.norm() > T::zero() {
            -(-self.beta).arg()
        } else {
            T::zero()
        };
        (theta, half_sum, half_diff)
    }

    /// `g₁ g₂`
    pub fn compose(&self, rhs: &Self) -> Self {
        Self {
            alpha: self.alpha * rhs.alpha - self.beta * rhs.beta.conj(),
            beta: self.alpha * rhs.beta + self.beta * rhs.alpha.conj(),
        }
    }

    pub fn inverse(&self) -> Self {
        Self {
            alpha: self.alpha.conj(),
            beta: -self.beta,
        }
    }

    pub fn matrix(&self) -> [[Complex<T>; 2]; 2] {
        [[self.alpha, self.beta], [-self.beta.conj(), self.alpha.conj()]]
    }

    /// SO(3) image: `g (n·σ) g† = (R n)·σ`.
    pub fn rotation_matrix(&self) -> [[T; 3]; 3] {
        let g = self.matrix();
        let zero = Complex::zero();
        let one = Complex::new(T::one(), T::zero());
        let i = Complex::new(T::zero(), T::one());
        let sigma = [[[zero, one], [one, zero]], [[zero, -i], [i, zero]], [[one, zero], [zero, -one]]];
        let mul = |a: &[[Complex<T>; 2]; 2], b: &[[Complex<T>; 2]; 2]| {
            let mut out = [[zero; 2]; 2];
            for r in 0..2 {
                for c in 0..2 {
                    out[r][c] = a[r][0] * b[0][c] + a[r][1] * b[1][c];
                }
            }
            out
        };
        let gd = [[g[0][0].conj(), g[1][0].conj()], [g[0][1].conj(), g[1][1].conj()]];
        let mut r = [[T::zero(); 3]; 3];
        for (col, s) in sigma.iter().enumerate() {
            let m = mul(&mul(&g, s), &gd);
            for (row, t) in sigma.iter().enumerate() {
                let p = mul(t, &m);
                r[row][col] = ((p[0][0] + p[1][1]) * T::lit(0.5)).re;
            }
        }
        r
    }

    pub fn rotate_vector(&self, v: [T; 3]) -> [T; 3] {
        let r = self.rotation_matrix();
        [
            r[0][0] * v[0] + r[0][1] * v[1] + r[0][2] * v[2],
            r[1][0] * v[0] + r[1][1] * v[1] + r[1][2] * v[2],
            r[2][0] * v[0] + r[2][1] * v[1] + r[2][2] * v[2],
        ]
    }

    /// `g·n` on the sphere.
    pub fn act(&self, p: &SpherePoint<T>) -> SpherePoint<T> {
        SpherePoint::from_vector(self.rotate_vector(p.unit_vector()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mathcore::special::wigner_small_d;

    fn h(t: i32) -> HalfInt {
        HalfInt::from_doubled(t)
    }

    #[test]
    fn algebra_and_casimir() {
        for twice in 0..=8 {
            let rep = SpinRep::<f64>::new(h(twice)).unwrap();
            let [j1, j2, j3] = rep.generators();
            let i = Complex::new(0.0, 1.0);
            assert!(j1.commutator(j2).max_abs_diff(&j3.scale(i)) < 1e-12);
            assert!(j2.commutator(j3).max_abs_diff(&j1.scale(i)) < 1e-12);
            assert!(j3.commutator(j1).max_abs_diff(&j2.scale(i)) < 1e-12);
            let cas = &(&j1.matmul(j1) + &j2.matmul(j2)) + &j3.matmul(j3);
            let jr = twice as f64 / 2.0;
            let expect = ComplexMatrix::identity(rep.dim()).scale_real(jr * (jr + 1.0));
            assert!(cas.max_abs_diff(&expect) < 1e-10);
            for g in rep.generators() {
                assert!(g.is_hermitian(1e-14));
            }
        }
    }

    #[test]
    fn rotation_y_matches_wigner_sum() {
        for twice in 0..=8 {
            let j = h(twice);
            let rep = SpinRep::<f64>::new(j).unwrap();
            for theta in [0.3, 1.1, 2.7] {
                let d = rep.rotation_y(theta);
                for mu in j.weights() {
                    for nu in j.weights() {
                        let w = wigner_small_d(j, mu, nu, theta).unwrap();
                        let m = d[(rep.index(mu).unwrap(), rep.index(nu).unwrap())];
                        assert!((m.re - w).abs() < 1e-10 && m.im.abs() < 1e-10, "j={j} μ={mu} ν={nu}");
                    }
                }
            }
        }
    }

    #[test]
    fn operator_is_a_representation() {
        let rep = SpinRep::<f64>::new(h(3)).unwrap();
        let g1 = SU2Element::from_euler(0.4, 1.2, -0.7);
        let g2 = SU2Element::from_euler(2.1, 0.3, 1.9);
        let lhs = rep.operator(&g1).matmul(&rep.operator(&g2));
        let rhs = rep.operator(&g1.compose(&g2));
        assert!(lhs.max_abs_diff(&rhs) < 1e-12);
        assert!(rep.operator(&g1).unitarity_defect() < 1e-13);
        let spin_half = SpinRep::<f64>::new(h(1)).unwrap().operator(&g1);
        let m = g1.matrix();
        // spin-1/2 basis is (μ=-1/2, μ=+1/2): reversed relative to the 2x2 matrix
        assert!((spin_half[(1, 1)] - m[0][0]).norm() < 1e-14);
        assert!((spin_half[(1, 0)] - m[0][1]).norm() < 1e-14);
        assert!((spin_half[(0, 1)] - m[1][0]).norm() < 1e-14);
    }

    #[test]
    fn rotation_matrix_is_orthogonal_and_rotates_generators() {
        let rep = SpinRep::<f64>::new(h(2)).unwrap();
        let g = SU2Element::from_euler(0.9, 2.2, 0.4);
        let u = rep.operator(&g);
        let n = [0.48, -0.6, 0.64];
        let lhs = u.matmul(&rep.projected(n)).matmul(&u.adjoint());
        let rhs = rep.projected(g.rotate_vector(n));
        assert!(lhs.max_abs_diff(&rhs) < 1e-12);
    }

    #[test]
    fn element_validation() {
        assert!(SU2Element::new(Complex::new(1.0, 0.0), Complex::new(0.1, 0.0)).is_err());
        assert!(SpinRep::<f64>::new(h(-2)).is_err());
    }
}
