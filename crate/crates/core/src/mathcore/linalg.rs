//! Dense complex linear algebra on explicit orthonormal bases.

use std::ops::{Add, Index, IndexMut, Mul, Sub};

use num_complex::Complex;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::mathcore::sum::CompensatedComplexSum;
use crate::scalar::Real;

/// State vector in an explicit orthonormal basis.
pub type ComplexVector<T> = Vec<Complex<T>>;

/// Dense row-major complex matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct ComplexMatrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<Complex<T>>,
}

impl<T: Real> ComplexMatrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![Complex::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Complex::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Complex<T>) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    pub fn from_row_major(rows: usize, cols: usize, data: Vec<Complex<T>>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::Dimension {
                expected: rows * cols,
                got: data.len(),
            });
        }
        Ok(Self { rows, cols, data })
    }

    pub fn diagonal(diag: &[Complex<T>]) -> Self {
        let mut m = Self::zeros(diag.len(), diag.len());
        for (i, &d) in diag.iter().enumerate() {
            m[(i, i)] = d;
        }
        m
    }

    /// `|u><v|`
    pub fn outer(u: &[Complex<T>], v: &[Complex<T>]) -> Self {
        Self::from_fn(u.len(), v.len(), |i, j| u[i] * v[j].conj())
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn as_slice(&self) -> &[Complex<T>] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[Complex<T>] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> ComplexVector<T> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }

    pub fn scale(&self, s: Complex<T>) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&x| x * s).collect(),
        }
    }

    pub fn scale_real(&self, s: T) -> Self {
        self.scale(Complex::new(s, T::zero()))
    }

    pub fn trace(&self) -> Complex<T> {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)]).fold(Complex::zero(), |a, b| a + b)
    }

    /// Leading `n x n` block.
    pub fn leading_block(&self, n: usize) -> Self {
        Self::from_fn(n, n, |i, j| self[(i, j)])
    }

    pub fn max_abs(&self) -> T {
        self.data.iter().map(|z| z.norm()).fold(T::zero(), T::max)
    }

    /// `max |a_ij - b_ij|`
    pub fn max_abs_diff(&self, other: &Self) -> T {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (*a - *b).norm())
            .fold(T::zero(), T::max)
    }

    /// `max |M - M^dagger|`
    pub fn hermiticity_defect(&self) -> T {
        assert!(self.is_square());
        let mut worst = T::zero();
        for i in 0..self.rows {
            for j in i..self.cols {
                worst = worst.max((self[(i, j)] - self[(j, i)].conj()).norm());
            }
        }
        worst
    }

    pub fn is_hermitian(&self, tol: T) -> bool {
        self.is_square() && self.hermiticity_defect() <= tol
    }

    /// `max |M^dagger M - I|`
    pub fn unitarity_defect(&self) -> T {
        (self.adjoint().matmul(self)).max_abs_diff(&Self::identity(self.cols))
    }

    pub fn matmul(&self, rhs: &Self) -> Self {
        assert_eq!(self.cols, rhs.rows, "matmul dimension mismatch");
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                let rrow = rhs.row(k);
                let orow = &mut out.data[i * rhs.cols..(i + 1) * rhs.cols];
                for (o, &b) in orow.iter_mut().zip(rrow) {
                    *o += a * b;
                }
            }
        }
        out
    }

    pub fn apply(&self, v: &[Complex<T>]) -> ComplexVector<T> {
        assert_eq!(self.cols, v.len(), "matrix-vector dimension mismatch");
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(Complex::zero(), |acc, (&a, &b)| acc + a * b)
            })
            .collect()
    }

    /// `A B - B A`
    pub fn commutator(&self, rhs: &Self) -> Self {
        &self.matmul(rhs) - &rhs.matmul(self)
    }

    /// Kronecker product `self ⊗ rhs`.
    pub fn kron(&self, rhs: &Self) -> Self {
        let (r2, c2) = (rhs.rows, rhs.cols);
        Self::from_fn(self.rows * r2, self.cols * c2, |r, c| self[(r / r2, c / c2)] * rhs[(r % r2, c % c2)])
    }

    /// `sum_ij conj(A_ij) B_ij`
    pub fn hs_inner(&self, rhs: &Self) -> Complex<T> {
        let mut acc = CompensatedComplexSum::new();
        for (a, b) in self.data.iter().zip(&rhs.data) {
            acc.add(a.conj() * b);
        }
        acc.value()
    }

    /// Eigen-decomposition of a Hermitian matrix by cyclic complex Jacobi
    /// rotations. Eigenvalues ascend; eigenvector `i` is column `i`.
    pub fn hermitian_eigen(&self) -> Result<HermitianEigen<T>> {
        if !self.is_square() {
            return Err(Error::Dimension {
                expected: self.rows,
                got: self.cols,
            });
        }
        jacobi_eigen(self)
    }

    /// Solves `A x = b` by LU with partial pivoting.
    pub fn solve(&self, b: &[Complex<T>]) -> Result<ComplexVector<T>> {
        if !self.is_square() || b.len() != self.rows {
            return Err(Error::Dimension {
                expected: self.rows,
                got: b.len(),
            });
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut x: ComplexVector<T> = b.to_vec();
        let scale = a.max_abs().max(T::min_positive_value());
        for col in 0..n {
            let pivot = (col..n)
                .max_by(|&i, &j| a[(i, col)].norm().partial_cmp(&a[(j, col)].norm()).unwrap())
                .unwrap();
            if a[(pivot, col)].norm() <= scale * T::epsilon() * T::from_usize_lossy(n) {
                return Err(Error::Singular);
            }
            if pivot != col {
                for k in 0..n {
                    a.data.swap(pivot * n + k, col * n + k);
                }
                x.swap(pivot, col);
            }
            let d = a[(col, col)];
            for i in col + 1..n {
                let f = a[(i, col)] / d;
                if f.is_zero() {
                    continue;
                }
                for k in col..n {
                    let v = a[(col, k)];
                    a[(i, k)] -= f * v;
                }
                let xc = x[col];
                x[i] -= f * xc;
            }
        }
        for i in (0..n).rev() {
            let mut s = x[i];
            for k in i + 1..n {
                s -= a[(i, k)] * x[k];
            }
            x[i] = s / a[(i, i)];
        }
        Ok(x)
    }
}

impl<T> Index<(usize, usize)> for ComplexMatrix<T> {
    type Output = Complex<T>;
    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &Complex<T> {
        &self.data[i * self.cols + j]
    }
}

impl<T> IndexMut<(usize, usize)> for ComplexMatrix<T> {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex<T> {
        &mut self.data[i * self.cols + j]
    }
}

impl<T: Real> Add for &ComplexMatrix<T> {
    type Output = ComplexMatrix<T>;
    fn add(self, rhs: &ComplexMatrix<T>) -> ComplexMatrix<T> {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl<T: Real> Sub for &ComplexMatrix<T> {
    type Output = ComplexMatrix<T>;
    fn sub(self, rhs: &ComplexMatrix<T>) -> ComplexMatrix<T> {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }
}

impl<T: Real> Mul for &ComplexMatrix<T> {
    type Output = ComplexMatrix<T>;
    fn mul(self, rhs: &ComplexMatrix<T>) -> ComplexMatrix<T> {
        self.matmul(rhs)
    }
}

/// Result of [`ComplexMatrix::hermitian_eigen`].
#[derive(Clone, Debug)]
pub struct HermitianEigen<T> {
    pub values: Vec<T>,
    pub vectors: ComplexMatrix<T>,
}

impl<T: Real> HermitianEigen<T> {
    /// `V f(Λ) V^dagger` for a scalar function of the eigenvalues.
    pub fn map_spectrum(&self, f: impl Fn(T) -> Complex<T>) -> ComplexMatrix<T> {
        let n = self.values.len();
        let fv: Vec<Complex<T>> = self.values.iter().map(|&l| f(l)).collect();
        let v = &self.vectors;
        ComplexMatrix::from_fn(n, n, |i, j| {
            (0..n).fold(Complex::<T>::zero(), |acc, k| acc + v[(i, k)] * fv[k] * v[(j, k)].conj())
        })
    }

    /// `V f(Λ) V^dagger x` without forming the matrix.
    pub fn apply_function(&self, f: impl Fn(T) -> Complex<T>, x: &[Complex<T>]) -> ComplexVector<T> {
        let n = self.values.len();
        let v = &self.vectors;
        let coeffs: Vec<Complex<T>> = (0..n)
            .map(|k| {
                let proj = (0..n).fold(Complex::<T>::zero(), |acc, i| acc + v[(i, k)].conj() * x[i]);
                proj * f(self.values[k])
            })
            .collect();
        (0..n)
            .map(|i| (0..n).fold(Complex::<T>::zero(), |acc, k| acc + v[(i, k)] * coeffs[k]))
            .collect()
    }

    pub fn min(&self) -> T {
        self.values.first().copied().unwrap_or_else(T::zero)
    }

    pub fn max(&self) -> T {
        self.values.last().copied().unwrap_or_else(T::zero)
    }
}

const MAX_SWEEPS: usize = 100;

fn jacobi_eigen<T: Real>(m: &ComplexMatrix<T>) -> Result<HermitianEigen<T>> {
    let n = m.rows;
    let mut a = m.clone();
    // symmetrize so round-off in the input cannot stall the sweeps
    for i in 0..n {
        a[(i, i)] = Complex::new(a[(i, i)].re, T::zero());
        for j in i + 1..n {
            let h = (a[(i, j)] + a[(j, i)].conj()).scale(T::lit(0.5));
            a[(i, j)] = h;
            a[(j, i)] = h.conj();
        }
    }
    let mut v = ComplexMatrix::identity(n);
    let total: T = a.data.iter().map(|z| z.norm_sqr()).sum();
    let threshold = total * T::epsilon() * T::epsilon();

    let mut converged = n < 2;
    for _ in 0..MAX_SWEEPS {
        let off: T = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| a[(i, j)].norm_sqr())
            .sum();
        if off <= threshold {
            converged = true;
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[(p, q)];
                let mag = apq.norm();
                if mag == T::zero() {
                    continue;
                }
                let phase = apq / mag;
                let app = a[(p, p)].re;
                let aqq = a[(q, q)].re;
                let theta = (aqq - app) / (T::lit(2.0) * mag);
                let t = if theta.is_infinite() {
                    T::zero()
                } else {
                    let t = T::one() / (theta.abs() + (theta * theta + T::one()).sqrt());
                    if theta < T::zero() {
                        -t
                    } else {
                        t
                    }
                };
                let c = T::one() / (t * t + T::one()).sqrt();
                let s = t * c;
                // U = diag(1, conj(phase)) * [[c, s], [-s, c]]
                let upp = Complex::new(c, T::zero());
                let upq = Complex::new(s, T::zero());
                let uqp = phase.conj() * (-s);
                let uqq = phase.conj() * c;
                for k in 0..n {
                    let akp = a[(k, p)];
                    let akq = a[(k, q)];
                    a[(k, p)] = akp * upp + akq * uqp;
                    a[(k, q)] = akp * upq + akq * uqq;
                }
                for k in 0..n {
                    let apk = a[(p, k)];
                    let aqk = a[(q, k)];
                    a[(p, k)] = upp.conj() * apk + uqp.conj() * aqk;
                    a[(q, k)] = upq.conj() * apk + uqq.conj() * aqk;
                }
                a[(p, q)] = Complex::zero();
                a[(q, p)] = Complex::zero();
                a[(p, p)] = Complex::new(a[(p, p)].re, T::zero());
                a[(q, q)] = Complex::new(a[(q, q)].re, T::zero());
                for k in 0..n {
                    let vkp = v[(k, p)];
                    let vkq = v[(k, q)];
                    v[(k, p)] = vkp * upp + vkq * uqp;
                    v[(k, q)] = vkp * upq + vkq * uqq;
                }
            }
        }
    }
    if !converged {
        return Err(Error::NoConvergence { sweeps: MAX_SWEEPS });
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(i, i)].re.partial_cmp(&a[(j, j)].re).unwrap());
    let values = order.iter().map(|&i| a[(i, i)].re).collect();
    let vectors = ComplexMatrix::from_fn(n, n, |i, k| v[(i, order[k])]);
    Ok(HermitianEigen { values, vectors })
}

/// `<u|v>`, antilinear in `u`.
pub fn inner<T: Real>(u: &[Complex<T>], v: &[Complex<T>]) -> Complex<T> {
    assert_eq!(u.len(), v.len(), "inner product dimension mismatch");
    let mut acc = CompensatedComplexSum::new();
    for (a, b) in u.iter().zip(v) {
        acc.add(a.conj() * b);
    }
    acc.value()
}

pub fn norm<T: Real>(v: &[Complex<T>]) -> T {
    v.iter().map(|z| z.norm_sqr()).sum::<T>().sqrt()
}

pub fn basis_vector<T: Real>(dim: usize, i: usize) -> ComplexVector<T> {
    let mut v = vec![Complex::zero(); dim];
    v[i] = Complex::one();
    v
}

/// `max_i |u_i - v_i|`
pub fn max_abs_diff<T: Real>(u: &[Complex<T>], v: &[Complex<T>]) -> T {
    assert_eq!(u.len(), v.len());
    u.iter().zip(v).map(|(a, b)| (*a - *b).norm()).fold(T::zero(), T::max)
}

/// `Σ_i w_i |v_i><v_i|` restricted to the leading `dim` components, each
/// entry accumulated with compensation so the result is independent of how
/// the states were produced.
pub fn weighted_outer_sum<T: Real>(states: &[ComplexVector<T>], weights: &[T], dim: usize) -> ComplexMatrix<T> {
    assert_eq!(states.len(), weights.len());
    let mut acc = vec![CompensatedComplexSum::new(); dim * dim];
    for (v, &w) in states.iter().zip(weights) {
        for r in 0..dim {
            let vr = v[r] * w;
            for c in 0..dim {
                acc[r * dim + c].add(vr * v[c].conj());
            }
        }
    }
    ComplexMatrix::from_fn(dim, dim, |r, c| acc[r * dim + c].value())
}

/// `Σ_i w_i |v_i><v_i|` with complex weights.
pub fn complex_weighted_outer_sum<T: Real>(states: &[ComplexVector<T>], weights: &[Complex<T>], dim: usize) -> ComplexMatrix<T> {
    assert_eq!(states.len(), weights.len());
    let mut acc = vec![CompensatedComplexSum::new(); dim * dim];
    for (v, &w) in states.iter().zip(weights) {
        for r in 0..dim {
            let vr = v[r] * w;
            for c in 0..dim {
                acc[r * dim + c].add(vr * v[c].conj());
            }
        }
    }
    ComplexMatrix::from_fn(dim, dim, |r, c| acc[r * dim + c].value())
}

/// `Σ_i w_i M_i`, entrywise compensated.
pub fn weighted_matrix_sum<T: Real>(mats: &[ComplexMatrix<T>], weights: &[Complex<T>]) -> Result<ComplexMatrix<T>> {
    assert_eq!(mats.len(), weights.len());
    let Some(first) = mats.first() else {
        return Err(Error::Domain("empty matrix sum".into()));
    };
    let (rows, cols) = (first.rows(), first.cols());
    let mut acc = vec![CompensatedComplexSum::new(); rows * cols];
    for (m, &w) in mats.iter().zip(weights) {
        if m.rows() != rows || m.cols() != cols {
            return Err(Error::Dimension {
                expected: rows * cols,
                got: m.rows() * m.cols(),
            });
        }
        for (a, x) in acc.iter_mut().zip(m.as_slice()) {
            a.add(*x * w);
        }
    }
    Ok(ComplexMatrix::from_fn(rows, cols, |r, c| acc[r * cols + c].value()))
}

/// Distance between two vectors after removing the best global phase:
/// `min_phi || u - e^{i phi} v ||`.
pub fn phase_insensitive_distance<T: Real>(u: &[Complex<T>], v: &[Complex<T>]) -> T {
    let ov = inner(v, u);
    let phase = if ov.norm() > T::zero() {
        ov / ov.norm()
    } else {
        Complex::one()
    };
    let diff: ComplexVector<T> = u.iter().zip(v).map(|(a, b)| *a - phase * b).collect();
    norm(&diff)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex<f64> {
        Complex::new(re, im)
    }

    #[test]
    fn eigen_reconstructs_hermitian_matrix() {
        let m = ComplexMatrix::from_row_major(
            3,
            3,
            vec![
                c(2.0, 0.0),
                c(1.0, -1.0),
                c(0.0, 0.5),
                c(1.0, 1.0),
                c(-1.0, 0.0),
                c(0.3, 0.0),
                c(0.0, -0.5),
                c(0.3, 0.0),
                c(0.7, 0.0),
            ],
        )
        .unwrap();
        let eig = m.hermitian_eigen().unwrap();
        let back = eig.map_spectrum(|l| Complex::new(l, 0.0));
        assert!(back.max_abs_diff(&m) < 1e-13);
        assert!(eig.vectors.unitarity_defect() < 1e-13);
        assert!(eig.values.windows(2).all(|w| w[0] <= w[1]));
        let tr: f64 = eig.values.iter().sum();
        assert!((tr - 1.7).abs() < 1e-13);
    }

    #[test]
    fn eigen_of_pauli_y() {
        let y = ComplexMatrix::from_row_major(2, 2, vec![c(0.0, 0.0), c(0.0, -1.0), c(0.0, 1.0), c(0.0, 0.0)]).unwrap();
        let eig = y.hermitian_eigen().unwrap();
        assert!((eig.values[0] + 1.0).abs() < 1e-15);
        assert!((eig.values[1] - 1.0).abs() < 1e-15);
    }

    #[test]
    fn solve_matches_product() {
        let a = ComplexMatrix::from_fn(4, 4, |i, j| c((i * 3 + j) as f64 % 5.0 + if i == j { 4.0 } else { 0.0 }, (i as f64) - (j as f64)));
        let x: Vec<_> = (0..4).map(|i| c(i as f64, 1.0 - i as f64)).collect();
        let b = a.apply(&x);
        let sol = a.solve(&b).unwrap();
        assert!(max_abs_diff(&sol, &x) < 1e-12);
    }

    #[test]
    fn solve_detects_singular() {
        let a = ComplexMatrix::<f64>::zeros(2, 2);
        assert_eq!(a.solve(&[c(1.0, 0.0), c(0.0, 0.0)]), Err(Error::Singular));
    }

    #[test]
    fn phase_insensitive_distance_ignores_global_phase() {
        let u = vec![c(0.6, 0.0), c(0.0, 0.8)];
        let ph = Complex::from_polar(1.0, 0.7);
        let v: Vec<_> = u.iter().map(|z| z * ph).collect();
        assert!(phase_insensitive_distance(&u, &v) < 1e-15);
    }

    #[test]
    fn works_in_single_precision() {
        let m = ComplexMatrix::<f32>::from_fn(3, 3, |i, j| {
            if i == j {
                Complex::new(i as f32, 0.0)
            } else {
                Complex::new(0.1, if i < j { 0.2 } else { -0.2 })
            }
        });
        let eig = m.hermitian_eigen().unwrap();
        let back = eig.map_spectrum(|l| Complex::new(l, 0.0));
        assert!(back.max_abs_diff(&m) < 1e-5);
    }
}
