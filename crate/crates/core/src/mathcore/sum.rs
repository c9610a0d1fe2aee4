//! Compensated (Neumaier) summation.
//!
//! Grid integrals first collect per-node terms (possibly in parallel, order
//! preserved) and then fold them here sequentially, so the result does not
//! depend on how the work was partitioned.

use num_complex::Complex;

use crate::scalar::Real;

#[derive(Clone, Copy, Debug, Default)]
pub struct CompensatedSum<T> {
    sum: T,
    carry: T,
}

impl<T: Real> CompensatedSum<T> {
    pub fn new() -> Self {
        Self {
            sum: T::zero(),
            carry: T::zero(),
        }
    }

    #[inline]
    pub fn add(&mut self, x: T) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.carry += (self.sum - t) + x;
        } else {
            self.carry += (x - t) + self.sum;
        }
        self.sum = t;
    }

    #[inline]
    pub fn value(&self) -> T {
        self.sum + self.carry
    }
}

#[derive(Clone, Copy, Debug, Default)]
pub struct CompensatedComplexSum<T> {
    re: CompensatedSum<T>,
    im: CompensatedSum<T>,
}

impl<T: Real> CompensatedComplexSum<T> {
    pub fn new() -> Self {
        Self {
            re: CompensatedSum::new(),
            im: CompensatedSum::new(),
        }
    }

    #[inline]
    pub fn add(&mut self, z: Complex<T>) {
        self.re.add(z.re);
        self.im.add(z.im);
    }

    #[inline]
    pub fn value(&self) -> Complex<T> {
        Complex::new(self.re.value(), self.im.value())
    }
}

pub fn sum_real<T: Real, I: IntoIterator<Item = T>>(xs: I) -> T {
    let mut acc = CompensatedSum::new();
    for x in xs {
        acc.add(x);
    }
    acc.value()
}

pub fn sum_complex<T: Real, I: IntoIterator<Item = Complex<T>>>(xs: I) -> Complex<T> {
    let mut acc = CompensatedComplexSum::new();
    for x in xs {
        acc.add(x);
    }
    acc.value()
}
