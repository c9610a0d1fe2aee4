//! Scalar abstraction and exact half-integer weights.

use std::fmt;
use std::iter::Sum;
use std::str::FromStr;

use num_traits::{Float, FloatConst, FromPrimitive, NumAssign, ToPrimitive};

use crate::error::Error;

/// Real floating-point scalar the numerical core is generic over (`f32` or `f64`).
pub trait Real:
    Float
    + FloatConst
    + FromPrimitive
    + ToPrimitive
    + NumAssign
    + Sum
    + Default
    + fmt::Debug
    + fmt::Display
    + Send
    + Sync
    + 'static
{
    /// Converts an `f64` literal.
    #[inline]
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("f64 literal representable")
    }

    #[inline]
    fn from_usize_lossy(n: usize) -> Self {
        Self::from_usize(n).expect("usize representable")
    }

    #[inline]
    fn from_i64_lossy(n: i64) -> Self {
        Self::from_i64(n).expect("i64 representable")
    }

    /// A validation tolerance: the requested `f64` value, floored at a few
    /// hundred ulps of the scalar so `f32` builds do not reject valid input.
    #[inline]
    fn tol(x: f64) -> Self {
        let floor = Self::epsilon() * Self::lit(256.0);
        Self::lit(x).max(floor)
    }

    #[inline]
    fn as_f64(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl Real for f32 {}
impl Real for f64 {}

/// An integer or half-integer stored exactly as twice its value.
///
/// Angular-momentum labels (`j`, `μ`, `ν`) live here so that weight
/// arithmetic and parity checks never touch floating point.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct HalfInt(i32);

impl HalfInt {
    pub const ZERO: HalfInt = HalfInt(0);
    pub const HALF: HalfInt = HalfInt(1);
    pub const ONE: HalfInt = HalfInt(2);

    #[inline]
    pub const fn from_doubled(twice: i32) -> Self {
        HalfInt(twice)
    }

    #[inline]
    pub const fn from_int(n: i32) -> Self {
        HalfInt(2 * n)
    }

    #[inline]
    pub const fn doubled(self) -> i32 {
        self.0
    }

    #[inline]
    pub const fn is_integer(self) -> bool {
        self.0 % 2 == 0
    }

    /// True when both are integers or both are half-odd-integers.
    #[inline]
    pub const fn same_parity(self, other: HalfInt) -> bool {
        (self.0 - other.0) % 2 == 0
    }

    /// Integer value, if this is an integer.
    #[inline]
    pub fn to_integer(self) -> Option<i32> {
        self.is_integer().then_some(self.0 / 2)
    }

    #[inline]
    pub fn abs(self) -> Self {
        HalfInt(self.0.abs())
    }

    #[inline]
    pub fn to_real<T: Real>(self) -> T {
        T::from_i64_lossy(self.0 as i64) / T::lit(2.0)
    }

    /// `-j, -j+1, ..., j`.
    pub fn weights(self) -> impl DoubleEndedIterator<Item = HalfInt> + Clone {
        let j = self.0;
        (0..j.max(-1) + 1).map(move |i| HalfInt(-j + 2 * i))
    }
}

impl std::ops::Add for HalfInt {
    type Output = HalfInt;
    fn add(self, rhs: HalfInt) -> HalfInt {
        HalfInt(self.0 + rhs.0)
    }
}

impl std::ops::Sub for HalfInt {
    type Output = HalfInt;
    fn sub(self, rhs: HalfInt) -> HalfInt {
        HalfInt(self.0 - rhs.0)
    }
}

impl std::ops::Neg for HalfInt {
    type Output = HalfInt;
    fn neg(self) -> HalfInt {
        HalfInt(-self.0)
    }
}

impl fmt::Display for HalfInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.0 / 2)
        } else {
            write!(f, "{}/2", self.0)
        }
    }
}

impl fmt::Debug for HalfInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Accepts `3`, `-1`, `5/2`, `2.5`.
impl FromStr for HalfInt {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let bad = || Error::Parse(format!("not an integer or half-integer: {s:?}"));
        if let Some((num, den)) = s.split_once('/') {
            let num: i32 = num.trim().parse().map_err(|_| bad())?;
            match den.trim() {
                "1" => Ok(HalfInt(2 * num)),
                "2" => Ok(HalfInt(num)),
                _ => Err(bad()),
            }
        } else if let Ok(n) = s.parse::<i32>() {
            Ok(HalfInt(2 * n))
        } else {
            let x: f64 = s.parse().map_err(|_| bad())?;
            let twice = 2.0 * x;
            if twice.is_finite() && twice.fract() == 0.0 && twice.abs() < i32::MAX as f64 {
                Ok(HalfInt(twice as i32))
            } else {
                Err(bad())
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_fractions_and_decimals() {
        assert_eq!("5/2".parse::<HalfInt>().unwrap(), HalfInt::from_doubled(5));
        assert_eq!("2.5".parse::<HalfInt>().unwrap(), HalfInt::from_doubled(5));
        assert_eq!("-1".parse::<HalfInt>().unwrap(), HalfInt::from_int(-1));
        assert!("1/3".parse::<HalfInt>().is_err());
        assert!("0.3".parse::<HalfInt>().is_err());
    }

    #[test]
    fn weights_run_from_minus_j_to_j() {
        let w: Vec<_> = HalfInt::from_doubled(3).weights().collect();
        assert_eq!(
            w,
            vec![
                HalfInt::from_doubled(-3),
                HalfInt::from_doubled(-1),
                HalfInt::from_doubled(1),
                HalfInt::from_doubled(3)
            ]
        );
        assert_eq!(format!("{}", HalfInt::from_doubled(-3)), "-3/2");
    }

    #[test]
    fn tolerance_floor_depends_on_scalar() {
        assert_eq!(f64::tol(1e-12), 1e-12);
        assert!(f32::tol(1e-12) > 1e-6);
    }
}
