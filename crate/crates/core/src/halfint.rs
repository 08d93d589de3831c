use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;

/// An integer or half-odd-integer, stored as twice its value.
///
/// With odd `Q` the spherical label λ runs over half-odd-integers, so every
/// quantity built from `n + Q/2` and `(L ± J)/2` lives here rather than in `f64`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct HalfInt {
    twice_value: i64,
}

impl HalfInt {
    pub const ZERO: HalfInt = HalfInt { twice_value: 0 };

    pub const fn from_twice(twice_value: i64) -> Self {
        HalfInt { twice_value }
    }

    pub const fn from_int(v: i64) -> Self {
        HalfInt { twice_value: 2 * v }
    }

    pub const fn twice(self) -> i64 {
        self.twice_value
    }

    pub const fn is_integer(self) -> bool {
        self.twice_value % 2 == 0
    }

    /// The value as an integer, if it is one.
    pub fn to_int(self) -> Option<i64> {
        self.is_integer().then_some(self.twice_value / 2)
    }

    pub fn to_f64(self) -> f64 {
        self.twice_value as f64 / 2.0
    }

    pub fn to_rational(self) -> BigRational {
        BigRational::new(BigInt::from(self.twice_value), BigInt::from(2))
    }

    /// `(-1)^self` for integer values.
    pub fn parity_sign(self) -> Option<i64> {
        self.to_int().map(|k| if k.rem_euclid(2) == 0 { 1 } else { -1 })
    }
}

impl From<i64> for HalfInt {
    fn from(v: i64) -> Self {
        HalfInt::from_int(v)
    }
}

impl Add for HalfInt {
    type Output = HalfInt;
    fn add(self, o: HalfInt) -> HalfInt {
        HalfInt::from_twice(self.twice_value + o.twice_value)
    }
}

impl Add<i64> for HalfInt {
    type Output = HalfInt;
    fn add(self, o: i64) -> HalfInt {
        HalfInt::from_twice(self.twice_value + 2 * o)
    }
}

impl Sub for HalfInt {
    type Output = HalfInt;
    fn sub(self, o: HalfInt) -> HalfInt {
        HalfInt::from_twice(self.twice_value - o.twice_value)
    }
}

impl Sub<i64> for HalfInt {
    type Output = HalfInt;
    fn sub(self, o: i64) -> HalfInt {
        HalfInt::from_twice(self.twice_value - 2 * o)
    }
}

impl Neg for HalfInt {
    type Output = HalfInt;
    fn neg(self) -> HalfInt {
        HalfInt::from_twice(-self.twice_value)
    }
}

impl fmt::Display for HalfInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.to_int() {
            Some(v) => write!(f, "{v}"),
            None => write!(f, "{}/2", self.twice_value),
        }
    }
}
