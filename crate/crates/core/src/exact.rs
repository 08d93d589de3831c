//! Exact arithmetic on numbers of the form `c·√d`.
//!
//! Every coefficient of the spherical–parabolic transformation is a rational
//! times the square root of a rational, and every bilinear sum the identities
//! need adds terms with commensurable radicals. [`RadicalScalar`] covers a
//! single term; [`RadicalSum`] keeps a formal sum keyed by squarefree radicand
//! so an identity can be tested for exact zero.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Mul, Neg};

use num_bigint::{BigInt, Sign};
use num_integer::{Integer, Roots};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde_json::{json, Value};

use crate::error::{MiczError, Result};

/// Largest trial divisor used when extracting square factors from a radicand.
pub const TRIAL_DIVISION_BOUND: u64 = 1_000_000;

/// `coeff · √radicand` with an integer, squarefree (up to the trial bound) radicand.
///
/// Zero is `(0, 1)`; the value is rational exactly when the radicand is 1.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RadicalScalar {
    coeff: BigRational,
    radicand: BigInt,
}

impl RadicalScalar {
    pub fn zero() -> Self {
        RadicalScalar { coeff: BigRational::zero(), radicand: BigInt::one() }
    }

    pub fn one() -> Self {
        Self::from_rational(BigRational::one())
    }

    pub fn from_rational(c: BigRational) -> Self {
        RadicalScalar { coeff: c, radicand: BigInt::one() }
    }

    pub fn from_int(v: i64) -> Self {
        Self::from_rational(BigRational::from_integer(v.into()))
    }

    /// `c·√d` for arbitrary rational `c` and non-negative rational `d`.
    pub fn new(c: BigRational, d: BigRational) -> Result<Self> {
        if d.is_negative() {
            return Err(MiczError::InvalidArgument(format!("negative radicand {d}")));
        }
        // √(p/q) = √(pq)/q
        let q = d.denom().clone();
        let pq = d.numer() * &q;
        let (outside, inside) = extract_square(&pq);
        Ok(Self::canonical(c * BigRational::new(outside, q), inside))
    }

    /// `√d` for a non-negative rational.
    pub fn sqrt(d: BigRational) -> Result<Self> {
        Self::new(BigRational::one(), d)
    }

    fn canonical(coeff: BigRational, radicand: BigInt) -> Self {
        if coeff.is_zero() || radicand.is_zero() {
            Self::zero()
        } else {
            RadicalScalar { coeff, radicand }
        }
    }

    pub fn coeff(&self) -> &BigRational {
        &self.coeff
    }

    pub fn radicand(&self) -> &BigInt {
        &self.radicand
    }

    pub fn is_zero(&self) -> bool {
        self.coeff.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.radicand.is_one()
    }

    pub fn signum(&self) -> i32 {
        match self.coeff.numer().sign() {
            Sign::Minus => -1,
            Sign::NoSign => 0,
            Sign::Plus => 1,
        }
    }

    /// `c²·d`, the exact square.
    pub fn square(&self) -> BigRational {
        &self.coeff * &self.coeff * BigRational::from_integer(self.radicand.clone())
    }

    pub fn scale(&self, r: &BigRational) -> Self {
        Self::canonical(&self.coeff * r, self.radicand.clone())
    }

    /// Sum of two terms; fails unless the radicands are commensurable.
    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.is_zero() {
            return Ok(other.clone());
        }
        if other.is_zero() {
            return Ok(self.clone());
        }
        if self.radicand == other.radicand {
            return Ok(Self::canonical(&self.coeff + &other.coeff, self.radicand.clone()));
        }
        // Radicands beyond the trial bound may keep a square factor; a perfect
        // square ratio still means the terms are like.
        if let Some(r) = rational_sqrt(&BigRational::new(other.radicand.clone(), self.radicand.clone())) {
            return Ok(Self::canonical(&self.coeff + &other.coeff * r, self.radicand.clone()));
        }
        Err(MiczError::RadicandMismatch(self.radicand.to_string(), other.radicand.to_string()))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&-other.clone())
    }

    /// Exact ordering by sign and comparison of squares.
    pub fn cmp_exact(&self, other: &Self) -> Ordering {
        let (a, b) = (self.signum(), other.signum());
        if a != b {
            return a.cmp(&b);
        }
        let by_square = self.square().cmp(&other.square());
        if a < 0 {
            by_square.reverse()
        } else {
            by_square
        }
    }

    /// Correctly rounded `f64` value.
    pub fn to_f64(&self) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        let magnitude = sqrt_rational_to_f64(&self.square());
        if self.signum() < 0 {
            -magnitude
        } else {
            magnitude
        }
    }

    /// Value rounded to nearest-even with `precision` significant bits.
    pub fn to_float(&self, precision: u32) -> Result<BinaryFloat> {
        if precision < 53 {
            return Err(MiczError::InvalidArgument(format!("precision {precision} is below 53 bits")));
        }
        if self.is_zero() {
            return Ok(BinaryFloat { mantissa: BigInt::zero(), exponent: 0 });
        }
        let mut b = sqrt_rational_rounded(&self.square(), precision);
        if self.signum() < 0 {
            b.mantissa = -b.mantissa;
        }
        Ok(b)
    }

    /// `{"coeff": "p/q", "radicand": "r"}`.
    pub fn to_json(&self) -> Value {
        json!({ "coeff": self.coeff.to_string(), "radicand": self.radicand.to_string() })
    }
}

impl Default for RadicalScalar {
    fn default() -> Self {
        Self::zero()
    }
}

impl Mul for &RadicalScalar {
    type Output = RadicalScalar;
    fn mul(self, o: &RadicalScalar) -> RadicalScalar {
        if self.is_zero() || o.is_zero() {
            return RadicalScalar::zero();
        }
        let g = self.radicand.gcd(&o.radicand);
        // √a·√b = g·√((a/g)(b/g)), and the cofactor is again squarefree up to leftovers
        let inner = (&self.radicand / &g) * (&o.radicand / &g);
        let (outside, inside) = extract_square(&inner);
        RadicalScalar::canonical(&self.coeff * &o.coeff * BigRational::from_integer(g * outside), inside)
    }
}

impl Mul for RadicalScalar {
    type Output = RadicalScalar;
    fn mul(self, o: RadicalScalar) -> RadicalScalar {
        &self * &o
    }
}

impl Neg for RadicalScalar {
    type Output = RadicalScalar;
    fn neg(self) -> RadicalScalar {
        RadicalScalar::canonical(-self.coeff, self.radicand)
    }
}

impl fmt::Display for RadicalScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_rational() {
            write!(f, "{}", self.coeff)
        } else {
            write!(f, "({})·√{}", self.coeff, self.radicand)
        }
    }
}

/// A formal sum of radical terms with distinct squarefree radicands.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct RadicalSum {
    terms: BTreeMap<BigInt, BigRational>,
}

impl RadicalSum {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, x: &RadicalScalar) {
        if x.is_zero() {
            return;
        }
        let key = self
            .terms
            .keys()
            .find(|k| {
                *k == x.radicand() || rational_sqrt(&BigRational::new(x.radicand().clone(), (*k).clone())).is_some()
            })
            .cloned();
        match key {
            Some(k) => {
                let r = rational_sqrt(&BigRational::new(x.radicand().clone(), k.clone())).unwrap();
                let c = self.terms.get_mut(&k).unwrap();
                *c += x.coeff() * r;
                if c.is_zero() {
                    self.terms.remove(&k);
                }
            }
            None => {
                self.terms.insert(x.radicand().clone(), x.coeff().clone());
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Collapse to one term; fails if two incommensurable radicals survive.
    pub fn to_scalar(&self) -> Result<RadicalScalar> {
        let mut it = self.terms.iter();
        match (it.next(), it.next()) {
            (None, _) => Ok(RadicalScalar::zero()),
            (Some((d, c)), None) => Ok(RadicalScalar::canonical(c.clone(), d.clone())),
            (Some((d1, _)), Some((d2, _))) => Err(MiczError::RadicandMismatch(d1.to_string(), d2.to_string())),
        }
    }

    /// Sum of the terms' correctly rounded values.
    pub fn to_f64(&self) -> f64 {
        self.terms.iter().map(|(d, c)| RadicalScalar::canonical(c.clone(), d.clone()).to_f64()).sum()
    }
}

impl FromIterator<RadicalScalar> for RadicalSum {
    fn from_iter<I: IntoIterator<Item = RadicalScalar>>(iter: I) -> Self {
        let mut s = RadicalSum::new();
        for x in iter {
            s.push(&x);
        }
        s
    }
}

/// Parses `"p/q"`, an integer, or a decimal such as `"-0.25"` or `"1e-3"` exactly.
pub fn parse_rational(text: &str) -> Result<BigRational> {
    let bad = || MiczError::InvalidArgument(format!("not a rational number: {text:?}"));
    let t = text.trim();
    if let Some((p, q)) = t.split_once('/') {
        let p: BigInt = p.trim().parse().map_err(|_| bad())?;
        let q: BigInt = q.trim().parse().map_err(|_| bad())?;
        if q.is_zero() {
            return Err(bad());
        }
        return Ok(BigRational::new(p, q));
    }
    let (mantissa, exp) = match t.find(['e', 'E']) {
        Some(i) => (&t[..i], t[i + 1..].parse::<i32>().map_err(|_| bad())?),
        None => (t, 0),
    };
    let (neg, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = digits.split_once('.').unwrap_or((digits, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(bad());
    }
    if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let all: BigInt = format!("0{int_part}{frac_part}").parse().map_err(|_| bad())?;
    let scale = exp - frac_part.len() as i32;
    let ten = BigInt::from(10);
    let mut r = if scale >= 0 {
        BigRational::from_integer(all * num_traits::pow(ten, scale as usize))
    } else {
        BigRational::new(all, num_traits::pow(ten, (-scale) as usize))
    };
    if neg {
        r = -r;
    }
    Ok(r)
}

/// Splits a non-negative integer `m` into `(s, f)` with `m = s²·f` and `f`
/// free of square factors of primes up to the trial bound.
fn extract_square(m: &BigInt) -> (BigInt, BigInt) {
    if m.is_zero() {
        return (BigInt::zero(), BigInt::one());
    }
    if let Some(small) = m.to_u128() {
        let (s, f) = extract_square_u128(small);
        return (BigInt::from(s), BigInt::from(f));
    }
    let mut rem = m.clone();
    let mut outside = BigInt::one();
    let mut inside = BigInt::one();
    let mut p: u64 = 2;
    while p <= TRIAL_DIVISION_BOUND {
        let bp = BigInt::from(p);
        if &bp * &bp > rem {
            break;
        }
        let mut e = 0u32;
        while (&rem % &bp).is_zero() {
            rem /= &bp;
            e += 1;
        }
        outside *= num_traits::pow(bp.clone(), (e / 2) as usize);
        if e % 2 == 1 {
            inside *= &bp;
        }
        if let Some(small) = rem.to_u128() {
            let (s, f) = extract_square_u128_from(small, p + 1);
            return (outside * BigInt::from(s), inside * BigInt::from(f));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    let r = rem.sqrt();
    if &r * &r == rem {
        (outside * r, inside)
    } else {
        (outside, inside * rem)
    }
}

fn extract_square_u128(m: u128) -> (u128, u128) {
    extract_square_u128_from(m, 2)
}

fn extract_square_u128_from(m: u128, start: u64) -> (u128, u128) {
    let mut rem = m;
    let mut outside = 1u128;
    let mut inside = 1u128;
    let mut p = start.max(2) as u128;
    while p <= TRIAL_DIVISION_BOUND as u128 && p * p <= rem {
        let mut e = 0;
        while rem.is_multiple_of(p) {
            rem /= p;
            e += 1;
        }
        for _ in 0..e / 2 {
            outside *= p;
        }
        if e % 2 == 1 {
            inside *= p;
        }
        p += if p == 2 { 1 } else { 2 };
    }
    let r = rem.sqrt();
    if r * r == rem {
        (outside * r, inside)
    } else {
        (outside, inside * rem)
    }
}

/// Exact rational square root, if one exists.
fn rational_sqrt(x: &BigRational) -> Option<BigRational> {
    if x.is_negative() {
        return None;
    }
    let (p, q) = (x.numer(), x.denom());
    let (sp, sq) = (p.sqrt(), q.sqrt());
    (&sp * &sp == *p && &sq * &sq == *q).then(|| BigRational::new(sp, sq))
}

/// Correctly rounded `√x` for a positive rational.
fn sqrt_rational_to_f64(x: &BigRational) -> f64 {
    sqrt_rational_rounded(x, 53).to_f64()
}

/// `√x` rounded to nearest-even with `precision` significant bits.
fn sqrt_rational_rounded(x: &BigRational, precision: u32) -> BinaryFloat {
    let extra = precision as i64 + 17;
    let (p, q) = (x.numer(), x.denom());
    // choose k so that √(x·4^k) has at least `extra` bits
    let log2 = p.bits() as i64 - q.bits() as i64;
    let k = (2 * extra - log2 + 1).div_euclid(2) + 1;
    let (num, den) = if k >= 0 { (p << (2 * k as u64), q.clone()) } else { (p.clone(), q << (-2 * k) as u64) };
    let (quot, rem) = num.div_rem(&den);
    let s = quot.sqrt();
    let exact = rem.is_zero() && &s * &s == quot;
    round_bits(&s, !exact, -k, precision)
}

/// Rounds `s · 2^exp2` to nearest-even with `precision` bits, where `sticky`
/// says the true value lies strictly above `s`.
fn round_bits(s: &BigInt, sticky: bool, exp2: i64, precision: u32) -> BinaryFloat {
    let shift = s.bits() as i64 - precision as i64 - 1;
    debug_assert!(shift > 0);
    let top: BigInt = s >> shift as u64;
    let sticky = sticky || !(s - (&top << shift as u64)).is_zero();
    let mut m: BigInt = &top >> 1u32;
    if top.is_odd() && (sticky || m.is_odd()) {
        m += 1;
    }
    let mut exponent = exp2 + shift + 1;
    if m.bits() > precision as u64 {
        m >>= 1u32;
        exponent += 1;
    }
    BinaryFloat { mantissa: m, exponent }
}

/// A binary floating value `mantissa · 2^exponent`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BinaryFloat {
    pub mantissa: BigInt,
    pub exponent: i64,
}

impl BinaryFloat {
    /// Significant bits of the mantissa.
    pub fn precision(&self) -> u64 {
        self.mantissa.bits()
    }

    /// Exact rational value.
    pub fn to_rational(&self) -> BigRational {
        let one = BigInt::one();
        if self.exponent >= 0 {
            BigRational::from_integer(&self.mantissa << self.exponent as u64)
        } else {
            BigRational::new(self.mantissa.clone(), one << (-self.exponent) as u64)
        }
    }

    /// Nearest `f64`; exact when the mantissa fits in 53 bits and the
    /// exponent is in range.
    pub fn to_f64(&self) -> f64 {
        let mut v = self.mantissa.to_f64().unwrap_or(f64::NAN);
        // split the scaling so neither factor over- or underflows on its own
        let mut e = self.exponent;
        while e > 1000 {
            v *= 2f64.powi(1000);
            e -= 1000;
        }
        while e < -1000 {
            v *= 2f64.powi(-1000);
            e += 1000;
        }
        v * 2f64.powi(e as i32)
    }
}
