//! Exact scalars: rationals with a machine-word fast path, Gaussian
//! rationals on top of them, and the floating complex type used for
//! numeric evaluation.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use num_traits::{CheckedAdd, CheckedDiv, CheckedMul, CheckedSub, One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Floating complex numbers for numeric evaluation.
pub type NumericComplex = num_complex::Complex64;

/// Exact rational. Values that fit in `i64/i64` stay unboxed; anything
/// larger is promoted transparently and demoted again when it shrinks.
#[derive(Clone)]
pub enum Q {
    Small(Ratio<i64>),
    Big(BigRational),
}

impl Q {
    pub fn new(num: i64, den: i64) -> Q {
        assert!(den != 0, "zero denominator");
        Q::Small(Ratio::new(num, den))
    }

    pub fn from_int(n: i64) -> Q {
        Q::Small(Ratio::from_integer(n))
    }

    pub fn zero() -> Q {
        Q::from_int(0)
    }

    pub fn one() -> Q {
        Q::from_int(1)
    }

    fn from_big(r: BigRational) -> Q {
        match (r.numer().to_i64(), r.denom().to_i64()) {
            (Some(n), Some(d)) => Q::Small(Ratio::new_raw(n, d)),
            _ => Q::Big(r),
        }
    }

    fn to_big(&self) -> BigRational {
        match self {
            Q::Small(r) => BigRational::new_raw(BigInt::from(*r.numer()), BigInt::from(*r.denom())),
            Q::Big(r) => r.clone(),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Q::Small(r) => r.is_zero(),
            Q::Big(r) => r.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Q::Small(r) => r.is_one(),
            Q::Big(r) => r.is_one(),
        }
    }

    pub fn is_integer(&self) -> bool {
        match self {
            Q::Small(r) => r.is_integer(),
            Q::Big(r) => r.is_integer(),
        }
    }

    pub fn is_negative(&self) -> bool {
        match self {
            Q::Small(r) => r.is_negative(),
            Q::Big(r) => r.is_negative(),
        }
    }

    /// Integer value if this is an integer that fits in `i64`.
    pub fn to_i64(&self) -> Option<i64> {
        if !self.is_integer() {
            return None;
        }
        match self {
            Q::Small(r) => Some(*r.numer()),
            Q::Big(r) => r.numer().to_i64(),
        }
    }

    pub fn floor(&self) -> Q {
        match self {
            Q::Small(r) => Q::Small(r.floor()),
            Q::Big(r) => Q::from_big(r.floor()),
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Q::Small(r) => *r.numer() as f64 / *r.denom() as f64,
            Q::Big(r) => r.to_f64().unwrap_or(f64::NAN),
        }
    }

    pub fn abs(&self) -> Q {
        if self.is_negative() {
            -self.clone()
        } else {
            self.clone()
        }
    }

    pub fn recip(&self) -> Result<Q> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(match self {
            Q::Small(r) => Q::Small(r.recip()),
            Q::Big(r) => Q::from_big(r.recip()),
        })
    }

    pub fn numer_denom_i64(&self) -> Option<(i64, i64)> {
        match self {
            Q::Small(r) => Some((*r.numer(), *r.denom())),
            Q::Big(_) => None,
        }
    }

    pub fn numer_denom_string(&self) -> (String, String) {
        let b = self.to_big();
        (b.numer().to_string(), b.denom().to_string())
    }

    /// Nearest rational with denominator dividing `den` (used when reading floats).
    pub fn from_f64_with_den(x: f64, den: i64) -> Q {
        Q::new((x * den as f64).round() as i64, den)
    }

    pub fn pow(&self, e: u32) -> Q {
        let mut acc = Q::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }
}

macro_rules! q_binop {
    ($tr:ident, $m:ident, $checked:ident, $op:tt) => {
        impl<'a> $tr<&'a Q> for &'a Q {
            type Output = Q;
            fn $m(self, rhs: &'a Q) -> Q {
                if let (Q::Small(a), Q::Small(b)) = (self, rhs) {
                    if let Some(c) = a.$checked(b) {
                        return Q::Small(c);
                    }
                }
                Q::from_big(self.to_big() $op rhs.to_big())
            }
        }
        impl $tr<Q> for Q {
            type Output = Q;
            fn $m(self, rhs: Q) -> Q {
                (&self).$m(&rhs)
            }
        }
    };
}

q_binop!(Add, add, checked_add, +);
q_binop!(Sub, sub, checked_sub, -);
q_binop!(Mul, mul, checked_mul, *);

impl<'a> Div<&'a Q> for &'a Q {
    type Output = Q;
    fn div(self, rhs: &'a Q) -> Q {
        assert!(!rhs.is_zero(), "rational division by zero");
        if let (Q::Small(a), Q::Small(b)) = (self, rhs) {
            if let Some(c) = a.checked_div(b) {
                return Q::Small(c);
            }
        }
        Q::from_big(self.to_big() / rhs.to_big())
    }
}

impl Div<Q> for Q {
    type Output = Q;
    fn div(self, rhs: Q) -> Q {
        &self / &rhs
    }
}

impl Neg for Q {
    type Output = Q;
    fn neg(self) -> Q {
        match self {
            Q::Small(r) if *r.numer() != i64::MIN => Q::Small(-r),
            other => Q::from_big(-other.to_big()),
        }
    }
}

impl Neg for &Q {
    type Output = Q;
    fn neg(self) -> Q {
        -self.clone()
    }
}

impl PartialEq for Q {
    fn eq(&self, other: &Q) -> bool {
        match (self, other) {
            (Q::Small(a), Q::Small(b)) => a == b,
            (Q::Big(a), Q::Big(b)) => a == b,
            // normalisation keeps representable values small
            _ => false,
        }
    }
}

impl Eq for Q {}

impl Hash for Q {
    fn hash<H: Hasher>(&self, state: &mut H) {
        match self {
            Q::Small(r) => {
                0u8.hash(state);
                r.hash(state)
            }
            Q::Big(r) => {
                1u8.hash(state);
                r.hash(state)
            }
        }
    }
}

impl PartialOrd for Q {
    fn partial_cmp(&self, other: &Q) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Q {
    fn cmp(&self, other: &Q) -> Ordering {
        match (self, other) {
            (Q::Small(a), Q::Small(b)) => {
                // cross-multiply in i128 to avoid the overflow-prone generic path
                let l = *a.numer() as i128 * *b.denom() as i128;
                let r = *b.numer() as i128 * *a.denom() as i128;
                l.cmp(&r)
            }
            _ => self.to_big().cmp(&other.to_big()),
        }
    }
}

impl From<i64> for Q {
    fn from(n: i64) -> Q {
        Q::from_int(n)
    }
}

impl fmt::Display for Q {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Q::Small(r) => write!(f, "{r}"),
            Q::Big(r) => write!(f, "{r}"),
        }
    }
}

impl fmt::Debug for Q {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Q {
    type Err = Error;
    fn from_str(s: &str) -> Result<Q> {
        let s = s.trim();
        let bad = || Error::Parse(format!("not a rational: {s:?}"));
        if let Some((n, d)) = s.split_once('/') {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(Q::from_big(BigRational::new(n, d)))
        } else if s.contains('.') || s.contains('e') || s.contains('E') {
            let x: f64 = s.parse().map_err(|_| bad())?;
            let r = BigRational::from_float(x).ok_or_else(bad)?;
            Ok(Q::from_big(r))
        } else {
            let n: BigInt = s.parse().map_err(|_| bad())?;
            Ok(Q::from_big(BigRational::from_integer(n)))
        }
    }
}

impl Serialize for Q {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Q {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Q, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Int(i64),
            Str(String),
        }
        match Raw::deserialize(d)? {
            Raw::Int(n) => Ok(Q::from_int(n)),
            Raw::Str(s) => s.parse().map_err(serde::de::Error::custom),
        }
    }
}

/// Gaussian rational `re + i·im`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct ExactComplex {
    pub re: Q,
    pub im: Q,
}

impl Default for Q {
    fn default() -> Q {
        Q::zero()
    }
}

impl ExactComplex {
    pub fn new(re: Q, im: Q) -> Self {
        ExactComplex { re, im }
    }

    pub fn real(re: Q) -> Self {
        ExactComplex { re, im: Q::zero() }
    }

    pub fn int(n: i64) -> Self {
        Self::real(Q::from_int(n))
    }

    pub fn rat(num: i64, den: i64) -> Self {
        Self::real(Q::new(num, den))
    }

    pub fn zero() -> Self {
        Self::int(0)
    }

    pub fn one() -> Self {
        Self::int(1)
    }

    pub fn i() -> Self {
        ExactComplex { re: Q::zero(), im: Q::one() }
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.re.is_one() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    /// Rational integer value, if any.
    pub fn to_i64(&self) -> Option<i64> {
        if self.im.is_zero() {
            self.re.to_i64()
        } else {
            None
        }
    }

    pub fn is_integer(&self) -> bool {
        self.im.is_zero() && self.re.is_integer()
    }

    pub fn conj(&self) -> Self {
        ExactComplex { re: self.re.clone(), im: -&self.im }
    }

    pub fn norm_sqr(&self) -> Q {
        &(&self.re * &self.re) + &(&self.im * &self.im)
    }

    pub fn inv(&self) -> Result<Self> {
        let n = self.norm_sqr();
        if n.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(ExactComplex { re: &self.re / &n, im: -(&self.im / &n) })
    }

    pub fn scale(&self, q: &Q) -> Self {
        ExactComplex { re: &self.re * q, im: &self.im * q }
    }

    pub fn to_numeric(&self) -> NumericComplex {
        NumericComplex::new(self.re.to_f64(), self.im.to_f64())
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = ExactComplex::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// `i^k` for any integer `k`.
    pub fn i_pow(k: i64) -> Self {
        match k.rem_euclid(4) {
            0 => Self::one(),
            1 => Self::i(),
            2 => Self::int(-1),
            _ => -Self::i(),
        }
    }

    /// `(-1)^n` for integer `n`.
    pub fn sign(n: i64) -> Self {
        if n.rem_euclid(2) == 0 {
            Self::one()
        } else {
            Self::int(-1)
        }
    }
}

impl<'a> Add<&'a ExactComplex> for &'a ExactComplex {
    type Output = ExactComplex;
    fn add(self, rhs: &'a ExactComplex) -> ExactComplex {
        ExactComplex { re: &self.re + &rhs.re, im: &self.im + &rhs.im }
    }
}

impl<'a> Sub<&'a ExactComplex> for &'a ExactComplex {
    type Output = ExactComplex;
    fn sub(self, rhs: &'a ExactComplex) -> ExactComplex {
        ExactComplex { re: &self.re - &rhs.re, im: &self.im - &rhs.im }
    }
}

impl<'a> Mul<&'a ExactComplex> for &'a ExactComplex {
    type Output = ExactComplex;
    fn mul(self, rhs: &'a ExactComplex) -> ExactComplex {
        if self.im.is_zero() && rhs.im.is_zero() {
            return ExactComplex::real(&self.re * &rhs.re);
        }
        ExactComplex {
            re: &(&self.re * &rhs.re) - &(&self.im * &rhs.im),
            im: &(&self.re * &rhs.im) + &(&self.im * &rhs.re),
        }
    }
}

impl<'a> Div<&'a ExactComplex> for &'a ExactComplex {
    type Output = ExactComplex;
    fn div(self, rhs: &'a ExactComplex) -> ExactComplex {
        if rhs.im.is_zero() {
            return ExactComplex { re: &self.re / &rhs.re, im: &self.im / &rhs.re };
        }
        self * &rhs.inv().expect("complex division by zero")
    }
}

macro_rules! owned_binop {
    ($tr:ident, $m:ident) => {
        impl $tr<ExactComplex> for ExactComplex {
            type Output = ExactComplex;
            fn $m(self, rhs: ExactComplex) -> ExactComplex {
                (&self).$m(&rhs)
            }
        }
    };
}
owned_binop!(Add, add);
owned_binop!(Sub, sub);
owned_binop!(Mul, mul);
owned_binop!(Div, div);

impl AddAssign<&ExactComplex> for ExactComplex {
    fn add_assign(&mut self, rhs: &ExactComplex) {
        self.re = &self.re + &rhs.re;
        self.im = &self.im + &rhs.im;
    }
}

impl SubAssign<&ExactComplex> for ExactComplex {
    fn sub_assign(&mut self, rhs: &ExactComplex) {
        self.re = &self.re - &rhs.re;
        self.im = &self.im - &rhs.im;
    }
}

impl MulAssign<&ExactComplex> for ExactComplex {
    fn mul_assign(&mut self, rhs: &ExactComplex) {
        *self = &*self * rhs;
    }
}

impl Neg for ExactComplex {
    type Output = ExactComplex;
    fn neg(self) -> ExactComplex {
        ExactComplex { re: -self.re, im: -self.im }
    }
}

impl Neg for &ExactComplex {
    type Output = ExactComplex;
    fn neg(self) -> ExactComplex {
        -self.clone()
    }
}

impl From<Q> for ExactComplex {
    fn from(q: Q) -> Self {
        ExactComplex::real(q)
    }
}

impl From<i64> for ExactComplex {
    fn from(n: i64) -> Self {
        ExactComplex::int(n)
    }
}

impl fmt::Display for ExactComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            write!(f, "{}", self.re)
        } else if self.re.is_zero() {
            write!(f, "{}i", self.im)
        } else if self.im.is_negative() {
            write!(f, "{}-{}i", self.re, -&self.im)
        } else {
            write!(f, "{}+{}i", self.re, self.im)
        }
    }
}

impl fmt::Debug for ExactComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for ExactComplex {
    type Err = Error;
    /// Accepts `a`, `a/b`, `a,b` (re,im) and `a+bi`-free comma forms.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if let Some((re, im)) = s.split_once(',') {
            return Ok(ExactComplex { re: re.parse()?, im: im.parse()? });
        }
        if let Some(stripped) = s.strip_suffix('i') {
            let im = if stripped.is_empty() || stripped == "+" {
                Q::one()
            } else if stripped == "-" {
                Q::from_int(-1)
            } else {
                stripped.parse()?
            };
            return Ok(ExactComplex { re: Q::zero(), im });
        }
        Ok(ExactComplex::real(s.parse()?))
    }
}

impl Serialize for ExactComplex {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        (&self.re, &self.im).serialize(s)
    }
}

impl<'de> Deserialize<'de> for ExactComplex {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let (re, im) = <(Q, Q)>::deserialize(d)?;
        Ok(ExactComplex { re, im })
    }
}

/// Binomial coefficient `C(n, i) = n(n-1)…(n-i+1)/i!` for arbitrary `n`.
pub fn binom(n: &ExactComplex, i: u32) -> ExactComplex {
    let mut acc = ExactComplex::one();
    for j in 0..i {
        let f = n - &ExactComplex::int(j as i64);
        acc = &acc * &f;
        acc = ExactComplex { re: &acc.re / &Q::from_int(j as i64 + 1), im: &acc.im / &Q::from_int(j as i64 + 1) };
    }
    acc
}

/// Integer binomial with integer (possibly negative) top.
pub fn binom_int(n: i64, i: u32) -> Q {
    binom(&ExactComplex::int(n), i).re
}

pub fn factorial(n: u32) -> Q {
    (1..=n as i64).fold(Q::one(), |acc, k| &acc * &Q::from_int(k))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_overflow_promotes() {
        let a = Q::from_int(i64::MAX);
        let b = &a + &a;
        assert!(matches!(b, Q::Big(_)));
        let c = &b - &a;
        assert_eq!(c, a);
        assert!(matches!(c, Q::Small(_)));
    }

    #[test]
    fn ordering_and_parse() {
        let a: Q = "3/4".parse().unwrap();
        let b: Q = "-1/2".parse().unwrap();
        assert!(b < a);
        assert_eq!((&a + &b).to_string(), "1/4");
        let z: ExactComplex = "1/2,-3".parse().unwrap();
        assert_eq!(z.to_string(), "1/2-3i");
    }

    #[test]
    fn binomials() {
        assert_eq!(binom_int(5, 2), Q::from_int(10));
        assert_eq!(binom_int(-1, 3), Q::from_int(-1));
        assert_eq!(binom_int(-2, 2), Q::from_int(3));
        assert_eq!(binom(&ExactComplex::rat(1, 2), 2).re, Q::new(-1, 8));
    }

    #[test]
    fn gaussian_inverse() {
        let z = ExactComplex::new(Q::from_int(3), Q::from_int(4));
        assert!((&z * &z.inv().unwrap()).is_one());
    }
}
