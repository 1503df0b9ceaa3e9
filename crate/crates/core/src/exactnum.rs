//! Exact arithmetic in the Gaussian rationals ℚ(i).
//!
//! A [`Scalar`] is a pair of rationals `re + im·i`. Both parts are kept in
//! lowest terms with a positive denominator, in machine words while they fit
//! and arbitrary precision otherwise, so two scalars are equal exactly when
//! their stored parts are equal.
//!
//! Literal grammar: `[-]A[/B][(+|-)C[/D]i]`, or a pure imaginary `[-]C[/D]i`.
//! No whitespace is allowed inside a literal.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::{BigRational, Rational64};
use num_traits::{CheckedAdd, CheckedDiv, CheckedMul, CheckedSub, One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// A rational in lowest terms. Values that fit in machine words stay in
/// `Small`; `Big` is used only when they do not, so the representation of a
/// value is unique and derived equality is value equality.
#[derive(Clone, PartialEq, Eq, Hash)]
enum Rat {
    Small(Rational64),
    Big(BigRational),
}

impl Default for Rat {
    fn default() -> Self {
        Rat::Small(Rational64::zero())
    }
}

impl Rat {
    fn from_big(q: BigRational) -> Self {
        match (q.numer().to_i64(), q.denom().to_i64()) {
            (Some(n), Some(d)) => Rat::Small(Rational64::new_raw(n, d)),
            _ => Rat::Big(q),
        }
    }

    fn to_big(&self) -> BigRational {
        match self {
            Rat::Small(q) => BigRational::new_raw(BigInt::from(*q.numer()), BigInt::from(*q.denom())),
            Rat::Big(q) => q.clone(),
        }
    }

    fn is_zero(&self) -> bool {
        matches!(self, Rat::Small(q) if q.is_zero())
    }

    fn is_one(&self) -> bool {
        matches!(self, Rat::Small(q) if q.is_one())
    }

    fn is_negative(&self) -> bool {
        match self {
            Rat::Small(q) => q.is_negative(),
            Rat::Big(q) => q.is_negative(),
        }
    }

    fn combine(
        &self,
        rhs: &Rat,
        small: impl FnOnce(&Rational64, &Rational64) -> Option<Rational64>,
        big: impl FnOnce(&BigRational, &BigRational) -> BigRational,
    ) -> Rat {
        if let (Rat::Small(a), Rat::Small(b)) = (self, rhs) {
            if let Some(q) = small(a, b) {
                return Rat::Small(q);
            }
        }
        Rat::from_big(big(&self.to_big(), &rhs.to_big()))
    }

    fn add(&self, rhs: &Rat) -> Rat {
        if rhs.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return rhs.clone();
        }
        self.combine(rhs, |a, b| a.checked_add(b), |a, b| a + b)
    }

    fn sub(&self, rhs: &Rat) -> Rat {
        if rhs.is_zero() {
            return self.clone();
        }
        self.combine(rhs, |a, b| a.checked_sub(b), |a, b| a - b)
    }

    fn mul(&self, rhs: &Rat) -> Rat {
        if self.is_zero() || rhs.is_zero() {
            return Rat::default();
        }
        if self.is_one() {
            return rhs.clone();
        }
        if rhs.is_one() {
            return self.clone();
        }
        self.combine(rhs, |a, b| a.checked_mul(b), |a, b| a * b)
    }

    /// `rhs` must be nonzero.
    fn div(&self, rhs: &Rat) -> Rat {
        self.combine(rhs, |a, b| a.checked_div(b), |a, b| a / b)
    }

    fn neg(&self) -> Rat {
        match self {
            Rat::Small(q) => match q.numer().checked_neg() {
                Some(n) => Rat::Small(Rational64::new_raw(n, *q.denom())),
                None => Rat::from_big(-self.to_big()),
            },
            Rat::Big(q) => Rat::from_big(-q),
        }
    }

    fn abs(&self) -> Rat {
        if self.is_negative() {
            self.neg()
        } else {
            self.clone()
        }
    }

    fn fmt_parts(&self) -> (String, Option<String>) {
        let (n, d) = match self {
            Rat::Small(q) => (q.numer().to_string(), q.denom().to_string()),
            Rat::Big(q) => (q.numer().to_string(), q.denom().to_string()),
        };
        (n, (d != "1").then_some(d))
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Scalar {
    re: Rat,
    im: Rat,
}

impl Scalar {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        Self {
            re: Rat::from_big(re),
            im: Rat::from_big(im),
        }
    }

    fn from_parts(re: Rat, im: Rat) -> Self {
        Self { re, im }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    /// The imaginary unit.
    pub fn i() -> Self {
        Self::from_parts(Rat::default(), Rat::Small(Rational64::one()))
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_parts(Rat::Small(Rational64::from_integer(n)), Rat::default())
    }

    /// `num/den`; panics if `den == 0`.
    pub fn ratio(num: i64, den: i64) -> Self {
        Self::new(BigRational::new(num.into(), den.into()), BigRational::zero())
    }

    pub fn gaussian(re_num: i64, re_den: i64, im_num: i64, im_den: i64) -> Self {
        Self::new(
            BigRational::new(re_num.into(), re_den.into()),
            BigRational::new(im_num.into(), im_den.into()),
        )
    }

    pub fn re(&self) -> BigRational {
        self.re.to_big()
    }

    pub fn im(&self) -> BigRational {
        self.im.to_big()
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

    pub fn conj(&self) -> Self {
        Self::from_parts(self.re.clone(), self.im.neg())
    }

    /// `re² + im²`, a nonnegative rational.
    pub fn norm(&self) -> BigRational {
        self.re.mul(&self.re).add(&self.im.mul(&self.im)).to_big()
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let n = self.re.mul(&self.re).add(&self.im.mul(&self.im));
        Ok(Self::from_parts(self.re.div(&n), self.im.div(&n).neg()))
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self> {
        Ok(self * &rhs.inv()?)
    }

    /// Re-normalises both parts. Every constructor already stores reduced
    /// parts, so this is the identity on every value that can be built.
    pub fn canonical(&self) -> Self {
        let reduce = |q: &Rat| {
            let b = q.to_big();
            Rat::from_big(BigRational::new(b.numer().clone(), b.denom().clone()))
        };
        Self::from_parts(reduce(&self.re), reduce(&self.im))
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn rat(q: &Rat) -> String {
            match q.fmt_parts() {
                (n, None) => n,
                (n, Some(d)) => format!("{n}/{d}"),
            }
        }
        match (self.re.is_zero(), self.im.is_zero()) {
            (_, true) => write!(f, "{}", rat(&self.re)),
            (true, false) => write!(f, "{}i", rat(&self.im)),
            (false, false) => {
                let sign = if self.im.is_negative() { '-' } else { '+' };
                write!(f, "{}{}{}i", rat(&self.re), sign, rat(&self.im.abs()))
            }
        }
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Scalar({self})")
    }
}

fn parse_unsigned_rational(s: &str) -> Option<BigRational> {
    let digits = |t: &str| !t.is_empty() && t.bytes().all(|b| b.is_ascii_digit());
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (s, None),
    };
    if !digits(num) {
        return None;
    }
    let num: BigInt = num.parse().ok()?;
    let den: BigInt = match den {
        Some(d) if digits(d) => d.parse().ok()?,
        Some(_) => return None,
        None => BigInt::one(),
    };
    if den.is_zero() {
        return None;
    }
    Some(BigRational::new(num, den))
}

fn parse_signed_rational(s: &str) -> Option<BigRational> {
    match s.strip_prefix('-') {
        Some(rest) => parse_unsigned_rational(rest).map(|q| -q),
        None => parse_unsigned_rational(s),
    }
}

impl FromStr for Scalar {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse {
            what: "scalar",
            input: s.to_string(),
        };
        let Some(body) = s.strip_suffix('i') else {
            return parse_signed_rational(s)
                .map(|re| Self::new(re, BigRational::zero()))
                .ok_or_else(bad);
        };
        // The split point is the last sign that is not the leading one.
        let split = body
            .char_indices()
            .skip(1)
            .filter(|(_, c)| *c == '+' || *c == '-')
            .map(|(i, _)| i)
            .last();
        match split {
            None => parse_signed_rational(body)
                .map(|im| Self::new(BigRational::zero(), im))
                .ok_or_else(bad),
            Some(at) => {
                let re = parse_signed_rational(&body[..at]).ok_or_else(bad)?;
                let mut im = parse_unsigned_rational(&body[at + 1..]).ok_or_else(bad)?;
                if body.as_bytes()[at] == b'-' {
                    im = -im;
                }
                Ok(Self::new(re, im))
            }
        }
    }
}

impl Serialize for Scalar {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Scalar {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

impl Add<&Scalar> for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        Scalar::from_parts(self.re.add(&rhs.re), self.im.add(&rhs.im))
    }
}

impl Sub<&Scalar> for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        Scalar::from_parts(self.re.sub(&rhs.re), self.im.sub(&rhs.im))
    }
}

impl Mul<&Scalar> for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        if self.is_real() {
            return Scalar::from_parts(self.re.mul(&rhs.re), self.re.mul(&rhs.im));
        }
        if rhs.is_real() {
            return Scalar::from_parts(self.re.mul(&rhs.re), self.im.mul(&rhs.re));
        }
        Scalar::from_parts(
            self.re.mul(&rhs.re).sub(&self.im.mul(&rhs.im)),
            self.re.mul(&rhs.im).add(&self.im.mul(&rhs.re)),
        )
    }
}

/// Panics on a zero divisor; use [`Scalar::checked_div`] for fallible division.
impl Div<&Scalar> for &Scalar {
    type Output = Scalar;
    fn div(self, rhs: &Scalar) -> Scalar {
        self.checked_div(rhs).expect("division by zero scalar")
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar::from_parts(self.re.neg(), self.im.neg())
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar::from_parts(self.re.neg(), self.im.neg())
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar { (&self).$m(&rhs) }
        }
        impl $tr<&Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &Scalar) -> Scalar { (&self).$m(rhs) }
        }
        impl $tr<Scalar> for &Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar { self.$m(&rhs) }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul, Div div);

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        self.re = self.re.add(&rhs.re);
        self.im = self.im.add(&rhs.im);
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        self.re = self.re.sub(&rhs.re);
        self.im = self.im.sub(&rhs.im);
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Self::from_int(n)
    }
}

impl std::iter::Sum for Scalar {
    fn sum<I: Iterator<Item = Scalar>>(iter: I) -> Self {
        iter.fold(Scalar::zero(), |acc, x| acc + x)
    }
}
