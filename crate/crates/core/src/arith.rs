//! Exact arithmetic: dyadic numbers `m·2^e` for weights and τ values, and
//! arbitrary-precision fractions for the linear programs.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::graph::ExtNat;

pub type Rational = num_rational::BigRational;

/// `mantissa · 2^exponent`, normalized so the mantissa is odd (or zero with
/// exponent zero). Structural equality is therefore value equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Dyadic {
    mantissa: BigInt,
    exponent: i64,
}

impl Dyadic {
    pub fn new(mantissa: impl Into<BigInt>, exponent: i64) -> Self {
        let mut mantissa = mantissa.into();
        if mantissa.is_zero() {
            return Dyadic::zero();
        }
        let tz = mantissa.trailing_zeros().expect("nonzero mantissa") as i64;
        mantissa >>= tz as usize;
        Dyadic {
            mantissa,
            exponent: exponent + tz,
        }
    }

    pub fn zero() -> Self {
        Dyadic {
            mantissa: BigInt::zero(),
            exponent: 0,
        }
    }

    pub fn one() -> Self {
        Dyadic::from_int(1)
    }

    pub fn from_int(v: i64) -> Self {
        Dyadic::new(v, 0)
    }

    /// `2^exponent`.
    pub fn pow2(exponent: i64) -> Self {
        Dyadic {
            mantissa: BigInt::one(),
            exponent,
        }
    }

    pub fn mantissa(&self) -> &BigInt {
        &self.mantissa
    }

    pub fn exponent(&self) -> i64 {
        self.exponent
    }

    pub fn is_zero(&self) -> bool {
        self.mantissa.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.mantissa.is_negative()
    }

    /// Multiplies by `2^k` exactly.
    pub fn shl(&self, k: i64) -> Self {
        if self.is_zero() {
            return Dyadic::zero();
        }
        Dyadic {
            mantissa: self.mantissa.clone(),
            exponent: self.exponent + k,
        }
    }

    /// Aligns both mantissas to the smaller exponent.
    fn aligned(&self, other: &Dyadic) -> (BigInt, BigInt, i64) {
        let e = self.exponent.min(other.exponent);
        let a = &self.mantissa << (self.exponent - e) as usize;
        let b = &other.mantissa << (other.exponent - e) as usize;
        (a, b, e)
    }

    pub fn to_rational(&self) -> Rational {
        to_rational(self)
    }

    pub fn to_f64(&self) -> f64 {
        self.mantissa.to_f64().unwrap_or(f64::NAN) * 2f64.powi(self.exponent as i32)
    }
}

impl Default for Dyadic {
    fn default() -> Self {
        Dyadic::zero()
    }
}

impl From<i64> for Dyadic {
    fn from(v: i64) -> Self {
        Dyadic::from_int(v)
    }
}

impl Add for &Dyadic {
    type Output = Dyadic;
    fn add(self, rhs: &Dyadic) -> Dyadic {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        let (a, b, e) = self.aligned(rhs);
        Dyadic::new(a + b, e)
    }
}

impl Add for Dyadic {
    type Output = Dyadic;
    fn add(self, rhs: Dyadic) -> Dyadic {
        &self + &rhs
    }
}

impl AddAssign<&Dyadic> for Dyadic {
    fn add_assign(&mut self, rhs: &Dyadic) {
        *self = &*self + rhs;
    }
}

impl Sub for &Dyadic {
    type Output = Dyadic;
    fn sub(self, rhs: &Dyadic) -> Dyadic {
        self + &(-rhs)
    }
}

impl Sub for Dyadic {
    type Output = Dyadic;
    fn sub(self, rhs: Dyadic) -> Dyadic {
        &self - &rhs
    }
}

impl SubAssign<&Dyadic> for Dyadic {
    fn sub_assign(&mut self, rhs: &Dyadic) {
        *self = &*self - rhs;
    }
}

impl Mul for &Dyadic {
    type Output = Dyadic;
    fn mul(self, rhs: &Dyadic) -> Dyadic {
        Dyadic::new(&self.mantissa * &rhs.mantissa, self.exponent + rhs.exponent)
    }
}

impl Mul for Dyadic {
    type Output = Dyadic;
    fn mul(self, rhs: Dyadic) -> Dyadic {
        &self * &rhs
    }
}

impl Neg for &Dyadic {
    type Output = Dyadic;
    fn neg(self) -> Dyadic {
        Dyadic {
            mantissa: -&self.mantissa,
            exponent: self.exponent,
        }
    }
}

impl Neg for Dyadic {
    type Output = Dyadic;
    fn neg(self) -> Dyadic {
        -&self
    }
}

impl std::iter::Sum for Dyadic {
    fn sum<I: Iterator<Item = Dyadic>>(iter: I) -> Dyadic {
        iter.fold(Dyadic::zero(), |acc, x| &acc + &x)
    }
}

impl<'a> std::iter::Sum<&'a Dyadic> for Dyadic {
    fn sum<I: Iterator<Item = &'a Dyadic>>(iter: I) -> Dyadic {
        iter.fold(Dyadic::zero(), |acc, x| &acc + x)
    }
}

impl Ord for Dyadic {
    fn cmp(&self, other: &Self) -> Ordering {
        let (a, b, _) = self.aligned(other);
        a.cmp(&b)
    }
}

impl PartialOrd for Dyadic {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.to_rational(), f)
    }
}

impl fmt::Debug for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}·2^{}", self.mantissa, self.exponent)
    }
}

impl Serialize for Dyadic {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        RationalJson(&self.to_rational()).serialize(s)
    }
}

/// A dyadic value or `+∞`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ExtDyadic {
    Finite(Dyadic),
    Infinite,
}

impl ExtDyadic {
    pub fn finite(&self) -> Option<&Dyadic> {
        match self {
            ExtDyadic::Finite(d) => Some(d),
            ExtDyadic::Infinite => None,
        }
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, ExtDyadic::Infinite)
    }

    /// `self > bound`, with `+∞` exceeding everything.
    pub fn exceeds(&self, bound: &Dyadic) -> bool {
        match self {
            ExtDyadic::Finite(d) => d > bound,
            ExtDyadic::Infinite => true,
        }
    }
}

impl Add for ExtDyadic {
    type Output = ExtDyadic;
    fn add(self, rhs: ExtDyadic) -> ExtDyadic {
        match (self, rhs) {
            (ExtDyadic::Finite(a), ExtDyadic::Finite(b)) => ExtDyadic::Finite(&a + &b),
            _ => ExtDyadic::Infinite,
        }
    }
}

impl From<Dyadic> for ExtDyadic {
    fn from(d: Dyadic) -> Self {
        ExtDyadic::Finite(d)
    }
}

impl fmt::Display for ExtDyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtDyadic::Finite(d) => d.fmt(f),
            ExtDyadic::Infinite => f.write_str("inf"),
        }
    }
}

impl Serialize for ExtDyadic {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            ExtDyadic::Finite(d) => d.serialize(s),
            ExtDyadic::Infinite => s.serialize_str("inf"),
        }
    }
}

/// `(1/2)^d`, zero for `d = ∞`.
pub fn pow_half(d: ExtNat) -> Dyadic {
    match d {
        ExtNat::Finite(d) => Dyadic::pow2(-(d as i64)),
        ExtNat::Infinite => Dyadic::zero(),
    }
}

/// Influence coefficient `(1/2)^(d-1)`: 2 at distance 0, 0 at infinity.
pub fn coeff(d: ExtNat) -> Dyadic {
    match d {
        ExtNat::Finite(d) => Dyadic::pow2(1 - d as i64),
        ExtNat::Infinite => Dyadic::zero(),
    }
}

pub fn to_rational(x: &Dyadic) -> Rational {
    if x.exponent >= 0 {
        Rational::from_integer(&x.mantissa << x.exponent as usize)
    } else {
        Rational::new(x.mantissa.clone(), BigInt::one() << (-x.exponent) as usize)
    }
}

/// Exact inverse of [`to_rational`] when the denominator is a power of two.
pub fn to_dyadic(r: &Rational) -> Option<Dyadic> {
    let den = r.denom();
    let tz = den.trailing_zeros()?;
    if (den >> tz as usize) != BigInt::one() {
        return None;
    }
    Some(Dyadic::new(r.numer().clone(), -(tz as i64)))
}

pub fn rational(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn ceil_to_usize(r: &Rational) -> usize {
    let c = r.ceil().to_integer();
    if c.is_negative() {
        0
    } else {
        c.to_usize().expect("fits usize")
    }
}

/// Serializes a rational as `{"num": "...", "den": "..."}` with decimal strings.
pub struct RationalJson<'a>(pub &'a Rational);

impl Serialize for RationalJson<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("Rational", 2)?;
        st.serialize_field("num", &self.0.numer().to_string())?;
        st.serialize_field("den", &self.0.denom().to_string())?;
        st.end()
    }
}

pub(crate) fn serialize_rational<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
    RationalJson(r).serialize(s)
}

pub(crate) fn serialize_rationals<S: Serializer>(v: &[Rational], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(RationalJson))
}

/// Whether `r` is an integer multiple of a power of two, i.e. whether
/// its reduced denominator has no odd factor.
pub fn is_dyadic(r: &Rational) -> bool {
    let den = r.denom();
    let tz = den.trailing_zeros().unwrap_or(0);
    (den >> tz as usize).is_one()
}
