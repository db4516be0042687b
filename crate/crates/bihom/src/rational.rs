//! Exact rational scalars.
//!
//! Every quantity in this crate is a rational number in canonical form:
//! positive denominator, fully reduced, zero represented as `0/1`. All
//! arithmetic is exact; there is no floating-point mode. Rationals render
//! as `p/q`, or just `p` when the denominator is 1.

use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{de, Deserialize, Deserializer, Serialize, Serializer};

use crate::error::Error;

/// An exact rational number with arbitrary-precision numerator and
/// denominator. The canonical-form invariants (reduced, denominator > 0)
/// are maintained by construction.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Rat(BigRational);

impl Rat {
    pub fn zero() -> Self {
        Rat(BigRational::zero())
    }

    pub fn one() -> Self {
        Rat(BigRational::one())
    }

    pub fn from_int(n: i64) -> Self {
        Rat(BigRational::from_integer(BigInt::from(n)))
    }

    /// Builds `numer/denom` in canonical form. Fails on a zero denominator.
    pub fn new(numer: BigInt, denom: BigInt) -> Result<Self, Error> {
        if denom.is_zero() {
            return Err(Error::Parse("zero denominator in rational".into()));
        }
        Ok(Rat(BigRational::new(numer, denom)))
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn recip(&self) -> Result<Self, Error> {
        if self.is_zero() {
            return Err(Error::Parse("division by zero".into()));
        }
        Ok(Rat(self.0.recip()))
    }

    /// Strict parser for the canonical serialized form: `p` or `p/q` with
    /// `q > 1`, no leading zeros, no `+` sign, and gcd(|p|, q) = 1. This is
    /// the form `Display` emits, so accepted strings round-trip byte for
    /// byte.
    pub fn parse_canonical(s: &str) -> Result<Self, Error> {
        let bad = || Error::Parse(format!("not a canonical rational: {s:?}"));
        let (numer_str, denom_str) = match s.split_once('/') {
            Some((n, d)) => (n, Some(d)),
            None => (s, None),
        };
        let numer_digits = numer_str.strip_prefix('-').unwrap_or(numer_str);
        if !is_canonical_integer(numer_digits) {
            return Err(bad());
        }
        if numer_digits == "0" && numer_str != numer_digits {
            return Err(bad());
        }
        let numer: BigInt = numer_str.parse().map_err(|_| bad())?;
        let denom: BigInt = match denom_str {
            None => BigInt::one(),
            Some(d) => {
                if !is_canonical_integer(d) || d == "0" || d == "1" {
                    return Err(bad());
                }
                d.parse().map_err(|_| bad())?
            }
        };
        let r = BigRational::new(numer.clone(), denom.clone());
        // `BigRational::new` reduces; if that changed anything the input
        // was not canonical.
        if *r.numer() != numer || *r.denom() != denom {
            return Err(bad());
        }
        Ok(Rat(r))
    }

    pub fn abs(&self) -> Self {
        Rat(self.0.abs())
    }
}

/// Digits of a canonical non-negative integer: `0`, or a nonzero leading
/// digit followed by any digits.
fn is_canonical_integer(s: &str) -> bool {
    match s.as_bytes() {
        [] => false,
        [b'0'] => true,
        [first, ..] => (b'1'..=b'9').contains(first) && s.bytes().all(|b| b.is_ascii_digit()),
    }
}

impl fmt::Display for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.denom().is_one() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl FromStr for Rat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        Rat::parse_canonical(s)
    }
}

impl Serialize for Rat {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Rat {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        Rat::parse_canonical(&s).map_err(de::Error::custom)
    }
}

impl From<i64> for Rat {
    fn from(n: i64) -> Self {
        Rat::from_int(n)
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident) => {
        impl $trait for Rat {
            type Output = Rat;
            fn $method(self, rhs: Rat) -> Rat {
                Rat((self.0).$method(rhs.0))
            }
        }
        impl $trait<&Rat> for &Rat {
            type Output = Rat;
            fn $method(self, rhs: &Rat) -> Rat {
                Rat((&self.0).$method(&rhs.0))
            }
        }
    };
}

binop!(Add, add);
binop!(Sub, sub);
binop!(Mul, mul);

impl Div for Rat {
    type Output = Rat;
    fn div(self, rhs: Rat) -> Rat {
        assert!(!rhs.is_zero(), "division by zero rational");
        Rat(self.0 / rhs.0)
    }
}

impl Neg for Rat {
    type Output = Rat;
    fn neg(self) -> Rat {
        Rat(-self.0)
    }
}

impl Neg for &Rat {
    type Output = Rat;
    fn neg(self) -> Rat {
        Rat(-&self.0)
    }
}

impl AddAssign<&Rat> for Rat {
    fn add_assign(&mut self, rhs: &Rat) {
        self.0 += &rhs.0;
    }
}

impl SubAssign<&Rat> for Rat {
    fn sub_assign(&mut self, rhs: &Rat) {
        self.0 -= &rhs.0;
    }
}

impl Sum for Rat {
    fn sum<I: Iterator<Item = Rat>>(iter: I) -> Rat {
        iter.fold(Rat::zero(), |acc, x| acc + x)
    }
}
