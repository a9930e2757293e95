//! Reduced rationals with a point at infinity.
//!
//! A [`SlopeQ`] carries surgery coefficients and boundary slopes. The
//! representation is always reduced: `gcd(|p|, q) = 1` when `q > 0`, and
//! the only representation of infinity is `1/0`.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SlopeError {
    #[error("0/0 is not a slope")]
    Indeterminate,
    #[error("cannot parse slope `{0}`")]
    Syntax(String),
    #[error("slope arithmetic overflowed")]
    Overflow,
}

#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct SlopeQ {
    p: i64,
    q: i64,
}

impl SlopeQ {
    pub const INFINITY: SlopeQ = SlopeQ { p: 1, q: 0 };
    pub const ZERO: SlopeQ = SlopeQ { p: 0, q: 1 };
    pub const ONE: SlopeQ = SlopeQ { p: 1, q: 1 };
    pub const MINUS_ONE: SlopeQ = SlopeQ { p: -1, q: 1 };

    /// Builds `p/q` in lowest terms. Any `p/0` with `p != 0` is infinity.
    pub fn new(p: i64, q: i64) -> Result<Self, SlopeError> {
        Self::from_i128(p as i128, q as i128)
    }

    pub(crate) fn from_i128(p: i128, q: i128) -> Result<Self, SlopeError> {
        if q == 0 {
            return if p == 0 {
                Err(SlopeError::Indeterminate)
            } else {
                Ok(Self::INFINITY)
            };
        }
        let g = p.gcd(&q);
        let (mut p, mut q) = (p / g, q / g);
        if q < 0 {
            p = -p;
            q = -q;
        }
        let p = i64::try_from(p).map_err(|_| SlopeError::Overflow)?;
        let q = i64::try_from(q).map_err(|_| SlopeError::Overflow)?;
        let s = SlopeQ { p, q };
        debug_assert!(s.is_reduced());
        Ok(s)
    }

    pub fn integer(n: i64) -> Self {
        SlopeQ { p: n, q: 1 }
    }

    pub fn numer(&self) -> i64 {
        self.p
    }

    pub fn denom(&self) -> i64 {
        self.q
    }

    pub fn is_infinite(&self) -> bool {
        self.q == 0
    }

    pub fn is_integer(&self) -> bool {
        self.q == 1
    }

    pub fn as_integer(&self) -> Option<i64> {
        self.is_integer().then_some(self.p)
    }

    pub fn is_reduced(&self) -> bool {
        if self.q == 0 {
            self.p == 1
        } else {
            self.q > 0 && self.p.gcd(&self.q) == 1
        }
    }

    /// `-p/q`; infinity is its own negative.
    pub fn neg(&self) -> Self {
        if self.is_infinite() {
            *self
        } else {
            SlopeQ { p: -self.p, q: self.q }
        }
    }

    /// Adds an integer; infinity absorbs.
    pub fn add_int(&self, n: i64) -> Result<Self, SlopeError> {
        if self.is_infinite() {
            return Ok(*self);
        }
        Self::from_i128(self.p as i128 + n as i128 * self.q as i128, self.q as i128)
    }

    /// `1/s`, with `1/0 = ∞` and `1/∞ = 0`.
    pub fn recip(&self) -> Self {
        if self.is_infinite() {
            Self::ZERO
        } else if self.p == 0 {
            Self::INFINITY
        } else {
            Self::from_i128(self.q as i128, self.p as i128).expect("nonzero numerator")
        }
    }

    /// Largest integer not exceeding a finite slope.
    pub fn floor(&self) -> Option<i64> {
        (!self.is_infinite()).then(|| Integer::div_floor(&self.p, &self.q))
    }

    /// Finite difference `self - other`, `None` when either is infinite.
    pub fn checked_sub(&self, other: &SlopeQ) -> Option<SlopeQ> {
        if self.is_infinite() || other.is_infinite() {
            return None;
        }
        let p = self.p as i128 * other.q as i128 - other.p as i128 * self.q as i128;
        Self::from_i128(p, self.q as i128 * other.q as i128).ok()
    }
}

/// Infinity compares greater than every finite slope.
impl Ord for SlopeQ {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self.is_infinite(), other.is_infinite()) {
            (true, true) => Ordering::Equal,
            (true, false) => Ordering::Greater,
            (false, true) => Ordering::Less,
            (false, false) => {
                (self.p as i128 * other.q as i128).cmp(&(other.p as i128 * self.q as i128))
            }
        }
    }
}

impl PartialOrd for SlopeQ {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for SlopeQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_infinite() {
            write!(f, "inf")
        } else if self.q == 1 {
            write!(f, "{}", self.p)
        } else {
            write!(f, "{}/{}", self.p, self.q)
        }
    }
}

impl fmt::Debug for SlopeQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SlopeQ({self})")
    }
}

impl FromStr for SlopeQ {
    type Err = SlopeError;

    /// Accepts `p/q`, `n`, and `inf` (optionally signed).
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        let bare = t.trim_start_matches(['+', '-']);
        if bare == "inf" || bare == "∞" {
            return Ok(Self::INFINITY);
        }
        let bad = || SlopeError::Syntax(s.to_string());
        match t.split_once('/') {
            Some((p, q)) => {
                let p: i64 = p.trim().parse().map_err(|_| bad())?;
                let q: i64 = q.trim().parse().map_err(|_| bad())?;
                Self::new(p, q)
            }
            None => Ok(Self::integer(t.parse().map_err(|_| bad())?)),
        }
    }
}

impl Serialize for SlopeQ {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        if self.is_infinite() {
            serializer.serialize_str("inf")
        } else {
            serializer.serialize_str(&format!("{}/{}", self.p, self.q))
        }
    }
}

impl<'de> Deserialize<'de> for SlopeQ {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Which framing a slope on a knot-neighbourhood torus is measured in.
///
/// A curve `a·μ + b·λ` has slope `b/a`. The canonical longitude, the
/// contact longitude and the internal coordinates of a `T²×I` layer all
/// give different numbers for the same curve, so boundary slopes carry
/// their basis explicitly.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Basis {
    /// `(μ, λ)` with `λ` the Seifert longitude.
    Canonical,
    /// `(μ, λ_c)` with `λ_c = tb·μ + λ`.
    Contact,
    /// `(x, y)` coordinates internal to a thickened torus.
    Layer,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TaggedSlope {
    pub basis: Basis,
    pub slope: SlopeQ,
}

impl TaggedSlope {
    pub fn new(basis: Basis, slope: SlopeQ) -> Self {
        TaggedSlope { basis, slope }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn reduces_and_normalizes_sign() {
        assert_eq!(SlopeQ::new(4, -6).unwrap(), SlopeQ::new(-2, 3).unwrap());
        assert_eq!(SlopeQ::new(-7, 0).unwrap(), SlopeQ::INFINITY);
        assert_eq!(SlopeQ::new(0, -5).unwrap(), SlopeQ::ZERO);
        assert_eq!(SlopeQ::new(0, 0), Err(SlopeError::Indeterminate));
    }

    #[test]
    fn parse_forms() {
        assert_eq!("1/0".parse::<SlopeQ>().unwrap(), SlopeQ::INFINITY);
        assert_eq!("inf".parse::<SlopeQ>().unwrap(), SlopeQ::INFINITY);
        assert_eq!("-5/2".parse::<SlopeQ>().unwrap(), SlopeQ::new(-5, 2).unwrap());
        assert_eq!("+3".parse::<SlopeQ>().unwrap(), SlopeQ::integer(3));
        assert!("3/x".parse::<SlopeQ>().is_err());
        assert!("0/0".parse::<SlopeQ>().is_err());
    }

    #[test]
    fn infinity_is_the_top_element() {
        assert!(SlopeQ::INFINITY > SlopeQ::integer(i64::MAX));
        assert!(SlopeQ::new(-5, 2).unwrap() < SlopeQ::integer(-2));
    }

    #[test]
    fn recip_and_floor() {
        assert_eq!(SlopeQ::ZERO.recip(), SlopeQ::INFINITY);
        assert_eq!(SlopeQ::INFINITY.recip(), SlopeQ::ZERO);
        assert_eq!(SlopeQ::integer(-2).recip(), SlopeQ::new(-1, 2).unwrap());
        assert_eq!(SlopeQ::new(-5, 2).unwrap().floor(), Some(-3));
        assert_eq!(SlopeQ::new(5, 2).unwrap().floor(), Some(2));
    }

    proptest! {
        #[test]
        fn constructors_always_reduce(p in -10_000i64..10_000, q in -10_000i64..10_000, n in -50i64..50) {
            prop_assume!(p != 0 || q != 0);
            let s = SlopeQ::new(p, q).unwrap();
            prop_assert!(s.is_reduced());
            prop_assert!(s.add_int(n).unwrap().is_reduced());
            prop_assert!(s.recip().is_reduced());
            prop_assert!(s.neg().is_reduced());
            let text = s.to_string();
            prop_assert_eq!(text.parse::<SlopeQ>().unwrap(), s);
        }
    }
}
