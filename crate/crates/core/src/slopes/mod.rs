//! Negative continued fractions, boundary slopes of thickened tori and
//! counts of tight contact structures on them.

mod enumerate;
mod normalize;

pub use enumerate::{enumerate_configurations, enumerate_configurations_with};
pub use normalize::{normalize_slopes, UnimodularMatrix};

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed};
use thiserror::Error;

use crate::slope::{SlopeError, SlopeQ, TaggedSlope};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SlopesError {
    #[error("continued fraction needs a finite slope below -1, got {0}")]
    Domain(SlopeQ),
    #[error("inner boundary slope must be -1, got {0} (normalize first)")]
    NotNormalized(SlopeQ),
    #[error("outer boundary slope {0} is not at most -1 (normalize first)")]
    OuterNotNormalized(SlopeQ),
    #[error("invalid boundary data: {0}")]
    InvalidBoundary(String),
    #[error("matrix [[{0}, {1}], [{2}, {3}]] does not have determinant 1")]
    NotUnimodular(i64, i64, i64, i64),
    #[error(transparent)]
    Slope(#[from] SlopeError),
}

/// `r₀ − 1/(r₁ − 1/(… − 1/r_k))` with every `rᵢ ≤ −2`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct NegCF {
    coefficients: Vec<i64>,
}

impl NegCF {
    pub fn new(coefficients: Vec<i64>) -> Result<Self, SlopesError> {
        if coefficients.is_empty() || coefficients.iter().any(|&r| r > -2) {
            return Err(SlopesError::InvalidBoundary(format!(
                "continued fraction entries must all be <= -2, got {coefficients:?}"
            )));
        }
        Ok(NegCF { coefficients })
    }

    pub fn coefficients(&self) -> &[i64] {
        &self.coefficients
    }

    pub fn evaluate(&self) -> Result<SlopeQ, SlopeError> {
        // p/q folded from the innermost entry outward
        let (mut p, mut q) = (i128::from(*self.coefficients.last().expect("non-empty")), 1i128);
        for &r in self.coefficients.iter().rev().skip(1) {
            // r - q/p = (r*p - q)/p
            let np = i128::from(r).checked_mul(p).and_then(|x| x.checked_sub(q)).ok_or(SlopeError::Overflow)?;
            (p, q) = (np, p);
        }
        let p = i64::try_from(p).map_err(|_| SlopeError::Overflow)?;
        let q = i64::try_from(q).map_err(|_| SlopeError::Overflow)?;
        SlopeQ::new(p, q)
    }
}

impl fmt::Display for NegCF {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, r) in self.coefficients.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{r}")?;
        }
        write!(f, "]")
    }
}

pub fn neg_cf(s: SlopeQ) -> Result<NegCF, SlopesError> {
    if s.is_infinite() || s >= SlopeQ::integer(-1) {
        return Err(SlopesError::Domain(s));
    }
    let (mut p, mut q) = (i128::from(s.numer()), i128::from(s.denom()));
    let mut out = Vec::new();
    loop {
        let r = p.div_euclid(q);
        out.push(r as i64);
        let rem = p - r * q;
        if rem == 0 {
            break;
        }
        // next value is -q/rem with 0 < rem < q
        (p, q) = (-q, rem);
    }
    Ok(NegCF { coefficients: out })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct BoundaryData {
    pub num_dividing: u32,
    pub slope: TaggedSlope,
}

impl BoundaryData {
    pub fn new(num_dividing: u32, slope: TaggedSlope) -> Result<Self, SlopesError> {
        let b = BoundaryData { num_dividing, slope };
        b.check()?;
        Ok(b)
    }

    fn check(&self) -> Result<(), SlopesError> {
        if self.num_dividing < 2 || self.num_dividing % 2 != 0 {
            return Err(SlopesError::InvalidBoundary(format!(
                "number of dividing curves must be even and at least 2, got {}",
                self.num_dividing
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum TightCount {
    Finite(BigInt),
    /// Exactly two structures for each positive twisting.
    TwoPerTwisting,
    /// In bijection with `Z` through the holonomy.
    InfiniteZIndexed,
    Unsupported(String),
}

impl fmt::Display for TightCount {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TightCount::Finite(n) => write!(f, "{n}"),
            TightCount::TwoPerTwisting => write!(f, "2 per twisting"),
            TightCount::InfiniteZIndexed => write!(f, "Z-indexed"),
            TightCount::Unsupported(why) => write!(f, "unsupported: {why}"),
        }
    }
}

/// Number of tight contact structures on `T²×I` with the given boundary
/// data and twisting, once `b0` has slope `−1` and `b1` slope at most `−1`.
pub fn honda_count(b0: BoundaryData, b1: BoundaryData, twisting: u32) -> Result<TightCount, SlopesError> {
    b0.check()?;
    b1.check()?;
    if b0.slope.basis != b1.slope.basis {
        return Err(SlopesError::InvalidBoundary(format!(
            "boundary slopes use different bases: {:?} and {:?}",
            b0.slope.basis, b1.slope.basis
        )));
    }
    let minus_one = SlopeQ::integer(-1);
    let (s0, s1) = (b0.slope.slope, b1.slope.slope);
    if s0 != minus_one {
        return Err(SlopesError::NotNormalized(s0));
    }
    if s1.is_infinite() || s1 > minus_one {
        return Err(SlopesError::OuterNotNormalized(s1));
    }
    let minimal = b0.num_dividing == 2 && b1.num_dividing == 2;
    if !minimal {
        return Ok(TightCount::Unsupported(if s1 == minus_one && twisting == 0 {
            "case 4: more than two dividing curves, enumerate annulus configurations instead".into()
        } else {
            "case 1: more than two dividing curves, counting needs the three-layer factorization".into()
        }));
    }
    if twisting > 0 {
        return Ok(TightCount::TwoPerTwisting);
    }
    if s1 == minus_one {
        return Ok(TightCount::InfiniteZIndexed);
    }
    let cf = neg_cf(s1)?;
    let r = cf.coefficients();
    let (last, init) = r.split_last().expect("non-empty");
    let prod = init.iter().fold(BigInt::one(), |acc, &x| acc * BigInt::from(x + 1)) * BigInt::from(*last);
    Ok(TightCount::Finite(prod.abs()))
}
