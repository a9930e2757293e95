use std::fmt;
use std::ops::Mul;

use num_integer::Integer;

use super::SlopesError;
use crate::slope::{SlopeError, SlopeQ};

/// `[[a, b], [c, d]]` with `ad − bc = 1`, acting on a slope `p/q` through
/// the column vector `(q, p)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct UnimodularMatrix {
    a: i64,
    b: i64,
    c: i64,
    d: i64,
}

impl UnimodularMatrix {
    pub const IDENTITY: UnimodularMatrix = UnimodularMatrix { a: 1, b: 0, c: 0, d: 1 };

    pub fn new(a: i64, b: i64, c: i64, d: i64) -> Result<Self, SlopesError> {
        let det = i128::from(a) * i128::from(d) - i128::from(b) * i128::from(c);
        if det != 1 {
            return Err(SlopesError::NotUnimodular(a, b, c, d));
        }
        Ok(UnimodularMatrix { a, b, c, d })
    }

    fn from_wide(m: [[i128; 2]; 2]) -> Result<Self, SlopeError> {
        let n = |x: i128| i64::try_from(x).map_err(|_| SlopeError::Overflow);
        Ok(UnimodularMatrix { a: n(m[0][0])?, b: n(m[0][1])?, c: n(m[1][0])?, d: n(m[1][1])? })
    }

    pub fn entries(&self) -> [[i64; 2]; 2] {
        [[self.a, self.b], [self.c, self.d]]
    }

    pub fn det(&self) -> i128 {
        i128::from(self.a) * i128::from(self.d) - i128::from(self.b) * i128::from(self.c)
    }

    pub fn inverse(&self) -> Self {
        UnimodularMatrix { a: self.d, b: -self.b, c: -self.c, d: self.a }
    }

    pub fn checked_mul(&self, rhs: &UnimodularMatrix) -> Result<Self, SlopeError> {
        Self::from_wide(mul_wide(wide(self), wide(rhs)))
    }

    pub fn apply(&self, s: SlopeQ) -> Result<SlopeQ, SlopeError> {
        let (q, p) = (i128::from(s.denom()), i128::from(s.numer()));
        let q2 = i128::from(self.a) * q + i128::from(self.b) * p;
        let p2 = i128::from(self.c) * q + i128::from(self.d) * p;
        // reduced input and det 1 keep the image reduced
        let n = |x: i128| i64::try_from(x).map_err(|_| SlopeError::Overflow);
        SlopeQ::new(n(p2)?, n(q2)?)
    }
}

impl Mul for UnimodularMatrix {
    type Output = UnimodularMatrix;

    /// Panics on `i64` overflow; see [`UnimodularMatrix::checked_mul`].
    fn mul(self, rhs: UnimodularMatrix) -> UnimodularMatrix {
        self.checked_mul(&rhs).expect("matrix product overflows i64")
    }
}

impl fmt::Display for UnimodularMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{}, {}], [{}, {}]]", self.a, self.b, self.c, self.d)
    }
}

fn wide(m: &UnimodularMatrix) -> [[i128; 2]; 2] {
    [[m.a.into(), m.b.into()], [m.c.into(), m.d.into()]]
}

fn mul_wide(x: [[i128; 2]; 2], y: [[i128; 2]; 2]) -> [[i128; 2]; 2] {
    let mut out = [[0i128; 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            out[i][j] = x[i][0] * y[0][j] + x[i][1] * y[1][j];
        }
    }
    out
}

/// Finds `A` in `SL(2, Z)` with `A·s0 = −1` and `A·s1 ≤ −1`.
///
/// The solutions form `±C·Tⁿ·B⁻¹` for `n` on a half-line, where `B` sends
/// `(1, 0)` to `s0`, `T` is the unipotent stabilizer of `(1, 0)` and `C`
/// sends `(1, 0)` to `−1`. Among them the one with the smallest
/// `|a| + |b| + |c| + |d|` is returned, then the lexicographically smallest
/// `(|a|, |b|, |c|, |d|)`, then the larger signed entries.
pub fn normalize_slopes(s0: SlopeQ, s1: SlopeQ) -> Result<(UnimodularMatrix, SlopeQ, SlopeQ), SlopesError> {
    let (q0, p0) = (i128::from(s0.denom()), i128::from(s0.numer()));
    // q0*y - x*p0 = 1
    let g = q0.extended_gcd(&p0);
    debug_assert_eq!(g.gcd.abs(), 1);
    let (y, x) = (g.x * g.gcd, -g.y * g.gcd);
    let b_inv = [[y, -x], [-p0, q0]];
    let c = [[1, 0], [-1, 1]];

    let v1 = (i128::from(s1.denom()), i128::from(s1.numer()));
    let alpha = b_inv[0][0] * v1.0 + b_inv[0][1] * v1.1;
    let beta = b_inv[1][0] * v1.0 + b_inv[1][1] * v1.1;

    // A_n = base + n * step
    let base = mul_wide(c, b_inv);
    let step = mul_wide(mul_wide(c, [[0, 1], [0, 0]]), b_inv);
    let at = |n: i128| {
        let mut m = base;
        for i in 0..2 {
            for j in 0..2 {
                m[i][j] += n * step[i][j];
            }
        }
        m
    };

    // every entry and the l1 norm are convex in n, so their minima sit at
    // the breakpoints collected below or at the end of the half-line
    // the image of s1 is beta/(alpha + n*beta) - 1, at most -1 exactly
    // when alpha + n*beta is nonzero with sign opposite to beta
    let bound: Option<i128> = (beta != 0).then(|| {
        let x = -alpha;
        Integer::div_ceil(&x, &beta) - 1
    });
    let clip = |n: i128| bound.map_or(n, |b| n.min(b));

    let mut candidates = vec![clip(0)];
    if let Some(b) = bound {
        candidates.push(b);
    }
    for i in 0..2 {
        for j in 0..2 {
            let (u, v) = (base[i][j], step[i][j]);
            if v != 0 {
                let r = -u;
                candidates.push(clip(Integer::div_floor(&r, &v)));
                candidates.push(clip(Integer::div_ceil(&r, &v)));
            }
        }
    }
    candidates.sort_unstable();
    candidates.dedup();

    let key = |m: &[[i128; 2]; 2]| {
        let flat = [m[0][0], m[0][1], m[1][0], m[1][1]];
        (flat.iter().map(|x| x.abs()).sum::<i128>(), flat.map(i128::abs), flat.map(|x| -x))
    };
    let best = candidates
        .into_iter()
        .flat_map(|n| {
            let m = at(n);
            let neg = m.map(|row| row.map(|x| -x));
            [m, neg]
        })
        .min_by_key(key)
        .expect("at least one candidate");

    let a = UnimodularMatrix::from_wide(best)?;
    let img0 = a.apply(s0)?;
    let img1 = a.apply(s1)?;
    debug_assert_eq!(img0, SlopeQ::integer(-1));
    debug_assert!(!img1.is_infinite() && img1 <= SlopeQ::integer(-1));
    Ok((a, img0, img1))
}
