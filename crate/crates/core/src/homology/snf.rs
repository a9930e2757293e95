//! Smith normal form over arbitrary-precision integers with unimodular certificates.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Dense integer matrix, row-major.
#[derive(Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    /// Panics if the rows are ragged.
    pub fn from_rows<T: Into<BigInt> + Clone>(rows: &[Vec<T>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        let mut m = Self::zeros(rows.len(), cols);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), cols, "ragged matrix");
            for (j, x) in row.iter().enumerate() {
                m[(i, j)] = x.clone().into();
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let prod = a * &other[(k, j)];
                    out[(i, j)] += prod;
                }
            }
        }
        out
    }

    /// Determinant by fraction-free Bareiss elimination. Square matrices only.
    pub fn determinant(&self) -> BigInt {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut a = self.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a[(k, k)].is_zero() {
                match (k + 1..n).find(|&i| !a[(i, k)].is_zero()) {
                    Some(i) => {
                        a.swap_rows(i, k);
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (&a[(i, j)] * &a[(k, k)] - &a[(i, k)] * &a[(k, j)]) / &prev;
                    a[(i, j)] = v;
                }
            }
            prev = a[(k, k)].clone();
        }
        sign * &a[(n - 1, n - 1)]
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row[dst] += k * row[src]
    fn add_row(&mut self, dst: usize, src: usize, k: &BigInt) {
        for j in 0..self.cols {
            let v = &self[(src, j)] * k;
            self[(dst, j)] += v;
        }
    }

    fn negate_row(&mut self, r: usize) {
        for j in 0..self.cols {
            let v = -&self[(r, j)];
            self[(r, j)] = v;
        }
    }
}

impl std::ops::Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;
    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", self[(i, j)])?;
            }
        }
        write!(f, "]")
    }
}

/// `left · m · right = diag(diagonal)`, with both certificates unimodular.
#[derive(Debug, Clone)]
pub struct SmithForm {
    pub diagonal: Vec<BigInt>,
    pub left: IntMatrix,
    pub right: IntMatrix,
}

impl SmithForm {
    pub fn diagonal_matrix(&self, rows: usize, cols: usize) -> IntMatrix {
        let mut d = IntMatrix::zeros(rows, cols);
        for (i, x) in self.diagonal.iter().enumerate() {
            d[(i, i)] = x.clone();
        }
        d
    }

    /// Re-multiplies the certificates and checks the divisibility chain.
    ///
    /// For a nonsingular square `m`, `det(left)·det(m)·det(right) = det(D)`
    /// together with `|det D| = |det m|` already forces both certificates
    /// to be unimodular, so their determinants are only expanded otherwise.
    pub fn verify(&self, m: &IntMatrix) -> bool {
        let d = self.diagonal_matrix(m.rows(), m.cols());
        if self.left.rows() != m.rows() || self.right.cols() != m.cols() {
            return false;
        }
        if self.left.mul(m).mul(&self.right) != d {
            return false;
        }
        let chain = self.diagonal.iter().all(|x| !x.is_negative())
            && self.diagonal.windows(2).all(|w| {
                if w[0].is_zero() {
                    w[1].is_zero()
                } else {
                    (&w[1] % &w[0]).is_zero()
                }
            });
        if !chain {
            return false;
        }
        if m.rows() == m.cols() {
            let det = m.determinant();
            if !det.is_zero() {
                let prod: BigInt = self.diagonal.iter().product();
                return prod == det.abs();
            }
        }
        self.left.determinant().abs().is_one() && self.right.determinant().abs().is_one()
    }
}

/// Smith normal form of `m`. The diagonal has `min(rows, cols)` entries,
/// non-negative, each dividing the next, zeros last.
///
/// Row and column Hermite forms alternate until the matrix is diagonal;
/// keeping every Hermite form reduced bounds the entry size by the
/// determinantal divisors instead of letting elimination compound them.
///
/// Panics if the computed certificates fail re-verification, which would
/// indicate an arithmetic fault rather than bad input.
pub fn smith_normal_form(m: &IntMatrix) -> SmithForm {
    let (rows, cols) = (m.rows(), m.cols());
    let mut cur = m.clone();
    let mut left = IntMatrix::identity(rows);
    let mut right = IntMatrix::identity(cols);
    let mut transposed = false;
    while !cur.is_diagonal() {
        let (h, u) = hermite_rows(&cur);
        if transposed {
            // cur = (current matrix)^T, so row operations act on the right
            right = right.mul(&u.transpose());
        } else {
            left = u.mul(&left);
        }
        cur = h.transpose();
        transposed = !transposed;
    }
    if transposed {
        cur = cur.transpose();
    }
    // a diagonal matrix still needs its divisibility chain
    let (diagonal, l2, r2) = diagonal_chain(&cur);
    let form = SmithForm { diagonal, left: l2.mul(&left), right: right.mul(&r2) };
    assert!(form.verify(m), "Smith normal form certificate failed re-verification");
    form
}

impl IntMatrix {
    fn is_diagonal(&self) -> bool {
        (0..self.rows).all(|i| (0..self.cols).all(|j| i == j || self[(i, j)].is_zero()))
    }

    fn row(&self, i: usize) -> Vec<BigInt> {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }
}

struct PivotRow {
    col: usize,
    h: Vec<BigInt>,
    u: Vec<BigInt>,
}

/// `dst -= q * src` on paired vectors.
fn sub_mul(dst: &mut [BigInt], src: &[BigInt], q: &BigInt) {
    for (d, s) in dst.iter_mut().zip(src) {
        if !s.is_zero() {
            *d -= q * s;
        }
    }
}

fn combine(a: &mut [BigInt], b: &mut [BigInt], op: &Bezout) {
    for (p, q) in a.iter_mut().zip(b.iter_mut()) {
        if p.is_zero() && q.is_zero() {
            continue;
        }
        let np = &op.x * &*p + &op.y * &*q;
        let nq = &op.u * &*p + &op.v * &*q;
        *p = np;
        *q = nq;
    }
}

/// Reduced row Hermite form `h = u · a`: pivots positive, entries above a
/// pivot in `[0, pivot)`, zero rows last.
fn hermite_rows(a: &IntMatrix) -> (IntMatrix, IntMatrix) {
    let (rows, cols) = (a.rows(), a.cols());
    let mut pivots: Vec<PivotRow> = Vec::new();
    let mut kernel: Vec<Vec<BigInt>> = Vec::new();
    for i in 0..rows {
        let mut v = a.row(i);
        let mut uv = vec![BigInt::zero(); rows];
        uv[i] = BigInt::one();
        let mut k = 0;
        loop {
            let Some(f) = v.iter().position(|x| !x.is_zero()) else {
                kernel.push(uv);
                break;
            };
            while k < pivots.len() && pivots[k].col < f {
                k += 1;
            }
            if k == pivots.len() || pivots[k].col > f {
                if v[f].is_negative() {
                    v.iter_mut().chain(uv.iter_mut()).for_each(|x| *x = -&*x);
                }
                pivots.insert(k, PivotRow { col: f, h: v, u: uv });
                break;
            }
            let p = &mut pivots[k];
            let op = Bezout::new(&p.h[f], &v[f]);
            combine(&mut p.h, &mut v, &op);
            combine(&mut p.u, &mut uv, &op);
            if p.h[f].is_negative() {
                p.h.iter_mut().chain(p.u.iter_mut()).for_each(|x| *x = -&*x);
            }
            k += 1;
        }
        reduce_above(&mut pivots);
    }
    let mut h = IntMatrix::zeros(rows, cols);
    let mut u = IntMatrix::zeros(rows, rows);
    for (i, p) in pivots.iter().enumerate() {
        for j in 0..cols {
            h[(i, j)] = p.h[j].clone();
        }
        for j in 0..rows {
            u[(i, j)] = p.u[j].clone();
        }
    }
    for (i, kr) in kernel.iter().enumerate() {
        for j in 0..rows {
            u[(pivots.len() + i, j)] = kr[j].clone();
        }
    }
    (h, u)
}

fn reduce_above(pivots: &mut [PivotRow]) {
    for j in 0..pivots.len() {
        let (above, rest) = pivots.split_at_mut(j);
        let pj = &rest[0];
        let c = pj.col;
        for pi in above.iter_mut() {
            let x = &pi.h[c];
            if !x.is_negative() && *x < pj.h[c] {
                continue;
            }
            let q = x.div_floor(&pj.h[c]);
            sub_mul(&mut pi.h, &pj.h, &q);
            sub_mul(&mut pi.u, &pj.u, &q);
        }
    }
}

/// Smith form of an already diagonal matrix by pairwise gcd/lcm swaps.
fn diagonal_chain(dm: &IntMatrix) -> (Vec<BigInt>, IntMatrix, IntMatrix) {
    let (rows, cols) = (dm.rows(), dm.cols());
    let n = rows.min(cols);
    let mut a = dm.clone();
    let mut left = IntMatrix::identity(rows);
    let mut right = IntMatrix::identity(cols);
    for i in 0..n {
        for j in i + 1..n {
            let (x, y) = (a[(i, i)].clone(), a[(j, j)].clone());
            if y.is_zero() || (!x.is_zero() && (&y % &x).is_zero()) {
                continue;
            }
            if x.is_zero() {
                a.swap_rows(i, j);
                left.swap_rows(i, j);
                a.swap_cols(i, j);
                right.swap_cols(i, j);
                continue;
            }
            // diag(x, y) -> diag(g, xy/g): add row j to row i, then clear
            // the resulting 2x2 block with Bezout steps
            let one = BigInt::one();
            a.add_row(i, j, &one);
            left.add_row(i, j, &one);
            let op = Bezout::new(&a[(i, i)], &a[(i, j)]);
            op.cols(&mut a, i, j);
            op.cols(&mut right, i, j);
            let q = &a[(j, i)] / &a[(i, i)];
            let neg = -q;
            a.add_row(j, i, &neg);
            left.add_row(j, i, &neg);
            debug_assert!(a[(i, j)].is_zero() && a[(j, i)].is_zero());
        }
        if a[(i, i)].is_negative() {
            a.negate_row(i);
            left.negate_row(i);
        }
    }
    let diagonal = (0..n).map(|i| a[(i, i)].clone()).collect();
    (diagonal, left, right)
}

/// `[[x, y], [-b/g, a/g]]` sending `(a, b)` to `(g, 0)`, determinant 1.
struct Bezout {
    x: BigInt,
    y: BigInt,
    u: BigInt,
    v: BigInt,
}

impl Bezout {
    fn new(a: &BigInt, b: &BigInt) -> Self {
        if (b % a).is_zero() {
            // plain elimination keeps the pivot row untouched
            return Bezout { x: BigInt::one(), y: BigInt::zero(), u: -(b / a), v: BigInt::one() };
        }
        let e = a.extended_gcd(b);
        Bezout { x: e.x, y: e.y, u: -(b / &e.gcd), v: a / &e.gcd }
    }

    /// Replaces columns `s`, `c` with `x·s + y·c` and `u·s + v·c`.
    fn cols(&self, m: &mut IntMatrix, s: usize, c: usize) {
        for i in 0..m.rows() {
            let (p, q) = (m[(i, s)].clone(), m[(i, c)].clone());
            if p.is_zero() && q.is_zero() {
                continue;
            }
            m[(i, s)] = &self.x * &p + &self.y * &q;
            m[(i, c)] = &self.u * &p + &self.v * &q;
        }
    }
}
