//! Exact rational linear algebra.
//!
//! Dense matrices over Q (arbitrary precision, no floating point anywhere),
//! the unique reduced row echelon form, nullspace bases, permutation and
//! pair-permutation matrices, and the vectorized solution space of the
//! homogeneous matrix equation `X * B = B * Y`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::groups::Permutation;

/// Exact rational scalar: always reduced, denominator positive.
pub type Rational = BigRational;

/// An integer as a rational.
pub fn rat_int(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

/// `p/q`; panics if `q == 0`.
pub fn rat(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinalgError {
    #[error("vectorized system has {size} unknowns, above the bound {bound}")]
    SizeLimit { size: usize, bound: usize },
    #[error("malformed matrix text: {0}")]
    Malformed(String),
}

/// Dense row-major matrix of [`Rational`] entries.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Rational>,
}

impl RatMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<Rational>) -> Self {
        assert_eq!(entries.len(), rows * cols);
        RatMatrix { rows, cols, entries }
    }

    pub fn zero(rows: usize, cols: usize) -> Self {
        RatMatrix {
            rows,
            cols,
            entries: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = RatMatrix::zero(n, n);
        for i in 0..n {
            m.set(i, i, Rational::one());
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Rational) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                entries.push(f(r, c));
            }
        }
        RatMatrix { rows, cols, entries }
    }

    pub fn from_int_rows(rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c));
        RatMatrix::from_fn(r, c, |i, j| rat_int(rows[i][j]))
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    /// 0-based access.
    pub fn get(&self, r: usize, c: usize) -> &Rational {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Rational) {
        self.entries[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Rational] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn col(&self, c: usize) -> Vec<Rational> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn transpose(&self) -> RatMatrix {
        RatMatrix::from_fn(self.cols, self.rows, |r, c| self.get(c, r).clone())
    }

    pub fn mul(&self, other: &RatMatrix) -> RatMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = RatMatrix::zero(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let b = other.get(k, c);
                    if b.is_zero() {
                        continue;
                    }
                    let v = out.get(r, c) + a * b;
                    out.set(r, c, v);
                }
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero())
    }

    /// Exactly one 1 per row and per column, all other entries 0.
    pub fn is_permutation_matrix(&self) -> bool {
        if self.rows != self.cols {
            return false;
        }
        let one = Rational::one();
        for r in 0..self.rows {
            let mut ones = 0;
            for c in 0..self.cols {
                let e = self.get(r, c);
                if *e == one {
                    ones += 1;
                } else if !e.is_zero() {
                    return false;
                }
            }
            if ones != 1 {
                return false;
            }
        }
        (0..self.cols).all(|c| (0..self.rows).filter(|&r| self.get(r, c).is_one()).count() == 1)
    }

    /// Text format: a `# rows=<r> cols=<c>` header, then one line per row of
    /// space-separated `p` or `p/q` entries. Round-trips bit-exactly.
    pub fn to_text(&self) -> String {
        let mut out = format!("# rows={} cols={}\n", self.rows, self.cols);
        for r in 0..self.rows {
            let line = self
                .row(r)
                .iter()
                .map(|e| e.to_string())
                .collect::<Vec<_>>()
                .join(" ");
            out.push_str(&line);
            out.push('\n');
        }
        out
    }

    pub fn from_text(text: &str) -> Result<RatMatrix, LinalgError> {
        let mut lines = text.lines();
        let header = lines
            .next()
            .ok_or_else(|| LinalgError::Malformed("empty input".into()))?;
        let header = header
            .strip_prefix("# rows=")
            .ok_or_else(|| LinalgError::Malformed("missing `# rows=` header".into()))?;
        let (rows_s, cols_s) = header
            .split_once(" cols=")
            .ok_or_else(|| LinalgError::Malformed("missing `cols=` in header".into()))?;
        let rows: usize = rows_s
            .trim()
            .parse()
            .map_err(|_| LinalgError::Malformed(format!("bad row count `{rows_s}`")))?;
        let cols: usize = cols_s
            .trim()
            .parse()
            .map_err(|_| LinalgError::Malformed(format!("bad column count `{cols_s}`")))?;
        let mut entries = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            let line = lines
                .next()
                .ok_or_else(|| LinalgError::Malformed(format!("missing row {}", r + 1)))?;
            let mut count = 0;
            for tok in line.split_whitespace() {
                let v = Rational::from_str(tok)
                    .map_err(|_| LinalgError::Malformed(format!("bad entry `{tok}`")))?;
                entries.push(v);
                count += 1;
            }
            if count != cols {
                return Err(LinalgError::Malformed(format!(
                    "row {} has {count} entries, expected {cols}",
                    r + 1
                )));
            }
        }
        if lines.any(|l| !l.trim().is_empty()) {
            return Err(LinalgError::Malformed("trailing content".into()));
        }
        Ok(RatMatrix { rows, cols, entries })
    }
}

impl fmt::Display for RatMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

/// Output of [`rref`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rref {
    pub matrix: RatMatrix,
    /// Pivot column indices, one per pivot row, ascending.
    pub pivots: Vec<usize>,
    pub rank: usize,
}

/// The unique reduced row echelon form.
///
/// Pivoting is deterministic: in each column the first nonzero row at or
/// below the current row is chosen.
pub fn rref(m: &RatMatrix) -> Rref {
    let mut a = m.clone();
    let (rows, cols) = (a.rows(), a.cols());
    let mut pivots = Vec::new();
    let mut pr = 0;
    for pc in 0..cols {
        let Some(src) = (pr..rows).find(|&r| !a.get(r, pc).is_zero()) else {
            continue;
        };
        if src != pr {
            for c in 0..cols {
                let tmp = a.get(src, c).clone();
                a.set(src, c, a.get(pr, c).clone());
                a.set(pr, c, tmp);
            }
        }
        let inv = a.get(pr, pc).recip();
        for c in pc..cols {
            let v = a.get(pr, c) * &inv;
            a.set(pr, c, v);
        }
        for r in 0..rows {
            if r == pr || a.get(r, pc).is_zero() {
                continue;
            }
            let factor = a.get(r, pc).clone();
            for c in pc..cols {
                if a.get(pr, c).is_zero() {
                    continue;
                }
                let v = a.get(r, c) - &factor * a.get(pr, c);
                a.set(r, c, v);
            }
        }
        pivots.push(pc);
        pr += 1;
        if pr == rows {
            break;
        }
    }
    Rref {
        matrix: a,
        rank: pivots.len(),
        pivots,
    }
}

/// Exact basis of `{v : M v = 0}`.
///
/// One vector per free column, in ascending free-column order, with the free
/// variable scaled to 1.
pub fn nullspace(m: &RatMatrix) -> Vec<Vec<Rational>> {
    let r = rref(m);
    let cols = m.cols();
    let mut is_pivot = vec![false; cols];
    for &p in &r.pivots {
        is_pivot[p] = true;
    }
    let mut basis = Vec::new();
    for free in 0..cols {
        if is_pivot[free] {
            continue;
        }
        let mut v = vec![Rational::zero(); cols];
        v[free] = Rational::one();
        for (row, &pc) in r.pivots.iter().enumerate() {
            v[pc] = -r.matrix.get(row, free).clone();
        }
        basis.push(v);
    }
    basis
}

/// A row space prepared for exact membership tests.
pub struct Span {
    rref_rows: Vec<Vec<Rational>>,
    pivots: Vec<usize>,
}

impl Span {
    pub fn new(vectors: &[Vec<Rational>], len: usize) -> Span {
        assert!(vectors.iter().all(|v| v.len() == len));
        if vectors.is_empty() {
            return Span {
                rref_rows: Vec::new(),
                pivots: Vec::new(),
            };
        }
        let m = RatMatrix::new(
            vectors.len(),
            len,
            vectors.iter().flatten().cloned().collect(),
        );
        let r = rref(&m);
        let rows = (0..r.rank).map(|i| r.matrix.row(i).to_vec()).collect();
        Span {
            rref_rows: rows,
            pivots: r.pivots,
        }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        let mut residual = v.to_vec();
        for (row, &pc) in self.rref_rows.iter().zip(&self.pivots) {
            if residual[pc].is_zero() {
                continue;
            }
            let factor = residual[pc].clone();
            for (dst, src) in residual.iter_mut().zip(row) {
                if !src.is_zero() {
                    *dst -= &factor * src;
                }
            }
        }
        residual.iter().all(|e| e.is_zero())
    }
}

/// Solves `A x = b` exactly; `None` when inconsistent. With free variables
/// the returned solution sets them to 0.
pub fn solve_exact(a: &RatMatrix, b: &[Rational]) -> Option<Vec<Rational>> {
    assert_eq!(a.rows(), b.len());
    let mut aug = RatMatrix::from_fn(a.rows(), a.cols() + 1, |r, c| {
        if c < a.cols() {
            a.get(r, c).clone()
        } else {
            b[r].clone()
        }
    });
    let r = rref(&aug);
    aug = r.matrix;
    if r.pivots.contains(&a.cols()) {
        return None;
    }
    let mut x = vec![Rational::zero(); a.cols()];
    for (row, &pc) in r.pivots.iter().enumerate() {
        x[pc] = aug.get(row, a.cols()).clone();
    }
    Some(x)
}

/// Default bound on `m^2 + n^2` for [`intertwiner_space`].
pub const DEFAULT_SIZE_LIMIT: usize = 10_000;

/// Flattens a pair `(X, Y)` in the vectorization order used by
/// [`intertwiner_space`]: `vec(X)` column-major, then `vec(Y)` column-major.
pub fn vectorize_pair(x: &RatMatrix, y: &RatMatrix) -> Vec<Rational> {
    let mut v = Vec::with_capacity(x.rows() * x.cols() + y.rows() * y.cols());
    for c in 0..x.cols() {
        for r in 0..x.rows() {
            v.push(x.get(r, c).clone());
        }
    }
    for c in 0..y.cols() {
        for r in 0..y.rows() {
            v.push(y.get(r, c).clone());
        }
    }
    v
}

/// Inverse of [`vectorize_pair`] for an `m x n` base matrix.
pub fn unvectorize_pair(v: &[Rational], m: usize, n: usize) -> (RatMatrix, RatMatrix) {
    assert_eq!(v.len(), m * m + n * n);
    let x = RatMatrix::from_fn(m, m, |r, c| v[c * m + r].clone());
    let y = RatMatrix::from_fn(n, n, |r, c| v[m * m + c * n + r].clone());
    (x, y)
}

/// Basis of the linear space `{(X, Y) : X B = B Y}` for an `m x n` matrix,
/// via the `m*n` homogeneous equations in `m^2 + n^2` unknowns.
pub fn intertwiner_space(b: &RatMatrix) -> Result<Vec<(RatMatrix, RatMatrix)>, LinalgError> {
    intertwiner_space_with_limit(b, DEFAULT_SIZE_LIMIT)
}

pub fn intertwiner_space_with_limit(
    b: &RatMatrix,
    bound: usize,
) -> Result<Vec<(RatMatrix, RatMatrix)>, LinalgError> {
    let (m, n) = (b.rows(), b.cols());
    let size = m * m + n * n;
    if size > bound {
        return Err(LinalgError::SizeLimit { size, bound });
    }
    // Equation (i, k): sum_j X[i][j] B[j][k] - sum_j B[i][j] Y[j][k] = 0,
    // listed column-major in (i, k); unknowns are vec(X) then vec(Y),
    // both column-major.
    let mut system = RatMatrix::zero(m * n, size);
    for k in 0..n {
        for i in 0..m {
            let eq = k * m + i;
            for j in 0..m {
                if !b.get(j, k).is_zero() {
                    system.set(eq, j * m + i, b.get(j, k).clone());
                }
            }
            for j in 0..n {
                if !b.get(i, j).is_zero() {
                    system.set(eq, m * m + k * n + j, -b.get(i, j).clone());
                }
            }
        }
    }
    let basis = nullspace(&system);
    let pairs: Vec<(RatMatrix, RatMatrix)> = basis
        .iter()
        .map(|v| unvectorize_pair(v, m, n))
        .collect();
    for (x, y) in &pairs {
        debug_assert!(x.mul(b) == b.mul(y), "basis pair must solve XB = BY");
    }
    Ok(pairs)
}

/// Permutation matrix with `P e_j = e_{sigma(j)}`, so `P[sigma(j)][j] = 1`.
pub fn perm_matrix(sigma: &Permutation) -> RatMatrix {
    let n = sigma.n();
    let mut m = RatMatrix::zero(n, n);
    for j in 1..=n {
        m.set(sigma.apply(j) - 1, j - 1, Rational::one());
    }
    m
}

/// Permutation matrix of the action of `sigma` on the `layout` of unordered
/// index pairs `(i, j)` with `i <= j` (diagonal slots allowed). The layout
/// must be closed under the action.
pub fn pair_perm_matrix(sigma: &Permutation, layout: &[(usize, usize)]) -> RatMatrix {
    let pos = |pair: (usize, usize)| -> usize {
        layout
            .iter()
            .position(|&p| p == pair)
            .expect("layout closed under the pair action")
    };
    let mut m = RatMatrix::zero(layout.len(), layout.len());
    for (src, &(i, j)) in layout.iter().enumerate() {
        let (a, b) = (sigma.apply(i), sigma.apply(j));
        let image = (a.min(b), a.max(b));
        m.set(pos(image), src, Rational::one());
    }
    m
}

/// The lexicographic pair layout `(1,2), (1,3), ..., (n-1,n)`.
pub fn lex_pairs(n: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::with_capacity(n * (n - 1) / 2);
    for i in 1..=n {
        for j in i + 1..=n {
            out.push((i, j));
        }
    }
    out
}
