//! Exact linear algebra over the rationals.
//!
//! Matrices are stored row-sparse with exact [`Q`] entries. Rank and kernels
//! come from plain Gaussian elimination on sparse rows; the matrices arising in
//! the standard complex are small and very sparse, so no pivoting heuristics
//! beyond "leading column first" are needed.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational scalar, always in lowest terms with a positive
/// denominator.
pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn qf(num: i64, den: i64) -> Q {
    Q::new(BigInt::from(num), BigInt::from(den))
}

/// Parses `a` or `a/b`. The inverse of `Q`'s `Display`.
pub fn parse_q(s: &str) -> Result<Q> {
    s.trim()
        .parse::<Q>()
        .map_err(|e| Error::Invalid(format!("bad rational {s:?}: {e}")))
}

/// Integer value of `x`, if it is one and fits.
pub fn to_i64(x: &Q) -> Option<i64> {
    use num_traits::ToPrimitive;
    if x.is_integer() {
        x.numer().to_i64()
    } else {
        None
    }
}

/// `x^n` for an integer exponent; `x` must be nonzero when `n < 0`.
pub fn qpow(x: &Q, n: i64) -> Q {
    let mut out = Q::one();
    let base = if n < 0 { x.recip() } else { x.clone() };
    for _ in 0..n.unsigned_abs() {
        out *= &base;
    }
    out
}

type Row = Vec<(usize, Q)>;

#[derive(Clone, PartialEq, Eq)]
pub struct SparseMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Row>,
}

impl fmt::Debug for SparseMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SparseMatrix({}x{}; ", self.rows, self.cols)?;
        for (r, c, v) in self.entries() {
            write!(f, "({r},{c})={v} ")?;
        }
        write!(f, ")")
    }
}

impl SparseMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        SparseMatrix {
            rows,
            cols,
            data: vec![Vec::new(); rows],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_triplets(n, n, (0..n).map(|i| (i, i, Q::one()))).unwrap()
    }

    /// Builds a matrix from `(row, col, value)` triplets. Repeated positions are
    /// summed and zeros dropped.
    pub fn from_triplets(
        rows: usize,
        cols: usize,
        triplets: impl IntoIterator<Item = (usize, usize, Q)>,
    ) -> Result<Self> {
        let mut acc: Vec<BTreeMap<usize, Q>> = vec![BTreeMap::new(); rows];
        for (r, c, v) in triplets {
            if r >= rows || c >= cols {
                return Err(Error::DimensionMismatch(format!(
                    "entry ({r},{c}) outside {rows}x{cols}"
                )));
            }
            *acc[r].entry(c).or_insert_with(Q::zero) += v;
        }
        let data = acc
            .into_iter()
            .map(|m| m.into_iter().filter(|(_, v)| !v.is_zero()).collect())
            .collect();
        Ok(SparseMatrix { rows, cols, data })
    }

    pub fn from_dense(dense: &[Vec<Q>]) -> Self {
        let rows = dense.len();
        let cols = dense.first().map_or(0, Vec::len);
        let trip = dense.iter().enumerate().flat_map(|(r, row)| {
            row.iter()
                .enumerate()
                .filter(|(_, v)| !v.is_zero())
                .map(move |(c, v)| (r, c, v.clone()))
        });
        Self::from_triplets(rows, cols, trip).expect("dense rows have equal length")
    }

    pub fn from_i64(dense: &[&[i64]]) -> Self {
        let d: Vec<Vec<Q>> = dense.iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect();
        let mut m = Self::from_dense(&d);
        if dense.is_empty() {
            m.cols = 0;
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().map(Vec::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.nnz() == 0
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &Q)> + '_ {
        self.data
            .iter()
            .enumerate()
            .flat_map(|(r, row)| row.iter().map(move |(c, v)| (r, *c, v)))
    }

    pub fn get(&self, r: usize, c: usize) -> Q {
        self.data[r]
            .iter()
            .find(|(cc, _)| *cc == c)
            .map(|(_, v)| v.clone())
            .unwrap_or_else(Q::zero)
    }

    pub fn to_dense(&self) -> Vec<Vec<Q>> {
        let mut d = vec![vec![Q::zero(); self.cols]; self.rows];
        for (r, c, v) in self.entries() {
            d[r][c] = v.clone();
        }
        d
    }

    pub fn transpose(&self) -> Self {
        Self::from_triplets(
            self.cols,
            self.rows,
            self.entries().map(|(r, c, v)| (c, r, v.clone())),
        )
        .unwrap()
    }

    pub fn scale(&self, s: &Q) -> Self {
        Self::from_triplets(
            self.rows,
            self.cols,
            self.entries().map(|(r, c, v)| (r, c, v * s)),
        )
        .unwrap()
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} + {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Self::from_triplets(
            self.rows,
            self.cols,
            self.entries()
                .chain(other.entries())
                .map(|(r, c, v)| (r, c, v.clone())),
        )
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(&-Q::one()))
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} * {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut trip = Vec::new();
        for (r, row) in self.data.iter().enumerate() {
            let mut acc: BTreeMap<usize, Q> = BTreeMap::new();
            for (k, a) in row {
                for (c, b) in &other.data[*k] {
                    *acc.entry(*c).or_insert_with(Q::zero) += a * b;
                }
            }
            trip.extend(acc.into_iter().map(|(c, v)| (r, c, v)));
        }
        Self::from_triplets(self.rows, other.cols, trip)
    }

    pub fn apply(&self, v: &[Q]) -> Vec<Q> {
        assert_eq!(v.len(), self.cols, "vector length");
        self.data
            .iter()
            .map(|row| row.iter().map(|(c, a)| a * &v[*c]).sum())
            .collect()
    }

    /// Row-reduced pivot rows: each returned row has leading entry 1 at a
    /// distinct column, and is reduced against all other pivot columns.
    fn rref_rows(&self) -> BTreeMap<usize, BTreeMap<usize, Q>> {
        // pivot rows are kept mutually reduced: each is zero in every other
        // pivot column, so one pass per incoming row suffices
        let mut pivots: BTreeMap<usize, BTreeMap<usize, Q>> = BTreeMap::new();
        for row in &self.data {
            let mut cur: BTreeMap<usize, Q> = row.iter().cloned().collect();
            let hits: Vec<usize> = cur.keys().filter(|c| pivots.contains_key(c)).copied().collect();
            for c in hits {
                let Some(factor) = cur.get(&c).cloned() else { continue };
                for (cc, pv) in &pivots[&c] {
                    let e = cur.entry(*cc).or_insert_with(Q::zero);
                    *e -= &factor * pv;
                    if e.is_zero() {
                        cur.remove(cc);
                    }
                }
            }
            let Some((&lead, lv)) = cur.iter().next() else { continue };
            let inv = lv.recip();
            for v in cur.values_mut() {
                *v *= &inv;
            }
            for prow in pivots.values_mut() {
                if let Some(f) = prow.get(&lead).cloned() {
                    for (c, v) in &cur {
                        let e = prow.entry(*c).or_insert_with(Q::zero);
                        *e -= &f * v;
                        if e.is_zero() {
                            prow.remove(c);
                        }
                    }
                }
            }
            pivots.insert(lead, cur);
        }
        pivots
    }
}

/// Rank over the rationals.
pub fn rank(m: &SparseMatrix) -> usize {
    // forward elimination only; pivot rows are not reduced against each other
    let mut pivots: BTreeMap<usize, BTreeMap<usize, Q>> = BTreeMap::new();
    for row in &m.data {
        let mut cur: BTreeMap<usize, Q> = row.iter().cloned().collect();
        while let Some((&lead, lv)) = cur.iter().next() {
            let Some(p) = pivots.get(&lead) else {
                let inv = lv.recip();
                for v in cur.values_mut() {
                    *v *= &inv;
                }
                pivots.insert(lead, cur);
                break;
            };
            let factor = lv.clone();
            for (c, pv) in p {
                let e = cur.entry(*c).or_insert_with(Q::zero);
                *e -= &factor * pv;
                if e.is_zero() {
                    cur.remove(c);
                }
            }
        }
    }
    pivots.len()
}

/// A basis of the null space `{x : m x = 0}`, one vector per free column.
pub fn kernel_basis(m: &SparseMatrix) -> Vec<Vec<Q>> {
    let pivots = m.rref_rows();
    let free: Vec<usize> = (0..m.cols).filter(|c| !pivots.contains_key(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Q::zero(); m.cols];
            v[f] = Q::one();
            for (&pc, prow) in &pivots {
                if let Some(a) = prow.get(&f) {
                    v[pc] = -a.clone();
                }
            }
            v
        })
        .collect()
}

/// `dim ker(d_out) - rank(d_in)` for a pair of composable boundaries
/// `d_in: C_{j+1} -> C_j`, `d_out: C_j -> C_{j-1}`.
pub fn homology_dim(d_out: &SparseMatrix, d_in: &SparseMatrix) -> Result<usize> {
    if d_out.cols != d_in.rows {
        return Err(Error::DimensionMismatch(format!(
            "d_out is {}x{}, d_in is {}x{}",
            d_out.rows, d_out.cols, d_in.rows, d_in.cols
        )));
    }
    let comp = d_out.mul(d_in)?;
    if !comp.is_zero() {
        return Err(Error::CompositionNonzero {
            rows: comp.rows,
            cols: comp.cols,
            nonzero: comp.nnz(),
        });
    }
    let ker = d_out.cols - rank(d_out);
    Ok(ker - rank(d_in))
}

/// Solves `a x = b` for square invertible `a`; `None` if singular.
pub fn solve(a: &[Vec<Q>], b: &[Q]) -> Option<Vec<Q>> {
    let inv = inverse(a)?;
    Some(
        inv.iter()
            .map(|row| row.iter().zip(b).map(|(x, y)| x * y).sum())
            .collect(),
    )
}

/// Inverse of a square matrix by Gauss–Jordan elimination.
pub fn inverse(a: &[Vec<Q>]) -> Option<Vec<Vec<Q>>> {
    let n = a.len();
    let mut m: Vec<Vec<Q>> = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            assert_eq!(row.len(), n, "square matrix");
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { Q::one() } else { Q::zero() }));
            r
        })
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| !m[r][col].is_zero())?;
        m.swap(col, piv);
        let inv = m[col][col].recip();
        for v in m[col].iter_mut() {
            *v *= &inv;
        }
        let prow = m[col].clone();
        for (r, row) in m.iter_mut().enumerate() {
            if r != col && !row[col].is_zero() {
                let f = row[col].clone();
                for (x, p) in row.iter_mut().zip(&prow) {
                    *x -= &f * p;
                }
            }
        }
    }
    Some(m.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Coordinates of `v` in the span of `basis` (columns), if it lies there.
pub fn coordinates_in(basis: &[Vec<Q>], v: &[Q]) -> Option<Vec<Q>> {
    let k = basis.len();
    let n = v.len();
    // augmented [basis | v] as rows of the transposed system
    let mut trip = Vec::new();
    for (j, b) in basis.iter().enumerate() {
        for (i, x) in b.iter().enumerate() {
            if !x.is_zero() {
                trip.push((i, j, x.clone()));
            }
        }
    }
    for (i, x) in v.iter().enumerate() {
        if !x.is_zero() {
            trip.push((i, k, x.clone()));
        }
    }
    let aug = SparseMatrix::from_triplets(n, k + 1, trip).ok()?;
    let ker = kernel_basis(&aug);
    let sol = ker.iter().find(|x| !x[k].is_zero())?;
    let scale = -sol[k].recip();
    let coords: Vec<Q> = sol[..k].iter().map(|x| x * &scale).collect();
    // the basis must be independent for the coordinates to be unique
    let span = SparseMatrix::from_triplets(n, k, trip_cols(basis)).ok()?;
    if rank(&span) != k {
        return None;
    }
    Some(coords)
}

fn trip_cols(basis: &[Vec<Q>]) -> Vec<(usize, usize, Q)> {
    basis
        .iter()
        .enumerate()
        .flat_map(|(j, b)| {
            b.iter()
                .enumerate()
                .filter(|(_, x)| !x.is_zero())
                .map(move |(i, x)| (i, j, x.clone()))
        })
        .collect()
}

/// Rank of a list of vectors.
pub fn rank_of_vectors(vs: &[Vec<Q>]) -> usize {
    if vs.is_empty() {
        return 0;
    }
    rank(&SparseMatrix::from_dense(vs))
}

pub fn is_integer(x: &Q) -> bool {
    x.is_integer()
}

pub fn abs(x: &Q) -> Q {
    x.abs()
}
