//! Dense exact-rational matrices and deterministic elimination.
//!
//! All bases produced by this crate come from the reduced row echelon form
//! over the rationals, which is unique, so every downstream basis (kernels,
//! images, quotient representatives) is reproducible across runs and
//! platforms. Pivots are chosen as the first nonzero entry in column order;
//! there is no pivot-size heuristic because there is no rounding.
//!
//! `bareiss_rank` is a second, independent elimination routine (fraction-free
//! integer Bareiss) used to cross-check ranks.

use crate::scalar::Rat;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

/// Dense row-major matrix over the rationals. Zero-sized dimensions are
/// allowed; a `0 x n` or `n x 0` matrix has rank zero and empty bases.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mat {
    rows: usize,
    cols: usize,
    data: Vec<Rat>,
}

/// Result of reduced row echelon elimination.
#[derive(Debug, Clone)]
pub struct Rref {
    /// The reduced row echelon form itself.
    pub mat: Mat,
    /// Pivot column of each of the first `rank` rows, strictly increasing.
    pub pivots: Vec<usize>,
}

impl Rref {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

impl Mat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat {
            rows,
            cols,
            data: vec![Rat::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Mat::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rat::one());
        }
        m
    }

    /// Builds from row vectors; all rows must share a length.
    pub fn from_rows(rows: Vec<Vec<Rat>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Mat {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    /// Builds from column vectors; useful for basis matrices. `width` is the
    /// row count, needed when `cols` is empty.
    pub fn from_columns(height: usize, cols: Vec<Vec<Rat>>) -> Self {
        let c = cols.len();
        assert!(cols.iter().all(|col| col.len() == height), "ragged columns");
        let mut m = Mat::zeros(height, c);
        for (j, col) in cols.into_iter().enumerate() {
            for (i, v) in col.into_iter().enumerate() {
                m.set(i, j, v);
            }
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Rat) -> Self {
        let mut m = Mat::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m.set(i, j, f(i, j));
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

    pub fn get(&self, i: usize, j: usize) -> &Rat {
        &self.data[i * self.cols + j]
    }

    pub fn add_to(&mut self, i: usize, j: usize, v: &Rat) {
        if !v.is_zero() {
            let idx = i * self.cols + j;
            self.data[idx] = &self.data[idx] + v;
        }
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rat) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Rat] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Rat> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn transpose(&self) -> Mat {
        Mat::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn add(&self, other: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a + b)
            .collect();
        Mat {
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn sub(&self, other: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a - b)
            .collect();
        Mat {
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn scale(&self, s: &Rat) -> Mat {
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x * s).collect(),
        }
    }

    pub fn mul(&self, other: &Mat) -> Mat {
        assert_eq!(self.cols, other.rows, "dimension mismatch in mul");
        let mut out = Mat::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let cur = out.get(i, j) + a * b;
                    out.set(i, j, cur);
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Rat]) -> Vec<Rat> {
        assert_eq!(self.cols, v.len(), "dimension mismatch in mul_vec");
        let mut out = vec![Rat::zero(); self.rows];
        for i in 0..self.rows {
            let mut acc = Rat::zero();
            for j in 0..self.cols {
                let a = self.get(i, j);
                if !a.is_zero() && !v[j].is_zero() {
                    acc += a * &v[j];
                }
            }
            out[i] = acc;
        }
        out
    }

    /// Canonical reduced row echelon form with first-nonzero pivoting.
    pub fn rref(&self) -> Rref {
        let (r, _) = self.rref_with_rhs(&Mat::zeros(self.rows, 0));
        r
    }

    /// RREF of `self`, with the same row operations applied to `rhs`.
    /// Pivots are only ever chosen inside `self`'s columns, so each column of
    /// the transformed `rhs` can be tested for consistency afterwards.
    pub fn rref_with_rhs(&self, rhs: &Mat) -> (Rref, Mat) {
        assert_eq!(self.rows, rhs.rows, "rhs row count mismatch");
        let mut m = self.clone();
        let mut b = rhs.clone();
        let mut pivots = Vec::new();
        let mut next_row = 0usize;
        for col in 0..m.cols {
            if next_row >= m.rows {
                break;
            }
            let Some(pr) = (next_row..m.rows).find(|&i| !m.get(i, col).is_zero()) else {
                continue;
            };
            m.swap_rows(next_row, pr);
            b.swap_rows(next_row, pr);
            let inv = {
                let p = m.get(next_row, col).clone();
                Rat::one() / p
            };
            if !inv.is_one() {
                m.scale_row(next_row, &inv, col);
                b.scale_row(next_row, &inv, 0);
            }
            for i in 0..m.rows {
                if i == next_row {
                    continue;
                }
                let factor = m.get(i, col).clone();
                if factor.is_zero() {
                    continue;
                }
                m.axpy_rows(i, next_row, &factor, col);
                b.axpy_rows(i, next_row, &factor, 0);
            }
            pivots.push(col);
            next_row += 1;
        }
        (Rref { mat: m, pivots }, b)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b || self.cols == 0 {
            return;
        }
        let c = self.cols;
        let (lo, hi) = (a.min(b), a.max(b));
        let (head, tail) = self.data.split_at_mut(hi * c);
        head[lo * c..lo * c + c].swap_with_slice(&mut tail[..c]);
    }

    /// Multiplies row `i` by `s`, touching columns `from..` only (entries to
    /// the left are known zero at the call sites).
    fn scale_row(&mut self, i: usize, s: &Rat, from: usize) {
        for j in from..self.cols {
            let idx = i * self.cols + j;
            if !self.data[idx].is_zero() {
                self.data[idx] = &self.data[idx] * s;
            }
        }
    }

    /// `row[i] -= factor * row[src]`, columns `from..` only.
    fn axpy_rows(&mut self, i: usize, src: usize, factor: &Rat, from: usize) {
        for j in from..self.cols {
            let s = self.data[src * self.cols + j].clone();
            if s.is_zero() {
                continue;
            }
            let idx = i * self.cols + j;
            self.data[idx] = &self.data[idx] - &(factor * &s);
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank()
    }

    /// Canonical kernel basis: one vector per free column, in ascending free
    /// column order, with a 1 in the free position.
    pub fn kernel_basis(&self) -> Vec<Vec<Rat>> {
        let rref = self.rref();
        let pivot_set: Vec<Option<usize>> = {
            let mut lookup = vec![None; self.cols];
            for (row, &col) in rref.pivots.iter().enumerate() {
                lookup[col] = Some(row);
            }
            lookup
        };
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if pivot_set[free].is_some() {
                continue;
            }
            let mut v = vec![Rat::zero(); self.cols];
            v[free] = Rat::one();
            for (row, &pcol) in rref.pivots.iter().enumerate() {
                let entry = rref.mat.get(row, free);
                if !entry.is_zero() {
                    v[pcol] = -entry.clone();
                }
            }
            basis.push(v);
        }
        basis
    }

    /// Particular solution of `self * x = b` with free variables set to zero,
    /// or `None` when the system is inconsistent.
    pub fn solve(&self, b: &[Rat]) -> Option<Vec<Rat>> {
        assert_eq!(self.rows, b.len(), "rhs length mismatch");
        let rhs = Mat::from_columns(self.rows, vec![b.to_vec()]);
        let (rref, tb) = self.rref_with_rhs(&rhs);
        let rank = rref.rank();
        for i in rank..self.rows {
            if !tb.get(i, 0).is_zero() {
                return None;
            }
        }
        let mut x = vec![Rat::zero(); self.cols];
        for (row, &col) in rref.pivots.iter().enumerate() {
            x[col] = tb.get(row, 0).clone();
        }
        Some(x)
    }

    /// Solves `self * X = B` column by column; `None` entries mark
    /// inconsistent columns.
    pub fn solve_multi(&self, b: &Mat) -> Vec<Option<Vec<Rat>>> {
        assert_eq!(self.rows, b.rows, "rhs row count mismatch");
        let (rref, tb) = self.rref_with_rhs(b);
        let rank = rref.rank();
        (0..b.cols)
            .map(|j| {
                for i in rank..self.rows {
                    if !tb.get(i, j).is_zero() {
                        return None;
                    }
                }
                let mut x = vec![Rat::zero(); self.cols];
                for (row, &col) in rref.pivots.iter().enumerate() {
                    x[col] = tb.get(row, j).clone();
                }
                Some(x)
            })
            .collect()
    }

    /// Exact inverse, or `None` for singular input.
    pub fn inverse(&self) -> Option<Mat> {
        assert_eq!(self.rows, self.cols, "inverse of non-square matrix");
        let (rref, inv) = self.rref_with_rhs(&Mat::identity(self.rows));
        if rref.rank() == self.rows {
            Some(inv)
        } else {
            None
        }
    }

    /// Determinant of the square submatrix selected by `rows` x `cols`,
    /// by exact Gaussian elimination.
    pub fn minor_det(&self, rows: &[usize], cols: &[usize]) -> Rat {
        assert_eq!(rows.len(), cols.len(), "minor must be square");
        let k = rows.len();
        let mut m: Vec<Vec<Rat>> = rows
            .iter()
            .map(|&i| cols.iter().map(|&j| self.get(i, j).clone()).collect())
            .collect();
        let mut det = Rat::one();
        for c in 0..k {
            let Some(pr) = (c..k).find(|&i| !m[i][c].is_zero()) else {
                return Rat::zero();
            };
            if pr != c {
                m.swap(pr, c);
                det = -det;
            }
            let pivot = m[c][c].clone();
            det *= &pivot;
            for i in c + 1..k {
                if m[i][c].is_zero() {
                    continue;
                }
                let factor = &m[i][c] / &pivot;
                for j in c..k {
                    let s = m[c][j].clone();
                    if !s.is_zero() {
                        m[i][j] = &m[i][j] - &(&factor * &s);
                    }
                }
            }
        }
        det
    }

    pub fn det(&self) -> Rat {
        let idx: Vec<usize> = (0..self.rows).collect();
        self.minor_det(&idx, &idx)
    }
}

/// Rank by fraction-free integer Bareiss elimination. Independent of
/// [`Mat::rref`]: rows are first scaled to integers, then eliminated with the
/// one-step Bareiss update `m[i][j] <- (m[i][j]*p - m[i][c]*m[r][j]) / prev`,
/// whose divisions are exact. Used as a cross-check oracle for ranks.
pub fn bareiss_rank(m: &Mat) -> usize {
    let rows = m.rows();
    let cols = m.cols();
    let mut a: Vec<Vec<BigInt>> = (0..rows)
        .map(|i| {
            let mut lcm = BigInt::one();
            for j in 0..cols {
                let d = m.get(i, j).denom();
                lcm = lcm.lcm(d);
            }
            (0..cols)
                .map(|j| {
                    let r = m.get(i, j);
                    r.numer() * (&lcm / r.denom())
                })
                .collect()
        })
        .collect();
    let mut prev = BigInt::one();
    let mut rank = 0usize;
    for col in 0..cols {
        if rank >= rows {
            break;
        }
        let Some(pr) = (rank..rows).find(|&i| !a[i][col].is_zero()) else {
            continue;
        };
        a.swap(rank, pr);
        let pivot = a[rank][col].clone();
        for i in rank + 1..rows {
            for j in col + 1..cols {
                let t = &a[i][j] * &pivot - &a[i][col] * &a[rank][j];
                let (q, r) = t.div_rem(&prev);
                debug_assert!(r.is_zero(), "Bareiss division must be exact");
                a[i][j] = q;
            }
            a[i][col] = BigInt::zero();
        }
        prev = pivot;
        rank += 1;
    }
    rank
}

/// Outcome of inserting a vector into an [`IncrementalBasis`].
#[derive(Debug, Clone)]
pub enum Insert {
    /// The vector was independent from the current span; its residual (fully
    /// reduced, pivot normalized to 1) was stored.
    Independent,
    /// The vector already lay in the span. `combo[i]` gives its coordinates
    /// over all previously inserted vectors (by insertion index).
    Dependent { combo: Vec<Rat> },
}

/// Growing row space kept in reduced echelon form, with coordinate tracking
/// over the inserted vectors. Drives quotient-space representatives and
/// independent-subset selection.
#[derive(Debug, Clone)]
pub struct IncrementalBasis {
    width: usize,
    rows: Vec<Vec<Rat>>,
    pivots: Vec<usize>,
    /// Combination of inserted vectors forming each stored row.
    combos: Vec<Vec<Rat>>,
    inserted: usize,
}

impl IncrementalBasis {
    pub fn new(width: usize) -> Self {
        IncrementalBasis {
            width,
            rows: Vec::new(),
            pivots: Vec::new(),
            combos: Vec::new(),
            inserted: 0,
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Stored rows: a reduced-echelon basis of the span of everything
    /// inserted so far, ordered by pivot column.
    pub fn rows(&self) -> &[Vec<Rat>] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// `combos()[k]` expresses `rows()[k]` as a combination of the inserted
    /// vectors, indexed by insertion order.
    pub fn combos(&self) -> &[Vec<Rat>] {
        &self.combos
    }

    /// Reduces `v` against the stored rows. Returns the residual and the
    /// coefficients over inserted vectors that were subtracted, so that
    /// `v = sum(coeffs[i] * inserted_i) + residual`.
    pub fn reduce(&self, v: &[Rat]) -> (Vec<Rat>, Vec<Rat>) {
        assert_eq!(v.len(), self.width, "vector width mismatch");
        let mut res = v.to_vec();
        let mut coeffs = vec![Rat::zero(); self.inserted];
        for (k, &p) in self.pivots.iter().enumerate() {
            let factor = res[p].clone();
            if factor.is_zero() {
                continue;
            }
            for (j, rv) in self.rows[k].iter().enumerate() {
                if !rv.is_zero() {
                    res[j] = &res[j] - &(&factor * rv);
                }
            }
            for (j, cv) in self.combos[k].iter().enumerate() {
                if !cv.is_zero() {
                    coeffs[j] = &coeffs[j] + &(&factor * cv);
                }
            }
        }
        (res, coeffs)
    }

    /// Inserts `v`, extending the span when independent.
    pub fn insert(&mut self, v: &[Rat]) -> Insert {
        let (mut res, mut coeffs) = self.reduce(v);
        coeffs.resize(self.inserted + 1, Rat::zero());
        let me = self.inserted;
        self.inserted += 1;
        let Some(p) = res.iter().position(|x| !x.is_zero()) else {
            coeffs.pop();
            // Keep every stored combo padded to the insertion count.
            for c in self.combos.iter_mut() {
                c.resize(self.inserted, Rat::zero());
            }
            return Insert::Dependent { combo: coeffs };
        };
        // Normalize the new row and express it over inserted vectors:
        // row = (v - sum coeffs*inserted) / res[p].
        let inv = Rat::one() / res[p].clone();
        for x in res.iter_mut() {
            if !x.is_zero() {
                *x = &*x * &inv;
            }
        }
        let mut combo = vec![Rat::zero(); self.inserted];
        for (j, c) in coeffs.iter().enumerate().take(me) {
            if !c.is_zero() {
                combo[j] = -(c * &inv);
            }
        }
        combo[me] = inv;
        // Keep full reduction: clear the new pivot from existing rows.
        for k in 0..self.rows.len() {
            let factor = self.rows[k][p].clone();
            if factor.is_zero() {
                continue;
            }
            for j in 0..self.width {
                let s = res[j].clone();
                if !s.is_zero() {
                    self.rows[k][j] = &self.rows[k][j] - &(&factor * &s);
                }
            }
            for j in 0..self.inserted {
                let s = combo[j].clone();
                if !s.is_zero() {
                    if self.combos[k].len() < self.inserted {
                        self.combos[k].resize(self.inserted, Rat::zero());
                    }
                    self.combos[k][j] = &self.combos[k][j] - &(&factor * &s);
                }
            }
        }
        for c in self.combos.iter_mut() {
            c.resize(self.inserted, Rat::zero());
        }
        let slot = self.pivots.iter().position(|&q| q > p).unwrap_or(self.pivots.len());
        self.pivots.insert(slot, p);
        self.rows.insert(slot, res);
        self.combos.insert(slot, combo);
        Insert::Independent
    }

    /// True if `v` lies in the current span.
    pub fn contains(&self, v: &[Rat]) -> bool {
        let (res, _) = self.reduce(v);
        res.iter().all(|x| x.is_zero())
    }
}

pub fn vec_is_zero(v: &[Rat]) -> bool {
    v.iter().all(|x| x.is_zero())
}

pub fn vec_add(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn vec_sub(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn vec_scale(a: &[Rat], s: &Rat) -> Vec<Rat> {
    a.iter().map(|x| x * s).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rat, rint};

    fn m(rows: &[&[i64]]) -> Mat {
        Mat::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| rint(x)).collect())
                .collect(),
        )
    }

    #[test]
    fn rref_is_canonical() {
        let a = m(&[&[2, 4, 6], &[1, 2, 4], &[0, 0, 2]]);
        let r = a.rref();
        assert_eq!(r.pivots, vec![0, 2]);
        assert_eq!(r.mat, m(&[&[1, 2, 0], &[0, 0, 1], &[0, 0, 0]]));
    }

    #[test]
    fn kernel_solves_to_zero() {
        let a = m(&[&[1, 2, 3], &[2, 4, 6]]);
        let k = a.kernel_basis();
        assert_eq!(k.len(), 2);
        for v in &k {
            assert!(vec_is_zero(&a.mul_vec(v)));
        }
        // Canonical: free columns 1 and 2 carry the identity part.
        assert_eq!(k[0], vec![rint(-2), rint(1), rint(0)]);
        assert_eq!(k[1], vec![rint(-3), rint(0), rint(1)]);
    }

    #[test]
    fn solve_finds_particular_solution() {
        let a = m(&[&[1, 1], &[0, 1]]);
        let x = a.solve(&[rint(3), rint(1)]).unwrap();
        assert_eq!(x, vec![rint(2), rint(1)]);
        assert!(a.solve(&[rint(0), rint(0)]).is_some());
        let b = m(&[&[1, 1], &[2, 2]]);
        assert!(b.solve(&[rint(1), rint(3)]).is_none());
    }

    #[test]
    fn inverse_round_trip() {
        let a = m(&[&[2, 1], &[1, 1]]);
        let inv = a.inverse().unwrap();
        assert_eq!(a.mul(&inv), Mat::identity(2));
        assert!(m(&[&[1, 2], &[2, 4]]).inverse().is_none());
    }

    #[test]
    fn ranks_agree_between_routines() {
        let cases = vec![
            m(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]),
            m(&[&[0, 0], &[0, 0]]),
            Mat::identity(4),
            Mat::from_rows(vec![
                vec![rat(1, 2), rat(1, 3)],
                vec![rat(1, 4), rat(1, 6)],
                vec![rat(3, 2), rat(2, 3)],
            ]),
        ];
        for c in cases {
            assert_eq!(c.rank(), bareiss_rank(&c), "rank mismatch on {c:?}");
        }
    }

    #[test]
    fn det_matches_cofactor_values() {
        assert_eq!(m(&[&[1, 2], &[3, 4]]).det(), rint(-2));
        assert_eq!(m(&[&[0, 1], &[1, 0]]).det(), rint(-1));
        assert_eq!(
            m(&[&[2, 0, 0], &[0, 3, 0], &[0, 0, 5]]).det(),
            rint(30)
        );
        assert_eq!(m(&[&[1, 1], &[1, 1]]).det(), rint(0));
    }

    #[test]
    fn incremental_basis_tracks_combinations() {
        let mut b = IncrementalBasis::new(3);
        assert!(matches!(b.insert(&[rint(1), rint(1), rint(0)]), Insert::Independent));
        assert!(matches!(b.insert(&[rint(0), rint(1), rint(1)]), Insert::Independent));
        // v = first + 2*second.
        let v = vec![rint(1), rint(3), rint(2)];
        match b.insert(&v) {
            Insert::Dependent { combo } => {
                assert_eq!(combo, vec![rint(1), rint(2)]);
            }
            Insert::Independent => panic!("expected dependence"),
        }
        assert_eq!(b.rank(), 2);
        assert!(b.contains(&[rint(2), rint(2), rint(0)]));
        assert!(!b.contains(&[rint(1), rint(0), rint(0)]));
    }

    #[test]
    fn zero_sized_matrices_are_fine() {
        let a = Mat::zeros(0, 3);
        assert_eq!(a.rank(), 0);
        assert_eq!(a.kernel_basis().len(), 3);
        let b = Mat::zeros(3, 0);
        assert_eq!(b.rank(), 0);
        assert!(b.kernel_basis().is_empty());
        assert_eq!(b.solve(&vec![Rat::zero(); 3]).unwrap().len(), 0);
    }
}
