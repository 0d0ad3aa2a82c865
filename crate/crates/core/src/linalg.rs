//! Exact dense linear algebra over a prime field GF(p).
//!
//! Every higher check in this crate bottoms out in ranks, kernels and
//! solvability of small dense systems computed here. Pivoting is
//! deterministic (first nonzero entry), so every downstream certificate
//! is reproducible.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The prime field GF(p). Elements are canonical residues in `[0, p)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PrimeField {
    p: u64,
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        if p < 2 || p > (1 << 31) - 1 || !is_prime(p) {
            return Err(Error::InvalidInput(format!("{p} is not a valid prime modulus")));
        }
        Ok(PrimeField { p })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn reduce(&self, x: i64) -> u64 {
        x.rem_euclid(self.p as i64) as u64
    }

    pub fn add(&self, a: u64, b: u64) -> u64 {
        (a + b) % self.p
    }

    pub fn sub(&self, a: u64, b: u64) -> u64 {
        (a + self.p - b) % self.p
    }

    pub fn neg(&self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    pub fn mul(&self, a: u64, b: u64) -> u64 {
        a * b % self.p
    }

    pub fn inv(&self, a: u64) -> u64 {
        assert!(a != 0, "inverse of zero in GF({})", self.p);
        // extended Euclid
        let (mut r0, mut r1) = (self.p as i64, a as i64);
        let (mut s0, mut s1) = (0i64, 1i64);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (s0, s1) = (s1, s0 - q * s1);
        }
        debug_assert_eq!(r0, 1);
        self.reduce(s0)
    }
}

/// Dense row-major matrix over GF(p).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Mat {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<u64>,
    pub field: PrimeField,
}

impl Mat {
    pub fn zero(rows: usize, cols: usize, field: PrimeField) -> Self {
        Mat { rows, cols, entries: vec![0; rows * cols], field }
    }

    pub fn identity(n: usize, field: PrimeField) -> Self {
        let mut m = Mat::zero(n, n, field);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_rows(rows: &[Vec<u64>], field: PrimeField) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        let mut entries = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged rows");
            for &x in row {
                entries.push(x % field.modulus());
            }
        }
        Mat { rows: r, cols: c, entries, field }
    }

    #[inline]
    pub fn at(&self, i: usize, j: usize) -> u64 {
        self.entries[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: u64) {
        self.entries[i * self.cols + j] = v % self.field.modulus();
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|&x| x == 0)
    }

    pub fn transpose(&self) -> Mat {
        let mut t = Mat::zero(self.cols, self.rows, self.field);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.at(i, j));
            }
        }
        t
    }

    pub fn mul(&self, other: &Mat) -> Mat {
        assert_eq!(self.cols, other.rows, "shape mismatch in mul");
        let f = self.field;
        let mut out = Mat::zero(self.rows, other.cols, f);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let v = f.add(out.at(i, j), f.mul(a, other.at(k, j)));
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    pub fn add(&self, other: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let f = self.field;
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(&a, &b)| f.add(a, b))
            .collect();
        Mat { rows: self.rows, cols: self.cols, entries, field: f }
    }

    pub fn sub(&self, other: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let f = self.field;
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(&a, &b)| f.sub(a, b))
            .collect();
        Mat { rows: self.rows, cols: self.cols, entries, field: f }
    }

    pub fn scale(&self, c: u64) -> Mat {
        let f = self.field;
        let entries = self.entries.iter().map(|&a| f.mul(a, c % f.modulus())).collect();
        Mat { rows: self.rows, cols: self.cols, entries, field: f }
    }

    pub fn neg(&self) -> Mat {
        let f = self.field;
        let entries = self.entries.iter().map(|&a| f.neg(a)).collect();
        Mat { rows: self.rows, cols: self.cols, entries, field: f }
    }

    pub fn col(&self, j: usize) -> Vec<u64> {
        (0..self.rows).map(|i| self.at(i, j)).collect()
    }

    pub fn hstack(&self, other: &Mat) -> Mat {
        assert_eq!(self.rows, other.rows);
        let mut out = Mat::zero(self.rows, self.cols + other.cols, self.field);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(i, j, self.at(i, j));
            }
            for j in 0..other.cols {
                out.set(i, self.cols + j, other.at(i, j));
            }
        }
        out
    }

    pub fn vstack(&self, other: &Mat) -> Mat {
        assert_eq!(self.cols, other.cols);
        let mut entries = self.entries.clone();
        entries.extend_from_slice(&other.entries);
        Mat { rows: self.rows + other.rows, cols: self.cols, entries, field: self.field }
    }

    pub fn block_diag(blocks: &[&Mat], field: PrimeField) -> Mat {
        let rows = blocks.iter().map(|b| b.rows).sum();
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut out = Mat::zero(rows, cols, field);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            for i in 0..b.rows {
                for j in 0..b.cols {
                    out.set(r0 + i, c0 + j, b.at(i, j));
                }
            }
            r0 += b.rows;
            c0 += b.cols;
        }
        out
    }

    /// Submatrix given by column indices, in order.
    pub fn select_cols(&self, idx: &[usize]) -> Mat {
        let mut out = Mat::zero(self.rows, idx.len(), self.field);
        for i in 0..self.rows {
            for (jj, &j) in idx.iter().enumerate() {
                out.set(i, jj, self.at(i, j));
            }
        }
        out
    }

    pub fn select_rows(&self, idx: &[usize]) -> Mat {
        let mut out = Mat::zero(idx.len(), self.cols, self.field);
        for (ii, &i) in idx.iter().enumerate() {
            for j in 0..self.cols {
                out.set(ii, j, self.at(i, j));
            }
        }
        out
    }

    pub fn from_col(v: &[u64], field: PrimeField) -> Mat {
        let mut m = Mat::zero(v.len(), 1, field);
        for (i, &x) in v.iter().enumerate() {
            m.set(i, 0, x);
        }
        m
    }

    /// Flatten to a single column, row-major.
    pub fn vectorize(&self) -> Vec<u64> {
        self.entries.clone()
    }
}

/// Result of reduced row echelon elimination.
#[derive(Debug, Clone)]
pub struct Rref {
    pub mat: Mat,
    pub rank: usize,
    pub pivots: Vec<usize>,
}

/// Reduced row echelon form with deterministic (first nonzero) pivoting.
pub fn rref(a: &Mat) -> Rref {
    let f = a.field;
    let mut m = a.clone();
    let mut pivots = Vec::new();
    let mut r = 0usize;
    for j in 0..m.cols {
        if r == m.rows {
            break;
        }
        // first nonzero entry in column j at or below row r
        let Some(pr) = (r..m.rows).find(|&i| m.at(i, j) != 0) else {
            continue;
        };
        if pr != r {
            for k in 0..m.cols {
                let (x, y) = (m.at(r, k), m.at(pr, k));
                m.set(r, k, y);
                m.set(pr, k, x);
            }
        }
        let inv = f.inv(m.at(r, j));
        for k in j..m.cols {
            m.set(r, k, f.mul(m.at(r, k), inv));
        }
        for i in 0..m.rows {
            if i != r && m.at(i, j) != 0 {
                let c = m.at(i, j);
                for k in j..m.cols {
                    let v = f.sub(m.at(i, k), f.mul(c, m.at(r, k)));
                    m.set(i, k, v);
                }
            }
        }
        pivots.push(j);
        r += 1;
    }
    Rref { mat: m, rank: r, pivots }
}

pub fn rank(a: &Mat) -> usize {
    rref(a).rank
}

/// Basis of the right null space, returned as columns of a matrix.
pub fn kernel_basis(a: &Mat) -> Mat {
    let f = a.field;
    let red = rref(a);
    let free: Vec<usize> = (0..a.cols).filter(|j| !red.pivots.contains(j)).collect();
    let mut k = Mat::zero(a.cols, free.len(), f);
    for (c, &fj) in free.iter().enumerate() {
        k.set(fj, c, 1);
        for (ri, &pj) in red.pivots.iter().enumerate() {
            k.set(pj, c, f.neg(red.mat.at(ri, fj)));
        }
    }
    k
}

/// Solve `A x = b`. Returns the deterministic solution with all free
/// variables set to 0, or `None` when inconsistent.
pub fn solve(a: &Mat, b: &[u64]) -> Result<Option<Vec<u64>>> {
    if b.len() != a.rows {
        return Err(Error::DimensionMismatch(format!(
            "solve: rhs has {} entries, matrix has {} rows",
            b.len(),
            a.rows
        )));
    }
    let aug = a.hstack(&Mat::from_col(b, a.field));
    let red = rref(&aug);
    // inconsistent iff a pivot falls in the rhs column
    if red.pivots.last().is_some_and(|&p| p == a.cols) {
        return Ok(None);
    }
    let mut x = vec![0u64; a.cols];
    for (ri, &pj) in red.pivots.iter().enumerate() {
        x[pj] = red.mat.at(ri, a.cols);
    }
    Ok(Some(x))
}

/// Solve `A X = B` column by column; `None` when any column is inconsistent.
pub fn solve_mat(a: &Mat, b: &Mat) -> Result<Option<Mat>> {
    if b.rows != a.rows {
        return Err(Error::DimensionMismatch(format!(
            "solve_mat: {}x{} vs {}x{}",
            a.rows, a.cols, b.rows, b.cols
        )));
    }
    let mut x = Mat::zero(a.cols, b.cols, a.field);
    for j in 0..b.cols {
        match solve(a, &b.col(j))? {
            Some(col) => {
                for (i, v) in col.into_iter().enumerate() {
                    x.set(i, j, v);
                }
            }
            None => return Ok(None),
        }
    }
    Ok(Some(x))
}

/// Basis of the column space: the pivot columns of `a`, in order.
pub fn image_basis(a: &Mat) -> Mat {
    let red = rref(a);
    a.select_cols(&red.pivots)
}

/// Inverse of a square matrix, or `None` when singular.
pub fn inverse(a: &Mat) -> Option<Mat> {
    if a.rows != a.cols {
        return None;
    }
    let aug = a.hstack(&Mat::identity(a.rows, a.field));
    let red = rref(&aug);
    // all pivots must land in the left block: a pivot in the identity part
    // means `a` itself is singular even though the augmented rank is full
    if red.rank != a.rows || red.pivots.iter().any(|&p| p >= a.cols) {
        return None;
    }
    let idx: Vec<usize> = (a.cols..2 * a.cols).collect();
    Some(red.mat.select_cols(&idx))
}

/// Extend the columns of `b` (assumed independent) to a basis of the full
/// space by greedily appending standard basis vectors. Returns the square
/// invertible matrix `[b | e]`.
pub fn extend_to_basis(b: &Mat) -> Mat {
    let n = b.rows;
    let mut cur = b.clone();
    let mut r = rank(&cur);
    assert_eq!(r, b.cols, "extend_to_basis: columns not independent");
    for i in 0..n {
        if cur.cols == n {
            break;
        }
        let mut e = Mat::zero(n, 1, b.field);
        e.set(i, 0, 1);
        let cand = cur.hstack(&e);
        if rank(&cand) > r {
            cur = cand;
            r += 1;
        }
    }
    cur
}

/// Express each column of `b` in terms of the columns of `basis`
/// (which must be independent and contain the columns of `b` in their span).
pub fn coords_in_basis(basis: &Mat, b: &Mat) -> Result<Mat> {
    solve_mat(basis, b)?.ok_or_else(|| {
        Error::Internal("coords_in_basis: vector outside span".into())
    })
}
