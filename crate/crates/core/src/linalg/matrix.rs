//! Dense matrices over the prime field F_l.
//!
//! Entries are stored row-major as residues in `[0, l)`. Every binary
//! operation checks that both operands carry the same modulus.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::LinalgError;

/// A prime modulus. Construction checks primality, so every `Prime` in
/// circulation is a valid field characteristic.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "u32", into = "u32")]
pub struct Prime(u32);

impl Prime {
    pub fn new(l: u32) -> Result<Self, LinalgError> {
        if is_prime(l) {
            Ok(Prime(l))
        } else {
            Err(LinalgError::NotPrime(l))
        }
    }

    #[inline]
    pub fn get(self) -> u32 {
        self.0
    }

    #[inline]
    pub fn reduce(self, x: i64) -> u32 {
        x.rem_euclid(self.0 as i64) as u32
    }

    #[inline]
    pub fn add(self, a: u32, b: u32) -> u32 {
        ((a as u64 + b as u64) % self.0 as u64) as u32
    }

    #[inline]
    pub fn sub(self, a: u32, b: u32) -> u32 {
        ((a as u64 + self.0 as u64 - b as u64) % self.0 as u64) as u32
    }

    #[inline]
    pub fn mul(self, a: u32, b: u32) -> u32 {
        ((a as u64 * b as u64) % self.0 as u64) as u32
    }

    #[inline]
    pub fn neg(self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.0 - a
        }
    }

    pub fn pow(self, mut base: u32, mut exp: u64) -> u32 {
        let mut acc = 1 % self.0;
        base %= self.0;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(self, a: u32) -> Option<u32> {
        let a = a % self.0;
        if a == 0 {
            None
        } else {
            Some(self.pow(a, self.0 as u64 - 2))
        }
    }

    /// Multiplicative order of a nonzero residue.
    pub fn order(self, a: u32) -> Option<u32> {
        let a = a % self.0;
        if a == 0 {
            return None;
        }
        let mut x = a;
        let mut k = 1;
        while x != 1 {
            x = self.mul(x, a);
            k += 1;
        }
        Some(k)
    }
}

impl fmt::Display for Prime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl TryFrom<u32> for Prime {
    type Error = LinalgError;
    fn try_from(l: u32) -> Result<Self, Self::Error> {
        Prime::new(l)
    }
}

impl From<Prime> for u32 {
    fn from(p: Prime) -> u32 {
        p.0
    }
}

pub fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u32;
    while (d as u64) * (d as u64) <= n as u64 {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Result of row reduction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rref {
    pub matrix: MatrixFl,
    pub rank: usize,
    pub pivots: Vec<usize>,
}

#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MatrixFl {
    l: Prime,
    rows: usize,
    cols: usize,
    entries: Vec<u32>,
}

impl MatrixFl {
    pub fn zeros(l: Prime, rows: usize, cols: usize) -> Self {
        MatrixFl {
            l,
            rows,
            cols,
            entries: vec![0; rows * cols],
        }
    }

    pub fn identity(l: Prime, n: usize) -> Self {
        let mut m = Self::zeros(l, n, n);
        for i in 0..n {
            m.entries[i * n + i] = 1;
        }
        m
    }

    /// Builds a matrix from integer rows, reducing every entry mod l.
    pub fn from_rows<R: AsRef<[i64]>>(l: Prime, rows: &[R]) -> Result<Self, LinalgError> {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        let mut entries = Vec::with_capacity(rows.len() * cols);
        for row in rows {
            let row = row.as_ref();
            if row.len() != cols {
                return Err(LinalgError::Dimension(format!(
                    "ragged rows: expected {cols} columns, found {}",
                    row.len()
                )));
            }
            entries.extend(row.iter().map(|&x| l.reduce(x)));
        }
        Ok(MatrixFl {
            l,
            rows: rows.len(),
            cols,
            entries,
        })
    }

    /// Builds a matrix whose columns are the given vectors.
    pub fn from_columns(l: Prime, rows: usize, columns: &[Vec<u32>]) -> Result<Self, LinalgError> {
        let mut m = Self::zeros(l, rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            if col.len() != rows {
                return Err(LinalgError::Dimension(format!(
                    "column {j} has length {}, expected {rows}",
                    col.len()
                )));
            }
            for (i, &x) in col.iter().enumerate() {
                m.entries[i * m.cols + j] = x % l.get();
            }
        }
        Ok(m)
    }

    /// Builds a matrix from already-reduced entries.
    pub fn from_entries(l: Prime, rows: usize, cols: usize, entries: Vec<u32>) -> Result<Self, LinalgError> {
        if entries.len() != rows * cols {
            return Err(LinalgError::Dimension(format!(
                "{} entries for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        let entries = entries.into_iter().map(|x| x % l.get()).collect();
        Ok(MatrixFl { l, rows, cols, entries })
    }

    #[inline]
    pub fn modulus(&self) -> Prime {
        self.l
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.entries[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: u32) {
        self.entries[i * self.cols + j] = v % self.l.get();
    }

    pub fn entries(&self) -> &[u32] {
        &self.entries
    }

    pub fn row(&self, i: usize) -> &[u32] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<u32> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn columns(&self) -> Vec<Vec<u32>> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|&x| x == 0)
    }

    fn check_same_field(&self, other: &MatrixFl) -> Result<(), LinalgError> {
        if self.l != other.l {
            Err(LinalgError::ModulusMismatch {
                left: self.l.get(),
                right: other.l.get(),
            })
        } else {
            Ok(())
        }
    }

    pub fn transpose(&self) -> MatrixFl {
        let mut t = MatrixFl::zeros(self.l, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.entries[j * self.rows + i] = self.get(i, j);
            }
        }
        t
    }

    pub fn mul(&self, other: &MatrixFl) -> Result<MatrixFl, LinalgError> {
        self.check_same_field(other)?;
        if self.cols != other.rows {
            return Err(LinalgError::Dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let p = self.l.get() as u64;
        let mut out = MatrixFl::zeros(self.l, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k) as u64;
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let idx = i * other.cols + j;
                    out.entries[idx] = ((out.entries[idx] as u64 + a * other.get(k, j) as u64) % p) as u32;
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[u32]) -> Result<Vec<u32>, LinalgError> {
        if v.len() != self.cols {
            return Err(LinalgError::Dimension(format!(
                "vector of length {} against {} columns",
                v.len(),
                self.cols
            )));
        }
        let p = self.l.get() as u64;
        Ok((0..self.rows)
            .map(|i| {
                let s = self
                    .row(i)
                    .iter()
                    .zip(v)
                    .fold(0u64, |acc, (&a, &b)| (acc + a as u64 * b as u64) % p);
                s as u32
            })
            .collect())
    }

    pub fn add(&self, other: &MatrixFl) -> Result<MatrixFl, LinalgError> {
        self.zip_with(other, |l, a, b| l.add(a, b))
    }

    pub fn sub(&self, other: &MatrixFl) -> Result<MatrixFl, LinalgError> {
        self.zip_with(other, |l, a, b| l.sub(a, b))
    }

    fn zip_with(&self, other: &MatrixFl, f: impl Fn(Prime, u32, u32) -> u32) -> Result<MatrixFl, LinalgError> {
        self.check_same_field(other)?;
        if self.rows != other.rows || self.cols != other.cols {
            return Err(LinalgError::Dimension(format!(
                "shape mismatch {}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(&a, &b)| f(self.l, a, b))
            .collect();
        Ok(MatrixFl {
            l: self.l,
            rows: self.rows,
            cols: self.cols,
            entries,
        })
    }

    pub fn scale(&self, c: u32) -> MatrixFl {
        let mut out = self.clone();
        for x in &mut out.entries {
            *x = self.l.mul(*x, c);
        }
        out
    }

    /// Stacks `other` below `self`.
    pub fn vstack(&self, other: &MatrixFl) -> Result<MatrixFl, LinalgError> {
        self.check_same_field(other)?;
        if self.cols != other.cols {
            return Err(LinalgError::Dimension(format!(
                "vstack of {} and {} columns",
                self.cols, other.cols
            )));
        }
        let mut entries = self.entries.clone();
        entries.extend_from_slice(&other.entries);
        Ok(MatrixFl {
            l: self.l,
            rows: self.rows + other.rows,
            cols: self.cols,
            entries,
        })
    }

    /// Block-diagonal matrix `diag(self, other)`.
    pub fn block_diag(&self, other: &MatrixFl) -> Result<MatrixFl, LinalgError> {
        self.check_same_field(other)?;
        let mut out = MatrixFl::zeros(self.l, self.rows + other.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(i, j, self.get(i, j));
            }
        }
        for i in 0..other.rows {
            for j in 0..other.cols {
                out.set(self.rows + i, self.cols + j, other.get(i, j));
            }
        }
        Ok(out)
    }

    /// Reduced row echelon form by Gauss-Jordan elimination.
    pub fn rref(&self) -> Rref {
        let l = self.l;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| m.get(i, c) != 0) else {
                continue;
            };
            m.swap_rows(p, r);
            let inv = l.inv(m.get(r, c)).expect("pivot is nonzero");
            for j in c..m.cols {
                let v = l.mul(m.get(r, j), inv);
                m.entries[r * m.cols + j] = v;
            }
            for i in 0..m.rows {
                if i == r {
                    continue;
                }
                let f = m.get(i, c);
                if f == 0 {
                    continue;
                }
                for j in c..m.cols {
                    let v = l.sub(m.get(i, j), l.mul(f, m.get(r, j)));
                    m.entries[i * m.cols + j] = v;
                }
            }
            pivots.push(c);
            r += 1;
        }
        Rref {
            matrix: m,
            rank: pivots.len(),
            pivots,
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.entries.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank
    }

    /// Basis of the null space `{v : A v = 0}`, one vector per free column.
    pub fn kernel_basis(&self) -> Vec<Vec<u32>> {
        let l = self.l;
        let Rref { matrix, pivots, .. } = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        (0..self.cols)
            .filter(|&f| !is_pivot[f])
            .map(|free| {
                let mut v = vec![0u32; self.cols];
                v[free] = 1;
                for (row, &pc) in pivots.iter().enumerate() {
                    v[pc] = l.neg(matrix.get(row, free));
                }
                v
            })
            .collect()
    }

    /// Basis of the column space, taken from the pivot columns of `A`.
    pub fn image_basis(&self) -> Vec<Vec<u32>> {
        self.rref().pivots.iter().map(|&c| self.column(c)).collect()
    }

    /// Some `x` with `A x = b`, or `None` when the system is inconsistent.
    pub fn solve(&self, b: &[u32]) -> Result<Option<Vec<u32>>, LinalgError> {
        if b.len() != self.rows {
            return Err(LinalgError::Dimension(format!(
                "right-hand side of length {} for {} rows",
                b.len(),
                self.rows
            )));
        }
        let mut aug = MatrixFl::zeros(self.l, self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug.entries[i * (self.cols + 1) + j] = self.get(i, j);
            }
            aug.entries[i * (self.cols + 1) + self.cols] = b[i] % self.l.get();
        }
        let Rref { matrix, pivots, .. } = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return Ok(None);
        }
        let mut x = vec![0u32; self.cols];
        for (row, &pc) in pivots.iter().enumerate() {
            x[pc] = matrix.get(row, self.cols);
        }
        Ok(Some(x))
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }

    pub fn inverse(&self) -> Option<MatrixFl> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let mut aug = MatrixFl::zeros(self.l, n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.entries[i * 2 * n + j] = self.get(i, j);
            }
            aug.entries[i * 2 * n + n + i] = 1;
        }
        let r = aug.rref();
        if r.pivots.iter().take(n).copied().ne(0..n) {
            return None;
        }
        let mut inv = MatrixFl::zeros(self.l, n, n);
        for i in 0..n {
            for j in 0..n {
                inv.entries[i * n + j] = r.matrix.get(i, n + j);
            }
        }
        Some(inv)
    }

    pub fn pow(&self, mut exp: u64) -> Result<MatrixFl, LinalgError> {
        if !self.is_square() {
            return Err(LinalgError::Dimension("power of a non-square matrix".into()));
        }
        let mut base = self.clone();
        let mut acc = MatrixFl::identity(self.l, self.rows);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.mul(&base)?;
            }
            base = base.mul(&base)?;
            exp >>= 1;
        }
        Ok(acc)
    }
}

impl fmt::Debug for MatrixFl {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MatrixFl(l={}, {}x{}) [", self.l, self.rows, self.cols)?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            for (j, x) in self.row(i).iter().enumerate() {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{x}")?;
            }
        }
        write!(f, "]")
    }
}

/// Row-reduced basis of the span of `vectors`, all of length `dim`.
pub fn span_basis(l: Prime, dim: usize, vectors: &[Vec<u32>]) -> Vec<Vec<u32>> {
    if vectors.is_empty() {
        return Vec::new();
    }
    let rows: Vec<Vec<i64>> = vectors
        .iter()
        .map(|v| v.iter().map(|&x| x as i64).collect())
        .collect();
    let m = MatrixFl::from_rows(l, &rows).expect("uniform vector lengths");
    debug_assert_eq!(m.cols(), dim);
    let r = m.rref();
    (0..r.rank).map(|i| r.matrix.row(i).to_vec()).collect()
}
