use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};

/// Integer matrix with arbitrary-precision entries, stored sparsely.
///
/// Entries are kept in a row-major ordered map and zeros are never stored, so
/// two matrices compare equal exactly when their dimensions and nonzero
/// entries agree.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct SparseIntMatrix {
    rows: usize,
    cols: usize,
    entries: BTreeMap<(usize, usize), BigInt>,
}

impl SparseIntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        SparseIntMatrix {
            rows,
            cols,
            entries: BTreeMap::new(),
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.entries.insert((i, i), BigInt::one());
        }
        m
    }

    /// Builds a matrix from small integer rows. All rows must have length `cols`.
    pub fn from_rows(rows: usize, cols: usize, data: &[&[i64]]) -> Self {
        assert_eq!(data.len(), rows, "row count mismatch");
        let mut m = Self::zeros(rows, cols);
        for (i, row) in data.iter().enumerate() {
            assert_eq!(row.len(), cols, "row {i} has wrong length");
            for (j, &v) in row.iter().enumerate() {
                m.set(i, j, BigInt::from(v));
            }
        }
        m
    }

    /// Builds a matrix whose columns are the given vectors.
    pub fn from_columns(rows: usize, columns: &[Vec<BigInt>]) -> Self {
        let mut m = Self::zeros(rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows, "column {j} has wrong length");
            for (i, v) in col.iter().enumerate() {
                if !v.is_zero() {
                    m.entries.insert((i, j), v.clone());
                }
            }
        }
        m
    }

    pub fn from_dense(rows: usize, cols: usize, data: Vec<Vec<BigInt>>) -> Self {
        let mut m = Self::zeros(rows, cols);
        for (i, row) in data.into_iter().enumerate() {
            for (j, v) in row.into_iter().enumerate() {
                if !v.is_zero() {
                    m.entries.insert((i, j), v);
                }
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

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, i: usize, j: usize) -> BigInt {
        self.entries.get(&(i, j)).cloned().unwrap_or_default()
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        assert!(i < self.rows && j < self.cols, "index ({i}, {j}) out of range");
        if v.is_zero() {
            self.entries.remove(&(i, j));
        } else {
            self.entries.insert((i, j), v);
        }
    }

    pub fn add_to(&mut self, i: usize, j: usize, v: &BigInt) {
        assert!(i < self.rows && j < self.cols, "index ({i}, {j}) out of range");
        if v.is_zero() {
            return;
        }
        let slot = self.entries.entry((i, j)).or_default();
        *slot += v;
        if slot.is_zero() {
            self.entries.remove(&(i, j));
        }
    }

    /// Nonzero entries in row-major order.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &BigInt)> + '_ {
        self.entries.iter().map(|(&(i, j), v)| (i, j, v))
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for (&(i, j), v) in &self.entries {
            t.entries.insert((j, i), v.clone());
        }
        t
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zeros(self.rows, self.cols);
        }
        let mut out = self.clone();
        for v in out.entries.values_mut() {
            *v *= c;
        }
        out
    }

    pub fn column(&self, j: usize) -> Vec<BigInt> {
        let mut col = vec![BigInt::zero(); self.rows];
        for (&(i, jj), v) in &self.entries {
            if jj == j {
                col[i] = v.clone();
            }
        }
        col
    }

    pub fn columns(&self) -> Vec<Vec<BigInt>> {
        let mut cols = vec![vec![BigInt::zero(); self.rows]; self.cols];
        for (&(i, j), v) in &self.entries {
            cols[j][i] = v.clone();
        }
        cols
    }

    pub fn to_dense(&self) -> Vec<Vec<BigInt>> {
        let mut d = vec![vec![BigInt::zero(); self.cols]; self.rows];
        for (&(i, j), v) in &self.entries {
            d[i][j] = v.clone();
        }
        d
    }

    pub fn mul_vec(&self, x: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(x.len(), self.cols, "vector length mismatch");
        let mut y = vec![BigInt::zero(); self.rows];
        for (&(i, j), v) in &self.entries {
            if !x[j].is_zero() {
                y[i] += v * &x[j];
            }
        }
        y
    }

    /// Horizontal concatenation; all blocks must share the row count `rows`.
    pub fn hcat(rows: usize, blocks: &[&SparseIntMatrix]) -> Self {
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut out = Self::zeros(rows, cols);
        let mut offset = 0;
        for b in blocks {
            assert_eq!(b.rows, rows, "hcat row mismatch");
            for (&(i, j), v) in &b.entries {
                out.entries.insert((i, j + offset), v.clone());
            }
            offset += b.cols;
        }
        out
    }

    /// Vertical concatenation; all blocks must share the column count `cols`.
    pub fn vcat(cols: usize, blocks: &[&SparseIntMatrix]) -> Self {
        let rows = blocks.iter().map(|b| b.rows).sum();
        let mut out = Self::zeros(rows, cols);
        let mut offset = 0;
        for b in blocks {
            assert_eq!(b.cols, cols, "vcat column mismatch");
            for (&(i, j), v) in &b.entries {
                out.entries.insert((i + offset, j), v.clone());
            }
            offset += b.rows;
        }
        out
    }

    pub fn select_rows(&self, keep: &[usize]) -> Self {
        let mut pos = vec![usize::MAX; self.rows];
        for (new, &old) in keep.iter().enumerate() {
            pos[old] = new;
        }
        let mut out = Self::zeros(keep.len(), self.cols);
        for (&(i, j), v) in &self.entries {
            if pos[i] != usize::MAX {
                out.entries.insert((pos[i], j), v.clone());
            }
        }
        out
    }

    pub fn select_cols(&self, keep: &[usize]) -> Self {
        let mut pos = vec![usize::MAX; self.cols];
        for (new, &old) in keep.iter().enumerate() {
            pos[old] = new;
        }
        let mut out = Self::zeros(self.rows, keep.len());
        for (&(i, j), v) in &self.entries {
            if pos[j] != usize::MAX {
                out.entries.insert((i, pos[j]), v.clone());
            }
        }
        out
    }

    /// Embeds the rows of `self` at positions `row_positions` of a taller zero matrix.
    pub fn embed_rows(&self, total_rows: usize, row_positions: &[usize]) -> Self {
        assert_eq!(row_positions.len(), self.rows);
        let mut out = Self::zeros(total_rows, self.cols);
        for (&(i, j), v) in &self.entries {
            out.entries.insert((row_positions[i], j), v.clone());
        }
        out
    }

    /// True when every entry is 0 or ±1 and each row and column has exactly one nonzero.
    pub fn is_signed_permutation(&self) -> bool {
        if self.rows != self.cols || self.entries.len() != self.rows {
            return false;
        }
        let mut row_seen = vec![false; self.rows];
        let mut col_seen = vec![false; self.cols];
        for (&(i, j), v) in &self.entries {
            if !(v.is_one() || (-v).is_one()) || row_seen[i] || col_seen[j] {
                return false;
            }
            row_seen[i] = true;
            col_seen[j] = true;
        }
        true
    }

    fn row_index(&self) -> Vec<Vec<(usize, &BigInt)>> {
        let mut idx = vec![Vec::new(); self.rows];
        for (&(i, j), v) in &self.entries {
            idx[i].push((j, v));
        }
        idx
    }
}

impl<'a> Mul<&'a SparseIntMatrix> for &'a SparseIntMatrix {
    type Output = SparseIntMatrix;

    fn mul(self, rhs: &'a SparseIntMatrix) -> SparseIntMatrix {
        assert_eq!(
            self.cols, rhs.rows,
            "dimension mismatch: {}x{} * {}x{}",
            self.rows, self.cols, rhs.rows, rhs.cols
        );
        let rhs_rows = rhs.row_index();
        let mut acc: BTreeMap<(usize, usize), BigInt> = BTreeMap::new();
        for (&(i, l), a) in &self.entries {
            for &(j, b) in &rhs_rows[l] {
                *acc.entry((i, j)).or_default() += a * b;
            }
        }
        acc.retain(|_, v| !v.is_zero());
        SparseIntMatrix {
            rows: self.rows,
            cols: rhs.cols,
            entries: acc,
        }
    }
}

impl<'a> Add<&'a SparseIntMatrix> for &'a SparseIntMatrix {
    type Output = SparseIntMatrix;

    fn add(self, rhs: &'a SparseIntMatrix) -> SparseIntMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "dimension mismatch");
        let mut out = self.clone();
        for (&(i, j), v) in &rhs.entries {
            out.add_to(i, j, v);
        }
        out
    }
}

impl<'a> Sub<&'a SparseIntMatrix> for &'a SparseIntMatrix {
    type Output = SparseIntMatrix;

    fn sub(self, rhs: &'a SparseIntMatrix) -> SparseIntMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "dimension mismatch");
        let mut out = self.clone();
        for (&(i, j), v) in &rhs.entries {
            out.add_to(i, j, &-v);
        }
        out
    }
}

impl Neg for &SparseIntMatrix {
    type Output = SparseIntMatrix;

    fn neg(self) -> SparseIntMatrix {
        self.scale(&BigInt::from(-1))
    }
}

impl fmt::Debug for SparseIntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SparseIntMatrix({}x{}) ", self.rows, self.cols)?;
        f.debug_list()
            .entries(self.entries.iter().map(|(&(i, j), v)| (i, j, v.to_string())))
            .finish()
    }
}

impl fmt::Display for SparseIntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.rows == 0 || self.cols == 0 {
            return write!(f, "[{}x{} empty]", self.rows, self.cols);
        }
        for row in self.to_dense() {
            let cells: Vec<String> = row.iter().map(|v| v.to_string()).collect();
            writeln!(f, "[{}]", cells.join(" "))?;
        }
        Ok(())
    }
}
