//! Word-packed dense linear algebra over GF(2).
//!
//! [`BitMatrix`] stores one row per run of 64-bit words and is the carrier
//! for every generator and parity-check matrix in this crate. Row reduction,
//! kernels, and the row-space lattice operations (sum, intersection,
//! containment) all live here; higher layers only ever manipulate canonical
//! row spaces.
//!
//! The canonical form of a row space is its reduced row echelon form with
//! zero rows dropped. Two subspaces are equal iff their canonical forms are
//! identical matrices.

use std::fmt;

use crate::error::Error;

const WORD_BITS: usize = 64;

/// Dense binary matrix with word-packed rows.
///
/// Invariants: `cols >= 1`, and all bits beyond `cols` in the last word of
/// each row are zero. `rows == 0` is a first-class value (the generator of
/// the zero code).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitMatrix {
    rows: usize,
    cols: usize,
    stride: usize,
    words: Vec<u64>,
}

impl BitMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        assert!(cols > 0, "BitMatrix requires at least one column");
        let stride = cols.div_ceil(WORD_BITS);
        Self {
            rows,
            cols,
            stride,
            words: vec![0; rows * stride],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    /// The standard basis vector `e_i` as a 1×n matrix.
    pub fn unit_vector(n: usize, i: usize) -> Self {
        assert!(i < n);
        let mut m = Self::zeros(1, n);
        m.set(0, i, true);
        m
    }

    /// The all-ones vector as a 1×n matrix.
    pub fn all_ones(n: usize) -> Self {
        let mut m = Self::zeros(1, n);
        for c in 0..n {
            m.set(0, c, true);
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> bool {
        assert!(r < self.rows && c < self.cols);
        self.words[r * self.stride + c / WORD_BITS] >> (c % WORD_BITS) & 1 == 1
    }

    pub fn set(&mut self, r: usize, c: usize, value: bool) {
        assert!(r < self.rows && c < self.cols);
        let w = &mut self.words[r * self.stride + c / WORD_BITS];
        let mask = 1u64 << (c % WORD_BITS);
        if value {
            *w |= mask;
        } else {
            *w &= !mask;
        }
    }

    pub fn row(&self, r: usize) -> &[u64] {
        assert!(r < self.rows);
        &self.words[r * self.stride..(r + 1) * self.stride]
    }

    pub fn row_weight(&self, r: usize) -> usize {
        word_weight(self.row(r))
    }

    /// Maximum Hamming weight over all rows; 0 for a rowless matrix.
    pub fn max_row_weight(&self) -> usize {
        (0..self.rows).map(|r| self.row_weight(r)).max().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        let (a, b) = (a.min(b), a.max(b));
        let (head, tail) = self.words.split_at_mut(b * self.stride);
        head[a * self.stride..(a + 1) * self.stride].swap_with_slice(&mut tail[..self.stride]);
    }

    /// XOR row `src` into row `dst`.
    pub fn xor_rows(&mut self, dst: usize, src: usize) {
        assert!(dst != src && dst < self.rows && src < self.rows);
        let (low, high) = (dst.min(src), dst.max(src));
        let (head, tail) = self.words.split_at_mut(high * self.stride);
        let low_row = &mut head[low * self.stride..(low + 1) * self.stride];
        let high_row = &mut tail[..self.stride];
        let (target, source) = if dst < src {
            (low_row, &*high_row)
        } else {
            (high_row, &*low_row)
        };
        for (d, s) in target.iter_mut().zip(source) {
            *d ^= s;
        }
    }

    /// XOR row `r` into an external word buffer of the same stride.
    pub fn xor_row_into(&self, r: usize, target: &mut [u64]) {
        for (t, s) in target.iter_mut().zip(self.row(r)) {
            *t ^= s;
        }
    }

    pub fn push_row_words(&mut self, row: &[u64]) {
        assert_eq!(row.len(), self.stride);
        self.words.extend_from_slice(row);
        self.rows += 1;
    }

    pub fn truncate_rows(&mut self, rows: usize) {
        assert!(rows <= self.rows);
        self.rows = rows;
        self.words.truncate(rows * self.stride);
    }

    /// Stack `other` below `self`. Both must have the same column count.
    pub fn vstack(&self, other: &BitMatrix) -> Result<BitMatrix, Error> {
        if self.cols != other.cols {
            return Err(Error::ColumnMismatch {
                left: self.cols,
                right: other.cols,
            });
        }
        let mut out = self.clone();
        out.words.extend_from_slice(&other.words);
        out.rows += other.rows;
        Ok(out)
    }

    /// New matrix keeping only the listed columns, in the given order.
    pub fn select_columns(&self, keep: &[usize]) -> BitMatrix {
        assert!(!keep.is_empty());
        let mut out = BitMatrix::zeros(self.rows, keep.len());
        for r in 0..self.rows {
            for (new_c, &old_c) in keep.iter().enumerate() {
                if self.get(r, old_c) {
                    out.set(r, new_c, true);
                }
            }
        }
        out
    }

    pub fn transposed(&self) -> BitMatrix {
        assert!(self.rows > 0, "cannot transpose a rowless matrix");
        let mut out = BitMatrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                if self.get(r, c) {
                    out.set(c, r, true);
                }
            }
        }
        out
    }

    /// Parity of the inner product between rows `a` of `self` and `b` of `other`.
    pub fn rows_dot(&self, a: usize, other: &BitMatrix, b: usize) -> bool {
        word_dot(self.row(a), other.row(b))
    }

    /// Column indices where some row is nonzero, ascending.
    pub fn column_support(&self) -> Vec<usize> {
        (0..self.cols)
            .filter(|&c| (0..self.rows).any(|r| self.get(r, c)))
            .collect()
    }

    /// Parse the shared matrix text format: one row per line, characters
    /// '0'/'1' only, all rows of equal length, trailing newline optional.
    pub fn parse_text(input: &str) -> Result<BitMatrix, Error> {
        let mut rows: Vec<Vec<u64>> = Vec::new();
        let mut cols = 0usize;
        for (i, line) in input.lines().enumerate() {
            let line = line.trim_end_matches('\r');
            if i == 0 {
                cols = line.len();
                if cols == 0 {
                    return Err(Error::Parse {
                        line: 1,
                        column: 1,
                        message: "empty first row".into(),
                    });
                }
            } else if line.len() != cols {
                return Err(Error::Parse {
                    line: i + 1,
                    column: line.len() + 1,
                    message: format!("row length {} differs from {}", line.len(), cols),
                });
            }
            let stride = cols.div_ceil(WORD_BITS);
            let mut row = vec![0u64; stride];
            for (c, ch) in line.chars().enumerate() {
                match ch {
                    '0' => {}
                    '1' => row[c / WORD_BITS] |= 1 << (c % WORD_BITS),
                    _ => {
                        return Err(Error::Parse {
                            line: i + 1,
                            column: c + 1,
                            message: format!("expected '0' or '1', found {ch:?}"),
                        })
                    }
                }
            }
            rows.push(row);
        }
        if rows.is_empty() {
            return Err(Error::Parse {
                line: 1,
                column: 1,
                message: "empty matrix".into(),
            });
        }
        let mut m = BitMatrix::zeros(0, cols);
        for row in &rows {
            m.push_row_words(row);
        }
        Ok(m)
    }

    /// Render in the shared matrix text format, one row per line with a
    /// trailing newline. A rowless matrix renders as the empty string.
    pub fn to_text(&self) -> String {
        let mut out = String::with_capacity(self.rows * (self.cols + 1));
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.push(if self.get(r, c) { '1' } else { '0' });
            }
            out.push('\n');
        }
        out
    }

    pub fn row_text(&self, r: usize) -> String {
        (0..self.cols)
            .map(|c| if self.get(r, c) { '1' } else { '0' })
            .collect()
    }
}

impl fmt::Display for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitMatrix({}x{})\n{}", self.rows, self.cols, self.to_text())
    }
}

/// Hamming weight of a word-packed row.
pub fn word_weight(words: &[u64]) -> usize {
    words.iter().map(|w| w.count_ones() as usize).sum()
}

/// Parity of the inner product of two word-packed rows.
pub fn word_dot(a: &[u64], b: &[u64]) -> bool {
    let mut acc = 0u32;
    for (x, y) in a.iter().zip(b) {
        acc ^= (x & y).count_ones();
    }
    acc & 1 == 1
}

/// Componentwise AND (the Schur product of two vectors).
pub fn word_and(a: &[u64], b: &[u64]) -> Vec<u64> {
    a.iter().zip(b).map(|(x, y)| x & y).collect()
}

pub fn word_get(words: &[u64], c: usize) -> bool {
    words[c / WORD_BITS] >> (c % WORD_BITS) & 1 == 1
}

/// Ascending indices of set bits within the first `cols` positions.
pub fn word_ones(words: &[u64], cols: usize) -> Vec<usize> {
    (0..cols).filter(|&c| word_get(words, c)).collect()
}

fn leading_one(words: &[u64]) -> Option<usize> {
    for (i, &w) in words.iter().enumerate() {
        if w != 0 {
            return Some(i * WORD_BITS + w.trailing_zeros() as usize);
        }
    }
    None
}

/// Reduced row echelon form with zero rows removed.
#[derive(Clone, Debug)]
pub struct RrefResult {
    pub matrix: BitMatrix,
    pub rank: usize,
    pub pivot_cols: Vec<usize>,
}

/// Gauss-Jordan elimination over GF(2). The result's row space equals the
/// input's, pivot columns are strictly increasing, and zero rows are dropped,
/// so the output is the canonical form of the row space.
pub fn rref(m: &BitMatrix) -> RrefResult {
    let mut a = m.clone();
    let rows = a.rows();
    let mut pivot_cols = Vec::new();
    let mut r = 0;
    for c in 0..a.cols() {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| a.get(i, c)) else {
            continue;
        };
        a.swap_rows(r, p);
        for i in 0..rows {
            if i != r && a.get(i, c) {
                a.xor_rows(i, r);
            }
        }
        pivot_cols.push(c);
        r += 1;
    }
    a.truncate_rows(r);
    RrefResult {
        matrix: a,
        rank: r,
        pivot_cols,
    }
}

pub fn rank(m: &BitMatrix) -> usize {
    rref(m).rank
}

/// RREF basis of the right kernel `{x : M xᵀ = 0}`.
///
/// For a generator matrix G this is a generator of the dual code; the rank
/// always satisfies `rank(kernel(M)) = cols - rank(M)`.
pub fn kernel(m: &BitMatrix) -> BitMatrix {
    let n = m.cols();
    let r = rref(m);
    let mut is_pivot = vec![false; n];
    for &p in &r.pivot_cols {
        is_pivot[p] = true;
    }
    let stride = n.div_ceil(WORD_BITS);
    let mut basis = BitMatrix::zeros(0, n);
    for f in (0..n).filter(|&c| !is_pivot[c]) {
        let mut v = vec![0u64; stride];
        v[f / WORD_BITS] |= 1 << (f % WORD_BITS);
        for (row, &p) in r.pivot_cols.iter().enumerate() {
            if r.matrix.get(row, f) {
                v[p / WORD_BITS] |= 1 << (p % WORD_BITS);
            }
        }
        basis.push_row_words(&v);
    }
    rref(&basis).matrix
}

/// Canonical basis of rowspace(A) + rowspace(B).
pub fn row_space_sum(a: &BitMatrix, b: &BitMatrix) -> Result<BitMatrix, Error> {
    Ok(rref(&a.vstack(b)?).matrix)
}

/// Canonical basis of rowspace(A) ∩ rowspace(B), computed as
/// (A^⊥ + B^⊥)^⊥ so that it reuses only `rref` and `kernel`.
pub fn row_space_intersect(a: &BitMatrix, b: &BitMatrix) -> Result<BitMatrix, Error> {
    let ka = kernel(a);
    let kb = kernel(b);
    Ok(kernel(&ka.vstack(&kb)?))
}

/// True iff every row of `a` lies in the row space of `b`, decided by
/// rank(B) = rank(B stacked with A).
pub fn is_row_space_subset(a: &BitMatrix, b: &BitMatrix) -> Result<bool, Error> {
    let stacked = b.vstack(a)?;
    Ok(rank(b) == rank(&stacked))
}

/// Membership of a single word-packed row in the row space of a matrix
/// already in RREF with the given pivot columns.
pub fn row_in_rref_span(row: &[u64], rref_matrix: &BitMatrix, pivot_cols: &[usize]) -> bool {
    let mut v = row.to_vec();
    for (i, &p) in pivot_cols.iter().enumerate() {
        if word_get(&v, p) {
            rref_matrix.xor_row_into(i, &mut v);
        }
    }
    v.iter().all(|&w| w == 0)
}

/// Pivot columns of a matrix that is already in RREF (the leading one of
/// each row).
pub fn rref_pivots(m: &BitMatrix) -> Vec<usize> {
    (0..m.rows())
        .map(|r| leading_one(m.row(r)).expect("RREF matrix has no zero rows"))
        .collect()
}
