//! Binary linear codes and the code-level operators built on them: dual,
//! Schur product and square, hull and relative hull, puncturing, shortening,
//! support, weight predicates, minimum weight, and quasi-cyclicity.
//!
//! A [`LinearCode`] is held in canonical form (RREF generator with zero rows
//! dropped), so two values represent the same code iff they compare equal.
//! The dual generator is computed lazily and cached with single-assignment
//! semantics, which keeps codes cheap to pass around and safe to share
//! across threads.

use std::collections::BTreeSet;
use std::sync::OnceLock;

use serde::Serialize;

use crate::bits::{
    is_row_space_subset, kernel, row_in_rref_span, row_space_intersect, row_space_sum, rref,
    rref_pivots, word_and, word_weight, BitMatrix,
};
use crate::error::Error;

/// Default enumeration budget for minimum-weight computations: codes with
/// more than this many codewords report `NotComputed` instead of a bound.
pub const DEFAULT_WEIGHT_BUDGET: u64 = 1 << 28;

/// Outcome of a minimum-weight computation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum MinWeight {
    /// Exact minimum nonzero codeword weight, found by full enumeration.
    Exact(usize),
    /// The code has more codewords than the enumeration budget allows;
    /// no bound is claimed.
    NotComputed,
}

impl MinWeight {
    pub fn exact(&self) -> Option<usize> {
        match self {
            MinWeight::Exact(w) => Some(*w),
            MinWeight::NotComputed => None,
        }
    }
}

/// Weight-structure summary of a code.
///
/// `min_weight` is `None` for the zero code, which has no nonzero codeword.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightProfile {
    pub min_weight: Option<MinWeight>,
    pub is_even: bool,
    pub is_self_orthogonal: bool,
}

/// A binary [n, k] linear code in canonical reduced form.
#[derive(Clone, Debug)]
pub struct LinearCode {
    gen: BitMatrix,
    pivots: Vec<usize>,
    dual: OnceLock<BitMatrix>,
}

impl PartialEq for LinearCode {
    fn eq(&self, other: &Self) -> bool {
        self.gen == other.gen
    }
}

impl Eq for LinearCode {}

impl std::hash::Hash for LinearCode {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.gen.hash(state);
    }
}

impl LinearCode {
    /// Canonicalize an arbitrary spanning set into a code. The all-zero
    /// matrix (or a rowless one) yields the zero code of the same length.
    pub fn from_generator(m: &BitMatrix) -> Self {
        let r = rref(m);
        Self {
            gen: r.matrix,
            pivots: r.pivot_cols,
            dual: OnceLock::new(),
        }
    }

    /// The code whose parity-check matrix is `m`, i.e. the kernel of `m`.
    pub fn from_parity_check(m: &BitMatrix) -> Self {
        let gen = kernel(m);
        let pivots = rref_pivots(&gen);
        Self {
            gen,
            pivots,
            dual: OnceLock::new(),
        }
    }

    pub fn zero(n: usize) -> Self {
        Self::from_generator(&BitMatrix::zeros(0, n))
    }

    pub fn full(n: usize) -> Self {
        Self::from_generator(&BitMatrix::identity(n))
    }

    pub fn repetition(n: usize) -> Self {
        Self::from_generator(&BitMatrix::all_ones(n))
    }

    pub fn n(&self) -> usize {
        self.gen.cols()
    }

    pub fn k(&self) -> usize {
        self.gen.rows()
    }

    pub fn is_zero_code(&self) -> bool {
        self.k() == 0
    }

    /// Canonical RREF generator matrix, k rows.
    pub fn generator(&self) -> &BitMatrix {
        &self.gen
    }

    /// Canonical generator of the dual code (a parity-check matrix of this
    /// code), computed on first use.
    pub fn dual_generator(&self) -> &BitMatrix {
        self.dual.get_or_init(|| kernel(&self.gen))
    }

    pub fn dual(&self) -> LinearCode {
        let gen = self.dual_generator().clone();
        let pivots = rref_pivots(&gen);
        let code = LinearCode {
            gen,
            pivots,
            dual: OnceLock::new(),
        };
        // dual(dual(C)) = C, so seed the cache with our own generator.
        let _ = code.dual.set(self.gen.clone());
        code
    }

    /// Membership test for a word-packed row of matching stride.
    pub fn contains_word(&self, word: &[u64]) -> bool {
        row_in_rref_span(word, &self.gen, &self.pivots)
    }

    pub fn is_subcode_of(&self, other: &LinearCode) -> Result<bool, Error> {
        self.check_len(other)?;
        is_row_space_subset(&self.gen, &other.gen)
    }

    fn check_len(&self, other: &LinearCode) -> Result<(), Error> {
        if self.n() != other.n() {
            return Err(Error::LengthMismatch {
                left: self.n(),
                right: other.n(),
            });
        }
        Ok(())
    }

    /// Schur (componentwise) product code C ⋆ D, spanned by the pairwise
    /// products of generator rows; bilinearity makes generator products
    /// sufficient.
    pub fn schur_product(&self, other: &LinearCode) -> Result<LinearCode, Error> {
        self.check_len(other)?;
        let mut rows = BitMatrix::zeros(0, self.n());
        for i in 0..self.k() {
            for j in 0..other.k() {
                rows.push_row_words(&word_and(self.gen.row(i), other.gen.row(j)));
            }
        }
        Ok(LinearCode::from_generator(&rows))
    }

    /// The square C² = C ⋆ C. Only products with i ≤ j are formed; symmetry
    /// of the Schur product makes the remaining half redundant.
    pub fn schur_square(&self) -> LinearCode {
        let mut rows = BitMatrix::zeros(0, self.n());
        for i in 0..self.k() {
            for j in i..self.k() {
                rows.push_row_words(&word_and(self.gen.row(i), self.gen.row(j)));
            }
        }
        LinearCode::from_generator(&rows)
    }

    /// hull(C) = C ∩ C^⊥.
    pub fn hull(&self) -> LinearCode {
        let m = row_space_intersect(&self.gen, self.dual_generator())
            .expect("generator and dual generator have equal length");
        LinearCode::from_generator(&m)
    }

    /// Relative hull of `self` with respect to `other`: C ∩ D^⊥.
    pub fn relative_hull(&self, other: &LinearCode) -> Result<LinearCode, Error> {
        self.check_len(other)?;
        let m = row_space_intersect(&self.gen, other.dual_generator())?;
        Ok(LinearCode::from_generator(&m))
    }

    /// Intersection of two codes of the same length.
    pub fn intersect(&self, other: &LinearCode) -> Result<LinearCode, Error> {
        self.check_len(other)?;
        let m = row_space_intersect(&self.gen, &other.gen)?;
        Ok(LinearCode::from_generator(&m))
    }

    /// Sum of two codes of the same length.
    pub fn sum(&self, other: &LinearCode) -> Result<LinearCode, Error> {
        self.check_len(other)?;
        let m = row_space_sum(&self.gen, &other.gen)?;
        Ok(LinearCode::from_generator(&m))
    }

    fn coordinate_set(&self, coords: &[usize]) -> Result<BTreeSet<usize>, Error> {
        let mut set = BTreeSet::new();
        for &c in coords {
            if c >= self.n() {
                return Err(Error::IndexOutOfRange {
                    index: c,
                    len: self.n(),
                });
            }
            set.insert(c);
        }
        Ok(set)
    }

    /// Puncture: delete the given coordinates from every codeword. The
    /// dimension may drop when a punctured coordinate is not degenerated;
    /// that is allowed and simply reflected in the result.
    pub fn puncture(&self, coords: &[usize]) -> Result<LinearCode, Error> {
        let set = self.coordinate_set(coords)?;
        if set.len() == self.n() {
            return Err(Error::AllColumnsRemoved);
        }
        if set.is_empty() {
            return Ok(self.clone());
        }
        let keep: Vec<usize> = (0..self.n()).filter(|c| !set.contains(c)).collect();
        if self.k() == 0 {
            return Ok(LinearCode::zero(keep.len()));
        }
        Ok(LinearCode::from_generator(&self.gen.select_columns(&keep)))
    }

    /// Shorten: keep the codewords vanishing on the given coordinates, then
    /// delete those coordinates. Equals dual(puncture(dual(C), coords)).
    pub fn shorten(&self, coords: &[usize]) -> Result<LinearCode, Error> {
        let set = self.coordinate_set(coords)?;
        if set.len() == self.n() {
            return Err(Error::AllColumnsRemoved);
        }
        if set.is_empty() {
            return Ok(self.clone());
        }
        let keep: Vec<usize> = (0..self.n()).filter(|c| !set.contains(c)).collect();
        if self.k() == 0 {
            return Ok(LinearCode::zero(keep.len()));
        }
        // Messages u with u·G zero on the shortened coordinates form the
        // left kernel of the selected columns.
        let sel: Vec<usize> = set.iter().copied().collect();
        let restricted = self.gen.select_columns(&sel);
        let messages = kernel(&restricted.transposed());
        let stride = self.gen.row(0).len();
        let mut rows = BitMatrix::zeros(0, self.n());
        for u in 0..messages.rows() {
            let mut word = vec![0u64; stride];
            for bit in 0..self.k() {
                if messages.get(u, bit) {
                    self.gen.xor_row_into(bit, &mut word);
                }
            }
            rows.push_row_words(&word);
        }
        if rows.rows() == 0 {
            return Ok(LinearCode::zero(keep.len()));
        }
        Ok(LinearCode::from_generator(&rows.select_columns(&keep)))
    }

    /// Coordinates where some codeword is nonzero, ascending.
    pub fn support(&self) -> Vec<usize> {
        self.gen.column_support()
    }

    /// Coordinates on which the code is degenerated (every codeword zero).
    pub fn zero_coordinates(&self) -> Vec<usize> {
        let supp: BTreeSet<usize> = self.support().into_iter().collect();
        (0..self.n()).filter(|c| !supp.contains(c)).collect()
    }

    pub fn is_degenerated_on(&self, coord: usize) -> bool {
        coord < self.n() && (0..self.k()).all(|r| !self.gen.get(r, coord))
    }

    /// Exact minimum nonzero codeword weight by Gray-code enumeration over
    /// messages, provided 2^k fits the budget.
    pub fn min_weight(&self, budget: u64) -> Result<MinWeight, Error> {
        let k = self.k();
        if k == 0 {
            return Err(Error::ZeroCode);
        }
        if k >= 64 || (1u64 << k) > budget {
            return Ok(MinWeight::NotComputed);
        }
        let total = 1u64 << k;
        let stride = self.gen.row(0).len();
        let mut current = vec![0u64; stride];
        let mut best = usize::MAX;
        for m in 1..total {
            // Successive Gray codes differ in exactly the lowest set bit of m.
            let flip = m.trailing_zeros() as usize;
            self.gen.xor_row_into(flip, &mut current);
            let w = word_weight(&current);
            if w < best {
                best = w;
                if best == 1 {
                    break;
                }
            }
        }
        Ok(MinWeight::Exact(best))
    }

    /// Even-weight and self-orthogonality flags plus the minimum weight
    /// within the given budget. Both flags are decided on generator rows;
    /// weight parity and pairwise orthogonality are linear conditions.
    pub fn weight_profile(&self, budget: u64) -> WeightProfile {
        let min_weight = if self.k() == 0 {
            None
        } else {
            Some(self.min_weight(budget).expect("nonzero code"))
        };
        WeightProfile {
            min_weight,
            is_even: self.is_even_weight(),
            is_self_orthogonal: self.is_self_orthogonal(),
        }
    }

    pub fn is_even_weight(&self) -> bool {
        (0..self.k()).all(|r| self.gen.row_weight(r).is_multiple_of(2))
    }

    pub fn is_self_orthogonal(&self) -> bool {
        (0..self.k()).all(|i| (i..self.k()).all(|j| !self.gen.rows_dot(i, &self.gen, j)))
    }

    /// True iff the cyclic right-shift by `l` of every generator row stays
    /// in the code; by linearity this decides closure of the whole code.
    pub fn is_quasi_cyclic(&self, l: usize) -> bool {
        assert!(l >= 1 && l <= self.n(), "shift must satisfy 1 <= l <= n");
        let n = self.n();
        let stride = n.div_ceil(64);
        for r in 0..self.k() {
            let mut shifted = vec![0u64; stride];
            for c in 0..n {
                if self.gen.get(r, c) {
                    let dst = (c + l) % n;
                    shifted[dst / 64] |= 1 << (dst % 64);
                }
            }
            if !self.contains_word(&shifted) {
                return false;
            }
        }
        true
    }

    /// Iterate all 2^k codewords as word-packed rows (zero word first, then
    /// Gray-code order). Panics if k ≥ 64.
    pub fn codewords(&self) -> Codewords<'_> {
        assert!(self.k() < 64, "codeword enumeration requires k < 64");
        let stride = self.n().div_ceil(64);
        Codewords {
            code: self,
            current: vec![0u64; stride],
            next: 0,
            total: 1u64 << self.k(),
        }
    }
}

pub struct Codewords<'a> {
    code: &'a LinearCode,
    current: Vec<u64>,
    next: u64,
    total: u64,
}

impl Iterator for Codewords<'_> {
    type Item = Vec<u64>;

    fn next(&mut self) -> Option<Vec<u64>> {
        if self.next == self.total {
            return None;
        }
        if self.next > 0 {
            let flip = self.next.trailing_zeros() as usize;
            self.code.gen.xor_row_into(flip, &mut self.current);
        }
        self.next += 1;
        Some(self.current.clone())
    }
}
