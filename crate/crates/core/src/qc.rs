//! Quasi-cyclic base-matrix machinery: circulant shift powers, base-matrix
//! expansion, the R(·) embedding of exponent vectors, the exponent
//! operation ∗, and the symbolic base-matrix square.
//!
//! A base matrix stores one shift exponent per circulant block. Finite
//! exponents expand to powers of the L×L cyclic permutation P; the symbol ∞
//! expands to the zero block. The exponent algebra mirrors the Schur product
//! on expanded rows: R(a) ⋆ R(b) = R(a ∗ b).

use std::collections::BTreeSet;
use std::fmt;

use crate::bits::BitMatrix;
use crate::error::Error;

/// Largest accepted circulant block size. This is a desk-scale tool; the
/// bound prevents accidental huge allocations from malformed inputs.
pub const MAX_BLOCK_SIZE: usize = 1 << 16;

/// An element of Z_L ∪ {∞}. Addition fixes ∞: x + ∞ = ∞ for any x.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ShiftExponent {
    Finite(usize),
    Infinity,
}

use ShiftExponent::{Finite, Infinity};

impl ShiftExponent {
    pub fn is_finite(&self) -> bool {
        matches!(self, Finite(_))
    }

    /// Add `j` modulo `modulus`, fixing ∞.
    pub fn shifted(&self, j: usize, modulus: usize) -> ShiftExponent {
        match self {
            Finite(a) => Finite((a + j) % modulus),
            Infinity => Infinity,
        }
    }

    /// The exponent operation ∗: a if a = b, otherwise ∞.
    pub fn star(&self, other: &ShiftExponent) -> ShiftExponent {
        if self == other {
            *self
        } else {
            Infinity
        }
    }

    /// Parse a single entry: a decimal integer, or "-1"/"inf" for ∞.
    pub fn parse(token: &str) -> Result<ShiftExponent, String> {
        match token {
            "-1" | "inf" => Ok(Infinity),
            _ => token
                .parse::<usize>()
                .map(Finite)
                .map_err(|_| format!("expected a shift exponent, found {token:?}")),
        }
    }
}

impl fmt::Display for ShiftExponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Finite(a) => write!(f, "{a}"),
            Infinity => write!(f, "-1"),
        }
    }
}

/// The m×n array of shift exponents describing a block matrix of circulant
/// powers with block size `block_size`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BaseMatrix {
    block_size: usize,
    rows: usize,
    cols: usize,
    entries: Vec<ShiftExponent>,
}

impl BaseMatrix {
    pub fn new(
        block_size: usize,
        rows: usize,
        cols: usize,
        entries: Vec<ShiftExponent>,
    ) -> Result<BaseMatrix, Error> {
        if !(2..=MAX_BLOCK_SIZE).contains(&block_size) {
            return Err(Error::Config(format!(
                "block size {block_size} out of range [2, {MAX_BLOCK_SIZE}]"
            )));
        }
        if cols == 0 || entries.len() != rows * cols {
            return Err(Error::Config(format!(
                "expected {rows}x{cols} = {} entries, found {}",
                rows * cols,
                entries.len()
            )));
        }
        for e in &entries {
            if let Finite(a) = e {
                if *a >= block_size {
                    return Err(Error::Config(format!(
                        "exponent {a} not below block size {block_size}"
                    )));
                }
            }
        }
        Ok(BaseMatrix {
            block_size,
            rows,
            cols,
            entries,
        })
    }

    /// Parse the base matrix text format: rows separated by ';', entries by
    /// ',', finite entries as decimal integers in [0, L), ∞ as "-1" or "inf".
    pub fn parse(block_size: usize, input: &str) -> Result<BaseMatrix, Error> {
        let input = input.trim();
        let mut entries = Vec::new();
        let mut cols = 0usize;
        let mut rows = 0usize;
        let mut offset = 1usize;
        for (i, row) in input.split(';').enumerate() {
            let mut row_len = 0usize;
            for token in row.split(',') {
                let trimmed = token.trim();
                let e = ShiftExponent::parse(trimmed).map_err(|message| Error::Parse {
                    line: 1,
                    column: offset,
                    message,
                })?;
                if let Finite(a) = e {
                    if a >= block_size {
                        return Err(Error::Parse {
                            line: 1,
                            column: offset,
                            message: format!("exponent {a} not below block size {block_size}"),
                        });
                    }
                }
                entries.push(e);
                row_len += 1;
                offset += token.len() + 1;
            }
            if i == 0 {
                cols = row_len;
            } else if row_len != cols {
                return Err(Error::Parse {
                    line: 1,
                    column: offset,
                    message: format!("row {} has {} entries, expected {}", i + 1, row_len, cols),
                });
            }
            rows += 1;
        }
        BaseMatrix::new(block_size, rows, cols, entries)
    }

    pub fn block_size(&self) -> usize {
        self.block_size
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> ShiftExponent {
        assert!(i < self.rows && j < self.cols);
        self.entries[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[ShiftExponent] {
        assert!(i < self.rows);
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }
}

impl fmt::Display for BaseMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ";")?;
            }
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
        }
        Ok(())
    }
}

/// The L×L matrix P^a: for finite a, row i is the standard basis vector at
/// column (a + i) mod L; P^∞ is the zero matrix.
pub fn permutation_power(block_size: usize, exponent: ShiftExponent) -> BitMatrix {
    assert!(block_size >= 2);
    let mut m = BitMatrix::zeros(block_size, block_size);
    if let Finite(a) = exponent {
        for i in 0..block_size {
            m.set(i, (a + i) % block_size, true);
        }
    }
    m
}

/// Expand a base matrix into its (mL)×(nL) binary block matrix: block (i, j)
/// is P^{a_ij}. Each expanded row has weight equal to the number of finite
/// entries in its block row. No rank promise is made; spans can collapse.
pub fn expand_base(base: &BaseMatrix) -> BitMatrix {
    let l = base.block_size;
    let mut h = BitMatrix::zeros(base.rows * l, base.cols * l);
    for i in 0..base.rows {
        for j in 0..base.cols {
            if let Finite(a) = base.get(i, j) {
                for r in 0..l {
                    h.set(i * l + r, j * l + (a + r) % l, true);
                }
            }
        }
    }
    h
}

/// The embedding R(a) ∈ F₂^{nL}: one 1 per finite entry, at position
/// jL + a_j. Returned as a 1×nL matrix.
pub fn r_vector(block_size: usize, exponents: &[ShiftExponent]) -> BitMatrix {
    assert!(!exponents.is_empty());
    let mut v = BitMatrix::zeros(1, exponents.len() * block_size);
    for (j, e) in exponents.iter().enumerate() {
        if let Finite(a) = e {
            assert!(*a < block_size);
            v.set(0, j * block_size + a, true);
        }
    }
    v
}

/// Componentwise shift a + j𝟏 over Z_L ∪ {∞}.
pub fn exp_shift(exponents: &[ShiftExponent], j: usize, modulus: usize) -> Vec<ShiftExponent> {
    exponents.iter().map(|e| e.shifted(j, modulus)).collect()
}

/// Componentwise a ∗ b.
pub fn exp_star(a: &[ShiftExponent], b: &[ShiftExponent]) -> Vec<ShiftExponent> {
    assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x.star(y)).collect()
}

/// Check R(a) ⋆ R(b) = R(a ∗ b) at the bit level. Always true; exposed as an
/// operation so fuzz harnesses can drive it directly.
pub fn star_compatibility_check(
    block_size: usize,
    a: &[ShiftExponent],
    b: &[ShiftExponent],
) -> bool {
    assert_eq!(a.len(), b.len());
    let ra = r_vector(block_size, a);
    let rb = r_vector(block_size, b);
    let product = crate::bits::word_and(ra.row(0), rb.row(0));
    let rab = r_vector(block_size, &exp_star(a, b));
    product == rab.row(0)
}

/// Append every block rotation of every row. The expansion of the closure
/// is closed under the cyclic shift by L of the whole codeword (shifting by
/// L rotates block contents one block to the right), which the raw
/// expansion in general is not.
pub fn block_rotation_closure(base: &BaseMatrix) -> BaseMatrix {
    let n = base.cols;
    let mut entries = Vec::with_capacity(base.rows * n * n);
    for i in 0..base.rows {
        let row = base.row(i);
        for s in 0..n {
            for j in 0..n {
                entries.push(row[(j + n - s) % n]);
            }
        }
    }
    BaseMatrix {
        block_size: base.block_size,
        rows: base.rows * n,
        cols: n,
        entries,
    }
}

/// Shift a row so its first finite entry becomes 0; the canonical
/// representative of the row's shift orbit. All-∞ rows are fixed points.
fn canonical_shift_rep(row: &[ShiftExponent], modulus: usize) -> Vec<ShiftExponent> {
    match row.iter().find_map(|e| match e {
        Finite(a) => Some(*a),
        Infinity => None,
    }) {
        Some(a) => exp_shift(row, (modulus - a) % modulus, modulus),
        None => row.to_vec(),
    }
}

/// Symbolic square of a base matrix: the rows A_i ∗ (A_j + h𝟏) over all
/// block-row pairs and h ∈ Z_L, deduplicated by shift-canonical
/// representative, with all-∞ rows dropped. The expansion of the result
/// spans the Schur square of the expansion's row space.
pub fn base_square(base: &BaseMatrix) -> BaseMatrix {
    let l = base.block_size;
    let mut rows: BTreeSet<Vec<ShiftExponent>> = BTreeSet::new();
    for i in 0..base.rows {
        for j in 0..base.rows {
            for h in 0..l {
                let row = exp_star(base.row(i), &exp_shift(base.row(j), h, l));
                if row.iter().any(ShiftExponent::is_finite) {
                    rows.insert(canonical_shift_rep(&row, l));
                }
            }
        }
    }
    let mut entries = Vec::with_capacity(rows.len() * base.cols);
    let count = rows.len();
    for row in rows {
        entries.extend(row);
    }
    BaseMatrix {
        block_size: l,
        rows: count,
        cols: base.cols,
        entries,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bits::is_row_space_subset;
    use crate::code::LinearCode;
    use crate::rng::SplitMix64;
    use crate::testdata;

    #[test]
    fn permutation_power_examples() {
        assert_eq!(permutation_power(3, Finite(0)), BitMatrix::identity(3));
        assert!(permutation_power(3, Infinity).is_zero());
        assert_eq!(permutation_power(2, Finite(1)).to_text(), "01\n10\n");
    }

    #[test]
    fn permutation_powers_compose_additively() {
        for l in 2..6 {
            for a in 0..l {
                for b in 0..l {
                    let pa = permutation_power(l, Finite(a));
                    let pb = permutation_power(l, Finite(b));
                    let pab = permutation_power(l, Finite((a + b) % l));
                    // (P^a · P^b)[i][c] = Σ_t P^a[i][t] P^b[t][c]
                    let mut prod = BitMatrix::zeros(l, l);
                    for i in 0..l {
                        for c in 0..l {
                            let mut acc = false;
                            for t in 0..l {
                                acc ^= pa.get(i, t) && pb.get(t, c);
                            }
                            prod.set(i, c, acc);
                        }
                    }
                    assert_eq!(prod, pab);
                }
            }
        }
    }

    #[test]
    fn expand_single_block_row() {
        let b = BaseMatrix::parse(2, "0,1").unwrap();
        assert_eq!(expand_base(&b).to_text(), "1001\n0110\n");
    }

    #[test]
    fn expand_example1_base_matches_printed_generator() {
        let b = BaseMatrix::parse(4, testdata::EX1_BASE).unwrap();
        let h = expand_base(&b);
        assert_eq!((h.rows(), h.cols()), (8, 16));
        let c = LinearCode::from_generator(&h);
        assert_eq!((c.n(), c.k()), (16, 6));
        assert_eq!(
            c,
            LinearCode::from_generator(&BitMatrix::parse_text(testdata::EX1_G1).unwrap())
        );
    }

    #[test]
    fn infinity_column_expands_to_zero_blocks() {
        let b = BaseMatrix::parse(3, "0,-1;1,inf").unwrap();
        let h = expand_base(&b);
        for r in 0..h.rows() {
            for c in 3..6 {
                assert!(!h.get(r, c));
            }
        }
    }

    #[test]
    fn expanded_row_weight_counts_finite_entries() {
        let mut rng = SplitMix64::new(0xE44A);
        for _ in 0..50 {
            let l = 2 + (rng.next_u64() as usize) % 7;
            let m = 1 + (rng.next_u64() as usize) % 3;
            let n = 1 + (rng.next_u64() as usize) % 6;
            let b = random_base(&mut rng, l, m, n);
            let h = expand_base(&b);
            for i in 0..m {
                let finite = b.row(i).iter().filter(|e| e.is_finite()).count();
                for r in 0..l {
                    assert_eq!(h.row_weight(i * l + r), finite);
                }
            }
            // Column weight equals the finite count of the block column.
            for j in 0..n {
                let finite = (0..m).filter(|&i| b.get(i, j).is_finite()).count();
                for t in 0..l {
                    let c = j * l + t;
                    let weight = (0..h.rows()).filter(|&r| h.get(r, c)).count();
                    assert_eq!(weight, finite);
                }
            }
        }
    }

    #[test]
    fn r_vector_examples() {
        assert_eq!(r_vector(2, &[Finite(0), Infinity]).row_text(0), "1000");
        assert_eq!(r_vector(2, &[Infinity, Infinity]).row_text(0), "0000");
        let row = r_vector(4, &[Finite(3), Finite(1), Finite(2), Finite(1)]);
        assert_eq!(row.row_text(0), "0001010000100100");
        // The embedded base row lies in the expansion's row space.
        let b = BaseMatrix::parse(4, testdata::EX1_BASE).unwrap();
        assert!(is_row_space_subset(&row, &expand_base(&b)).unwrap());
    }

    #[test]
    fn star_examples() {
        assert_eq!(Finite(3).star(&Finite(3)), Finite(3));
        assert_eq!(Finite(3).star(&Finite(1)), Infinity);
        assert_eq!(Infinity.star(&Infinity), Infinity);
    }

    #[test]
    fn shift_fixes_infinity() {
        assert_eq!(
            exp_shift(&[Finite(2), Infinity], 3, 4),
            vec![Finite(1), Infinity]
        );
    }

    #[test]
    fn star_compatibility_small_cases() {
        let a = [Finite(0), Finite(1)];
        let b = [Finite(1), Finite(1)];
        assert!(star_compatibility_check(2, &a, &a));
        assert!(star_compatibility_check(2, &a, &b));
    }

    #[test]
    fn all_shifts_of_base_rows_lie_in_the_expansion() {
        // Every base row generates its full shift orbit inside the row space.
        let mut rng = SplitMix64::new(0x1E99);
        for _ in 0..50 {
            let l = 2 + (rng.next_u64() as usize) % 7;
            let m = 1 + (rng.next_u64() as usize) % 3;
            let n = 1 + (rng.next_u64() as usize) % 6;
            let b = random_base(&mut rng, l, m, n);
            let h = expand_base(&b);
            for i in 0..m {
                for j in 0..l {
                    let shifted = r_vector(l, &exp_shift(b.row(i), j, l));
                    assert!(is_row_space_subset(&shifted, &h).unwrap());
                }
            }
        }
    }

    #[test]
    fn base_square_of_single_zero_entry() {
        let b = BaseMatrix::new(2, 1, 1, vec![Finite(0)]).unwrap();
        let sq = base_square(&b);
        assert_eq!(sq.rows(), 1);
        assert_eq!(sq.row(0), &[Finite(0)]);
        let c = LinearCode::from_generator(&expand_base(&b));
        assert_eq!(LinearCode::from_generator(&expand_base(&sq)), c.schur_square());
    }

    #[test]
    fn base_square_drops_all_infinity_rows() {
        let b = BaseMatrix::parse(3, "-1,-1;0,1").unwrap();
        let sq = base_square(&b);
        // The ∞ row contributes nothing; surviving rows are canonical.
        assert!(sq.rows() >= 1);
        for i in 0..sq.rows() {
            assert!(sq.row(i).iter().any(ShiftExponent::is_finite));
        }
    }

    #[test]
    fn base_square_spans_the_schur_square_of_the_expansion() {
        let b = BaseMatrix::parse(4, testdata::EX1_BASE).unwrap();
        let code = LinearCode::from_generator(&expand_base(&b));
        let squared = LinearCode::from_generator(&expand_base(&base_square(&b)));
        assert_eq!(squared, code.schur_square());
    }

    #[test]
    fn raw_expansion_is_not_shift_closed_but_its_rotation_closure_is() {
        // The block layout of the expansion is only closed under the
        // simultaneous intra-block rotation; closure under the length-L
        // cyclic shift of the whole word needs the block rotations too.
        let b = BaseMatrix::parse(4, testdata::EX1_BASE).unwrap();
        let c = LinearCode::from_generator(&expand_base(&b));
        assert!(!c.is_quasi_cyclic(4));
        assert!(c.is_quasi_cyclic(16)); // shift by n is the identity
        let closed = LinearCode::from_generator(&expand_base(&block_rotation_closure(&b)));
        assert!(closed.is_quasi_cyclic(4));
        assert!(closed.schur_square().is_quasi_cyclic(4));
    }

    #[test]
    fn base_matrix_parse_and_display_round_trip() {
        let b = BaseMatrix::parse(4, "3,1,2,1;3,-1,2,inf").unwrap();
        assert_eq!(b.to_string(), "3,1,2,1;3,-1,2,-1");
        assert_eq!(BaseMatrix::parse(4, &b.to_string()).unwrap(), b);
    }

    #[test]
    fn base_matrix_parse_errors() {
        assert!(matches!(
            BaseMatrix::parse(4, "3,x,2,1"),
            Err(Error::Parse { column: 3, .. })
        ));
        assert!(matches!(
            BaseMatrix::parse(4, "3,1;2"),
            Err(Error::Parse { .. })
        ));
        assert!(matches!(
            BaseMatrix::parse(4, "5,1"),
            Err(Error::Parse { .. })
        ));
        assert!(BaseMatrix::parse(1, "0").is_err());
    }

    pub(crate) fn random_base(rng: &mut SplitMix64, l: usize, m: usize, n: usize) -> BaseMatrix {
        let entries = (0..m * n)
            .map(|_| {
                if rng.next_f64() < 0.3 {
                    Infinity
                } else {
                    Finite(rng.next_below(l as u64) as usize)
                }
            })
            .collect();
        BaseMatrix::new(l, m, n, entries).unwrap()
    }
}
