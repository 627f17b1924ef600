//! CSS-T pair verification and construction.
//!
//! A pair (C₁, C₂) of binary codes defines a CSS-T quantum code exactly when
//! C₂ ⊆ C₁ ∩ (C₁²)^⊥, equivalently C₁^⊥ + C₁² ⊆ C₂^⊥, equivalently
//! C₂ ⊆ hull(C₁) ∩ hull(C₁²). [`is_csst_pair`] evaluates all three forms and
//! asserts their agreement at runtime: the equivalence is a theorem, so a
//! disagreement can only mean an implementation bug.
//!
//! [`csst_definitional_check`] is an independent brute-force oracle for the
//! original definition (every codeword's shortened dual must contain a
//! self-dual code); it cross-validates the algebraic checks on small
//! instances by bounded exhaustion.

use std::collections::HashSet;

use serde::Serialize;

use crate::bits::{word_ones, word_weight, BitMatrix};
use crate::code::{LinearCode, MinWeight};
use crate::error::Error;

/// Parameters [[n, k₁−k₂, ≥ d_lower]] of a verified CSS-T pair.
///
/// `d_lower` is wt(C₂^⊥) when the enumeration budget allowed computing it
/// exactly (`d_exact` true); otherwise it is `None` and no bound is claimed.
/// The true quantum distance can exceed the bound only for degenerate codes,
/// which this crate does not attempt to detect.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct QuantumParams {
    pub n: usize,
    pub k: usize,
    pub d_lower: Option<usize>,
    pub d_exact: bool,
}

/// Verdict and witnesses for a candidate pair (C₁, C₂).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CssTReport {
    pub is_pair: bool,
    /// C₂ ⊆ C₁ ∩ (C₁²)^⊥
    pub cond2: bool,
    /// C₁^⊥ + C₁² ⊆ C₂^⊥
    pub cond3: bool,
    /// C₂ ⊆ hull(C₁) ∩ hull(C₁²)
    pub hull_cond: bool,
    /// C₂ ⊆ C₁ alone
    pub subset_ok: bool,
    pub c2_self_orthogonal: bool,
    pub params: Option<QuantumParams>,
    /// A generator row of C₂ violating containment, as a '0'/'1' string.
    pub witness: Option<String>,
}

/// Density classes interpreting the asymptotic LDPC/MDPC families at finite
/// length. The thresholds are fixed constants recorded in every report:
/// low means max row weight below [`LOW_DENSITY_ROW_WEIGHT`], moderate means
/// below ⌈√(n·log₂ n)⌉, anything else is high.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum DensityLevel {
    Low,
    Moderate,
    High,
}

pub const LOW_DENSITY_ROW_WEIGHT: usize = 10;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct DensityClass {
    pub max_row_weight: usize,
    pub class: DensityLevel,
}

/// Classify the density of a matrix by its maximum row weight.
pub fn classify_density(m: &BitMatrix) -> DensityClass {
    let w = m.max_row_weight();
    let n = m.cols() as f64;
    let moderate_threshold = (n * n.log2()).sqrt().ceil() as usize;
    let class = if w < LOW_DENSITY_ROW_WEIGHT {
        DensityLevel::Low
    } else if w < moderate_threshold {
        DensityLevel::Moderate
    } else {
        DensityLevel::High
    };
    DensityClass {
        max_row_weight: w,
        class,
    }
}

/// Verify the CSS-T conditions for (C₁, C₂), computing quantum parameters
/// within `distance_budget` codeword enumerations when the pair verifies.
pub fn is_csst_pair(
    c1: &LinearCode,
    c2: &LinearCode,
    distance_budget: u64,
) -> Result<CssTReport, Error> {
    if c1.n() != c2.n() {
        return Err(Error::LengthMismatch {
            left: c1.n(),
            right: c2.n(),
        });
    }
    let square = c1.schur_square();

    // Condition (2): C₂ ⊆ C₁ and C₂ ⊆ (C₁²)^⊥.
    let subset_ok = c2.is_subcode_of(c1)?;
    let in_square_dual = c2.is_subcode_of(&square.dual())?;
    let cond2 = subset_ok && in_square_dual;

    // Condition (3): C₁^⊥ + C₁² ⊆ C₂^⊥.
    let sum = c1.dual().sum(&square)?;
    let cond3 = sum.is_subcode_of(&c2.dual())?;

    // Hull form: C₂ ⊆ hull(C₁) ∩ hull(C₁²).
    let hulls = c1.hull().intersect(&square.hull())?;
    let hull_cond = c2.is_subcode_of(&hulls)?;

    assert!(
        cond2 == cond3 && cond3 == hull_cond,
        "CSS-T condition equivalence violated (cond2={cond2}, cond3={cond3}, hull={hull_cond}); \
         this is a bug in the row-space arithmetic"
    );
    let is_pair = cond2;

    let witness = if is_pair {
        None
    } else {
        let square_dual = square.dual();
        (0..c2.k()).find_map(|r| {
            let row = c2.generator().row(r);
            if !c1.contains_word(row) || !square_dual.contains_word(row) {
                Some(c2.generator().row_text(r))
            } else {
                None
            }
        })
    };

    let params = if is_pair {
        Some(params_unchecked(c1, c2, distance_budget))
    } else {
        None
    };

    Ok(CssTReport {
        is_pair,
        cond2,
        cond3,
        hull_cond,
        subset_ok,
        c2_self_orthogonal: c2.is_self_orthogonal(),
        params,
        witness,
    })
}

/// The largest valid CSS-T partner for C₁: C₁ ∩ (C₁²)^⊥. Every valid C₂ is a
/// subcode of this, and (C₁, result) always verifies.
pub fn max_csst_partner(c1: &LinearCode) -> LinearCode {
    c1.relative_hull(&c1.schur_square())
        .expect("a code and its square have equal length")
}

fn params_unchecked(c1: &LinearCode, c2: &LinearCode, budget: u64) -> QuantumParams {
    let dual2 = c2.dual();
    let (d_lower, d_exact) = if dual2.k() == 0 {
        // C₂ is the full space; its dual has no nonzero codeword.
        (None, false)
    } else {
        match dual2.min_weight(budget).expect("nonzero dual code") {
            MinWeight::Exact(w) => (Some(w), true),
            MinWeight::NotComputed => (None, false),
        }
    };
    QuantumParams {
        n: c1.n(),
        k: c1.k() - c2.k(),
        d_lower,
        d_exact,
    }
}

/// Quantum parameters [[n, k₁−k₂, ≥ wt(C₂^⊥)]] of a CSS-T pair.
pub fn quantum_params(
    c1: &LinearCode,
    c2: &LinearCode,
    budget: u64,
) -> Result<QuantumParams, Error> {
    let report = is_csst_pair(c1, c2, budget)?;
    if !report.is_pair {
        return Err(Error::NotACssTPair);
    }
    Ok(report.params.expect("verified pair has parameters"))
}

/// Puncture a verified CSS-T pair on coordinates where C₂ is degenerated.
/// The punctured pair is again CSS-T; the degeneracy precondition is checked
/// strictly because the theorem guarantees nothing without it.
pub fn puncture_pair(
    c1: &LinearCode,
    c2: &LinearCode,
    coords: &[usize],
) -> Result<(LinearCode, LinearCode), Error> {
    let report = is_csst_pair(c1, c2, 2)?;
    if !report.is_pair {
        return Err(Error::NotACssTPair);
    }
    for &c in coords {
        if c >= c2.n() {
            return Err(Error::IndexOutOfRange {
                index: c,
                len: c2.n(),
            });
        }
        if !c2.is_degenerated_on(c) {
            return Err(Error::NotDegenerate(c));
        }
    }
    Ok((c1.puncture(coords)?, c2.puncture(coords)?))
}

/// The stabilizer block matrix [[0, H₁], [G₂, 0]] of shape (n−k₁+k₂) × 2n,
/// with H₁ the canonical parity check of C₁ and G₂ the canonical generator
/// of C₂. Requires C₂ ⊆ C₁.
pub fn stabilizer_matrix(c1: &LinearCode, c2: &LinearCode) -> Result<BitMatrix, Error> {
    if c1.n() != c2.n() {
        return Err(Error::LengthMismatch {
            left: c1.n(),
            right: c2.n(),
        });
    }
    if !c2.is_subcode_of(c1)? {
        return Err(Error::NotSubcode);
    }
    let n = c1.n();
    let h1 = c1.dual_generator();
    let g2 = c2.generator();
    let mut m = BitMatrix::zeros(h1.rows() + g2.rows(), 2 * n);
    for r in 0..h1.rows() {
        for c in 0..n {
            if h1.get(r, c) {
                m.set(r, n + c, true);
            }
        }
    }
    for r in 0..g2.rows() {
        for c in 0..n {
            if g2.get(r, c) {
                m.set(h1.rows() + r, c, true);
            }
        }
    }
    Ok(m)
}

/// Outcome of a bounded brute-force check.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OracleVerdict {
    True,
    False,
    Inconclusive,
}

/// Size limits for the definitional oracle.
#[derive(Clone, Copy, Debug)]
pub struct DefinitionalLimits {
    /// Bound on 2^{k₂}: the number of C₂ codewords enumerated.
    pub max_c2_words: u64,
    /// Bound on dim(D/D^⊥) in the self-dual subcode search.
    pub max_quotient_dim: usize,
}

impl Default for DefinitionalLimits {
    fn default() -> Self {
        Self {
            max_c2_words: 1 << 12,
            max_quotient_dim: 12,
        }
    }
}

/// Decide whether `code` contains a self-dual subcode, by exhaustive search.
///
/// Any self-dual S ⊆ D satisfies D^⊥ ⊆ S ⊆ D, so candidates correspond to
/// half-dimensional totally isotropic subspaces of the quotient D/D^⊥ under
/// the induced inner product. The search enumerates those subspaces (every
/// subspace once, via its RREF basis built bottom row first) and verifies
/// any hit directly against the dual. Quotients larger than `max_quotient`
/// report `Inconclusive` rather than guessing.
pub fn contains_self_dual(code: &LinearCode, max_quotient: usize) -> OracleVerdict {
    let dual = code.dual();
    if !dual
        .is_subcode_of(code)
        .expect("dual has the same length")
    {
        return OracleVerdict::False;
    }
    let q = code.k() - dual.k();
    if q % 2 == 1 {
        return OracleVerdict::False;
    }
    if q == 0 {
        return OracleVerdict::True; // D itself is self-dual
    }
    if q > max_quotient {
        return OracleVerdict::Inconclusive;
    }

    // Quotient representatives: generator rows of D independent of D^⊥.
    let mut reps: Vec<Vec<u64>> = Vec::with_capacity(q);
    let mut span = dual.generator().clone();
    for r in 0..code.k() {
        let row = code.generator().row(r);
        let candidate = LinearCode::from_generator(&span);
        if !candidate.contains_word(row) {
            reps.push(row.to_vec());
            span.push_row_words(row);
        }
    }
    assert_eq!(reps.len(), q);

    // Gram matrix of the induced form on the quotient, as bitmask rows.
    let gram: Vec<u16> = (0..q)
        .map(|i| {
            (0..q).fold(0u16, |acc, j| {
                if crate::bits::word_dot(&reps[i], &reps[j]) {
                    acc | 1 << j
                } else {
                    acc
                }
            })
        })
        .collect();

    let found = find_isotropic_half(&gram, q);
    let Some(rows) = found else {
        return OracleVerdict::False;
    };

    // Reconstruct S and verify self-duality directly.
    let stride = code.generator().row(0).len();
    let mut s_gen = dual.generator().clone();
    for mask in rows {
        let mut word = vec![0u64; stride];
        for (i, rep) in reps.iter().enumerate() {
            if mask >> i & 1 == 1 {
                for (w, x) in word.iter_mut().zip(rep) {
                    *w ^= x;
                }
            }
        }
        s_gen.push_row_words(&word);
    }
    let s = LinearCode::from_generator(&s_gen);
    assert_eq!(s, s.dual(), "isotropic search returned a non-self-dual code");
    OracleVerdict::True
}

/// Find a totally isotropic subspace of dimension q/2 in (F₂^q, gram), or
/// None if none exists. Subspaces are enumerated through their unique RREF
/// bases, adding rows in order of decreasing pivot so earlier rows never
/// need re-reduction.
fn find_isotropic_half(gram: &[u16], q: usize) -> Option<Vec<u16>> {
    let target = q / 2;
    let form = |x: u16, y: u16| -> bool {
        let mut acc = 0u32;
        let mut bits = x;
        while bits != 0 {
            let i = bits.trailing_zeros() as usize;
            acc ^= (gram[i] & y).count_ones();
            bits &= bits - 1;
        }
        acc & 1 == 1
    };

    fn recurse(
        form: &impl Fn(u16, u16) -> bool,
        q: usize,
        rows: &mut Vec<u16>,
        pivots: u16,
        min_pivot: usize,
        remaining: usize,
    ) -> bool {
        if remaining == 0 {
            return true;
        }
        // The new pivot must leave room for the remaining-1 pivots below it.
        for p in ((remaining - 1)..min_pivot).rev() {
            let above: u16 = if p + 1 >= 16 { 0 } else { !0u16 << (p + 1) };
            let free = above & !pivots & ((1u32 << q) - 1) as u16;
            let mut s = free;
            loop {
                let v = (1 << p) | s;
                if !form(v, v) && rows.iter().all(|&r| !form(v, r)) {
                    rows.push(v);
                    if recurse(form, q, rows, pivots | 1 << p, p, remaining - 1) {
                        return true;
                    }
                    rows.pop();
                }
                if s == 0 {
                    break;
                }
                s = (s - 1) & free;
            }
        }
        false
    }

    let mut rows = Vec::with_capacity(target);
    if recurse(&form, q, &mut rows, 0, q, target) {
        Some(rows)
    } else {
        None
    }
}

/// Brute-force check of the original CSS-T definition: C₂ ⊆ C₁, C₂ of even
/// weight, and for every c ∈ C₂ the shortening of C₁^⊥ to supp(c) contains a
/// self-dual code. The zero codeword has empty support and is treated as
/// vacuously satisfied. Agrees with [`is_csst_pair`] wherever conclusive.
pub fn csst_definitional_check(
    c1: &LinearCode,
    c2: &LinearCode,
    limits: &DefinitionalLimits,
) -> Result<OracleVerdict, Error> {
    if c1.n() != c2.n() {
        return Err(Error::LengthMismatch {
            left: c1.n(),
            right: c2.n(),
        });
    }
    if !c2.is_subcode_of(c1)? {
        return Ok(OracleVerdict::False);
    }
    if (0..c2.k()).any(|r| c2.generator().row_weight(r) % 2 == 1) {
        return Ok(OracleVerdict::False);
    }
    if c2.k() >= 63 || (1u64 << c2.k()) > limits.max_c2_words {
        return Ok(OracleVerdict::Inconclusive);
    }

    let n = c1.n();
    let c1_dual = c1.dual();
    let mut inconclusive = false;
    let mut seen: HashSet<Vec<usize>> = HashSet::new();
    for word in c2.codewords() {
        if word_weight(&word) == 0 {
            continue;
        }
        let supp = word_ones(&word, n);
        if !seen.insert(supp.clone()) {
            continue;
        }
        let complement: Vec<usize> = {
            let in_supp: Vec<bool> = {
                let mut v = vec![false; n];
                for &i in &supp {
                    v[i] = true;
                }
                v
            };
            (0..n).filter(|&i| !in_supp[i]).collect()
        };
        let shortened = c1_dual.shorten(&complement)?;
        match contains_self_dual(&shortened, limits.max_quotient_dim) {
            OracleVerdict::False => return Ok(OracleVerdict::False),
            OracleVerdict::Inconclusive => inconclusive = true,
            OracleVerdict::True => {}
        }
    }
    Ok(if inconclusive {
        OracleVerdict::Inconclusive
    } else {
        OracleVerdict::True
    })
}
