//! Toolkit for constructing and verifying binary CSS-T quantum code pairs
//! from sparse quasi-cyclic codes.
//!
//! A CSS-T quantum code is determined by a pair of nested binary codes
//! (C₁, C₂) with C₂ contained in C₁ and in the dual of the Schur square C₁².
//! This crate provides:
//!
//! - [`bits`]: word-packed GF(2) linear algebra (row reduction, kernels,
//!   row-space sums, intersections, and containment),
//! - [`code`]: the [`LinearCode`] abstraction with duals, Schur products,
//!   hulls, puncturing, shortening, and minimum-weight computation,
//! - [`csst`]: CSS-T pair verification through three equivalent conditions,
//!   the maximal-partner construction, degenerate-coordinate puncturing,
//!   stabilizer block matrices, and a brute-force definitional oracle,
//! - [`qc`]: quasi-cyclic base matrices over Z_L ∪ {∞}, their expansion into
//!   circulant block matrices, and the symbolic base-matrix square,
//! - [`search`]: a reproducible seeded search for quantum LDPC/LDGM CSS-T
//!   candidates with JSON Lines output.

pub mod bits;
pub mod code;
pub mod csst;
pub mod error;
pub mod qc;
pub mod rng;
pub mod search;

pub use bits::{BitMatrix, RrefResult};
pub use code::{LinearCode, MinWeight, WeightProfile, DEFAULT_WEIGHT_BUDGET};
pub use csst::{
    classify_density, contains_self_dual, csst_definitional_check, is_csst_pair,
    max_csst_partner, puncture_pair, quantum_params, stabilizer_matrix, CssTReport, DensityClass,
    DensityLevel, DefinitionalLimits, OracleVerdict, QuantumParams,
};
pub use error::Error;
pub use qc::{
    base_square, block_rotation_closure, exp_shift, exp_star, expand_base, permutation_power,
    r_vector, star_compatibility_check, BaseMatrix, ShiftExponent,
};
pub use search::{
    run_search, sample_base_matrix, CandidateRecord, CodeParams, SearchConfig, SearchMode,
    SearchSummary, Verdict,
};
