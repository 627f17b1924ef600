//! Python bindings for the csstk toolkit.
//!
//! Exposes the `LinearCode` type plus the CSS-T operations (verification,
//! maximal partner, puncturing, stabilizer emission), the quasi-cyclic base
//! matrix constructions, and the seeded search. Matrices cross the boundary
//! in the same text formats the CLI uses: '0'/'1' rows for binary matrices,
//! ';'/',' strings with -1 for ∞ for base matrices. Search results come back
//! as the same JSON Lines strings the CLI writes.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;

use csstk::{
    BaseMatrix, BitMatrix, DefinitionalLimits, MinWeight, OracleVerdict, SearchConfig,
    SearchMode, DEFAULT_WEIGHT_BUDGET,
};

fn value_err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn parse_base(block_size: usize, base: &str) -> PyResult<BaseMatrix> {
    BaseMatrix::parse(block_size, base).map_err(value_err)
}

/// A binary [n, k] linear code held in canonical reduced form.
#[pyclass(name = "LinearCode", frozen, eq)]
#[derive(PartialEq)]
struct PyLinearCode {
    inner: csstk::LinearCode,
}

impl From<csstk::LinearCode> for PyLinearCode {
    fn from(inner: csstk::LinearCode) -> Self {
        Self { inner }
    }
}

#[pymethods]
impl PyLinearCode {
    /// Build a code from generator rows in matrix text format.
    #[new]
    fn new(text: &str) -> PyResult<Self> {
        let m = BitMatrix::parse_text(text).map_err(value_err)?;
        Ok(csstk::LinearCode::from_generator(&m).into())
    }

    /// Build the code whose parity-check matrix is the given text.
    #[staticmethod]
    fn from_parity_text(text: &str) -> PyResult<Self> {
        let m = BitMatrix::parse_text(text).map_err(value_err)?;
        Ok(csstk::LinearCode::from_parity_check(&m).into())
    }

    /// The zero code of length n.
    #[staticmethod]
    fn zero(n: usize) -> Self {
        csstk::LinearCode::zero(n).into()
    }

    /// Expand a quasi-cyclic base matrix and span its rows (set
    /// as_parity=True to take the kernel instead).
    #[staticmethod]
    #[pyo3(signature = (block_size, base, as_parity = false))]
    fn qcld(block_size: usize, base: &str, as_parity: bool) -> PyResult<Self> {
        let h = csstk::expand_base(&parse_base(block_size, base)?);
        Ok(if as_parity {
            csstk::LinearCode::from_parity_check(&h).into()
        } else {
            csstk::LinearCode::from_generator(&h).into()
        })
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.n()
    }

    #[getter]
    fn k(&self) -> usize {
        self.inner.k()
    }

    fn dual(&self) -> Self {
        self.inner.dual().into()
    }

    fn schur_square(&self) -> Self {
        self.inner.schur_square().into()
    }

    fn schur_product(&self, other: &Self) -> PyResult<Self> {
        Ok(self
            .inner
            .schur_product(&other.inner)
            .map_err(value_err)?
            .into())
    }

    fn hull(&self) -> Self {
        self.inner.hull().into()
    }

    fn relative_hull(&self, other: &Self) -> PyResult<Self> {
        Ok(self
            .inner
            .relative_hull(&other.inner)
            .map_err(value_err)?
            .into())
    }

    fn is_subcode_of(&self, other: &Self) -> PyResult<bool> {
        self.inner.is_subcode_of(&other.inner).map_err(value_err)
    }

    fn puncture(&self, coords: Vec<usize>) -> PyResult<Self> {
        Ok(self.inner.puncture(&coords).map_err(value_err)?.into())
    }

    fn shorten(&self, coords: Vec<usize>) -> PyResult<Self> {
        Ok(self.inner.shorten(&coords).map_err(value_err)?.into())
    }

    fn support(&self) -> Vec<usize> {
        self.inner.support()
    }

    fn zero_coordinates(&self) -> Vec<usize> {
        self.inner.zero_coordinates()
    }

    /// Exact minimum nonzero weight, or None when 2^k exceeds the budget.
    /// Raises ValueError for the zero code.
    #[pyo3(signature = (budget = DEFAULT_WEIGHT_BUDGET))]
    fn min_weight(&self, budget: u64) -> PyResult<Option<usize>> {
        match self.inner.min_weight(budget).map_err(value_err)? {
            MinWeight::Exact(w) => Ok(Some(w)),
            MinWeight::NotComputed => Ok(None),
        }
    }

    fn is_even(&self) -> bool {
        self.inner.is_even_weight()
    }

    fn is_self_orthogonal(&self) -> bool {
        self.inner.is_self_orthogonal()
    }

    fn is_quasi_cyclic(&self, shift: usize) -> PyResult<bool> {
        if shift == 0 || shift > self.inner.n() {
            return Err(PyValueError::new_err(format!(
                "shift must satisfy 1 <= l <= {}",
                self.inner.n()
            )));
        }
        Ok(self.inner.is_quasi_cyclic(shift))
    }

    /// Generator matrix in text format (one '0'/'1' row per line).
    fn to_text(&self) -> String {
        self.inner.generator().to_text()
    }

    fn generator_rows(&self) -> Vec<String> {
        (0..self.inner.k())
            .map(|r| self.inner.generator().row_text(r))
            .collect()
    }

    fn __repr__(&self) -> String {
        format!("LinearCode([{}, {}])", self.inner.n(), self.inner.k())
    }
}

/// Expand a base matrix into its binary block matrix, in text format.
#[pyfunction]
fn expand_base(block_size: usize, base: &str) -> PyResult<String> {
    Ok(csstk::expand_base(&parse_base(block_size, base)?).to_text())
}

/// Symbolic base-matrix square, as a base matrix string.
#[pyfunction]
fn base_square(block_size: usize, base: &str) -> PyResult<String> {
    Ok(csstk::base_square(&parse_base(block_size, base)?).to_string())
}

fn params_dict<'py>(
    py: Python<'py>,
    params: &csstk::QuantumParams,
) -> PyResult<Bound<'py, PyDict>> {
    let d = PyDict::new(py);
    d.set_item("n", params.n)?;
    d.set_item("k", params.k)?;
    d.set_item("d_lower", params.d_lower)?;
    d.set_item("d_exact", params.d_exact)?;
    Ok(d)
}

/// Verify the CSS-T conditions for (c1, c2); returns the full report as a
/// dict with keys is_pair, cond2, cond3, hull_cond, subset_ok,
/// c2_self_orthogonal, params, witness.
#[pyfunction]
#[pyo3(signature = (c1, c2, budget = DEFAULT_WEIGHT_BUDGET))]
fn is_csst_pair<'py>(
    py: Python<'py>,
    c1: &PyLinearCode,
    c2: &PyLinearCode,
    budget: u64,
) -> PyResult<Bound<'py, PyDict>> {
    let report = csstk::is_csst_pair(&c1.inner, &c2.inner, budget).map_err(value_err)?;
    let d = PyDict::new(py);
    d.set_item("is_pair", report.is_pair)?;
    d.set_item("cond2", report.cond2)?;
    d.set_item("cond3", report.cond3)?;
    d.set_item("hull_cond", report.hull_cond)?;
    d.set_item("subset_ok", report.subset_ok)?;
    d.set_item("c2_self_orthogonal", report.c2_self_orthogonal)?;
    match &report.params {
        Some(p) => d.set_item("params", params_dict(py, p)?)?,
        None => d.set_item("params", py.None())?,
    }
    d.set_item("witness", report.witness.clone())?;
    Ok(d)
}

/// The largest valid partner C1 ∩ (C1²)^⊥.
#[pyfunction]
fn max_csst_partner(c1: &PyLinearCode) -> PyLinearCode {
    csstk::max_csst_partner(&c1.inner).into()
}

/// Parameters [[n, k1−k2, ≥ wt(C2^⊥)]]; raises ValueError if not a pair.
#[pyfunction]
#[pyo3(signature = (c1, c2, budget = DEFAULT_WEIGHT_BUDGET))]
fn quantum_params<'py>(
    py: Python<'py>,
    c1: &PyLinearCode,
    c2: &PyLinearCode,
    budget: u64,
) -> PyResult<Bound<'py, PyDict>> {
    let p = csstk::quantum_params(&c1.inner, &c2.inner, budget).map_err(value_err)?;
    params_dict(py, &p)
}

/// Puncture a CSS-T pair on coordinates where C2 is degenerated.
#[pyfunction]
fn puncture_pair(
    c1: &PyLinearCode,
    c2: &PyLinearCode,
    coords: Vec<usize>,
) -> PyResult<(PyLinearCode, PyLinearCode)> {
    let (p1, p2) = csstk::puncture_pair(&c1.inner, &c2.inner, &coords).map_err(value_err)?;
    Ok((p1.into(), p2.into()))
}

/// The stabilizer block matrix [[0, H1], [G2, 0]] in text format.
#[pyfunction]
fn stabilizer_matrix(c1: &PyLinearCode, c2: &PyLinearCode) -> PyResult<String> {
    Ok(csstk::stabilizer_matrix(&c1.inner, &c2.inner)
        .map_err(value_err)?
        .to_text())
}

/// Brute-force check of the original CSS-T definition. Returns True/False,
/// or None when the instance exceeds the oracle's size limits.
#[pyfunction]
#[pyo3(signature = (c1, c2, max_c2_words = 4096, max_quotient_dim = 12))]
fn definitional_check(
    c1: &PyLinearCode,
    c2: &PyLinearCode,
    max_c2_words: u64,
    max_quotient_dim: usize,
) -> PyResult<Option<bool>> {
    let limits = DefinitionalLimits {
        max_c2_words,
        max_quotient_dim,
    };
    match csstk::csst_definitional_check(&c1.inner, &c2.inner, &limits).map_err(value_err)? {
        OracleVerdict::True => Ok(Some(true)),
        OracleVerdict::False => Ok(Some(false)),
        OracleVerdict::Inconclusive => Ok(None),
    }
}

/// Run the candidate search; returns the JSON Lines records followed by the
/// summary line, exactly as the CLI writes them.
#[pyfunction]
#[pyo3(signature = (block_size, block_rows, block_cols, samples = None, enumerate = false,
                    infinity_density = 0.5, seed = 0, min_logical_k = 0,
                    budget = DEFAULT_WEIGHT_BUDGET, as_parity = false, threads = 1))]
#[allow(clippy::too_many_arguments)]
fn search(
    py: Python<'_>,
    block_size: usize,
    block_rows: usize,
    block_cols: usize,
    samples: Option<u64>,
    enumerate: bool,
    infinity_density: f64,
    seed: u64,
    min_logical_k: usize,
    budget: u64,
    as_parity: bool,
    threads: usize,
) -> PyResult<Vec<String>> {
    let mode = if enumerate {
        SearchMode::Enumerate
    } else {
        match samples {
            Some(count) => SearchMode::Sample { count },
            None => return Err(PyValueError::new_err("pass samples=N or enumerate=True")),
        }
    };
    let cfg = SearchConfig {
        block_size,
        block_rows,
        block_cols,
        infinity_density,
        mode,
        seed,
        min_logical_k,
        distance_budget: budget,
        as_parity,
        threads,
    };
    py.detach(|| {
        let mut lines = Vec::new();
        let summary = csstk::run_search(&cfg, |record| lines.push(record.to_json_line()))
            .map_err(value_err)?;
        lines.push(summary.to_json_line());
        Ok(lines)
    })
}

#[pymodule]
fn csstk_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyLinearCode>()?;
    m.add_function(wrap_pyfunction!(expand_base, m)?)?;
    m.add_function(wrap_pyfunction!(base_square, m)?)?;
    m.add_function(wrap_pyfunction!(is_csst_pair, m)?)?;
    m.add_function(wrap_pyfunction!(max_csst_partner, m)?)?;
    m.add_function(wrap_pyfunction!(quantum_params, m)?)?;
    m.add_function(wrap_pyfunction!(puncture_pair, m)?)?;
    m.add_function(wrap_pyfunction!(stabilizer_matrix, m)?)?;
    m.add_function(wrap_pyfunction!(definitional_check, m)?)?;
    m.add_function(wrap_pyfunction!(search, m)?)?;
    m.add("DEFAULT_WEIGHT_BUDGET", DEFAULT_WEIGHT_BUDGET)?;
    Ok(())
}
