//! Python module `polar_rank_py`: rank formulas, incidence matrices and the
//! elimination oracle of W(2m-1, p^t).

use num_bigint::BigUint;
use pyo3::exceptions::{PyOSError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;

use polar_rank::dims::{self, build_d_matrix, DimensionTable};
use polar_rank::field::FieldSpec;
use polar_rank::geometry::{isotropic_count, SymplecticSpace};
use polar_rank::incidence::{build_incidence, SparseIncidenceMatrix};
use polar_rank::lab::{run_suites, Suite, VerifyOptions};
use polar_rank::rank::{rank_dense, rank_mod_p, rank_streaming};
use polar_rank::types::Params;
use polar_rank::{Error, VERSION};

const DEFAULT_MAX_CELLS: u128 = 500_000_000;
const STREAMING_CELLS: u128 = 100_000_000;

fn to_py(e: Error) -> PyErr {
    match e {
        Error::Io(io) => PyOSError::new_err(io.to_string()),
        other => PyValueError::new_err(other.to_string()),
    }
}

fn params(m: u32, p: u32, t: u32) -> PyResult<Params> {
    Params::new(m, p, t).map_err(to_py)
}

/// Point-vs-r-flat matrix of W(2m-1, p^t), refusing sizes above the cap.
pub fn incidence_checked(m: u32, p: u32, t: u32, r: u32, max_cells: Option<u128>) -> Result<SparseIncidenceMatrix, String> {
    let prm = Params::new(m, p, t).map_err(|e| e.to_string())?;
    if r < 1 || r > 2 * m - 1 {
        return Err(format!("r = {r} outside [1, {}]", 2 * m - 1));
    }
    let cells = isotropic_count(m, r.min(2 * m - r), prm.q()) * isotropic_count(m, 1, prm.q());
    let cap = max_cells.unwrap_or(DEFAULT_MAX_CELLS);
    if cells > cap {
        return Err(format!("the matrix would have {cells} cells, above the cap of {cap}"));
    }
    let field = FieldSpec::new(p, t).map_err(|e| e.to_string())?;
    let sp = SymplecticSpace::new(m as usize, field).map_err(|e| e.to_string())?;
    build_incidence(&sp, r as usize).map_err(|e| e.to_string())
}

fn rank_of(inc: &SparseIncidenceMatrix) -> PyResult<usize> {
    if inc.cells() > STREAMING_CELLS {
        rank_streaming(inc.row_data(), inc.cols(), inc.modulus()).map_err(to_py)
    } else {
        Ok(rank_mod_p(inc))
    }
}

/// Formula rank report as a dict.
#[pyfunction]
#[pyo3(signature = (m, p, t, r=None))]
fn rank_formula<'py>(py: Python<'py>, m: u32, p: u32, t: u32, r: Option<u32>) -> PyResult<Bound<'py, PyDict>> {
    let rep = dims::rank_point_flat(m, p, t, r.unwrap_or(m)).map_err(to_py)?;
    let d = PyDict::new(py);
    d.set_item("m", rep.m)?;
    d.set_item("p", rep.p)?;
    d.set_item("t", rep.t)?;
    d.set_item("r", rep.r)?;
    d.set_item("formula", rep.formula_rank)?;
    d.set_item("method", rep.method.as_str())?;
    d.set_item("needs_oracle_confirmation", rep.needs_oracle_confirmation)?;
    Ok(d)
}

/// Rank over GF(p) of the built incidence matrix.
#[pyfunction]
#[pyo3(signature = (m, p, t, r=None, max_cells=None))]
fn rank_oracle(m: u32, p: u32, t: u32, r: Option<u32>, max_cells: Option<u128>) -> PyResult<usize> {
    let inc = incidence_checked(m, p, t, r.unwrap_or(m), max_cells).map_err(PyValueError::new_err)?;
    rank_of(&inc)
}

/// Formula and oracle side by side.
#[pyfunction]
#[pyo3(signature = (m, p, t, r=None, max_cells=None))]
fn verify<'py>(
    py: Python<'py>,
    m: u32,
    p: u32,
    t: u32,
    r: Option<u32>,
    max_cells: Option<u128>,
) -> PyResult<Bound<'py, PyDict>> {
    let d = rank_formula(py, m, p, t, r)?;
    let oracle = rank_oracle(m, p, t, r, max_cells)?;
    let formula: BigUint = d.get_item("formula")?.expect("set above").extract()?;
    d.set_item("oracle", oracle)?;
    d.set_item("match", formula == BigUint::from(oracle))?;
    Ok(d)
}

/// Sorted column supports of the incidence matrix rows.
#[pyfunction]
#[pyo3(signature = (m, p, t, r=None, max_cells=None))]
fn incidence(m: u32, p: u32, t: u32, r: Option<u32>, max_cells: Option<u128>) -> PyResult<Vec<Vec<u32>>> {
    let inc = incidence_checked(m, p, t, r.unwrap_or(m), max_cells).map_err(PyValueError::new_err)?;
    Ok(inc.row_data().to_vec())
}

/// Rank over GF(p) of a dense matrix of residues.
#[pyfunction]
fn rank_mod(rows: Vec<Vec<u32>>, p: u32) -> PyResult<usize> {
    let cols = rows.first().map_or(0, Vec::len);
    if rows.iter().any(|r| r.len() != cols) {
        return Err(PyValueError::new_err("rows have different lengths"));
    }
    rank_dense(&rows, cols, p).map_err(to_py)
}

#[pyfunction]
fn rank_via_trace(m: u32, p: u32, t: u32) -> PyResult<BigUint> {
    dims::rank_via_trace(m, p, t).map_err(to_py)
}

#[pyfunction]
fn rank_w3_char2(t: u32) -> PyResult<BigUint> {
    dims::rank_w3_char2(t).map_err(to_py)
}

#[pyfunction]
fn d_matrix(m: u32, p: u32) -> PyResult<Vec<Vec<BigUint>>> {
    Ok(build_d_matrix(m, p).map_err(to_py)?.entries().to_vec())
}

/// `d_0, ..., d_{2m(p-1)}`.
#[pyfunction]
fn dimension_table(m: u32, p: u32) -> PyResult<Vec<BigUint>> {
    Ok(DimensionTable::new(m, p).map_err(to_py)?.entries().to_vec())
}

#[pyfunction]
fn dim_s_plus_minus(m: u32, p: u32) -> PyResult<(BigUint, BigUint)> {
    dims::dim_s_plus_minus(m, p).map_err(to_py)
}

fn suite(name: &str) -> PyResult<Suite> {
    match name {
        "shift" => Ok(Suite::Shift),
        "projector" => Ok(Suite::Projector),
        "tau" => Ok(Suite::Tau),
        "basis" => Ok(Suite::Basis),
        other => Err(PyValueError::new_err(format!("unknown suite `{other}`"))),
    }
}

/// Operator checks on k[V]; one dict per check.
#[pyfunction]
#[pyo3(signature = (m, p, t, suites=None, samples=500, seed=0x5eed))]
fn verify_lemmas<'py>(
    py: Python<'py>,
    m: u32,
    p: u32,
    t: u32,
    suites: Option<Vec<String>>,
    samples: usize,
    seed: u64,
) -> PyResult<Vec<Bound<'py, PyDict>>> {
    let prm = params(m, p, t)?;
    let suites = match suites {
        Some(names) => names.iter().map(|n| suite(n)).collect::<PyResult<Vec<_>>>()?,
        None => Suite::ALL.to_vec(),
    };
    let opts = VerifyOptions {
        samples,
        seed,
        ..VerifyOptions::default()
    };
    let ledger = py.detach(|| run_suites(prm, &opts, &suites)).map_err(to_py)?;
    ledger
        .checks
        .iter()
        .map(|c| {
            let d = PyDict::new(py);
            d.set_item("name", &c.name)?;
            d.set_item("passed", c.passed())?;
            d.set_item("cases", c.cases)?;
            d.set_item("failures", c.failures)?;
            d.set_item("skipped", c.skipped)?;
            d.set_item("exhaustive", c.exhaustive)?;
            d.set_item("counterexamples", &c.counterexamples)?;
            Ok(d)
        })
        .collect()
}

#[pymodule]
fn polar_rank_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("__version__", VERSION)?;
    m.add_function(wrap_pyfunction!(rank_formula, m)?)?;
    m.add_function(wrap_pyfunction!(rank_oracle, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    m.add_function(wrap_pyfunction!(incidence, m)?)?;
    m.add_function(wrap_pyfunction!(rank_mod, m)?)?;
    m.add_function(wrap_pyfunction!(rank_via_trace, m)?)?;
    m.add_function(wrap_pyfunction!(rank_w3_char2, m)?)?;
    m.add_function(wrap_pyfunction!(d_matrix, m)?)?;
    m.add_function(wrap_pyfunction!(dimension_table, m)?)?;
    m.add_function(wrap_pyfunction!(dim_s_plus_minus, m)?)?;
    m.add_function(wrap_pyfunction!(verify_lemmas, m)?)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn capped_incidence() {
        let inc = incidence_checked(2, 3, 1, 2, None).unwrap();
        assert_eq!((inc.rows(), inc.cols()), (40, 40));
        assert!(incidence_checked(2, 3, 1, 2, Some(100)).unwrap_err().contains("cap"));
        assert!(incidence_checked(2, 3, 1, 4, None).is_err());
        assert!(incidence_checked(2, 2, 1, 2, None).is_err());
    }
}
