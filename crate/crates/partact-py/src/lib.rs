//! Python bindings. Results cross the boundary as plain values or as the JSON
//! documents the command-line tool emits.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

pub mod api {
    use partact::cli::functor_from_names;
    use partact::functors::{gram, k_dim as dim};
    use partact::partitions::{enumerate_bounded, CategorySpec};
    use partact::rigidity::witness_in;
    use partact::yd::{
        canonical_cg_collection, check_conditions, decide_obstruction, nesting_collection, replay_decision, Bounds,
        Decision,
    };

    pub type Result<T> = std::result::Result<T, String>;

    fn text<E: std::fmt::Display>(e: E) -> String {
        e.to_string()
    }

    pub fn run_cli(args: &[String]) -> (i32, String, String) {
        let r = partact::cli::run(std::iter::once("partact".to_string()).chain(args.iter().cloned()));
        (r.code, r.stdout, r.stderr)
    }

    pub fn enumerate(category: &str, k: usize, l: usize, bound: usize) -> Result<Vec<String>> {
        let cat = CategorySpec::parse(category).map_err(text)?;
        Ok(enumerate_bounded(&cat, k, l, bound).map_err(text)?.iter().map(|p| p.to_string()).collect())
    }

    pub fn k_dim(category: &str, model: &str, n: u32, degree: usize) -> Result<usize> {
        dim(&functor_from_names(category, model, n).map_err(text)?, degree).map_err(text)
    }

    /// Labels and exact entries of the Gram matrix of K_degree.
    pub fn gram_matrix(category: &str, model: &str, n: u32, degree: usize) -> Result<(Vec<String>, Vec<Vec<String>>)> {
        let g = gram(&functor_from_names(category, model, n).map_err(text)?, degree).map_err(text)?;
        let rows = (0..g.matrix.rows()).map(|i| g.matrix.row(i).iter().map(|x| x.to_string()).collect()).collect();
        Ok((g.labels.iter().map(|l| l.to_string()).collect(), rows))
    }

    /// YDReport JSON for the canonical (model "cg") or nesting ("line:<cat>") collection.
    pub fn check_yd(category: &str, model: &str, n: u32, k: usize, depth: usize) -> Result<String> {
        if depth == 0 {
            return Err("depth must be at least 1".into());
        }
        let spec = functor_from_names(category, model, n).map_err(text)?;
        let kmax = k + 2 * (depth - 1);
        let c = if model == "cg" {
            canonical_cg_collection(spec.category.clone(), n, kmax)
        } else {
            nesting_collection(spec, kmax)
        }
        .map_err(text)?;
        let report = check_conditions(&c, Bounds { k, n: depth }).map_err(text)?;
        serde_json::to_string(&report).map_err(text)
    }

    /// Decision JSON; its "outcome.result" is feasible, infeasible or undecided.
    pub fn obstruction(category: &str, model: &str, n: u32, kmax: usize) -> Result<String> {
        let spec = functor_from_names(category, model, n).map_err(text)?;
        let (_, d) = decide_obstruction(&spec, kmax).map_err(text)?;
        serde_json::to_string(&d).map_err(text)
    }

    /// Replays a decision produced by [`obstruction`]; Err carries the reason.
    pub fn replay(decision: &str) -> Result<()> {
        let d: Decision = serde_json::from_str(decision).map_err(text)?;
        let spec = partact::cli::spec_from_description(&d.functor).map_err(text)?;
        replay_decision(&spec, &d)
    }

    pub fn witness(category: &str, n: u32, k: usize, depth: usize) -> Result<String> {
        let cat = CategorySpec::parse(category).map_err(text)?;
        serde_json::to_string(&witness_in(&cat, n, k, depth).map_err(text)?).map_err(text)
    }
}

fn value_error(e: String) -> PyErr {
    PyValueError::new_err(e)
}

/// Runs the command-line tool; returns (exit code, stdout, stderr).
#[pyfunction]
fn run_cli(py: Python<'_>, args: Vec<String>) -> (i32, String, String) {
    py.detach(|| api::run_cli(&args))
}

#[pyfunction]
#[pyo3(signature = (category, k, l, bound = 10))]
fn enumerate(category: &str, k: usize, l: usize, bound: usize) -> PyResult<Vec<String>> {
    api::enumerate(category, k, l, bound).map_err(value_error)
}

#[pyfunction]
#[pyo3(signature = (category, n, degree, model = "proj"))]
fn k_dim(py: Python<'_>, category: &str, n: u32, degree: usize, model: &str) -> PyResult<usize> {
    py.detach(|| api::k_dim(category, model, n, degree)).map_err(value_error)
}

#[pyfunction]
#[pyo3(signature = (category, n, degree, model = "proj"))]
fn gram(py: Python<'_>, category: &str, n: u32, degree: usize, model: &str) -> PyResult<(Vec<String>, Vec<Vec<String>>)> {
    py.detach(|| api::gram_matrix(category, model, n, degree)).map_err(value_error)
}

#[pyfunction]
#[pyo3(signature = (category, model, n, k = 2, depth = 2))]
fn check_yd(py: Python<'_>, category: &str, model: &str, n: u32, k: usize, depth: usize) -> PyResult<String> {
    py.detach(|| api::check_yd(category, model, n, k, depth)).map_err(value_error)
}

#[pyfunction]
#[pyo3(signature = (category, n, model = "proj", kmax = 2))]
fn decide_obstruction(py: Python<'_>, category: &str, n: u32, model: &str, kmax: usize) -> PyResult<String> {
    py.detach(|| api::obstruction(category, model, n, kmax)).map_err(value_error)
}

/// True when the certificate in the decision re-verifies.
#[pyfunction]
fn replay(py: Python<'_>, decision: &str) -> bool {
    py.detach(|| api::replay(decision).is_ok())
}

#[pyfunction]
#[pyo3(signature = (n, k, depth, category = "NC"))]
fn witness(py: Python<'_>, n: u32, k: usize, depth: usize, category: &str) -> PyResult<String> {
    py.detach(|| api::witness(category, n, k, depth)).map_err(value_error)
}

#[pymodule]
fn partact_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("SCHEMA", partact::cli::SCHEMA)?;
    m.add_function(wrap_pyfunction!(run_cli, m)?)?;
    m.add_function(wrap_pyfunction!(enumerate, m)?)?;
    m.add_function(wrap_pyfunction!(k_dim, m)?)?;
    m.add_function(wrap_pyfunction!(gram, m)?)?;
    m.add_function(wrap_pyfunction!(check_yd, m)?)?;
    m.add_function(wrap_pyfunction!(decide_obstruction, m)?)?;
    m.add_function(wrap_pyfunction!(replay, m)?)?;
    m.add_function(wrap_pyfunction!(witness, m)?)?;
    Ok(())
}
