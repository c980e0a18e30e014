//! Python bindings. Structured results are returned as JSON strings.

use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

use centext::cli::{parse_checks, parse_types, run, RunConfig};
use centext::refl::{find_group, group_catalog, verify_group_orders, DEFAULT_MAX_COSETS};
use centext::rh::{parse_leg_params, verify_phi, MonodromyOptions};
use centext::rootdata::{build_nodal_data, root_data as build};
use centext::Error;

fn py_err(e: Error) -> PyErr {
    match e {
        Error::InvalidLabel(_) | Error::Config(_) | Error::Precondition(_) => PyValueError::new_err(e.to_string()),
        _ => PyRuntimeError::new_err(e.to_string()),
    }
}

fn to_json(v: &impl serde::Serialize) -> PyResult<String> {
    serde_json::to_string(v).map_err(|e| PyRuntimeError::new_err(e.to_string()))
}

#[pyfunction]
fn version() -> &'static str {
    env!("CARGO_PKG_VERSION")
}

/// Root data of an ADE type as JSON.
#[pyfunction]
fn root_data(label: &str) -> PyResult<String> {
    to_json(&build(label).map_err(py_err)?)
}

/// `(dim Pi0, dim Pi0^mu)` from the closed formulas.
#[pyfunction]
fn closed_form_dims(label: &str) -> PyResult<(usize, usize)> {
    let rd = build(label).map_err(py_err)?;
    let (h, r) = (rd.h(), rd.rank());
    Ok((h * (h + 1) * r / 6, h * h * (h + 1) * r / 12))
}

/// `(node, leg_orders, q1, q2)` for types with a nodal vertex.
#[pyfunction]
fn nodal_data(label: &str) -> PyResult<(usize, Vec<usize>, usize, usize)> {
    let nd = build_nodal_data(&build(label).map_err(py_err)?).map_err(py_err)?;
    Ok((nd.node, nd.leg_orders.clone(), nd.q1, nd.q2))
}

/// Runs checks as the `verify` subcommand does and returns the report.
#[pyfunction]
#[pyo3(signature = (checks, types=None, seed=None, slow=false))]
fn verify(checks: &str, types: Option<&str>, seed: Option<u64>, slow: bool) -> PyResult<String> {
    let mut config = RunConfig {
        checks: parse_checks(checks).map_err(py_err)?,
        types: types.map(parse_types).transpose().map_err(py_err)?,
        slow,
        ..RunConfig::default()
    };
    if let Some(s) = seed {
        config.seed = s;
    }
    let (report, _) = run(&config).map_err(py_err)?;
    Ok(report.to_json())
}

/// Enumerates the named groups (default: the whole catalog).
#[pyfunction]
#[pyo3(signature = (names=None))]
fn group_orders(names: Option<Vec<String>>) -> PyResult<String> {
    let groups = match names {
        Some(ns) => ns
            .iter()
            .map(|n| find_group(n).ok_or_else(|| PyValueError::new_err(format!("unknown group {n}"))))
            .collect::<PyResult<Vec<_>>>()?,
        None => group_catalog(),
    };
    let (rec, rows) = verify_group_orders(&groups, DEFAULT_MAX_COSETS);
    to_json(&serde_json::json!({ "record": rec, "rows": rows }))
}

/// Monodromy relation residuals of `B(lambda)`.
#[pyfunction]
#[pyo3(signature = (label, tol=1e-6, leg_params="zero"))]
fn monodromy(label: &str, tol: f64, leg_params: &str) -> PyResult<String> {
    let rd = build(label).map_err(py_err)?;
    let params = parse_leg_params(leg_params).map_err(py_err)?;
    let (rec, rep) = verify_phi(&rd, params, &MonodromyOptions::new(tol));
    let mut rep = serde_json::to_value(&rep).map_err(|e| PyRuntimeError::new_err(e.to_string()))?;
    if let Some(o) = rep.as_object_mut() {
        o.remove("y");
    }
    to_json(&serde_json::json!({ "record": rec, "report": rep }))
}

#[pymodule]
fn pycentext(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_function(wrap_pyfunction!(version, m)?)?;
    m.add_function(wrap_pyfunction!(root_data, m)?)?;
    m.add_function(wrap_pyfunction!(closed_form_dims, m)?)?;
    m.add_function(wrap_pyfunction!(nodal_data, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    m.add_function(wrap_pyfunction!(group_orders, m)?)?;
    m.add_function(wrap_pyfunction!(monodromy, m)?)?;
    Ok(())
}
