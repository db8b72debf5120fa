//! Python bindings. Integers cross as Python `int`, rationals as
//! `fractions.Fraction`; structured reports come back as plain dicts.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use rootno::constancy::{self, TwoAdic};
use rootno::{audit, global_root, local_tables, rankjump, Error};

fn err(e: Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn to_py<'py, T: serde::Serialize>(py: Python<'py>, x: &T) -> PyResult<Bound<'py, PyAny>> {
    let text = serde_json::to_string(x).map_err(|e| PyValueError::new_err(e.to_string()))?;
    py.import("json")?.call_method1("loads", (text,))
}

/// `W(F_s(t))` and the per-prime factors `{p: w_p*}`.
#[pyfunction]
fn root_number_f(s: BigInt, t: BigInt) -> PyResult<(i8, BTreeMap<BigInt, i8>)> {
    let bd = global_root::root_number_f(&s, &t).map_err(err)?;
    Ok((bd.total.to_i8(), bd.factors.iter().map(|(p, w)| (p.clone(), w.to_i8())).collect()))
}

/// `W(L_{w,s,v}(t))` computed on the integral model.
#[pyfunction]
fn root_number_l(w: BigRational, s: BigRational, v: BigRational, t: BigRational) -> PyResult<i8> {
    Ok(global_root::root_number_l(&w, &s, &v, &t).map_err(err)?.total.to_i8())
}

/// `w_p*(F_s(t))`.
#[pyfunction]
fn w_star(p: BigInt, s: BigInt, t: BigInt) -> PyResult<i8> {
    Ok(local_tables::w_star(&p, &s, &t).map_err(err)?.to_i8())
}

/// Constancy verdict for `F_s(a u + b)`; `table1` switches the 2-adic encoding.
#[pyfunction]
#[pyo3(signature = (s, a, b, table1 = false))]
fn check_f<'py>(py: Python<'py>, s: BigInt, a: BigInt, b: BigInt, table1: bool) -> PyResult<Bound<'py, PyAny>> {
    let enc = if table1 { TwoAdic::Table1 } else { TwoAdic::Conditions };
    to_py(py, &constancy::check_f_with(&s, &a, &b, enc).map_err(err)?)
}

/// Two fibres with opposite signs, or `None` if none turned up.
#[pyfunction]
#[pyo3(signature = (s, a, b, budget = 1000))]
fn falsify_constancy<'py>(py: Python<'py>, s: BigInt, a: BigInt, b: BigInt, budget: u64) -> PyResult<Bound<'py, PyAny>> {
    to_py(py, &audit::falsify_constancy(&s, &a, &b, budget).map_err(err)?)
}

#[pyfunction]
fn rank_jump_report<'py>(py: Python<'py>, s: BigInt, a: BigInt, b: BigInt) -> PyResult<Bound<'py, PyAny>> {
    to_py(py, &rankjump::rank_jump_report(&s, &a, &b).map_err(err)?)
}

/// The discrepancy ledger of the built-in examples.
#[pyfunction]
fn paper_examples_ledger(py: Python<'_>) -> PyResult<Bound<'_, PyAny>> {
    to_py(py, &audit::run_paper_examples().map_err(err)?)
}

#[pymodule]
fn rootno_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_function(wrap_pyfunction!(root_number_f, m)?)?;
    m.add_function(wrap_pyfunction!(root_number_l, m)?)?;
    m.add_function(wrap_pyfunction!(w_star, m)?)?;
    m.add_function(wrap_pyfunction!(check_f, m)?)?;
    m.add_function(wrap_pyfunction!(falsify_constancy, m)?)?;
    m.add_function(wrap_pyfunction!(rank_jump_report, m)?)?;
    m.add_function(wrap_pyfunction!(paper_examples_ledger, m)?)?;
    Ok(())
}
