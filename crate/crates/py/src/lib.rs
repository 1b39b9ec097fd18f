//! Python bindings. Rationals cross the boundary as `"p/q"` strings.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use monoval::multiplicities::{self as mult, MonomialIdeal};
use monoval::scalar::{fmt_rat, parse_rat_list};
use monoval::surface::BlowupTree;
use monoval::valuation::{self, FaceDomain};
use monoval::{Ext, Polynomial, Rat};
use monoval_cli::{run_suite, RunConfig, Suite};

fn err<E: std::fmt::Display>(e: E) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn rats(v: &[String]) -> PyResult<Vec<Rat>> {
    parse_rat_list(&v.join(",")).map_err(err)
}

fn strs(v: &[Rat]) -> Vec<String> {
    v.iter().map(fmt_rat).collect()
}

/// Monomial valuation `min <t, alpha>` over the support of `poly`; `"inf"` for zero.
#[pyfunction]
fn eval_valuation(t: Vec<String>, poly: &str) -> PyResult<String> {
    let t = rats(&t)?;
    let f = Polynomial::parse_any(poly, Some(t.len())).map_err(err)?;
    Ok(match valuation::eval_valuation(&t, &f).map_err(err)? {
        Ext::Finite(x) => fmt_rat(&x),
        Ext::Infinity => "inf".into(),
    })
}

/// Irredundant linear forms of `chi_f` on the simplex with multiplicities `b`.
#[pyfunction]
fn chi_forms(poly: &str, b: Vec<u32>) -> PyResult<Vec<Vec<String>>> {
    let f = Polynomial::parse_any(poly, Some(b.len())).map_err(err)?;
    let ids = (1..=b.len() as u32).collect();
    let chi = valuation::chi_on_face(&f, &FaceDomain::new(ids, b).map_err(err)?).map_err(err)?;
    Ok(chi.forms().iter().map(|a| strs(&a.coeffs)).collect())
}

#[pyfunction]
fn newton_vertices(poly: &str) -> PyResult<Vec<Vec<String>>> {
    let f = Polynomial::parse_any(poly, None).map_err(err)?;
    let np = valuation::newton_polyhedron(&f).map_err(err)?;
    Ok(valuation::extremal_points(&np).iter().map(|v| strs(v)).collect())
}

#[pyfunction]
fn hilbert_samuel(ideal: &str) -> PyResult<String> {
    let i = MonomialIdeal::parse(ideal, None).map_err(err)?;
    Ok(fmt_rat(&i.hilbert_samuel().map_err(err)?))
}

#[pyfunction]
fn mixed_multiplicities(i: &str, j: &str) -> PyResult<Vec<String>> {
    let i = MonomialIdeal::parse(i, None).map_err(err)?;
    let j = MonomialIdeal::parse(j, Some(i.arity())).map_err(err)?;
    Ok(strs(&mult::mixed_multiplicities(&i, &j).map_err(err)?.values))
}

#[pyfunction]
fn alpha(t: Vec<String>) -> PyResult<Vec<String>> {
    Ok(strs(&mult::alpha_exact(&rats(&t)?).map_err(err)?))
}

#[pyfunction]
fn volume(t: Vec<String>) -> PyResult<String> {
    Ok(fmt_rat(&mult::volume(&rats(&t)?).map_err(err)?))
}

#[pyfunction]
fn linking_number(t: Vec<String>, s: Vec<String>) -> PyResult<String> {
    Ok(fmt_rat(&mult::linking_number(&rats(&t)?, &rats(&s)?).map_err(err)?))
}

/// Multiplicities `b_k` of the exceptional curves of a blowup tree given as JSON.
#[pyfunction]
fn tree_multiplicities(tree_json: &str) -> PyResult<Vec<u32>> {
    Ok(BlowupTree::parse_json(tree_json).map_err(err)?.multiplicities())
}

#[pyfunction]
fn intersection_matrix(tree_json: &str) -> PyResult<Vec<Vec<i64>>> {
    Ok(BlowupTree::parse_json(tree_json).map_err(err)?.intersection_data().matrix)
}

/// Runs a report suite and returns `(csv, passed)`.
#[pyfunction]
#[pyo3(signature = (suite, seed = 0, samples = None))]
fn report(suite: &str, seed: u64, samples: Option<usize>) -> PyResult<(String, bool)> {
    let s: Suite = suite.parse().map_err(err)?;
    let cfg = RunConfig { seed, samples, ..RunConfig::default() };
    let t = run_suite(s, &cfg).map_err(err)?;
    Ok((t.to_csv().map_err(err)?, t.pass))
}

#[pymodule]
fn monoval_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_function(wrap_pyfunction!(eval_valuation, m)?)?;
    m.add_function(wrap_pyfunction!(chi_forms, m)?)?;
    m.add_function(wrap_pyfunction!(newton_vertices, m)?)?;
    m.add_function(wrap_pyfunction!(hilbert_samuel, m)?)?;
    m.add_function(wrap_pyfunction!(mixed_multiplicities, m)?)?;
    m.add_function(wrap_pyfunction!(alpha, m)?)?;
    m.add_function(wrap_pyfunction!(volume, m)?)?;
    m.add_function(wrap_pyfunction!(linking_number, m)?)?;
    m.add_function(wrap_pyfunction!(tree_multiplicities, m)?)?;
    m.add_function(wrap_pyfunction!(intersection_matrix, m)?)?;
    m.add_function(wrap_pyfunction!(report, m)?)?;
    Ok(())
}
