//! Python bindings: graphs, certified spectral sums, the inequality
//! checkers, H-joins and the family registry.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use qspectra_core::canon::CanonicalForm;
use qspectra_core::enumerate::{self, GraphClass};
use qspectra_core::families::{self, Chain, FamilyId, Params, Registry};
use qspectra_core::hjoin::verify_factorization;
use qspectra_core::matrix::{laplacian, signless_char_poly};
use qspectra_core::sums;
use qspectra_core::{Enclosure, Graph, HJoinSpec, Mode, NamedGraph, Precision, RationalMatrix, Verdict};
use serde::Serialize;

fn err(e: qspectra_core::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn verdict(v: Verdict) -> &'static str {
    match v {
        Verdict::True => "TRUE",
        Verdict::False => "FALSE",
        Verdict::Undecided => "UNDECIDED",
    }
}

/// Hands a serializable report to Python as plain dicts and lists.
fn to_python<'py>(py: Python<'py>, value: &impl Serialize) -> PyResult<Bound<'py, PyAny>> {
    let text = serde_json::to_string(value).map_err(|e| PyValueError::new_err(e.to_string()))?;
    py.import("json")?.call_method1("loads", (text,))
}

fn mode(exact: bool) -> Mode {
    if exact {
        Mode::Exact
    } else {
        Mode::Floating
    }
}

/// A certified enclosure `[lo, hi]` with rational endpoints.
#[pyclass(name = "Interval", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyInterval {
    inner: Enclosure,
}

#[pymethods]
impl PyInterval {
    /// Lower endpoint as a rational string such as `"7/2"`.
    #[getter]
    fn lo(&self) -> String {
        self.inner.lo().to_string()
    }

    #[getter]
    fn hi(&self) -> String {
        self.inner.hi().to_string()
    }

    #[getter]
    fn exact(&self) -> bool {
        self.inner.is_exact()
    }

    fn __float__(&self) -> f64 {
        self.inner.to_f64()
    }

    fn __repr__(&self) -> String {
        format!("Interval({}, {})", self.inner.lo(), self.inner.hi())
    }
}

#[pyclass(name = "Graph", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyGraph {
    inner: Graph,
}

#[pymethods]
impl PyGraph {
    #[new]
    fn new(n: usize, edges: Vec<(usize, usize)>) -> PyResult<Self> {
        Graph::new(n, &edges).map(|inner| PyGraph { inner }).map_err(err)
    }

    /// Parses the `n m` header plus `u v` lines format.
    #[staticmethod]
    fn from_edge_list(text: &str) -> PyResult<Self> {
        Graph::parse_edge_list(text).map(|inner| PyGraph { inner }).map_err(err)
    }

    /// `complete`, `star`, `star_plus_edge`, `path` or `cycle`.
    #[staticmethod]
    fn named(kind: &str, n: usize) -> PyResult<Self> {
        let kind: NamedGraph = kind.parse().map_err(err)?;
        Graph::named(kind, n).map(|inner| PyGraph { inner }).map_err(err)
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.n()
    }

    #[getter]
    fn edge_count(&self) -> usize {
        self.inner.edge_count()
    }

    fn edges(&self) -> Vec<(usize, usize)> {
        self.inner.edges()
    }

    fn degrees(&self) -> Vec<usize> {
        self.inner.degrees()
    }

    fn is_connected(&self) -> bool {
        self.inner.is_connected()
    }

    fn is_bipartite(&self) -> bool {
        self.inner.is_bipartite()
    }

    fn matching_number(&self) -> usize {
        self.inner.max_matching()
    }

    /// Upper-triangle bitstring of the canonical relabeling.
    fn canonical_form(&self) -> String {
        CanonicalForm::of(&self.inner).bitstring()
    }

    fn to_edge_list(&self) -> String {
        self.inner.to_edge_list()
    }

    /// Coefficients of the characteristic polynomial, constant term first.
    #[pyo3(signature = (laplacian = false))]
    fn char_poly(&self, laplacian: bool) -> Vec<BigInt> {
        let p = if laplacian {
            self::laplacian(&self.inner).char_poly()
        } else {
            signless_char_poly(&self.inner)
        };
        p.coeffs().to_vec()
    }

    /// Eigenvalues in decreasing order, from certified enclosures.
    #[pyo3(signature = (laplacian = false))]
    fn spectrum(&self, laplacian: bool) -> PyResult<Vec<f64>> {
        let p = Precision::default();
        let s = if laplacian {
            sums::l_spectrum(&self.inner, p)
        } else {
            sums::q_spectrum(&self.inner, p)
        }
        .map_err(err)?;
        Ok(s.expanded().map(Enclosure::to_f64).collect())
    }

    /// Sum of the `k` largest signless Laplacian eigenvalues.
    #[pyo3(signature = (k = 2, exact = true))]
    fn s_k(&self, k: usize, exact: bool) -> PyResult<PyInterval> {
        let r = sums::s_k(&self.inner, k, mode(exact)).map_err(err)?;
        Ok(PyInterval { inner: r.value })
    }

    /// `e + 3 - S_2`.
    #[pyo3(signature = (exact = true))]
    fn f(&self, exact: bool) -> PyResult<PyInterval> {
        let r = sums::f_value(&self.inner, mode(exact)).map_err(err)?;
        Ok(PyInterval { inner: r.value })
    }

    fn __repr__(&self) -> String {
        format!("Graph(n={}, edges={:?})", self.inner.n(), self.inner.edges())
    }

    fn __eq__(&self, other: &PyGraph) -> bool {
        self.inner == other.inner
    }
}

fn wrap(graphs: Vec<Graph>) -> Vec<PyGraph> {
    graphs.into_iter().map(|inner| PyGraph { inner }).collect()
}

/// One canonical representative per connected graph on `n` vertices.
#[pyfunction]
fn connected_graphs(n: usize) -> PyResult<Vec<PyGraph>> {
    enumerate::connected_graphs(n).map(wrap).map_err(err)
}

#[pyfunction]
fn trees(n: usize) -> PyResult<Vec<PyGraph>> {
    enumerate::trees(n).map(wrap).map_err(err)
}

/// Canonical forms of all connected labeled graphs (n <= 6).
#[pyfunction]
fn labeled_class_count(n: usize) -> PyResult<usize> {
    enumerate::labeled_classes(n, GraphClass::Connected).map(|s| s.len()).map_err(err)
}

/// Exhaustive minimization of `f` over connected graphs on `n` vertices.
#[pyfunction]
fn search_min_f<'py>(py: Python<'py>, n: usize) -> PyResult<Bound<'py, PyAny>> {
    let s = enumerate::search_min_f(n, Mode::Floating).map_err(err)?;
    let report = serde_json::json!({
        "n": s.n,
        "classes": s.classes,
        "min_f": s.min_f,
        "argmin": s.argmin.bitstring(),
        "unique": s.unique,
        "is_star_plus": s.is_star_plus(),
        "ties": s.ties.iter().map(CanonicalForm::bitstring).collect::<Vec<_>>(),
    });
    to_python(py, &report)
}

#[pyfunction]
fn check_ashraf(g: PyRef<'_, PyGraph>, k: usize) -> PyResult<&'static str> {
    sums::check_ashraf(&g.inner, k).map(verdict).map_err(err)
}

#[pyfunction]
fn check_brouwer(g: PyRef<'_, PyGraph>, k: usize) -> PyResult<&'static str> {
    sums::check_brouwer(&g.inner, k).map(verdict).map_err(err)
}

#[pyfunction]
fn interlacing_check(g: PyRef<'_, PyGraph>, u: usize, v: usize) -> PyResult<&'static str> {
    sums::interlacing_check(&g.inner, u, v).map(verdict).map_err(err)
}

/// `(premise, conclusion)` verdicts.
#[pyfunction]
fn edge_insertion_bound_check(
    g: PyRef<'_, PyGraph>,
    u: usize,
    v: usize,
    k: usize,
) -> PyResult<(&'static str, &'static str)> {
    let imp = sums::edge_insertion_bound_check(&g.inner, u, v, k).map_err(err)?;
    Ok((verdict(imp.premise), verdict(imp.conclusion)))
}

#[pyfunction]
fn trace_identity_check(g: PyRef<'_, PyGraph>) -> bool {
    sums::trace_identity_check(&g.inner)
}

fn matrix(rows: Vec<Vec<i64>>) -> PyResult<RationalMatrix> {
    RationalMatrix::from_i64_rows(&rows).map_err(err)
}

#[pyfunction]
fn fan_check(a: Vec<Vec<i64>>, b: Vec<Vec<i64>>, k: usize) -> PyResult<&'static str> {
    sums::fan_check(&matrix(a)?, &matrix(b)?, k).map(verdict).map_err(err)
}

/// Entries of the `k`-th additive compound as rational strings.
#[pyfunction]
fn additive_compound(m: Vec<Vec<i64>>, k: usize) -> PyResult<Vec<Vec<String>>> {
    let c = matrix(m)?.additive_compound(k).map_err(err)?;
    Ok((0..c.order())
        .map(|i| (0..c.order()).map(|j| c.get(i, j).to_string()).collect())
        .collect())
}

/// An H-join read from `{host, parts: [{n, r, edges}]}` JSON.
#[pyclass(name = "HJoinSpec", frozen, skip_from_py_object)]
struct PyHJoinSpec {
    inner: HJoinSpec,
}

#[pymethods]
impl PyHJoinSpec {
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        HJoinSpec::from_json(text).map(|inner| PyHJoinSpec { inner }).map_err(err)
    }

    fn to_json(&self) -> String {
        self.inner.to_json()
    }

    #[getter]
    fn order(&self) -> usize {
        self.inner.order()
    }

    fn materialize(&self) -> PyResult<PyGraph> {
        self.inner.materialize().map(|inner| PyGraph { inner }).map_err(err)
    }

    fn quotient(&self) -> Vec<Vec<String>> {
        let m = self.inner.quotient_matrix().matrix;
        (0..m.order())
            .map(|i| (0..m.order()).map(|j| m.get(i, j).to_string()).collect())
            .collect()
    }

    /// Assembled from the parts, constant term first.
    fn char_poly(&self) -> PyResult<Vec<BigInt>> {
        self.inner.char_poly().map(|p| p.coeffs().to_vec()).map_err(err)
    }

    /// Compares against the materialized graph (order <= 24).
    fn verify(&self) -> PyResult<bool> {
        verify_factorization(&self.inner).map(|r| r.ok).map_err(err)
    }
}

fn family(id: &str, params: BTreeMap<String, i64>) -> PyResult<(FamilyId, Params)> {
    let id: FamilyId = id.parse().map_err(err)?;
    let params = params.into_iter().fold(Params::default(), |p, (k, v)| p.with(&k, v));
    Ok((id, params))
}

/// The materialized member of a registry family.
#[pyfunction]
fn family_graph(id: &str, params: BTreeMap<String, i64>) -> PyResult<PyGraph> {
    let (id, params) = family(id, params)?;
    let inst = families::build(Registry::builtin(), id, &params).map_err(err)?;
    Ok(PyGraph { inner: inst.graph })
}

/// Checks a family member against its tabulated polynomial.
#[pyfunction]
fn verify_family<'py>(py: Python<'py>, id: &str, params: BTreeMap<String, i64>) -> PyResult<Bound<'py, PyAny>> {
    let (id, params) = family(id, params)?;
    let inst = families::build(Registry::builtin(), id, &params).map_err(err)?;
    let report = families::verify_instance(&inst);
    let ok = report.ok();
    let mut value = serde_json::to_value(&report).map_err(|e| PyValueError::new_err(e.to_string()))?;
    value["ok"] = ok.into();
    to_python(py, &value)
}

#[pyfunction]
fn family_ids() -> Vec<String> {
    Registry::builtin().ids().iter().map(ToString::to_string).collect()
}

#[pyfunction]
fn sn_plus_bounds<'py>(py: Python<'py>, n: i64) -> PyResult<Bound<'py, PyAny>> {
    let b = families::sn_plus_bounds(n).map_err(err)?;
    to_python(py, &b)
}

#[pyfunction]
fn g2_sign_evaluations<'py>(py: Python<'py>, t: i64) -> PyResult<Bound<'py, PyAny>> {
    let r = families::g2_sign_evaluations(t).map_err(err)?;
    to_python(py, &r)
}

#[pyfunction]
fn monotonicity_scan<'py>(py: Python<'py>, chain: &str, max: i64) -> PyResult<Bound<'py, PyAny>> {
    let chain: Chain = chain.parse().map_err(err)?;
    let r = families::monotonicity_scan(chain, max).map_err(err)?;
    to_python(py, &r)
}

#[pymodule]
fn qspectra(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyGraph>()?;
    m.add_class::<PyInterval>()?;
    m.add_class::<PyHJoinSpec>()?;
    m.add_function(wrap_pyfunction!(connected_graphs, m)?)?;
    m.add_function(wrap_pyfunction!(trees, m)?)?;
    m.add_function(wrap_pyfunction!(labeled_class_count, m)?)?;
    m.add_function(wrap_pyfunction!(search_min_f, m)?)?;
    m.add_function(wrap_pyfunction!(check_ashraf, m)?)?;
    m.add_function(wrap_pyfunction!(check_brouwer, m)?)?;
    m.add_function(wrap_pyfunction!(interlacing_check, m)?)?;
    m.add_function(wrap_pyfunction!(edge_insertion_bound_check, m)?)?;
    m.add_function(wrap_pyfunction!(trace_identity_check, m)?)?;
    m.add_function(wrap_pyfunction!(fan_check, m)?)?;
    m.add_function(wrap_pyfunction!(additive_compound, m)?)?;
    m.add_function(wrap_pyfunction!(family_graph, m)?)?;
    m.add_function(wrap_pyfunction!(verify_family, m)?)?;
    m.add_function(wrap_pyfunction!(family_ids, m)?)?;
    m.add_function(wrap_pyfunction!(sn_plus_bounds, m)?)?;
    m.add_function(wrap_pyfunction!(g2_sign_evaluations, m)?)?;
    m.add_function(wrap_pyfunction!(monotonicity_scan, m)?)?;
    Ok(())
}
