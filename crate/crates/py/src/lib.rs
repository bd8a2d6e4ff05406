//! Python bindings: `import fqw`.
//!
//! Validation failures raise `ValueError`; broken internal invariants raise
//! `RuntimeError`. Complex vectors cross the boundary as lists of `complex`.

use num_complex::Complex64;
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;

use fqw_core::cli::parse::{parse_coin, parse_omega};
use fqw_core::dynamics::{evolve_with, EvolveOptions, Strategy};
use fqw_core::forest_oracle::{gram_inverse_combinatorial, iota_table, pointed_dual};
use fqw_core::stationary::{luminous_faces, RESONANCE_TOL};
use fqw_core::{
    blow_up, builtin, detect_embedding, dual_graph, parse_rotation_graph, scattering_matrix, stationary_state,
    trace_faces, DMatrix, Error, RotationTailedGraph, StationaryMethod,
};

fn to_py(e: Error) -> PyErr {
    if e.is_internal() {
        PyRuntimeError::new_err(e.to_string())
    } else {
        PyValueError::new_err(e.to_string())
    }
}

fn method_from_name(name: &str) -> PyResult<StationaryMethod> {
    match name {
        "gram" => Ok(StationaryMethod::Gram),
        "project" => Ok(StationaryMethod::Project),
        _ => Err(PyValueError::new_err(format!("method must be 'gram' or 'project', got {name:?}"))),
    }
}

fn strategy_from_name(name: &str) -> PyResult<Strategy> {
    match name {
        "stepwise" => Ok(Strategy::Stepwise),
        "doubling" => Ok(Strategy::Doubling),
        _ => Err(PyValueError::new_err(format!(
            "strategy must be 'stepwise' or 'doubling', got {name:?}"
        ))),
    }
}

/// A rotation graph with tails.
#[pyclass(module = "fqw", frozen)]
struct Graph {
    inner: RotationTailedGraph,
}

#[pymethods]
impl Graph {
    /// Parses the line format `vertex <id> : <n1> <n2> ...` with `*` for a tail.
    #[new]
    fn new(text: &str) -> PyResult<Self> {
        Ok(Self {
            inner: parse_rotation_graph(text).map_err(to_py)?,
        })
    }

    #[staticmethod]
    fn builtin(name: &str) -> PyResult<Self> {
        Ok(Self {
            inner: builtin(name).map_err(to_py)?,
        })
    }

    #[staticmethod]
    fn builtin_names() -> Vec<&'static str> {
        fqw_core::builtin::builtin_names()
    }

    #[getter]
    fn vertex_count(&self) -> usize {
        self.inner.vertex_count()
    }

    #[getter]
    fn edge_count(&self) -> usize {
        self.inner.edge_count()
    }

    #[getter]
    fn labels(&self) -> Vec<String> {
        self.inner.labels().to_vec()
    }

    /// Labels of the tailed vertices, in boundary order.
    #[getter]
    fn boundary(&self) -> Vec<String> {
        self.inner.boundary().iter().map(|&v| self.inner.label(v).to_string()).collect()
    }

    fn to_text(&self) -> String {
        self.inner.to_text()
    }

    fn __repr__(&self) -> String {
        format!(
            "Graph({} vertices, {} edges, {} tails)",
            self.inner.vertex_count(),
            self.inner.edge_count(),
            self.inner.boundary().len()
        )
    }
}

/// The 2x2 unitary coin.
#[pyclass(module = "fqw", frozen)]
struct Coin {
    inner: fqw_core::Coin,
}

#[pymethods]
impl Coin {
    #[new]
    #[pyo3(signature = (d, omega = Complex64::new(1.0, 0.0), phi = 0.0))]
    fn new(d: f64, omega: Complex64, phi: f64) -> PyResult<Self> {
        let inner = fqw_core::Coin::new(d, omega, phi).map_err(|e| to_py(e.into()))?;
        Ok(Self { inner })
    }

    #[staticmethod]
    fn from_matrix(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> PyResult<Self> {
        let inner = fqw_core::Coin::from_matrix(a, b, c, d).map_err(|e| to_py(e.into()))?;
        Ok(Self { inner })
    }

    /// Parses `d=<real>,omega=<omega>,phi=<real>` as accepted by the command line.
    #[staticmethod]
    fn parse(spec: &str) -> PyResult<Self> {
        Ok(Self {
            inner: parse_coin(spec).map_err(to_py)?,
        })
    }

    /// Parses `exp(i*pi*p/q)`, `<x>deg` or a complex literal.
    #[staticmethod]
    fn omega_from(text: &str) -> PyResult<Complex64> {
        parse_omega(text).map_err(to_py)
    }

    #[getter]
    fn a(&self) -> Complex64 {
        self.inner.a()
    }

    #[getter]
    fn b(&self) -> Complex64 {
        self.inner.b()
    }

    #[getter]
    fn c(&self) -> Complex64 {
        self.inner.c()
    }

    #[getter]
    fn d(&self) -> Complex64 {
        self.inner.d()
    }

    #[getter]
    fn omega(&self) -> Complex64 {
        self.inner.omega()
    }

    fn matrix(&self) -> Vec<Vec<Complex64>> {
        self.inner.matrix().iter().map(|r| r.to_vec()).collect()
    }
}

fn inflow_or_ones(graph: &Graph, inflow: Option<Vec<Complex64>>) -> Vec<Complex64> {
    inflow.unwrap_or_else(|| vec![Complex64::new(1.0, 0.0); graph.inner.boundary().len()])
}

/// Facial walks as dicts with `kind`, `length`, `walk` (origin labels) and `gaps`.
#[pyfunction]
fn faces<'py>(py: Python<'py>, graph: &Graph) -> PyResult<Vec<Bound<'py, PyDict>>> {
    let g = &graph.inner;
    trace_faces(g)
        .iter()
        .map(|f| {
            let d = PyDict::new(py);
            d.set_item("kind", if f.is_external() { "external" } else { "internal" })?;
            d.set_item("length", f.len())?;
            let walk: Vec<&str> = f.arcs().iter().map(|&a| g.label(g.arc(a).from)).collect();
            d.set_item("walk", walk)?;
            d.set_item("gaps", if f.is_external() { f.gaps() } else { Vec::new() })?;
            Ok(d)
        })
        .collect()
}

#[pyfunction]
fn genus(graph: &Graph) -> PyResult<usize> {
    fqw_core::genus(&graph.inner).map_err(to_py)
}

/// Scattering blocks as `(quay labels, rows)` pairs, one per external face.
#[pyfunction]
fn scattering(graph: &Graph, coin: &Coin) -> PyResult<Vec<(Vec<String>, Vec<Vec<Complex64>>)>> {
    let g = &graph.inner;
    let bu = blow_up(g);
    let s = scattering_matrix(&bu, &trace_faces(g), &coin.inner).map_err(to_py)?;
    Ok(s.blocks()
        .iter()
        .map(|b| {
            let labels = b.quays.iter().map(|&k| g.label(g.boundary()[k]).to_string()).collect();
            let rows = (0..b.matrix.nrows())
                .map(|i| (0..b.matrix.ncols()).map(|j| b.matrix[(i, j)]).collect())
                .collect();
            (labels, rows)
        })
        .collect())
}

/// Labels of the boundary vertices reached by a unit inflow at `source`.
#[pyfunction]
fn detect(graph: &Graph, coin: &Coin, source: &str) -> PyResult<Vec<String>> {
    let g = &graph.inner;
    let v = g
        .vertex_by_label(source)
        .ok_or_else(|| PyValueError::new_err(format!("no vertex labelled {source:?}")))?;
    let bu = blow_up(g);
    let support = detect_embedding(&bu, &trace_faces(g), &coin.inner, v).map_err(to_py)?;
    Ok(support.iter().map(|&u| g.label(u).to_string()).collect())
}

/// Stationary state with keys `psi`, `outflow`, `coefficients`, `luminous`
/// and `orthogonality_residual`. The inflow defaults to all ones.
#[pyfunction]
#[pyo3(signature = (graph, coin, inflow = None, method = "project"))]
fn stationary<'py>(
    py: Python<'py>,
    graph: &Graph,
    coin: &Coin,
    inflow: Option<Vec<Complex64>>,
    method: &str,
) -> PyResult<Bound<'py, PyDict>> {
    let method = method_from_name(method)?;
    let alpha = inflow_or_ones(graph, inflow);
    let bu = blow_up(&graph.inner);
    let faces = trace_faces(&graph.inner);
    let dec = stationary_state(&bu, &faces, &coin.inner, &alpha, method).map_err(to_py)?;
    let d = PyDict::new(py);
    d.set_item("psi", dec.psi.clone())?;
    d.set_item("outflow", dec.outflow.clone())?;
    d.set_item("coefficients", dec.coefficients.clone())?;
    d.set_item("luminous", luminous_faces(&dec, RESONANCE_TOL))?;
    d.set_item("orthogonality_residual", dec.orthogonality_residual())?;
    Ok(d)
}

/// Iterates from the empty state; keys `psi`, `outflow`, `steps`, `converged`.
#[pyfunction]
#[pyo3(signature = (graph, coin, inflow = None, tol = 1e-10, max_steps = 100_000, strategy = "stepwise"))]
fn evolve<'py>(
    py: Python<'py>,
    graph: &Graph,
    coin: &Coin,
    inflow: Option<Vec<Complex64>>,
    tol: f64,
    max_steps: u64,
    strategy: &str,
) -> PyResult<Bound<'py, PyDict>> {
    let opts = EvolveOptions {
        tol,
        max_steps,
        strategy: strategy_from_name(strategy)?,
        record_history: false,
    };
    let alpha = inflow_or_ones(graph, inflow);
    let bu = blow_up(&graph.inner);
    let run = evolve_with(&bu, &coin.inner, &alpha, &opts).map_err(to_py)?;
    let d = PyDict::new(py);
    d.set_item("psi", run.state.internal)?;
    d.set_item("outflow", run.state.outflow)?;
    d.set_item("steps", run.steps)?;
    d.set_item("converged", run.converged)?;
    Ok(d)
}

/// Spanning-subgraph weights: keys `faces` (internal face indices), `iota1`,
/// `iota2` and `inverse` (the combinatorial inverse Gram matrix).
#[pyfunction]
fn oracle<'py>(py: Python<'py>, graph: &Graph, coin: &Coin) -> PyResult<Bound<'py, PyDict>> {
    let g = &graph.inner;
    let dual = dual_graph(g, &trace_faces(g));
    let pd = pointed_dual(&dual, &coin.inner).map_err(to_py)?;
    let table = iota_table(&pd).map_err(to_py)?;
    let inverse = gram_inverse_combinatorial(&pd).map_err(to_py)?;
    let rows = |m: &DMatrix<f64>| -> Vec<Vec<f64>> {
        (0..m.nrows()).map(|i| (0..m.ncols()).map(|j| m[(i, j)]).collect()).collect()
    };
    let d = PyDict::new(py);
    d.set_item("faces", (0..pd.sink()).map(|v| pd.face(v)).collect::<Vec<_>>())?;
    d.set_item("iota1", table.rooted)?;
    d.set_item("iota2", rows(&table.paired))?;
    d.set_item("inverse", rows(&inverse))?;
    Ok(d)
}

#[pymodule]
fn fqw(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Graph>()?;
    m.add_class::<Coin>()?;
    m.add_function(wrap_pyfunction!(faces, m)?)?;
    m.add_function(wrap_pyfunction!(genus, m)?)?;
    m.add_function(wrap_pyfunction!(scattering, m)?)?;
    m.add_function(wrap_pyfunction!(detect, m)?)?;
    m.add_function(wrap_pyfunction!(stationary, m)?)?;
    m.add_function(wrap_pyfunction!(evolve, m)?)?;
    m.add_function(wrap_pyfunction!(oracle, m)?)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_map_to_routes() {
        assert_eq!(method_from_name("gram").unwrap(), StationaryMethod::Gram);
        assert_eq!(strategy_from_name("doubling").unwrap(), Strategy::Doubling);
    }
}
