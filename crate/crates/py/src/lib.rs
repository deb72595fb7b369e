use pyo3::create_exception;
use pyo3::exceptions::PyException;
use pyo3::prelude::*;
use pyo3::types::PyDict;

use iim_core::enumerate::{default_workers, sample_iim, RunConfig, Source};
use iim_core::hamilton::{build_cycle_from_partition, find_ham_partition};
use iim_core::induced::{InducedOutcome, InducedRoute};
use iim_core::io::{parse_edge_list, to_dot, write_edge_list, GenealogyDocument};
use iim_core::verify::{run_theorem, TheoremId, VerifyRequest};
use iim_core::{CopyKind, IimError};

create_exception!(iim, GraphError, PyException, "Raised for invalid input or exceeded solver limits.");

fn err(e: IimError) -> PyErr {
    GraphError::new_err(e.to_string())
}

/// Simple undirected graph on vertices `0..n`.
#[pyclass(name = "Graph", module = "iim", eq, frozen, skip_from_py_object)]
#[derive(Clone, PartialEq)]
struct PyGraph(iim_core::Graph);

#[pymethods]
impl PyGraph {
    #[new]
    #[pyo3(signature = (n, edges = Vec::new()))]
    fn new(n: usize, edges: Vec<(usize, usize)>) -> PyResult<Self> {
        iim_core::Graph::new(n, &edges).map(Self).map_err(err)
    }

    #[staticmethod]
    fn complete(n: usize) -> Self {
        Self(iim_core::Graph::complete(n))
    }

    #[staticmethod]
    fn path(n: usize) -> Self {
        Self(iim_core::Graph::path(n))
    }

    #[staticmethod]
    fn cycle(n: usize) -> Self {
        Self(iim_core::Graph::cycle(n))
    }

    #[staticmethod]
    fn empty(n: usize) -> Self {
        Self(iim_core::Graph::empty(n))
    }

    /// Built-in seed such as `K3`, `P4`, `C5`, `2K1` or `K2uK2uK1`.
    #[staticmethod]
    fn named(name: &str) -> PyResult<Self> {
        iim_core::seeds::named_seed(name).map(Self).map_err(err)
    }

    #[staticmethod]
    fn from_edge_list(text: &str) -> PyResult<Self> {
        parse_edge_list(text).map(Self).map_err(err)
    }

    fn to_edge_list(&self) -> String {
        write_edge_list(&self.0)
    }

    fn to_dot(&self) -> String {
        to_dot(&self.0, None)
    }

    #[getter]
    fn n(&self) -> usize {
        self.0.n()
    }

    #[getter]
    fn edge_count(&self) -> usize {
        self.0.edge_count()
    }

    fn edges(&self) -> Vec<(usize, usize)> {
        self.0.edges().collect()
    }

    fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.0.n() && v < self.0.n() && self.0.has_edge(u, v)
    }

    fn degree(&self, v: usize) -> PyResult<usize> {
        self.check(v)?;
        Ok(self.0.degree(v))
    }

    fn neighbors(&self, v: usize) -> PyResult<Vec<usize>> {
        self.check(v)?;
        Ok(self.0.neighbors(v).to_vec())
    }

    fn is_connected(&self) -> bool {
        self.0.is_connected()
    }

    fn isolated_vertices(&self) -> Vec<usize> {
        self.0.isolated_vertices().to_vec()
    }

    fn __len__(&self) -> usize {
        self.0.n()
    }

    fn __repr__(&self) -> String {
        format!("Graph(n={}, m={})", self.0.n(), self.0.edge_count())
    }
}

impl PyGraph {
    fn check(&self, v: usize) -> PyResult<()> {
        if v < self.0.n() {
            Ok(())
        } else {
            Err(err(IimError::VertexOutOfRange { vertex: v, n: self.0.n() }))
        }
    }
}

/// A grown graph together with its level structure and genealogy.
#[pyclass(name = "IimGraph", module = "iim", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyIimGraph(iim_core::IimGraph);

#[pymethods]
impl PyIimGraph {
    /// Grows `seed` by a choice string such as `L1=0x1;L2=0x2`.
    #[staticmethod]
    fn generate(seed: &PyGraph, choices: &str) -> PyResult<Self> {
        let seq = iim_core::ChoiceSequence::parse(choices, seed.0.n()).map_err(err)?;
        iim_core::iim_generate(&seed.0, &seq).map(Self).map_err(err)
    }

    /// Seeded random growth; each vertex is cloned with probability `p`.
    #[staticmethod]
    #[pyo3(signature = (seed, steps, p, rng))]
    fn sample(seed: &PyGraph, steps: usize, p: f64, rng: u64) -> PyResult<Self> {
        sample_iim(&seed.0, steps, p, rng).map(|(_, h)| Self(h)).map_err(err)
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        GenealogyDocument::from_json(text)
            .and_then(|d| d.to_iim())
            .map(Self)
            .map_err(err)
    }

    fn to_json(&self) -> String {
        GenealogyDocument::from_iim(&self.0).to_json()
    }

    fn to_dot(&self) -> String {
        to_dot(self.0.graph(), Some(&self.0))
    }

    #[getter]
    fn graph(&self) -> PyGraph {
        PyGraph(self.0.graph().clone())
    }

    #[getter]
    fn n(&self) -> usize {
        self.0.n()
    }

    #[getter]
    fn n0(&self) -> usize {
        self.0.n0()
    }

    #[getter]
    fn top_level(&self) -> usize {
        self.0.top_level()
    }

    #[getter]
    fn choices(&self) -> String {
        self.0.choices().to_string()
    }

    fn level_of(&self, v: usize) -> PyResult<usize> {
        self.check(v)?;
        Ok(self.0.level_of(v))
    }

    /// `"original"`, `"clone"` or `"anticlone"`.
    fn kind(&self, v: usize) -> PyResult<&'static str> {
        self.check(v)?;
        Ok(match self.0.kind(v) {
            CopyKind::Original => "original",
            CopyKind::Clone => "clone",
            CopyKind::Anticlone => "anticlone",
        })
    }

    fn precopy(&self, v: usize) -> PyResult<Option<usize>> {
        self.check(v)?;
        Ok(self.0.precopy(v))
    }

    fn copy_at_level(&self, v: usize, level: usize) -> Option<usize> {
        self.0.copy_at_level(v, level)
    }

    fn lineage(&self, v: usize) -> PyResult<Vec<usize>> {
        self.check(v)?;
        Ok(self.0.lineage(v))
    }

    fn __len__(&self) -> usize {
        self.0.n()
    }

    fn __repr__(&self) -> String {
        format!("IimGraph(n0={}, choices='{}')", self.0.n0(), self.0.choices())
    }
}

impl PyIimGraph {
    fn check(&self, v: usize) -> PyResult<()> {
        if v < self.0.n() {
            Ok(())
        } else {
            Err(err(IimError::VertexOutOfRange { vertex: v, n: self.0.n() }))
        }
    }
}

/// Normalized-Laplacian eigenvalues in ascending order.
#[pyfunction]
fn spectrum(g: &PyGraph) -> PyResult<Vec<f64>> {
    iim_core::spectral::normalized_laplacian_spectrum(&g.0)
        .map(|s| s.eigenvalues)
        .map_err(err)
}

#[pyfunction]
fn spectral_gap(g: &PyGraph) -> PyResult<f64> {
    iim_core::spectral::spectral_gap(&g.0).map_err(err)
}

/// `None` for disconnected graphs.
#[pyfunction]
fn diameter(g: &PyGraph) -> Option<usize> {
    iim_core::distance::diameter(&g.0).finite()
}

/// `(size, vertices)` of a minimum dominating set.
#[pyfunction]
fn domination_number(g: &PyGraph) -> PyResult<(usize, Vec<usize>)> {
    iim_core::domination::domination_number(&g.0)
        .map(|r| (r.size, r.set.to_vec()))
        .map_err(err)
}

/// `(size, vertices)` of a maximum clique.
#[pyfunction]
fn clique_number(g: &PyGraph) -> PyResult<(usize, Vec<usize>)> {
    iim_core::clique::clique_number(&g.0).map_err(err)
}

/// `(k, colors)` of an optimal coloring.
#[pyfunction]
fn chromatic_number(g: &PyGraph) -> PyResult<(usize, Vec<usize>)> {
    iim_core::coloring::chromatic_number(&g.0)
        .map(|(k, c)| (k, c.colors))
        .map_err(err)
}

#[pyfunction]
fn hamiltonian_cycle(g: &PyGraph) -> PyResult<Option<Vec<usize>>> {
    iim_core::hamilton::hamiltonian_cycle(&g.0).map_err(err)
}

/// Cycle built from a clone/anticlone block partition, if one is found.
#[pyfunction]
fn partition_cycle(h: &PyIimGraph) -> PyResult<Option<Vec<usize>>> {
    match find_ham_partition(&h.0).map_err(err)? {
        Some(p) => build_cycle_from_partition(&h.0, &p).map(Some).map_err(err),
        None => Ok(None),
    }
}

/// Host vertices for pattern vertices `0..k`, or `None`.
#[pyfunction]
fn contains_induced(host: &PyGraph, pattern: &PyGraph) -> PyResult<Option<Vec<usize>>> {
    iim_core::induced::contains_induced(&host.0, &pattern.0)
        .map(|e| e.map(|e| e.map))
        .map_err(err)
}

/// Runs the parity procedure; returns a dict with `status` set to `embedded`
/// (plus `map` and `route`) or `progress` (plus the blocked pair).
#[pyfunction]
fn find_induced<'py>(py: Python<'py>, h: &PyIimGraph, pattern: &PyGraph) -> PyResult<Bound<'py, PyDict>> {
    let out = PyDict::new(py);
    match iim_core::induced::find_induced_via_parity(&h.0, &pattern.0).map_err(err)? {
        InducedOutcome::Embedded { embedding, route } => {
            out.set_item("status", "embedded")?;
            out.set_item("map", embedding.map)?;
            let route = match route {
                InducedRoute::Parity => "parity",
                InducedRoute::Ladder { .. } => "ladder",
            };
            out.set_item("route", route)?;
        }
        InducedOutcome::Progress(state) => {
            out.set_item("status", "progress")?;
            out.set_item("removed", state.removed)?;
            out.set_item("blocked_edge", state.blocked.edge)?;
            out.set_item("representatives", state.blocked.representatives)?;
            out.set_item("odd_levels", state.blocked.odd_levels.to_vec())?;
        }
    }
    Ok(out)
}

/// Runs one theorem check and returns the report as a dict. Sampling is
/// used when `samples` is given, and then `rng` is required.
#[pyfunction]
#[pyo3(signature = (theorem, seed, steps, samples = None, p = 0.5, rng = None, workers = None))]
#[allow(clippy::too_many_arguments)]
fn verify<'py>(
    py: Python<'py>,
    theorem: &str,
    seed: &PyGraph,
    steps: usize,
    samples: Option<u64>,
    p: f64,
    rng: Option<u64>,
    workers: Option<usize>,
) -> PyResult<Bound<'py, PyAny>> {
    let id: TheoremId = theorem.parse().map_err(err)?;
    let source = match (samples, rng) {
        (None, _) => Source::Exhaustive,
        (Some(samples), Some(seed)) => Source::Sampled { p, seed, samples },
        (Some(_), None) => return Err(GraphError::new_err("sampled verification needs rng")),
    };
    let mut req = VerifyRequest::new(seed.0.clone(), steps);
    req.source = source;
    req.mixing_rng = rng.unwrap_or(0);
    req.cfg = RunConfig {
        workers: workers.unwrap_or_else(default_workers).max(1),
        ..RunConfig::default()
    };
    let report = py.detach(|| run_theorem(id, &req)).map_err(err)?;
    py.import("json")?.call_method1("loads", (report.to_json(),))
}

#[pymodule]
fn iim(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    m.add("GraphError", m.py().get_type::<GraphError>())?;
    m.add_class::<PyGraph>()?;
    m.add_class::<PyIimGraph>()?;
    m.add_function(wrap_pyfunction!(spectrum, m)?)?;
    m.add_function(wrap_pyfunction!(spectral_gap, m)?)?;
    m.add_function(wrap_pyfunction!(diameter, m)?)?;
    m.add_function(wrap_pyfunction!(domination_number, m)?)?;
    m.add_function(wrap_pyfunction!(clique_number, m)?)?;
    m.add_function(wrap_pyfunction!(chromatic_number, m)?)?;
    m.add_function(wrap_pyfunction!(hamiltonian_cycle, m)?)?;
    m.add_function(wrap_pyfunction!(partition_cycle, m)?)?;
    m.add_function(wrap_pyfunction!(contains_induced, m)?)?;
    m.add_function(wrap_pyfunction!(find_induced, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    Ok(())
}
