use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

use raag_spine as core;
use raag_spine::partitions::EnumerateOptions;

fn err(e: core::Error) -> PyErr {
    match e {
        core::Error::BudgetExceeded(_) | core::Error::TieAtBound(_) | core::Error::Undecided(_) => {
            PyRuntimeError::new_err(e.to_string())
        }
        _ => PyValueError::new_err(e.to_string()),
    }
}

#[pyclass(name = "Graph", frozen, skip_from_py_object)]
#[derive(Clone)]
struct Graph {
    inner: core::DefiningGraph,
}

#[pymethods]
impl Graph {
    /// Build from vertex names and edges given as name pairs.
    #[new]
    fn new(names: Vec<String>, edges: Vec<(String, String)>) -> PyResult<Self> {
        let idx = |n: &str| names.iter().position(|m| m == n).ok_or_else(|| PyValueError::new_err(format!("unknown vertex `{n}`")));
        let es = edges.iter().map(|(u, v)| Ok((idx(u)?, idx(v)?))).collect::<PyResult<Vec<_>>>()?;
        Ok(Graph { inner: core::DefiningGraph::new(names.clone(), &es).map_err(err)? })
    }

    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        Ok(Graph { inner: core::DefiningGraph::parse(text).map_err(err)? })
    }

    fn to_text(&self) -> String {
        self.inner.to_text()
    }

    fn names(&self) -> Vec<String> {
        self.inner.names().to_vec()
    }

    fn principal(&self) -> Vec<String> {
        let rep = self.inner.order_report();
        rep.principal.iter().map(|&v| self.inner.name(v).to_string()).collect()
    }

    fn maximal(&self) -> Vec<String> {
        let rep = self.inner.order_report();
        rep.maximal.iter().map(|&v| self.inner.name(v).to_string()).collect()
    }

    #[pyo3(signature = (base, symmetric=false))]
    fn partitions(&self, base: &str, symmetric: bool) -> PyResult<Vec<Partition>> {
        let b = self.inner.vertex(base).map_err(err)?;
        let opts = EnumerateOptions { symmetric_only: symmetric, ..Default::default() };
        Ok(core::partitions::enumerate_partitions(&self.inner, b, opts)
            .into_iter()
            .map(|p| Partition { graph: self.inner.clone(), inner: p })
            .collect())
    }

    fn __repr__(&self) -> String {
        format!("Graph({:?}, {} edges)", self.inner.names(), self.inner.edge_count())
    }
}

#[pyclass(name = "Partition", frozen, skip_from_py_object)]
#[derive(Clone)]
struct Partition {
    graph: core::DefiningGraph,
    inner: core::WhiteheadPartition,
}

#[pymethods]
impl Partition {
    #[staticmethod]
    fn parse(graph: &Graph, text: &str) -> PyResult<Self> {
        let p = core::WhiteheadPartition::parse(&graph.inner, text).map_err(err)?;
        Ok(Partition { graph: graph.inner.clone(), inner: p })
    }

    fn is_symmetric(&self) -> bool {
        self.inner.is_symmetric()
    }

    fn base(&self) -> String {
        self.graph.name(self.inner.base()).to_string()
    }

    fn compatible(&self, other: &Partition) -> bool {
        core::partitions::compatible(&self.graph, &self.inner, &other.inner)
    }

    fn adjacent(&self, other: &Partition) -> bool {
        core::partitions::adjacent(&self.graph, &self.inner, &other.inner)
    }

    fn __str__(&self) -> String {
        self.inner.to_text(&self.graph)
    }

    fn __repr__(&self) -> String {
        format!("Partition({})", self.inner.to_text(&self.graph))
    }

    fn __eq__(&self, other: &Partition) -> bool {
        self.inner == other.inner
    }
}

#[pyclass(name = "Automorphism", frozen, skip_from_py_object)]
#[derive(Clone)]
struct Automorphism {
    graph: core::DefiningGraph,
    inner: core::RaagAutomorphism,
}

#[pymethods]
impl Automorphism {
    #[staticmethod]
    fn identity(graph: &Graph) -> Self {
        Automorphism { graph: graph.inner.clone(), inner: core::RaagAutomorphism::identity(&graph.inner) }
    }

    /// Parse the automorphism file format (`v -> word` lines, optional `move:` lines).
    #[staticmethod]
    fn parse(graph: &Graph, text: &str) -> PyResult<Self> {
        let a = core::RaagAutomorphism::parse(&graph.inner, text).map_err(err)?;
        Ok(Automorphism { graph: graph.inner.clone(), inner: a })
    }

    /// The automorphism of a Whitehead pair written as `( … | … | … ) x`.
    #[staticmethod]
    fn whitehead(graph: &Graph, pair: &str) -> PyResult<Self> {
        let p = core::WhiteheadPair::parse(&graph.inner, pair).map_err(err)?;
        Ok(Automorphism { graph: graph.inner.clone(), inner: core::autos::whitehead_auto(&graph.inner, &p) })
    }

    fn compose(&self, other: &Automorphism) -> Self {
        Automorphism { graph: self.graph.clone(), inner: self.inner.compose(&self.graph, &other.inner) }
    }

    fn invert(&self) -> Self {
        Automorphism { graph: self.graph.clone(), inner: self.inner.invert(&self.graph) }
    }

    fn apply(&self, word: &str) -> PyResult<String> {
        let w = core::Word::parse(&self.graph, word).map_err(err)?;
        Ok(self.inner.apply(&self.graph, &w).to_text(&self.graph))
    }

    fn is_identity(&self) -> bool {
        self.inner.is_identity()
    }

    fn is_symmetric(&self) -> bool {
        self.inner.is_symmetric(&self.graph)
    }

    /// Whether the two automorphisms agree up to an inner automorphism.
    fn outer_equal(&self, other: &Automorphism) -> bool {
        core::autos::outer_equal(&self.graph, &self.inner, &other.inner).is_some()
    }

    fn to_text(&self) -> String {
        self.inner.to_text(&self.graph)
    }

    fn __str__(&self) -> String {
        self.inner.images_text(&self.graph)
    }
}

/// `{"m_all", "m_principal", "m_sym_all", "m_sym_principal", "vcd"}`.
#[pyfunction]
#[pyo3(signature = (graph, budget=core::spine::DEFAULT_BUDGET))]
fn ranks(graph: &Graph, budget: u64) -> PyResult<std::collections::BTreeMap<&'static str, usize>> {
    let r = core::spine::rank_report(&graph.inner, budget).map_err(err)?;
    Ok([
        ("m_all", r.m_all),
        ("m_principal", r.m_principal),
        ("m_sym_all", r.m_sym_all),
        ("m_sym_principal", r.m_sym_principal),
        ("vcd", r.vcd()),
    ]
    .into_iter()
    .collect())
}

#[pyfunction]
#[pyo3(signature = (graph, budget=core::spine::DEFAULT_BUDGET))]
fn vcd(graph: &Graph, budget: u64) -> PyResult<usize> {
    core::spine::vcd_symout(&graph.inner, budget).map_err(err)
}

/// Pair texts of a certified commuting generator set.
#[pyfunction]
#[pyo3(signature = (graph, budget=core::spine::DEFAULT_BUDGET))]
fn abelian_generators(graph: &Graph, budget: u64) -> PyResult<Vec<String>> {
    let gens = core::spine::abelian_generators(&graph.inner, budget).map_err(err)?;
    Ok(gens.iter().map(|p| p.to_text(&graph.inner)).collect())
}

/// Minimize a marking against the classes in `classes` (one word per line).
/// Returns the final automorphism and the wEntry after each step.
#[pyfunction]
#[pyo3(signature = (auto, classes, tail_bound=core::norms::DEFAULT_TAIL_BOUND))]
fn minimize(auto: &Automorphism, classes: &str, tail_bound: usize) -> PyResult<(Automorphism, Vec<usize>)> {
    let g = &auto.graph;
    let w = core::norms::parse_classes(g, classes).map_err(err)?;
    let ctx = core::NormContext::new(g, w, tail_bound);
    let sigma = core::MarkedSalvetti::new(g, auto.inner.clone());
    let (fin, steps) = core::norms::minimize(g, &sigma, &ctx).map_err(err)?;
    let trace = steps.iter().map(|s| s.prefix.w_entry).collect();
    Ok((Automorphism { graph: g.clone(), inner: fin.marking().clone() }, trace))
}

/// Explore from the identity marking; returns `(nodes, edges, dot)`.
#[pyfunction]
#[pyo3(signature = (graph, depth, symmetric=false, budget=core::spine::DEFAULT_BUDGET))]
fn explore(graph: &Graph, depth: usize, symmetric: bool, budget: u64) -> PyResult<(usize, usize, String)> {
    let g = &graph.inner;
    let m = core::spine::local_explore(g, &core::MarkedSalvetti::identity(g), depth, symmetric, budget).map_err(err)?;
    Ok((m.nodes.len(), m.edges.len(), m.to_dot(g)))
}

#[pymodule]
fn raagspine(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Graph>()?;
    m.add_class::<Partition>()?;
    m.add_class::<Automorphism>()?;
    m.add_function(wrap_pyfunction!(ranks, m)?)?;
    m.add_function(wrap_pyfunction!(vcd, m)?)?;
    m.add_function(wrap_pyfunction!(abelian_generators, m)?)?;
    m.add_function(wrap_pyfunction!(minimize, m)?)?;
    m.add_function(wrap_pyfunction!(explore, m)?)?;
    Ok(())
}
