//! Python bindings for the bounds, exact counts, graph oracles, encoder
//! tables and region sweeps.

use std::fs::File;
use std::io::{BufReader, BufWriter};
use std::time::Duration;

use num_bigint::BigUint;
use pyo3::exceptions::{PyOSError, PyRuntimeError, PyValueError};
use pyo3::prelude::*;

use stabcode_core::bounds::{self, BoundKind, LinearParams, MinRate};
use stabcode_core::codes::{self, SearchBudget, SearchStatus};
use stabcode_core::exact;
use stabcode_core::graph::{self, AdjacencyGraph};
use stabcode_core::region::{self, CellClass, SweepConfig};
use stabcode_core::Error;

fn py_err(e: Error) -> PyErr {
    match e {
        Error::Resource(_) => PyRuntimeError::new_err(e.to_string()),
        Error::Io(_) => PyOSError::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

fn kind(which: &str) -> PyResult<BoundKind> {
    which.parse().map_err(py_err)
}

#[pyfunction]
fn binary_entropy(x: f64) -> PyResult<f64> {
    bounds::binary_entropy(x).map_err(py_err)
}

#[pyfunction]
fn s_func(x: f64, p: f64) -> PyResult<f64> {
    bounds::s_func(x, p).map_err(py_err)
}

#[pyfunction]
fn f_bound(d1: f64, p: f64) -> PyResult<f64> {
    bounds::f_bound(d1, p).map_err(py_err)
}

#[pyfunction]
fn g_bound(d2: f64, rate: f64) -> PyResult<f64> {
    bounds::g_bound(d2, rate).map_err(py_err)
}

#[pyfunction]
fn psi_bound(d2: f64, rate: f64) -> PyResult<f64> {
    bounds::psi_bound(d2, rate).map_err(py_err)
}

#[pyfunction]
fn theorem1_feasible(d1: f64, d2: f64, p: f64, rate: f64) -> PyResult<bool> {
    let params = LinearParams::new(d1, d2, p, rate).map_err(py_err)?;
    Ok(bounds::theorem1_feasible(&params))
}

#[pyfunction]
fn theorem2_feasible(d1: f64, d2: f64, p: f64, rate: f64) -> PyResult<bool> {
    let params = LinearParams::new(d1, d2, p, rate).map_err(py_err)?;
    bounds::theorem2_feasible(&params).map_err(py_err)
}

/// Smallest admissible rate, or `None` when no rate up to the cap works.
#[pyfunction]
#[pyo3(signature = (d1, d2, p, which = "all"))]
fn min_rate(d1: f64, d2: f64, p: f64, which: &str) -> PyResult<Option<f64>> {
    Ok(match bounds::min_rate(d1, d2, p, kind(which)?).map_err(py_err)? {
        MinRate::Finite(r) => Some(r),
        MinRate::Unbounded => None,
    })
}

/// `(primary, [(p, falling), ...])` for the degree or clique bound.
#[pyfunction]
fn crossover(d1: f64, d2: f64, which: &str) -> PyResult<(Option<f64>, Vec<(f64, bool)>)> {
    let c = region::crossover(d1, d2, kind(which)?).map_err(py_err)?;
    Ok((c.primary, c.roots.iter().map(|r| (r.p, r.falling)).collect()))
}

#[pyfunction]
fn binom(n: u64, k: u64) -> BigUint {
    exact::binom(n, k)
}

#[pyfunction]
fn degree_gn(n: u64, k: u64, d: u64) -> BigUint {
    exact::degree_gn(n, k, d)
}

#[pyfunction]
fn degree_hn(ell: u64, dp: u64) -> BigUint {
    exact::degree_hn(ell, dp)
}

#[pyfunction]
fn omega_gn(n: u64, k: u64, d: u64) -> PyResult<BigUint> {
    if k > n {
        return Err(PyValueError::new_err(format!("need k <= n, got n = {n}, k = {k}")));
    }
    Ok(exact::omega_gn(n, k, d).value)
}

#[pyfunction]
fn omega_hn(ell: u64, dp: u64) -> BigUint {
    exact::omega_hn(ell, dp)
}

/// `(M(n, k, t), smallest attaining r)`.
#[pyfunction]
fn ak_max_family(n: u64, k: u64, t: u64) -> PyResult<(BigUint, u64)> {
    let m = exact::ak_max_family(n, k, t).map_err(py_err)?;
    Ok((m.size, m.argmax_r))
}

#[pyclass(name = "AdjacencyGraph", module = "stabcode")]
struct PyGraph {
    inner: AdjacencyGraph,
}

#[pymethods]
impl PyGraph {
    #[staticmethod]
    fn source(n: u32, k: u32, d: u32) -> PyResult<Self> {
        Ok(Self {
            inner: graph::build_source_graph(n, k, d).map_err(py_err)?,
        })
    }

    #[staticmethod]
    fn hamming_power(ell: u32, dp: u32) -> PyResult<Self> {
        Ok(Self {
            inner: graph::build_hamming_power_graph(ell, dp).map_err(py_err)?,
        })
    }

    #[staticmethod]
    fn circulant(n: usize, offsets: Vec<i64>) -> PyResult<Self> {
        Ok(Self {
            inner: graph::circulant(n, &offsets).map_err(py_err)?,
        })
    }

    #[getter]
    fn order(&self) -> usize {
        self.inner.order()
    }

    #[getter]
    fn edge_count(&self) -> usize {
        self.inner.edge_count()
    }

    #[getter]
    fn regular_degree(&self) -> Option<usize> {
        self.inner.regular_degree()
    }

    fn labels(&self) -> Vec<u64> {
        self.inner.labels().to_vec()
    }

    fn neighbors(&self, v: usize) -> PyResult<Vec<u32>> {
        if v >= self.inner.order() {
            return Err(PyValueError::new_err(format!("vertex {v} out of range")));
        }
        Ok(self.inner.neighbors(v).to_vec())
    }

    fn max_degree(&self) -> usize {
        self.inner.brute_max_degree()
    }

    /// `(size, witness, exact)` within `budget` seconds.
    #[pyo3(signature = (budget = 30.0))]
    fn max_clique(&self, py: Python<'_>, budget: f64) -> PyResult<(usize, Vec<usize>, bool)> {
        if !(budget >= 0.0 && budget.is_finite()) {
            return Err(PyValueError::new_err("budget must be a nonnegative number of seconds"));
        }
        let c = py.detach(|| self.inner.brute_max_clique_with_budget(Duration::from_secs_f64(budget)));
        Ok((c.size, c.witness, c.exact))
    }

    /// Whether the induced-subgraph degree and clique bounds hold for `members`.
    fn lemma1_holds(&self, members: Vec<usize>) -> PyResult<bool> {
        let sel = graph::SubsetSelection::new(&self.inner, members).map_err(py_err)?;
        Ok(graph::lemma1_check(&sel).map_err(py_err)?.holds())
    }

    fn write_edge_list(&self, path: &str) -> PyResult<()> {
        let f = File::create(path).map_err(|e| py_err(e.into()))?;
        graph::write_edge_list(&self.inner, BufWriter::new(f)).map_err(py_err)
    }

    fn __repr__(&self) -> String {
        format!(
            "AdjacencyGraph(order={}, edges={})",
            self.inner.order(),
            self.inner.edge_count()
        )
    }
}

#[pyclass(name = "EncoderTable", module = "stabcode")]
struct PyTable {
    inner: codes::EncoderTable,
}

#[pymethods]
impl PyTable {
    #[new]
    fn new(n: u32, ell: u32, pairs: Vec<(u64, u64)>) -> PyResult<Self> {
        Ok(Self {
            inner: codes::EncoderTable::from_pairs(n, ell, pairs).map_err(py_err)?,
        })
    }

    #[staticmethod]
    fn identity(n: u32) -> PyResult<Self> {
        Ok(Self {
            inner: codes::EncoderTable::identity(n).map_err(py_err)?,
        })
    }

    /// Seeded random binning of `{0,1}^n`, or of its weight-`k` slice.
    #[staticmethod]
    #[pyo3(signature = (n, ell, seed, k = None))]
    fn random_binning(n: u32, ell: u32, seed: u64, k: Option<u32>) -> PyResult<Self> {
        let inner = match k {
            Some(k) if k <= n => {
                codes::random_binning_on(n, &stabcode_core::bits::weight_k_words(n, k), ell, seed)
            }
            Some(k) => return Err(PyValueError::new_err(format!("need k <= n, got n = {n}, k = {k}"))),
            None => codes::random_binning_encoder(n, ell, seed),
        };
        Ok(Self {
            inner: inner.map_err(py_err)?,
        })
    }

    #[staticmethod]
    fn read(path: &str) -> PyResult<Self> {
        let f = File::open(path).map_err(|e| py_err(e.into()))?;
        Ok(Self {
            inner: codes::EncoderTable::read_from(BufReader::new(f)).map_err(py_err)?,
        })
    }

    fn write(&self, path: &str) -> PyResult<()> {
        let f = File::create(path).map_err(|e| py_err(e.into()))?;
        self.inner.write_to(BufWriter::new(f)).map_err(py_err)
    }

    #[getter]
    fn n(&self) -> u32 {
        self.inner.n()
    }

    #[getter]
    fn ell(&self) -> u32 {
        self.inner.ell()
    }

    fn __len__(&self) -> usize {
        self.inner.len()
    }

    fn encode(&self, x: u64) -> Option<u64> {
        self.inner.encode(x)
    }

    fn entries(&self) -> Vec<(u64, u64)> {
        self.inner.entries().collect()
    }

    fn is_injective(&self) -> bool {
        self.inner.is_injective()
    }

    /// Stability report as a dict; `counterexample` is `(x, x_tilde)` or `None`.
    fn check_stability<'py>(&self, py: Python<'py>, d: u32, dp: u32) -> PyResult<Bound<'py, pyo3::types::PyDict>> {
        let r = codes::check_stability(&self.inner, d, dp).map_err(py_err)?;
        let out = pyo3::types::PyDict::new(py);
        out.set_item("stable", r.stable)?;
        out.set_item("injective", r.injective)?;
        out.set_item("violations", r.violations)?;
        out.set_item("pairs_checked", r.pairs_checked)?;
        out.set_item("counterexample", r.counterexample.map(|v| (v.x, v.x_tilde)))?;
        out.set_item("report", r.to_string())?;
        Ok(out)
    }
}

/// `(status, table)` with status one of "found", "refuted", "unknown".
#[pyfunction]
#[pyo3(signature = (n, k, d, ell, dp, max_nodes = codes::DEFAULT_SEARCH_NODES))]
fn find_stable_code(
    py: Python<'_>,
    n: u32,
    k: u32,
    d: u32,
    ell: u32,
    dp: u32,
    max_nodes: u64,
) -> PyResult<(&'static str, Option<PyTable>)> {
    let out = py
        .detach(|| codes::find_stable_code(n, k, d, ell, dp, SearchBudget { max_nodes }))
        .map_err(py_err)?;
    let status = match out.status {
        SearchStatus::Found => "found",
        SearchStatus::Refuted => "refuted",
        SearchStatus::Unknown => "unknown",
    };
    Ok((status, out.table.map(|inner| PyTable { inner })))
}

#[pyclass(name = "RegionGrid", module = "stabcode")]
struct PyRegionGrid {
    inner: region::RegionGrid,
}

#[pymethods]
impl PyRegionGrid {
    /// Cell counts keyed by class name.
    fn counts(&self) -> Vec<(&'static str, usize)> {
        CellClass::ALL
            .iter()
            .map(|&c| (c.as_str(), self.inner.count(c)))
            .collect()
    }

    /// `(p, R, class)` of cell `(i, j)`.
    fn cell(&self, i: usize, j: usize) -> PyResult<(f64, f64, &'static str)> {
        let (np, nr) = self.inner.config.grid;
        if i >= np || j >= nr {
            return Err(PyValueError::new_err(format!("cell ({i}, {j}) outside a {np} x {nr} grid")));
        }
        let c = self.inner.cell(i, j);
        Ok((c.p, c.rate, c.class.as_str()))
    }

    fn write_csv(&self, path: &str) -> PyResult<()> {
        region::emit_csv(&self.inner, path).map_err(py_err)
    }

    fn write_svg(&self, path: &str) -> PyResult<()> {
        region::emit_svg(&self.inner, path).map_err(py_err)
    }
}

#[pyfunction]
#[pyo3(signature = (d1, d2, p_range = None, r_range = None, grid = None))]
fn region_sweep(
    py: Python<'_>,
    d1: f64,
    d2: f64,
    p_range: Option<(f64, f64)>,
    r_range: Option<(f64, f64)>,
    grid: Option<(usize, usize)>,
) -> PyResult<PyRegionGrid> {
    let mut cfg = SweepConfig::new(d1, d2);
    if let Some(r) = p_range {
        cfg.p_range = r;
    }
    if let Some(r) = r_range {
        cfg.r_range = r;
    }
    if let Some(g) = grid {
        cfg.grid = g;
    }
    let inner = py.detach(|| region::region_sweep(&cfg)).map_err(py_err)?;
    Ok(PyRegionGrid { inner })
}

#[pymodule]
fn stabcode(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_function(wrap_pyfunction!(binary_entropy, m)?)?;
    m.add_function(wrap_pyfunction!(s_func, m)?)?;
    m.add_function(wrap_pyfunction!(f_bound, m)?)?;
    m.add_function(wrap_pyfunction!(g_bound, m)?)?;
    m.add_function(wrap_pyfunction!(psi_bound, m)?)?;
    m.add_function(wrap_pyfunction!(theorem1_feasible, m)?)?;
    m.add_function(wrap_pyfunction!(theorem2_feasible, m)?)?;
    m.add_function(wrap_pyfunction!(min_rate, m)?)?;
    m.add_function(wrap_pyfunction!(crossover, m)?)?;
    m.add_function(wrap_pyfunction!(binom, m)?)?;
    m.add_function(wrap_pyfunction!(degree_gn, m)?)?;
    m.add_function(wrap_pyfunction!(degree_hn, m)?)?;
    m.add_function(wrap_pyfunction!(omega_gn, m)?)?;
    m.add_function(wrap_pyfunction!(omega_hn, m)?)?;
    m.add_function(wrap_pyfunction!(ak_max_family, m)?)?;
    m.add_function(wrap_pyfunction!(find_stable_code, m)?)?;
    m.add_function(wrap_pyfunction!(region_sweep, m)?)?;
    m.add_class::<PyGraph>()?;
    m.add_class::<PyTable>()?;
    m.add_class::<PyRegionGrid>()?;
    Ok(())
}
