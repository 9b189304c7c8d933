//! Python bindings: the `sumfree` extension module.

use num_bigint::BigUint;
use num_complex::Complex64;
use pyo3::create_exception;
use pyo3::exceptions::{PyOSError, PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use sumfree_core::census::{self, Method};
use sumfree_core::{granular, setfile, sets, spectral, Ambient, Error};

create_exception!(sumfree, BudgetError, PyRuntimeError);
create_exception!(sumfree, NotSumFreeError, PyValueError);

fn to_py(e: Error) -> PyErr {
    match e {
        Error::Budget { .. } | Error::PartialEnumeration { .. } => {
            BudgetError::new_err(e.to_string())
        }
        Error::NotSumFree { .. } => NotSumFreeError::new_err(e.to_string()),
        Error::Io(_) => PyOSError::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

fn ambient_of(name: &str) -> PyResult<Ambient> {
    match name {
        "interval" => Ok(Ambient::Interval),
        "nonnegative" => Ok(Ambient::NonNegative),
        "cyclic" => Ok(Ambient::Cyclic),
        _ => Err(PyValueError::new_err(format!(
            "ambient must be interval, nonnegative or cyclic, not {name:?}"
        ))),
    }
}

fn ambient_name(a: Ambient) -> &'static str {
    match a {
        Ambient::Interval => "interval",
        Ambient::NonNegative => "nonnegative",
        Ambient::Cyclic => "cyclic",
    }
}

/// A finite set of integers: a subset of [N], of {0..U-1}, or of Z/UZ.
#[pyclass(name = "IntSet", module = "sumfree", frozen, eq, skip_from_py_object)]
#[derive(Clone, PartialEq)]
pub struct PyIntSet(sumfree_core::IntSet);

#[pymethods]
impl PyIntSet {
    /// `IntSet(n, elements)` is a subset of [n]; for the other ambients pass
    /// `ambient="cyclic"` or `"nonnegative"` and the universe size as `n`.
    #[new]
    #[pyo3(signature = (n, elements, ambient = "interval"))]
    fn new(n: usize, elements: Vec<usize>, ambient: &str) -> PyResult<Self> {
        let set = match ambient_of(ambient)? {
            Ambient::Interval => sumfree_core::IntSet::interval(n, elements),
            Ambient::Cyclic => sumfree_core::IntSet::cyclic(n, elements),
            Ambient::NonNegative => sumfree_core::IntSet::nonnegative(n, elements),
        };
        set.map(PyIntSet).map_err(to_py)
    }

    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        setfile::parse(text, Ambient::Interval)
            .map(PyIntSet)
            .map_err(to_py)
    }

    fn to_text(&self) -> String {
        setfile::to_string(&self.0)
    }

    #[getter]
    fn universe(&self) -> usize {
        self.0.universe()
    }

    #[getter]
    fn ambient(&self) -> &'static str {
        ambient_name(self.0.ambient())
    }

    fn elements(&self) -> Vec<usize> {
        self.0.elements()
    }

    fn embed_mod(&self, p: usize) -> PyResult<Self> {
        self.0.embed_mod(p).map(PyIntSet).map_err(to_py)
    }

    fn __len__(&self) -> usize {
        self.0.len()
    }

    fn __contains__(&self, x: usize) -> bool {
        self.0.contains(x)
    }

    fn __repr__(&self) -> String {
        format!(
            "IntSet({}, {:?}, ambient={:?})",
            self.0.universe(),
            self.0.elements(),
            ambient_name(self.0.ambient())
        )
    }
}

#[pyfunction]
fn is_sum_free(a: &PyIntSet) -> bool {
    sets::is_sum_free(&a.0)
}

/// An additive triple `(x, y, x + y)` inside `a`, or `None`.
#[pyfunction]
fn find_additive_triple(a: &PyIntSet) -> Option<(usize, usize, usize)> {
    sets::find_additive_triple(&a.0).map(|t| (t.x, t.y, t.z))
}

#[pyfunction]
fn count_additive_triples(a: &PyIntSet) -> u64 {
    sets::count_additive_triples(&a.0)
}

#[pyfunction]
fn popular_differences(a: &PyIntSet, k: f64) -> PyResult<PyIntSet> {
    sets::popular_differences(&a.0, k)
        .map(PyIntSet)
        .map_err(to_py)
}

/// The least prime `p >= 2n`.
#[pyfunction]
fn choose_prime(n: usize) -> PyResult<usize> {
    spectral::choose_prime(n).map(|c| c.p()).map_err(to_py)
}

/// `Â(r)` for every `r` in Z/pZ; `a` must be a cyclic set.
#[pyfunction]
fn dft(a: &PyIntSet) -> PyResult<Vec<Complex64>> {
    let ctx = spectral::PrimeContext::for_prime(a.0.universe()).map_err(to_py)?;
    spectral::dft(&a.0, &ctx)
        .map(|s| s.values().to_vec())
        .map_err(to_py)
}

/// Number of sum-free subsets of `universe` (a subset of [N]).
#[pyfunction]
#[pyo3(signature = (universe, method = "bb", workers = 0))]
fn count_sum_free(
    py: Python<'_>,
    universe: &PyIntSet,
    method: &str,
    workers: usize,
) -> PyResult<BigUint> {
    let u = universe.0.clone();
    let method = match method {
        "naive" => Method::Naive,
        "bb" => Method::BranchAndBound,
        _ => return Err(PyValueError::new_err("method must be 'naive' or 'bb'")),
    };
    py.detach(|| match method {
        Method::Naive => census::count_sum_free_naive(&u, workers),
        Method::BranchAndBound => census::count_sum_free_bb(&u, workers),
    })
    .map(|r| r.count)
    .map_err(to_py)
}

/// Census of sum-free subsets of [n] as a dict.
#[pyfunction]
#[pyo3(signature = (n, workers = 0))]
fn census_classify(py: Python<'_>, n: usize, workers: usize) -> PyResult<Py<pyo3::types::PyDict>> {
    let r = py
        .detach(|| census::census_classify(n, workers))
        .map_err(to_py)?;
    let d = pyo3::types::PyDict::new(py);
    d.set_item("n", r.n)?;
    d.set_item("total", r.total)?;
    d.set_item("odd_only", r.odd_only)?;
    d.set_item("upper_third", r.upper_third)?;
    d.set_item("overlap", r.overlap)?;
    d.set_item("exceptional", r.exceptional)?;
    d.set_item("ratio", r.ratio)?;
    d.set_item("exceptional_ratio", r.exceptional_ratio)?;
    Ok(d.unbind())
}

/// Covers a sum-free `a` ⊆ [N] by a structured set; returns `(member, report)`
/// with the report as a dict.
#[pyfunction]
#[pyo3(signature = (a, eps1 = 0.25, m = None))]
fn cover_in_family(
    py: Python<'_>,
    a: &PyIntSet,
    eps1: f64,
    m: Option<usize>,
) -> PyResult<(PyIntSet, Py<pyo3::types::PyDict>)> {
    let set = a.0.clone();
    let w = py
        .detach(|| {
            let ctx = spectral::choose_prime(set.n().max(1))?;
            granular::cover_in_family(&set, &ctx, eps1, m)
        })
        .map_err(to_py)?;
    let r = w.report();
    let d = pyo3::types::PyDict::new(py);
    d.set_item("p", r.p)?;
    d.set_item("d", r.d)?;
    d.set_item("M", r.m)?;
    d.set_item("L", r.l)?;
    d.set_item("delta", r.delta)?;
    d.set_item("is_good", r.is_good)?;
    d.set_item("aprime_size", r.aprime_size)?;
    d.set_item("added_size", r.added_size)?;
    d.set_item("triples_aprime", r.triples_aprime)?;
    d.set_item("bad_count", r.bad_count)?;
    d.set_item("regime", r.regime)?;
    Ok((PyIntSet(w.member), d.unbind()))
}

#[pymodule]
fn sumfree(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyIntSet>()?;
    m.add("BudgetError", m.py().get_type::<BudgetError>())?;
    m.add("NotSumFreeError", m.py().get_type::<NotSumFreeError>())?;
    m.add_function(wrap_pyfunction!(is_sum_free, m)?)?;
    m.add_function(wrap_pyfunction!(find_additive_triple, m)?)?;
    m.add_function(wrap_pyfunction!(count_additive_triples, m)?)?;
    m.add_function(wrap_pyfunction!(popular_differences, m)?)?;
    m.add_function(wrap_pyfunction!(choose_prime, m)?)?;
    m.add_function(wrap_pyfunction!(dft, m)?)?;
    m.add_function(wrap_pyfunction!(count_sum_free, m)?)?;
    m.add_function(wrap_pyfunction!(census_classify, m)?)?;
    m.add_function(wrap_pyfunction!(cover_in_family, m)?)?;
    Ok(())
}
