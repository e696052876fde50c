//! Python bindings. Partitions use the text form of the command line tool, e.g.
//! `"y(-2)^2 x(-1) h(0)"`; q-series come back as lists of Python ints.

use num_bigint::BigInt;
use pyo3::basic::CompareOp;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyList;

use sl2hat::embeddings::{self, Embedding};
use sl2hat::modules::{self, M1Builder, RhoChoice};
use sl2hat::partitions::{self, EnumOptions};
use sl2hat::qseries::{self, ProductFormula};
use sl2hat::suites::{self, SuiteConfig};
use sl2hat::{ColoredPartition, HighestWeight, Part, PartSet, RelationId, Specialization};

fn err(e: sl2hat::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn json(py: Python<'_>, v: &serde_json::Value) -> PyResult<Py<PyAny>> {
    let loads = py.import("json")?.getattr("loads")?;
    Ok(loads.call1((v.to_string(),))?.unbind())
}

fn coeffs(s: &qseries::QSeries) -> Vec<BigInt> {
    s.coeffs().to_vec()
}

fn parse(text: &str) -> PyResult<ColoredPartition> {
    text.parse().map_err(err)
}

fn parse_part(text: &str) -> PyResult<Part> {
    let pi = parse(text)?;
    match pi.counts() {
        [(p, 1)] => Ok(*p),
        _ => Err(PyValueError::new_err(format!("{text:?} is not a single part"))),
    }
}

/// A colored partition, ordered as in the straightening order: longer is smaller
/// and the empty partition is the largest.
#[pyclass(name = "ColoredPartition", module = "sl2hat", frozen, from_py_object)]
#[derive(Clone, PartialEq, Eq, Hash)]
struct PyPartition(ColoredPartition);

#[pymethods]
impl PyPartition {
    #[new]
    #[pyo3(signature = (text = ""))]
    fn new(text: &str) -> PyResult<Self> {
        if text.trim().is_empty() || text.trim() == "1" {
            return Ok(PyPartition(ColoredPartition::one()));
        }
        parse(text).map(PyPartition)
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("ColoredPartition('{}')", self.0)
    }

    fn __richcmp__(&self, other: &Self, op: CompareOp) -> bool {
        op.matches(self.0.cmp(&other.0))
    }

    fn __hash__(&self) -> u64 {
        use std::hash::{Hash, Hasher};
        let mut h = std::collections::hash_map::DefaultHasher::new();
        self.0.hash(&mut h);
        h.finish()
    }

    fn __len__(&self) -> usize {
        self.0.length() as usize
    }

    fn __mul__(&self, other: &Self) -> Self {
        PyPartition(self.0.mul(&other.0))
    }

    fn __contains__(&self, other: &Self) -> bool {
        self.0.contains(&other.0)
    }

    #[getter]
    fn degree(&self) -> i32 {
        self.0.degree()
    }

    #[getter]
    fn weight(&self) -> i32 {
        self.0.weight()
    }

    /// `[(color, degree, multiplicity)]` in ascending order.
    fn parts(&self) -> Vec<(char, i32, u32)> {
        self.0.counts().iter().map(|&(p, m)| (p.color.symbol(), p.degree, m)).collect()
    }

    fn dual(&self) -> Self {
        PyPartition(self.0.dual())
    }

    /// Shift every degree by `-n`.
    fn translate(&self, n: i32) -> Self {
        PyPartition(self.0.translate(n))
    }

    fn union(&self, other: &Self) -> Self {
        PyPartition(self.0.union(&other.0))
    }

    fn satisfies_conditions(&self, k0: u32, k1: u32) -> bool {
        partitions::satisfies_conditions(&self.0, k0, k1)
    }
}

/// A vector with exact rational coefficients in a highest weight module.
#[pyclass(name = "Vector", module = "sl2hat", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyVector(sl2hat::ModuleVector);

impl PyVector {
    fn compatible(&self, other: &Self) -> PyResult<()> {
        let (a, b) = (&self.0, &other.0);
        let same_grade = a.is_zero() || b.is_zero() || (a.degree(), a.weight()) == (b.degree(), b.weight());
        if a.hw() != b.hw() || !same_grade {
            return Err(PyValueError::new_err("vectors lie in different modules or grades"));
        }
        Ok(())
    }
}

#[pymethods]
impl PyVector {
    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Vector({})", self.0)
    }

    fn __add__(&self, other: &Self) -> PyResult<Self> {
        self.compatible(other)?;
        Ok(PyVector(self.0.add(&other.0)))
    }

    fn __sub__(&self, other: &Self) -> PyResult<Self> {
        self.compatible(other)?;
        Ok(PyVector(self.0.sub(&other.0)))
    }

    fn __bool__(&self) -> bool {
        !self.0.is_zero()
    }

    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    #[getter]
    fn degree(&self) -> i32 {
        self.0.degree()
    }

    #[getter]
    fn weight(&self) -> i32 {
        self.0.weight()
    }

    /// `{partition text: fractions.Fraction}`.
    fn terms<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        let fraction = py.import("fractions")?.getattr("Fraction")?;
        let out = pyo3::types::PyDict::new(py);
        for (pi, c) in self.0.terms() {
            out.set_item(pi.to_string(), fraction.call1((c.numer().clone(), c.denom().clone()))?)?;
        }
        Ok(out.into_any())
    }

    fn leading_term(&self) -> PyResult<PyPartition> {
        self.0.leading_term().map(PyPartition).map_err(err)
    }
}

/// A Verma module `M(k0Λ₀ + k1Λ₁)` or the vacuum module `N(kΛ₀)`.
#[pyclass(name = "Module", module = "sl2hat", unsendable)]
struct PyModule_(sl2hat::Module);

impl PyModule_ {
    fn check(&self, v: &PyVector) -> PyResult<()> {
        if v.0.hw() != self.0.hw() {
            return Err(PyValueError::new_err(format!("vector of {} used with {}", v.0.hw(), self.0.hw())));
        }
        Ok(())
    }
}

#[pymethods]
impl PyModule_ {
    #[staticmethod]
    fn verma(k0: u32, k1: u32) -> Self {
        PyModule_(sl2hat::Module::new(HighestWeight::verma(k0, k1)))
    }

    /// The generalized Verma module `N(kΛ₀)`.
    #[staticmethod]
    fn vacuum_module(k: u32) -> Self {
        PyModule_(sl2hat::Module::new(HighestWeight::generalized_verma(k)))
    }

    fn __repr__(&self) -> String {
        format!("Module({})", self.0.hw())
    }

    #[getter]
    fn level(&self) -> i64 {
        self.0.level()
    }

    fn vacuum(&self) -> PyVector {
        PyVector(self.0.vacuum())
    }

    fn basis_vector(&self, pi: &PyPartition) -> PyResult<PyVector> {
        self.0.basis_vector(&pi.0).map(PyVector).map_err(err)
    }

    /// `b · v` for a single part such as `"x(-1)"`.
    fn act(&self, part: &str, v: &PyVector) -> PyResult<PyVector> {
        self.check(v)?;
        Ok(PyVector(self.0.act_part(parse_part(part)?, &v.0)))
    }

    /// `u(π) v`.
    fn act_monomial(&self, pi: &PyPartition, v: &PyVector) -> PyResult<PyVector> {
        self.check(v)?;
        Ok(PyVector(self.0.act_monomial(&pi.0, &v.0)))
    }

    /// `r_{iα}(n) v`.
    fn r_apply(&self, i: i32, n: i32, v: &PyVector) -> PyResult<PyVector> {
        self.check(v)?;
        self.0.r_apply(RelationId::new(i, n), &v.0).map(PyVector).map_err(err)
    }

    fn sugawara_l(&self, m: i32, v: &PyVector) -> PyResult<PyVector> {
        self.check(v)?;
        Ok(PyVector(self.0.sugawara_l(m, &v.0)))
    }

    fn virasoro_check(&self, m: i32, n: i32, v: &PyVector) -> PyResult<bool> {
        self.check(v)?;
        Ok(self.0.virasoro_check(m, n, &v.0))
    }

    fn check_8_1(&self, n: i32, v: &PyVector) -> PyResult<bool> {
        self.check(v)?;
        Ok(self.0.check_8_1(n, &v.0))
    }

    fn check_8_4(&self, i: i32, n: i32, v: &PyVector) -> PyResult<bool> {
        self.check(v)?;
        self.0.check_8_4(i, n, &v.0).map_err(err)
    }

    fn check_8_5(&self, i: i32, n: i32, v: &PyVector) -> PyResult<bool> {
        self.check(v)?;
        self.0.check_8_5(i, n, &v.0).map_err(err)
    }

    /// `[(label, i, n, pass)]` for every relation among relations at `n`.
    fn relation_battery(&self, n: i32, v: &PyVector) -> PyResult<Vec<(&'static str, i32, i32, bool)>> {
        self.check(v)?;
        Ok(self.0.relation_battery(n, &v.0).into_iter().map(|c| (c.relation.label(), c.i, c.n, c.pass)).collect())
    }
}

/// Dimension of the `(d, w)` piece of `L(k0Λ₀ + k1Λ₁)`.
#[pyfunction]
fn l_dimension(k0: u32, k1: u32, d: i32, w: i32) -> PyResult<usize> {
    modules::l_dimension(HighestWeight::verma(k0, k1), d, w).map_err(err)
}

/// Rows of the dimension table as dicts.
#[pyfunction]
fn dims_table(py: Python<'_>, k0: u32, k1: u32, depth: u32) -> PyResult<Py<PyAny>> {
    let rows = modules::dims_table(k0, k1, depth).map_err(err)?;
    json(py, &serde_json::json!(rows))
}

#[pyfunction]
#[pyo3(signature = (k0, k1, d, w, choice = "min"))]
fn basis_check_652(py: Python<'_>, k0: u32, k1: u32, d: i32, w: i32, choice: &str) -> PyResult<Py<PyAny>> {
    let choice = match choice {
        "min" => RhoChoice::CmpMin,
        "max" => RhoChoice::CmpMax,
        _ => return Err(PyValueError::new_err("choice is 'min' or 'max'")),
    };
    let b = M1Builder::new(HighestWeight::verma(k0, k1));
    let r = modules::basis_check_652(&b, d, w, choice).map_err(err)?;
    let mut v = serde_json::json!(r);
    v["pass"] = r.pass().into();
    json(py, &v)
}

/// Partitions of `degree`; `negative` drops `y(0)`.
#[pyfunction]
#[pyo3(signature = (degree, weight = None, conditions = None, negative = false, max_length = None))]
fn enumerate(
    degree: i32,
    weight: Option<i32>,
    conditions: Option<(u32, u32)>,
    negative: bool,
    max_length: Option<u32>,
) -> PyResult<Vec<PyPartition>> {
    let set = if negative { PartSet::Negative } else { PartSet::Verma };
    let opts = EnumOptions { weight, conditions, max_length };
    Ok(partitions::enumerate(set, degree, opts).map_err(err)?.into_iter().map(PyPartition).collect())
}

#[pyfunction]
fn catalog_lt_r(k: u32, i: i32, n: i32) -> PyResult<PyPartition> {
    partitions::catalog_lt_r(k, i, n).map(PyPartition).map_err(err)
}

#[pyfunction]
fn lt_r_vlambda(k0: u32, k1: u32, i: i32, n: i32) -> Option<PyPartition> {
    partitions::lt_r_vlambda(k0, k1, i, n).map(PyPartition)
}

/// `[(partition, embedding count, case)]`.
#[pyfunction]
fn length_k2_catalog(k: u32) -> Vec<(PyPartition, usize, u8)> {
    embeddings::length_k2_catalog(k).into_iter().map(|e| (PyPartition(e.pi), e.embeddings, e.case)).collect()
}

/// `[(rho, m, n)]`.
#[pyfunction]
fn find_embeddings(pi: &PyPartition, k: u32) -> Vec<(PyPartition, i32, i32)> {
    embeddings::find_embeddings(&pi.0, k).into_iter().map(|e| (PyPartition(e.rho), e.m, e.n)).collect()
}

/// Class of a pair of embeddings given as `(rho, m, n)` triples.
#[pyfunction]
fn classify_pair(py: Python<'_>, k: u32, e1: (PyPartition, i32, i32), e2: (PyPartition, i32, i32)) -> PyResult<Py<PyAny>> {
    let a = Embedding { rho: e1.0 .0, m: e1.1, n: e1.2 };
    let b = Embedding { rho: e2.0 .0, m: e2.1, n: e2.2 };
    let c = embeddings::classify_pair(k, &a, &b).map_err(err)?;
    let mut v = serde_json::json!(c);
    v["families"] = serde_json::json!(c.families());
    json(py, &v)
}

#[pyfunction]
fn embedding_report(py: Python<'_>, pi: &PyPartition, k: u32) -> PyResult<Py<PyAny>> {
    json(py, &embeddings::embedding_report(&pi.0, k).map_err(err)?)
}

#[pyfunction]
fn specialized_character(k0: u32, k1: u32, s0: u32, s1: u32, n: usize) -> Vec<BigInt> {
    coeffs(&qseries::specialized_character(k0, k1, s0, s1, n))
}

#[pyfunction]
fn conditioned_partition_gf(k0: u32, k1: u32, s0: u32, s1: u32, n: usize) -> PyResult<Vec<BigInt>> {
    let spec = Specialization::new(s0, s1).map_err(err)?;
    Ok(coeffs(&qseries::conditioned_partition_gf(k0, k1, spec, n)))
}

#[pyfunction]
fn p_product(s0: u32, s1: u32, n: usize) -> Vec<BigInt> {
    coeffs(&qseries::p_product(s0, s1, n))
}

#[pyfunction]
fn q_product(m0: u32, two_m1: u32, n: usize) -> Vec<BigInt> {
    coeffs(&qseries::q_product(m0, two_m1, n))
}

fn formula(id: &str, k0: Option<u32>, k1: Option<u32>, n: Option<u32>, s: (u32, u32)) -> PyResult<ProductFormula> {
    use ProductFormula::*;
    let need = |x: Option<u32>, name: &str| x.ok_or_else(|| PyValueError::new_err(format!("{id} needs {name}")));
    let (s0, s1) = s;
    Ok(match id {
        "11.1.3" => PrincipalRatio { k0: need(k0, "k0")?, k1: need(k1, "k1")? },
        "11.1.4" => TwistedRatio { k0: need(k0, "k0")?, k1: need(k1, "k1")? },
        "11.1.5" => DualTwisted { n: need(n, "n")?, s0, s1 },
        "11.1.6" => DualTwistedFlip { n: need(n, "n")?, s0, s1 },
        "11.1.7" => DualScaled { n: need(n, "n")?, s0, s1 },
        "11.1.9" => PrincipalDiagonal { n: need(n, "n")? },
        "11.1.10" => PrincipalSkew { n: need(n, "n")? },
        "11.1.11" => PrincipalGeneric { k0: need(k0, "k0")?, k1: need(k1, "k1")? },
        "11.1.12" => TwistedGeneric { k0: need(k0, "k0")?, k1: need(k1, "k1")? },
        "11.1.13" => TwistedSkew { n: need(n, "n")? },
        "11.1.14" => TwistedDiagonal { n: need(n, "n")? },
        _ => return Err(PyValueError::new_err(format!("unknown formula {id:?}"))),
    })
}

/// `(product side, character side)` of a product formula, by id.
#[pyfunction]
#[pyo3(signature = (id, truncate = 200, *, k0 = None, k1 = None, n = None, s0 = 1, s1 = 1))]
fn product_formula(
    id: &str,
    truncate: usize,
    k0: Option<u32>,
    k1: Option<u32>,
    n: Option<u32>,
    s0: u32,
    s1: u32,
) -> PyResult<(Vec<BigInt>, Vec<BigInt>)> {
    let f = formula(id, k0, k1, n, (s0, s1))?;
    let p = f.product(truncate).map_err(err)?;
    Ok((coeffs(&p), coeffs(&f.character(truncate))))
}

/// Run a verification suite and return its check records.
#[pyfunction]
#[pyo3(signature = (name, *, k0 = None, k1 = None, max_level = None, depth = None, truncate = 200))]
fn run_suite<'py>(
    py: Python<'py>,
    name: &str,
    k0: Option<u32>,
    k1: Option<u32>,
    max_level: Option<u32>,
    depth: Option<u32>,
    truncate: usize,
) -> PyResult<Bound<'py, PyList>> {
    let cfg = SuiteConfig { k0, k1, max_level, depth, truncate };
    let mut records = Vec::new();
    suites::run_suite(name, &cfg, &mut |r| records.push(r.to_json())).map_err(err)?;
    let out = PyList::empty(py);
    for r in &records {
        out.append(json(py, r)?)?;
    }
    Ok(out)
}

#[pymodule]
fn _sl2hat(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    m.add_class::<PyPartition>()?;
    m.add_class::<PyVector>()?;
    m.add_class::<PyModule_>()?;
    m.add_function(wrap_pyfunction!(l_dimension, m)?)?;
    m.add_function(wrap_pyfunction!(dims_table, m)?)?;
    m.add_function(wrap_pyfunction!(basis_check_652, m)?)?;
    m.add_function(wrap_pyfunction!(enumerate, m)?)?;
    m.add_function(wrap_pyfunction!(catalog_lt_r, m)?)?;
    m.add_function(wrap_pyfunction!(lt_r_vlambda, m)?)?;
    m.add_function(wrap_pyfunction!(length_k2_catalog, m)?)?;
    m.add_function(wrap_pyfunction!(find_embeddings, m)?)?;
    m.add_function(wrap_pyfunction!(classify_pair, m)?)?;
    m.add_function(wrap_pyfunction!(embedding_report, m)?)?;
    m.add_function(wrap_pyfunction!(specialized_character, m)?)?;
    m.add_function(wrap_pyfunction!(conditioned_partition_gf, m)?)?;
    m.add_function(wrap_pyfunction!(p_product, m)?)?;
    m.add_function(wrap_pyfunction!(q_product, m)?)?;
    m.add_function(wrap_pyfunction!(product_formula, m)?)?;
    m.add_function(wrap_pyfunction!(run_suite, m)?)?;
    let names: Vec<String> = m.dict().keys().iter().map(|k| k.to_string()).filter(|k| !k.starts_with('_')).collect();
    m.add("__all__", names)?;
    Ok(())
}
