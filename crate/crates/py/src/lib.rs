use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use leonard as core;
use leonard::{Field, Scalar};

fn err(e: impl ToString) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn field_of(s: &str) -> PyResult<Field> {
    s.parse().map_err(err)
}

fn scalars(field: Field, v: &[String]) -> PyResult<Vec<Scalar>> {
    v.iter().map(|s| field.parse(s).map_err(err)).collect()
}

fn strings(v: &[Scalar]) -> Vec<String> {
    v.iter().map(|s| s.to_string()).collect()
}

fn rows(m: &core::Matrix) -> Vec<Vec<String>> {
    m.rows().iter().map(|r| strings(r)).collect()
}

fn matrix(field: Field, rows: &[Vec<String>]) -> PyResult<core::Matrix> {
    let rows = rows.iter().map(|r| scalars(field, r)).collect::<PyResult<Vec<_>>>()?;
    core::Matrix::from_rows(rows).map_err(err)
}

#[pyclass(name = "ParameterArray", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyParameterArray(core::ParameterArray);

#[pymethods]
impl PyParameterArray {
    #[new]
    fn new(field: &str, theta: Vec<String>, thetastar: Vec<String>, phi1: Vec<String>, phi2: Vec<String>) -> PyResult<Self> {
        let f = field_of(field)?;
        core::ParameterArray::new(scalars(f, &theta)?, scalars(f, &thetastar)?, scalars(f, &phi1)?, scalars(f, &phi2)?)
            .map(PyParameterArray)
            .map_err(err)
    }

    #[getter]
    fn field(&self) -> String {
        self.0.field().to_string()
    }

    #[getter]
    fn d(&self) -> usize {
        self.0.d()
    }

    #[getter]
    fn theta(&self) -> Vec<String> {
        strings(self.0.theta())
    }

    #[getter]
    fn thetastar(&self) -> Vec<String> {
        strings(self.0.thetastar())
    }

    #[getter]
    fn phi1(&self) -> Vec<String> {
        strings(self.0.phi1())
    }

    #[getter]
    fn phi2(&self) -> Vec<String> {
        strings(self.0.phi2())
    }

    /// Violated conditions; empty when valid.
    fn validate(&self) -> Vec<String> {
        core::validate_parameter_array(&self.0).violations.iter().map(|v| v.to_string()).collect()
    }

    /// (beta, type) for d >= 3.
    fn fundamental_type(&self) -> PyResult<(String, String)> {
        let ft = core::fundamental_type(&self.0).map_err(err)?;
        Ok((ft.beta.to_string(), ft.tag.to_string()))
    }

    fn tdd(&self) -> PyResult<PyTdd> {
        core::tdd_from_parameter_array(&self.0).map(PyTdd).map_err(err)
    }

    fn realize(&self) -> PyResult<PyMatrixPair> {
        Ok(PyMatrixPair(core::realize_matrices(&self.tdd()?.0)))
    }

    fn relatives(&self) -> Vec<PyParameterArray> {
        core::parameter_array_relatives(&self.0).into_iter().map(PyParameterArray).collect()
    }

    fn phi_products(&self) -> Vec<String> {
        strings(&self.0.phi_products())
    }

    #[pyo3(signature = (q=None))]
    fn primary_data(&self, q: Option<String>) -> PyResult<PyPrimaryData> {
        let q = q.map(|s| self.0.field().parse(&s)).transpose().map_err(err)?;
        core::primary_data_from_parameter_array(&self.0, q.as_ref())
            .map(PyPrimaryData)
            .map_err(err)
    }

    fn classify(&self) -> PyResult<PyClassification> {
        core::classify_near_bipartite(&self.0).map(PyClassification).map_err(err)
    }

    fn to_json(&self) -> String {
        core::Document::from(self.0.clone()).render()
    }

    fn __eq__(&self, other: &Self) -> bool {
        self.0 == other.0
    }

    fn __repr__(&self) -> String {
        format!("ParameterArray({})", self.0)
    }
}

#[pyclass(name = "TddSequence", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyTdd(core::TddSequence);

#[pymethods]
impl PyTdd {
    #[new]
    fn new(field: &str, a: Vec<String>, x: Vec<String>, thetastar: Vec<String>) -> PyResult<Self> {
        let f = field_of(field)?;
        core::TddSequence::new(scalars(f, &a)?, scalars(f, &x)?, scalars(f, &thetastar)?)
            .map(PyTdd)
            .map_err(err)
    }

    #[getter]
    fn a(&self) -> Vec<String> {
        strings(self.0.a())
    }

    #[getter]
    fn x(&self) -> Vec<String> {
        strings(self.0.x())
    }

    #[getter]
    fn thetastar(&self) -> Vec<String> {
        strings(self.0.thetastar())
    }

    fn parameter_arrays(&self) -> PyResult<Vec<PyParameterArray>> {
        Ok(core::parameter_arrays_from_tdd(&self.0).map_err(err)?.into_iter().map(PyParameterArray).collect())
    }

    fn realize(&self) -> PyMatrixPair {
        PyMatrixPair(core::realize_matrices(&self.0))
    }

    fn to_json(&self) -> String {
        core::Document::from(self.0.clone()).render()
    }

    fn __repr__(&self) -> String {
        format!("TddSequence({})", self.0)
    }
}

#[pyclass(name = "MatrixPair", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyMatrixPair(core::MatrixPair);

#[pymethods]
impl PyMatrixPair {
    #[new]
    fn new(field: &str, a: Vec<Vec<String>>, astar: Vec<Vec<String>>) -> PyResult<Self> {
        let f = field_of(field)?;
        core::MatrixPair::new(matrix(f, &a)?, matrix(f, &astar)?).map(PyMatrixPair).map_err(err)
    }

    #[getter]
    fn a(&self) -> Vec<Vec<String>> {
        rows(&self.0.a)
    }

    #[getter]
    fn astar(&self) -> Vec<Vec<String>> {
        rows(&self.0.astar)
    }

    fn verify(&self) -> String {
        core::verify_leonard_pair(&self.0).to_string()
    }

    fn is_leonard(&self) -> bool {
        core::verify_leonard_pair(&self.0).is_leonard()
    }

    fn flat_part(&self) -> PyResult<Vec<Vec<String>>> {
        Ok(rows(&core::flat_part(&self.0).map_err(err)?.matrix))
    }

    /// The contraction A - F, A*, or None when it is not a Leonard pair.
    fn contract(&self) -> PyResult<Option<PyMatrixPair>> {
        match core::bipartite_contraction(&self.0) {
            Ok(out) => Ok(out.contraction().map(|c| PyMatrixPair(c.pair.clone()))),
            Err(core::FlatError::ContractionNotSplit) => Ok(None),
            Err(e) => Err(err(e)),
        }
    }

    fn to_json(&self) -> String {
        core::Document::from(self.0.clone()).render()
    }
}

#[pyclass(name = "PrimaryData", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyPrimaryData(core::PrimaryData);

fn seq(field: Field, values: &[String]) -> PyResult<core::PrimarySeq> {
    let v: [Scalar; 7] = scalars(field, values)?
        .try_into()
        .map_err(|_| err("expected seven values (delta, mu, h, delta*, mu*, h*, tau)"))?;
    Ok(core::PrimarySeq::new(v))
}

#[pymethods]
impl PyPrimaryData {
    #[staticmethod]
    fn type_i(field: &str, q: &str, values: Vec<String>) -> PyResult<Self> {
        let f = field_of(field)?;
        Ok(PyPrimaryData(core::PrimaryData::TypeI { q: f.parse(q).map_err(err)?, seq: seq(f, &values)? }))
    }

    #[staticmethod]
    fn type_ii(field: &str, values: Vec<String>) -> PyResult<Self> {
        Ok(PyPrimaryData(core::PrimaryData::TypeII(seq(field_of(field)?, &values)?)))
    }

    #[staticmethod]
    fn type_iii_plus(field: &str, values: Vec<String>) -> PyResult<Self> {
        Ok(PyPrimaryData(core::PrimaryData::TypeIIIPlus(seq(field_of(field)?, &values)?)))
    }

    #[getter]
    fn tag(&self) -> String {
        self.0.tag().to_string()
    }

    #[getter]
    fn q(&self) -> Option<String> {
        self.0.q().map(|q| q.to_string())
    }

    #[getter]
    fn values(&self) -> Vec<String> {
        self.0.seq().values().iter().map(|s| s.to_string()).collect()
    }

    fn array(&self, d: usize) -> PyResult<PyParameterArray> {
        core::parameter_array_from_primary_data(&self.0, d).map(PyParameterArray).map_err(err)
    }

    /// Names of the special-type flags that hold.
    fn special_flags(&self, d: usize) -> Vec<&'static str> {
        let f = core::special_type_flags(&self.0, d);
        [
            ("dual_q_krawtchouk", f.dual_q_krawtchouk),
            ("krawtchouk", f.krawtchouk),
            ("reinforced", f.reinforced),
            ("bipartite", f.bipartite),
            ("essentially_bipartite", f.essentially_bipartite),
        ]
        .into_iter()
        .filter_map(|(n, b)| b.then_some(n))
        .collect()
    }

    fn relatives(&self) -> Vec<PyPrimaryData> {
        core::primary_data_relatives(&self.0).into_iter().map(PyPrimaryData).collect()
    }

    fn phi_products_equal(&self, other: &PyPrimaryData, d: usize) -> PyResult<bool> {
        core::phi_products_equal(&self.0, &other.0, d).map_err(err)
    }

    fn __repr__(&self) -> String {
        format!("PrimaryData({})", self.0)
    }
}

#[pyclass(name = "Classification", frozen)]
struct PyClassification(core::NearBipartiteClassification);

#[pymethods]
impl PyClassification {
    #[getter]
    fn near_bipartite(&self) -> bool {
        self.0.near_bipartite
    }

    #[getter]
    fn in_field(&self) -> bool {
        self.0.in_field
    }

    #[getter]
    fn reasons(&self) -> Vec<String> {
        self.0.reasons.iter().map(|r| r.to_string()).collect()
    }

    #[getter]
    fn fallbacks(&self) -> Vec<String> {
        self.0.fallbacks.iter().map(|r| r.to_string()).collect()
    }

    #[getter]
    fn contraction(&self) -> Option<PyParameterArray> {
        self.0.contraction.clone().map(PyParameterArray)
    }

    #[getter]
    fn contraction_tdd(&self) -> Option<PyTdd> {
        self.0.contraction_tdd.clone().map(PyTdd)
    }
}

#[pyfunction]
fn q_from_beta(field: &str, beta: &str) -> PyResult<Vec<String>> {
    let b = field_of(field)?.parse(beta).map_err(err)?;
    Ok(strings(&core::q_from_beta(&b)))
}

/// Reads a JSON document and returns the matching object.
#[pyfunction]
fn from_json(py: Python<'_>, text: &str) -> PyResult<Py<PyAny>> {
    let doc = core::Document::parse(text).map_err(err)?;
    Ok(match doc.payload {
        core::Payload::ParameterArray(p) => Py::new(py, PyParameterArray(p))?.into_any(),
        core::Payload::Tdd(t) => Py::new(py, PyTdd(t))?.into_any(),
        core::Payload::MatrixPair(m) => Py::new(py, PyMatrixPair(m))?.into_any(),
        core::Payload::PrimaryData(pd) => Py::new(py, PyPrimaryData(pd))?.into_any(),
    })
}

#[pyfunction]
fn expand_dual_q_krawtchouk(b: &PyPrimaryData, d: usize, delta: &str, mu: &str) -> PyResult<PyParameterArray> {
    let f = b.0.field();
    let x = core::expansions_dual_q_krawtchouk(&b.0, d, &f.parse(delta).map_err(err)?, &f.parse(mu).map_err(err)?)
        .map_err(err)?;
    Ok(PyParameterArray(x.array))
}

#[pyfunction]
fn expand_krawtchouk(b: &PyPrimaryData, d: usize, delta: &str, mu: &str) -> PyResult<Vec<PyParameterArray>> {
    let f = b.0.field();
    let xs = core::expansions_krawtchouk(&b.0, d, &f.parse(delta).map_err(err)?, &f.parse(mu).map_err(err)?)
        .map_err(err)?;
    Ok(xs.into_iter().map(|x| PyParameterArray(x.array)).collect())
}

#[pyfunction]
#[pyo3(signature = (family, d, field, count, seed, q=None))]
fn sample(family: &str, d: usize, field: &str, count: usize, seed: u64, q: Option<String>) -> PyResult<Vec<PyParameterArray>> {
    let fam: core::Family = family.parse().map_err(err)?;
    let f = field_of(field)?;
    let q = q.map(|s| f.parse(&s)).transpose().map_err(err)?;
    let mut s = core::Sampler::new(f, seed);
    (0..count).map(|_| s.array(fam, d, q.as_ref()).map(PyParameterArray).map_err(err)).collect()
}

/// (tuples, mismatches) of the exhaustive sweep for diameter 1 or 2.
#[pyfunction]
fn census(field: &str, d: usize) -> PyResult<(u64, u64)> {
    let f = field_of(field)?;
    let r = match d {
        1 => core::census_d1(f),
        2 => core::census_d2(f),
        _ => return Err(err("census covers d = 1 and d = 2")),
    }
    .map_err(err)?;
    Ok((r.tuples, r.mismatches()))
}

#[pymodule]
fn leonard_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyParameterArray>()?;
    m.add_class::<PyTdd>()?;
    m.add_class::<PyMatrixPair>()?;
    m.add_class::<PyPrimaryData>()?;
    m.add_class::<PyClassification>()?;
    m.add_function(wrap_pyfunction!(q_from_beta, m)?)?;
    m.add_function(wrap_pyfunction!(from_json, m)?)?;
    m.add_function(wrap_pyfunction!(expand_dual_q_krawtchouk, m)?)?;
    m.add_function(wrap_pyfunction!(expand_krawtchouk, m)?)?;
    m.add_function(wrap_pyfunction!(sample, m)?)?;
    m.add_function(wrap_pyfunction!(census, m)?)?;
    Ok(())
}
