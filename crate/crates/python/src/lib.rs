//! Python bindings. Reports come back as JSON strings.

use pyo3::exceptions::{PyArithmeticError, PyValueError};
use pyo3::prelude::*;

use qhforge::algebra::{inverse, is_unit, UnitTest, DEFAULT_ORDER_CAP};
use qhforge::catalog::build_novikov;
use qhforge::novikov::{Convention, NovikovMonomial};
use qhforge::parse::parse_element;
use qhforge::property_d::{check_property_d, vanishing_verdict};
use qhforge::report::{ring_info, to_json};
use qhforge::seidel::{classify_top_units, finite_order_verdict, DEFAULT_COEFF_BOUND};
use qhforge::verify::{criteria, CriterionResult};
use qhforge::{AlgebraElement, Error};

fn err(e: Error) -> PyErr {
    match e {
        Error::NotAUnit { .. } | Error::NonFiniteInverse | Error::ZeroElement => PyArithmeticError::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

/// A catalog ring with Novikov coefficients.
#[pyclass(frozen)]
struct Ring {
    inner: qhforge::Ring<NovikovMonomial>,
}

impl Ring {
    fn elem(&self, s: &str) -> PyResult<AlgebraElement<NovikovMonomial>> {
        parse_element(&self.inner, s).map_err(err)
    }
}

#[pymethods]
impl Ring {
    #[new]
    fn new(id: &str) -> PyResult<Self> {
        Ok(Ring { inner: build_novikov(id).map_err(err)? })
    }

    #[getter]
    fn name(&self) -> String {
        self.inner.name().to_string()
    }

    #[getter]
    fn rank(&self) -> usize {
        self.inner.rank()
    }

    #[getter]
    fn basis(&self) -> Vec<String> {
        self.inner.basis().iter().map(|b| b.label.clone()).collect()
    }

    fn normal_form(&self, a: &str) -> PyResult<String> {
        Ok(self.elem(a)?.to_string())
    }

    fn mul(&self, a: &str, b: &str) -> PyResult<String> {
        Ok((&self.elem(a)? * &self.elem(b)?).to_string())
    }

    fn pow(&self, a: &str, k: i64) -> PyResult<String> {
        let x = self.elem(a)?;
        let base = if k < 0 { inverse(&x).map_err(err)? } else { x };
        Ok(base.power(k.unsigned_abs()).to_string())
    }

    fn invert(&self, a: &str) -> PyResult<String> {
        Ok(inverse(&self.elem(a)?).map_err(err)?.to_string())
    }

    /// `None` for units, otherwise a nonzero `w` with `a*w = 0`.
    fn zero_divisor_witness(&self, a: &str) -> PyResult<Option<String>> {
        Ok(match is_unit(&self.elem(a)?).map_err(err)? {
            UnitTest::Unit => None,
            UnitTest::ZeroDivisor(w) => Some(w.to_string()),
        })
    }

    #[pyo3(signature = (table = false))]
    fn info(&self, table: bool) -> String {
        to_json("ring", &ring_info(&self.inner, table, Convention::Display))
    }

    #[pyo3(signature = (bound = DEFAULT_COEFF_BOUND))]
    fn classify_units(&self, bound: i64) -> String {
        to_json("units", &classify_top_units(&self.inner, bound).summary(Convention::Display))
    }

    #[pyo3(signature = (bound = DEFAULT_COEFF_BOUND, cap = DEFAULT_ORDER_CAP))]
    fn unit_orders(&self, bound: i64, cap: u64) -> PyResult<String> {
        let v = finite_order_verdict(&self.inner, bound, cap).map_err(err)?;
        Ok(to_json("orders", &v.summary(Convention::Display)))
    }

    fn property_d(&self) -> String {
        to_json("property-d", &check_property_d(&self.inner))
    }

    #[pyo3(signature = (bound = DEFAULT_COEFF_BOUND, cap = DEFAULT_ORDER_CAP))]
    fn verdict(&self, bound: i64, cap: u64) -> PyResult<String> {
        Ok(to_json("verdict", &vanishing_verdict(&self.inner, bound, cap).map_err(err)?))
    }

    fn __repr__(&self) -> String {
        format!("Ring({:?})", self.inner.name())
    }
}

/// Run the reproduction suite, optionally a subset of criteria.
#[pyfunction]
#[pyo3(signature = (only = None))]
fn verify(py: Python<'_>, only: Option<Vec<u8>>) -> String {
    let results: Vec<CriterionResult> = py.allow_threads(|| {
        criteria()
            .iter()
            .filter(|c| only.as_ref().is_none_or(|o| o.contains(&c.id)))
            .map(|c| c.run())
            .collect()
    });
    serde_json::to_string(&results).expect("criterion results serialize")
}

#[pymodule]
fn qhforge_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Ring>()?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    m.add("SCHEMA_VERSION", qhforge::report::SCHEMA_VERSION)?;
    Ok(())
}
