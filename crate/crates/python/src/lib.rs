//! Python bindings. Reports are returned as JSON text; decode with `json.loads`.

use std::sync::Arc;

use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

use qgrass::degen::{bongartz_data, degeneration_poset, hom_leq};
use qgrass::specialize::{check_cover, check_degeneration, pbw_rep, verify_theorem, VerifyOptions};
use qgrass::text::{parse_quiver, parse_rep, poset_dot, poset_report};
use qgrass::{DimVector, Grassmannians, OracleOptions, PathAlgebra, RepClass, TypeAQuiver};

fn py_err(e: qgrass::Error) -> PyErr {
    match e {
        qgrass::Error::Internal(_) => PyRuntimeError::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

fn to_json<T: serde::Serialize>(v: &T) -> String {
    serde_json::to_string(v).expect("reports serialize")
}

/// A type-A quiver with its homological tables and a memo of Poincaré polynomials.
#[pyclass(name = "Quiver", frozen)]
struct PyQuiver {
    quiver: TypeAQuiver,
    grass: Arc<Grassmannians>,
}

impl PyQuiver {
    fn alg(&self) -> &PathAlgebra {
        self.grass.alg()
    }

    fn rep(&self, text: &str) -> PyResult<RepClass> {
        parse_rep(text, &self.quiver).map_err(py_err)
    }

    fn dim(&self, v: Vec<usize>) -> PyResult<DimVector> {
        let d = DimVector(v);
        self.quiver.check_dim(&d).map_err(py_err)?;
        Ok(d)
    }
}

#[pymethods]
impl PyQuiver {
    /// `Quiver("A3:FB")`
    #[new]
    fn new(spec: &str) -> PyResult<Self> {
        let quiver = parse_quiver(spec).map_err(py_err)?;
        let grass = Arc::new(Grassmannians::for_quiver(&quiver).map_err(py_err)?);
        Ok(PyQuiver { quiver, grass })
    }

    #[getter]
    fn n(&self) -> usize {
        self.quiver.n()
    }

    fn __repr__(&self) -> String {
        format!("Quiver('{}')", self.quiver)
    }

    fn intervals(&self) -> Vec<String> {
        self.alg().intervals().iter().map(ToString::to_string).collect()
    }

    /// Canonical text of a representation.
    fn normalize(&self, rep: &str) -> PyResult<String> {
        Ok(self.rep(rep)?.to_string())
    }

    fn dim_of(&self, rep: &str) -> PyResult<Vec<usize>> {
        Ok(self.rep(rep)?.dim(self.quiver.n()).0)
    }

    fn euler_form(&self, d: Vec<usize>, e: Vec<usize>) -> PyResult<i64> {
        let (d, e) = (self.dim(d)?, self.dim(e)?);
        qgrass::euler_form(&self.quiver, &d.signed(), &e.signed()).map_err(py_err)
    }

    fn hom(&self, m: &str, n: &str) -> PyResult<usize> {
        Ok(self.alg().hom_dim(&self.rep(m)?, &self.rep(n)?))
    }

    fn ext(&self, m: &str, n: &str) -> PyResult<usize> {
        self.alg().ext_dim(&self.rep(m)?, &self.rep(n)?).map_err(py_err)
    }

    /// Auslander-Reiten translate; `inverse=True` for the inverse translate.
    #[pyo3(signature = (rep, inverse = false))]
    fn tau(&self, rep: &str, inverse: bool) -> PyResult<String> {
        let dir = if inverse { qgrass::TauDirection::Inverse } else { qgrass::TauDirection::Forward };
        Ok(self.alg().tau_class(&self.rep(rep)?, dir).to_string())
    }

    fn classes(&self, d: Vec<usize>) -> PyResult<Vec<String>> {
        let d = self.dim(d)?;
        Ok(qgrass::enumerate_rep_classes(&self.quiver, &d).map_err(py_err)?.iter().map(ToString::to_string).collect())
    }

    /// Whether `m` degenerates to `n`.
    fn degenerates_to(&self, m: &str, n: &str) -> PyResult<bool> {
        hom_leq(self.alg(), &self.rep(m)?, &self.rep(n)?).map_err(py_err)
    }

    /// JSON node/cover list of the degeneration poset, or DOT with `dot=True`.
    #[pyo3(signature = (d, dot = false))]
    fn poset(&self, d: Vec<usize>, dot: bool) -> PyResult<String> {
        let d = self.dim(d)?;
        let poset = degeneration_poset(self.alg(), &d).map_err(py_err)?;
        if dot {
            poset_dot(self.alg(), &poset).map_err(py_err)
        } else {
            Ok(to_json(&poset_report(self.alg(), &poset).map_err(py_err)?))
        }
    }

    fn bongartz(&self, m: &str, n: &str) -> PyResult<String> {
        Ok(to_json(&bongartz_data(self.alg(), &self.rep(m)?, &self.rep(n)?).map_err(py_err)?))
    }

    /// Poincaré polynomial of `Gr_e(rep)` as coefficients, low degree first.
    fn betti(&self, rep: &str, e: Vec<usize>) -> PyResult<Vec<i64>> {
        let e = self.dim(e)?;
        Ok(self.grass.betti(&self.rep(rep)?, &e).map_err(py_err)?.coeffs().to_vec())
    }

    /// The same polynomial recovered from finite-field point counts.
    fn betti_by_counting(&self, rep: &str, e: Vec<usize>) -> PyResult<Vec<i64>> {
        let e = self.dim(e)?;
        let p = qgrass::betti_oracle(&self.quiver, &self.rep(rep)?, &e, OracleOptions::default()).map_err(py_err)?;
        Ok(p.coeffs().to_vec())
    }

    fn point_count(&self, rep: &str, e: Vec<usize>, p: u64) -> PyResult<u128> {
        let e = self.dim(e)?;
        qgrass::point_count(&self.quiver, &self.rep(rep)?, &e, p).map_err(py_err)
    }

    fn strata(&self, m: &str, n: &str, e: Vec<usize>) -> PyResult<String> {
        let e = self.dim(e)?;
        let bd = bongartz_data(self.alg(), &self.rep(m)?, &self.rep(n)?).map_err(py_err)?;
        Ok(to_json(&self.grass.strata_table(&bd, &e).map_err(py_err)?))
    }

    fn check_cover(&self, m: &str, n: &str, e: Vec<usize>) -> PyResult<String> {
        let e = self.dim(e)?;
        Ok(to_json(&check_cover(&self.grass, &self.rep(m)?, &self.rep(n)?, &e).map_err(py_err)?))
    }

    fn check_degeneration(&self, m: &str, n: &str, e: Vec<usize>) -> PyResult<String> {
        let e = self.dim(e)?;
        Ok(to_json(&check_degeneration(&self.grass, &self.rep(m)?, &self.rep(n)?, &e).map_err(py_err)?))
    }

    #[pyo3(signature = (d, jobs = None))]
    fn verify(&self, py: Python<'_>, d: Vec<usize>, jobs: Option<usize>) -> PyResult<String> {
        let d = self.dim(d)?;
        let grass = Arc::clone(&self.grass);
        let summary = py
            .detach(move || verify_theorem(&grass, &d, VerifyOptions { jobs, ..Default::default() }))
            .map_err(py_err)?;
        Ok(to_json(&summary))
    }
}

/// `(rep, d, e)` of the PBW representation `M^i` of the equioriented `A_n`.
#[pyfunction]
fn pbw(n: usize, i: Vec<usize>) -> PyResult<(String, Vec<usize>, Vec<usize>)> {
    let (m, d, e) = pbw_rep(n, &i).map_err(py_err)?;
    Ok((m.to_string(), d.0, e.0))
}

#[pymodule]
#[pyo3(name = "qgrass")]
fn qgrass_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyQuiver>()?;
    m.add_function(wrap_pyfunction!(pbw, m)?)?;
    Ok(())
}
