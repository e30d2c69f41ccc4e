use std::collections::BTreeMap;

use labudde_core as core;
use labudde_core::{DenseMatrix, Error, Gallery, GalleryName, Reducer, Route, Warning};
use pyo3::create_exception;
use pyo3::exceptions::{PyOverflowError, PyRuntimeError, PyValueError};
use pyo3::prelude::*;

create_exception!(
    labudde,
    HypothesisError,
    PyValueError,
    "A bound theorem's hypothesis does not hold."
);

fn to_py(e: Error) -> PyErr {
    match e {
        Error::Overflow(_) => PyOverflowError::new_err(e.to_string()),
        Error::EigFailure => PyRuntimeError::new_err(e.to_string()),
        Error::Hypothesis(_) => HypothesisError::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

fn dense(rows: Vec<Vec<f64>>) -> PyResult<DenseMatrix> {
    DenseMatrix::from_rows(&rows).map_err(to_py)
}

/// Coefficients `c_1..c_k` of `det(lambda I - A)` with absolute error bounds.
#[pyclass(name = "CoeffResult", module = "labudde", frozen, get_all)]
struct PyCoeffResult {
    coeffs: Vec<f64>,
    bounds: Vec<f64>,
    method: String,
    warnings: Vec<String>,
    /// Path taken by `charpoly`; `None` for the other entry points.
    route: Option<String>,
}

#[pymethods]
impl PyCoeffResult {
    fn __len__(&self) -> usize {
        self.coeffs.len()
    }

    fn __repr__(&self) -> String {
        format!(
            "CoeffResult(method='{}', k={}, route={:?})",
            self.method,
            self.coeffs.len(),
            self.route
        )
    }
}

impl PyCoeffResult {
    fn wrap(r: core::CoeffResult, route: Option<Route>) -> Self {
        let warnings = r
            .warnings
            .iter()
            .map(|w| match w {
                Warning::SubdiagonalUnderflow { level } => {
                    format!("subdiagonal product underflow at level {level}")
                }
                Warning::ImaginaryResidue(x) => format!("discarded imaginary residue {x:e}"),
            })
            .collect();
        let route = route.map(|r| {
            match r {
                Route::Symmetric => "symmetric",
                Route::Hessenberg => "hessenberg",
                Route::General => "general",
            }
            .to_string()
        });
        Self {
            coeffs: r.coeffs,
            bounds: r.bounds,
            method: r.method.tag().to_string(),
            warnings,
            route,
        }
    }
}

/// Dispatches on structure: symmetric, already Hessenberg, or general.
#[pyfunction]
#[pyo3(signature = (a, k=None, nu=core::DEFAULT_NU))]
fn charpoly(a: Vec<Vec<f64>>, k: Option<usize>, nu: f64) -> PyResult<PyCoeffResult> {
    let a = dense(a)?;
    let k = k.unwrap_or(a.n());
    let c = core::charpoly_with(
        &a,
        k,
        &Reducer {
            nu,
            ..Reducer::default()
        },
    )
    .map_err(to_py)?;
    Ok(PyCoeffResult::wrap(c.result, Some(c.route)))
}

#[pyfunction]
#[pyo3(signature = (alpha, beta, k=None))]
fn charpoly_sym(alpha: Vec<f64>, beta: Vec<f64>, k: Option<usize>) -> PyResult<PyCoeffResult> {
    let t = core::SymTridiagonal::new(alpha, beta).map_err(to_py)?;
    let k = k.unwrap_or(t.n());
    Ok(PyCoeffResult::wrap(
        core::charpoly_sym(&t, k).map_err(to_py)?,
        None,
    ))
}

#[pyfunction]
#[pyo3(signature = (h, k=None))]
fn charpoly_hess(h: Vec<Vec<f64>>, k: Option<usize>) -> PyResult<PyCoeffResult> {
    let h = core::validate_hessenberg(&dense(h)?).map_err(to_py)?;
    let k = k.unwrap_or(h.n());
    Ok(PyCoeffResult::wrap(
        core::charpoly_hess(&h, k).map_err(to_py)?,
        None,
    ))
}

#[pyfunction]
fn leverrier(a: Vec<Vec<f64>>) -> PyResult<PyCoeffResult> {
    Ok(PyCoeffResult::wrap(
        core::leverrier(&dense(a)?).map_err(to_py)?,
        None,
    ))
}

#[pyfunction]
fn poly_via_eig(a: Vec<Vec<f64>>) -> PyResult<PyCoeffResult> {
    Ok(PyCoeffResult::wrap(
        core::poly_via_eig(&dense(a)?).map_err(to_py)?,
        None,
    ))
}

/// Returns `(H, backward_error_estimate)`.
#[pyfunction]
fn to_hessenberg(a: Vec<Vec<f64>>) -> PyResult<(Vec<Vec<f64>>, f64)> {
    let (h, report) = core::to_hessenberg(&dense(a)?).map_err(to_py)?;
    Ok((h.as_dense().to_rows(), report.backward_error_estimate))
}

/// Returns `(alpha, beta, backward_error_estimate)`.
#[pyfunction]
fn to_tridiagonal(a: Vec<Vec<f64>>) -> PyResult<(Vec<f64>, Vec<f64>, f64)> {
    let (t, report) = core::to_tridiagonal(&dense(a)?).map_err(to_py)?;
    Ok((
        t.alpha().to_vec(),
        t.beta().to_vec(),
        report.backward_error_estimate,
    ))
}

#[pyfunction]
#[pyo3(signature = (name, n=None, nu=None, b=None, seed=None, coeffs=None))]
fn gallery(
    name: &str,
    n: Option<usize>,
    nu: Option<f64>,
    b: Option<f64>,
    seed: Option<u64>,
    coeffs: Option<Vec<f64>>,
) -> PyResult<Vec<Vec<f64>>> {
    let name: GalleryName = name.parse().map_err(to_py)?;
    let mut params = BTreeMap::new();
    let mut put = |key: &str, v: Option<String>| {
        if let Some(v) = v {
            params.insert(key.to_string(), v);
        }
    };
    put("nu", nu.map(|x| x.to_string()));
    put("b", b.map(|x| x.to_string()));
    put("seed", seed.map(|x| x.to_string()));
    put(
        "coeffs",
        coeffs.map(|c| c.iter().map(f64::to_string).collect::<Vec<_>>().join(",")),
    );
    let spec = Gallery::from_params(name, n, &params).map_err(to_py)?;
    Ok(core::build(&spec).map_err(to_py)?.matrix.to_rows())
}

/// Exact coefficients of the matrix as given, as `"p/q"` strings.
#[pyfunction]
fn exact_charpoly(a: Vec<Vec<f64>>) -> PyResult<Vec<String>> {
    let a = dense(a)?;
    if a.n() > core::MAX_ORACLE_ORDER {
        return Err(PyValueError::new_err(format!(
            "exact oracle limited to n <= {}",
            core::MAX_ORACLE_ORDER
        )));
    }
    let p = core::exact_charpoly_auto(&core::lift(&a));
    Ok(p.coeffs
        .iter()
        .map(|c| format!("{}/{}", c.numer(), c.denom()))
        .collect())
}

/// Totals of the two-stage bound for `charpoly(a, k)`.
#[pyfunction]
#[pyo3(signature = (a, k=None, nu=core::DEFAULT_NU))]
fn overall_bound(a: Vec<Vec<f64>>, k: Option<usize>, nu: f64) -> PyResult<Vec<f64>> {
    let a = dense(a)?;
    let k = k.unwrap_or(a.n());
    let c = core::charpoly_with(
        &a,
        k,
        &Reducer {
            nu,
            ..Reducer::default()
        },
    )
    .map_err(to_py)?;
    let b = if c.route == Route::Symmetric {
        core::overall_bound_sym(&a, &c.result, nu)
    } else {
        core::overall_bound_nonsym(&a, &c.result, nu)
    };
    Ok(b.map_err(to_py)?.totals)
}

#[pymodule]
fn labudde(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("UNIT_ROUNDOFF", core::UNIT_ROUNDOFF)?;
    m.add("HypothesisError", m.py().get_type::<HypothesisError>())?;
    m.add_class::<PyCoeffResult>()?;
    m.add_function(wrap_pyfunction!(charpoly, m)?)?;
    m.add_function(wrap_pyfunction!(charpoly_sym, m)?)?;
    m.add_function(wrap_pyfunction!(charpoly_hess, m)?)?;
    m.add_function(wrap_pyfunction!(leverrier, m)?)?;
    m.add_function(wrap_pyfunction!(poly_via_eig, m)?)?;
    m.add_function(wrap_pyfunction!(to_hessenberg, m)?)?;
    m.add_function(wrap_pyfunction!(to_tridiagonal, m)?)?;
    m.add_function(wrap_pyfunction!(gallery, m)?)?;
    m.add_function(wrap_pyfunction!(exact_charpoly, m)?)?;
    m.add_function(wrap_pyfunction!(overall_bound, m)?)?;
    Ok(())
}
