use std::collections::BTreeMap;

use labudde_core::{
    build, charpoly_with, errors_of, exact_charpoly_auto, leverrier, lift, overall_bound_nonsym,
    overall_bound_sym, poly_via_eig, read_matrix_market, CoeffResult, DenseMatrix, Error, Gallery,
    Reducer, Route, Warning, MAX_ORACLE_ORDER,
};
use serde::Serialize;

use crate::{CliError, CliResult, ComputeArgs, MethodArg};

/// One output line of `compute`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Row {
    pub k: usize,
    pub coeff: f64,
    pub bound: Option<f64>,
    pub exact: Option<f64>,
    pub abs_err: Option<f64>,
    pub rel_err: Option<f64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ComputeOutput {
    pub n: usize,
    pub method: String,
    /// `symmetric`, `hessenberg` or `general`; absent for baselines.
    pub route: Option<&'static str>,
    /// Backward-error estimate of the reduction, when one ran.
    pub reduction_error: Option<f64>,
    pub warnings: Vec<String>,
    pub rows: Vec<Row>,
}

pub(crate) fn load_matrix(args: &ComputeArgs) -> CliResult<DenseMatrix> {
    if let Some(path) = &args.input {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))?;
        return read_matrix_market(&text).map_err(|e| match e {
            Error::Spec(m) => Error::Structure(m).into(),
            e => e.into(),
        });
    }
    let name = args
        .gallery
        .ok_or_else(|| CliError::Usage("one of --input or --gallery is required".into()))?;
    let mut params = BTreeMap::new();
    if let Some(nu) = args.nu {
        params.insert("nu".to_string(), nu.to_string());
    }
    if let Some(b) = args.b {
        params.insert("b".to_string(), b.to_string());
    }
    if let Some(c) = &args.coeffs {
        params.insert("coeffs".to_string(), c.clone());
    }
    params.insert("seed".to_string(), args.seed.to_string());
    let spec = Gallery::from_params(name, args.n, &params)?;
    Ok(build(&spec)?.matrix)
}

fn warning_text(w: &Warning) -> String {
    match w {
        Warning::SubdiagonalUnderflow { level } => {
            format!("subdiagonal product underflow at level {level}")
        }
        Warning::ImaginaryResidue(r) => format!("discarded imaginary residue {r:e}"),
    }
}

/// Runs `compute` and returns the rows without formatting them.
pub fn compute(args: &ComputeArgs) -> CliResult<ComputeOutput> {
    let a = load_matrix(args)?;
    let n = a.n();
    let k = args.k.unwrap_or(n);
    if k == 0 || k > n {
        return Err(Error::Index { k, n }.into());
    }
    if args.oracle && n > MAX_ORACLE_ORDER {
        return Err(CliError::Usage(format!(
            "--oracle needs n <= {MAX_ORACLE_ORDER}, got {n}"
        )));
    }

    let (mut result, route, reduction_error) = match args.method {
        MethodArg::Labudde => {
            let reducer = Reducer {
                nu: args.bound_nu,
                ..Reducer::default()
            };
            let c = charpoly_with(&a, k, &reducer)?;
            let route = match c.route {
                Route::Symmetric => "symmetric",
                Route::Hessenberg => "hessenberg",
                Route::General => "general",
            };
            let err = c.reduction.map(|r| r.backward_error_estimate);
            (c.result, Some(route), err)
        }
        MethodArg::EigSummation => (poly_via_eig(&a)?, None, None),
        MethodArg::Leverrier => (leverrier(&a)?, None, None),
    };
    truncate(&mut result, k);
    if args.overall {
        if args.method != MethodArg::Labudde {
            return Err(CliError::Usage("--overall needs --method labudde".into()));
        }
        let total = if route == Some("symmetric") {
            overall_bound_sym(&a, &result, args.bound_nu)?
        } else {
            overall_bound_nonsym(&a, &result, args.bound_nu)?
        };
        result.bounds = total.totals;
    }

    let with_bounds = !args.no_bounds && args.method == MethodArg::Labudde;
    let exact = if args.oracle {
        let poly = exact_charpoly_auto(&lift(&a));
        let errs = errors_of(&result.coeffs, &poly)?;
        Some((poly.to_f64(), errs))
    } else {
        None
    };

    let rows = (0..k)
        .map(|i| Row {
            k: i + 1,
            coeff: result.coeffs[i],
            bound: with_bounds.then(|| result.bounds[i]),
            exact: exact.as_ref().map(|(x, _)| x[i]),
            abs_err: exact.as_ref().map(|(_, e)| e[i].abs_err),
            rel_err: exact.as_ref().and_then(|(_, e)| e[i].rel_err),
        })
        .collect();

    Ok(ComputeOutput {
        n,
        method: result.method.tag().to_string(),
        route,
        reduction_error,
        warnings: result.warnings.iter().map(warning_text).collect(),
        rows,
    })
}

fn truncate(r: &mut CoeffResult, k: usize) {
    r.coeffs.truncate(k);
    r.bounds.truncate(k);
}
