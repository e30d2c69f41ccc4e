use clap::ValueEnum;
use labudde_core::{
    as_sym_tridiagonal, build, charpoly_hess, charpoly_sym, errors_of, exact_charpoly_hessenberg,
    lift, poly_via_eig, to_hessenberg, validate_hessenberg, CoeffError, DenseMatrix, Error,
    Gallery, RationalPoly,
};
use serde::Serialize;

use crate::{CliResult, ReproduceArgs};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Experiment {
    Forsythe,
    Hansen,
    Toeplitz,
    Frank,
    Chow,
}

impl Experiment {
    pub fn default_n(self) -> usize {
        match self {
            Experiment::Forsythe | Experiment::Hansen => 200,
            Experiment::Toeplitz => 100,
            Experiment::Frank | Experiment::Chow => 50,
        }
    }

    fn tag(self) -> &'static str {
        match self {
            Experiment::Forsythe => "forsythe",
            Experiment::Hansen => "hansen",
            Experiment::Toeplitz => "toeplitz",
            Experiment::Frank => "frank",
            Experiment::Chow => "chow",
        }
    }
}

/// One point of a long-format series table.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SeriesPoint {
    pub experiment: &'static str,
    pub series: &'static str,
    pub k: usize,
    pub value: f64,
}

struct Sink {
    experiment: &'static str,
    points: Vec<SeriesPoint>,
}

impl Sink {
    fn push(&mut self, series: &'static str, values: impl IntoIterator<Item = (usize, f64)>) {
        let experiment = self.experiment;
        self.points
            .extend(values.into_iter().map(|(k, value)| SeriesPoint {
                experiment,
                series,
                k,
                value,
            }));
    }

    fn values(&mut self, series: &'static str, v: &[f64]) {
        self.push(series, v.iter().enumerate().map(|(i, &x)| (i + 1, x)));
    }

    fn abs(&mut self, series: &'static str, e: &[CoeffError]) {
        self.push(
            series,
            e.iter().enumerate().map(|(i, x)| (i + 1, x.abs_err)),
        );
    }

    /// Rows with a zero exact coefficient have no relative error and are left out.
    fn rel(&mut self, series: &'static str, e: &[CoeffError]) {
        self.push(
            series,
            e.iter()
                .enumerate()
                .filter_map(|(i, x)| x.rel_err.map(|r| (i + 1, r))),
        );
    }
}

fn known(g: &Gallery) -> CliResult<(DenseMatrix, RationalPoly)> {
    let m = build(g)?;
    let poly = match m.known {
        Some(p) => p,
        None => exact_charpoly_hessenberg(&lift(&m.matrix))?,
    };
    Ok((m.matrix, poly))
}

fn eig_errors(a: &DenseMatrix, exact: &RationalPoly) -> CliResult<Vec<CoeffError>> {
    Ok(errors_of(&poly_via_eig(a)?.coeffs, exact)?)
}

/// Emits the data series of one experiment: errors of each method and the
/// running bounds, indexed by coefficient.
pub fn reproduce(args: &ReproduceArgs) -> CliResult<Vec<SeriesPoint>> {
    let exp = args.experiment;
    let n = args.n.unwrap_or(exp.default_n());
    let mut sink = Sink {
        experiment: exp.tag(),
        points: Vec::new(),
    };
    match exp {
        Experiment::Forsythe => {
            let (a, exact) = known(&Gallery::ForsytheRotated {
                n,
                nu: 1e-10,
                seed: args.seed,
            })?;
            let (h, _) = to_hessenberg(&a)?;
            let r = charpoly_hess(&h, n)?;
            sink.abs("labudde_abs_err", &errors_of(&r.coeffs, &exact)?);
            sink.values("rho", &r.bounds);
            sink.abs("eig_abs_err", &eig_errors(&a, &exact)?);
        }
        Experiment::Hansen | Experiment::Toeplitz => {
            let g = if exp == Experiment::Hansen {
                Gallery::Hansen { n }
            } else {
                Gallery::ToeplitzIndef { n, b: 100.0 }
            };
            let (a, exact) = known(&g)?;
            let r = charpoly_sym(&as_sym_tridiagonal(&a, 0.0)?, n)?;
            let errs = errors_of(&r.coeffs, &exact)?;
            if exp == Experiment::Toeplitz {
                sink.abs("labudde_abs_err", &errs);
            }
            sink.rel("labudde_rel_err", &errs);
            sink.values("phi", &r.bounds);
            sink.rel("eig_rel_err", &eig_errors(&a, &exact)?);
        }
        Experiment::Frank => {
            let (a, exact) = known(&Gallery::Frank { n })?;
            let r = charpoly_hess(&validate_hessenberg(&a)?, n)?;
            sink.rel("labudde_rel_err", &errors_of(&r.coeffs, &exact)?);
            sink.values("rho", &r.bounds);
            sink.rel("eig_rel_err", &eig_errors(&a, &exact)?);
        }
        Experiment::Chow => {
            let (at, exact) = known(&Gallery::ChowTranspose { n })?;
            let r = charpoly_hess(&validate_hessenberg(&at)?, n)?;
            sink.rel("labudde_rel_err", &errors_of(&r.coeffs, &exact)?);
            sink.values("rho", &r.bounds);
            sink.rel("eig_rel_err", &eig_errors(&at, &exact)?);
            // the untransposed matrix shares the polynomial but needs stage one
            let chow = at.transpose();
            let (h, _) = to_hessenberg(&chow)?;
            let reduced = charpoly_hess(&h, n)?;
            sink.rel("reduced_rel_err", &errors_of(&reduced.coeffs, &exact)?);
            sink.values("reduced_rho", &reduced.bounds);
        }
    }
    if sink.points.iter().any(|p| !p.value.is_finite()) {
        return Err(Error::Overflow(format!("{} series has a non-finite value", exp.tag())).into());
    }
    Ok(sink.points)
}
