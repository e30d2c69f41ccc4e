//! First-order bounds covering both stages: the reduction's backward error,
//! amplified by coefficient condition numbers built from singular values,
//! plus the second stage's running bound.

use crate::baselines::to_nalgebra;
use crate::error::{Error, Result};
use crate::matrix::{CoeffResult, DenseMatrix};
use crate::UNIT_ROUNDOFF;

/// Singular values in descending order.
#[derive(Debug, Clone, PartialEq)]
pub struct SingularSpectrum(Vec<f64>);

impl SingularSpectrum {
    pub fn of(a: &DenseMatrix) -> Result<Self> {
        let m = to_nalgebra(a);
        let svd = m
            .try_svd(false, false, f64::EPSILON, 0)
            .ok_or(Error::EigFailure)?;
        Self::from_values(svd.singular_values.iter().copied().collect())
    }

    pub fn from_values(mut v: Vec<f64>) -> Result<Self> {
        if v.iter().any(|x| !(x.is_finite() && *x >= 0.0)) {
            return Err(Error::Domain(
                "singular values must be finite and >= 0".into(),
            ));
        }
        v.sort_by(|a, b| b.total_cmp(a));
        Ok(Self(v))
    }

    pub fn values(&self) -> &[f64] {
        &self.0
    }
}

/// `s_j`, the `j`-th elementary symmetric function of nonnegative `values`,
/// with `s_0 = 1`.
///
/// Accumulated coefficient-wise like the summation algorithm; on nonnegative
/// input every update is an addition of nonnegative terms.
pub fn elem_sym(values: &[f64], j: usize) -> Result<f64> {
    if j > values.len() {
        return Err(Error::Index {
            k: j,
            n: values.len(),
        });
    }
    if values.iter().any(|x| !(*x >= 0.0)) {
        return Err(Error::Domain(
            "elementary symmetric functions need values >= 0".into(),
        ));
    }
    let mut e = vec![0.0; j + 1];
    e[0] = 1.0;
    for (i, &v) in values.iter().enumerate() {
        for m in (1..=j.min(i + 1)).rev() {
            e[m] += v * e[m - 1];
        }
    }
    if !e[j].is_finite() {
        return Err(Error::Overflow(format!("s_{j} is not finite")));
    }
    Ok(e[j])
}

/// `s_{j-1}^{(j)}`: the `(j-1)`-st elementary symmetric function of the `j`
/// largest values.
pub fn elem_sym_top(values: &[f64], j: usize) -> Result<f64> {
    if j == 0 || j > values.len() {
        return Err(Error::Index {
            k: j,
            n: values.len(),
        });
    }
    let mut top = values.to_vec();
    top.sort_by(|a, b| b.total_cmp(a));
    top.truncate(j);
    let s = elem_sym(&top, j - 1)?;
    let cap = j as f64 * top[..j - 1].iter().product::<f64>();
    debug_assert!(
        s <= cap * (1.0 + 4.0 * j as f64 * UNIT_ROUNDOFF),
        "s_(j-1)^(j) = {s} exceeds j * sigma_1 ... sigma_(j-1) = {cap}"
    );
    Ok(s)
}

/// Per-coefficient totals of the two-stage bound.
#[derive(Debug, Clone, PartialEq)]
pub struct OverallBound {
    /// Condition number times the reduction's backward error.
    pub condition_terms: Vec<f64>,
    /// Running bounds of the second stage.
    pub running_terms: Vec<f64>,
    pub totals: Vec<f64>,
    pub nu: f64,
    pub u: f64,
}

fn backward_error(a: &DenseMatrix, nu: f64) -> Result<f64> {
    if !(nu > 0.0 && nu.is_finite()) {
        return Err(Error::Domain(format!("nu = {nu} must be positive")));
    }
    let n = a.n() as f64;
    let u = UNIT_ROUNDOFF;
    let fro = a.frobenius_norm();
    if !(fro < 1.0 / (nu * n * n * u)) {
        return Err(Error::Hypothesis(format!(
            "||A||_F = {fro:e} is not below 1/(nu n^2 u) = {:e}",
            1.0 / (nu * n * n * u)
        )));
    }
    Ok(nu * n * n * fro * u)
}

fn assemble(cond: Vec<f64>, result: &CoeffResult, nu: f64) -> Result<OverallBound> {
    let running = result.bounds.clone();
    let totals: Vec<f64> = cond.iter().zip(&running).map(|(c, r)| c + r).collect();
    if totals.iter().any(|x| !x.is_finite()) {
        return Err(Error::Overflow("overall bound is not finite".into()));
    }
    Ok(OverallBound {
        condition_terms: cond,
        running_terms: running,
        totals,
        nu,
        u: UNIT_ROUNDOFF,
    })
}

/// Symmetric case: `(n - j + 1) s_{j-1} nu n^2 ||A||_F u + phi_j`.
/// Second-order terms in `u` are dropped.
pub fn overall_bound_sym(a: &DenseMatrix, result: &CoeffResult, nu: f64) -> Result<OverallBound> {
    let eps = backward_error(a, nu)?;
    let sigma = SingularSpectrum::of(a)?;
    overall_bound_sym_with(a.n(), &sigma, eps, result, nu)
}

pub(crate) fn overall_bound_sym_with(
    n: usize,
    sigma: &SingularSpectrum,
    eps: f64,
    result: &CoeffResult,
    nu: f64,
) -> Result<OverallBound> {
    let cond = (1..=result.k())
        .map(|j| Ok((n - j + 1) as f64 * elem_sym(sigma.values(), j - 1)? * eps))
        .collect::<Result<Vec<_>>>()?;
    assemble(cond, result, nu)
}

/// Nonsymmetric case: `binom(n, j) s_{j-1}^{(j)} nu n^2 ||A||_F u + rho_j`.
pub fn overall_bound_nonsym(
    a: &DenseMatrix,
    result: &CoeffResult,
    nu: f64,
) -> Result<OverallBound> {
    let eps = backward_error(a, nu)?;
    let sigma = SingularSpectrum::of(a)?;
    let n = a.n();
    let cond = (1..=result.k())
        .map(|j| Ok(binomial(n, j) * elem_sym_top(sigma.values(), j)? * eps))
        .collect::<Result<Vec<_>>>()?;
    assemble(cond, result, nu)
}

fn binomial(n: usize, k: usize) -> f64 {
    let k = k.min(n - k);
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::Method;

    #[test]
    fn elem_sym_small() {
        assert_eq!(elem_sym(&[2.0, 3.0], 0).unwrap(), 1.0);
        assert_eq!(elem_sym(&[2.0, 3.0], 1).unwrap(), 5.0);
        assert_eq!(elem_sym(&[2.0, 3.0], 2).unwrap(), 6.0);
        assert!(elem_sym(&[2.0], 2).is_err());
        assert!(elem_sym(&[-1.0], 1).is_err());
    }

    #[test]
    fn elem_sym_all_ones_spectrum() {
        let mut v = vec![0.0; 40];
        v[0] = 40.0;
        assert_eq!(elem_sym(&v, 1).unwrap(), 40.0);
        for j in 2..=40 {
            assert_eq!(elem_sym(&v, j).unwrap(), 0.0);
        }
    }

    #[test]
    fn elem_sym_top_cases() {
        let v = [1.0, 3.0, 2.0];
        assert_eq!(elem_sym_top(&v, 1).unwrap(), 1.0);
        assert_eq!(elem_sym_top(&v, 2).unwrap(), 5.0);
        assert_eq!(elem_sym_top(&v, 3).unwrap(), 11.0);
        assert!(elem_sym_top(&v, 0).is_err());
    }

    #[test]
    fn elem_sym_overflow() {
        assert!(matches!(
            elem_sym(&[1e200, 1e200], 2),
            Err(Error::Overflow(_))
        ));
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), 10.0);
        assert_eq!(binomial(40, 0), 1.0);
        assert_eq!(binomial(6, 6), 1.0);
    }

    #[test]
    fn first_condition_term() {
        let a = DenseMatrix::diagonal(&[1.0, -2.0, 2.0]).unwrap();
        let r = CoeffResult {
            coeffs: vec![-1.0],
            bounds: vec![0.5],
            method: Method::LaBuddeSym,
            warnings: vec![],
        };
        let b = overall_bound_sym(&a, &r, 10.0).unwrap();
        let expect = 10.0 * 27.0 * 3.0 * UNIT_ROUNDOFF;
        assert!((b.condition_terms[0] - expect).abs() <= 1e-14 * expect);
        assert_eq!(b.totals[0], b.condition_terms[0] + 0.5);
    }

    #[test]
    fn hypothesis_enforced() {
        let a = DenseMatrix::diagonal(&[1e15, 1.0]).unwrap();
        let r = CoeffResult {
            coeffs: vec![0.0],
            bounds: vec![0.0],
            method: Method::LaBuddeSym,
            warnings: vec![],
        };
        assert!(matches!(
            overall_bound_sym(&a, &r, 10.0),
            Err(Error::Hypothesis(_))
        ));
        assert!(matches!(
            overall_bound_nonsym(&a, &r, 10.0),
            Err(Error::Hypothesis(_))
        ));
    }

    #[test]
    fn spectrum_sorted() {
        let a = DenseMatrix::diagonal(&[1.0, -5.0, 3.0]).unwrap();
        let s = SingularSpectrum::of(&a).unwrap();
        let v = s.values();
        assert!((v[0] - 5.0).abs() < 1e-14 && (v[1] - 3.0).abs() < 1e-14);
        assert!((v[2] - 1.0).abs() < 1e-14);
    }
}
