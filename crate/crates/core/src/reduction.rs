//! Orthogonal similarity reduction by Householder reflectors.
//!
//! A general matrix is reduced to upper Hessenberg form, a symmetric one to
//! symmetric tridiagonal form. Columns that already have nothing to
//! annihilate are skipped, so structured input passes through bit-exactly.

use crate::error::{Error, Result};
use crate::matrix::{DenseMatrix, SymTridiagonal, UpperHessenberg};
use crate::UNIT_ROUNDOFF;

/// Default constant in the backward error model `nu * n^2 * ||A||_F * u`.
pub const DEFAULT_NU: f64 = 10.0;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReductionReport {
    /// `nu * n^2 * ||A||_F * u`.
    pub backward_error_estimate: f64,
    pub used_symmetric_path: bool,
    pub nu: f64,
}

/// Reduction settings.
#[derive(Debug, Clone, Copy)]
pub struct Reducer {
    pub nu: f64,
    /// Also form the orthogonal `Q` with `A = Q R Q^T`.
    pub accumulate_q: bool,
}

impl Default for Reducer {
    fn default() -> Self {
        Self {
            nu: DEFAULT_NU,
            accumulate_q: false,
        }
    }
}

#[derive(Debug, Clone)]
pub struct HessenbergForm {
    pub h: UpperHessenberg,
    pub report: ReductionReport,
    pub q: Option<DenseMatrix>,
}

#[derive(Debug, Clone)]
pub struct TridiagonalForm {
    pub t: SymTridiagonal,
    pub report: ReductionReport,
    pub q: Option<DenseMatrix>,
}

/// Reduces `a` to upper Hessenberg form with the default settings.
pub fn to_hessenberg(a: &DenseMatrix) -> Result<(UpperHessenberg, ReductionReport)> {
    let f = Reducer::default().hessenberg(a)?;
    Ok((f.h, f.report))
}

/// Reduces a symmetric `a` to tridiagonal form with the default settings.
pub fn to_tridiagonal(a: &DenseMatrix) -> Result<(SymTridiagonal, ReductionReport)> {
    let f = Reducer::default().tridiagonal(a)?;
    Ok((f.t, f.report))
}

/// Elementary reflector `P = I - tau v v^T` with `v[0] = 1` and
/// `P x = beta e_1`.
struct Reflector {
    v: Vec<f64>,
    tau: f64,
    beta: f64,
}

/// Returns `None` when `x[1..]` is already zero.
fn make_reflector(x: &[f64]) -> Option<Reflector> {
    if x[1..].iter().all(|&t| t == 0.0) {
        return None;
    }
    let x0 = x[0];
    let norm = scaled_norm(x);
    let beta = if x0 >= 0.0 { -norm } else { norm };
    let tau = (beta - x0) / beta;
    let denom = x0 - beta;
    let mut v = Vec::with_capacity(x.len());
    v.push(1.0);
    v.extend(x[1..].iter().map(|t| t / denom));
    Some(Reflector { v, tau, beta })
}

fn scaled_norm(x: &[f64]) -> f64 {
    let scale = x.iter().fold(0.0f64, |m, t| m.max(t.abs()));
    if scale == 0.0 {
        return 0.0;
    }
    let ssq: f64 = x.iter().map(|t| (t / scale) * (t / scale)).sum();
    scale * ssq.sqrt()
}

/// `M[:, off..] <- M[:, off..] (I - tau v v^T)` on a row-major `n x n` buffer.
fn apply_right(data: &mut [f64], n: usize, off: usize, r: &Reflector) {
    for row in data.chunks_mut(n) {
        let seg = &mut row[off..];
        let w: f64 = seg.iter().zip(&r.v).map(|(a, v)| a * v).sum();
        if w == 0.0 {
            continue;
        }
        let tw = r.tau * w;
        for (a, v) in seg.iter_mut().zip(&r.v) {
            *a -= tw * v;
        }
    }
}

fn report(a: &DenseMatrix, nu: f64, symmetric: bool) -> Result<ReductionReport> {
    if !(nu >= 0.0 && nu.is_finite()) {
        return Err(Error::Domain(format!("nu = {nu} must be finite and >= 0")));
    }
    let n = a.n() as f64;
    let est = nu * n * n * a.frobenius_norm() * UNIT_ROUNDOFF;
    if !est.is_finite() {
        return Err(Error::Overflow("backward error estimate".into()));
    }
    Ok(ReductionReport {
        backward_error_estimate: est,
        used_symmetric_path: symmetric,
        nu,
    })
}

fn check_finite(data: &[f64], what: &str) -> Result<()> {
    if data.iter().all(|x| x.is_finite()) {
        Ok(())
    } else {
        Err(Error::Overflow(format!("non-finite entry during {what}")))
    }
}

impl Reducer {
    pub fn hessenberg(&self, a: &DenseMatrix) -> Result<HessenbergForm> {
        let report = report(a, self.nu, false)?;
        let n = a.n();
        let mut h = a.clone().into_data();
        let mut q = self
            .accumulate_q
            .then(|| DenseMatrix::identity(n).into_data());
        let mut x = Vec::with_capacity(n);
        for k in 0..n.saturating_sub(2) {
            x.clear();
            x.extend((k + 1..n).map(|i| h[i * n + k]));
            let Some(r) = make_reflector(&x) else {
                continue;
            };
            // left: rows k+1.., columns k+1..
            for j in k + 1..n {
                let w: f64 = (0..r.v.len())
                    .map(|i| r.v[i] * h[(k + 1 + i) * n + j])
                    .sum();
                if w == 0.0 {
                    continue;
                }
                let tw = r.tau * w;
                for (i, v) in r.v.iter().enumerate() {
                    h[(k + 1 + i) * n + j] -= tw * v;
                }
            }
            h[(k + 1) * n + k] = r.beta;
            for i in k + 2..n {
                h[i * n + k] = 0.0;
            }
            apply_right(&mut h, n, k + 1, &r);
            if let Some(q) = q.as_mut() {
                apply_right(q, n, k + 1, &r);
            }
        }
        check_finite(&h, "Hessenberg reduction")?;
        Ok(HessenbergForm {
            h: UpperHessenberg::from_dense_unchecked(DenseMatrix::from_data_unchecked(n, h)),
            report,
            q: q.map(|q| DenseMatrix::from_data_unchecked(n, q)),
        })
    }

    pub fn tridiagonal(&self, a: &DenseMatrix) -> Result<TridiagonalForm> {
        if !a.is_symmetric() {
            return Err(Error::Structure(
                "tridiagonal reduction requires an exactly symmetric matrix".into(),
            ));
        }
        let report = report(a, self.nu, true)?;
        let n = a.n();
        let mut t = a.clone().into_data();
        let mut q = self
            .accumulate_q
            .then(|| DenseMatrix::identity(n).into_data());
        let mut beta = Vec::with_capacity(n.saturating_sub(1));
        let mut x = Vec::with_capacity(n);
        let mut p = vec![0.0; n];
        for k in 0..n.saturating_sub(1) {
            x.clear();
            x.extend((k + 1..n).map(|i| t[i * n + k]));
            let Some(r) = make_reflector(&x) else {
                beta.push(x[0]);
                continue;
            };
            let m = r.v.len();
            let off = k + 1;
            // p = tau * B v on the trailing block B
            for i in 0..m {
                let row = &t[(off + i) * n + off..(off + i) * n + n];
                p[i] = r.tau * row.iter().zip(&r.v).map(|(b, v)| b * v).sum::<f64>();
            }
            let ptv: f64 = p[..m].iter().zip(&r.v).map(|(a, b)| a * b).sum();
            let half = 0.5 * r.tau * ptv;
            for i in 0..m {
                p[i] -= half * r.v[i];
            }
            // B <- B - v w^T - w v^T, written so (i, j) and (j, i) round identically
            for i in 0..m {
                for j in 0..m {
                    let upd = r.v[i] * p[j] + p[i] * r.v[j];
                    t[(off + i) * n + off + j] -= upd;
                }
            }
            t[off * n + k] = r.beta;
            t[k * n + off] = r.beta;
            for i in off + 1..n {
                t[i * n + k] = 0.0;
                t[k * n + i] = 0.0;
            }
            beta.push(r.beta);
            if let Some(q) = q.as_mut() {
                apply_right(q, n, off, &r);
            }
        }
        check_finite(&t, "tridiagonal reduction")?;
        let alpha = (0..n).map(|i| t[i * n + i]).collect();
        Ok(TridiagonalForm {
            t: SymTridiagonal::new(alpha, beta)?,
            report,
            q: q.map(|q| DenseMatrix::from_data_unchecked(n, q)),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::validate_hessenberg;

    fn sample() -> DenseMatrix {
        DenseMatrix::from_rows(&[
            vec![4.0, -1.0, 2.0, 0.5],
            vec![3.0, 1.0, -2.0, 1.0],
            vec![-1.0, 0.25, 5.0, 2.0],
            vec![2.0, 1.0, -3.0, 0.0],
        ])
        .unwrap()
    }

    fn max_abs_diff(a: &DenseMatrix, b: &DenseMatrix) -> f64 {
        a.as_slice()
            .iter()
            .zip(b.as_slice())
            .fold(0.0, |m, (x, y)| f64::max(m, (x - y).abs()))
    }

    #[test]
    fn hessenberg_input_is_untouched() {
        let m = DenseMatrix::from_rows(&[
            vec![1.0, 2.0, 3.0],
            vec![4.0, 5.0, 6.0],
            vec![0.0, 7.0, 8.0],
        ])
        .unwrap();
        let (h, rep) = to_hessenberg(&m).unwrap();
        assert_eq!(h.as_dense(), &m);
        assert!(!rep.used_symmetric_path);
    }

    #[test]
    fn two_by_two_is_untouched() {
        let m = DenseMatrix::from_rows(&[vec![1.5, -2.0], vec![7.0, 3.25]]).unwrap();
        let (h, _) = to_hessenberg(&m).unwrap();
        assert_eq!(h.as_dense(), &m);
    }

    #[test]
    fn similarity_is_reconstructed() {
        let a = sample();
        let f = Reducer {
            accumulate_q: true,
            ..Default::default()
        }
        .hessenberg(&a)
        .unwrap();
        validate_hessenberg(f.h.as_dense()).unwrap();
        let q = f.q.unwrap();
        let back = q
            .matmul(f.h.as_dense())
            .unwrap()
            .matmul(&q.transpose())
            .unwrap();
        assert!(max_abs_diff(&back, &a) < 1e-13);
        let qtq = q.transpose().matmul(&q).unwrap();
        assert!(max_abs_diff(&qtq, &DenseMatrix::identity(4)) < 1e-15);
    }

    #[test]
    fn trace_and_norm_preserved() {
        let a = sample();
        let (h, _) = to_hessenberg(&a).unwrap();
        let n = 4.0;
        let tol = 10.0 * n * n * UNIT_ROUNDOFF * a.frobenius_norm();
        assert!((h.as_dense().trace() - a.trace()).abs() <= tol);
        assert!((h.as_dense().frobenius_norm() - a.frobenius_norm()).abs() <= tol);
    }

    #[test]
    fn tridiagonal_of_diagonal_is_itself() {
        let a = DenseMatrix::diagonal(&[3.0, -1.0, 2.0]).unwrap();
        let (t, rep) = to_tridiagonal(&a).unwrap();
        assert_eq!(t.alpha(), &[3.0, -1.0, 2.0]);
        assert_eq!(t.beta(), &[0.0, 0.0]);
        assert!(rep.used_symmetric_path);
    }

    #[test]
    fn tridiagonal_reconstructs_symmetric_input() {
        let s = sample();
        let a = DenseMatrix::from_fn(4, |i, j| s.get(i, j) + s.get(j, i)).unwrap();
        let f = Reducer {
            accumulate_q: true,
            ..Default::default()
        }
        .tridiagonal(&a)
        .unwrap();
        let q = f.q.unwrap();
        let back = q
            .matmul(&f.t.to_dense())
            .unwrap()
            .matmul(&q.transpose())
            .unwrap();
        assert!(max_abs_diff(&back, &a) < 1e-13);
    }

    #[test]
    fn tridiagonal_rejects_asymmetric() {
        assert!(matches!(
            to_tridiagonal(&sample()),
            Err(Error::Structure(_))
        ));
    }

    #[test]
    fn backward_error_estimate_formula() {
        let a = DenseMatrix::identity(3);
        let (_, rep) = to_hessenberg(&a).unwrap();
        let expect = 10.0 * 9.0 * 3f64.sqrt() * UNIT_ROUNDOFF;
        assert!((rep.backward_error_estimate - expect).abs() <= 1e-15 * expect);
        assert!(Reducer {
            nu: -1.0,
            accumulate_q: false
        }
        .hessenberg(&a)
        .is_err());
    }

    #[test]
    fn overflow_is_reported() {
        let big = f64::MAX / 2.0;
        let a = DenseMatrix::from_rows(&[
            vec![big, big, big],
            vec![big, big, big],
            vec![big, big, big],
        ])
        .unwrap();
        assert!(matches!(to_hessenberg(&a), Err(Error::Overflow(_))));
    }
}
