//! Comparison methods: coefficients from eigenvalues, and the Newton-identity
//! trace recursion.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::matrix::{CoeffResult, DenseMatrix, Method, Warning};

/// Expands `prod (lambda - lambda_j)` in the given order.
///
/// Each step updates `c_m <- c_m - lambda_j c_{m-1}` for all `m` at once.
/// Purely real input is expanded in real arithmetic.
pub fn summation_algorithm(lams: &[Complex64]) -> Vec<Complex64> {
    if lams.iter().all(|z| z.im == 0.0) {
        let re: Vec<f64> = lams.iter().map(|z| z.re).collect();
        return summation_real(&re)
            .into_iter()
            .map(|x| Complex64::new(x, 0.0))
            .collect();
    }
    let n = lams.len();
    let mut c = vec![Complex64::new(0.0, 0.0); n + 1];
    c[0] = Complex64::new(1.0, 0.0);
    for (j, &lam) in lams.iter().enumerate() {
        for m in (1..=j + 1).rev() {
            let t = lam * c[m - 1];
            c[m] -= t;
        }
    }
    c.remove(0);
    c
}

/// Real-arithmetic summation algorithm; returns `c_1..c_n`.
pub fn summation_real(lams: &[f64]) -> Vec<f64> {
    let n = lams.len();
    let mut c = vec![0.0; n + 1];
    c[0] = 1.0;
    for (j, &lam) in lams.iter().enumerate() {
        // descending m reads c_{m-1} before it is overwritten
        for m in (1..=j + 1).rev() {
            c[m] -= lam * c[m - 1];
        }
    }
    c.remove(0);
    c
}

/// Drops imaginary parts; returns the real coefficients and the largest
/// discarded `|Im|`.
pub fn realify(c: &[Complex64]) -> (Vec<f64>, f64) {
    let residue = c.iter().fold(0.0f64, |m, z| m.max(z.im.abs()));
    (c.iter().map(|z| z.re).collect(), residue)
}

pub(crate) fn to_nalgebra(a: &DenseMatrix) -> DMatrix<f64> {
    DMatrix::from_row_slice(a.n(), a.n(), a.as_slice())
}

/// Eigenvalues of `a` from nalgebra's real Schur decomposition.
pub fn eigenvalues(a: &DenseMatrix) -> Result<Vec<Complex64>> {
    let m = to_nalgebra(a);
    let n = a.n();
    let schur = m
        .try_schur(f64::EPSILON, 100 * n.max(10))
        .ok_or(Error::EigFailure)?;
    let ev = schur.complex_eigenvalues();
    let out: Vec<Complex64> = ev.iter().map(|z| Complex64::new(z.re, z.im)).collect();
    if out.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
        return Err(Error::EigFailure);
    }
    Ok(out)
}

/// Eigenvalues followed by the summation algorithm, then realified.
pub fn poly_via_eig(a: &DenseMatrix) -> Result<CoeffResult> {
    let lams = eigenvalues(a)?;
    let (coeffs, residue) = realify(&summation_algorithm(&lams));
    if coeffs.iter().any(|x| !x.is_finite()) {
        return Err(Error::Overflow(
            "eigenvalue-based coefficient is not finite".into(),
        ));
    }
    let mut warnings = Vec::new();
    if residue > 0.0 {
        warnings.push(Warning::ImaginaryResidue(residue));
    }
    Ok(CoeffResult {
        bounds: vec![0.0; coeffs.len()],
        coeffs,
        method: Method::EigSummation,
        warnings,
    })
}

/// Leverrier's method from the Newton identities on power sums:
/// `c_k = -(s_k + c_1 s_{k-1} + .. + c_{k-1} s_1) / k` with `s_m = trace(A^m)`.
///
/// One matrix product per step. On integer input the equivalent
/// [`leverrier_faddeev`] recursion can stay exact where this one does not.
pub fn leverrier(a: &DenseMatrix) -> Result<CoeffResult> {
    let n = a.n();
    let mut power = a.clone();
    let mut sums = Vec::with_capacity(n);
    let mut coeffs: Vec<f64> = Vec::with_capacity(n);
    for k in 1..=n {
        if k > 1 {
            power = a.matmul(&power)?;
        }
        sums.push(power.trace());
        let mut acc = sums[k - 1];
        for (i, c) in coeffs.iter().enumerate() {
            acc += c * sums[k - 2 - i];
        }
        let ck = -acc / k as f64;
        if !ck.is_finite() {
            return Err(Error::Overflow(format!(
                "Leverrier step {k} left the range"
            )));
        }
        coeffs.push(ck);
    }
    Ok(CoeffResult {
        bounds: vec![0.0; n],
        coeffs,
        method: Method::Leverrier,
        warnings: Vec::new(),
    })
}

/// Faddeev's form: `c_k = -trace(A B_{k-1}) / k` with `B_1 = A + c_1 I`,
/// `B_k = A B_{k-1} + c_k I`.
pub fn leverrier_faddeev(a: &DenseMatrix) -> Result<CoeffResult> {
    let n = a.n();
    let mut coeffs = Vec::with_capacity(n);
    let c1 = -a.trace();
    coeffs.push(c1);
    let mut b = a.clone();
    for i in 0..n {
        b.set(i, i, b.get(i, i) + c1);
    }
    for k in 2..=n {
        let mut ab = a.matmul(&b)?;
        let ck = -ab.trace() / k as f64;
        for i in 0..n {
            ab.set(i, i, ab.get(i, i) + ck);
        }
        if !ck.is_finite() || ab.as_slice().iter().any(|x| !x.is_finite()) {
            return Err(Error::Overflow(format!(
                "Leverrier step {k} left the range"
            )));
        }
        coeffs.push(ck);
        b = ab;
    }
    Ok(CoeffResult {
        bounds: vec![0.0; n],
        coeffs,
        method: Method::Leverrier,
        warnings: Vec::new(),
    })
}
