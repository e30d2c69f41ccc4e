//! Matrix and coefficient value types shared by every stage.
//!
//! Indexing is zero-based: `alpha(i)` is the diagonal entry of row `i`,
//! `beta(i)` couples rows `i - 1` and `i` (so `beta(0)` does not exist).

use std::fmt;

use crate::error::{Error, Result};

/// Dense square matrix of finite `f64` entries, stored row-major.
#[derive(Clone, PartialEq)]
pub struct DenseMatrix {
    n: usize,
    data: Vec<f64>,
}

impl DenseMatrix {
    /// Builds an `n x n` matrix from row-major data.
    pub fn new(n: usize, data: Vec<f64>) -> Result<Self> {
        if n == 0 {
            return Err(Error::Dimension("matrix order must be positive".into()));
        }
        if data.len() != n * n {
            return Err(Error::Dimension(format!(
                "expected {} entries for order {n}, got {}",
                n * n,
                data.len()
            )));
        }
        if let Some(pos) = data.iter().position(|x| !x.is_finite()) {
            return Err(Error::NonFinite {
                row: pos / n,
                col: pos % n,
            });
        }
        Ok(Self { n, data })
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let n = rows.len();
        if let Some(bad) = rows.iter().find(|r| r.len() != n) {
            return Err(Error::Dimension(format!(
                "row of length {} in a matrix with {n} rows",
                bad.len()
            )));
        }
        Self::new(n, rows.concat())
    }

    pub fn zeros(n: usize) -> Self {
        assert!(n > 0, "matrix order must be positive");
        Self {
            n,
            data: vec![0.0; n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m.data[i * n + i] = 1.0;
        }
        m
    }

    /// Builds a matrix entry by entry.
    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> f64) -> Result<Self> {
        let mut data = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                data.push(f(i, j));
            }
        }
        Self::new(n, data)
    }

    pub fn diagonal(values: &[f64]) -> Result<Self> {
        let n = values.len();
        Self::from_fn(n, |i, j| if i == j { values[i] } else { 0.0 })
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.n + j]
    }

    #[inline]
    pub(crate) fn set(&mut self, i: usize, j: usize, v: f64) {
        self.data[i * self.n + j] = v;
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.n..(i + 1) * self.n]
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }

    pub fn to_rows(&self) -> Vec<Vec<f64>> {
        self.data.chunks(self.n).map(<[f64]>::to_vec).collect()
    }

    pub fn transpose(&self) -> Self {
        let n = self.n;
        let mut t = Self::zeros(n);
        for i in 0..n {
            for j in 0..n {
                t.data[j * n + i] = self.data[i * n + j];
            }
        }
        t
    }

    /// Left-to-right sum of the diagonal.
    pub fn trace(&self) -> f64 {
        (0..self.n).map(|i| self.get(i, i)).sum()
    }

    pub fn frobenius_norm(&self) -> f64 {
        let scale = self.data.iter().fold(0.0f64, |m, x| m.max(x.abs()));
        if scale == 0.0 {
            return 0.0;
        }
        let ssq: f64 = self.data.iter().map(|x| (x / scale) * (x / scale)).sum();
        scale * ssq.sqrt()
    }

    /// Exact symmetry: `a[i][j] == a[j][i]` bit for bit (up to signed zero).
    pub fn is_symmetric(&self) -> bool {
        (0..self.n).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    pub fn is_upper_hessenberg(&self) -> bool {
        (0..self.n).all(|i| (0..i.saturating_sub(1)).all(|j| self.get(i, j) == 0.0))
    }

    /// Plain triple-loop product.
    pub fn matmul(&self, other: &DenseMatrix) -> Result<DenseMatrix> {
        if self.n != other.n {
            return Err(Error::Dimension(format!(
                "cannot multiply orders {} and {}",
                self.n, other.n
            )));
        }
        let n = self.n;
        let mut out = vec![0.0; n * n];
        for i in 0..n {
            for l in 0..n {
                let a = self.data[i * n + l];
                if a == 0.0 {
                    continue;
                }
                let brow = &other.data[l * n..(l + 1) * n];
                let orow = &mut out[i * n..(i + 1) * n];
                for (o, b) in orow.iter_mut().zip(brow) {
                    *o += a * b;
                }
            }
        }
        Ok(DenseMatrix { n, data: out })
    }

    pub(crate) fn into_data(self) -> Vec<f64> {
        self.data
    }

    pub(crate) fn from_data_unchecked(n: usize, data: Vec<f64>) -> Self {
        debug_assert_eq!(data.len(), n * n);
        Self { n, data }
    }
}

impl fmt::Debug for DenseMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "DenseMatrix({}x{}) [", self.n, self.n)?;
        for row in self.data.chunks(self.n) {
            writeln!(f, "  {row:?}")?;
        }
        write!(f, "]")
    }
}

/// Symmetric tridiagonal matrix held as its diagonal and off-diagonal.
#[derive(Debug, Clone, PartialEq)]
pub struct SymTridiagonal {
    alpha: Vec<f64>,
    beta: Vec<f64>,
}

impl SymTridiagonal {
    /// `alpha` has length `n`; `beta[i]` is the entry at `(i, i + 1)` and `(i + 1, i)`.
    pub fn new(alpha: Vec<f64>, beta: Vec<f64>) -> Result<Self> {
        if alpha.is_empty() {
            return Err(Error::Dimension(
                "tridiagonal order must be positive".into(),
            ));
        }
        if beta.len() + 1 != alpha.len() {
            return Err(Error::Dimension(format!(
                "order {} needs {} off-diagonal entries, got {}",
                alpha.len(),
                alpha.len() - 1,
                beta.len()
            )));
        }
        if let Some(i) = alpha.iter().position(|x| !x.is_finite()) {
            return Err(Error::NonFinite { row: i, col: i });
        }
        if let Some(i) = beta.iter().position(|x| !x.is_finite()) {
            return Err(Error::NonFinite { row: i + 1, col: i });
        }
        Ok(Self { alpha, beta })
    }

    pub fn n(&self) -> usize {
        self.alpha.len()
    }

    pub fn alpha(&self) -> &[f64] {
        &self.alpha
    }

    /// Off-diagonal entries, `beta()[i]` couples rows `i` and `i + 1`.
    pub fn beta(&self) -> &[f64] {
        &self.beta
    }

    pub fn to_dense(&self) -> DenseMatrix {
        let n = self.n();
        let mut m = DenseMatrix::zeros(n);
        for (i, &a) in self.alpha.iter().enumerate() {
            m.set(i, i, a);
        }
        for (i, &b) in self.beta.iter().enumerate() {
            m.set(i, i + 1, b);
            m.set(i + 1, i, b);
        }
        m
    }

    /// Hessenberg embedding with `h[i-1][i] = h[i][i-1] = beta`.
    pub fn to_hessenberg(&self) -> UpperHessenberg {
        UpperHessenberg { m: self.to_dense() }
    }
}

/// Square matrix with exact zeros below the first subdiagonal.
#[derive(Debug, Clone, PartialEq)]
pub struct UpperHessenberg {
    m: DenseMatrix,
}

impl UpperHessenberg {
    pub fn n(&self) -> usize {
        self.m.n()
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.m.get(i, j)
    }

    #[inline]
    pub fn alpha(&self, i: usize) -> f64 {
        self.m.get(i, i)
    }

    /// Subdiagonal entry `h[i][i-1]`, defined for `i >= 1`.
    #[inline]
    pub fn beta(&self, i: usize) -> f64 {
        self.m.get(i, i - 1)
    }

    pub fn as_dense(&self) -> &DenseMatrix {
        &self.m
    }

    pub fn into_dense(self) -> DenseMatrix {
        self.m
    }

    pub(crate) fn from_dense_unchecked(m: DenseMatrix) -> Self {
        debug_assert!(m.is_upper_hessenberg());
        Self { m }
    }
}

/// Returns the Hessenberg view of `m` if every entry below the first
/// subdiagonal is exactly zero.
pub fn validate_hessenberg(m: &DenseMatrix) -> Result<UpperHessenberg> {
    let n = m.n();
    for i in 2..n {
        for j in 0..i - 1 {
            let v = m.get(i, j);
            if v != 0.0 {
                return Err(Error::Structure(format!(
                    "entry ({i}, {j}) = {v:e} lies below the first subdiagonal"
                )));
            }
        }
    }
    Ok(UpperHessenberg { m: m.clone() })
}

/// Extracts the symmetric tridiagonal part of `m`.
///
/// Fails unless `|m[i][j] - m[j][i]| <= tol` for all pairs and everything
/// outside the tridiagonal band is exactly zero. With `tol > 0` the
/// off-diagonal is taken from the lower triangle.
pub fn as_sym_tridiagonal(m: &DenseMatrix, tol: f64) -> Result<SymTridiagonal> {
    if !(tol >= 0.0) {
        return Err(Error::Domain(format!(
            "symmetry tolerance {tol} must be >= 0"
        )));
    }
    let n = m.n();
    for i in 0..n {
        for j in 0..i {
            let (lo, up) = (m.get(i, j), m.get(j, i));
            if i - j > 1 {
                if lo != 0.0 || up != 0.0 {
                    return Err(Error::Structure(format!(
                        "nonzero entry outside the tridiagonal band at ({i}, {j})"
                    )));
                }
            } else if (lo - up).abs() > tol {
                return Err(Error::Structure(format!(
                    "asymmetric pair at ({i}, {j}): {lo:e} vs {up:e}"
                )));
            }
        }
    }
    let alpha = (0..n).map(|i| m.get(i, i)).collect();
    let beta = (1..n).map(|i| m.get(i, i - 1)).collect();
    SymTridiagonal::new(alpha, beta)
}

/// Which algorithm produced a [`CoeffResult`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    /// Sturm-sequence recursion on a symmetric tridiagonal matrix.
    LaBuddeSym,
    /// Leading-principal-submatrix recursion on an upper Hessenberg matrix.
    LaBuddeHess,
    /// Summation algorithm applied to computed eigenvalues.
    EigSummation,
    /// Newton-identity trace recursion.
    Leverrier,
}

impl Method {
    pub fn tag(self) -> &'static str {
        match self {
            Method::LaBuddeSym => "labudde-sym",
            Method::LaBuddeHess => "labudde-hess",
            Method::EigSummation => "eig-summation",
            Method::Leverrier => "leverrier",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

/// Non-fatal conditions noticed during a run.
#[derive(Debug, Clone, PartialEq)]
pub enum Warning {
    /// A product of subdiagonal entries at `level` (zero-based row)
    /// underflowed; the running bounds assume no underflow.
    SubdiagonalUnderflow { level: usize },
    /// Largest imaginary part discarded when realifying eigenvalue-based
    /// coefficients.
    ImaginaryResidue(f64),
}

/// Leading coefficients `c_1..c_k` of `det(lambda I - A)`, without the
/// implicit leading 1, and their error bounds.
#[derive(Debug, Clone, PartialEq)]
pub struct CoeffResult {
    pub coeffs: Vec<f64>,
    /// Absolute error bounds, one per coefficient. All zero for methods that
    /// carry no bound.
    pub bounds: Vec<f64>,
    pub method: Method,
    pub warnings: Vec<Warning>,
}

impl CoeffResult {
    pub fn k(&self) -> usize {
        self.coeffs.len()
    }

    pub fn has_bounds(&self) -> bool {
        matches!(self.method, Method::LaBuddeSym | Method::LaBuddeHess)
    }
}
