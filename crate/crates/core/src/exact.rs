//! Exact characteristic polynomials over the rationals.
//!
//! Every finite `f64` is a dyadic rational, so [`lift`] is exact and the
//! oracle answers the question for the very matrix handed to the floating
//! point code. Both routes scale the matrix to integers by the lcm `D` of the
//! denominators, work in `Z`, and divide `c_k` by `D^k` at the end.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::matrix::{CoeffResult, DenseMatrix};

/// Default size cap for oracle runs on dense input.
pub const MAX_ORACLE_ORDER: usize = 64;

/// Square matrix of exact rationals, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct RationalMatrix {
    n: usize,
    entries: Vec<BigRational>,
}

impl RationalMatrix {
    pub fn new(n: usize, entries: Vec<BigRational>) -> Result<Self> {
        if n == 0 || entries.len() != n * n {
            return Err(Error::Dimension(format!(
                "rational matrix of order {n} needs {} entries, got {}",
                n * n,
                entries.len()
            )));
        }
        Ok(Self { n, entries })
    }

    pub fn from_integers(n: usize, entries: &[i64]) -> Result<Self> {
        Self::new(
            n,
            entries
                .iter()
                .map(|&x| BigRational::from_integer(x.into()))
                .collect(),
        )
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &BigRational {
        &self.entries[i * self.n + j]
    }

    pub fn is_upper_hessenberg(&self) -> bool {
        (2..self.n).all(|i| (0..i - 1).all(|j| self.get(i, j).is_zero()))
    }

    /// `(M, D)` with `M = D * self` integral and `D > 0` minimal.
    fn to_integers(&self) -> (Vec<BigInt>, BigInt) {
        let d = self
            .entries
            .iter()
            .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
        let m = self
            .entries
            .iter()
            .map(|x| x.numer() * (&d / x.denom()))
            .collect();
        (m, d)
    }
}

/// Exact rational value of every entry.
pub fn lift(m: &DenseMatrix) -> RationalMatrix {
    let entries = m
        .as_slice()
        .iter()
        .map(|&x| BigRational::from_float(x).expect("DenseMatrix entries are finite"))
        .collect();
    RationalMatrix { n: m.n(), entries }
}

/// Exact coefficients `c_1..c_n` of a monic characteristic polynomial.
#[derive(Debug, Clone, PartialEq)]
pub struct RationalPoly {
    pub coeffs: Vec<BigRational>,
}

impl RationalPoly {
    pub fn from_integers(c: &[i64]) -> Self {
        Self {
            coeffs: c
                .iter()
                .map(|&x| BigRational::from_integer(x.into()))
                .collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Nearest `f64` of each coefficient (infinite when out of range).
    pub fn to_f64(&self) -> Vec<f64> {
        self.coeffs.iter().map(rational_to_f64).collect()
    }
}

pub(crate) fn rational_to_f64(x: &BigRational) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

fn unscale(c: Vec<BigInt>, d: &BigInt) -> RationalPoly {
    let mut pow = BigInt::one();
    let coeffs = c
        .into_iter()
        .map(|ck| {
            pow *= d;
            BigRational::new(ck, pow.clone())
        })
        .collect();
    RationalPoly { coeffs }
}

/// Faddeev-Leverrier recursion in exact arithmetic.
///
/// On the integer matrix `M` every `c_k` and every `B_k` is integral, so the
/// division by `k` is exact.
pub fn exact_charpoly(m: &RationalMatrix) -> RationalPoly {
    let n = m.n;
    let (a, d) = m.to_integers();
    let trace = |x: &[BigInt]| (0..n).fold(BigInt::zero(), |s, i| s + &x[i * n + i]);

    let mut c = Vec::with_capacity(n);
    let c1 = -trace(&a);
    let mut b = a.clone();
    for i in 0..n {
        b[i * n + i] += &c1;
    }
    c.push(c1);
    for k in 2..=n {
        let mut ab = vec![BigInt::zero(); n * n];
        for i in 0..n {
            for l in 0..n {
                let x = &a[i * n + l];
                if x.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let y = &b[l * n + j];
                    if !y.is_zero() {
                        ab[i * n + j] += x * y;
                    }
                }
            }
        }
        let (ck, rem) = (-trace(&ab)).div_rem(&BigInt::from(k));
        debug_assert!(rem.is_zero(), "Newton identity division must be exact");
        if k < n {
            for i in 0..n {
                ab[i * n + i] += &ck;
            }
            b = ab;
        }
        c.push(ck);
    }
    unscale(c, &d)
}

/// Leading-principal-submatrix recursion for Hessenberg input, in exact
/// arithmetic.
pub fn exact_charpoly_hessenberg(m: &RationalMatrix) -> Result<RationalPoly> {
    if !m.is_upper_hessenberg() {
        return Err(Error::Structure(
            "exact Hessenberg recursion needs zeros below the subdiagonal".into(),
        ));
    }
    let n = m.n;
    let (a, d) = m.to_integers();
    let at = |i: usize, j: usize| &a[i * n + j];

    // polys[i] holds p_i as [1, c_1, .., c_i]
    let mut polys: Vec<Vec<BigInt>> = Vec::with_capacity(n + 1);
    polys.push(vec![BigInt::one()]);
    for i in 1..=n {
        let col = i - 1;
        let prev = &polys[i - 1];
        let mut p = vec![BigInt::zero(); i + 1];
        for (j, x) in prev.iter().enumerate() {
            p[j] += x;
            p[j + 1] -= at(col, col) * x;
        }
        let mut prod = BigInt::one();
        for mm in 1..i {
            prod *= at(col + 1 - mm, col - mm);
            if prod.is_zero() {
                break;
            }
            let w = at(col - mm, col);
            if w.is_zero() {
                continue;
            }
            let w = w * &prod;
            // p_{i-m-1} has degree i-m-1 and enters at lambda^{i-m-1}
            let low = &polys[i - mm - 1];
            let shift = mm + 1;
            for (j, x) in low.iter().enumerate() {
                p[j + shift] -= &w * x;
            }
        }
        polys.push(p);
    }
    let mut top = polys.pop().expect("n >= 1");
    top.remove(0);
    Ok(unscale(top, &d))
}

/// Hessenberg recursion when the structure allows it, Faddeev-Leverrier
/// otherwise.
pub fn exact_charpoly_auto(m: &RationalMatrix) -> RationalPoly {
    exact_charpoly_hessenberg(m).unwrap_or_else(|_| exact_charpoly(m))
}

pub fn exact_trace(m: &RationalMatrix) -> BigRational {
    (0..m.n).fold(BigRational::zero(), |s, i| s + m.get(i, i))
}

/// Determinant by fraction-free (Bareiss) elimination.
pub fn exact_det(m: &RationalMatrix) -> BigRational {
    let n = m.n;
    let (mut a, d) = m.to_integers();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        if a[k * n + k].is_zero() {
            match (k + 1..n).find(|&r| !a[r * n + k].is_zero()) {
                Some(r) => {
                    for j in 0..n {
                        a.swap(k * n + j, r * n + j);
                    }
                    sign = -sign;
                }
                None => return BigRational::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[i * n + j] * &a[k * n + k] - &a[i * n + k] * &a[k * n + j];
                a[i * n + j] = v / &prev;
            }
        }
        prev = a[k * n + k].clone();
    }
    let det = sign * &a[n * n - 1];
    BigRational::new(det, num_traits::pow(d, n))
}

/// Error of one computed coefficient against the exact value.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoeffError {
    /// `|computed - exact|`, rounded up to the next `f64`.
    pub abs_err: f64,
    /// `abs_err / |exact|` rounded up; `None` when the exact value is zero.
    pub rel_err: Option<f64>,
}

fn round_up(x: &BigRational) -> f64 {
    let f = rational_to_f64(x);
    if f.is_finite() && BigRational::from_float(f).is_some_and(|r| r < *x) {
        f.next_up()
    } else {
        f
    }
}

/// Per-coefficient absolute and relative errors of `computed` against
/// `exact`, for the first `computed.k()` coefficients.
pub fn error_report(computed: &CoeffResult, exact: &RationalPoly) -> Result<Vec<CoeffError>> {
    errors_of(&computed.coeffs, exact)
}

pub fn errors_of(coeffs: &[f64], exact: &RationalPoly) -> Result<Vec<CoeffError>> {
    if coeffs.len() > exact.len() {
        return Err(Error::Dimension(format!(
            "{} computed coefficients but only {} exact ones",
            coeffs.len(),
            exact.len()
        )));
    }
    coeffs
        .iter()
        .zip(&exact.coeffs)
        .map(|(&x, c)| {
            let xr = BigRational::from_float(x)
                .ok_or_else(|| Error::Overflow("non-finite computed coefficient".into()))?;
            let diff = (xr - c).abs();
            let abs_err = round_up(&diff);
            let rel_err = (!c.is_zero()).then(|| round_up(&(diff / c.abs())));
            Ok(CoeffError { abs_err, rel_err })
        })
        .collect()
}
