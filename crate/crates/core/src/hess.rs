//! Second stage for upper Hessenberg matrices.
//!
//! Expanding `det(lambda I - H_i)` along the last row gives
//!
//! ```text
//! p_i = (lambda - alpha_i) p_{i-1}
//!       - sum_{m=1}^{i-1} h_{i-m,i} beta_i ... beta_{i-m+1} p_{i-m-1}
//! ```
//!
//! which is expanded coefficient by coefficient with running error bounds.
//! Levels and coefficient numbers in comments are one-based.

use crate::error::{Error, Result};
use crate::matrix::{CoeffResult, Method, UpperHessenberg, Warning};
use crate::sym::{check_k, gamma};
use crate::UNIT_ROUNDOFF;

/// Running products of subdiagonal entries ending at one row.
#[derive(Debug, Clone, PartialEq)]
pub struct SubdiagonalProducts {
    /// `products[m - 1] = beta_i * beta_{i-1} * ... * beta_{i-m+1}`.
    pub products: Vec<f64>,
    /// Some product became zero or subnormal although its factors were not.
    pub underflow: bool,
}

/// Products `beta_i, beta_i beta_{i-1}, ...` for the zero-based `row`
/// (`1 <= row < n`), one multiplication per extension.
pub fn subdiagonal_products(h: &UpperHessenberg, row: usize) -> Result<SubdiagonalProducts> {
    if row == 0 || row >= h.n() {
        return Err(Error::Index { k: row, n: h.n() });
    }
    let mut products = Vec::with_capacity(row);
    let underflow = extend_products(h, row, row, &mut products);
    Ok(SubdiagonalProducts {
        products,
        underflow,
    })
}

/// Fills `out` with up to `count` products for `row`; returns whether any
/// product underflowed.
fn extend_products(h: &UpperHessenberg, row: usize, count: usize, out: &mut Vec<f64>) -> bool {
    out.clear();
    let mut underflow = false;
    let mut p = 1.0f64;
    for m in 0..count {
        let b = h.beta(row - m);
        let next = if m == 0 { b } else { p * b };
        if p != 0.0 && b != 0.0 && (next == 0.0 || next.is_subnormal()) {
            underflow = true;
        }
        out.push(next);
        p = next;
    }
    underflow
}

/// Ring of the `k + 1` most recent coefficient rows, `(c_j, e_j)` pairs.
struct History {
    cells: Vec<(f64, f64)>,
    depth: usize,
    k: usize,
}

impl History {
    fn new(k: usize) -> Self {
        let depth = k + 1;
        Self {
            cells: vec![(0.0, 0.0); depth * k],
            depth,
            k,
        }
    }

    #[inline]
    fn row(&self, level: usize) -> &[(f64, f64)] {
        let at = (level % self.depth) * self.k;
        &self.cells[at..at + self.k]
    }

    #[inline]
    fn row_mut(&mut self, level: usize) -> &mut [(f64, f64)] {
        let at = (level % self.depth) * self.k;
        &mut self.cells[at..at + self.k]
    }
}

/// Inner-sum accumulators for one level, indexed by coefficient number.
struct InnerSums {
    /// Running sum `g`, seeded with `-0.0` so the first added term is taken
    /// as is (`-0.0 + x == x` for every `x`, signed zeros included).
    g: Vec<f64>,
    /// `sum |h P_m| e_{j-m-1}^{(i-m-1)}`.
    prop: Vec<f64>,
    /// `|m = 1 term|`.
    first: Vec<f64>,
    /// `sum_{m=2}^{j-2} |term|`.
    middle: Vec<f64>,
}

impl InnerSums {
    fn new(k: usize) -> Self {
        Self {
            g: vec![-0.0; k + 1],
            prop: vec![0.0; k + 1],
            first: vec![0.0; k + 1],
            middle: vec![0.0; k + 1],
        }
    }

    fn reset(&mut self, width: usize) {
        self.g[..=width].fill(-0.0);
        self.prop[..=width].fill(0.0);
        self.first[..=width].fill(0.0);
        self.middle[..=width].fill(0.0);
    }

    /// Adds `w * c_{j-m-1}` to every coefficient `j = m + 2, m + 3, ..`
    /// covered by `row` (which starts at `c_1`).
    #[inline]
    fn add_row(&mut self, m: usize, w: f64, row: &[(f64, f64)]) {
        let from = m + 2;
        let to = from + row.len();
        let mag = if m == 1 {
            &mut self.first
        } else {
            &mut self.middle
        };
        let wa = w.abs();
        let lanes = self.g[from..to]
            .iter_mut()
            .zip(&mut self.prop[from..to])
            .zip(&mut mag[from..to])
            .zip(row);
        for (((g, p), s), &(c, e)) in lanes {
            let term = w * c;
            *g += term;
            *p += wa * e;
            *s += term.abs();
        }
    }
}

/// Coefficients `c_1..c_k` of the characteristic polynomial of `h` with
/// running error bounds.
///
/// The sum over `m` is accumulated left to right (`m = 1, 2, ...`), each term
/// formed as `fl[fl[h_{i-m,i} * P_m] * c]` with `P_m` the running subdiagonal
/// product. Terms whose `h_{i-m,i} * P_m` is exactly zero contribute nothing
/// and are skipped.
pub fn charpoly_hess(h: &UpperHessenberg, k: usize) -> Result<CoeffResult> {
    let n = h.n();
    check_k(k, n)?;
    let u = UNIT_ROUNDOFF;
    let gammas: Vec<f64> = (0..=k + 1).map(|m| gamma(m, u)).collect::<Result<_>>()?;
    let g2 = gammas[2];

    let mut hist = History::new(k);
    let mut sums = InnerSums::new(k);
    let mut warnings = Vec::new();
    let mut prods = Vec::with_capacity(k);
    let mut hp = vec![0.0; k];
    let mut out = vec![(0.0, 0.0); k];

    hist.row_mut(1)[0] = (0.0 - h.alpha(0), 0.0);

    for i in 2..=n {
        let col = i - 1;
        let a = h.alpha(col);
        let width = i.min(k);
        let nprod = (i - 1).min(k.saturating_sub(1));
        if extend_products(h, col, nprod, &mut prods) {
            warnings.push(Warning::SubdiagonalUnderflow { level: col });
        }
        // hp[m - 1] = fl[h_{i-m,i} * P_m]
        for m in 1..=nprod {
            hp[m - 1] = h.get(col - m, col) * prods[m - 1];
        }

        // m outer, ascending: each coefficient still sums its terms left to
        // right, while every earlier row is read once as a contiguous prefix
        sums.reset(width);
        let mut first_m = None;
        for m in 1..=width.saturating_sub(2) {
            let w = hp[m - 1];
            if w == 0.0 {
                continue;
            }
            first_m.get_or_insert(m);
            sums.add_row(m, w, &hist.row(i - m - 1)[..width - m - 1]);
        }

        let prev_row = hist.row(i - 1);
        let (p1, pe1) = prev_row[0];
        let c1 = p1 - a;
        out[0] = (c1, pe1 + u * c1.abs());
        for j in 2..=width {
            let fresh = j == i;
            let (prev, prev_err) = if fresh { (0.0, 0.0) } else { prev_row[j - 1] };
            let (left, left_err) = prev_row[j - 2];
            let t1 = a * left;
            let t2 = prev - t1;

            let mut g = sums.g[j];
            let mut any = first_m.is_some_and(|m| m + 2 <= j);
            // the pure product h_{i-j+1,i} P_{j-1} closes the sum
            let last = hp[j - 2];
            if last != 0.0 {
                g += last;
                any = true;
            }
            let r = if any { t2 - g } else { t2 };
            if !r.is_finite() {
                return Err(Error::Overflow(format!(
                    "coefficient c_{j} at level {i} is not finite"
                )));
            }

            let mut bound = prev_err + a.abs() * left_err + sums.prop[j];
            bound += if fresh { u * t1.abs() } else { g2 * t1.abs() };
            bound += u * (prev.abs() + r.abs());
            if j == 2 {
                bound += u * last.abs();
            } else {
                bound += gammas[j + 1] * sums.middle[j] + gammas[j] * (sums.first[j] + last.abs());
            }
            out[j - 1] = (r, bound);
        }
        if !c1.is_finite() {
            return Err(Error::Overflow(format!("c_1 at level {i} is not finite")));
        }
        hist.row_mut(i)[..width].copy_from_slice(&out[..width]);
    }

    let inflate = 1.0 + 8.0 * u;
    let (coeffs, bounds): (Vec<f64>, Vec<f64>) =
        hist.row(n).iter().map(|&(c, e)| (c, e * inflate)).unzip();
    if bounds.iter().any(|x| !x.is_finite()) {
        return Err(Error::Overflow("running error bound is not finite".into()));
    }
    Ok(CoeffResult {
        coeffs,
        bounds,
        method: Method::LaBuddeHess,
        warnings,
    })
}
