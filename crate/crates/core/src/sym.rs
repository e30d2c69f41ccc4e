//! Second stage for symmetric tridiagonal matrices.
//!
//! The Sturm recursion `p_i = (lambda - alpha_i) p_{i-1} - beta_i^2 p_{i-2}`
//! is expanded coefficient by coefficient. Each coefficient carries a running
//! bound on its accumulated rounding error, evaluated from the computed
//! intermediate values.

use crate::error::{Error, Result};
use crate::matrix::{CoeffResult, Method, SymTridiagonal};
use crate::UNIT_ROUNDOFF;

/// `gamma_n = n u / (1 - n u)`.
pub fn gamma(n: usize, u: f64) -> Result<f64> {
    let nu = n as f64 * u;
    if !(nu < 1.0) || u < 0.0 {
        return Err(Error::Domain(format!(
            "gamma requires 0 <= n*u < 1, got {nu}"
        )));
    }
    Ok(nu / (1.0 - nu))
}

pub(crate) fn check_k(k: usize, n: usize) -> Result<()> {
    if k == 0 || k > n {
        Err(Error::Index { k, n })
    } else {
        Ok(())
    }
}

/// Coefficients `c_1..c_k` of the characteristic polynomial of `t` with
/// running error bounds.
///
/// Coefficients not yet present at a level are `+0`, `c_0 = 1`. Every update
/// is evaluated as `(c_j - alpha_i c_{j-1}) - beta_i^2 c_{j-2}` with one
/// rounding per operation; `beta_i^2` is rounded once per level.
pub fn charpoly_sym(t: &SymTridiagonal, k: usize) -> Result<CoeffResult> {
    let n = t.n();
    check_k(k, n)?;
    let u = UNIT_ROUNDOFF;
    let g2 = gamma(2, u)?;
    let alpha = t.alpha();

    // rows indexed by j - 1; levels i - 1 and i - 2
    let mut c1 = vec![0.0; k];
    let mut c2 = vec![0.0; k];
    let mut e1 = vec![0.0; k];
    let mut e2 = vec![0.0; k];
    let mut c = vec![0.0; k];
    let mut e = vec![0.0; k];

    c1[0] = 0.0 - alpha[0];

    for i in 1..n {
        let a = alpha[i];
        let b = t.beta()[i - 1];
        let b2 = b * b;
        let width = (i + 1).min(k);

        c[0] = c1[0] - a;
        e[0] = e1[0] + u * c[0].abs();

        for j in 1..width {
            // j is zero-based: coefficient index j + 1, level i + 1
            let fresh = j == i;
            let prev = if fresh { 0.0 } else { c1[j] };
            let t1 = a * c1[j - 1];
            let t2 = prev - t1;
            let (below, below_err) = if j == 1 {
                (1.0, 0.0)
            } else {
                (c2[j - 2], e2[j - 2])
            };
            let t3 = b2 * below;
            let r = t2 - t3;
            if !r.is_finite() {
                return Err(Error::Overflow(format!(
                    "coefficient c_{} at level {} is not finite",
                    j + 1,
                    i + 1
                )));
            }
            c[j] = r;

            let prev_err = if fresh { 0.0 } else { e1[j] };
            let mut bound = prev_err + a.abs() * e1[j - 1] + b2 * below_err;
            if j == 1 {
                // c_2: fl[beta^2] is the only rounding on the subtracted term
                bound += u * (prev.abs() + b2 + r.abs());
                bound += if fresh { u * t1.abs() } else { g2 * t1.abs() };
            } else if fresh {
                bound += u * (t1.abs() + r.abs()) + g2 * t3.abs();
            } else {
                bound += u * (prev.abs() + r.abs()) + g2 * (t1.abs() + t3.abs());
            }
            e[j] = bound;
        }
        if !c[0].is_finite() {
            return Err(Error::Overflow(format!(
                "c_1 at level {} is not finite",
                i + 1
            )));
        }

        std::mem::swap(&mut c2, &mut c1);
        std::mem::swap(&mut c1, &mut c);
        std::mem::swap(&mut e2, &mut e1);
        std::mem::swap(&mut e1, &mut e);
    }

    let inflate = 1.0 + 4.0 * u;
    let bounds: Vec<f64> = e1.iter().map(|x| x * inflate).collect();
    if bounds.iter().any(|x| !x.is_finite()) {
        return Err(Error::Overflow("running error bound is not finite".into()));
    }
    Ok(CoeffResult {
        coeffs: c1,
        bounds,
        method: Method::LaBuddeSym,
        warnings: Vec::new(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tri(alpha: &[f64], beta: &[f64]) -> SymTridiagonal {
        SymTridiagonal::new(alpha.to_vec(), beta.to_vec()).unwrap()
    }

    #[test]
    fn gamma_values() {
        assert_eq!(gamma(0, UNIT_ROUNDOFF).unwrap(), 0.0);
        let u = 2f64.powi(-53);
        assert_eq!(gamma(1, u).unwrap(), u / (1.0 - u));
        assert_eq!(gamma(2, 0.25).unwrap(), 1.0);
        assert!(matches!(gamma(4, 0.25), Err(Error::Domain(_))));
        assert!(gamma(5, 0.25).is_err());
    }

    #[test]
    fn order_one() {
        let r = charpoly_sym(&tri(&[2.5], &[]), 1).unwrap();
        assert_eq!(r.coeffs, vec![-2.5]);
        assert_eq!(r.bounds, vec![0.0]);
        assert_eq!(r.method, Method::LaBuddeSym);
    }

    #[test]
    fn index_checked() {
        let t = tri(&[1.0, 2.0], &[1.0]);
        assert_eq!(charpoly_sym(&t, 0), Err(Error::Index { k: 0, n: 2 }));
        assert_eq!(charpoly_sym(&t, 3), Err(Error::Index { k: 3, n: 2 }));
    }

    #[test]
    fn two_by_two_matches_line_two() {
        // lambda^2 - 5 lambda + (6 - 4)
        let r = charpoly_sym(&tri(&[2.0, 3.0], &[2.0]), 2).unwrap();
        assert_eq!(r.coeffs, vec![-5.0, 2.0]);
        // u * (|alpha1 alpha2| + beta^2 + |c2|) for c_2
        let u = UNIT_ROUNDOFF;
        let expect = u * (6.0 + 4.0 + 2.0) * (1.0 + 4.0 * u);
        assert_eq!(r.bounds[1], expect);
        assert_eq!(r.bounds[0], u * 5.0 * (1.0 + 4.0 * u));
    }

    #[test]
    fn hansen_five() {
        let mut alpha = vec![2.0; 5];
        alpha[0] = 1.0;
        let r = charpoly_sym(&tri(&alpha, &[-1.0; 4]), 5).unwrap();
        assert_eq!(r.coeffs, vec![-9.0, 28.0, -35.0, 15.0, -1.0]);
    }

    #[test]
    fn figure_example_lookback() {
        // n = 5, k = 3 written out by hand from the level table
        let a = [0.3, -1.7, 2.2, 0.9, -0.4];
        let b = [0.0, 1.1, -0.6, 2.5, 0.8];
        let t = tri(&a, &b[1..]);
        let sq = |x: f64| x * x;
        let mut c1 = [0.0; 6];
        let mut c2 = [0.0; 6];
        let mut c3 = [0.0; 6];
        c1[1] = 0.0 - a[0];
        c1[2] = c1[1] - a[1];
        c2[2] = (0.0 - a[1] * c1[1]) - sq(b[1]);
        for i in 3..=5 {
            let (ai, bi) = (a[i - 1], sq(b[i - 1]));
            c1[i] = c1[i - 1] - ai;
            c2[i] = (c2[i - 1] - ai * c1[i - 1]) - bi;
            c3[i] = (c3[i - 1] - ai * c2[i - 1]) - bi * c1[i - 2];
        }
        let r = charpoly_sym(&t, 3).unwrap();
        assert_eq!(r.coeffs, vec![c1[5], c2[5], c3[5]]);
    }

    #[test]
    fn zero_alpha_gives_exact_odd_coefficients() {
        let n = 9;
        let r = charpoly_sym(&tri(&vec![0.0; n], &vec![100.0; n - 1]), n).unwrap();
        for j in (0..n).step_by(2) {
            assert_eq!(r.coeffs[j], 0.0);
            assert_eq!(r.bounds[j], 0.0);
        }
    }

    #[test]
    fn overflow_detected() {
        let t = tri(&[1e200, 1e200, 1e200], &[0.0, 0.0]);
        assert!(matches!(charpoly_sym(&t, 3), Err(Error::Overflow(_))));
    }
}
