//! Test matrices with known characteristic polynomial structure.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use nalgebra::DMatrix;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::error::{Error, Result};
use crate::exact::RationalPoly;
use crate::matrix::DenseMatrix;

pub const DEFAULT_FORSYTHE_NU: f64 = 1e-10;
pub const DEFAULT_TOEPLITZ_B: f64 = 100.0;

/// A gallery matrix and its parameters.
#[derive(Debug, Clone, PartialEq)]
pub enum Gallery {
    /// Jordan block of zeros with `nu` in the bottom-left corner.
    Forsythe {
        n: usize,
        nu: f64,
    },
    /// `Q F Q^T` for the Forsythe matrix `F` and a seeded random orthogonal `Q`.
    ForsytheRotated {
        n: usize,
        nu: f64,
        seed: u64,
    },
    /// Tridiagonal, diagonal `(1, 2, .., 2)`, off-diagonal `-1`.
    Hansen {
        n: usize,
    },
    /// Tridiagonal Toeplitz with zero diagonal and off-diagonal `b`.
    ToeplitzIndef {
        n: usize,
        b: f64,
    },
    /// Upper Hessenberg with `f_ij = n + 1 - max(i, j)` (one-based).
    Frank {
        n: usize,
    },
    /// Upper Hessenberg Toeplitz: `2^(j-i+1)`, plus 1 on the diagonal.
    ChowTranspose {
        n: usize,
    },
    /// Transpose of [`Gallery::ChowTranspose`] (lower Hessenberg).
    Chow {
        n: usize,
    },
    /// Companion matrix of `lambda^n + c_1 lambda^(n-1) + .. + c_n`.
    Companion {
        coeffs: Vec<f64>,
    },
    AllOnes {
        n: usize,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum GalleryName {
    Forsythe,
    ForsytheRotated,
    Hansen,
    ToeplitzIndef,
    Frank,
    ChowTranspose,
    Chow,
    Companion,
    AllOnes,
}

impl GalleryName {
    pub const ALL: [GalleryName; 9] = [
        GalleryName::Forsythe,
        GalleryName::ForsytheRotated,
        GalleryName::Hansen,
        GalleryName::ToeplitzIndef,
        GalleryName::Frank,
        GalleryName::ChowTranspose,
        GalleryName::Chow,
        GalleryName::Companion,
        GalleryName::AllOnes,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            GalleryName::Forsythe => "forsythe",
            GalleryName::ForsytheRotated => "forsythe-rotated",
            GalleryName::Hansen => "hansen",
            GalleryName::ToeplitzIndef => "toeplitz-indef",
            GalleryName::Frank => "frank",
            GalleryName::ChowTranspose => "chow-transpose",
            GalleryName::Chow => "chow",
            GalleryName::Companion => "companion",
            GalleryName::AllOnes => "all-ones",
        }
    }
}

impl fmt::Display for GalleryName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for GalleryName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        GalleryName::ALL
            .into_iter()
            .find(|g| g.as_str() == s)
            .ok_or_else(|| Error::Spec(format!("unknown gallery matrix '{s}'")))
    }
}

fn param<T: FromStr>(params: &BTreeMap<String, String>, key: &str) -> Result<Option<T>> {
    params
        .get(key)
        .map(|v| {
            v.trim()
                .parse::<T>()
                .map_err(|_| Error::Spec(format!("cannot parse {key} = '{v}'")))
        })
        .transpose()
}

/// Parses a comma-separated coefficient list.
pub fn parse_coeffs(s: &str) -> Result<Vec<f64>> {
    s.split(',')
        .map(|t| {
            t.trim()
                .parse::<f64>()
                .map_err(|_| Error::Spec(format!("bad coefficient '{t}'")))
        })
        .collect()
}

impl Gallery {
    /// Builds a spec from a name, an order and string parameters
    /// (`nu`, `seed`, `b`, `coeffs`).
    pub fn from_params(
        name: GalleryName,
        n: Option<usize>,
        params: &BTreeMap<String, String>,
    ) -> Result<Self> {
        let need_n = || n.ok_or_else(|| Error::Spec(format!("{name} needs an order n")));
        let g = match name {
            GalleryName::Forsythe => Gallery::Forsythe {
                n: need_n()?,
                nu: param(params, "nu")?.unwrap_or(DEFAULT_FORSYTHE_NU),
            },
            GalleryName::ForsytheRotated => Gallery::ForsytheRotated {
                n: need_n()?,
                nu: param(params, "nu")?.unwrap_or(DEFAULT_FORSYTHE_NU),
                seed: param(params, "seed")?
                    .ok_or_else(|| Error::Spec("forsythe-rotated needs a seed".into()))?,
            },
            GalleryName::Hansen => Gallery::Hansen { n: need_n()? },
            GalleryName::ToeplitzIndef => Gallery::ToeplitzIndef {
                n: need_n()?,
                b: param(params, "b")?.unwrap_or(DEFAULT_TOEPLITZ_B),
            },
            GalleryName::Frank => Gallery::Frank { n: need_n()? },
            GalleryName::ChowTranspose => Gallery::ChowTranspose { n: need_n()? },
            GalleryName::Chow => Gallery::Chow { n: need_n()? },
            GalleryName::Companion => {
                let raw = params
                    .get("coeffs")
                    .ok_or_else(|| Error::Spec("companion needs coeffs".into()))?;
                let coeffs = parse_coeffs(raw)?;
                if let Some(n) = n {
                    if n != coeffs.len() {
                        return Err(Error::Spec(format!(
                            "n = {n} but {} coefficients given",
                            coeffs.len()
                        )));
                    }
                }
                Gallery::Companion { coeffs }
            }
            GalleryName::AllOnes => Gallery::AllOnes { n: need_n()? },
        };
        g.validate()?;
        Ok(g)
    }

    pub fn name(&self) -> GalleryName {
        match self {
            Gallery::Forsythe { .. } => GalleryName::Forsythe,
            Gallery::ForsytheRotated { .. } => GalleryName::ForsytheRotated,
            Gallery::Hansen { .. } => GalleryName::Hansen,
            Gallery::ToeplitzIndef { .. } => GalleryName::ToeplitzIndef,
            Gallery::Frank { .. } => GalleryName::Frank,
            Gallery::ChowTranspose { .. } => GalleryName::ChowTranspose,
            Gallery::Chow { .. } => GalleryName::Chow,
            Gallery::Companion { .. } => GalleryName::Companion,
            Gallery::AllOnes { .. } => GalleryName::AllOnes,
        }
    }

    pub fn n(&self) -> usize {
        match *self {
            Gallery::Forsythe { n, .. }
            | Gallery::ForsytheRotated { n, .. }
            | Gallery::Hansen { n }
            | Gallery::ToeplitzIndef { n, .. }
            | Gallery::Frank { n }
            | Gallery::ChowTranspose { n }
            | Gallery::Chow { n }
            | Gallery::AllOnes { n } => n,
            Gallery::Companion { ref coeffs } => coeffs.len(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.n() == 0 {
            return Err(Error::Spec("order must be at least 1".into()));
        }
        match self {
            Gallery::Forsythe { nu, .. } | Gallery::ForsytheRotated { nu, .. }
                if !(*nu > 0.0 && nu.is_finite()) =>
            {
                Err(Error::Spec(format!("nu must be positive, got {nu}")))
            }
            Gallery::ToeplitzIndef { b, .. } if !b.is_finite() => {
                Err(Error::Spec(format!("b must be finite, got {b}")))
            }
            Gallery::ChowTranspose { n } | Gallery::Chow { n } if *n > 1022 => Err(Error::Spec(
                format!("chow entries 2^{n} exceed the floating-point range"),
            )),
            Gallery::Companion { coeffs } if coeffs.iter().any(|c| !c.is_finite()) => {
                Err(Error::Spec("companion coefficients must be finite".into()))
            }
            _ => Ok(()),
        }
    }
}

/// A built gallery matrix, with its exact coefficients when known in closed
/// form.
#[derive(Debug, Clone)]
pub struct GalleryMatrix {
    pub matrix: DenseMatrix,
    pub known: Option<RationalPoly>,
}

pub fn build(spec: &Gallery) -> Result<GalleryMatrix> {
    spec.validate()?;
    let n = spec.n();
    let rat = |x: f64| BigRational::from_float(x).expect("finite");
    let out = match spec {
        Gallery::Forsythe { nu, .. } => GalleryMatrix {
            matrix: forsythe(n, *nu),
            known: Some(forsythe_coeffs(n, rat(*nu))),
        },
        Gallery::ForsytheRotated { nu, seed, .. } => {
            let q = random_orthogonal(n, *seed);
            let f = DMatrix::from_row_slice(n, n, forsythe(n, *nu).as_slice());
            let rotated = &q * f * q.transpose();
            GalleryMatrix {
                matrix: DenseMatrix::from_fn(n, |i, j| rotated[(i, j)])?,
                known: Some(forsythe_coeffs(n, rat(*nu))),
            }
        }
        Gallery::Hansen { .. } => GalleryMatrix {
            matrix: DenseMatrix::from_fn(n, |i, j| match (i, j) {
                (0, 0) => 1.0,
                _ if i == j => 2.0,
                _ if i.abs_diff(j) == 1 => -1.0,
                _ => 0.0,
            })?,
            known: Some(hansen_coeffs(n)),
        },
        Gallery::ToeplitzIndef { b, .. } => GalleryMatrix {
            matrix: DenseMatrix::from_fn(n, |i, j| if i.abs_diff(j) == 1 { *b } else { 0.0 })?,
            known: Some(toeplitz_coeffs(n, rat(*b))),
        },
        Gallery::Frank { .. } => GalleryMatrix {
            matrix: DenseMatrix::from_fn(n, |i, j| {
                if j + 1 >= i {
                    (n - i.max(j)) as f64
                } else {
                    0.0
                }
            })?,
            known: None,
        },
        Gallery::ChowTranspose { .. } => GalleryMatrix {
            matrix: chow_transpose(n)?,
            known: None,
        },
        Gallery::Chow { .. } => GalleryMatrix {
            matrix: chow_transpose(n)?.transpose(),
            known: None,
        },
        Gallery::Companion { coeffs } => GalleryMatrix {
            matrix: companion(coeffs)?,
            known: Some(RationalPoly {
                coeffs: coeffs.iter().map(|&c| rat(c)).collect(),
            }),
        },
        Gallery::AllOnes { .. } => GalleryMatrix {
            matrix: DenseMatrix::new(n, vec![1.0; n * n])?,
            known: Some(RationalPoly {
                coeffs: (0..n)
                    .map(|j| {
                        if j == 0 {
                            BigRational::from_integer(-BigInt::from(n))
                        } else {
                            BigRational::zero()
                        }
                    })
                    .collect(),
            }),
        },
    };
    Ok(out)
}

fn forsythe(n: usize, nu: f64) -> DenseMatrix {
    let mut m = DenseMatrix::zeros(n);
    for i in 0..n - 1 {
        m.set(i, i + 1, 1.0);
    }
    // n = 1: the 1x1 matrix [nu]
    m.set(n - 1, 0, nu);
    m
}

/// `lambda^n - nu`.
fn forsythe_coeffs(n: usize, nu: BigRational) -> RationalPoly {
    let mut c = vec![BigRational::zero(); n];
    c[n - 1] = -nu;
    RationalPoly { coeffs: c }
}

fn chow_transpose(n: usize) -> Result<DenseMatrix> {
    DenseMatrix::from_fn(n, |i, j| {
        if j + 1 >= i {
            let p = (j + 1 - i) as i32;
            2f64.powi(p) + if i == j { 1.0 } else { 0.0 }
        } else {
            0.0
        }
    })
}

/// Subdiagonal ones, last column `(-c_n, .., -c_1)` top to bottom.
pub fn companion(coeffs: &[f64]) -> Result<DenseMatrix> {
    let n = coeffs.len();
    DenseMatrix::from_fn(n, |i, j| {
        if j == n - 1 {
            -coeffs[n - 1 - i]
        } else if i == j + 1 {
            1.0
        } else {
            0.0
        }
    })
}

fn binom(n: u64, k: u64) -> BigInt {
    (0..k).fold(BigInt::one(), |acc, i| acc * (n - i) / (i + 1))
}

/// `c_j = (-1)^j binom(2n - j, j)`.
fn hansen_coeffs(n: usize) -> RationalPoly {
    let n = n as u64;
    RationalPoly {
        coeffs: (1..=n)
            .map(|j| {
                let b = binom(2 * n - j, j);
                BigRational::from_integer(if j % 2 == 0 { b } else { -b })
            })
            .collect(),
    }
}

/// Odd coefficients vanish, `c_{2m} = (-1)^m binom(n - m, m) b^{2m}`.
fn toeplitz_coeffs(n: usize, b: BigRational) -> RationalPoly {
    let b2 = &b * &b;
    let mut pow = BigRational::one();
    let mut coeffs = Vec::with_capacity(n);
    for j in 1..=n {
        if j % 2 == 1 {
            coeffs.push(BigRational::zero());
        } else {
            let m = (j / 2) as u64;
            pow *= &b2;
            let v = BigRational::from_integer(binom(n as u64 - m, m)) * &pow;
            coeffs.push(if m.is_multiple_of(2) { v } else { -v });
        }
    }
    RationalPoly { coeffs }
}

/// Q factor of a seeded standard-normal matrix, columns signed so that
/// `diag(R) > 0`.
pub fn random_orthogonal(n: usize, seed: u64) -> DMatrix<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let g = DMatrix::<f64>::from_fn(n, n, |_, _| StandardNormal.sample(&mut rng));
    let qr = g.qr();
    let mut q = qr.q();
    let r = qr.r();
    for j in 0..n {
        if r[(j, j)] < 0.0 {
            q.column_mut(j).neg_mut();
        }
    }
    q
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{exact_charpoly, exact_det, lift};
    use crate::matrix::validate_hessenberg;

    fn params(kv: &[(&str, &str)]) -> BTreeMap<String, String> {
        kv.iter()
            .map(|(k, v)| (k.to_string(), v.to_string()))
            .collect()
    }

    #[test]
    fn all_ones_three() {
        let g = build(&Gallery::AllOnes { n: 3 }).unwrap();
        assert_eq!(g.matrix.as_slice(), &[1.0; 9]);
        assert_eq!(g.known.unwrap(), RationalPoly::from_integers(&[-3, 0, 0]));
    }

    #[test]
    fn frank_two() {
        let g = build(&Gallery::Frank { n: 2 }).unwrap();
        assert_eq!(g.matrix.to_rows(), vec![vec![2.0, 1.0], vec![1.0, 1.0]]);
        assert_eq!(exact_det(&lift(&g.matrix)), BigRational::one());
    }

    #[test]
    fn hansen_two() {
        let g = build(&Gallery::Hansen { n: 2 }).unwrap();
        assert_eq!(g.matrix.to_rows(), vec![vec![1.0, -1.0], vec![-1.0, 2.0]]);
        let known = g.known.unwrap();
        assert_eq!(known, RationalPoly::from_integers(&[-3, 1]));
        assert_eq!(exact_charpoly(&lift(&g.matrix)), known);
    }

    #[test]
    fn chow_shapes() {
        let ct = build(&Gallery::ChowTranspose { n: 4 }).unwrap().matrix;
        assert_eq!(ct.row(0), &[3.0, 4.0, 8.0, 16.0]);
        assert_eq!(ct.row(1), &[1.0, 3.0, 4.0, 8.0]);
        assert_eq!(ct.row(3), &[0.0, 0.0, 1.0, 3.0]);
        assert!(validate_hessenberg(&ct).is_ok());
        let c = build(&Gallery::Chow { n: 4 }).unwrap().matrix;
        assert!(validate_hessenberg(&c).is_err());
    }

    #[test]
    fn forsythe_layout() {
        let f = build(&Gallery::Forsythe { n: 3, nu: 0.5 }).unwrap();
        assert_eq!(
            f.matrix.to_rows(),
            vec![
                vec![0.0, 1.0, 0.0],
                vec![0.0, 0.0, 1.0],
                vec![0.5, 0.0, 0.0]
            ]
        );
        assert_eq!(exact_charpoly(&lift(&f.matrix)), f.known.unwrap());
    }

    #[test]
    fn rotation_is_orthogonal_and_reproducible() {
        let q = random_orthogonal(6, 7);
        let e = (&q.transpose() * &q - DMatrix::<f64>::identity(6, 6))
            .abs()
            .max();
        assert!(e < 1e-14);
        assert_eq!(q, random_orthogonal(6, 7));
        assert_ne!(q, random_orthogonal(6, 8));
    }

    #[test]
    fn params_parsing() {
        let g = Gallery::from_params(GalleryName::ToeplitzIndef, Some(4), &params(&[])).unwrap();
        assert_eq!(g, Gallery::ToeplitzIndef { n: 4, b: 100.0 });
        let g = Gallery::from_params(
            GalleryName::Companion,
            None,
            &params(&[("coeffs", "1, 2,3")]),
        )
        .unwrap();
        assert_eq!(
            g,
            Gallery::Companion {
                coeffs: vec![1.0, 2.0, 3.0]
            }
        );
        assert!(Gallery::from_params(GalleryName::ForsytheRotated, Some(4), &params(&[])).is_err());
        assert!(
            Gallery::from_params(GalleryName::Forsythe, Some(4), &params(&[("nu", "-1")])).is_err()
        );
        assert!(Gallery::from_params(GalleryName::Hansen, None, &params(&[])).is_err());
        assert!(Gallery::from_params(GalleryName::Hansen, Some(0), &params(&[])).is_err());
        assert!(Gallery::from_params(
            GalleryName::Companion,
            Some(2),
            &params(&[("coeffs", "1,2,3")])
        )
        .is_err());
        assert!("nope".parse::<GalleryName>().is_err());
        for g in GalleryName::ALL {
            assert_eq!(g.as_str().parse::<GalleryName>().unwrap(), g);
        }
    }
}
