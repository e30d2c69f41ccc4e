//! Characteristic polynomial coefficients with running rounding-error bounds.
//!
//! Stage one reduces a matrix to upper Hessenberg (or symmetric tridiagonal)
//! form by Householder reflections. Stage two runs a division-free recursion
//! over the leading principal submatrices and carries a running bound on the
//! rounding error of every coefficient.
//!
//! ```
//! use labudde_core::{charpoly, DenseMatrix};
//!
//! let a = DenseMatrix::from_rows(&[vec![2.0, 1.0], vec![1.0, 2.0]]).unwrap();
//! let out = charpoly(&a, 2).unwrap();
//! assert_eq!(out.result.coeffs, vec![-4.0, 3.0]);
//! ```

// NaN-rejecting `!(x >= 0.0)` checks and index loops over several arrays are deliberate
#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::needless_range_loop)]

pub mod baselines;
pub mod bounds;
pub mod error;
pub mod exact;
pub mod gallery;
pub mod hess;
pub mod matrix;
pub mod matrix_market;
pub mod reduction;
pub mod sym;

pub use baselines::{
    eigenvalues, leverrier, leverrier_faddeev, poly_via_eig, realify, summation_algorithm,
    summation_real,
};
pub use bounds::{
    elem_sym, elem_sym_top, overall_bound_nonsym, overall_bound_sym, OverallBound, SingularSpectrum,
};
pub use error::{Error, Result};
pub use exact::{
    error_report, errors_of, exact_charpoly, exact_charpoly_auto, exact_charpoly_hessenberg,
    exact_det, exact_trace, lift, CoeffError, RationalMatrix, RationalPoly, MAX_ORACLE_ORDER,
};
pub use gallery::{build, Gallery, GalleryMatrix, GalleryName};
pub use hess::{charpoly_hess, subdiagonal_products, SubdiagonalProducts};
pub use matrix::{
    as_sym_tridiagonal, validate_hessenberg, CoeffResult, DenseMatrix, Method, SymTridiagonal,
    UpperHessenberg, Warning,
};
pub use matrix_market::{read_matrix_market, write_matrix_market};
pub use reduction::{to_hessenberg, to_tridiagonal, Reducer, ReductionReport, DEFAULT_NU};
pub use sym::{charpoly_sym, gamma};

/// Unit roundoff of IEEE double precision, `2^-53`.
pub const UNIT_ROUNDOFF: f64 = f64::EPSILON / 2.0;

/// Route taken by [`charpoly`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Route {
    /// Symmetric input, reduced to tridiagonal form.
    Symmetric,
    /// Already upper Hessenberg, no reduction.
    Hessenberg,
    /// General input, reduced to Hessenberg form.
    General,
}

#[derive(Debug, Clone)]
pub struct Computation {
    pub result: CoeffResult,
    pub route: Route,
    /// `None` when no reduction ran.
    pub reduction: Option<ReductionReport>,
}

/// Computes `c_1..c_k` of `det(lambda I - a)` with running bounds.
///
/// Exactly symmetric input takes the tridiagonal path, upper Hessenberg input
/// skips reduction, anything else is reduced to Hessenberg form first.
pub fn charpoly(a: &DenseMatrix, k: usize) -> Result<Computation> {
    charpoly_with(a, k, &Reducer::default())
}

pub fn charpoly_with(a: &DenseMatrix, k: usize, reducer: &Reducer) -> Result<Computation> {
    if a.is_symmetric() {
        let f = reducer.tridiagonal(a)?;
        Ok(Computation {
            result: charpoly_sym(&f.t, k)?,
            route: Route::Symmetric,
            reduction: Some(f.report),
        })
    } else if let Ok(h) = validate_hessenberg(a) {
        Ok(Computation {
            result: charpoly_hess(&h, k)?,
            route: Route::Hessenberg,
            reduction: None,
        })
    } else {
        let f = reducer.hessenberg(a)?;
        Ok(Computation {
            result: charpoly_hess(&f.h, k)?,
            route: Route::General,
            reduction: Some(f.report),
        })
    }
}
