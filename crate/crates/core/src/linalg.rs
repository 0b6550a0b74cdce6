//! Small dense spectral helpers with a shared rank cutoff policy.
//!
//! Every pseudo-inverse and rank decision in the crate treats an
//! eigenvalue or singular value as zero when it is at most
//! [`RELATIVE_CUTOFF`] times the largest one of the same matrix.

use crate::{Matrix, Scalar, Vector};

/// Relative threshold below which spectral values count as zero.
pub const RELATIVE_CUTOFF: f64 = 1e-10;

/// Spectral data of a symmetric matrix: pseudo-inverse, orthogonal
/// projector onto the range, and the eigenvalue summary needed for
/// curvature constants.
pub struct SymmetricParts<T: Scalar> {
    pub pinv: Matrix<T>,
    pub range_proj: Matrix<T>,
    /// Smallest eigenvalue above the cutoff, if any eigenvalue survives.
    pub min_nonzero: Option<T>,
    /// Most negative raw eigenvalue (for definiteness checks).
    pub min_eigenvalue: T,
    /// Largest raw eigenvalue.
    pub max_eigenvalue: T,
}

/// Eigen-decomposes a symmetric matrix and assembles pseudo-inverse and
/// range projector under the shared cutoff.
pub fn symmetric_parts<T: Scalar>(m: &Matrix<T>) -> SymmetricParts<T> {
    let n = m.nrows();
    let eig = m.clone().symmetric_eigen();
    let max_abs = eig.eigenvalues.iter().fold(T::zero(), |a, &v| a.max(v.abs()));
    let cut = T::c(RELATIVE_CUTOFF) * max_abs;

    let mut inv_vals = Vector::<T>::zeros(n);
    let mut proj_vals = Vector::<T>::zeros(n);
    let mut min_nonzero: Option<T> = None;
    let mut min_eigenvalue = T::zero();
    let mut max_eigenvalue = T::zero();
    for (i, &v) in eig.eigenvalues.iter().enumerate() {
        min_eigenvalue = if i == 0 { v } else { min_eigenvalue.min(v) };
        max_eigenvalue = if i == 0 { v } else { max_eigenvalue.max(v) };
        if v.abs() > cut {
            inv_vals[i] = T::one() / v;
            proj_vals[i] = T::one();
            min_nonzero = Some(match min_nonzero {
                Some(cur) => cur.min(v.abs()),
                None => v.abs(),
            });
        }
    }

    let u = &eig.eigenvectors;
    let pinv = u * Matrix::from_diagonal(&inv_vals) * u.transpose();
    let range_proj = u * Matrix::from_diagonal(&proj_vals) * u.transpose();
    SymmetricParts { pinv, range_proj, min_nonzero, min_eigenvalue, max_eigenvalue }
}

/// Largest absolute eigenvalue of a symmetric matrix.
pub fn symmetric_spectral_norm<T: Scalar>(m: &Matrix<T>) -> T {
    let eig = m.clone().symmetric_eigen();
    eig.eigenvalues.iter().fold(T::zero(), |a, &v| a.max(v.abs()))
}

/// Spectral data of a general rectangular matrix via SVD.
pub struct SvdParts<T: Scalar> {
    pub pinv: Matrix<T>,
    /// Orthogonal projector onto the row space (range of the transpose).
    pub row_proj: Matrix<T>,
    /// Orthogonal projector onto the column space.
    pub col_proj: Matrix<T>,
    /// Smallest singular value above the cutoff, if any.
    pub min_nonzero: Option<T>,
    pub max_singular: T,
}

pub fn svd_parts<T: Scalar>(m: &Matrix<T>) -> SvdParts<T> {
    let svd = m.clone().svd(true, true);
    let u = svd.u.expect("u requested");
    let v_t = svd.v_t.expect("v_t requested");
    let s = &svd.singular_values;
    let max_singular = s.iter().fold(T::zero(), |a, &v| a.max(v));
    let cut = T::c(RELATIVE_CUTOFF) * max_singular;

    let r = s.len();
    let mut inv_vals = Vector::<T>::zeros(r);
    let mut keep = Vector::<T>::zeros(r);
    let mut min_nonzero: Option<T> = None;
    for (i, &v) in s.iter().enumerate() {
        if v > cut {
            inv_vals[i] = T::one() / v;
            keep[i] = T::one();
            min_nonzero = Some(match min_nonzero {
                Some(cur) => cur.min(v),
                None => v,
            });
        }
    }

    // pinv = V S^+ U^T; projectors from the retained singular triplets.
    let pinv = v_t.transpose() * Matrix::from_diagonal(&inv_vals) * u.transpose();
    let row_proj = v_t.transpose() * Matrix::from_diagonal(&keep) * &v_t;
    let col_proj = &u * Matrix::from_diagonal(&keep) * u.transpose();
    SvdParts { pinv, row_proj, col_proj, min_nonzero, max_singular }
}
