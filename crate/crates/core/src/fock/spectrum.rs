//! Floating-point spectra of the truncated operators.
//!
//! Everything else in this crate is exact; this module is the one
//! deliberate exception. Truncated non-symmetric matrices are not similar
//! to their infinite-dimensional counterparts, so their eigenvalues are a
//! *diagnostic*, not a verified quantity: low-lying eigenvalues of the
//! Hamiltonians approach the nonnegative integers as the cut grows, while
//! the top of the computed spectrum is an artifact of the boundary.

use std::sync::Arc;

use crate::error::CoreError;
use crate::fock::basis::FockBasis;
use crate::fock::ops::OpName;
use crate::params::Params;

/// Eigenvalues of the named operator's truncated matrix, computed in `f64`
/// via a Schur decomposition and sorted by real part, then imaginary part.
/// Returned as `(re, im)` pairs.
pub fn spectrum_diag(
    params: &Params,
    op: &OpName,
    n_max: u32,
) -> Result<Vec<(f64, f64)>, CoreError> {
    let basis = Arc::new(FockBasis::new(params.r(), n_max));
    let matrix = op.matrix(&basis, params)?;
    let eigs = matrix.to_dense_f64().complex_eigenvalues();
    let mut values: Vec<(f64, f64)> = eigs.iter().map(|z| (z.re, z.im)).collect();
    values.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.total_cmp(&b.1)));
    Ok(values)
}
