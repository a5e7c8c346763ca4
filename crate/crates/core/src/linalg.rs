//! Dense complex linear algebra on top of `nalgebra`: eigenvalues, numerical
//! null spaces and principal angles between subspaces.

use nalgebra::{DMatrix, DVector, Schur, SVD};
use num_complex::Complex64;

use crate::error::{Error, Result};

pub type CMatrix = DMatrix<Complex64>;

const SCHUR_EPS: f64 = 1e-15;
const SCHUR_MAX_ITER: usize = 10_000;

/// All eigenvalues of a square matrix, with multiplicity, in no particular order.
pub fn eigenvalues(m: &CMatrix) -> Result<Vec<Complex64>> {
    let n = m.nrows();
    if n != m.ncols() {
        return Err(Error::Solver(format!(
            "matrix is {}x{}, not square",
            n,
            m.ncols()
        )));
    }
    match n {
        0 => return Ok(Vec::new()),
        1 => return Ok(vec![m[(0, 0)]]),
        _ => {}
    }
    let schur = Schur::try_new(m.clone(), SCHUR_EPS, SCHUR_MAX_ITER)
        .ok_or_else(|| Error::Solver("Schur iteration did not converge".into()))?;
    let (_, t) = schur.unpack();

    let scale = m
        .iter()
        .map(|c| c.norm())
        .fold(0.0, f64::max)
        .max(f64::MIN_POSITIVE);
    let mut out = Vec::with_capacity(n);
    let mut i = 0;
    while i < n {
        // complex Schur forms are triangular; a surviving 2x2 block is solved directly
        if i + 1 < n && t[(i + 1, i)].norm() > 1e-13 * scale {
            let (a, b, c, d) = (t[(i, i)], t[(i, i + 1)], t[(i + 1, i)], t[(i + 1, i + 1)]);
            let half_tr = (a + d) * 0.5;
            let disc = (half_tr * half_tr - (a * d - b * c)).sqrt();
            out.push(half_tr + disc);
            out.push(half_tr - disc);
            i += 2;
        } else {
            out.push(t[(i, i)]);
            i += 1;
        }
    }
    Ok(out)
}

/// Numerical null space of `a` from its SVD.
#[derive(Clone, Debug)]
pub struct NullSpace {
    /// Orthonormal columns spanning the null space.
    pub basis: Vec<DVector<Complex64>>,
    /// All singular values, ascending.
    pub singular_values: Vec<f64>,
    /// Absolute cut: singular values `<= cut` count as zero.
    pub cut: f64,
}

/// Null space of `a` where singular values at or below
/// `rel_tol * max(σ_max(a), reference_norm * rel_tol)` are treated as zero.
/// `reference_norm` only matters when `a` is itself negligible relative to it,
/// in which case the whole space is returned.
pub fn null_space(a: &CMatrix, rel_tol: f64, reference_norm: f64) -> Result<NullSpace> {
    let n = a.ncols();
    if n == 0 {
        return Ok(NullSpace {
            basis: Vec::new(),
            singular_values: Vec::new(),
            cut: 0.0,
        });
    }
    // pad to square so V^H is n x n even for wide inputs
    let rows = a.nrows().max(n);
    let mut sq = CMatrix::zeros(rows, n);
    sq.view_mut((0, 0), (a.nrows(), n)).copy_from(a);

    let svd = SVD::try_new(sq, false, true, 1e-15, 0)
        .ok_or_else(|| Error::Solver("SVD did not converge".into()))?;
    let v_t = svd
        .v_t
        .as_ref()
        .ok_or_else(|| Error::Solver("SVD returned no right singular vectors".into()))?;
    let sv = &svd.singular_values;

    let sigma_max = sv.iter().cloned().fold(0.0, f64::max);
    let cut = if sigma_max <= rel_tol * reference_norm {
        f64::INFINITY
    } else {
        rel_tol * sigma_max
    };

    let mut order: Vec<usize> = (0..sv.len()).collect();
    order.sort_by(|&i, &j| sv[i].total_cmp(&sv[j]));

    let mut basis = Vec::new();
    for &i in &order {
        if sv[i] <= cut {
            let v: DVector<Complex64> = v_t.row(i).transpose().map(|c| c.conj());
            basis.push(v);
        }
    }
    let singular_values = order.iter().map(|&i| sv[i]).collect();
    let cut = if cut.is_infinite() { sigma_max } else { cut };
    Ok(NullSpace {
        basis,
        singular_values,
        cut,
    })
}

/// Spectral norm (largest singular value).
pub fn spectral_norm(a: &CMatrix) -> f64 {
    if a.is_empty() {
        return 0.0;
    }
    SVD::new(a.clone(), false, false)
        .singular_values
        .iter()
        .cloned()
        .fold(0.0, f64::max)
}

/// Orthonormal basis of the column span of `cols` (thin SVD, rank cut 1e-12).
pub fn orthonormalize(cols: &[DVector<Complex64>]) -> Vec<DVector<Complex64>> {
    if cols.is_empty() {
        return Vec::new();
    }
    let m = CMatrix::from_columns(cols);
    let svd = SVD::new(m, true, false);
    let u = svd.u.expect("requested U");
    let smax = svd.singular_values.iter().cloned().fold(0.0, f64::max);
    svd.singular_values
        .iter()
        .enumerate()
        .filter(|(_, &s)| s > 1e-12 * smax)
        .map(|(i, _)| u.column(i).into_owned())
        .collect()
}

/// Principal angles (radians, ascending) between the column spans of `a`
/// and `b`, computed from sines so that tiny angles stay accurate.
///
/// Returns `min(dim a, dim b)` angles.
pub fn principal_angles(a: &[DVector<Complex64>], b: &[DVector<Complex64>]) -> Vec<f64> {
    let qa = orthonormalize(a);
    let qb = orthonormalize(b);
    if qa.is_empty() || qb.is_empty() {
        return Vec::new();
    }
    let (small, large) = if qa.len() <= qb.len() {
        (&qa, &qb)
    } else {
        (&qb, &qa)
    };
    let ql = CMatrix::from_columns(large);
    let qs = CMatrix::from_columns(small);
    // residual of the smaller basis after projecting onto the larger span
    let resid = &qs - &ql * (ql.adjoint() * &qs);
    let sines = SVD::new(resid, false, false).singular_values;
    let mut angles: Vec<f64> = sines.iter().map(|s| s.clamp(0.0, 1.0).asin()).collect();
    angles.sort_by(f64::total_cmp);
    angles
}

/// Largest principal angle, or `π/2` when the dimensions differ.
pub fn subspace_distance(a: &[DVector<Complex64>], b: &[DVector<Complex64>]) -> f64 {
    let (da, db) = (orthonormalize(a).len(), orthonormalize(b).len());
    if da != db {
        return std::f64::consts::FRAC_PI_2;
    }
    principal_angles(a, b).into_iter().fold(0.0, f64::max)
}
