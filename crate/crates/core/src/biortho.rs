//! Orthogonality and biorthogonality decisions for filters.
//!
//! The criteria combine three finite checks:
//!
//! - the QMF condition `R_{m0,m0'} 1 = 1`,
//! - the zero conditions `m0(0) = √N`, `m0(2πk/N) = 0` for `k = 1..N-1`,
//! - one-dimensionality of the eigenvalue-1 space of the Lawton matrix,
//!   spanned by the constant.
//!
//! Analytic hypotheses (Riesz bounds, continuity and decay of the scaling
//! functions) cannot be decided on the finite model and are reported as
//! assumptions.

use std::f64::consts::PI;

use nalgebra::DVector;
use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::laurent::LaurentPoly;
use crate::linalg;
use crate::transfer::{fixed_space, lawton_matrix, ruelle_apply, EigenspaceResult, Filter};

/// Largest principal angle allowed between the fixed space and the constants.
pub const CONSTANT_ANGLE_TOL: f64 = 1e-7;

/// Singular values within this factor of the rank cut make the rank ambiguous.
pub const AMBIGUITY_FACTOR: f64 = 10.0;

const ONE: Complex64 = Complex64::new(1.0, 0.0);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Verdict {
    Orthogonal,
    Biorthogonal,
    Inconclusive,
    Fails,
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Verdict::Orthogonal => "Orthogonal",
            Verdict::Biorthogonal => "Biorthogonal",
            Verdict::Inconclusive => "Inconclusive",
            Verdict::Fails => "Fails",
        };
        f.write_str(s)
    }
}

/// A named sub-check with its numeric residual.
#[derive(Clone, Debug, Serialize)]
pub struct SubCheck {
    pub name: String,
    pub residual: f64,
    pub passed: bool,
}

impl SubCheck {
    fn new(name: impl Into<String>, residual: f64, passed: bool) -> Self {
        SubCheck {
            name: name.into(),
            residual,
            passed,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CriterionReport {
    pub verdict: Verdict,
    #[serde(rename = "qmf")]
    pub qmf_holds: bool,
    #[serde(rename = "zero_conditions")]
    pub zero_conditions_hold: bool,
    #[serde(rename = "dim")]
    pub eigenvalue1_dimension: usize,
    pub assumptions: Vec<String>,
    pub details: Vec<SubCheck>,
}

impl CriterionReport {
    pub fn detail(&self, name: &str) -> Option<&SubCheck> {
        self.details.iter().find(|d| d.name == name)
    }
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct QmfCheck {
    pub holds: bool,
    /// `max_k |(R 1)_k - δ_{k0}|`.
    pub residual: f64,
}

/// `R_{m0,m0'} 1 = 1` coefficient-wise within `tol`.
pub fn qmf_check(m0: &Filter, m0p: &LaurentPoly, tol: f64) -> Result<QmfCheck> {
    check_tol(tol)?;
    let r1 = ruelle_apply(m0, m0p, &LaurentPoly::one());
    let residual = r1.max_abs_diff(&LaurentPoly::one());
    Ok(QmfCheck {
        holds: residual <= tol,
        residual,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct ZeroConditions {
    pub holds: bool,
    /// `(θ, residual)`: `|m0(0) - √N|` at `θ = 0`, `|m0(θ)|` at `θ = 2πk/N`.
    pub residuals: Vec<(f64, f64)>,
}

pub fn zero_conditions(m0: &Filter, tol: f64) -> Result<ZeroConditions> {
    check_tol(tol)?;
    let n = m0.scale();
    let mut residuals = vec![(
        0.0,
        (m0.eval(0.0) - Complex64::new((n as f64).sqrt(), 0.0)).norm(),
    )];
    for k in 1..n {
        let theta = 2.0 * PI * k as f64 / n as f64;
        residuals.push((theta, m0.eval(theta).norm()));
    }
    Ok(ZeroConditions {
        holds: residuals.iter().all(|&(_, r)| r <= tol),
        residuals,
    })
}

fn check_tol(tol: f64) -> Result<()> {
    if tol > 0.0 {
        Ok(())
    } else {
        Err(Error::InvalidTolerance(tol))
    }
}

const ASSUME_POLYNOMIAL: &str =
    "uniqueness is decided among trigonometric-polynomial fixed points; non-polynomial continuous solutions are not examined";
const ASSUME_RIESZ: &str =
    "integer translates of the scaling functions form Riesz bases (not machine-checked)";
const ASSUME_CONTINUITY: &str =
    "scaling function transforms are continuous at 0 with the decay needed for the periodization to converge (not machine-checked)";

struct EigenData {
    space: EigenspaceResult,
    constant_angle: f64,
    ambiguous: bool,
}

fn eigen_data(m0: &Filter, m0p: &LaurentPoly, tol: f64) -> Result<EigenData> {
    let m = lawton_matrix(m0, m0p)?;
    let space = fixed_space(&m, ONE, tol)?;
    let constant = vec![m.to_vector(&LaurentPoly::one())];
    let constant_angle = if space.dim == 0 {
        std::f64::consts::FRAC_PI_2
    } else {
        let v: Vec<DVector<Complex64>> = space.vectors.clone();
        linalg::principal_angles(&constant, &v)[0]
    };
    let ambiguous = space.gap_above() < AMBIGUITY_FACTOR || space.gap_below() < AMBIGUITY_FACTOR;
    Ok(EigenData {
        space,
        constant_angle,
        ambiguous,
    })
}

fn push_eigen_details(details: &mut Vec<SubCheck>, e: &EigenData) {
    let dim_ok = e.space.dim == 1;
    details.push(SubCheck::new(
        "eigenvalue1_dimension",
        e.space.dim as f64 - 1.0,
        dim_ok,
    ));
    for (i, r) in e.space.residuals.iter().enumerate() {
        details.push(SubCheck::new(
            format!("eigenvector_residual[{i}]"),
            *r,
            *r <= e.space.tol,
        ));
    }
    details.push(SubCheck::new(
        "constant_angle",
        e.constant_angle,
        e.constant_angle <= CONSTANT_ANGLE_TOL,
    ));
    let gap = e.space.gap_above().min(e.space.gap_below());
    details.push(SubCheck::new("rank_gap", gap, !e.ambiguous));
}

fn decide(qmf: bool, zeros: bool, e: &EigenData, success: Verdict) -> Verdict {
    if !qmf || !zeros {
        return Verdict::Fails;
    }
    if e.ambiguous {
        return Verdict::Inconclusive;
    }
    if e.space.dim == 1 && e.constant_angle <= CONSTANT_ANGLE_TOL {
        success
    } else {
        Verdict::Fails
    }
}

/// Lawton-type orthogonality verdict for the integer translates of the
/// scaling function of `m0`.
pub fn orthogonality_verdict(m0: &Filter, tol: f64) -> Result<CriterionReport> {
    let qmf = qmf_check(m0, m0.m0(), tol)?;
    let zeros = zero_conditions(m0, tol)?;
    let eig = eigen_data(m0, m0.m0(), tol)?;

    let mut details = vec![SubCheck::new("qmf", qmf.residual, qmf.holds)];
    push_zero_details(&mut details, "zero_condition", &zeros, tol);
    push_eigen_details(&mut details, &eig);

    Ok(CriterionReport {
        verdict: decide(qmf.holds, zeros.holds, &eig, Verdict::Orthogonal),
        qmf_holds: qmf.holds,
        zero_conditions_hold: zeros.holds,
        eigenvalue1_dimension: eig.space.dim,
        assumptions: vec![ASSUME_CONTINUITY.to_string(), ASSUME_POLYNOMIAL.to_string()],
        details,
    })
}

fn push_zero_details(details: &mut Vec<SubCheck>, prefix: &str, z: &ZeroConditions, tol: f64) {
    for (k, &(_, r)) in z.residuals.iter().enumerate() {
        details.push(SubCheck::new(format!("{prefix}[{k}]"), r, r <= tol));
    }
}

/// Biorthogonality verdict for the pair `(m0, m0')` via the signed operator
/// `R_{m0,m0'}`.
pub fn biorthogonality_verdict(m0: &Filter, m0p: &Filter, tol: f64) -> Result<CriterionReport> {
    if m0.scale() != m0p.scale() {
        return Err(Error::ScaleMismatch(m0.scale(), m0p.scale()));
    }
    let qmf = qmf_check(m0, m0p.m0(), tol)?;
    let z0 = zero_conditions(m0, tol)?;
    let z1 = zero_conditions(m0p, tol)?;
    let eig = eigen_data(m0, m0p.m0(), tol)?;

    let mut details = vec![SubCheck::new("qmf", qmf.residual, qmf.holds)];
    push_zero_details(&mut details, "zero_condition_m0", &z0, tol);
    push_zero_details(&mut details, "zero_condition_m0p", &z1, tol);
    push_eigen_details(&mut details, &eig);

    let zeros = z0.holds && z1.holds;
    Ok(CriterionReport {
        verdict: decide(qmf.holds, zeros, &eig, Verdict::Biorthogonal),
        qmf_holds: qmf.holds,
        zero_conditions_hold: zeros,
        eigenvalue1_dimension: eig.space.dim,
        assumptions: vec![
            ASSUME_RIESZ.to_string(),
            ASSUME_CONTINUITY.to_string(),
            ASSUME_POLYNOMIAL.to_string(),
        ],
        details,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct BoundReport {
    /// Largest `|h0|² / (h h')` over points with `h h' >= floor_eps`.
    pub c_max: f64,
    /// Points with `h h' < floor_eps` but `|h0|² >= floor_eps`.
    pub violations: usize,
    /// Points that entered `c_max`.
    pub evaluated: usize,
    pub grid_size: usize,
    pub floor_eps: f64,
}

const REAL_TOL: f64 = 1e-10;

/// Grid check of the dominance pattern `|h0|² <= c h h'` on `[0, 2π)`.
pub fn cross_bound_check(
    h0: &LaurentPoly,
    h: &LaurentPoly,
    hp: &LaurentPoly,
    grid_size: usize,
    floor_eps: f64,
) -> Result<BoundReport> {
    if grid_size < 16 {
        return Err(Error::InvalidGrid(format!("grid_size {grid_size} < 16")));
    }
    check_tol(floor_eps)?;
    let mut c_max: f64 = 0.0;
    let mut violations = 0;
    let mut evaluated = 0;
    for i in 0..grid_size {
        let theta = 2.0 * PI * i as f64 / grid_size as f64;
        let hv = h.eval(theta);
        let hpv = hp.eval(theta);
        if hv.im.abs() > REAL_TOL {
            return Err(Error::NotRealValued {
                name: "h",
                imag: hv.im,
            });
        }
        if hpv.im.abs() > REAL_TOL {
            return Err(Error::NotRealValued {
                name: "h'",
                imag: hpv.im,
            });
        }
        let dominant = hv.re * hpv.re;
        let target = h0.eval(theta).norm_sqr();
        if dominant >= floor_eps {
            evaluated += 1;
            c_max = c_max.max(target / dominant);
        } else if target >= floor_eps {
            violations += 1;
        }
    }
    Ok(BoundReport {
        c_max,
        violations,
        evaluated,
        grid_size,
        floor_eps,
    })
}
