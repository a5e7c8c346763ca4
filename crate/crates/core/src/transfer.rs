//! The signed Ruelle operator `R_{m0,m0'}` on Laurent polynomials.
//!
//! `R f = downsample(conj(m0) · m0' · f, N)`, which is the polynomial form of
//! the root average `(1/N) Σ_{w^N = z} conj(m0(w)) m0'(w) f(w)`.
//!
//! Writing `[lo, hi]` for the support of `conj(m0) m0'`, the coefficient
//! window `[-d, d]` is invariant under `R` as soon as `(N - 1) d >= max(-lo, hi)`.
//! [`LawtonMatrix`] is the matrix of `R` on that window.

use nalgebra::DVector;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::laurent::LaurentPoly;
use crate::linalg::{self, CMatrix};

/// Low-pass filter `m0` together with its scale `N >= 2`.
#[derive(Clone, Debug, PartialEq)]
pub struct Filter {
    m0: LaurentPoly,
    scale: i64,
}

impl Filter {
    pub fn new(m0: LaurentPoly, scale: i64) -> Result<Self> {
        if scale < 2 {
            return Err(Error::InvalidScale(scale));
        }
        if m0.is_zero() {
            return Err(Error::ZeroFilter);
        }
        Ok(Filter { m0, scale })
    }

    /// The Haar filter `(1 + z)/√2`, `N = 2`.
    pub fn haar() -> Self {
        let c = std::f64::consts::FRAC_1_SQRT_2;
        Filter {
            m0: LaurentPoly::from_real(0, &[c, c]),
            scale: 2,
        }
    }

    pub fn m0(&self) -> &LaurentPoly {
        &self.m0
    }

    pub fn scale(&self) -> i64 {
        self.scale
    }

    /// `m0(θ)` under the `z = e^{-iθ}` convention.
    pub fn eval(&self, theta: f64) -> Complex64 {
        self.m0.eval(theta)
    }
}

impl Serialize for Filter {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("Filter", 3)?;
        st.serialize_field("min_deg", &self.m0.min_deg())?;
        st.serialize_field("coeffs", self.m0.coeffs())?;
        st.serialize_field("N", &self.scale)?;
        st.end()
    }
}

/// `conj(m0) · m0'`, the symbol the operator averages against.
pub fn transfer_kernel(m0: &Filter, m0p: &LaurentPoly) -> LaurentPoly {
    &m0.m0.conj_involution() * m0p
}

/// `R_{m0,m0'} f`.
pub fn ruelle_apply(m0: &Filter, m0p: &LaurentPoly, f: &LaurentPoly) -> LaurentPoly {
    apply_kernel(&transfer_kernel(m0, m0p), m0.scale, f)
}

fn apply_kernel(kernel: &LaurentPoly, scale: i64, f: &LaurentPoly) -> LaurentPoly {
    (kernel * f)
        .downsample(scale)
        .expect("filter scale is at least 2")
}

/// `R^n f` for `n >= 0`.
pub fn ruelle_power(m0: &Filter, m0p: &LaurentPoly, f: &LaurentPoly, n: u32) -> LaurentPoly {
    let kernel = transfer_kernel(m0, m0p);
    (0..n).fold(f.clone(), |acc, _| apply_kernel(&kernel, m0.scale, &acc))
}

/// Smallest `d` allowed by the support bound, after checking that `R` maps
/// every monomial `z^k`, `|k| <= d`, back into `[-d, d]`.
pub fn invariant_half_width(m0: &Filter, m0p: &LaurentPoly) -> Result<i64> {
    let kernel = transfer_kernel(m0, m0p);
    let d = support_bound(&kernel, m0.scale);
    verify_window(&kernel, m0.scale, d)?;
    Ok(d)
}

fn support_bound(kernel: &LaurentPoly, scale: i64) -> i64 {
    let Some((lo, hi)) = kernel.support() else {
        return 0;
    };
    let reach = (-lo).max(hi).max(0);
    // ceil(reach / (N - 1))
    (reach + scale - 2) / (scale - 1)
}

fn verify_window(kernel: &LaurentPoly, scale: i64, d: i64) -> Result<()> {
    for k in -d..=d {
        let image = apply_kernel(kernel, scale, &LaurentPoly::monomial(k));
        if let Some((exponent, magnitude)) = image.max_outside(-d, d) {
            return Err(Error::WindowEscape {
                exponent,
                magnitude,
                d,
            });
        }
    }
    Ok(())
}

/// Matrix of `R_{m0,m0'}` on the coefficient window `[-d, d]`. Column `j`
/// holds the coefficients of `R(z^{j-d})` at exponents `-d..=d`.
#[derive(Clone, Debug)]
pub struct LawtonMatrix {
    half_width: i64,
    scale: i64,
    m0: Filter,
    m0p: LaurentPoly,
    entries: CMatrix,
}

impl LawtonMatrix {
    pub fn half_width(&self) -> i64 {
        self.half_width
    }

    pub fn dim(&self) -> usize {
        (2 * self.half_width + 1) as usize
    }

    pub fn scale(&self) -> i64 {
        self.scale
    }

    pub fn filters(&self) -> (&Filter, &LaurentPoly) {
        (&self.m0, &self.m0p)
    }

    pub fn entries(&self) -> &CMatrix {
        &self.entries
    }

    /// Entry at (row exponent, column exponent).
    pub fn entry(&self, row_exp: i64, col_exp: i64) -> Complex64 {
        let d = self.half_width;
        self.entries[((row_exp + d) as usize, (col_exp + d) as usize)]
    }

    /// Coefficient vector of `f` on the window (coefficients outside are ignored).
    pub fn to_vector(&self, f: &LaurentPoly) -> DVector<Complex64> {
        DVector::from_vec(f.window(-self.half_width, self.half_width))
    }

    pub fn to_poly(&self, v: &DVector<Complex64>) -> LaurentPoly {
        LaurentPoly::new(-self.half_width, v.iter().cloned().collect())
    }

    /// Applies the matrix to a polynomial supported in the window.
    pub fn apply(&self, f: &LaurentPoly) -> LaurentPoly {
        self.to_poly(&(&self.entries * self.to_vector(f)))
    }
}

impl Serialize for LawtonMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let n = self.dim();
        let row_major: Vec<Complex64> = (0..n)
            .flat_map(|i| (0..n).map(move |j| (i, j)))
            .map(|(i, j)| self.entries[(i, j)])
            .collect();
        let mut st = s.serialize_struct("LawtonMatrix", 3)?;
        st.serialize_field("d", &self.half_width)?;
        st.serialize_field("N", &self.scale)?;
        st.serialize_field("entries", &row_major)?;
        st.end()
    }
}

/// Builds the matrix of `R_{m0,m0'}` on its minimal invariant window.
pub fn lawton_matrix(m0: &Filter, m0p: &LaurentPoly) -> Result<LawtonMatrix> {
    let kernel = transfer_kernel(m0, m0p);
    let d = support_bound(&kernel, m0.scale);
    let n = (2 * d + 1) as usize;
    let mut entries = CMatrix::zeros(n, n);
    for (j, k) in (-d..=d).enumerate() {
        let image = apply_kernel(&kernel, m0.scale, &LaurentPoly::monomial(k));
        if let Some((exponent, magnitude)) = image.max_outside(-d, d) {
            return Err(Error::WindowEscape {
                exponent,
                magnitude,
                d,
            });
        }
        for (i, c) in image.window(-d, d).into_iter().enumerate() {
            entries[(i, j)] = c;
        }
    }
    Ok(LawtonMatrix {
        half_width: d,
        scale: m0.scale,
        m0: m0.clone(),
        m0p: m0p.clone(),
        entries,
    })
}

const MAGNITUDE_TIE: f64 = 1e-10;

/// All eigenvalues, sorted by descending magnitude, ties by ascending argument.
pub fn spectrum(m: &LawtonMatrix) -> Result<Vec<Complex64>> {
    let mut ev = linalg::eigenvalues(&m.entries)?;
    ev.sort_by(|a, b| {
        let (ma, mb) = (a.norm(), b.norm());
        if (ma - mb).abs() > MAGNITUDE_TIE {
            mb.total_cmp(&ma)
        } else {
            a.arg().total_cmp(&b.arg())
        }
    });
    Ok(ev)
}

/// Orthonormal basis of an eigenspace, as window coefficient vectors.
#[derive(Clone, Debug, Serialize)]
pub struct EigenspaceResult {
    pub eigenvalue: Complex64,
    /// Absolute singular-value cut actually applied; every residual is below it.
    pub tol: f64,
    /// The caller's relative tolerance.
    pub rel_tol: f64,
    pub dim: usize,
    pub basis: Vec<LaurentPoly>,
    pub residuals: Vec<f64>,
    /// Singular values of `M - λI`, ascending.
    pub singular_values: Vec<f64>,
    #[serde(skip)]
    pub vectors: Vec<DVector<Complex64>>,
}

impl EigenspaceResult {
    /// Ratio between the smallest singular value kept out of the eigenspace
    /// and the cut (infinite when everything is inside).
    pub fn gap_above(&self) -> f64 {
        match self.singular_values.get(self.dim) {
            Some(&s) if self.tol > 0.0 => s / self.tol,
            Some(_) => f64::INFINITY,
            None => f64::INFINITY,
        }
    }

    /// Ratio between the cut and the largest singular value counted inside.
    pub fn gap_below(&self) -> f64 {
        match self.dim.checked_sub(1).map(|i| self.singular_values[i]) {
            Some(s) if s > 0.0 => self.tol / s,
            _ => f64::INFINITY,
        }
    }
}

/// Numerical null space of `M - λI`: singular values at or below
/// `tol · σ_max(M - λI)` span the returned basis.
pub fn fixed_space(m: &LawtonMatrix, eigenvalue: Complex64, tol: f64) -> Result<EigenspaceResult> {
    if tol.is_nan() || tol <= 0.0 {
        return Err(Error::InvalidTolerance(tol));
    }
    let n = m.dim();
    let shifted = &m.entries - CMatrix::identity(n, n) * eigenvalue;
    let reference = linalg::spectral_norm(&m.entries).max(eigenvalue.norm());
    let ns = linalg::null_space(&shifted, tol, reference)?;

    let mut vectors = Vec::with_capacity(ns.basis.len());
    let mut residuals = Vec::with_capacity(ns.basis.len());
    for v in ns.basis {
        let v = normalize_phase(v);
        residuals.push((&shifted * &v).norm());
        vectors.push(v);
    }
    Ok(EigenspaceResult {
        eigenvalue,
        tol: ns.cut,
        rel_tol: tol,
        dim: vectors.len(),
        basis: vectors.iter().map(|v| m.to_poly(v)).collect(),
        residuals,
        singular_values: ns.singular_values,
        vectors,
    })
}

/// Rotates `v` so its largest-magnitude entry (first one on ties) is real positive.
fn normalize_phase(v: DVector<Complex64>) -> DVector<Complex64> {
    let mut best = 0;
    for (i, c) in v.iter().enumerate() {
        if c.norm() > v[best].norm() * (1.0 + 1e-9) {
            best = i;
        }
    }
    let pivot = v[best];
    if pivot.norm() == 0.0 {
        return v;
    }
    let phase = pivot.conj() / pivot.norm();
    v * phase
}

/// `m0(z) m0(z^N) ... m0(z^{N^{n-1}})`.
pub fn filter_cascade_product(m0: &Filter, n: i64) -> Result<LaurentPoly> {
    if n < 1 {
        return Err(Error::InvalidCount { min: 1, got: n });
    }
    let mut product = m0.m0.clone();
    let mut power = 1i64;
    for _ in 1..n {
        power *= m0.scale;
        product = &product * &m0.m0.upsample(power)?;
    }
    Ok(product)
}

pub const ELEMPROP_TOL: f64 = 1e-11;

/// One checked identity of the elementary operator properties.
#[derive(Clone, Debug, Serialize)]
pub struct IdentityCheck {
    pub name: &'static str,
    pub holds: bool,
    /// Residual scaled by `max(1, size of the compared quantities)`.
    pub residual: f64,
}

/// Outcome of [`check_elemprop`].
#[derive(Clone, Debug, Serialize)]
pub struct ElemPropReport {
    /// `∫ R f = ∫ conj(m0) m0' f`.
    pub integral: IdentityCheck,
    /// `∫ g R f = ∫ g(z^N) conj(m0) m0' f`.
    pub weighted_integral: IdentityCheck,
    /// `R(g(z^N) f) = g R f` and `R^n(g(z^{N^n}) f) = g R^n f`.
    pub module_property: IdentityCheck,
    /// `∫ R^n f = ∫ conj(m0^(n)) m0'^(n) f`.
    pub iterated_integral: IdentityCheck,
}

impl ElemPropReport {
    pub fn all_hold(&self) -> bool {
        self.checks().iter().all(|c| c.holds)
    }

    pub fn checks(&self) -> [&IdentityCheck; 4] {
        [
            &self.integral,
            &self.weighted_integral,
            &self.module_property,
            &self.iterated_integral,
        ]
    }

    pub fn failures(&self) -> Vec<&'static str> {
        self.checks()
            .iter()
            .filter(|c| !c.holds)
            .map(|c| c.name)
            .collect()
    }
}

fn scalar_check(name: &'static str, a: Complex64, b: Complex64) -> IdentityCheck {
    let residual = (a - b).norm() / a.norm().max(b.norm()).max(1.0);
    IdentityCheck {
        name,
        holds: residual <= ELEMPROP_TOL,
        residual,
    }
}

fn poly_residual(a: &LaurentPoly, b: &LaurentPoly) -> f64 {
    a.max_abs_diff(b) / a.max_abs_coeff().max(b.max_abs_coeff()).max(1.0)
}

/// Checks the four elementary identities of the transfer operator for the
/// given data, each to relative accuracy [`ELEMPROP_TOL`].
pub fn check_elemprop(
    m0: &Filter,
    m0p: &LaurentPoly,
    f: &LaurentPoly,
    g: &LaurentPoly,
    n: i64,
) -> Result<ElemPropReport> {
    if n < 1 {
        return Err(Error::InvalidCount { min: 1, got: n });
    }
    let scale = m0.scale;
    let kernel = transfer_kernel(m0, m0p);
    let rf = apply_kernel(&kernel, scale, f);

    let integral = scalar_check("integral", rf.integral(), (&kernel * f).integral());

    let g_up = g.upsample(scale)?;
    let weighted_integral = scalar_check(
        "weighted_integral",
        (g * &rf).integral(),
        (&(&g_up * &kernel) * f).integral(),
    );

    let once = poly_residual(&apply_kernel(&kernel, scale, &(&g_up * f)), &(g * &rf));
    let big = scale.pow(n as u32);
    let lhs = ruelle_power(m0, m0p, &(&g.upsample(big)? * f), n as u32);
    let rhs = g * &ruelle_power(m0, m0p, f, n as u32);
    let residual = once.max(poly_residual(&lhs, &rhs));
    let module_property = IdentityCheck {
        name: "module_property",
        holds: residual <= ELEMPROP_TOL,
        residual,
    };

    let m0_n = filter_cascade_product(m0, n)?;
    let m0p_n = filter_cascade_product(
        &Filter {
            m0: m0p.clone(),
            scale,
        },
        n,
    )?;
    let iterated_kernel = &m0_n.conj_involution() * &m0p_n;
    let iterated_integral = scalar_check(
        "iterated_integral",
        ruelle_power(m0, m0p, f, n as u32).integral(),
        (&iterated_kernel * f).integral(),
    );

    Ok(ElemPropReport {
        integral,
        weighted_integral,
        module_property,
        iterated_integral,
    })
}

/// One randomly drawn instance for [`check_elemprop`].
#[derive(Clone, Debug)]
pub struct ElemPropCase {
    pub m0: Filter,
    pub m0p: LaurentPoly,
    pub f: LaurentPoly,
    pub g: LaurentPoly,
    pub n: i64,
}

fn random_poly(rng: &mut impl Rng, max_len: usize) -> LaurentPoly {
    let len = rng.gen_range(1..=max_len);
    let lo = rng.gen_range(-4i64..=4);
    let coeffs = (0..len)
        .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
        .collect();
    LaurentPoly::new(lo, coeffs)
}

/// Random filter pair and test polynomials: `N ∈ {2, 3, 4}`, every
/// polynomial of degree span at most 8, `n ∈ {1, 2}`.
pub fn random_elemprop_case(rng: &mut impl Rng) -> ElemPropCase {
    let scale = rng.gen_range(2i64..=4);
    let m0 = loop {
        if let Ok(f) = Filter::new(random_poly(rng, 9), scale) {
            break f;
        }
    };
    ElemPropCase {
        m0,
        m0p: random_poly(rng, 9),
        f: random_poly(rng, 9),
        g: random_poly(rng, 9),
        n: rng.gen_range(1i64..=2),
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ElemPropSummary {
    pub seed: u64,
    pub cases: usize,
    pub passed: usize,
    /// Largest residual seen per identity, in report order.
    pub max_residuals: [f64; 4],
    /// `(case index, failed identity names)`.
    pub failures: Vec<(usize, Vec<&'static str>)>,
}

/// Runs [`check_elemprop`] on `cases` instances drawn from a seeded ChaCha stream.
pub fn elemprop_suite(seed: u64, cases: usize) -> Result<ElemPropSummary> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut summary = ElemPropSummary {
        seed,
        cases,
        passed: 0,
        max_residuals: [0.0; 4],
        failures: Vec::new(),
    };
    for i in 0..cases {
        let case = random_elemprop_case(&mut rng);
        let report = check_elemprop(&case.m0, &case.m0p, &case.f, &case.g, case.n)?;
        for (slot, check) in summary.max_residuals.iter_mut().zip(report.checks()) {
            *slot = slot.max(check.residual);
        }
        if report.all_hold() {
            summary.passed += 1;
        } else {
            summary.failures.push((i, report.failures()));
        }
    }
    Ok(summary)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_1_SQRT_2, PI};

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    fn stretched(p: usize) -> Filter {
        let mut v = vec![0.0; p + 1];
        v[0] = FRAC_1_SQRT_2;
        v[p] = FRAC_1_SQRT_2;
        Filter::new(LaurentPoly::from_real(0, &v), 2).unwrap()
    }

    /// Fejér fixed vector written out directly: Σ_{|k|<p} (p-|k|)/p² z^k.
    fn fejer(p: i64) -> LaurentPoly {
        let v: Vec<f64> = (-(p - 1)..p)
            .map(|k| (p - k.abs()) as f64 / (p * p) as f64)
            .collect();
        LaurentPoly::from_real(-(p - 1), &v)
    }

    #[test]
    fn filter_rejects_bad_input() {
        assert!(matches!(
            Filter::new(LaurentPoly::one(), 1),
            Err(Error::InvalidScale(1))
        ));
        assert!(matches!(
            Filter::new(LaurentPoly::zero(), 2),
            Err(Error::ZeroFilter)
        ));
    }

    #[test]
    fn haar_apply_examples() {
        let h = Filter::haar();
        let one = LaurentPoly::one();
        assert!(ruelle_apply(&h, h.m0(), &one).approx_eq(&one, 1e-15));
        let rz = ruelle_apply(&h, h.m0(), &LaurentPoly::monomial(1));
        assert!(rz.approx_eq(&LaurentPoly::from_real(0, &[0.5, 0.5]), 1e-15));
        // two square roots of z at 16 sample points
        for i in 0..16 {
            let theta = 2.0 * PI * i as f64 / 16.0;
            let avg: Complex64 = (0..2)
                .map(|j| {
                    let w = (theta + 2.0 * PI * j as f64) / 2.0;
                    h.eval(w).conj() * h.eval(w) * Complex64::from_polar(1.0, -w)
                })
                .sum::<Complex64>()
                / 2.0;
            assert!((avg - rz.eval(theta)).norm() < 1e-14);
        }
    }

    #[test]
    fn stretched_fixes_fejer() {
        let f = stretched(9);
        let h = fejer(9);
        assert!(ruelle_apply(&f, f.m0(), &h).approx_eq(&h, 1e-14));
    }

    #[test]
    fn half_width_examples() {
        let h = Filter::haar();
        assert_eq!(invariant_half_width(&h, h.m0()).unwrap(), 1);
        let s = stretched(9);
        assert_eq!(invariant_half_width(&s, s.m0()).unwrap(), 9);
        let one = Filter::new(LaurentPoly::one(), 2).unwrap();
        assert_eq!(invariant_half_width(&one, one.m0()).unwrap(), 0);
        let s3 = Filter::new(LaurentPoly::from_real(0, &[1.0, 0.0, 0.0, 1.0]), 3).unwrap();
        assert_eq!(invariant_half_width(&s3, s3.m0()).unwrap(), 2);
    }

    #[test]
    fn haar_lawton_columns() {
        let h = Filter::haar();
        let m = lawton_matrix(&h, h.m0()).unwrap();
        assert_eq!(m.dim(), 3);
        // R(z^-1) = 1/2 + z^-1/2, R(1) = 1, R(z) = 1/2 + z/2
        let expect = [[0.5, 0.0, 0.0], [0.5, 1.0, 0.5], [0.0, 0.0, 0.5]];
        for (i, row) in expect.iter().enumerate() {
            for (j, &e) in row.iter().enumerate() {
                assert!((m.entries()[(i, j)] - c(e)).norm() < 1e-15, "({i},{j})");
            }
        }
        assert!((m.entry(-1, -1) - c(0.5)).norm() < 1e-15);
    }

    #[test]
    fn constant_filter_matrix() {
        let f = Filter::new(LaurentPoly::constant(c(2f64.sqrt())), 2).unwrap();
        let m = lawton_matrix(&f, f.m0()).unwrap();
        assert_eq!(m.dim(), 1);
        // the root average of the constant |√2|² is 2, not 1
        assert!((m.entries()[(0, 0)] - c(2.0)).norm() < 1e-15);
        assert_eq!(spectrum(&m).unwrap().len(), 1);
        let one = Filter::new(LaurentPoly::one(), 2).unwrap();
        let m1 = lawton_matrix(&one, one.m0()).unwrap();
        assert_eq!(m1.entries()[(0, 0)], c(1.0));
    }

    #[test]
    fn matrix_columns_agree_with_apply() {
        let s = stretched(3);
        let m = lawton_matrix(&s, s.m0()).unwrap();
        assert_eq!(m.dim(), 7);
        for k in -3..=3 {
            let z = LaurentPoly::monomial(k);
            assert!(m.apply(&z).approx_eq(&ruelle_apply(&s, s.m0(), &z), 1e-12));
        }
        let h = fejer(3);
        assert!(m.apply(&h).approx_eq(&h, 1e-14));
    }

    #[test]
    fn haar_spectrum() {
        let h = Filter::haar();
        let ev = spectrum(&lawton_matrix(&h, h.m0()).unwrap()).unwrap();
        let expect = [1.0, 0.5, 0.5];
        for (z, e) in ev.iter().zip(expect) {
            assert!((z - c(e)).norm() < 1e-12, "{ev:?}");
        }
    }

    #[test]
    fn stretched_nine_has_triple_one() {
        let s = stretched(9);
        let ev = spectrum(&lawton_matrix(&s, s.m0()).unwrap()).unwrap();
        let near_one = ev.iter().filter(|z| (*z - c(1.0)).norm() < 1e-8).count();
        assert_eq!(near_one, 3, "{ev:?}");
    }

    #[test]
    fn fixed_space_examples() {
        let h = Filter::haar();
        let m = lawton_matrix(&h, h.m0()).unwrap();
        let fs = fixed_space(&m, c(1.0), 1e-9).unwrap();
        assert_eq!(fs.dim, 1);
        assert!(fs.basis[0].approx_eq(&LaurentPoly::one(), 1e-12));
        assert!(fs.residuals.iter().all(|&r| r <= fs.tol));

        assert_eq!(fixed_space(&m, c(7.0), 1e-9).unwrap().dim, 0);
        assert!(matches!(
            fixed_space(&m, c(1.0), 0.0),
            Err(Error::InvalidTolerance(_))
        ));

        let s = stretched(9);
        let m9 = lawton_matrix(&s, s.m0()).unwrap();
        let fs9 = fixed_space(&m9, c(1.0), 1e-9).unwrap();
        assert_eq!(fs9.dim, 3);
        for (i, a) in fs9.vectors.iter().enumerate() {
            for (j, b) in fs9.vectors.iter().enumerate() {
                let ip = a.dotc(b);
                let want = if i == j { 1.0 } else { 0.0 };
                assert!((ip - c(want)).norm() < 1e-10);
            }
        }
    }

    #[test]
    fn cascade_product_examples() {
        let h = Filter::haar();
        assert_eq!(filter_cascade_product(&h, 1).unwrap(), *h.m0());
        let p2 = filter_cascade_product(&h, 2).unwrap();
        assert!(p2.approx_eq(&LaurentPoly::from_real(0, &[0.5, 0.5, 0.5, 0.5]), 1e-15));
        assert!(filter_cascade_product(&h, 0).is_err());
        let s = stretched(5);
        for n in 1..5 {
            let p = filter_cascade_product(&s, n).unwrap();
            assert_eq!(p.support(), Some((0, 5 * ((1 << n) - 1))));
        }
    }

    #[test]
    fn elemprop_examples() {
        let h = Filter::haar();
        let z = LaurentPoly::monomial(1);
        let r = check_elemprop(&h, h.m0(), &z, &z, 2).unwrap();
        assert!(r.all_hold(), "{:?}", r.failures());
        let r0 = check_elemprop(&h, h.m0(), &LaurentPoly::zero(), &z, 1).unwrap();
        assert!(r0.all_hold());
        assert!(check_elemprop(&h, h.m0(), &z, &z, 0).is_err());
    }

    #[test]
    fn elemprop_suite_is_seeded() {
        let a = elemprop_suite(7, 10).unwrap();
        let b = elemprop_suite(7, 10).unwrap();
        assert_eq!(a.max_residuals, b.max_residuals);
        assert_eq!(a.passed, 10);
    }

    #[test]
    fn lawton_json_shape() {
        let h = Filter::haar();
        let m = lawton_matrix(&h, h.m0()).unwrap();
        let v: serde_json::Value = serde_json::to_value(&m).unwrap();
        assert_eq!(v["d"], 1);
        assert_eq!(v["N"], 2);
        let e = v["entries"].as_array().unwrap();
        assert_eq!(e.len(), 9);
        // row-major: row exponent 0 is [0.5, 1, 0.5]
        assert!((e[3][0].as_f64().unwrap() - 0.5).abs() < 1e-15);
        assert!((e[4][0].as_f64().unwrap() - 1.0).abs() < 1e-15);
    }
}
