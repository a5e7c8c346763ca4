//! Finitely supported Laurent polynomials on the unit circle.
//!
//! A [`LaurentPoly`] stores `f(z) = Σ c_k z^k` densely over its support
//! interval. Points of the circle are parametrized as `z = e^{-iθ}`
//! everywhere in this crate, so [`LaurentPoly::eval`] computes
//! `Σ c_k e^{-ikθ}`.

use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Coefficients with magnitude at or below this are trimmed from both ends.
pub const TRIM_EPS: f64 = 1e-14;

/// Default tolerance for [`LaurentPoly::approx_eq`].
pub const DEFAULT_CMP_TOL: f64 = 1e-12;

const UNIMODULAR_TOL: f64 = 1e-12;

/// `Σ c_k z^k` with `coeffs[j]` holding the coefficient of `z^(min_deg + j)`.
///
/// Invariant: either `coeffs` is empty and `min_deg == 0` (the zero
/// polynomial), or both end coefficients have magnitude above [`TRIM_EPS`].
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(from = "RawLaurent")]
pub struct LaurentPoly {
    min_deg: i64,
    coeffs: Vec<Complex64>,
}

#[derive(Deserialize)]
struct RawLaurent {
    min_deg: i64,
    coeffs: Vec<Complex64>,
}

impl From<RawLaurent> for LaurentPoly {
    fn from(raw: RawLaurent) -> Self {
        LaurentPoly::new(raw.min_deg, raw.coeffs)
    }
}

impl LaurentPoly {
    /// Builds a normalized polynomial from a dense coefficient run.
    pub fn new(min_deg: i64, coeffs: Vec<Complex64>) -> Self {
        let Some(first) = coeffs.iter().position(|c| c.norm() > TRIM_EPS) else {
            return Self::zero();
        };
        let last = coeffs.iter().rposition(|c| c.norm() > TRIM_EPS).unwrap();
        let coeffs = if first == 0 && last + 1 == coeffs.len() {
            coeffs
        } else {
            coeffs[first..=last].to_vec()
        };
        LaurentPoly {
            min_deg: min_deg + first as i64,
            coeffs,
        }
    }

    pub fn from_real(min_deg: i64, coeffs: &[f64]) -> Self {
        Self::new(
            min_deg,
            coeffs.iter().map(|&c| Complex64::new(c, 0.0)).collect(),
        )
    }

    pub fn zero() -> Self {
        LaurentPoly {
            min_deg: 0,
            coeffs: Vec::new(),
        }
    }

    pub fn constant(c: Complex64) -> Self {
        Self::new(0, vec![c])
    }

    pub fn one() -> Self {
        Self::constant(Complex64::new(1.0, 0.0))
    }

    /// The monomial `z^k`.
    pub fn monomial(k: i64) -> Self {
        Self::new(k, vec![Complex64::new(1.0, 0.0)])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Lowest stored exponent (0 for the zero polynomial).
    pub fn min_deg(&self) -> i64 {
        self.min_deg
    }

    /// Highest stored exponent, `None` for the zero polynomial.
    pub fn max_deg(&self) -> Option<i64> {
        if self.is_zero() {
            None
        } else {
            Some(self.min_deg + self.coeffs.len() as i64 - 1)
        }
    }

    /// Inclusive exponent range of the stored coefficients.
    pub fn support(&self) -> Option<(i64, i64)> {
        self.max_deg().map(|hi| (self.min_deg, hi))
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    /// Coefficient of `z^k`, zero outside the support.
    pub fn coeff(&self, k: i64) -> Complex64 {
        let j = k - self.min_deg;
        if j < 0 || j >= self.coeffs.len() as i64 {
            Complex64::new(0.0, 0.0)
        } else {
            self.coeffs[j as usize]
        }
    }

    /// `(exponent, coefficient)` pairs over the stored run, zeros included.
    pub fn terms(&self) -> impl Iterator<Item = (i64, Complex64)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .map(move |(j, &c)| (self.min_deg + j as i64, c))
    }

    /// Dense coefficient vector over exponents `lo..=hi`.
    pub fn window(&self, lo: i64, hi: i64) -> Vec<Complex64> {
        (lo..=hi).map(|k| self.coeff(k)).collect()
    }

    /// Largest coefficient magnitude outside `lo..=hi`, with its exponent.
    pub fn max_outside(&self, lo: i64, hi: i64) -> Option<(i64, f64)> {
        self.terms()
            .filter(|&(k, _)| k < lo || k > hi)
            .map(|(k, c)| (k, c.norm()))
            .filter(|&(_, m)| m > TRIM_EPS)
            .max_by(|a, b| a.1.total_cmp(&b.1))
    }

    /// Coefficient-wise comparison: every `|c_k - d_k| <= tol`.
    pub fn approx_eq(&self, other: &LaurentPoly, tol: f64) -> bool {
        self.max_abs_diff(other) <= tol
    }

    /// `max_k |c_k - d_k|` over the union of supports.
    pub fn max_abs_diff(&self, other: &LaurentPoly) -> f64 {
        let (lo, hi) = match (self.support(), other.support()) {
            (None, None) => return 0.0,
            (Some(s), None) | (None, Some(s)) => s,
            (Some(a), Some(b)) => (a.0.min(b.0), a.1.max(b.1)),
        };
        (lo..=hi)
            .map(|k| (self.coeff(k) - other.coeff(k)).norm())
            .fold(0.0, f64::max)
    }

    /// Euclidean norm of the coefficient sequence.
    pub fn l2_norm(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn max_abs_coeff(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    pub fn scale(&self, s: Complex64) -> Self {
        Self::new(self.min_deg, self.coeffs.iter().map(|&c| c * s).collect())
    }

    /// The polynomial whose values on `|z| = 1` are the complex conjugates
    /// of `self`: `c_k z^k` becomes `conj(c_k) z^{-k}`.
    pub fn conj_involution(&self) -> Self {
        match self.max_deg() {
            None => Self::zero(),
            Some(hi) => Self::new(-hi, self.coeffs.iter().rev().map(|c| c.conj()).collect()),
        }
    }

    /// `f(z^n)`: the coefficient of `z^k` moves to `z^{nk}`.
    pub fn upsample(&self, n: i64) -> Result<Self> {
        if n <= 0 {
            return Err(Error::NonPositiveFactor(n));
        }
        if self.is_zero() {
            return Ok(Self::zero());
        }
        let n_us = n as usize;
        let mut out = vec![Complex64::new(0.0, 0.0); (self.coeffs.len() - 1) * n_us + 1];
        for (j, &c) in self.coeffs.iter().enumerate() {
            out[j * n_us] = c;
        }
        Ok(Self::new(self.min_deg * n, out))
    }

    /// Keeps the coefficients at exponents divisible by `n`, re-indexed to
    /// `k / n`. This is the circle average `(1/n) Σ_{w^n = z} f(w)`.
    pub fn downsample(&self, n: i64) -> Result<Self> {
        if n <= 0 {
            return Err(Error::NonPositiveFactor(n));
        }
        let Some((lo, hi)) = self.support() else {
            return Ok(Self::zero());
        };
        let first = lo.div_euclid(n) + i64::from(lo.rem_euclid(n) != 0);
        let last = hi.div_euclid(n);
        if first > last {
            return Ok(Self::zero());
        }
        let out = (first..=last).map(|m| self.coeff(m * n)).collect();
        Ok(Self::new(first, out))
    }

    /// `Σ c_k e^{-ikθ}`.
    pub fn eval(&self, theta: f64) -> Complex64 {
        if self.is_zero() {
            return Complex64::new(0.0, 0.0);
        }
        let z = Complex64::from_polar(1.0, -theta);
        let mut acc = Complex64::new(0.0, 0.0);
        for &c in self.coeffs.iter().rev() {
            acc = acc * z + c;
        }
        acc * Complex64::from_polar(1.0, -(self.min_deg as f64) * theta)
    }

    /// `f(ηz)` for `|η| = 1`: the coefficient `c_k` becomes `c_k η^k`.
    ///
    /// With `η = e^{iα}` this satisfies `eval(rotate(f, η), θ) = eval(f, θ - α)`.
    pub fn rotate(&self, eta: Complex64) -> Result<Self> {
        if (eta.norm() - 1.0).abs() > UNIMODULAR_TOL {
            return Err(Error::NotUnimodular {
                re: eta.re,
                im: eta.im,
            });
        }
        let alpha = eta.arg();
        Ok(Self::new(
            self.min_deg,
            self.terms()
                .map(|(k, c)| c * Complex64::from_polar(1.0, k as f64 * alpha))
                .collect(),
        ))
    }

    /// Integral against normalized Haar measure on the circle: the constant
    /// coefficient.
    pub fn integral(&self) -> Complex64 {
        self.coeff(0)
    }

    fn combine(&self, other: &LaurentPoly, sign: f64) -> Self {
        let (lo, hi) = match (self.support(), other.support()) {
            (None, None) => return Self::zero(),
            (Some(_), None) => return self.clone(),
            (None, Some(_)) => return other.scale(Complex64::new(sign, 0.0)),
            (Some(a), Some(b)) => (a.0.min(b.0), a.1.max(b.1)),
        };
        Self::new(
            lo,
            (lo..=hi)
                .map(|k| self.coeff(k) + other.coeff(k) * sign)
                .collect(),
        )
    }

    fn convolve(&self, other: &LaurentPoly) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![Complex64::new(0.0, 0.0); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(self.min_deg + other.min_deg, out)
    }
}

impl Default for LaurentPoly {
    fn default() -> Self {
        Self::zero()
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.combine(rhs, 1.0)
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.combine(rhs, -1.0)
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.convolve(rhs)
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        self.scale(Complex64::new(-1.0, 0.0))
    }
}

macro_rules! forward_owned {
    ($tr:ident, $method:ident) => {
        impl $tr for LaurentPoly {
            type Output = LaurentPoly;
            fn $method(self, rhs: LaurentPoly) -> LaurentPoly {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&LaurentPoly> for LaurentPoly {
            type Output = LaurentPoly;
            fn $method(self, rhs: &LaurentPoly) -> LaurentPoly {
                (&self).$method(rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}

impl std::iter::Sum for LaurentPoly {
    fn sum<I: Iterator<Item = LaurentPoly>>(iter: I) -> Self {
        iter.fold(LaurentPoly::zero(), |acc, p| &acc + &p)
    }
}
