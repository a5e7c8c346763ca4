//! Scaling-function approximations.
//!
//! In the Fourier domain the scaling function satisfies
//! `φ̂(ω) = (m0(ω/N)/√N) φ̂(ω/N)`, so `φ̂` is approximated by the partial
//! product `Π_{i=1..n} m0(ω/N^i)/√N`. Periodizing `conj(φ̂) φ̂'` gives a
//! fixed point of `R_{m0,m0'}`. In the time domain the cascade operator
//! `Mψ(x) = √N Σ a_k ψ(Nx - k)` is iterated on exact grids.

use std::f64::consts::PI;
use std::fmt::Write as _;

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::laurent::LaurentPoly;
use crate::transfer::Filter;

/// Uniform grid layout: sample `i` sits at `start + i * step`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GridSpec {
    pub start: f64,
    pub step: f64,
    pub len: usize,
}

impl GridSpec {
    /// `len` samples on the half-open period `[0, 2π)`.
    pub fn period(len: usize) -> Self {
        GridSpec {
            start: 0.0,
            step: 2.0 * PI / len as f64,
            len,
        }
    }

    fn validate(&self) -> Result<()> {
        if self.len == 0 {
            return Err(Error::InvalidGrid("grid has no samples".into()));
        }
        if self.step.is_nan() || self.step <= 0.0 || !self.start.is_finite() {
            return Err(Error::InvalidGrid(format!(
                "start {} / step {} not usable",
                self.start, self.step
            )));
        }
        Ok(())
    }

    pub fn point(&self, i: usize) -> f64 {
        self.start + i as f64 * self.step
    }
}

/// Complex samples on a uniform grid.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GridFunction {
    pub domain_start: f64,
    pub step: f64,
    pub values: Vec<Complex64>,
}

impl GridFunction {
    pub fn new(domain_start: f64, step: f64, values: Vec<Complex64>) -> Result<Self> {
        GridSpec {
            start: domain_start,
            step,
            len: values.len(),
        }
        .validate()?;
        Ok(GridFunction {
            domain_start,
            step,
            values,
        })
    }

    pub fn sample(spec: GridSpec, f: impl Fn(f64) -> Complex64) -> Result<Self> {
        spec.validate()?;
        let values = (0..spec.len).map(|i| f(spec.point(i))).collect();
        Ok(GridFunction {
            domain_start: spec.start,
            step: spec.step,
            values,
        })
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn point(&self, i: usize) -> f64 {
        self.domain_start + i as f64 * self.step
    }

    pub fn points(&self) -> impl Iterator<Item = (f64, Complex64)> + '_ {
        self.values
            .iter()
            .enumerate()
            .map(|(i, &v)| (self.point(i), v))
    }

    /// `max_i |g(x_i) - f(x_i)|`.
    pub fn max_abs_diff(&self, f: impl Fn(f64) -> Complex64) -> f64 {
        self.points()
            .map(|(x, v)| (v - f(x)).norm())
            .fold(0.0, f64::max)
    }

    /// Riemann-sum L² distance `sqrt(step Σ |g(x_i) - f(x_i)|²)`.
    pub fn l2_distance(&self, f: impl Fn(f64) -> Complex64) -> f64 {
        let s: f64 = self.points().map(|(x, v)| (v - f(x)).norm_sqr()).sum();
        (s * self.step).sqrt()
    }

    /// CSV with header `omega,re,im` and shortest round-trip float formatting.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("omega,re,im\n");
        for (x, v) in self.points() {
            writeln!(out, "{},{},{}", x, v.re, v.im).unwrap();
        }
        out
    }
}

/// `Π_{i=1..n} m0(ω/N^i)/√N`.
pub fn phihat_partial(m0: &Filter, n: i64, omega: f64) -> Result<Complex64> {
    if n < 1 {
        return Err(Error::InvalidCount { min: 1, got: n });
    }
    Ok(phihat_unchecked(m0, n, omega))
}

fn phihat_unchecked(m0: &Filter, n: i64, omega: f64) -> Complex64 {
    let scale = m0.scale() as f64;
    let norm = scale.sqrt().recip();
    let mut x = omega;
    let mut acc = Complex64::new(1.0, 0.0);
    for _ in 0..n {
        x /= scale;
        acc *= m0.eval(x) * norm;
    }
    acc
}

/// `Σ_{|k| <= K} f(ω + 2πk)`.
pub fn periodize(f: impl Fn(f64) -> Complex64, terms: i64, omega: f64) -> Complex64 {
    let terms = terms.max(0);
    // outermost terms first: they are the smallest for decaying f
    let mut acc = Complex64::new(0.0, 0.0);
    for k in (1..=terms).rev() {
        let shift = 2.0 * PI * k as f64;
        acc += f(omega + shift) + f(omega - shift);
    }
    acc + f(omega)
}

fn check_pair(m0: &Filter, m0p: &Filter) -> Result<()> {
    if m0.scale() != m0p.scale() {
        return Err(Error::ScaleMismatch(m0.scale(), m0p.scale()));
    }
    Ok(())
}

/// `Σ_{|k| <= K} conj(φ̂_n) φ̂'_n` at `ω + 2πk`, one point.
pub fn h_cross_at(m0: &Filter, m0p: &Filter, n: i64, terms: i64, omega: f64) -> Result<Complex64> {
    check_pair(m0, m0p)?;
    if n < 1 {
        return Err(Error::InvalidCount { min: 1, got: n });
    }
    Ok(h_cross_unchecked(m0, m0p, n, terms, omega))
}

fn h_cross_unchecked(m0: &Filter, m0p: &Filter, n: i64, terms: i64, omega: f64) -> Complex64 {
    if m0 == m0p {
        periodize(
            |w| Complex64::new(phihat_unchecked(m0, n, w).norm_sqr(), 0.0),
            terms,
            omega,
        )
    } else {
        periodize(
            |w| phihat_unchecked(m0, n, w).conj() * phihat_unchecked(m0p, n, w),
            terms,
            omega,
        )
    }
}

/// Samples of the truncated periodization `Per(conj(φ̂_n) φ̂'_n)` on `grid`.
pub fn h_cross_approx(
    m0: &Filter,
    m0p: &Filter,
    n: i64,
    terms: i64,
    grid: GridSpec,
) -> Result<GridFunction> {
    check_pair(m0, m0p)?;
    if n < 1 {
        return Err(Error::InvalidCount { min: 1, got: n });
    }
    GridFunction::sample(grid, |w| h_cross_unchecked(m0, m0p, n, terms, w))
}

/// Root-averaging form of `R_{m0,m0'}` applied to a function given pointwise:
/// `(1/N) Σ_j conj(m0(w_j)) m0'(w_j) h(w_j)` with `w_j = (θ + 2πj)/N`.
pub fn ruelle_pointwise(
    m0: &Filter,
    m0p: &LaurentPoly,
    h: impl Fn(f64) -> Complex64,
    theta: f64,
) -> Complex64 {
    let scale = m0.scale();
    let sum: Complex64 = (0..scale)
        .map(|j| {
            let w = (theta + 2.0 * PI * j as f64) / scale as f64;
            m0.eval(w).conj() * m0p.eval(w) * h(w)
        })
        .sum();
    sum / scale as f64
}

fn is_power_of(mut r: usize, base: usize) -> bool {
    if r == 0 {
        return false;
    }
    while r.is_multiple_of(base) {
        r /= base;
    }
    r == 1
}

/// Mask weights `√N a_k` are usually dyadic (Haar: 1, 1) but only reachable
/// up to one rounding from coefficients stored with the `1/√N` factor.
fn snap_dyadic(w: f64) -> f64 {
    const GRID: f64 = (1u64 << 20) as f64;
    let r = (w * GRID).round() / GRID;
    if (w - r).abs() <= 4.0 * f64::EPSILON * w.abs() {
        r
    } else {
        w
    }
}

/// Iterates `Mψ(x) = √N Σ a_k ψ(Nx - k)` `iters` times, starting from
/// `χ_[0,1)`, on a grid with `resolution` samples per unit length.
///
/// The grid covers an integer interval containing both `[0, 1)` and the
/// support `[lo/(N-1), hi/(N-1)]` of the limit, so `x ↦ Nx - k` maps grid
/// points to grid points and no interpolation occurs.
pub fn cascade_time(m0: &Filter, iters: usize, resolution: usize) -> Result<GridFunction> {
    let scale = m0.scale();
    if !is_power_of(resolution, scale as usize) {
        return Err(Error::InvalidGrid(format!(
            "resolution {resolution} is not a power of N = {scale}"
        )));
    }
    let (lo, hi) = m0.m0().support().expect("filters are nonzero");
    let start = lo.div_euclid(scale - 1).min(0);
    let end = (hi + scale - 2).div_euclid(scale - 1).max(1);
    let r = resolution as i64;
    let len = ((end - start) * r) as usize;

    let mut values: Vec<Complex64> = (0..len as i64)
        .map(|i| {
            let cell = start * r + i;
            if (0..r).contains(&cell) {
                Complex64::new(1.0, 0.0)
            } else {
                Complex64::new(0.0, 0.0)
            }
        })
        .collect();

    let gain = (scale as f64).sqrt();
    let taps: Vec<(i64, Complex64)> = m0
        .m0()
        .terms()
        .filter(|(_, a)| a.norm() > 0.0)
        .map(|(k, a)| {
            (
                k,
                Complex64::new(snap_dyadic(a.re * gain), snap_dyadic(a.im * gain)),
            )
        })
        .collect();
    for _ in 0..iters {
        let next = (0..len as i64)
            .map(|i| {
                let mut acc = Complex64::new(0.0, 0.0);
                for &(k, a) in &taps {
                    let j = scale * i + ((scale - 1) * start - k) * r;
                    if (0..len as i64).contains(&j) {
                        acc += a * values[j as usize];
                    }
                }
                acc
            })
            .collect();
        values = next;
    }
    GridFunction::new(start as f64, 1.0 / resolution as f64, values)
}
