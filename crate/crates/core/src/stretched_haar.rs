//! The stretched Haar family `m0(z) = (1 + z^p)/√2`, `N = 2`, `p` odd.
//!
//! Its scaling function is `(1/p) χ_(0,p)`, whose periodized autocorrelation
//! is the scaled Fejér kernel `h(t) = sin²(pt/2) / (p² sin²(t/2))`. The
//! continuous fixed points of `R_{m0,m0}` are spanned by sums of rotations
//! `h(ρ^l z)`, `ρ = e^{2πi/p}`, taken over orbits of `k ↦ 2k mod p`.

use std::f64::consts::{FRAC_1_SQRT_2, PI};

use num_complex::Complex64;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::laurent::LaurentPoly;
use crate::transfer::Filter;

fn check_p(p: i64) -> Result<usize> {
    if p < 1 || p % 2 == 0 {
        Err(Error::InvalidStretch(p))
    } else {
        Ok(p as usize)
    }
}

/// `(1 + z^p)/√2` with `N = 2`.
pub fn stretched_haar_filter(p: i64) -> Result<Filter> {
    let p = check_p(p)?;
    let mut v = vec![0.0; p + 1];
    v[0] = FRAC_1_SQRT_2;
    v[p] = FRAC_1_SQRT_2;
    Filter::new(LaurentPoly::from_real(0, &v), 2)
}

/// `Σ_{|k|<p} (p - |k|)/p² z^k`.
pub fn fejer_h(p: i64) -> Result<LaurentPoly> {
    check_p(p)?;
    let denom = (p * p) as f64;
    let coeffs: Vec<f64> = (-(p - 1)..p)
        .map(|k| (p - k.abs()) as f64 / denom)
        .collect();
    Ok(LaurentPoly::from_real(-(p - 1), &coeffs))
}

/// `ρ^l = e^{2πil/p}`.
pub fn root_of_unity(p: usize, l: usize) -> Complex64 {
    Complex64::from_polar(1.0, 2.0 * PI * (l % p) as f64 / p as f64)
}

/// Orbits of `σ(k) = 2k mod p` on `{0, ..., p-1}`.
///
/// Orbits are ordered by their smallest element; each orbit lists its
/// elements in iteration order starting from the smallest. The JSON form
/// lists each orbit as a sorted set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycleDecomposition {
    p: usize,
    cycles: Vec<Vec<usize>>,
}

impl CycleDecomposition {
    pub fn p(&self) -> usize {
        self.p
    }

    pub fn cycles(&self) -> &[Vec<usize>] {
        &self.cycles
    }

    /// Number of orbits.
    pub fn count(&self) -> usize {
        self.cycles.len()
    }

    /// Orbits as ascending sets.
    pub fn sorted_cycles(&self) -> Vec<Vec<usize>> {
        self.cycles
            .iter()
            .map(|c| {
                let mut s = c.clone();
                s.sort_unstable();
                s
            })
            .collect()
    }
}

impl Serialize for CycleDecomposition {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("CycleDecomposition", 2)?;
        st.serialize_field("p", &self.p)?;
        st.serialize_field("cycles", &self.sorted_cycles())?;
        st.end()
    }
}

pub fn doubling_cycles(p: i64) -> Result<CycleDecomposition> {
    let p = check_p(p)?;
    let mut seen = vec![false; p];
    let mut cycles = Vec::new();
    for start in 0..p {
        if seen[start] {
            continue;
        }
        let mut orbit = Vec::new();
        let mut k = start;
        while !seen[k] {
            seen[k] = true;
            orbit.push(k);
            k = 2 * k % p;
        }
        cycles.push(orbit);
    }
    Ok(CycleDecomposition { p, cycles })
}

/// `Σ_{l ∈ set} h(ρ^l z)` for a σ-closed subset of `{0, ..., p-1}`; for a
/// single orbit this is the cycle eigenfunction of that orbit.
pub fn cycle_eigenfunction(p: i64, cycle: &[usize]) -> Result<LaurentPoly> {
    let pu = check_p(p)?;
    let mut members = vec![false; pu];
    for &l in cycle {
        if l >= pu || members[l] {
            return Err(Error::NotSigmaClosed(cycle.to_vec(), pu));
        }
        members[l] = true;
    }
    if cycle.is_empty() || cycle.iter().any(|&l| !members[2 * l % pu]) {
        return Err(Error::NotSigmaClosed(cycle.to_vec(), pu));
    }
    let h = fejer_h(p)?;
    let mut out = LaurentPoly::zero();
    for &l in cycle {
        out = &out + &h.rotate(root_of_unity(pu, l))?;
    }
    Ok(out)
}

/// One cycle eigenfunction per orbit, in orbit order.
pub fn continuous_eigenbasis(p: i64) -> Result<Vec<LaurentPoly>> {
    doubling_cycles(p)?
        .cycles()
        .iter()
        .map(|orbit| cycle_eigenfunction(p, orbit))
        .collect()
}
