//! Numeric defaults shared by the library and the `rl` command.

use serde::Serialize;

/// Relative singular-value cut for fixed spaces and verdict tolerance.
pub const DEFAULT_TOL: f64 = 1e-9;
/// Number of factors in the partial product for the scaling function transform.
pub const DEFAULT_PRODUCT_TERMS: i64 = 20;
/// Periodization truncation: terms `k` with `|k| <= K`.
pub const DEFAULT_PERIODIZATION_TERMS: i64 = 1000;
/// Samples on `[0, 2π)`.
pub const DEFAULT_GRID: usize = 256;
/// Floor below which `h h'` is treated as vanishing in the dominance check.
pub const DEFAULT_FLOOR_EPS: f64 = 1e-8;
/// Samples per unit length for the time-domain cascade.
pub const DEFAULT_RESOLUTION: usize = 1024;
pub const DEFAULT_CASCADE_ITERS: usize = 10;
pub const DEFAULT_SEED: u64 = 2024;
pub const DEFAULT_ELEMPROP_CASES: usize = 100;

/// Environment variable that overrides [`DEFAULT_TOL`].
pub const TOL_ENV: &str = "RL_DEFAULT_TOL";

#[derive(Clone, Debug, Serialize)]
pub struct Defaults {
    pub tol: f64,
    pub n: i64,
    #[serde(rename = "K")]
    pub k: i64,
    pub grid: usize,
    pub floor_eps: f64,
    pub resolution: usize,
    pub cascade_iters: usize,
    pub seed: u64,
    pub elemprop_cases: usize,
}

impl Default for Defaults {
    fn default() -> Self {
        Defaults {
            tol: DEFAULT_TOL,
            n: DEFAULT_PRODUCT_TERMS,
            k: DEFAULT_PERIODIZATION_TERMS,
            grid: DEFAULT_GRID,
            floor_eps: DEFAULT_FLOOR_EPS,
            resolution: DEFAULT_RESOLUTION,
            cascade_iters: DEFAULT_CASCADE_ITERS,
            seed: DEFAULT_SEED,
            elemprop_cases: DEFAULT_ELEMPROP_CASES,
        }
    }
}
