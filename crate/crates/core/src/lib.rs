//! Signed Ruelle transfer operators for wavelet filter pairs.
//!
//! For a low-pass filter `m0` with scale `N` and a second filter `m0'`,
//! the operator
//!
//! ```text
//! (R f)(z) = (1/N) Σ_{w^N = z} conj(m0(w)) m0'(w) f(w)
//! ```
//!
//! maps trigonometric polynomials to trigonometric polynomials. This crate
//! builds `R` exactly on Laurent polynomials ([`laurent`]), restricts it to
//! its invariant coefficient window and computes spectra and fixed spaces
//! ([`transfer`]), approximates scaling functions by cascade products
//! ([`cascade`]), provides the stretched-Haar family `(1 + z^p)/√2` with its
//! explicit eigenbasis ([`stretched_haar`]), and turns all of this into
//! orthogonality and biorthogonality verdicts ([`biortho`]).
//!
//! The command line front end lives in [`cli`] and is installed as `rl`.

pub mod biortho;
pub mod cascade;
pub mod cli;
pub mod config;
pub mod error;
pub mod laurent;
pub mod linalg;
pub mod stretched_haar;
pub mod transfer;

pub use error::{Error, Result};
pub use laurent::LaurentPoly;
pub use transfer::{EigenspaceResult, Filter, LawtonMatrix};
