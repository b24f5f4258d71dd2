//! Exact-arithmetic toolkit for rank and dimension certificates.
//!
//! Everything here computes over an exact field — arbitrary-precision
//! rationals or a prime field F_p with p > 10^6 — and every check is an
//! exact equality.  No floating point anywhere.
//!
//! Module map:
//! - [`exactalg`]: field scalars and dense matrices (rank, kernel,
//!   fraction-free determinant, Pfaffian).
//! - [`forms`]: homogeneous ternary forms, matrices of linear forms, the
//!   dual-route determinant (symbolic Bareiss vs. evaluation/interpolation)
//!   and univariate pencil restriction.
//! - [`tensor`]: 3 x n x n tensors, their skew block contractions, the
//!   congruence identity and explicit full-rank witnesses.
//! - [`secant`]: Terracini-style dimension computations for Segre and
//!   Segre-Veronese varieties, terminal secant indices, spanning lists and
//!   the Pfaffian hypersurface checks.
//! - [`curves`]: the determinantal map from symmetric tensors to plane
//!   curves, inscribed (n+1)-gons, Darboux-type vertex certificates,
//!   equivariance, stabilizers and the minor-expansion identity.
//! - [`monad`]: twisted 1-form section spaces on the plane, the two section
//!   matrices of a symmetric tensor, section counts of the associated
//!   bundle and closed-form numerology.
//! - [`acceptance`]: the aggregated acceptance checklist used by the test
//!   suite and the CLI.
//!
//! The crate is no_std-compatible (alloc required); the companion CLI crate
//! carries IO, JSON and timing.

#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

pub mod acceptance;
pub mod curves;
pub mod error;
pub mod exactalg;
pub mod forms;
pub mod monad;
pub mod rng;
pub mod secant;
pub mod tensor;

pub use error::Error;
