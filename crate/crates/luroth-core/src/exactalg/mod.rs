//! Exact linear algebra: field scalars (Q and F_p) and dense matrices with
//! rank, kernel, fraction-free determinant and Pfaffian.

pub mod field;
pub mod matrix;

pub use field::{is_prime_u64, Field, PrimeField, Rationals, DEFAULT_PRIMES};
pub use matrix::{stack_rows, Matrix};

// Re-exported so downstream crates construct rational scalars against the
// exact versions this crate was built with.
pub use num_bigint::{BigInt, BigUint};
pub use num_rational::BigRational;
