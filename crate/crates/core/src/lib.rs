//! Exact computational algebra for the representation ring of the integral
//! Heisenberg group and of cyclic groups.
//!
//! The crate is organized bottom-up:
//!
//! - [`cyclo`]: roots of unity and exact cyclotomic scalars.
//! - [`heisenberg`]: irreducible classes `(alpha, beta, zeta)` of the Heisenberg
//!   group, their tensor-product rule, and a brute-force character oracle over
//!   the finite quotients `H(Z/N)`.
//! - [`repring`]: the graded ring `H_*(Irr H)` with generators `a, b, c, d`,
//!   Kunneth products, the l-typical subring, and the torus-transfer oracle.
//! - [`homalg`]: Smith normal form, Tor over `Z[C_m]` and over finite
//!   dimensional algebras, colimits and ideal-power quotients for the circle.
//! - [`completion`]: l-adic towers `{R/l^n}`, idempotent splittings and the
//!   completed direct sum.
//! - [`verify`]: named exhaustive check suites shared by the CLI.

pub mod completion;
pub mod cyclo;
pub mod error;
pub mod heisenberg;
pub mod homalg;
pub mod repring;
pub mod verify;

pub use error::{Error, Result};

/// Version string embedded in every report.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
