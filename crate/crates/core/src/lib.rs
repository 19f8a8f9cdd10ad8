//! Mod-p Steenrod reduced powers on the Schubert classes of flag manifolds
//! `G/H`, computed from the Cartan matrix of `G` alone.
//!
//! The pipeline is: [`cartan::CartanData`] → [`weyl::CosetTable`] (minimal
//! coset representatives with their minimal reduced words) →
//! [`steenrod::steenrod_table`] (the matrices of `P^k`). The
//! [`oracle`] module recomputes type `A` cases through Schubert
//! polynomials.

pub mod app;
pub mod cartan;
pub mod error;
pub mod oracle;
pub mod poly;
pub mod scalar;
pub mod steenrod;
pub mod weyl;

pub use cartan::{CartanData, WeightVector};
pub use error::{Error, Result};
pub use steenrod::{steenrod_table, SteenrodTable};
pub use weyl::{CosetTable, EnumerateOptions, WeylElement};

/// Polynomials with arbitrary-precision integer coefficients.
pub type IntPoly = poly::SparsePoly<num_bigint::BigInt>;
/// Polynomials with machine-word coefficients, typically reduced mod `p`.
pub type ModPoly = poly::SparsePoly<i64>;
