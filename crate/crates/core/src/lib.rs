//! Reducibility of sparse polynomials from their support alone.
//!
//! A finite support `I ⊂ N^n` is *good* when every polynomial whose support is
//! exactly `I` is reducible over an algebraically closed field. This crate
//! decides goodness, builds the factorizations that witness it, enumerates
//! integral Minkowski decompositions of Newton polytopes, and generates the
//! families of supports whose behaviour depends on the characteristic.
//!
//! Coefficients live in finite fields `F_{p^k}` standing in for the closure;
//! the brute-force `oracle` searches factors over bounded extensions.

pub mod classifier;
pub mod error;
pub mod factorizer;
pub mod field;
pub mod io;
pub mod oracle;
pub mod poly;
pub mod polytope;
pub mod support;
pub mod witness;

pub use error::{Error, Result};
pub use field::{make_field, Field, FieldElement};
pub use poly::Polynomial;
pub use polytope::{hull, LatticePolytope};
pub use support::{segment_lattice_points, Exponent, Support};
