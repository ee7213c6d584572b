//! Critical points at infinity of Laurent polynomial hypersurfaces.
//!
//! Given a Laurent polynomial `H` in `d` variables, the crate computes its
//! Newton polytope, compactifies the torus through the polytope's lattice
//! points, and decides face by face in which directions the log-gradient of
//! `H` can converge as points of `V(H)` escape to infinity. Exact arithmetic
//! is used throughout the combinatorial part; numeric steps (root polishing,
//! rank decisions, witness-curve sampling) carry explicit tolerances.

pub mod cpai;
pub mod error;
pub mod gaussian;
pub mod laurent;
pub mod numeric;
pub mod polytope;
pub mod toric;
pub mod transform;
pub mod univariate;
pub mod witness;

pub use error::{Error, Result};
pub use gaussian::{Coefficient, GaussianRational};
pub use laurent::{ComplexPoint, Exponent, LaurentPolynomial};
