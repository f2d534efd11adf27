//! Exact computations with the cyclic, epicyclic and pericyclic categories,
//! balanced-ternary Witt arithmetic, cyclic sets, Γ-set divisors and points
//! of the topos of the pericyclic site.

pub mod cyclic;
pub mod divisors;
pub mod error;
pub mod pericyclic;
pub mod points;
pub mod presentations;
pub mod ternary;
pub mod zmax;

pub use error::{Error, Result};
