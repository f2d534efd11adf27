//! The categories RF and S′RF and the pericyclic category Π.

mod pi;
mod rf;
mod srf;

pub use pi::{chi, pi_compose, project, w_morphism, PiMor, PiObject, Projected, Projection};
pub use rf::{rf_compose, rf_hom_enum, RFMor};
pub use srf::{monoid_compose, srf_compose, CompositionLaw, RationalAngle, SRFMor};
