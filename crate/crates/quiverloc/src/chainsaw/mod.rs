//! Chainsaw quiver varieties: characters at torus fixed points, generating
//! series, and the identities relating the two chambers.

pub mod character;
pub mod fixed;

pub use character::{Basis, Character, Evaluator, Weight};
pub use fixed::{localization_sum, z_series, Framing, MatterClass};
pub mod identities;
pub mod laumon;
