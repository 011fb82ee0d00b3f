//! Character varieties of once-punctured torus bundles.
//!
//! The crate computes, for a monodromy word in the Dehn twists `α`, `β`,
//! the fixed-point set of the induced polynomial automorphism of
//! `X(S) = C³`, decomposes it into Zariski components, certifies genera via
//! Newton polygons and checks the results against representation-level
//! numerics.

pub mod alexander;
pub mod census;
pub mod error;
pub mod families;
pub mod free_group;
pub mod ideal_engine;
pub mod monodromy;
pub mod newton_genus;
pub mod numeric_verify;
pub mod poly;
pub mod trace_poly;
pub mod upoly;

pub use error::{Error, Result};
