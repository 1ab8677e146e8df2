//! Orthotree unfolding on a 4x4 refined grid.
//!
//! An orthotree is a polycube whose dual graph is a tree and whose
//! surface is a 2-manifold. This crate models the solid, refines its
//! surface into quarter cells, unfolds it recursively into a flat
//! non-overlapping net, and independently validates every output.

pub mod geom;
pub mod harness;
pub mod model;
pub mod net;
pub mod surface;
pub mod unfolder;

pub use model::{build_dual_tree, parse_orthotree, validate_orthotree, Orthotree};
pub use net::{validate_net, Net};
pub use unfolder::{unfold, UnfoldError};
