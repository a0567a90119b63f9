//! Framed 3-Eulerian 4-regular graphs and the hyperbolic 3-manifolds with
//! totally geodesic boundary they encode.
//!
//! A framing is an unordered triple of pairwise compatible Eulerian cycles.
//! Attaching a disk along each cycle gives a special spine; its dual is an
//! ideal triangulation with three edges. The modules follow that pipeline:
//! [`graphs`] → [`euler`] → [`framing`] → [`spine`] → [`triangulation`],
//! with [`geometry`] for the hyperbolic data and [`census`] for orchestration.

pub mod census;
pub mod error;
pub mod euler;
pub mod framing;
pub mod geometry;
pub mod graphs;
pub mod spine;
pub mod triangulation;

pub use error::{Error, Result};

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");
