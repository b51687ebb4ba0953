//! Geometric hyperplanes, Veldkamp lines and their orbits under the full
//! automorphism group `S6 x S3` of the near hexagon L3 x GQ(2,2).

pub mod classify;
pub mod context;
pub mod error;
pub mod footnotes;
pub mod geometry;
pub mod group;
pub mod pointset;
pub mod report;
pub mod veldkamp;

pub use context::Context;
pub use error::{Error, Result};
pub use geometry::{build_gq, build_near_hexagon, Gq, NearHexagon, QuadLabel};
pub use pointset::PointSet;
pub use veldkamp::{HyperplaneId, HyperplaneSpace, HyperplaneType, VeldkampLine};
