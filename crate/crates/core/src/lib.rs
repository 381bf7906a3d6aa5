//! Open plane straight-line graphs.
//!
//! Constructions of triangulations, spanning trees, bounded-degree spanning
//! trees and spanning paths on planar point sets in general position such
//! that every vertex keeps a large incident angle, together with an
//! exhaustive oracle for small inputs and generators for tight families.

pub mod bounded_tree;
pub mod cli;
pub mod convex_path;
pub mod error;
pub mod general_path;
pub mod generators;
pub mod geometry;
pub mod graph;
pub mod io;
pub mod oracle;
pub mod spanning_tree;
pub mod svg;
pub mod trace;
pub mod triangulation;

pub use error::{Error, Result};
pub use geometry::{Point, PointSet, EPS};
pub use graph::{classify, is_plane, openness, GraphClass, OpennessReport, PlaneGraph};
pub use trace::ConstructionTrace;
