//! Arc presentations of spatial graphs from planar diagrams.
//!
//! A spatial graph is given as a planar diagram: a rotation system whose
//! nodes are either graph vertices or 4-valent crossings. The crate
//!
//! - validates and analyses such diagrams ([`diagram`]),
//! - splits them into cut-components ([`decompose`]),
//! - runs the spoking construction on each component, pulling crossings and
//!   vertices into a pivot vertex until only spokes remain ([`spoking`]),
//! - and stacks the per-component arc presentations back together
//!   ([`presentation`]).
//!
//! The resulting presentation has exactly `c + e + b` pages, where `c` is
//! the crossing count of the reduced diagram, `e` the number of graph edges
//! and `b` the number of bouquet cut-components.
//!
//! The crate is `no_std` and only needs `alloc`.
#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod build;
pub mod decompose;
pub mod diagram;
mod ids;
pub mod multigraph;
pub mod pipeline;
mod plane;
pub mod presentation;
pub mod spoking;

pub use decompose::{bound_report, cut_decompose, BoundReport, ComponentBound, CutComponent, CutDecomposition};
pub use diagram::{DiagramError, Edge, Face, Node, NodeKind, OverPair, PlanarDiagram, Strand};
pub use ids::{ComponentId, EdgeId, HalfEdgeId, NodeId, StrandId};
pub use multigraph::Multigraph;
pub use pipeline::{run_pipeline, ComponentRun, PipelineConfig, PipelineError, PipelineOutput, PivotChoice};
pub use presentation::{ArcPresentation, BindingKind, BindingPoint, PresentationError, RawPresentation, Violation};
pub use spoking::{CandidateOrder, GraphSpokeDiagram, LevelToken, MoveKind, SpokingError, StepRecord, StepTrace};
