//! Generator and exact analysis toolkit for Iterated Independent Model graphs.

pub mod canon;
pub mod clique;
pub mod coloring;
pub mod distance;
pub mod domination;
pub mod choice;
pub mod enumerate;
pub mod error;
pub mod graph;
pub mod hamilton;
pub mod iim;
pub mod induced;
pub mod io;
pub mod report;
pub mod seeds;
pub mod spectral;
pub mod verify;

pub use choice::{ChoiceSequence, CopyKind, LevelChoice};
pub use error::{IimError, Result};
pub use graph::{Graph, VertexSet};
pub use iim::{iim_generate, iim_step, IimGraph, Parity};
