//! Strip sorting, rebalancing, tile confinement, rainbow rows, folding and
//! wall extraction.

pub mod bounds;
pub mod confine;
pub mod fold;
mod nav;
pub mod pipeline;
pub mod rainbow;
pub mod rebalance;
pub mod sort_trim;
pub mod trace;
pub mod wall;

pub use confine::{confine_to_tiles, Certificate, ConfinedPackings, Witness};
pub use fold::fold_to_uniform;
pub use pipeline::{build_rainbow_mesh, homogeneous_wall, uniform_mesh, Outcome, PipelineResult, StageStat};
pub use rainbow::{weave_rainbow, RainbowMesh};
pub use rebalance::{crop_and_rebalance, BalancedPackings};
pub use sort_trim::{sort_and_trim, SortTrimOutput};
pub use trace::Trace;
pub use wall::{mesh_to_wall, select_homogeneous_wall};

use crate::geometry::{RegionError, StripError};
use thiserror::Error;

/// Whether stage guarantees are enforced (at or above their extent bounds)
/// or treated as best effort with the final output verified instead.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Strict,
    BestEffort,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum HomogenizeError {
    #[error("stage {stage}: needs extent {required}, window provides {available}")]
    Precondition { stage: String, required: usize, available: usize },
    #[error("stage {stage}: missing {missing}")]
    Insufficient { stage: String, missing: String },
    #[error("invalid parameter: {0}")]
    Parameter(String),
    #[error(transparent)]
    Bound(#[from] bounds::BoundError),
    #[error(transparent)]
    Strip(#[from] StripError),
    #[error(transparent)]
    Region(#[from] RegionError),
    #[error("rainbow middle row not verified: {0}")]
    RainbowUnverified(String),
    #[error("construction produced an invalid mesh: {0}")]
    Geometry(String),
}

impl HomogenizeError {
    /// Stage name and missing quantity for sub-bound outcomes.
    pub fn shortfall(&self) -> Option<(String, String)> {
        match self {
            HomogenizeError::Precondition { stage, required, available } => {
                Some((stage.clone(), format!("{} paths", required - available)))
            }
            HomogenizeError::Insufficient { stage, missing } => Some((stage.clone(), missing.clone())),
            _ => None,
        }
    }
}
