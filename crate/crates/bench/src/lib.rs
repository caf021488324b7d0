//! Random planning instances and the harnesses that compare planners on them.

pub mod ablate;
pub mod cafe;
pub mod compare;
pub mod gen;

use thiserror::Error;

pub use ablate::{ablate_depth, AblationCurve};
pub use cafe::{run_cafe_suite, CafeReport, CafeRow, CafeSummary};
pub use compare::{run_comparison, run_method, ComparisonReport, MethodName, Row, Run, Summary};
pub use gen::{generate, GenError, GenParams, Instance, InstanceStats, WitnessPath};

#[derive(Debug, Error)]
pub enum BenchError {
    #[error(transparent)]
    Gen(#[from] GenError),
    #[error(transparent)]
    Plan(#[from] obtea_core::planner::PlanError),
    #[error(transparent)]
    Load(#[from] obtea_core::world::LoadError),
    #[error(transparent)]
    Dataset(#[from] obtea_intent::DatasetError),
    #[error("execution failed: {0}")]
    Execution(String),
    #[error("at least one compaction depth is required")]
    NoDepths,
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}
