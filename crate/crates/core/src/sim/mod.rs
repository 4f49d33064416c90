//! Bandit environments, the shared-task experiment runner and learning-curve
//! aggregation.
//!
//! Plays counted here include each policy's initialization pulls.

mod arm;
mod metrics;
mod runner;
pub mod seed;

pub use arm::{ArmDistribution, BanditTask, StdSpec, TaskGenerator};
pub use metrics::{MetricsAccumulator, RunMetrics, Trace};
pub use runner::{run_experiment, run_task, Execution, ExperimentConfig, PolicyKind, PolicySpec};
