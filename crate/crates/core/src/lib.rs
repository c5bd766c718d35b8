//! Multi-objective evolutionary optimization of three-echelon supply chain
//! networks: an NSGA-II engine, the cost/delay network model it is applied
//! to, and instance and front persistence.

// Tensor code reads better with explicit index loops.
#![allow(clippy::needless_range_loop)]

pub mod io;
pub mod model;
pub mod moea;

pub use model::{Instance, ModelOptions, ScnProblem};
pub use moea::{EngineConfig, Evaluation, Individual, ObjectiveVector, ParetoArchive, Problem};
