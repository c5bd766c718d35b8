//! Problem-agnostic NSGA-II.
//!
//! The engine works on real-coded genotypes in `[0, 1]^L`. A [`Problem`]
//! supplies the genotype length and a pure evaluation function; everything
//! else (ranking, crowding, variation, elitist selection, the all-time
//! archive) lives here.

mod archive;
mod crowding;
mod dominance;
mod engine;
mod operators;
mod selection;
mod sort;

pub use archive::ParetoArchive;
pub use crowding::{assign_crowding, crowded_compare, crowding_distance};
pub use dominance::{constrained_dominates, dominates};
pub use engine::{evolve, evolve_with, GenerationRecord, GenerationView, Outcome};
pub use operators::{binary_tournament_select, polynomial_mutation, sbx_crossover, tournament_pair};
pub use selection::environmental_select;
pub use sort::{fast_nondominated_sort, FrontPartition};

use std::ops::Deref;

use thiserror::Error;

/// Boxed error returned by problem evaluators.
pub type EvalError = Box<dyn std::error::Error + Send + Sync + 'static>;

#[derive(Debug, Error)]
pub enum MoeaError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    Dimension { expected: usize, found: usize },
    #[error("individual has not been evaluated")]
    Unevaluated,
    #[error("individual has no rank or crowding distance assigned")]
    Unranked,
    #[error("invalid argument: {0}")]
    Argument(String),
    #[error("invalid engine configuration: {0}")]
    Config(String),
    #[error("evaluation of genotype {index} failed: {source}")]
    Evaluator {
        index: usize,
        #[source]
        source: EvalError,
    },
    #[error("evaluation of genotype {index} produced a non-finite objective")]
    NonFinite { index: usize },
}

pub type Result<T> = std::result::Result<T, MoeaError>;

/// Objective values, all minimized.
#[derive(Debug, Clone, PartialEq)]
pub struct ObjectiveVector(Vec<f64>);

impl ObjectiveVector {
    pub fn new(values: Vec<f64>) -> Self {
        ObjectiveVector(values)
    }

    pub fn values(&self) -> &[f64] {
        &self.0
    }

    pub fn into_inner(self) -> Vec<f64> {
        self.0
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().all(|v| v.is_finite())
    }
}

impl Deref for ObjectiveVector {
    type Target = [f64];

    fn deref(&self) -> &[f64] {
        &self.0
    }
}

impl From<Vec<f64>> for ObjectiveVector {
    fn from(values: Vec<f64>) -> Self {
        ObjectiveVector(values)
    }
}

/// What a problem reports for one genotype.
#[derive(Debug, Clone, PartialEq)]
pub struct Evaluation {
    pub objectives: ObjectiveVector,
    /// Total constraint violation; `0.0` means feasible.
    pub violation: f64,
}

impl Evaluation {
    pub fn new(objectives: impl Into<ObjectiveVector>, violation: f64) -> Self {
        Evaluation {
            objectives: objectives.into(),
            violation,
        }
    }

    pub fn is_feasible(&self) -> bool {
        self.violation == 0.0
    }
}

/// An optimization problem over `[0, 1]^L`.
///
/// `evaluate` must be pure: the engine may call it from several threads and
/// in any order.
pub trait Problem: Sync {
    fn genotype_len(&self) -> usize;

    fn objective_count(&self) -> usize {
        2
    }

    fn evaluate(&self, genotype: &[f64]) -> std::result::Result<Evaluation, EvalError>;
}

#[derive(Debug, Clone, PartialEq)]
pub struct Individual {
    pub genotype: Vec<f64>,
    pub evaluation: Option<Evaluation>,
    pub rank: Option<usize>,
    pub crowding: Option<f64>,
}

impl Individual {
    pub fn new(genotype: Vec<f64>) -> Self {
        Individual {
            genotype,
            evaluation: None,
            rank: None,
            crowding: None,
        }
    }

    pub fn evaluated(genotype: Vec<f64>, evaluation: Evaluation) -> Self {
        Individual {
            genotype,
            evaluation: Some(evaluation),
            rank: None,
            crowding: None,
        }
    }

    pub fn evaluation(&self) -> Result<&Evaluation> {
        self.evaluation.as_ref().ok_or(MoeaError::Unevaluated)
    }

    pub fn objectives(&self) -> Result<&ObjectiveVector> {
        Ok(&self.evaluation()?.objectives)
    }

    pub fn violation(&self) -> Result<f64> {
        Ok(self.evaluation()?.violation)
    }

    pub fn is_feasible(&self) -> bool {
        self.evaluation.as_ref().is_some_and(Evaluation::is_feasible)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct EngineConfig {
    pub population_size: usize,
    pub generations: usize,
    pub crossover_prob: f64,
    pub mutation_prob: f64,
    pub sbx_eta: f64,
    pub pm_eta: f64,
    pub seed: u64,
    /// Worker threads for population evaluation. `1` evaluates inline.
    pub eval_threads: usize,
}

impl Default for EngineConfig {
    fn default() -> Self {
        EngineConfig {
            population_size: 100,
            generations: 200,
            crossover_prob: 0.6,
            mutation_prob: 0.01,
            sbx_eta: 15.0,
            pm_eta: 20.0,
            seed: 42,
            eval_threads: 1,
        }
    }
}

impl EngineConfig {
    /// Run parameters of the original case study: population 1290,
    /// 500 generations, crossover 0.6, mutation 0.01.
    pub fn case_study() -> Self {
        EngineConfig {
            population_size: 1290,
            generations: 500,
            ..EngineConfig::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.population_size;
        if n < 4 || !n.is_multiple_of(2) {
            return Err(MoeaError::Config(format!(
                "population size must be an even integer >= 4, got {n}"
            )));
        }
        for (name, p) in [
            ("crossover probability", self.crossover_prob),
            ("mutation probability", self.mutation_prob),
        ] {
            if !(0.0..=1.0).contains(&p) {
                return Err(MoeaError::Config(format!("{name} must lie in [0, 1], got {p}")));
            }
        }
        for (name, eta) in [("SBX eta", self.sbx_eta), ("mutation eta", self.pm_eta)] {
            if !(eta > 0.0 && eta.is_finite()) {
                return Err(MoeaError::Config(format!("{name} must be positive, got {eta}")));
            }
        }
        if self.eval_threads == 0 {
            return Err(MoeaError::Config("evaluation threads must be >= 1".into()));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn config_rejects_odd_or_tiny_population() {
        for n in [0, 2, 5, 101] {
            let cfg = EngineConfig {
                population_size: n,
                ..EngineConfig::default()
            };
            assert!(matches!(cfg.validate(), Err(MoeaError::Config(_))), "n = {n}");
        }
        assert!(EngineConfig::default().validate().is_ok());
        assert!(EngineConfig::case_study().validate().is_ok());
    }

    #[test]
    fn config_rejects_bad_probabilities() {
        let cfg = EngineConfig {
            mutation_prob: 1.5,
            ..EngineConfig::default()
        };
        assert!(cfg.validate().is_err());
        let cfg = EngineConfig {
            crossover_prob: -0.1,
            ..EngineConfig::default()
        };
        assert!(cfg.validate().is_err());
    }

    #[test]
    fn unevaluated_individual_reports_state_error() {
        let ind = Individual::new(vec![0.5]);
        assert!(matches!(ind.objectives(), Err(MoeaError::Unevaluated)));
        assert!(!ind.is_feasible());
    }
}
