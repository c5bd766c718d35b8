//! The three-echelon supply chain network design problem.
//!
//! A genotype in `[0, 1]^L` is decoded into facility openings, retailer
//! assignments, flows and a per-period stock schedule; the network is then
//! scored on total cost and delivery delay and checked against the
//! constraint families.

mod constraints;
mod decode;
mod instance;
mod layout;
mod objectives;
mod schedule;

pub use constraints::{check_constraints, Violations, FAMILY_COUNT, FAMILY_NAMES};
pub use decode::{decode, DcSchedule, DecodedNetwork};
pub use instance::Instance;
pub use layout::GenotypeLayout;
pub use objectives::{eval_delay, eval_total_cost, mean_delay_periods};
pub use schedule::{deliver_level, simulate_schedule, Schedule};

#[cfg(test)]
pub(crate) use instance::fixtures;

use thiserror::Error;

use crate::moea::{EvalError, Evaluation, Problem};

#[derive(Debug, Error, PartialEq)]
pub enum ModelError {
    #[error("genotype length mismatch: expected {expected}, found {found}")]
    Dimension { expected: usize, found: usize },
    #[error("invalid argument: {0}")]
    Argument(String),
    #[error("invalid instance: {}", .0.join("; "))]
    Invalid(Vec<String>),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ModelOptions {
    /// Charge holding cost on backlog rather than on on-hand stock.
    pub holding_on_backorder: bool,
    /// Plants deliver at most `capacity / (u * T)` product units per period.
    pub level_production: bool,
}

impl Default for ModelOptions {
    fn default() -> Self {
        ModelOptions {
            holding_on_backorder: false,
            level_production: true,
        }
    }
}

/// Everything the model reports for one genotype.
#[derive(Debug, Clone, PartialEq)]
pub struct Assessment {
    pub network: DecodedNetwork,
    pub total_cost: f64,
    pub delay: f64,
    pub violations: Violations,
}

/// An instance bound to model options; the evaluator given to the engine.
#[derive(Debug, Clone)]
pub struct ScnProblem {
    instance: Instance,
    options: ModelOptions,
}

impl ScnProblem {
    pub fn new(instance: Instance, options: ModelOptions) -> Result<Self, ModelError> {
        instance.validate()?;
        Ok(ScnProblem { instance, options })
    }

    pub fn instance(&self) -> &Instance {
        &self.instance
    }

    pub fn options(&self) -> &ModelOptions {
        &self.options
    }

    pub fn layout(&self) -> GenotypeLayout {
        GenotypeLayout::of(&self.instance)
    }

    pub fn assess(&self, g: &[f64]) -> Result<Assessment, ModelError> {
        let network = decode(g, &self.instance, &self.options)?;
        let total_cost = eval_total_cost(&network, &self.instance, &self.options);
        let delay = eval_delay(&network);
        let violations = check_constraints(&network, &self.instance);
        Ok(Assessment {
            network,
            total_cost,
            delay,
            violations,
        })
    }

    /// `[total cost, delay]` and the total normalized violation.
    pub fn evaluate(&self, g: &[f64]) -> Result<Evaluation, ModelError> {
        let a = self.assess(g)?;
        Ok(Evaluation::new(vec![a.total_cost, a.delay], a.violations.total()))
    }
}

impl Problem for ScnProblem {
    fn genotype_len(&self) -> usize {
        self.layout().len()
    }

    fn evaluate(&self, genotype: &[f64]) -> Result<Evaluation, EvalError> {
        ScnProblem::evaluate(self, genotype).map_err(Into::into)
    }
}
