use super::{Individual, MoeaError, Result};

/// Pareto dominance for minimization: `a` is no worse everywhere and
/// strictly better somewhere.
pub fn dominates(a: &[f64], b: &[f64]) -> Result<bool> {
    if a.len() != b.len() {
        return Err(MoeaError::Dimension {
            expected: a.len(),
            found: b.len(),
        });
    }
    let mut strictly_better = false;
    for (x, y) in a.iter().zip(b) {
        if x > y {
            return Ok(false);
        }
        if x < y {
            strictly_better = true;
        }
    }
    Ok(strictly_better)
}

/// Constraint-domination: a feasible individual beats an infeasible one,
/// two infeasible individuals compare by total violation, and two feasible
/// ones fall back to [`dominates`].
pub fn constrained_dominates(a: &Individual, b: &Individual) -> Result<bool> {
    let ea = a.evaluation()?;
    let eb = b.evaluation()?;
    match (ea.is_feasible(), eb.is_feasible()) {
        (true, false) => Ok(true),
        (false, true) => Ok(false),
        (false, false) => Ok(ea.violation < eb.violation),
        (true, true) => dominates(&ea.objectives, &eb.objectives),
    }
}
