use super::{dominates, Individual};

/// All-time set of feasible, mutually non-dominated individuals.
///
/// Members keep insertion order. A candidate whose objective vector equals
/// an existing member's is treated as a duplicate and dropped.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct ParetoArchive {
    members: Vec<Individual>,
}

impl ParetoArchive {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn members(&self) -> &[Individual] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// Objective vectors of the members, in insertion order.
    pub fn objective_points(&self) -> Vec<Vec<f64>> {
        self.members
            .iter()
            .filter_map(|m| m.evaluation.as_ref().map(|e| e.objectives.values().to_vec()))
            .collect()
    }

    /// Merges the feasible candidates; unevaluated or infeasible ones are
    /// ignored.
    pub fn update<'a, I>(&mut self, candidates: I)
    where
        I: IntoIterator<Item = &'a Individual>,
    {
        for cand in candidates {
            if !cand.is_feasible() {
                continue;
            }
            let objs = &cand.evaluation.as_ref().expect("feasible implies evaluated").objectives;
            let covered = self.members.iter().any(|m| {
                let mo = &m.evaluation.as_ref().expect("archive members are evaluated").objectives;
                mo == objs || dominates(mo, objs).unwrap_or(false)
            });
            if covered {
                continue;
            }
            self.members.retain(|m| {
                let mo = &m.evaluation.as_ref().expect("archive members are evaluated").objectives;
                !dominates(objs, mo).unwrap_or(false)
            });
            self.members.push(Individual {
                rank: None,
                crowding: None,
                ..cand.clone()
            });
        }
    }
}
