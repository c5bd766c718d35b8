use super::{constrained_dominates, Individual, MoeaError, Result};

/// Non-domination layers of a population.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FrontPartition {
    /// Front `k` (0-based) holds the indices of rank `k + 1`, ascending.
    pub fronts: Vec<Vec<usize>>,
    /// Rank of each population index, starting at 1.
    pub ranks: Vec<usize>,
}

impl FrontPartition {
    pub fn len(&self) -> usize {
        self.fronts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.fronts.is_empty()
    }
}

/// Fast non-dominated sort under constraint-domination.
///
/// Each individual `p` keeps a domination count `n_p` and the set `S_p` of
/// individuals it dominates; the first front is every `p` with `n_p = 0`,
/// and each later front is found by decrementing the counts of the members
/// of `S_p` for every `p` in the front before it.
pub fn fast_nondominated_sort(pop: &[Individual]) -> Result<FrontPartition> {
    if pop.is_empty() {
        return Err(MoeaError::Argument("cannot sort an empty population".into()));
    }
    let n = pop.len();
    let mut dominated_by_me: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut domination_count = vec![0usize; n];

    for p in 0..n {
        for q in (p + 1)..n {
            if constrained_dominates(&pop[p], &pop[q])? {
                dominated_by_me[p].push(q);
                domination_count[q] += 1;
            } else if constrained_dominates(&pop[q], &pop[p])? {
                dominated_by_me[q].push(p);
                domination_count[p] += 1;
            }
        }
    }

    let mut ranks = vec![0usize; n];
    let mut fronts = Vec::new();
    let mut current: Vec<usize> = (0..n).filter(|&p| domination_count[p] == 0).collect();
    let mut rank = 1;
    while !current.is_empty() {
        let mut next = Vec::new();
        for &p in &current {
            ranks[p] = rank;
            for &q in &dominated_by_me[p] {
                domination_count[q] -= 1;
                if domination_count[q] == 0 {
                    next.push(q);
                }
            }
        }
        next.sort_unstable();
        fronts.push(current);
        current = next;
        rank += 1;
    }

    Ok(FrontPartition { fronts, ranks })
}
