use super::{assign_crowding, fast_nondominated_sort, Individual, MoeaError, Result};

/// Elitist (mu + lambda) survival over `parents ∪ offspring`.
///
/// Whole fronts are admitted in rank order; the front that overflows is
/// truncated by descending crowding distance computed within that front,
/// with the lower combined index winning ties. Survivors carry their rank
/// and crowding.
pub fn environmental_select(parents: Vec<Individual>, offspring: Vec<Individual>, n: usize) -> Result<Vec<Individual>> {
    if parents.len() != n || offspring.len() != n {
        return Err(MoeaError::Argument(format!(
            "expected {n} parents and {n} offspring, got {} and {}",
            parents.len(),
            offspring.len()
        )));
    }
    let mut combined = parents;
    combined.extend(offspring);
    survivors(combined, n)
}

/// Ranks `pop`, assigns crowding per front and keeps the best `n`.
pub(crate) fn survivors(mut pop: Vec<Individual>, n: usize) -> Result<Vec<Individual>> {
    let partition = fast_nondominated_sort(&pop)?;
    let mut keep = Vec::with_capacity(n);
    for (k, front) in partition.fronts.iter().enumerate() {
        if keep.len() >= n {
            break;
        }
        for &i in front {
            pop[i].rank = Some(k + 1);
        }
        assign_crowding(&mut pop, front)?;
        let room = n - keep.len();
        if front.len() <= room {
            keep.extend_from_slice(front);
        } else {
            let mut by_crowding = front.clone();
            by_crowding.sort_by(|&a, &b| {
                let (ca, cb) = (pop[a].crowding.unwrap_or(0.0), pop[b].crowding.unwrap_or(0.0));
                cb.total_cmp(&ca).then(a.cmp(&b))
            });
            by_crowding.truncate(room);
            by_crowding.sort_unstable();
            keep.extend(by_crowding);
        }
    }

    let mut slots: Vec<Option<Individual>> = pop.into_iter().map(Some).collect();
    Ok(keep.into_iter().filter_map(|i| slots[i].take()).collect())
}
