use std::cmp::Ordering;

use super::{Individual, MoeaError, Result};

/// Crowding distance of each member of a non-dominated front.
///
/// For every objective the front is sorted ascending; the two boundary
/// members get `+inf` and each interior member accumulates
/// `(next - prev) / (f_max - f_min)`. An objective with zero range adds
/// nothing to interior members.
pub fn crowding_distance<V: AsRef<[f64]>>(front: &[V]) -> Vec<f64> {
    let n = front.len();
    if n <= 2 {
        return vec![f64::INFINITY; n];
    }
    let m = front[0].as_ref().len();
    let mut distance = vec![0.0; n];
    let mut order: Vec<usize> = (0..n).collect();

    for obj in 0..m {
        let value = |i: usize| front[i].as_ref()[obj];
        order.sort_by(|&a, &b| value(a).total_cmp(&value(b)).then(a.cmp(&b)));
        let lo = value(order[0]);
        let hi = value(order[n - 1]);
        distance[order[0]] = f64::INFINITY;
        distance[order[n - 1]] = f64::INFINITY;
        let range = hi - lo;
        if range <= 0.0 {
            continue;
        }
        for w in order.windows(3) {
            let (prev, mid, next) = (w[0], w[1], w[2]);
            distance[mid] += (value(next) - value(prev)) / range;
        }
    }
    distance
}

/// Computes crowding within `front` and stores it on the members.
pub fn assign_crowding(pop: &mut [Individual], front: &[usize]) -> Result<()> {
    let values = front
        .iter()
        .map(|&i| pop[i].objectives().map(|o| o.values().to_vec()))
        .collect::<Result<Vec<_>>>()?;
    for (&i, d) in front.iter().zip(crowding_distance(&values)) {
        pop[i].crowding = Some(d);
    }
    Ok(())
}

/// Crowded-comparison order: lower rank first, then larger crowding.
/// `Ordering::Less` means `a` is preferred.
pub fn crowded_compare(a: &Individual, b: &Individual) -> Result<Ordering> {
    let (ra, ca) = rank_and_crowding(a)?;
    let (rb, cb) = rank_and_crowding(b)?;
    Ok(ra.cmp(&rb).then_with(|| cb.total_cmp(&ca)))
}

fn rank_and_crowding(ind: &Individual) -> Result<(usize, f64)> {
    match (ind.rank, ind.crowding) {
        (Some(r), Some(c)) => Ok((r, c)),
        _ => Err(MoeaError::Unranked),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ranked(rank: usize, crowding: f64) -> Individual {
        Individual {
            rank: Some(rank),
            crowding: Some(crowding),
            ..Individual::new(vec![])
        }
    }

    #[test]
    fn three_point_front() {
        let d = crowding_distance(&[[1.0, 5.0], [2.0, 3.0], [4.0, 1.0]]);
        assert!(d[0].is_infinite() && d[2].is_infinite());
        assert!((d[1] - 2.0).abs() < 1e-15);
    }

    #[test]
    fn tiny_fronts_are_all_boundary() {
        assert_eq!(crowding_distance(&[[1.0, 2.0]]), vec![f64::INFINITY]);
        assert_eq!(
            crowding_distance(&[[1.0, 2.0], [2.0, 1.0]]),
            vec![f64::INFINITY, f64::INFINITY]
        );
        assert!(crowding_distance::<[f64; 2]>(&[]).is_empty());
    }

    #[test]
    fn zero_range_objective_contributes_nothing() {
        let d = crowding_distance(&[[1.0, 7.0], [2.0, 7.0], [3.0, 7.0], [5.0, 7.0]]);
        // objective 0 alone: (3-1)/4 and (5-2)/4
        assert!((d[1] - 0.5).abs() < 1e-15);
        assert!((d[2] - 0.75).abs() < 1e-15);
        assert!(d.iter().all(|x| !x.is_nan()));
    }

    #[test]
    fn crowded_compare_orders_by_rank_then_crowding() {
        assert_eq!(
            crowded_compare(&ranked(1, 0.0), &ranked(3, 9.0)).unwrap(),
            Ordering::Less
        );
        assert_eq!(
            crowded_compare(&ranked(2, f64::INFINITY), &ranked(2, 0.5)).unwrap(),
            Ordering::Less
        );
        assert_eq!(
            crowded_compare(&ranked(2, 0.5), &ranked(2, 0.5)).unwrap(),
            Ordering::Equal
        );
        assert_eq!(
            crowded_compare(&ranked(2, f64::INFINITY), &ranked(2, f64::INFINITY)).unwrap(),
            Ordering::Equal
        );
    }

    #[test]
    fn crowded_compare_needs_ranking() {
        let bare = Individual::new(vec![]);
        assert!(matches!(
            crowded_compare(&bare, &ranked(1, 1.0)),
            Err(MoeaError::Unranked)
        ));
    }
}
