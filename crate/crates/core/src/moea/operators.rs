//! Mating selection and real-coded variation on the unit box.

use std::cmp::Ordering;

use rand::Rng;

use super::{crowded_compare, EngineConfig, Individual, MoeaError, Result};

const SAME_GENE_EPS: f64 = 1e-14;

/// Binary tournament: two distinct uniform draws, crowded-comparison winner,
/// first draw on a tie.
pub fn binary_tournament_select<R: Rng + ?Sized>(pop: &[Individual], rng: &mut R) -> Result<usize> {
    let n = pop.len();
    if n < 2 {
        return Err(MoeaError::Argument(format!(
            "tournament needs at least 2 individuals, got {n}"
        )));
    }
    let first = rng.random_range(0..n);
    let mut second = rng.random_range(0..n - 1);
    if second >= first {
        second += 1;
    }
    tournament_pair(pop, first, second)
}

/// Winner of a tournament between two given indices.
pub fn tournament_pair(pop: &[Individual], first: usize, second: usize) -> Result<usize> {
    Ok(match crowded_compare(&pop[first], &pop[second])? {
        Ordering::Greater => second,
        Ordering::Less | Ordering::Equal => first,
    })
}

/// Simulated binary crossover, bounded to `[0, 1]`.
///
/// With probability `crossover_prob` each gene pair is recombined with
/// probability one half; otherwise the parents are copied.
pub fn sbx_crossover<R: Rng + ?Sized>(
    p1: &[f64],
    p2: &[f64],
    config: &EngineConfig,
    rng: &mut R,
) -> Result<(Vec<f64>, Vec<f64>)> {
    if p1.len() != p2.len() {
        return Err(MoeaError::Dimension {
            expected: p1.len(),
            found: p2.len(),
        });
    }
    let mut c1 = p1.to_vec();
    let mut c2 = p2.to_vec();
    if rng.random::<f64>() >= config.crossover_prob {
        return Ok((c1, c2));
    }
    let eta = config.sbx_eta;
    for i in 0..p1.len() {
        if rng.random::<f64>() > 0.5 || (p1[i] - p2[i]).abs() <= SAME_GENE_EPS {
            continue;
        }
        let (lo, hi) = if p1[i] < p2[i] { (p1[i], p2[i]) } else { (p2[i], p1[i]) };
        let span = hi - lo;
        let u: f64 = rng.random();

        let spread = |beta: f64| {
            let alpha = 2.0 - beta.powf(-(eta + 1.0));
            if u <= 1.0 / alpha {
                (u * alpha).powf(1.0 / (eta + 1.0))
            } else {
                (1.0 / (2.0 - u * alpha)).powf(1.0 / (eta + 1.0))
            }
        };
        let beta_lo = spread(1.0 + 2.0 * lo / span);
        let beta_hi = spread(1.0 + 2.0 * (1.0 - hi) / span);
        let a = (0.5 * ((lo + hi) - beta_lo * span)).clamp(0.0, 1.0);
        let b = (0.5 * ((lo + hi) + beta_hi * span)).clamp(0.0, 1.0);

        if rng.random::<f64>() <= 0.5 {
            c1[i] = b;
            c2[i] = a;
        } else {
            c1[i] = a;
            c2[i] = b;
        }
    }
    Ok((c1, c2))
}

/// Bounded polynomial mutation; each gene mutates with `mutation_prob`.
pub fn polynomial_mutation<R: Rng + ?Sized>(g: &[f64], config: &EngineConfig, rng: &mut R) -> Vec<f64> {
    let eta = config.pm_eta;
    let power = 1.0 / (eta + 1.0);
    g.iter()
        .map(|&y| {
            if rng.random::<f64>() >= config.mutation_prob {
                return y;
            }
            let u: f64 = rng.random();
            let delta_q = if u <= 0.5 {
                let xy = 1.0 - y;
                let val = 2.0 * u + (1.0 - 2.0 * u) * xy.powf(eta + 1.0);
                val.powf(power) - 1.0
            } else {
                let xy = y;
                let val = 2.0 * (1.0 - u) + 2.0 * (u - 0.5) * xy.powf(eta + 1.0);
                1.0 - val.powf(power)
            };
            (y + delta_q).clamp(0.0, 1.0)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn ranked(rank: usize, crowding: f64) -> Individual {
        Individual {
            rank: Some(rank),
            crowding: Some(crowding),
            ..Individual::new(vec![])
        }
    }

    fn cfg(pc: f64, pm: f64) -> EngineConfig {
        EngineConfig {
            crossover_prob: pc,
            mutation_prob: pm,
            ..EngineConfig::default()
        }
    }

    fn random_genes(rng: &mut ChaCha8Rng, len: usize) -> Vec<f64> {
        (0..len).map(|_| rng.random()).collect()
    }

    #[test]
    fn pair_of_two_returns_the_better_rank() {
        let pop = vec![ranked(2, 1.0), ranked(1, 0.0)];
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..100 {
            assert_eq!(binary_tournament_select(&pop, &mut rng).unwrap(), 1);
        }
    }

    #[test]
    fn rank_one_wins_every_tournament_it_enters() {
        let mut pop: Vec<Individual> = (0..10).map(|i| ranked(2 + i % 3, i as f64)).collect();
        pop[6] = ranked(1, 0.0);
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let mut entered = 0;
        for _ in 0..10_000 {
            let mut probe = rng.clone();
            let a = probe.random_range(0..pop.len());
            let mut b = probe.random_range(0..pop.len() - 1);
            if b >= a {
                b += 1;
            }
            let winner = binary_tournament_select(&pop, &mut rng).unwrap();
            if a == 6 || b == 6 {
                entered += 1;
                assert_eq!(winner, 6);
            }
        }
        assert!(entered > 1000);
    }

    #[test]
    fn ties_go_to_the_first_draw() {
        let pop = vec![ranked(1, 1.0); 2];
        assert_eq!(tournament_pair(&pop, 1, 0).unwrap(), 1);
        assert_eq!(tournament_pair(&pop, 0, 1).unwrap(), 0);
    }

    #[test]
    fn tournament_needs_two() {
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        assert!(binary_tournament_select(&[ranked(1, 0.0)], &mut rng).is_err());
    }

    #[test]
    fn zero_crossover_prob_copies_parents() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let p1 = random_genes(&mut rng, 20);
        let p2 = random_genes(&mut rng, 20);
        let (c1, c2) = sbx_crossover(&p1, &p2, &cfg(0.0, 0.0), &mut rng).unwrap();
        assert_eq!((c1, c2), (p1, p2));
    }

    #[test]
    fn identical_parents_reproduce_themselves() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for _ in 0..100 {
            let p = random_genes(&mut rng, 12);
            let (c1, c2) = sbx_crossover(&p, &p, &cfg(1.0, 0.0), &mut rng).unwrap();
            assert_eq!(c1, p);
            assert_eq!(c2, p);
        }
    }

    #[test]
    fn crossover_children_stay_in_unit_box() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let config = cfg(1.0, 0.0);
        for _ in 0..100_000 {
            let p1 = random_genes(&mut rng, 2);
            let p2 = random_genes(&mut rng, 2);
            let (c1, c2) = sbx_crossover(&p1, &p2, &config, &mut rng).unwrap();
            assert!(c1.iter().chain(&c2).all(|x| (0.0..=1.0).contains(x)));
        }
    }

    #[test]
    fn crossover_length_mismatch() {
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let res = sbx_crossover(&[0.1, 0.2], &[0.3], &cfg(1.0, 0.0), &mut rng);
        assert!(matches!(res, Err(MoeaError::Dimension { .. })));
    }

    #[test]
    fn zero_mutation_prob_is_identity() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let g = random_genes(&mut rng, 50);
        assert_eq!(polynomial_mutation(&g, &cfg(0.0, 0.0), &mut rng), g);
    }

    #[test]
    fn certain_mutation_changes_and_stays_bounded() {
        let mut rng = ChaCha8Rng::seed_from_u64(10);
        let config = cfg(0.0, 1.0);
        for _ in 0..10_000 {
            let g = random_genes(&mut rng, 8);
            let m = polynomial_mutation(&g, &config, &mut rng);
            assert!(m.iter().all(|x| (0.0..=1.0).contains(x)));
            assert!(m.iter().zip(&g).any(|(a, b)| a != b));
        }
    }

    #[test]
    fn mutation_frequency_matches_probability() {
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        let config = cfg(0.0, 0.01);
        let g = vec![0.5; 1000];
        let mut changed = 0usize;
        for _ in 0..1000 {
            let m = polynomial_mutation(&g, &config, &mut rng);
            changed += m.iter().filter(|&&x| x != 0.5).count();
        }
        let freq = changed as f64 / 1e6;
        assert!((freq - 0.01).abs() <= 0.001, "frequency {freq}");
    }
}
