use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::selection::survivors;
use super::{
    binary_tournament_select, environmental_select, polynomial_mutation, sbx_crossover, EngineConfig, Evaluation,
    Individual, MoeaError, ParetoArchive, Problem, Result,
};

/// Summary of one generation. Generation `0` is the initial population.
#[derive(Debug, Clone, PartialEq)]
pub struct GenerationRecord {
    pub generation: usize,
    pub archive_size: usize,
    pub feasible_in_population: usize,
    /// Per-objective minimum over the archive; `None` while it is empty.
    pub best: Option<Vec<f64>>,
}

/// State handed to an observer after each generation.
pub struct GenerationView<'a> {
    pub generation: usize,
    pub population: &'a [Individual],
    pub archive: &'a ParetoArchive,
}

#[derive(Debug, Clone)]
pub struct Outcome {
    pub population: Vec<Individual>,
    pub archive: ParetoArchive,
    pub log: Vec<GenerationRecord>,
}

pub fn evolve<P: Problem + ?Sized>(problem: &P, config: &EngineConfig) -> Result<Outcome> {
    evolve_with(problem, config, |_| {})
}

/// Runs NSGA-II for exactly `config.generations` generations, calling
/// `observe` after initialization and after every generation.
///
/// The random stream feeds initialization, selection and variation only, so
/// the result does not depend on `eval_threads`.
pub fn evolve_with<P, F>(problem: &P, config: &EngineConfig, mut observe: F) -> Result<Outcome>
where
    P: Problem + ?Sized,
    F: FnMut(&GenerationView<'_>),
{
    config.validate()?;
    let len = problem.genotype_len();
    if len == 0 {
        return Err(MoeaError::Argument("problem declares an empty genotype".into()));
    }
    let n = config.population_size;
    let pool = if config.eval_threads > 1 {
        Some(
            rayon::ThreadPoolBuilder::new()
                .num_threads(config.eval_threads)
                .build()
                .map_err(|e| MoeaError::Config(format!("cannot start evaluation pool: {e}")))?,
        )
    } else {
        None
    };
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);

    let initial: Vec<Vec<f64>> = (0..n)
        .map(|_| (0..len).map(|_| rng.random::<f64>()).collect())
        .collect();
    let mut population = survivors(evaluate_batch(problem, initial, pool.as_ref())?, n)?;
    let mut archive = ParetoArchive::new();
    archive.update(&population);

    let mut log = Vec::with_capacity(config.generations + 1);
    log.push(record(0, &population, &archive));
    observe(&GenerationView {
        generation: 0,
        population: &population,
        archive: &archive,
    });

    for generation in 1..=config.generations {
        let mut children = Vec::with_capacity(n);
        while children.len() < n {
            let a = binary_tournament_select(&population, &mut rng)?;
            let b = binary_tournament_select(&population, &mut rng)?;
            let (c1, c2) = sbx_crossover(&population[a].genotype, &population[b].genotype, config, &mut rng)?;
            children.push(polynomial_mutation(&c1, config, &mut rng));
            children.push(polynomial_mutation(&c2, config, &mut rng));
        }
        let offspring = evaluate_batch(problem, children, pool.as_ref())?;
        archive.update(&offspring);
        population = environmental_select(population, offspring, n)?;

        log.push(record(generation, &population, &archive));
        observe(&GenerationView {
            generation,
            population: &population,
            archive: &archive,
        });
    }

    Ok(Outcome {
        population,
        archive,
        log,
    })
}

fn evaluate_batch<P: Problem + ?Sized>(
    problem: &P,
    genotypes: Vec<Vec<f64>>,
    pool: Option<&rayon::ThreadPool>,
) -> Result<Vec<Individual>> {
    let results: Vec<std::result::Result<Evaluation, super::EvalError>> = match pool {
        Some(pool) => pool.install(|| genotypes.par_iter().map(|g| problem.evaluate(g)).collect()),
        None => genotypes.iter().map(|g| problem.evaluate(g)).collect(),
    };
    let m = problem.objective_count();
    genotypes
        .into_iter()
        .zip(results)
        .enumerate()
        .map(|(index, (g, res))| {
            let eval = res.map_err(|source| MoeaError::Evaluator { index, source })?;
            if !eval.objectives.is_finite() || !eval.violation.is_finite() || eval.violation < 0.0 {
                return Err(MoeaError::NonFinite { index });
            }
            if eval.objectives.len() != m {
                return Err(MoeaError::Dimension {
                    expected: m,
                    found: eval.objectives.len(),
                });
            }
            Ok(Individual::evaluated(g, eval))
        })
        .collect()
}

fn record(generation: usize, population: &[Individual], archive: &ParetoArchive) -> GenerationRecord {
    let best = archive.objective_points().into_iter().reduce(|mut acc, p| {
        for (a, v) in acc.iter_mut().zip(p) {
            *a = a.min(v);
        }
        acc
    });
    GenerationRecord {
        generation,
        archive_size: archive.len(),
        feasible_in_population: population.iter().filter(|i| i.is_feasible()).count(),
        best,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::moea::{dominates, EvalError};

    struct Line;

    impl Problem for Line {
        fn genotype_len(&self) -> usize {
            1
        }

        fn evaluate(&self, g: &[f64]) -> std::result::Result<Evaluation, EvalError> {
            Ok(Evaluation::new(vec![g[0], 1.0 - g[0]], 0.0))
        }
    }

    struct Broken;

    impl Problem for Broken {
        fn genotype_len(&self) -> usize {
            2
        }

        fn evaluate(&self, g: &[f64]) -> std::result::Result<Evaluation, EvalError> {
            if g[0] > 0.5 {
                Ok(Evaluation::new(vec![f64::NAN, 0.0], 0.0))
            } else {
                Ok(Evaluation::new(vec![g[0], g[1]], 0.0))
            }
        }
    }

    fn toy_config() -> EngineConfig {
        EngineConfig {
            population_size: 20,
            generations: 50,
            seed: 2024,
            ..EngineConfig::default()
        }
    }

    #[test]
    fn zero_generations_returns_initial_population() {
        let cfg = EngineConfig {
            generations: 0,
            ..toy_config()
        };
        let out = evolve(&Line, &cfg).unwrap();
        assert_eq!(out.population.len(), 20);
        assert_eq!(out.log.len(), 1);
        // every point of the line problem is non-dominated
        assert_eq!(out.archive.len(), 20);
        assert!(out.population.iter().all(|i| i.rank == Some(1)));
    }

    #[test]
    fn toy_line_front_is_analytic_and_spread() {
        let out = evolve(&Line, &toy_config()).unwrap();
        let mut f1: Vec<f64> = out.archive.objective_points().iter().map(|p| p[0]).collect();
        for p in out.archive.objective_points() {
            assert!((p[0] + p[1] - 1.0).abs() < 1e-9);
        }
        f1.sort_by(f64::total_cmp);
        let mut gaps = vec![f1[0]];
        gaps.extend(f1.windows(2).map(|w| w[1] - w[0]));
        gaps.push(1.0 - f1[f1.len() - 1]);
        assert!(
            gaps.iter().all(|&g| g < 0.2),
            "max gap {:?}",
            gaps.iter().cloned().fold(0.0, f64::max)
        );
    }

    #[test]
    fn same_seed_is_bit_identical() {
        let a = evolve(&Line, &toy_config()).unwrap();
        let b = evolve(&Line, &toy_config()).unwrap();
        assert_eq!(a.log, b.log);
        assert_eq!(a.archive, b.archive);
        assert_eq!(a.population, b.population);
    }

    #[test]
    fn threaded_evaluation_matches_inline() {
        let a = evolve(&Line, &toy_config()).unwrap();
        let b = evolve(
            &Line,
            &EngineConfig {
                eval_threads: 4,
                ..toy_config()
            },
        )
        .unwrap();
        assert_eq!(a.archive, b.archive);
        assert_eq!(a.log, b.log);
    }

    #[test]
    fn non_finite_objective_names_the_genotype() {
        let err = evolve(&Broken, &toy_config()).unwrap_err();
        assert!(matches!(err, MoeaError::NonFinite { .. }), "{err}");
    }

    #[test]
    fn archive_stays_mutually_non_dominated() {
        let mut history: Vec<Vec<f64>> = Vec::new();
        evolve_with(&Line, &toy_config(), |view| {
            let pts = view.archive.objective_points();
            for a in &pts {
                for b in &pts {
                    assert!(!dominates(a, b).unwrap());
                }
                // nothing ever inserted dominates a current member
                assert!(history.iter().all(|h| !dominates(h, a).unwrap()));
            }
            history.extend(pts);
        })
        .unwrap();
    }
}
