//! Shared inputs for the benchmarks in `benches/`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use scn_core::io::{generate_instance, Preset};
use scn_core::{Evaluation, Individual, ModelOptions, ScnProblem};

/// Evaluated individuals with uniform objectives; roughly a quarter are
/// infeasible.
pub fn random_population(n: usize, objectives: usize, seed: u64) -> Vec<Individual> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n)
        .map(|_| {
            let obj: Vec<f64> = (0..objectives).map(|_| rng.random()).collect();
            let violation = if rng.random_bool(0.25) { rng.random() } else { 0.0 };
            Individual::evaluated(vec![0.0], Evaluation::new(obj, violation))
        })
        .collect()
}

/// Points on a decreasing curve, all mutually non-dominated.
pub fn random_front(n: usize, seed: u64) -> Vec<Vec<f64>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n)
        .map(|_| {
            let x: f64 = rng.random();
            vec![x, 1.0 - x.sqrt()]
        })
        .collect()
}

pub fn preset_problem(preset: Preset, seed: u64) -> ScnProblem {
    ScnProblem::new(generate_instance(&preset.params(seed)), ModelOptions::default())
        .expect("generated instances are valid")
}

pub fn random_genotypes(len: usize, count: usize, seed: u64) -> Vec<Vec<f64>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| (0..len).map(|_| rng.random()).collect()).collect()
}
