use std::time::Duration;

use serde::{Deserialize, Serialize};

use scn_core::moea::GenerationRecord;
use scn_core::ObjectiveVector;

use crate::hypervolume::hypervolume_2d;
use crate::CliError;

/// Settings that determine a run's output.
///
/// The evaluation thread count is left out on purpose: it changes wall time
/// only, and keeping it out lets reports from different `--jobs` compare equal.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConfigEcho {
    pub instance: String,
    pub population_size: usize,
    pub generations: usize,
    pub crossover_prob: f64,
    pub mutation_prob: f64,
    pub sbx_eta: f64,
    pub pm_eta: f64,
    pub seed: u64,
    pub holding_on_backorder: bool,
    pub level_production: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GenerationEntry {
    pub generation: usize,
    pub archive_size: usize,
    pub hypervolume: f64,
    pub best_f1: Option<f64>,
    pub best_f2: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FinalArchive {
    pub size: usize,
    pub exported_rows: usize,
    pub front_csv: String,
    pub plot_file: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub config: ConfigEcho,
    /// Fixed for the whole run so hypervolumes are comparable.
    pub hypervolume_reference: Vec<f64>,
    pub generations: Vec<GenerationEntry>,
    pub final_archive: FinalArchive,
    /// Printed, never serialized, so the report file stays reproducible.
    #[serde(skip)]
    pub wall_time: Duration,
}

impl RunReport {
    pub fn to_json(&self) -> String {
        let mut text = serde_json::to_string_pretty(self).expect("report serializes");
        text.push('\n');
        text
    }

    pub fn hypervolumes(&self) -> Vec<f64> {
        self.generations.iter().map(|g| g.hypervolume).collect()
    }
}

/// Reference point just beyond the worst value each objective ever took in
/// the logged archives: the maximum plus a tenth of the observed range.
pub fn reference_point(snapshots: &[Vec<Vec<f64>>]) -> ObjectiveVector {
    let mut lo = [f64::INFINITY; 2];
    let mut hi = [f64::NEG_INFINITY; 2];
    for p in snapshots.iter().flatten() {
        for m in 0..2 {
            lo[m] = lo[m].min(p[m]);
            hi[m] = hi[m].max(p[m]);
        }
    }
    let r = (0..2)
        .map(|m| {
            if !hi[m].is_finite() {
                return 1.0;
            }
            let span = hi[m] - lo[m];
            let margin = if span > 0.0 {
                0.1 * span
            } else {
                0.1 * hi[m].abs().max(1.0)
            };
            hi[m] + margin
        })
        .collect();
    ObjectiveVector::new(r)
}

pub fn generation_entries(
    log: &[GenerationRecord],
    snapshots: &[Vec<Vec<f64>>],
    reference: &ObjectiveVector,
) -> Result<Vec<GenerationEntry>, CliError> {
    log.iter()
        .zip(snapshots)
        .map(|(rec, pts)| {
            let front: Vec<ObjectiveVector> = pts.iter().cloned().map(ObjectiveVector::new).collect();
            Ok(GenerationEntry {
                generation: rec.generation,
                archive_size: rec.archive_size,
                hypervolume: hypervolume_2d(&front, reference)?,
                best_f1: rec.best.as_ref().map(|b| b[0]),
                best_f2: rec.best.as_ref().map(|b| b[1]),
            })
        })
        .collect()
}
