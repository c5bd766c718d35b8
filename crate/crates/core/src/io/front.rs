use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::IoError;
use crate::model::{mean_delay_periods, ScnProblem};
use crate::moea::ParetoArchive;

/// One exported trade-off point, as printed.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FrontRow {
    pub total_cost: f64,
    pub f2_raw: f64,
    /// Backlog in periods of average demand. Informational.
    pub mean_delay_days: f64,
}

impl FrontRow {
    fn rounded(total_cost: f64, f2_raw: f64, mean_delay_days: f64) -> Self {
        FrontRow {
            total_cost: total_cost.round(),
            f2_raw: (f2_raw * 1e4).round() / 1e4,
            mean_delay_days: (mean_delay_days * 1e2).round() / 1e2,
        }
    }
}

/// Re-assesses every archive member and returns rows at print precision
/// (integer cost, four-decimal f2, two-decimal days), sorted by cost.
///
/// Rounding can make distinct points collide or dominate each other; such
/// rows are dropped so the printed set stays mutually non-dominated.
pub fn front_rows(archive: &ParetoArchive, problem: &ScnProblem) -> Result<Vec<FrontRow>, IoError> {
    let mut rows = Vec::with_capacity(archive.len());
    for member in archive.members() {
        let a = problem
            .assess(&member.genotype)
            .map_err(|e| IoError::Front(e.to_string()))?;
        let days = mean_delay_periods(&a.network, problem.instance());
        rows.push(FrontRow::rounded(a.total_cost, a.delay, days));
    }
    Ok(thin(rows))
}

/// Sorts by cost and keeps only rows that beat every cheaper row on f2.
fn thin(mut rows: Vec<FrontRow>) -> Vec<FrontRow> {
    rows.sort_by(|a, b| {
        a.total_cost
            .total_cmp(&b.total_cost)
            .then(a.f2_raw.total_cmp(&b.f2_raw))
            .then(a.mean_delay_days.total_cmp(&b.mean_delay_days))
    });
    let mut kept: Vec<FrontRow> = Vec::with_capacity(rows.len());
    for row in rows {
        if kept.last().is_none_or(|prev| prev.f2_raw > row.f2_raw) {
            kept.push(row);
        }
    }
    kept
}

pub fn write_front_csv(rows: &[FrontRow], path: impl AsRef<Path>) -> Result<(), IoError> {
    let path = path.as_ref();
    let file = File::create(path).map_err(|source| IoError::Write {
        path: path.to_path_buf(),
        source,
    })?;
    let mut w = csv::Writer::from_writer(BufWriter::new(file));
    w.write_record(["total_cost", "f2_raw", "mean_delay_days"])?;
    for r in rows {
        w.write_record([
            format!("{:.0}", r.total_cost),
            format!("{:.4}", r.f2_raw),
            format!("{:.2}", r.mean_delay_days),
        ])?;
    }
    w.flush().map_err(|source| IoError::Write {
        path: path.to_path_buf(),
        source,
    })?;
    Ok(())
}

/// Writes the archive as a cost-sorted CSV with header
/// `total_cost,f2_raw,mean_delay_days`. Returns the rows written.
pub fn save_front(
    archive: &ParetoArchive,
    problem: &ScnProblem,
    path: impl AsRef<Path>,
) -> Result<Vec<FrontRow>, IoError> {
    if archive.is_empty() {
        return Err(IoError::Front("archive is empty".into()));
    }
    let rows = front_rows(archive, problem)?;
    write_front_csv(&rows, path)?;
    Ok(rows)
}

pub fn read_front_csv(path: impl AsRef<Path>) -> Result<Vec<FrontRow>, IoError> {
    let mut r = csv::Reader::from_path(path)?;
    r.deserialize().map(|row| row.map_err(IoError::from)).collect()
}

/// Two whitespace-separated columns, `total_cost f2_raw`, for gnuplot.
pub fn write_plot(rows: &[FrontRow], path: impl AsRef<Path>) -> Result<(), IoError> {
    let path = path.as_ref();
    let wrap = |source| IoError::Write {
        path: path.to_path_buf(),
        source,
    };
    let mut w = BufWriter::new(File::create(path).map_err(wrap)?);
    writeln!(w, "# total_cost f2_raw").map_err(wrap)?;
    for r in rows {
        writeln!(w, "{:.0} {:.4}", r.total_cost, r.f2_raw).map_err(wrap)?;
    }
    w.flush().map_err(wrap)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::io::builtin_instance;
    use crate::model::{GenotypeLayout, ModelOptions};
    use crate::moea::Individual;

    fn tiny_problem() -> ScnProblem {
        ScnProblem::new(builtin_instance("tiny").unwrap(), ModelOptions::default()).unwrap()
    }

    fn member(problem: &ScnProblem, g: Vec<f64>) -> Individual {
        let e = problem.evaluate(&g).unwrap();
        Individual::evaluated(g, e)
    }

    #[test]
    fn single_point_archive_gives_two_lines() {
        let prob = tiny_problem();
        let mut ar = ParetoArchive::new();
        ar.update(&[member(&prob, vec![1.0; GenotypeLayout::of(prob.instance()).len()])]);
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("front.csv");
        save_front(&ar, &prob, &path).unwrap();
        let text = std::fs::read_to_string(&path).unwrap();
        assert_eq!(text, "total_cost,f2_raw,mean_delay_days\n220,0.0000,0.00\n");
    }

    #[test]
    fn empty_archive_is_refused() {
        let dir = tempfile::tempdir().unwrap();
        assert!(save_front(&ParetoArchive::new(), &tiny_problem(), dir.path().join("x.csv")).is_err());
    }

    #[test]
    fn case_study_row_format() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("f.csv");
        write_front_csv(&[FrontRow::rounded(42496345.4, 171.5, 3.4312)], &path).unwrap();
        let text = std::fs::read_to_string(&path).unwrap();
        assert_eq!(text.lines().nth(1).unwrap(), "42496345,171.5000,3.43");
        assert_eq!(read_front_csv(&path).unwrap()[0].mean_delay_days, 3.43);
    }

    #[test]
    fn rounding_collisions_are_thinned() {
        let rows = [(100.2, 5.0), (100.4, 4.0), (101.0, 3.0), (99.0, 9.0), (102.0, 3.0)]
            .map(|(c, d)| FrontRow::rounded(c, d, 0.0));
        let kept = thin(rows.to_vec());
        let pairs: Vec<(f64, f64)> = kept.iter().map(|r| (r.total_cost, r.f2_raw)).collect();
        assert_eq!(pairs, vec![(99.0, 9.0), (100.0, 4.0), (101.0, 3.0)]);
    }

    #[test]
    fn plot_file_has_two_columns() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("front.dat");
        write_plot(
            &[FrontRow::rounded(10.0, 2.0, 0.5), FrontRow::rounded(12.0, 1.0, 0.2)],
            &path,
        )
        .unwrap();
        let text = std::fs::read_to_string(&path).unwrap();
        assert_eq!(text, "# total_cost f2_raw\n10 2.0000\n12 1.0000\n");
    }
}
