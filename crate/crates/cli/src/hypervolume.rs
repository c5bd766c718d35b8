use scn_core::ObjectiveVector;

use crate::CliError;

/// Area dominated by `front` inside the box bounded by `reference`, for two
/// minimized objectives. Dominated and duplicate points are harmless.
///
/// Sweeps points by increasing first objective and adds the horizontal slab
/// each one contributes below the best second objective seen so far.
pub fn hypervolume_2d(front: &[ObjectiveVector], reference: &ObjectiveVector) -> Result<f64, CliError> {
    if reference.len() != 2 {
        return Err(CliError::Argument(format!(
            "hypervolume reference must have 2 objectives, got {}",
            reference.len()
        )));
    }
    let (r1, r2) = (reference[0], reference[1]);
    let mut pts = Vec::with_capacity(front.len());
    for (i, p) in front.iter().enumerate() {
        if p.len() != 2 {
            return Err(CliError::Argument(format!(
                "point {i} has {} objectives, expected 2",
                p.len()
            )));
        }
        if !(p[0] <= r1 && p[1] <= r2) {
            return Err(CliError::Argument(format!(
                "point {i} ({}, {}) lies outside the reference box ({r1}, {r2})",
                p[0], p[1]
            )));
        }
        pts.push((p[0], p[1]));
    }
    pts.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.total_cmp(&b.1)));
    let mut ceiling = r2;
    let mut area = 0.0;
    for (x, y) in pts {
        if y < ceiling {
            area += (r1 - x) * (ceiling - y);
            ceiling = y;
        }
    }
    Ok(area)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ov(a: f64, b: f64) -> ObjectiveVector {
        ObjectiveVector::new(vec![a, b])
    }

    #[test]
    fn unit_square() {
        assert_eq!(hypervolume_2d(&[ov(0.0, 0.0)], &ov(1.0, 1.0)).unwrap(), 1.0);
    }

    #[test]
    fn two_corner_points() {
        let hv = hypervolume_2d(&[ov(0.0, 0.5), ov(0.5, 0.0)], &ov(1.0, 1.0)).unwrap();
        assert_eq!(hv, 0.75);
    }

    #[test]
    fn dominated_and_repeated_points_add_nothing() {
        let base = hypervolume_2d(&[ov(0.0, 0.5), ov(0.5, 0.0)], &ov(1.0, 1.0)).unwrap();
        let noisy = [ov(0.5, 0.0), ov(0.6, 0.6), ov(0.0, 0.5), ov(0.5, 0.0), ov(1.0, 1.0)];
        assert_eq!(hypervolume_2d(&noisy, &ov(1.0, 1.0)).unwrap(), base);
    }

    #[test]
    fn empty_front_has_zero_volume() {
        assert_eq!(hypervolume_2d(&[], &ov(1.0, 1.0)).unwrap(), 0.0);
    }

    #[test]
    fn point_outside_box_is_rejected() {
        assert!(matches!(
            hypervolume_2d(&[ov(2.0, 0.0)], &ov(1.0, 1.0)),
            Err(CliError::Argument(_))
        ));
        assert!(hypervolume_2d(&[ov(f64::NAN, 0.0)], &ov(1.0, 1.0)).is_err());
        assert!(hypervolume_2d(&[ov(0.0, 0.0)], &ObjectiveVector::new(vec![1.0])).is_err());
    }
}
