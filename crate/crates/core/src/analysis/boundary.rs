use serde::Serialize;

use super::sweep::{Sweep, SweepRecord};

/// A point of the `(γ, δ)` plane.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PlanePoint {
    pub gamma: f64,
    pub delta: f64,
}

impl PlanePoint {
    pub const fn new(gamma: f64, delta: f64) -> Self {
        PlanePoint { gamma, delta }
    }
}

/// Midpoints of the grid edges whose endpoint records disagree on
/// `predicate`. Edges along γ come before edges along δ at each grid point.
pub fn extract_boundary(sweep: &Sweep, predicate: impl Fn(&SweepRecord) -> bool) -> Vec<PlanePoint> {
    let g = &sweep.grid;
    let (ni, nj) = (g.gamma.steps, g.delta.steps);
    let mask: Vec<bool> = sweep.records.iter().map(predicate).collect();
    let mut out = Vec::new();
    for i in 0..ni {
        for j in 0..nj {
            let here = mask[g.index(i, j)];
            if i + 1 < ni && mask[g.index(i + 1, j)] != here {
                out.push(PlanePoint::new(
                    0.5 * (g.gamma.value(i) + g.gamma.value(i + 1)),
                    g.delta.value(j),
                ));
            }
            if j + 1 < nj && mask[g.index(i, j + 1)] != here {
                out.push(PlanePoint::new(
                    g.gamma.value(i),
                    0.5 * (g.delta.value(j) + g.delta.value(j + 1)),
                ));
            }
        }
    }
    out
}

/// `points` together with their mirror images under `δ → 2·axis − δ`.
/// Points on the axis are not duplicated.
pub fn reflect_delta(points: &[PlanePoint], axis: f64) -> Vec<PlanePoint> {
    let mut out = points.to_vec();
    out.extend(
        points
            .iter()
            .filter(|p| (p.delta - axis).abs() > 1e-12)
            .map(|p| PlanePoint::new(p.gamma, 2.0 * axis - p.delta)),
    );
    out
}
