use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, SQRT_2};

use rayon::prelude::*;

use super::sweep::SweepRecord;
use crate::error::{Error, Result};
use crate::game::GameParams;

/// `γ` at which `tan(γ/2) = √2`, the W-type end of the path.
pub fn w_gamma() -> f64 {
    2.0 * SQRT_2.atan()
}

/// Parameters of the W-type state `(|000⟩ + i|011⟩ − |101⟩)/√3`.
pub fn w_point() -> GameParams {
    GameParams {
        gamma: w_gamma(),
        delta: FRAC_PI_4,
        eta: 0.0,
    }
}

/// Parameters of the GHZ-type state `(|000⟩ + i|111⟩)/√2`.
pub fn ghz_point() -> GameParams {
    GameParams {
        gamma: FRAC_PI_2,
        delta: 0.0,
        eta: FRAC_PI_2,
    }
}

/// Affine path from the GHZ-type point (`t = 0`) to the W-type point (`t = 1`).
pub fn interpolation_path(t: f64) -> Result<GameParams> {
    if !(0.0..=1.0).contains(&t) {
        return Err(Error::OutOfRange {
            name: "t",
            value: t,
            lo: 0.0,
            hi: 1.0,
        });
    }
    Ok(GameParams {
        gamma: t * w_gamma() + (1.0 - t) * FRAC_PI_2,
        delta: t * FRAC_PI_4,
        eta: (1.0 - t) * FRAC_PI_2,
    })
}

/// Evaluates `t = k/steps` for `k = 0..=steps`.
pub fn interpolation_scan(steps: usize, epsilon: f64) -> Result<Vec<(f64, SweepRecord)>> {
    if steps < 2 {
        return Err(Error::InvalidGrid(format!("need at least 2 t-steps, got {steps}")));
    }
    (0..=steps)
        .into_par_iter()
        .map(|k| {
            let t = k as f64 / steps as f64;
            interpolation_path(t).map(|p| (t, SweepRecord::evaluate(&p, epsilon)))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn endpoints() {
        assert_eq!(interpolation_path(0.0).unwrap(), ghz_point());
        let w = interpolation_path(1.0).unwrap();
        assert!((w.gamma - w_gamma()).abs() < 1e-15 && (w.delta - FRAC_PI_4).abs() < 1e-15 && w.eta == 0.0);
        assert!(((w_gamma() / 2.0).tan() - SQRT_2).abs() < 1e-12);
    }

    #[test]
    fn midpoint_is_linear() {
        let m = interpolation_path(0.5).unwrap();
        let (a, b) = (ghz_point(), w_point());
        assert!((m.gamma - 0.5 * (a.gamma + b.gamma)).abs() < 1e-15);
        assert!((m.delta - 0.5 * (a.delta + b.delta)).abs() < 1e-15);
        assert!((m.eta - 0.5 * (a.eta + b.eta)).abs() < 1e-15);
    }

    #[test]
    fn rejects_out_of_range() {
        assert!(interpolation_path(-0.1).is_err());
        assert!(interpolation_path(1.5).is_err());
        assert!(interpolation_scan(1, 1e-9).is_err());
    }

    #[test]
    fn scan_rows() {
        let rows = interpolation_scan(4, 1e-9).unwrap();
        assert_eq!(rows.len(), 5);
        assert_eq!(rows[0].0, 0.0);
        assert_eq!(rows[4].0, 1.0);
        assert_eq!(rows[0].1.ne_count(), 0);
    }
}
