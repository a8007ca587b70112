//! Scalar summaries of the equilibrium map: bisected thresholds, fitted
//! region ellipses and boundary concurrence statistics.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4};

use serde::Serialize;

use super::bisect::{bisect_threshold, Threshold};
use super::boundary::{extract_boundary, reflect_delta, PlanePoint};
use super::ellipse::{fit_ellipse, EllipseFit};
use super::interp::interpolation_path;
use super::sweep::{sweep, Sweep, SweepGrid, SweepRecord, DEFAULT_GRID_STEPS};
use crate::entanglement::pairwise_concurrences;
use crate::equilibrium::{find_pure_ne, EquilibriumReport, EquilibriumType, DEFAULT_EPSILON};
use crate::error::Result;
use crate::game::{GameParams, Move, PayoffTable, StrategyProfile};

/// Tolerance for matching the mutual-cooperation payoffs.
pub const PARETO_TOL: f64 = 1e-6;

pub fn has_equilibrium(params: &GameParams, epsilon: f64) -> bool {
    !find_pure_ne(params, epsilon).is_empty()
}

pub fn has_type(params: &GameParams, kind: EquilibriumType, epsilon: f64) -> bool {
    find_pure_ne(params, epsilon).contains_type(kind)
}

/// Some equilibrium pays exactly the mutual-cooperation entry of the default table.
pub fn has_pareto_payoffs(report: &EquilibriumReport) -> bool {
    let cc = PayoffTable::default().get(Move::Cooperate, Move::Cooperate);
    report
        .equilibria
        .iter()
        .any(|e| e.payoffs.max_abs_diff(&cc) < PARETO_TOL)
}

/// Mean, minimum and maximum of a sample.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Stats {
    pub mean: f64,
    pub min: f64,
    pub max: f64,
    pub count: usize,
}

impl Stats {
    pub fn of(values: impl IntoIterator<Item = f64>) -> Option<Stats> {
        let mut s = Stats {
            mean: 0.0,
            min: f64::INFINITY,
            max: f64::NEG_INFINITY,
            count: 0,
        };
        for v in values {
            s.mean += v;
            s.min = s.min.min(v);
            s.max = s.max.max(v);
            s.count += 1;
        }
        if s.count == 0 {
            return None;
        }
        s.mean /= s.count as f64;
        Some(s)
    }
}

/// Boundary of the region with no equilibrium.
pub fn no_equilibrium_boundary(sweep: &Sweep) -> Vec<PlanePoint> {
    extract_boundary(sweep, |r| r.ne_count() == 0)
}

/// Boundary of the region whose equilibria include the mutual-cooperation
/// payoffs, restricted to `γ ≤ π/2`.
pub fn pareto_plateau_boundary(sweep: &Sweep) -> Vec<PlanePoint> {
    extract_boundary(sweep, |r| has_pareto_payoffs(&r.report))
        .into_iter()
        .filter(|p| p.gamma <= FRAC_PI_2 + 1e-12)
        .collect()
}

/// Ellipse through the no-equilibrium boundary, completed by the `δ → −δ`
/// symmetry of the equilibrium map.
pub fn fit_no_equilibrium_region(sweep: &Sweep) -> Result<EllipseFit> {
    fit_ellipse(&reflect_delta(&no_equilibrium_boundary(sweep), 0.0))
}

/// Ellipse through the cooperation plateau boundary, completed by the
/// `δ → π − δ` symmetry of the equilibrium map.
pub fn fit_pareto_plateau(sweep: &Sweep) -> Result<EllipseFit> {
    fit_ellipse(&reflect_delta(&pareto_plateau_boundary(sweep), FRAC_PI_2))
}

/// `c_AB` evaluated at each no-equilibrium boundary point.
pub fn no_equilibrium_contour_concurrence(sweep: &Sweep) -> Option<Stats> {
    let eta = sweep.grid.eta;
    Stats::of(no_equilibrium_boundary(sweep).iter().map(|p| {
        pairwise_concurrences(&GameParams {
            gamma: p.gamma,
            delta: p.delta,
            eta,
        })
        .ab
    }))
}

/// On the grid column nearest `delta`, the first γ (walking up from the
/// smallest grid γ) where `profile` stops being an equilibrium, as the
/// midpoint of the flipping edge. `None` if it never is one there or never
/// stops.
pub fn profile_upper_gamma(sweep: &Sweep, profile: StrategyProfile, delta: f64) -> Option<f64> {
    let j = sweep.grid.delta.nearest(delta);
    let present = |i: usize| sweep.record(i, j).report.contains(profile);
    let n = sweep.grid.gamma.steps;
    let first = (0..n).find(|&i| present(i))?;
    (first..n - 1)
        .find(|&i| present(i) && !present(i + 1))
        .map(|i| 0.5 * (sweep.grid.gamma.value(i) + sweep.grid.gamma.value(i + 1)))
}

/// All scalar claims computed from one sweep plus targeted bisections.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ThresholdReport {
    /// Equilibrium existence along `δ = η = 0`, `γ ∈ [1.0, 1.3]`.
    pub baseline_gamma: Threshold,
    /// Equilibrium existence along `γ = π/2`, `δ ∈ [0.2, 0.5]`.
    pub existence_delta: Threshold,
    /// Type-F existence along `γ = π/2`, `δ ∈ [0.45, 0.7]`.
    pub cooperation_delta: Threshold,
    /// Equilibrium existence along the GHZ→W path.
    pub interpolation_t: Threshold,
    pub no_equilibrium_ellipse: EllipseFit,
    pub no_equilibrium_regions: Vec<usize>,
    pub plateau_ellipse: EllipseFit,
    pub contour_concurrence: Option<Stats>,
    /// Upper γ edge of the `(X, Z)` family at `δ = π/4`.
    pub type_h_edge: Option<f64>,
    /// Upper γ edge of the `(Y, X)` family at `δ = π/4`.
    pub yx_edge: Option<f64>,
}

/// Knobs for [`compute_thresholds`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThresholdConfig {
    pub grid_steps: usize,
    pub epsilon: f64,
    /// Bisection tolerance, radians (or `t` units on the interpolation path).
    pub tolerance: f64,
}

impl Default for ThresholdConfig {
    fn default() -> Self {
        ThresholdConfig {
            grid_steps: DEFAULT_GRID_STEPS,
            epsilon: DEFAULT_EPSILON,
            tolerance: 1e-6,
        }
    }
}

pub fn compute_thresholds(config: &ThresholdConfig) -> Result<ThresholdReport> {
    let eps = config.epsilon;
    let exists = |p: &GameParams| has_equilibrium(p, eps);
    let line = |g0: f64, d0: f64, g1: f64, d1: f64| {
        (
            GameParams::with_gamma_delta(g0, d0),
            GameParams::with_gamma_delta(g1, d1),
        )
    };

    let (a, b) = line(1.0, 0.0, 1.3, 0.0);
    let baseline_gamma = bisect_threshold(exists, a, b, config.tolerance)?;
    let (a, b) = line(FRAC_PI_2, 0.2, FRAC_PI_2, 0.5);
    let existence_delta = bisect_threshold(exists, a, b, config.tolerance)?;
    let (a, b) = line(FRAC_PI_2, 0.45, FRAC_PI_2, 0.7);
    let cooperation_delta = bisect_threshold(|p| has_type(p, EquilibriumType::F, eps), a, b, config.tolerance)?;
    // The path is affine in (γ, δ, η), so bisecting on the segment is bisecting in t.
    let (a, b) = (interpolation_path(0.0)?, interpolation_path(1.0)?);
    let length = ((b.gamma - a.gamma).powi(2) + (b.delta - a.delta).powi(2) + (b.eta - a.eta).powi(2)).sqrt();
    let interpolation_t = bisect_threshold(exists, a, b, config.tolerance * length)?;

    let s = sweep(&SweepGrid::standard(config.grid_steps)?, eps);
    use crate::game::Strategy::*;
    Ok(ThresholdReport {
        baseline_gamma,
        existence_delta,
        cooperation_delta,
        interpolation_t,
        no_equilibrium_ellipse: fit_no_equilibrium_region(&s)?,
        no_equilibrium_regions: s.regions(|r: &SweepRecord| r.ne_count() == 0),
        plateau_ellipse: fit_pareto_plateau(&s)?,
        contour_concurrence: no_equilibrium_contour_concurrence(&s),
        type_h_edge: profile_upper_gamma(&s, StrategyProfile::new(X, Z), FRAC_PI_4),
        yx_edge: profile_upper_gamma(&s, StrategyProfile::new(Y, X), FRAC_PI_4),
    })
}

/// One printable line of a [`ThresholdReport`].
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReportRow {
    pub claim: &'static str,
    pub reference: String,
    pub computed: String,
}

impl ThresholdReport {
    pub fn rows(&self) -> Vec<ReportRow> {
        let row = |claim, reference: &str, computed: String| ReportRow {
            claim,
            reference: reference.to_string(),
            computed,
        };
        let ellipse = |e: &EllipseFit| {
            format!(
                "center=({:.4}, {:.4}) r_gamma={:.4} r_delta={:.4} rms={:.3e}",
                e.center.gamma, e.center.delta, e.radius_gamma, e.radius_delta, e.rms_residual
            )
        };
        let opt = |x: Option<f64>| x.map_or_else(|| "none".to_string(), |v| format!("{v:.4}"));
        vec![
            row(
                "baseline_gamma",
                "1.15",
                format!("{:.4}", self.baseline_gamma.params.gamma),
            ),
            row(
                "existence_delta",
                "0.41",
                format!("{:.4}", self.existence_delta.params.delta),
            ),
            row(
                "cooperation_delta",
                "0.56",
                format!("{:.4}", self.cooperation_delta.params.delta),
            ),
            row(
                "interpolation_t",
                "0.4",
                format!("{:.4}", self.interpolation_t.fraction),
            ),
            row(
                "no_ne_ellipse",
                "center=(1.5708, 0.0000) r_gamma=0.42 r_delta=0.41",
                ellipse(&self.no_equilibrium_ellipse),
            ),
            row(
                "no_ne_regions",
                "1",
                format!(
                    "{} {:?}",
                    self.no_equilibrium_regions.len(),
                    self.no_equilibrium_regions
                ),
            ),
            row(
                "plateau_ellipse",
                "center=(1.5708, 1.5708) r_gamma=0.90 r_delta=1.00",
                ellipse(&self.plateau_ellipse),
            ),
            row(
                "contour_c_ab",
                "0.91",
                self.contour_concurrence.map_or_else(
                    || "none".to_string(),
                    |s| format!("mean={:.4} min={:.4} max={:.4} n={}", s.mean, s.min, s.max, s.count),
                ),
            ),
            row("type_h_edge_at_pi/4", "0.98", opt(self.type_h_edge)),
            row("yx_edge_at_pi/4", "-", opt(self.yx_edge)),
        ]
    }
}
