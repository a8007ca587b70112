use rayon::prelude::*;
use serde::Serialize;

use crate::entanglement::{pairwise_concurrences, ConcurrenceTriple};
use crate::equilibrium::{find_pure_ne, EquilibriumReport};
use crate::error::{Error, Result};
use crate::game::GameParams;

/// Inclusive, uniformly spaced axis `lo, …, hi` with `steps` points.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AxisRange {
    pub lo: f64,
    pub hi: f64,
    pub steps: usize,
}

impl AxisRange {
    pub fn new(lo: f64, hi: f64, steps: usize) -> Result<Self> {
        if steps < 2 {
            return Err(Error::InvalidGrid(format!("need at least 2 steps, got {steps}")));
        }
        if !(lo.is_finite() && hi.is_finite()) || lo >= hi {
            return Err(Error::InvalidGrid(format!("empty range [{lo}, {hi}]")));
        }
        Ok(AxisRange { lo, hi, steps })
    }

    pub fn value(&self, k: usize) -> f64 {
        if k + 1 == self.steps {
            return self.hi;
        }
        self.lo + (self.hi - self.lo) * k as f64 / (self.steps - 1) as f64
    }

    pub fn spacing(&self) -> f64 {
        (self.hi - self.lo) / (self.steps - 1) as f64
    }

    /// Index of the grid value nearest to `x`.
    pub fn nearest(&self, x: f64) -> usize {
        let k = ((x - self.lo) / self.spacing()).round();
        k.clamp(0.0, (self.steps - 1) as f64) as usize
    }

    pub fn values(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.steps).map(|k| self.value(k))
    }
}

/// A `(γ, δ)` grid at fixed `η`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SweepGrid {
    pub gamma: AxisRange,
    pub delta: AxisRange,
    pub eta: f64,
}

/// Points per axis of the default grid.
pub const DEFAULT_GRID_STEPS: usize = 201;

impl SweepGrid {
    pub fn new(gamma: AxisRange, delta: AxisRange, eta: f64) -> Result<Self> {
        if !eta.is_finite() {
            return Err(Error::InvalidGrid(format!("eta = {eta}")));
        }
        Ok(SweepGrid { gamma, delta, eta })
    }

    /// `γ ∈ [0, π]`, `δ ∈ [0, π/2]`, `steps × steps` points, `η = 0`.
    pub fn standard(steps: usize) -> Result<Self> {
        use std::f64::consts::{FRAC_PI_2, PI};
        SweepGrid::new(
            AxisRange::new(0.0, PI, steps)?,
            AxisRange::new(0.0, FRAC_PI_2, steps)?,
            0.0,
        )
    }

    pub fn len(&self) -> usize {
        self.gamma.steps * self.delta.steps
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Row-major (γ outer) position of grid point `(i, j)`.
    pub fn index(&self, i: usize, j: usize) -> usize {
        i * self.delta.steps + j
    }

    pub fn params(&self, i: usize, j: usize) -> GameParams {
        GameParams {
            gamma: self.gamma.value(i),
            delta: self.delta.value(j),
            eta: self.eta,
        }
    }
}

impl Default for SweepGrid {
    fn default() -> Self {
        SweepGrid::standard(DEFAULT_GRID_STEPS).expect("valid default grid")
    }
}

/// Equilibria and concurrences at one grid point.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepRecord {
    pub params: GameParams,
    pub report: EquilibriumReport,
    pub concurrences: ConcurrenceTriple,
}

impl SweepRecord {
    pub fn evaluate(params: &GameParams, epsilon: f64) -> Self {
        SweepRecord {
            params: *params,
            report: find_pure_ne(params, epsilon),
            concurrences: pairwise_concurrences(params),
        }
    }

    pub fn ne_count(&self) -> usize {
        self.report.len()
    }
}

/// The records of a completed sweep, kept together with their grid.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Sweep {
    pub grid: SweepGrid,
    /// Row-major, γ outer.
    pub records: Vec<SweepRecord>,
}

impl Sweep {
    pub fn record(&self, i: usize, j: usize) -> &SweepRecord {
        &self.records[self.grid.index(i, j)]
    }

    /// Number of 4-connected regions where `predicate` holds, with their sizes
    /// in discovery order.
    pub fn regions(&self, predicate: impl Fn(&SweepRecord) -> bool) -> Vec<usize> {
        let (ni, nj) = (self.grid.gamma.steps, self.grid.delta.steps);
        let mask: Vec<bool> = self.records.iter().map(&predicate).collect();
        let mut seen = vec![false; mask.len()];
        let mut sizes = Vec::new();
        for start in 0..mask.len() {
            if !mask[start] || seen[start] {
                continue;
            }
            seen[start] = true;
            let mut stack = vec![start];
            let mut size = 0;
            while let Some(k) = stack.pop() {
                size += 1;
                let (i, j) = (k / nj, k % nj);
                let mut visit = |ii: usize, jj: usize| {
                    let n = ii * nj + jj;
                    if mask[n] && !seen[n] {
                        seen[n] = true;
                        stack.push(n);
                    }
                };
                if i > 0 {
                    visit(i - 1, j);
                }
                if i + 1 < ni {
                    visit(i + 1, j);
                }
                if j > 0 {
                    visit(i, j - 1);
                }
                if j + 1 < nj {
                    visit(i, j + 1);
                }
            }
            sizes.push(size);
        }
        sizes
    }
}

/// Evaluates every grid point. Work is spread over the rayon pool, but the
/// records come back in grid order whatever the thread count.
pub fn sweep(grid: &SweepGrid, epsilon: f64) -> Sweep {
    let nj = grid.delta.steps;
    let records = (0..grid.len())
        .into_par_iter()
        .map(|k| SweepRecord::evaluate(&grid.params(k / nj, k % nj), epsilon))
        .collect();
    Sweep { grid: *grid, records }
}
