use nalgebra::{Matrix2, Matrix4, Vector2, Vector4};
use serde::Serialize;

use super::boundary::PlanePoint;
use crate::error::{Error, Result};

/// Axis-aligned ellipse `((γ−γ₀)/r_γ)² + ((δ−δ₀)/r_δ)² = 1`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EllipseFit {
    pub center: PlanePoint,
    pub radius_gamma: f64,
    pub radius_delta: f64,
    /// Root-mean-square of `((γ−γ₀)/r_γ)² + ((δ−δ₀)/r_δ)² − 1` over the input.
    pub rms_residual: f64,
}

impl EllipseFit {
    pub fn residual(&self, p: &PlanePoint) -> f64 {
        let u = (p.gamma - self.center.gamma) / self.radius_gamma;
        let v = (p.delta - self.center.delta) / self.radius_delta;
        u * u + v * v - 1.0
    }

    pub fn contains(&self, p: &PlanePoint) -> bool {
        self.residual(p) < 0.0
    }

    fn with_rms(mut self, points: &[PlanePoint]) -> Self {
        let ss: f64 = points.iter().map(|p| self.residual(p).powi(2)).sum();
        self.rms_residual = (ss / points.len() as f64).sqrt();
        self
    }
}

/// Least-squares fit with free center and radii.
///
/// Solves the normal equations of the linearization
/// `a·x² + c·y² + d·x + e·y = 1` (coordinates taken relative to the centroid),
/// then converts to center/radius form.
pub fn fit_ellipse(points: &[PlanePoint]) -> Result<EllipseFit> {
    if points.len() < 5 {
        return Err(Error::Fit(format!("need at least 5 points, got {}", points.len())));
    }
    let n = points.len() as f64;
    let mx = points.iter().map(|p| p.gamma).sum::<f64>() / n;
    let my = points.iter().map(|p| p.delta).sum::<f64>() / n;

    let mut normal = Matrix4::<f64>::zeros();
    let mut rhs = Vector4::<f64>::zeros();
    for p in points {
        let (x, y) = (p.gamma - mx, p.delta - my);
        let row = Vector4::new(x * x, y * y, x, y);
        normal += row * row.transpose();
        rhs += row;
    }
    let coef = solve_spd(normal, rhs)?;
    let (a, c, d, e) = (coef[0], coef[1], coef[2], coef[3]);
    if a <= 0.0 || c <= 0.0 {
        return Err(Error::Fit(format!("conic is not an ellipse (a = {a:e}, c = {c:e})")));
    }
    let (x0, y0) = (-d / (2.0 * a), -e / (2.0 * c));
    let k = 1.0 + a * x0 * x0 + c * y0 * y0;
    if k <= 0.0 {
        return Err(Error::Fit("conic has no real points".into()));
    }
    Ok(EllipseFit {
        center: PlanePoint::new(x0 + mx, y0 + my),
        radius_gamma: (k / a).sqrt(),
        radius_delta: (k / c).sqrt(),
        rms_residual: 0.0,
    }
    .with_rms(points))
}

/// Radii-only fit around a prescribed center.
pub fn fit_ellipse_centered(points: &[PlanePoint], center: PlanePoint) -> Result<EllipseFit> {
    if points.len() < 2 {
        return Err(Error::Fit(format!("need at least 2 points, got {}", points.len())));
    }
    let mut normal = Matrix2::<f64>::zeros();
    let mut rhs = Vector2::<f64>::zeros();
    for p in points {
        let (x, y) = (p.gamma - center.gamma, p.delta - center.delta);
        let row = Vector2::new(x * x, y * y);
        normal += row * row.transpose();
        rhs += row;
    }
    let coef = normal
        .cholesky()
        .ok_or_else(|| Error::Fit("degenerate point set".into()))?
        .solve(&rhs);
    if coef[0] <= 0.0 || coef[1] <= 0.0 {
        return Err(Error::Fit("conic is not an ellipse".into()));
    }
    Ok(EllipseFit {
        center,
        radius_gamma: coef[0].recip().sqrt(),
        radius_delta: coef[1].recip().sqrt(),
        rms_residual: 0.0,
    }
    .with_rms(points))
}

fn solve_spd(normal: Matrix4<f64>, rhs: Vector4<f64>) -> Result<Vector4<f64>> {
    // Reject near-singular systems (collinear or repeated points) up front;
    // Cholesky alone accepts them when rounding keeps the pivots positive.
    let eig = normal.symmetric_eigenvalues();
    let (lo, hi) = eig
        .iter()
        .fold((f64::INFINITY, 0.0f64), |(lo, hi), &e| (lo.min(e), hi.max(e.abs())));
    if lo.is_nan() || lo <= hi * 1e-13 {
        return Err(Error::Fit("degenerate point set".into()));
    }
    normal
        .cholesky()
        .map(|ch| ch.solve(&rhs))
        .ok_or_else(|| Error::Fit("degenerate point set".into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_2, PI};

    fn ring(center: PlanePoint, rg: f64, rd: f64, n: usize, from: f64, to: f64) -> Vec<PlanePoint> {
        (0..n)
            .map(|k| {
                let t = from + (to - from) * k as f64 / n as f64;
                PlanePoint::new(center.gamma + rg * t.cos(), center.delta + rd * t.sin())
            })
            .collect()
    }

    #[test]
    fn recovers_synthetic_ellipse() {
        let c = PlanePoint::new(FRAC_PI_2, 0.0);
        let fit = fit_ellipse(&ring(c, 0.42, 0.41, 100, 0.0, 2.0 * PI)).unwrap();
        assert!((fit.center.gamma - FRAC_PI_2).abs() < 1e-6);
        assert!(fit.center.delta.abs() < 1e-6);
        assert!((fit.radius_gamma - 0.42).abs() < 1e-6);
        assert!((fit.radius_delta - 0.41).abs() < 1e-6);
        assert!(fit.rms_residual < 1e-9);
    }

    #[test]
    fn recovers_from_an_arc() {
        let c = PlanePoint::new(1.0, 2.0);
        let fit = fit_ellipse(&ring(c, 0.9, 0.3, 40, 0.2, 2.5)).unwrap();
        assert!((fit.radius_gamma - 0.9).abs() < 1e-6);
        assert!((fit.radius_delta - 0.3).abs() < 1e-6);
    }

    #[test]
    fn centered_fit() {
        let c = PlanePoint::new(FRAC_PI_2, FRAC_PI_2);
        let fit = fit_ellipse_centered(&ring(c, 0.9, 1.0, 30, PI, 1.5 * PI), c).unwrap();
        assert!((fit.radius_gamma - 0.9).abs() < 1e-9);
        assert!((fit.radius_delta - 1.0).abs() < 1e-9);
    }

    #[test]
    fn too_few_points() {
        let pts = ring(PlanePoint::new(0.0, 0.0), 1.0, 1.0, 4, 0.0, 2.0 * PI);
        assert!(matches!(fit_ellipse(&pts), Err(Error::Fit(_))));
    }

    #[test]
    fn collinear_points() {
        let pts: Vec<PlanePoint> = (0..10).map(|k| PlanePoint::new(k as f64, 2.0 * k as f64)).collect();
        assert!(matches!(fit_ellipse(&pts), Err(Error::Fit(_))));
    }

    #[test]
    fn order_independent() {
        let mut pts = ring(PlanePoint::new(0.3, 0.7), 0.5, 0.2, 50, 0.0, 2.0 * PI);
        let a = fit_ellipse(&pts).unwrap();
        pts.reverse();
        let b = fit_ellipse(&pts).unwrap();
        assert!((a.radius_gamma - b.radius_gamma).abs() < 1e-12);
        assert!((a.center.delta - b.center.delta).abs() < 1e-12);
    }
}
