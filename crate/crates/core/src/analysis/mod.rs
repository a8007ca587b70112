//! Parameter sweeps, threshold bisection, boundary extraction, ellipse fits
//! and the GHZ↔W interpolation.

mod bisect;
mod boundary;
mod ellipse;
mod interp;
mod sweep;
pub mod thresholds;

pub use bisect::{bisect, bisect_threshold, Threshold};
pub use boundary::{extract_boundary, reflect_delta, PlanePoint};
pub use ellipse::{fit_ellipse, fit_ellipse_centered, EllipseFit};
pub use interp::{ghz_point, interpolation_path, interpolation_scan, w_gamma, w_point};
pub use sweep::{sweep, AxisRange, Sweep, SweepGrid, SweepRecord, DEFAULT_GRID_STEPS};
pub use thresholds::{compute_thresholds, ThresholdConfig, ThresholdReport};
