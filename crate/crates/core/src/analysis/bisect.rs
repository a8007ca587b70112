use serde::Serialize;

use crate::error::{Error, Result};
use crate::game::GameParams;

/// Finds a flip of `predicate` on `[lo, hi]` to within `tol`.
///
/// The predicate must differ at the endpoints. If it flips more than once,
/// one of the flips is returned.
pub fn bisect(mut predicate: impl FnMut(f64) -> bool, lo: f64, hi: f64, tol: f64) -> Result<f64> {
    if !(tol > 0.0 && tol.is_finite()) {
        return Err(Error::InvalidTolerance(tol));
    }
    let (mut lo, mut hi) = (lo, hi);
    let at_lo = predicate(lo);
    if predicate(hi) == at_lo {
        return Err(Error::NoBracket(at_lo));
    }
    while (hi - lo).abs() > tol {
        let mid = 0.5 * (lo + hi);
        if predicate(mid) == at_lo {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// A located flip on a parameter segment.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Threshold {
    /// Position along the segment, 0 at `from`, 1 at `to`.
    pub fraction: f64,
    pub params: GameParams,
}

/// Bisects `predicate` along the straight segment `from → to` of parameter
/// space. `tol` is a Euclidean distance in radians.
pub fn bisect_threshold(
    predicate: impl Fn(&GameParams) -> bool,
    from: GameParams,
    to: GameParams,
    tol: f64,
) -> Result<Threshold> {
    let length =
        ((to.gamma - from.gamma).powi(2) + (to.delta - from.delta).powi(2) + (to.eta - from.eta).powi(2)).sqrt();
    if length == 0.0 {
        return Err(Error::NoBracket(predicate(&from)));
    }
    let fraction = bisect(|s| predicate(&from.lerp(&to, s)), 0.0, 1.0, tol / length)?;
    Ok(Threshold {
        fraction,
        params: from.lerp(&to, fraction),
    })
}
