//! Logarithmic parameter grids shared by the scan operations.

use crate::error::{Error, Result};

/// `n` log-uniformly spaced points from `min` to `max`, both included
/// exactly (no rounding drift at the endpoints).
pub fn log_space(min: f64, max: f64, n: usize) -> Result<Vec<f64>> {
    if !(min.is_finite() && max.is_finite() && min > 0.0 && max > min) {
        return Err(Error::InvalidParameter(format!(
            "log grid needs 0 < min < max, got [{min:e}, {max:e}]"
        )));
    }
    if n < 2 {
        return Err(Error::InvalidParameter(format!(
            "log grid needs at least 2 points, got {n}"
        )));
    }
    let log_min = min.ln();
    let step = (max.ln() - log_min) / (n - 1) as f64;
    let mut pts: Vec<f64> = (0..n).map(|i| (log_min + step * i as f64).exp()).collect();
    pts[0] = min;
    pts[n - 1] = max;
    Ok(pts)
}
