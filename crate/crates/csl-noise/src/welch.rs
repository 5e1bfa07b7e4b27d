//! Averaged-periodogram spectral estimation for simulated trajectories.
//!
//! One-sided convention throughout: a segment of length `L` sampled at
//! `fs = 1/dt` yields `L/2 + 1` bins at `k fs / L`; interior bins carry
//! twice the raw periodogram so that the values integrate to the signal
//! power over `[0, fs/2]`. The DC and Nyquist bins are not doubled.

use rustfft::num_complex::Complex;
use rustfft::FftPlanner;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::langevin::Trajectory;
use crate::phys::{SpectralDensity, UnitKind};

/// Shortest segment worth transforming: below this the bin spacing is too
/// coarse for any of the bands this crate works in.
pub const MIN_SEGMENT_LEN: usize = 64;

/// Fewest averaged segments for a usable variance.
pub const MIN_SEGMENTS: usize = 8;

/// Taper applied to each segment before the transform.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Window {
    /// Raised cosine (periodic form); the default for noise spectra.
    Hann,
    /// No taper. Useful for diagnostics, leaky for steep spectra.
    Rectangular,
}

impl Window {
    fn weights(self, len: usize) -> Vec<f64> {
        match self {
            Window::Hann => (0..len)
                .map(|j| 0.5 * (1.0 - (std::f64::consts::TAU * j as f64 / len as f64).cos()))
                .collect(),
            Window::Rectangular => vec![1.0; len],
        }
    }
}

/// Which time series of a trajectory to analyse.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Observable {
    Coordinate,
    Momentum,
    /// Second central difference of the coordinate divided by `dt^2`; two
    /// samples shorter than the trajectory.
    Acceleration,
}

/// A one-sided power spectral density estimate.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PsdEstimate {
    frequencies: Vec<f64>,
    values: Vec<f64>,
    segment_count: usize,
    window: Window,
}

impl PsdEstimate {
    /// Bin centres from 0 to the Nyquist frequency, inclusive.
    pub fn frequencies(&self) -> &[f64] {
        &self.frequencies
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// How many (half-overlapping) segments were averaged.
    pub fn segment_count(&self) -> usize {
        self.segment_count
    }

    pub fn window(&self) -> Window {
        self.window
    }

    /// Bin spacing in Hz.
    pub fn frequency_resolution(&self) -> f64 {
        self.frequencies[1] - self.frequencies[0]
    }

    /// Mean of the estimate over all bins inside the closed band.
    pub fn band_mean(&self, f_min: f64, f_max: f64) -> Result<f64> {
        if !(f_min.is_finite() && f_max.is_finite() && f_min <= f_max) {
            return Err(Error::InvalidParameter(format!(
                "band [{f_min:e}, {f_max:e}] Hz must be finite and ordered"
            )));
        }
        let mut sum = 0.0;
        let mut count = 0usize;
        for (f, v) in self.frequencies.iter().zip(&self.values) {
            if *f >= f_min && *f <= f_max {
                sum += v;
                count += 1;
            }
        }
        if count == 0 {
            return Err(Error::EmptyBand { f_min, f_max });
        }
        Ok(sum / count as f64)
    }

    /// Repackage the estimate as a [`SpectralDensity`] with a physical unit
    /// tag, dropping the zero-frequency bin.
    pub fn to_spectral_density(&self, unit: UnitKind) -> Result<SpectralDensity> {
        SpectralDensity::new(
            self.frequencies[1..].to_vec(),
            self.values[1..].to_vec(),
            unit,
        )
    }
}

fn extract_series(trajectory: &Trajectory, observable: Observable) -> Result<Vec<f64>> {
    match observable {
        Observable::Coordinate => Ok(trajectory.coordinates().to_vec()),
        Observable::Momentum => Ok(trajectory.momenta().to_vec()),
        Observable::Acceleration => {
            let x = trajectory.coordinates();
            if x.len() < 3 {
                return Err(Error::InvalidParameter(format!(
                    "acceleration needs at least 3 samples, got {}",
                    x.len()
                )));
            }
            let inv_dt2 = 1.0 / (trajectory.dt() * trajectory.dt());
            Ok(x.windows(3)
                .map(|w| (w[2] - 2.0 * w[1] + w[0]) * inv_dt2)
                .collect())
        }
    }
}

/// Largest power of two not exceeding `n` (`n >= 1`).
fn floor_power_of_two(n: usize) -> usize {
    if n.is_power_of_two() {
        n
    } else {
        n.next_power_of_two() / 2
    }
}

/// Estimate the one-sided power spectral density of a trajectory
/// observable by averaging modified periodograms over half-overlapping
/// segments.
///
/// `segments` is the *minimum* number of averages: the segment length is
/// the largest power of two giving at least that many half-overlapping
/// segments, and every full segment is then used. Fails with
/// [`Error::TooShort`] when that length would drop under
/// [`MIN_SEGMENT_LEN`] samples.
pub fn welch_psd(
    trajectory: &Trajectory,
    observable: Observable,
    segments: usize,
    window: Window,
) -> Result<PsdEstimate> {
    if segments < MIN_SEGMENTS {
        return Err(Error::InvalidParameter(format!(
            "at least {MIN_SEGMENTS} segments are needed for a stable average, got {segments}"
        )));
    }
    let series = extract_series(trajectory, observable)?;
    let n = series.len();

    let budget = 2 * n / (segments + 1);
    if budget < MIN_SEGMENT_LEN {
        return Err(Error::TooShort {
            samples: n,
            segments,
            min_segment: MIN_SEGMENT_LEN,
        });
    }
    let seg_len = floor_power_of_two(budget);
    let hop = seg_len / 2;
    let count = (n - seg_len) / hop + 1;

    let weights = window.weights(seg_len);
    let weight_power: f64 = weights.iter().map(|w| w * w).sum();
    let fs = 1.0 / trajectory.dt();

    let fft = FftPlanner::new().plan_fft_forward(seg_len);
    let bins = seg_len / 2 + 1;
    let mut accumulated = vec![0.0_f64; bins];
    let mut buffer: Vec<Complex<f64>> = vec![Complex::new(0.0, 0.0); seg_len];
    for s in 0..count {
        let offset = s * hop;
        for (j, slot) in buffer.iter_mut().enumerate() {
            *slot = Complex::new(series[offset + j] * weights[j], 0.0);
        }
        fft.process(&mut buffer);
        for (k, acc) in accumulated.iter_mut().enumerate() {
            *acc += buffer[k].norm_sqr();
        }
    }

    let scale = 1.0 / (fs * weight_power * count as f64);
    let values: Vec<f64> = accumulated
        .iter()
        .enumerate()
        .map(|(k, &a)| {
            let one_sided = if k == 0 || k == seg_len / 2 { 1.0 } else { 2.0 };
            one_sided * a * scale
        })
        .collect();
    let frequencies: Vec<f64> = (0..bins).map(|k| k as f64 * fs / seg_len as f64).collect();

    Ok(PsdEstimate {
        frequencies,
        values,
        segment_count: count,
        window,
    })
}

/// Bin-wise mean of several estimates on the identical frequency grid
/// (an ensemble of trajectories analysed with the same settings). The
/// averaged estimate reports the summed segment count.
pub fn average_estimates(estimates: &[PsdEstimate]) -> Result<PsdEstimate> {
    let first = estimates.first().ok_or_else(|| {
        Error::InvalidParameter("cannot average zero spectral estimates".into())
    })?;
    let mut values = vec![0.0_f64; first.values.len()];
    let mut segment_count = 0usize;
    for estimate in estimates {
        if estimate.frequencies != first.frequencies || estimate.window != first.window {
            return Err(Error::InvalidParameter(
                "estimates must share the frequency grid and window to be averaged".into(),
            ));
        }
        for (acc, v) in values.iter_mut().zip(&estimate.values) {
            *acc += v;
        }
        segment_count += estimate.segment_count;
    }
    let norm = 1.0 / estimates.len() as f64;
    for v in &mut values {
        *v *= norm;
    }
    Ok(PsdEstimate {
        frequencies: first.frequencies.clone(),
        values,
        segment_count,
        window: first.window,
    })
}
