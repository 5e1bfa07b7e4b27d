//! Shared physical types: fundamental constants, collapse-model parameters,
//! the cubic test-mass geometry, and validated spectral-density containers.
//!
//! Everything is SI throughout the crate — kilograms, metres, seconds,
//! newtons — so no unit bookkeeping beyond [`UnitKind`] is needed.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Reduced Planck constant, J·s (exact in the 2019 SI).
pub const HBAR: f64 = 1.054_571_817e-34;

/// One unified atomic mass unit in kg (CODATA 2018). Collapse-model rates
/// are conventionally quoted per nucleon, so this is the default reference
/// mass m₀.
pub const ATOMIC_MASS_KG: f64 = 1.660_539_066_60e-27;

/// Constants a calculation is allowed to vary.
///
/// ħ is physics and never changes; `m0` is a *convention* (the mass the
/// collapse rate is referred to), so it can be overridden — the CLI exposes
/// `--m0` for exactly that.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PhysicalConstants {
    /// Reduced Planck constant, J·s.
    pub hbar: f64,
    /// Reference mass m₀, kg.
    pub m0: f64,
}

impl Default for PhysicalConstants {
    fn default() -> Self {
        PhysicalConstants {
            hbar: HBAR,
            m0: ATOMIC_MASS_KG,
        }
    }
}

impl PhysicalConstants {
    /// Default constants with a different reference mass.
    pub fn with_m0(m0: f64) -> Result<Self> {
        if !(m0.is_finite() && m0 > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "reference mass m0 must be finite and positive, got {m0:e} kg"
            )));
        }
        Ok(PhysicalConstants { m0, ..Self::default() })
    }
}

/// The two free parameters of the mass-proportional collapse model:
/// a rate and a correlation length.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CslParams {
    /// Collapse rate λ, 1/s. Zero is allowed (no collapse noise).
    pub lambda: f64,
    /// Spatial correlation length r_C, m. Strictly positive.
    pub r_c: f64,
}

impl CslParams {
    /// Ghirardi–Rimini–Weber reference values.
    pub const GRW: CslParams = CslParams {
        lambda: 1e-16,
        r_c: 1e-7,
    };

    /// Adler reference values (latent-image formation argument).
    pub const ADLER: CslParams = CslParams {
        lambda: 1e-8,
        r_c: 1e-7,
    };

    pub fn new(lambda: f64, r_c: f64) -> Result<Self> {
        if !(lambda.is_finite() && lambda >= 0.0) {
            return Err(Error::InvalidParameter(format!(
                "collapse rate lambda must be finite and non-negative, got {lambda:e} 1/s"
            )));
        }
        if !(r_c.is_finite() && r_c > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "correlation length r_c must be finite and positive, got {r_c:e} m"
            )));
        }
        Ok(CslParams { lambda, r_c })
    }
}

/// A homogeneous cubic test mass.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CubeGeometry {
    /// Total mass, kg.
    pub mass: f64,
    /// Edge length L, m.
    pub side: f64,
}

impl CubeGeometry {
    pub fn new(mass: f64, side: f64) -> Result<Self> {
        if !(mass.is_finite() && mass > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "cube mass must be finite and positive, got {mass:e} kg"
            )));
        }
        if !(side.is_finite() && side > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "cube side must be finite and positive, got {side:e} m"
            )));
        }
        Ok(CubeGeometry { mass, side })
    }

    /// The LISA Pathfinder gold–platinum test mass: 1.928 kg, 46 mm cube.
    pub fn lisa_pathfinder() -> Self {
        CubeGeometry {
            mass: 1.928,
            side: 0.046,
        }
    }

    /// Moment of inertia about an axis through the centre, parallel to a
    /// face: I = m·L²/6. All three principal values coincide for a cube.
    pub fn moment_of_inertia(&self) -> f64 {
        self.mass * (self.side * self.side) / 6.0
    }

    /// Dimensionless size β = L/r_C.
    pub fn beta(&self, r_c: f64) -> f64 {
        self.side / r_c
    }
}

/// Which degree of freedom an experiment reads out.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Channel {
    /// Torque / angular observables.
    Rotational,
    /// Force / linear observables.
    Translational,
}

impl fmt::Display for Channel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Channel::Rotational => "rotational",
            Channel::Translational => "translational",
        })
    }
}

/// What a power-spectral-density column means physically.
///
/// The CSV tag for each kind is the `snake_case2` string below; an
/// additional `_sqrt` suffix on ingest marks amplitude (root) spectral
/// densities, which are squared when read.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum UnitKind {
    /// Force PSD, N²/Hz.
    #[serde(rename = "force2_per_hz")]
    Force,
    /// Torque PSD, (N·m)²/Hz.
    #[serde(rename = "torque2_per_hz")]
    Torque,
    /// Angular-acceleration PSD, (rad/s²)²/Hz.
    #[serde(rename = "angaccel2_per_hz")]
    AngularAccel,
}

impl UnitKind {
    /// Canonical column tag used in CSV files.
    pub fn tag(self) -> &'static str {
        match self {
            UnitKind::Force => "force2_per_hz",
            UnitKind::Torque => "torque2_per_hz",
            UnitKind::AngularAccel => "angaccel2_per_hz",
        }
    }

    /// Parse a column tag. Returns the kind and whether the column holds an
    /// amplitude spectral density (`_sqrt` suffix) rather than a power one.
    pub fn parse_tag(tag: &str) -> Option<(UnitKind, bool)> {
        let (base, is_sqrt) = match tag.strip_suffix("_sqrt") {
            Some(base) => (base, true),
            None => (tag, false),
        };
        let kind = match base {
            "force2_per_hz" => UnitKind::Force,
            "torque2_per_hz" => UnitKind::Torque,
            "angaccel2_per_hz" => UnitKind::AngularAccel,
            _ => return None,
        };
        Some((kind, is_sqrt))
    }
}

impl fmt::Display for UnitKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

/// A one-sided power spectral density sampled on a positive, strictly
/// increasing frequency grid. Construction validates; the fields stay
/// private so a value of this type is always well-formed.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralDensity {
    frequencies: Vec<f64>,
    values: Vec<f64>,
    unit: UnitKind,
}

impl SpectralDensity {
    pub fn new(frequencies: Vec<f64>, values: Vec<f64>, unit: UnitKind) -> Result<Self> {
        if frequencies.is_empty() {
            return Err(Error::InvalidParameter(
                "spectral density needs at least one sample".into(),
            ));
        }
        if frequencies.len() != values.len() {
            return Err(Error::InvalidParameter(format!(
                "frequency/value length mismatch: {} vs {}",
                frequencies.len(),
                values.len()
            )));
        }
        let mut prev = 0.0;
        for (i, &f) in frequencies.iter().enumerate() {
            if !(f.is_finite() && f > 0.0) {
                return Err(Error::InvalidParameter(format!(
                    "frequency #{i} must be finite and positive, got {f:e} Hz"
                )));
            }
            if f <= prev {
                return Err(Error::InvalidParameter(format!(
                    "frequencies must be strictly increasing, but #{i} = {f:e} Hz follows {prev:e} Hz"
                )));
            }
            prev = f;
        }
        for (i, &v) in values.iter().enumerate() {
            if !(v.is_finite() && v >= 0.0) {
                return Err(Error::InvalidParameter(format!(
                    "PSD value #{i} must be finite and non-negative, got {v:e}"
                )));
            }
        }
        Ok(SpectralDensity {
            frequencies,
            values,
            unit,
        })
    }

    pub fn frequencies(&self) -> &[f64] {
        &self.frequencies
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn unit(&self) -> UnitKind {
        self.unit
    }

    pub fn len(&self) -> usize {
        self.frequencies.len()
    }

    pub fn is_empty(&self) -> bool {
        self.frequencies.is_empty()
    }

    /// Iterate over `(frequency, value)` pairs.
    pub fn iter(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.frequencies
            .iter()
            .copied()
            .zip(self.values.iter().copied())
    }

    /// Smallest PSD value among samples with f_min ≤ f ≤ f_max.
    ///
    /// Fails with [`Error::EmptyBand`] when no sample falls in the band.
    pub fn floor_in_band(&self, f_min: f64, f_max: f64) -> Result<f64> {
        if !(f_min.is_finite() && f_max.is_finite() && f_min > 0.0 && f_max >= f_min) {
            return Err(Error::InvalidParameter(format!(
                "band [{f_min:e}, {f_max:e}] Hz must be finite, positive and ordered"
            )));
        }
        self.iter()
            .filter(|&(f, _)| f >= f_min && f <= f_max)
            .map(|(_, v)| v)
            .fold(None, |acc: Option<f64>, v| {
                Some(acc.map_or(v, |a| a.min(v)))
            })
            .ok_or(Error::EmptyBand { f_min, f_max })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lisa_pathfinder_inertia_matches_hand_value() {
        let cube = CubeGeometry::lisa_pathfinder();
        assert_eq!(
            cube.moment_of_inertia(),
            6.799413333333334e-4,
            "I = 1.928 kg * (0.046 m)^2 / 6"
        );
    }

    #[test]
    fn parameter_validation_rejects_nonsense() {
        assert!(CslParams::new(-1.0, 1e-7).is_err(), "negative rate");
        assert!(CslParams::new(f64::NAN, 1e-7).is_err(), "NaN rate");
        assert!(CslParams::new(1e-8, 0.0).is_err(), "zero correlation length");
        assert!(CslParams::new(0.0, 1e-7).is_ok(), "zero rate is legal");
        assert!(CubeGeometry::new(0.0, 0.046).is_err(), "massless cube");
        assert!(CubeGeometry::new(1.0, f64::INFINITY).is_err(), "infinite side");
        assert!(PhysicalConstants::with_m0(-1.0).is_err(), "negative m0");
    }

    #[test]
    fn unit_tags_round_trip_and_sqrt_suffix_is_detected() {
        for kind in [UnitKind::Force, UnitKind::Torque, UnitKind::AngularAccel] {
            assert_eq!(UnitKind::parse_tag(kind.tag()), Some((kind, false)));
            let sqrt_tag = format!("{}_sqrt", kind.tag());
            assert_eq!(UnitKind::parse_tag(&sqrt_tag), Some((kind, true)));
            assert_eq!(format!("{kind}"), kind.tag());
        }
        assert_eq!(UnitKind::parse_tag("volts"), None);
        assert_eq!(UnitKind::parse_tag("force2_per_hz_sqrt_sqrt"), None);
    }

    #[test]
    fn unit_kind_serde_uses_the_csv_tags() {
        let json = serde_json::to_string(&UnitKind::AngularAccel).unwrap();
        assert_eq!(json, "\"angaccel2_per_hz\"");
        let back: UnitKind = serde_json::from_str(&json).unwrap();
        assert_eq!(back, UnitKind::AngularAccel);
    }

    #[test]
    fn spectral_density_validation() {
        let ok = SpectralDensity::new(vec![1.0, 2.0], vec![3.0, 4.0], UnitKind::Force);
        assert!(ok.is_ok());
        assert!(
            SpectralDensity::new(vec![], vec![], UnitKind::Force).is_err(),
            "empty grid"
        );
        assert!(
            SpectralDensity::new(vec![1.0], vec![1.0, 2.0], UnitKind::Force).is_err(),
            "length mismatch"
        );
        assert!(
            SpectralDensity::new(vec![2.0, 1.0], vec![0.0, 0.0], UnitKind::Force).is_err(),
            "decreasing frequencies"
        );
        assert!(
            SpectralDensity::new(vec![0.0, 1.0], vec![0.0, 0.0], UnitKind::Force).is_err(),
            "zero frequency"
        );
        assert!(
            SpectralDensity::new(vec![1.0], vec![-1.0], UnitKind::Force).is_err(),
            "negative PSD"
        );
    }

    #[test]
    fn band_floor_picks_the_minimum_and_flags_empty_bands() {
        let sd = SpectralDensity::new(
            vec![1e-3, 2e-3, 5e-3, 1e-2],
            vec![4.0, 1.5, 2.0, 0.5],
            UnitKind::Torque,
        )
        .unwrap();
        assert_eq!(sd.floor_in_band(1.5e-3, 6e-3).unwrap(), 1.5);
        assert_eq!(sd.floor_in_band(1e-3, 1e-2).unwrap(), 0.5);
        match sd.floor_in_band(2e-2, 3e-2) {
            Err(Error::EmptyBand { .. }) => {}
            other => panic!("expected EmptyBand, got {other:?}"),
        }
    }
}
