//! Turning measured noise spectra into exclusion bounds on the collapse
//! parameter plane.
//!
//! The pipeline is: ingest a one-sided power spectral density for a known
//! test-mass geometry, reduce it to a scalar noise floor over an analysis
//! band, and divide by the unit-rate collapse diffusion coefficient to get
//! the largest collapse rate `lambda_max(r_c)` compatible with the data.
//! Everything above the resulting curve is excluded.

use serde::{Deserialize, Serialize};

use crate::diffusion::{eta_r_cube, eta_v_cube};
use crate::error::{Error, Result};
use crate::grid::log_space;
use crate::phys::{Channel, CslParams, CubeGeometry, PhysicalConstants, SpectralDensity, UnitKind};

/// Default analysis band in Hz: the decade where torsion-balance style
/// experiments are limited by a flat actuation/readout floor rather than by
/// the suspension resonance or high-frequency sensing noise.
pub const DEFAULT_BAND: Band = Band {
    f_min: 1e-3,
    f_max: 1e-2,
};

/// Default correlation-length grid: 300 logarithmic points per
/// [`default_r_c_grid`].
pub const DEFAULT_GRID_POINTS: usize = 300;

/// A closed frequency interval in Hz.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Band {
    pub f_min: f64,
    pub f_max: f64,
}

impl Band {
    /// A validated band: both edges finite, `0 < f_min <= f_max`.
    pub fn new(f_min: f64, f_max: f64) -> Result<Self> {
        if !(f_min.is_finite() && f_max.is_finite() && f_min > 0.0 && f_min <= f_max) {
            return Err(Error::InvalidParameter(format!(
                "band must satisfy 0 < f_min <= f_max with finite edges, got [{f_min}, {f_max}]"
            )));
        }
        Ok(Self { f_min, f_max })
    }
}

/// A measured spectrum tied to the apparatus that produced it.
///
/// Construction validates the cross-field invariants, so a value of this
/// type is always internally consistent:
/// * the analysis band lies inside the frequency range of the spectrum,
/// * the spectrum's unit matches the channel (angular acceleration or torque
///   density for [`Channel::Rotational`], force density for
///   [`Channel::Translational`]).
#[derive(Debug, Clone)]
pub struct ExperimentRecord {
    geometry: CubeGeometry,
    spectrum: SpectralDensity,
    channel: Channel,
    band: Band,
}

impl ExperimentRecord {
    pub fn new(
        geometry: CubeGeometry,
        spectrum: SpectralDensity,
        channel: Channel,
        band: Band,
    ) -> Result<Self> {
        let allowed: &[UnitKind] = match channel {
            Channel::Rotational => &[UnitKind::AngularAccel, UnitKind::Torque],
            Channel::Translational => &[UnitKind::Force],
        };
        if !allowed.contains(&spectrum.unit()) {
            return Err(Error::UnitMismatch {
                expected: allowed[0],
                found: spectrum.unit(),
            });
        }
        let freqs = spectrum.frequencies();
        let (first, last) = (freqs[0], freqs[freqs.len() - 1]);
        if band.f_min < first || band.f_max > last {
            return Err(Error::InvalidParameter(format!(
                "analysis band [{}, {}] Hz is not covered by the spectrum range [{first}, {last}] Hz",
                band.f_min, band.f_max
            )));
        }
        Ok(Self {
            geometry,
            spectrum,
            channel,
            band,
        })
    }

    pub fn geometry(&self) -> &CubeGeometry {
        &self.geometry
    }

    pub fn spectrum(&self) -> &SpectralDensity {
        &self.spectrum
    }

    pub fn channel(&self) -> Channel {
        self.channel
    }

    pub fn band(&self) -> Band {
        self.band
    }
}

/// Convert a one-sided angular-acceleration density (1/(s^4 Hz)) into the
/// equivalent torque density (N^2 m^2/Hz) for a rigid body of the given
/// geometry.
///
/// The relative angle of two bodies obeys `d^2(phi)/dt^2 = 2 tau / I`, so a
/// measured angular-acceleration density maps to torque as
/// `S_tau = (I/2)^2 S_dgamma`. Fails with [`Error::UnitMismatch`] unless the
/// input is tagged as angular acceleration.
pub fn torque_dns_from_angular_accel(
    s_dgamma: &SpectralDensity,
    geometry: &CubeGeometry,
) -> Result<SpectralDensity> {
    if s_dgamma.unit() != UnitKind::AngularAccel {
        return Err(Error::UnitMismatch {
            expected: UnitKind::AngularAccel,
            found: s_dgamma.unit(),
        });
    }
    let inertia = geometry.moment_of_inertia();
    let factor = 0.25 * inertia * inertia;
    let values: Vec<f64> = s_dgamma.values().iter().map(|v| factor * v).collect();
    SpectralDensity::new(s_dgamma.frequencies().to_vec(), values, UnitKind::Torque)
}

/// The record's spectrum in the unit that the diffusion coefficients are
/// compared against: torque density for the rotational channel (converting
/// angular acceleration if necessary), force density for the translational
/// one.
fn comparison_spectrum(record: &ExperimentRecord) -> Result<SpectralDensity> {
    match (record.channel(), record.spectrum().unit()) {
        (Channel::Rotational, UnitKind::AngularAccel) => {
            torque_dns_from_angular_accel(record.spectrum(), record.geometry())
        }
        _ => Ok(record.spectrum().clone()),
    }
}

/// The scalar noise floor of the record: the minimum of the converted
/// density over the analysis band.
pub fn dns_floor(record: &ExperimentRecord) -> Result<f64> {
    let band = record.band();
    comparison_spectrum(record)?.floor_in_band(band.f_min, band.f_max)
}

/// The largest collapse rate compatible with a given noise floor, for one
/// correlation length. Shared by [`lambda_max`] and [`exclusion_curve`] so
/// the curve is bit-for-bit the pointwise map.
fn lambda_max_from_floor(
    floor: f64,
    channel: Channel,
    geometry: &CubeGeometry,
    r_c: f64,
    consts: &PhysicalConstants,
) -> Result<f64> {
    if !(floor.is_finite() && floor > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "noise floor must be finite and positive to bound the collapse rate, got {floor:e}"
        )));
    }
    let unit_rate = CslParams::new(1.0, r_c)?;
    let eta = match channel {
        Channel::Rotational => eta_r_cube(geometry, &unit_rate, consts),
        Channel::Translational => eta_v_cube(geometry, &unit_rate, consts),
    };
    let bound = floor / (consts.hbar * consts.hbar * eta);
    if !(bound.is_finite() && bound > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "collapse-rate bound is not finite and positive at r_c = {r_c:e} m (eta = {eta:e})"
        )));
    }
    Ok(bound)
}

/// The exclusion bound `lambda_max` at a single correlation length: the
/// band noise floor divided by `hbar^2 eta(lambda = 1, r_c)`, with `eta`
/// picked by the record's channel. Collapse rates above the returned value
/// would overshoot the measured noise.
pub fn lambda_max(record: &ExperimentRecord, r_c: f64, consts: &PhysicalConstants) -> Result<f64> {
    let floor = dns_floor(record)?;
    lambda_max_from_floor(floor, record.channel(), record.geometry(), r_c, consts)
}

/// An exclusion curve in the `(r_c, lambda)` plane together with the scalar
/// floor it was derived from.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ExclusionCurve {
    points: Vec<(f64, f64)>,
    channel: Channel,
    dns_floor: f64,
    floor_unit: UnitKind,
    metadata: String,
}

impl ExclusionCurve {
    /// Assemble a curve from precomputed points, enforcing the shape
    /// invariants: at least two points, strictly increasing `r_c`, every
    /// `lambda_max` finite and positive.
    pub fn new(
        points: Vec<(f64, f64)>,
        channel: Channel,
        dns_floor: f64,
        floor_unit: UnitKind,
        metadata: String,
    ) -> Result<Self> {
        if points.len() < 2 {
            return Err(Error::InvalidParameter(format!(
                "an exclusion curve needs at least 2 points, got {}",
                points.len()
            )));
        }
        for (i, &(r_c, lam)) in points.iter().enumerate() {
            if !(r_c.is_finite() && r_c > 0.0) {
                return Err(Error::InvalidParameter(format!(
                    "curve point {i}: r_c must be finite and positive, got {r_c:e}"
                )));
            }
            if i > 0 && r_c <= points[i - 1].0 {
                return Err(Error::InvalidParameter(format!(
                    "curve points must have strictly increasing r_c, violated at index {i}"
                )));
            }
            if !(lam.is_finite() && lam > 0.0) {
                return Err(Error::InvalidParameter(format!(
                    "curve point {i}: lambda_max must be finite and positive, got {lam:e}"
                )));
            }
        }
        if !(dns_floor.is_finite() && dns_floor > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "curve noise floor must be finite and positive, got {dns_floor:e}"
            )));
        }
        Ok(Self {
            points,
            channel,
            dns_floor,
            floor_unit,
            metadata,
        })
    }

    pub fn points(&self) -> &[(f64, f64)] {
        &self.points
    }

    pub fn channel(&self) -> Channel {
        self.channel
    }

    /// The scalar band floor the curve divides by, in `floor_unit`.
    pub fn dns_floor(&self) -> f64 {
        self.dns_floor
    }

    pub fn floor_unit(&self) -> UnitKind {
        self.floor_unit
    }

    /// Free-form provenance note (instrument, band, geometry).
    pub fn metadata(&self) -> &str {
        &self.metadata
    }

    /// The bound interpolated at an arbitrary correlation length inside the
    /// grid range. Interpolation is linear in `(log r_c, log lambda)`, which
    /// is exact for the power-law segments the curve is made of to well
    /// below plotting accuracy.
    pub fn lambda_max_at(&self, r_c: f64) -> Result<f64> {
        if !(r_c.is_finite() && r_c > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "correlation length must be finite and positive, got {r_c:e}"
            )));
        }
        let first = self.points[0].0;
        let last = self.points[self.points.len() - 1].0;
        if r_c < first || r_c > last {
            return Err(Error::InvalidParameter(format!(
                "r_c = {r_c:e} m lies outside the curve range [{first:e}, {last:e}] m"
            )));
        }
        let idx = match self
            .points
            .binary_search_by(|&(r, _)| r.partial_cmp(&r_c).expect("curve r_c values are finite"))
        {
            Ok(i) => return Ok(self.points[i].1),
            Err(i) => i,
        };
        let (r_lo, l_lo) = self.points[idx - 1];
        let (r_hi, l_hi) = self.points[idx];
        let t = (r_c / r_lo).ln() / (r_hi / r_lo).ln();
        Ok(l_lo * (l_hi / l_lo).powf(t))
    }

    /// Where a candidate parameter point stands relative to the curve.
    pub fn classify(&self, params: &CslParams) -> Result<PointClassification> {
        let bound = self.lambda_max_at(params.r_c)?;
        Ok(if params.lambda >= bound {
            PointClassification::Excluded
        } else {
            PointClassification::Allowed
        })
    }
}

/// Verdict for a single `(lambda, r_c)` point against an exclusion curve.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PointClassification {
    /// On or above the curve: the measured noise rules the point out.
    Excluded,
    /// Below the curve: compatible with the measurement.
    Allowed,
}

/// The standard correlation-length grid: [`DEFAULT_GRID_POINTS`] logarithmic
/// points spanning `1e-8` to `1e-2` metres, generously bracketing the
/// conventional `1e-7` m choice.
pub fn default_r_c_grid() -> Vec<f64> {
    log_space(1e-8, 1e-2, DEFAULT_GRID_POINTS).expect("default grid parameters are valid")
}

/// Map a record onto an exclusion curve over the given correlation-length
/// grid. The floor is computed once; each grid point then costs one
/// closed-form diffusion evaluation.
pub fn exclusion_curve(
    record: &ExperimentRecord,
    r_c_grid: &[f64],
    consts: &PhysicalConstants,
) -> Result<ExclusionCurve> {
    let floor = dns_floor(record)?;
    let mut points = Vec::with_capacity(r_c_grid.len());
    for &r_c in r_c_grid {
        let lam = lambda_max_from_floor(floor, record.channel(), record.geometry(), r_c, consts)?;
        points.push((r_c, lam));
    }
    let floor_unit = match record.channel() {
        Channel::Rotational => UnitKind::Torque,
        Channel::Translational => UnitKind::Force,
    };
    let band = record.band();
    let metadata = format!(
        "{} channel; floor {:.3e} ({}) over [{:e}, {:e}] Hz; cube mass {} kg, side {} m",
        record.channel(),
        floor,
        floor_unit,
        band.f_min,
        band.f_max,
        record.geometry().mass,
        record.geometry().side,
    );
    ExclusionCurve::new(points, record.channel(), floor, floor_unit, metadata)
}

/// What a translational noise floor implies for the rotational channel when
/// the only coupling is through residual-gas collisions: the force floor
/// multiplied by the gas-model lever arm `alpha_gas`.
///
/// This is the consistency check for quoting a torque bound derived from a
/// force measurement. Fails for a negative or non-finite floor; a zero floor
/// maps to zero.
pub fn converted_torque_check(
    force_floor: f64,
    geometry: &CubeGeometry,
    model: crate::alpha::GasModel,
) -> Result<f64> {
    if !(force_floor.is_finite() && force_floor >= 0.0) {
        return Err(Error::InvalidParameter(format!(
            "force floor must be finite and non-negative, got {force_floor:e}"
        )));
    }
    Ok(crate::alpha::alpha_gas(model, geometry.side)? * force_floor)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alpha::GasModel;

    /// One-sided angular-acceleration floor whose torque equivalent is
    /// 5.7e-34 N^2 m^2/Hz for the standard cube: 4 * 5.7e-34 / I^2.
    const ANGACCEL_FLOOR: f64 = 4.931646761856993e-27;

    fn flat_spectrum(value: f64, unit: UnitKind) -> SpectralDensity {
        let freqs: Vec<f64> = (0..=20).map(|k| 1e-4 * 10f64.powf(k as f64 / 5.0)).collect();
        let values = vec![value; freqs.len()];
        SpectralDensity::new(freqs, values, unit).expect("test spectrum is valid")
    }

    fn rotational_record(floor: f64) -> ExperimentRecord {
        ExperimentRecord::new(
            CubeGeometry::lisa_pathfinder(),
            flat_spectrum(floor, UnitKind::Torque),
            Channel::Rotational,
            DEFAULT_BAND,
        )
        .expect("record is valid")
    }

    #[test]
    fn angular_acceleration_converts_to_torque_via_quarter_inertia_squared() {
        let geom = CubeGeometry::lisa_pathfinder();
        let s_in = flat_spectrum(ANGACCEL_FLOOR, UnitKind::AngularAccel);
        let s_out = torque_dns_from_angular_accel(&s_in, &geom).expect("conversion succeeds");
        assert_eq!(s_out.unit(), UnitKind::Torque, "output must be a torque density");
        for (f, v) in s_out.iter() {
            assert!(
                (v / 5.7e-34 - 1.0).abs() < 1e-14,
                "converted floor at {f} Hz should be 5.7e-34, got {v:e}"
            );
        }
    }

    #[test]
    fn converting_a_zero_spectrum_gives_zero_and_wrong_units_are_rejected() {
        let geom = CubeGeometry::lisa_pathfinder();
        let zero = flat_spectrum(0.0, UnitKind::AngularAccel);
        let out = torque_dns_from_angular_accel(&zero, &geom).expect("zero input is fine");
        assert!(out.values().iter().all(|&v| v == 0.0), "zero in, zero out");

        let wrong = flat_spectrum(1e-30, UnitKind::Force);
        let err = torque_dns_from_angular_accel(&wrong, &geom).unwrap_err();
        assert!(
            matches!(
                err,
                Error::UnitMismatch {
                    expected: UnitKind::AngularAccel,
                    found: UnitKind::Force
                }
            ),
            "force density must be refused, got {err:?}"
        );
    }

    #[test]
    fn doubling_the_moment_of_inertia_quadruples_the_converted_torque() {
        let geom = CubeGeometry::lisa_pathfinder();
        // Same side, double mass: the moment of inertia doubles exactly.
        let heavy = CubeGeometry::new(2.0 * geom.mass, geom.side).expect("geometry is valid");
        assert_eq!(heavy.moment_of_inertia(), 2.0 * geom.moment_of_inertia());
        let s_in = flat_spectrum(ANGACCEL_FLOOR, UnitKind::AngularAccel);
        let light = torque_dns_from_angular_accel(&s_in, &geom).expect("conversion succeeds");
        let dense = torque_dns_from_angular_accel(&s_in, &heavy).expect("conversion succeeds");
        for ((_, a), (_, b)) in light.iter().zip(dense.iter()) {
            assert!(
                (b / (4.0 * a) - 1.0).abs() < 1e-15,
                "torque density must scale as inertia squared"
            );
        }
    }

    #[test]
    fn record_construction_enforces_band_coverage_and_unit_consistency() {
        let geom = CubeGeometry::lisa_pathfinder();
        let spectrum = flat_spectrum(5.7e-34, UnitKind::Torque);

        let narrow = Band::new(1e-6, 1e-2).expect("band is well formed");
        let err = ExperimentRecord::new(geom, spectrum.clone(), Channel::Rotational, narrow)
            .unwrap_err();
        assert!(
            matches!(err, Error::InvalidParameter(_)),
            "band outside the spectrum range must be refused, got {err:?}"
        );

        let err = ExperimentRecord::new(
            geom,
            spectrum.clone(),
            Channel::Translational,
            DEFAULT_BAND,
        )
        .unwrap_err();
        assert!(
            matches!(
                err,
                Error::UnitMismatch {
                    expected: UnitKind::Force,
                    found: UnitKind::Torque
                }
            ),
            "translational channel must demand a force density, got {err:?}"
        );

        assert!(Band::new(1e-2, 1e-3).is_err(), "inverted band must be refused");
        assert!(Band::new(0.0, 1e-3).is_err(), "zero lower edge must be refused");
    }

    #[test]
    fn dns_floor_picks_the_band_minimum_after_conversion() {
        let geom = CubeGeometry::lisa_pathfinder();
        // Bathtub-like spectrum: large outside the default band, small inside.
        let freqs = vec![1e-4, 5e-4, 1e-3, 3e-3, 1e-2, 5e-2];
        let values = vec![1e-25, 1e-26, 8e-27, ANGACCEL_FLOOR, 6e-27, 1e-25];
        let spectrum =
            SpectralDensity::new(freqs, values, UnitKind::AngularAccel).expect("spectrum is valid");
        let record = ExperimentRecord::new(geom, spectrum, Channel::Rotational, DEFAULT_BAND)
            .expect("record is valid");
        let floor = dns_floor(&record).expect("floor exists");
        assert!(
            (floor / 5.7e-34 - 1.0).abs() < 1e-14,
            "floor should be the converted band minimum, got {floor:e}"
        );
    }

    #[test]
    fn lambda_max_is_one_when_the_floor_equals_the_unit_rate_noise() {
        let consts = PhysicalConstants::default();
        let geom = CubeGeometry::lisa_pathfinder();
        let r_c = 1e-7;
        let unit_rate = CslParams::new(1.0, r_c).expect("params are valid");
        let floor = consts.hbar * consts.hbar * eta_r_cube(&geom, &unit_rate, &consts);
        let record = rotational_record(floor);
        let bound = lambda_max(&record, r_c, &consts).expect("bound exists");
        assert_eq!(
            bound, 1.0,
            "a floor exactly at the unit-rate noise must bound lambda at exactly 1"
        );
    }

    #[test]
    fn lambda_max_matches_the_frozen_references_for_the_standard_floors() {
        let consts = PhysicalConstants::default();
        let rot = rotational_record(5.7e-34);
        let got = lambda_max(&rot, 1e-7, &consts).expect("bound exists");
        assert!(
            (got / 1.9206268921490142e-9 - 1.0).abs() < 1e-12,
            "rotational bound at r_c = 1e-7 m drifted: got {got:e}"
        );

        let trans = ExperimentRecord::new(
            CubeGeometry::lisa_pathfinder(),
            flat_spectrum(3.15e-30, UnitKind::Force),
            Channel::Translational,
            DEFAULT_BAND,
        )
        .expect("record is valid");
        let got = lambda_max(&trans, 1e-7, &consts).expect("bound exists");
        assert!(
            (got / 3.7431390938566194e-9 - 1.0).abs() < 1e-12,
            "translational bound at r_c = 1e-7 m drifted: got {got:e}"
        );
    }

    #[test]
    fn lambda_max_scales_linearly_with_the_floor() {
        let consts = PhysicalConstants::default();
        let base = lambda_max(&rotational_record(5.7e-34), 1e-7, &consts).expect("bound exists");
        let tenfold =
            lambda_max(&rotational_record(5.7e-33), 1e-7, &consts).expect("bound exists");
        assert!(
            (tenfold / (10.0 * base) - 1.0).abs() < 1e-14,
            "a ten times worse floor must weaken the bound ten times"
        );
    }

    #[test]
    fn exclusion_curve_is_the_pointwise_bound_and_keeps_the_grid_order() {
        let consts = PhysicalConstants::default();
        let record = rotational_record(5.7e-34);
        let grid = default_r_c_grid();
        let curve = exclusion_curve(&record, &grid, &consts).expect("curve exists");
        assert_eq!(curve.points().len(), DEFAULT_GRID_POINTS);
        assert_eq!(curve.channel(), Channel::Rotational);
        assert_eq!(curve.floor_unit(), UnitKind::Torque);
        for (k, &(r_c, lam)) in curve.points().iter().enumerate().step_by(37) {
            let direct = lambda_max(&record, r_c, &consts).expect("bound exists");
            assert_eq!(
                lam, direct,
                "curve point {k} must equal the pointwise bound bit for bit"
            );
        }
        for pair in curve.points().windows(2) {
            assert!(pair[0].0 < pair[1].0, "grid order must be preserved");
        }
    }

    #[test]
    fn classification_separates_the_two_reference_parameter_points() {
        let consts = PhysicalConstants::default();
        let record = rotational_record(5.7e-34);
        let curve =
            exclusion_curve(&record, &default_r_c_grid(), &consts).expect("curve exists");
        assert_eq!(
            curve.classify(&CslParams::ADLER).expect("point is in range"),
            PointClassification::Excluded,
            "the aggressive reference point sits above the curve"
        );
        assert_eq!(
            curve.classify(&CslParams::GRW).expect("point is in range"),
            PointClassification::Allowed,
            "the conservative reference point survives"
        );
        let err = curve
            .classify(&CslParams::new(1e-10, 1.0).expect("params are valid"))
            .unwrap_err();
        assert!(
            matches!(err, Error::InvalidParameter(_)),
            "points outside the grid range must be refused, got {err:?}"
        );
    }

    #[test]
    fn interpolation_reproduces_grid_points_and_is_monotone_between_them() {
        let consts = PhysicalConstants::default();
        let record = rotational_record(5.7e-34);
        let curve =
            exclusion_curve(&record, &default_r_c_grid(), &consts).expect("curve exists");
        let pts = curve.points();
        let (r_mid, l_mid) = pts[150];
        assert_eq!(
            curve.lambda_max_at(r_mid).expect("in range"),
            l_mid,
            "interpolation at a grid node must return the node value"
        );
        let between = (pts[150].0 * pts[151].0).sqrt();
        let lam = curve.lambda_max_at(between).expect("in range");
        let (lo, hi) = (pts[150].1.min(pts[151].1), pts[150].1.max(pts[151].1));
        assert!(
            lam >= lo && lam <= hi,
            "interpolated value must lie between its bracketing nodes"
        );
    }

    #[test]
    fn rotational_to_translational_bound_ratio_follows_the_diffusion_ratio() {
        let consts = PhysicalConstants::default();
        let geom = CubeGeometry::lisa_pathfinder();
        let rot = rotational_record(5.7e-34);
        let trans = ExperimentRecord::new(
            geom,
            flat_spectrum(3.15e-30, UnitKind::Force),
            Channel::Translational,
            DEFAULT_BAND,
        )
        .expect("record is valid");
        for &r_c in &[3e-6, 1e-5, 1e-4] {
            let ratio = lambda_max(&rot, r_c, &consts).expect("bound exists")
                / lambda_max(&trans, r_c, &consts).expect("bound exists");
            let unit_rate = CslParams::new(1.0, r_c).expect("params are valid");
            let eta_ratio = eta_r_cube(&geom, &unit_rate, &consts)
                / eta_v_cube(&geom, &unit_rate, &consts);
            let expected = (5.7e-34 / 3.15e-30) / eta_ratio;
            assert!(
                (ratio / expected - 1.0).abs() < 1e-10,
                "bound ratio at r_c = {r_c:e} must track the diffusion ratio: \
                 got {ratio}, expected {expected}"
            );
        }
        // Frozen spot value on the plateau where the diffusion ratio is flat.
        let ratio = lambda_max(&rot, 1e-5, &consts).expect("bound exists")
            / lambda_max(&trans, 1e-5, &consts).expect("bound exists");
        assert!(
            (ratio / 0.5139433455107475 - 1.0).abs() < 1e-9,
            "plateau bound ratio drifted: got {ratio}"
        );
    }

    #[test]
    fn converted_torque_check_reproduces_the_confined_gas_rescaling() {
        let geom = CubeGeometry::lisa_pathfinder();
        let check = converted_torque_check(3.15e-30, &geom, GasModel::ConfinedEnclosure)
            .expect("check exists");
        assert!(
            (check / 2.66e-34 - 1.0).abs() < 0.02,
            "confined-gas torque floor should land within 2% of 2.66e-34, got {check:e}"
        );
        let zero = converted_torque_check(0.0, &geom, GasModel::ConfinedEnclosure)
            .expect("zero floor is allowed");
        assert_eq!(zero, 0.0, "a zero force floor converts to a zero torque floor");
        assert!(
            converted_torque_check(-1.0, &geom, GasModel::ConfinedEnclosure).is_err(),
            "a negative floor must be refused"
        );
    }

    #[test]
    fn exclusion_curve_shape_invariants_are_enforced() {
        let ok_points = vec![(1e-8, 1e-5), (1e-7, 1e-6)];
        assert!(ExclusionCurve::new(
            ok_points.clone(),
            Channel::Rotational,
            5.7e-34,
            UnitKind::Torque,
            String::new()
        )
        .is_ok());
        let unsorted = vec![(1e-7, 1e-5), (1e-8, 1e-6)];
        assert!(
            ExclusionCurve::new(
                unsorted,
                Channel::Rotational,
                5.7e-34,
                UnitKind::Torque,
                String::new()
            )
            .is_err(),
            "non-increasing r_c must be refused"
        );
        let bad_lambda = vec![(1e-8, 1e-5), (1e-7, 0.0)];
        assert!(
            ExclusionCurve::new(
                bad_lambda,
                Channel::Rotational,
                5.7e-34,
                UnitKind::Torque,
                String::new()
            )
            .is_err(),
            "non-positive lambda_max must be refused"
        );
    }
}
