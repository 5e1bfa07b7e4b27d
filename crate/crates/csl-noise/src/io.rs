//! File formats: CSV spectra, CSV exclusion curves, and JSON sidecars.
//!
//! Numbers are written with `{:e}`, the shortest representation that parses
//! back to the identical bits, so a write/read cycle is lossless. Readers
//! report malformed content as [`Error::Format`] with a 1-based line number.

use std::fs::File;
use std::io::{BufWriter, Write as _};
use std::path::Path;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::bounds::{Band, ExclusionCurve, ExperimentRecord};
use crate::error::{Error, Result};
use crate::phys::{Channel, CubeGeometry, PhysicalConstants, SpectralDensity, UnitKind};

/// Column header of a spectral-density CSV file.
pub const PSD_HEADER: [&str; 3] = ["frequency_hz", "psd_value", "unit_kind"];

/// Column header of an exclusion-curve CSV file.
pub const EXCLUSION_HEADER: [&str; 2] = ["r_c_m", "lambda_max_per_s"];

fn format_error(path: &Path, line: u64, message: impl Into<String>) -> Error {
    Error::Format {
        path: path.display().to_string(),
        line,
        message: message.into(),
    }
}

fn csv_reader(path: &Path) -> Result<csv::Reader<File>> {
    let file = File::open(path)
        .map_err(|e| Error::io(format!("opening {}", path.display()), e))?;
    Ok(csv::ReaderBuilder::new()
        .has_headers(true)
        .trim(csv::Trim::All)
        .from_reader(file))
}

fn check_header(path: &Path, got: &csv::StringRecord, want: &[&str]) -> Result<()> {
    let got_cols: Vec<&str> = got.iter().collect();
    if got_cols != want {
        return Err(format_error(
            path,
            1,
            format!("expected header {:?}, got {:?}", want.join(","), got_cols.join(",")),
        ));
    }
    Ok(())
}

fn record_line(record: &csv::StringRecord) -> u64 {
    record.position().map_or(0, |p| p.line())
}

fn parse_field(path: &Path, line: u64, name: &str, raw: &str) -> Result<f64> {
    raw.parse::<f64>()
        .map_err(|_| format_error(path, line, format!("cannot parse {name} from {raw:?}")))
}

/// Read a one-sided spectral density from CSV.
///
/// Every row must carry the same unit tag. A tag with the `_sqrt` suffix
/// marks an amplitude spectral density; those values are squared on ingest
/// so the returned [`SpectralDensity`] is always a power quantity.
pub fn read_psd_csv(path: impl AsRef<Path>) -> Result<SpectralDensity> {
    let path = path.as_ref();
    let mut reader = csv_reader(path)?;
    {
        let headers = reader
            .headers()
            .map_err(|e| format_error(path, 1, e.to_string()))?;
        check_header(path, headers, &PSD_HEADER)?;
    }

    let mut frequencies: Vec<f64> = Vec::new();
    let mut values: Vec<f64> = Vec::new();
    let mut tag: Option<(String, UnitKind, bool)> = None;

    for row in reader.records() {
        let record = row.map_err(|e| {
            let line = e.position().map_or(0, |p| p.line());
            format_error(path, line, e.to_string())
        })?;
        let line = record_line(&record);
        if record.len() != 3 {
            return Err(format_error(
                path,
                line,
                format!("expected 3 fields, got {}", record.len()),
            ));
        }

        let f = parse_field(path, line, "frequency", &record[0])?;
        if !(f.is_finite() && f > 0.0) {
            return Err(format_error(
                path,
                line,
                format!("frequency must be finite and positive, got {f:e}"),
            ));
        }
        if let Some(&prev) = frequencies.last() {
            if f <= prev {
                return Err(format_error(
                    path,
                    line,
                    format!("frequencies must be strictly increasing, {f:e} follows {prev:e}"),
                ));
            }
        }

        let raw_tag = &record[2];
        let is_sqrt = match &tag {
            None => {
                let (unit, is_sqrt) = UnitKind::parse_tag(raw_tag).ok_or_else(|| {
                    format_error(path, line, format!("unknown unit tag {raw_tag:?}"))
                })?;
                tag = Some((raw_tag.to_string(), unit, is_sqrt));
                is_sqrt
            }
            Some((first, _, is_sqrt)) => {
                if raw_tag != first.as_str() {
                    return Err(format_error(
                        path,
                        line,
                        format!("mixed unit tags: file started with {first:?}, found {raw_tag:?}"),
                    ));
                }
                *is_sqrt
            }
        };

        let v = parse_field(path, line, "psd value", &record[1])?;
        if !(v.is_finite() && v >= 0.0) {
            return Err(format_error(
                path,
                line,
                format!("spectral value must be finite and non-negative, got {v:e}"),
            ));
        }
        values.push(if is_sqrt { v * v } else { v });
        frequencies.push(f);
    }

    let (_, unit, _) = tag.ok_or_else(|| format_error(path, 1, "no data rows after the header"))?;
    SpectralDensity::new(frequencies, values, unit)
}

/// Write a spectral density as CSV with the standard header. Always writes
/// power values with the base unit tag (never the `_sqrt` form).
pub fn write_psd_csv(path: impl AsRef<Path>, spectrum: &SpectralDensity) -> Result<()> {
    let path = path.as_ref();
    let file = File::create(path)
        .map_err(|e| Error::io(format!("creating {}", path.display()), e))?;
    let mut w = BufWriter::new(file);
    let write_err = |e| Error::io(format!("writing {}", path.display()), e);
    writeln!(w, "{}", PSD_HEADER.join(",")).map_err(write_err)?;
    let tag = spectrum.unit().tag();
    for (f, v) in spectrum.iter() {
        writeln!(w, "{f:e},{v:e},{tag}").map_err(write_err)?;
    }
    w.flush().map_err(write_err)
}

/// Write an exclusion curve as CSV (`r_c_m,lambda_max_per_s`).
pub fn write_exclusion_csv(path: impl AsRef<Path>, curve: &ExclusionCurve) -> Result<()> {
    let path = path.as_ref();
    let file = File::create(path)
        .map_err(|e| Error::io(format!("creating {}", path.display()), e))?;
    let mut w = BufWriter::new(file);
    let write_err = |e| Error::io(format!("writing {}", path.display()), e);
    writeln!(w, "{}", EXCLUSION_HEADER.join(",")).map_err(write_err)?;
    for &(r_c, lambda) in curve.points() {
        writeln!(w, "{r_c:e},{lambda:e}").map_err(write_err)?;
    }
    w.flush().map_err(write_err)
}

/// Read exclusion-curve points back from CSV, enforcing the curve shape
/// (strictly increasing `r_c`, finite positive bounds).
pub fn read_exclusion_points(path: impl AsRef<Path>) -> Result<Vec<(f64, f64)>> {
    let path = path.as_ref();
    let mut reader = csv_reader(path)?;
    {
        let headers = reader
            .headers()
            .map_err(|e| format_error(path, 1, e.to_string()))?;
        check_header(path, headers, &EXCLUSION_HEADER)?;
    }

    let mut points: Vec<(f64, f64)> = Vec::new();
    for row in reader.records() {
        let record = row.map_err(|e| {
            let line = e.position().map_or(0, |p| p.line());
            format_error(path, line, e.to_string())
        })?;
        let line = record_line(&record);
        if record.len() != 2 {
            return Err(format_error(
                path,
                line,
                format!("expected 2 fields, got {}", record.len()),
            ));
        }
        let r_c = parse_field(path, line, "correlation length", &record[0])?;
        let lambda = parse_field(path, line, "collapse-rate bound", &record[1])?;
        if !(r_c.is_finite() && r_c > 0.0) {
            return Err(format_error(
                path,
                line,
                format!("r_c must be finite and positive, got {r_c:e}"),
            ));
        }
        if let Some(&(prev, _)) = points.last() {
            if r_c <= prev {
                return Err(format_error(
                    path,
                    line,
                    format!("r_c must be strictly increasing, {r_c:e} follows {prev:e}"),
                ));
            }
        }
        if !(lambda.is_finite() && lambda > 0.0) {
            return Err(format_error(
                path,
                line,
                format!("lambda_max must be finite and positive, got {lambda:e}"),
            ));
        }
        points.push((r_c, lambda));
    }
    if points.is_empty() {
        return Err(format_error(path, 1, "no data rows after the header"));
    }
    Ok(points)
}

/// Everything needed to reproduce an exclusion curve, written next to the
/// CSV so the numbers never travel without their context.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExclusionSidecar {
    pub channel: Channel,
    pub geometry: CubeGeometry,
    pub band: Band,
    pub dns_floor: f64,
    pub floor_unit: UnitKind,
    pub constants: PhysicalConstants,
    /// Where the spectrum came from (file name, instrument note, ...).
    pub source: String,
}

impl ExclusionSidecar {
    pub fn from_parts(
        record: &ExperimentRecord,
        curve: &ExclusionCurve,
        constants: &PhysicalConstants,
        source: impl Into<String>,
    ) -> Self {
        ExclusionSidecar {
            channel: record.channel(),
            geometry: *record.geometry(),
            band: record.band(),
            dns_floor: curve.dns_floor(),
            floor_unit: curve.floor_unit(),
            constants: *constants,
            source: source.into(),
        }
    }
}

/// Serialize any value as pretty-printed JSON.
pub fn write_json<T: Serialize>(path: impl AsRef<Path>, value: &T) -> Result<()> {
    let path = path.as_ref();
    let mut text = serde_json::to_string_pretty(value)
        .map_err(|e| format_error(path, 0, format!("cannot serialize: {e}")))?;
    text.push('\n');
    std::fs::write(path, text).map_err(|e| Error::io(format!("writing {}", path.display()), e))
}

/// Parse a JSON file into any deserializable value.
pub fn read_json<T: DeserializeOwned>(path: impl AsRef<Path>) -> Result<T> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::io(format!("reading {}", path.display()), e))?;
    serde_json::from_str(&text).map_err(|e| format_error(path, e.line() as u64, e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bounds::{self, DEFAULT_BAND};

    fn sample_spectrum() -> SpectralDensity {
        let freqs = vec![1e-4, 1e-3, 3e-3, 1e-2, 0.1];
        let values = vec![
            1e-25,
            4.931646761856993e-27,
            1.0 / 3.0,
            5.7e-34,
            2.2250738585072014e-308,
        ];
        SpectralDensity::new(freqs, values, UnitKind::AngularAccel).expect("spectrum is valid")
    }

    #[test]
    fn psd_csv_round_trip_is_bit_exact() {
        let dir = tempfile::tempdir().expect("temp dir");
        let path = dir.path().join("spectrum.csv");
        let original = sample_spectrum();
        write_psd_csv(&path, &original).expect("write succeeds");
        let back = read_psd_csv(&path).expect("read succeeds");
        assert_eq!(back.unit(), original.unit());
        assert_eq!(back.frequencies(), original.frequencies(), "frequencies must round-trip");
        assert_eq!(back.values(), original.values(), "values must round-trip bit for bit");
    }

    #[test]
    fn amplitude_tagged_rows_are_squared_on_ingest() {
        let dir = tempfile::tempdir().expect("temp dir");
        let path = dir.path().join("asd.csv");
        let asd = [2e-17, 3.1e-17, 4e-17];
        let mut text = String::from("frequency_hz,psd_value,unit_kind\n");
        for (k, a) in asd.iter().enumerate() {
            text += &format!("{:e},{a:e},torque2_per_hz_sqrt\n", 1e-3 * (k + 1) as f64);
        }
        std::fs::write(&path, text).expect("fixture written");
        let spectrum = read_psd_csv(&path).expect("read succeeds");
        assert_eq!(spectrum.unit(), UnitKind::Torque, "sqrt tag must map to the base unit");
        for (a, &v) in asd.iter().zip(spectrum.values()) {
            assert_eq!(v, a * a, "amplitude {a:e} must be squared on ingest");
        }
    }

    #[test]
    fn mixed_unit_tags_are_reported_with_the_offending_line() {
        let dir = tempfile::tempdir().expect("temp dir");
        let path = dir.path().join("mixed.csv");
        std::fs::write(
            &path,
            "frequency_hz,psd_value,unit_kind\n\
             1e-3,1e-30,force2_per_hz\n\
             2e-3,1e-30,torque2_per_hz\n",
        )
        .expect("fixture written");
        match read_psd_csv(&path).unwrap_err() {
            Error::Format { line, message, .. } => {
                assert_eq!(line, 3, "the second data row is file line 3");
                assert!(message.contains("mixed unit tags"), "unhelpful message: {message}");
            }
            other => panic!("expected a format error, got {other:?}"),
        }
    }

    #[test]
    fn malformed_rows_are_rejected_with_line_numbers() {
        let dir = tempfile::tempdir().expect("temp dir");
        let cases: [(&str, &str, u64); 5] = [
            ("bad_header.csv", "freq,psd,unit\n1e-3,1,force2_per_hz\n", 1),
            (
                "bad_float.csv",
                "frequency_hz,psd_value,unit_kind\n1e-3,not_a_number,force2_per_hz\n",
                2,
            ),
            (
                "bad_tag.csv",
                "frequency_hz,psd_value,unit_kind\n1e-3,1e-30,velocity2_per_hz\n",
                2,
            ),
            (
                "unsorted.csv",
                "frequency_hz,psd_value,unit_kind\n2e-3,1e-30,force2_per_hz\n1e-3,1e-30,force2_per_hz\n",
                3,
            ),
            (
                "negative.csv",
                "frequency_hz,psd_value,unit_kind\n1e-3,-1e-30,force2_per_hz\n",
                2,
            ),
        ];
        for (name, text, want_line) in cases {
            let path = dir.path().join(name);
            std::fs::write(&path, text).expect("fixture written");
            match read_psd_csv(&path).unwrap_err() {
                Error::Format { line, .. } => {
                    assert_eq!(line, want_line, "{name}: wrong line reported");
                }
                other => panic!("{name}: expected a format error, got {other:?}"),
            }
        }
    }

    #[test]
    fn missing_files_and_empty_files_fail_cleanly() {
        let dir = tempfile::tempdir().expect("temp dir");
        let err = read_psd_csv(dir.path().join("nowhere.csv")).unwrap_err();
        assert!(matches!(err, Error::Io { .. }), "missing file must be an io error, got {err:?}");

        let path = dir.path().join("empty.csv");
        std::fs::write(&path, "frequency_hz,psd_value,unit_kind\n").expect("fixture written");
        let err = read_psd_csv(&path).unwrap_err();
        assert!(
            matches!(err, Error::Format { .. }),
            "header-only file must be a format error, got {err:?}"
        );
    }

    #[test]
    fn exclusion_curve_round_trip_is_bit_exact() {
        let consts = PhysicalConstants::default();
        let record = ExperimentRecord::new(
            CubeGeometry::lisa_pathfinder(),
            sample_spectrum(),
            Channel::Rotational,
            DEFAULT_BAND,
        )
        .expect("record is valid");
        let curve = bounds::exclusion_curve(&record, &bounds::default_r_c_grid(), &consts)
            .expect("curve exists");

        let dir = tempfile::tempdir().expect("temp dir");
        let path = dir.path().join("curve.csv");
        write_exclusion_csv(&path, &curve).expect("write succeeds");
        let back = read_exclusion_points(&path).expect("read succeeds");
        assert_eq!(back.len(), curve.points().len());
        for (k, (orig, got)) in curve.points().iter().zip(&back).enumerate() {
            assert_eq!(orig, got, "curve point {k} must round-trip bit for bit");
        }
    }

    #[test]
    fn sidecar_json_round_trips() {
        let consts = PhysicalConstants::default();
        let record = ExperimentRecord::new(
            CubeGeometry::lisa_pathfinder(),
            sample_spectrum(),
            Channel::Rotational,
            DEFAULT_BAND,
        )
        .expect("record is valid");
        let curve = bounds::exclusion_curve(&record, &bounds::default_r_c_grid(), &consts)
            .expect("curve exists");
        let sidecar = ExclusionSidecar::from_parts(&record, &curve, &consts, "spectrum.csv");

        let dir = tempfile::tempdir().expect("temp dir");
        let path = dir.path().join("curve.json");
        write_json(&path, &sidecar).expect("write succeeds");
        let back: ExclusionSidecar = read_json(&path).expect("read succeeds");
        assert_eq!(back, sidecar, "sidecar must survive a JSON round trip");
    }
}
