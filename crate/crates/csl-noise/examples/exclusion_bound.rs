//! Full exclusion pipeline on the bundled synthetic spectra: ingest a
//! measured angular-acceleration spectrum, convert it to a torque noise
//! floor, trace the collapse-rate exclusion curve, classify two reference
//! parameter points, and compare against the translational channel.
//!
//! Writes `examples_out/exclusion_rotational.csv` (+ `.sidecar.json`) and
//! `examples_out/exclusion_translational.csv`.

use std::fs;

use csl_noise::bounds::{
    default_r_c_grid, dns_floor, exclusion_curve, Band, ExperimentRecord,
};
use csl_noise::io::{read_psd_csv, write_exclusion_csv, write_json, ExclusionSidecar};
use csl_noise::phys::{Channel, CslParams, CubeGeometry, PhysicalConstants};

const ROT_SPECTRUM: &str = concat!(
    env!("CARGO_MANIFEST_DIR"),
    "/tests/data/lisa_angular_accel_synthetic.csv"
);
const FORCE_SPECTRUM: &str = concat!(
    env!("CARGO_MANIFEST_DIR"),
    "/tests/data/lisa_force_synthetic.csv"
);

fn main() -> csl_noise::Result<()> {
    let consts = PhysicalConstants::default();
    let geometry = CubeGeometry::lisa_pathfinder();
    let band = Band::new(1e-3, 1e-2)?;
    let grid = default_r_c_grid();
    fs::create_dir_all("examples_out")
        .map_err(|e| csl_noise::Error::io("creating examples_out", e))?;

    // Rotational channel: the spectrum ships as an amplitude density of
    // angular acceleration; ingestion squares it and the record converts it
    // through the (I/2)^2 readout factor.
    let rot_record = ExperimentRecord::new(
        geometry,
        read_psd_csv(ROT_SPECTRUM)?,
        Channel::Rotational,
        band,
    )?;
    println!(
        "rotational torque floor in [{:e}, {:e}] Hz: {:.4e} N^2 m^2 s",
        band.f_min,
        band.f_max,
        dns_floor(&rot_record)?
    );
    let rot_curve = exclusion_curve(&rot_record, &grid, &consts)?;
    write_exclusion_csv("examples_out/exclusion_rotational.csv", &rot_curve)?;
    write_json(
        "examples_out/exclusion_rotational.sidecar.json",
        &ExclusionSidecar::from_parts(&rot_record, &rot_curve, &consts, ROT_SPECTRUM),
    )?;

    // Translational channel from the force spectrum, for the comparison.
    let trans_record = ExperimentRecord::new(
        geometry,
        read_psd_csv(FORCE_SPECTRUM)?,
        Channel::Translational,
        band,
    )?;
    let trans_curve = exclusion_curve(&trans_record, &grid, &consts)?;
    write_exclusion_csv("examples_out/exclusion_translational.csv", &trans_curve)?;

    // Historical reference points of the parameter space.
    for (name, params) in [("GRW", CslParams::GRW), ("Adler", CslParams::ADLER)] {
        println!(
            "{name} (lambda = {:e} 1/s, r_C = {:e} m): {:?}, bound there {:.4e} 1/s",
            params.lambda,
            params.r_c,
            rot_curve.classify(&params)?,
            rot_curve.lambda_max_at(params.r_c)?
        );
    }

    // The rotational advantage: ratio of the two bounds on the plateau.
    let r_c = 1e-5;
    let ratio = rot_curve.lambda_max_at(r_c)? / trans_curve.lambda_max_at(r_c)?;
    println!(
        "bound ratio rotational/translational at r_C = {r_c:e} m: {ratio:.4} \
         (the factor-two advantage of the torque channel)"
    );
    println!("wrote examples_out/exclusion_*.csv");
    Ok(())
}
