//! Close the loop on the collapse drive: integrate the torsion balance
//! under the rotational collapse torque, estimate the angular-acceleration
//! spectrum with Welch averaging, convert back through the readout chain,
//! and compare with the density that was injected — plus transfer-function
//! probes of the coordinate spectrum against the analytic response.
//!
//! Writes `examples_out/noise_closure_psd.csv`.

use std::fs;

use csl_noise::langevin::{simulate_ensemble, transfer_check, Scenario};
use csl_noise::phys::{Channel, CslParams, CubeGeometry, PhysicalConstants, UnitKind};
use csl_noise::welch::{average_estimates, welch_psd, Observable, Window};

fn main() -> csl_noise::Result<()> {
    let consts = PhysicalConstants::default();
    let scenario = Scenario {
        geometry: CubeGeometry::lisa_pathfinder(),
        channel: Channel::Rotational,
        csl: Some(CslParams::new(1e-8, 1e-7)?),
        noise_dns: None,
        omega0: std::f64::consts::TAU * 1e-3,
        gamma: 1e-4,
        dt: 4.0,
        // 2^22 steps per trajectory: enough Welch resolution to resolve the
        // resonance peak (width gamma/2pi) under the probe windows.
        duration: 4.0 * 4_194_304.0,
        seed: 42,
        trajectories: 2,
    };
    let injected = scenario.resolved_noise_dns(&consts)?;
    let config = scenario.oscillator_config(&consts)?;
    println!(
        "injected torque density: {injected:.6e} N^2 m^2 s (resonance {:.3e} Hz)",
        config.omega0 / std::f64::consts::TAU
    );

    let ensemble = simulate_ensemble(
        &config,
        scenario.duration,
        scenario.dt,
        scenario.seed,
        scenario.trajectories,
    )?;

    let coord: Vec<_> = ensemble
        .iter()
        .map(|t| welch_psd(t, Observable::Coordinate, 32, Window::Hann))
        .collect::<csl_noise::Result<_>>()?;
    let accel: Vec<_> = ensemble
        .iter()
        .map(|t| welch_psd(t, Observable::Acceleration, 32, Window::Hann))
        .collect::<csl_noise::Result<_>>()?;
    let coord = average_estimates(&coord)?;
    let accel = average_estimates(&accel)?;
    println!("averaged {} Welch segments per observable", accel.segment_count());

    // Torque read-back in a band above resonance, below Nyquist.
    let inertia = config.inertia;
    let readback = 0.25 * inertia * inertia * accel.band_mean(1e-2, 3.1e-2)?;
    println!(
        "band [1e-2, 3.1e-2] Hz read-back: {readback:.6e} N^2 m^2 s \
         ({:+.2}% of injected)",
        (readback / injected - 1.0) * 100.0
    );

    let transfer = transfer_check(&config, &coord)?;
    for probe in &transfer.probes {
        println!(
            "  transfer probe {:.4e} Hz: measured/predicted = {:.4} ({:+.2}%)",
            probe.frequency,
            probe.measured / probe.predicted,
            probe.rel_deviation * 100.0
        );
    }
    println!(
        "worst transfer deviation: {:.2}%",
        transfer.max_rel_deviation * 100.0
    );

    fs::create_dir_all("examples_out")
        .map_err(|e| csl_noise::Error::io("creating examples_out", e))?;
    let torque_psd = accel.to_spectral_density(UnitKind::AngularAccel)?;
    csl_noise::io::write_psd_csv("examples_out/noise_closure_psd.csv", &torque_psd)?;
    println!("wrote examples_out/noise_closure_psd.csv");
    Ok(())
}
