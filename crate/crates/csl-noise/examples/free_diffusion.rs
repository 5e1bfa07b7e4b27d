//! The defining property of the collapse drive: with the spring and the
//! damping switched off, the ensemble momentum variance grows linearly,
//! Var[p](t) = (S/2)·t. Integrate an undamped ensemble and print the
//! measured growth against the prediction.

use csl_noise::diffusion::eta_r_cube;
use csl_noise::langevin::{simulate_ensemble, OscillatorConfig};
use csl_noise::phys::{CslParams, CubeGeometry, PhysicalConstants};

fn main() -> csl_noise::Result<()> {
    let consts = PhysicalConstants::default();
    let geometry = CubeGeometry::lisa_pathfinder();
    let params = CslParams::new(1e-8, 1e-7)?;
    let noise_dns = consts.hbar * consts.hbar * eta_r_cube(&geometry, &params, &consts);
    println!("driving torque density: {noise_dns:.6e} N^2 m^2 s");

    let config = OscillatorConfig::new(0.0, 0.0, geometry.moment_of_inertia(), noise_dns)?;
    let count = 800;
    let ensemble = simulate_ensemble(&config, 2000.0, 1.0, 7, count)?;

    println!(
        "{:>8}  {:>14}  {:>14}  {:>8}",
        "t (s)", "Var[p] measured", "(S/2) t", "ratio"
    );
    for step in [125usize, 250, 500, 1000, 2000] {
        let t = step as f64;
        let mean = ensemble.iter().map(|tr| tr.momenta()[step]).sum::<f64>() / count as f64;
        let var = ensemble
            .iter()
            .map(|tr| {
                let p = tr.momenta()[step];
                (p - mean) * (p - mean)
            })
            .sum::<f64>()
            / (count as f64 - 1.0);
        let predicted = 0.5 * noise_dns * t;
        println!(
            "{:>8}  {:>14.6e}  {:>14.6e}  {:>8.4}",
            t,
            var,
            predicted,
            var / predicted
        );
    }
    println!(
        "(ensemble of {count}; the expected scatter of each ratio is about \
         sqrt(2/{count}) = {:.1}%)",
        (2.0 / count as f64).sqrt() * 100.0
    );
    Ok(())
}
