//! Evaluate the collapse-induced diffusion coefficients of the standard
//! cube across the correlation-length range, and cross-check the closed
//! forms against the brute-force quadrature oracle where the oracle is
//! affordable.
//!
//! ```text
//! cargo run --example diffusion_coefficients
//! ```

use csl_noise::diffusion::{diffusion_cube, eta_numeric, EtaKind, QuadratureSpec};
use csl_noise::phys::{CslParams, CubeGeometry, PhysicalConstants};

fn main() -> csl_noise::Result<()> {
    let consts = PhysicalConstants::default();
    let geometry = CubeGeometry::lisa_pathfinder();
    let lambda = 1e-8; // both coefficients are exactly linear in the rate

    println!(
        "cube: {} kg, {} m side, I = {:.6e} kg m^2",
        geometry.mass,
        geometry.side,
        geometry.moment_of_inertia()
    );
    println!();
    println!(
        "{:>10}  {:>9}  {:>13}  {:>13}  {:>13}",
        "r_C (m)", "beta", "eta_v 1/(s m^2)", "eta_r (1/s)", "hbar^2 eta_r"
    );
    for exponent in [-8, -7, -6, -5, -4, -3, -2] {
        let r_c = 10f64.powi(exponent);
        let params = CslParams::new(lambda, r_c)?;
        let pair = diffusion_cube(&geometry, &params, &consts);
        println!(
            "{:>10.0e}  {:>9.3e}  {:>13.4e}  {:>13.4e}  {:>13.4e}",
            r_c,
            geometry.beta(r_c),
            pair.eta_v,
            pair.eta_r,
            consts.hbar * consts.hbar * pair.eta_r
        );
    }

    println!();
    println!("quadrature cross-check (beta = 1, i.e. r_C = side):");
    let params = CslParams::new(lambda, geometry.side)?;
    let spec = QuadratureSpec::for_beta(1.0);
    let pair = diffusion_cube(&geometry, &params, &consts);
    for (kind, closed) in [
        (EtaKind::Translational, pair.eta_v),
        (EtaKind::Rotational, pair.eta_r),
    ] {
        let numeric = eta_numeric(kind, &geometry, &params, &consts, &spec)?;
        println!(
            "  {kind:?}: closed {closed:.12e} vs quadrature {numeric:.12e} \
             (rel. diff {:.2e})",
            ((numeric - closed) / closed).abs()
        );
    }
    Ok(())
}
