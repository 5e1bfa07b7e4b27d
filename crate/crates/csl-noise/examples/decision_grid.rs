//! Map out where a torque measurement beats a force measurement: the sign
//! of `log10(alpha_csl / alpha_gas)` over the (correlation length, cube
//! side) plane, for both residual-gas models.
//!
//! Writes `examples_out/decision_grid_confined.csv` and
//! `examples_out/decision_grid_open.csv`.

use std::fs;
use std::io::Write;

use csl_noise::alpha::{alpha_grid, rotational_preferred, AlphaGridSpec, GasModel};
use csl_noise::phys::{CslParams, CubeGeometry};

fn main() -> csl_noise::Result<()> {
    fs::create_dir_all("examples_out")
        .map_err(|e| csl_noise::Error::io("creating examples_out", e))?;

    let spec = AlphaGridSpec::default();
    for (model, name) in [
        (GasModel::ConfinedEnclosure, "confined"),
        (GasModel::InfiniteVolume, "open"),
    ] {
        let grid = alpha_grid(&spec, model)?;
        let path = format!("examples_out/decision_grid_{name}.csv");
        let mut out = fs::File::create(&path)
            .map_err(|e| csl_noise::Error::io("creating grid csv", e))?;
        writeln!(out, "r_c_m,side_m,log10_alpha_ratio")
            .map_err(|e| csl_noise::Error::io("writing header", e))?;
        let mut favourable = 0usize;
        let mut total = 0usize;
        for (i, &r_c) in grid.r_c_axis().iter().enumerate() {
            for (j, &side) in grid.side_axis().iter().enumerate() {
                let value = grid.value(i, j);
                if value > 0.0 {
                    favourable += 1;
                }
                total += 1;
                writeln!(out, "{r_c:e},{side:e},{value:e}")
                    .map_err(|e| csl_noise::Error::io("writing row", e))?;
            }
        }
        println!(
            "{name}: rotation wins on {favourable}/{total} grid cells -> {path}"
        );
    }

    // The single decision the grid is usually consulted for.
    let geometry = CubeGeometry::lisa_pathfinder();
    let params = CslParams::new(1e-8, 1e-7)?;
    for model in [GasModel::ConfinedEnclosure, GasModel::InfiniteVolume] {
        println!(
            "standard cube at r_C = 1e-7 m, {model:?}: rotational channel preferred = {}",
            rotational_preferred(&params, &geometry, model)?
        );
    }
    Ok(())
}
