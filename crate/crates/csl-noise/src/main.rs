//! Command-line front end. All computation lives in the library; this
//! binary parses arguments, wires files to library calls, and maps errors
//! onto exit codes (0 success, 2 usage, 3 data/format, 4 numerical).

use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use csl_noise::alpha::{alpha_gas, alpha_grid, alpha_profile, AlphaGridSpec, GasModel};
use csl_noise::bounds::{
    self, default_r_c_grid, exclusion_curve, Band, ExperimentRecord, PointClassification,
};
use csl_noise::diffusion::{diffusion_cube, eta_numeric, EtaKind, QuadratureSpec};
use csl_noise::error::Error;
use csl_noise::grid::log_space;
use csl_noise::io::{
    read_exclusion_points, read_json, read_psd_csv, write_exclusion_csv, write_json,
    write_psd_csv, ExclusionSidecar,
};
use csl_noise::langevin::{simulate_ensemble, transfer_check, Scenario, TransferReport};
use csl_noise::manifest::RunManifest;
use csl_noise::phys::{
    Channel, CslParams, CubeGeometry, PhysicalConstants, SpectralDensity, UnitKind,
};
use csl_noise::welch::{average_estimates, welch_psd, Observable, PsdEstimate, Window};
use csl_noise::Result;

#[derive(Parser)]
#[command(
    name = "csl-noise",
    version,
    about = "Collapse-noise diffusion coefficients, torque/force lever arms, \
             exclusion bounds, and seeded noise simulations"
)]
struct Cli {
    /// Directory all output files are written into.
    #[arg(long, global = true, default_value = ".")]
    output_dir: PathBuf,

    /// Built-in test-mass geometry.
    #[arg(long, global = true, value_enum, default_value_t = Preset::LisaPathfinder)]
    preset: Preset,

    /// Override the reference mass (kg) entering the diffusion coefficients.
    #[arg(long, global = true)]
    m0: Option<f64>,

    /// Override the seed of a simulation scenario.
    #[arg(long, global = true)]
    seed: Option<u64>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Preset {
    /// 1.928 kg gold-platinum cube, 46 mm side.
    LisaPathfinder,
}

impl Preset {
    fn geometry(self) -> CubeGeometry {
        match self {
            Preset::LisaPathfinder => CubeGeometry::lisa_pathfinder(),
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum ChannelArg {
    Rotational,
    Translational,
}

impl From<ChannelArg> for Channel {
    fn from(value: ChannelArg) -> Self {
        match value {
            ChannelArg::Rotational => Channel::Rotational,
            ChannelArg::Translational => Channel::Translational,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum GasModelArg {
    InfiniteVolume,
    ConfinedEnclosure,
}

impl From<GasModelArg> for GasModel {
    fn from(value: GasModelArg) -> Self {
        match value {
            GasModelArg::InfiniteVolume => GasModel::InfiniteVolume,
            GasModelArg::ConfinedEnclosure => GasModel::ConfinedEnclosure,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum AlphaMode {
    /// Lever-arm ratio against the side/correlation-length ratio.
    Curve,
    /// Decision grid over correlation length and cube side.
    Grid,
}

#[derive(Subcommand)]
enum Command {
    /// Print and export the diffusion coefficients for one parameter point.
    Eta(EtaArgs),
    /// Export lever-arm curves or decision grids as CSV.
    Alpha(AlphaArgs),
    /// Turn a measured spectrum into an exclusion curve.
    Bound(BoundArgs),
    /// Run a seeded noise simulation described by a scenario file.
    Simulate(SimulateArgs),
}

#[derive(Args)]
struct EtaArgs {
    /// Collapse rate, 1/s.
    #[arg(long, default_value_t = 1e-8)]
    lambda: f64,
    /// Correlation length, m.
    #[arg(long, default_value_t = 1e-7)]
    r_c: f64,
    /// Cube mass in kg (defaults to the preset).
    #[arg(long)]
    mass: Option<f64>,
    /// Cube side in m (defaults to the preset).
    #[arg(long)]
    side: Option<f64>,
    /// Also evaluate the brute-force quadrature and report the relative
    /// difference against the closed forms.
    #[arg(long)]
    numeric: bool,
    /// Quadrature nodes per axis (default: scaled to the geometry).
    #[arg(long)]
    nodes: Option<usize>,
}

#[derive(Args)]
struct AlphaArgs {
    #[arg(long, value_enum, default_value_t = AlphaMode::Curve)]
    mode: AlphaMode,
    /// Gas model used by the decision grid.
    #[arg(long, value_enum, default_value_t = GasModelArg::ConfinedEnclosure)]
    gas_model: GasModelArg,
    /// Curve mode: smallest side/correlation-length ratio.
    #[arg(long, default_value_t = 0.1)]
    beta_min: f64,
    /// Curve mode: largest side/correlation-length ratio.
    #[arg(long, default_value_t = 1e3)]
    beta_max: f64,
    /// Curve mode: number of points.
    #[arg(long, default_value_t = 400)]
    points: usize,
}

#[derive(Args)]
struct BoundArgs {
    /// Input spectrum CSV (frequency_hz,psd_value,unit_kind).
    #[arg(long)]
    input: PathBuf,
    #[arg(long, value_enum)]
    channel: ChannelArg,
    /// Analysis band lower edge, Hz.
    #[arg(long, default_value_t = 1e-3)]
    band_min: f64,
    /// Analysis band upper edge, Hz.
    #[arg(long, default_value_t = 1e-2)]
    band_max: f64,
    /// Cube mass in kg (defaults to the preset).
    #[arg(long)]
    mass: Option<f64>,
    /// Cube side in m (defaults to the preset).
    #[arg(long)]
    side: Option<f64>,
    /// Correlation-length grid: smallest value, m.
    #[arg(long, default_value_t = 1e-8)]
    r_c_min: f64,
    /// Correlation-length grid: largest value, m.
    #[arg(long, default_value_t = 1e-2)]
    r_c_max: f64,
    /// Correlation-length grid: number of points.
    #[arg(long, default_value_t = bounds::DEFAULT_GRID_POINTS)]
    grid_points: usize,
    /// Previously computed exclusion CSVs to merge into an overlay dataset
    /// (ingested verbatim, never recomputed). Repeatable.
    #[arg(long)]
    overlay: Vec<PathBuf>,
}

#[derive(Args)]
struct SimulateArgs {
    /// Scenario JSON file.
    #[arg(long)]
    scenario: PathBuf,
    /// Minimum number of averaged spectral segments per trajectory.
    #[arg(long, default_value_t = 32)]
    segments: usize,
}

fn exit_code(error: &Error) -> i32 {
    match error {
        // Usage: the request itself is inconsistent.
        Error::InvalidParameter(_) | Error::TooShort { .. } => 2,
        // Data: a file or its content does not fit the request.
        Error::UnitMismatch { .. } | Error::EmptyBand { .. } | Error::Format { .. }
        | Error::Io { .. } => 3,
        // Numerics: the computation itself failed.
        Error::NonConvergence { .. } | Error::UnstableStep { .. } => 4,
    }
}

fn main() {
    let cli = Cli::parse();
    if let Err(error) = run(cli) {
        eprintln!("error: {error}");
        std::process::exit(exit_code(&error));
    }
}

fn run(cli: Cli) -> Result<()> {
    std::fs::create_dir_all(&cli.output_dir)
        .map_err(|e| Error::io(format!("creating {}", cli.output_dir.display()), e))?;
    let consts = match cli.m0 {
        Some(m0) => PhysicalConstants::with_m0(m0)?,
        None => PhysicalConstants::default(),
    };
    match &cli.command {
        Command::Eta(args) => cmd_eta(&cli, &consts, args),
        Command::Alpha(args) => cmd_alpha(&cli, args),
        Command::Bound(args) => cmd_bound(&cli, &consts, args),
        Command::Simulate(args) => cmd_simulate(&cli, &consts, args),
    }
}

fn resolve_geometry(preset: Preset, mass: Option<f64>, side: Option<f64>) -> Result<CubeGeometry> {
    let base = preset.geometry();
    CubeGeometry::new(mass.unwrap_or(base.mass), side.unwrap_or(base.side))
}

fn cmd_eta(cli: &Cli, consts: &PhysicalConstants, args: &EtaArgs) -> Result<()> {
    let geometry = resolve_geometry(cli.preset, args.mass, args.side)?;
    let params = CslParams::new(args.lambda, args.r_c)?;
    let beta = geometry.beta(params.r_c);
    let pair = diffusion_cube(&geometry, &params, consts);
    let hbar2 = consts.hbar * consts.hbar;

    println!("geometry: mass {} kg, side {} m, beta {beta:.6e}", geometry.mass, geometry.side);
    println!("eta_v       = {:.12e} 1/(s m^2)", pair.eta_v);
    println!("eta_r       = {:.12e} 1/s", pair.eta_r);
    println!("hbar^2 eta_v = {:.12e} N^2/Hz", hbar2 * pair.eta_v);
    println!("hbar^2 eta_r = {:.12e} N^2 m^2/Hz", hbar2 * pair.eta_r);

    let numeric = if args.numeric {
        if beta > csl_noise::diffusion::ORACLE_BETA_MAX && args.nodes.is_none() {
            return Err(Error::InvalidParameter(format!(
                "--numeric resolves the integrand only up to side/correlation-length \
                 ratios of about {}, got {beta:.3e}; the closed forms printed above \
                 are the reference there",
                csl_noise::diffusion::ORACLE_BETA_MAX
            )));
        }
        let spec = match args.nodes {
            Some(nodes) => QuadratureSpec::new(nodes, 8.0)?,
            None => QuadratureSpec::for_beta(beta),
        };
        let eta_v = eta_numeric(EtaKind::Translational, &geometry, &params, consts, &spec)?;
        let eta_r = eta_numeric(EtaKind::Rotational, &geometry, &params, consts, &spec)?;
        let rel = |num: f64, exact: f64| {
            if exact == 0.0 {
                num.abs()
            } else {
                (num / exact - 1.0).abs()
            }
        };
        let (dev_v, dev_r) = (rel(eta_v, pair.eta_v), rel(eta_r, pair.eta_r));
        println!("quadrature eta_v = {eta_v:.12e} 1/(s m^2)  (rel. diff {dev_v:.3e})");
        println!("quadrature eta_r = {eta_r:.12e} 1/s        (rel. diff {dev_r:.3e})");
        Some(serde_json::json!({
            "nodes_per_axis": spec.nodes_per_axis(),
            "eta_v": eta_v,
            "eta_r": eta_r,
            "rel_diff_v": dev_v,
            "rel_diff_r": dev_r,
        }))
    } else {
        None
    };

    let report = serde_json::json!({
        "lambda": params.lambda,
        "r_c": params.r_c,
        "mass": geometry.mass,
        "side": geometry.side,
        "beta": beta,
        "eta_v": pair.eta_v,
        "eta_r": pair.eta_r,
        "hbar2_eta_v": hbar2 * pair.eta_v,
        "hbar2_eta_r": hbar2 * pair.eta_r,
        "numeric": numeric,
    });
    let out = cli.output_dir.join("eta.json");
    write_json(&out, &report)?;
    let manifest = RunManifest::new("eta", report);
    manifest.write(cli.output_dir.join("eta.manifest.json"))?;
    println!("wrote {}", out.display());
    Ok(())
}

fn write_rows(path: &Path, header: &str, rows: impl Iterator<Item = String>) -> Result<()> {
    use std::io::Write as _;
    let file = std::fs::File::create(path)
        .map_err(|e| Error::io(format!("creating {}", path.display()), e))?;
    let mut w = std::io::BufWriter::new(file);
    let write_err = |e| Error::io(format!("writing {}", path.display()), e);
    writeln!(w, "{header}").map_err(write_err)?;
    for row in rows {
        writeln!(w, "{row}").map_err(write_err)?;
    }
    w.flush().map_err(write_err)
}

fn cmd_alpha(cli: &Cli, args: &AlphaArgs) -> Result<()> {
    match args.mode {
        AlphaMode::Curve => {
            let betas = log_space(args.beta_min, args.beta_max, args.points)?;
            let open = alpha_gas(GasModel::InfiniteVolume, 1.0)?;
            let confined = alpha_gas(GasModel::ConfinedEnclosure, 1.0)?;
            let mut rows = Vec::with_capacity(betas.len());
            for beta in betas {
                let profile = alpha_profile(beta)?;
                rows.push(format!("{beta:e},{profile:e},{open:e},{confined:e}"));
            }
            let out = cli.output_dir.join("alpha_curve.csv");
            write_rows(
                &out,
                "beta,alpha_csl_over_side2,alpha_gas_open_over_side2,alpha_gas_confined_over_side2",
                rows.into_iter(),
            )?;
            let manifest = RunManifest::new(
                "alpha",
                serde_json::json!({
                    "mode": "curve",
                    "beta_min": args.beta_min,
                    "beta_max": args.beta_max,
                    "points": args.points,
                }),
            );
            manifest.write(cli.output_dir.join("alpha_curve.manifest.json"))?;
            println!("wrote {}", out.display());
        }
        AlphaMode::Grid => {
            let model = GasModel::from(args.gas_model);
            let spec = AlphaGridSpec::default();
            let grid = alpha_grid(&spec, model)?;
            let mut rows = Vec::with_capacity(grid.r_c_axis().len() * grid.side_axis().len());
            for (i, &r_c) in grid.r_c_axis().iter().enumerate() {
                for (j, &side) in grid.side_axis().iter().enumerate() {
                    rows.push(format!("{r_c:e},{side:e},{:e}", grid.value(i, j)));
                }
            }
            let out = cli.output_dir.join("alpha_grid.csv");
            write_rows(&out, "r_c_m,side_m,log10_alpha_ratio", rows.into_iter())?;
            let manifest = RunManifest::new(
                "alpha",
                serde_json::json!({
                    "mode": "grid",
                    "gas_model": model,
                    "r_c_range": [spec.r_c_min, spec.r_c_max, spec.r_c_points],
                    "side_range": [spec.side_min, spec.side_max, spec.side_points],
                }),
            );
            manifest.write(cli.output_dir.join("alpha_grid.manifest.json"))?;
            println!("wrote {}", out.display());
        }
    }
    Ok(())
}

fn cmd_bound(cli: &Cli, consts: &PhysicalConstants, args: &BoundArgs) -> Result<()> {
    let geometry = resolve_geometry(cli.preset, args.mass, args.side)?;
    let spectrum = read_psd_csv(&args.input)?;
    let band = Band::new(args.band_min, args.band_max)?;
    let record = ExperimentRecord::new(geometry, spectrum, args.channel.into(), band)?;
    let grid = if (args.r_c_min, args.r_c_max, args.grid_points)
        == (1e-8, 1e-2, bounds::DEFAULT_GRID_POINTS)
    {
        default_r_c_grid()
    } else {
        log_space(args.r_c_min, args.r_c_max, args.grid_points)?
    };
    let curve = exclusion_curve(&record, &grid, consts)?;

    let csv_path = cli.output_dir.join("exclusion.csv");
    write_exclusion_csv(&csv_path, &curve)?;
    let sidecar = ExclusionSidecar::from_parts(
        &record,
        &curve,
        consts,
        args.input.display().to_string(),
    );
    write_json(cli.output_dir.join("exclusion.sidecar.json"), &sidecar)?;

    let classify = |params: CslParams| -> Result<(PointClassification, f64)> {
        Ok((curve.classify(&params)?, curve.lambda_max_at(params.r_c)?))
    };
    let (grw, grw_bound) = classify(CslParams::GRW)?;
    let (adler, adler_bound) = classify(CslParams::ADLER)?;
    println!("noise floor: {:e} ({})", curve.dns_floor(), curve.floor_unit());
    println!(
        "lambda_max(r_c = 1e-7 m) = {adler_bound:e} 1/s  [reference points: \
         lambda=1e-16 {grw:?}, lambda=1e-8 {adler:?}]"
    );
    let report = serde_json::json!({
        "dns_floor": curve.dns_floor(),
        "floor_unit": curve.floor_unit(),
        "reference_points": {
            "grw": { "lambda": CslParams::GRW.lambda, "r_c": CslParams::GRW.r_c,
                     "bound": grw_bound, "classification": grw },
            "adler": { "lambda": CslParams::ADLER.lambda, "r_c": CslParams::ADLER.r_c,
                       "bound": adler_bound, "classification": adler },
        },
    });
    write_json(cli.output_dir.join("bound_report.json"), &report)?;

    if !args.overlay.is_empty() {
        // One plot-ready file: this run's curve first, then every overlay,
        // each labelled by its file stem for the legend.
        let stem_of = |path: &std::path::Path| {
            path.file_stem()
                .map(|s| s.to_string_lossy().into_owned())
                .unwrap_or_else(|| path.display().to_string())
        };
        let mut rows = Vec::new();
        let own = stem_of(&args.input);
        for &(r_c, lambda) in curve.points() {
            rows.push(format!("{r_c:e},{lambda:e},{own}"));
        }
        for path in &args.overlay {
            let stem = stem_of(path);
            for (r_c, lambda) in read_exclusion_points(path)? {
                rows.push(format!("{r_c:e},{lambda:e},{stem}"));
            }
        }
        write_rows(
            &cli.output_dir.join("overlays.csv"),
            "r_c_m,lambda_max_per_s,source",
            rows.into_iter(),
        )?;
    }

    let mut manifest = RunManifest::new(
        "bound",
        serde_json::json!({
            "input": args.input.display().to_string(),
            "channel": Channel::from(args.channel),
            "band": [band.f_min, band.f_max],
            "mass": record.geometry().mass,
            "side": record.geometry().side,
            "grid": [args.r_c_min, args.r_c_max, args.grid_points],
            "m0": consts.m0,
        }),
    );
    manifest.add_input(&args.input)?;
    for path in &args.overlay {
        manifest.add_input(path)?;
    }
    manifest.write(cli.output_dir.join("bound.manifest.json"))?;
    println!("wrote {}", csv_path.display());
    Ok(())
}

/// Acceleration spectra come out of the estimator in kinematic units; the
/// driving-noise equivalent multiplies by (inertia/2)^2 and tags by channel.
fn acceleration_to_noise_density(
    estimate: &PsdEstimate,
    inertia: f64,
    channel: Channel,
) -> Result<SpectralDensity> {
    let (kin_unit, noise_unit) = match channel {
        Channel::Rotational => (UnitKind::AngularAccel, UnitKind::Torque),
        Channel::Translational => (UnitKind::Force, UnitKind::Force),
    };
    let kinematic = estimate.to_spectral_density(kin_unit)?;
    let factor = 0.25 * inertia * inertia;
    let values: Vec<f64> = kinematic.values().iter().map(|v| factor * v).collect();
    SpectralDensity::new(kinematic.frequencies().to_vec(), values, noise_unit)
}

fn cmd_simulate(cli: &Cli, consts: &PhysicalConstants, args: &SimulateArgs) -> Result<()> {
    let mut scenario: Scenario = read_json(&args.scenario)?;
    if let Some(seed) = cli.seed {
        scenario.seed = seed;
    }
    let config = scenario.oscillator_config(consts)?;
    let paths = simulate_ensemble(
        &config,
        scenario.duration,
        scenario.dt,
        scenario.seed,
        scenario.trajectories,
    )?;

    let mut coordinate_estimates = Vec::with_capacity(paths.len());
    let mut acceleration_estimates = Vec::with_capacity(paths.len());
    for trajectory in &paths {
        coordinate_estimates.push(welch_psd(
            trajectory,
            Observable::Coordinate,
            args.segments,
            Window::Hann,
        )?);
        acceleration_estimates.push(welch_psd(
            trajectory,
            Observable::Acceleration,
            args.segments,
            Window::Hann,
        )?);
    }
    let coordinate_psd = average_estimates(&coordinate_estimates)?;
    let acceleration_psd = average_estimates(&acceleration_estimates)?;

    let sample_path = cli.output_dir.join("trajectory.csv");
    let first = &paths[0];
    let sample_len = first.len().min(4096);
    write_rows(
        &sample_path,
        "time_s,coordinate,momentum",
        (0..sample_len).map(|k| {
            format!(
                "{:e},{:e},{:e}",
                k as f64 * first.dt(),
                first.coordinates()[k],
                first.momenta()[k]
            )
        }),
    )?;

    let noise_psd =
        acceleration_to_noise_density(&acceleration_psd, config.inertia, scenario.channel)?;
    let psd_path = cli.output_dir.join("psd.csv");
    write_psd_csv(&psd_path, &noise_psd)?;

    let transfer: Option<TransferReport> = if config.omega0 > 0.0 {
        Some(transfer_check(&config, &coordinate_psd)?)
    } else {
        None
    };
    if let Some(report) = &transfer {
        println!(
            "transfer check: max relative deviation {:.3e} over {} probes",
            report.max_rel_deviation,
            report.probes.len()
        );
    }
    let report = serde_json::json!({
        "noise_dns": config.noise_dns,
        "channel": scenario.channel,
        "trajectories": paths.len(),
        "samples_per_trajectory": first.len(),
        "segments_requested": args.segments,
        "segments_averaged": acceleration_psd.segment_count(),
        "transfer": transfer,
    });
    write_json(cli.output_dir.join("report.json"), &report)?;

    let mut manifest = RunManifest::new(
        "simulate",
        serde_json::json!({
            "scenario": args.scenario.display().to_string(),
            "seed": scenario.seed,
            "segments": args.segments,
            "m0": consts.m0,
        }),
    );
    manifest.add_input(&args.scenario)?;
    manifest.write(cli.output_dir.join("simulate.manifest.json"))?;
    println!(
        "wrote {}, {}, {}",
        sample_path.display(),
        psd_path.display(),
        cli.output_dir.join("report.json").display()
    );
    Ok(())
}
