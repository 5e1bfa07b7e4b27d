//! Numerical toolkit for continuous-collapse noise in macroscopic
//! mechanical experiments.
//!
//! Collapse models add a universal white-noise force — and, for extended
//! bodies, a torque — on top of ordinary quantum mechanics. Precision
//! mechanical experiments therefore turn into collapse detectors: any
//! unexplained noise floor caps the collapse rate. This crate carries that
//! argument end to end for a rigid cuboid test mass:
//!
//! * [`diffusion`] — closed-form translational (`eta_v`, 1/(s·m²)) and
//!   rotational (`eta_r`, 1/s) diffusion coefficients for a homogeneous
//!   cube, plus a brute-force quadrature oracle to validate them;
//! * [`alpha`] — the rotational lever arm `alpha = eta_r/eta_v` (units m²)
//!   that decides when a torque measurement beats a force measurement,
//!   with the competing lever arms of residual-gas collisions;
//! * [`bounds`] — measured noise spectra in, collapse-rate exclusion
//!   curves out: band floors, unit conversion through the readout chain,
//!   `lambda_max(r_C)` curves and point classification;
//! * [`langevin`] — a seeded stochastic integrator for the torsion-balance
//!   response to the collapse drive, and [`welch`] to take the spectrum
//!   back out, closing the loop on the injected density;
//! * [`io`] / [`manifest`] — CSV/JSON archival formats that round-trip
//!   every f64 bit-for-bit, and run manifests with input digests.
//!
//! The numbers default to the geometry of the LISA Pathfinder test masses
//! (1.928 kg, 46 mm cube), the configuration where rotational noise is
//! currently the sharpest probe.
//!
//! # Where to start
//!
//! Each major capability has a runnable example:
//!
//! * `diffusion_coefficients` — evaluate both coefficients across the
//!   correlation-length range and cross-check against the quadrature
//!   oracle;
//! * `lever_arm_curve` — trace `alpha/side²` from the small-cube to the
//!   large-cube regime and its 1/6 plateau;
//! * `decision_grid` — map where rotation beats translation for each
//!   residual-gas model;
//! * `exclusion_bound` — full pipeline from a measured spectrum to an
//!   exclusion curve, with reference collapse parameters classified;
//! * `noise_closure` — drive the simulator with a collapse-model torque
//!   density and recover it from the simulated spectrum;
//! * `free_diffusion` — verify the momentum-variance growth law on an
//!   undamped ensemble.
//!
//! Run one with `cargo run --example <name>`; they write their data files
//! into `examples_out/`.
//!
//! The same pipelines are scriptable through the `csl-noise` binary
//! (`eta`, `alpha`, `bound`, `simulate`; see `csl-noise --help`), which
//! adds run manifests alongside every output.

pub mod alpha;
pub mod bounds;
pub mod diffusion;
pub mod error;
pub mod form_factor;
pub mod grid;
pub mod io;
pub mod langevin;
pub mod manifest;
pub mod phys;
pub mod special;
pub mod welch;

pub use error::{Error, Result};
