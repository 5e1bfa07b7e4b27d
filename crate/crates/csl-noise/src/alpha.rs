//! The torque-to-force noise advantage α = η_R/η_V (units m²) for collapse
//! noise, the same ratio for residual-gas collisions, and the (r_C, L)
//! decision grids comparing the two.
//!
//! α measures how much a rotational measurement buys relative to a
//! translational one on the same test mass: when the collapse signal's α
//! exceeds the background's α, reading out torque gives the stronger
//! bound. Both ratios scale as the cube edge squared, so the dimensionless
//! profiles α/L² (a function of β = L/r_C for collapse noise, a pure
//! number per gas model) carry all the structure.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::form_factor::{exp_deficit, exp_factor, g_aux, h_aux, w_aux, W_SERIES_CUT};
use crate::grid::log_space;
use crate::phys::{CslParams, CubeGeometry};

/// Largest β = L/r_C the ratio operations accept.
pub const ALPHA_BETA_MAX: f64 = 1e9;

/// Above this β the collapse-noise ratio is pinned to its large-β limit.
pub const ALPHA_ASYMPTOTE_BETA: f64 = 30.0;

/// The β → ∞ limit of α/L².
pub const ALPHA_ASYMPTOTE: f64 = 1.0 / 6.0;

fn check_beta(beta: f64) -> Result<()> {
    if !(beta.is_finite() && beta > 0.0 && beta <= ALPHA_BETA_MAX) {
        return Err(Error::InvalidParameter(format!(
            "beta = side/r_c must lie in (0, 1e9], got {beta:e}"
        )));
    }
    Ok(())
}

fn check_side(side: f64) -> Result<()> {
    if !(side.is_finite() && side > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "cube side must be finite and positive, got {side:e} m"
        )));
    }
    Ok(())
}

/// Dimensionless collapse-noise ratio α/L² as a function of β = L/r_C.
///
/// Three regimes:
///
/// * β < 2 — the β¹²-suppressed rotational kernel comes from its Maclaurin
///   series (the direct form is pure cancellation noise there);
/// * 2 ≤ β < 30 — a numerically stabilised rearrangement of the exact
///   ratio: the raw form contains e^{+β²/4} factors that overflow around
///   β ≈ 53, so numerator and denominator are multiplied through by
///   e^{−β²/2} and regrouped in powers of E = e^{−β²/4}, which only decay;
/// * β ≥ 30 — pinned to the limit 1/6.
///
/// The pin at β = 30 is deliberately *discontinuous*: the exact profile is
/// still ≈ 24 % below 1/6 there and closes only like 1/β (it reaches one
/// part in 10³ of the limit around β ≈ 7600). Callers who need the exact
/// finite-β ratio in that regime can form
/// [`crate::diffusion::eta_r_cube`] / [`crate::diffusion::eta_v_cube`]
/// directly.
pub fn alpha_profile(beta: f64) -> Result<f64> {
    check_beta(beta)?;
    if beta >= ALPHA_ASYMPTOTE_BETA {
        return Ok(ALPHA_ASYMPTOTE);
    }
    let u = exp_deficit(beta);
    let h = h_aux(beta);
    let numerator = if beta < W_SERIES_CUT {
        -w_aux(beta)
    } else {
        stabilized_numerator(beta)
    };
    Ok(numerator / (12.0 * beta * beta * u * h))
}

/// The exact ratio numerator (−W) regrouped in powers of E = exp(−β²/4).
///
/// Algebraically identical to the rotational kernel of
/// [`crate::form_factor::w_aux`] but follows a different arithmetic path,
/// so agreement between [`alpha_profile`] and the quotient of the two
/// closed-form diffusion coefficients is a real cross-check rather than
/// the same rounding twice.
fn stabilized_numerator(beta: f64) -> f64 {
    let e = exp_factor(beta);
    let g = g_aux(beta);
    let b2 = beta * beta;
    let gg = (b2 + 24.0) * g;
    -2.0 * (b2 + 16.0) * e * e + e * (8.0 * (b2 + 8.0) - gg)
        + (gg - 3.0 * g * g - 6.0 * b2 - 32.0)
}

/// Collapse-noise torque-to-force ratio α = η_R/η_V in m² for a cube of
/// edge `side` at β = side/r_C.
pub fn alpha_csl(beta: f64, side: f64) -> Result<f64> {
    check_side(side)?;
    Ok(side * side * alpha_profile(beta)?)
}

/// How residual-gas molecules decohere the test mass: the two limiting
/// collision environments bracket any real apparatus.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GasModel {
    /// Open volume: scattered molecules never come back.
    InfiniteVolume,
    /// Narrow gap between test mass and housing: molecules shuttle across
    /// the gap and strike the same face repeatedly, decorrelating the
    /// torque they exert.
    ConfinedEnclosure,
}

impl GasModel {
    /// Gas torque-to-force ratio divided by L² — a published constant per
    /// environment.
    pub fn coefficient(self) -> f64 {
        match self {
            GasModel::InfiniteVolume => 0.226,
            GasModel::ConfinedEnclosure => 0.04,
        }
    }
}

/// Gas-collision torque-to-force ratio in m² for a cube of edge `side`.
pub fn alpha_gas(model: GasModel, side: f64) -> Result<f64> {
    check_side(side)?;
    Ok(model.coefficient() * side * side)
}

/// Does measuring torque beat measuring force when hunting collapse noise
/// against a gas-collision background? True iff the collapse noise gains
/// more from the rotational channel than the background does:
/// α_CSL(β, L) > α_gas(model, L).
pub fn rotational_preferred(
    params: &CslParams,
    geometry: &CubeGeometry,
    model: GasModel,
) -> Result<bool> {
    let beta = geometry.beta(params.r_c);
    Ok(alpha_csl(beta, geometry.side)? > alpha_gas(model, geometry.side)?)
}

/// Scan rectangle for [`alpha_grid`]: log-spaced in both the correlation
/// length and the cube edge.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AlphaGridSpec {
    pub r_c_min: f64,
    pub r_c_max: f64,
    pub r_c_points: usize,
    pub side_min: f64,
    pub side_max: f64,
    pub side_points: usize,
}

impl Default for AlphaGridSpec {
    /// r_C from 10 nm to 1 cm, edges from 1 mm to 1 m, 200 × 200.
    fn default() -> Self {
        AlphaGridSpec {
            r_c_min: 1e-8,
            r_c_max: 1e-2,
            r_c_points: 200,
            side_min: 1e-3,
            side_max: 1.0,
            side_points: 200,
        }
    }
}

/// log₁₀(α_CSL/α_gas) tabulated over a (r_C, L) rectangle for one gas
/// model. Positive cells are where the rotational channel wins.
#[derive(Debug, Clone, PartialEq)]
pub struct AlphaGrid {
    r_c_axis: Vec<f64>,
    side_axis: Vec<f64>,
    /// Row-major: `log10_ratio[i_r_c * side_axis.len() + i_side]`.
    log10_ratio: Vec<f64>,
    model: GasModel,
}

impl AlphaGrid {
    pub fn r_c_axis(&self) -> &[f64] {
        &self.r_c_axis
    }

    pub fn side_axis(&self) -> &[f64] {
        &self.side_axis
    }

    pub fn log10_ratio(&self) -> &[f64] {
        &self.log10_ratio
    }

    pub fn model(&self) -> GasModel {
        self.model
    }

    pub fn value(&self, i_r_c: usize, i_side: usize) -> f64 {
        self.log10_ratio[i_r_c * self.side_axis.len() + i_side]
    }
}

/// Fill log₁₀(α_CSL/α_gas) over the scan rectangle. The ratio is
/// independent of λ and of the cube mass, and the L² factors cancel, so
/// each cell is simply log₁₀ of the profile quotient at β = L/r_C.
pub fn alpha_grid(spec: &AlphaGridSpec, model: GasModel) -> Result<AlphaGrid> {
    let r_c_axis = log_space(spec.r_c_min, spec.r_c_max, spec.r_c_points)?;
    let side_axis = log_space(spec.side_min, spec.side_max, spec.side_points)?;
    let mut log10_ratio = Vec::with_capacity(r_c_axis.len() * side_axis.len());
    for &r_c in &r_c_axis {
        for &side in &side_axis {
            let ratio = alpha_profile(side / r_c)? / model.coefficient();
            if !(ratio.is_finite() && ratio > 0.0) {
                return Err(Error::InvalidParameter(format!(
                    "alpha ratio underflowed at r_c = {r_c:e} m, side = {side:e} m; \
                     the grid extends to beta too small to represent"
                )));
            }
            log10_ratio.push(ratio.log10());
        }
    }
    Ok(AlphaGrid {
        r_c_axis,
        side_axis,
        log10_ratio,
        model,
    })
}
