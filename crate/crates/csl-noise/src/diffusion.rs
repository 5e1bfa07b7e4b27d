//! Momentum-diffusion coefficients for a cube bathed in collapse noise.
//!
//! Two views of the same physics live here and are kept deliberately
//! independent so each can certify the other:
//!
//! * **Closed forms** ([`eta_v_cube`], [`eta_r_cube`]): the 3D noise-kernel
//!   integrals collapsed to the scalar auxiliaries of
//!   [`crate::form_factor`]. Fast and exact up to f64 rounding.
//! * **Brute-force quadrature** ([`eta_numeric`]): tensor-product
//!   Gauss–Legendre over the full momentum-space box, evaluating the raw
//!   integrands term by term — no factorisation, no shared algebra with the
//!   closed forms beyond `sinc` itself.
//!
//! The translational coefficient η_V has units 1/(s·m²); the white force
//! noise it generates has double-sided density S_F = ħ²·η_V (N²/Hz).
//! The rotational coefficient η_R has units 1/s and S_τ = ħ²·η_R likewise.

use crate::error::{Error, Result};
use crate::form_factor::{exp_deficit, h_aux, w_aux, SQRT_PI};
use crate::phys::{CslParams, CubeGeometry, PhysicalConstants};
use crate::special::{sinc, sinc_deriv};

/// Convergence demanded of the self-check in [`eta_numeric`]: the n and 2n
/// node results must agree to this relative tolerance.
const QUAD_SELF_CHECK_TOL: f64 = 1e-8;

/// Selects which diffusion coefficient an operation refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EtaKind {
    /// Centre-of-mass (force) diffusion η_V.
    Translational,
    /// Orientation (torque) diffusion η_R.
    Rotational,
}

/// Both diffusion coefficients evaluated at one parameter point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiffusionPair {
    /// η_V in 1/(s·m²).
    pub eta_v: f64,
    /// η_R in 1/s.
    pub eta_r: f64,
}

/// Translational diffusion coefficient η_V of a cube, 1/(s·m²).
///
/// η_V = 32·λ·(m/m₀)²·u(β)·h(β)² / (β⁶·r_C²) with β = L/r_C.
pub fn eta_v_cube(
    geometry: &CubeGeometry,
    params: &CslParams,
    consts: &PhysicalConstants,
) -> f64 {
    let beta = geometry.beta(params.r_c);
    let mass_ratio = geometry.mass / consts.m0;
    let u = exp_deficit(beta);
    let h = h_aux(beta);
    32.0 * params.lambda * mass_ratio * mass_ratio * u * h * h
        / (beta.powi(6) * params.r_c * params.r_c)
}

/// Rotational diffusion coefficient η_R of a cube, 1/s.
///
/// η_R = (8/3)·λ·(m/m₀)²·h(β)·(−W(β)) / β⁶ with β = L/r_C. The kernel
/// W is negative, so the coefficient is positive.
pub fn eta_r_cube(
    geometry: &CubeGeometry,
    params: &CslParams,
    consts: &PhysicalConstants,
) -> f64 {
    let beta = geometry.beta(params.r_c);
    let mass_ratio = geometry.mass / consts.m0;
    let h = h_aux(beta);
    (8.0 / 3.0) * params.lambda * mass_ratio * mass_ratio * h * (-w_aux(beta)) / beta.powi(6)
}

/// Both closed-form coefficients at once.
pub fn diffusion_cube(
    geometry: &CubeGeometry,
    params: &CslParams,
    consts: &PhysicalConstants,
) -> DiffusionPair {
    DiffusionPair {
        eta_v: eta_v_cube(geometry, params, consts),
        eta_r: eta_r_cube(geometry, params, consts),
    }
}

/// Largest `β = L/r_C` the brute-force oracle is designed for: beyond this
/// the node count the integrand demands no longer fits
/// [`MAX_NODES_PER_AXIS`] and the closed forms are the only practical
/// evaluation.
pub const ORACLE_BETA_MAX: f64 = 200.0;

/// Hard ceiling on quadrature resolution. The cost of one self-checked
/// evaluation grows as `9·nodes³`; 1024 nodes per axis is roughly ten
/// seconds of work and already covers [`ORACLE_BETA_MAX`].
pub const MAX_NODES_PER_AXIS: usize = 1024;

/// Resolution of the brute-force quadrature: a tensor-product
/// Gauss–Legendre rule with `nodes_per_axis` points per axis on the cube
/// `[-k_max, k_max]³` in units of 1/r_C.
///
/// Invariants (enforced by [`QuadratureSpec::new`]): 8 to
/// [`MAX_NODES_PER_AXIS`] nodes per axis, and `k_max ≥ 6` so the Gaussian
/// tail beyond the box is below f64 precision (e^{-36} ≈ 2e-16).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureSpec {
    nodes_per_axis: usize,
    k_max: f64,
}

impl QuadratureSpec {
    pub fn new(nodes_per_axis: usize, k_max: f64) -> Result<Self> {
        if nodes_per_axis < 8 {
            return Err(Error::InvalidParameter(format!(
                "quadrature needs at least 8 nodes per axis, got {nodes_per_axis}"
            )));
        }
        if nodes_per_axis > MAX_NODES_PER_AXIS {
            return Err(Error::InvalidParameter(format!(
                "quadrature cost grows as nodes³; {nodes_per_axis} nodes per axis exceeds \
                 the {MAX_NODES_PER_AXIS} ceiling — use the closed forms for large geometry \
                 ratios instead"
            )));
        }
        if !(k_max.is_finite() && k_max >= 6.0) {
            return Err(Error::InvalidParameter(format!(
                "quadrature box half-width k_max must be at least 6 (units of 1/r_C), got {k_max}"
            )));
        }
        Ok(QuadratureSpec {
            nodes_per_axis,
            k_max,
        })
    }

    /// Resolution adequate for a given β = L/r_C: the integrand oscillates
    /// on the scale 2π/β inside a box of half-width 8, so the node count
    /// must grow linearly with β. `max(96, ⌈4.5·β⌉ + 64)` keeps the
    /// self-check residual near f64 precision up to [`ORACLE_BETA_MAX`].
    /// Beyond that the count saturates at [`MAX_NODES_PER_AXIS`] and the
    /// self-check inside [`eta_numeric`] reports non-convergence instead of
    /// silently returning an under-resolved integral.
    pub fn for_beta(beta: f64) -> Self {
        let scaled = (4.5 * beta).ceil() as usize + 64;
        QuadratureSpec {
            nodes_per_axis: scaled.clamp(96, MAX_NODES_PER_AXIS),
            k_max: 8.0,
        }
    }

    pub fn nodes_per_axis(&self) -> usize {
        self.nodes_per_axis
    }

    pub fn k_max(&self) -> f64 {
        self.k_max
    }
}

impl Default for QuadratureSpec {
    /// 96 nodes on [-8, 8]³ — adequate up to β ≈ 7.
    fn default() -> Self {
        QuadratureSpec {
            nodes_per_axis: 96,
            k_max: 8.0,
        }
    }
}

/// Brute-force evaluation of a diffusion coefficient by 3D quadrature of
/// the raw momentum-space integrand, with a built-in resolution self-check:
/// the rule is evaluated at the requested node count and at double that
/// count, and the doubled result is returned only if the two agree to
/// 1e-8 relative. Disagreement means the box or node count is too coarse
/// for this β and yields [`Error::NonConvergence`] instead of a silently
/// wrong number.
pub fn eta_numeric(
    kind: EtaKind,
    geometry: &CubeGeometry,
    params: &CslParams,
    consts: &PhysicalConstants,
    spec: &QuadratureSpec,
) -> Result<f64> {
    if params.lambda == 0.0 {
        return Ok(0.0);
    }
    let beta = geometry.beta(params.r_c);
    let mass_ratio = geometry.mass / consts.m0;
    let pi_32 = std::f64::consts::PI * SQRT_PI;
    let prefactor = match kind {
        EtaKind::Translational => {
            params.lambda * mass_ratio * mass_ratio / (pi_32 * params.r_c * params.r_c)
        }
        EtaKind::Rotational => params.lambda * mass_ratio * mass_ratio * beta * beta / (4.0 * pi_32),
    };

    let coarse = raw_integral(kind, beta, spec.nodes_per_axis, spec.k_max);
    let fine = raw_integral(kind, beta, 2 * spec.nodes_per_axis, spec.k_max);
    let rel_diff = if fine == 0.0 {
        coarse.abs()
    } else {
        ((coarse - fine) / fine).abs()
    };
    if rel_diff > QUAD_SELF_CHECK_TOL {
        return Err(Error::NonConvergence {
            nodes: spec.nodes_per_axis,
            nodes_doubled: 2 * spec.nodes_per_axis,
            rel_diff,
            tol: QUAD_SELF_CHECK_TOL,
        });
    }
    Ok(prefactor * fine)
}

/// Per-axis node tables: everything the 3D integrands need, tabulated once
/// per axis so the triple loop touches only precomputed values.
struct AxisTables {
    /// Gauss–Legendre weight times the Gaussian, w_i·exp(−q_i²).
    wg: Vec<f64>,
    /// q_i.
    q: Vec<f64>,
    /// sinc(q_i·β/2).
    s: Vec<f64>,
    /// sinc′(q_i·β/2).
    ds: Vec<f64>,
}

fn axis_tables(nodes: usize, k_max: f64, beta: f64) -> AxisTables {
    let (t, wt) = gauss_legendre(nodes);
    let mut tables = AxisTables {
        wg: Vec::with_capacity(nodes),
        q: Vec::with_capacity(nodes),
        s: Vec::with_capacity(nodes),
        ds: Vec::with_capacity(nodes),
    };
    for i in 0..nodes {
        let q = k_max * t[i];
        let w = k_max * wt[i];
        let arg = 0.5 * beta * q;
        tables.wg.push(w * (-q * q).exp());
        tables.q.push(q);
        tables.s.push(sinc(arg));
        tables.ds.push(sinc_deriv(arg));
    }
    tables
}

/// The dimensionless box integral for one coefficient (prefactors applied
/// by the caller), as an honest triple loop over the tensor grid.
fn raw_integral(kind: EtaKind, beta: f64, nodes: usize, k_max: f64) -> f64 {
    let ax = axis_tables(nodes, k_max, beta);
    match kind {
        EtaKind::Translational => {
            // ∫ e^{−q²} q_x² Π_i sinc²(q_i β/2) d³q
            let fx: Vec<f64> = (0..nodes)
                .map(|i| ax.wg[i] * ax.q[i] * ax.q[i] * ax.s[i] * ax.s[i])
                .collect();
            let fyz: Vec<f64> = (0..nodes).map(|i| ax.wg[i] * ax.s[i] * ax.s[i]).collect();
            triple_product_sum(&fx, &fyz, &fyz)
        }
        EtaKind::Rotational => {
            // ∫ e^{−q²} sinc²(q_x β/2) [q_y s_y s′_z − q_z s_z s′_y]² d³q
            let fx: Vec<f64> = (0..nodes).map(|i| ax.wg[i] * ax.s[i] * ax.s[i]).collect();
            let qs: Vec<f64> = (0..nodes).map(|i| ax.q[i] * ax.s[i]).collect();
            triple_cross_sum(&fx, &ax.wg, &qs, &ax.ds)
        }
    }
}

/// Σ_{xyz} f(x)·g(y)·h(z), summed in index order with per-slice and
/// per-row partials so the rounding behaviour is reproducible.
fn triple_product_sum(fx: &[f64], fy: &[f64], fz: &[f64]) -> f64 {
    let mut total = 0.0;
    for &vx in fx {
        let mut slice = 0.0;
        for &vy in fy {
            let mut row = 0.0;
            for &vz in fz {
                row += vz;
            }
            slice += vy * row;
        }
        total += vx * slice;
    }
    total
}

/// Σ_{xyz} f(x)·w(y)·w(z)·(qs(y)·ds(z) − qs(z)·ds(y))².
fn triple_cross_sum(fx: &[f64], wg: &[f64], qs: &[f64], ds: &[f64]) -> f64 {
    let n = wg.len();
    let mut total = 0.0;
    for &vx in fx {
        let mut slice = 0.0;
        for iy in 0..n {
            let qs_y = qs[iy];
            let ds_y = ds[iy];
            let mut row = 0.0;
            for iz in 0..n {
                let cross = qs_y * ds[iz] - qs[iz] * ds_y;
                row += wg[iz] * cross * cross;
            }
            slice += wg[iy] * row;
        }
        total += vx * slice;
    }
    total
}

/// Gauss–Legendre nodes (ascending) and weights on [−1, 1], by Newton
/// iteration on the three-term Legendre recurrence.
fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(n >= 2, "Gauss-Legendre rule needs at least 2 nodes, got {n}");
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let nf = n as f64;
    for i in 0..n.div_ceil(2) {
        // Tricomi-style initial guess for the i-th root (descending order)
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let mut p_prev = 1.0;
            let mut p = x;
            for k in 2..=n {
                let kf = k as f64;
                let p_next = ((2.0 * kf - 1.0) * x * p - (kf - 1.0) * p_prev) / kf;
                p_prev = p;
                p = p_next;
            }
            dp = nf * (x * p - p_prev) / (x * x - 1.0);
            let step = p / dp;
            x -= step;
            if step.abs() <= 1e-15 {
                break;
            }
        }
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    (nodes, weights)
}
