//! Scalar auxiliaries of the cube's smeared geometric form factor.
//!
//! Every function here depends on the single dimensionless ratio β = L/r_C
//! (cube edge over noise correlation length). The closed-form diffusion
//! coefficients are polynomial combinations of:
//!
//! * `exp_factor`  E(β) = exp(−β²/4), the Gaussian attenuation over one edge;
//! * `exp_deficit` u(β) = 1 − E(β);
//! * `g_aux`       g(β) = √π · β · erf(β/2);
//! * `h_aux`       h(β) = g/2 − u, the translational kernel;
//! * `w_aux`       W(β), the rotational kernel — strictly negative for β > 0
//!   and O(β¹²) at small β, which is why it gets a dedicated series branch.

use crate::special::erf;

pub(crate) const SQRT_PI: f64 = 1.772_453_850_905_515_9;

/// Gaussian attenuation factor E(β) = exp(−β²/4).
pub fn exp_factor(beta: f64) -> f64 {
    (-beta * beta / 4.0).exp()
}

/// Deficit u(β) = 1 − exp(−β²/4), computed via `expm1` so small β keep
/// full relative precision.
pub fn exp_deficit(beta: f64) -> f64 {
    -(-beta * beta / 4.0).exp_m1()
}

/// g(β) = √π · β · erf(β/2).
///
/// Beyond β = 40 the erf factor is 1 to within ~e⁻⁴⁰⁰, so the asymptote
/// √π·β is returned directly.
pub fn g_aux(beta: f64) -> f64 {
    if beta >= 40.0 {
        SQRT_PI * beta
    } else {
        SQRT_PI * beta * erf(beta / 2.0)
    }
}

/// Translational kernel h(β) = g(β)/2 − u(β) = β²/4 − β⁴/96·… for small β.
///
/// The subtraction costs at most one bit (the terms differ by a factor ≈ 2),
/// so the direct form is accurate at every β.
pub fn h_aux(beta: f64) -> f64 {
    0.5 * g_aux(beta) - exp_deficit(beta)
}

/// Below this β the direct form of [`w_aux`] has lost too many digits to
/// pure cancellation and the Maclaurin branch takes over.
pub(crate) const W_SERIES_CUT: f64 = 2.0;

// Maclaurin coefficients of −W in x = β², orders x⁶ through x²⁵, each the
// nearest f64 to the exact rational (leading term x⁶/460800). Truncation
// error at the branch point x = 4 is below 1e-16 relative.
const NEG_W_SERIES: [f64; 20] = [
    2.170138888888889e-6,
    -3.875248015873016e-7,
    3.852181063397581e-8,
    -2.776771779050425e-9,
    1.6088448824315796e-10,
    -7.911201849684225e-12,
    3.4136311382782557e-13,
    -1.3217450841521016e-14,
    4.665718256715648e-16,
    -1.519139029269663e-17,
    4.602834657217908e-19,
    -1.306717666396618e-20,
    3.49484886210609e-22,
    -8.84455463303368e-24,
    2.1256974796571302e-25,
    -4.866667324237738e-27,
    1.064150530283047e-28,
    -2.227435073220395e-30,
    4.472097234959571e-32,
    -8.627846525585336e-34,
];

/// Rotational kernel
/// W(β) = u·[2(3−E)β² + 32u − (β²+24)g] + 3g².
///
/// W < 0 for all β > 0 and vanishes like −β¹²/460800 as β → 0: every term
/// of lower order cancels exactly, so the direct form is numerically dead
/// below β ≈ 2 (at β = 0.1 it returns pure rounding noise). The Maclaurin
/// branch keeps relative error ≤ 3e-15 there; the branches agree to ~3e-13
/// at the seam.
pub fn w_aux(beta: f64) -> f64 {
    if beta < W_SERIES_CUT {
        w_series(beta)
    } else {
        w_direct(beta)
    }
}

fn w_series(beta: f64) -> f64 {
    let x = beta * beta;
    let mut acc = 0.0;
    for &c in NEG_W_SERIES.iter().rev() {
        acc = acc * x + c;
    }
    -(acc * x.powi(6))
}

fn w_direct(beta: f64) -> f64 {
    let e = exp_factor(beta);
    let u = exp_deficit(beta);
    let g = g_aux(beta);
    let b2 = beta * beta;
    u * (2.0 * (3.0 - e) * b2 + 32.0 * u - (b2 + 24.0) * g) + 3.0 * g * g
}
