//! Admissibility and consistency checks.

mod conservation;
mod quadrature;
mod weak;

pub use conservation::{conserved, total_mass, total_momentum};
pub use quadrature::GaussLegendre;
pub use weak::{
    entropy_weak_limit, fit_order, residual_ladder, weak_residual, Equation, Profile, ResidualReport, TestFunction,
    QUADRATURE_TOL,
};

use crate::domain::jump_brackets;
use crate::error::{Error, Result};
use crate::riemann::second_root_speed;

/// Left-hand side of the kinetic-energy entropy condition across a front
/// moving at `cdot`:
///
/// ```text
/// -ċ³[ρ] + 3ċ²[ρu] - 3ċ[ρu²] + [ρu³]
/// ```
///
/// The front is dissipative when this is `<= 0`.
pub fn entropy_lhs(rho0: f64, u0: f64, rho1: f64, u1: f64, cdot: f64) -> f64 {
    let (d_rho, d_m, d_e, d_f) = jump_brackets(rho0, u0, rho1, u1);
    ((-cdot * d_rho + 3.0 * d_m) * cdot - 3.0 * d_e) * cdot + d_f
}

/// The same quantity written as `κ1 (u0 u1 - ċ²) - κ2 (u0 + u1 - 2ċ)`.
pub fn entropy_lhs_kappa(rho0: f64, u0: f64, rho1: f64, u1: f64, cdot: f64) -> f64 {
    let (d_rho, d_m, d_e, _) = jump_brackets(rho0, u0, rho1, u1);
    let k1 = cdot * d_rho - d_m;
    let k2 = cdot * d_m - d_e;
    k1 * (u0 * u1 - cdot * cdot) - k2 * (u0 + u1 - 2.0 * cdot)
}

/// `u0 >= v >= u1`: characteristics on both sides run into the front.
pub fn is_overcompressive(u0: f64, v: f64, u1: f64) -> bool {
    u0 >= v && v >= u1
}

/// Whether the second root of `ξ' κ1 = κ2` lies strictly outside
/// `[min(u0, u1), max(u0, u1)]`.
///
/// Needs positive, distinct densities and distinct velocities.
pub fn second_root_excluded(rho0: f64, u0: f64, rho1: f64, u1: f64) -> Result<bool> {
    if !(rho0 > 0.0 && rho1 > 0.0) {
        return Err(Error::Domain("densities must be positive"));
    }
    if rho0 == rho1 {
        return Err(Error::Domain("densities must differ"));
    }
    if u0 == u1 {
        return Err(Error::Domain("velocities must differ"));
    }
    let v = second_root_speed(rho0, u0, rho1, u1).ok_or(Error::Domain("second root undefined"))?;
    Ok(v < u0.min(u1) || v > u0.max(u1))
}

/// Speed of the classical discontinuity when `κ1 = κ2 = 0` has a solution
/// without front mass: `u1` if the inner side is vacuum, `u0` if the outer
/// side is, the common velocity of a contact otherwise.
///
/// Returns `None` when no speed works, and when both sides are vacuum (any
/// speed works).
pub fn rankine_hugoniot_degenerate(rho0: f64, u0: f64, rho1: f64, u1: f64) -> Option<f64> {
    match (rho0 == 0.0, rho1 == 0.0) {
        (true, true) => None,
        (true, false) => Some(u1),
        (false, true) => Some(u0),
        (false, false) => (u0 == u1).then_some(u0),
    }
}
