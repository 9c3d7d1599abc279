//! Shared domain types.
//!
//! Densities in initial data and stationary regions are stored as
//! coefficients of `r^(1-n)`: a region with coefficient `c` has pointwise
//! density `c * r^(1-n)` and carries mass `|S^(n-1)| * c` per unit radius.

use core::f64::consts::PI;

#[allow(unused_imports)] // shadowed by inherent methods when std is linked
use num_traits::Float;

use crate::error::{Error, Result};

/// Surface area `|S^(n-1)|` of the unit sphere in `R^n`.
///
/// Uses the exact recurrence `|S^(n-1)| = 2π |S^(n-3)| / (n-2)` seeded by
/// `|S^0| = 2` and `|S^1| = 2π`.
pub fn surface_area(n: u32) -> Result<f64> {
    if n < 1 {
        return Err(Error::Domain("space dimension must be at least 1"));
    }
    let mut area = if n % 2 == 1 { 2.0 } else { 2.0 * PI };
    let mut k = if n % 2 == 1 { 1 } else { 2 };
    while k < n {
        k += 2;
        area *= 2.0 * PI / f64::from(k - 2);
    }
    Ok(area)
}

/// Jumps `([ρ], [ρu], [ρu²], [ρu³])` across a front with left state
/// `(rho0, u0)` and right state `(rho1, u1)`; `[f] = f1 - f0`.
pub fn jump_brackets(rho0: f64, u0: f64, rho1: f64, u1: f64) -> (f64, f64, f64, f64) {
    let m0 = rho0 * u0;
    let m1 = rho1 * u1;
    (rho1 - rho0, m1 - m0, m1 * u1 - m0 * u0, m1 * u1 * u1 - m0 * u0 * u0)
}

/// Pseudo-Riemann initial data: `(rho_l r^(1-n), u_l)` for `r < radius`,
/// `(rho_r r^(1-n), u_r)` for `r > radius`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PseudoRiemannData {
    pub n: u32,
    pub radius: f64,
    pub rho_l: f64,
    pub u_l: f64,
    pub rho_r: f64,
    pub u_r: f64,
}

impl PseudoRiemannData {
    pub fn new(n: u32, radius: f64, rho_l: f64, u_l: f64, rho_r: f64, u_r: f64) -> Result<Self> {
        let data = Self {
            n,
            radius,
            rho_l,
            u_l,
            rho_r,
            u_r,
        };
        data.validate()?;
        Ok(data)
    }

    pub fn validate(&self) -> Result<()> {
        if self.n < 1 {
            return Err(Error::Domain("space dimension must be at least 1"));
        }
        if !(self.radius > 0.0) || !self.radius.is_finite() {
            return Err(Error::Domain("jump radius must be positive and finite"));
        }
        if !(self.rho_l >= 0.0 && self.rho_r >= 0.0) || !self.rho_l.is_finite() || !self.rho_r.is_finite() {
            return Err(Error::Domain("density coefficients must be finite and nonnegative"));
        }
        if !self.u_l.is_finite() || !self.u_r.is_finite() {
            return Err(Error::Domain("velocities must be finite"));
        }
        Ok(())
    }

    /// `|S^(n-1)|` for this dimension.
    pub fn area(&self) -> f64 {
        surface_area(self.n).unwrap_or(f64::NAN)
    }

    pub fn left(&self) -> RegionProfile {
        RegionProfile::power_law(self.rho_l, self.u_l)
    }

    pub fn right(&self) -> RegionProfile {
        RegionProfile::power_law(self.rho_r, self.u_r)
    }
}

/// Stationary profile between two fronts.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum RegionProfile {
    /// `ρ = coeff * r^(1-n)`, `u = velocity`.
    PowerLaw { coeff: f64, velocity: f64 },
    /// `ρ = 0`; the velocity is not physical.
    Vacuum,
}

impl RegionProfile {
    /// A power law with zero coefficient is reported as vacuum.
    pub fn power_law(coeff: f64, velocity: f64) -> Self {
        if coeff > 0.0 {
            RegionProfile::PowerLaw { coeff, velocity }
        } else {
            RegionProfile::Vacuum
        }
    }

    pub fn is_vacuum(&self) -> bool {
        matches!(self, RegionProfile::Vacuum)
    }

    pub fn coeff(&self) -> f64 {
        match *self {
            RegionProfile::PowerLaw { coeff, .. } => coeff,
            RegionProfile::Vacuum => 0.0,
        }
    }

    pub fn velocity(&self) -> Option<f64> {
        match *self {
            RegionProfile::PowerLaw { velocity, .. } => Some(velocity),
            RegionProfile::Vacuum => None,
        }
    }

    /// Pointwise density at radius `r`.
    pub fn density(&self, r: f64, n: u32) -> f64 {
        match *self {
            RegionProfile::PowerLaw { coeff, .. } => coeff * radial_power(r, n),
            RegionProfile::Vacuum => 0.0,
        }
    }
}

/// `r^(1-n)`.
pub(crate) fn radial_power(r: f64, n: u32) -> f64 {
    if n == 1 {
        1.0
    } else {
        r.powi(1 - n as i32)
    }
}

/// Wave type of a front.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FrontKind {
    /// Carries a delta mass on the sphere `r = ξ(t)`.
    ShadowWave,
    /// Edge of a vacuum region emanating from the initial jump at `r = R`.
    Shock,
    /// Interface between two material regions moving with the same velocity.
    Contact,
    /// Edge of the vacuum region that opens at the origin.
    VacuumEdge,
}

/// Instantaneous state of a front.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FrontState {
    pub kind: FrontKind,
    pub xi: f64,
    pub speed: f64,
    /// Lineal delta mass; zero for everything but shadow waves.
    pub sigma: f64,
}

/// Delta mass concentrated on a sphere.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Atom {
    pub radius: f64,
    pub sigma: f64,
    /// `|S^(n-1)| * radius^(n-1) * sigma`.
    pub total_mass: f64,
}

/// Field values at one space-time point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolutionSample {
    pub r: f64,
    pub t: f64,
    pub rho: f64,
    /// Velocity; inside vacuum this is only a sampling convention.
    pub u: f64,
    pub is_vacuum: bool,
    pub m0: f64,
    pub atom: Option<Atom>,
}

/// Total mass and momentum of a solution.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConservedPair {
    pub mass: f64,
    pub momentum: f64,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn surface_area_low_dimensions() {
        assert_eq!(surface_area(1).unwrap(), 2.0);
        assert!((surface_area(2).unwrap() - 2.0 * PI).abs() < 1e-15);
        assert!((surface_area(3).unwrap() - 4.0 * PI).abs() < 1e-14);
        assert!(surface_area(0).is_err());
    }

    #[test]
    fn jump_bracket_examples() {
        assert_eq!(jump_brackets(1.0, 1.0, 1.0, 1.0), (0.0, 0.0, 0.0, 0.0));
        assert_eq!(jump_brackets(0.0, 5.0, 2.0, 1.0), (2.0, 2.0, 2.0, 2.0));
        assert_eq!(jump_brackets(1.0, 1.0, 1.0, -1.0), (0.0, -2.0, 0.0, -2.0));
    }

    #[test]
    fn data_validation() {
        assert!(PseudoRiemannData::new(2, 1.0, 1.0, 0.0, 1.0, 0.0).is_ok());
        assert!(PseudoRiemannData::new(0, 1.0, 1.0, 0.0, 1.0, 0.0).is_err());
        assert!(PseudoRiemannData::new(2, 0.0, 1.0, 0.0, 1.0, 0.0).is_err());
        assert!(PseudoRiemannData::new(2, 1.0, -1.0, 0.0, 1.0, 0.0).is_err());
        assert!(PseudoRiemannData::new(2, 1.0, 1.0, f64::NAN, 1.0, 0.0).is_err());
    }

    #[test]
    fn zero_coefficient_is_vacuum() {
        assert!(RegionProfile::power_law(0.0, 3.0).is_vacuum());
        let p = RegionProfile::power_law(2.0, 3.0);
        assert_eq!(p.density(4.0, 3), 2.0 / 16.0);
        assert_eq!(p.velocity(), Some(3.0));
    }
}
