//! Weak-form residuals of ε-families by composite Gauss–Legendre quadrature.
//!
//! For a test function `φ` supported in `{r > 0, t > 0}` the radial system
//! in weak form reads `∫∫ r^(n-1) (a φ_t + b φ_r) dr dt = 0` with
//! `(a, b) = (ρ, ρu)` for mass and `(ρu, ρu²)` for momentum. The residual
//! reported here is minus that integral, the action of
//! `(r^(n-1) a)_t + (r^(n-1) b)_r` on `φ`; for the kinetic energy
//! `(a, b) = (ρu²/2, ρu³/2)` it is `<= 0` in the limit exactly when the front
//! is dissipative.

use alloc::vec::Vec;

#[allow(unused_imports)] // shadowed by inherent methods when std is linked
use num_traits::Float;

use super::entropy_lhs;
use super::quadrature::GaussLegendre;
use crate::domain::FrontState;
use crate::error::{Error, Result};
use crate::front_ode::{FrontCurve, OuterStates};
use crate::plan::{EpsFamily, ShadowSource};

/// Absolute accuracy aimed at by the quadrature.
pub const QUADRATURE_TOL: f64 = 1e-10;

const NODES: usize = 16;
const T_PANELS: usize = 8;
const R_PANELS: usize = 2;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Equation {
    Mass,
    Momentum,
    Entropy,
}

impl Equation {
    fn densities(self, rho: f64, u: f64) -> (f64, f64) {
        let m = rho * u;
        match self {
            Equation::Mass => (rho, m),
            Equation::Momentum => (m, m * u),
            Equation::Entropy => (0.5 * m * u, 0.5 * m * u * u),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Profile {
    /// `((1-X²)(1-T²))^4`
    Bump,
    /// `X ((1-X²)(1-T²))^4`, changes sign across `r = r_c`.
    Odd,
}

/// Quartic-power bump on the box `|r - r_c| <= h_r`, `|t - t_c| <= h_t`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TestFunction {
    pub r_c: f64,
    pub t_c: f64,
    pub h_r: f64,
    pub h_t: f64,
    pub profile: Profile,
}

impl TestFunction {
    pub fn new(r_c: f64, t_c: f64, h_r: f64, h_t: f64) -> Result<Self> {
        let phi = TestFunction {
            r_c,
            t_c,
            h_r,
            h_t,
            profile: Profile::Bump,
        };
        phi.validate()?;
        Ok(phi)
    }

    /// Bump centred on the first shadow front of `source` at `t_c`.
    pub fn on_front<S: ShadowSource + ?Sized>(source: &S, t_c: f64, h_r: f64, h_t: f64) -> Result<Self> {
        let mut fronts = Vec::new();
        source.shadow_fronts(t_c, &mut fronts);
        let front = fronts
            .first()
            .ok_or(Error::Precondition("no shadow front at the requested time"))?;
        Self::new(front.xi, t_c, h_r, h_t)
    }

    pub fn with_profile(self, profile: Profile) -> Self {
        TestFunction { profile, ..self }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.h_r > 0.0 && self.h_t > 0.0) {
            return Err(Error::Domain("test function half-widths must be positive"));
        }
        if !(self.r_c - self.h_r > 0.0) {
            return Err(Error::UnsupportedRegion);
        }
        if !(self.t_c - self.h_t >= 0.0) {
            return Err(Error::Domain("test function support must lie in t >= 0"));
        }
        Ok(())
    }

    pub fn is_nonnegative(&self) -> bool {
        self.profile == Profile::Bump
    }

    pub fn r_range(&self) -> (f64, f64) {
        (self.r_c - self.h_r, self.r_c + self.h_r)
    }

    pub fn t_range(&self) -> (f64, f64) {
        (self.t_c - self.h_t, self.t_c + self.h_t)
    }

    /// `(φ, φ_r, φ_t)` at `(r, t)`.
    pub fn eval(&self, r: f64, t: f64) -> (f64, f64, f64) {
        let x = (r - self.r_c) / self.h_r;
        let y = (t - self.t_c) / self.h_t;
        if x.abs() >= 1.0 || y.abs() >= 1.0 {
            return (0.0, 0.0, 0.0);
        }
        let a = 1.0 - x * x;
        let b = 1.0 - y * y;
        let (a3, b3) = (a * a * a, b * b * b);
        let phi = a3 * a * b3 * b;
        let phi_r = -8.0 * x * a3 * b3 * b / self.h_r;
        let phi_t = -8.0 * y * a3 * a * b3 / self.h_t;
        match self.profile {
            Profile::Bump => (phi, phi_r, phi_t),
            Profile::Odd => (x * phi, phi / self.h_r + x * phi_r, x * phi_t),
        }
    }
}

/// Weak residual of `which` for the ε-family of `source` against `phi`.
pub fn weak_residual<S: ShadowSource + ?Sized>(
    source: &S,
    eps: f64,
    phi: &TestFunction,
    which: Equation,
) -> Result<f64> {
    phi.validate()?;
    let family = EpsFamily::new(source, eps)?;
    let gl = GaussLegendre::new(NODES);
    let n = source.dimension();
    let (r_lo, r_hi) = phi.r_range();
    let (t_lo, t_hi) = phi.t_range();

    let mut t_breaks = Vec::new();
    source.event_times(&mut t_breaks);
    t_breaks.retain(|&s| s > t_lo && s < t_hi);
    t_breaks.push(t_lo);
    t_breaks.push(t_hi);
    t_breaks.sort_by(f64::total_cmp);

    let mut fronts: Vec<FrontState> = Vec::new();
    let mut r_breaks = Vec::new();
    let mut inner = |t: f64| {
        fronts.clear();
        source.shadow_fronts(t, &mut fronts);
        r_breaks.clear();
        source.jumps(t, &mut r_breaks);
        for f in &fronts {
            r_breaks.push(f.xi - 0.5 * eps);
            r_breaks.push(f.xi + 0.5 * eps);
        }
        r_breaks.retain(|&r| r > r_lo && r < r_hi);
        r_breaks.push(r_lo);
        r_breaks.push(r_hi);
        r_breaks.sort_by(f64::total_cmp);
        let mut total = 0.0;
        for w in r_breaks.windows(2) {
            total += gl.composite(w[0], w[1], R_PANELS, |r| {
                let (rho, u) = family.field_with(r, t, &fronts);
                let (a, b) = which.densities(rho, u);
                let (_, phi_r, phi_t) = phi.eval(r, t);
                let weight = if n == 1 { 1.0 } else { r.powi(n as i32 - 1) };
                weight * (a * phi_t + b * phi_r)
            });
        }
        total
    };

    let mut total = 0.0;
    for w in t_breaks.windows(2) {
        total += gl.composite(w[0], w[1], T_PANELS, &mut inner);
    }
    Ok(-total)
}

/// Limit of the entropy residual as `ε -> 0` for a single front:
/// `∫ ½ ξ^(n-1) E(t) φ(ξ(t), t) dt` where `E` is [`entropy_lhs`] of the
/// front's traces.
pub fn entropy_weak_limit<C, O>(curve: &C, outer: &O, n: u32, phi: &TestFunction) -> f64
where
    C: FrontCurve + ?Sized,
    O: OuterStates + ?Sized,
{
    let gl = GaussLegendre::new(NODES);
    let (t_lo, t_hi) = phi.t_range();
    gl.composite(t_lo, t_hi, 4 * T_PANELS, |t| {
        let (xi, v, _) = curve.state(t);
        let tr = outer.traces(t, xi);
        let e = entropy_lhs(tr.rho0, tr.u0, tr.rho1, tr.u1, v);
        let weight = if n == 1 { 1.0 } else { xi.powi(n as i32 - 1) };
        0.5 * weight * e * phi.eval(xi, t).0
    })
}

/// Residuals over a ladder of ε values.
#[derive(Debug, Clone, PartialEq)]
pub struct ResidualReport {
    /// Strictly decreasing.
    pub eps: Vec<f64>,
    pub mass: Vec<f64>,
    pub momentum: Vec<f64>,
    pub entropy: Vec<f64>,
    pub mass_order: Option<f64>,
    pub momentum_order: Option<f64>,
}

impl ResidualReport {
    /// Richardson estimate of the entropy limit from the two smallest ε,
    /// assuming first-order convergence.
    pub fn entropy_limit(&self) -> Option<f64> {
        let k = self.entropy.len();
        (k >= 2).then(|| 2.0 * self.entropy[k - 1] - self.entropy[k - 2])
    }

    /// Largest mass or momentum residual at any ε.
    pub fn max_abs(&self) -> f64 {
        self.mass.iter().chain(&self.momentum).fold(0.0, |m, r| m.max(r.abs()))
    }
}

/// Residuals at `eps0, eps0/2, …, eps0/2^halvings`.
pub fn residual_ladder<S: ShadowSource + ?Sized>(
    source: &S,
    phi: &TestFunction,
    eps0: f64,
    halvings: u32,
) -> Result<ResidualReport> {
    let eps: Vec<f64> = (0..=halvings).map(|k| eps0 / f64::from(1u32 << k)).collect();
    let run = |which| {
        eps.iter()
            .map(|&e| weak_residual(source, e, phi, which))
            .collect::<Result<Vec<_>>>()
    };
    let mass = run(Equation::Mass)?;
    let momentum = run(Equation::Momentum)?;
    let entropy = run(Equation::Entropy)?;
    Ok(ResidualReport {
        mass_order: fit_order(&eps, &mass),
        momentum_order: fit_order(&eps, &momentum),
        eps,
        mass,
        momentum,
        entropy,
    })
}

/// Least-squares slope of `ln |res|` against `ln ε`, ignoring residuals below
/// `10 * QUADRATURE_TOL`; `None` with fewer than two usable points.
pub fn fit_order(eps: &[f64], res: &[f64]) -> Option<f64> {
    let pts: Vec<(f64, f64)> = eps
        .iter()
        .zip(res)
        .filter(|(_, r)| r.abs() > 10.0 * QUADRATURE_TOL)
        .map(|(e, r)| (e.ln(), r.abs().ln()))
        .collect();
    if pts.len() < 2 {
        return None;
    }
    let k = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / k;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / k;
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx) * (p.0 - mx)).sum();
    Some(sxy / sxx)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::domain::PseudoRiemannData;
    use crate::front_ode::{ClosedFront, NonEntropicExample, NonEntropicField};
    use crate::riemann::solve;

    #[test]
    fn bump_integral_is_exact() {
        let phi = TestFunction::new(2.0, 1.0, 0.5, 0.25).unwrap();
        let gl = GaussLegendre::new(NODES);
        // ∫(1-x²)^4 dx over [-1, 1] = 256/315; r φ separates as well
        let v = gl.composite(0.75, 1.25, 2, |t| gl.composite(1.5, 2.5, 2, |r| r * phi.eval(r, t).0));
        let one = 256.0 / 315.0;
        let exact = 2.0 * 0.5 * one * 0.25 * one;
        assert!((v - exact).abs() < 1e-12, "{v} vs {exact}");
    }

    #[test]
    fn derivatives_match_differences() {
        for profile in [Profile::Bump, Profile::Odd] {
            let phi = TestFunction::new(2.0, 1.0, 0.5, 0.25).unwrap().with_profile(profile);
            let (r, t, h) = (2.13, 0.91, 1e-6);
            let (_, pr, pt) = phi.eval(r, t);
            let fr = (phi.eval(r + h, t).0 - phi.eval(r - h, t).0) / (2.0 * h);
            let ft = (phi.eval(r, t + h).0 - phi.eval(r, t - h).0) / (2.0 * h);
            assert!((pr - fr).abs() < 1e-7 && (pt - ft).abs() < 1e-7);
        }
    }

    #[test]
    fn support_must_avoid_origin() {
        assert_eq!(TestFunction::new(0.5, 1.0, 0.5, 0.5), Err(Error::UnsupportedRegion));
        let d = PseudoRiemannData::new(2, 1.0, 1.0, 1.0, 1.0, -1.0).unwrap();
        let plan = solve(&d, 5.0).unwrap();
        let mut phi = TestFunction::new(1.0, 1.0, 0.5, 0.5).unwrap();
        phi.h_r = 2.0;
        assert_eq!(
            weak_residual(&plan, 1e-2, &phi, Equation::Mass),
            Err(Error::UnsupportedRegion)
        );
    }

    #[test]
    fn classical_region_has_no_residual() {
        let d = PseudoRiemannData::new(3, 1.0, 2.0, 1.0, 1.0, -1.0).unwrap();
        let plan = solve(&d, 5.0).unwrap();
        let phi = TestFunction::new(2.5, 0.3, 0.5, 0.2).unwrap();
        for eps in [1e-2, 1e-3] {
            for eq in [Equation::Mass, Equation::Momentum, Equation::Entropy] {
                let r = weak_residual(&plan, eps, &phi, eq).unwrap();
                assert!(r.abs() < 1e-12, "{eq:?}: {r}");
            }
        }
    }

    #[test]
    fn constant_speed_front_converges_first_order() {
        let d = PseudoRiemannData::new(2, 1.0, 2.0, 1.0, 1.0, -1.0).unwrap();
        let plan = solve(&d, 5.0).unwrap();
        let phi = TestFunction::on_front(&plan, 0.5, 0.4, 0.3).unwrap();
        let report = residual_ladder(&plan, &phi, 1e-2, 6).unwrap();
        let om = report.mass_order.unwrap();
        let op = report.momentum_order.unwrap();
        assert!(om > 0.9 && op > 0.9, "{om} {op}: {report:?}");
        // dissipative front: entropy limit is negative
        let front = ClosedFront {
            front: *plan.shadow_front(0.5).unwrap(),
            n: 2,
        };
        let limit = entropy_weak_limit(&front, &d, 2, &phi);
        assert!(limit < 0.0);
        let est = report.entropy_limit().unwrap();
        assert!((est - limit).abs() < 1e-3 * limit.abs(), "{est} vs {limit}");
    }

    #[test]
    fn nonentropic_front_has_positive_entropy_limit() {
        let phi = TestFunction::on_front(&NonEntropicField, 0.5, 0.3, 0.3).unwrap();
        let limit = entropy_weak_limit(&NonEntropicExample, &NonEntropicExample, 2, &phi);
        assert!(limit > 0.0);
        let report = residual_ladder(&NonEntropicField, &phi, 1e-2, 6).unwrap();
        let est = report.entropy_limit().unwrap();
        assert!((est - limit).abs() < 1e-2 * limit, "{est} vs {limit}");
        assert!(report.mass_order.unwrap() > 0.9, "{report:?}");
    }
}
