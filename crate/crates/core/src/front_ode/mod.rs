//! General shadow-wave fronts with non-constant speed.
//!
//! A front at `ξ(t)` with lineal mass `σ(t)` between traces `(ρ0, u0)`
//! (inner side) and `(ρ1, u1)` (outer side) obeys
//!
//! ```text
//! σ' = κ1 - (n-1) ξ' σ / ξ
//! σ ξ'' = κ2 - ξ' κ1
//! κ1 = ξ'[ρ] - [ρu],  κ2 = ξ'[ρu] - [ρu²]
//! ```
//!
//! The integrator works with the weighted mass `p = ξ^(n-1) σ`, for which the
//! first equation reads `p' = ξ^(n-1) κ1`; for power-law traces the weighted
//! right-hand side no longer depends on `ξ`.

mod example;
mod rk;

use alloc::vec::Vec;

#[allow(unused_imports)] // shadowed by inherent methods when std is linked
use num_traits::Float;

use crate::domain::{jump_brackets, radial_power, PseudoRiemannData};
use crate::error::{Error, Result};
use crate::plan::Front;
use crate::riemann::first_root_speed;

pub use example::{nonentropic_example, NonEntropicExample, NonEntropicField, NonEntropicState};
pub use rk::DenseStep;

/// Default relative tolerance of [`integrate_front`].
pub const DEFAULT_TOL: f64 = 1e-10;

/// Densities and velocities on both sides of a front.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Traces {
    pub rho0: f64,
    pub u0: f64,
    pub rho1: f64,
    pub u1: f64,
}

impl Traces {
    pub fn scaled(self, w: f64) -> Self {
        Traces {
            rho0: self.rho0 * w,
            rho1: self.rho1 * w,
            ..self
        }
    }

    /// `(κ1, κ2)` for a front moving at `speed`.
    pub fn kappas(&self, speed: f64) -> (f64, f64) {
        let (d_rho, d_m, d_e, _) = jump_brackets(self.rho0, self.u0, self.rho1, self.u1);
        (speed * d_rho - d_m, speed * d_m - d_e)
    }
}

/// States adjacent to a front, as functions of time and front position.
///
/// Sources whose traces change discontinuously (a vacuum edge overtaking
/// the front, say) expose a switching function; the integrator keeps the
/// branch fixed within a step and flips it at the located root.
pub trait OuterStates {
    /// Pointwise traces on the branch selected by `side`.
    fn traces_on(&self, t: f64, xi: f64, side: bool) -> Traces;

    /// Switching function; its sign selects the branch.
    fn switch(&self, _t: f64, _xi: f64) -> f64 {
        1.0
    }

    fn traces(&self, t: f64, xi: f64) -> Traces {
        self.traces_on(t, xi, self.switch(t, xi) >= 0.0)
    }

    /// Traces with densities multiplied by `ξ^(n-1)`.
    fn weighted_on(&self, t: f64, xi: f64, side: bool, n: u32) -> Traces {
        let w = if n == 1 { 1.0 } else { xi.powi(n as i32 - 1) };
        self.traces_on(t, xi, side).scaled(w)
    }
}

impl<O: OuterStates + ?Sized> OuterStates for &O {
    fn traces_on(&self, t: f64, xi: f64, side: bool) -> Traces {
        (**self).traces_on(t, xi, side)
    }
    fn switch(&self, t: f64, xi: f64) -> f64 {
        (**self).switch(t, xi)
    }
    fn weighted_on(&self, t: f64, xi: f64, side: bool, n: u32) -> Traces {
        (**self).weighted_on(t, xi, side, n)
    }
}

/// Fixed pointwise traces.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConstantStates(pub Traces);

impl OuterStates for ConstantStates {
    fn traces_on(&self, _t: f64, _xi: f64, _side: bool) -> Traces {
        self.0
    }
}

/// Traces given by a closure `(t, ξ) -> Traces`.
#[derive(Debug, Clone, Copy)]
pub struct FnStates<F>(pub F);

impl<F: Fn(f64, f64) -> Traces> OuterStates for FnStates<F> {
    fn traces_on(&self, t: f64, xi: f64, _side: bool) -> Traces {
        (self.0)(t, xi)
    }
}

/// Pseudo-Riemann states around a front starting at `R`.
///
/// When `u_l > 0` the inner state recedes from the origin and the front
/// sees vacuum once `ξ <= u_l t`; that is the only switch.
impl OuterStates for PseudoRiemannData {
    fn traces_on(&self, t: f64, xi: f64, side: bool) -> Traces {
        self.weighted_on(t, xi, side, self.n).scaled(radial_power(xi, self.n))
    }

    fn switch(&self, t: f64, xi: f64) -> f64 {
        if self.u_l > 0.0 && self.rho_l > 0.0 {
            xi - self.u_l * t
        } else {
            1.0
        }
    }

    fn weighted_on(&self, _t: f64, _xi: f64, side: bool, _n: u32) -> Traces {
        Traces {
            rho0: if side { self.rho_l } else { 0.0 },
            u0: self.u_l,
            rho1: self.rho_r,
            u1: self.u_r,
        }
    }
}

/// Right-hand sides `(σ', ξ'')` of the front equations.
///
/// With `σ = 0` the speed must solve `ξ' κ1 = κ2`; then `ξ'' = 0` is
/// returned, otherwise [`Error::Singular`].
pub fn front_rhs<O: OuterStates + ?Sized>(
    t: f64,
    xi: f64,
    speed: f64,
    sigma: f64,
    outer: &O,
    n: u32,
) -> Result<(f64, f64)> {
    if !(xi > 0.0) {
        return Err(Error::Domain("front position must be positive"));
    }
    if !(sigma >= 0.0) {
        return Err(Error::Domain("front mass must be nonnegative"));
    }
    let tr = outer.traces(t, xi);
    let (k1, k2) = tr.kappas(speed);
    let d_sigma = k1 - f64::from(n - 1) * speed * sigma / xi;
    let residual = k2 - speed * k1;
    let d_speed = if sigma > 0.0 {
        residual / sigma
    } else if compatible(residual, &tr, speed) {
        0.0
    } else {
        return Err(Error::Singular { t });
    };
    Ok((d_sigma, d_speed))
}

fn compatible(residual: f64, tr: &Traces, speed: f64) -> bool {
    let scale = (tr.rho0 + tr.rho1) * (speed.abs() + tr.u0.abs() + tr.u1.abs()).powi(2);
    residual.abs() <= 1e-12 * scale.max(f64::MIN_POSITIVE)
}

/// Initial-value problem for a front.
#[derive(Debug, Clone, Copy)]
pub struct FrontIvp<O> {
    pub t0: f64,
    pub xi0: f64,
    /// Initial speed; ignored when `sigma0 == 0`, where the speed is the
    /// entropic root of `ξ' κ1 = κ2`.
    pub speed0: f64,
    pub sigma0: f64,
    pub outer: O,
    pub n: u32,
}

impl<O: OuterStates> FrontIvp<O> {
    pub fn validate(&self) -> Result<()> {
        if self.n < 1 {
            return Err(Error::Domain("space dimension must be at least 1"));
        }
        if !(self.xi0 > 0.0) {
            return Err(Error::Domain("initial front position must be positive"));
        }
        if !(self.sigma0 >= 0.0) || !self.sigma0.is_finite() {
            return Err(Error::Domain("initial front mass must be finite and nonnegative"));
        }
        if !self.t0.is_finite() || !self.speed0.is_finite() {
            return Err(Error::Domain("initial time and speed must be finite"));
        }
        Ok(())
    }
}

/// One recorded point of a trajectory.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrajectorySample {
    pub t: f64,
    pub xi: f64,
    pub speed: f64,
    pub sigma: f64,
    /// `ξ^(n-1) σ`; the front carries `|S^(n-1)|` times this.
    pub weighted_mass: f64,
}

/// Integrated front: accepted step ends plus the dense interpolant of
/// `(ξ, ξ', ξ^(n-1) σ)`.
#[derive(Debug, Clone, PartialEq)]
pub struct FrontTrajectory {
    pub n: u32,
    pub samples: Vec<TrajectorySample>,
    pub steps: Vec<DenseStep<3>>,
    /// Time at which `ξ` reached 0, if it did.
    pub origin_hit: Option<f64>,
}

impl FrontTrajectory {
    pub fn start(&self) -> f64 {
        self.samples[0].t
    }

    pub fn end(&self) -> f64 {
        self.samples[self.samples.len() - 1].t
    }

    /// Interpolated sample at `t`; the nearest step's polynomial is used
    /// slightly outside the covered interval.
    pub fn at(&self, t: f64) -> TrajectorySample {
        let k = self.steps.partition_point(|s| s.t1() < t).min(self.steps.len() - 1);
        let [xi, speed, p] = self.steps[k].eval(t);
        TrajectorySample {
            t,
            xi,
            speed,
            sigma: weighted_to_sigma(p, xi, self.n),
            weighted_mass: p,
        }
    }
}

fn weighted_to_sigma(p: f64, xi: f64, n: u32) -> f64 {
    if n == 1 {
        p
    } else if xi == 0.0 {
        f64::INFINITY
    } else {
        p / xi.powi(n as i32 - 1)
    }
}

/// Integrates the front equations from `ivp` up to `t_end` or until the
/// front reaches the origin.
///
/// Dormand–Prince 5(4) with relative tolerance `tol` and absolute tolerance
/// `tol / 100` on `(ξ, ξ', ξ^(n-1) σ)`.
pub fn integrate_front<O: OuterStates>(ivp: &FrontIvp<O>, t_end: f64, tol: f64) -> Result<FrontTrajectory> {
    ivp.validate()?;
    if !(tol > 0.0) {
        return Err(Error::Domain("tolerance must be positive"));
    }
    if !(t_end > ivp.t0) {
        return Err(Error::Domain("end time must exceed the start time"));
    }
    let n = ivp.n;
    let outer = &ivp.outer;
    let rtol = tol;
    let atol = 1e-2 * tol;
    let weight = |xi: f64| if n == 1 { 1.0 } else { xi.powi(n as i32 - 1) };

    let mut t = ivp.t0;
    let mut side = outer.switch(t, ivp.xi0) >= 0.0;
    let mut steps = Vec::new();
    let mut samples = Vec::new();
    let p0 = ivp.sigma0 * weight(ivp.xi0);
    samples.push(TrajectorySample {
        t,
        xi: ivp.xi0,
        speed: ivp.speed0,
        sigma: ivp.sigma0,
        weighted_mass: p0,
    });

    let mut y;
    let mut h;
    if ivp.sigma0 > 0.0 {
        y = [ivp.xi0, ivp.speed0, p0];
        h = 1e-4 * (t_end - t);
    } else {
        // algebraic start: the speed is the entropic root, and p grows
        // linearly over a short seeding interval
        let w = outer.weighted_on(t, ivp.xi0, side, n);
        let v0 = first_root_speed(w.rho0, w.u0, w.rho1, w.u1)?;
        let delta = 1e-6 * (t_end - t);
        let mid = outer.weighted_on(t + 0.5 * delta, ivp.xi0 + 0.5 * v0 * delta, side, n);
        let (k1, _) = mid.kappas(v0);
        if k1 < 0.0 {
            return Err(Error::Singular { t });
        }
        let y_start = [ivp.xi0, v0, 0.0];
        y = [ivp.xi0 + v0 * delta, v0, k1 * delta];
        steps.push(DenseStep::linear(t, delta, y_start, y));
        samples[0].speed = v0;
        t += delta;
        samples.push(sample(t, &y, n));
        h = delta;
    }

    let mut singular = false;
    let mut rhs = |s: f64, y: &[f64; 3], side: bool| -> Option<[f64; 3]> {
        let [xi, v, p] = *y;
        let w = outer.weighted_on(s, xi, side, n);
        let (k1, k2) = w.kappas(v);
        let residual = k2 - v * k1;
        let dv = if p > 0.0 {
            residual / p
        } else if p == 0.0 && compatible(residual, &w, v) {
            0.0
        } else {
            singular = p <= 0.0;
            return None;
        };
        Some([v, dv, k1])
    };

    let mut f0 = rhs(t, &y, side).ok_or(Error::Singular { t })?;
    let mut pending: Option<f64> = None;
    let mut origin_hit = None;
    let min_step = |t: f64| 1e-13 * t.abs().max(1.0);

    while t < t_end {
        h = h.min(t_end - t);
        if let Some(te) = pending {
            h = h.min(te - t);
        }
        let trial = {
            let mut f = |s: f64, y: &[f64; 3]| rhs(s, y, side);
            rk::step(&mut f, t, &y, &f0, h, rtol, atol)
        };
        let trial = match trial {
            Some(tr) if tr.err <= 1.0 => tr,
            other => {
                h *= other.map_or(0.25, |tr| rk::step_factor(tr.err).min(0.9));
                if h < min_step(t) {
                    return Err(if singular || y[2] <= 1e-12 * y[2].abs().max(1.0) {
                        Error::Singular { t }
                    } else {
                        Error::StepSize { t }
                    });
                }
                continue;
            }
        };
        let t1 = t + h;
        let dense = trial.dense;

        if trial.y[0] <= 0.0 {
            let hit = bisect(t, t1, |s| dense.eval(s)[0]);
            let [_, v, p] = dense.eval(hit);
            steps.push(dense);
            samples.push(TrajectorySample {
                t: hit,
                xi: 0.0,
                speed: v,
                sigma: weighted_to_sigma(p, 0.0, n),
                weighted_mass: p,
            });
            origin_hit = Some(hit);
            break;
        }

        let reached_event = pending.is_some_and(|te| t1 >= te);
        if !reached_event && (outer.switch(t1, trial.y[0]) >= 0.0) != side {
            let te = bisect(t, t1, |s| {
                let g = outer.switch(s, dense.eval(s)[0]);
                if side {
                    g
                } else {
                    -g
                }
            });
            if te > t {
                pending = Some(te);
                h = te - t;
                continue;
            }
        }

        t = if reached_event {
            pending.take().unwrap_or(t1)
        } else {
            t1
        };
        y = trial.y;
        f0 = trial.f_end;
        steps.push(dense);
        samples.push(sample(t, &y, n));
        if reached_event {
            side = !side;
            f0 = rhs(t, &y, side).ok_or(Error::Singular { t })?;
        }
        h *= rk::step_factor(trial.err);
    }

    Ok(FrontTrajectory {
        n,
        samples,
        steps,
        origin_hit,
    })
}

fn sample(t: f64, y: &[f64; 3], n: u32) -> TrajectorySample {
    TrajectorySample {
        t,
        xi: y[0],
        speed: y[1],
        sigma: weighted_to_sigma(y[2], y[0], n),
        weighted_mass: y[2],
    }
}

/// Last point in `[a, b]` where `g` is still positive, given `g(a) > 0 >= g(b)`.
fn bisect(mut a: f64, mut b: f64, g: impl Fn(f64) -> f64) -> f64 {
    for _ in 0..200 {
        let m = 0.5 * (a + b);
        if m <= a || m >= b {
            break;
        }
        if g(m) > 0.0 {
            a = m;
        } else {
            b = m;
        }
    }
    b
}

/// A front trajectory that can be checked against the front equations.
pub trait FrontCurve {
    /// `(ξ, ξ', σ)` at `t`.
    fn state(&self, t: f64) -> (f64, f64, f64);

    /// `(ξ'', σ')` when known in closed form.
    fn rates(&self, _t: f64) -> Option<(f64, f64)> {
        None
    }
}

/// A closed-form front from a plan, in dimension `n`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClosedFront {
    pub front: Front,
    pub n: u32,
}

impl FrontCurve for ClosedFront {
    fn state(&self, t: f64) -> (f64, f64, f64) {
        let s = self.front.state(t, self.n);
        (s.xi, s.speed, s.sigma)
    }

    fn rates(&self, t: f64) -> Option<(f64, f64)> {
        Some((self.front.path.acceleration(t), self.front.sigma_rate(t, self.n)))
    }
}

impl FrontCurve for FrontTrajectory {
    fn state(&self, t: f64) -> (f64, f64, f64) {
        let s = self.at(t);
        (s.xi, s.speed, s.sigma)
    }
}

/// Max-norm residuals `(res1, res2)` of
/// `σ' - κ1 + (n-1) ξ' σ / ξ` and `σ ξ'' - κ2 + ξ' κ1` over `grid`.
///
/// Derivatives come from [`FrontCurve::rates`] when available, otherwise from
/// fourth-order central differences.
pub fn ode_residual<C, O>(curve: &C, outer: &O, n: u32, grid: &[f64]) -> (f64, f64)
where
    C: FrontCurve + ?Sized,
    O: OuterStates + ?Sized,
{
    let mut res = (0.0f64, 0.0f64);
    for &t in grid {
        let (xi, v, sigma) = curve.state(t);
        let (acc, d_sigma) = curve.rates(t).unwrap_or_else(|| {
            let h = 1e-3 * t.abs().max(1e-2);
            let d = |k: f64| {
                let (_, v, s) = curve.state(t + k * h);
                (v, s)
            };
            let (v2, s2) = d(2.0);
            let (v1, s1) = d(1.0);
            let (vm1, sm1) = d(-1.0);
            let (vm2, sm2) = d(-2.0);
            let c = 12.0 * h;
            (
                (-v2 + 8.0 * v1 - 8.0 * vm1 + vm2) / c,
                (-s2 + 8.0 * s1 - 8.0 * sm1 + sm2) / c,
            )
        });
        let (k1, k2) = outer.traces(t, xi).kappas(v);
        let r1 = d_sigma - k1 + f64::from(n - 1) * v * sigma / xi;
        let r2 = sigma * acc - k2 + v * k1;
        res.0 = res.0.max(r1.abs());
        res.1 = res.1.max(r2.abs());
    }
    res
}
