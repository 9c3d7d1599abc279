//! A two-dimensional front with non-constant speed that violates the
//! entropy condition.
//!
//! Data at `t = 0`, `R = 1`: `u = -1` inside the unit circle and `ρ = 1/r`,
//! `u = 0` outside. The front and its inner trace are
//!
//! ```text
//! ξ(t)   = 1 + t / sqrt(t+1)
//! σ(t)   = t / (2 (t + sqrt(t+1)))
//! ρ_l(t) = (t+2)² sqrt(t+1) / (2 (t + sqrt(t+1)) (t² + 4t + 8))
//! u_l(t) = -2 / ((t+1)^(3/2) (t+2))
//! ```
//!
//! The inner density is usually written as a ratio with a spurious common
//! root at `t = (1+√5)/2`; the form above has it cancelled.

use alloc::vec::Vec;

#[allow(unused_imports)] // shadowed by inherent methods when std is linked
use num_traits::Float;

use super::{FrontCurve, OuterStates, Traces};
use crate::domain::{FrontKind, FrontState};
use crate::plan::ShadowSource;

/// Front position, speed and mass with the inner trace, at one time.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NonEntropicState {
    pub xi: f64,
    pub speed: f64,
    pub sigma: f64,
    pub rho_l: f64,
    pub u_l: f64,
}

pub fn nonentropic_example(t: f64) -> NonEntropicState {
    let s = (t + 1.0).sqrt();
    let g = t + s;
    NonEntropicState {
        xi: 1.0 + t / s,
        speed: (t + 2.0) / (2.0 * s * s * s),
        sigma: t / (2.0 * g),
        rho_l: (t + 2.0) * (t + 2.0) * s / (2.0 * g * (t * t + 4.0 * t + 8.0)),
        u_l: -2.0 / (s * s * s * (t + 2.0)),
    }
}

/// The example as a front curve and as its own outer states.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct NonEntropicExample;

impl NonEntropicExample {
    pub const N: u32 = 2;

    pub fn acceleration(t: f64) -> f64 {
        -(t + 4.0) / (4.0 * (t + 1.0).powf(2.5))
    }

    pub fn sigma_rate(t: f64) -> f64 {
        let s = (t + 1.0).sqrt();
        let g = t + s;
        (t + 2.0) / (4.0 * s * g * g)
    }

    pub fn u_l_rate(t: f64) -> f64 {
        let s = (t + 1.0).sqrt();
        // u_l = -2 s^-3 (t+2)^-1
        let tp = t + 2.0;
        2.0 * (1.5 / (s * s * s * s * s * tp) + 1.0 / (s * s * s * tp * tp))
    }
}

impl FrontCurve for NonEntropicExample {
    fn state(&self, t: f64) -> (f64, f64, f64) {
        let s = nonentropic_example(t);
        (s.xi, s.speed, s.sigma)
    }

    fn rates(&self, t: f64) -> Option<(f64, f64)> {
        Some((Self::acceleration(t), Self::sigma_rate(t)))
    }
}

impl OuterStates for NonEntropicExample {
    fn traces_on(&self, t: f64, xi: f64, _side: bool) -> Traces {
        let s = nonentropic_example(t);
        Traces {
            rho0: s.rho_l,
            u0: s.u_l,
            rho1: 1.0 / xi,
            u1: 0.0,
        }
    }
}

/// The example with the regular field filled in near the front.
///
/// Outside the front the gas is at rest with `ρ = 1/r`. Inside, every
/// particle left the front at some time `τ` with velocity `u_l(τ)`; the
/// field is rebuilt along these straight characteristics from the inner
/// trace. Particles released at `τ = 0` bound it, with vacuum further in.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct NonEntropicField;

impl NonEntropicField {
    /// Release time `τ` of the characteristic through `(r, t)`, for
    /// `1 - t <= r <= ξ(t)`.
    fn release_time(r: f64, t: f64) -> f64 {
        let reach = |tau: f64| {
            let s = nonentropic_example(tau);
            s.xi + s.u_l * (t - tau) - r
        };
        let (mut a, mut b) = (0.0, t);
        for _ in 0..100 {
            let m = 0.5 * (a + b);
            if m <= a || m >= b {
                break;
            }
            if reach(m) < 0.0 {
                a = m;
            } else {
                b = m;
            }
        }
        0.5 * (a + b)
    }
}

impl ShadowSource for NonEntropicField {
    fn dimension(&self) -> u32 {
        NonEntropicExample::N
    }

    fn regular(&self, r: f64, t: f64) -> (f64, f64) {
        let front = nonentropic_example(t);
        if r > front.xi {
            return (1.0 / r, 0.0);
        }
        if r < 1.0 - t {
            return (0.0, -1.0);
        }
        let tau = Self::release_time(r, t);
        let s = nonentropic_example(tau);
        let gap = s.speed - s.u_l;
        let spread = gap + NonEntropicExample::u_l_rate(tau) * (t - tau);
        let q = s.xi * s.rho_l * gap / spread;
        (q / r, s.u_l)
    }

    fn shadow_fronts(&self, t: f64, out: &mut Vec<FrontState>) {
        let s = nonentropic_example(t);
        out.push(FrontState {
            kind: FrontKind::ShadowWave,
            xi: s.xi,
            speed: s.speed,
            sigma: s.sigma,
        });
    }

    fn jumps(&self, t: f64, out: &mut Vec<f64>) {
        if t < 1.0 {
            out.push(1.0 - t);
        }
    }

    fn event_times(&self, out: &mut Vec<f64>) {
        out.push(1.0);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::front_ode::ode_residual;

    fn unfactored_rho_l(t: f64) -> f64 {
        let s = (t + 1.0).sqrt();
        (t + 2.0).powi(2) * (t * s - t - 1.0) / (2.0 * (t * t - t - 1.0) * (t * t + 4.0 * t + 8.0))
    }

    #[test]
    fn initial_values() {
        let s = nonentropic_example(0.0);
        assert_eq!(s.u_l, -1.0);
        assert_eq!(s.sigma, 0.0);
        assert_eq!(s.xi, 1.0);
    }

    #[test]
    fn factored_density_agrees_away_from_common_root() {
        for t in [0.1, 0.5, 1.0, 2.5, 4.0, 5.0] {
            let a = nonentropic_example(t).rho_l;
            let b = unfactored_rho_l(t);
            assert!((a - b).abs() < 1e-13, "{t}: {a} vs {b}");
        }
        let golden = 0.5 * (1.0 + 5f64.sqrt());
        let near = nonentropic_example(golden).rho_l;
        assert!(near.is_finite() && near > 0.0);
    }

    #[test]
    fn closed_forms_solve_front_equations() {
        let grid: Vec<f64> = (0..=490).map(|k| 0.1 + 0.01 * f64::from(k)).collect();
        let (r1, r2) = ode_residual(&NonEntropicExample, &NonEntropicExample, 2, &grid);
        assert!(r1 < 1e-13 && r2 < 1e-13, "{r1} {r2}");
    }

    #[test]
    fn rates_match_differences() {
        let h = 1e-5;
        for t in [0.2, 1.0, 3.0] {
            let fd = |f: fn(f64) -> f64| (f(t + h) - f(t - h)) / (2.0 * h);
            assert!((fd(|t| nonentropic_example(t).speed) - NonEntropicExample::acceleration(t)).abs() < 1e-8);
            assert!((fd(|t| nonentropic_example(t).sigma) - NonEntropicExample::sigma_rate(t)).abs() < 1e-8);
            assert!((fd(|t| nonentropic_example(t).u_l) - NonEntropicExample::u_l_rate(t)).abs() < 1e-8);
        }
    }

    #[test]
    fn field_matches_trace_at_front() {
        for t in [0.3, 1.0, 2.0] {
            let s = nonentropic_example(t);
            let (rho, u) = NonEntropicField.regular(s.xi - 1e-9, t);
            assert!((rho - s.rho_l).abs() < 1e-6, "{t}: {rho} vs {}", s.rho_l);
            assert!((u - s.u_l).abs() < 1e-6);
        }
    }

    #[test]
    fn field_conserves_mass_along_characteristics() {
        // mass between two characteristics is the mass released between them
        let (t1, t2) = (0.4, 0.5);
        let pos = |tau: f64, t: f64| {
            let s = nonentropic_example(tau);
            s.xi + s.u_l * (t - tau)
        };
        let mass = |t: f64| {
            let (a, b) = (pos(t1, t), pos(t2, t));
            let m = 2000;
            let h = (b - a) / f64::from(m);
            (0..m)
                .map(|k| {
                    let r = a + (f64::from(k) + 0.5) * h;
                    r * NonEntropicField.regular(r, t).0 * h
                })
                .sum::<f64>()
        };
        let m1 = mass(1.0);
        let m2 = mass(3.0);
        assert!((m1 - m2).abs() < 1e-6 * m1, "{m1} vs {m2}");
    }
}
