//! Gauss–Legendre rules.

use alloc::vec::Vec;
use core::f64::consts::PI;

#[allow(unused_imports)] // shadowed by inherent methods when std is linked
use num_traits::Float;

/// Nodes and weights on `[-1, 1]`.
#[derive(Debug, Clone, PartialEq)]
pub struct GaussLegendre {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl GaussLegendre {
    /// `m`-point rule, nodes by Newton iteration on `P_m`.
    pub fn new(m: usize) -> Self {
        let mut nodes = alloc::vec![0.0; m];
        let mut weights = alloc::vec![0.0; m];
        let mf = m as f64;
        for i in 0..m.div_ceil(2) {
            let mut x = (PI * (i as f64 + 0.75) / (mf + 0.5)).cos();
            let mut dp = 1.0;
            for _ in 0..100 {
                let (p, d) = legendre(m, x);
                dp = d;
                let dx = p / d;
                x -= dx;
                if dx.abs() < 1e-16 {
                    break;
                }
            }
            let (_, d) = legendre(m, x);
            dp = if d != 0.0 { d } else { dp };
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            nodes[i] = -x;
            nodes[m - 1 - i] = x;
            weights[i] = w;
            weights[m - 1 - i] = w;
        }
        GaussLegendre { nodes, weights }
    }

    /// `∫_a^b f` on one panel.
    pub fn integrate(&self, a: f64, b: f64, mut f: impl FnMut(f64) -> f64) -> f64 {
        let half = 0.5 * (b - a);
        let mid = 0.5 * (a + b);
        let sum: f64 = self
            .nodes
            .iter()
            .zip(&self.weights)
            .map(|(&x, &w)| w * f(mid + half * x))
            .sum();
        half * sum
    }

    /// `∫_a^b f` over `panels` equal panels.
    pub fn composite(&self, a: f64, b: f64, panels: usize, mut f: impl FnMut(f64) -> f64) -> f64 {
        let h = (b - a) / panels as f64;
        (0..panels)
            .map(|k| {
                let lo = a + h * k as f64;
                let hi = if k + 1 == panels { b } else { lo + h };
                self.integrate(lo, hi, &mut f)
            })
            .sum()
    }
}

/// `(P_m(x), P_m'(x))`.
fn legendre(m: usize, x: f64) -> (f64, f64) {
    let (mut p0, mut p1) = (1.0, x);
    for k in 2..=m {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    if m == 0 {
        return (1.0, 0.0);
    }
    let d = m as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}
