use std::path::Path;

use anyhow::Result;
use radial_sw::front_ode::{nonentropic_example, ode_residual, NonEntropicExample, NonEntropicField};
use radial_sw::verify::{entropy_lhs, entropy_weak_limit, TestFunction};
use serde::Serialize;

use crate::config::Scenario;
use crate::report::{csv_writer, summarize, write_json, Check};

/// Reference values at `t = 1`.
const U_L_AT_1: f64 = -0.235702;
const SPEED_AT_1: f64 = 0.530330;
const REFERENCE_TOL: f64 = 1e-6;

#[derive(Serialize)]
struct ExampleDoc {
    checks: Vec<Check>,
    ode_residual: [f64; 2],
    min_entropy_lhs: f64,
    first_nonpositive_entropy_t: Option<f64>,
    /// Weak-form entropy production of the front against a bump at `t = 0.5`.
    weak_entropy_limit: f64,
}

pub fn example64(scenario: &Scenario, out: &Path) -> Result<bool> {
    let e = &scenario.example;
    let last = (e.samples - 1) as f64;
    let grid: Vec<f64> = (0..e.samples)
        .map(|k| e.t_start + (e.t_end - e.t_start) * k as f64 / last)
        .collect();
    let n = NonEntropicExample::N;

    let mut w = csv_writer(out, "example64.csv")?;
    w.write_record(["t", "xi", "speed", "sigma", "rho_l", "u_l", "entropy_lhs"])?;
    let mut min_lhs = f64::INFINITY;
    let mut first_nonpositive = None;
    let mut physical = true;
    for &t in &grid {
        let s = nonentropic_example(t);
        let lhs = entropy_lhs(s.rho_l, s.u_l, 1.0 / s.xi, 0.0, s.speed);
        min_lhs = min_lhs.min(lhs);
        if lhs <= 0.0 && first_nonpositive.is_none() {
            first_nonpositive = Some(t);
        }
        physical &= s.sigma > 0.0 && s.rho_l >= 0.0;
        w.write_record([t, s.xi, s.speed, s.sigma, s.rho_l, s.u_l, lhs].map(|x| x.to_string()))?;
    }
    w.flush()?;

    let (r1, r2) = ode_residual(&NonEntropicExample, &NonEntropicExample, n, &grid);
    let at1 = nonentropic_example(1.0);
    let phi = TestFunction::on_front(&NonEntropicField, 0.5, 0.3, 0.3)?;
    let weak = entropy_weak_limit(&NonEntropicExample, &NonEntropicExample, n, &phi);

    let xf = |name| scenario.expects_failure(name);
    let checks = vec![
        Check::new(
            "ode_residual",
            r1 <= e.residual_tol && r2 <= e.residual_tol,
            xf("ode_residual"),
            format!(
                "{} samples on [{}, {}], residuals {r1:.2e}, {r2:.2e}",
                grid.len(),
                e.t_start,
                e.t_end
            ),
        ),
        Check::new(
            "physical",
            physical,
            xf("physical"),
            "sigma > 0 and rho_l >= 0 at every sample".into(),
        ),
        Check::new(
            "reference_values",
            (at1.u_l - U_L_AT_1).abs() <= REFERENCE_TOL && (at1.speed - SPEED_AT_1).abs() <= REFERENCE_TOL,
            xf("reference_values"),
            format!("u_l(1) = {:.7}, speed(1) = {:.7}", at1.u_l, at1.speed),
        ),
        Check::new(
            "entropy",
            first_nonpositive.is_none(),
            xf("entropy"),
            match first_nonpositive {
                None => format!("entropy lhs > 0 at every sample (min {min_lhs:.3e})"),
                Some(t) => format!("entropy lhs <= 0 from t = {t} (min {min_lhs:.3e})"),
            },
        ),
    ];
    let doc = ExampleDoc {
        checks,
        ode_residual: [r1, r2],
        min_entropy_lhs: min_lhs,
        first_nonpositive_entropy_t: first_nonpositive,
        weak_entropy_limit: weak,
    };
    write_json(out, "example64.json", &doc)?;
    Ok(summarize(&doc.checks))
}
