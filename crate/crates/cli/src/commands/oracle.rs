use std::path::Path;

use anyhow::Result;
use radial_sw::oracle::{compare, discretize, Comparison};
use rayon::prelude::*;

use super::plan_for;
use crate::config::Scenario;
use crate::report::{csv_writer, opt};

const HEADER: [&str; 8] = [
    "t",
    "N",
    "pos_exact",
    "pos_oracle",
    "mass_exact",
    "mass_oracle",
    "m0_exact",
    "m0_oracle",
];

pub fn oracle(scenario: &Scenario, out: &Path) -> Result<bool> {
    let plan = plan_for(scenario)?;
    let settings = scenario.oracle()?;
    let data = plan.data;
    // each resolution is an independent particle system
    let runs = settings
        .cells
        .par_iter()
        .map(|&cells| -> Result<Vec<Comparison>> {
            let mut ps = discretize(&data, cells, settings.r_max)?;
            let mut rows = Vec::with_capacity(settings.times.len());
            for &t in &settings.times {
                ps.run_until(t)?;
                rows.push(compare(&plan, &ps, t, settings.r_max)?);
            }
            Ok(rows)
        })
        .collect::<Result<Vec<_>>>()?;

    let mut w = csv_writer(out, "oracle.csv")?;
    w.write_record(HEADER)?;
    // time-major order
    for k in 0..settings.times.len() {
        for (run, &cells) in runs.iter().zip(&settings.cells) {
            let c = &run[k];
            w.write_record([
                c.t.to_string(),
                cells.to_string(),
                opt(c.front_exact.map(|f| f.0)),
                opt(c.front_oracle.map(|f| f.0)),
                opt(c.front_exact.map(|f| f.1)),
                opt(c.front_oracle.map(|f| f.1)),
                c.m0_exact.to_string(),
                c.m0_oracle.to_string(),
            ])?;
        }
    }
    w.flush()?;
    for (run, &cells) in runs.iter().zip(&settings.cells) {
        let worst = run
            .iter()
            .filter_map(Comparison::front_errors)
            .fold(0.0f64, |m, e| m.max(e.0));
        println!("N={cells}: max front position error {worst:.3e}");
    }
    Ok(true)
}
