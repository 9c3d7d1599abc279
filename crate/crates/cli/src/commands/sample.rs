use std::path::Path;

use anyhow::Result;
use radial_sw::SolutionSample;
use rayon::prelude::*;

use super::plan_for;
use crate::config::Scenario;
use crate::report::{csv_writer, opt};

const HEADER: [&str; 9] = [
    "r",
    "t",
    "rho",
    "u",
    "is_vacuum",
    "m0",
    "atom_radius",
    "atom_sigma",
    "atom_total_mass",
];

fn record(s: &SolutionSample) -> [String; 9] {
    [
        s.r.to_string(),
        s.t.to_string(),
        s.rho.to_string(),
        s.u.to_string(),
        u8::from(s.is_vacuum).to_string(),
        s.m0.to_string(),
        opt(s.atom.map(|a| a.radius)),
        opt(s.atom.map(|a| a.sigma)),
        opt(s.atom.map(|a| a.total_mass)),
    ]
}

pub fn sample(scenario: &Scenario, out: &Path) -> Result<bool> {
    let plan = plan_for(scenario)?;
    let rs = scenario.r_grid()?;
    let ts = scenario.t_grid()?;
    // one task per time slice; `collect` keeps grid order
    let rows = ts
        .par_iter()
        .map(|&t| {
            rs.iter()
                .map(|&r| plan.evaluate(r, t))
                .collect::<radial_sw::Result<Vec<_>>>()
        })
        .collect::<radial_sw::Result<Vec<_>>>()?;
    let mut w = csv_writer(out, "samples.csv")?;
    w.write_record(HEADER)?;
    for s in rows.iter().flatten() {
        w.write_record(record(s))?;
    }
    w.flush()?;
    println!("{} samples on {} x {} grid", rs.len() * ts.len(), ts.len(), rs.len());
    Ok(true)
}
