mod example;
mod oracle;
mod sample;
mod solve;
mod verify;

pub use example::example64;
pub use oracle::oracle;
pub use sample::sample;
pub use solve::solve;
pub use verify::verify;

use anyhow::Result;
use radial_sw::{solve as solve_plan, WavePlan};

use crate::config::Scenario;

fn plan_for(scenario: &Scenario) -> Result<WavePlan> {
    let data = scenario.data()?;
    Ok(solve_plan(&data, scenario.t_max()?)?)
}
