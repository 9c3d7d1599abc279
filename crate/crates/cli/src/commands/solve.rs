use std::path::Path;

use anyhow::Result;
use radial_sw::plan::{FrontPath, MassLaw};
use radial_sw::{CaseKind, FrontKind, PseudoRiemannData, RegionProfile, WavePlan};
use serde::Serialize;

use super::plan_for;
use crate::config::Scenario;
use crate::report::write_json;

#[derive(Serialize)]
struct PlanDoc {
    case: CaseDoc,
    data: DataDoc,
    horizon: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    notice: Option<&'static str>,
    v0: Option<f64>,
    constants: Option<ConstantsDoc>,
    events: EventsDoc,
    phases: Vec<PhaseDoc>,
}

#[derive(Serialize)]
struct CaseDoc {
    kind: &'static str,
    has_absorption: bool,
    hits_origin: bool,
    left_drains: bool,
}

#[derive(Serialize)]
struct DataDoc {
    n: u32,
    radius: f64,
    rho_l: f64,
    u_l: f64,
    rho_r: f64,
    u_r: f64,
}

#[derive(Serialize)]
#[allow(non_snake_case)]
struct ConstantsDoc {
    C: f64,
    D: f64,
    E: f64,
}

#[derive(Serialize)]
struct EventsDoc {
    vacuum_close: Option<f64>,
    t_in: Option<f64>,
    t_sw0: Option<f64>,
    origin_left: Option<f64>,
}

#[derive(Serialize)]
struct PhaseDoc {
    start: f64,
    end: f64,
    fronts: Vec<FrontDoc>,
    regions: Vec<RegionDoc>,
    origin_jump_mass: f64,
    origin_jump_momentum: f64,
}

#[derive(Serialize)]
struct FrontDoc {
    kind: &'static str,
    path: PathDoc,
    /// Radially weighted mass `ξ^(n-1) σ`.
    weighted_mass: MassDoc,
}

#[derive(Serialize)]
#[serde(tag = "form", rename_all = "snake_case")]
enum PathDoc {
    /// `origin + speed (t - start)`
    Linear { origin: f64, start: f64, speed: f64 },
    /// `drift t + E + (2/C) sqrt(C t + D)`
    Decelerating {
        drift: f64,
        #[serde(rename = "C")]
        c: f64,
        #[serde(rename = "D")]
        d: f64,
        #[serde(rename = "E")]
        e: f64,
    },
}

#[derive(Serialize)]
#[serde(tag = "form", rename_all = "snake_case")]
enum MassDoc {
    None,
    /// `rate t`
    Linear {
        rate: f64,
    },
    /// `scale sqrt(C t + D)`
    Root {
        scale: f64,
        #[serde(rename = "C")]
        c: f64,
        #[serde(rename = "D")]
        d: f64,
    },
}

#[derive(Serialize)]
#[serde(tag = "form", rename_all = "snake_case")]
enum RegionDoc {
    /// `coeff r^(1-n)` moving with `velocity`
    PowerLaw {
        coeff: f64,
        velocity: f64,
    },
    Vacuum,
}

fn case_name(kind: CaseKind) -> &'static str {
    match kind {
        CaseKind::AllVacuum => "all_vacuum",
        CaseKind::VacuumFan => "vacuum_fan",
        CaseKind::Contact => "contact",
        CaseKind::DeltaShock => "delta_shock",
        CaseKind::VacuumLeftShock => "vacuum_left_shock",
        CaseKind::VacuumRightShock => "vacuum_right_shock",
    }
}

pub(crate) fn front_name(kind: FrontKind) -> &'static str {
    match kind {
        FrontKind::ShadowWave => "shadow_wave",
        FrontKind::Shock => "shock",
        FrontKind::Contact => "contact",
        FrontKind::VacuumEdge => "vacuum_edge",
    }
}

fn data_doc(d: &PseudoRiemannData) -> DataDoc {
    DataDoc {
        n: d.n,
        radius: d.radius,
        rho_l: d.rho_l,
        u_l: d.u_l,
        rho_r: d.rho_r,
        u_r: d.u_r,
    }
}

fn document(plan: &WavePlan) -> PlanDoc {
    let phases = plan
        .phases
        .iter()
        .map(|p| PhaseDoc {
            start: p.start,
            // the last phase is open-ended
            end: p.end.min(plan.horizon),
            fronts: p
                .fronts
                .iter()
                .map(|f| FrontDoc {
                    kind: front_name(f.kind),
                    path: match f.path {
                        FrontPath::Linear { origin, start, speed } => PathDoc::Linear { origin, start, speed },
                        FrontPath::Decelerating { drift, c, d, e } => PathDoc::Decelerating { drift, c, d, e },
                    },
                    weighted_mass: match f.mass {
                        MassLaw::None => MassDoc::None,
                        MassLaw::Linear { rate } => MassDoc::Linear { rate },
                        MassLaw::Root { scale, c, d } => MassDoc::Root { scale, c, d },
                    },
                })
                .collect(),
            regions: p
                .regions
                .iter()
                .map(|r| match *r {
                    RegionProfile::PowerLaw { coeff, velocity } => RegionDoc::PowerLaw { coeff, velocity },
                    RegionProfile::Vacuum => RegionDoc::Vacuum,
                })
                .collect(),
            origin_jump_mass: p.origin_jump.0,
            origin_jump_momentum: p.origin_jump.1,
        })
        .collect();
    let ev = plan.events;
    PlanDoc {
        case: CaseDoc {
            kind: case_name(plan.case.kind),
            has_absorption: plan.case.has_absorption,
            hits_origin: plan.case.hits_origin,
            left_drains: plan.case.left_drains,
        },
        data: data_doc(&plan.data),
        horizon: plan.horizon,
        notice: (plan.case.kind == CaseKind::AllVacuum).then_some("empty plan: the data is vacuum everywhere"),
        v0: plan.v0,
        constants: plan.constants.map(|k| ConstantsDoc { C: k.c, D: k.d, E: k.e }),
        events: EventsDoc {
            vacuum_close: ev.vacuum_close,
            t_in: ev.t_in,
            t_sw0: ev.t_sw0,
            origin_left: ev.origin_left,
        },
        phases,
    }
}

pub fn solve(scenario: &Scenario, out: &Path) -> Result<bool> {
    let plan = plan_for(scenario)?;
    let doc = document(&plan);
    write_json(out, "plan.json", &doc)?;
    println!("case {}", doc.case.kind);
    if let Some(notice) = doc.notice {
        println!("{notice}");
    }
    let show = |v: Option<f64>| v.map_or_else(|| "-".to_owned(), |x| x.to_string());
    println!("v0 {}", show(plan.v0));
    if let Some(k) = plan.constants {
        println!("C {} D {} E {}", k.c, k.d, k.e);
    }
    println!("t_in {} t_sw0 {}", show(plan.events.t_in), show(plan.events.t_sw0));
    println!("{} phases", plan.phases.len());
    Ok(true)
}
