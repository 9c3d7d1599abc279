//! Exact solution of the pseudo-Riemann problem.
//!
//! Every case reduces to at most one shadow wave, one contact, the edges of
//! up to three vacuum regions, and a point mass at the origin. A shadow wave
//! between two power-law states moves with the constant speed
//! [`first_root_speed`]; once it has swallowed the whole interior it
//! decelerates along [`PostAbsorption`] towards `u_r`.

use alloc::vec;
use alloc::vec::Vec;

#[allow(unused_imports)] // shadowed by inherent methods when std is linked
use num_traits::Float;

use crate::domain::{radial_power, FrontKind, PseudoRiemannData, RegionProfile};
use crate::error::{Error, Result};
use crate::plan::{Events, Front, FrontPath, MassLaw, Phase, WavePlan};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CaseKind {
    AllVacuum,
    VacuumFan,
    Contact,
    DeltaShock,
    /// Vacuum inside the jump radius; the outer state's edge moves with `u_r`.
    VacuumLeftShock,
    /// Vacuum outside the jump radius; the inner state's edge moves with `u_l`.
    VacuumRightShock,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct CaseTag {
    pub kind: CaseKind,
    /// The shadow wave sweeps up the whole interior in finite time.
    pub has_absorption: bool,
    /// A front emanating from `r = R` reaches the origin in finite time.
    pub hits_origin: bool,
    /// Interior mass flows into the origin from `t = 0`.
    pub left_drains: bool,
}

/// Classify pseudo-Riemann data into exactly one case.
pub fn classify(data: &PseudoRiemannData) -> CaseTag {
    let &PseudoRiemannData {
        rho_l, u_l, rho_r, u_r, ..
    } = data;
    let kind = if rho_l == 0.0 && rho_r == 0.0 {
        CaseKind::AllVacuum
    } else if rho_l == 0.0 {
        CaseKind::VacuumLeftShock
    } else if rho_r == 0.0 {
        CaseKind::VacuumRightShock
    } else if u_l < u_r {
        CaseKind::VacuumFan
    } else if u_l == u_r {
        CaseKind::Contact
    } else {
        CaseKind::DeltaShock
    };
    let hits_origin = match kind {
        CaseKind::AllVacuum => false,
        CaseKind::VacuumLeftShock => u_r < 0.0,
        CaseKind::VacuumRightShock | CaseKind::VacuumFan | CaseKind::Contact => u_l < 0.0,
        CaseKind::DeltaShock => u_l <= 0.0 || u_r < 0.0,
    };
    CaseTag {
        kind,
        has_absorption: kind == CaseKind::DeltaShock && u_l > 0.0,
        hits_origin,
        left_drains: rho_l > 0.0 && u_l < 0.0,
    }
}

/// Entropic shadow-wave speed, a `sqrt(ρ)`-weighted mean of the velocities.
pub fn first_root_speed(rho0: f64, u0: f64, rho1: f64, u1: f64) -> Result<f64> {
    if !(rho0 >= 0.0 && rho1 >= 0.0) {
        return Err(Error::Domain("densities must be nonnegative"));
    }
    if rho0 == 0.0 && rho1 == 0.0 {
        return Err(Error::Degenerate("both states are vacuum"));
    }
    if rho0 == rho1 {
        return Ok(0.5 * (u0 + u1));
    }
    let (s0, s1) = (rho0.sqrt(), rho1.sqrt());
    Ok((u1 * s1 + u0 * s0) / (s1 + s0))
}

/// The other root of `v κ1 = κ2`; `None` when the densities coincide.
pub fn second_root_speed(rho0: f64, u0: f64, rho1: f64, u1: f64) -> Option<f64> {
    let (s0, s1) = (rho0.sqrt(), rho1.sqrt());
    if s0 == s1 {
        return None;
    }
    Some((u1 * s1 - u0 * s0) / (s1 - s0))
}

fn require_delta_shock(data: &PseudoRiemannData) -> Result<()> {
    data.validate()?;
    if classify(data).kind != CaseKind::DeltaShock {
        return Err(Error::Precondition("data do not produce a delta shock"));
    }
    Ok(())
}

/// Rate `sqrt(ρ_l ρ_r) (u_l - u_r)` at which the radially weighted front
/// mass grows while the wave separates the two initial states.
fn influx_rate(data: &PseudoRiemannData) -> f64 {
    (data.rho_l * data.rho_r).sqrt() * (data.u_l - data.u_r)
}

fn v0(data: &PseudoRiemannData) -> f64 {
    first_root_speed(data.rho_l, data.u_l, data.rho_r, data.u_r).unwrap_or(f64::NAN)
}

/// End of the constant-speed phase: the absorption time, or the origin hit
/// when the interior drains instead.
fn constant_speed_end(data: &PseudoRiemannData) -> f64 {
    if data.u_l > 0.0 {
        let (sl, sr) = (data.rho_l.sqrt(), data.rho_r.sqrt());
        data.radius * (sr + sl) / (sr * (data.u_l - data.u_r))
    } else {
        -data.radius / v0(data)
    }
}

/// Lineal mass of the constant-speed shadow wave,
/// `σ(t) = t sqrt(ρ_l ρ_r) (u_l - u_r) (R + v0 t)^(1-n)`.
pub fn sigma_const(data: &PseudoRiemannData, t: f64) -> Result<f64> {
    require_delta_shock(data)?;
    let end = constant_speed_end(data);
    if !(t >= 0.0 && t <= end * (1.0 + 4.0 * f64::EPSILON)) {
        return Err(Error::OutOfPhase { t, start: 0.0, end });
    }
    Ok(t * influx_rate(data) * radial_power(data.radius + v0(data) * t, data.n))
}

/// Time at which the shadow wave has absorbed all interior mass.
///
/// Only finite when `u_l > 0`: then the interior is bounded by a vacuum edge
/// leaving the origin with speed `u_l`, which the wave catches up with.
pub fn absorption_time(data: &PseudoRiemannData) -> Result<Option<f64>> {
    require_delta_shock(data)?;
    if data.u_l <= 0.0 {
        return Ok(None);
    }
    let (sl, sr) = (data.rho_l.sqrt(), data.rho_r.sqrt());
    Ok(Some(data.radius * (sr + sl) / (sr * (data.u_l - data.u_r))))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PostAbsorptionConstants {
    pub c: f64,
    pub d: f64,
    pub e: f64,
}

/// Shadow wave after the interior has been absorbed, sweeping only the
/// outer state `(ρ_r r^(1-n), u_r)`:
///
/// ```text
/// ξ(t) = u_r t + E + (2/C) sqrt(C t + D)
/// σ(t) = (2 ρ_r / C) sqrt(C t + D) ξ(t)^(1-n)
/// ```
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PostAbsorption {
    pub constants: PostAbsorptionConstants,
    pub t_in: f64,
    pub n: u32,
    pub rho_r: f64,
    pub u_r: f64,
}

impl PostAbsorption {
    pub fn path(&self) -> FrontPath {
        let PostAbsorptionConstants { c, d, e } = self.constants;
        FrontPath::Decelerating {
            drift: self.u_r,
            c,
            d,
            e,
        }
    }

    pub fn mass_law(&self) -> MassLaw {
        let PostAbsorptionConstants { c, d, .. } = self.constants;
        MassLaw::Root {
            scale: 2.0 * self.rho_r / c,
            c,
            d,
        }
    }

    pub fn position(&self, t: f64) -> f64 {
        self.path().position(t)
    }

    pub fn speed(&self, t: f64) -> f64 {
        self.path().speed(t)
    }

    pub fn sigma(&self, t: f64) -> f64 {
        self.mass_law().weighted(t) * radial_power(self.position(t), self.n)
    }
}

/// Constants and closed forms of the decelerating phase.
pub fn post_absorption(data: &PseudoRiemannData) -> Result<PostAbsorption> {
    let t_in = absorption_time(data)?.ok_or(Error::Precondition("the interior is never fully absorbed"))?;
    let &PseudoRiemannData {
        radius,
        rho_l,
        u_l,
        rho_r,
        u_r,
        n,
    } = data;
    let du = u_l - u_r;
    let constants = PostAbsorptionConstants {
        c: 2.0 * rho_r / (radius * rho_l * du),
        d: (rho_l - rho_r) / (rho_l * du * du),
        e: radius / rho_r * (rho_r - rho_l),
    };
    Ok(PostAbsorption {
        constants,
        t_in,
        n,
        rho_r,
        u_r,
    })
}

/// Time at which the shadow wave reaches `r = 0`, if ever.
pub fn origin_hit_time(data: &PseudoRiemannData) -> Result<Option<f64>> {
    require_delta_shock(data)?;
    if data.u_l <= 0.0 {
        let v = v0(data);
        return Ok((v < 0.0).then(|| -data.radius / v));
    }
    if data.u_r >= 0.0 {
        return Ok(None);
    }
    let post = post_absorption(data)?;
    Ok(Some(decelerating_hit_time(&post, data.radius)))
}

/// Smallest `t > t_in` with `ξ(t) = 0` for `u_r < 0`.
///
/// In `s = sqrt(C t + D)` the condition is the quadratic
/// `u_r s² + 2 s + (E C - u_r D) = 0`; its larger root is the crossing.
fn decelerating_hit_time(post: &PostAbsorption, radius: f64) -> f64 {
    let PostAbsorptionConstants { c, d, e } = post.constants;
    let ur = post.u_r;
    let k = e * c - ur * d;
    let disc = 1.0 - ur * k;
    let tol = 1e-12 * radius;
    if disc >= 0.0 {
        let s = (1.0 + disc.sqrt()) / -ur;
        let t = (s * s - d) / c;
        if t > post.t_in && post.position(t).abs() <= tol {
            return t;
        }
    }
    // Cancellation in s² - D; bracket and bisect on ξ.
    let mut lo = post.t_in;
    let mut hi = post.t_in.max(radius / -ur) * 2.0;
    while post.position(hi) > 0.0 {
        lo = hi;
        hi *= 2.0;
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        let x = post.position(mid);
        if x.abs() <= tol || hi - lo <= f64::EPSILON * hi {
            return mid;
        }
        if x > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Origin mass `m0(t)` of a plan.
pub fn origin_mass(plan: &WavePlan, t: f64) -> f64 {
    plan.origin_mass(t)
}

struct PlanBuilder {
    phases: Vec<Phase>,
}

impl PlanBuilder {
    fn new() -> Self {
        Self { phases: Vec::new() }
    }

    fn phase(&mut self, start: f64, fronts: Vec<Front>, regions: Vec<RegionProfile>) -> &mut Self {
        self.phase_with_jump(start, fronts, regions, (0.0, 0.0))
    }

    fn phase_with_jump(
        &mut self,
        start: f64,
        fronts: Vec<Front>,
        regions: Vec<RegionProfile>,
        jump: (f64, f64),
    ) -> &mut Self {
        debug_assert_eq!(regions.len(), fronts.len() + 1);
        if let Some(last) = self.phases.last_mut() {
            last.end = start;
        }
        self.phases.push(Phase {
            start,
            end: f64::INFINITY,
            fronts,
            regions,
            origin_jump: jump,
        });
        self
    }
}

/// Assemble the exact solution on `[0, t_max]`.
pub fn solve(data: &PseudoRiemannData, t_max: f64) -> Result<WavePlan> {
    data.validate()?;
    if !(t_max > 0.0) {
        return Err(Error::Domain("time horizon must be positive"));
    }
    let case = classify(data);
    let &PseudoRiemannData { radius, u_l, u_r, .. } = data;
    let (left, right) = (data.left(), data.right());
    let vac = RegionProfile::Vacuum;
    let shock = |speed| Front::edge(FrontKind::Shock, radius, speed);
    let inner_edge = Front::edge(FrontKind::VacuumEdge, 0.0, u_l);
    let mut b = PlanBuilder::new();
    let mut events = Events::default();
    let mut v0_out = None;
    let mut constants = None;

    match case.kind {
        CaseKind::AllVacuum => {
            b.phase(0.0, vec![], vec![vac]);
        }
        CaseKind::VacuumRightShock => {
            if u_l > 0.0 {
                b.phase(0.0, vec![inner_edge, shock(u_l)], vec![vac, left, vac]);
            } else if u_l == 0.0 {
                b.phase(0.0, vec![shock(0.0)], vec![left, vac]);
            } else {
                let t_gone = radius / -u_l;
                b.phase(0.0, vec![shock(u_l)], vec![left, vac])
                    .phase(t_gone, vec![], vec![vac]);
                events.origin_left = Some(t_gone);
            }
        }
        CaseKind::VacuumLeftShock => {
            if u_r >= 0.0 {
                b.phase(0.0, vec![shock(u_r)], vec![vac, right]);
            } else {
                let t_close = radius / -u_r;
                b.phase(0.0, vec![shock(u_r)], vec![vac, right])
                    .phase(t_close, vec![], vec![right]);
                events.vacuum_close = Some(t_close);
            }
        }
        CaseKind::VacuumFan => {
            if u_l > 0.0 {
                b.phase(
                    0.0,
                    vec![inner_edge, shock(u_l), shock(u_r)],
                    vec![vac, left, vac, right],
                );
            } else if u_l == 0.0 {
                b.phase(0.0, vec![shock(0.0), shock(u_r)], vec![left, vac, right]);
            } else {
                let t_gone = radius / -u_l;
                events.origin_left = Some(t_gone);
                b.phase(0.0, vec![shock(u_l), shock(u_r)], vec![left, vac, right])
                    .phase(t_gone, vec![shock(u_r)], vec![vac, right]);
                if u_r < 0.0 {
                    let t_close = radius / -u_r;
                    events.vacuum_close = Some(t_close);
                    b.phase(t_close, vec![], vec![right]);
                }
            }
        }
        CaseKind::Contact => {
            let contact = Front::edge(FrontKind::Contact, radius, u_l);
            if u_l > 0.0 {
                b.phase(0.0, vec![inner_edge, contact], vec![vac, left, right]);
            } else if u_l == 0.0 {
                b.phase(0.0, vec![contact], vec![left, right]);
            } else {
                let t_gone = radius / -u_l;
                events.origin_left = Some(t_gone);
                b.phase(0.0, vec![contact], vec![left, right])
                    .phase(t_gone, vec![], vec![right]);
            }
        }
        CaseKind::DeltaShock => {
            let v0 = v0(data);
            v0_out = Some(v0);
            let area = data.area();
            let rate = influx_rate(data);
            let shadow = Front {
                kind: FrontKind::ShadowWave,
                path: FrontPath::Linear {
                    origin: radius,
                    start: 0.0,
                    speed: v0,
                },
                mass: MassLaw::Linear { rate },
            };
            if u_l > 0.0 {
                let post = post_absorption(data)?;
                let t_in = post.t_in;
                events.t_in = Some(t_in);
                constants = Some(post.constants);
                let decel = Front {
                    kind: FrontKind::ShadowWave,
                    path: post.path(),
                    mass: post.mass_law(),
                };
                b.phase(0.0, vec![inner_edge, shadow], vec![vac, left, right]).phase(
                    t_in,
                    vec![decel],
                    vec![vac, right],
                );
                if u_r < 0.0 {
                    let t_sw0 = decelerating_hit_time(&post, radius);
                    events.t_sw0 = Some(t_sw0);
                    let mass = area * decel.mass.weighted(t_sw0);
                    b.phase_with_jump(t_sw0, vec![], vec![right], (mass, mass * decel.path.speed(t_sw0)));
                }
            } else {
                // v0 < 0 here: the wave reaches the origin exactly when the
                // interior has drained.
                let t0 = -radius / v0;
                events.t_sw0 = Some(t0);
                events.origin_left = Some(t0);
                let mass = area * rate * t0;
                b.phase(0.0, vec![shadow], vec![left, right]).phase_with_jump(
                    t0,
                    vec![],
                    vec![right],
                    (mass, mass * v0),
                );
            }
        }
    }

    Ok(WavePlan::assemble(
        *data, case, t_max, b.phases, events, v0_out, constants,
    ))
}
