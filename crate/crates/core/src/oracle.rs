//! Sticky particles: an independent discretization of the radial system.
//!
//! In mass coordinates the radial system is one-dimensional pressureless
//! gas dynamics, so particles of mass `|S^(n-1)| c Δr` cut from a region
//! `c r^(1-n)` move ballistically and merge on contact. Particles that
//! reach `r = 0` are absorbed into the origin mass at rest.

use alloc::collections::BinaryHeap;
use alloc::vec::Vec;
use core::cmp::{Ordering, Reverse};

#[allow(unused_imports)] // shadowed by inherent methods when std is linked
use num_traits::Float;

use crate::domain::{PseudoRiemannData, RegionProfile};
use crate::error::{Error, Result};
use crate::plan::WavePlan;
use crate::verify::total_mass;

/// Collisions closer than this in time are processed as one group.
pub const TIME_TOLERANCE: f64 = 1e-12;

/// A particle cluster at the current time.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Particle {
    pub r: f64,
    pub m: f64,
    pub u: f64,
}

#[derive(Debug, Clone, Copy)]
struct Slot {
    /// Position at `t_ref`.
    r: f64,
    t_ref: f64,
    m: f64,
    u: f64,
    prev: Option<usize>,
    next: Option<usize>,
    alive: bool,
    version: u32,
}

impl Slot {
    fn position(&self, t: f64) -> f64 {
        self.r + self.u * (t - self.t_ref)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
enum EventKind {
    /// `left` and its right neighbour collide.
    Pair {
        left: usize,
        right: usize,
        v_left: u32,
        v_right: u32,
    },
    /// `head` reaches the origin.
    Origin { head: usize, version: u32 },
}

#[derive(Debug, Clone, Copy, PartialEq)]
struct Event {
    time: f64,
    kind: EventKind,
}

impl Eq for Event {}

impl PartialOrd for Event {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Event {
    fn cmp(&self, other: &Self) -> Ordering {
        self.time.total_cmp(&other.time)
    }
}

/// An event-driven sticky-particle system.
#[derive(Debug, Clone)]
pub struct ParticleSystem {
    slots: Vec<Slot>,
    head: Option<usize>,
    queue: BinaryHeap<Reverse<Event>>,
    time: f64,
    m0: f64,
    absorbed_momentum: f64,
    initial_count: usize,
    unit_mass: f64,
    total_mass: f64,
    largest_absorption: Option<(f64, f64)>,
}

impl ParticleSystem {
    /// System of particles at `time`; radii must be positive and strictly
    /// increasing, masses nonnegative.
    pub fn new(particles: &[Particle], time: f64) -> Result<Self> {
        if particles
            .iter()
            .any(|p| !(p.r > 0.0) || !(p.m >= 0.0) || !p.u.is_finite())
        {
            return Err(Error::Domain(
                "particles need positive radius, nonnegative mass and finite velocity",
            ));
        }
        if particles.windows(2).any(|w| !(w[0].r < w[1].r)) {
            return Err(Error::Domain("particle radii must be strictly increasing"));
        }
        let k = particles.len();
        let slots = particles
            .iter()
            .enumerate()
            .map(|(i, p)| Slot {
                r: p.r,
                t_ref: time,
                m: p.m,
                u: p.u,
                prev: i.checked_sub(1),
                next: (i + 1 < k).then_some(i + 1),
                alive: true,
                version: 0,
            })
            .collect();
        let mut ps = ParticleSystem {
            slots,
            head: (k > 0).then_some(0),
            queue: BinaryHeap::new(),
            time,
            m0: 0.0,
            absorbed_momentum: 0.0,
            initial_count: k,
            unit_mass: particles.iter().fold(0.0, |a, p| a.max(p.m)),
            total_mass: particles.iter().map(|p| p.m).sum(),
            largest_absorption: None,
        };
        for i in 0..k {
            ps.schedule_pair(i);
        }
        ps.schedule_origin();
        Ok(ps)
    }

    pub fn time(&self) -> f64 {
        self.time
    }

    /// Absorbed origin mass.
    pub fn m0(&self) -> f64 {
        self.m0
    }

    /// Momentum carried into the origin by absorbed particles.
    pub fn absorbed_momentum(&self) -> f64 {
        self.absorbed_momentum
    }

    /// Number of particles the system started with.
    pub fn initial_count(&self) -> usize {
        self.initial_count
    }

    /// Largest initial particle mass.
    pub fn unit_mass(&self) -> f64 {
        self.unit_mass
    }

    /// Initial total mass; particle mass plus `m0` stays equal to it.
    pub fn initial_mass(&self) -> f64 {
        self.total_mass
    }

    /// Time and mass of the heaviest cluster absorbed so far.
    pub fn largest_absorption(&self) -> Option<(f64, f64)> {
        self.largest_absorption
    }

    /// Live particles, ordered by radius, at the current time.
    pub fn particles(&self) -> Vec<Particle> {
        let mut out = Vec::new();
        let mut cur = self.head;
        while let Some(i) = cur {
            let s = &self.slots[i];
            out.push(Particle {
                r: s.position(self.time),
                m: s.m,
                u: s.u,
            });
            cur = s.next;
        }
        out
    }

    pub fn mass(&self) -> f64 {
        self.particles().iter().map(|p| p.m).sum()
    }

    pub fn momentum(&self) -> f64 {
        self.particles().iter().map(|p| p.m * p.u).sum()
    }

    fn schedule_pair(&mut self, left: usize) {
        let a = &self.slots[left];
        let Some(right) = a.next else { return };
        let b = &self.slots[right];
        if !(a.u > b.u) {
            return;
        }
        let gap = b.position(self.time) - a.position(self.time);
        let time = self.time + (gap / (a.u - b.u)).max(0.0);
        self.queue.push(Reverse(Event {
            time,
            kind: EventKind::Pair {
                left,
                right,
                v_left: a.version,
                v_right: b.version,
            },
        }));
    }

    fn schedule_origin(&mut self) {
        let Some(head) = self.head else { return };
        let s = &self.slots[head];
        if s.u < 0.0 {
            let time = self.time + (s.position(self.time) / -s.u).max(0.0);
            self.queue.push(Reverse(Event {
                time,
                kind: EventKind::Origin {
                    head,
                    version: s.version,
                },
            }));
        }
    }

    fn is_current(&self, kind: &EventKind) -> bool {
        match *kind {
            EventKind::Pair {
                left,
                right,
                v_left,
                v_right,
            } => {
                let (a, b) = (&self.slots[left], &self.slots[right]);
                a.alive && b.alive && a.version == v_left && b.version == v_right && a.next == Some(right)
            }
            EventKind::Origin { head, version } => {
                let s = &self.slots[head];
                s.alive && s.version == version && self.head == Some(head)
            }
        }
    }

    /// Advances to `t_end`, processing every collision and absorption up to it.
    pub fn run_until(&mut self, t_end: f64) -> Result<()> {
        if !(t_end >= self.time) {
            return Err(Error::Domain("cannot run a particle system backwards"));
        }
        while let Some(&Reverse(ev)) = self.queue.peek() {
            if ev.time > t_end {
                break;
            }
            self.queue.pop();
            if !self.is_current(&ev.kind) {
                continue;
            }
            self.time = self.time.max(ev.time);
            match ev.kind {
                EventKind::Pair { left, right, .. } => self.merge(left, right),
                EventKind::Origin { head, .. } => self.absorb(head),
            }
        }
        self.time = t_end;
        Ok(())
    }

    fn merge(&mut self, left: usize, right: usize) {
        let t = self.time;
        let b = self.slots[right];
        let a = &mut self.slots[left];
        let m = a.m + b.m;
        let p = a.m * a.u + b.m * b.u;
        let r = if m > 0.0 {
            (a.m * a.position(t) + b.m * b.position(t)) / m
        } else {
            a.position(t)
        };
        a.r = r;
        a.t_ref = t;
        a.m = m;
        // convex combination, clamped against rounding
        a.u = if m > 0.0 {
            (p / m).clamp(b.u.min(a.u), b.u.max(a.u))
        } else {
            a.u
        };
        a.version += 1;
        a.next = b.next;
        self.slots[right].alive = false;
        if let Some(nn) = b.next {
            self.slots[nn].prev = Some(left);
        }
        if let Some(pp) = self.slots[left].prev {
            self.schedule_pair(pp);
        }
        self.schedule_pair(left);
        if self.head == Some(left) {
            self.schedule_origin();
        }
    }

    fn absorb(&mut self, head: usize) {
        let s = self.slots[head];
        self.m0 += s.m;
        self.absorbed_momentum += s.m * s.u;
        if self.largest_absorption.is_none_or(|(_, m)| s.m > m) {
            self.largest_absorption = Some((self.time, s.m));
        }
        self.slots[head].alive = false;
        self.head = s.next;
        if let Some(nh) = s.next {
            self.slots[nh].prev = None;
        }
        self.schedule_origin();
    }
}

/// Cuts `(0, r_max]` into `cells` equal cells (the one straddling `R` is
/// split at `R`) and puts one particle at each non-vacuum cell's centre of
/// mass.
pub fn discretize(data: &PseudoRiemannData, cells: usize, r_max: f64) -> Result<ParticleSystem> {
    data.validate()?;
    if cells < 2 {
        return Err(Error::Domain("need at least two cells"));
    }
    if !(r_max > data.radius) {
        return Err(Error::Domain("truncation radius must exceed the jump radius"));
    }
    let area = data.area();
    let h = r_max / cells as f64;
    let mut particles = Vec::with_capacity(cells + 1);
    let mut emit = |lo: f64, hi: f64, region: RegionProfile| {
        if let RegionProfile::PowerLaw { coeff, velocity } = region {
            // the mass per unit radius is constant, so the centroid is the midpoint
            particles.push(Particle {
                r: 0.5 * (lo + hi),
                m: area * coeff * (hi - lo),
                u: velocity,
            });
        }
    };
    for k in 0..cells {
        let lo = h * k as f64;
        let hi = if k + 1 == cells { r_max } else { h * (k + 1) as f64 };
        if hi <= data.radius {
            emit(lo, hi, data.left());
        } else if lo >= data.radius {
            emit(lo, hi, data.right());
        } else {
            emit(lo, data.radius, data.left());
            emit(data.radius, hi, data.right());
        }
    }
    ParticleSystem::new(&particles, 0.0)
}

/// Evolves a system to `t_end`.
pub fn run_until(mut ps: ParticleSystem, t_end: f64) -> Result<ParticleSystem> {
    ps.run_until(t_end)?;
    Ok(ps)
}

/// Cluster threshold in units of the initial particle mass.
pub const CLUSTER_FACTOR: f64 = 10.0;

/// Default `mass_fraction` for [`front_extract`].
pub const DEFAULT_MASS_FRACTION: f64 = 0.05;

/// Position and mass of the heaviest cluster, if it holds more than
/// [`CLUSTER_FACTOR`] initial particles' worth and more than
/// `mass_fraction` of the total mass.
pub fn front_extract(ps: &ParticleSystem, mass_fraction: f64) -> Result<Option<(f64, f64)>> {
    if !(mass_fraction > 0.0 && mass_fraction < 1.0) {
        return Err(Error::Domain("mass fraction must lie in (0, 1)"));
    }
    let best = ps.particles().into_iter().max_by(|a, b| a.m.total_cmp(&b.m));
    Ok(best
        .filter(|p| p.m > CLUSTER_FACTOR * ps.unit_mass() && p.m > mass_fraction * ps.initial_mass())
        .map(|p| (p.r, p.m)))
}

/// Oracle-versus-plan discrepancies at one time.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Comparison {
    pub t: f64,
    pub particles: usize,
    /// Exact and oracle front `(position, total mass)`, when present.
    pub front_exact: Option<(f64, f64)>,
    pub front_oracle: Option<(f64, f64)>,
    pub m0_exact: f64,
    pub m0_oracle: f64,
    /// `|Q_oracle - Q_plan|` with the plan truncated at `r_max`.
    pub q_error: f64,
}

impl Comparison {
    /// `(position error, front mass error)` when both fronts exist.
    pub fn front_errors(&self) -> Option<(f64, f64)> {
        match (self.front_exact, self.front_oracle) {
            (Some(e), Some(o)) => Some(((e.0 - o.0).abs(), (e.1 - o.1).abs())),
            _ => None,
        }
    }

    pub fn m0_error(&self) -> f64 {
        (self.m0_exact - self.m0_oracle).abs()
    }
}

/// Compares `ps` (already run to `t`) with `plan` at time `t`.
pub fn compare(plan: &WavePlan, ps: &ParticleSystem, t: f64, r_max: f64) -> Result<Comparison> {
    if ps.time() != t {
        return Err(Error::Precondition(
            "particle system must be advanced to the comparison time",
        ));
    }
    let front_exact = plan
        .shadow_front(t)
        .map(|f| (f.path.position(t), plan.data.area() * f.mass.weighted(t)));
    let front_oracle = front_extract(ps, DEFAULT_MASS_FRACTION)?;
    let q_plan = total_mass(plan, t, r_max)?;
    Ok(Comparison {
        t,
        particles: ps.initial_count(),
        front_exact,
        front_oracle,
        m0_exact: plan.origin_mass(t),
        m0_oracle: ps.m0(),
        q_error: (ps.mass() + ps.m0() - q_plan).abs(),
    })
}
