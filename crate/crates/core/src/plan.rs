//! Piecewise global solutions and their evaluation.

use alloc::vec::Vec;

#[allow(unused_imports)] // shadowed by inherent methods when std is linked
use num_traits::Float;

use crate::domain::{radial_power, Atom, FrontKind, FrontState, PseudoRiemannData, RegionProfile, SolutionSample};
use crate::error::{Error, Result};
use crate::riemann::{CaseTag, PostAbsorptionConstants};

/// Relative tolerance for reporting a front atom at a sample radius.
pub const ATOM_TOLERANCE: f64 = 1e-9;

/// Trajectory `ξ(t)` of a front, always as an absolute radius.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum FrontPath {
    /// `ξ(t) = origin + speed * (t - start)`.
    Linear { origin: f64, start: f64, speed: f64 },
    /// `ξ(t) = drift * t + e + (2 / c) * sqrt(c t + d)`, the shadow wave that
    /// keeps sweeping up a single power-law state after its interior emptied.
    Decelerating { drift: f64, c: f64, d: f64, e: f64 },
}

impl FrontPath {
    pub fn position(&self, t: f64) -> f64 {
        match *self {
            FrontPath::Linear { origin, start, speed } => origin + speed * (t - start),
            FrontPath::Decelerating { drift, c, d, e } => drift * t + e + 2.0 / c * (c * t + d).sqrt(),
        }
    }

    pub fn speed(&self, t: f64) -> f64 {
        match *self {
            FrontPath::Linear { speed, .. } => speed,
            FrontPath::Decelerating { drift, c, d, .. } => drift + 1.0 / (c * t + d).sqrt(),
        }
    }

    pub fn acceleration(&self, t: f64) -> f64 {
        match *self {
            FrontPath::Linear { .. } => 0.0,
            FrontPath::Decelerating { c, d, .. } => -0.5 * c * (c * t + d).powf(-1.5),
        }
    }
}

/// Law for the radially weighted front mass `p(t) = ξ(t)^(n-1) σ(t)`.
///
/// The total mass carried by the front is `|S^(n-1)| p(t)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum MassLaw {
    None,
    /// `p(t) = rate * t`.
    Linear {
        rate: f64,
    },
    /// `p(t) = scale * sqrt(c t + d)`.
    Root {
        scale: f64,
        c: f64,
        d: f64,
    },
}

impl MassLaw {
    pub fn weighted(&self, t: f64) -> f64 {
        match *self {
            MassLaw::None => 0.0,
            MassLaw::Linear { rate } => rate * t,
            MassLaw::Root { scale, c, d } => scale * (c * t + d).sqrt(),
        }
    }

    pub fn weighted_rate(&self, t: f64) -> f64 {
        match *self {
            MassLaw::None => 0.0,
            MassLaw::Linear { rate } => rate,
            MassLaw::Root { scale, c, d } => 0.5 * scale * c / (c * t + d).sqrt(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Front {
    pub kind: FrontKind,
    pub path: FrontPath,
    pub mass: MassLaw,
}

impl Front {
    pub(crate) fn edge(kind: FrontKind, origin: f64, speed: f64) -> Self {
        Front {
            kind,
            path: FrontPath::Linear {
                origin,
                start: 0.0,
                speed,
            },
            mass: MassLaw::None,
        }
    }

    pub fn state(&self, t: f64, n: u32) -> FrontState {
        let xi = self.path.position(t);
        FrontState {
            kind: self.kind,
            xi,
            speed: self.path.speed(t),
            sigma: self.sigma(t, n),
        }
    }

    /// Lineal mass `σ(t) = p(t) ξ(t)^(1-n)`.
    pub fn sigma(&self, t: f64, n: u32) -> f64 {
        match self.mass {
            MassLaw::None => 0.0,
            law => law.weighted(t) * radial_power(self.path.position(t), n),
        }
    }

    /// Rate of change of `σ(t)`.
    pub fn sigma_rate(&self, t: f64, n: u32) -> f64 {
        let xi = self.path.position(t);
        let p = self.mass.weighted(t);
        let dp = self.mass.weighted_rate(t);
        let geometric = if n == 1 {
            0.0
        } else {
            (1.0 - f64::from(n)) * p * self.path.speed(t) * xi.powi(-(n as i32))
        };
        dp * radial_power(xi, n) + geometric
    }
}

/// Time interval `[start, end)` with a fixed wave pattern.
///
/// `regions[i]` lies between `fronts[i - 1]` (or the origin) and `fronts[i]`
/// (or infinity), so `regions.len() == fronts.len() + 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct Phase {
    pub start: f64,
    pub end: f64,
    pub fronts: Vec<Front>,
    pub regions: Vec<RegionProfile>,
    /// Mass and momentum dropped into the origin at `start` by a front that
    /// reached `r = 0`.
    pub origin_jump: (f64, f64),
}

impl Phase {
    pub fn contains(&self, t: f64) -> bool {
        self.start <= t && t < self.end
    }
}

/// Named event times of a plan.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct Events {
    /// A vacuum gap bounded by the origin closes: the outer material reaches `r = 0`.
    pub vacuum_close: Option<f64>,
    /// The shadow wave has swept up all the interior mass.
    pub t_in: Option<f64>,
    /// The shadow wave reaches the origin and dumps its mass there.
    pub t_sw0: Option<f64>,
    /// The interior material has drained completely into the origin.
    pub origin_left: Option<f64>,
}

/// One linear piece of the origin-mass law, valid from `start` onward.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OriginPiece {
    pub start: f64,
    pub mass: f64,
    pub mass_rate: f64,
    pub momentum: f64,
    pub momentum_rate: f64,
}

/// Mass `m0(t)` at the origin and the momentum it has swallowed.
///
/// The point mass itself is at rest; `momentum` is what flowed into it and is
/// needed to close the momentum budget.
#[derive(Debug, Clone, PartialEq)]
pub struct OriginLaw {
    pub pieces: Vec<OriginPiece>,
}

impl OriginLaw {
    fn piece(&self, t: f64) -> &OriginPiece {
        let idx = self.pieces.partition_point(|p| p.start <= t);
        &self.pieces[idx.saturating_sub(1)]
    }

    pub fn mass(&self, t: f64) -> f64 {
        if t <= 0.0 {
            return 0.0;
        }
        let p = self.piece(t);
        p.mass + p.mass_rate * (t - p.start)
    }

    pub fn momentum(&self, t: f64) -> f64 {
        if t <= 0.0 {
            return 0.0;
        }
        let p = self.piece(t);
        p.momentum + p.momentum_rate * (t - p.start)
    }
}

/// Global-in-time exact solution, valid on `[0, horizon]`.
#[derive(Debug, Clone, PartialEq)]
pub struct WavePlan {
    pub data: PseudoRiemannData,
    pub case: CaseTag,
    pub horizon: f64,
    pub phases: Vec<Phase>,
    pub events: Events,
    pub origin: OriginLaw,
    /// Speed of the shadow wave while it separates two power-law states.
    pub v0: Option<f64>,
    pub constants: Option<PostAbsorptionConstants>,
}

impl WavePlan {
    pub(crate) fn assemble(
        data: PseudoRiemannData,
        case: CaseTag,
        horizon: f64,
        phases: Vec<Phase>,
        events: Events,
        v0: Option<f64>,
        constants: Option<PostAbsorptionConstants>,
    ) -> Self {
        let area = data.area();
        let mut pieces = Vec::with_capacity(phases.len());
        let (mut mass, mut momentum) = (0.0, 0.0);
        let mut prev: Option<&Phase> = None;
        for phase in &phases {
            if let Some(p) = prev {
                let dt = phase.start - p.start;
                let (rm, rp) = inflow_rates(p, area);
                mass += rm * dt;
                momentum += rp * dt;
            }
            mass += phase.origin_jump.0;
            momentum += phase.origin_jump.1;
            let (mass_rate, momentum_rate) = inflow_rates(phase, area);
            pieces.push(OriginPiece {
                start: phase.start,
                mass,
                mass_rate,
                momentum,
                momentum_rate,
            });
            prev = Some(phase);
        }
        WavePlan {
            data,
            case,
            horizon,
            phases,
            events,
            origin: OriginLaw { pieces },
            v0,
            constants,
        }
    }

    pub fn n(&self) -> u32 {
        self.data.n
    }

    /// Phase containing `t` (the later one at a boundary).
    pub fn phase_at(&self, t: f64) -> &Phase {
        let idx = self.phases.partition_point(|p| p.start <= t);
        &self.phases[idx.saturating_sub(1)]
    }

    pub fn fronts_at(&self, t: f64) -> Vec<FrontState> {
        let n = self.n();
        self.phase_at(t).fronts.iter().map(|f| f.state(t, n)).collect()
    }

    /// The shadow wave front active at `t`, if any.
    pub fn shadow_front(&self, t: f64) -> Option<&Front> {
        self.phase_at(t).fronts.iter().find(|f| f.kind == FrontKind::ShadowWave)
    }

    pub fn origin_mass(&self, t: f64) -> f64 {
        self.origin.mass(t)
    }

    pub fn origin_momentum(&self, t: f64) -> f64 {
        self.origin.momentum(t)
    }

    fn check_time(&self, t: f64) -> Result<()> {
        if !(t >= 0.0) {
            return Err(Error::Domain("time must be nonnegative"));
        }
        if t > self.horizon {
            return Err(Error::OutOfRange {
                t,
                horizon: self.horizon,
            });
        }
        Ok(())
    }

    /// Regular field at `(r, t)`: region profile, density and (sampling) velocity.
    fn regular_at(&self, r: f64, t: f64) -> (RegionProfile, f64, f64) {
        let n = self.n();
        let phase = self.phase_at(t);
        let idx = phase.fronts.iter().take_while(|f| f.path.position(t) <= r).count();
        let region = phase.regions[idx];
        match region {
            RegionProfile::PowerLaw { velocity, .. } => (region, region.density(r, n), velocity),
            RegionProfile::Vacuum => {
                let left = idx.checked_sub(1).map(|i| &phase.fronts[i]);
                let right = phase.fronts.get(idx);
                let (r0, s0) = left.map_or((0.0, 0.0), |f| (f.path.position(t), f.path.speed(t)));
                let u = match right {
                    Some(f) => {
                        let (r1, s1) = (f.path.position(t), f.path.speed(t));
                        if r1 > r0 {
                            s0 + (s1 - s0) * (r - r0) / (r1 - r0)
                        } else {
                            s1
                        }
                    }
                    None => s0,
                };
                (region, 0.0, u)
            }
        }
    }

    /// Sample the solution at radius `r` and time `t`.
    pub fn evaluate(&self, r: f64, t: f64) -> Result<SolutionSample> {
        self.check_time(t)?;
        if !(r >= 0.0) {
            return Err(Error::Domain("radius must be nonnegative"));
        }
        let n = self.n();
        let (region, rho, u) = self.regular_at(r, t);
        let area = self.data.area();
        let atom = self
            .phase_at(t)
            .fronts
            .iter()
            .filter(|f| f.kind == FrontKind::ShadowWave)
            .find_map(|f| {
                let xi = f.path.position(t);
                let tol = ATOM_TOLERANCE * self.data.radius.max(xi);
                ((r - xi).abs() < tol).then(|| Atom {
                    radius: xi,
                    sigma: f.sigma(t, n),
                    total_mass: area * f.mass.weighted(t),
                })
            });
        Ok(SolutionSample {
            r,
            t,
            rho,
            u,
            is_vacuum: region.is_vacuum(),
            m0: self.origin_mass(t),
            atom,
        })
    }
}

fn inflow_rates(phase: &Phase, area: f64) -> (f64, f64) {
    match phase.regions[0] {
        RegionProfile::PowerLaw { coeff, velocity } if velocity < 0.0 => {
            let rate = area * coeff * -velocity;
            (rate, rate * velocity)
        }
        _ => (0.0, 0.0),
    }
}

/// Anything that can be realized as an ε-family of shadow waves: a regular
/// field plus fronts carrying lineal mass.
pub trait ShadowSource {
    fn dimension(&self) -> u32;

    /// Regular density and velocity at `(r, t)`; vacuum reports density 0.
    fn regular(&self, r: f64, t: f64) -> (f64, f64);

    /// Fronts carrying mass at time `t`.
    fn shadow_fronts(&self, t: f64, out: &mut Vec<FrontState>);

    /// Radii of discontinuities of the regular field at time `t`, not
    /// including the shadow fronts themselves.
    fn jumps(&self, t: f64, out: &mut Vec<f64>);

    /// Times at which the wave pattern changes.
    fn event_times(&self, out: &mut Vec<f64>);
}

impl ShadowSource for WavePlan {
    fn dimension(&self) -> u32 {
        self.n()
    }

    fn regular(&self, r: f64, t: f64) -> (f64, f64) {
        let (_, rho, u) = self.regular_at(r, t);
        (rho, u)
    }

    fn shadow_fronts(&self, t: f64, out: &mut Vec<FrontState>) {
        let n = self.n();
        out.extend(
            self.phase_at(t)
                .fronts
                .iter()
                .filter(|f| f.kind == FrontKind::ShadowWave)
                .map(|f| f.state(t, n)),
        );
    }

    fn jumps(&self, t: f64, out: &mut Vec<f64>) {
        out.extend(
            self.phase_at(t)
                .fronts
                .iter()
                .filter(|f| f.kind != FrontKind::ShadowWave)
                .map(|f| f.path.position(t)),
        );
    }

    fn event_times(&self, out: &mut Vec<f64>) {
        out.extend(self.phases.iter().skip(1).map(|p| p.start));
    }
}

/// A shadow-wave family at fixed mollification width `eps`: the regular
/// field outside an `eps`-strip around each shadow front, and
/// `(σ / eps, ξ')` inside it.
#[derive(Debug, Clone, Copy)]
pub struct EpsFamily<'a, S: ShadowSource + ?Sized = WavePlan> {
    pub source: &'a S,
    pub eps: f64,
}

impl<'a, S: ShadowSource + ?Sized> EpsFamily<'a, S> {
    pub fn new(source: &'a S, eps: f64) -> Result<Self> {
        if !(eps > 0.0) {
            return Err(Error::Domain("mollification width must be positive"));
        }
        Ok(Self { source, eps })
    }

    /// Realized `(ρ, u)` at `(r, t)`.
    pub fn field(&self, r: f64, t: f64) -> (f64, f64) {
        let mut fronts = Vec::new();
        self.source.shadow_fronts(t, &mut fronts);
        self.field_with(r, t, &fronts)
    }

    /// Same as [`field`](Self::field) with the fronts at `t` supplied by the caller.
    pub fn field_with(&self, r: f64, t: f64, fronts: &[FrontState]) -> (f64, f64) {
        let half = 0.5 * self.eps;
        for f in fronts {
            if (r - f.xi).abs() < half {
                return (f.sigma / self.eps, f.speed);
            }
        }
        self.source.regular(r, t)
    }
}
