//! Mass and momentum budgets of a plan on `[0, r_max]`.

use crate::domain::{ConservedPair, FrontKind, RegionProfile};
use crate::error::{Error, Result};
use crate::plan::WavePlan;

/// Total mass `Q(t)` and momentum `M(t)` in the ball of radius `r_max`.
///
/// Both budgets include the origin point mass (and the momentum it
/// swallowed), the regular field, the front atoms
/// `|S^(n-1)| ξ^(n-1) σ (1, ξ')`, and what has left through `r = r_max`
/// since `t = 0`. The ball must contain every front at `t`.
pub fn conserved(plan: &WavePlan, t: f64, r_max: f64) -> Result<ConservedPair> {
    if !(t >= 0.0) {
        return Err(Error::Domain("time must be nonnegative"));
    }
    if t > plan.horizon {
        return Err(Error::OutOfRange {
            t,
            horizon: plan.horizon,
        });
    }
    let area = plan.data.area();
    let phase = plan.phase_at(t);
    if !(r_max > plan.data.radius) || phase.fronts.iter().any(|f| f.path.position(t) >= r_max) {
        return Err(Error::Precondition("truncation radius must enclose every front"));
    }

    let mut mass = plan.origin_mass(t);
    let mut momentum = plan.origin_momentum(t);

    let mut lo = 0.0;
    for (i, region) in phase.regions.iter().enumerate() {
        let hi = phase.fronts.get(i).map_or(r_max, |f| f.path.position(t).max(lo));
        if let RegionProfile::PowerLaw { coeff, velocity } = *region {
            let m = area * coeff * (hi - lo);
            mass += m;
            momentum += m * velocity;
        }
        lo = hi;
    }

    for f in phase.fronts.iter().filter(|f| f.kind == FrontKind::ShadowWave) {
        let m = area * f.mass.weighted(t);
        mass += m;
        momentum += m * f.path.speed(t);
    }

    // the outermost state is the undisturbed right state at r_max
    if let Some(RegionProfile::PowerLaw { coeff, velocity }) = phase.regions.last().copied() {
        let flux = area * coeff * velocity * t;
        mass += flux;
        momentum += flux * velocity;
    }
    Ok(ConservedPair { mass, momentum })
}

pub fn total_mass(plan: &WavePlan, t: f64, r_max: f64) -> Result<f64> {
    conserved(plan, t, r_max).map(|c| c.mass)
}

pub fn total_momentum(plan: &WavePlan, t: f64, r_max: f64) -> Result<f64> {
    conserved(plan, t, r_max).map(|c| c.momentum)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::domain::PseudoRiemannData;
    use crate::riemann::solve;
    use core::f64::consts::PI;

    fn drift(d: PseudoRiemannData, r_max: f64, t_max: f64) -> (f64, f64) {
        let plan = solve(&d, t_max).unwrap();
        let c0 = conserved(&plan, 0.0, r_max).unwrap();
        let mut worst = (0.0f64, 0.0f64);
        for k in 0..=120 {
            let t = t_max * f64::from(k) / 120.0;
            let c = conserved(&plan, t, r_max).unwrap();
            worst.0 = worst.0.max((c.mass - c0.mass).abs() / c0.mass);
            worst.1 = worst
                .1
                .max((c.momentum - c0.momentum).abs() / c0.momentum.abs().max(1.0));
        }
        worst
    }

    #[test]
    fn worked_example_conserves_across_events() {
        let d = PseudoRiemannData::new(2, 1.0, 1.0, 1.0, 1.0, -1.0).unwrap();
        let plan = solve(&d, 6.0).unwrap();
        let q0 = total_mass(&plan, 0.0, 3.0).unwrap();
        assert!((q0 - 6.0 * PI).abs() < 1e-12);
        let (dm, dp) = drift(d, 3.0, 6.0);
        assert!(dm < 1e-12 && dp < 1e-12, "{dm} {dp}");
    }

    #[test]
    fn vacuum_fan_conserves() {
        let d = PseudoRiemannData::new(2, 1.0, 1.0, -1.0, 1.0, 1.0).unwrap();
        let plan = solve(&d, 0.9).unwrap();
        for k in 0..10 {
            let t = 0.09 * f64::from(k);
            // right state leaves through r = 3 at rate 2π
            let inside = total_mass(&plan, t, 3.0).unwrap();
            assert!((inside - 6.0 * PI).abs() < 1e-12);
        }
        let (dm, dp) = drift(d, 5.0, 2.5);
        assert!(dm < 1e-12 && dp < 1e-12);
    }

    #[test]
    fn other_cases_conserve() {
        for d in [
            PseudoRiemannData::new(3, 1.0, 2.0, 0.5, 0.5, -0.4).unwrap(),
            PseudoRiemannData::new(3, 2.0, 0.5, -0.5, 2.0, -1.0).unwrap(),
            PseudoRiemannData::new(2, 1.0, 1.0, 0.3, 2.0, 0.3).unwrap(),
            PseudoRiemannData::new(4, 1.0, 0.0, 0.0, 2.0, -0.7).unwrap(),
            PseudoRiemannData::new(2, 1.0, 1.5, -0.5, 0.0, 0.0).unwrap(),
        ] {
            let (dm, dp) = drift(d, 30.0, 12.0);
            assert!(dm < 1e-12 && dp < 1e-12, "{d:?}: {dm} {dp}");
        }
    }

    #[test]
    fn front_outside_ball_is_rejected() {
        let d = PseudoRiemannData::new(2, 1.0, 1.0, 1.0, 1.0, -1.0).unwrap();
        let plan = solve(&d, 6.0).unwrap();
        assert!(conserved(&plan, 0.5, 0.9).is_err());
    }
}
