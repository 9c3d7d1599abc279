use approx::assert_relative_eq;
use proptest::prelude::*;

use radial_sw::front_ode::{integrate_front, FrontIvp, DEFAULT_TOL};
use radial_sw::riemann::{first_root_speed, second_root_speed};
use radial_sw::verify::{conserved, entropy_lhs, entropy_lhs_kappa, is_overcompressive, second_root_excluded};
use radial_sw::{classify, jump_brackets, solve, CaseKind, PseudoRiemannData, RegionProfile};

fn delta_shock() -> impl Strategy<Value = PseudoRiemannData> {
    (1u32..=4, 0.5..2.0, 0.1..3.0, 0.1..3.0, -2.0..2.0, 0.05..3.0)
        .prop_map(|(n, r, rl, rr, ur, gap)| PseudoRiemannData::new(n, r, rl, ur + gap, rr, ur).unwrap())
}

fn any_data() -> impl Strategy<Value = PseudoRiemannData> {
    let rho = prop_oneof![Just(0.0), 0.1..3.0];
    (
        1u32..=4,
        0.5..2.0,
        rho.clone(),
        -2.0..2.0,
        rho,
        -2.0..2.0,
        any::<bool>(),
    )
        .prop_map(|(n, r, rl, ul, rr, ur, contact)| {
            let ur = if contact { ul } else { ur };
            PseudoRiemannData::new(n, r, rl, ul, rr, ur).unwrap()
        })
}

proptest! {
    #[test]
    fn entropy_forms_agree(
        rho0 in 0.0..5.0, u0 in -3.0..3.0, rho1 in 0.0..5.0, u1 in -3.0..3.0, c in -4.0..4.0,
    ) {
        let a = entropy_lhs(rho0, u0, rho1, u1, c);
        let b = entropy_lhs_kappa(rho0, u0, rho1, u1, c);
        prop_assert!((a - b).abs() <= 1e-12 * (1.0 + a.abs()));
    }

    #[test]
    fn first_root_is_dissipative_and_overcompressive(d in delta_shock()) {
        let v1 = first_root_speed(d.rho_l, d.u_l, d.rho_r, d.u_r).unwrap();
        prop_assert!(entropy_lhs(d.rho_l, d.u_l, d.rho_r, d.u_r, v1) <= 1e-12);
        prop_assert!(is_overcompressive(d.u_l, v1, d.u_r));
    }

    #[test]
    fn second_root_lies_outside_velocity_interval(
        rho0 in 0.1..5.0, u0 in -3.0..3.0, rho1 in 0.1..5.0, u1 in -3.0..3.0,
    ) {
        prop_assume!(rho0 != rho1 && u0 != u1);
        let v2 = second_root_speed(rho0, u0, rho1, u1).unwrap();
        let brute = v2 < u0.min(u1) || v2 > u0.max(u1);
        prop_assert_eq!(second_root_excluded(rho0, u0, rho1, u1), Ok(brute));
        prop_assert!(brute);
    }

    /// At the second root the front gains negative mass; the entropy
    /// expression factors as `κ1 (v - u0)(v - u1)`.
    #[test]
    fn second_root_has_negative_mass_rate(d in delta_shock()) {
        prop_assume!(d.rho_l != d.rho_r);
        let v2 = second_root_speed(d.rho_l, d.u_l, d.rho_r, d.u_r).unwrap();
        let (d_rho, d_m, _, _) = jump_brackets(d.rho_l, d.u_l, d.rho_r, d.u_r);
        let k1 = v2 * d_rho - d_m;
        let expected = -(d.rho_l * d.rho_r).sqrt() * (d.u_l - d.u_r);
        prop_assert!((k1 - expected).abs() <= 1e-9 * (1.0 + v2.abs()) * (1.0 + d_rho.abs()));
        let e = entropy_lhs(d.rho_l, d.u_l, d.rho_r, d.u_r, v2);
        let f = k1 * (v2 - d.u_l) * (v2 - d.u_r);
        prop_assert!((e - f).abs() <= 1e-9 * (1.0 + e.abs()));
    }

    #[test]
    fn plans_conserve_mass_and_momentum(d in any_data(), frac in 0.0..1.0) {
        let probe = solve(&d, 1e6).unwrap();
        let ev = probe.events;
        let last = [ev.vacuum_close, ev.t_in, ev.t_sw0, ev.origin_left]
            .into_iter().flatten().fold(d.radius, f64::max);
        let t_end = 1.5 * last;
        let plan = solve(&d, t_end).unwrap();
        let r_max = 2.0 * d.radius + (d.u_l.abs() + d.u_r.abs() + 1.0) * t_end;
        let c0 = conserved(&plan, 0.0, r_max).unwrap();
        let c = conserved(&plan, frac * t_end, r_max).unwrap();
        prop_assert!((c.mass - c0.mass).abs() <= 1e-10 * c0.mass.max(f64::MIN_POSITIVE));
        prop_assert!((c.momentum - c0.momentum).abs() <= 1e-10 * c0.momentum.abs().max(1.0));
    }

    #[test]
    fn power_law_regions_sample_exactly(d in any_data(), r in 0.05..6.0, t in 0.0..3.0) {
        let plan = solve(&d, 3.0).unwrap();
        let s = plan.evaluate(r, t).unwrap();
        prop_assert!(s.rho >= 0.0);
        if s.is_vacuum {
            prop_assert_eq!(s.rho, 0.0);
        }
        let untouched = r > d.radius + (d.u_l.abs() + d.u_r.abs() + 1.0) * t;
        if untouched {
            prop_assert_eq!(s.rho, d.right().density(r, d.n));
        }
    }

    #[test]
    fn every_datum_has_one_case(d in any_data()) {
        let tag = classify(&d);
        let expected = match (d.rho_l > 0.0, d.rho_r > 0.0) {
            (false, false) => CaseKind::AllVacuum,
            (false, true) => CaseKind::VacuumLeftShock,
            (true, false) => CaseKind::VacuumRightShock,
            (true, true) if d.u_l < d.u_r => CaseKind::VacuumFan,
            (true, true) if d.u_l == d.u_r => CaseKind::Contact,
            _ => CaseKind::DeltaShock,
        };
        prop_assert_eq!(tag.kind, expected);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn integrated_speed_stays_at_first_root(d in delta_shock()) {
        let v0 = first_root_speed(d.rho_l, d.u_l, d.rho_r, d.u_r).unwrap();
        let mut t_end: f64 = 10.0;
        if let Some(t_in) = radial_sw::riemann::absorption_time(&d).unwrap() {
            t_end = t_end.min(t_in);
        }
        if v0 < 0.0 {
            t_end = t_end.min(-d.radius / v0);
        }
        let ivp = FrontIvp { t0: 0.0, xi0: d.radius, speed0: 0.0, sigma0: 0.0, outer: d, n: d.n };
        let tr = integrate_front(&ivp, 0.999 * t_end, DEFAULT_TOL).unwrap();
        for s in &tr.samples {
            prop_assert!((s.speed - v0).abs() <= 1e-6);
        }
    }
}

#[test]
fn untouched_right_state_is_a_power_law() {
    let d = PseudoRiemannData::new(3, 1.0, 2.0, 0.5, 1.5, -0.25).unwrap();
    let plan = solve(&d, 2.0).unwrap();
    let s = plan.evaluate(4.0, 1.0).unwrap();
    assert_eq!(
        d.right(),
        RegionProfile::PowerLaw {
            coeff: 1.5,
            velocity: -0.25
        }
    );
    assert_relative_eq!(s.rho, 1.5 / 16.0, max_relative = 1e-15);
    assert_eq!(s.u, -0.25);
}
