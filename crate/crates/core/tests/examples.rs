//! Worked values for the front equations and the non-entropic front.

use radial_sw::front_ode::{nonentropic_example, NonEntropicExample};
use radial_sw::riemann::{origin_hit_time, post_absorption};
use radial_sw::verify::entropy_lhs;
use radial_sw::{solve, surface_area, PseudoRiemannData};

#[test]
fn nonentropic_values_at_one() {
    let s = nonentropic_example(1.0);
    assert!((s.u_l + 0.235702).abs() < 1e-6);
    assert!((s.speed - 0.530330).abs() < 1e-6);
    // closed form (t+2)² sqrt(t+1) / (2 (t + sqrt(t+1)) (t²+4t+8)) at t = 1
    let exact = 9.0 * 2f64.sqrt() / (2.0 * (1.0 + 2f64.sqrt()) * 13.0);
    assert!((s.rho_l - exact).abs() < 1e-15);
    assert!((s.rho_l - 0.2027722284).abs() < 1e-9);
}

#[test]
fn nonentropic_lhs_at_one_is_positive() {
    let s = nonentropic_example(1.0);
    let e = entropy_lhs(s.rho_l, s.u_l, 1.0 / s.xi, 0.0, s.speed);
    assert!((e - 0.0038).abs() < 1e-4, "{e}");
}

#[test]
fn nonentropic_physicality() {
    let mut prev = f64::NEG_INFINITY;
    for k in 1..=500 {
        let t = 0.01 * f64::from(k);
        let s = nonentropic_example(t);
        assert!(s.sigma > 0.0 && s.rho_l >= 0.0);
        assert!(s.u_l < 0.0 && s.u_l > prev);
        // not overcompressive: the inner gas is slower than the front
        assert!(s.u_l < s.speed);
        prev = s.u_l;
    }
    assert!(NonEntropicExample::acceleration(1.0) < 0.0);
}

#[test]
fn worked_example_events() {
    let d = PseudoRiemannData::new(2, 1.0, 1.0, 1.0, 1.0, -1.0).unwrap();
    assert_eq!(origin_hit_time(&d).unwrap(), Some(4.0));
    let post = post_absorption(&d).unwrap();
    assert!((post.position(2.0) - (-2.0 + 2.0 * 2f64.sqrt())).abs() < 1e-15);
    let plan = solve(&d, 6.0).unwrap();
    assert!((plan.origin_mass(5.0) - 10.0 * std::f64::consts::PI).abs() < 1e-12);
}

#[test]
fn surface_areas() {
    let pi = std::f64::consts::PI;
    assert_eq!(surface_area(1).unwrap(), 2.0);
    assert_eq!(surface_area(2).unwrap(), 2.0 * pi);
    assert!((surface_area(3).unwrap() - 4.0 * pi).abs() < 1e-15);
    assert!((surface_area(4).unwrap() - 2.0 * pi * pi).abs() < 1e-14);
    assert!(surface_area(0).is_err());
}
