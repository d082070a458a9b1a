use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

use approx::assert_abs_diff_eq;
use laminar::analysis::{
    certify_nonexistence, line_integral, reconstruct_pressure, richardson, solve_flow, CaseLabel, RegionSpec, Verdict,
};
use laminar::ode::quadratic_defect;
use laminar::{Chart, ChartPoint, FlowError, FlowParameters, QuadraticProfile, ZeroProfile};

#[test]
fn certificate_examples() {
    let c = certify_nonexistence(&Chart::sphere(1.0).unwrap(), &FlowParameters::new(1.0, 0.0, FRAC_PI_2, 0.0, 1.0, 3.0))
        .unwrap();
    assert_eq!(c.case_label, CaseLabel::SphereCase2);
    assert_abs_diff_eq!(c.witness.value, 6.0, epsilon = 1e-12);
    assert_eq!(c.verdict, Verdict::NonExistence);

    let c = certify_nonexistence(
        &Chart::hyperbolic_cartesian(1.0).unwrap(),
        &FlowParameters::new(1.0, 0.0, 0.0, 0.0, 1.0, 2.0),
    )
    .unwrap();
    assert_eq!(c.case_label, CaseLabel::HyperbolicEdge);
    assert_eq!(c.witness.name, "F'(0)");
    assert_abs_diff_eq!(c.witness.value, -4.0, epsilon = 1e-14);
    assert_eq!(c.witness.location, 0.0);

    let c = certify_nonexistence(&Chart::hyperbolic_polar(1.0).unwrap(), &FlowParameters::new(1.0, 0.0, 0.5, 0.0, 1.0, 1.0))
        .unwrap();
    assert_eq!(c.case_label, CaseLabel::HyperbolicDisc);
    assert!(c.witness.value < 0.0);
    assert_eq!(c.verdict, Verdict::NonExistence);
}

#[test]
fn case_three_variants() {
    let a = 1.0;
    let delta = 0.7 * PI;
    let c = certify_nonexistence(&Chart::sphere(a).unwrap(), &FlowParameters::new(1.0, 0.0, delta, 0.0, 1.0, 1.0)).unwrap();
    assert_eq!(c.case_label, CaseLabel::SphereCase3a);
    assert_eq!(c.verdict, Verdict::NonExistence);
    let ext = c.extension.expect("case 3 reports the extension run");
    assert!(ext.reached > delta);

    let balanced = 0.5 * (PI - delta);
    let c = certify_nonexistence(&Chart::sphere(a).unwrap(), &FlowParameters::new(1.0, 0.0, delta, 0.0, balanced, 1.0))
        .unwrap();
    assert_eq!(c.case_label, CaseLabel::SphereCase3b);
    assert_eq!(c.verdict, Verdict::NonExistence);
    assert!(c.witness.value > 0.0);
}

#[test]
fn certificate_preconditions() {
    let s = Chart::sphere(1.0).unwrap();
    for (a0, a1, a2) in [(0.0, 0.0, 1.0), (0.0, 1.0, 0.0), (0.0, -1.0, 1.0), (0.5, 1.0, 1.0)] {
        let r = certify_nonexistence(&s, &FlowParameters::new(1.0, 0.0, FRAC_PI_4, a0, a1, a2));
        assert!(matches!(r, Err(FlowError::Precondition(_))), "{a0} {a1} {a2}");
    }
    let e = Chart::hyperbolic_cartesian(1.0).unwrap();
    assert!(certify_nonexistence(&e, &FlowParameters::new(1.0, 0.0, 0.3, 0.0, 1.0, 1.0)).is_err());
}

#[test]
fn richardson_recovers_polynomial_limits() {
    // f(ε) = 2 + 3ε + ε² sampled at ε = 2^-k.
    let samples: Vec<f64> = (6..=12).map(|k| {
        let e = 2f64.powi(-k);
        2.0 + 3.0 * e + e * e
    })
    .collect();
    let (v, err) = richardson(&samples);
    assert_abs_diff_eq!(v, 2.0, epsilon = 1e-13);
    assert!(err < 1e-10);
}

#[test]
fn zero_data_gives_zero_flow() {
    for (chart, delta) in [
        (Chart::sphere(1.0).unwrap(), 0.5),
        (Chart::hyperbolic_polar(1.0).unwrap(), 0.5),
        (Chart::hyperbolic_cartesian(1.0).unwrap(), 0.0),
    ] {
        let params = FlowParameters::new(1.0, 2.0, delta, 0.0, 0.0, 0.0);
        let (sol, rep) = solve_flow(&chart, &params, &RegionSpec::new(delta, 1.0, Some(1.0)), 1e-10).unwrap();
        assert_eq!(rep.max_abs_defect, 0.0);
        assert_eq!(rep.pressure_closure_error, 0.0);
        for &t in &rep.grid {
            assert_eq!(sol.eval(t).unwrap().y, 0.0);
        }
    }
}

#[test]
fn sphere_flow_reproduces_initial_data_and_is_beta_independent() {
    let chart = Chart::sphere(1.0).unwrap();
    let region = RegionSpec::new(FRAC_PI_4, 1.0, None);
    let p0 = FlowParameters::new(1.0, 0.0, FRAC_PI_4, 0.0, 1.0, 1.0);
    let p5 = FlowParameters { beta: 5.0, ..p0 };
    let (s0, r0) = solve_flow(&chart, &p0, &region, 1e-10).unwrap();
    let (s5, _) = solve_flow(&chart, &p5, &region, 1e-10).unwrap();
    let j = s0.eval(FRAC_PI_4).unwrap();
    assert_eq!((j.y, j.dy, j.d2y), (0.0, 1.0, -1.0));
    for &t in &r0.grid {
        assert_eq!(s0.eval(t).unwrap().y.to_bits(), s5.eval(t).unwrap().y.to_bits());
    }
    assert_abs_diff_eq!(s0.t_end(), PI - 1e-3, epsilon = 1e-15);
    assert!(r0.max_abs_defect <= 100.0 * 1e-10 * r0.defect_scale);
    assert!(r0.pressure_closure_error <= 1e-6);
}

#[test]
fn region_and_parameter_errors() {
    let chart = Chart::sphere(1.0).unwrap();
    let params = FlowParameters::new(1.0, 0.0, 1.0, 0.0, 1.0, 1.0);
    let bad = [
        RegionSpec::new(1.0, 7.0, None),
        RegionSpec::new(1.0, 1.0, Some(-0.5)),
        RegionSpec::new(1.0, 1.0, Some(3.0)),
        RegionSpec::new(0.9, 1.0, None),
    ];
    for region in bad {
        assert!(solve_flow(&chart, &params, &region, 1e-10).is_err(), "{region:?}");
    }
    assert!(solve_flow(&chart, &params, &RegionSpec::new(1.0, 1.0, None), 1.0).is_err());
    let edge = Chart::hyperbolic_cartesian(1.0).unwrap();
    assert!(solve_flow(&edge, &params, &RegionSpec::new(1.0, 1.0, None), 1e-10).is_err());
}

#[test]
fn zero_profile_has_constant_pressure() {
    let chart = Chart::sphere(1.0).unwrap();
    let params = FlowParameters::new(1.0, 0.0, 0.5, 0.0, 1.0, 1.0);
    let region = RegionSpec::new(0.5, 2.0, Some(1.0));
    let path = [ChartPoint::new(0.6, 0.1), ChartPoint::new(1.2, 0.5), ChartPoint::new(0.8, 1.9)];
    let rec = reconstruct_pressure(&chart, &params, &ZeroProfile, &region, &path).unwrap();
    assert!(rec.samples.iter().all(|&p| p == 0.0));
    assert_eq!(rec.closure_error, 0.0);
}

#[test]
fn path_leaving_the_region_is_rejected() {
    let chart = Chart::sphere(1.0).unwrap();
    let params = FlowParameters::new(1.0, 0.0, 0.5, 0.0, 1.0, 1.0);
    let region = RegionSpec::new(0.5, 1.0, Some(1.0));
    for q in [ChartPoint::new(0.4, 0.5), ChartPoint::new(1.0, 1.5), ChartPoint::new(1.6, 0.5)] {
        let r = reconstruct_pressure(&chart, &params, &ZeroProfile, &region, &[ChartPoint::new(0.7, 0.2), q]);
        assert!(matches!(r, Err(FlowError::Domain { .. })), "{q:?}");
    }
}

#[test]
fn quadratic_profile_pressure_depends_on_path() {
    let chart = Chart::sphere(1.0).unwrap();
    let params = FlowParameters::new(0.5, 1.0, FRAC_PI_4, 0.0, 1.0, 1.0);
    let region = RegionSpec::new(FRAC_PI_4, 2.0, Some(1.5));
    let q = QuadraticProfile::from_params(&params);
    let (p, r) = (ChartPoint::new(0.9, 0.2), ChartPoint::new(1.5, 1.4));
    let rec = reconstruct_pressure(&chart, &params, &q, &region, &[p, r]).unwrap();
    assert!(rec.closure_error > 10.0 * rec.quadrature_error);
    // Radial leg at θ = 0.2 then angular leg at r = 1.5, against the reverse
    // order: the difference is the curl integrated over the rectangle.
    let f = quadratic_defect(&chart, &params);
    let mut integral = 0.0;
    let n = 4000;
    for i in 0..n {
        let t = 0.9 + 0.6 * (i as f64 + 0.5) / n as f64;
        integral += f.at(t) * 0.6 / n as f64;
    }
    let expected = -(1.4 - 0.2) * params.nu * integral;
    assert_abs_diff_eq!(rec.path_values[1] - rec.path_values[2], expected, epsilon = 1e-6 * expected.abs());
    let seg = line_integral(&chart, &params, &q, p, r).unwrap();
    assert!(seg.error < 1e-10);
}

#[test]
fn hyperbolic_flows() {
    for (chart, delta) in [(Chart::hyperbolic_polar(2.0).unwrap(), 0.1), (Chart::hyperbolic_cartesian(0.5).unwrap(), 0.0)] {
        let params = FlowParameters::new(0.3, 7.0, delta, 0.2, 1.5, 0.7);
        let region = RegionSpec::new(delta, 1.0, None);
        let (sol, rep) = solve_flow(&chart, &params, &region, 1e-10).unwrap();
        assert_abs_diff_eq!(sol.t_end(), delta + 10.0 / chart.a, epsilon = 1e-12);
        assert!(rep.max_relative_defect <= 1e-10);
        assert!(rep.cross_solver_deviation <= 1e-8);
        assert!(rep.pressure_closure_error <= 1e-6);
    }
}
