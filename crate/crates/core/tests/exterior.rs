use std::f64::consts::PI;

use approx::assert_abs_diff_eq;
use laminar::exterior::oracle::{self, Sheared};
use laminar::exterior::{
    convection_oneform, divergence, hodge_laplacian_oneform, momentum_oneform, viscous_oneform, vorticity_defect,
};
use laminar::ode::{build_ode, quadratic_defect};
use laminar::profile::FnProfile;
use laminar::{Chart, ChartKind, ChartPoint, FlowParameters, Jet, QuadraticProfile, RotationConvention};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn charts() -> [Chart<f64>; 3] {
    [Chart::sphere(1.2).unwrap(), Chart::hyperbolic_polar(0.9).unwrap(), Chart::hyperbolic_cartesian(0.6).unwrap()]
}

fn interior(chart: &Chart<f64>, u: f64) -> f64 {
    match chart.kind {
        ChartKind::SpherePolar => (0.1 + 0.8 * u) * PI / chart.a,
        ChartKind::HyperbolicPolar => (0.1 + 2.5 * u) / chart.a,
        ChartKind::HyperbolicCartesian => (u - 0.5) * 3.0 / chart.a,
    }
}

// Y = e^{0.4t} cos(t) + 0.2
fn wave() -> FnProfile<impl Fn(f64) -> Jet<f64> + Sync> {
    FnProfile(|t: f64| {
        let (e, c, s) = ((0.4 * t).exp(), t.cos(), t.sin());
        Jet::new(
            e * c + 0.2,
            e * (0.4 * c - s),
            e * (-0.84 * c - 0.8 * s),
            e * (-1.136 * c + 0.52 * s),
        )
    })
}

#[test]
fn wave_profile_jet_is_consistent() {
    let p = wave();
    let h = 1e-5;
    for t in [0.3, 1.1, 2.0] {
        let j = laminar::Profile::jet(&p, t).unwrap();
        let jp = laminar::Profile::jet(&p, t + h).unwrap();
        let jm = laminar::Profile::jet(&p, t - h).unwrap();
        assert_abs_diff_eq!((jp.y - jm.y) / (2.0 * h), j.dy, epsilon = 1e-8);
        assert_abs_diff_eq!((jp.dy - jm.dy) / (2.0 * h), j.d2y, epsilon = 1e-8);
        assert_abs_diff_eq!((jp.d2y - jm.d2y) / (2.0 * h), j.d3y, epsilon = 1e-8);
    }
}

#[test]
fn closed_forms_match_native_oracle() {
    let prof = wave();
    let h = 1e-4;
    for chart in charts() {
        let form = oracle::velocity_form_field(&chart, &prof);
        let vec = oracle::velocity_vector_field(&chart, &prof);
        for i in 0..9 {
            let c1 = interior(&chart, i as f64 / 8.0);
            let p = ChartPoint::new(c1, 0.25);
            let x = [c1, 0.25];
            let lap = hodge_laplacian_oneform(&chart, &prof, p).unwrap();
            let fd = oracle::hodge_laplacian(&chart, &form, x, h);
            let scale = 1.0 + lap.b.abs();
            assert_abs_diff_eq!(lap.a, fd[0], epsilon = 1e-5 * scale);
            assert_abs_diff_eq!(lap.b, fd[1], epsilon = 1e-5 * scale);
            let conv = convection_oneform(&chart, &prof, p).unwrap();
            let fd = oracle::convection(&chart, &vec, x, h);
            assert_abs_diff_eq!(conv.a, fd[0], epsilon = 1e-6 * (1.0 + conv.a.abs()));
            assert_abs_diff_eq!(conv.b, fd[1], epsilon = 1e-6);
            let div = oracle::codifferential(&chart, &form, x, h);
            assert!(div.abs() <= 1e-6, "{div}");
            assert_eq!(divergence(&chart, &prof, p).unwrap(), 0.0);
        }
    }
}

#[test]
fn divergence_oracle_vanishes_in_sheared_coordinates() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    let prof = wave();
    for chart in charts() {
        let sh = Sheared::new(chart, 0.3);
        let form = oracle::velocity_form_field(&chart, &prof);
        let form_sh = |x: [f64; 2]| sh.form(form(sh.to_inner(x)));
        for _ in 0..50 {
            let c1 = interior(&chart, rng.gen_range(0.0..1.0));
            let x = sh.from_inner([c1, rng.gen_range(-1.0..1.0)]);
            let div = oracle::codifferential(&sh, &form_sh, x, 1e-4);
            assert!(div.abs() <= 1e-6, "{:?} {div}", chart.kind);
        }
    }
}

/// dα of the momentum form, by differences, equals the closed-form vorticity defect.
#[test]
fn curl_of_momentum_matches_defect() {
    let prof = wave();
    for chart in charts() {
        for rotation in [RotationConvention::Weighted, RotationConvention::Hodge] {
            let params = FlowParameters::new(0.7, 1.5, 0.0, 0.0, 1.0, 1.0).with_rotation(rotation);
            let alpha = |x: [f64; 2]| {
                let m = momentum_oneform(&chart, &params, &prof, ChartPoint::new(x[0], x[1])).unwrap();
                [m.a, m.b]
            };
            for i in 0..5 {
                let c1 = interior(&chart, 0.1 + 0.2 * i as f64);
                let d = vorticity_defect(&chart, &params, &prof, ChartPoint::new(c1, 0.4)).unwrap();
                let fd = oracle::exterior_derivative(&alpha, [c1, 0.4], 1e-4);
                assert_abs_diff_eq!(d, fd, epsilon = 1e-6 * (1.0 + d.abs()));
            }
        }
    }
}

#[test]
fn defect_is_the_ode_residual() {
    let prof = wave();
    for chart in charts() {
        let params = FlowParameters::new(1.7, 0.0, 0.0, 0.0, 1.0, 1.0);
        let system = build_ode(&chart);
        for i in 0..9 {
            let c1 = interior(&chart, i as f64 / 8.0);
            let j = laminar::Profile::jet(&prof, c1).unwrap();
            let d = vorticity_defect(&chart, &params, &prof, ChartPoint::new(c1, 0.0)).unwrap();
            let r = params.nu * system.residual(c1, &j);
            assert_abs_diff_eq!(d, r, epsilon = 1e-12 * (1.0 + params.nu * system.residual_scale(c1, &j)));
        }
    }
}

#[test]
fn quadratic_defect_matches_closed_form_curl() {
    let mut rng = ChaCha8Rng::seed_from_u64(22);
    for _ in 0..100 {
        for chart in charts() {
            let delta = match chart.kind {
                ChartKind::SpherePolar => rng.gen_range(0.05..0.6) * PI / chart.a,
                ChartKind::HyperbolicPolar => rng.gen_range(0.05..1.5) / chart.a,
                ChartKind::HyperbolicCartesian => 0.0,
            };
            let params = FlowParameters::new(
                rng.gen_range(0.1..3.0),
                rng.gen_range(0.0..3.0),
                delta,
                rng.gen_range(-1.0..1.0),
                rng.gen_range(0.1..3.0),
                rng.gen_range(0.1..3.0),
            );
            let q = QuadraticProfile::from_params(&params);
            let f = quadratic_defect(&chart, &params);
            let c1 = if chart.kind.is_polar() { delta + rng.gen_range(0.0..0.3) / chart.a } else { rng.gen_range(-1.0..1.0) };
            let d = vorticity_defect(&chart, &params, &q, ChartPoint::new(c1, 0.0)).unwrap();
            let scale = f.terms(&c1).iter().map(|t| t.abs()).sum::<f64>();
            assert_abs_diff_eq!(d / params.nu, f.at(c1), epsilon = 1e-12 * (1.0 + scale));
        }
    }
}

proptest! {
    #[test]
    fn viscous_part_is_linear_in_nu(nu1 in 0.01f64..10.0, nu2 in 0.01f64..10.0, u in 0.0f64..1.0, k in 0usize..3) {
        let chart = charts()[k];
        let prof = wave();
        let p = ChartPoint::new(interior(&chart, u), 0.1);
        let v1 = viscous_oneform(&chart, &FlowParameters::new(nu1, 0.0, 0.0, 0.0, 1.0, 1.0), &prof, p).unwrap();
        let v2 = viscous_oneform(&chart, &FlowParameters::new(nu2, 0.0, 0.0, 0.0, 1.0, 1.0), &prof, p).unwrap();
        let unit = viscous_oneform(&chart, &FlowParameters::new(1.0, 0.0, 0.0, 0.0, 1.0, 1.0), &prof, p).unwrap();
        prop_assert!((v1.b * nu2 - v2.b * nu1).abs() <= 1e-12 * (v1.b.abs() * nu2 + 1e-300));
        prop_assert!((v1.b - nu1 * unit.b).abs() <= 1e-13 * (1.0 + v1.b.abs()));
        prop_assert_eq!(v1.a, 0.0);
    }

    #[test]
    fn operators_do_not_depend_on_c2(u in 0.0f64..1.0, c2a in -3.0f64..3.0, c2b in -3.0f64..3.0, k in 0usize..3) {
        let chart = charts()[k];
        let prof = wave();
        let params = FlowParameters::new(0.8, 1.1, 0.0, 0.0, 1.0, 1.0);
        let c1 = interior(&chart, u);
        let m1 = momentum_oneform(&chart, &params, &prof, ChartPoint::new(c1, c2a)).unwrap();
        let m2 = momentum_oneform(&chart, &params, &prof, ChartPoint::new(c1, c2b)).unwrap();
        prop_assert_eq!(m1, m2);
        let d1 = vorticity_defect(&chart, &params, &prof, ChartPoint::new(c1, c2a)).unwrap();
        let d2 = vorticity_defect(&chart, &params, &prof, ChartPoint::new(c1, c2b)).unwrap();
        prop_assert_eq!(d1, d2);
    }
}
