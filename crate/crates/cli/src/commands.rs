use std::f64::consts::{FRAC_PI_2, PI};

use anyhow::{anyhow, Context, Result};
use laminar::analysis::{certify_nonexistence, flat_limit_consistency, solve_flow, CaseLabel, Certificate, RegionSpec, Verdict};
use laminar::geometry::{frame_at, poincare_project};
use laminar::{Chart, ChartKind, ChartPoint, FlowParameters, Profile, QuadraticProfile, ZeroProfile};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::config::{CertifyArgs, ChartName, ExportArgs, LimitsArgs, ProfileArg, SolveArgs, Suite, VerifyArgs};
use crate::output::{num, write_json, Csv};

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

/// Process exit status of a successful run.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Status {
    Ok,
    Inconclusive,
}

#[derive(Serialize)]
struct ReportJson {
    chart: &'static str,
    a: f64,
    params: FlowParameters<f64>,
    t_end: f64,
    max_abs_defect: f64,
    defect_scale: f64,
    max_relative_defect: f64,
    pressure_closure_error: f64,
    cross_solver_deviation: f64,
    tool_version: &'static str,
}

pub fn solve(args: &SolveArgs) -> Result<Status> {
    args.check()?;
    let (chart, params) = args.flow.build()?;
    let region = args.region.region(&chart, params.delta)?;
    let (sol, report) = solve_flow(&chart, &params, &region, args.tol).context("solve failed")?;
    let mut csv = Csv::create(args.out.as_deref(), &["r", "Y", "dY", "d2Y", "defect"])?;
    for (&t, &d) in report.grid.iter().zip(&report.defect) {
        let j = sol.eval(t)?;
        csv.numbers(&[t, j.y, j.dy, j.d2y, d])?;
    }
    csv.finish()?;
    if let Some(path) = &args.report {
        let json = ReportJson {
            chart: args.flow.chart.label(),
            a: chart.a,
            params,
            t_end: sol.t_end(),
            max_abs_defect: report.max_abs_defect,
            defect_scale: report.defect_scale,
            max_relative_defect: report.max_relative_defect,
            pressure_closure_error: report.pressure_closure_error,
            cross_solver_deviation: report.cross_solver_deviation,
            tool_version: TOOL_VERSION,
        };
        write_json(Some(path), &json)?;
    }
    Ok(Status::Ok)
}

#[derive(Serialize)]
struct WitnessJson {
    name: String,
    value: f64,
    location: f64,
}

#[derive(Serialize)]
struct CertificateJson {
    chart: &'static str,
    a: f64,
    params: FlowParameters<f64>,
    case_label: CaseLabel,
    witness: WitnessJson,
    verdict: Verdict,
    error_estimate: f64,
    tool_version: &'static str,
}

impl CertificateJson {
    fn new(chart: ChartName, cert: Certificate<f64>) -> Self {
        Self {
            chart: chart.label(),
            a: cert.chart.a,
            params: cert.params,
            case_label: cert.case_label,
            witness: WitnessJson { name: cert.witness.name, value: cert.witness.value, location: cert.witness.location },
            verdict: cert.verdict,
            error_estimate: cert.error_estimate,
            tool_version: TOOL_VERSION,
        }
    }
}

fn status_of(verdict: Verdict) -> Status {
    match verdict {
        Verdict::NonExistence => Status::Ok,
        Verdict::Inconclusive => Status::Inconclusive,
    }
}

pub fn certify(args: &CertifyArgs) -> Result<Status> {
    let (chart, params) = args.flow.build()?;
    let cert = certify_nonexistence(&chart, &params).context("certificate failed")?;
    let status = status_of(cert.verdict);
    write_json(args.out.as_deref(), &CertificateJson::new(args.flow.chart, cert))?;
    Ok(status)
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
enum Setting {
    SphereCase1,
    SphereCase2,
    SphereCase3,
    HyperbolicDisc,
    HyperbolicEdge,
}

impl Setting {
    const ALL: [Setting; 5] =
        [Setting::SphereCase1, Setting::SphereCase2, Setting::SphereCase3, Setting::HyperbolicDisc, Setting::HyperbolicEdge];

    fn name(self) -> &'static str {
        match self {
            Setting::SphereCase1 => "sphere-case1",
            Setting::SphereCase2 => "sphere-case2",
            Setting::SphereCase3 => "sphere-case3",
            Setting::HyperbolicDisc => "hyperbolic-disc",
            Setting::HyperbolicEdge => "hyperbolic-edge",
        }
    }
}

fn log_uniform(rng: &mut ChaCha8Rng, lo: f64, hi: f64) -> f64 {
    rng.gen_range(lo.ln()..hi.ln()).exp()
}

struct Draw {
    setting: &'static str,
    index: usize,
    chart: Chart<f64>,
    params: FlowParameters<f64>,
    region: Option<RegionSpec<f64>>,
}

fn nonexistence_draws(seed: u64, draws: usize) -> Result<Vec<Draw>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(5 * draws);
    for setting in Setting::ALL {
        for index in 0..draws {
            let a = log_uniform(&mut rng, 0.1, 10.0);
            let alpha1 = log_uniform(&mut rng, 1e-2, 1e2);
            let alpha2 = log_uniform(&mut rng, 1e-2, 1e2);
            let q = FRAC_PI_2 / a;
            // Every fifth Case 3 draw sits on the balanced line α₁ = (α₂/2)(π/a − δ).
            let (chart, delta, alpha1) = match setting {
                Setting::SphereCase1 => (Chart::sphere(a)?, q * rng.gen_range(0.01..0.99), alpha1),
                Setting::SphereCase2 => (Chart::sphere(a)?, q, alpha1),
                Setting::SphereCase3 => {
                    let delta = q * rng.gen_range(1.01..1.99);
                    let balanced = 0.5 * alpha2 * (PI / a - delta);
                    (Chart::sphere(a)?, delta, if index % 5 == 0 { balanced } else { alpha1 })
                }
                Setting::HyperbolicDisc => (Chart::hyperbolic_polar(a)?, log_uniform(&mut rng, 1e-2, 5.0) / a, alpha1),
                Setting::HyperbolicEdge => (Chart::hyperbolic_cartesian(a)?, 0.0, alpha1),
            };
            let params = FlowParameters::new(1.0, 0.0, delta, 0.0, alpha1, alpha2);
            out.push(Draw { setting: setting.name(), index, chart, params, region: None });
        }
    }
    Ok(out)
}

fn existence_draws(seed: u64, draws: usize) -> Result<Vec<Draw>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(3 * draws);
    for (kind, name) in [
        (ChartKind::SpherePolar, "sphere"),
        (ChartKind::HyperbolicPolar, "hyperbolic-polar"),
        (ChartKind::HyperbolicCartesian, "hyperbolic-edge"),
    ] {
        for index in 0..draws {
            let chart = Chart::new(kind, log_uniform(&mut rng, 0.3, 3.0))?;
            let a = chart.a;
            let delta = match kind {
                ChartKind::SpherePolar => (PI / a) * rng.gen_range(0.05..0.9),
                ChartKind::HyperbolicPolar => rng.gen_range(0.05..2.0) / a,
                ChartKind::HyperbolicCartesian => 0.0,
            };
            let params = FlowParameters::new(
                rng.gen_range(0.1..2.0),
                rng.gen_range(0.0..5.0),
                delta,
                rng.gen_range(0.0..1.0),
                rng.gen_range(0.1..3.0),
                rng.gen_range(0.1..3.0),
            );
            let epsilon0 = if rng.gen_bool(0.5) {
                None
            } else {
                let room = chart.c1_upper().map_or(6.0 / a, |u| 0.99 * (u - delta));
                Some(room * rng.gen_range(0.2..1.0))
            };
            let region = RegionSpec::new(delta, rng.gen_range(0.2..6.0), epsilon0);
            out.push(Draw { setting: name, index, chart, params, region: Some(region) });
        }
    }
    Ok(out)
}

/// Row fields and whether the run met its checks.
type Outcome = (Vec<String>, bool);

fn run_nonexistence(d: &Draw) -> Outcome {
    let p = &d.params;
    let mut row = vec![d.setting.to_string(), d.index.to_string(), num(d.chart.a), num(p.delta), num(p.alpha1), num(p.alpha2)];
    match certify_nonexistence(&d.chart, p) {
        Ok(c) => {
            let ok = c.verdict == Verdict::NonExistence;
            row.extend([
                format!("{:?}", c.case_label),
                c.witness.name.clone(),
                num(c.witness.value),
                num(c.error_estimate),
                format!("{:?}", c.verdict),
            ]);
            (row, ok)
        }
        Err(e) => {
            row.extend([String::new(), String::new(), String::new(), String::new(), format!("error: {e}").replace(',', ";")]);
            (row, false)
        }
    }
}

fn run_existence(d: &Draw, tol: f64) -> Outcome {
    let p = &d.params;
    let region = d.region.expect("existence draws carry a region");
    let mut row = vec![
        d.setting.to_string(),
        d.index.to_string(),
        num(d.chart.a),
        num(p.delta),
        num(p.alpha0),
        num(p.alpha1),
        num(p.alpha2),
    ];
    match solve_flow(&d.chart, p, &region, tol) {
        Ok((_, r)) => {
            let ok = r.max_abs_defect <= 100.0 * tol * r.defect_scale
                && r.cross_solver_deviation <= 1e-8
                && r.pressure_closure_error <= 1e-6;
            row.extend([
                num(r.max_relative_defect),
                num(r.cross_solver_deviation),
                num(r.pressure_closure_error),
                if ok { "pass" } else { "fail" }.to_string(),
            ]);
            (row, ok)
        }
        Err(e) => {
            row.extend([String::new(), String::new(), String::new(), format!("error: {e}").replace(',', ";")]);
            (row, false)
        }
    }
}

pub fn verify(args: &VerifyArgs) -> Result<Status> {
    args.check()?;
    let (draws, header): (Vec<Draw>, &[&str]) = match args.suite {
        Suite::Nonexistence => (
            nonexistence_draws(args.seed, args.draws)?,
            &["setting", "index", "a", "delta", "alpha1", "alpha2", "case_label", "witness_name", "witness", "error_estimate", "verdict"],
        ),
        Suite::Existence => (
            existence_draws(args.seed, args.draws)?,
            &[
                "chart",
                "index",
                "a",
                "delta",
                "alpha0",
                "alpha1",
                "alpha2",
                "max_relative_defect",
                "cross_solver_deviation",
                "pressure_closure_error",
                "status",
            ],
        ),
    };
    let pool = rayon::ThreadPoolBuilder::new().num_threads(args.jobs).build().context("cannot start worker pool")?;
    let tol = args.tol;
    let results: Vec<Outcome> = pool.install(|| {
        draws
            .par_iter()
            .map(|d| match args.suite {
                Suite::Nonexistence => run_nonexistence(d),
                Suite::Existence => run_existence(d, tol),
            })
            .collect()
    });
    let mut csv = Csv::create(args.out.as_deref(), header)?;
    let mut failed = 0;
    for (row, ok) in &results {
        csv.row(row)?;
        if !ok {
            failed += 1;
        }
    }
    csv.finish()?;
    eprintln!("{} of {} runs passed", results.len() - failed, results.len());
    if failed == 0 {
        return Ok(Status::Ok);
    }
    let errors = results.iter().filter(|(row, _)| row.last().is_some_and(|s| s.starts_with("error"))).count();
    match args.suite {
        Suite::Nonexistence if errors == 0 => Ok(Status::Inconclusive),
        _ => Err(anyhow!("{failed} runs failed")),
    }
}

pub fn export_field(args: &ExportArgs) -> Result<Status> {
    args.check()?;
    let (chart, params) = args.flow.build()?;
    let region = args.region.region(&chart, params.delta)?;
    let solved;
    let quadratic = QuadraticProfile::from_params(&params);
    let profile: &dyn Profile<f64> = match args.profile {
        ProfileArg::Solved => {
            solved = solve_flow(&chart, &params, &region, args.tol).context("solve failed")?.0;
            &solved
        }
        ProfileArg::Quadratic => &quadratic,
        ProfileArg::Zero => &ZeroProfile,
    };
    let disc = chart.kind.is_hyperbolic() && !args.no_disc;
    let mut header = vec!["x1", "x2", "x3", "u1", "u2", "u3"];
    if disc {
        header.extend(["p1", "p2"]);
    }
    let mut csv = Csv::create(args.out.as_deref(), &header)?;
    let (lo, hi) = (params.delta, region.radial_end(&chart));
    let grid = |lo: f64, hi: f64, n: usize, i: usize| if i + 1 == n { hi } else { lo + (hi - lo) * i as f64 / (n - 1) as f64 };
    for i in 0..args.n1 {
        let c1 = grid(lo, hi, args.n1, i);
        let y = profile.jet(c1)?.y;
        for j in 0..args.n2 {
            let p = ChartPoint::new(c1, grid(0.0, region.theta_extent, args.n2, j));
            let x = chart.embed(p)?;
            let e2 = frame_at(&chart, p)?.e2;
            let mut row = vec![x.x[0], x.x[1], x.x[2], -y * e2[0], -y * e2[1], -y * e2[2]];
            if disc {
                row.extend(poincare_project(&x));
            }
            csv.numbers(&row)?;
        }
    }
    csv.finish()?;
    Ok(Status::Ok)
}

#[derive(Serialize)]
struct LimitsJson {
    a_values: Vec<f64>,
    r_window: [f64; 2],
    sphere_deviation: Vec<f64>,
    hyperbolic_deviation: Vec<f64>,
    sphere_slope: f64,
    hyperbolic_slope: f64,
    tool_version: &'static str,
}

pub fn limits(args: &LimitsArgs) -> Result<Status> {
    let rep = flat_limit_consistency(&args.a_values, (args.r_min, args.r_max))?;
    let json = LimitsJson {
        a_values: rep.a_values,
        r_window: [args.r_min, args.r_max],
        sphere_deviation: rep.sphere,
        hyperbolic_deviation: rep.hyperbolic,
        sphere_slope: rep.sphere_slope,
        hyperbolic_slope: rep.hyperbolic_slope,
        tool_version: TOOL_VERSION,
    };
    write_json(args.out.as_deref(), &json)?;
    Ok(Status::Ok)
}
