use serde::{Deserialize, Serialize};

use crate::error::{FlowError, Result};
use crate::geometry::{Chart, ChartKind};
use crate::ode::{build_case3_ode, quadratic_defect};
use crate::params::FlowParameters;
use crate::profile::QuadraticProfile;
use crate::real::{max_abs, Analytic, Real};
use crate::series::Series;
use crate::solver::{solve_taylor, InitialData, DEFAULT_ORDER};

/// δ is treated as π/(2a) when within this relative distance.
pub const CASE2_SNAP: f64 = 1e-12;
/// Approach schedule ε_k = 2⁻ᵏ/a for k in this inclusive range.
pub const EPS_SCHEDULE: (i32, i32) = (6, 12);

const CASE3A_MAX_K: i32 = 40;
const CASE3B_SNAP: f64 = 1e-12;
const MARGIN: f64 = 10.0;
const MIN_GROWTH: f64 = 10.0;
const ROUNDING_FACTOR: f64 = 16.0;

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CaseLabel {
    SphereCase1,
    SphereCase2,
    SphereCase3a,
    SphereCase3b,
    HyperbolicDisc,
    HyperbolicEdge,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Verdict {
    NonExistence,
    Inconclusive,
}

/// The decisive quantity of a certificate.
#[derive(Clone, Debug, PartialEq)]
pub struct Witness<T> {
    pub name: String,
    pub value: T,
    /// Where it was evaluated; the endpoint itself for limits.
    pub location: T,
}

/// The second-order ODE solved from the quadratic's data at δ, compared with
/// the quadratic itself.
#[derive(Copy, Clone, Debug, PartialEq)]
pub struct ExtensionCheck<T> {
    pub reached: T,
    /// max |Z − h| / max(1, max |h|) over the solved interval.
    pub max_deviation: T,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Certificate<T> {
    pub chart: Chart<T>,
    pub params: FlowParameters<T>,
    pub case_label: CaseLabel,
    pub witness: Witness<T>,
    pub verdict: Verdict,
    pub error_estimate: T,
    pub extension: Option<ExtensionCheck<T>>,
}

fn rounding<T: Real>(terms: impl IntoIterator<Item = T>) -> T {
    let s = terms.into_iter().fold(T::zero(), |acc, t| acc + t.abs());
    T::lit(ROUNDING_FACTOR) * T::epsilon() * s
}

fn decide<T: Real>(holds: bool, value: T, err: T) -> Verdict {
    if holds && value.abs() > T::lit(MARGIN) * err {
        Verdict::NonExistence
    } else {
        Verdict::Inconclusive
    }
}

/// Limit of a sequence sampled at ε, ε/2, ε/4, … by polynomial Richardson
/// extrapolation. Returns the last diagonal entry and its distance from the
/// previous one.
pub fn richardson<T: Real>(samples: &[T]) -> (T, T) {
    let n = samples.len();
    assert!(n >= 2, "need at least two samples");
    let mut table: Vec<Vec<T>> = vec![samples.to_vec()];
    for j in 1..n {
        let p = T::lit((1u64 << j) as f64);
        let prev = &table[j - 1];
        let row: Vec<T> = (1..prev.len()).map(|k| (p * prev[k] - prev[k - 1]) / (p - T::one())).collect();
        table.push(row);
    }
    let last = table[n - 1][0];
    let before = *table[n - 2].last().expect("nonempty row");
    (last, (last - before).abs())
}

fn amplification(n: usize) -> f64 {
    (1..n).map(|j| ((1u64 << j) as f64 + 1.0) / ((1u64 << j) as f64 - 1.0)).product()
}

fn schedule<T: Real>(a: T, k: i32) -> T {
    T::lit(2.0).powi(-k) / a
}

/// cos(ar)[Y″ + Q₁Y′ + Q₂Y] at r = π/a − ε for the quadratic with
/// α₁ = (α₂/2)(π/a − δ), evaluated with trigonometric functions of ε so no
/// accuracy is lost to the cancellation in π − aε. Returns the value and a
/// rounding estimate.
pub fn case3b_bracket<T: Real>(a: T, delta: T, alpha2: T, eps: T) -> (T, T) {
    let half = T::lit(0.5);
    let l = T::PI() / a - delta;
    let (s, c) = ((a * eps).sin(), -(a * eps).cos());
    let y = half * alpha2 * (l - eps) * eps;
    let dy = alpha2 * (eps - half * l);
    let d2y = -alpha2;
    let q1_cos = half * a * (s - T::one() / s);
    let q2 = half * a * a * (T::lit(2.0) + T::one() / (s * s));
    let terms = [c * d2y, q1_cos * dy, c * q2 * y];
    (terms[0] + terms[1] + terms[2], rounding(terms))
}

/// Limit as r → π/a⁻ of the quadratic's defect function F, evaluated directly
/// from the closed form at r = π/a − ε_k and extrapolated.
pub fn case3b_defect_limit<T: Real>(a: T, delta: T, alpha2: T) -> (T, T) {
    let chart = Chart { kind: ChartKind::SpherePolar, a };
    let l = T::PI() / a - delta;
    let params = FlowParameters::new(T::one(), T::zero(), delta, T::zero(), half(alpha2 * l), alpha2);
    let f = quadratic_defect(&chart, &params);
    let samples: Vec<T> =
        (EPS_SCHEDULE.0..=EPS_SCHEDULE.1).map(|k| f.at(T::PI() / a - schedule(a, k))).collect();
    richardson(&samples)
}

fn half<T: Real>(x: T) -> T {
    T::lit(0.5) * x
}

/// Decides whether a quadratic profile with the given parameters can be a
/// stationary parallel flow, following the case analysis of the chart.
pub fn certify_nonexistence<T: Real>(chart: &Chart<T>, params: &FlowParameters<T>) -> Result<Certificate<T>> {
    params.validate(chart)?;
    if !(params.alpha1 > T::zero() && params.alpha2 > T::zero()) {
        return Err(FlowError::Precondition(format!(
            "certificates need alpha1 > 0 and alpha2 > 0 (got {}, {})",
            params.alpha1, params.alpha2
        )));
    }
    if params.alpha0 != T::zero() {
        return Err(FlowError::Precondition(format!(
            "certificates cover profiles vanishing at the boundary; alpha0 must be 0 (got {})",
            params.alpha0
        )));
    }
    match chart.kind {
        ChartKind::SpherePolar => sphere(chart, params),
        ChartKind::HyperbolicPolar => disc(chart, params),
        ChartKind::HyperbolicCartesian => edge(chart, params),
    }
}

#[allow(clippy::too_many_arguments)]
fn certificate<T: Real>(
    chart: &Chart<T>,
    params: &FlowParameters<T>,
    case_label: CaseLabel,
    name: &str,
    value: T,
    location: T,
    holds: bool,
    err: T,
) -> Certificate<T> {
    Certificate {
        chart: *chart,
        params: *params,
        case_label,
        witness: Witness { name: name.to_string(), value, location },
        verdict: decide(holds, value, err),
        error_estimate: err,
        extension: None,
    }
}

fn sphere<T: Real>(chart: &Chart<T>, params: &FlowParameters<T>) -> Result<Certificate<T>> {
    let a = chart.a;
    let q = T::FRAC_PI_2() / a;
    let delta = params.delta;
    if (delta - q).abs() <= T::lit(CASE2_SNAP) * q {
        let snapped = FlowParameters { delta: q, ..*params };
        let f = quadratic_defect(chart, &snapped);
        let x = Series::variable(q, 2);
        let s = x.sin_of(a);
        let s2 = s.clone() * s;
        let mut value = T::zero();
        let mut parts = Vec::new();
        for term in f.terms(&x) {
            value = value + (s2.clone() * term.clone()).coeff(1);
            parts.push(s2.coeff(0) * term.coeff(1));
            parts.push(s2.coeff(1) * term.coeff(0));
        }
        let err = rounding(parts);
        return Ok(certificate(
            chart,
            &snapped,
            CaseLabel::SphereCase2,
            "d/dr[sin^2(ar) F](pi/2a)",
            value,
            q,
            value > T::zero(),
            err,
        ));
    }
    if delta < q {
        let f = quadratic_defect(chart, params);
        let terms = f.terms(&delta);
        let value = terms[0] + terms[1] + terms[2];
        return Ok(certificate(
            chart,
            params,
            CaseLabel::SphereCase1,
            "F(delta)",
            value,
            delta,
            value < T::zero(),
            rounding(terms),
        ));
    }

    let l = T::PI() / a - delta;
    let kappa = params.alpha1 - half(params.alpha2 * l);
    let mut cert = if kappa.abs() <= T::lit(CASE3B_SNAP) * params.alpha1.max(params.alpha2 * l) {
        case3b(chart, params)
    } else {
        case3a(chart, params, kappa)
    };
    cert.extension = extension_check(chart, params);
    Ok(cert)
}

fn case3a<T: Real>(chart: &Chart<T>, params: &FlowParameters<T>, kappa: T) -> Certificate<T> {
    let a = chart.a;
    let l = T::PI() / a - params.delta;
    let witness = |k: i32| {
        let eps = schedule(a, k);
        let s = (a * eps).sin();
        let q2 = half(a * a) * (T::lit(2.0) + T::one() / (s * s));
        let y = (l - eps) * (kappa + half(params.alpha2 * eps));
        s * q2 * y
    };
    let (k0, mut k_last) = EPS_SCHEDULE;
    let tail = (EPS_SCHEDULE.1 - EPS_SCHEDULE.0 + 1) as usize;
    loop {
        let values: Vec<T> = (k0..=k_last).map(witness).collect();
        let mags: Vec<T> = values.iter().map(|v| v.abs()).collect();
        let growth = mags[mags.len() - 1] / mags[0];
        let monotone = mags[mags.len() - tail..].windows(2).all(|w| w[1] > w[0]);
        let ok = growth >= T::lit(MIN_GROWTH) && monotone;
        if ok || k_last >= CASE3A_MAX_K {
            let value = values[values.len() - 1];
            let err = rounding([value]);
            let location = T::PI() / a - schedule(a, k_last);
            return certificate(
                chart,
                params,
                CaseLabel::SphereCase3a,
                "sin(ar)*Q2(r)*Y(r)",
                value,
                location,
                ok,
                err,
            );
        }
        k_last += 1;
    }
}

fn case3b<T: Real>(chart: &Chart<T>, params: &FlowParameters<T>) -> Certificate<T> {
    let a = chart.a;
    let (samples, roundings): (Vec<T>, Vec<T>) = (EPS_SCHEDULE.0..=EPS_SCHEDULE.1)
        .map(|k| case3b_bracket(a, params.delta, params.alpha2, schedule(a, k)))
        .unzip();
    let (value, diff) = richardson(&samples);
    let err = diff.max(T::lit(amplification(samples.len())) * max_abs(roundings));
    certificate(
        chart,
        params,
        CaseLabel::SphereCase3b,
        "lim cos(ar)[Y''+Q1 Y'+Q2 Y]",
        value,
        T::PI() / a,
        value != T::zero(),
        err,
    )
}

fn extension_check<T: Real>(chart: &Chart<T>, params: &FlowParameters<T>) -> Option<ExtensionCheck<T>> {
    let a = chart.a;
    let reached = T::PI() / a - schedule(a, EPS_SCHEDULE.0);
    if params.delta >= reached {
        return None;
    }
    let system = build_case3_ode(a).ok()?;
    let init = InitialData::new(params.delta, vec![params.alpha0, params.alpha1]);
    let sol = solve_taylor(&system, &init, reached, DEFAULT_ORDER).ok()?;
    let quad = QuadraticProfile::from_params(params);
    let n = 64;
    let mut dev = T::zero();
    let mut size = T::one();
    for i in 0..=n {
        let t = params.delta + (reached - params.delta) * T::lit(i as f64 / n as f64);
        let z = sol.eval(t).ok()?.y;
        let h = quad.value(t);
        dev = dev.max((z - h).abs());
        size = size.max(h.abs());
    }
    Some(ExtensionCheck { reached, max_deviation: dev / size })
}

fn disc<T: Real>(chart: &Chart<T>, params: &FlowParameters<T>) -> Result<Certificate<T>> {
    let g = quadratic_defect(chart, params);
    let terms = g.terms(&params.delta);
    let value = terms[0] + terms[1] + terms[2];
    Ok(certificate(
        chart,
        params,
        CaseLabel::HyperbolicDisc,
        "G(delta)",
        value,
        params.delta,
        value < T::zero(),
        rounding(terms),
    ))
}

fn edge<T: Real>(chart: &Chart<T>, params: &FlowParameters<T>) -> Result<Certificate<T>> {
    let f = quadratic_defect(chart, params);
    let x = Series::variable(T::zero(), 2);
    let terms = f.terms(&x).map(|t| t.coeff(1));
    let value = terms[0] + terms[1] + terms[2];
    Ok(certificate(
        chart,
        params,
        CaseLabel::HyperbolicEdge,
        "F'(0)",
        value,
        T::zero(),
        value < T::zero(),
        rounding(terms),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI, SQRT_2};

    #[test]
    fn case_one_golden() {
        let s = Chart::sphere(1.0).unwrap();
        let c = certify_nonexistence(&s, &FlowParameters::new(1.0, 0.0, FRAC_PI_4, 0.0, 1.0, 1.0)).unwrap();
        assert_eq!(c.case_label, CaseLabel::SphereCase1);
        assert_relative_eq!(c.witness.value, -3.0 * SQRT_2 / 2.0, epsilon = 1e-14);
        assert_eq!(c.verdict, Verdict::NonExistence);
    }

    #[test]
    fn case_two_golden() {
        let s = Chart::sphere(1.0).unwrap();
        let c = certify_nonexistence(&s, &FlowParameters::new(1.0, 0.0, FRAC_PI_2, 0.0, 1.0, 3.0)).unwrap();
        assert_eq!(c.case_label, CaseLabel::SphereCase2);
        assert_relative_eq!(c.witness.value, 6.0, max_relative = 1e-13);
        assert_eq!(c.verdict, Verdict::NonExistence);
    }

    #[test]
    fn edge_golden() {
        let e = Chart::hyperbolic_cartesian(1.0).unwrap();
        let c = certify_nonexistence(&e, &FlowParameters::new(1.0, 0.0, 0.0, 0.0, 1.0, 2.0)).unwrap();
        assert_eq!(c.witness.value, -4.0);
        assert_eq!(c.case_label, CaseLabel::HyperbolicEdge);
    }

    #[test]
    fn case_three_split() {
        let s = Chart::sphere(1.0).unwrap();
        let delta = 2.0;
        let c = certify_nonexistence(&s, &FlowParameters::new(1.0, 0.0, delta, 0.0, 1.0, 1.0)).unwrap();
        assert_eq!(c.case_label, CaseLabel::SphereCase3a);
        assert_eq!(c.verdict, Verdict::NonExistence);
        let ext = c.extension.unwrap();
        assert!(ext.max_deviation > 1e-3);

        let alpha2 = 1.5;
        let b = FlowParameters::new(1.0, 0.0, delta, 0.0, 0.5 * alpha2 * (PI - delta), alpha2);
        let c = certify_nonexistence(&s, &b).unwrap();
        assert_eq!(c.case_label, CaseLabel::SphereCase3b);
        assert_eq!(c.verdict, Verdict::NonExistence);
        assert_relative_eq!(c.witness.value, 0.75 * alpha2, max_relative = 1e-6);
    }

    #[test]
    fn defect_limit_in_case_3b() {
        let (value, _) = case3b_defect_limit(1.3, 1.9, 2.0);
        assert_relative_eq!(value, 3.0, max_relative = 1e-5);
    }

    #[test]
    fn richardson_removes_linear_and_quadratic_terms() {
        let samples: Vec<f64> = (0..5).map(|k| 2.0 + 3.0 * 0.5f64.powi(k) - 0.25f64.powi(k)).collect();
        let (v, _) = richardson(&samples);
        assert_relative_eq!(v, 2.0, max_relative = 1e-13);
    }

    #[test]
    fn preconditions() {
        let s = Chart::sphere(1.0).unwrap();
        let bad = FlowParameters::new(1.0, 0.0, 0.5, 0.0, -1.0, 1.0);
        assert!(matches!(certify_nonexistence(&s, &bad), Err(FlowError::Precondition(_))));
        let offset = FlowParameters::new(1.0, 0.0, 0.5, 0.2, 1.0, 1.0);
        assert!(matches!(certify_nonexistence(&s, &offset), Err(FlowError::Precondition(_))));
    }
}
