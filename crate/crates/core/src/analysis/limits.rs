use crate::error::{FlowError, Result};
use crate::geometry::Chart;
use crate::ode::{build_ode, flat_limit_ode, OdeSystem};
use crate::real::Real;

const WINDOW_SAMPLES: usize = 33;

#[derive(Clone, Debug, PartialEq)]
pub struct FlatLimitReport<T> {
    pub a_values: Vec<T>,
    /// Coefficient deviation of the sphere ODE from the flat one, per a.
    pub sphere: Vec<T>,
    pub hyperbolic: Vec<T>,
    pub sphere_slope: T,
    pub hyperbolic_slope: T,
}

impl<T: Real> FlatLimitReport<T> {
    /// Largest deviation of either chart at any a.
    pub fn max_deviation(&self) -> T {
        self.sphere.iter().chain(&self.hyperbolic).fold(T::zero(), |m, &v| m.max(v))
    }
}

/// max over the window and over k of |c_k − c̃_k| / |c̃_k| between two
/// third-order systems.
pub fn coefficient_deviation<T: Real>(system: &OdeSystem<T>, reference: &OdeSystem<T>, window: (T, T)) -> T {
    let n = WINDOW_SAMPLES - 1;
    let mut dev = T::zero();
    for i in 0..=n {
        let r = window.0 + (window.1 - window.0) * T::lit(i as f64 / n as f64);
        let c = system.coeffs_at(r);
        let f = reference.coeffs_at(r);
        for (x, y) in c.iter().zip(&f) {
            dev = dev.max((*x - *y).abs() / y.abs());
        }
    }
    dev
}

/// Least-squares slope of log y against log x.
pub fn log_log_slope<T: Real>(xs: &[T], ys: &[T]) -> T {
    let n = T::lit(xs.len() as f64);
    let lx: Vec<T> = xs.iter().map(|x| x.ln()).collect();
    let ly: Vec<T> = ys.iter().map(|y| y.ln()).collect();
    let mx = lx.iter().copied().sum::<T>() / n;
    let my = ly.iter().copied().sum::<T>() / n;
    let mut sxy = T::zero();
    let mut sxx = T::zero();
    for (x, y) in lx.iter().zip(&ly) {
        sxy = sxy + (*x - mx) * (*y - my);
        sxx = sxx + (*x - mx) * (*x - mx);
    }
    sxy / sxx
}

/// Deviation of the sphere and hyperbolic-polar ODEs from the flat ODE over
/// `r_window` for each a, with the log-log decay slopes.
pub fn flat_limit_consistency<T: Real>(a_values: &[T], r_window: (T, T)) -> Result<FlatLimitReport<T>> {
    if a_values.len() < 2 {
        return Err(FlowError::Precondition("need at least two values of a".into()));
    }
    if a_values.windows(2).any(|w| !(w[1] < w[0])) {
        return Err(FlowError::Precondition("a values must be strictly descending".into()));
    }
    if !(r_window.0 > T::zero() && r_window.1 > r_window.0) {
        return Err(FlowError::Precondition(format!(
            "r window must satisfy 0 < r0 < r1 (got [{}, {}])",
            r_window.0, r_window.1
        )));
    }
    let flat = flat_limit_ode();
    let mut sphere = Vec::new();
    let mut hyperbolic = Vec::new();
    for &a in a_values {
        let s = Chart::sphere(a)?;
        if r_window.1 >= T::PI() / a {
            return Err(FlowError::Domain { coordinate: "r", value: r_window.1.as_f64(), reason: "beyond π/a" });
        }
        sphere.push(coefficient_deviation(&build_ode(&s), &flat, r_window));
        hyperbolic.push(coefficient_deviation(&build_ode(&Chart::hyperbolic_polar(a)?), &flat, r_window));
    }
    Ok(FlatLimitReport {
        sphere_slope: log_log_slope(a_values, &sphere),
        hyperbolic_slope: log_log_slope(a_values, &hyperbolic),
        a_values: a_values.to_vec(),
        sphere,
        hyperbolic,
    })
}
