//! Theorem-level pipelines: non-existence certificates for quadratic profiles,
//! existence solves with residual reports, pressure reconstruction and the
//! flat-limit consistency check.

mod certify;
mod flow;
mod limits;
mod pressure;

pub use certify::{
    case3b_bracket, case3b_defect_limit, certify_nonexistence, richardson, CaseLabel, Certificate, ExtensionCheck,
    Verdict, Witness, CASE2_SNAP, EPS_SCHEDULE,
};
pub use flow::{solve_flow, ResidualReport, REPORT_POINTS, TAYLOR_ORDER};
pub use limits::{coefficient_deviation, flat_limit_consistency, log_log_slope, FlatLimitReport};
pub use pressure::{corner_paths, line_integral, reconstruct_pressure, PressureReconstruction};

use crate::error::{FlowError, Result};
use crate::geometry::{Chart, ChartKind, ChartPoint};
use crate::real::Real;

/// Sphere runs stop at π/a − ε_stop with ε_stop = this / a.
pub const SPHERE_STOP: f64 = 1e-3;
/// Unbounded hyperbolic regions are solved over this many units of 1/a.
pub const HYPERBOLIC_REACH: f64 = 10.0;

/// The sector {δ < c1 < δ + ε₀, 0 < c2 < extent}.
///
/// On the edge chart c1 = τ with δ = 0 and c2 = s.
#[derive(Copy, Clone, Debug, PartialEq)]
pub struct RegionSpec<T> {
    pub delta: T,
    pub theta_extent: T,
    /// Radial thickness; `None` means unbounded.
    pub epsilon0: Option<T>,
}

impl<T: Real> RegionSpec<T> {
    pub fn new(delta: T, theta_extent: T, epsilon0: Option<T>) -> Self {
        Self { delta, theta_extent, epsilon0 }
    }

    pub fn validate(&self, chart: &Chart<T>) -> Result<()> {
        if !(self.theta_extent > T::zero() && self.theta_extent < T::TAU()) {
            return Err(FlowError::Domain {
                coordinate: "theta_extent",
                value: self.theta_extent.as_f64(),
                reason: "outside (0, 2π)",
            });
        }
        if let Some(e) = self.epsilon0 {
            if !(e > T::zero()) || !e.is_finite() {
                return Err(FlowError::Domain { coordinate: "epsilon0", value: e.as_f64(), reason: "must be positive" });
            }
            if let Some(upper) = chart.c1_upper() {
                if !(self.delta + e < upper) {
                    return Err(FlowError::Domain {
                        coordinate: "epsilon0",
                        value: e.as_f64(),
                        reason: "delta + epsilon0 must stay below π/a",
                    });
                }
            }
        }
        if chart.kind == ChartKind::HyperbolicCartesian && self.delta != T::zero() {
            return Err(FlowError::Domain {
                coordinate: "delta",
                value: self.delta.as_f64(),
                reason: "must be 0 on the edge chart",
            });
        }
        Ok(())
    }

    /// Far end of the solved radial interval.
    pub fn radial_end(&self, chart: &Chart<T>) -> T {
        let a = chart.a;
        match chart.kind {
            ChartKind::SpherePolar => {
                let stop = T::PI() / a - T::lit(SPHERE_STOP) / a;
                self.epsilon0.map_or(stop, |e| (self.delta + e).min(stop))
            }
            _ => self.delta + self.epsilon0.unwrap_or_else(|| T::lit(HYPERBOLIC_REACH) / a),
        }
    }

    /// Whether `p` lies in the sector, with the far radial end included.
    pub fn contains(&self, chart: &Chart<T>, p: ChartPoint<T>) -> bool {
        p.c1 > self.delta
            && p.c1 <= self.radial_end(chart)
            && p.c2 > T::zero()
            && p.c2 < self.theta_extent
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn radial_ends() {
        let s = Chart::sphere(2.0).unwrap();
        let r = RegionSpec::new(0.5, 1.0, None);
        assert_eq!(r.radial_end(&s), PI / 2.0 - 5e-4);
        assert_eq!(RegionSpec::new(0.5, 1.0, Some(0.3)).radial_end(&s), 0.8);
        assert!(RegionSpec::new(0.5, 1.0, Some(2.0)).validate(&s).is_err());
        let h = Chart::hyperbolic_polar(2.0).unwrap();
        assert_eq!(r.radial_end(&h), 5.5);
        assert!(RegionSpec::new(0.5, 7.0, None).validate(&h).is_err());
    }
}
