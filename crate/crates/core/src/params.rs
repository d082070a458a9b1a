use serde::{Deserialize, Serialize};

use crate::error::{FlowError, Result};
use crate::geometry::{Chart, ChartKind};
use crate::real::Real;

/// How the Coriolis term β·cos(ar)·*u* is normalised on the sphere.
///
/// `Weighted` carries an extra factor sin(ar)/a, giving β·Y·cos(ar)·sin(ar)/a
/// as the dr-coefficient; `Hodge` uses β·Y·cos(ar), which is what the Hodge
/// star of u* gives directly. Both are closed, so only the reconstructed
/// pressure depends on the choice.
#[derive(Copy, Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RotationConvention {
    #[default]
    Weighted,
    Hodge,
}

#[derive(Copy, Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FlowParameters<T> {
    pub nu: T,
    pub beta: T,
    pub delta: T,
    pub alpha0: T,
    pub alpha1: T,
    pub alpha2: T,
    #[serde(default)]
    pub rotation: RotationConvention,
}

impl<T: Real> FlowParameters<T> {
    pub fn new(nu: T, beta: T, delta: T, alpha0: T, alpha1: T, alpha2: T) -> Self {
        Self { nu, beta, delta, alpha0, alpha1, alpha2, rotation: RotationConvention::Weighted }
    }

    pub fn with_rotation(mut self, rotation: RotationConvention) -> Self {
        self.rotation = rotation;
        self
    }

    /// Initial data (Y, Y′, Y″) at the inner radius.
    pub fn initial_values(&self) -> [T; 3] {
        [self.alpha0, self.alpha1, -self.alpha2]
    }

    pub fn validate(&self, chart: &Chart<T>) -> Result<()> {
        let bad = |what: &str, v: T| Err(FlowError::Precondition(format!("{what} (got {v})")));
        if !(self.nu > T::zero()) || !self.nu.is_finite() {
            return bad("viscosity nu must be positive", self.nu);
        }
        if !(self.beta >= T::zero()) || !self.beta.is_finite() {
            return bad("rotation rate beta must be nonnegative", self.beta);
        }
        for (name, v) in [("alpha0", self.alpha0), ("alpha1", self.alpha1), ("alpha2", self.alpha2)] {
            if !v.is_finite() {
                return Err(FlowError::Precondition(format!("{name} must be finite (got {v})")));
            }
        }
        match chart.kind {
            ChartKind::SpherePolar => {
                let upper = T::PI() / chart.a;
                if !(self.delta > T::zero() && self.delta < upper) {
                    return Err(FlowError::Domain {
                        coordinate: "delta",
                        value: self.delta.as_f64(),
                        reason: "outside (0, π/a)",
                    });
                }
            }
            ChartKind::HyperbolicPolar => {
                if !(self.delta > T::zero()) || !self.delta.is_finite() {
                    return Err(FlowError::Domain {
                        coordinate: "delta",
                        value: self.delta.as_f64(),
                        reason: "must be positive",
                    });
                }
            }
            ChartKind::HyperbolicCartesian => {
                if self.delta != T::zero() {
                    return Err(FlowError::Domain {
                        coordinate: "delta",
                        value: self.delta.as_f64(),
                        reason: "must be 0 on the edge chart",
                    });
                }
            }
        }
        Ok(())
    }
}
