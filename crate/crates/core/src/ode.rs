//! The governing linear ODEs for parallel profiles and the defect functions of
//! quadratic profiles.
//!
//! Coefficients are stored in raw form: the leading coefficient is sin(ar)/a,
//! sinh(ar)/a, cosh(aτ) and so on, and vanishes at singular endpoints. Solvers
//! divide by it themselves. All coefficient and defect formulas are generic
//! over [`Analytic`], so the Taylor solver can expand them as power series.

use serde::{Deserialize, Serialize};

use crate::error::{FlowError, Result};
use crate::geometry::{Chart, ChartKind};
use crate::params::FlowParameters;
use crate::profile::Jet;
use crate::real::{Analytic, Real};

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum OdeKind {
    Sphere,
    HyperbolicPolar,
    HyperbolicEdge,
    /// Y″ + Q₁Y′ + Q₂Y = 0 on (π/2a, π/a).
    SphereCase3,
    /// r·Y‴ + 2Y″ − Y′/r + Y/r² = 0.
    Flat,
}

#[derive(Clone, Debug, PartialEq)]
pub struct OdeSystem<T> {
    pub kind: OdeKind,
    pub a: T,
    pub order: usize,
    /// Open interval; endpoints may be infinite.
    pub domain: (T, T),
    pub singular_points: Vec<T>,
}

impl<T: Real> OdeSystem<T> {
    /// Coefficients indexed by derivative order: `c[k]` multiplies Y⁽ᵏ⁾.
    pub fn coeffs<S: Analytic<T>>(&self, t: &S) -> Vec<S> {
        let a = self.a;
        let two = T::lit(2.0);
        match self.kind {
            OdeKind::Sphere => {
                let (s, c) = (t.sin_of(a), t.cos_of(a));
                let inv = s.recip();
                vec![
                    c.clone() * (inv.clone() * inv.clone() + two) * (a * a),
                    (s.clone() - inv) * a,
                    c * two,
                    s / a,
                ]
            }
            OdeKind::HyperbolicPolar => {
                let (s, c) = (t.sinh_of(a), t.cosh_of(a));
                let inv = s.recip();
                vec![
                    c.clone() * (inv.clone() * inv.clone() - two) * (a * a),
                    -(s.clone() + inv) * a,
                    c * two,
                    s / a,
                ]
            }
            OdeKind::HyperbolicEdge => {
                let (s, c) = (t.sinh_of(a), t.cosh_of(a));
                let inv = c.recip();
                vec![
                    -s.clone() * (inv.clone() * inv.clone() + two) * (a * a * a),
                    -(s.clone() * s.clone() * inv) * (a * a),
                    s * (two * a),
                    c,
                ]
            }
            OdeKind::SphereCase3 => {
                let (s, c) = (t.sin_of(a), t.cos_of(a));
                let inv = s.recip();
                let q1 = (s - inv.clone()) / c * (a / two);
                let q2 = (inv.clone() * inv + two) * (a * a / two);
                vec![q2, q1, t.constant(T::one())]
            }
            OdeKind::Flat => {
                let inv = t.recip();
                vec![inv.clone() * inv.clone(), -inv, t.constant(two), t.clone()]
            }
        }
    }

    /// Point values of the coefficients.
    pub fn coeffs_at(&self, t: T) -> Vec<T> {
        self.coeffs(&t)
    }

    /// Σ c_k Y⁽ᵏ⁾ at `t`.
    pub fn residual(&self, t: T, jet: &Jet<T>) -> T {
        self.coeffs_at(t).iter().enumerate().fold(T::zero(), |acc, (k, &c)| acc + c * jet.derivative(k))
    }

    /// Σ |c_k Y⁽ᵏ⁾|, the natural size against which a residual is measured.
    pub fn residual_scale(&self, t: T, jet: &Jet<T>) -> T {
        self.coeffs_at(t).iter().enumerate().fold(T::zero(), |acc, (k, &c)| acc + (c * jet.derivative(k)).abs())
    }

    /// Highest derivative from the lower ones: Y⁽ⁿ⁾ = −Σ_{k<n} c_k Y⁽ᵏ⁾ / c_n.
    pub fn highest_derivative(&self, t: T, lower: &[T]) -> T {
        let c = self.coeffs_at(t);
        let s = lower.iter().zip(&c).fold(T::zero(), |acc, (&y, &ck)| acc + ck * y);
        -s / c[self.order]
    }

    /// Distance from `t` to the nearest complex singularity of the normalised
    /// coefficients, which bounds the radius of convergence of the solution.
    pub fn singularity_radius(&self, t: T) -> T {
        let a = self.a;
        match self.kind {
            OdeKind::Sphere => t.min(T::PI() / a - t),
            OdeKind::HyperbolicPolar | OdeKind::Flat => t.abs(),
            OdeKind::HyperbolicEdge => (t * t + (T::FRAC_PI_2() / a).powi(2)).sqrt(),
            OdeKind::SphereCase3 => {
                let q = T::FRAC_PI_2() / a;
                let m = t / q;
                ((m - m.floor()) * q).min((m.ceil() - m) * q)
            }
        }
    }

    pub fn contains(&self, t: T) -> bool {
        t > self.domain.0 && t < self.domain.1
    }

    /// True if `t` lies in the open domain or on a finite endpoint.
    pub fn contains_closure(&self, t: T) -> bool {
        t >= self.domain.0 && t <= self.domain.1
    }

    pub fn check_interval(&self, t0: T, t_end: T) -> Result<()> {
        if !self.contains(t0) {
            return Err(FlowError::Domain { coordinate: "t0", value: t0.as_f64(), reason: "outside the open ODE domain" });
        }
        if !self.contains_closure(t_end) || !t_end.is_finite() {
            return Err(FlowError::Domain { coordinate: "t_end", value: t_end.as_f64(), reason: "outside the ODE domain" });
        }
        let (lo, hi) = if t0 <= t_end { (t0, t_end) } else { (t_end, t0) };
        if let Some(&s) = self.singular_points.iter().find(|&&s| s > lo && s < hi) {
            return Err(FlowError::Domain { coordinate: "t", value: s.as_f64(), reason: "singular point inside interval" });
        }
        Ok(())
    }
}

/// Third-order ODE of the chart.
pub fn build_ode<T: Real>(chart: &Chart<T>) -> OdeSystem<T> {
    let a = chart.a;
    let (kind, domain, singular_points) = match chart.kind {
        ChartKind::SpherePolar => (OdeKind::Sphere, (T::zero(), T::PI() / a), vec![T::zero(), T::PI() / a]),
        ChartKind::HyperbolicPolar => (OdeKind::HyperbolicPolar, (T::zero(), T::infinity()), vec![T::zero()]),
        ChartKind::HyperbolicCartesian => (OdeKind::HyperbolicEdge, (T::neg_infinity(), T::infinity()), vec![]),
    };
    OdeSystem { kind, a, order: 3, domain, singular_points }
}

/// Second-order ODE Y″ + Q₁Y′ + Q₂Y = 0 on (π/2a, π/a).
pub fn build_case3_ode<T: Real>(a: T) -> Result<OdeSystem<T>> {
    let chart = Chart::sphere(a)?;
    let (lo, hi) = (T::FRAC_PI_2() / chart.a, T::PI() / chart.a);
    Ok(OdeSystem { kind: OdeKind::SphereCase3, a, order: 2, domain: (lo, hi), singular_points: vec![lo, hi] })
}

/// Common a → 0 limit of the polar-chart ODEs.
pub fn flat_limit_ode<T: Real>() -> OdeSystem<T> {
    OdeSystem {
        kind: OdeKind::Flat,
        a: T::one(),
        order: 3,
        domain: (T::zero(), T::infinity()),
        singular_points: vec![T::zero()],
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum DefectLabel {
    SphereF,
    HyperbolicG,
    EdgeF,
}

/// Closed-form defect of the quadratic profile α₀ + α₁λ − (α₂/2)λ².
///
/// λ = r − δ on the polar charts and λ = τ on the edge chart.
#[derive(Copy, Clone, Debug, PartialEq)]
pub struct DefectFunction<T> {
    pub label: DefectLabel,
    pub a: T,
    pub origin: T,
    pub alpha0: T,
    pub alpha1: T,
    pub alpha2: T,
}

impl<T: Real> DefectFunction<T> {
    /// The three summands (from h″, h′ and h) whose sum is the defect.
    pub fn terms<S: Analytic<T>>(&self, t: &S) -> [S; 3] {
        let a = self.a;
        let two = T::lit(2.0);
        let lam = t.clone() - self.origin;
        let h = lam.clone() * self.alpha1 - lam.clone() * lam.clone() * (self.alpha2 / two) + self.alpha0;
        let dh = -(lam * self.alpha2) + self.alpha1;
        match self.label {
            DefectLabel::SphereF => {
                let (s, c) = (t.sin_of(a), t.cos_of(a));
                let inv = s.recip();
                [
                    c.clone() * (-two * self.alpha2),
                    dh * (s - inv.clone()) * a,
                    h * c * (inv.clone() * inv + two) * (a * a),
                ]
            }
            DefectLabel::HyperbolicG => {
                let (s, c) = (t.sinh_of(a), t.cosh_of(a));
                let inv = s.recip();
                [
                    c.clone() * (-two * self.alpha2),
                    -(s + inv.clone()) * dh * a,
                    c * (inv.clone() * inv - two) * h * (a * a),
                ]
            }
            DefectLabel::EdgeF => {
                let (s, c) = (t.sinh_of(a), t.cosh_of(a));
                let inv = c.recip();
                [
                    s.clone() * (-two * a * self.alpha2),
                    -(s.clone() * s.clone() * inv.clone() * dh * (a * a)),
                    -(s * (inv.clone() * inv + two) * h * (a * a * a)),
                ]
            }
        }
    }

    pub fn eval<S: Analytic<T>>(&self, t: &S) -> S {
        let [x, y, z] = self.terms(t);
        x + y + z
    }

    pub fn at(&self, t: T) -> T {
        self.eval(&t)
    }
}

pub fn quadratic_defect<T: Real>(chart: &Chart<T>, params: &FlowParameters<T>) -> DefectFunction<T> {
    let (label, origin) = match chart.kind {
        ChartKind::SpherePolar => (DefectLabel::SphereF, params.delta),
        ChartKind::HyperbolicPolar => (DefectLabel::HyperbolicG, params.delta),
        ChartKind::HyperbolicCartesian => (DefectLabel::EdgeF, T::zero()),
    };
    DefectFunction { label, a: chart.a, origin, alpha0: params.alpha0, alpha1: params.alpha1, alpha2: params.alpha2 }
}
