//! Concrete models of the round sphere S²(a²) and the hyperbolic plane H²(−a²).
//!
//! The sphere is the Euclidean sphere of radius 1/a centred at the origin of
//! ℝ³, with base point O = (0, 0, 1/a). The hyperbolic plane is the upper sheet
//! of the hyperboloid ⟨x, x⟩ = −1/a² in Minkowski space with the form
//! −x₀y₀ + x₁y₁ + x₂y₂, base point O = (1/a, 0, 0), and tangent plane at O
//! identified with {(0, v₁, v₂)}.
//!
//! Every chart has metric diag(1, w(c1)²) for a weight `w` satisfying
//! w″ = −K·w, where K is the sectional curvature.

use serde::{Deserialize, Serialize};

use crate::error::{FlowError, Result};
use crate::real::{Analytic, Real};

/// Largest |a·coordinate| accepted before hyperbolic functions overflow.
pub const OVERFLOW_LIMIT: f64 = 700.0;

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ChartKind {
    /// Normal polar coordinates (r, θ) about the north pole of S²(a²).
    SpherePolar,
    /// Normal polar coordinates (r, θ) about O on H²(−a²).
    HyperbolicPolar,
    /// Fermi coordinates (τ, s) along the geodesic through O in the x₂ direction.
    HyperbolicCartesian,
}

impl ChartKind {
    pub fn name(self) -> &'static str {
        match self {
            ChartKind::SpherePolar => "sphere-polar",
            ChartKind::HyperbolicPolar => "hyperbolic-polar",
            ChartKind::HyperbolicCartesian => "hyperbolic-cartesian",
        }
    }

    pub fn is_polar(self) -> bool {
        !matches!(self, ChartKind::HyperbolicCartesian)
    }

    pub fn is_hyperbolic(self) -> bool {
        !matches!(self, ChartKind::SpherePolar)
    }
}

#[derive(Copy, Clone, Debug, PartialEq)]
pub struct Chart<T> {
    pub kind: ChartKind,
    pub a: T,
}

#[derive(Copy, Clone, Debug, PartialEq, Default)]
pub struct ChartPoint<T> {
    pub c1: T,
    pub c2: T,
}

impl<T> ChartPoint<T> {
    pub fn new(c1: T, c2: T) -> Self {
        Self { c1, c2 }
    }
}

/// A point of the embedding space (ℝ³ or Minkowski 𝕍³).
#[derive(Copy, Clone, Debug, PartialEq, Default)]
pub struct EmbeddedPoint<T> {
    pub x: [T; 3],
}

/// Orthonormal frame {e1, e2} in ambient coordinates.
#[derive(Copy, Clone, Debug, PartialEq)]
pub struct FramePair<T> {
    pub e1: [T; 3],
    pub e2: [T; 3],
}

pub type Metric<T> = [[T; 2]; 2];

impl<T: Real> Chart<T> {
    pub fn new(kind: ChartKind, a: T) -> Result<Self> {
        if !(a > T::zero()) || !a.is_finite() {
            return Err(FlowError::Domain {
                coordinate: "a",
                value: a.as_f64(),
                reason: "must be positive and finite",
            });
        }
        Ok(Self { kind, a })
    }

    pub fn sphere(a: T) -> Result<Self> {
        Self::new(ChartKind::SpherePolar, a)
    }

    pub fn hyperbolic_polar(a: T) -> Result<Self> {
        Self::new(ChartKind::HyperbolicPolar, a)
    }

    pub fn hyperbolic_cartesian(a: T) -> Result<Self> {
        Self::new(ChartKind::HyperbolicCartesian, a)
    }

    /// Sectional curvature: a² on the sphere, −a² on the hyperbolic plane.
    pub fn curvature(&self) -> T {
        let a2 = self.a * self.a;
        if self.kind.is_hyperbolic() {
            -a2
        } else {
            a2
        }
    }

    /// Right end of the first-coordinate domain (π/a on the sphere).
    pub fn c1_upper(&self) -> Option<T> {
        match self.kind {
            ChartKind::SpherePolar => Some(T::PI() / self.a),
            _ => None,
        }
    }

    /// Metric weight w with g = diag(1, w²).
    pub fn weight<S: Analytic<T>>(&self, c1: &S) -> S {
        match self.kind {
            ChartKind::SpherePolar => c1.sin_of(self.a) / self.a,
            ChartKind::HyperbolicPolar => c1.sinh_of(self.a) / self.a,
            ChartKind::HyperbolicCartesian => c1.cosh_of(self.a),
        }
    }

    /// First derivative of the weight.
    pub fn weight_prime<S: Analytic<T>>(&self, c1: &S) -> S {
        match self.kind {
            ChartKind::SpherePolar => c1.cos_of(self.a),
            ChartKind::HyperbolicPolar => c1.cosh_of(self.a),
            ChartKind::HyperbolicCartesian => c1.sinh_of(self.a) * self.a,
        }
    }

    /// Checks that `p` lies in the closure of the chart domain and that the
    /// hyperbolic functions stay in range.
    pub fn check_point(&self, p: ChartPoint<T>) -> Result<()> {
        if !p.c1.is_finite() {
            return Err(domain("c1", p.c1, "is not finite"));
        }
        if !p.c2.is_finite() {
            return Err(domain("c2", p.c2, "is not finite"));
        }
        match self.kind {
            ChartKind::SpherePolar => {
                if p.c1 < T::zero() || p.c1 > T::PI() / self.a {
                    return Err(domain("r", p.c1, "outside [0, π/a]"));
                }
            }
            ChartKind::HyperbolicPolar => {
                if p.c1 < T::zero() {
                    return Err(domain("r", p.c1, "is negative"));
                }
                check_overflow("r", self.a * p.c1)?;
            }
            ChartKind::HyperbolicCartesian => {
                check_overflow("tau", self.a * p.c1)?;
                check_overflow("s", self.a * p.c2)?;
            }
        }
        Ok(())
    }

    /// Like [`check_point`](Self::check_point) but also rejects the polar origin
    /// and the antipode, where the polar frame is undefined.
    pub fn check_regular(&self, p: ChartPoint<T>) -> Result<()> {
        self.check_point(p)?;
        if self.kind.is_polar() && p.c1 == T::zero() {
            return Err(FlowError::SingularChart { c1: 0.0 });
        }
        if let Some(upper) = self.c1_upper() {
            if p.c1 >= upper {
                return Err(FlowError::SingularChart { c1: p.c1.as_f64() });
            }
        }
        Ok(())
    }

    /// Ambient bilinear form: Euclidean on the sphere, Minkowski otherwise.
    pub fn inner(&self, x: &[T; 3], y: &[T; 3]) -> T {
        if self.kind.is_hyperbolic() {
            -x[0] * y[0] + x[1] * y[1] + x[2] * y[2]
        } else {
            x[0] * y[0] + x[1] * y[1] + x[2] * y[2]
        }
    }

    /// Embedding of a chart point.
    pub fn embed(&self, p: ChartPoint<T>) -> Result<EmbeddedPoint<T>> {
        self.check_point(p)?;
        Ok(self.embed_unchecked(p))
    }

    pub(crate) fn embed_unchecked(&self, p: ChartPoint<T>) -> EmbeddedPoint<T> {
        let a = self.a;
        let (r, th) = (p.c1, p.c2);
        let x = match self.kind {
            ChartKind::SpherePolar => {
                let s = (a * r).sin() / a;
                [s * th.cos(), s * th.sin(), (a * r).cos() / a]
            }
            ChartKind::HyperbolicPolar => {
                let s = (a * r).sinh() / a;
                [(a * r).cosh() / a, s * th.cos(), s * th.sin()]
            }
            ChartKind::HyperbolicCartesian => {
                let ct = (a * r).cosh() / a;
                [ct * (a * th).cosh(), (a * r).sinh() / a, ct * (a * th).sinh()]
            }
        };
        EmbeddedPoint { x }
    }
}

fn domain<T: Real>(coordinate: &'static str, value: T, reason: &'static str) -> FlowError {
    FlowError::Domain { coordinate, value: value.as_f64(), reason }
}

fn check_overflow<T: Real>(coordinate: &'static str, scaled: T) -> Result<()> {
    if scaled.abs() > T::lit(OVERFLOW_LIMIT) {
        return Err(FlowError::Overflow { coordinate, value: scaled.abs().as_f64() });
    }
    Ok(())
}

/// Point at distance `distance` from O along the geodesic with direction angle
/// `direction_angle`.
pub fn exp_map<T: Real>(chart: &Chart<T>, direction_angle: T, distance: T) -> Result<EmbeddedPoint<T>> {
    match chart.kind {
        ChartKind::SpherePolar => {
            if distance < T::zero() || distance >= T::PI() / chart.a {
                return Err(domain("distance", distance, "outside [0, π/a)"));
            }
        }
        ChartKind::HyperbolicPolar => {
            if distance < T::zero() {
                return Err(domain("distance", distance, "is negative"));
            }
        }
        ChartKind::HyperbolicCartesian => {
            return Err(FlowError::ChartMismatch { expected: "polar", found: chart.kind.name() });
        }
    }
    chart.embed(ChartPoint::new(distance, direction_angle))
}

/// Fermi chart Φ(τ, s) = exp_{γ(s)}(τ V(s)).
pub fn cartesian_chart<T: Real>(chart: &Chart<T>, tau: T, s: T) -> Result<EmbeddedPoint<T>> {
    if chart.kind != ChartKind::HyperbolicCartesian {
        return Err(FlowError::ChartMismatch {
            expected: ChartKind::HyperbolicCartesian.name(),
            found: chart.kind.name(),
        });
    }
    chart.embed(ChartPoint::new(tau, s))
}

/// Orthonormal frame e1 = ∂/∂c1, e2 = (1/w)∂/∂c2 in ambient coordinates.
pub fn frame_at<T: Real>(chart: &Chart<T>, p: ChartPoint<T>) -> Result<FramePair<T>> {
    chart.check_regular(p)?;
    let a = chart.a;
    let (r, th) = (p.c1, p.c2);
    let z = T::zero();
    let frame = match chart.kind {
        ChartKind::SpherePolar => {
            let (s, c) = ((a * r).sin(), (a * r).cos());
            FramePair { e1: [c * th.cos(), c * th.sin(), -s], e2: [-th.sin(), th.cos(), z] }
        }
        ChartKind::HyperbolicPolar => {
            let (s, c) = ((a * r).sinh(), (a * r).cosh());
            FramePair { e1: [s, c * th.cos(), c * th.sin()], e2: [z, -th.sin(), th.cos()] }
        }
        ChartKind::HyperbolicCartesian => {
            let (st, ct) = ((a * r).sinh(), (a * r).cosh());
            let (ss, cs) = ((a * th).sinh(), (a * th).cosh());
            FramePair { e1: [st * cs, ct, st * ss], e2: [ss, z, cs] }
        }
    };
    Ok(frame)
}

/// Metric components diag(1, w(c1)²) in chart coordinates.
pub fn chart_metric<T: Real>(chart: &Chart<T>, p: ChartPoint<T>) -> Result<Metric<T>> {
    chart.check_point(p)?;
    let w = chart.weight(&p.c1);
    Ok([[T::one(), T::zero()], [T::zero(), w * w]])
}

/// Stereographic projection of a hyperboloid point from (−1/a, 0, 0) onto the
/// unit disc. The scale a is recovered from ⟨x, x⟩ = −1/a².
pub fn poincare_project<T: Real>(p: &EmbeddedPoint<T>) -> [T; 2] {
    let [x0, x1, x2] = p.x;
    let q = x0 * x0 - x1 * x1 - x2 * x2;
    let a = T::one() / q.sqrt();
    let d = T::one() + a * x0;
    [a * x1 / d, a * x2 / d]
}

/// Euclidean determinant det[x, e1, e2]; positive for positively oriented frames.
pub fn orientation<T: Real>(x: &[T; 3], frame: &FramePair<T>) -> T {
    let (u, v) = (frame.e1, frame.e2);
    let cross = [u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2], u[0] * v[1] - u[1] * v[0]];
    x[0] * cross[0] + x[1] * cross[1] + x[2] * cross[2]
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

    #[test]
    fn exp_map_examples() {
        let s = Chart::sphere(1.0).unwrap();
        let p = exp_map(&s, 0.0, 0.0).unwrap();
        assert_eq!(p.x, [0.0, 0.0, 1.0]);
        let p = exp_map(&s, 0.0, FRAC_PI_2).unwrap();
        assert_abs_diff_eq!(p.x[0], 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(p.x[2], 0.0, epsilon = 1e-15);

        let h = Chart::hyperbolic_polar(1.0).unwrap();
        let p = exp_map(&h, 0.0, 1.0).unwrap();
        assert_eq!(p.x, [1f64.cosh(), 1f64.sinh(), 0.0]);
    }

    #[test]
    fn exp_map_rejects_bad_distance() {
        let s = Chart::sphere(2.0).unwrap();
        assert!(matches!(exp_map(&s, 0.0, PI / 2.0), Err(FlowError::Domain { .. })));
        assert!(matches!(exp_map(&s, 0.0, -0.1), Err(FlowError::Domain { coordinate: "distance", .. })));
        let e = Chart::hyperbolic_cartesian(1.0).unwrap();
        assert!(matches!(exp_map(&e, 0.0, 1.0), Err(FlowError::ChartMismatch { .. })));
    }

    #[test]
    fn cartesian_chart_examples() {
        let e = Chart::hyperbolic_cartesian(1.0).unwrap();
        assert_eq!(cartesian_chart(&e, 0.0, 0.0).unwrap().x, [1.0, 0.0, 0.0]);
        let p = cartesian_chart(&e, 0.0, 1.0).unwrap();
        assert_eq!(p.x, [1f64.cosh(), 0.0, 1f64.sinh()]);
        assert_abs_diff_eq!(e.inner(&p.x, &p.x), -1.0, epsilon = 1e-14);
        assert!(matches!(cartesian_chart(&e, 701.0, 0.0), Err(FlowError::Overflow { .. })));
    }

    #[test]
    fn frame_examples() {
        let s = Chart::sphere(1.0).unwrap();
        let f = frame_at(&s, ChartPoint::new(FRAC_PI_2, 0.0)).unwrap();
        assert_abs_diff_eq!(f.e1[2], -1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(f.e1[0], 0.0, epsilon = 1e-15);
        assert_eq!(f.e2, [0.0, 1.0, 0.0]);
        assert!(matches!(frame_at(&s, ChartPoint::new(0.0, 0.3)), Err(FlowError::SingularChart { .. })));
    }

    #[test]
    fn metric_examples() {
        let s = Chart::sphere(2.0).unwrap();
        let g = chart_metric(&s, ChartPoint::new(FRAC_PI_4, 0.0)).unwrap();
        assert_abs_diff_eq!(g[1][1], 0.25, epsilon = 1e-15);
        assert_eq!(g[0][0], 1.0);
        let e = Chart::hyperbolic_cartesian(1.0).unwrap();
        assert_eq!(chart_metric(&e, ChartPoint::new(0.0, 0.7)).unwrap(), [[1.0, 0.0], [0.0, 1.0]]);
    }

    #[test]
    fn poincare_origin() {
        let a = 3.0;
        let h = Chart::hyperbolic_polar(a).unwrap();
        let p = h.embed(ChartPoint::new(0.0, 0.0)).unwrap();
        assert_eq!(poincare_project(&p), [0.0, 0.0]);
    }

    #[test]
    fn curvature_signs() {
        assert_eq!(Chart::sphere(2.0).unwrap().curvature(), 4.0);
        assert_eq!(Chart::hyperbolic_polar(2.0).unwrap().curvature(), -4.0);
        assert!(Chart::sphere(0.0).is_err());
    }
}
