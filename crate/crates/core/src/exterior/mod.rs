//! Closed-form differential operators applied to parallel laminar profiles.
//!
//! A parallel flow is u = −Y(c1)·e2, so its dual 1-form is u* = −Y·w dc2 with
//! w the chart weight. Every term of the stationary momentum equation then
//! reduces to an expression in Y, its derivatives, w and w′; the formulas here
//! use only those and the relation w″ = −K·w. The [`oracle`] submodule rebuilds
//! the same quantities by finite differences of the metric alone.

pub mod oracle;

use crate::error::{FlowError, Result};
use crate::geometry::{Chart, ChartKind, ChartPoint};
use crate::params::{FlowParameters, RotationConvention};
use crate::profile::{Jet, Profile};
use crate::real::Real;

/// The 1-form A·dc1 + B·dc2.
#[derive(Copy, Clone, Debug, PartialEq, Default)]
pub struct OneFormRadial<T> {
    pub a: T,
    pub b: T,
}

impl<T: Real> OneFormRadial<T> {
    pub fn new(a: T, b: T) -> Self {
        Self { a, b }
    }

    pub fn zero() -> Self {
        Self::new(T::zero(), T::zero())
    }

    pub fn scale(self, s: T) -> Self {
        Self::new(self.a * s, self.b * s)
    }
}

impl<T: Real> std::ops::Add for OneFormRadial<T> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Self::new(self.a + rhs.a, self.b + rhs.b)
    }
}

impl<T: Real> std::ops::Sub for OneFormRadial<T> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Self::new(self.a - rhs.a, self.b - rhs.b)
    }
}

struct Local<T> {
    w: T,
    dw: T,
    k: T,
    jet: Jet<T>,
}

fn local<T: Real, P: Profile<T> + ?Sized>(chart: &Chart<T>, prof: &P, p: ChartPoint<T>) -> Result<Local<T>> {
    chart.check_regular(p)?;
    let jet = prof.jet(p.c1)?;
    Ok(Local { w: chart.weight(&p.c1), dw: chart.weight_prime(&p.c1), k: chart.curvature(), jet })
}

pub fn velocity_oneform<T: Real, P: Profile<T> + ?Sized>(
    chart: &Chart<T>,
    prof: &P,
    p: ChartPoint<T>,
) -> Result<OneFormRadial<T>> {
    chart.check_point(p)?;
    let y = prof.jet(p.c1)?.y;
    Ok(OneFormRadial::new(T::zero(), -y * chart.weight(&p.c1)))
}

/// d*u*. Zero for every parallel profile since nothing depends on c2.
pub fn divergence<T: Real, P: Profile<T> + ?Sized>(chart: &Chart<T>, prof: &P, p: ChartPoint<T>) -> Result<T> {
    local(chart, prof, p)?;
    Ok(T::zero())
}

/// (dd* + d*d)u*.
pub fn hodge_laplacian_oneform<T: Real, P: Profile<T> + ?Sized>(
    chart: &Chart<T>,
    prof: &P,
    p: ChartPoint<T>,
) -> Result<OneFormRadial<T>> {
    let Local { w, dw, k, jet } = local(chart, prof, p)?;
    let b = w * jet.d2y + dw * jet.dy - (k * w + dw * dw / w) * jet.y;
    Ok(OneFormRadial::new(T::zero(), b))
}

/// (∇_u u)*.
pub fn convection_oneform<T: Real, P: Profile<T> + ?Sized>(
    chart: &Chart<T>,
    prof: &P,
    p: ChartPoint<T>,
) -> Result<OneFormRadial<T>> {
    let Local { w, dw, jet, .. } = local(chart, prof, p)?;
    Ok(OneFormRadial::new(-jet.y * jet.y * dw / w, T::zero()))
}

/// β·cos(ar)·*u*, sphere only.
pub fn rotation_oneform<T: Real, P: Profile<T> + ?Sized>(
    chart: &Chart<T>,
    params: &FlowParameters<T>,
    prof: &P,
    p: ChartPoint<T>,
) -> Result<OneFormRadial<T>> {
    if chart.kind != ChartKind::SpherePolar {
        return Err(FlowError::ChartMismatch { expected: ChartKind::SpherePolar.name(), found: chart.kind.name() });
    }
    let Local { w, dw, jet, .. } = local(chart, prof, p)?;
    let a = match params.rotation {
        RotationConvention::Weighted => params.beta * dw * jet.y * w,
        RotationConvention::Hodge => params.beta * dw * jet.y,
    };
    Ok(OneFormRadial::new(a, T::zero()))
}

/// ν(−Δu* − 2K·u*), the viscous part of the momentum 1-form.
pub fn viscous_oneform<T: Real, P: Profile<T> + ?Sized>(
    chart: &Chart<T>,
    params: &FlowParameters<T>,
    prof: &P,
    p: ChartPoint<T>,
) -> Result<OneFormRadial<T>> {
    let lap = hodge_laplacian_oneform(chart, prof, p)?;
    let vel = velocity_oneform(chart, prof, p)?;
    let two_k = T::lit(2.0) * chart.curvature();
    Ok((lap - vel.scale(two_k)).scale(params.nu))
}

/// ν(−Δu* − 2K·u*) + β cos(ar)*u* + ∇_u u*, which must equal −dP.
///
/// The rotation term is included on the sphere only; β is ignored on the
/// hyperbolic charts.
pub fn momentum_oneform<T: Real, P: Profile<T> + ?Sized>(
    chart: &Chart<T>,
    params: &FlowParameters<T>,
    prof: &P,
    p: ChartPoint<T>,
) -> Result<OneFormRadial<T>> {
    let mut alpha = viscous_oneform(chart, params, prof, p)? + convection_oneform(chart, prof, p)?;
    if chart.kind == ChartKind::SpherePolar {
        alpha = alpha + rotation_oneform(chart, params, prof, p)?;
    }
    Ok(alpha)
}

/// The dc1∧dc2 coefficient of d(momentum), i.e. ∂B/∂c1.
pub fn vorticity_defect<T: Real, P: Profile<T> + ?Sized>(
    chart: &Chart<T>,
    params: &FlowParameters<T>,
    prof: &P,
    p: ChartPoint<T>,
) -> Result<T> {
    let Local { w, dw, k, jet } = local(chart, prof, p)?;
    let ratio = dw / w;
    let l = w * jet.d3y + T::lit(2.0) * dw * jet.d2y - dw * ratio * jet.dy
        + (T::lit(3.0) * k * dw + dw * ratio * ratio) * jet.y;
    Ok(params.nu * l)
}
