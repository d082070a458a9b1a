//! Finite-difference exterior calculus on a general 2×2 metric.
//!
//! Nothing here knows about parallel profiles or chart weights: operators are
//! assembled from the metric components by centred second-order differences,
//! so agreement with the closed forms in the parent module is an independent
//! check. The [`Sheared`] wrapper re-expresses a chart in skewed coordinates,
//! where the discretisation no longer happens to be exact.

use crate::geometry::{Chart, ChartPoint, Metric};
use crate::profile::Profile;
use crate::real::Real;

pub trait MetricField<T: Real> {
    fn metric(&self, x: [T; 2]) -> Metric<T>;
}

impl<T: Real> MetricField<T> for Chart<T> {
    fn metric(&self, x: [T; 2]) -> Metric<T> {
        let w = self.weight(&x[0]);
        [[T::one(), T::zero()], [T::zero(), w * w]]
    }
}

/// Coordinates (x, y) with c1 = x + κ·y, c2 = y over an inner metric field.
#[derive(Copy, Clone, Debug)]
pub struct Sheared<M, T> {
    pub inner: M,
    pub kappa: T,
}

impl<M, T: Real> Sheared<M, T> {
    pub fn new(inner: M, kappa: T) -> Self {
        Self { inner, kappa }
    }

    pub fn to_inner(&self, x: [T; 2]) -> [T; 2] {
        [x[0] + self.kappa * x[1], x[1]]
    }

    pub fn from_inner(&self, c: [T; 2]) -> [T; 2] {
        [c[0] - self.kappa * c[1], c[1]]
    }

    /// Pulls back 1-form components: α′ = Jᵀα.
    pub fn form(&self, alpha: [T; 2]) -> [T; 2] {
        [alpha[0], self.kappa * alpha[0] + alpha[1]]
    }

    /// Pulls back vector components: u′ = J⁻¹u.
    pub fn vector(&self, u: [T; 2]) -> [T; 2] {
        [u[0] - self.kappa * u[1], u[1]]
    }
}

impl<M: MetricField<T>, T: Real> MetricField<T> for Sheared<M, T> {
    fn metric(&self, x: [T; 2]) -> Metric<T> {
        let g = self.inner.metric(self.to_inner(x));
        let k = self.kappa;
        // JᵀgJ with J = [[1, κ], [0, 1]]
        let g11 = g[0][0];
        let g12 = k * g[0][0] + g[0][1];
        let g22 = k * k * g[0][0] + T::lit(2.0) * k * g[0][1] + g[1][1];
        [[g11, g12], [g12, g22]]
    }
}

fn det<T: Real>(g: &Metric<T>) -> T {
    g[0][0] * g[1][1] - g[0][1] * g[1][0]
}

fn inverse<T: Real>(g: &Metric<T>) -> Metric<T> {
    let d = det(g);
    [[g[1][1] / d, -g[0][1] / d], [-g[1][0] / d, g[0][0] / d]]
}

fn shift<T: Real>(x: [T; 2], i: usize, h: T) -> [T; 2] {
    let mut y = x;
    y[i] = y[i] + h;
    y
}

/// Centred difference ∂f/∂xᵢ.
pub fn partial<T: Real>(f: impl Fn([T; 2]) -> T, x: [T; 2], i: usize, h: T) -> T {
    (f(shift(x, i, h)) - f(shift(x, i, -h))) / (T::lit(2.0) * h)
}

/// d*α = −(1/√g) ∂ᵢ(√g gⁱʲ αⱼ).
pub fn codifferential<T: Real, M: MetricField<T>>(
    m: &M,
    alpha: &impl Fn([T; 2]) -> [T; 2],
    x: [T; 2],
    h: T,
) -> T {
    let flux = |i: usize| {
        move |y: [T; 2]| {
            let g = m.metric(y);
            let gi = inverse(&g);
            let a = alpha(y);
            det(&g).sqrt() * (gi[i][0] * a[0] + gi[i][1] * a[1])
        }
    };
    let div = partial(flux(0), x, 0, h) + partial(flux(1), x, 1, h);
    -div / det(&m.metric(x)).sqrt()
}

/// Coefficient of dx¹∧dx² in dα.
pub fn exterior_derivative<T: Real>(alpha: &impl Fn([T; 2]) -> [T; 2], x: [T; 2], h: T) -> T {
    partial(|y| alpha(y)[1], x, 0, h) - partial(|y| alpha(y)[0], x, 1, h)
}

/// (dd* + d*d)α.
pub fn hodge_laplacian<T: Real, M: MetricField<T>>(
    m: &M,
    alpha: &impl Fn([T; 2]) -> [T; 2],
    x: [T; 2],
    h: T,
) -> [T; 2] {
    let codiff = |y: [T; 2]| codifferential(m, alpha, y, h);
    let dd_star = [partial(codiff, x, 0, h), partial(codiff, x, 1, h)];

    // dα = φ·vol with φ = (dα)₁₂/√g; d*(φ·vol) = −*dφ.
    let phi = |y: [T; 2]| exterior_derivative(alpha, y, h) / det(&m.metric(y)).sqrt();
    let dphi = [partial(phi, x, 0, h), partial(phi, x, 1, h)];
    let g = m.metric(x);
    let gi = inverse(&g);
    let sg = det(&g).sqrt();
    let raised = [gi[0][0] * dphi[0] + gi[0][1] * dphi[1], gi[1][0] * dphi[0] + gi[1][1] * dphi[1]];
    let d_star_d = [sg * raised[1], -sg * raised[0]];

    [dd_star[0] + d_star_d[0], dd_star[1] + d_star_d[1]]
}

/// Christoffel symbols Γᵏᵢⱼ indexed `[k][i][j]`.
#[allow(clippy::needless_range_loop)]
pub fn christoffel<T: Real, M: MetricField<T>>(m: &M, x: [T; 2], h: T) -> [[[T; 2]; 2]; 2] {
    let mut dg = [[[T::zero(); 2]; 2]; 2]; // dg[l][i][j] = ∂ₗ gᵢⱼ
    for (l, dgl) in dg.iter_mut().enumerate() {
        for i in 0..2 {
            for j in 0..2 {
                dgl[i][j] = partial(|y| m.metric(y)[i][j], x, l, h);
            }
        }
    }
    let gi = inverse(&m.metric(x));
    let half = T::lit(0.5);
    let mut gamma = [[[T::zero(); 2]; 2]; 2];
    for (k, gk) in gamma.iter_mut().enumerate() {
        for i in 0..2 {
            for j in 0..2 {
                let mut s = T::zero();
                for l in 0..2 {
                    s = s + gi[k][l] * (dg[i][l][j] + dg[j][l][i] - dg[l][i][j]);
                }
                gk[i][j] = half * s;
            }
        }
    }
    gamma
}

/// Lowered covariant derivative (∇ᵤu)♭ of a vector field.
pub fn convection<T: Real, M: MetricField<T>>(
    m: &M,
    u: &impl Fn([T; 2]) -> [T; 2],
    x: [T; 2],
    h: T,
) -> [T; 2] {
    let gamma = christoffel(m, x, h);
    let ux = u(x);
    let mut cov = [T::zero(); 2];
    for (k, c) in cov.iter_mut().enumerate() {
        let mut s = T::zero();
        for i in 0..2 {
            s = s + ux[i] * partial(|y| u(y)[k], x, i, h);
            for j in 0..2 {
                s = s + gamma[k][i][j] * ux[i] * ux[j];
            }
        }
        *c = s;
    }
    let g = m.metric(x);
    [g[0][0] * cov[0] + g[0][1] * cov[1], g[1][0] * cov[0] + g[1][1] * cov[1]]
}

/// gᵢⱼ = ⟨∂ᵢX, ∂ⱼX⟩ from centred differences of the embedding.
pub fn pullback_metric<T: Real>(chart: &Chart<T>, p: ChartPoint<T>, h: T) -> Metric<T> {
    let x = [p.c1, p.c2];
    let tangent = |i: usize| {
        let plus = shift(x, i, h);
        let minus = shift(x, i, -h);
        let xp = chart.embed_unchecked(ChartPoint::new(plus[0], plus[1])).x;
        let xm = chart.embed_unchecked(ChartPoint::new(minus[0], minus[1])).x;
        let two_h = T::lit(2.0) * h;
        [(xp[0] - xm[0]) / two_h, (xp[1] - xm[1]) / two_h, (xp[2] - xm[2]) / two_h]
    };
    let (t0, t1) = (tangent(0), tangent(1));
    let g01 = chart.inner(&t0, &t1);
    [[chart.inner(&t0, &t0), g01], [g01, chart.inner(&t1, &t1)]]
}

/// The velocity 1-form u* = −Y·w dc2 as a field over chart coordinates.
///
/// Panics if the profile cannot be evaluated at a stencil point.
pub fn velocity_form_field<'a, T: Real, P: Profile<T> + ?Sized>(
    chart: &'a Chart<T>,
    prof: &'a P,
) -> impl Fn([T; 2]) -> [T; 2] + 'a {
    move |x| {
        let y = prof.jet(x[0]).expect("profile evaluation").y;
        [T::zero(), -y * chart.weight(&x[0])]
    }
}

/// The velocity field u = −(Y/w) ∂/∂c2.
///
/// Panics if the profile cannot be evaluated at a stencil point.
pub fn velocity_vector_field<'a, T: Real, P: Profile<T> + ?Sized>(
    chart: &'a Chart<T>,
    prof: &'a P,
) -> impl Fn([T; 2]) -> [T; 2] + 'a {
    move |x| {
        let y = prof.jet(x[0]).expect("profile evaluation").y;
        [T::zero(), -y / chart.weight(&x[0])]
    }
}

/// Observed orders log₂(e₀/e₁) and log₂(e₁/e₂) for errors at h, h/2, h/4.
pub fn observed_orders<T: Real>(errors: [T; 3]) -> [T; 2] {
    [(errors[0] / errors[1]).log2(), (errors[1] / errors[2]).log2()]
}
