//! Velocity profiles Y(c1) and their derivative jets.

use crate::error::Result;
use crate::params::FlowParameters;
use crate::real::Real;

/// Value and first three derivatives of a profile at one point.
#[derive(Copy, Clone, Debug, PartialEq, Default)]
pub struct Jet<T> {
    pub y: T,
    pub dy: T,
    pub d2y: T,
    pub d3y: T,
}

impl<T: Real> Jet<T> {
    pub fn new(y: T, dy: T, d2y: T, d3y: T) -> Self {
        Self { y, dy, d2y, d3y }
    }

    pub fn zero() -> Self {
        Self::new(T::zero(), T::zero(), T::zero(), T::zero())
    }

    /// Derivative of order `k` (0..=3).
    pub fn derivative(&self, k: usize) -> T {
        match k {
            0 => self.y,
            1 => self.dy,
            2 => self.d2y,
            3 => self.d3y,
            _ => panic!("jet holds derivatives up to order 3"),
        }
    }

    pub fn scale(&self, s: T) -> Self {
        Self::new(self.y * s, self.dy * s, self.d2y * s, self.d3y * s)
    }
}

/// A profile t ↦ (Y, Y′, Y″, Y‴).
pub trait Profile<T: Real>: Sync {
    fn jet(&self, t: T) -> Result<Jet<T>>;
}

impl<T: Real, P: Profile<T> + ?Sized> Profile<T> for &P {
    fn jet(&self, t: T) -> Result<Jet<T>> {
        (**self).jet(t)
    }
}

/// Y ≡ 0.
#[derive(Copy, Clone, Debug, Default)]
pub struct ZeroProfile;

impl<T: Real> Profile<T> for ZeroProfile {
    fn jet(&self, _t: T) -> Result<Jet<T>> {
        Ok(Jet::zero())
    }
}

/// The Poiseuille profile h(t − origin) with h(λ) = α₀ + α₁λ − (α₂/2)λ².
#[derive(Copy, Clone, Debug, PartialEq)]
pub struct QuadraticProfile<T> {
    pub origin: T,
    pub alpha0: T,
    pub alpha1: T,
    pub alpha2: T,
}

impl<T: Real> QuadraticProfile<T> {
    pub fn new(origin: T, alpha0: T, alpha1: T, alpha2: T) -> Self {
        Self { origin, alpha0, alpha1, alpha2 }
    }

    /// The profile seeded by `params`, anchored at the inner radius.
    pub fn from_params(params: &FlowParameters<T>) -> Self {
        Self::new(params.delta, params.alpha0, params.alpha1, params.alpha2)
    }

    pub fn value(&self, t: T) -> T {
        let l = t - self.origin;
        self.alpha0 + self.alpha1 * l - T::lit(0.5) * self.alpha2 * l * l
    }
}

impl<T: Real> Profile<T> for QuadraticProfile<T> {
    fn jet(&self, t: T) -> Result<Jet<T>> {
        let l = t - self.origin;
        Ok(Jet::new(self.value(t), self.alpha1 - self.alpha2 * l, -self.alpha2, T::zero()))
    }
}

/// Profile backed by a closure returning the full jet.
pub struct FnProfile<F>(pub F);

impl<T: Real, F> Profile<T> for FnProfile<F>
where
    F: Fn(T) -> Jet<T> + Sync,
{
    fn jet(&self, t: T) -> Result<Jet<T>> {
        Ok((self.0)(t))
    }
}
