//! Initial-value solvers for the linear ODEs of [`crate::ode`].
//!
//! [`solve_rk`] is an adaptive Dormand–Prince 5(4) integrator with dense output;
//! [`solve_taylor`] marches a piecewise power series built from the series
//! expansion of the coefficients. Both return a [`ProfileSolution`] that can be
//! evaluated anywhere on the solved interval.

mod rk;
mod taylor;

pub use rk::solve_rk;
pub use taylor::{solve_taylor, DEFAULT_ORDER, MAX_ORDER, MIN_ORDER};

use crate::error::{FlowError, Result};
use crate::ode::OdeSystem;
use crate::profile::{Jet, Profile};
use crate::real::Real;
use crate::series::Series;

#[derive(Clone, Debug, PartialEq)]
pub struct InitialData<T> {
    pub t0: T,
    /// Y(t0), Y′(t0), … up to the derivative below the ODE order.
    pub values: Vec<T>,
}

impl<T: Real> InitialData<T> {
    pub fn new(t0: T, values: Vec<T>) -> Self {
        Self { t0, values }
    }

    fn check(&self, system: &OdeSystem<T>) -> Result<()> {
        if self.values.len() != system.order {
            return Err(FlowError::Precondition(format!(
                "initial data has {} values, ODE order is {}",
                self.values.len(),
                system.order
            )));
        }
        if let Some(v) = self.values.iter().find(|v| !v.is_finite()) {
            return Err(FlowError::Precondition(format!("initial value {v} is not finite")));
        }
        Ok(())
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Method {
    RungeKutta,
    Taylor,
}

/// One Taylor piece: Y(start + ξ) = Σ coeffs[j]·ξʲ for ξ between 0 and `len`.
#[derive(Clone, Debug, PartialEq)]
pub(crate) struct TaylorPiece<T> {
    pub start: T,
    pub len: T,
    pub coeffs: Vec<T>,
}

/// One accepted Dormand–Prince step with its continuous extension.
#[derive(Clone, Debug, PartialEq)]
pub(crate) struct RkStep<T> {
    pub start: T,
    pub h: T,
    pub rcont: [Vec<T>; 5],
}

#[derive(Clone, Debug, PartialEq)]
enum Repr<T> {
    Taylor(Vec<TaylorPiece<T>>),
    Rk(Vec<RkStep<T>>),
}

/// Dense solution of a linear ODE on the interval between `t0` and `t_end`.
#[derive(Clone, Debug, PartialEq)]
pub struct ProfileSolution<T> {
    system: OdeSystem<T>,
    t0: T,
    t_end: T,
    repr: Repr<T>,
}

impl<T: Real> ProfileSolution<T> {
    pub fn system(&self) -> &OdeSystem<T> {
        &self.system
    }

    pub fn method(&self) -> Method {
        match self.repr {
            Repr::Taylor(_) => Method::Taylor,
            Repr::Rk(_) => Method::RungeKutta,
        }
    }

    pub fn t0(&self) -> T {
        self.t0
    }

    pub fn t_end(&self) -> T {
        self.t_end
    }

    /// Closed interval covered, as (min, max).
    pub fn domain(&self) -> (T, T) {
        (self.t0.min(self.t_end), self.t0.max(self.t_end))
    }

    /// Number of Taylor pieces or RK steps.
    pub fn pieces(&self) -> usize {
        match &self.repr {
            Repr::Taylor(p) => p.len(),
            Repr::Rk(s) => s.len(),
        }
    }

    /// Start points of all pieces after the first.
    pub fn junctions(&self) -> Vec<T> {
        match &self.repr {
            Repr::Taylor(p) => p.iter().skip(1).map(|q| q.start).collect(),
            Repr::Rk(s) => s.iter().skip(1).map(|q| q.start).collect(),
        }
    }

    /// (Y, Y′, Y″, Y‴) at `t`.
    pub fn eval(&self, t: T) -> Result<Jet<T>> {
        let (lo, hi) = self.domain();
        if !(t >= lo && t <= hi) {
            return Err(FlowError::Domain { coordinate: "t", value: t.as_f64(), reason: "outside the solved interval" });
        }
        match &self.repr {
            Repr::Taylor(pieces) => {
                let piece = &pieces[self.locate(pieces.iter().map(|p| p.start), t)];
                Ok(taylor_jet(&piece.coeffs, t - piece.start))
            }
            Repr::Rk(steps) => {
                let step = &steps[self.locate(steps.iter().map(|s| s.start), t)];
                let theta = if step.h == T::zero() { T::zero() } else { (t - step.start) / step.h };
                let state: Vec<T> = (0..self.system.order).map(|i| rk::dense(&step.rcont, i, theta)).collect();
                Ok(jet_from_state(&self.system, t, &state))
            }
        }
    }

    /// Index of the last piece whose start is not past `t` in the march direction.
    fn locate(&self, starts: impl Iterator<Item = T>, t: T) -> usize {
        let forward = self.t_end >= self.t0;
        let mut idx = 0;
        for (i, s) in starts.enumerate() {
            let reached = if forward { s <= t } else { s >= t };
            if i == 0 || reached {
                idx = i;
            }
            if !reached {
                break;
            }
        }
        idx
    }
}

impl<T: Real> Profile<T> for ProfileSolution<T> {
    fn jet(&self, t: T) -> Result<Jet<T>> {
        self.eval(t)
    }
}

fn taylor_jet<T: Real>(coeffs: &[T], xi: T) -> Jet<T> {
    let mut d = [T::zero(); 4];
    for (order, slot) in d.iter_mut().enumerate() {
        let mut acc = T::zero();
        for j in (order..coeffs.len()).rev() {
            let mut falling = T::one();
            for m in 0..order {
                falling = falling * T::lit((j - m) as f64);
            }
            acc = acc * xi + coeffs[j] * falling;
        }
        *slot = acc;
    }
    Jet::new(d[0], d[1], d[2], d[3])
}

/// Completes a state (Y, …, Y⁽ⁿ⁻¹⁾) to a full jet using the ODE and, for
/// second-order systems, its derivative.
pub(crate) fn jet_from_state<T: Real>(system: &OdeSystem<T>, t: T, state: &[T]) -> Jet<T> {
    let n = system.order;
    let mut d = [T::zero(); 4];
    d[..n].copy_from_slice(&state[..n]);
    d[n] = system.highest_derivative(t, &d[..n]);
    if n == 2 {
        // Σ (c_k′ y_k + c_k y_{k+1}) = 0
        let c = system.coeffs(&Series::variable(t, 2));
        let mut s = T::zero();
        for (k, ck) in c.iter().enumerate() {
            s = s + ck.coeff(1) * d[k];
            if k < n {
                s = s + ck.coeff(0) * d[k + 1];
            }
        }
        d[3] = -s / c[n].coeff(0);
    }
    Jet::new(d[0], d[1], d[2], d[3])
}

pub(crate) fn check_tolerance<T: Real>(tol: T) -> Result<()> {
    if !(tol >= T::lit(1e-14) && tol <= T::lit(1e-3)) {
        return Err(FlowError::Precondition(format!("tolerance {tol} outside [1e-14, 1e-3]")));
    }
    Ok(())
}
