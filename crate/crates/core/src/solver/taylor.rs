use super::{taylor_jet, InitialData, ProfileSolution, Repr, TaylorPiece};
use crate::error::{FlowError, Result};
use crate::ode::OdeSystem;
use crate::real::Real;
use crate::series::Series;

pub const DEFAULT_ORDER: usize = 30;
pub const MIN_ORDER: usize = 10;
pub const MAX_ORDER: usize = 60;

const ORDER_INCREMENT: usize = 10;
const TAIL_TOL: f64 = 1e-12;
const MAX_PIECES: usize = 100_000;

/// Taylor coefficients y[0..=order] of the solution about `t` with the given
/// derivatives, from the series expansion of the ODE coefficients.
#[allow(clippy::needless_range_loop)]
fn local_series<T: Real>(system: &OdeSystem<T>, t: T, state: &[T], order: usize) -> Vec<T> {
    let n = system.order;
    let cs: Vec<Vec<T>> =
        system.coeffs(&Series::variable(t, order + 1)).into_iter().map(|s| s.coeffs().to_vec()).collect();
    let mut y = vec![T::zero(); order + 1];
    let mut fact = T::one();
    for (k, &v) in state.iter().enumerate() {
        if k > 1 {
            fact = fact * T::lit(k as f64);
        }
        y[k] = v / fact;
    }
    // (j+1)(j+2)…(j+k)
    let rising = |j: usize, k: usize| (1..=k).fold(T::one(), |acc, m| acc * T::lit((j + m) as f64));
    for m in 0..=order - n {
        let mut sum = T::zero();
        for (k, ck) in cs.iter().enumerate() {
            let first = if k == n { 1 } else { 0 };
            for i in first..=m {
                let j = m - i;
                sum = sum + ck[i] * y[j + k] * rising(j, k);
            }
        }
        y[m + n] = -sum / (cs[n][0] * rising(m, n));
    }
    y
}

/// Largest step for which the last two coefficients, weighted for the third
/// derivative, stay below the tail tolerance relative to the local size of
/// the solution measured on the convergence disc of radius `rho`.
fn tail_limited_step<T: Real>(y: &[T], rho: T) -> T {
    let ln_rho = rho.ln();
    let mut ln_m = T::neg_infinity();
    for (j, &c) in y.iter().enumerate() {
        if c != T::zero() {
            ln_m = ln_m.max(c.abs().ln() + T::lit(j as f64) * ln_rho);
        }
    }
    if ln_m == T::neg_infinity() {
        return T::infinity();
    }
    let tol = T::lit(TAIL_TOL).max(T::lit(4.0) * T::epsilon());
    let n = y.len() - 1;
    let mut u = T::infinity();
    for j in [n - 1, n] {
        let c = y[j];
        if c == T::zero() {
            continue;
        }
        let jf = T::lit(j as f64);
        let ln_u = (tol.ln() + ln_m - c.abs().ln() - jf * ln_rho - T::lit(3.0) * jf.ln()) / (jf - T::lit(3.0));
        u = u.min(ln_u.exp());
    }
    rho * u
}

/// Piecewise Taylor-series solve from `init.t0` to `t_end` with series of
/// degree `order`, escalated in steps of ten up to [`MAX_ORDER`] when the tail
/// criterion would force tiny steps.
pub fn solve_taylor<T: Real>(
    system: &OdeSystem<T>,
    init: &InitialData<T>,
    t_end: T,
    order: usize,
) -> Result<ProfileSolution<T>> {
    if !(MIN_ORDER..=MAX_ORDER).contains(&order) {
        return Err(FlowError::Precondition(format!("Taylor order {order} outside [{MIN_ORDER}, {MAX_ORDER}]")));
    }
    init.check(system)?;
    system.check_interval(init.t0, t_end)?;
    let n = system.order;
    let dir = if t_end >= init.t0 { T::one() } else { -T::one() };
    let half = T::lit(0.5);

    let mut t = init.t0;
    let mut state = init.values.clone();
    let mut pieces = Vec::new();

    loop {
        let remaining = (t_end - t) * dir;
        let rho = system.singularity_radius(t);
        let mut deg = order;
        let (coeffs, h) = loop {
            let coeffs = local_series(system, t, &state, deg);
            let cap = (half * rho).min(remaining);
            let h_tail = tail_limited_step(&coeffs, rho);
            if h_tail >= T::lit(0.1) * cap || remaining <= T::zero() {
                break (coeffs, cap.min(h_tail));
            }
            deg += ORDER_INCREMENT;
            if deg > MAX_ORDER {
                return Err(FlowError::NonConvergence { t: t.as_f64(), order: deg - ORDER_INCREMENT });
            }
        };
        if remaining <= T::zero() {
            if pieces.is_empty() {
                pieces.push(TaylorPiece { start: t, len: T::zero(), coeffs });
            }
            break;
        }
        let h_floor = T::lit(16.0) * T::epsilon() * t.abs().max(T::one());
        if !(h > h_floor) || pieces.len() >= MAX_PIECES {
            return Err(FlowError::SingularApproach { t_reached: t.as_f64() });
        }
        let step = h * dir;
        let jet = taylor_jet(&coeffs, step);
        pieces.push(TaylorPiece { start: t, len: step, coeffs });
        state = (0..n).map(|k| jet.derivative(k)).collect();
        t = if h >= remaining { t_end } else { t + step };
    }
    Ok(ProfileSolution { system: system.clone(), t0: init.t0, t_end, repr: Repr::Taylor(pieces) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::Chart;
    use crate::ode::{build_case3_ode, build_ode, flat_limit_ode};
    use approx::assert_relative_eq;

    #[test]
    fn flat_polynomial_solution_is_exact() {
        // Y = r is a solution; one piece reproduces it to rounding.
        let sys = flat_limit_ode::<f64>();
        let sol = solve_taylor(&sys, &InitialData::new(1.0, vec![1.0, 1.0, 0.0]), 1.4, 30).unwrap();
        let j = sol.eval(1.3).unwrap();
        assert_relative_eq!(j.y, 1.3, max_relative = 1e-13);
        assert_relative_eq!(j.dy, 1.0, max_relative = 1e-13);
    }

    #[test]
    fn eval_at_start_returns_initial_values() {
        let sys = build_ode(&Chart::sphere(1.0).unwrap());
        let init = InitialData::new(0.7, vec![0.3, 1.0, -1.0]);
        let sol = solve_taylor(&sys, &init, 2.0, DEFAULT_ORDER).unwrap();
        let j = sol.eval(0.7).unwrap();
        assert_eq!([j.y, j.dy, j.d2y], [0.3, 1.0, -1.0]);
    }

    #[test]
    fn case3_reaches_near_endpoint() {
        let a = 1.0;
        let sys = build_case3_ode(a).unwrap();
        let t0 = 3.0 * std::f64::consts::FRAC_PI_4;
        let sol = solve_taylor(&sys, &InitialData::new(t0, vec![0.2, 0.1]), std::f64::consts::PI - 1e-3, 30).unwrap();
        assert!(sol.eval(std::f64::consts::PI - 1e-3).unwrap().y.is_finite());
    }

    #[test]
    fn order_out_of_range() {
        let sys = flat_limit_ode::<f64>();
        let init = InitialData::new(1.0, vec![1.0, 1.0, 0.0]);
        assert!(solve_taylor(&sys, &init, 2.0, 5).is_err());
        assert!(solve_taylor(&sys, &init, 2.0, 61).is_err());
    }
}
