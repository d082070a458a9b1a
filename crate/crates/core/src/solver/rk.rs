use super::{check_tolerance, InitialData, ProfileSolution, Repr, RkStep};
use crate::error::{FlowError, Result};
use crate::ode::OdeSystem;
use crate::real::Real;

const C: [f64; 7] = [0.0, 1.0 / 5.0, 3.0 / 10.0, 4.0 / 5.0, 8.0 / 9.0, 1.0, 1.0];

const A: [[f64; 6]; 7] = [
    [0.0; 6],
    [1.0 / 5.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
    [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
    [19372.0 / 6561.0, -25360.0 / 2187.0, 64448.0 / 6561.0, -212.0 / 729.0, 0.0, 0.0],
    [9017.0 / 3168.0, -355.0 / 33.0, 46732.0 / 5247.0, 49.0 / 176.0, -5103.0 / 18656.0, 0.0],
    [35.0 / 384.0, 0.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0, 11.0 / 84.0],
];

// Difference between the fifth- and fourth-order weights.
const E: [f64; 7] = [
    71.0 / 57600.0,
    0.0,
    -71.0 / 16695.0,
    71.0 / 1920.0,
    -17253.0 / 339200.0,
    22.0 / 525.0,
    -1.0 / 40.0,
];

// Dense output weights.
const D: [f64; 7] = [
    -12715105075.0 / 11282082432.0,
    0.0,
    87487479700.0 / 32700410799.0,
    -10690763975.0 / 1880347072.0,
    701980252875.0 / 199316789632.0,
    -1453857185.0 / 822651844.0,
    69997945.0 / 29380423.0,
];

const SAFETY: f64 = 0.9;
const BETA: f64 = 0.04;
const FAC_MIN: f64 = 0.2;
const FAC_MAX: f64 = 10.0;
const MAX_STEPS: usize = 1_000_000;

fn deriv<T: Real>(system: &OdeSystem<T>, t: T, y: &[T], out: &mut [T]) {
    let n = y.len();
    out[..n - 1].copy_from_slice(&y[1..]);
    out[n - 1] = system.highest_derivative(t, y);
}

fn error_norm<T: Real>(err: &[T], y: &[T], ynew: &[T], tol: T) -> T {
    let n = T::lit(err.len() as f64);
    let s = err
        .iter()
        .zip(y.iter().zip(ynew))
        .map(|(&e, (&a, &b))| {
            let sc = tol + tol * a.abs().max(b.abs());
            (e / sc) * (e / sc)
        })
        .fold(T::zero(), |acc, v| acc + v);
    (s / n).sqrt()
}

/// Component `i` of the continuous extension at θ ∈ [0, 1].
pub(crate) fn dense<T: Real>(rcont: &[Vec<T>; 5], i: usize, theta: T) -> T {
    let one = T::one();
    let th1 = one - theta;
    rcont[0][i] + theta * (rcont[1][i] + th1 * (rcont[2][i] + theta * (rcont[3][i] + th1 * rcont[4][i])))
}

/// Adaptive Dormand–Prince 5(4) solve from `init.t0` to `t_end` with
/// atol = rtol = `tol` and PI step-size control.
pub fn solve_rk<T: Real>(
    system: &OdeSystem<T>,
    init: &InitialData<T>,
    t_end: T,
    tol: T,
) -> Result<ProfileSolution<T>> {
    check_tolerance(tol)?;
    init.check(system)?;
    system.check_interval(init.t0, t_end)?;
    let n = system.order;
    let c: Vec<T> = C.iter().map(|&v| T::lit(v)).collect();
    let a: Vec<Vec<T>> = A.iter().map(|row| row.iter().map(|&v| T::lit(v)).collect()).collect();
    let e: Vec<T> = E.iter().map(|&v| T::lit(v)).collect();
    let d: Vec<T> = D.iter().map(|&v| T::lit(v)).collect();

    let span = t_end - init.t0;
    let dir = if span >= T::zero() { T::one() } else { -T::one() };
    let mut t = init.t0;
    let mut y = init.values.clone();
    let mut k = vec![vec![T::zero(); n]; 7];
    deriv(system, t, &y, &mut k[0]);

    let mut steps = Vec::new();
    if span == T::zero() {
        let zero = vec![T::zero(); n];
        steps.push(RkStep { start: t, h: T::zero(), rcont: [y, zero.clone(), zero.clone(), zero.clone(), zero] });
        return Ok(ProfileSolution { system: system.clone(), t0: init.t0, t_end, repr: Repr::Rk(steps) });
    }

    // Initial step from the local scale of the problem.
    let radius = system.singularity_radius(t);
    let mut h = span.abs().min(T::lit(0.01) * radius.max(T::epsilon())).min(tol.powf(T::lit(0.2))) * dir;

    let expo1 = T::lit(0.2 - BETA * 0.75);
    let beta = T::lit(BETA);
    let safety = T::lit(SAFETY);
    let (fac_min, fac_max) = (T::lit(FAC_MIN), T::lit(FAC_MAX));
    let mut fac_old = T::lit(1e-4);
    let mut reject = false;
    let mut ytmp = vec![T::zero(); n];
    let mut ynew = vec![T::zero(); n];
    let mut err = vec![T::zero(); n];
    let mut kbuf = vec![T::zero(); n];

    for _ in 0..MAX_STEPS {
        let remaining = t_end - t;
        if remaining * dir <= T::zero() {
            break;
        }
        if (h * dir) > remaining * dir {
            h = remaining;
        }
        let h_floor = T::lit(16.0) * T::epsilon() * t.abs().max(T::one());
        if h.abs() < h_floor {
            return Err(FlowError::SingularApproach { t_reached: t.as_f64() });
        }

        for s in 1..7 {
            for i in 0..n {
                let mut acc = y[i];
                for j in 0..s {
                    acc = acc + h * a[s][j] * k[j][i];
                }
                ytmp[i] = acc;
            }
            deriv(system, t + c[s] * h, &ytmp, &mut kbuf);
            k[s].copy_from_slice(&kbuf);
            if s == 6 {
                ynew.copy_from_slice(&ytmp);
            }
        }
        for i in 0..n {
            err[i] = h * (0..7).fold(T::zero(), |acc, j| acc + e[j] * k[j][i]);
        }
        let en = error_norm(&err, &y, &ynew, tol);
        if !en.is_finite() {
            h = h * fac_min;
            reject = true;
            continue;
        }

        let fac11 = en.powf(expo1);
        if en <= T::one() {
            let mut fac = fac11 / fac_old.powf(beta);
            fac = (T::one() / fac_max).max((T::one() / fac_min).min(fac / safety));
            fac_old = en.max(T::lit(1e-4));

            let mut rcont: [Vec<T>; 5] = Default::default();
            rcont[0] = y.clone();
            rcont[1] = (0..n).map(|i| ynew[i] - y[i]).collect();
            rcont[2] = (0..n).map(|i| h * k[0][i] - rcont[1][i]).collect();
            rcont[3] = (0..n).map(|i| rcont[1][i] - h * k[6][i] - rcont[2][i]).collect();
            rcont[4] = (0..n).map(|i| h * (0..7).fold(T::zero(), |acc, j| acc + d[j] * k[j][i])).collect();
            steps.push(RkStep { start: t, h, rcont });

            let t_next = t + h;
            t = if (t_end - t_next) * dir <= T::zero() { t_end } else { t_next };
            y.copy_from_slice(&ynew);
            let k7 = k[6].clone();
            k[0] = k7;

            let mut hnew = h / fac;
            if reject {
                hnew = if dir > T::zero() { hnew.min(h) } else { hnew.max(h) };
            }
            reject = false;
            h = hnew;
        } else {
            h = h / (T::one() / fac_min).min(fac11 / safety);
            reject = true;
        }
    }
    if (t_end - t) * dir > T::zero() {
        return Err(FlowError::SingularApproach { t_reached: t.as_f64() });
    }
    Ok(ProfileSolution { system: system.clone(), t0: init.t0, t_end, repr: Repr::Rk(steps) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::Chart;
    use crate::ode::{build_ode, flat_limit_ode};
    use approx::assert_relative_eq;

    #[test]
    fn zero_data_gives_zero() {
        let sys = flat_limit_ode::<f64>();
        let sol = solve_rk(&sys, &InitialData::new(1.0, vec![0.0; 3]), 4.0, 1e-10).unwrap();
        for i in 0..=30 {
            let j = sol.eval(1.0 + 0.1 * i as f64).unwrap();
            assert_eq!((j.y, j.dy, j.d2y), (0.0, 0.0, 0.0));
        }
    }

    #[test]
    fn flat_solution_r() {
        // Y = r solves r Y‴ + 2Y″ − Y′/r + Y/r² = 0.
        let sys = flat_limit_ode::<f64>();
        let sol = solve_rk(&sys, &InitialData::new(1.0, vec![1.0, 1.0, 0.0]), 5.0, 1e-12).unwrap();
        let j = sol.eval(3.3).unwrap();
        assert_relative_eq!(j.y, 3.3, max_relative = 1e-10);
        assert_relative_eq!(j.dy, 1.0, max_relative = 1e-10);
    }

    #[test]
    fn rejects_bad_input() {
        let sys = build_ode(&Chart::sphere(1.0).unwrap());
        let init = InitialData::new(0.5, vec![0.0, 1.0, -1.0]);
        assert!(matches!(solve_rk(&sys, &init, 2.0, 1e-2), Err(FlowError::Precondition(_))));
        assert!(matches!(solve_rk(&sys, &init, 4.0, 1e-8), Err(FlowError::Domain { .. })));
        let short = InitialData::new(0.5, vec![0.0, 1.0]);
        assert!(matches!(solve_rk(&sys, &short, 2.0, 1e-8), Err(FlowError::Precondition(_))));
    }

    #[test]
    fn singular_endpoint_reports_approach() {
        let sys = build_ode(&Chart::sphere(1.0).unwrap());
        let init = InitialData::new(0.5, vec![0.0, 1.0, -1.0]);
        match solve_rk(&sys, &init, std::f64::consts::PI, 1e-8) {
            Err(FlowError::SingularApproach { t_reached }) => assert!(t_reached > 3.0),
            other => panic!("expected singular approach, got {other:?}"),
        }
    }
}
