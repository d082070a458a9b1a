use super::pressure::reconstruct_pressure;
use super::RegionSpec;
use crate::error::{FlowError, Result};
use crate::exterior::vorticity_defect;
use crate::geometry::{Chart, ChartPoint};
use crate::ode::build_ode;
use crate::params::FlowParameters;
use crate::real::{max_abs, Real};
use crate::solver::{solve_rk, solve_taylor, InitialData, ProfileSolution, DEFAULT_ORDER};

pub const REPORT_POINTS: usize = 401;
pub const TAYLOR_ORDER: usize = DEFAULT_ORDER;

/// Residuals of a solved profile on an equispaced grid of the radial interval.
#[derive(Clone, Debug, PartialEq)]
pub struct ResidualReport<T> {
    pub grid: Vec<T>,
    /// ν·L[Y] at each grid point.
    pub defect: Vec<T>,
    pub max_abs_defect: T,
    /// max over the grid of ν·Σ|c_k Y⁽ᵏ⁾|.
    pub defect_scale: T,
    /// max over the grid of |ν·L[Y]| / (ν·Σ|c_k Y⁽ᵏ⁾|).
    pub max_relative_defect: T,
    /// Spread of the reconstructed pressure over homotopic paths.
    pub pressure_closure_error: T,
    /// max over the grid of |Y_rk − Y_taylor| / max(1, |Y_taylor|) for Y, Y′, Y″.
    pub cross_solver_deviation: T,
}

/// Solves the chart ODE with data (α₀, α₁, −α₂) at δ by both solvers and
/// reports residuals. Returns the Taylor solution.
///
/// The ODE involves neither ν nor β, so the returned solution does not depend
/// on them; they enter only the defect scaling and the pressure.
pub fn solve_flow<T: Real>(
    chart: &Chart<T>,
    params: &FlowParameters<T>,
    region: &RegionSpec<T>,
    tol: T,
) -> Result<(ProfileSolution<T>, ResidualReport<T>)> {
    params.validate(chart)?;
    region.validate(chart)?;
    if region.delta != params.delta {
        return Err(FlowError::Precondition(format!(
            "region delta {} differs from flow delta {}",
            region.delta, params.delta
        )));
    }
    let system = build_ode(chart);
    let init = InitialData::new(params.delta, params.initial_values().to_vec());
    let t_end = region.radial_end(chart);
    let taylor = solve_taylor(&system, &init, t_end, TAYLOR_ORDER)?;
    let rk = solve_rk(&system, &init, t_end, tol)?;

    let n = REPORT_POINTS - 1;
    let grid: Vec<T> = (0..=n)
        .map(|i| if i == n { t_end } else { params.delta + (t_end - params.delta) * T::lit(i as f64 / n as f64) })
        .collect();
    let mut defect = Vec::with_capacity(grid.len());
    let mut defect_scale = T::zero();
    let mut max_relative_defect = T::zero();
    let mut cross = T::zero();
    for &t in &grid {
        let p = ChartPoint::new(t, T::zero());
        let d = vorticity_defect(chart, params, &taylor, p)?;
        let jt = taylor.eval(t)?;
        let scale = params.nu * system.residual_scale(t, &jt);
        defect_scale = defect_scale.max(scale);
        if scale > T::zero() {
            max_relative_defect = max_relative_defect.max(d.abs() / scale);
        } else if d != T::zero() {
            max_relative_defect = T::infinity();
        }
        defect.push(d);
        let jr = rk.eval(t)?;
        for (x, y) in [(jr.y, jt.y), (jr.dy, jt.dy), (jr.d2y, jt.d2y)] {
            cross = cross.max((x - y).abs() / T::one().max(y.abs()));
        }
    }

    let span = t_end - params.delta;
    let quarter = T::lit(0.25);
    let three_q = T::lit(0.75);
    let path = [
        ChartPoint::new(params.delta + quarter * span, quarter * region.theta_extent),
        ChartPoint::new(params.delta + three_q * span, three_q * region.theta_extent),
    ];
    let pressure = reconstruct_pressure(chart, params, &taylor, region, &path)?;

    let report = ResidualReport {
        max_abs_defect: max_abs(defect.iter().copied()),
        grid,
        defect,
        defect_scale,
        max_relative_defect,
        pressure_closure_error: pressure.closure_error,
        cross_solver_deviation: cross,
    };
    Ok((taylor, report))
}
