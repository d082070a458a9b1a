use std::cell::RefCell;

use super::RegionSpec;
use crate::error::{FlowError, Result};
use crate::exterior::momentum_oneform;
use crate::geometry::{Chart, ChartPoint};
use crate::params::FlowParameters;
use crate::profile::Profile;
use crate::quadrature::{integrate, Quadrature};
use crate::real::Real;

const ABS_TOL: f64 = 1e-14;
const REL_TOL: f64 = 1e-13;

#[derive(Clone, Debug, PartialEq)]
pub struct PressureReconstruction<T> {
    /// P at each vertex of the requested path, with P = 0 at the first.
    pub samples: Vec<T>,
    /// P at the common endpoint along: the requested path, radial-first,
    /// angular-first, and the straight segment.
    pub path_values: [T; 4],
    /// Largest pairwise difference of `path_values`.
    pub closure_error: T,
    /// Sum of the two largest per-path quadrature error estimates, bounding
    /// any pairwise difference caused by quadrature alone.
    pub quadrature_error: T,
}

/// ∫ α along the straight chart segment from `p` to `q`, α the momentum 1-form.
pub fn line_integral<T: Real, P: Profile<T> + ?Sized>(
    chart: &Chart<T>,
    params: &FlowParameters<T>,
    prof: &P,
    p: ChartPoint<T>,
    q: ChartPoint<T>,
) -> Result<Quadrature<T>> {
    let d1 = q.c1 - p.c1;
    let d2 = q.c2 - p.c2;
    let failure = RefCell::new(None);
    let f = |s: T| {
        let x = ChartPoint::new(p.c1 + s * d1, p.c2 + s * d2);
        match momentum_oneform(chart, params, prof, x) {
            Ok(alpha) => alpha.a * d1 + alpha.b * d2,
            Err(e) => {
                failure.borrow_mut().get_or_insert(e);
                T::nan()
            }
        }
    };
    let q = integrate(f, T::zero(), T::one(), T::lit(ABS_TOL), T::lit(REL_TOL));
    match failure.into_inner() {
        Some(e) => Err(e),
        None => Ok(q),
    }
}

/// The two L-shaped paths between `p` and `q`: radial leg first, then angular
/// leg first.
pub fn corner_paths<T: Real>(p: ChartPoint<T>, q: ChartPoint<T>) -> [Vec<ChartPoint<T>>; 2] {
    [vec![p, ChartPoint::new(q.c1, p.c2), q], vec![p, ChartPoint::new(p.c1, q.c2), q]]
}

fn integrate_path<T: Real, P: Profile<T> + ?Sized>(
    chart: &Chart<T>,
    params: &FlowParameters<T>,
    prof: &P,
    path: &[ChartPoint<T>],
) -> Result<(Vec<T>, T)> {
    let mut values = vec![T::zero()];
    let mut err = T::zero();
    for w in path.windows(2) {
        let seg = line_integral(chart, params, prof, w[0], w[1])?;
        values.push(values[values.len() - 1] - seg.value);
        err = err + seg.error;
    }
    Ok((values, err))
}

/// P = −∫α along `path`, plus the spread of the endpoint value over homotopic
/// paths within the sector.
pub fn reconstruct_pressure<T: Real, P: Profile<T> + ?Sized>(
    chart: &Chart<T>,
    params: &FlowParameters<T>,
    prof: &P,
    region: &RegionSpec<T>,
    path: &[ChartPoint<T>],
) -> Result<PressureReconstruction<T>> {
    if path.len() < 2 {
        return Err(FlowError::Precondition("pressure path needs at least two points".into()));
    }
    for p in path {
        if !region.contains(chart, *p) {
            let (coordinate, value) = if p.c1 > region.delta && p.c1 <= region.radial_end(chart) {
                ("c2", p.c2)
            } else {
                ("c1", p.c1)
            };
            return Err(FlowError::Domain { coordinate, value: value.as_f64(), reason: "path leaves the region" });
        }
    }
    let (start, end) = (path[0], path[path.len() - 1]);
    let [radial, angular] = corner_paths(start, end);
    let straight = [start, end];

    let (samples, e0) = integrate_path(chart, params, prof, path)?;
    let mut finals = [samples[samples.len() - 1]; 4];
    let mut errs = [e0; 4];
    for (i, alt) in [&radial[..], &angular[..], &straight[..]].into_iter().enumerate() {
        let (v, e) = integrate_path(chart, params, prof, alt)?;
        finals[i + 1] = v[v.len() - 1];
        errs[i + 1] = e;
    }
    let hi = finals.iter().fold(T::neg_infinity(), |m, &v| m.max(v));
    let lo = finals.iter().fold(T::infinity(), |m, &v| m.min(v));
    let mut sorted = errs;
    sorted.sort_by(|x, y| y.partial_cmp(x).unwrap_or(std::cmp::Ordering::Equal));
    Ok(PressureReconstruction {
        samples,
        path_values: finals,
        closure_error: hi - lo,
        quadrature_error: sorted[0] + sorted[1],
    })
}
