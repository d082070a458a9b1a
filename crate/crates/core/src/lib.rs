//! Stationary parallel laminar Navier–Stokes flows on the sphere S²(a²) and
//! the hyperbolic plane H²(−a²).
//!
//! The crate builds the closed-form differential operators acting on parallel
//! profiles, solves the governing third-order linear ODEs, certifies that
//! quadratic (Poiseuille) profiles cannot be stationary, reconstructs
//! pressures, and samples velocity fields in ambient coordinates.
//!
//! Everything is generic over the scalar type through [`Real`]; the `*64`
//! aliases fix it to `f64`.

// `!(x > 0)` style checks are deliberate: they reject NaN as well.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod analysis;
pub mod error;
pub mod exterior;
pub mod geometry;
pub mod ode;
pub mod params;
pub mod profile;
pub mod quadrature;
pub mod real;
pub mod series;
pub mod solver;

pub use error::{FlowError, Result};
pub use geometry::{Chart, ChartKind, ChartPoint, EmbeddedPoint, FramePair};
pub use params::{FlowParameters, RotationConvention};
pub use profile::{Jet, Profile, QuadraticProfile, ZeroProfile};
pub use real::Real;
pub use solver::{InitialData, ProfileSolution};

pub type Chart64 = Chart<f64>;
pub type ChartPoint64 = ChartPoint<f64>;
pub type FlowParameters64 = FlowParameters<f64>;
pub type ProfileSolution64 = ProfileSolution<f64>;
pub type Certificate64 = analysis::Certificate<f64>;
pub type RegionSpec64 = analysis::RegionSpec<f64>;
pub type ResidualReport64 = analysis::ResidualReport<f64>;
