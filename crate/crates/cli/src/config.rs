use std::path::PathBuf;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use laminar::analysis::RegionSpec;
use laminar::{Chart, ChartKind, FlowParameters, RotationConvention};

#[derive(Parser, Debug)]
#[command(name = "laminar", version, about = "Parallel laminar flows on the sphere and the hyperbolic plane")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Solve the profile ODE and write r,Y,dY,d2Y,defect samples.
    Solve(SolveArgs),
    /// Decide non-existence of a quadratic profile and write a JSON certificate.
    Certify(CertifyArgs),
    /// Run a seeded randomized sweep.
    Verify(VerifyArgs),
    /// Sample the ambient velocity field over the region.
    ExportField(ExportArgs),
    /// Check the a → 0 limit of the polar-chart ODEs.
    Limits(LimitsArgs),
}

#[derive(ValueEnum, Copy, Clone, Debug, PartialEq, Eq)]
pub enum ChartName {
    Sphere,
    HyperbolicPolar,
    HyperbolicEdge,
}

impl ChartName {
    pub fn kind(self) -> ChartKind {
        match self {
            ChartName::Sphere => ChartKind::SpherePolar,
            ChartName::HyperbolicPolar => ChartKind::HyperbolicPolar,
            ChartName::HyperbolicEdge => ChartKind::HyperbolicCartesian,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            ChartName::Sphere => "sphere",
            ChartName::HyperbolicPolar => "hyperbolic-polar",
            ChartName::HyperbolicEdge => "hyperbolic-edge",
        }
    }
}

#[derive(ValueEnum, Copy, Clone, Debug, Default, PartialEq, Eq)]
pub enum RotationArg {
    #[default]
    Weighted,
    Hodge,
}

impl From<RotationArg> for RotationConvention {
    fn from(r: RotationArg) -> Self {
        match r {
            RotationArg::Weighted => RotationConvention::Weighted,
            RotationArg::Hodge => RotationConvention::Hodge,
        }
    }
}

#[derive(Args, Debug, Clone)]
pub struct FlowArgs {
    #[arg(long, value_enum)]
    pub chart: ChartName,
    /// Curvature scale; K = a² on the sphere and −a² on the hyperbolic plane.
    #[arg(long)]
    pub a: f64,
    #[arg(long, default_value_t = 1.0)]
    pub nu: f64,
    /// Rotation speed; used on the sphere only.
    #[arg(long, default_value_t = 0.0)]
    pub beta: f64,
    /// Inner radius in radians of arc length; must be 0 on hyperbolic-edge.
    #[arg(long, default_value_t = 0.0)]
    pub delta: f64,
    #[arg(long, default_value_t = 0.0)]
    pub alpha0: f64,
    #[arg(long, default_value_t = 0.0)]
    pub alpha1: f64,
    #[arg(long, default_value_t = 0.0)]
    pub alpha2: f64,
    #[arg(long, value_enum, default_value_t = RotationArg::Weighted)]
    pub rotation_convention: RotationArg,
}

impl FlowArgs {
    pub fn chart(&self) -> Result<Chart<f64>> {
        Chart::new(self.chart.kind(), self.a).with_context(|| format!("invalid --a {} for chart {}", self.a, self.chart.label()))
    }

    pub fn params(&self) -> FlowParameters<f64> {
        FlowParameters::new(self.nu, self.beta, self.delta, self.alpha0, self.alpha1, self.alpha2)
            .with_rotation(self.rotation_convention.into())
    }

    /// Chart and parameters, validated together.
    pub fn build(&self) -> Result<(Chart<f64>, FlowParameters<f64>)> {
        let chart = self.chart()?;
        let params = self.params();
        params.validate(&chart).context("invalid flow parameters")?;
        Ok((chart, params))
    }
}

#[derive(Args, Debug, Clone)]
pub struct RegionArgs {
    /// Angular extent of the sector (or s-extent on hyperbolic-edge), in (0, 2π).
    #[arg(long, default_value_t = 1.0)]
    pub theta_extent: f64,
    /// Radial thickness of the region; omit for the largest admissible one.
    #[arg(long)]
    pub epsilon0: Option<f64>,
}

impl RegionArgs {
    pub fn region(&self, chart: &Chart<f64>, delta: f64) -> Result<RegionSpec<f64>> {
        let region = RegionSpec::new(delta, self.theta_extent, self.epsilon0);
        region.validate(chart).context("invalid region")?;
        Ok(region)
    }
}

fn check_tol(tol: f64) -> Result<()> {
    if !(1e-14..=1e-3).contains(&tol) {
        bail!("--tol must lie in [1e-14, 1e-3] (got {tol})");
    }
    Ok(())
}

#[derive(Args, Debug)]
#[command(allow_negative_numbers = true)]
pub struct SolveArgs {
    #[command(flatten)]
    pub flow: FlowArgs,
    #[command(flatten)]
    pub region: RegionArgs,
    #[arg(long, default_value_t = 1e-10)]
    pub tol: f64,
    /// CSV output; stdout if omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Optional JSON residual report.
    #[arg(long)]
    pub report: Option<PathBuf>,
}

impl SolveArgs {
    pub fn check(&self) -> Result<()> {
        check_tol(self.tol)
    }
}

#[derive(Args, Debug)]
#[command(allow_negative_numbers = true)]
pub struct CertifyArgs {
    #[command(flatten)]
    pub flow: FlowArgs,
    /// JSON output; stdout if omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(ValueEnum, Copy, Clone, Debug, PartialEq, Eq)]
pub enum Suite {
    /// Certificates over random quadratic profiles in all five settings.
    Nonexistence,
    /// ODE solves on random data with residual, cross-solver and pressure checks.
    Existence,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[arg(long, value_enum, default_value_t = Suite::Nonexistence)]
    pub suite: Suite,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Draws per setting.
    #[arg(long, default_value_t = 1000)]
    pub draws: usize,
    /// Worker threads; output order does not depend on it.
    #[arg(long, default_value_t = 1)]
    pub jobs: usize,
    #[arg(long, default_value_t = 1e-10)]
    pub tol: f64,
    /// CSV output; stdout if omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

impl VerifyArgs {
    pub fn check(&self) -> Result<()> {
        if self.jobs == 0 {
            bail!("--jobs must be at least 1");
        }
        if self.draws == 0 {
            bail!("--draws must be at least 1");
        }
        check_tol(self.tol)
    }
}

#[derive(ValueEnum, Copy, Clone, Debug, PartialEq, Eq)]
pub enum ProfileArg {
    /// Solution of the profile ODE.
    Solved,
    /// The quadratic α₀ + α₁λ − (α₂/2)λ².
    Quadratic,
    Zero,
}

#[derive(Args, Debug)]
#[command(allow_negative_numbers = true)]
pub struct ExportArgs {
    #[command(flatten)]
    pub flow: FlowArgs,
    #[command(flatten)]
    pub region: RegionArgs,
    #[arg(long, value_enum, default_value_t = ProfileArg::Solved)]
    pub profile: ProfileArg,
    #[arg(long, default_value_t = 1e-10)]
    pub tol: f64,
    /// Samples along c1.
    #[arg(long, default_value_t = 21)]
    pub n1: usize,
    /// Samples along c2.
    #[arg(long, default_value_t = 21)]
    pub n2: usize,
    /// Omit the Poincaré-disc columns on hyperbolic charts.
    #[arg(long)]
    pub no_disc: bool,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

impl ExportArgs {
    pub fn check(&self) -> Result<()> {
        if self.n1 < 2 || self.n2 < 2 {
            bail!("--n1 and --n2 must be at least 2");
        }
        check_tol(self.tol)
    }
}

#[derive(Args, Debug)]
#[command(allow_negative_numbers = true)]
pub struct LimitsArgs {
    /// Strictly descending list of a values.
    #[arg(long, value_delimiter = ',', default_values_t = [1e-1, 1e-2, 1e-3, 1e-4])]
    pub a_values: Vec<f64>,
    #[arg(long, default_value_t = 0.5)]
    pub r_min: f64,
    #[arg(long, default_value_t = 2.0)]
    pub r_max: f64,
    #[arg(long)]
    pub out: Option<PathBuf>,
}
