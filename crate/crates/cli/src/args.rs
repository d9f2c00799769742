use std::path::PathBuf;

use anyhow::{bail, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use gaussbc::model::make_instance;
use gaussbc::simulate::DistributionFamily;
use gaussbc::Instance;

#[derive(Parser, Debug)]
#[command(
    name = "gaussbc",
    version,
    about = "Distortion regions for a bivariate Gaussian source over a Gaussian broadcast channel"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Write the frontier, its branches, the outer bounds and the separation baseline as CSV.
    Region(RegionArgs),
    /// Fixed-α̃ hybrid sweeps over β̃, one CSV per α̃.
    SweepHybrid(SweepArgs),
    /// Run the numerical invariant suite and emit a JSON report.
    Verify(VerifyArgs),
    /// Monte Carlo run of a scheme against its closed-form distortions.
    Simulate(SimulateArgs),
}

#[derive(Args, Debug, Clone, Default)]
pub struct InstanceArgs {
    /// Transmit power.
    #[arg(long = "P")]
    pub power: Option<f64>,
    /// Source variance.
    #[arg(long)]
    pub sigma2: Option<f64>,
    /// Source correlation, 0 <= rho < 1.
    #[arg(long)]
    pub rho: Option<f64>,
    /// Noise variance at the strong receiver.
    #[arg(long = "N1")]
    pub n1: Option<f64>,
    /// Noise variance at the weak receiver.
    #[arg(long = "N2")]
    pub n2: Option<f64>,
}

impl InstanceArgs {
    pub fn is_empty(&self) -> bool {
        [self.power, self.sigma2, self.rho, self.n1, self.n2]
            .iter()
            .all(Option::is_none)
    }

    pub fn instance(&self) -> Result<Instance> {
        let named = [
            ("--P", self.power),
            ("--sigma2", self.sigma2),
            ("--rho", self.rho),
            ("--N1", self.n1),
            ("--N2", self.n2),
        ];
        let missing: Vec<&str> = named.iter().filter(|(_, v)| v.is_none()).map(|(n, _)| *n).collect();
        if !missing.is_empty() {
            bail!("missing instance parameter(s): {}", missing.join(", "));
        }
        let v = |i: usize| named[i].1.unwrap();
        Ok(make_instance(v(0), v(1), v(2), v(3), v(4))?)
    }
}

#[derive(Args, Debug, Clone)]
pub struct CommonArgs {
    /// Seed recorded in outputs and used for any random draws.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Worker threads (default: available parallelism).
    #[arg(long)]
    pub threads: Option<usize>,
    /// key = value file mirroring the flags; flags take precedence.
    #[arg(long, value_name = "FILE")]
    pub config: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct RegionArgs {
    #[command(flatten)]
    pub instance: InstanceArgs,
    #[command(flatten)]
    pub common: CommonArgs,
    /// Output directory.
    #[arg(long, default_value = "out")]
    pub out: PathBuf,
    /// Points in each uniform grid (D1, α, λ).
    #[arg(long, default_value_t = 400)]
    pub grid: usize,
}

#[derive(Args, Debug)]
pub struct SweepArgs {
    #[command(flatten)]
    pub instance: InstanceArgs,
    #[command(flatten)]
    pub common: CommonArgs,
    #[arg(long, default_value = "out")]
    pub out: PathBuf,
    /// β̃ points per sweep.
    #[arg(long, default_value_t = 101)]
    pub grid: usize,
    /// Comma-separated α̃ values (default: ten values evenly spaced in [0, sqrt(P/σ²))).
    #[arg(long = "alpha-t", value_delimiter = ',')]
    pub alpha_t: Vec<f64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, serde::Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Profile {
    Fast,
    Full,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub instance: InstanceArgs,
    #[command(flatten)]
    pub common: CommonArgs,
    /// JSON report path (default: stdout).
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Profile::Full)]
    pub profile: Profile,
    /// Check this many seeded random instances instead of the given one.
    #[arg(long, value_name = "N")]
    pub random: Option<usize>,
    /// Perturb the reference frontier by 1e-6 relative (harness self-test).
    #[arg(long, hide = true)]
    pub corrupt_frontier: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, serde::Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SchemeKind {
    /// Frontier-achieving scheme at --d1.
    Optimal,
    /// Uncoded scheme at --d1 or with weight --alpha.
    Uncoded,
    /// Hybrid scheme with explicit --alpha-t, --beta-t and optional --q.
    Hybrid,
}

#[derive(Args, Debug)]
pub struct SimulateArgs {
    #[command(flatten)]
    pub instance: InstanceArgs,
    #[command(flatten)]
    pub common: CommonArgs,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = SchemeKind::Optimal)]
    pub scheme: SchemeKind,
    #[arg(long)]
    pub d1: Option<f64>,
    /// Uncoded S1 weight; S2 gets 1 - alpha.
    #[arg(long)]
    pub alpha: Option<f64>,
    #[arg(long = "alpha-t")]
    pub alpha_t: Option<f64>,
    #[arg(long = "beta-t")]
    pub beta_t: Option<f64>,
    /// Quantization noise variance (default: the smallest decodable one).
    #[arg(long)]
    pub q: Option<f64>,
    /// gaussian, uniform or laplace.
    #[arg(long, default_value = "gaussian", value_parser = parse_family)]
    pub family: DistributionFamily,
    /// Number of samples.
    #[arg(long, default_value_t = 100_000)]
    pub n: usize,
    /// Neighbor order of the entropy estimator.
    #[arg(long, default_value_t = 5)]
    pub k: usize,
}

fn parse_family(s: &str) -> Result<DistributionFamily, String> {
    s.parse()
}
