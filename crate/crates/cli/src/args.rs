use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

#[derive(Debug, Parser)]
#[command(name = "curvekit", version, about = "Space curves from curvature and torsion, Mannheim partners and generating curves")]
pub struct Cli {
    /// JSON file whose keys mirror the flags (command-line flags win)
    #[arg(long, global = true, value_name = "PATH", value_parser = path_arg)]
    pub config: Option<PathBuf>,
    /// Exit 1 when a check's verdict is false
    #[arg(long, global = true)]
    pub strict: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Integrate a named family into a curve CSV
    Gen(GenArgs),
    /// Integrate a profile JSON into a curve CSV
    Reconstruct(ReconstructArgs),
    /// Estimate the Frenet apparatus of a curve CSV
    Frenet(FrenetArgs),
    #[command(subcommand)]
    Mannheim(MannheimCommand),
    #[command(subcommand)]
    Generating(GeneratingCommand),
    /// Three-panel SVG projection of a curve, with an optional partner
    Plot(PlotArgs),
}

#[derive(Debug, Args)]
pub struct GenArgs {
    /// circle, helix, salkowski, mannheim_t, mannheim_b or generator
    #[arg(long)]
    pub family: String,
    /// Family parameter as name=value; repeatable
    #[arg(long = "param", value_name = "NAME=VALUE", value_parser = param_arg)]
    pub params: Vec<(String, f64)>,
    #[arg(long, value_parser = positive)]
    pub s_max: f64,
    #[arg(long, default_value_t = 1e-3, value_parser = positive)]
    pub step: f64,
    #[arg(long, value_parser = path_arg)]
    pub out: PathBuf,
    /// Also write the integrated apparatus (exact κ, τ)
    #[arg(long, value_name = "PATH", value_parser = path_arg)]
    pub apparatus: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ReconstructArgs {
    /// Profile JSON (named or tabulated)
    #[arg(long, value_parser = path_arg)]
    pub profile: PathBuf,
    /// Overrides the profile's own step
    #[arg(long, value_parser = positive)]
    pub step: Option<f64>,
    #[arg(long, value_parser = path_arg)]
    pub out: PathBuf,
    #[arg(long, value_name = "PATH", value_parser = path_arg)]
    pub apparatus: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct FrenetArgs {
    /// Curve CSV
    #[arg(long = "in", value_parser = path_arg)]
    pub input: PathBuf,
    #[arg(long, value_parser = path_arg)]
    pub out: PathBuf,
    #[arg(long, default_value_t = curvekit::curvespace::KAPPA_MIN, value_parser = positive)]
    pub kappa_min: f64,
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
pub struct LambdaArgs {
    /// Fit a constant offset (`auto`; needs v ≡ 0)
    #[arg(long, value_parser = ["auto"])]
    pub lambda: Option<String>,
    /// Offset at s = 0; λ(s) = λ₀ − ∫v
    #[arg(long, allow_negative_numbers = true)]
    pub lambda0: Option<f64>,
}

#[derive(Debug, Args)]
pub struct TolArgs {
    /// Predicate tolerance (else CURVEKIT_TOL_PRED, else by provenance)
    #[arg(long, value_parser = positive)]
    pub tol_pred: Option<f64>,
    /// Collinearity tolerance
    #[arg(long, value_parser = positive)]
    pub tol_col: Option<f64>,
}

#[derive(Debug, Subcommand)]
pub enum MannheimCommand {
    /// Predicate report for an apparatus CSV
    Check(CheckArgs),
    /// Build and verify the partner of a curve CSV
    Partner(PartnerArgs),
}

#[derive(Debug, Args)]
pub struct CheckArgs {
    /// Apparatus CSV
    #[arg(long = "in", value_parser = path_arg)]
    pub input: PathBuf,
    /// u=<expr>,v=<expr>,w=<expr>
    #[arg(long)]
    pub field: String,
    #[command(flatten)]
    pub lambda: LambdaArgs,
    #[command(flatten)]
    pub tol: TolArgs,
    /// Report JSON (stdout if absent)
    #[arg(long, value_parser = path_arg)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct PartnerArgs {
    /// Curve CSV
    #[arg(long = "in", value_parser = path_arg)]
    pub input: PathBuf,
    /// Apparatus CSV of the same curve (estimated from the curve if absent)
    #[arg(long, value_parser = path_arg)]
    pub apparatus: Option<PathBuf>,
    #[arg(long)]
    pub field: String,
    #[command(flatten)]
    pub lambda: LambdaArgs,
    #[command(flatten)]
    pub tol: TolArgs,
    /// Partner curve CSV, resampled to unit speed
    #[arg(long, value_parser = path_arg)]
    pub out: PathBuf,
    /// Report JSON (stdout if absent)
    #[arg(long, value_parser = path_arg)]
    pub report: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum GeneratingCommand {
    /// Build the generating curve K of a curve CSV
    Build(BuildArgs),
    /// Classify an apparatus CSV by its curvature profile
    Classify(ClassifyArgs),
}

#[derive(Debug, Args)]
pub struct BuildArgs {
    #[arg(long = "in", value_parser = path_arg)]
    pub input: PathBuf,
    #[arg(long, value_parser = path_arg)]
    pub apparatus: Option<PathBuf>,
    /// Angle between T̄ and −N at the start, radians
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub phi0: f64,
    #[arg(long, value_parser = path_arg)]
    pub out: PathBuf,
    #[arg(long, value_parser = path_arg)]
    pub report: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ClassifyArgs {
    #[arg(long = "in", value_parser = path_arg)]
    pub input: PathBuf,
    /// Constant field with v = 0, e.g. u=1,w=0 (generating curve test if absent)
    #[arg(long)]
    pub field: Option<String>,
    #[arg(long, value_parser = path_arg)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct PlotArgs {
    #[arg(long = "in", value_parser = path_arg)]
    pub input: PathBuf,
    /// Second curve CSV drawn dashed
    #[arg(long, value_parser = path_arg)]
    pub partner: Option<PathBuf>,
    #[arg(long, value_parser = path_arg)]
    pub out: PathBuf,
}

fn path_arg(s: &str) -> Result<PathBuf, String> {
    if s.is_empty() {
        Err("path must not be empty".into())
    } else {
        Ok(PathBuf::from(s))
    }
}

fn positive(s: &str) -> Result<f64, String> {
    match s.parse::<f64>() {
        Ok(x) if x > 0.0 && x.is_finite() => Ok(x),
        _ => Err(format!("expected a positive number, got {s:?}")),
    }
}

fn param_arg(s: &str) -> Result<(String, f64), String> {
    let (k, v) = s.split_once('=').ok_or_else(|| format!("expected NAME=VALUE, got {s:?}"))?;
    let v = v.trim().parse::<f64>().map_err(|_| format!("bad value in {s:?}"))?;
    if k.trim().is_empty() {
        return Err(format!("empty name in {s:?}"));
    }
    Ok((k.trim().to_string(), v))
}
