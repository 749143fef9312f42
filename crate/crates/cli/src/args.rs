//! Command-line grammar.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "su11",
    version,
    about = "Phase sensitivity of a modified SU(1,1) interferometer with homodyne detection"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate one operating point (JSON by default)
    Point(PointArgs),
    /// Optimal beam-splitter transmittance against gain
    FigEtaOpt(FigEtaOptArgs),
    /// Ratio of the quantum Cramér-Rao bound to the optimal sensitivity
    FigQcrbRatio(FigQcrbRatioArgs),
    /// Maximal tolerable loss against gain
    FigLmax(FigLmaxArgs),
    /// Sweep one configuration parameter
    Sweep(SweepArgs),
    /// Run the cross-implementation validation suite
    Validate(ValidateArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Args)]
pub struct OutputArgs {
    /// Write to this file instead of standard output
    #[arg(long, value_name = "PATH")]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
}

/// Physical configuration. Angles accept radians or `pi`-fractions such as
/// `pi/2`, `3pi/4` or `-pi/3`.
#[derive(Debug, Clone, Default, Args)]
pub struct ConfigArgs {
    /// key=value file with the same names as these flags; flags win
    #[arg(long, value_name = "PATH")]
    pub config: Option<PathBuf>,
    /// Coherent amplitude |alpha| of each input
    #[arg(long, allow_negative_numbers = true)]
    pub alpha: Option<f64>,
    /// Mean photon number |alpha|^2 of each input
    #[arg(long, allow_negative_numbers = true)]
    pub alpha2: Option<f64>,
    /// OPA gain
    #[arg(long, allow_negative_numbers = true)]
    pub g: Option<f64>,
    /// Beam-splitter transmittance
    #[arg(long, allow_negative_numbers = true)]
    pub eta: Option<f64>,
    /// Phase shift
    #[arg(long, allow_hyphen_values = true)]
    pub theta: Option<String>,
    /// Loss rate on both arms
    #[arg(long = "L", allow_negative_numbers = true)]
    pub loss: Option<f64>,
    /// Loss rate on the phase arm
    #[arg(long = "L1", allow_negative_numbers = true)]
    pub loss1: Option<f64>,
    /// Loss rate on the reference arm
    #[arg(long = "L2", allow_negative_numbers = true)]
    pub loss2: Option<f64>,
    /// Thermal photon number of the loss environment
    #[arg(long = "n-th", allow_negative_numbers = true)]
    pub n_th: Option<f64>,
    /// Phase of the first input
    #[arg(long, allow_hyphen_values = true)]
    pub phi: Option<String>,
    /// Phase of the second input
    #[arg(long, allow_hyphen_values = true)]
    pub delta: Option<String>,
}

#[derive(Debug, Args)]
pub struct PointArgs {
    #[command(flatten)]
    pub config: ConfigArgs,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct FigEtaOptArgs {
    /// Gain grid
    #[arg(long, value_name = "START:STOP:POINTS", default_value = "0:3:301")]
    pub grid: String,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct FigQcrbRatioArgs {
    /// Gain grid
    #[arg(long, value_name = "START:STOP:POINTS", default_value = "0:3:31")]
    pub grid: String,
    /// Grid of mean photon numbers |alpha|^2
    #[arg(long, value_name = "START:STOP:POINTS", default_value = "1:1000:112")]
    pub alpha2_grid: String,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct FigLmaxArgs {
    /// Gain grid
    #[arg(long, value_name = "START:STOP:POINTS", default_value = "0.01:3:300")]
    pub grid: String,
    /// Comma-separated mean photon numbers, one column each
    #[arg(long, value_name = "LIST", default_value = "10,100,1000")]
    pub alpha2: String,
    /// Thermal photon number of the loss environment
    #[arg(long = "n-th", default_value_t = 0.0)]
    pub n_th: f64,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SweepParam {
    G,
    Eta,
    Theta,
    #[value(name = "L")]
    Loss,
    #[value(name = "alpha_mag")]
    AlphaMag,
    #[value(name = "n_th")]
    NTh,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    /// Parameter to sweep
    #[arg(long, value_enum)]
    pub param: SweepParam,
    /// Sweep range; defaults depend on the parameter
    #[arg(long, value_name = "START:STOP:POINTS")]
    pub grid: Option<String>,
    #[command(flatten)]
    pub config: ConfigArgs,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Level {
    Quick,
    Full,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Fault {
    /// Beam splitter without the factor i on the reflected arm
    RealBeamSplitter,
}

#[derive(Debug, Args)]
pub struct ValidateArgs {
    #[arg(long, value_enum, default_value = "quick")]
    pub level: Level,
    /// Run the suite against a deliberately broken pipeline
    #[arg(long, value_enum, hide = true)]
    pub inject_fault: Option<Fault>,
    #[command(flatten)]
    pub output: OutputArgs,
}
