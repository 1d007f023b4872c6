use std::path::PathBuf;

use clap::{ArgAction, Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "maillet", version, about = "Generalized Maillet matrices: construction, determinants, spectra and checks")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print A_{p,m} or A_p[c].
    Matrix(MatrixArgs),
    /// Exact determinant by one or all methods.
    #[command(disable_help_flag = true)]
    Det(DetArgs),
    /// Closed-form eigenvalues with exact-zero flags and symmetry classes.
    #[command(disable_help_flag = true)]
    Spectrum(SpectrumArgs),
    /// Run the verification suite.
    #[command(disable_help_flag = true)]
    Verify(VerifyArgs),
    /// Scan the (p, m) grid for vanishing determinants.
    Scan(ScanArgs),
    /// Classical Maillet determinant and its p-power divisibility.
    Maillet(MailletArgs),
    /// Zero-order criterion for the reduced tau.
    Wavelet(WaveletArgs),
}

/// Either an exponent `m` or a file with the entry vector `c`.
#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
pub struct EntrySource {
    /// Exponent m >= 1, selecting c = [k^m].
    #[arg(short = 'm', value_name = "M")]
    pub m: Option<u32>,
    /// File with one integer per line, exactly p-1 lines.
    #[arg(long = "c-file", value_name = "PATH")]
    pub c_file: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MatrixFormat {
    Text,
    Json,
}

#[derive(Debug, Args)]
pub struct MatrixArgs {
    /// Odd prime p
    #[arg(short = 'p', value_name = "P")]
    pub p: u64,
    #[command(flatten)]
    pub source: EntrySource,
    #[arg(long, value_enum, default_value_t = MatrixFormat::Text)]
    pub format: MatrixFormat,
    /// Same as --format json.
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum DetMethod {
    Bareiss,
    Crt,
    Spectral,
    All,
}

#[derive(Debug, Args)]
pub struct DetArgs {
    /// Odd prime p
    #[arg(short = 'p', value_name = "P")]
    pub p: u64,
    #[command(flatten)]
    pub source: EntrySource,
    #[arg(long, value_enum, default_value_t = DetMethod::All)]
    pub method: DetMethod,
    /// Primitive root for the spectral method (default: smallest).
    #[arg(short = 'h', long = "primitive", value_name = "H")]
    pub h: Option<u64>,
    #[arg(long)]
    pub json: bool,
    #[arg(long, action = ArgAction::Help)]
    pub help: Option<bool>,
}

#[derive(Debug, Args)]
pub struct SpectrumArgs {
    /// Odd prime p
    #[arg(short = 'p', value_name = "P")]
    pub p: u64,
    #[command(flatten)]
    pub source: EntrySource,
    /// Primitive root (default: smallest).
    #[arg(short = 'h', long = "primitive", value_name = "H")]
    pub h: Option<u64>,
    #[arg(long)]
    pub json: bool,
    #[arg(long, action = ArgAction::Help)]
    pub help: Option<bool>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Odd prime p
    #[arg(short = 'p', value_name = "P")]
    pub p: u64,
    /// Exponent m >= 1.
    #[arg(short = 'm', value_name = "M", required_unless_present = "general")]
    pub m: Option<u32>,
    /// Primitive root (default: smallest).
    #[arg(short = 'h', long = "primitive", value_name = "H")]
    pub h: Option<u64>,
    /// Check A_p[c] and A_p[c'] from two c-files instead of A_{p,m}.
    #[arg(long, num_args = 2, value_names = ["C_FILE", "C2_FILE"])]
    pub general: Option<Vec<PathBuf>>,
    /// Eigen-residual tolerance before scaling by (p-1) max|c|.
    #[arg(long, default_value_t = maillet_core::verify::DEFAULT_TOL)]
    pub tol: f64,
    #[arg(long)]
    pub json: bool,
    #[arg(long, action = ArgAction::Help)]
    pub help: Option<bool>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutFormat {
    Csv,
    Jsonl,
}

#[derive(Debug, Args)]
pub struct ScanArgs {
    /// Largest prime scanned
    #[arg(long = "p-max", value_name = "P")]
    pub p_max: u64,
    #[arg(long = "p-min", value_name = "P", default_value_t = 3)]
    pub p_min: u64,
    #[arg(long = "m-min", value_name = "M", default_value_t = 2)]
    pub m_min: u32,
    /// Largest exponent scanned
    #[arg(long = "m-max", value_name = "M")]
    pub m_max: u32,
    /// Worker threads (default: available parallelism).
    #[arg(long)]
    pub jobs: Option<usize>,
    #[arg(long, value_enum, default_value_t = OutFormat::Csv)]
    pub out: OutFormat,
    /// Fill elapsed_ms with wall-clock timings (output is then no longer reproducible).
    #[arg(long)]
    pub timings: bool,
}

#[derive(Debug, Args)]
pub struct MailletArgs {
    /// Odd prime p
    #[arg(short = 'p', value_name = "P")]
    pub p: u64,
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct WaveletArgs {
    /// Odd prime p
    #[arg(short = 'p', value_name = "P")]
    pub p: u64,
    /// Exponent m >= 1
    #[arg(short = 'm', value_name = "M")]
    pub m: u32,
    #[arg(long, default_value_t = 1e-8)]
    pub tol: f64,
    #[arg(long)]
    pub json: bool,
}
