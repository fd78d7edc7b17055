use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

/// Finite Hilbert transform on (-1, 1): spectral classification over
/// rearrangement-invariant spaces, eigenfunction and identity checks, and
/// plots of the regions R_p.
///
/// Exit codes: 0 success or exact answer, 1 identity or residual check
/// failed, 2 answer only bounded, 3 unsupported space, 4 quadrature did not
/// converge, 64 usage or parse error, 65 argument outside its domain.
#[derive(Debug, Parser)]
#[command(name = "fht", version)]
pub struct Cli {
    /// Quadrature defaults as `key = value` lines (keys: tol, max_depth,
    /// endpoint_margin, mode). Overridden by FHT_DEFAULT_TOL and by flags.
    #[arg(long, global = true, value_name = "PATH")]
    pub config: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Spectrum, point, residual and continuous spectra of T on a space.
    ///
    /// Spaces: lp:<p>, lorentz:<p>,<r|inf>, talenti:<p>,<s>, lambdaw:<p>,<a>,
    /// smalllebesgue:<p>,
    /// abstract:<p_x>,<pa|pn>,<q_x>,<qa|qn>,<boyd_lo>,<boyd_hi>,<sep|nonsep>[,interp].
    Classify {
        #[arg(long)]
        space: String,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Region class of λ in R_p, or the part of the spectrum containing λ.
    Member {
        /// Complex literal such as 0.3-1.2i, 2i or -1.
        #[arg(long, allow_hyphen_values = true)]
        lambda: String,
        #[arg(long, conflicts_with = "space", required_unless_present = "space")]
        p: Option<f64>,
        #[arg(long)]
        space: Option<String>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Residual of T ξ_λ = λ ξ_λ on an interior grid.
    Eigencheck {
        #[arg(long, allow_hyphen_values = true)]
        lambda: String,
        /// Number of grid points.
        #[arg(long, default_value_t = 20)]
        n: usize,
        #[command(flatten)]
        quad: QuadArgs,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Values of T f on an interior grid or at given points.
    Transform {
        /// inv-w (1/w), w, ix-w (ix/w), xi:<λ>, g:<λ real>, poly:<c0,c1,...>.
        #[arg(long)]
        function: String,
        /// Evaluation points; defaults to an interior grid of `n` points.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        t: Vec<f64>,
        #[arg(long, default_value_t = 11)]
        n: usize,
        #[command(flatten)]
        quad: QuadArgs,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Boundary of R_p as SVG or CSV.
    Region {
        #[arg(long)]
        p: f64,
        /// Points per arc.
        #[arg(long, default_value_t = 64)]
        n: usize,
        #[arg(long, value_name = "PATH", conflicts_with = "csv", required_unless_present = "csv")]
        svg: Option<PathBuf>,
        /// Write CSV to PATH, or to stdout when PATH is omitted.
        #[arg(long, value_name = "PATH", num_args = 0..=1, default_missing_value = "-")]
        csv: Option<PathBuf>,
    },
    /// Checks T(1/w) = 0, T(w) = it, T(ix/w) = 1 and the pseudo-inverse
    /// right-identity; each passes within 100·tol.
    Identities {
        #[arg(long, default_value_t = 50)]
        n: usize,
        #[command(flatten)]
        quad: QuadArgs,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
}

#[derive(Debug, Clone, Args)]
pub struct QuadArgs {
    /// Absolute quadrature tolerance.
    #[arg(long)]
    pub tol: Option<f64>,
    #[arg(long, value_enum)]
    pub mode: Option<Mode>,
    #[arg(long)]
    pub max_depth: Option<usize>,
    #[arg(long)]
    pub endpoint_margin: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Svg,
    Text,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Smooth,
    Chebyshev,
}
