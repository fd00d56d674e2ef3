//! The `graphchi` command line: argument parsing, dispatch, exit codes.
//!
//! Exit codes: 0 on success, 1 when a verification fails (or output cannot be
//! written), 2 on a usage error.

pub mod cache;
mod commands;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use graphchi_core::euler_series::{ComplexKind, Parity};

pub use commands::CommandError;

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// Validated configuration of one invocation.
#[derive(Debug, Parser)]
#[command(name = "graphchi", version, about = "Euler characteristics of graph complexes")]
pub struct RunConfig {
    #[command(subcommand)]
    pub command: Command,
    /// Cache directory [default: $GRAPHCHI_CACHE_DIR, then ~/.cache/graphchi].
    #[arg(long, global = true)]
    pub cache_dir: Option<PathBuf>,
    /// Skip the result cache.
    #[arg(long, global = true)]
    pub no_cache: bool,
    /// Worker threads [default: all cores].
    #[arg(long, global = true)]
    pub threads: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum KindArg {
    GcEven,
    GcOdd,
    Agc,
}

impl From<KindArg> for ComplexKind {
    fn from(k: KindArg) -> Self {
        match k {
            KindArg::GcEven => ComplexKind::GcEven,
            KindArg::GcOdd => ComplexKind::GcOdd,
            KindArg::Agc => ComplexKind::Agc,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ParityArg {
    Even,
    Odd,
}

impl From<ParityArg> for Parity {
    fn from(p: ParityArg) -> Self {
        match p {
            ParityArg::Even => Parity::Even,
            ParityArg::Odd => Parity::Odd,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SignArg {
    Plus,
    Minus,
}

impl From<SignArg> for Parity {
    fn from(s: SignArg) -> Self {
        match s {
            SignArg::Plus => Parity::Even,
            SignArg::Minus => Parity::Odd,
        }
    }
}

#[derive(Debug, Args)]
pub struct OutArg {
    /// Write the report here instead of standard output.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Connected χ by rank from the generating function; CSV `g,chi,method`.
    Chi {
        #[arg(long, value_enum, default_value = "gc-even")]
        kind: KindArg,
        #[arg(long)]
        gmax: u32,
        /// Cross-check the low ranks against graph enumeration.
        #[arg(long)]
        verify: bool,
        #[command(flatten)]
        out: OutArg,
    },
    /// χ of all (possibly disconnected) graphs by degree; CSV `n,chi,method`.
    ChiDisconnected {
        #[arg(long, value_enum)]
        parity: ParityArg,
        #[arg(long)]
        nmax: u32,
        /// Cross-check against the Euler product and graph enumeration.
        #[arg(long)]
        verify: bool,
        #[command(flatten)]
        out: OutArg,
    },
    /// χ by brute-force enumeration, compared with the series value.
    Oracle {
        #[arg(long, value_enum)]
        parity: ParityArg,
        #[arg(long, conflicts_with = "disconnected", requires = "g")]
        connected: bool,
        #[arg(long, requires = "n")]
        disconnected: bool,
        /// Rank, with --connected.
        #[arg(long)]
        g: Option<usize>,
        /// Degree, with --disconnected.
        #[arg(long)]
        n: Option<usize>,
    },
    /// Builds the chain complex of one rank and reports its homology.
    Homology {
        #[arg(long, value_enum)]
        parity: ParityArg,
        #[arg(long)]
        g: usize,
        /// Also print the boundary matrix out of this degree as `row col value` lines.
        #[arg(long)]
        dump: Option<usize>,
        #[command(flatten)]
        out: OutArg,
    },
    /// Asymptotic values, or with --ratio the comparison against exact χ.
    Asym {
        #[arg(long, value_enum, default_value = "gc-even")]
        kind: KindArg,
        #[arg(long)]
        gmax: u32,
        #[arg(long)]
        ratio: bool,
        #[command(flatten)]
        out: OutArg,
    },
    /// Scans odd ranks for violations of the cosine lower bound.
    CosBound {
        #[arg(long, default_value_t = 100_000)]
        gmax: u64,
        #[arg(long, default_value_t = 7.5)]
        mu_star: f64,
        #[command(flatten)]
        out: OutArg,
    },
    /// Numeric quadrature checks.
    Quad {
        #[command(subcommand)]
        which: QuadCommand,
    },
}

#[derive(Debug, Subcommand)]
pub enum QuadCommand {
    /// Stirling integral against the normalised Γ function.
    Stirling {
        #[arg(long, required = true, value_delimiter = ',')]
        z: Vec<String>,
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
    },
    /// One Q± integral.
    Q {
        #[arg(long, value_enum)]
        sign: SignArg,
        #[arg(long)]
        z: String,
        /// Half-width of the window.
        #[arg(long, conflicts_with = "xi")]
        eps: Option<String>,
        /// Window half-width as ξ·z^{-5/12}.
        #[arg(long)]
        xi: Option<f64>,
        #[arg(long, default_value = "0")]
        u_re: String,
        #[arg(long, default_value = "0")]
        u_im: String,
        #[arg(long, default_value_t = 1e-25)]
        tol: f64,
    },
    /// J_n± against the truncated χ partial sum; CSV `z,J_real,J_imag,partial_sum,delta,delta_normalized`.
    Jres {
        #[arg(long, value_enum)]
        parity: ParityArg,
        #[arg(long, default_value_t = 12)]
        n: u32,
        #[arg(long, value_delimiter = ',', default_value = "1000,10000,100000,1000000")]
        z_grid: Vec<String>,
        #[arg(long, default_value_t = 256)]
        prec: u32,
        #[command(flatten)]
        out: OutArg,
    },
}

/// Runs one invocation, writing reports to `out` and diagnostics to `err`.
pub fn run_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let config = match RunConfig::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if code == EXIT_OK { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return code;
        }
    };
    let pool = match rayon::ThreadPoolBuilder::new().num_threads(config.threads.unwrap_or(0)).build() {
        Ok(p) => p,
        Err(e) => {
            let _ = writeln!(err, "error: cannot start worker threads: {e}");
            return EXIT_USAGE;
        }
    };
    let mut report = Vec::new();
    let mut notes = Vec::new();
    let outcome = pool.install(|| commands::dispatch(&config, &mut report, &mut notes));
    let _ = out.write_all(&report).and_then(|_| out.flush());
    let _ = err.write_all(&notes);
    match outcome {
        Ok(()) => EXIT_OK,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

/// Runs with the process's standard streams.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(args, &mut stdout.lock(), &mut stderr.lock())
}
