mod commands;
mod output;
mod verify;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use unimoments::Error;

#[derive(Parser, Debug)]
#[command(name = "unimoments", version, about = "Moments of unitary characteristic polynomials, their limits and function-field divisor sums")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Worker threads (defaults to the available parallelism).
    #[arg(long, global = true)]
    threads: Option<usize>,

    /// Write the output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Svg,
    Text,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Exact I_k(m;N) and the route that produced it.
    Ik(IkArgs),
    /// I_k(m;N) for every m = 0..kN.
    Table(KnArgs),
    /// The limit γ_k(c) on a grid over [0,k].
    Gamma(GammaArgs),
    /// Monte-Carlo estimate of γ_k(c) from the delta-slice integral.
    GammaMc(GammaMcArgs),
    /// Coefficients of the rational generating function P_k (k = 2, 3).
    Pk(KnArgs),
    /// Heuristic variance predictions over the integers.
    Predict(PredictArgs),
    /// Short-interval variance of d_k over F_q[t].
    FfShort(FfShortArgs),
    /// Arithmetic-progression variance of d_k over F_q[t].
    FfAp(FfApArgs),
    /// Riemann sum W_k(α,N) against the Fourier transform of γ_k.
    Wk(WkArgs),
    /// Run an invariant suite.
    Verify(VerifyArgs),
}

#[derive(Args, Debug)]
pub struct IkArgs {
    #[arg(short)]
    pub k: u32,
    #[arg(short)]
    pub m: u32,
    #[arg(short = 'N')]
    pub n: u32,
    /// Also estimate the integral by Haar sampling.
    #[arg(long, requires = "seed")]
    pub samples: Option<u64>,
    #[arg(long)]
    pub seed: Option<u64>,
}

#[derive(Args, Debug)]
pub struct KnArgs {
    #[arg(short)]
    pub k: u32,
    #[arg(short = 'N')]
    pub n: u32,
}

#[derive(Args, Debug)]
pub struct GammaArgs {
    #[arg(short)]
    pub k: u32,
    /// Grid points per unit interval.
    #[arg(long, default_value_t = 16)]
    pub resolution: u32,
}

#[derive(Args, Debug)]
pub struct GammaMcArgs {
    #[arg(short)]
    pub k: u32,
    /// The point c, as a decimal or `p/q`.
    #[arg(short)]
    pub c: String,
    #[arg(long)]
    pub samples: u64,
    #[arg(long)]
    pub seed: u64,
}

#[derive(Args, Debug)]
pub struct PredictArgs {
    #[arg(short)]
    pub k: u32,
    #[arg(long = "X")]
    pub x: f64,
    /// Short intervals of length X^δ.
    #[arg(long, conflicts_with = "q_modulus", required_unless_present = "q_modulus")]
    pub delta: Option<f64>,
    /// Progressions to a modulus of this size.
    #[arg(long = "Q", id = "q_modulus")]
    pub q_modulus: Option<f64>,
    #[arg(long, default_value_t = 0.01)]
    pub epsilon: f64,
    #[arg(long, default_value_t = unimoments::gamma::DEFAULT_PRIME_CUTOFF)]
    pub prime_cutoff: u64,
}

#[derive(Args, Debug)]
pub struct FfShortArgs {
    #[arg(short)]
    pub q: u32,
    #[arg(short)]
    pub n: u32,
    /// Interval parameter; every h in 0..=n-2 when omitted.
    #[arg(long)]
    pub h: Option<u32>,
    #[arg(short)]
    pub k: u32,
}

#[derive(Args, Debug)]
pub struct FfApArgs {
    #[arg(short)]
    pub q: u32,
    /// Coefficients of Q, lowest degree first.
    #[arg(long)]
    pub modulus: String,
    #[arg(short)]
    pub n: u32,
    #[arg(short)]
    pub k: u32,
}

#[derive(Args, Debug)]
pub struct WkArgs {
    #[arg(short)]
    pub k: u32,
    #[arg(long)]
    pub alpha: f64,
    #[arg(short = 'N')]
    pub n: u32,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Moments,
    Gamma,
    Ff,
    All,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[arg(value_enum)]
    pub suite: Suite,
    /// Smaller grids.
    #[arg(long)]
    pub quick: bool,
    /// Include the Monte-Carlo checks with this seed.
    #[arg(long)]
    pub seed: Option<u64>,
}

fn exit_code(err: &Error) -> u8 {
    match err {
        Error::Precondition(_) => 1,
        Error::Budget(_) => 2,
        Error::Verification(_) => 3,
    }
}

fn run(cli: Cli) -> Result<(), Error> {
    if let Some(threads) = cli.threads {
        if threads == 0 {
            return Err(Error::Precondition("--threads must be at least 1".into()));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()
            .map_err(|e| Error::Precondition(format!("cannot configure threads: {e}")))?;
    }
    let format = cli.format;
    let out = match cli.command {
        Command::Ik(a) => commands::ik(&a, format)?,
        Command::Table(a) => commands::table(&a, format)?,
        Command::Gamma(a) => commands::gamma(&a, format)?,
        Command::GammaMc(a) => commands::gamma_mc(&a, format)?,
        Command::Pk(a) => commands::pk(&a, format)?,
        Command::Predict(a) => commands::predict(&a, format)?,
        Command::FfShort(a) => commands::ff_short(&a, format)?,
        Command::FfAp(a) => commands::ff_ap(&a, format)?,
        Command::Wk(a) => commands::wk(&a, format)?,
        Command::Verify(a) => {
            let (report, failures) = verify::run(&a);
            write_output(cli.out.as_deref(), &report)?;
            if failures > 0 {
                return Err(Error::Verification(format!("{failures} checks failed")));
            }
            return Ok(());
        }
    };
    write_output(cli.out.as_deref(), &out)
}

fn write_output(path: Option<&std::path::Path>, text: &str) -> Result<(), Error> {
    let io_err = |e: std::io::Error| Error::Precondition(format!("cannot write output: {e}"));
    match path {
        Some(p) => std::fs::write(p, text).map_err(io_err),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes()).map_err(io_err)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
