use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use invdeg::config::{Command, Format, QRange, RunConfig, DEFAULT_LINES, DEFAULT_PRIMES, DEFAULT_TRIALS};
use invdeg::render::render;
use invdeg_core::symspace::Space;

#[derive(Parser)]
#[command(
    name = "invdeg",
    version,
    about = "Degree growth and orbit checks for the matrix inversion map K = I o J"
)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Degrees of the iterates on random lines
    Degrees {
        #[arg(long)]
        q: usize,
        /// Number of iterates; 5 for q <= 4, 3 for q = 5, 2 above
        #[arg(long = "n")]
        n: Option<usize>,
        #[arg(long, default_value = "sym", value_parser = parse_space)]
        space: Space,
        #[arg(long, default_value_t = DEFAULT_PRIMES)]
        primes: usize,
        #[arg(long, default_value_t = DEFAULT_LINES)]
        lines: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Characteristic polynomial of the linear model and its dominant root
    Charpoly {
        /// A size or an inclusive range such as 5..12
        #[arg(long)]
        q: QRange,
        #[command(flatten)]
        common: Common,
    },
    /// Orbit catalog plus homogeneity, permutation and inverse identities
    VerifyOrbits {
        #[arg(long)]
        q: usize,
        #[arg(long, default_value_t = DEFAULT_TRIALS)]
        trials: usize,
        /// Run a single claim (r1, jr, sigma11, sigma12, a11, sigma12c, c12, d12)
        #[arg(long)]
        claim: Option<String>,
        #[command(flatten)]
        common: Common,
    },
    /// Vanishing orders of the lift along the exceptional divisors
    Orders {
        #[arg(long)]
        q: usize,
        /// Starting series precision
        #[arg(long)]
        precision: Option<usize>,
        #[command(flatten)]
        common: Common,
    },
    /// Merge JSON reports from a directory into one summary
    Report {
        dir: PathBuf,
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Args)]
struct Common {
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum)]
    format: Option<Format>,
    #[arg(long)]
    out: Option<PathBuf>,
    /// Run all jobs on the calling thread
    #[arg(long)]
    sequential: bool,
}

fn parse_space(s: &str) -> Result<Space, String> {
    s.parse().map_err(|e: invdeg_core::symspace::SymError| e.to_string())
}

impl Cmd {
    fn into_config(self) -> RunConfig {
        let (mut cfg, common) = match self {
            Cmd::Degrees {
                q,
                n,
                space,
                primes,
                lines,
                common,
            } => {
                let mut c = RunConfig::new(Command::Degrees);
                c.q = Some(QRange::single(q));
                c.n_max = n;
                c.space = space;
                c.primes = primes;
                c.lines = lines;
                (c, common)
            }
            Cmd::Charpoly { q, common } => {
                let mut c = RunConfig::new(Command::Charpoly);
                c.q = Some(q);
                (c, common)
            }
            Cmd::VerifyOrbits {
                q,
                trials,
                claim,
                common,
            } => {
                let mut c = RunConfig::new(Command::VerifyOrbits);
                c.q = Some(QRange::single(q));
                c.trials = trials;
                c.claim = claim;
                (c, common)
            }
            Cmd::Orders { q, precision, common } => {
                let mut c = RunConfig::new(Command::Orders);
                c.q = Some(QRange::single(q));
                c.precision = precision;
                (c, common)
            }
            Cmd::Report { dir, common } => {
                let mut c = RunConfig::new(Command::Report);
                c.input = Some(dir);
                (c, common)
            }
        };
        cfg.seed = common.seed;
        if let Some(f) = common.format {
            cfg.format = f;
        }
        cfg.out = common.out;
        cfg.sequential = common.sequential;
        cfg
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    let cfg = cli.command.into_config();
    let report = match invdeg::run(&cfg) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    };
    let text = match render(&report, cfg.format) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    };
    match &cfg.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, &text) {
                eprintln!("error: {}: {e}", path.display());
                return ExitCode::from(1);
            }
        }
        None => print!("{text}"),
    }
    for r in report.failed() {
        eprintln!("fail: {} ({})", r.id, r.paper_ref);
    }
    ExitCode::from(report.exit_code())
}
