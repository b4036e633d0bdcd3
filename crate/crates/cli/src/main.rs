use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use pwa_bounds::commands::{self, positive_rational, Options, TheoremChoice};
use pwa_bounds::files::{load_json, FunctionFile, SetFile};
use pwa_bounds::report::Report;
use pwa_bounds::{InputError, EXIT_FAILURE, EXIT_INPUT, EXIT_OK};
use pwa_bounds_core::numeric::Rational;
use pwa_bounds_core::polyhedra::Norm;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum NormArg {
    Linf,
    L1,
}

#[derive(Debug, Parser)]
#[command(name = "pwa-bounds", version, about = "Exact error-bound certificates for piecewise affine functions")]
struct Cli {
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[arg(long, global = true, value_enum, default_value_t = NormArg::Linf)]
    norm: NormArg,
    /// Sampling seed; the PWA_SEED environment variable takes precedence.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Random samples per box.
    #[arg(long, global = true, default_value_t = 512)]
    samples: usize,
    /// Half-width of the sampling box, as an integer or "p/q".
    #[arg(long = "box", global = true, default_value = "16", value_parser = positive_rational)]
    box_radius: Rational,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Piece minima, sublevel pieces, recession cones and local radius.
    Analyze { function: PathBuf },
    /// Run error-bound checks of a function on a set.
    Certify {
        function: PathBuf,
        set: PathBuf,
        #[arg(long, value_enum, default_value_t = TheoremChoice::Auto)]
        theorem: TheoremChoice,
        /// Piece index for the geometric check (default: every piece with positive minimum).
        #[arg(long)]
        piece: Option<usize>,
        /// Exit with status 1 when any verdict is `fails`.
        #[arg(long)]
        fail_on_no: bool,
    },
    /// Sample the ratio [f]_+(x) / dist(x, S(f)) on a set.
    EstimateTau {
        function: PathBuf,
        set: PathBuf,
        /// Finest grid step, as "p/q".
        #[arg(long, value_parser = positive_rational)]
        grid_step: Option<Rational>,
        /// Grid points per level.
        #[arg(long, default_value_t = 4096)]
        max_grid: usize,
    },
    /// Named regression fixtures.
    Examples {
        #[command(subcommand)]
        action: ExamplesAction,
    },
}

#[derive(Debug, Subcommand)]
enum ExamplesAction {
    List,
    /// Run a fixture by name, or `all`.
    Run { name: String },
}

fn seed(flag: u64) -> Result<u64, InputError> {
    match std::env::var("PWA_SEED") {
        Ok(text) => text
            .trim()
            .parse()
            .map_err(|_| InputError::new(format!("PWA_SEED={text:?} is not an unsigned integer"))),
        Err(std::env::VarError::NotPresent) => Ok(flag),
        Err(e) => Err(InputError::new(format!("PWA_SEED: {e}"))),
    }
}

fn run(cli: Cli) -> Result<(Report, i32), InputError> {
    let opts = Options {
        seed: seed(cli.seed)?,
        norm: match cli.norm {
            NormArg::Linf => Norm::LInf,
            NormArg::L1 => Norm::L1,
        },
        samples: cli.samples,
        box_radius: cli.box_radius,
        ..Options::default()
    };
    match cli.command {
        Command::Analyze { function } => {
            let f = load_json::<FunctionFile>(&function)?;
            Ok((commands::cmd_analyze(&f, &opts)?, EXIT_OK))
        }
        Command::Certify {
            function,
            set,
            theorem,
            piece,
            fail_on_no,
        } => {
            let f = load_json::<FunctionFile>(&function)?;
            let v = load_json::<SetFile>(&set)?;
            let report = commands::cmd_certify(&f, &v, theorem, piece, &opts)?;
            let code = if fail_on_no && report.any_fails() {
                EXIT_FAILURE
            } else {
                EXIT_OK
            };
            Ok((report, code))
        }
        Command::EstimateTau {
            function,
            set,
            grid_step,
            max_grid,
        } => {
            let f = load_json::<FunctionFile>(&function)?;
            let v = load_json::<SetFile>(&set)?;
            let opts = Options {
                grid_step,
                max_grid_points: max_grid,
                ..opts
            };
            Ok((commands::cmd_estimate_tau(&f, &v, &opts)?, EXIT_OK))
        }
        Command::Examples { action } => match action {
            ExamplesAction::List => Ok((commands::cmd_examples_list(&opts), EXIT_OK)),
            ExamplesAction::Run { name } => {
                let report = commands::cmd_examples_run(&name, &opts)?;
                let code = match report.first_divergence() {
                    Some(check) => {
                        eprintln!(
                            "mismatch: {} expected {} actual {}",
                            check.label, check.expected, check.actual
                        );
                        EXIT_FAILURE
                    }
                    None => EXIT_OK,
                };
                Ok((report, code))
            }
        },
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_INPUT as u8 } else { EXIT_OK as u8 });
        }
    };
    let format = cli.format;
    match run(cli) {
        Ok((report, code)) => {
            match format {
                Format::Json => print!("{}", report.to_json()),
                Format::Text => print!("{}", report.to_text()),
            }
            ExitCode::from(code as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_INPUT as u8)
        }
    }
}
