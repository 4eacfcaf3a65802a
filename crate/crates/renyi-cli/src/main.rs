//! `renyi` — Rényi entropies of finite distributions and the exact joint
//! range of two or three entropy orders.
//!
//! Exit codes: 0 success, 1 verification violations, 2 input errors,
//! 3 range/domain errors.

use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use renyi::{LogBase, Order};
use renyi_cli::commands::{
    cmd_bound, cmd_curve, cmd_entropy, cmd_surface, cmd_verify, Format, Side, VerifyMode,
};
use renyi_cli::parse::{parse_base, parse_dist, parse_dist_file, parse_order};
use renyi_cli::{CliError, CommandOutput};

#[derive(Parser)]
#[command(
    name = "renyi",
    about = "Renyi entropies and the exact joint range of two or three entropy orders",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Csv,
    Json,
    Svg,
}

impl From<FormatArg> for Format {
    fn from(f: FormatArg) -> Format {
        match f {
            FormatArg::Csv => Format::Csv,
            FormatArg::Json => Format::Json,
            FormatArg::Svg => Format::Svg,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum SideArg {
    Upper,
    Lower,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Mc,
    Lattice,
}

#[derive(Args)]
struct OutputArgs {
    /// Output format.
    #[arg(long, value_enum, default_value = "csv")]
    format: FormatArg,
    /// Output file (standard output when omitted).
    #[arg(long)]
    out: Option<PathBuf>,
    /// Logarithm base for printed entropies: e, 2 or 10.
    #[arg(long, default_value = "e", value_parser = parse_base)]
    base: LogBase,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate H_alpha of a distribution at one or more orders.
    Entropy {
        /// Inline distribution, e.g. 0.5,0.25,0.25.
        #[arg(long, conflicts_with = "dist_file")]
        dist: Option<String>,
        /// CSV file with one probability per row (optional header).
        #[arg(long)]
        dist_file: Option<PathBuf>,
        /// Orders, e.g. 0,0.5,1,2,inf.
        #[arg(long, value_delimiter = ',', value_parser = parse_order, required = true)]
        orders: Vec<Order>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Tight upper/lower bound on the last order's entropy given the
    /// others.
    Bound {
        /// Two or three strictly increasing orders.
        #[arg(long, value_delimiter = ',', value_parser = parse_order, required = true)]
        orders: Vec<Order>,
        /// Conditioning entropy value(s), in the chosen base: one for two
        /// orders, two for three orders.
        #[arg(long, value_delimiter = ',', required = true, allow_hyphen_values = true)]
        h: Vec<f64>,
        /// Alphabet size cap.
        #[arg(long)]
        n: Option<usize>,
        /// Which side to bound.
        #[arg(long, value_enum)]
        side: SideArg,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Sample the closed boundary curve of the two-order diagram.
    Curve {
        /// Exactly two strictly increasing orders.
        #[arg(long, value_delimiter = ',', value_parser = parse_order, required = true)]
        orders: Vec<Order>,
        /// Alphabet size (>= 2).
        #[arg(long)]
        n: usize,
        /// Sample points per boundary arc.
        #[arg(long, default_value_t = 129)]
        samples: usize,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Sample both boundary sheets of the three-order diagram.
    Surface {
        /// Exactly three strictly increasing orders.
        #[arg(long, value_delimiter = ',', value_parser = parse_order, required = true)]
        orders: Vec<Order>,
        /// Alphabet size (>= 3).
        #[arg(long)]
        n: usize,
        /// Grid points per simplex edge.
        #[arg(long, default_value_t = 17)]
        resolution: usize,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Brute-force check of the analytic bounds over simplex samples.
    Verify {
        /// Two or three strictly increasing orders.
        #[arg(long, value_delimiter = ',', value_parser = parse_order, required = true)]
        orders: Vec<Order>,
        /// Alphabet size.
        #[arg(long)]
        n: usize,
        /// Sampling mode.
        #[arg(long, value_enum)]
        mode: ModeArg,
        /// Monte-Carlo sample count.
        #[arg(long, default_value_t = 10_000)]
        count: u64,
        /// Lattice denominator R.
        #[arg(long, default_value_t = 60)]
        resolution: u64,
        /// Generator seed.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Violation tolerance in nats.
        #[arg(long, default_value_t = 1e-9)]
        tolerance: f64,
        /// Envelope bin width in nats (lattice mode).
        #[arg(long, default_value_t = 0.01)]
        bin_width: f64,
        #[command(flatten)]
        output: OutputArgs,
    },
}

fn run(cli: Cli) -> Result<(CommandOutput, OutputArgs), CliError> {
    match cli.command {
        Command::Entropy {
            dist,
            dist_file,
            orders,
            output,
        } => {
            let dist = match (dist, dist_file) {
                (Some(inline), None) => parse_dist(&inline)?,
                (None, Some(path)) => {
                    let content = fs::read_to_string(&path).map_err(|e| {
                        CliError::Input(format!("cannot read {}: {e}", path.display()))
                    })?;
                    parse_dist_file(&content)?
                }
                _ => {
                    return Err(CliError::Input(
                        "provide exactly one of --dist or --dist-file".into(),
                    ))
                }
            };
            let out = cmd_entropy(&dist, &orders, output.format.into(), output.base)?;
            Ok((out, output))
        }
        Command::Bound {
            orders,
            h,
            n,
            side,
            output,
        } => {
            let side = match side {
                SideArg::Upper => Side::Upper,
                SideArg::Lower => Side::Lower,
            };
            let out = cmd_bound(&orders, &h, n, side, output.format.into(), output.base)?;
            Ok((out, output))
        }
        Command::Curve {
            orders,
            n,
            samples,
            output,
        } => {
            let out = cmd_curve(&orders, n, samples, output.format.into(), output.base)?;
            Ok((out, output))
        }
        Command::Surface {
            orders,
            n,
            resolution,
            output,
        } => {
            let out = cmd_surface(&orders, n, resolution, output.format.into(), output.base)?;
            Ok((out, output))
        }
        Command::Verify {
            orders,
            n,
            mode,
            count,
            resolution,
            seed,
            tolerance,
            bin_width,
            output,
        } => {
            let mode = match mode {
                ModeArg::Mc => VerifyMode::MonteCarlo,
                ModeArg::Lattice => VerifyMode::Lattice,
            };
            let out = cmd_verify(
                &orders,
                n,
                mode,
                count,
                resolution,
                seed,
                tolerance,
                bin_width,
                output.format.into(),
                output.base,
            )?;
            Ok((out, output))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok((out, spec)) => {
            let write_result = match &spec.out {
                Some(path) => fs::write(path, out.text.as_bytes())
                    .map_err(|e| format!("cannot write {}: {e}", path.display())),
                None => std::io::stdout()
                    .write_all(out.text.as_bytes())
                    .map_err(|e| format!("cannot write output: {e}")),
            };
            if let Err(msg) = write_result {
                eprintln!("error: {msg}");
                return ExitCode::from(2);
            }
            if out.violations {
                eprintln!("verification found violations");
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
