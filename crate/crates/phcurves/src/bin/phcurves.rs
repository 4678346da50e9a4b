//! Command-line interface: G² Hermite interpolation with prescribed arc
//! length by degree-7 PH biarcs, spline assembly, convergence benchmarks,
//! and SVG rendering.

use std::fs;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use phcurves::bench::Method;
use phcurves::cli;
use phcurves::error::{Error, Result};

#[derive(Parser)]
#[command(name = "phcurves", version, about = "Planar PH curves of degree 7: arc-length-exact G2 Hermite interpolation")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args)]
struct OutputArg {
    /// Write to this file instead of stdout.
    #[arg(long, short)]
    output: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Interpolate one problem file with a PH biarc.
    Interpolate {
        /// Problem file (key = value lines; see README).
        problem: PathBuf,
        /// Emit every candidate instead of only the minimum-energy one.
        #[arg(long)]
        all_candidates: bool,
        /// Candidate table as CSV instead of a curve file.
        #[arg(long, conflicts_with = "json")]
        csv: bool,
        /// Candidate table as JSON instead of a curve file.
        #[arg(long)]
        json: bool,
        #[command(flatten)]
        out: OutputArg,
    },
    /// Build a G² spline through a nodes file.
    Spline {
        /// Nodes file (node/length lines; see README).
        nodes: PathBuf,
        /// Compare against a log spiral with this winding rate ω.
        #[arg(long)]
        reference_spiral: Option<f64>,
        /// Comma-separated spiral parameters, one per node.
        #[arg(long, requires = "reference_spiral", allow_hyphen_values = true)]
        reference_samples: Option<String>,
        #[command(flatten)]
        out: OutputArg,
    },
    /// Convergence and parameter studies; all emit CSV.
    Bench {
        #[command(subcommand)]
        which: BenchCmd,
    },
    /// Render a curve file as SVG.
    Render {
        /// Curve file produced by `interpolate` or `spline`.
        curve: PathBuf,
        /// World-units length of a unit-curvature porcupine quill.
        #[arg(long, default_value_t = 0.05)]
        porcupine_scale: f64,
        /// Number of porcupine quills along the curve.
        #[arg(long, default_value_t = 64)]
        samples: usize,
        #[command(flatten)]
        out: OutputArg,
    },
}

#[derive(Subcommand)]
enum BenchCmd {
    /// Biarc error against a log spiral on [0, h], h = 1, 1/2, …, 2^-max-k.
    SpiralOrder {
        #[arg(long, default_value_t = 0.2)]
        omega: f64,
        #[arg(long, default_value_t = 8)]
        max_k: u32,
        #[command(flatten)]
        out: OutputArg,
    },
    /// Biarc spline error closing the unit circle with N = 2, 4, …, max-n spans.
    CircleOrder {
        #[arg(long, default_value_t = 512)]
        max_n: usize,
        #[command(flatten)]
        out: OutputArg,
    },
    /// Energy over the λ tension grid for one problem file.
    LambdaOpt {
        problem: PathBuf,
        /// Refine the grid minimum by golden section.
        #[arg(long)]
        continuous: bool,
        #[command(flatten)]
        out: OutputArg,
    },
    /// Minimize energy over the β junction parameters at fixed λ.
    BetaOpt {
        problem: PathBuf,
        #[arg(long)]
        lambda: Option<f64>,
        #[command(flatten)]
        out: OutputArg,
    },
    /// Biarc and single-segment spiral errors side by side.
    SingleCompare {
        #[arg(long, default_value_t = 0.2)]
        omega: f64,
        #[arg(long, default_value_t = 8)]
        max_k: u32,
        #[command(flatten)]
        out: OutputArg,
    },
}

fn read(path: &PathBuf) -> Result<String> {
    fs::read_to_string(path).map_err(Error::from)
}

fn deliver(out: &OutputArg, text: &str) -> Result<()> {
    match &out.output {
        Some(path) => fs::write(path, text).map_err(Error::from),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn parse_samples(spec: &str) -> Result<Vec<f64>> {
    spec.split(',')
        .map(|t| {
            t.trim().parse::<f64>().map_err(|_| Error::InvalidInput {
                reason: format!("bad reference sample {t:?}"),
            })
        })
        .collect()
}

fn run(cmd: Cmd) -> Result<()> {
    match cmd {
        Cmd::Interpolate {
            problem,
            all_candidates,
            csv,
            json,
            out,
        } => {
            let spec = cli::parse_problem(&read(&problem)?)?;
            let text = cli::cmd_interpolate(&spec, all_candidates, csv, json)?;
            deliver(&out, &text)
        }
        Cmd::Spline {
            nodes,
            reference_spiral,
            reference_samples,
            out,
        } => {
            let spec = cli::parse_nodes(&read(&nodes)?)?;
            let samples = reference_samples.as_deref().map(parse_samples).transpose()?;
            let text = cli::cmd_spline(&spec, reference_spiral, samples.as_deref())?;
            deliver(&out, &text)
        }
        Cmd::Bench { which } => match which {
            BenchCmd::SpiralOrder { omega, max_k, out } => {
                deliver(&out, &cli::bench_spiral_csv(omega, max_k, Method::Biarc)?)
            }
            BenchCmd::CircleOrder { max_n, out } => {
                deliver(&out, &cli::bench_circle_csv(max_n)?)
            }
            BenchCmd::LambdaOpt {
                problem,
                continuous,
                out,
            } => {
                let spec = cli::parse_problem(&read(&problem)?)?;
                deliver(&out, &cli::bench_lambda_csv(&spec.data, continuous)?)
            }
            BenchCmd::BetaOpt { problem, lambda, out } => {
                let spec = cli::parse_problem(&read(&problem)?)?;
                let lambda = lambda.unwrap_or(spec.lambda);
                deliver(&out, &cli::bench_beta_csv(&spec.data, lambda)?)
            }
            BenchCmd::SingleCompare { omega, max_k, out } => {
                deliver(&out, &cli::bench_single_compare_csv(omega, max_k)?)
            }
        },
        Cmd::Render {
            curve,
            porcupine_scale,
            samples,
            out,
        } => {
            let docs = cli::parse_curves(&read(&curve)?)?;
            let svg = cli::render_svg(&docs[0], porcupine_scale, samples)?;
            deliver(&out, &svg)
        }
    }
}

fn main() {
    let cli = Cli::parse();
    if let Err(err) = run(cli.cmd) {
        eprintln!("error: {err}");
        std::process::exit(cli::exit_code(&err));
    }
}
