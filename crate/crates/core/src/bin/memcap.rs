use std::f64::consts::FRAC_PI_2;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use memcap::capacities::ce_lim;
use memcap::optimize::{tradeoff_curve, TradeoffQuery, MIN_RESOLUTION};
use memcap::sweep::{
    output_precision, run_sweep, write_json, write_sweep, write_tradeoff, Format, Quantity, Route,
    SweepConfig, DEFAULT_GRID,
};
use memcap::verify::{run_verify, VerifyConfig};
use memcap::{CapacityReport, ChannelParams, EntanglementAnsatz, Result};

#[derive(Parser)]
#[command(
    name = "memcap",
    version,
    about = "Capacities of the two-use amplitude-damping memory channel"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Tabulate a capacity over a (chi, mu) grid.
    Sweep(SweepArgs),
    /// Capacity against entanglement budget at fixed (chi, mu).
    Tradeoff(TradeoffArgs),
    /// Full report at a single (chi, mu).
    Point(PointArgs),
    /// Run the self-consistency checks.
    Verify(VerifyArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum QuantityArg {
    Ce2,
    Qe2,
    Cp2,
    CeLim,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Csv,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum RouteArg {
    Closed,
    Pipeline,
}

#[derive(Args)]
struct Angles {
    /// Read angles in radians instead of as fractions of pi/2.
    #[arg(long, global = true)]
    radians: bool,
}

impl Angles {
    fn convert(&self, x: f64) -> f64 {
        if self.radians {
            x
        } else {
            x * FRAC_PI_2
        }
    }
}

#[derive(Args)]
struct Output {
    #[arg(long, value_enum, default_value = "csv")]
    format: FormatArg,
    /// Write here instead of stdout.
    #[arg(short, long)]
    output: Option<PathBuf>,
}

impl Output {
    fn format(&self) -> Format {
        match self.format {
            FormatArg::Csv => Format::Csv,
            FormatArg::Json => Format::Json,
        }
    }

    fn writer(&self) -> Result<Box<dyn Write>> {
        Ok(match &self.output {
            Some(path) => Box::new(BufWriter::new(File::create(path)?)),
            None => Box::new(BufWriter::new(io::stdout().lock())),
        })
    }
}

#[derive(Args)]
struct SweepArgs {
    #[arg(long, value_enum, default_value = "ce2")]
    quantity: QuantityArg,
    #[arg(long, default_value_t = DEFAULT_GRID)]
    chi_points: usize,
    #[arg(long, default_value_t = DEFAULT_GRID)]
    mu_points: usize,
    /// Report values per two uses instead of per use.
    #[arg(long)]
    two_use: bool,
    #[arg(long, value_enum, default_value = "closed")]
    route: RouteArg,
    /// Entanglement angle of the first pair (ce-lim only).
    #[arg(long)]
    theta1: Option<f64>,
    /// Entanglement angle of the second pair (ce-lim only).
    #[arg(long)]
    theta2: Option<f64>,
    /// Worker threads; 1 runs serially.
    #[arg(long)]
    jobs: Option<usize>,
    #[command(flatten)]
    angles: Angles,
    #[command(flatten)]
    out: Output,
}

#[derive(Args)]
struct TradeoffArgs {
    #[arg(long)]
    chi: f64,
    #[arg(long)]
    mu: f64,
    /// Number of budgets spread over [0, 2] ebits.
    #[arg(long, default_value_t = 21)]
    points: usize,
    #[arg(long, default_value_t = MIN_RESOLUTION)]
    resolution: usize,
    #[arg(long)]
    two_use: bool,
    #[command(flatten)]
    angles: Angles,
    #[command(flatten)]
    out: Output,
}

#[derive(Args)]
struct PointArgs {
    #[arg(long)]
    chi: f64,
    #[arg(long)]
    mu: f64,
    /// Also evaluate at a partially entangled input.
    #[arg(long, requires = "theta2")]
    theta1: Option<f64>,
    #[arg(long, requires = "theta1")]
    theta2: Option<f64>,
    /// Skip the density-matrix cross-check.
    #[arg(long)]
    no_pipeline: bool,
    #[command(flatten)]
    angles: Angles,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, default_value_t = 21)]
    grid: usize,
    #[arg(long, default_value_t = 42)]
    seed: u64,
    #[arg(long, default_value_t = 10_000)]
    samples: usize,
    #[arg(long)]
    jobs: Option<usize>,
    #[arg(long, hide = true)]
    perturb_omega: bool,
}

fn ansatz(angles: &Angles, t1: Option<f64>, t2: Option<f64>) -> Result<Option<EntanglementAnsatz>> {
    match (t1, t2) {
        (Some(a), Some(b)) => Ok(Some(EntanglementAnsatz::new(
            angles.convert(a),
            angles.convert(b),
        )?)),
        (None, None) => Ok(None),
        _ => Err(memcap::Error::Config("give both theta1 and theta2".into())),
    }
}

fn sweep(args: SweepArgs) -> Result<ExitCode> {
    let config = SweepConfig {
        chi_points: args.chi_points,
        mu_points: args.mu_points,
        quantity: match args.quantity {
            QuantityArg::Ce2 => Quantity::Ce2,
            QuantityArg::Qe2 => Quantity::Qe2,
            QuantityArg::Cp2 => Quantity::Cp2,
            QuantityArg::CeLim => Quantity::CeLim,
        },
        ansatz: ansatz(&args.angles, args.theta1, args.theta2)?,
        per_use: !args.two_use,
        route: match args.route {
            RouteArg::Closed => Route::Closed,
            RouteArg::Pipeline => Route::Pipeline,
        },
        format: args.out.format(),
        jobs: args.jobs,
    };
    let digits = output_precision()?;
    let rows = run_sweep(&config)?;
    write_sweep(args.out.writer()?, &config, &rows, digits)?;
    Ok(ExitCode::SUCCESS)
}

fn tradeoff(args: TradeoffArgs) -> Result<ExitCode> {
    let params = ChannelParams::new(args.angles.convert(args.chi), args.mu)?;
    let digits = output_precision()?;
    let query = TradeoffQuery::uniform(params, args.points, args.resolution)?;
    let curve = tradeoff_curve(&query);
    write_tradeoff(
        args.out.writer()?,
        args.out.format(),
        params,
        &curve,
        !args.two_use,
        digits,
    )?;
    Ok(ExitCode::SUCCESS)
}

fn point(args: PointArgs) -> Result<ExitCode> {
    let params = ChannelParams::new(args.angles.convert(args.chi), args.mu)?;
    let report = CapacityReport::compute(params, !args.no_pipeline)?;
    let mut doc = serde_json::to_value(&report)?;
    if let Some(a) = ansatz(&args.angles, args.theta1, args.theta2)? {
        doc["ansatz"] = serde_json::to_value(a)?;
        doc["ce_lim"] = ce_lim(params, a).into();
    }
    let out: Box<dyn Write> = match &args.output {
        Some(path) => Box::new(BufWriter::new(File::create(path)?)),
        None => Box::new(io::stdout().lock()),
    };
    write_json(out, &doc)?;
    Ok(ExitCode::SUCCESS)
}

fn verify(args: VerifyArgs) -> Result<ExitCode> {
    let report = run_verify(&VerifyConfig {
        grid: args.grid,
        seed: args.seed,
        samples: args.samples,
        perturb_omega: args.perturb_omega,
        jobs: args.jobs,
    })?;
    println!("{report}");
    Ok(if report.all_passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Sweep(a) => sweep(a),
        Command::Tradeoff(a) => tradeoff(a),
        Command::Point(a) => point(a),
        Command::Verify(a) => verify(a),
    };
    result.unwrap_or_else(|e| {
        eprintln!("memcap: {e}");
        ExitCode::FAILURE
    })
}
