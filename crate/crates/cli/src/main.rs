use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use axmul::catalog::Catalog;
use axmul::compose::build16;
use axmul::cost::{reduction, Metric};
use axmul::metrics::{Evaluator, MredConvention, Strategy};
use axmul::pareto::{pareto_indices, Objective};
use axmul::sweep::{self, SweepMode, SweepSpec, DEFAULT_SAMPLES, DEFAULT_SEED};
use axmul::{build_design, DesignSet, FaCell, FaKind, Multiplier, NetMultiplier};

#[derive(Parser)]
#[command(
    name = "axmul",
    version,
    about = "Approximate multiplier simulator and design-space explorer"
)]
struct Cli {
    /// Maximum worker threads.
    #[arg(long, global = true)]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Full-adder cell tables.
    #[command(subcommand)]
    Cells(CellsCmd),
    /// Error metrics of one multiplier design.
    Eval(EvalArgs),
    /// Evaluate a whole design set into a CSV table.
    Sweep(SweepArgs),
    /// Pareto front of a CSV table.
    Pareto(ParetoArgs),
    /// Multiply-blend two PGM images through a design.
    Blend(BlendArgs),
    /// Hardware-metric catalog.
    #[command(subcommand)]
    Catalog(CatalogCmd),
}

#[derive(Subcommand)]
enum CellsCmd {
    /// CSV of all cells with their metrics and error-row counts.
    List,
    /// Truth table of one cell.
    Truth { kind: FaKind },
}

#[derive(Subcommand)]
enum CatalogCmd {
    /// Print the active catalog as CSV.
    Dump,
}

#[derive(Args)]
struct ModeArgs {
    /// Evaluate every operand pair.
    #[arg(long, conflicts_with_all = ["samples", "stratified"])]
    exhaustive: bool,
    /// Number of random operand pairs.
    #[arg(long)]
    samples: Option<u64>,
    /// Sampler seed.
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Draw one sample per equal stratum of the operand grid.
    #[arg(long)]
    stratified: bool,
    /// Count zero-product pairs in MRED with a relative error of 0 instead
    /// of skipping them.
    #[arg(long)]
    mred_zero: bool,
}

impl ModeArgs {
    fn convention(&self) -> MredConvention {
        if self.mred_zero {
            MredConvention::Zero
        } else {
            MredConvention::Skip
        }
    }
}

#[derive(Args)]
struct EvalArgs {
    #[arg(long)]
    design: String,
    #[command(flatten)]
    mode: ModeArgs,
    /// Write the structural net listing as JSON.
    #[arg(long, value_name = "PATH")]
    dump_net: Option<PathBuf>,
    /// Also write the result as a one-row CSV.
    #[arg(long, value_name = "PATH")]
    csv: Option<PathBuf>,
}

#[derive(Args)]
struct SweepArgs {
    #[arg(long)]
    set: DesignSet,
    #[arg(long)]
    out: PathBuf,
    #[command(flatten)]
    mode: ModeArgs,
}

#[derive(Args)]
struct ParetoArgs {
    #[arg(long = "in")]
    input: PathBuf,
    /// Columns to maximize.
    #[arg(long, value_delimiter = ',')]
    max: Vec<String>,
    /// Columns to minimize.
    #[arg(long, value_delimiter = ',')]
    min: Vec<String>,
}

#[derive(Args)]
struct BlendArgs {
    #[arg(long)]
    a: PathBuf,
    #[arg(long)]
    b: PathBuf,
    #[arg(long)]
    design: String,
    #[arg(long)]
    out: PathBuf,
    /// Also write the exactly blended image.
    #[arg(long)]
    ref_out: Option<PathBuf>,
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}

fn run(cli: Cli) -> Result<()> {
    if let Some(n) = cli.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n.max(1))
            .build_global()
            .context("configuring worker threads")?;
    }
    match cli.command {
        Command::Cells(CellsCmd::List) => cells_list(),
        Command::Cells(CellsCmd::Truth { kind }) => cells_truth(kind),
        Command::Eval(args) => eval(args),
        Command::Sweep(args) => sweep(args),
        Command::Pareto(args) => pareto(args),
        Command::Blend(args) => blend(args),
        Command::Catalog(CatalogCmd::Dump) => {
            print!("{}", Catalog::active()?.to_csv()?);
            Ok(())
        }
    }
}

fn print_json(v: &Value) -> Result<()> {
    let mut out = io::stdout().lock();
    serde_json::to_writer_pretty(&mut out, v)?;
    writeln!(out)?;
    Ok(())
}

fn cells_list() -> Result<()> {
    let mut w = csv::Writer::from_writer(io::stdout().lock());
    w.write_record(["kind", "size", "power_nw", "delay_ps", "pdp_fj", "error_rows"])?;
    for kind in FaKind::ALL {
        let m = FaCell::get(kind).metrics;
        w.write_record([
            kind.short_name().to_string(),
            m.size.to_string(),
            m.power_nw.to_string(),
            m.delay_ps.to_string(),
            m.pdp_fj.to_string(),
            axmul::fa_error_rows(kind).to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

fn cells_truth(kind: FaKind) -> Result<()> {
    let cell = FaCell::get(kind);
    let mut w = csv::Writer::from_writer(io::stdout().lock());
    w.write_record(["a", "b", "cin", "sum", "cout"])?;
    for row in 0..8u8 {
        let (a, b, c) = (row & 4 != 0, row & 2 != 0, row & 1 != 0);
        let (s, co) = cell.eval(a, b, c);
        let bits = [a, b, c, s, co].map(|x| (x as u8).to_string());
        w.write_record(&bits)?;
    }
    w.flush()?;
    Ok(())
}

fn eval(args: EvalArgs) -> Result<()> {
    let m = build_design(&args.design)?;
    let mode = &args.mode;
    let evaluator = Evaluator::new().mred(mode.convention());
    let sampled = !mode.exhaustive && (mode.samples.is_some() || mode.stratified || m.width() > 8);
    let report = if sampled {
        let n = mode.samples.unwrap_or(DEFAULT_SAMPLES);
        let strategy = if mode.stratified {
            Strategy::Stratified
        } else {
            Strategy::Uniform
        };
        evaluator.sampled::<f64, _>(&m, n, mode.seed, strategy)?
    } else {
        evaluator.exhaustive::<f64, _>(&m)?
    };

    if let Some(path) = &args.dump_net {
        let listing = net_listing(&args.design)?;
        fs::write(path, serde_json::to_vec_pretty(&listing)?).with_context(|| format!("writing {}", path.display()))?;
    }

    let out = json!({
        "name": m.name(),
        "mode": report.mode,
        "er": report.er,
        "med": report.med,
        "nmed": report.nmed,
        "mred": report.mred,
        "max_ed": report.max_ed,
        "mred_skipped": report.mred_skipped,
        "mred_convention": report.mred_convention,
        "pairs": report.pairs,
        "med_std_error": report.med_std_error(),
        "area": m.area(),
    });

    if let Some(path) = &args.csv {
        let mut w = csv::Writer::from_path(path).with_context(|| format!("writing {}", path.display()))?;
        w.write_record(["name", "mred", "med", "er", "nmed", "max_ed", "pairs"])?;
        w.write_record([
            m.name().to_string(),
            report.mred.to_string(),
            report.med.to_string(),
            report.er.to_string(),
            report.nmed.to_string(),
            report.max_ed.to_string(),
            report.pairs.to_string(),
        ])?;
        w.flush()?;
    }
    print_json(&out)
}

/// Net JSON of an 8x8 design, or of the four blocks of a 16x16 design.
fn net_listing(name: &str) -> Result<Value> {
    if name.starts_with("16") {
        let m = build16(name)?;
        let blocks = ["hh", "hl", "lh", "ll"]
            .iter()
            .zip(m.block_names())
            .map(|(pos, block)| {
                let net = NetMultiplier::from_name(block)?;
                Ok(json!({ "position": pos, "design": block, "net": net.net().to_json() }))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(json!({ "design": name, "blocks": blocks }))
    } else {
        let m = NetMultiplier::from_name(name)?;
        Ok(json!({ "design": name, "census": m.census(), "net": m.net().to_json() }))
    }
}

fn sweep(args: SweepArgs) -> Result<()> {
    let mode = &args.mode;
    if mode.stratified {
        bail!("--stratified applies to eval only");
    }
    let spec = SweepSpec {
        set: args.set,
        mode: if mode.exhaustive {
            SweepMode::Exhaustive
        } else if let Some(n) = mode.samples {
            SweepMode::Sampled { n, seed: mode.seed }
        } else if !args.set.exhaustive_by_default() {
            SweepMode::Sampled {
                n: DEFAULT_SAMPLES,
                seed: mode.seed,
            }
        } else {
            SweepMode::Auto
        },
        mred: mode.convention(),
        workers: None,
    };
    let rows = sweep::run_sweep(&spec, Catalog::active()?)?;
    let file = fs::File::create(&args.out).with_context(|| format!("writing {}", args.out.display()))?;
    sweep::write_sweep_csv(&spec, &rows, io::BufWriter::new(file))?;
    print_json(&json!({
        "set": spec.set,
        "mode": spec.resolved_mode(),
        "rows": rows.len(),
        "out": args.out,
    }))
}

fn pareto(args: ParetoArgs) -> Result<()> {
    let objectives: Vec<Objective> = args
        .max
        .iter()
        .map(Objective::max)
        .chain(args.min.iter().map(Objective::min))
        .collect();
    if objectives.is_empty() {
        bail!("give at least one objective with --max or --min");
    }
    let file = fs::File::open(&args.input).with_context(|| format!("reading {}", args.input.display()))?;
    let points = sweep::points_from_csv(file, &objectives)?;
    let front = pareto_indices(&points)?;
    let members: Vec<Value> = front
        .iter()
        .map(|&i| json!({ "name": points[i].name, "values": points[i].values }))
        .collect();
    print_json(&json!({
        "objectives": objectives,
        "points": points.len(),
        "front": members,
    }))
}

fn blend(args: BlendArgs) -> Result<()> {
    let read = |p: &PathBuf| -> Result<axmul::GrayImage> {
        let bytes = fs::read(p).with_context(|| format!("reading {}", p.display()))?;
        axmul::read_pgm(&bytes).with_context(|| format!("parsing {}", p.display()))
    };
    let (a, b) = (read(&args.a)?, read(&args.b)?);
    let m = build_design(&args.design)?;
    let out = axmul::blend(&a, &b, &m)?;
    let reference = axmul::blend_reference(&a, &b)?;
    let snr: f64 = axmul::snr(&reference, &out)?;
    fs::write(&args.out, axmul::write_pgm(&out)).with_context(|| format!("writing {}", args.out.display()))?;
    if let Some(path) = &args.ref_out {
        fs::write(path, axmul::write_pgm(&reference)).with_context(|| format!("writing {}", path.display()))?;
    }

    let catalog = Catalog::active()?;
    let set = DesignSet::of_design(&args.design)?;
    let pdp_red: f64 = reduction(
        catalog.lookup(set.baseline())?,
        catalog.lookup(&args.design)?,
        Metric::Pdp,
    )?;
    let snr_db = if snr.is_finite() {
        json!(snr)
    } else if snr > 0.0 {
        json!("inf")
    } else {
        json!("-inf")
    };
    print_json(&json!({
        "design": args.design,
        "snr_db": snr_db,
        "pdp_red_pct": pdp_red,
    }))
}
