//! `segre-average`: exact Segre-fiber averaging from the command line.
//!
//! Exit status: 0 when a verdict holds or a computation finished, 1 when a
//! verdict fails, 2 on usage, parse or model errors.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use log::{debug, info};

use segre_core::analysis::{equal_on_x, flatten_search, is_holomorphic_restriction, is_real_valued, reconstruct_model};
use segre_core::averaging::{average, generating_series_check, r_table, raverage, reduce};
use segre_core::model::{standard_defining_equations, FiberData, Model};
use segre_core::report::{
    AnalysisReport, DefiningEquationsReport, FlatteningReport, GeneratingReport, RTableReport, SeriesRecord,
    SeriesReport, VerdictReport,
};
use segre_core::series::{parse_monomial, parse_series};
use segre_core::{Error, GaussianRational, TruncatedSeries, Verdict};

#[derive(Parser)]
#[command(
    name = "segre-average",
    version,
    about = "Exact Segre-fiber averaging for model hypersurfaces"
)]
struct Cli {
    /// Worker threads for independent checks and table entries (default: all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Average a germ over the Segre fibers.
    Average(SeriesArgs),
    /// Restricted averaging of an antiholomorphic germ.
    Raverage(SeriesArgs),
    /// Reduced representative modulo the conjugated defining relation.
    Reduce(SeriesArgs),
    /// Does the germ agree on the model with a holomorphic function?
    HoloTest(SeriesArgs),
    /// Do two germs agree on the model? Takes exactly two inputs.
    EqualTest(SeriesArgs),
    /// Is a holomorphic germ real-valued on the model?
    FlattenTest(SeriesArgs),
    /// Search for holomorphic germs real-valued on the model.
    FlattenSearch(SearchArgs),
    /// Restricted averages of `zbar^a wbar^b` up to a weighted degree.
    Rtable(SearchArgs),
    /// Recover the model from a table of restricted averages.
    Reconstruct(ReconstructArgs),
    /// Compare restricted averages with the power-sum generating function.
    GenfunCheck(GenfunArgs),
    /// Standard defining equations of the model.
    Defeq(ModelArgs),
}

#[derive(Args)]
struct ModelArgs {
    /// Model config (JSON).
    #[arg(long)]
    model: PathBuf,
    /// Weighted truncation order (default 2k).
    #[arg(short = 'N', long = "order")]
    order: Option<u32>,
    /// Write a JSON report to this path (`-` for standard output) instead of text.
    #[arg(long)]
    json: Option<PathBuf>,
}

#[derive(Args)]
struct SeriesArgs {
    #[command(flatten)]
    common: ModelArgs,
    /// Series file; repeatable.
    #[arg(long)]
    series: Vec<PathBuf>,
    /// Monomial shorthand such as `zbar^2*w`; repeatable, taken after the series files.
    #[arg(long)]
    monomial: Vec<String>,
}

#[derive(Args)]
struct SearchArgs {
    #[command(flatten)]
    common: ModelArgs,
    /// Weighted degree bound.
    #[arg(short = 'D', long = "degree")]
    degree: u32,
}

#[derive(Args)]
struct GenfunArgs {
    #[command(flatten)]
    common: ModelArgs,
    /// Number of generating-series coefficients.
    #[arg(short = 'M', long = "terms", default_value_t = 8)]
    terms: u32,
}

#[derive(Args)]
struct ReconstructArgs {
    /// Table written by `rtable --json`.
    #[arg(long)]
    rtable: PathBuf,
    /// Segre multiplicity.
    #[arg(short = 'k')]
    k: u32,
    #[arg(long)]
    json: Option<PathBuf>,
}

/// What a command produced: text for the terminal, a JSON report, and
/// whether the verdict (if any) held.
struct Outcome {
    text: String,
    report: AnalysisReport,
    holds: bool,
}

fn init_logging() {
    let level = match std::env::var("SEGRE_AVERAGE_LOG").as_deref() {
        Ok("quiet") => log::LevelFilter::Off,
        Ok("info") => log::LevelFilter::Info,
        Ok("debug") => log::LevelFilter::Debug,
        _ => log::LevelFilter::Warn,
    };
    env_logger::Builder::new()
        .filter_level(level)
        .format_timestamp(None)
        .init();
}

fn main() -> ExitCode {
    init_logging();
    let cli = Cli::parse();
    if let Some(jobs) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(jobs.max(1)).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    match run(cli.command) {
        Ok(holds) => ExitCode::from(if holds { 0 } else { 1 }),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn load_model(path: &Path) -> Result<(Model, FiberData)> {
    let text = fs::read_to_string(path).with_context(|| format!("reading model {}", path.display()))?;
    let model = Model::from_json(&text).with_context(|| format!("parsing model {}", path.display()))?;
    let fd = model.fiber_data()?;
    info!("model {} with Segre multiplicity {}", path.display(), fd.multiplicity());
    Ok((model, fd))
}

fn resolve_order(order: Option<u32>, fd: &FiberData) -> Result<u32> {
    let k = fd.multiplicity();
    let n = order.unwrap_or(2 * k);
    if n < k {
        bail!("order N = {n} is below the Segre multiplicity {k}");
    }
    Ok(n)
}

fn load_inputs(args: &SeriesArgs, fd: &FiberData, order: u32) -> Result<Vec<TruncatedSeries>> {
    let sig = fd.signature();
    let mut out = Vec::new();
    for path in &args.series {
        let text = fs::read_to_string(path).with_context(|| format!("reading series {}", path.display()))?;
        out.push(parse_series(&text, Some(&sig), Some(order)).with_context(|| format!("parsing {}", path.display()))?);
    }
    for m in &args.monomial {
        let mono = parse_monomial(m, &sig).with_context(|| format!("parsing monomial `{m}`"))?;
        out.push(TruncatedSeries::monomial(
            &sig,
            order,
            mono,
            GaussianRational::from_integer(1),
        ));
    }
    Ok(out)
}

fn single_input(args: &SeriesArgs, fd: &FiberData, order: u32) -> Result<TruncatedSeries> {
    let mut inputs = load_inputs(args, fd, order)?;
    if inputs.len() != 1 {
        bail!("expected one input (--series or --monomial), got {}", inputs.len());
    }
    Ok(inputs.remove(0))
}

fn emit(outcome: Outcome, json: Option<&Path>) -> Result<bool> {
    match json {
        Some(p) if p == Path::new("-") => print!("{}", outcome.report.to_json()),
        Some(p) => fs::write(p, outcome.report.to_json()).with_context(|| format!("writing {}", p.display()))?,
        None => println!("{}", outcome.text),
    }
    Ok(outcome.holds)
}

fn verdict_text(v: &Verdict, holds_line: &str) -> String {
    match &v.witness {
        None => {
            let mut s = format!("holds to order {}: {holds_line}", v.order);
            if let Some(ext) = &v.extension {
                s.push_str(&format!("\nextension: {ext}"));
            }
            s
        }
        Some(w) => format!(
            "fails at ell = {} (order {})\ndiscrepancy: {}",
            w.ell, v.order, w.discrepancy
        ),
    }
}

fn verdict_outcome(check: &str, v: &Verdict, holds_line: &str) -> Outcome {
    Outcome {
        text: verdict_text(v, holds_line),
        report: AnalysisReport::Verdict(VerdictReport::new(check, v)),
        holds: v.holds(),
    }
}

fn series_outcome(op: &str, input: &TruncatedSeries, output: &TruncatedSeries) -> Outcome {
    Outcome {
        text: output.to_string(),
        report: AnalysisReport::Series(SeriesReport {
            operation: op.to_string(),
            input: SeriesRecord::new(input),
            output: SeriesRecord::new(output),
        }),
        holds: true,
    }
}

fn run(command: Command) -> Result<bool> {
    match command {
        Command::Average(a) => with_series(&a, |f, fd, n| Ok(series_outcome("average", f, &average(f, fd, n)?))),
        Command::Raverage(a) => with_series(&a, |f, fd, n| Ok(series_outcome("raverage", f, &raverage(f, fd, n)?))),
        Command::Reduce(a) => with_series(&a, |f, fd, n| {
            Ok(series_outcome("reduce", f, &reduce(f, fd, n)?.to_series()))
        }),
        Command::HoloTest(a) => with_series(&a, |f, fd, n| {
            let v = is_holomorphic_restriction(f, fd, n)?;
            Ok(verdict_outcome("holo-test", &v, "agrees with a holomorphic function"))
        }),
        Command::FlattenTest(a) => with_series(&a, |f, fd, n| {
            let v = is_real_valued(f, fd, n)?;
            Ok(verdict_outcome("flatten-test", &v, "real-valued on the model"))
        }),
        Command::EqualTest(a) => {
            let (_, fd) = load_model(&a.common.model)?;
            let n = resolve_order(a.common.order, &fd)?;
            let inputs = load_inputs(&a, &fd, n)?;
            let [f, g] = <[TruncatedSeries; 2]>::try_from(inputs)
                .map_err(|v| anyhow::anyhow!("equal-test takes exactly two inputs, got {}", v.len()))?;
            let v = equal_on_x(&f, &g, &fd, n)?;
            emit(
                verdict_outcome("equal-test", &v, "equal on the model"),
                a.common.json.as_deref(),
            )
        }
        Command::FlattenSearch(a) => {
            let (_, fd) = load_model(&a.common.model)?;
            let n = resolve_order(a.common.order, &fd)?.max(a.degree);
            let res = flatten_search(&fd, a.degree, n)?;
            let mut text = String::new();
            for c in &res.theta_candidates {
                text.push_str(&format!("degree-k candidate: {}\n", c.polynomial));
            }
            text.push_str(&format!("linear solutions (degree <= {}):\n", a.degree));
            for f in &res.linear_basis {
                text.push_str(&format!("  {f}\n"));
            }
            text.push_str(&format!("verified to order {}:", n));
            for f in &res.verified {
                text.push_str(&format!("\n  {f}"));
            }
            let out = Outcome {
                text,
                report: AnalysisReport::Flattening(FlatteningReport::from(&res)),
                holds: true,
            };
            emit(out, a.common.json.as_deref())
        }
        Command::Rtable(a) => {
            let (model, fd) = load_model(&a.common.model)?;
            let n = resolve_order(a.common.order, &fd)?;
            let table = r_table(&fd, a.degree, n)?;
            let leading = match &model {
                Model::Hypersurface(m) => table.leading_term_checks(m),
                Model::Product(_) => Vec::new(),
            };
            let text = table
                .entries
                .iter()
                .map(|(&(x, y), s)| format!("R(zbar^{x} wbar^{y}) = {s}"))
                .collect::<Vec<_>>()
                .join("\n");
            let out = Outcome {
                text,
                report: AnalysisReport::RTable(RTableReport::new(Some(model.to_config()), &table, &leading)),
                holds: leading.iter().all(|c| c.holds),
            };
            emit(out, a.common.json.as_deref())
        }
        Command::Reconstruct(a) => {
            let text = fs::read_to_string(&a.rtable).with_context(|| format!("reading {}", a.rtable.display()))?;
            let table = match AnalysisReport::from_json(&text)? {
                AnalysisReport::RTable(t) => t.to_table()?,
                _ => bail!("{} is not an R-table report", a.rtable.display()),
            };
            let (text, report, holds) = match reconstruct_model(&table, a.k) {
                Ok(m) => {
                    let config = Model::Hypersurface(m).to_config();
                    let text = serde_json::to_string_pretty(&config)?;
                    (text, AnalysisReport::Reconstruction { model: config }, true)
                }
                Err(Error::NotAModel(reason)) => {
                    debug!("reconstruction failed: {reason}");
                    println!("not a model table: {reason}");
                    return Ok(false);
                }
                Err(e) => return Err(e.into()),
            };
            emit(Outcome { text, report, holds }, a.json.as_deref())
        }
        Command::GenfunCheck(a) => {
            let (_, fd) = load_model(&a.common.model)?;
            let n = resolve_order(a.common.order, &fd)?;
            let r = generating_series_check(&fd, n, a.terms)?;
            let text = r
                .entries
                .iter()
                .map(|e| {
                    let mark = if e.agree { "ok" } else { "MISMATCH" };
                    format!("s^{}: {} [{mark}]", e.a, e.averaged)
                })
                .collect::<Vec<_>>()
                .join("\n");
            let out = Outcome {
                text,
                holds: r.all_agree(),
                report: AnalysisReport::Generating(GeneratingReport::from(&r)),
            };
            emit(out, a.common.json.as_deref())
        }
        Command::Defeq(a) => {
            let (_, fd) = load_model(&a.model)?;
            let n = resolve_order(a.order, &fd)?;
            let d = standard_defining_equations(&fd, n)?;
            let text = d
                .equations
                .iter()
                .map(|((gz, gw), s)| format!("Phi_({gz},{gw}) = {s}"))
                .collect::<Vec<_>>()
                .join("\n");
            let out = Outcome {
                text,
                report: AnalysisReport::DefiningEquations(DefiningEquationsReport::from(&d)),
                holds: true,
            };
            emit(out, a.json.as_deref())
        }
    }
}

fn with_series(
    a: &SeriesArgs,
    op: impl FnOnce(&TruncatedSeries, &FiberData, u32) -> segre_core::Result<Outcome>,
) -> Result<bool> {
    let (_, fd) = load_model(&a.common.model)?;
    let n = resolve_order(a.common.order, &fd)?;
    let f = single_input(a, &fd, n)?;
    emit(op(&f, &fd, n)?, a.common.json.as_deref())
}
