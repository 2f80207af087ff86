//! Command line front end: spectra, colouring checks, constructions,
//! recolouring walks, claim verification and partition sweeps.
//!
//! Exit codes: 0 success, 2 at least one claim REFUTED, 3 bad input
//! (flags, files, parameter ranges). A failed colouring check is still
//! exit 0: the check ran and the verdict is data.

use anyhow::{anyhow, bail, Context, Result};
use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;
use sigma_spectra::constructions::{self, SchemeId};
use sigma_spectra::{
    check_explicit, check_fast, compute_spectrum, partitions_of, spectrum_walk, verify_instance,
    ColourBounds, Colouring, Direction, Partition, SigmaInstance, SpectrumReport,
    VerificationReport, DEFAULT_BUDGET, SCHEMA,
};
use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

const BUDGET_ENV: &str = "SIGMA_SPECTRA_BUDGET";

#[derive(Parser)]
#[command(
    name = "sigma-spectra",
    version,
    about = "Exact chromatic spectra of sigma-hypergraphs under colour-count bounds"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide colourability for every k in 1..=k_max and report the spectrum
    Spectrum(SpectrumArgs),
    /// Check one colouring against the bounds
    Check(CheckArgs),
    /// Build a named construction scheme and self-check it
    Construct(ConstructArgs),
    /// Walk between colour counts by collapse/merge steps
    Walk(WalkArgs),
    /// Grade every applicable structural claim against a computed spectrum
    Verify(VerifyArgs),
    /// Verify every partition of r on classes of the given shape
    Sweep(SweepArgs),
}

#[derive(Args)]
struct InstanceArgs {
    /// Number of vertex classes
    #[arg(long, conflicts_with = "file")]
    n: Option<u32>,
    /// Edge size
    #[arg(long, conflicts_with = "file")]
    r: Option<u32>,
    /// Vertices per class
    #[arg(long, conflicts_with = "file")]
    q: Option<u32>,
    /// Partition parts, comma separated (e.g. 2,1,1)
    #[arg(long, value_delimiter = ',', conflicts_with = "file")]
    sigma: Option<Vec<u32>>,
    /// JSON file with {"n":..,"r":..,"q":..,"sigma":[..]} instead of flags
    #[arg(long)]
    file: Option<PathBuf>,
}

impl InstanceArgs {
    fn load(&self) -> Result<SigmaInstance> {
        if let Some(path) = &self.file {
            let text = std::fs::read_to_string(path)
                .with_context(|| format!("reading {}", path.display()))?;
            return serde_json::from_str(&text)
                .with_context(|| format!("malformed instance JSON in {}", path.display()));
        }
        match (self.n, self.r, self.q, &self.sigma) {
            (Some(n), Some(r), Some(q), Some(sigma)) => {
                let sigma = Partition::new(sigma).map_err(|e| anyhow!("{e}"))?;
                SigmaInstance::new(n, r, q, sigma).map_err(|e| anyhow!("{e}"))
            }
            _ => bail!("give an instance either via --file or via all of --n --r --q --sigma"),
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum BoundsName {
    /// alpha=2, beta=r-1: no monochromatic and no rainbow edges
    Nmnr,
    /// alpha=2, beta=r: no monochromatic edges
    Classical,
}

#[derive(Args)]
struct BoundsArgs {
    /// Named bounds preset
    #[arg(long, value_enum, conflicts_with_all = ["alpha", "beta"])]
    bounds: Option<BoundsName>,
    /// Minimum distinct colours per edge (>= 2)
    #[arg(long, requires = "beta")]
    alpha: Option<u32>,
    /// Maximum distinct colours per edge (<= r)
    #[arg(long, requires = "alpha")]
    beta: Option<u32>,
}

impl BoundsArgs {
    fn resolve(&self, r: u32) -> Result<ColourBounds> {
        if let (Some(alpha), Some(beta)) = (self.alpha, self.beta) {
            if alpha < 2 {
                bail!("--alpha must be at least 2 (got {alpha}): below that every edge passes the low bound");
            }
            if beta > r {
                bail!("--beta must not exceed r={r} (got {beta}): an edge has at most r colours");
            }
            return ColourBounds::new(alpha, beta).map_err(|e| anyhow!("{e}"));
        }
        Ok(match self.bounds.unwrap_or(BoundsName::Nmnr) {
            BoundsName::Nmnr => ColourBounds::nmnr(r),
            BoundsName::Classical => ColourBounds::classical(r),
        })
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Args)]
struct OutputArgs {
    /// Search budget in nodes per k (default: SIGMA_SPECTRA_BUDGET or 10^8)
    #[arg(long)]
    budget: Option<u64>,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
}

impl OutputArgs {
    fn budget(&self) -> Result<u64> {
        if let Some(b) = self.budget {
            return Ok(b);
        }
        match std::env::var(BUDGET_ENV) {
            Ok(text) => text
                .trim()
                .parse()
                .map_err(|_| anyhow!("{BUDGET_ENV} must be a node count, got {text:?}")),
            Err(_) => Ok(DEFAULT_BUDGET),
        }
    }
}

#[derive(Args)]
struct SpectrumArgs {
    #[command(flatten)]
    instance: InstanceArgs,
    #[command(flatten)]
    bounds: BoundsArgs,
    /// Largest colour count to examine (default: number of vertices)
    #[arg(long)]
    k_max: Option<u32>,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Args)]
struct CheckArgs {
    #[command(flatten)]
    instance: InstanceArgs,
    /// JSON file with {"classes":[[..],..]}
    #[arg(long)]
    colouring: PathBuf,
    #[command(flatten)]
    bounds: BoundsArgs,
    /// Cross-check with the edge-enumerating checker
    #[arg(long)]
    explicit: bool,
    /// Edge cap for the explicit cross-check
    #[arg(long, default_value_t = 10_000_000)]
    edge_cap: u64,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Clone, Copy, ValueEnum)]
enum SchemeName {
    Zone,
    Block,
    TwoZone,
    SmallR4K3,
    SmallR5K3,
    SmallR5K4,
    TwoTwoLow,
    TwoTwoHigh,
}

#[derive(Args)]
struct ConstructArgs {
    #[command(flatten)]
    instance: InstanceArgs,
    #[arg(long, value_enum)]
    scheme: SchemeName,
    /// Colour count for the zone scheme
    #[arg(long)]
    k: Option<u32>,
    /// Upper-zone class count for the two-zone scheme
    #[arg(long)]
    t: Option<u32>,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Clone, Copy, ValueEnum)]
enum WalkDirection {
    Down,
    Up,
}

#[derive(Args)]
struct WalkArgs {
    #[command(flatten)]
    instance: InstanceArgs,
    /// JSON file with the admissible start colouring
    #[arg(long)]
    colouring: PathBuf,
    #[arg(long, value_enum)]
    direction: WalkDirection,
    /// Colour count to walk towards
    #[arg(long)]
    target: u32,
    #[arg(long, default_value_t = 10_000)]
    step_limit: usize,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Args)]
struct VerifyArgs {
    #[command(flatten)]
    instance: InstanceArgs,
    #[command(flatten)]
    bounds: BoundsArgs,
    /// Largest colour count to examine (default: number of vertices)
    #[arg(long)]
    k_max: Option<u32>,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Args)]
struct SweepArgs {
    /// Edge size whose partitions are swept
    #[arg(long)]
    r: u32,
    /// Number of vertex classes
    #[arg(long)]
    n: u32,
    /// Vertices per class
    #[arg(long)]
    q: u32,
    #[command(flatten)]
    bounds: BoundsArgs,
    /// Largest colour count to examine (default: number of vertices)
    #[arg(long)]
    k_max: Option<u32>,
    /// Verify only this many randomly chosen partitions
    #[arg(long)]
    sample: Option<usize>,
    /// Seed for --sample
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[command(flatten)]
    out: OutputArgs,
}

fn main() -> ExitCode {
    // die quietly when the downstream pager closes the pipe
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 3,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli.command) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(3)
        }
    }
}

fn run(command: Command) -> Result<ExitCode> {
    match command {
        Command::Spectrum(args) => cmd_spectrum(args),
        Command::Check(args) => cmd_check(args),
        Command::Construct(args) => cmd_construct(args),
        Command::Walk(args) => cmd_walk(args),
        Command::Verify(args) => cmd_verify(args),
        Command::Sweep(args) => cmd_sweep(args),
    }
}

/// SCREAMING_SNAKE rendering of a status for text output, derived from
/// its wire name so the two spellings cannot drift apart.
fn status_text<T: serde::Serialize>(status: &T) -> String {
    match serde_json::to_value(status) {
        Ok(serde_json::Value::String(s)) => s.to_uppercase(),
        other => format!("{other:?}"),
    }
}

fn with_schema(value: serde_json::Value) -> serde_json::Value {
    let mut doc = serde_json::Map::new();
    doc.insert("schema".into(), SCHEMA.into());
    if let serde_json::Value::Object(map) = value {
        doc.extend(map);
    }
    serde_json::Value::Object(doc)
}

fn print_json<T: serde::Serialize>(value: &T) -> Result<()> {
    let value = with_schema(serde_json::to_value(value)?);
    println!("{}", serde_json::to_string_pretty(&value)?);
    Ok(())
}

/// Interval-union rendering of a k set: maximal runs, e.g. "{2} ∪ [7,13]".
fn format_runs(ks: &[u32]) -> String {
    if ks.is_empty() {
        return "∅".into();
    }
    let mut out = String::new();
    let mut i = 0;
    while i < ks.len() {
        let start = ks[i];
        let mut end = start;
        while i + 1 < ks.len() && ks[i + 1] == end + 1 {
            i += 1;
            end = ks[i];
        }
        if !out.is_empty() {
            out.push_str(" ∪ ");
        }
        if start == end {
            let _ = write!(out, "{{{start}}}");
        } else {
            let _ = write!(out, "[{start},{end}]");
        }
        i += 1;
    }
    out
}

fn print_spectrum_text(report: &SpectrumReport) {
    println!(
        "instance {}  bounds ({},{})  k_max {}",
        report.instance, report.bounds.alpha, report.bounds.beta, report.k_max
    );
    println!("spectrum {}", format_runs(&report.spectrum()));
    match (report.chi, report.chi_bar) {
        (Some(lo), Some(hi)) => println!("chi {lo}  chi_bar {hi}"),
        _ => println!("chi -  chi_bar -"),
    }
    let gap_text: Vec<String> = report
        .gaps
        .iter()
        .map(|g| format!("[{},{}]", g[0], g[1]))
        .collect();
    println!(
        "gaps {}  complete {}",
        if gap_text.is_empty() {
            "none".into()
        } else {
            gap_text.join(" ")
        },
        report.complete
    );
    for v in &report.verdicts {
        let mut line = format!("k={} {:?}", v.k, v.status);
        if v.nodes_explored > 0 {
            let _ = write!(line, " nodes={}", v.nodes_explored);
        }
        if v.budget_exhausted {
            line.push_str(" budget-exhausted");
        }
        println!("{}", line.to_lowercase());
    }
}

fn cmd_spectrum(args: SpectrumArgs) -> Result<ExitCode> {
    let inst = args.instance.load()?;
    let bounds = args.bounds.resolve(inst.r())?;
    let k_max = args.k_max.unwrap_or(inst.vertex_count());
    let budget = args.out.budget()?;
    let report = compute_spectrum(&inst, bounds, k_max, budget).map_err(|e| anyhow!("{e}"))?;
    match args.out.format {
        Format::Json => {
            let mut value = serde_json::to_value(&report)?;
            value["budget"] = budget.into();
            print_json(&value)?;
        }
        Format::Text => {
            print_spectrum_text(&report);
            println!("budget {budget}");
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_check(args: CheckArgs) -> Result<ExitCode> {
    let inst = args.instance.load()?;
    let bounds = args.bounds.resolve(inst.r())?;
    let text = std::fs::read_to_string(&args.colouring)
        .with_context(|| format!("reading {}", args.colouring.display()))?;
    let col: Colouring = serde_json::from_str(&text)
        .with_context(|| format!("malformed colouring JSON in {}", args.colouring.display()))?;
    let verdict = check_fast(&inst, &col, bounds).map_err(|e| anyhow!("{e}"))?;
    let explicit = if args.explicit {
        let v = check_explicit(&inst, &col, bounds, args.edge_cap).map_err(|e| anyhow!("{e}"))?;
        if v.status != verdict.status {
            bail!(
                "checker disagreement on {inst}: fast {:?}, explicit {:?} (this is a bug)",
                verdict.status,
                v.status
            );
        }
        Some(v)
    } else {
        None
    };
    match args.out.format {
        Format::Json => {
            let mut doc = serde_json::json!({
                "instance": inst,
                "bounds": bounds,
                "colours_used": col.colours_used(),
                "verdict": verdict,
            });
            if let Some(v) = &explicit {
                doc["explicit_verdict"] = serde_json::to_value(v)?;
                doc["checkers_agree"] = true.into();
            }
            print_json(&doc)?;
        }
        Format::Text => {
            println!("instance {inst}  bounds ({},{})", bounds.alpha, bounds.beta);
            println!("status {}", status_text(&verdict.status));
            if let Some(w) = &verdict.witness {
                let vs: Vec<String> = w.vertices.iter().map(|v| v.to_string()).collect();
                println!(
                    "witness edge {}  distinct colours {}",
                    vs.join(" "),
                    w.distinct_colours
                );
            }
            if explicit.is_some() {
                println!("explicit cross-check agrees");
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_construct(args: ConstructArgs) -> Result<ExitCode> {
    let inst = args.instance.load()?;
    let scheme = match args.scheme {
        SchemeName::Zone => SchemeId::Zone {
            k: args.k.ok_or_else(|| anyhow!("the zone scheme needs --k"))?,
        },
        SchemeName::TwoZone => SchemeId::TwoZone {
            t: args
                .t
                .ok_or_else(|| anyhow!("the two-zone scheme needs --t"))?,
        },
        SchemeName::Block => SchemeId::Block,
        SchemeName::SmallR4K3 => SchemeId::SmallR4K3,
        SchemeName::SmallR5K3 => SchemeId::SmallR5K3,
        SchemeName::SmallR5K4 => SchemeId::SmallR5K4,
        SchemeName::TwoTwoLow => SchemeId::TwoTwoLow,
        SchemeName::TwoTwoHigh => SchemeId::TwoTwoHigh,
    };
    let col = constructions::build(&inst, scheme).map_err(|e| anyhow!("{e}"))?;
    let bounds = constructions::scheme_bounds(&inst, scheme);
    let verdict = check_fast(&inst, &col, bounds).map_err(|e| anyhow!("{e}"))?;
    match args.out.format {
        Format::Json => print_json(&serde_json::json!({
            "instance": inst,
            "scheme": scheme.to_string(),
            "bounds": bounds,
            "colours": col.colours_used(),
            "colouring": col,
            "self_check": verdict.status,
        }))?,
        Format::Text => {
            println!(
                "{} on {inst}: {} colours under ({},{})",
                scheme,
                col.colours_used(),
                bounds.alpha,
                bounds.beta
            );
            for (i, row) in col.classes().iter().enumerate() {
                let cells: Vec<String> = row.iter().map(u32::to_string).collect();
                println!("class {i}: {}", cells.join(" "));
            }
            println!("self-check {}", status_text(&verdict.status));
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_walk(args: WalkArgs) -> Result<ExitCode> {
    let inst = args.instance.load()?;
    let text = std::fs::read_to_string(&args.colouring)
        .with_context(|| format!("reading {}", args.colouring.display()))?;
    let col: Colouring = serde_json::from_str(&text)
        .with_context(|| format!("malformed colouring JSON in {}", args.colouring.display()))?;
    let direction = match args.direction {
        WalkDirection::Down => Direction::Down,
        WalkDirection::Up => Direction::Up,
    };
    let trace = spectrum_walk(&inst, &col, direction, args.target, args.step_limit)
        .map_err(|e| anyhow!("{e}"))?;
    match args.out.format {
        Format::Json => {
            // one JSON document per line: header, each step, summary
            println!(
                "{}",
                serde_json::json!({
                    "schema": SCHEMA,
                    "instance": inst,
                    "direction": direction,
                    "target_k": args.target,
                    "start_k": col.colours_used(),
                })
            );
            for step in &trace.steps {
                println!("{}", serde_json::to_string(step)?);
            }
            println!(
                "{}",
                serde_json::json!({
                    "terminal": trace.terminal,
                    "end_k": trace.end.colours_used(),
                    "end": trace.end,
                })
            );
        }
        Format::Text => {
            println!(
                "walk {:?} from k={} towards k={} on {inst}",
                direction,
                col.colours_used(),
                args.target
            );
            for (i, step) in trace.steps.iter().enumerate() {
                let cols: Vec<String> = step.colours.iter().map(u32::to_string).collect();
                println!(
                    "step {}: {:?} class {} colours [{}] -> k={}",
                    i + 1,
                    step.rule,
                    step.class,
                    cols.join(","),
                    step.k
                );
            }
            println!("terminal {:?} at k={}", trace.terminal, trace.end.colours_used());
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn verify_exit(report: &VerificationReport) -> ExitCode {
    if report.refuted().next().is_some() {
        ExitCode::from(2)
    } else {
        ExitCode::SUCCESS
    }
}

fn print_verify_text(report: &VerificationReport) {
    println!(
        "instance {}  bounds ({},{})  k_max {}  spectrum {}",
        report.instance,
        report.bounds.alpha,
        report.bounds.beta,
        report.k_max,
        format_runs(&report.spectrum.spectrum())
    );
    for res in &report.claims {
        println!(
            "{:<24} {:<15} {:<12} {:<10} {}",
            res.claim.source,
            res.claim.kind.to_string(),
            res.claim.k_set.to_string(),
            res.status.to_string(),
            res.detail
        );
    }
    for range in &report.theorem_silent {
        println!(
            "theorem-silent, computed only: {}",
            if range[0] == range[1] {
                format!("{{{}}}", range[0])
            } else {
                format!("[{},{}]", range[0], range[1])
            }
        );
    }
}

fn cmd_verify(args: VerifyArgs) -> Result<ExitCode> {
    let inst = args.instance.load()?;
    let bounds = args.bounds.resolve(inst.r())?;
    let k_max = args.k_max.unwrap_or(inst.vertex_count());
    let budget = args.out.budget()?;
    let report = verify_instance(&inst, bounds, k_max, budget).map_err(|e| anyhow!("{e}"))?;
    match args.out.format {
        Format::Json => print_json(&report)?,
        Format::Text => print_verify_text(&report),
    }
    Ok(verify_exit(&report))
}

fn cmd_sweep(args: SweepArgs) -> Result<ExitCode> {
    let bounds = args.bounds.resolve(args.r)?;
    let budget = args.out.budget()?;
    let mut sigmas: Vec<Partition> = partitions_of(args.r)
        .into_iter()
        .filter(|s| s.part_count() >= 2)
        .collect();
    if let Some(sample) = args.sample {
        let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
        sigmas.shuffle(&mut rng);
        sigmas.truncate(sample);
    }
    // canonical report order regardless of sampling order
    sigmas.sort_by(|a, b| b.parts().cmp(a.parts()));
    let mut results = Vec::new();
    let mut refuted_any = false;
    for sigma in sigmas {
        let inst = match SigmaInstance::new(args.n, args.r, args.q, sigma.clone()) {
            Ok(inst) => inst,
            Err(e) => bail!("sweep instance H({},{},{}|{sigma}) is invalid: {e}", args.n, args.r, args.q),
        };
        let k_max = args.k_max.unwrap_or(inst.vertex_count());
        let report = verify_instance(&inst, bounds, k_max, budget).map_err(|e| anyhow!("{e}"))?;
        refuted_any |= report.refuted().next().is_some();
        results.push(report);
    }
    match args.out.format {
        Format::Json => {
            let docs: Vec<serde_json::Value> = results
                .iter()
                .map(|rep| {
                    serde_json::json!({
                        "sigma": rep.instance.sigma(),
                        "spectrum": rep.spectrum.spectrum(),
                        "gaps": rep.spectrum.gaps,
                        "complete": rep.spectrum.complete,
                        "claims": rep.claims.iter().map(|c| serde_json::json!({
                            "source": c.claim.source,
                            "kind": c.claim.kind,
                            "k_set": c.claim.k_set,
                            "status": c.status,
                        })).collect::<Vec<_>>(),
                    })
                })
                .collect();
            print_json(&serde_json::json!({
                "n": args.n,
                "r": args.r,
                "q": args.q,
                "bounds": bounds,
                "budget": budget,
                "results": docs,
            }))?;
        }
        Format::Text => {
            for rep in &results {
                let statuses: Vec<String> = rep
                    .claims
                    .iter()
                    .map(|c| format!("{} {}", c.claim.source, c.status))
                    .collect();
                println!(
                    "sigma {}  spectrum {}  {}",
                    rep.instance.sigma(),
                    format_runs(&rep.spectrum.spectrum()),
                    if statuses.is_empty() {
                        "no applicable claims".to_string()
                    } else {
                        statuses.join(", ")
                    }
                );
            }
        }
    }
    Ok(if refuted_any {
        ExitCode::from(2)
    } else {
        ExitCode::SUCCESS
    })
}
