use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use edgereg::harness::{
    compare, fixtures, run_fixture, run_sweep_timed, CompareOptions, ComparisonRecord, FixtureOutcome, SweepBounds,
    SweepReport, Verdict,
};
use edgereg::oracle::DEFAULT_BUDGET;
use edgereg::polarize::polarized_num_vars;
use edgereg::{
    build_family, parse_ideal, resolve, BettiReport, Error, Family, Field, MonomialIdeal, OracleConfig, Route,
    VertexWeightedDigraph,
};
use serde::Serialize;

/// Exact Betti tables of weighted oriented edge ideals and checks of the
/// closed-form reg/pd formulas for layered families.
#[derive(Parser)]
#[command(name = "edgereg", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Betti table, reg, pd and depth of a graph's edge ideal (or of an ideal).
    Compute(ComputeArgs),
    /// Oracle versus closed form for one graph.
    Compare(CompareArgs),
    /// Run the bundled counterexample graphs.
    VerifyPaper(VerifyArgs),
    /// Compare every valid family instance in a bound box.
    Sweep(SweepArgs),
    /// Print the graph JSON of a family instance.
    Generate(GenerateArgs),
}

#[derive(Args, Clone)]
struct OracleArgs {
    /// Coefficient field: `q` or `p=<prime>`.
    #[arg(long, default_value = "q", value_parser = parse_field)]
    field: Field,
    /// Largest accepted number of polarized variables.
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    budget: usize,
    /// Visit every vertex subset instead of skipping cones.
    #[arg(long)]
    no_prune: bool,
    /// Homology route: auto, direct or nerve.
    #[arg(long, default_value = "auto")]
    route: Route,
    /// Worker threads (default: available parallelism).
    #[arg(long)]
    jobs: Option<usize>,
}

impl OracleArgs {
    fn config(&self) -> OracleConfig {
        OracleConfig { field: self.field, prune: !self.no_prune, route: self.route, budget: self.budget }
    }
}

#[derive(Args, Clone)]
struct OutputArgs {
    /// Also write the JSON result to this file.
    #[arg(long, value_name = "PATH")]
    json: Option<PathBuf>,
    /// Human-readable output instead of JSON on stdout.
    #[arg(long)]
    text: bool,
}

#[derive(Args)]
struct ComputeArgs {
    /// Graph JSON file.
    #[arg(required_unless_present = "ideal")]
    graph: Option<PathBuf>,
    /// Monomial ideal such as "(x1*x2^2, x2*x3)" instead of a graph.
    #[arg(long, conflicts_with = "graph")]
    ideal: Option<String>,
    #[command(flatten)]
    oracle: OracleArgs,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args, Clone)]
struct InstanceArgs {
    /// path-layered, whisker-layered, cyclic-layered (or 1, 2, 3).
    #[arg(long)]
    family: Option<Family>,
    /// Part sizes, e.g. `1,2,1`.
    #[arg(long, value_delimiter = ',')]
    sizes: Option<Vec<usize>>,
    /// Weights per part, parts separated by `/`, e.g. `1/2,3/2`.
    #[arg(long, value_parser = parse_weights)]
    weights: Option<Weights>,
}

#[derive(Args)]
struct CompareArgs {
    /// Graph JSON file; omit to build from --family/--sizes/--weights.
    graph: Option<PathBuf>,
    #[command(flatten)]
    instance: InstanceArgs,
    /// Apply the formula even when the family hypotheses fail.
    #[arg(long)]
    formal: bool,
    /// Include per-phase wall-clock times.
    #[arg(long)]
    timing: bool,
    #[command(flatten)]
    oracle: OracleArgs,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct VerifyArgs {
    #[command(flatten)]
    oracle: OracleArgs,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct SweepArgs {
    /// path-layered, whisker-layered, cyclic-layered (or 1, 2, 3).
    #[arg(long)]
    family: Family,
    /// Number of parts, `3` or a range `2-3`.
    #[arg(long, default_value = "2-3", value_parser = parse_range)]
    parts: (usize, usize),
    /// Largest part size.
    #[arg(long, default_value_t = 2)]
    max_size: usize,
    /// Allowed weights of non-source vertices.
    #[arg(long, value_delimiter = ',', default_value = "1,2,3")]
    weights: Vec<u32>,
    /// Include per-phase wall-clock times in each record.
    #[arg(long)]
    timing: bool,
    #[command(flatten)]
    oracle: OracleArgs,
    /// Also write the full JSON report to this file.
    #[arg(long, value_name = "PATH")]
    json: Option<PathBuf>,
}

#[derive(Args)]
struct GenerateArgs {
    #[command(flatten)]
    instance: InstanceArgs,
}

#[derive(Debug, Clone)]
struct Weights(Vec<Vec<u32>>);

fn parse_field(s: &str) -> Result<Field, String> {
    Field::parse(s).map_err(|e| e.to_string())
}

fn parse_weights(s: &str) -> Result<Weights, String> {
    s.split('/')
        .map(|part| {
            part.split(',')
                .map(|w| w.trim().parse::<u32>().map_err(|e| format!("weight {w:?}: {e}")))
                .collect()
        })
        .collect::<Result<_, _>>()
        .map(Weights)
}

fn parse_range(s: &str) -> Result<(usize, usize), String> {
    let bad = |e: std::num::ParseIntError| format!("{s:?}: {e}");
    match s.split_once('-') {
        Some((a, b)) => Ok((a.trim().parse().map_err(bad)?, b.trim().parse().map_err(bad)?)),
        None => {
            let m = s.trim().parse().map_err(bad)?;
            Ok((m, m))
        }
    }
}

/// A failure with its process exit code.
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Budget { .. } => 3,
            Error::Unclassifiable(_) | Error::Hypotheses(_) | Error::MissingPartition => 4,
            _ => 2,
        };
        Failure { code, message: e.to_string() }
    }
}

fn io_failure(path: &Path, e: std::io::Error) -> Failure {
    Failure { code: 2, message: format!("{}: {e}", path.display()) }
}

type CliResult = Result<u8, Failure>;

fn read_graph(path: &Path) -> Result<VertexWeightedDigraph, Failure> {
    let src = fs::read_to_string(path).map_err(|e| io_failure(path, e))?;
    Ok(VertexWeightedDigraph::from_json(&src)?)
}

fn emit<T: Serialize>(value: &T, output: &OutputArgs, text: impl FnOnce() -> String) -> Result<(), Failure> {
    let json = serde_json::to_string_pretty(value).expect("results serialize");
    if let Some(path) = &output.json {
        fs::write(path, format!("{json}\n")).map_err(|e| io_failure(path, e))?;
    }
    if output.text {
        print!("{}", text());
    } else {
        println!("{json}");
    }
    Ok(())
}

fn set_jobs(jobs: Option<usize>) -> Result<(), Failure> {
    if let Some(k) = jobs {
        rayon::ThreadPoolBuilder::new()
            .num_threads(k.max(1))
            .build_global()
            .map_err(|e| Failure { code: 2, message: e.to_string() })?;
    }
    Ok(())
}

fn cmd_compute(args: ComputeArgs) -> CliResult {
    set_jobs(args.oracle.jobs)?;
    let ideal: MonomialIdeal = match (&args.graph, &args.ideal) {
        (_, Some(src)) => parse_ideal(src)?,
        (Some(path), None) => read_graph(path)?.edge_ideal()?,
        (None, None) => unreachable!("clap requires one input"),
    };
    let cfg = args.oracle.config();
    let (table, summary) = resolve(&ideal, &cfg)?;
    let report = BettiReport::new(&table, &summary);
    emit(&report, &args.output, || {
        format!(
            "ideal {ideal}\npolarized variables {}\n{}reg {}  pd {}  depth {}  (n = {})\n",
            polarized_num_vars(&ideal),
            table.to_grid(),
            summary.reg,
            summary.pd,
            summary.depth,
            summary.n
        )
    })?;
    Ok(0)
}

fn instance_graph(args: &InstanceArgs) -> Result<VertexWeightedDigraph, Failure> {
    let usage = |what: &str| Failure { code: 2, message: format!("{what} is required without a graph file") };
    let family = args.family.ok_or_else(|| usage("--family"))?;
    let sizes = args.sizes.as_ref().ok_or_else(|| usage("--sizes"))?;
    let weights = args.weights.as_ref().ok_or_else(|| usage("--weights"))?;
    Ok(build_family(family, sizes, &weights.0)?.graph().clone())
}

fn record_text(rec: &ComparisonRecord) -> String {
    let p = &rec.prediction;
    let mut out = format!(
        "{}\nideal {}\nformula ({}): reg {} pd {} depth {}\noracle: reg {} pd {} depth {}\nverdict {}\n",
        rec.instance.key,
        rec.ideal,
        p.source,
        p.reg,
        p.pd,
        p.depth,
        rec.oracle.reg,
        rec.oracle.pd,
        rec.oracle.depth,
        rec.verdict
    );
    for v in &p.violations {
        out.push_str(&format!("violated: {v}\n"));
    }
    for w in &p.warnings {
        out.push_str(&format!("warning: {w}\n"));
    }
    out
}

fn cmd_compare(args: CompareArgs) -> CliResult {
    set_jobs(args.oracle.jobs)?;
    let graph = match &args.graph {
        Some(path) => read_graph(path)?,
        None => instance_graph(&args.instance)?,
    };
    let opts = CompareOptions { oracle: args.oracle.config(), formal: args.formal, timing: args.timing };
    let rec = compare(&graph, args.instance.family, &opts)?;
    for w in &rec.prediction.warnings {
        eprintln!("warning: {w}");
    }
    emit(&rec, &args.output, || record_text(&rec))?;
    Ok(if rec.verdict == Verdict::Mismatch { 1 } else { 0 })
}

/// Largest fixture size checked with pruning off.
const UNPRUNED_LIMIT: usize = 14;

#[derive(Serialize)]
struct VerifyReport {
    field: String,
    prune: bool,
    outcomes: Vec<FixtureOutcome>,
    skipped: Vec<String>,
    oracle_matches: usize,
    formula_matches: usize,
    expected_verdicts: usize,
    /// Oracle deviations over a prime field; reported, not failures.
    findings: Vec<String>,
    passed: bool,
}

fn cmd_verify(args: VerifyArgs) -> CliResult {
    set_jobs(args.oracle.jobs)?;
    let cfg = args.oracle.config();
    let mut outcomes = Vec::new();
    let mut skipped = Vec::new();
    for f in fixtures() {
        let needed = polarized_num_vars(&f.digraph()?.edge_ideal()?);
        if !cfg.prune && needed > UNPRUNED_LIMIT {
            skipped.push(format!("{}: {needed} polarized variables with pruning off", f.name));
            continue;
        }
        outcomes.push(run_fixture(&f, &cfg)?);
    }
    let rational = cfg.field == Field::Rational;
    let findings: Vec<String> = outcomes
        .iter()
        .filter(|o| !rational && !o.oracle_ok())
        .map(|o| format!("{}: oracle over {} gives {:?}, expected {:?}", o.name, cfg.field, o.oracle, o.expected.oracle))
        .collect();
    let passed = outcomes.iter().all(|o| {
        o.ideal_ok && o.formula_ok() && o.verdict_ok() && (o.oracle_ok() || !rational)
    });
    let report = VerifyReport {
        field: cfg.field.to_string(),
        prune: cfg.prune,
        oracle_matches: outcomes.iter().filter(|o| o.oracle_ok()).count(),
        formula_matches: outcomes.iter().filter(|o| o.formula_ok()).count(),
        expected_verdicts: outcomes.iter().filter(|o| o.verdict_ok()).count(),
        outcomes,
        skipped,
        findings,
        passed,
    };
    emit(&report, &args.output, || {
        let mut out = String::new();
        for o in &report.outcomes {
            out.push_str(&format!(
                "{:<22} oracle ({}, {}) expected ({}, {})  formula ({}, {}) expected ({}, {})  {}  {}\n",
                o.name,
                o.oracle.reg,
                o.oracle.pd,
                o.expected.oracle.reg,
                o.expected.oracle.pd,
                o.formula.reg,
                o.formula.pd,
                o.expected.formula.reg,
                o.expected.formula.pd,
                o.verdict,
                if o.passes() { "ok" } else { "DEVIATION" }
            ));
        }
        for s in &report.skipped {
            out.push_str(&format!("skipped {s}\n"));
        }
        for f in &report.findings {
            out.push_str(&format!("finding {f}\n"));
        }
        let n = report.outcomes.len();
        out.push_str(&format!(
            "oracle {}/{n}, formula {}/{n}, verdicts {}/{n}: {}\n",
            report.oracle_matches,
            report.formula_matches,
            report.expected_verdicts,
            if report.passed { "PASS" } else { "FAIL" }
        ));
        out
    })?;
    Ok(if report.passed { 0 } else { 1 })
}

fn cmd_sweep(args: SweepArgs) -> CliResult {
    set_jobs(args.oracle.jobs)?;
    let (lo, hi) = args.parts;
    let bounds = SweepBounds {
        family: args.family,
        parts: lo..=hi,
        max_part_size: args.max_size,
        weights: args.weights.clone(),
        budget: args.oracle.budget,
    };
    let report: SweepReport = run_sweep_timed(&bounds, &args.oracle.config(), args.timing)?;
    for rec in &report.records {
        println!("{}", serde_json::to_string(rec).expect("records serialize"));
    }
    #[derive(Serialize)]
    struct Summary<'a> {
        tally: &'a edgereg::harness::Tally,
        skipped_invalid: usize,
        skipped_budget: usize,
    }
    let summary =
        Summary { tally: &report.tally, skipped_invalid: report.skipped_invalid, skipped_budget: report.skipped_budget };
    println!("{}", serde_json::to_string(&summary).expect("summary serializes"));
    if let Some(path) = &args.json {
        let json = serde_json::to_string_pretty(&report).expect("report serializes");
        fs::write(path, format!("{json}\n")).map_err(|e| io_failure(path, e))?;
    }
    if report.tally.total == 0 {
        eprintln!("warning: no valid instance in the bound box");
    }
    Ok(if report.tally.mismatched > 0 { 1 } else { 0 })
}

fn cmd_generate(args: GenerateArgs) -> CliResult {
    let graph = instance_graph(&args.instance)?;
    let json = serde_json::to_string_pretty(&graph.to_json_value()).expect("graphs serialize");
    println!("{json}");
    Ok(0)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Compute(a) => cmd_compute(a),
        Command::Compare(a) => cmd_compare(a),
        Command::VerifyPaper(a) => cmd_verify(a),
        Command::Sweep(a) => cmd_sweep(a),
        Command::Generate(a) => cmd_generate(a),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
