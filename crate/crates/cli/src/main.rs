use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use monoreg::betti::{betti_table_with, regularity_with, BettiMethod, BettiOptions};
use monoreg::degree_complex::{reg_witness_search_capped, reg_witness_search_in_box};
use monoreg::harness::{
    self, emit_reports, CorpusItem, CorpusMode, CorpusSpec, Grid, HarnessConfig, Suite,
};
use monoreg::io::{format_ideal, parse_ideal};
use monoreg::powers::{integral_closure_power_with, symbolic_power, DEFAULT_CLOSURE_BOX_CAP};
use monoreg::{height, CoefficientField, MonomialIdeal};

#[derive(Parser)]
#[command(name = "monoreg", version, about = "Regularity of monomial ideals and their powers")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute one invariant of the ideal in FILE.
    Compute(ComputeArgs),
    /// Search for a regularity witness (a, i, F) of the ideal in FILE.
    Witness(WitnessArgs),
    /// Check theorem instances over a corpus and emit a JSON report.
    Check(CheckArgs),
    /// Print the generated corpus.
    Corpus(CorpusFlags),
}

#[derive(Clone, Copy, ValueEnum)]
enum Quantity {
    Reg,
    Radical,
    Sympow,
    Closure,
    Gamma,
    Height,
    Betti,
}

fn parse_field(s: &str) -> std::result::Result<CoefficientField, String> {
    s.parse::<CoefficientField>().map_err(|e| e.to_string())
}

fn parse_method(s: &str) -> std::result::Result<BettiMethod, String> {
    s.parse::<BettiMethod>().map_err(|e| e.to_string())
}

#[derive(Args)]
struct ComputeArgs {
    #[arg(value_enum)]
    what: Quantity,
    file: PathBuf,
    /// Coefficient field: q, f2 or fp:<p>.
    #[arg(long, default_value = "q", value_parser = parse_field)]
    field: CoefficientField,
    /// Symbolic power exponent for `sympow`.
    #[arg(long, default_value_t = 1)]
    m: u32,
    /// Power whose integral closure `closure` computes.
    #[arg(long, default_value_t = 1)]
    s: u32,
    /// Betti engine: taylor, koszul or auto.
    #[arg(long, default_value = "auto", value_parser = parse_method)]
    method: BettiMethod,
}

#[derive(Args)]
struct WitnessArgs {
    file: PathBuf,
    #[arg(long, default_value = "q", value_parser = parse_field)]
    field: CoefficientField,
    /// Comma-separated per-variable exponent bounds; the result is then only
    /// a lower bound on reg.
    #[arg(long = "box", value_delimiter = ',')]
    bound: Option<Vec<u32>>,
    #[arg(long, default_value_t = monoreg::degree_complex::DEFAULT_WITNESS_BOX_CAP)]
    box_cap: u64,
}

#[derive(Args, Clone)]
struct CorpusFlags {
    /// exhaustive-squarefree, random-monomial, named-family or acceptance.
    #[arg(long = "corpus", default_value = "acceptance")]
    mode: String,
    #[arg(long, default_value_t = 3)]
    n: usize,
    #[arg(long, default_value_t = 3)]
    degree_cap: u32,
    #[arg(long, default_value_t = 4)]
    mu_cap: usize,
    #[arg(long, default_value_t = 100)]
    count: usize,
    #[arg(long, default_value_t = 42)]
    seed: u64,
    /// Check these ideal files instead of a generated corpus.
    #[arg(long = "ideal")]
    ideals: Vec<PathBuf>,
}

#[derive(Args)]
struct CheckArgs {
    /// Comma-separated: all, rrad, sym, corsym, rnormal1, rintc, rint, base,
    /// delta, identity.
    #[arg(long, default_value = "all")]
    suite: String,
    #[command(flatten)]
    corpus: CorpusFlags,
    #[arg(long, default_value = "q", value_parser = parse_field)]
    field: CoefficientField,
    #[arg(long, default_value = "auto", value_parser = parse_method)]
    method: BettiMethod,
    #[arg(long, default_value_t = 2)]
    max_m: u32,
    #[arg(long, default_value_t = 2)]
    max_k: u32,
    #[arg(long, default_value_t = 2)]
    max_s: u32,
    #[arg(long, default_value_t = 12)]
    s_cap: u32,
    #[arg(long, default_value_t = DEFAULT_CLOSURE_BOX_CAP)]
    closure_box_cap: u64,
    /// Witness-search cross-check box cap; 0 disables the cross-check.
    #[arg(long, default_value_t = 4096)]
    witness_box_cap: u64,
    #[arg(long, default_value_t = 512)]
    identity_cell_cap: usize,
    /// Skip the second-field regularity comparison.
    #[arg(long)]
    no_field_compare: bool,
    /// Write the report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Worker threads; 0 uses one per core.
    #[arg(long, default_value_t = 0)]
    jobs: usize,
    /// Fail the run when any record is skipped.
    #[arg(long)]
    strict: bool,
    /// Record per-check wall time (makes reports non-reproducible).
    #[arg(long)]
    timings: bool,
}

fn read_ideal(path: &Path) -> Result<MonomialIdeal> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let parsed = parse_ideal(&text).with_context(|| format!("parsing {}", path.display()))?;
    for w in &parsed.warnings {
        eprintln!("warning: {}: {w}", path.display());
    }
    Ok(parsed.ideal)
}

fn options(method: BettiMethod) -> BettiOptions {
    BettiOptions {
        method,
        ..Default::default()
    }
}

fn compute(args: &ComputeArgs) -> Result<()> {
    let ideal = read_ideal(&args.file)?;
    let opts = options(args.method);
    match args.what {
        Quantity::Reg => println!("{}", regularity_with(&ideal, args.field, &opts)?),
        Quantity::Radical => println!("{}", ideal.radical()),
        Quantity::Sympow => println!("{}", symbolic_power(&ideal, args.m)?),
        Quantity::Closure => {
            println!("{}", integral_closure_power_with(&ideal, args.s, DEFAULT_CLOSURE_BOX_CAP)?)
        }
        Quantity::Gamma => println!("{}", ideal.gamma()?),
        Quantity::Height => println!("{}", height(&ideal)?),
        Quantity::Betti => {
            let table = betti_table_with(&ideal, args.field, &opts)?;
            for (i, a, b) in table.entries() {
                println!("{i}\t{a}\t{b}");
            }
            println!("# reg = {}", table.regularity());
        }
    }
    Ok(())
}

fn witness(args: &WitnessArgs) -> Result<()> {
    let ideal = read_ideal(&args.file)?;
    let w = match &args.bound {
        Some(b) => reg_witness_search_in_box(&ideal, args.field, b)?,
        None => reg_witness_search_capped(&ideal, args.field, args.box_cap)?,
    };
    println!("{}", serde_json::to_string_pretty(&w)?);
    Ok(())
}

fn corpus_items(flags: &CorpusFlags) -> Result<Vec<CorpusItem>> {
    if !flags.ideals.is_empty() {
        return flags
            .ideals
            .iter()
            .map(|p| {
                Ok(CorpusItem {
                    name: p.display().to_string(),
                    ideal: read_ideal(p)?,
                })
            })
            .collect();
    }
    let spec = CorpusSpec {
        n: flags.n,
        mode: flags.mode.parse::<CorpusMode>()?,
        degree_cap: flags.degree_cap,
        mu_cap: flags.mu_cap,
        count: flags.count,
        seed: flags.seed,
    };
    Ok(harness::generate(&spec)?)
}

fn corpus(flags: &CorpusFlags) -> Result<()> {
    for item in corpus_items(flags)? {
        println!("# {} {}", item.name, item.ideal);
        print!("{}", format_ideal(&item.ideal));
    }
    Ok(())
}

/// Returns whether the run passed.
fn check(args: &CheckArgs) -> Result<bool> {
    let suite: Suite = args.suite.parse()?;
    let items = corpus_items(&args.corpus)?;
    for item in &items {
        if !item.ideal.is_proper_nonzero() {
            bail!("{}: {} is not a proper nonzero ideal", item.name, item.ideal);
        }
    }
    let cfg = HarnessConfig {
        field: args.field,
        betti: options(args.method),
        grid: Grid {
            max_m: args.max_m,
            max_k: args.max_k,
            max_s: args.max_s,
        },
        s_cap: args.s_cap,
        closure_box_cap: args.closure_box_cap,
        witness_box_cap: args.witness_box_cap,
        compare_fields: !args.no_field_compare,
        identity_cell_cap: args.identity_cell_cap,
        timings: args.timings,
    };
    let output = harness::run_items(&items, &suite, &cfg, args.jobs)?;

    let c = &args.corpus;
    let mut flags: BTreeMap<String, Value> = BTreeMap::new();
    flags.insert("suite".into(), json!(args.suite));
    if c.ideals.is_empty() {
        flags.insert(
            "corpus".into(),
            json!({
                "mode": c.mode, "n": c.n, "degree_cap": c.degree_cap,
                "mu_cap": c.mu_cap, "count": c.count,
            }),
        );
    } else {
        flags.insert("ideal_files".into(), json!(c.ideals));
    }
    flags.insert("method".into(), json!(format!("{:?}", args.method).to_lowercase()));
    flags.insert(
        "grid".into(),
        json!({"max_m": args.max_m, "max_k": args.max_k, "max_s": args.max_s}),
    );
    flags.insert("s_cap".into(), json!(args.s_cap));
    flags.insert("closure_box_cap".into(), json!(args.closure_box_cap));
    flags.insert("witness_box_cap".into(), json!(args.witness_box_cap));
    flags.insert("identity_cell_cap".into(), json!(args.identity_cell_cap));
    flags.insert("field_compare".into(), json!(!args.no_field_compare));
    flags.insert("strict".into(), json!(args.strict));
    flags.insert("timings".into(), json!(args.timings));

    let doc = harness::document(output, c.seed, &cfg, flags);
    match &args.out {
        Some(path) => emit_reports(&doc, path)?,
        None => print!("{}", doc.to_json()?),
    }

    let s = &doc.summary;
    eprintln!(
        "{} ideals, {} records: {} passed, {} failed, {} skipped",
        s.ideals, s.counts.total, s.counts.passed, s.counts.failed, s.counts.skipped
    );
    for f in &s.failures {
        eprintln!("FAILED {f}");
    }
    for m in &s.oracle_mismatches {
        eprintln!("ORACLE MISMATCH {m}");
    }
    for k in &s.skipped {
        eprintln!("skipped {k}");
    }
    Ok(s.clean() && !(args.strict && s.counts.skipped > 0))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Compute(a) => compute(a).map(|_| true),
        Command::Witness(a) => witness(a).map(|_| true),
        Command::Check(a) => check(a),
        Command::Corpus(a) => corpus(a).map(|_| true),
    };
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
