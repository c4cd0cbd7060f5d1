//! Corpus runs: generate ideals, check every selected theorem instance on
//! each, and assemble a deterministic report document.

pub mod checks;
pub mod corpus;
pub mod report;

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde_json::Value;

use crate::error::{Error, Result};

pub use checks::{
    check_base_mv, check_corsym, check_corsym_ii, check_delta_stab, check_ideal,
    check_proof_identity, check_rint, check_rintc, check_rnormal1, check_rrad, check_sym, sym_grid,
    Grid, HarnessConfig, IdealContext, IdentityKind,
};
pub use corpus::{generate, CorpusItem, CorpusMode, CorpusSpec};
pub use report::{emit_reports, CheckReport, Header, ReportDocument, Suite, Summary, TheoremId};

/// Reports of one corpus run, in `(ideal index, theorem id, params)` order.
#[derive(Clone, Debug, PartialEq)]
pub struct RunOutput {
    pub reports: Vec<CheckReport>,
    pub summary: Summary,
}

struct ItemOutcome {
    reports: Vec<CheckReport>,
    mismatches: Vec<String>,
    field_sensitive: bool,
}

fn run_item(item: &CorpusItem, suite: &Suite, cfg: &HarnessConfig) -> Result<ItemOutcome> {
    let mut ctx = IdealContext::new(&item.ideal, item.name.clone(), cfg);
    let reports = check_ideal(&mut ctx, suite).map_err(|e| match e {
        Error::Inconsistent(msg) => Error::Inconsistent(format!("{}: {msg}", item.name)),
        other => other,
    })?;
    Ok(ItemOutcome {
        reports,
        mismatches: ctx.oracle_mismatches().to_vec(),
        field_sensitive: ctx.field_sensitive(),
    })
}

/// Checks every item on a pool of `jobs` workers (0 picks the rayon
/// default). Output does not depend on `jobs`.
pub fn run_items(
    items: &[CorpusItem],
    suite: &Suite,
    cfg: &HarnessConfig,
    jobs: usize,
) -> Result<RunOutput> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| Error::Malformed(format!("cannot build worker pool: {e}")))?;
    let outcomes: Vec<Result<ItemOutcome>> = pool.install(|| {
        items
            .par_iter()
            .map(|item| run_item(item, suite, cfg))
            .collect()
    });
    let mut reports = Vec::new();
    let mut mismatches = Vec::new();
    let mut sensitive = Vec::new();
    for (item, outcome) in items.iter().zip(outcomes) {
        let outcome = outcome?;
        reports.extend(outcome.reports);
        mismatches.extend(outcome.mismatches);
        if outcome.field_sensitive {
            sensitive.push(format!("{} {}", item.name, item.ideal));
        }
    }
    let summary = Summary::from_reports(items.len(), &reports, mismatches, sensitive);
    Ok(RunOutput { reports, summary })
}

pub fn run_corpus(
    spec: &CorpusSpec,
    suite: &Suite,
    cfg: &HarnessConfig,
    jobs: usize,
) -> Result<RunOutput> {
    run_items(&generate(spec)?, suite, cfg, jobs)
}

/// Wraps a run in the report document with its header.
pub fn document(
    output: RunOutput,
    seed: u64,
    cfg: &HarnessConfig,
    flags: BTreeMap<String, Value>,
) -> ReportDocument {
    ReportDocument {
        header: Header {
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            seed,
            field: cfg.field,
            flags,
        },
        reports: output.reports,
        summary: output.summary,
    }
}
