//! Check records and the JSON report document.

use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;
use std::str::FromStr;

use serde::Serialize;
use serde_json::Value;

use crate::degree_complex::RegWitness;
use crate::error::{Error, Result};
use crate::homology::CoefficientField;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum TheoremId {
    #[serde(rename = "RRAD")]
    Rrad,
    #[serde(rename = "SYM")]
    Sym,
    #[serde(rename = "CORSYM_I")]
    CorsymI,
    #[serde(rename = "CORSYM_II")]
    CorsymII,
    #[serde(rename = "RNORMAL1")]
    Rnormal1,
    #[serde(rename = "RINTC")]
    Rintc,
    #[serde(rename = "RINT")]
    Rint,
    #[serde(rename = "BASE_MV")]
    BaseMv,
    #[serde(rename = "DELTA_STAB")]
    DeltaStab,
    #[serde(rename = "PROOF_IDENTITY")]
    ProofIdentity,
}

impl TheoremId {
    pub const ALL: [TheoremId; 10] = [
        TheoremId::Rrad,
        TheoremId::Sym,
        TheoremId::CorsymI,
        TheoremId::CorsymII,
        TheoremId::Rnormal1,
        TheoremId::Rintc,
        TheoremId::Rint,
        TheoremId::BaseMv,
        TheoremId::DeltaStab,
        TheoremId::ProofIdentity,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            TheoremId::Rrad => "RRAD",
            TheoremId::Sym => "SYM",
            TheoremId::CorsymI => "CORSYM_I",
            TheoremId::CorsymII => "CORSYM_II",
            TheoremId::Rnormal1 => "RNORMAL1",
            TheoremId::Rintc => "RINTC",
            TheoremId::Rint => "RINT",
            TheoremId::BaseMv => "BASE_MV",
            TheoremId::DeltaStab => "DELTA_STAB",
            TheoremId::ProofIdentity => "PROOF_IDENTITY",
        }
    }
}

impl fmt::Display for TheoremId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A set of theorem ids selected by a comma-separated suite string.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Suite(pub std::collections::BTreeSet<TheoremId>);

impl Suite {
    pub fn all() -> Self {
        Suite(TheoremId::ALL.into_iter().collect())
    }

    pub fn contains(&self, id: TheoremId) -> bool {
        self.0.contains(&id)
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut out = std::collections::BTreeSet::new();
        for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let ids: &[TheoremId] = match part.to_ascii_lowercase().as_str() {
                "all" => &TheoremId::ALL,
                "rrad" => &[TheoremId::Rrad],
                "sym" => &[TheoremId::Sym],
                "corsym" => &[TheoremId::CorsymI, TheoremId::CorsymII],
                "rnormal1" => &[TheoremId::Rnormal1],
                "rintc" => &[TheoremId::Rintc],
                "rint" => &[TheoremId::Rint],
                "base" => &[TheoremId::BaseMv],
                "delta" => &[TheoremId::DeltaStab],
                "identity" => &[TheoremId::ProofIdentity],
                _ => {
                    return Err(Error::Malformed(format!(
                        "unknown suite {part:?}; expected all, rrad, sym, corsym, rnormal1, \
                         rintc, rint, base, delta or identity"
                    )))
                }
            };
            out.extend(ids.iter().copied());
        }
        Ok(Suite(out))
    }
}

/// One theorem instance. A skipped record has `holds`, `lhs`, `rhs` and
/// `slack` all null and its reason under `quantities.skipped`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckReport {
    pub theorem_id: TheoremId,
    pub ideal: String,
    pub params: BTreeMap<String, Value>,
    pub quantities: BTreeMap<String, Value>,
    pub lhs: Option<i64>,
    pub rhs: Option<i64>,
    pub slack: Option<i64>,
    pub holds: Option<bool>,
    pub witness: Option<RegWitness>,
    pub field: CoefficientField,
    pub runtime_ms: Option<u64>,
}

impl CheckReport {
    pub fn is_skipped(&self) -> bool {
        self.holds.is_none()
    }

    pub fn failed(&self) -> bool {
        self.holds == Some(false)
    }

    pub fn skip_reason(&self) -> Option<&str> {
        self.quantities.get("skipped").and_then(Value::as_str)
    }

    /// One-line human description, e.g. `SYM (xy, yz) m=1 k=2 j=0`.
    pub fn label(&self) -> String {
        let mut s = format!("{} {}", self.theorem_id, self.ideal);
        for (k, v) in &self.params {
            match v {
                Value::String(t) => s.push_str(&format!(" {k}={t}")),
                other => s.push_str(&format!(" {k}={other}")),
            }
        }
        s
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Counts {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
    pub skipped: usize,
}

impl Counts {
    fn add(&mut self, r: &CheckReport) {
        self.total += 1;
        match r.holds {
            Some(true) => self.passed += 1,
            Some(false) => self.failed += 1,
            None => self.skipped += 1,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub ideals: usize,
    pub counts: Counts,
    pub by_theorem: BTreeMap<TheoremId, Counts>,
    /// Labels of every report with `holds = false`.
    pub failures: Vec<String>,
    /// Labels of skipped reports with their reasons.
    pub skipped: Vec<String>,
    /// Regularity values that the witness search did not reproduce.
    pub oracle_mismatches: Vec<String>,
    /// Corpus ideals whose regularity differs between the run field and GF(2)
    /// (or the rationals, when the run field is GF(2)).
    pub field_sensitive: Vec<String>,
    pub identity_cells: u64,
    pub delta_cells: u64,
}

impl Summary {
    pub fn from_reports(
        ideals: usize,
        reports: &[CheckReport],
        oracle_mismatches: Vec<String>,
        field_sensitive: Vec<String>,
    ) -> Self {
        let mut s = Summary {
            ideals,
            oracle_mismatches,
            field_sensitive,
            ..Default::default()
        };
        for r in reports {
            s.counts.add(r);
            s.by_theorem.entry(r.theorem_id).or_default().add(r);
            if r.failed() {
                s.failures.push(r.label());
            }
            if r.is_skipped() {
                s.skipped.push(format!(
                    "{}: {}",
                    r.label(),
                    r.skip_reason().unwrap_or("no reason recorded")
                ));
            }
            let cells = r.rhs.unwrap_or(0).max(0) as u64;
            match r.theorem_id {
                TheoremId::ProofIdentity => s.identity_cells += cells,
                TheoremId::DeltaStab => s.delta_cells += cells,
                _ => {}
            }
        }
        s
    }

    /// No theorem instance failed and every oracle agreed.
    pub fn clean(&self) -> bool {
        self.counts.failed == 0 && self.oracle_mismatches.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Header {
    pub tool_version: String,
    pub seed: u64,
    pub field: CoefficientField,
    pub flags: BTreeMap<String, Value>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ReportDocument {
    pub header: Header,
    pub reports: Vec<CheckReport>,
    pub summary: Summary,
}

impl ReportDocument {
    pub fn to_json(&self) -> Result<String> {
        let mut s = serde_json::to_string_pretty(self)?;
        s.push('\n');
        Ok(s)
    }
}

pub fn emit_reports(doc: &ReportDocument, path: &Path) -> Result<()> {
    std::fs::write(path, doc.to_json()?)?;
    Ok(())
}
