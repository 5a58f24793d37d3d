//! The JSON verification report and its human-readable rendering.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::oracle::{CaseId, Table, Typo};

/// One pair of a sweep.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct PairRecord {
    pub left: String,
    pub right: String,
    /// Degree of the field the pair was given over.
    pub field: u32,
    /// Degree of the field both routes finished in.
    pub resolved_field: u32,
    pub case: Option<String>,
    /// Misprints whose reading affected the predicted decomposition.
    pub typos: Vec<String>,
    pub engine: Option<Value>,
    pub engine_pretty: Option<String>,
    pub engine_error: Option<String>,
    pub oracle: Option<Value>,
    pub oracle_pretty: Option<String>,
    pub oracle_error: Option<String>,
    /// `descriptor_equal(engine, oracle)`.
    pub matched: bool,
    pub scalars_ok: Option<bool>,
    /// Misprints whose reading affected the predicted cube scalars.
    pub scalar_typos: Vec<String>,
    pub extremal_ok: Option<bool>,
    pub symmetric: Option<bool>,
    pub unresolved: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wall_ms: Option<f64>,
}

impl PairRecord {
    /// The decomposition check failed and no applied misprint explains it.
    pub fn unexplained_mismatch(&self, paper_literal: bool) -> bool {
        !self.matched && !self.unresolved && !(paper_literal && !self.typos.is_empty())
    }

    pub fn unexplained_scalar_failure(&self, paper_literal: bool) -> bool {
        self.scalars_ok == Some(false) && !(paper_literal && !self.scalar_typos.is_empty())
    }

    pub fn unexplained_asymmetry(&self, paper_literal: bool) -> bool {
        self.symmetric == Some(false) && !(paper_literal && !self.typos.is_empty())
    }
}

/// Hits per table row.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default)]
pub struct RowCoverage {
    pub case: String,
    pub table: String,
    pub hits: usize,
}

/// Counterexamples found for one misprint.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default)]
pub struct TypoEvidence {
    pub typo: String,
    pub description: String,
    pub counterexamples: usize,
    /// The first counterexample, as `left ⊗ right`.
    pub example: Option<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default)]
pub struct Summary {
    pub pairs: usize,
    pub matched: usize,
    pub mismatched: usize,
    /// Mismatches on pairs where some misprint's reading applied.
    pub attributed: usize,
    pub unexplained: usize,
    pub unresolved: usize,
    pub scalar_failures: usize,
    pub extremal_failures: usize,
    pub asymmetric: usize,
    pub lifted: usize,
}

/// Everything a sweep produced.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct VerifyReport {
    pub field: u32,
    pub scope: String,
    pub seed: u64,
    pub paper_literal: bool,
    pub extension_cap: u32,
    pub summary: Summary,
    pub coverage: Vec<RowCoverage>,
    pub uncovered: Vec<String>,
    pub typos: Vec<TypoEvidence>,
    pub records: Vec<PairRecord>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub total_ms: Option<f64>,
}

impl VerifyReport {
    /// Fills in the summary, coverage and misprint evidence from the records.
    pub fn tally(&mut self) {
        let lit = self.paper_literal;
        let mut s = Summary {
            pairs: self.records.len(),
            ..Summary::default()
        };
        let mut hits: BTreeMap<String, usize> = BTreeMap::new();
        let mut evidence: BTreeMap<String, (usize, Option<String>)> = BTreeMap::new();
        for r in &self.records {
            if let Some(case) = &r.case {
                *hits.entry(case.clone()).or_default() += 1;
            }
            if r.matched {
                s.matched += 1;
            } else if r.unresolved {
                s.unresolved += 1;
            } else {
                s.mismatched += 1;
                if r.typos.is_empty() {
                    s.unexplained += 1;
                } else {
                    s.attributed += 1;
                    if !lit {
                        s.unexplained += 1;
                    }
                    for t in &r.typos {
                        let e = evidence.entry(t.clone()).or_default();
                        e.0 += 1;
                        e.1.get_or_insert_with(|| format!("{} ⊗ {}", r.left, r.right));
                    }
                }
            }
            if r.scalars_ok == Some(false) {
                s.scalar_failures += 1;
                for t in &r.scalar_typos {
                    let e = evidence.entry(t.clone()).or_default();
                    e.0 += 1;
                    e.1.get_or_insert_with(|| format!("{} ⊗ {}", r.left, r.right));
                }
            }
            if r.extremal_ok == Some(false) {
                s.extremal_failures += 1;
            }
            if r.symmetric == Some(false) {
                s.asymmetric += 1;
            }
            if r.resolved_field != r.field {
                s.lifted += 1;
            }
        }
        self.summary = s;
        let only_table: Option<u8> = self.scope.strip_prefix("table:").and_then(|n| n.parse().ok());
        self.coverage = CaseId::all()
            .into_iter()
            .filter(|c| only_table.is_none_or(|n| c.table.number() == n))
            .map(|c| RowCoverage {
                case: c.key(),
                table: c.table.label().to_string(),
                hits: hits.get(&c.key()).copied().unwrap_or(0),
            })
            .collect();
        self.uncovered = self
            .coverage
            .iter()
            .filter(|c| c.hits == 0)
            .map(|c| c.case.clone())
            .collect();
        self.typos = Typo::ALL
            .iter()
            .map(|t| {
                let (n, ex) = evidence.get(t.id()).cloned().unwrap_or_default();
                TypoEvidence {
                    typo: t.id().to_string(),
                    description: t.description().to_string(),
                    counterexamples: n,
                    example: ex,
                }
            })
            .collect();
    }

    /// No check failed, other than ones the applied misprints explain.
    pub fn passed(&self) -> bool {
        let lit = self.paper_literal;
        self.records.iter().all(|r| {
            !(r.unresolved && !(lit && !r.typos.is_empty()))
                && !r.unexplained_mismatch(lit)
                && !r.unexplained_scalar_failure(lit)
                && !r.unexplained_asymmetry(lit)
                && r.extremal_ok != Some(false)
        })
    }

    /// Human-readable summary: counts, row coverage, misprint evidence and
    /// mismatch diffs.
    pub fn render(&self) -> String {
        let s = &self.summary;
        let mut out = String::new();
        if s.pairs == 0 {
            let _ = writeln!(out, "0 pairs");
            return out;
        }
        let _ = writeln!(out, "{} pairs over GF(3^{}), scope {}", s.pairs, self.field, self.scope);
        if self.paper_literal {
            let _ = writeln!(out, "paper-literal readings");
        }
        let _ = writeln!(
            out,
            "matched {}  mismatched {} (explained by misprints {}, unexplained {})  unresolved {}  lifted {}",
            s.matched, s.mismatched, s.attributed, s.unexplained, s.unresolved, s.lifted
        );
        let _ = writeln!(
            out,
            "cube scalar failures {}  extremal failures {}  asymmetric {}",
            s.scalar_failures, s.extremal_failures, s.asymmetric
        );
        if let Some(ms) = self.total_ms {
            let _ = writeln!(out, "wall time {:.1} ms", ms);
        }
        let _ = writeln!(out, "\nrow coverage:");
        for t in Table::ALL {
            let rows: Vec<&RowCoverage> = self.coverage.iter().filter(|c| c.table == t.label()).collect();
            if rows.is_empty() {
                continue;
            }
            let covered = rows.iter().filter(|c| c.hits > 0).count();
            let _ = writeln!(out, "  {} ({}): {}/{} rows", t.label(), t.title(), covered, rows.len());
            for c in rows {
                let mark = if c.hits > 0 {
                    format!("{:6}", c.hits)
                } else {
                    "     -".to_string()
                };
                let _ = writeln!(out, "    {mark}  {}", c.case);
            }
        }
        if !self.uncovered.is_empty() {
            let _ = writeln!(out, "\nuncovered rows ({}):", self.uncovered.len());
            for c in &self.uncovered {
                let _ = writeln!(out, "  {c}");
            }
        }
        if self.typos.iter().any(|t| t.counterexamples > 0) {
            let _ = writeln!(out, "\nmisprint evidence:");
            for t in self.typos.iter().filter(|t| t.counterexamples > 0) {
                let _ = writeln!(
                    out,
                    "  {}: {} counterexamples, e.g. {}",
                    t.typo,
                    t.counterexamples,
                    t.example.as_deref().unwrap_or("-")
                );
            }
        }
        let failing: Vec<&PairRecord> = self
            .records
            .iter()
            .filter(|r| !r.matched || r.scalars_ok == Some(false))
            .collect();
        if !failing.is_empty() {
            let _ = writeln!(out, "\nmismatches ({}):", failing.len());
            for r in failing.iter().take(50) {
                let _ = writeln!(
                    out,
                    "  {} ⊗ {}  [{}]",
                    r.left,
                    r.right,
                    r.case.as_deref().unwrap_or("?")
                );
                if !r.typos.is_empty() || !r.scalar_typos.is_empty() {
                    let mut all = r.typos.clone();
                    all.extend(r.scalar_typos.iter().cloned());
                    let _ = writeln!(out, "    misprints: {}", all.join(", "));
                }
                let engine = side(&r.engine_pretty, &r.engine_error);
                let oracle = side(&r.oracle_pretty, &r.oracle_error);
                let width = engine.chars().count().max(6);
                let _ = writeln!(out, "    {:<width$} | oracle", "engine");
                let _ = writeln!(out, "    {:<width$} | {}", engine, oracle);
                if r.scalars_ok == Some(false) {
                    let _ = writeln!(out, "    cube scalars differ from the closed form");
                }
            }
            if failing.len() > 50 {
                let _ = writeln!(out, "  ... {} more", failing.len() - 50);
            }
        }
        out
    }
}

fn side(pretty: &Option<String>, error: &Option<String>) -> String {
    match (pretty, error) {
        (Some(p), _) => p.clone(),
        (None, Some(e)) => format!("error: {e}"),
        (None, None) => "-".to_string(),
    }
}
