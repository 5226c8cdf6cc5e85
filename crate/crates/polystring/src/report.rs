//! JSON reports. Field order is the declaration order below, integers are
//! exact and nothing depends on timing, so equal inputs give identical
//! bytes.

use std::collections::BTreeMap;

use polystring_core::census::{CensusCell, CensusRecord, CensusRow};
use polystring_core::constructions::LemmaReport;
use polystring_core::cstring::{CStringReport, NormalOutcome, Outcome, UnravelledVerdict};
use polystring_core::engine::FiniteGroup;
use polystring_core::polytope::DiscStructure;
use serde::Serialize;

use crate::reference::ReferenceComparison;

pub const REPORT_VERSION: &str = "polystring-report/1";

pub fn to_json<T: Serialize>(report: &T) -> String {
    let mut s = serde_json::to_string_pretty(report).expect("reports serialize");
    s.push('\n');
    s
}

#[derive(Clone, Debug, Serialize)]
pub struct GroupSummary {
    pub degree: usize,
    pub order: u128,
    pub certified: bool,
}

impl GroupSummary {
    pub fn of(g: &FiniteGroup) -> Self {
        Self {
            degree: g.degree(),
            order: g.order(),
            certified: g.is_certified(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CStringSummary {
    pub rank: usize,
    pub schlafli: Vec<u64>,
    pub involutions: bool,
    pub distinct: bool,
    pub generates: bool,
    pub string_condition: bool,
    pub intersection_property: Option<bool>,
    pub is_cstring: bool,
    pub failing_axiom: Option<&'static str>,
}

impl From<&CStringReport> for CStringSummary {
    fn from(r: &CStringReport) -> Self {
        Self {
            rank: r.rank,
            schlafli: r.schlafli.0.clone(),
            involutions: r.involutions,
            distinct: r.distinct,
            generates: r.generates,
            string_condition: r.string_condition,
            intersection_property: r.intersection_property,
            is_cstring: r.is_cstring(),
            failing_axiom: r.failing_axiom().map(|a| a.name()),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct QuotientSummary {
    pub normal_order: u128,
    pub quotient_order: u128,
    pub outcome: String,
}

impl From<&NormalOutcome> for QuotientSummary {
    fn from(n: &NormalOutcome) -> Self {
        let outcome = match n.outcome {
            Outcome::Collapses => "collapses".to_string(),
            Outcome::NotCString(ax) => format!("fails {}", ax.name()),
            Outcome::IsCString => "is a C-string".to_string(),
        };
        Self {
            normal_order: n.normal_order,
            quotient_order: n.quotient_order,
            outcome,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct UnravelledSummary {
    pub unravelled: bool,
    /// `"file"` or `"computed"`.
    pub normal_subgroups: &'static str,
    pub quotients: Vec<QuotientSummary>,
}

impl UnravelledSummary {
    pub fn new(v: &UnravelledVerdict, source: &'static str) -> Self {
        Self {
            unravelled: v.unravelled,
            normal_subgroups: source,
            quotients: v.entries.iter().map(QuotientSummary::from).collect(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct DiscSummary {
    pub layers: Vec<usize>,
    pub diameter: usize,
    /// Whether `1 + Σ layers` equals the group order.
    pub sum_check: bool,
}

impl DiscSummary {
    pub fn new(d: &DiscStructure, order: u128) -> Self {
        Self {
            layers: d.layers.clone(),
            diameter: d.diameter(),
            sum_check: d.chambers() as u128 == order,
        }
    }
}

/// A computation left out, with the reason.
#[derive(Clone, Debug, Serialize)]
pub struct Skipped {
    pub what: &'static str,
    pub reason: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifyReport {
    pub version: &'static str,
    pub command: &'static str,
    pub name: Option<String>,
    pub group: GroupSummary,
    pub cstring: CStringSummary,
    pub f_vector: Option<Vec<u128>>,
    pub normal_subgroups_valid: bool,
    pub unravelled: Option<UnravelledSummary>,
    pub disc_structure: Option<DiscSummary>,
    pub reference: Option<ReferenceComparison>,
    pub skipped: Vec<Skipped>,
    pub passed: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct ChambersReport {
    pub version: &'static str,
    pub command: &'static str,
    pub name: Option<String>,
    pub group: GroupSummary,
    pub schlafli: Vec<u64>,
    pub disc_structure: DiscSummary,
    pub graph_file: Option<String>,
    pub passed: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckSummary {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

pub fn checks(r: &LemmaReport) -> Vec<CheckSummary> {
    r.checks
        .iter()
        .map(|c| CheckSummary {
            name: c.name,
            passed: c.passed,
            detail: c.detail.clone(),
        })
        .collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct ConstructReport {
    pub version: &'static str,
    pub command: &'static str,
    pub family: String,
    pub parameters: BTreeMap<&'static str, u64>,
    pub group: GroupSummary,
    pub schlafli: Option<Vec<u64>>,
    pub f_vector: Option<Vec<u128>>,
    pub unravelled: Option<bool>,
    pub disc_structure: Option<DiscSummary>,
    pub lemma_chain: Vec<CheckSummary>,
    pub skipped: Vec<Skipped>,
    pub passed: bool,
    pub groupfile: crate::groupfile::GroupFile,
}

#[derive(Clone, Debug, Serialize)]
pub struct CellSummary {
    pub cell: String,
    pub total: usize,
    pub self_dual: usize,
    pub unravelled: usize,
}

impl From<&CensusCell> for CellSummary {
    fn from(c: &CensusCell) -> Self {
        Self {
            cell: c.to_string(),
            total: c.total,
            self_dual: c.self_dual,
            unravelled: c.unravelled,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct RowSummary {
    pub total: CellSummary,
    pub by_rank: BTreeMap<usize, CellSummary>,
}

impl From<&CensusRow> for RowSummary {
    fn from(r: &CensusRow) -> Self {
        Self {
            total: (&r.total).into(),
            by_rank: r.by_rank.iter().map(|(&k, c)| (k, c.into())).collect(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct RecordSummary {
    pub rank: usize,
    pub schlafli: Vec<u64>,
    pub f_vector: Vec<u128>,
    pub self_dual: bool,
    pub unravelled: bool,
    pub generators: Vec<String>,
}

impl From<&CensusRecord> for RecordSummary {
    fn from(r: &CensusRecord) -> Self {
        Self {
            rank: r.rank,
            schlafli: r.schlafli.0.clone(),
            f_vector: r.f_vector.0.clone(),
            self_dual: r.self_dual,
            unravelled: r.unravelled,
            generators: r.generators.iter().map(|p| p.to_cycle_string()).collect(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CensusOptionsSummary {
    pub rank_min: usize,
    pub rank_max: Option<usize>,
    pub allow_degenerate: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct CensusReport {
    pub version: &'static str,
    pub command: &'static str,
    pub name: Option<String>,
    pub group: GroupSummary,
    pub options: CensusOptionsSummary,
    pub complete: bool,
    pub explored: usize,
    pub subtrees: usize,
    pub summary: Option<RowSummary>,
    pub rows: Vec<RecordSummary>,
}

#[derive(Clone, Debug, Serialize)]
pub struct PrimeListSummary {
    pub total: usize,
    pub failing: Vec<u64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ScanReport {
    pub version: &'static str,
    pub command: &'static str,
    pub max: u64,
    /// Prime powers `q ≤ max` with `q ≡ 7 mod 24`.
    pub total: usize,
    pub failing: Vec<u64>,
    pub primes_only: PrimeListSummary,
    /// Failing prime powers that are not primes.
    pub composite_failures: Vec<u64>,
    pub reference_list: Vec<u64>,
    pub matches_reference: bool,
}
