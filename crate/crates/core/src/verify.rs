//! Regression harness: every family of a theorem is period 2, the μ1 partners
//! close up, stated pairings hold up to relabeling, and bounded search finds
//! nothing outside the families.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use serde::Serialize;

use crate::error::Result;
use crate::families::{FamilyDef, FamilyInstance, Theorem, FAMILIES, PARTNER_CLAIMS};
use crate::matrix::ExchangeMatrix;
use crate::period::{find_relabeling, is_period2, mu1_partner, Period2Spec};
use crate::solver::{search_with_workers, SearchJob};

#[derive(Clone, Debug, Serialize)]
pub struct CheckRow {
    pub check: String,
    pub subject: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct TheoremReport {
    pub theorem: Theorem,
    pub max_param: i64,
    pub search_bound: Option<u64>,
    pub rows: Vec<CheckRow>,
}

impl TheoremReport {
    pub fn passed(&self) -> bool {
        self.rows.iter().all(|r| r.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckRow> {
        self.rows.iter().filter(|r| !r.passed)
    }
}

impl fmt::Display for TheoremReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in &self.rows {
            let verdict = if r.passed { "PASS" } else { "FAIL" };
            write!(f, "{verdict}  {:<12} {}", r.check, r.subject)?;
            if !r.detail.is_empty() {
                write!(f, "  {}", r.detail)?;
            }
            writeln!(f)?;
        }
        let total = self.rows.len();
        let bad = self.failures().count();
        write!(f, "{}: {}/{} checks passed", self.theorem, total - bad, total)
    }
}

fn row(check: &str, subject: String, passed: bool, detail: String) -> CheckRow {
    CheckRow { check: check.to_string(), subject, passed, detail }
}

/// Instances of `theorem`'s families plus their negatives whose entries fit in `bound`.
pub fn expected_solutions(theorem: Theorem, spec: &Period2Spec, bound: u64) -> BTreeSet<ExchangeMatrix> {
    let limit = BigInt::from(bound);
    let mut out = BTreeSet::new();
    for f in theorem.families().into_iter().filter(|f| f.spec() == *spec) {
        for inst in f.instances(bound as i64 + 1) {
            if inst.connected() && inst.matrix.max_abs() <= limit {
                out.insert(inst.matrix.negated());
                out.insert(inst.matrix);
            }
        }
    }
    out
}

/// Checks a μ1-partner pairing claim `(a, b, shift)` for one parameter value.
pub fn check_partner_claim(a: &FamilyDef, b: &FamilyDef, shift: i64, x: i64) -> Option<Result<bool>> {
    let left = a.generate(&[x]).ok()?;
    let right = b.generate(&[x + shift]).ok()?;
    Some(mu1_partner(&left, &a.spec()).map(|(p, _)| find_relabeling(&p, &right).is_some()))
}

pub fn verify_theorem(
    theorem: Theorem,
    max_param: i64,
    search_bound: Option<u64>,
    workers: usize,
) -> Result<TheoremReport> {
    let mut rows = Vec::new();
    let instances: Vec<FamilyInstance> =
        theorem.families().into_iter().flat_map(|f| f.instances(max_param)).collect();
    for inst in &instances {
        let spec = inst.spec();
        let ok = is_period2(&inst.matrix, &spec)?;
        let detail = if inst.connected() { String::new() } else { "disconnected".to_string() };
        rows.push(row("period-2", format!("{} {spec}", inst.label()), ok, detail));
        if ok {
            let (p, s2) = mu1_partner(&inst.matrix, &spec)?;
            let closed = is_period2(&p, &s2)?;
            rows.push(row("mu1-partner", format!("{} -> {s2}", inst.label()), closed, String::new()));
        }
    }
    for &(a, b, shift) in PARTNER_CLAIMS {
        let (Some(fa), Some(fb)) = (FamilyDef::by_key(a), FamilyDef::by_key(b)) else { continue };
        if fa.theorem != theorem {
            continue;
        }
        for x in 0..=max_param {
            if let Some(res) = check_partner_claim(fa, fb, shift, x) {
                let ok = res?;
                let subject = format!("mu1({}) ~ {}", fa.describe(&[x]), fb.describe(&[x + shift]));
                rows.push(row("pairing", subject, ok, String::new()));
            }
        }
    }
    if let Some(bound) = search_bound {
        for spec in theorem.specs() {
            let found: BTreeSet<ExchangeMatrix> =
                search_with_workers(&SearchJob::new(spec, bound).connected(), workers)?
                    .into_iter()
                    .collect();
            let expected = expected_solutions(theorem, &spec, bound);
            let extra: Vec<String> = found.difference(&expected).map(|b| b.to_string()).collect();
            let missing: Vec<String> = expected.difference(&found).map(|b| b.to_string()).collect();
            let ok = extra.is_empty() && missing.is_empty();
            let mut detail = format!("{} connected solutions", found.len());
            if !extra.is_empty() {
                detail += &format!("; outside families: {}", extra.join(" "));
            }
            if !missing.is_empty() {
                detail += &format!("; not found: {}", missing.join(" "));
            }
            rows.push(row("complete", format!("{spec} bound {bound}"), ok, detail));
        }
    }
    Ok(TheoremReport { theorem, max_param, search_bound, rows })
}

/// All families, for listings.
pub fn family_keys() -> Vec<&'static str> {
    FAMILIES.iter().map(|f| f.key).collect()
}
