//! Registry of identities and the exact verifier.
//!
//! Each [`IdentityRecord`] builds one or more `(lhs, rhs)` pairs of
//! [`PiSeries`] at a requested order; the verifier compares them coefficient
//! by coefficient below the combined truncation bound.

mod registry;

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cyclonum::CycloNumber;
use crate::generators::GeneratorError;
use crate::qlaurent::{PiSeries, RationalExp, SeriesError};
use crate::thetalab::ThetaError;

pub use registry::registry;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Category {
    Ode,
    Qseries,
    ThetaConst,
    SampledPoint,
    Eisenstein,
}

impl Category {
    pub const ALL: [Category; 5] = [
        Category::Ode,
        Category::Qseries,
        Category::ThetaConst,
        Category::SampledPoint,
        Category::Eisenstein,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Category::Ode => "ode",
            Category::Qseries => "qseries",
            Category::ThetaConst => "theta-const",
            Category::SampledPoint => "sampled-point",
            Category::Eisenstein => "eisenstein",
        }
    }
}

impl fmt::Display for Category {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Category {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Category::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| format!("unknown category {s:?}"))
    }
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum BuildError {
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error(transparent)]
    Generator(#[from] GeneratorError),
    #[error(transparent)]
    Theta(#[from] ThetaError),
    #[error("{label}: lhs grade {lhs} and rhs grade {rhs} disagree with the expected grade {expected:?}")]
    Grade {
        label: String,
        lhs: i32,
        rhs: i32,
        expected: Option<i32>,
    },
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum IdentityError {
    #[error("unknown identity {0:?}")]
    UnknownIdentity(String),
}

/// One side-by-side comparison inside an identity.
#[derive(Debug, Clone)]
pub struct Pair {
    pub label: String,
    pub lhs: PiSeries,
    pub rhs: PiSeries,
}

impl Pair {
    pub fn new(label: impl Into<String>, lhs: PiSeries, rhs: PiSeries) -> Self {
        Pair {
            label: label.into(),
            lhs,
            rhs,
        }
    }
}

/// Fault injection: add `delta` to the coefficient of `q^exponent` in every
/// series produced by the named generator.
#[derive(Debug, Clone, PartialEq)]
pub struct Perturbation {
    pub generator: String,
    pub exponent: RationalExp,
    pub delta: i64,
}

/// Everything a builder needs: the requested order and an optional fault.
#[derive(Debug, Clone)]
pub struct BuildEnv {
    pub order: i64,
    pub perturbation: Option<Perturbation>,
}

impl BuildEnv {
    pub fn new(order: i64) -> Self {
        BuildEnv {
            order,
            perturbation: None,
        }
    }

    /// Applies the configured perturbation if it targets `name`.
    pub fn perturb(&self, name: &str, s: PiSeries) -> Result<PiSeries, SeriesError> {
        match &self.perturbation {
            Some(p) if p.generator == name && s.trunc().is_none_or(|t| p.exponent < t) => {
                let old = s.coefficient(p.exponent)?;
                let bumped = &old + &CycloNumber::from_i64(&old.context().clone(), p.delta);
                s.with_coefficient(p.exponent, bumped)
            }
            _ => Ok(s),
        }
    }
}

pub type Builder = fn(&BuildEnv) -> Result<Vec<Pair>, BuildError>;

#[derive(Clone)]
pub struct IdentityRecord {
    pub id: &'static str,
    pub description: &'static str,
    /// Verbatim formula fragment the identity is checked against.
    pub anchor: &'static str,
    pub category: Category,
    /// `None` for families whose members carry different grades.
    pub expected_grade: Option<i32>,
    pub builder: Builder,
}

impl fmt::Debug for IdentityRecord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("IdentityRecord")
            .field("id", &self.id)
            .field("category", &self.category)
            .field("expected_grade", &self.expected_grade)
            .finish()
    }
}

impl IdentityRecord {
    /// Builds all pairs and checks grade soundness.
    pub fn build(&self, env: &BuildEnv) -> Result<Vec<Pair>, BuildError> {
        let pairs = (self.builder)(env)?;
        for p in &pairs {
            let (l, r) = (p.lhs.pi_grade(), p.rhs.pi_grade());
            let grade_ok = |g: i32, s: &PiSeries| s.is_zero() || self.expected_grade.is_none_or(|e| e == g);
            if (l != r && !p.lhs.is_zero() && !p.rhs.is_zero()) || !grade_ok(l, &p.lhs) || !grade_ok(r, &p.rhs) {
                return Err(BuildError::Grade {
                    label: p.label.clone(),
                    lhs: l,
                    rhs: r,
                    expected: self.expected_grade,
                });
            }
        }
        Ok(pairs)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiscrepancyReport {
    /// Exponent as `p/q`.
    pub exponent: String,
    pub lhs: String,
    pub rhs: String,
    /// Which member of a family failed.
    #[serde(default, skip_serializing_if = "String::is_empty")]
    pub label: String,
    #[serde(skip)]
    pub exponent_value: Option<RationalExp>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub id: String,
    pub requested_order: i64,
    /// Exclusive exponent bound below which every coefficient was compared,
    /// as `p/q`; `None` when both sides were exact.
    pub achieved_order: Option<String>,
    pub verdict: Verdict,
    pub first_discrepancy: Option<DiscrepancyReport>,
    pub ms: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    #[serde(skip)]
    pub achieved: Option<RationalExp>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }
}

fn rational_string(r: RationalExp) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Compares already-built pairs.
pub fn compare_pairs(id: &str, order: i64, pairs: &[Pair]) -> Result<VerifyReport, BuildError> {
    let mut achieved: Option<RationalExp> = None;
    let mut first = None;
    for p in pairs {
        let cmp = p.lhs.equal_to_order(&p.rhs)?;
        if let Some(a) = cmp.achieved {
            achieved = Some(achieved.map_or(a, |b| b.min(a)));
        }
        if first.is_none() {
            if let Some(d) = cmp.first_discrepancy {
                first = Some(DiscrepancyReport {
                    exponent: rational_string(d.exponent),
                    lhs: d.lhs.to_string(),
                    rhs: d.rhs.to_string(),
                    label: p.label.clone(),
                    exponent_value: Some(d.exponent),
                });
            }
        }
    }
    Ok(VerifyReport {
        id: id.to_string(),
        requested_order: order,
        achieved_order: achieved.map(rational_string),
        verdict: if first.is_none() { Verdict::Pass } else { Verdict::Fail },
        first_discrepancy: first,
        ms: 0,
        error: None,
        achieved,
    })
}

/// Verifies one record; build errors become a failing report.
pub fn verify_record(record: &IdentityRecord, env: &BuildEnv) -> VerifyReport {
    let start = Instant::now();
    let result = record.build(env).and_then(|pairs| compare_pairs(record.id, env.order, &pairs));
    let mut report = result.unwrap_or_else(|e| VerifyReport {
        id: record.id.to_string(),
        requested_order: env.order,
        achieved_order: None,
        verdict: Verdict::Fail,
        first_discrepancy: None,
        ms: 0,
        error: Some(e.to_string()),
        achieved: None,
    });
    report.ms = start.elapsed().as_millis() as u64;
    report
}

pub fn find(id: &str) -> Result<IdentityRecord, IdentityError> {
    registry()
        .into_iter()
        .find(|r| r.id == id)
        .ok_or_else(|| IdentityError::UnknownIdentity(id.to_string()))
}

pub fn verify(id: &str, order: i64) -> Result<VerifyReport, IdentityError> {
    Ok(verify_record(&find(id)?, &BuildEnv::new(order)))
}

/// Verifies every record (optionally one category) in parallel; reports come
/// back in registry order.
pub fn verify_all(order: i64, category: Option<Category>) -> Vec<VerifyReport> {
    verify_all_with(&BuildEnv::new(order), category)
}

pub fn verify_all_with(env: &BuildEnv, category: Option<Category>) -> Vec<VerifyReport> {
    let records: Vec<IdentityRecord> = registry()
        .into_iter()
        .filter(|r| category.is_none_or(|c| r.category == c))
        .collect();
    records.par_iter().map(|r| verify_record(r, env)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qlaurent::rexp;
    use std::collections::HashSet;

    #[test]
    fn ids_are_unique() {
        let reg = registry();
        let ids: HashSet<_> = reg.iter().map(|r| r.id).collect();
        assert_eq!(ids.len(), reg.len());
    }

    #[test]
    fn unknown_identity() {
        assert_eq!(
            verify("nosuch", 5).unwrap_err(),
            IdentityError::UnknownIdentity("nosuch".into())
        );
    }

    #[test]
    fn example_entries_pass() {
        for id in ["thm11.P", "ramanujan-cubic", "a.forms"] {
            let r = verify(id, 20).unwrap();
            assert!(r.passed(), "{r:?}");
        }
    }

    #[test]
    fn fault_injection_reports_perturbed_exponent() {
        let mut env = BuildEnv::new(15);
        env.perturbation = Some(Perturbation {
            generator: "a".into(),
            exponent: rexp(5, 1),
            delta: 1,
        });
        let r = verify_record(&find("a.forms").unwrap(), &env);
        assert_eq!(r.verdict, Verdict::Fail);
        let d = r.first_discrepancy.unwrap();
        assert_eq!(d.exponent, "5/1");
        for id in ["thm11.P", "thm82.ramanujan"] {
            assert!(!verify_record(&find(id).unwrap(), &env).passed(), "{id}");
        }
    }

    #[test]
    fn report_json_shape() {
        let r = verify("b3.forms", 10).unwrap();
        let v = serde_json::to_value(&r).unwrap();
        for key in ["id", "requested_order", "achieved_order", "verdict", "first_discrepancy", "ms"] {
            assert!(v.get(key).is_some(), "{key}");
        }
        assert_eq!(v["verdict"], "pass");
        assert_eq!(v["achieved_order"], "11/1");
        assert!(v["first_discrepancy"].is_null());
    }

    #[test]
    fn category_names_round_trip() {
        for c in Category::ALL {
            assert_eq!(c.name().parse::<Category>().unwrap(), c);
            assert_eq!(serde_json::to_value(c).unwrap(), c.name());
        }
    }
}
