//! Scenario-driven verification: each scenario names a claim and an
//! instance, and running it yields a report of named sub-checks.

mod claims;
mod input;
mod suite;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::algebra::mat::DEFAULT_CELL_BUDGET;
use crate::error::{Error, Result};
use crate::group_homology::Check;
use crate::linear_groups::DEFAULT_GROUP_BOUND;

pub use input::{GroupSpec, MatrixGroupSpec, ModuleSpec, RingInput, RingKind, SubgroupSpec};
pub use claims::module_value;
pub use suite::{builtin_suite, enumerate, suite_groups, EnumerateBounds};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Claim {
    #[serde(rename = "lemma_1_1")]
    Lemma11,
    #[serde(rename = "cor_1_2")]
    Cor12,
    #[serde(rename = "lemma_1_3")]
    Lemma13,
    #[serde(rename = "example_1")]
    Example1,
    #[serde(rename = "theorem_1_4")]
    Theorem14,
    #[serde(rename = "cor_1_5_finite")]
    Cor15Finite,
    #[serde(rename = "uct")]
    Uct,
    #[serde(rename = "e2_vanishing")]
    E2Vanishing,
    #[serde(rename = "inner_action")]
    InnerAction,
    #[serde(rename = "gamma_exact")]
    GammaExact,
    #[serde(rename = "delta_split")]
    DeltaSplit,
    #[serde(rename = "unit_power_trivial")]
    UnitPowerTrivial,
    #[serde(rename = "oracle_cyclic")]
    OracleCyclic,
}

impl Claim {
    pub const ALL: [Claim; 13] = [
        Claim::Lemma11,
        Claim::Cor12,
        Claim::Lemma13,
        Claim::Example1,
        Claim::Theorem14,
        Claim::Cor15Finite,
        Claim::Uct,
        Claim::E2Vanishing,
        Claim::InnerAction,
        Claim::GammaExact,
        Claim::DeltaSplit,
        Claim::UnitPowerTrivial,
        Claim::OracleCyclic,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            Claim::Lemma11 => "lemma_1_1",
            Claim::Cor12 => "cor_1_2",
            Claim::Lemma13 => "lemma_1_3",
            Claim::Example1 => "example_1",
            Claim::Theorem14 => "theorem_1_4",
            Claim::Cor15Finite => "cor_1_5_finite",
            Claim::Uct => "uct",
            Claim::E2Vanishing => "e2_vanishing",
            Claim::InnerAction => "inner_action",
            Claim::GammaExact => "gamma_exact",
            Claim::DeltaSplit => "delta_split",
            Claim::UnitPowerTrivial => "unit_power_trivial",
            Claim::OracleCyclic => "oracle_cyclic",
        }
    }
}

impl fmt::Display for Claim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Claim {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Claim::ALL
            .iter()
            .copied()
            .find(|c| c.as_str() == s)
            .ok_or_else(|| Error::Input(format!("unknown claim {s:?}")))
    }
}

/// One instance of one claim.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scenario {
    pub id: String,
    pub claim: Claim,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ring: Option<RingInput>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub group: Option<GroupSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub subgroup: Option<SubgroupSpec>,
    /// Absent: a random module when `seed` is set, else the trivial module
    /// of rank 1.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub module: Option<ModuleSpec>,
    /// The plain module `N` of the Tor/Ext comparisons.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coefficients: Option<ModuleSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub degree: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    /// The unit `a` of the unit-power check; absent means every unit.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub unit: Option<u64>,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub expect_precondition_failure: bool,
}

impl Scenario {
    pub fn new(id: impl Into<String>, claim: Claim) -> Self {
        Scenario {
            id: id.into(),
            claim,
            ring: None,
            group: None,
            subgroup: None,
            module: None,
            coefficients: None,
            degree: None,
            seed: None,
            unit: None,
            expect_precondition_failure: false,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
    SkippedBudget,
    PreconditionFailure,
}

impl Status {
    /// Counts towards a successful run.
    pub fn is_ok(&self) -> bool {
        matches!(self, Status::Pass | Status::SkippedBudget)
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::SkippedBudget => "skipped_budget",
            Status::PreconditionFailure => "precondition_failure",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub id: String,
    pub claim: Claim,
    pub status: Status,
    pub checks: Vec<Check>,
    /// Computed modules as invariant-factor arrays (a free summand is a `0`),
    /// and other computed quantities.
    pub values: BTreeMap<String, Value>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u64>,
}

#[derive(Clone, Copy, Debug)]
pub struct RunOptions {
    /// Cell budget for chain complexes and dense matrices.
    pub budget: usize,
    /// Largest matrix group that is enumerated.
    pub group_bound: usize,
    /// Record wall-clock time in reports (makes them non-reproducible).
    pub timing: bool,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions {
            budget: DEFAULT_CELL_BUDGET,
            group_bound: DEFAULT_GROUP_BOUND,
            timing: false,
        }
    }
}

/// The checks and values of a claim that ran to completion.
#[derive(Default)]
pub(crate) struct Outcome {
    pub checks: Vec<Check>,
    pub values: BTreeMap<String, Value>,
    /// Set when the claim's hypothesis fails but the computation still ran.
    pub violated: Option<String>,
}

/// Attached to the linear-group claims, which are checked over `R = Z/m`.
pub const FINITE_LEVEL: &str = "R = Z/m; the finite unit group of Z/m stands in for R*";

/// Runs one scenario. Only malformed input is an `Err`; everything else,
/// including computation errors, becomes a status.
pub fn run(sc: &Scenario, opts: &RunOptions) -> Result<Report> {
    let start = Instant::now();
    let mut note = None;
    let result = match claims::execute::<i64>(sc, opts) {
        Err(Error::Overflow) => {
            note = Some("recomputed with arbitrary-precision integers after a machine overflow".to_string());
            claims::execute::<BigInt>(sc, opts)
        }
        r => r,
    };
    let (status, outcome) = match result {
        Ok(mut o) => {
            match (sc.expect_precondition_failure, o.violated.take()) {
                (true, Some(msg)) => o.checks.push(Check::new("precondition_failure_expected", true, msg)),
                (true, None) => o.checks.push(Check::new("precondition_failure_expected", false, "the preconditions hold")),
                (false, Some(msg)) => note = Some(msg),
                (false, None) => {}
            }
            let pass = o.checks.iter().all(|c| c.pass);
            (if pass { Status::Pass } else { Status::Fail }, o)
        }
        Err(Error::Precondition(msg)) => {
            let mut o = Outcome::default();
            if sc.expect_precondition_failure {
                o.checks.push(Check::new("precondition_failure_expected", true, msg));
                (Status::Pass, o)
            } else {
                note = Some(msg);
                (Status::PreconditionFailure, o)
            }
        }
        Err(Error::Budget { cells, budget }) => {
            note = Some(format!("needs {cells} cells, budget {budget}"));
            (Status::SkippedBudget, Outcome::default())
        }
        Err(e @ Error::Input(_)) | Err(e @ Error::NotAGroup(_)) | Err(e @ Error::InvalidAction(_)) => {
            return Err(Error::Input(format!("scenario {}: {e}", sc.id)));
        }
        Err(e) => {
            let mut o = Outcome::default();
            o.checks.push(Check::new("computation", false, e.to_string()));
            (Status::Fail, o)
        }
    };
    let mut values = outcome.values;
    if matches!(sc.claim, Claim::GammaExact | Claim::DeltaSplit | Claim::UnitPowerTrivial) {
        values.insert("finite_level".into(), Value::from(FINITE_LEVEL));
    }
    Ok(Report {
        id: sc.id.clone(),
        claim: sc.claim,
        status,
        checks: outcome.checks,
        values,
        note,
        elapsed_ms: opts.timing.then(|| start.elapsed().as_millis() as u64),
    })
}

/// Runs scenarios in parallel; reports come back sorted by id.
pub fn run_all(scenarios: &[Scenario], opts: &RunOptions) -> Result<Vec<Report>> {
    let mut seen = std::collections::HashSet::new();
    if let Some(dup) = scenarios.iter().find(|s| !seen.insert(s.id.as_str())) {
        return Err(Error::Input(format!("duplicate scenario id {:?}", dup.id)));
    }
    let mut reports = scenarios.par_iter().map(|s| run(s, opts)).collect::<Result<Vec<_>>>()?;
    reports.sort_by(|a, b| a.id.cmp(&b.id));
    Ok(reports)
}

/// Parses a scenario document: one scenario, a list, or
/// `{"scenarios": [...]}`. Errors carry the line and column.
pub fn parse_scenarios(text: &str) -> Result<Vec<Scenario>> {
    let value: Value = serde_json::from_str(text)
        .map_err(|e| Error::Input(format!("line {}, column {}: {}", e.line(), e.column(), e)))?;
    // decode element by element so that errors point at the scenario
    let items: Vec<(String, Value)> = match &value {
        Value::Object(map) if map.contains_key("scenarios") => match &map["scenarios"] {
            Value::Array(v) => v.iter().enumerate().map(|(i, x)| (format!("scenarios[{i}]"), x.clone())).collect(),
            _ => return Err(Error::Input("\"scenarios\" must be a list".into())),
        },
        Value::Array(v) => v.iter().enumerate().map(|(i, x)| (format!("[{i}]"), x.clone())).collect(),
        _ => {
            let one = serde_json::from_str::<Scenario>(text)
                .map_err(|e| Error::Input(format!("line {}, column {}: {}", e.line(), e.column(), e)))?;
            return Ok(vec![one]);
        }
    };
    let out = items
        .into_iter()
        .map(|(path, v)| {
            serde_json::from_value::<Scenario>(v).map_err(|e| {
                let at = locate(text, &path);
                Error::Input(format!("{path}{at}: {e}"))
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(out)
}

/// Source position of the start of the `i`-th scenario of a list.
fn locate(text: &str, path: &str) -> String {
    let index: Option<usize> = path
        .rsplit('[')
        .next()
        .and_then(|s| s.trim_end_matches(']').parse().ok());
    let Some(index) = index else {
        return String::new();
    };
    let mut depth = 0i32;
    let mut count = 0usize;
    let mut in_str = false;
    let mut escaped = false;
    let list_depth = if text.trim_start().starts_with('[') { 1 } else { 2 };
    let (mut line, mut col) = (1usize, 0usize);
    for ch in text.chars() {
        col += 1;
        if ch == '\n' {
            line += 1;
            col = 0;
        }
        if in_str {
            match (escaped, ch) {
                (true, _) => escaped = false,
                (false, '\\') => escaped = true,
                (false, '"') => in_str = false,
                _ => {}
            }
            continue;
        }
        match ch {
            '"' => in_str = true,
            '{' | '[' => {
                if depth == list_depth && ch == '{' {
                    if count == index {
                        return format!(" (line {line}, column {col})");
                    }
                    count += 1;
                }
                depth += 1;
            }
            '}' | ']' => depth -= 1,
            _ => {}
        }
    }
    String::new()
}

/// A group with a module, as read by the single-computation commands. Any
/// other scenario fields are ignored, so scenario files work as input.
#[derive(Clone, Debug, Deserialize)]
pub struct Instance {
    #[serde(default)]
    pub ring: Option<RingInput>,
    pub group: GroupSpec,
    #[serde(default)]
    pub module: Option<ModuleSpec>,
    #[serde(default)]
    pub seed: Option<u64>,
}

pub fn parse_instance(text: &str) -> Result<Instance> {
    serde_json::from_str(text).map_err(|e| Error::Input(format!("line {}, column {}: {}", e.line(), e.column(), e)))
}

impl Instance {
    pub fn ring(&self) -> Result<crate::algebra::ring::RingSpec> {
        Ok(match &self.ring {
            Some(r) => r.ring()?,
            None => crate::algebra::ring::RingSpec::Integers,
        })
    }

    /// The module: as given, else seeded random, else trivial of rank 1.
    pub fn gmodule<T: crate::scalar::Scalar>(&self, group_bound: usize) -> Result<crate::gmodules::GModule<T>> {
        let ring = self.ring()?;
        let g = self.group.build(group_bound)?;
        match (&self.module, self.seed) {
            (Some(spec), _) => spec.build(&g, ring),
            (None, Some(seed)) => {
                use rand::SeedableRng;
                let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
                claims::random_on(&g, ring, &mut rng)
            }
            (None, None) => crate::gmodules::GModule::trivial(&g, &crate::algebra::module::PresentedModule::free(ring, 1)),
        }
    }
}

pub fn summary_counts(reports: &[Report]) -> BTreeMap<String, usize> {
    let mut c = BTreeMap::new();
    for r in reports {
        *c.entry(r.status.to_string()).or_insert(0) += 1;
    }
    c
}

/// Human-readable report.
pub fn render_text(r: &Report) -> String {
    let mut s = format!("[{}] {} ({})", r.status, r.id, r.claim);
    if let Some(ms) = r.elapsed_ms {
        s.push_str(&format!(" {ms} ms"));
    }
    s.push('\n');
    if let Some(n) = &r.note {
        s.push_str(&format!("    note: {n}\n"));
    }
    for (k, v) in &r.values {
        s.push_str(&format!("    {k} = {v}\n"));
    }
    for c in &r.checks {
        s.push_str(&format!("    {} {}: {}\n", if c.pass { "ok  " } else { "FAIL" }, c.name, c.detail));
    }
    s
}

/// One JSON line per report.
pub fn render_machine(r: &Report) -> String {
    serde_json::to_string(r).expect("reports serialize")
}
