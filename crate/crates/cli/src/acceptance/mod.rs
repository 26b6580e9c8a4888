//! The acceptance suite: one outcome per criterion, each with pinned time budgets.

mod criteria;
mod properties;

use std::time::{Duration, Instant};

use serde::Serialize;

use crate::error::CliResult;
use crate::report::Report;

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct CriterionOutcome {
    pub id: u8,
    pub title: &'static str,
    pub passed: bool,
    pub checks: Vec<Check>,
    pub budget_ms: u128,
    pub elapsed_ms: u128,
}

impl CriterionOutcome {
    pub fn line(&self) -> String {
        let status = if self.passed { "PASS" } else { "FAIL" };
        let failed: Vec<&str> = self.checks.iter().filter(|c| !c.passed).map(|c| c.name.as_str()).collect();
        let mut line = format!(
            "{status} criterion {}: {} ({} checks, {} ms of {} ms)",
            self.id,
            self.title,
            self.checks.len(),
            self.elapsed_ms,
            self.budget_ms
        );
        if !failed.is_empty() {
            line.push_str(&format!(" failing: {}", failed.join(", ")));
        }
        line
    }
}

/// Collects named checks; errors inside a check count as failures with their message.
#[derive(Default)]
pub struct Checker {
    checks: Vec<Check>,
}

impl Checker {
    pub fn check(&mut self, name: impl Into<String>, passed: bool, detail: impl Into<String>) {
        self.checks.push(Check { name: name.into(), passed, detail: detail.into() });
    }

    pub fn attempt<T>(&mut self, name: &str, r: stabmod_core::Result<T>) -> Option<T> {
        match r {
            Ok(v) => Some(v),
            Err(e) => {
                self.check(name, false, format!("error: {e}"));
                None
            }
        }
    }
}

type CriterionFn = fn(&mut Checker);

const CRITERIA: [(u8, &str, Duration, CriterionFn); 8] = [
    (1, "worked half-plane example", Duration::from_secs(5), criteria::worked_example),
    (2, "X-cube charges and mobility", Duration::from_secs(60), criteria::xcube),
    (3, "toric code across directions", Duration::from_secs(10), criteria::toric_directions),
    (4, "Wen plaquette needs coarse-graining", Duration::from_secs(30), criteria::wen),
    (5, "finite-torus counting", Duration::from_secs(5), criteria::torus_counting),
    (6, "property suites", Duration::from_secs(300), properties::all),
    (7, "QCA boundary algebras", Duration::from_secs(30), criteria::qca),
    (8, "negative controls", Duration::from_secs(30), criteria::negative_controls),
];

pub fn run_criterion(id: u8) -> Option<CriterionOutcome> {
    let &(id, title, budget, f) = CRITERIA.iter().find(|c| c.0 == id)?;
    let started = Instant::now();
    let mut checker = Checker::default();
    f(&mut checker);
    let elapsed = started.elapsed();
    let mut checks = checker.checks;
    if checks.is_empty() {
        checks.push(Check { name: "ran".into(), passed: false, detail: "no checks recorded".into() });
    }
    let within = elapsed <= budget;
    checks.push(Check { name: "time budget".into(), passed: within, detail: format!("limit {} ms", budget.as_millis()) });
    Some(CriterionOutcome {
        id,
        title,
        passed: checks.iter().all(|c| c.passed),
        checks,
        budget_ms: budget.as_millis(),
        elapsed_ms: elapsed.as_millis(),
    })
}

pub fn run_all() -> Vec<CriterionOutcome> {
    CRITERIA.iter().filter_map(|c| run_criterion(c.0)).collect()
}

pub fn report() -> CliResult<Report> {
    let started = Instant::now();
    let outcomes = run_all();
    let all = outcomes.iter().all(|o| o.passed);
    Report::new("acceptance", None, serde_json::json!({ "all_passed": all, "criteria": outcomes }), Vec::new(), started)
}
