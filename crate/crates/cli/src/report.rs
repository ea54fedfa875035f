use crate::config::{Config, MaterialConfig, ProbeConfig};
use serde::Serialize;
use std::collections::BTreeMap;
use std::fmt::Write;
use vkplate::residual::{Region, Tolerances};
use vkplate::scenarios::{EquationOutcome, Expectation, Scenario, Signature};

#[derive(Clone, Debug, Serialize)]
pub struct EquationReport {
    pub equation: String,
    pub region: Region,
    pub probes: usize,
    pub max_raw: f64,
    pub mean_raw: f64,
    pub max_relative: f64,
    pub tolerance: f64,
    pub passed: bool,
    pub expected: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub signature: Option<Signature>,
    pub matched: bool,
    pub worst: Vec<f64>,
    #[serde(skip_serializing_if = "String::is_empty")]
    pub description: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Conventions {
    pub orientation: Vec<String>,
    pub tolerances: Tolerances,
    pub probes: ProbeConfig,
    pub material: MaterialConfig,
}

#[derive(Clone, Debug, Serialize)]
pub struct ResidualReport {
    pub scenario: String,
    pub all_matched: bool,
    pub equations: Vec<EquationReport>,
    pub parameters: BTreeMap<String, f64>,
    pub conventions: Conventions,
    pub notes: Vec<String>,
}

impl ResidualReport {
    pub fn new(cfg: &Config, sc: &Scenario, tol: Tolerances, outcomes: Vec<EquationOutcome>) -> Self {
        let equations: Vec<EquationReport> = outcomes
            .into_iter()
            .map(|o| {
                let (expected, signature) = match o.expectation {
                    Expectation::Pass => ("pass", None),
                    Expectation::Fail { signature } => ("fail", Some(signature)),
                };
                EquationReport {
                    tolerance: tol.for_region(o.record.region),
                    equation: o.record.equation,
                    region: o.record.region,
                    probes: o.record.probes,
                    max_raw: o.record.max_raw,
                    mean_raw: o.record.mean_raw,
                    max_relative: o.record.max_relative,
                    passed: o.passed,
                    expected,
                    signature,
                    matched: o.matched,
                    worst: o.record.worst,
                    description: o.description,
                    note: o.record.note,
                }
            })
            .collect();
        let mut notes = vec![];
        if let (Some(c), Some(stated)) = (sc.parameter("stress_coefficient"), sc.parameter("stress_coefficient_stated")) {
            notes.push(format!("stress-function coefficient solved {c:.12} against the closed-form value {stated:.12}"));
        }
        if let (Some(c), Some(stated)) = (sc.parameter("line_couple_solved"), sc.parameter("line_couple_stated")) {
            notes.push(format!("fold couple solved {c:.12} against the closed-form value {stated:.12}"));
        }
        ResidualReport {
            scenario: sc.id.clone(),
            all_matched: equations.iter().all(|e| e.matched),
            equations,
            parameters: sc.parameters.iter().cloned().collect(),
            conventions: Conventions { orientation: sc.conventions.clone(), tolerances: tol, probes: cfg.probes, material: cfg.material },
            notes,
        }
    }

    pub fn summary(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "scenario {}", self.scenario);
        let _ = writeln!(s, "{:<26} {:<9} {:>6} {:>10} {:>10} {:>8}  status", "equation", "region", "probes", "max rel", "tol", "expect");
        for e in &self.equations {
            let status = match (e.passed, e.matched) {
                (true, true) => "ok",
                (false, true) => "expected failure",
                (true, false) => "UNEXPECTED PASS",
                (false, false) => "FAILED",
            };
            let region = format!("{:?}", e.region).to_lowercase();
            let _ = writeln!(
                s,
                "{:<26} {:<9} {:>6} {:>10.2e} {:>10.1e} {:>8}  {}",
                e.equation, region, e.probes, e.max_relative, e.tolerance, e.expected, status
            );
        }
        for (k, v) in &self.parameters {
            let _ = writeln!(s, "{k} = {v:.10}");
        }
        for n in &self.notes {
            let _ = writeln!(s, "note: {n}");
        }
        let matched = self.equations.iter().filter(|e| e.matched).count();
        let _ = writeln!(s, "{matched}/{} equations matched their expectation", self.equations.len());
        s
    }
}
