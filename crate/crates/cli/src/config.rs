use anyhow::{bail, Context, Result};
use serde::{Deserialize, Serialize};
use serde_json::Value;
use std::path::Path;
use vkplate::fields::{AngularProfile, Harmonic, Material};
use vkplate::residual::{ProbeSet, Tolerances};
use vkplate::scenarios::{
    make_circular_fold, make_dcone, make_disclination, make_linear_fold, make_tetrahedral_folds, solve_terminating_fold, Scenario,
};

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Config {
    pub scenario: String,
    pub material: MaterialConfig,
    #[serde(default)]
    pub params: Value,
    #[serde(default)]
    pub tolerances: Tolerances,
    #[serde(default)]
    pub probes: ProbeConfig,
}

#[derive(Clone, Copy, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct MaterialConfig {
    #[serde(rename = "E")]
    pub e: f64,
    #[serde(rename = "D")]
    pub d: f64,
    pub nu: f64,
}

#[derive(Clone, Copy, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields, default)]
pub struct ProbeConfig {
    pub bulk_count: usize,
    pub interface_count: usize,
    pub seed: u64,
}

impl Default for ProbeConfig {
    fn default() -> Self {
        ProbeConfig { bulk_count: 30, interface_count: 8, seed: 7 }
    }
}

/// Scenario parameters, one variant per scenario type.
#[derive(Clone, Debug, PartialEq)]
pub enum ScenarioParams {
    Disclination(Disclination),
    Dcone(Dcone),
    LinearFold(LinearFold),
    CircularFold(CircularFold),
    TerminatingFold(TerminatingFold),
    TetrahedralFolds(TetrahedralFolds),
}

#[derive(Clone, Debug, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Disclination {
    pub s: f64,
    #[serde(default)]
    pub phase: f64,
}

#[derive(Clone, Debug, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Dcone {
    pub terms: Vec<Harmonic>,
}

#[derive(Clone, Debug, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LinearFold {
    pub gamma0: f64,
    pub b0: f64,
    pub b1: f64,
    pub a0: f64,
    pub a1: f64,
}

#[derive(Clone, Debug, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CircularFold {
    pub gamma0: f64,
    pub r0: f64,
    #[serde(default = "yes")]
    pub include_couple: bool,
}

fn yes() -> bool {
    true
}

#[derive(Clone, Debug, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TerminatingFold {
    pub gamma0: f64,
}

#[derive(Clone, Debug, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TetrahedralFolds {
    pub folds: Vec<FoldRay>,
}

#[derive(Clone, Copy, Debug, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FoldRay {
    /// tangent direction of the fold, degrees
    pub angle_deg: f64,
    pub gamma: f64,
}

pub const SCENARIOS: [&str; 6] = ["disclination", "dcone", "linear_fold", "circular_fold", "terminating_fold", "tetrahedral_folds"];

fn params<T: for<'de> Deserialize<'de>>(v: &Value, scenario: &str) -> Result<T> {
    T::deserialize(v).with_context(|| format!("invalid params for scenario '{scenario}'"))
}

impl Config {
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).with_context(|| format!("cannot read config {}", path.display()))?;
        Self::parse(&text).with_context(|| format!("malformed config {}", path.display()))
    }

    pub fn parse(text: &str) -> Result<Self> {
        let cfg: Config = serde_json::from_str(text)?;
        cfg.scenario_params()?;
        Ok(cfg)
    }

    pub fn scenario_params(&self) -> Result<ScenarioParams> {
        let p = &self.params;
        let s = self.scenario.as_str();
        Ok(match s {
            "disclination" => ScenarioParams::Disclination(params(p, s)?),
            "dcone" => ScenarioParams::Dcone(params(p, s)?),
            "linear_fold" => ScenarioParams::LinearFold(params(p, s)?),
            "circular_fold" => ScenarioParams::CircularFold(params(p, s)?),
            "terminating_fold" => ScenarioParams::TerminatingFold(params(p, s)?),
            "tetrahedral_folds" => ScenarioParams::TetrahedralFolds(params(p, s)?),
            other => bail!("unknown scenario '{other}' (expected one of {})", SCENARIOS.join(", ")),
        })
    }

    pub fn material(&self) -> Result<Material> {
        let m = self.material;
        Ok(Material::new(m.e, m.d, m.nu)?)
    }

    pub fn build(&self) -> Result<Scenario> {
        let m = self.material()?;
        let sc = match self.scenario_params()? {
            ScenarioParams::Disclination(p) => make_disclination(p.s, m, p.phase)?,
            ScenarioParams::Dcone(p) => make_dcone(AngularProfile::harmonic(p.terms)?, m)?,
            ScenarioParams::LinearFold(p) => make_linear_fold(p.gamma0, p.b0, p.b1, p.a0, p.a1, m)?,
            ScenarioParams::CircularFold(p) => make_circular_fold(p.gamma0, p.r0, m, p.include_couple)?,
            ScenarioParams::TerminatingFold(p) => solve_terminating_fold(p.gamma0, m)?.0,
            ScenarioParams::TetrahedralFolds(p) => {
                let folds: Vec<(f64, f64)> = p.folds.iter().map(|f| (f.angle_deg.to_radians(), f.gamma)).collect();
                make_tetrahedral_folds(&folds, m)?.0
            }
        };
        Ok(sc)
    }

    pub fn probes(&self, sc: &Scenario) -> ProbeSet {
        ProbeSet::generate(&sc.bundle, self.probes.bulk_count, self.probes.interface_count, self.probes.seed)
    }
}
