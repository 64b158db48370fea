//! Job files, the stage runner and the JSON report behind `kuga-satake`.

mod stages;

use std::fmt;

use lattice::LatticeSpec;
use period_map::PeriodPoint;
use scalar_tower::parse_quad;
use serde::{Deserialize, Serialize};
use serde_json::Value;

pub use stages::Context;

pub const DEFAULT_ALPHA: &str = "(f1 + f2)*(f3 + f4)";

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    CliffordInfo,
    Glue,
    Decompose,
    Rep,
    Attributes,
    Period,
    #[serde(rename = "rank18-scan")]
    Rank18Scan,
    RankCheck,
}

impl Command {
    pub const ALL: [Command; 8] = [
        Command::CliffordInfo,
        Command::Glue,
        Command::Decompose,
        Command::Rep,
        Command::Attributes,
        Command::Period,
        Command::Rank18Scan,
        Command::RankCheck,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Command::CliffordInfo => "clifford-info",
            Command::Glue => "glue",
            Command::Decompose => "decompose",
            Command::Rep => "rep",
            Command::Attributes => "attributes",
            Command::Period => "period",
            Command::Rank18Scan => "rank18-scan",
            Command::RankCheck => "rank-check",
        }
    }
}

impl fmt::Display for Command {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// e₁, e₂ in the basis f₁..f₄, h₁..h₄, entries in ℚ(√2) text form.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PointSpec {
    pub label: String,
    pub e1: Vec<String>,
    pub e2: Vec<String>,
}

impl PointSpec {
    pub fn to_point(&self) -> Result<PeriodPoint, CliError> {
        let parse = |v: &[String]| -> Result<Vec<_>, CliError> {
            if v.len() != 8 {
                return Err(CliError::Parse(format!("{}: expected 8 coordinates, got {}", self.label, v.len())));
            }
            v.iter().map(|s| parse_quad(s).map_err(|e| CliError::Parse(e.to_string()))).collect()
        };
        Ok(PeriodPoint { label: self.label.clone(), e1: parse(&self.e1)?, e2: parse(&self.e2)? })
    }

    pub fn from_point(p: &PeriodPoint) -> Self {
        let s = |v: &[scalar_tower::QuadExt]| v.iter().map(|x| x.to_string()).collect();
        PointSpec { label: p.label.clone(), e1: s(&p.e1), e2: s(&p.e2) }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BranchChoice {
    /// Chosen by the sign of the polarization.
    #[default]
    Natural,
    Omega,
    OmegaBar,
    Both,
}

/// Reference values compared against the computed ones; a mismatch is a failed check.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Expectations {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub t: Option<Vec<Vec<String>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub a: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub b: Option<String>,
}

impl Expectations {
    fn is_empty(&self) -> bool {
        self == &Expectations::default()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct JobSpec {
    #[serde(default)]
    pub name: String,
    pub lattice: LatticeSpec,
    #[serde(default = "default_alpha")]
    pub alpha: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub omega: Option<PointSpec>,
    #[serde(default)]
    pub branch: BranchChoice,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub elements: Vec<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub points: Vec<PointSpec>,
    #[serde(default, skip_serializing_if = "Expectations::is_empty")]
    pub expect: Expectations,
    pub commands: Vec<Command>,
}

fn default_alpha() -> String {
    DEFAULT_ALPHA.to_string()
}

impl JobSpec {
    pub fn new(lattice: LatticeSpec, commands: Vec<Command>) -> Self {
        JobSpec {
            name: String::new(),
            lattice,
            alpha: default_alpha(),
            omega: None,
            branch: BranchChoice::Natural,
            elements: Vec::new(),
            points: Vec::new(),
            expect: Expectations::default(),
            commands,
        }
    }

    pub fn parse(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::Parse(e.to_string()))
    }

    /// Commands deduplicated and sorted by dependency order.
    pub fn normalized(&self) -> Self {
        let mut job = self.clone();
        job.commands = Command::ALL.iter().copied().filter(|c| self.commands.contains(c)).collect();
        job
    }
}

/// U ⊕ U(2) ⊕ D₄(−1).
pub fn t_lattice() -> LatticeSpec {
    LatticeSpec::Summands(vec!["U".into(), "U(2)".into(), "D4minus".into()])
}

/// Parses "U, U(2), D4minus" or "U + U(2) + D4minus".
pub fn parse_summands(text: &str) -> Result<LatticeSpec, CliError> {
    let names: Vec<String> =
        text.split([',', '+']).map(|s| s.trim().to_string()).filter(|s| !s.is_empty()).collect();
    if names.is_empty() {
        return Err(CliError::Parse("empty lattice".into()));
    }
    let spec = LatticeSpec::Summands(names);
    spec.build().map_err(|e| CliError::Parse(e.to_string()))?;
    Ok(spec)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StageReport {
    pub stage: Command,
    pub data: Value,
    pub checks: Vec<Check>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub job: JobSpec,
    pub stages: Vec<StageReport>,
    pub passed: usize,
    pub failed: usize,
}

impl Report {
    pub fn ok(&self) -> bool {
        self.failed == 0
    }

    pub fn failed_checks(&self) -> Vec<String> {
        self.stages
            .iter()
            .flat_map(|s| s.checks.iter().filter(|c| !c.pass).map(move |c| format!("{}.{}", s.stage, c.name)))
            .collect()
    }

    pub fn stage(&self, c: Command) -> Option<&StageReport> {
        self.stages.iter().find(|s| s.stage == c)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes") + "\n"
    }

    /// One line per check, for humans.
    pub fn summary(&self) -> String {
        let mut out = String::new();
        for s in &self.stages {
            for c in &s.checks {
                out += &format!("{} {}.{}\n", if c.pass { "ok  " } else { "FAIL" }, s.stage, c.name);
            }
        }
        out += &format!("{} passed, {} failed\n", self.passed, self.failed);
        out
    }
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("stage {stage}: {message}")]
    Stage { stage: Command, message: String },
    #[error("{0}")]
    Io(#[from] std::io::Error),
}

pub fn run(job: &JobSpec) -> Result<Report, CliError> {
    let job = job.normalized();
    let mut ctx = Context::new(&job)?;
    let mut stages = Vec::new();
    for &c in &job.commands {
        let (data, checks) = ctx.run_stage(c).map_err(|message| CliError::Stage { stage: c, message })?;
        stages.push(StageReport { stage: c, data, checks });
    }
    let passed = stages.iter().flat_map(|s| &s.checks).filter(|c| c.pass).count();
    let failed = stages.iter().flat_map(|s| &s.checks).filter(|c| !c.pass).count();
    Ok(Report { job, stages, passed, failed })
}
