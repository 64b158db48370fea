use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use ks_cli::{parse_summands, run, BranchChoice, CliError, Command, JobSpec, PointSpec, Report};
use lattice::LatticeSpec;

#[derive(Parser)]
#[command(name = "kuga-satake", version, about = "Exact Kuga-Satake computations for U + U(2) + D4(-1)")]
struct Cli {
    /// quiet: report only; summary: plus one line per check on stderr; debug: plus timings.
    #[arg(long, global = true, env = "KUGA_SATAKE_VERBOSITY", default_value = "summary")]
    verbosity: Verbosity,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, ValueEnum)]
enum Verbosity {
    Quiet,
    Summary,
    Debug,
}

#[derive(Clone, Copy, ValueEnum)]
enum BranchArg {
    Natural,
    Omega,
    OmegaBar,
    Both,
}

impl From<BranchArg> for BranchChoice {
    fn from(b: BranchArg) -> Self {
        match b {
            BranchArg::Natural => BranchChoice::Natural,
            BranchArg::Omega => BranchChoice::Omega,
            BranchArg::OmegaBar => BranchChoice::OmegaBar,
            BranchArg::Both => BranchChoice::Both,
        }
    }
}

#[derive(clap::Args)]
struct LatticeArgs {
    /// Summands, e.g. "U, U(2), D4minus".
    #[arg(long, default_value = "U, U(2), D4minus", conflicts_with = "lattice_file")]
    lattice: String,
    /// JSON lattice spec: {"summands": [...]} or {"gram": [[...]]}.
    #[arg(long)]
    lattice_file: Option<PathBuf>,
}

impl LatticeArgs {
    fn spec(&self) -> Result<LatticeSpec, CliError> {
        match &self.lattice_file {
            Some(p) => serde_json::from_str(&std::fs::read_to_string(p)?).map_err(|e| CliError::Parse(e.to_string())),
            None => parse_summands(&self.lattice),
        }
    }
}

#[derive(Subcommand)]
enum Cmd {
    /// Dimensions, signature and relation check of Cl(L).
    CliffordInfo(LatticeArgs),
    /// Glue the Clifford algebras of the summands and check the graded tensor rule.
    Glue(LatticeArgs),
    /// Pseudo-idempotents, kernels, the eight sublattices and N₁..N₄.
    Decompose,
    /// φ(x) as an 8×8 quaternion matrix, for elements such as "f1*h2 - 3".
    Rep {
        #[arg(required = true)]
        elements: Vec<String>,
    },
    /// Module types, multipliers, M_E and 𝒯.
    Attributes {
        #[arg(long, default_value = ks_cli::DEFAULT_ALPHA)]
        alpha: String,
    },
    /// Period matrix Z(a, b) at a point; defaults to the worked example.
    Period {
        /// JSON point {"label", "e1", "e2"}.
        #[arg(long)]
        omega: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "natural")]
        branch: BranchArg,
    },
    /// Period matrices at several points inside T'.
    #[command(name = "rank18-scan")]
    Rank18Scan {
        /// JSON list of points.
        #[arg(long)]
        points: PathBuf,
    },
    /// Ranks of Cl±(T')·x_i and of the J'-eigenspaces.
    RankCheck {
        #[arg(long)]
        omega: Option<PathBuf>,
    },
    /// Run a JSON job file.
    RunJob { job: PathBuf },
}

fn read_json<T: serde::de::DeserializeOwned>(p: &PathBuf) -> Result<T, CliError> {
    serde_json::from_str(&std::fs::read_to_string(p)?).map_err(|e| CliError::Parse(format!("{}: {e}", p.display())))
}

fn build_job(cmd: &Cmd) -> Result<JobSpec, CliError> {
    let t = ks_cli::t_lattice;
    Ok(match cmd {
        Cmd::CliffordInfo(l) => JobSpec::new(l.spec()?, vec![Command::CliffordInfo]),
        Cmd::Glue(l) => JobSpec::new(l.spec()?, vec![Command::Glue]),
        Cmd::Decompose => JobSpec::new(t(), vec![Command::Decompose]),
        Cmd::Rep { elements } => JobSpec { elements: elements.clone(), ..JobSpec::new(t(), vec![Command::Rep]) },
        Cmd::Attributes { alpha } => JobSpec { alpha: alpha.clone(), ..JobSpec::new(t(), vec![Command::Attributes]) },
        Cmd::Period { omega, branch } => JobSpec {
            omega: omega.as_ref().map(read_json::<PointSpec>).transpose()?,
            branch: (*branch).into(),
            ..JobSpec::new(t(), vec![Command::Period])
        },
        Cmd::Rank18Scan { points } => JobSpec { points: read_json(points)?, ..JobSpec::new(t(), vec![Command::Rank18Scan]) },
        Cmd::RankCheck { omega } => JobSpec {
            omega: omega.as_ref().map(read_json::<PointSpec>).transpose()?,
            ..JobSpec::new(t(), vec![Command::RankCheck])
        },
        Cmd::RunJob { job } => JobSpec::parse(&std::fs::read_to_string(job)?)?,
    })
}

fn execute(cli: &Cli) -> Result<Report, CliError> {
    let job = build_job(&cli.cmd)?;
    let start = Instant::now();
    let report = run(&job)?;
    if cli.verbosity == Verbosity::Debug {
        eprintln!("finished in {:.2?}", start.elapsed());
    }
    match &cli.out {
        Some(p) => std::fs::write(p, report.to_json())?,
        None => print!("{}", report.to_json()),
    }
    if cli.verbosity >= Verbosity::Summary {
        eprint!("{}", report.summary());
    }
    Ok(report)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(&cli) {
        Ok(r) if r.ok() => ExitCode::SUCCESS,
        Ok(_) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
