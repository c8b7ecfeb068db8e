use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::Value;

mod tree;
mod val;

#[derive(Parser, Debug)]
#[command(name = "valtree", version, about = "Exact valuations of Q[x,y] at the origin and rooted non-metric trees")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Valuations: evaluation, normal forms, infima, krull.
    Val {
        #[command(subcommand)]
        op: ValOp,
    },
    /// Trees: axioms, infima, metrics, neighborhoods.
    Tree {
        #[command(subcommand)]
        op: TreeOp,
    },
    /// Seeded property suites.
    Suite {
        #[command(subcommand)]
        op: SuiteOp,
    },
}

#[derive(Args, Debug, Clone)]
pub struct ValArgs {
    /// Valuation JSON file; repeatable.
    #[arg(long = "in", value_name = "FILE")]
    pub inputs: Vec<PathBuf>,
    /// Inline valuation JSON; repeatable, read after the files.
    #[arg(long = "valuation", value_name = "JSON")]
    pub valuations: Vec<String>,
    /// Polynomial such as "x^2*y - 3/2*y^3".
    #[arg(long)]
    pub poly: Option<String>,
    /// Compact JSON output.
    #[arg(long)]
    pub json: bool,
    /// Random polynomials used to corroborate a comparison.
    #[arg(long, value_name = "N")]
    pub samples: Option<usize>,
    #[arg(long, default_value_t = valtree::testkit::DEFAULT_SEED, value_parser = parse_seed)]
    pub seed: u64,
}

#[derive(Subcommand, Debug)]
enum ValOp {
    /// Value of --poly.
    Eval(ValArgs),
    /// Value of the maximal ideal.
    Mvalue(ValArgs),
    /// Rescale so that the maximal ideal has value 1.
    Normalize(ValArgs),
    /// Order of two valuations: LT, EQ, GT or INCOMPARABLE.
    Compare(ValArgs),
    /// Infimum of the given valuations.
    Inf(ValArgs),
    /// Multiplicity sequence.
    Stream(ValArgs),
    /// Canonical form.
    Canon(ValArgs),
    /// Associated Krull valuation, evaluated on --poly if given.
    Krull(ValArgs),
    /// A linear form minimal for both valuations.
    CommonMin(ValArgs),
    /// A linear form with value above that of the maximal ideal.
    Witness(ValArgs),
}

#[derive(Args, Debug, Clone)]
pub struct TreeArgs {
    /// Tree description JSON.
    #[arg(long, value_name = "FILE")]
    pub tree: Option<PathBuf>,
    /// Point addresses such as "0/1@1/2", comma separated or repeated.
    #[arg(long, value_delimiter = ',')]
    pub points: Vec<String>,
    #[arg(long)]
    pub tau: Option<String>,
    #[arg(long)]
    pub sigma: Option<String>,
    #[arg(long)]
    pub gamma: Option<String>,
    /// Base point of a tangent vector.
    #[arg(long)]
    pub base: Option<String>,
    /// Representative of a tangent vector.
    #[arg(long)]
    pub rep: Option<String>,
    /// Grid points per edge.
    #[arg(long, default_value_t = 8)]
    pub grid: u32,
    /// Largest subset size enumerated by the axiom check.
    #[arg(long, default_value_t = 3)]
    pub subset_bound: usize,
    /// Lower bounds produced when a set has no infimum.
    #[arg(long, default_value_t = 50)]
    pub steps: usize,
    /// Branches of the star tree.
    #[arg(long, default_value_t = 1000)]
    pub branches: usize,
    /// Seeded subbasic neighborhoods of the star center.
    #[arg(long, default_value_t = 20)]
    pub neighborhoods: usize,
    #[arg(long, default_value_t = valtree::testkit::DEFAULT_SEED, value_parser = parse_seed)]
    pub seed: u64,
    #[arg(long)]
    pub json: bool,
}

#[derive(Subcommand, Debug)]
enum TreeOp {
    /// Axioms T1-T4 on sampled points.
    Check(TreeArgs),
    /// Infimum of --points.
    Inf(TreeArgs),
    /// Parametrization distance between two points.
    Dist(TreeArgs),
    /// Membership of --points in the tangent vector at --base through --rep.
    Nbhd(TreeArgs),
    /// Ball around --gamma of radius d(gamma, tau) inside the tangent vector of --sigma at --tau.
    BallCheck(TreeArgs),
    /// Star tree witness that no countable family of neighborhoods is a base.
    Countability(TreeArgs),
}

#[derive(Args, Debug, Clone)]
pub struct SuiteArgs {
    #[arg(long, default_value_t = valtree::testkit::DEFAULT_SEED, value_parser = parse_seed)]
    pub seed: u64,
    #[arg(long)]
    pub json: bool,
}

#[derive(Subcommand, Debug)]
enum SuiteOp {
    /// Every suite.
    All(SuiteArgs),
}

pub enum Failure {
    /// Bad input; exit 2.
    Usage(String),
    /// A check failed; exit 1 after printing `report`.
    Check { message: String, report: Output },
}

pub type CmdResult = Result<Output, Failure>;

/// Command output: JSON always, plus a human-readable rendering.
pub struct Output {
    pub json: Value,
    pub text: String,
}

impl Output {
    pub fn new(json: Value, text: impl Into<String>) -> Self {
        Output { json, text: text.into() }
    }

    /// Objects print as pretty JSON in text mode.
    pub fn json_only(json: Value) -> Self {
        let text = serde_json::to_string_pretty(&json).unwrap();
        Output { json, text }
    }

    fn print(&self, json: bool) {
        if json {
            println!("{}", serde_json::to_string(&self.json).unwrap());
        } else {
            println!("{}", self.text);
        }
    }
}

/// Decimal or `0x`-prefixed hexadecimal.
fn parse_seed(s: &str) -> Result<u64, std::num::ParseIntError> {
    match s.strip_prefix("0x").or_else(|| s.strip_prefix("0X")) {
        Some(hex) => u64::from_str_radix(hex, 16),
        None => s.parse(),
    }
}

pub fn usage<E: std::fmt::Display>(e: E) -> Failure {
    Failure::Usage(e.to_string())
}

fn run_suites(args: &SuiteArgs) -> CmdResult {
    let results = valtree::testkit::suites::run_all(args.seed);
    let mut text = format!("seed {:#x}\n", args.seed);
    for r in &results {
        text.push_str(&r.line());
        text.push('\n');
    }
    let failed = results.iter().filter(|r| !r.pass).count();
    text.push_str(&format!("{} passed, {failed} failed", results.len() - failed));
    let out = Output::new(
        serde_json::json!({"seed": args.seed, "results": results}),
        text,
    );
    if failed == 0 {
        Ok(out)
    } else {
        Err(Failure::Check {
            message: format!("{failed} suite(s) failed"),
            report: out,
        })
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    eprintln!("config: {:?}", cli.cmd);
    let (result, json) = match &cli.cmd {
        Cmd::Val { op } => {
            let (name, args) = match op {
                ValOp::Eval(a) => ("eval", a),
                ValOp::Mvalue(a) => ("mvalue", a),
                ValOp::Normalize(a) => ("normalize", a),
                ValOp::Compare(a) => ("compare", a),
                ValOp::Inf(a) => ("inf", a),
                ValOp::Stream(a) => ("stream", a),
                ValOp::Canon(a) => ("canon", a),
                ValOp::Krull(a) => ("krull", a),
                ValOp::CommonMin(a) => ("common-min", a),
                ValOp::Witness(a) => ("witness", a),
            };
            (val::run(name, args), args.json)
        }
        Cmd::Tree { op } => {
            let (name, args) = match op {
                TreeOp::Check(a) => ("check", a),
                TreeOp::Inf(a) => ("inf", a),
                TreeOp::Dist(a) => ("dist", a),
                TreeOp::Nbhd(a) => ("nbhd", a),
                TreeOp::BallCheck(a) => ("ball-check", a),
                TreeOp::Countability(a) => ("countability", a),
            };
            (tree::run(name, args), args.json)
        }
        Cmd::Suite { op: SuiteOp::All(a) } => (run_suites(a), a.json),
    };
    match result {
        Ok(out) => {
            out.print(json);
            ExitCode::SUCCESS
        }
        Err(Failure::Check { message, report }) => {
            report.print(json);
            eprintln!("check failed: {message}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
