//! The `qgl2` command line.
//!
//! Exit codes: 0 classified and verified (or Classical), 1 usage error,
//! 2 Degenerate outcome, 3 internal verification failure.

use std::ffi::OsString;
use std::fmt::Write as _;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::classify::{classify, verify, CaseTag, PlaneParams};
use crate::field::{Rational, Scalar};
use crate::matrixalg::{check_similarity, manin_relations};
use crate::plane::{dj_plane, input_plane, jordanian_plane, Plane};
use crate::report::Report;
use crate::sampling::selftest;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_DEGENERATE: i32 = 2;
pub const EXIT_INTERNAL: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "qgl2", version, about = "Classify quantum-plane structures on GL(2) with exact arithmetic")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
#[allow(clippy::large_enum_variant)]
pub enum Command {
    /// Reduce xi^2 = h0 xi eta, eta^2 = r0 xi eta, eta xi = -p0 xi eta to a canonical family
    Classify(ClassifyArgs),
    /// Print the degree-2 quantum-matrix relations of a plane
    Manin(ManinArgs),
    /// Run the property checks on seeded random triples
    Selftest(SelftestArgs),
}

#[derive(Debug, Args)]
pub struct ClassifyArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub h0: Rational,
    #[arg(long, allow_hyphen_values = true)]
    pub r0: Rational,
    #[arg(long, allow_hyphen_values = true)]
    pub p0: Rational,
    /// Re-expand the input under the transformation and compare exactly
    #[arg(long)]
    pub verify: bool,
    /// Also check the induced similarity on the quantum-matrix relations
    #[arg(long)]
    pub similarity: bool,
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Dj,
    Jordan,
    Input,
}

#[derive(Debug, Args)]
pub struct ManinArgs {
    #[arg(long, value_enum)]
    pub family: Family,
    #[arg(long, allow_hyphen_values = true)]
    pub q: Option<Rational>,
    #[arg(long, allow_hyphen_values = true)]
    pub p: Option<Rational>,
    #[arg(long, allow_hyphen_values = true)]
    pub h: Option<Rational>,
    #[arg(long, allow_hyphen_values = true)]
    pub hp: Option<Rational>,
    #[arg(long, allow_hyphen_values = true)]
    pub h0: Option<Rational>,
    #[arg(long, allow_hyphen_values = true)]
    pub r0: Option<Rational>,
    #[arg(long, allow_hyphen_values = true)]
    pub p0: Option<Rational>,
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct SelftestArgs {
    #[arg(long, default_value_t = 100)]
    pub count: usize,
    #[arg(long, env = "QGL2_SEED", default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 10)]
    pub height: u64,
}

/// Captured result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(code: i32, stdout: String) -> Self {
        Outcome { code, stdout, stderr: String::new() }
    }

    fn usage(message: impl Into<String>) -> Self {
        Outcome { code: EXIT_USAGE, stdout: String::new(), stderr: message.into() }
    }
}

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() { Outcome::usage(text) } else { Outcome::ok(EXIT_OK, text) };
        }
    };
    match cli.command {
        Command::Classify(args) => cmd_classify(&args),
        Command::Manin(args) => cmd_manin(&args),
        Command::Selftest(args) => cmd_selftest(&args),
    }
}

pub fn cmd_classify(args: &ClassifyArgs) -> Outcome {
    let params = PlaneParams::new(args.h0.clone(), args.r0.clone(), args.p0.clone());
    let c = classify(&params);
    let mut failed = false;

    if c.case_tag != CaseTag::Degenerate {
        failed |= !c.verified;
        if args.verify {
            failed |= !verify(&c);
        }
    }
    let similarity = match (&c.transform, c.canonical_plane()) {
        (Some(s), Some(target)) if args.similarity => Some(check_similarity(&params.plane(), &target, s)),
        _ => None,
    };
    failed |= similarity.as_ref().is_some_and(|s| !s.holds);

    let report = Report::new(&c, similarity.as_ref());
    let stdout = if args.json { report.to_json() + "\n" } else { report.to_text() };
    let code = if failed {
        EXIT_INTERNAL
    } else if c.case_tag == CaseTag::Degenerate {
        EXIT_DEGENERATE
    } else {
        EXIT_OK
    };
    Outcome::ok(code, stdout)
}

fn required(value: &Option<Rational>, flag: &str, family: &str) -> Result<Scalar, String> {
    value.clone().map(Scalar::rational).ok_or_else(|| format!("error: --family {family} requires --{flag}\n"))
}

fn manin_plane(args: &ManinArgs) -> Result<Plane, String> {
    match args.family {
        Family::Dj => {
            let q = required(&args.q, "q", "dj")?;
            let p = required(&args.p, "p", "dj")?;
            dj_plane(q, p).map_err(|e| format!("error: {e}\n"))
        }
        Family::Jordan => Ok(jordanian_plane(required(&args.h, "h", "jordan")?, required(&args.hp, "hp", "jordan")?)),
        Family::Input => Ok(input_plane(
            required(&args.h0, "h0", "input")?,
            required(&args.r0, "r0", "input")?,
            required(&args.p0, "p0", "input")?,
        )),
    }
}

#[derive(Serialize)]
struct ManinJson {
    family: Family,
    plane: String,
    dimension: usize,
    relations: Vec<String>,
}

pub fn cmd_manin(args: &ManinArgs) -> Outcome {
    let plane = match manin_plane(args) {
        Ok(p) => p,
        Err(msg) => return Outcome::usage(msg),
    };
    let set = manin_relations(&plane);
    let relations: Vec<String> = set.relations().iter().map(ToString::to_string).collect();
    let stdout = if args.json {
        let doc = ManinJson { family: args.family, plane: plane.to_string(), dimension: set.dim(), relations };
        serde_json::to_string_pretty(&doc).expect("serializes") + "\n"
    } else {
        let mut out = String::new();
        let _ = writeln!(out, "{plane}");
        let _ = writeln!(out, "relations: {}", set.dim());
        for r in &relations {
            let _ = writeln!(out, "  {r} = 0");
        }
        out
    };
    Outcome::ok(EXIT_OK, stdout)
}

pub fn cmd_selftest(args: &SelftestArgs) -> Outcome {
    if args.count == 0 {
        return Outcome::usage("error: --count must be at least 1\n");
    }
    if args.height == 0 {
        return Outcome::usage("error: --height must be at least 1\n");
    }
    if args.height > i64::MAX as u64 {
        return Outcome::usage("error: --height too large\n");
    }
    let summary = selftest(args.count, args.seed, args.height);
    let code = if summary.passed() { EXIT_OK } else { EXIT_INTERNAL };
    Outcome::ok(code, summary.to_string())
}
