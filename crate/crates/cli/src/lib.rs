//! Command implementations behind the `topdesign` binary.
//!
//! Each command takes file contents and options and returns an [`Outcome`],
//! so the binary only does I/O. Exit codes: 0 exists or consistent, 1 does not
//! exist or refuted, 2 input error.

pub mod query;

use std::fmt::Write as _;

use serde::Serialize;
use topdesign_core::concrete::{local_design_check, ConcreteSet, DesignCheckReport, FamilyError};
use topdesign_core::designs::{sweep, sweep_with, GridSpec};
use topdesign_core::finitebrute::{brute_lambda, BruteResult, FiniteInstance};
use topdesign_core::{
    decide, Cardinal, CaseTag, DecideError, DesignType, FamilyDescriptor, SpaceDescriptor, SubsetDescriptor,
    Verdict,
};

pub use query::{parse_query, Query, QueryError};

pub const EXIT_OK: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Format {
    Text,
    #[default]
    Record,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(code: i32, stdout: String) -> Outcome {
        Outcome { code, stdout, stderr: String::new() }
    }

    fn input_error(message: impl std::fmt::Display) -> Outcome {
        Outcome { code: EXIT_INPUT, stdout: String::new(), stderr: format!("error: {message}\n") }
    }
}

fn json_line<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string(value).expect("records serialize");
    s.push('\n');
    s
}

fn verdict_code(v: &Verdict) -> i32 {
    if v.exists() {
        EXIT_OK
    } else {
        EXIT_NEGATIVE
    }
}

pub fn cmd_decide(query_text: &str, format: Format) -> Outcome {
    let query = match parse_query(query_text) {
        Ok(q) => q,
        Err(e) => return Outcome::input_error(e),
    };
    let verdict = match decide(query.ty, &query.c, &query.d, query.space) {
        Ok(v) => v,
        Err(e) => return Outcome::input_error(e),
    };
    let record = verdict.record();
    let out = match format {
        Format::Record => json_line(&record),
        Format::Text => {
            let mut s = String::new();
            writeln!(s, "exists: {}", record.exists).unwrap();
            if let Some(l) = &record.lambda {
                writeln!(s, "lambda: {l}").unwrap();
            }
            if let Some(w) = &record.witness {
                writeln!(s, "witness: {w}").unwrap();
            }
            writeln!(s, "case_tag: {}", record.case_tag).unwrap();
            if let Some(r) = record.reason {
                writeln!(s, "reason: {r}").unwrap();
            }
            s
        }
    };
    Outcome::ok(verdict_code(&verdict), out)
}

/// A candidate family to check when the decision engine reports none.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WitnessOverride {
    ClassW,
    ClassL,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct VerifyOptions {
    pub cutoff: u64,
    pub witness: Option<WitnessOverride>,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions { cutoff: 50, witness: None }
    }
}

#[derive(Serialize)]
struct ProbeLine {
    probe: String,
    count: String,
    excluded: Option<u64>,
}

#[derive(Serialize)]
struct VerifyRecord {
    family: String,
    case_tag: &'static str,
    cutoff: u64,
    probes: Vec<ProbeLine>,
    blocks_checked: u64,
    bad_blocks: Vec<String>,
    consistent: bool,
    refutation: Option<String>,
}

pub fn cmd_verify(query_text: &str, probes: &[String], options: VerifyOptions, format: Format) -> Outcome {
    let query = match parse_query(query_text) {
        Ok(q) => q,
        Err(e) => return Outcome::input_error(e),
    };
    if query.space != SpaceDescriptor::countable() {
        return Outcome::input_error("verify works in the countable model; set space.size: aleph0");
    }
    let verdict = match decide(query.ty, &query.c, &query.d, query.space) {
        Ok(v) => v,
        Err(e) => return Outcome::input_error(e),
    };
    let family = match (options.witness, verdict.witness()) {
        (Some(WitnessOverride::ClassW), _) => FamilyDescriptor::ClassW(query.d),
        (Some(WitnessOverride::ClassL), _) => FamilyDescriptor::ClassL(query.d),
        (None, Some(w)) => w,
        (None, None) => {
            return Outcome::input_error(format!(
                "no design exists ({}); pass --witness w or --witness l to test a candidate family",
                verdict.case()
            ))
        }
    };
    let mut sets = Vec::with_capacity(probes.len());
    for p in probes {
        match p.parse::<ConcreteSet>() {
            Ok(s) => sets.push(s),
            Err(e) => return Outcome::input_error(e),
        }
    }
    if sets.is_empty() {
        return Outcome::input_error("no probes given");
    }
    let report = match local_design_check(&family, query.ty, &query.c, &query.d, &sets, options.cutoff) {
        Ok(r) => r,
        Err(FamilyError::NotEnumerable(f)) => {
            return Outcome::input_error(format!(
                "witness {f} cannot be enumerated: only finite or cofinite D, the odd-tail family and singletons are supported"
            ))
        }
        Err(e) => return Outcome::input_error(e),
    };
    if !report.rejected.is_empty() {
        let list: Vec<String> = report.rejected.iter().map(ToString::to_string).collect();
        return Outcome::input_error(format!("probes not homeomorphic to C: {}", list.join(" ")));
    }
    let code = if report.consistent() { EXIT_OK } else { EXIT_NEGATIVE };
    Outcome::ok(code, render_verify(&family, verdict.case(), options.cutoff, &report, format))
}

fn render_verify(
    family: &FamilyDescriptor,
    case: CaseTag,
    cutoff: u64,
    report: &DesignCheckReport,
    format: Format,
) -> String {
    let record = VerifyRecord {
        family: family.to_string(),
        case_tag: case.as_str(),
        cutoff,
        probes: report
            .probes
            .iter()
            .map(|p| ProbeLine { probe: p.probe.to_string(), count: p.count.to_string(), excluded: p.excluded })
            .collect(),
        blocks_checked: report.blocks_checked,
        bad_blocks: report.bad_blocks.iter().map(ToString::to_string).collect(),
        consistent: report.consistent(),
        refutation: report.refutation.as_ref().map(ToString::to_string),
    };
    match format {
        Format::Record => json_line(&record),
        Format::Text => {
            let mut s = String::new();
            writeln!(s, "family: {} ({})", record.family, record.case_tag).unwrap();
            for p in &record.probes {
                write!(s, "probe {}: {}", p.probe, p.count).unwrap();
                if let Some(x) = p.excluded {
                    write!(s, ", missed by {x} blocks").unwrap();
                }
                s.push('\n');
            }
            writeln!(s, "blocks checked: {}, bad: {}", record.blocks_checked, record.bad_blocks.len()).unwrap();
            for b in &record.bad_blocks {
                writeln!(s, "bad block: {b}").unwrap();
            }
            match &record.refutation {
                Some(r) => writeln!(s, "refuted: {r}").unwrap(),
                None if record.consistent => writeln!(s, "consistent up to cutoff {cutoff}").unwrap(),
                None => writeln!(s, "inconsistent").unwrap(),
            }
            s
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct CrosscheckOptions {
    pub grid: GridSpec,
    /// Sweep a deliberately broken decider to exercise the harness.
    pub inject_fault: bool,
}

/// Wrong on purpose: denies type-4 designs for finite `C` inside infinite `D`.
fn faulty_decide(
    ty: DesignType,
    c: &SubsetDescriptor,
    d: &SubsetDescriptor,
    space: SpaceDescriptor,
) -> Result<Verdict, DecideError> {
    let v = decide(ty, c, d, space)?;
    if ty == DesignType::Type4 && c.is_finite() && !d.is_finite() {
        return Ok(Verdict::NotExists { case: CaseTag::B, reason: "injected fault" });
    }
    Ok(v)
}

#[derive(Serialize)]
struct CrosscheckRecord {
    max_finite: u64,
    max_aleph: u32,
    finite_only: bool,
    cases: usize,
    violations: usize,
    details: Vec<String>,
}

pub fn cmd_crosscheck(options: CrosscheckOptions, format: Format) -> Outcome {
    let report = if options.inject_fault {
        sweep_with(&options.grid, &faulty_decide)
    } else {
        sweep(&options.grid)
    };
    let details: Vec<String> = report.violations.iter().map(ToString::to_string).collect();
    let out = match format {
        Format::Record => json_line(&CrosscheckRecord {
            max_finite: options.grid.max_finite,
            max_aleph: options.grid.max_aleph,
            finite_only: options.grid.finite_only,
            cases: report.cases,
            violations: details.len(),
            details,
        }),
        Format::Text => {
            let mut s = String::new();
            for d in &details {
                writeln!(s, "{d}").unwrap();
            }
            writeln!(s, "{} violations / {} cases", details.len(), report.cases).unwrap();
            s
        }
    };
    let code = if report.is_clean() { EXIT_OK } else { EXIT_NEGATIVE };
    Outcome::ok(code, out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BruteOptions {
    /// Probe size; defaults to the instance's `c_size`.
    pub t: Option<u32>,
    pub ty: DesignType,
}

impl Default for BruteOptions {
    fn default() -> Self {
        BruteOptions { t: None, ty: DesignType::Type2 }
    }
}

#[derive(Serialize)]
struct BruteRecord {
    n: u32,
    blocks: usize,
    c_size: u32,
    d_size: u32,
    #[serde(rename = "type")]
    ty: u8,
    result: String,
}

pub fn cmd_brute(instance_text: &str, options: BruteOptions, format: Format) -> Outcome {
    let inst = match instance_text.parse::<FiniteInstance>() {
        Ok(i) => i,
        Err(e) => return Outcome::input_error(e),
    };
    let inst = match options.t {
        Some(t) => match inst.with_c_size(t) {
            Ok(i) => i,
            Err(e) => return Outcome::input_error(e),
        },
        None => inst,
    };
    let (code, result) = match brute_lambda(&inst, options.ty) {
        Ok(r @ BruteResult::Exactly(_)) => (EXIT_OK, r.to_string()),
        Ok(r) => (EXIT_NEGATIVE, r.to_string()),
        Err(e) => (EXIT_NEGATIVE, format!("NotADesign({e})")),
    };
    let out = match format {
        Format::Record => json_line(&BruteRecord {
            n: inst.n(),
            blocks: inst.block_count(),
            c_size: inst.c_size(),
            d_size: inst.d_size(),
            ty: options.ty.number(),
            result,
        }),
        Format::Text => format!("{result}\n"),
    };
    Outcome::ok(code, out)
}

/// Parses a cardinal option such as `aleph1` into an aleph index.
pub fn parse_aleph_index(s: &str) -> Result<u32, String> {
    if let Ok(k) = s.parse::<u32>() {
        return Ok(k);
    }
    match s.parse::<Cardinal>() {
        Ok(Cardinal::Aleph(k)) => Ok(k),
        _ => Err(format!("expected an aleph index like 1 or aleph1, got `{s}`")),
    }
}
