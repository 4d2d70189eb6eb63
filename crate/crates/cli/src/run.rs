//! Command execution and exit-code policy.

use contractio::batch::{check_group, par_map, CheckOptions};
use contractio::error::{SeriesError, TheoremError};
use contractio::groupmodel::{module_delta, module_delta_factored, ContractionGroup};
use contractio::padic::DEFAULT_PRECISION;
use contractio::series::{SeriesChain, SeriesEngine, SeriesMode};
use contractio::theorems::{classify_simple_at, verify_structure, StructureOptions};
use contractio::tiebreak::TieBreak;

use crate::dsl::Document;
use crate::report::{
    render, AnalysisReport, ChecksReport, ClassificationReport, Envelope, Format,
    GroupSection, SeriesReport, StructureSummary,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 1;
pub const EXIT_CHECK_FAILED: i32 = 2;
pub const EXIT_UNCERTIFIED: i32 = 3;

pub const DEFAULT_SEED: u64 = 0;
pub const DEFAULT_SAMPLES: usize = 100;
pub const MAX_ROOT: u64 = 50;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Command {
    Check,
    Analyze,
    Classify,
    Structure,
    Verify,
}

impl Command {
    fn name(self) -> &'static str {
        match self {
            Command::Check => "check",
            Command::Analyze => "analyze",
            Command::Classify => "classify",
            Command::Structure => "structure",
            Command::Verify => "verify",
        }
    }
}

/// Command-line overrides; unset fields fall back to the document, then to
/// the defaults above.
#[derive(Clone, Debug, Default)]
pub struct Options {
    pub mode: Option<SeriesMode>,
    pub precision: Option<u32>,
    pub seed: Option<u64>,
    pub samples: Option<usize>,
    pub strict: bool,
}

#[derive(Clone, Copy, Debug)]
struct Resolved {
    modes: &'static [SeriesMode],
    precision: u32,
    seed: u64,
    samples: usize,
    strict: bool,
}

impl Resolved {
    fn new(doc: &Document, o: &Options) -> Self {
        Resolved {
            modes: match o.mode {
                None => &[SeriesMode::Alpha, SeriesMode::AlphaNormal],
                Some(SeriesMode::Alpha) => &[SeriesMode::Alpha],
                Some(SeriesMode::AlphaNormal) => &[SeriesMode::AlphaNormal],
            },
            precision: o.precision.or(doc.settings.precision).unwrap_or(DEFAULT_PRECISION),
            seed: o.seed.or(doc.settings.seed).unwrap_or(DEFAULT_SEED),
            samples: o.samples.unwrap_or(DEFAULT_SAMPLES),
            strict: o.strict,
        }
    }

    fn check_options(&self) -> CheckOptions {
        CheckOptions {
            seed: self.seed,
            samples: self.samples,
            max_root: MAX_ROOT,
            precision: self.precision,
        }
    }

    fn structure_options(&self) -> StructureOptions {
        StructureOptions {
            samples: self.samples,
            seed: self.seed,
            max_root: MAX_ROOT,
        }
    }
}

/// Outcome of one group: its section and the exit code it asks for.
struct Outcome<T: serde::Serialize> {
    section: GroupSection<T>,
    code: i32,
}

fn ok<T: serde::Serialize>(name: &str, report: T, code: i32) -> Outcome<T> {
    Outcome {
        section: GroupSection {
            group: name.to_string(),
            status: status_name(code),
            error: None,
            report: Some(report),
        },
        code,
    }
}

fn failed<T: serde::Serialize>(name: &str, error: String, code: i32) -> Outcome<T> {
    Outcome {
        section: GroupSection {
            group: name.to_string(),
            status: status_name(code),
            error: Some(error),
            report: None,
        },
        code,
    }
}

fn status_name(code: i32) -> &'static str {
    match code {
        EXIT_OK => "ok",
        EXIT_INVALID => "invalid",
        EXIT_CHECK_FAILED => "check-failed",
        _ => "uncertified",
    }
}

/// Invalid input outranks failed checks, which outrank uncertified results.
fn combine(codes: impl IntoIterator<Item = i32>) -> i32 {
    codes.into_iter().fold(EXIT_OK, |acc, c| {
        let rank = |c: i32| match c {
            EXIT_INVALID => 3,
            EXIT_CHECK_FAILED => 2,
            EXIT_UNCERTIFIED => 1,
            _ => 0,
        };
        if rank(c) > rank(acc) {
            c
        } else {
            acc
        }
    })
}

fn uncertified_code(strict: bool) -> i32 {
    if strict {
        EXIT_UNCERTIFIED
    } else {
        EXIT_OK
    }
}

fn series_error_code(e: &SeriesError, strict: bool) -> i32 {
    match e {
        SeriesError::Uncertified { .. } => uncertified_code(strict),
        SeriesError::InvalidChain(_) => EXIT_CHECK_FAILED,
        _ => EXIT_INVALID,
    }
}

fn series(
    engine: &SeriesEngine<'_>,
    mode: SeriesMode,
    r: &Resolved,
) -> Result<(SeriesChain, bool), SeriesError> {
    match engine.composition_series(mode, &mut TieBreak::Canonical) {
        Ok(c) => Ok((c, true)),
        Err(SeriesError::Uncertified { partial, .. }) if !r.strict => Ok((*partial, false)),
        Err(e) => Err(e),
    }
}

fn classification(g: &ContractionGroup, r: &Resolved) -> (ClassificationReport, i32) {
    match classify_simple_at(g, r.precision) {
        Ok(l) => (ClassificationReport::from_label(&l), EXIT_OK),
        Err(TheoremError::NotSimple) => (
            ClassificationReport {
                simple: Some(false),
                label: None,
                companion: None,
                note: Some(not_simple_reason(g)),
            },
            EXIT_CHECK_FAILED,
        ),
        Err(TheoremError::Uncertified(f)) => (
            ClassificationReport {
                simple: None,
                label: None,
                companion: None,
                note: Some(format!("irreducibility of {f} is not certified at precision {}", r.precision)),
            },
            uncertified_code(r.strict),
        ),
        Err(e) => (
            ClassificationReport {
                simple: None,
                label: None,
                companion: None,
                note: Some(e.to_string()),
            },
            EXIT_INVALID,
        ),
    }
}

fn not_simple_reason(g: &ContractionGroup) -> String {
    use contractio::groupmodel::Block;
    match g.blocks() {
        [] => "trivial group".into(),
        [Block::Shift(_)] => "finite group is not simple".into(),
        [Block::Linear(_)] => "characteristic polynomial is reducible".into(),
        [Block::Heisenberg(_)] => "centre is a proper normal subgroup".into(),
        _ => "a proper block sub-product is normal".into(),
    }
}

fn analyze(name: &str, g: &ContractionGroup, r: &Resolved) -> Outcome<AnalysisReport> {
    let engine = match SeriesEngine::with_precision(g, r.precision) {
        Ok(e) => e,
        Err(e) => return failed(name, e.to_string(), series_error_code(&e, r.strict)),
    };
    let mut code = EXIT_OK;
    let mut reports = Vec::new();
    let mut multiset = Vec::new();
    for &mode in r.modes {
        match series(&engine, mode, r) {
            Ok((chain, certified)) => {
                if !certified {
                    code = combine([code, uncertified_code(r.strict)]);
                }
                if mode == r.modes[0] {
                    multiset = chain
                        .sorted_factors()
                        .unwrap_or_default()
                        .iter()
                        .map(|f| f.to_string())
                        .collect();
                }
                reports.push(SeriesReport::new(&engine, &chain, "canonical", certified));
            }
            Err(e) => return failed(name, e.to_string(), series_error_code(&e, r.strict)),
        }
    }
    let canonical = engine.canonical_series();
    let (classification, _) = classification(g, r);
    let checks = match check_group(g, r.check_options()) {
        Ok(c) => c,
        Err(e) => return failed(name, e.to_string(), series_error_code(&e, r.strict)),
    };
    if !checks.all_ok() {
        code = combine([code, EXIT_CHECK_FAILED]);
    }
    let report = AnalysisReport {
        blocks: g.blocks().iter().map(|b| b.to_string()).collect(),
        delta: module_delta(g).to_string(),
        delta_factored: crate::report::factored_string(&module_delta_factored(g)),
        series: reports,
        factor_multiset: multiset,
        canonical: SeriesReport::new(&engine, &canonical, "canonical", true),
        classification,
        structure: StructureSummary::from(&checks.structure_report),
        checks: ChecksReport::from(&checks),
    };
    ok(name, report, code)
}

#[derive(Clone, Debug, serde::Serialize)]
struct CheckReport {
    blocks: usize,
    primes: Vec<u64>,
}

#[derive(Clone, Debug, serde::Serialize)]
struct VerifyReport {
    delta: String,
    length: usize,
    checks: ChecksReport,
}

fn envelope<T: serde::Serialize>(cmd: Command, r: &Resolved, outcomes: Vec<Outcome<T>>) -> (Envelope<T>, i32) {
    let code = combine(outcomes.iter().map(|o| o.code));
    (
        Envelope {
            command: cmd.name().to_string(),
            precision: r.precision,
            seed: r.seed,
            groups: outcomes.into_iter().map(|o| o.section).collect(),
            exit_code: code,
        },
        code,
    )
}

fn finish<T: serde::Serialize>(cmd: Command, r: &Resolved, outcomes: Vec<Outcome<T>>, format: Format) -> (i32, String) {
    let (env, code) = envelope(cmd, r, outcomes);
    (code, render(&env, format))
}

/// Runs a command over every group of the document. Returns the exit code
/// and the rendered report.
pub fn run_command(cmd: Command, doc: &Document, opts: &Options, format: Format) -> (i32, String) {
    let r = Resolved::new(doc, opts);
    let groups = &doc.groups;
    match cmd {
        Command::Check => {
            let out = groups
                .iter()
                .map(|d| {
                    ok(
                        &d.name,
                        CheckReport {
                            blocks: d.group.len(),
                            primes: d.group.primes(),
                        },
                        EXIT_OK,
                    )
                })
                .collect();
            finish(cmd, &r, out, format)
        }
        Command::Analyze => {
            let out = groups.iter().map(|d| analyze(&d.name, &d.group, &r)).collect();
            finish(cmd, &r, out, format)
        }
        Command::Classify => {
            let out = groups
                .iter()
                .map(|d| {
                    let (rep, code) = classification(&d.group, &r);
                    ok(&d.name, rep, code)
                })
                .collect();
            finish(cmd, &r, out, format)
        }
        Command::Structure => {
            let out = groups
                .iter()
                .map(|d| {
                    let rep = verify_structure(&d.group, r.structure_options());
                    let code = if rep.all_ok() { EXIT_OK } else { EXIT_CHECK_FAILED };
                    ok(&d.name, StructureSummary::from(&rep), code)
                })
                .collect();
            finish(cmd, &r, out, format)
        }
        Command::Verify => {
            let mut out: Vec<(String, Outcome<VerifyReport>)> = par_map(groups, |d| {
                let o = match check_group(&d.group, r.check_options()) {
                    Ok(c) => {
                        let mut code = if c.all_ok() { EXIT_OK } else { EXIT_CHECK_FAILED };
                        if c.uncertified {
                            code = combine([code, uncertified_code(r.strict)]);
                        }
                        ok(
                            &d.name,
                            VerifyReport {
                                delta: c.delta.to_string(),
                                length: c.length,
                                checks: ChecksReport::from(&c),
                            },
                            code,
                        )
                    }
                    Err(e) => failed(&d.name, e.to_string(), series_error_code(&e, r.strict)),
                };
                (d.name.clone(), o)
            });
            out.sort_by(|a, b| a.0.cmp(&b.0));
            finish(cmd, &r, out.into_iter().map(|(_, o)| o).collect(), format)
        }
    }
}
