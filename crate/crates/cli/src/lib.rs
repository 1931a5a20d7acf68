//! Problem files, reports and the `bbdescent` command-line driver.

pub mod format;
pub mod problem;
pub mod report;

use bbdescent_core::descent::{
    bruteforce_check, decide, decide_with_endos, kp_field, minimal_fields_with_endos, restrict_gamma, DecideOptions,
    DescentError, Verdict, WitnessCheck,
};
use bbdescent_core::qarith::{PolyquadraticField, QuaternionSymbol};
use serde_json::json;
use thiserror::Error;

pub use format::{parse_problem, serialize, ParseError, ProblemFile};
pub use problem::{build_problem, Command, Problem, SemanticError};
pub use report::{ErrorReport, Report, SCHEMA};

/// Exit code for any input error.
pub const EXIT_INPUT_ERROR: i32 = 3;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("parse error: {0}")]
    Parse(#[from] ParseError),
    #[error("invalid problem: {0}")]
    Semantic(#[from] SemanticError),
    #[error("{0}")]
    Engine(#[from] DescentError),
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct RunOptions {
    pub verify_witness: bool,
    pub ignore_certificates: bool,
}

fn input_echo(p: &Problem) -> report::InputEcho {
    report::InputEcho {
        pbar: p.gamma.pbar.to_string(),
        sign: report::sign_text(&p.gamma.sign),
        algebra: p.algebra.map(|a| format!("symbol({},{})", a.a, a.b)),
        field: p.field.to_string(),
        certificates: p.certificates.iter().map(|c| c.name.clone()).collect(),
    }
}

fn algebra(p: &Problem) -> QuaternionSymbol {
    p.algebra.expect("checked by build_problem")
}

fn list<T: ToString>(v: &[T]) -> Vec<String> {
    v.iter().map(|x| x.to_string()).collect()
}

/// Runs the problem's command.
pub fn run(p: &Problem, opts: RunOptions) -> Result<Report, DescentError> {
    let mut report = Report::new(p.command.name(), input_echo(p), p.warnings.clone());
    let certs = if opts.ignore_certificates { &[][..] } else { &p.certificates[..] };
    let verify_at = |report: &mut Report, d: &bbdescent_core::descent::Decision, k: &PolyquadraticField| {
        if let (true, Verdict::Defined { witness, .. }) = (opts.verify_witness, &d.verdict) {
            let check = bruteforce_check(witness, algebra(p), k)
                .unwrap_or_else(|e| WitnessCheck::Unsupported(e.to_string()));
            report.verification = Some(report::verification_json(&check));
        }
    };
    match &p.command {
        Command::Decide => {
            let d = decide(&p.gamma, algebra(p), &p.field, certs, DecideOptions::default())?;
            report.set_decision(&d);
            verify_at(&mut report, &d, &p.field);
            if opts.ignore_certificates && !p.certificates.is_empty() {
                report.notes.push(format!("certificates ignored: {}", list(&report.input.certificates).join(", ")));
            }
        }
        Command::DecideWithEndos(l) => {
            let d = decide_with_endos(&p.gamma, algebra(p), &p.field, l)?;
            report.set_decision(&d);
            verify_at(&mut report, &d, l);
            if !certs.is_empty() {
                report.notes.push("certificates are not used by decide-with-endos".into());
            }
        }
        Command::Kp => {
            let kp = kp_field(&p.gamma.pbar);
            let pbar = p.gamma.pbar.canonical();
            report.result = Some(json!({
                "kp": kp.to_string(),
                "pbar": pbar.to_string(),
                "image": list(pbar.image().basis()),
                "characters": list(pbar.character_span().basis()),
            }));
        }
        Command::MinimalFields => {
            let mf = minimal_fields_with_endos(&p.gamma)?;
            report.result = Some(json!({
                "kp": mf.kp.to_string(),
                "kp_splits_sign": mf.kp_splits_sign,
                "fields": list(&mf.fields),
                "minimum": mf.minimum().map(|f| f.to_string()),
            }));
        }
        Command::Decompose => {
            let pbar = p.gamma.pbar.canonical();
            let r = restrict_gamma(&p.gamma, &p.field);
            let sign = p.gamma.sign.class().expect("parsed signs are symbolic");
            report.result = Some(json!({
                "pbar": pbar.to_string(),
                "image": list(pbar.image().basis()),
                "characters": list(pbar.character_span().basis()),
                "sign": sign.to_string(),
                "field": p.field.to_string(),
                "restricted_pbar": r.pbar.canonical().to_string(),
                "restricted_sign_splits": sign.splits_over(&p.field),
                "trivial_over_field": r.is_trivial(),
            }));
        }
    }
    Ok(report)
}

/// Parses, checks and runs problem text.
pub fn run_text(text: &str, opts: RunOptions) -> Result<Report, CliError> {
    let file = parse_problem(text)?;
    let problem = build_problem(&file)?;
    Ok(run(&problem, opts)?)
}

pub fn error_report(e: &CliError) -> ErrorReport {
    ErrorReport {
        schema: SCHEMA,
        exit_code: EXIT_INPUT_ERROR,
        error: e.to_string(),
    }
}
