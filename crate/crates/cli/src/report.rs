//! Reports: a serde model for `--json` and a plain-text rendering.

use std::fmt::Write as _;

use bbdescent_core::delta::{GammaClass, SignComponent};
use bbdescent_core::descent::{
    CaseOutcome, CaseRecord, CertificateReport, Decision, Obligation, Verdict, Witness, WitnessCheck,
};
use serde::Serialize;
use serde_json::{json, Map, Value};

pub const SCHEMA: &str = "bbdescent-report/1";

#[derive(Debug, Clone, Serialize)]
pub struct InputEcho {
    pub pbar: String,
    pub sign: String,
    pub algebra: Option<String>,
    pub field: String,
    pub certificates: Vec<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ClassJson {
    pub base: String,
    pub pbar: String,
    pub sign: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct WitnessJson {
    pub shape: Option<String>,
    pub text: String,
    pub params: Map<String, Value>,
    pub delta: ClassJson,
}

#[derive(Debug, Clone, Serialize)]
pub struct ReasonJson {
    pub kind: String,
    pub text: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct ObligationJson {
    pub kind: String,
    pub text: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub extension: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub subgroup: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub subfield: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub element: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub shape: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub constraints: Option<Vec<String>>,
}

#[derive(Debug, Clone, Serialize)]
pub struct CaseJson {
    pub shape: String,
    pub option: String,
    pub outcome: String,
    pub reasons: Vec<ReasonJson>,
    pub obligations: Vec<ObligationJson>,
    pub details: Vec<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct CertificateJson {
    pub name: String,
    pub shape: String,
    pub status: String,
    pub log: Vec<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerificationJson {
    pub status: String,
    pub detail: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub schema: &'static str,
    pub command: String,
    pub input: InputEcho,
    pub warnings: Vec<String>,
    pub verdict: Option<String>,
    pub exit_code: i32,
    pub witness: Option<WitnessJson>,
    pub restricted: Option<ClassJson>,
    pub case_log: Vec<CaseJson>,
    pub obligations: Vec<ObligationJson>,
    pub certificates: Vec<CertificateJson>,
    pub oracle_facts: Vec<String>,
    pub notes: Vec<String>,
    pub verification: Option<VerificationJson>,
    pub result: Option<Value>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ErrorReport {
    pub schema: &'static str,
    pub exit_code: i32,
    pub error: String,
}

pub fn sign_text(s: &SignComponent) -> String {
    match s {
        SignComponent::Symbolic { class, .. } => class.to_string(),
        SignComponent::CocycleForm { shape, extension, .. } => match extension {
            Some(m) => format!("cocycle on Gal({m}/K) ({shape})"),
            None => format!("cocycle on a {shape} extension"),
        },
    }
}

pub fn class_json(g: &GammaClass) -> ClassJson {
    ClassJson {
        base: g.base.to_string(),
        pbar: g.pbar.canonical().to_string(),
        sign: sign_text(&g.sign),
    }
}

pub fn obligation_json(o: &Obligation) -> ObligationJson {
    let mut j = ObligationJson {
        kind: o.kind().to_string(),
        text: o.to_string(),
        extension: None,
        subgroup: None,
        subfield: None,
        element: None,
        shape: None,
        constraints: None,
    };
    match o {
        Obligation::NormQuestion {
            extension,
            subgroup,
            subfield,
            element,
        } => {
            j.extension = Some(extension.clone());
            j.subgroup = Some(subgroup.clone());
            j.subfield = Some(subfield.to_string());
            j.element = Some(element.clone());
        }
        Obligation::LambdaQuestion {
            extension,
            subgroup,
            subfield,
        } => {
            j.extension = Some(extension.clone());
            j.subgroup = Some(subgroup.clone());
            j.subfield = Some(subfield.to_string());
        }
        Obligation::ExtensionExistenceQuestion { shape, constraints } => {
            j.shape = Some(shape.to_string());
            j.constraints = Some(constraints.clone());
        }
    }
    j
}

fn case_json(r: &CaseRecord) -> CaseJson {
    let (outcome, reasons, obligations) = match &r.outcome {
        CaseOutcome::Matched => ("matched", vec![], vec![]),
        CaseOutcome::Refuted(v) => (
            "refuted",
            v.iter()
                .map(|x| ReasonJson {
                    kind: x.kind().to_string(),
                    text: x.to_string(),
                })
                .collect(),
            vec![],
        ),
        CaseOutcome::Open(v) => ("open", vec![], v.iter().map(obligation_json).collect()),
    };
    CaseJson {
        shape: r.shape.to_string(),
        option: r.option.clone(),
        outcome: outcome.to_string(),
        reasons,
        obligations,
        details: r.details.clone(),
    }
}

fn witness_params(w: &Witness) -> Map<String, Value> {
    let v = match w {
        Witness::Trivial => json!({}),
        Witness::C2 { t, b } => json!({"t": t.value(), "b": b.value()}),
        Witness::C2Existential { b, condition } => json!({"b": b.value(), "condition": condition}),
        Witness::V4 { s, t, a, b, sign } => json!({
            "s": s.value(), "t": t.value(), "a": a.value(), "b": b.value(), "sign": sign.to_string()
        }),
        Witness::V4Existential { t, a, b, condition } => json!({
            "t": t.value(), "a": a.value(), "b": b.value(), "condition": condition
        }),
        Witness::Cyclic {
            n,
            t,
            extension,
            sigma,
            sign,
        } => json!({
            "n": n, "t": t.value(), "extension": extension, "sigma": sigma, "sign": sign.to_string()
        }),
        Witness::Dihedral {
            n,
            s,
            t,
            b,
            extension,
            sigma,
            tau,
            sign,
        } => json!({
            "n": n,
            "s": s.map(|x| x.value()),
            "t": t.value(),
            "b": b.value(),
            "extension": extension,
            "sigma": sigma,
            "tau": tau,
            "sign": sign.to_string(),
        }),
    };
    match v {
        Value::Object(m) => m,
        _ => unreachable!(),
    }
}

fn certificate_json(c: &CertificateReport) -> CertificateJson {
    CertificateJson {
        name: c.name.clone(),
        shape: c.shape.to_string(),
        status: c.status.clone(),
        log: c.log.clone(),
    }
}

pub fn verification_json(c: &WitnessCheck) -> VerificationJson {
    let (status, detail) = match c {
        WitnessCheck::Verified(d) => ("verified", d),
        WitnessCheck::Unsupported(d) => ("unsupported", d),
        WitnessCheck::Failed(d) => ("failed", d),
    };
    VerificationJson {
        status: status.to_string(),
        detail: detail.clone(),
    }
}

impl Report {
    pub fn new(command: &str, input: InputEcho, warnings: Vec<String>) -> Self {
        Report {
            schema: SCHEMA,
            command: command.to_string(),
            input,
            warnings,
            verdict: None,
            exit_code: 0,
            witness: None,
            restricted: None,
            case_log: Vec::new(),
            obligations: Vec::new(),
            certificates: Vec::new(),
            oracle_facts: Vec::new(),
            notes: Vec::new(),
            verification: None,
            result: None,
        }
    }

    pub fn set_decision(&mut self, d: &Decision) {
        self.verdict = Some(d.verdict.name().to_string());
        self.exit_code = d.verdict.exit_code();
        match &d.verdict {
            Verdict::Defined { witness, delta } => {
                self.witness = Some(WitnessJson {
                    shape: witness.shape().map(|s| s.to_string()),
                    text: witness.to_string(),
                    params: witness_params(witness),
                    delta: class_json(delta),
                });
            }
            Verdict::NotDefined => {}
            Verdict::Undecided { obligations } => {
                self.obligations = obligations.iter().map(obligation_json).collect();
            }
        }
        self.restricted = Some(class_json(&d.restricted));
        self.case_log = d.case_log.iter().map(case_json).collect();
        self.certificates = d.certificates.iter().map(certificate_json).collect();
        self.oracle_facts = d.oracle_facts.clone();
        self.notes = d.notes.clone();
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// Human-readable report; `trace` adds the per-shape details and notes.
    pub fn to_text(&self, trace: bool) -> String {
        let mut out = String::new();
        let w = &mut out;
        let _ = writeln!(w, "command: {}", self.command);
        let i = &self.input;
        let _ = write!(w, "input: pbar={} sign={}", i.pbar, i.sign);
        if let Some(a) = &i.algebra {
            let _ = write!(w, " algebra={a}");
        }
        let _ = writeln!(w, " field={}", i.field);
        for x in &self.warnings {
            let _ = writeln!(w, "warning: {x}");
        }
        if let Some(v) = &self.verdict {
            let _ = writeln!(w, "verdict: {v}");
        }
        if let Some(wit) = &self.witness {
            let _ = writeln!(w, "witness: {}", wit.text);
            let _ = writeln!(w, "delta: pbar={} sign={} over {}", wit.delta.pbar, wit.delta.sign, wit.delta.base);
        }
        if let Some(v) = &self.verification {
            let _ = writeln!(w, "verification: {} ({})", v.status, v.detail);
        }
        let show_log = trace || matches!(self.verdict.as_deref(), Some("NotDefined") | Some("Undecided"));
        if show_log && !self.case_log.is_empty() {
            let _ = writeln!(w, "case log:");
            for c in &self.case_log {
                let _ = write!(w, "  {} [{}]: {}", c.shape, c.option, c.outcome);
                let texts: Vec<&str> = c
                    .reasons
                    .iter()
                    .map(|r| r.text.as_str())
                    .chain(c.obligations.iter().map(|o| o.text.as_str()))
                    .collect();
                if !texts.is_empty() {
                    let _ = write!(w, ": {}", texts.join("; "));
                }
                let _ = writeln!(w);
                if trace {
                    for d in &c.details {
                        let _ = writeln!(w, "      {d}");
                    }
                }
            }
        }
        if !self.obligations.is_empty() {
            let _ = writeln!(w, "obligations:");
            for o in &self.obligations {
                let _ = writeln!(w, "  {}", o.text);
            }
        }
        if !self.certificates.is_empty() {
            let _ = writeln!(w, "certificates:");
            for c in &self.certificates {
                let _ = writeln!(w, "  {} ({}): {}", c.name, c.shape, c.status);
                if trace {
                    for l in &c.log {
                        let _ = writeln!(w, "      {l}");
                    }
                }
            }
        }
        if !self.oracle_facts.is_empty() {
            let _ = writeln!(w, "oracle facts:");
            for f in &self.oracle_facts {
                let _ = writeln!(w, "  {f}");
            }
        }
        if trace && !self.notes.is_empty() {
            let _ = writeln!(w, "notes:");
            for n in &self.notes {
                let _ = writeln!(w, "  {n}");
            }
        }
        if let Some(r) = &self.result {
            if let Value::Object(m) = r {
                for (k, v) in m {
                    let shown = match v {
                        Value::String(s) => s.clone(),
                        other => other.to_string(),
                    };
                    let _ = writeln!(w, "{k}: {shown}");
                }
            }
        }
        out
    }
}
