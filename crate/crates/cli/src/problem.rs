//! Semantic checks turning a parsed file into engine inputs.

use bbdescent_core::delta::{GammaClass, PMorphism, Shape, SignComponent};
use bbdescent_core::descent::{ExtensionCertificate, LambdaWitness, NormFact, NormSource};
use bbdescent_core::groups::FiniteGroup;
use bbdescent_core::numfield::{FieldElement, NumberField};
use bbdescent_core::qarith::{
    is_prime, symbol_class, AbsSquareClass, Place, PolyquadraticField, QuaternionClass, QuaternionSymbol, SquareClass,
};
use thiserror::Error;

use crate::format::{CommandSpec, EltSpec, Entry, FieldSpec, GroupSpec, ProblemFile, SignSpec, SourceSpec};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {message}")]
pub struct SemanticError {
    pub line: usize,
    pub message: String,
}

fn sem(line: usize, message: impl Into<String>) -> SemanticError {
    SemanticError {
        line,
        message: message.into(),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Command {
    Decide,
    DecideWithEndos(PolyquadraticField),
    Kp,
    MinimalFields,
    Decompose,
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Decide => "decide",
            Command::DecideWithEndos(_) => "decide-with-endos",
            Command::Kp => "kp",
            Command::MinimalFields => "minimal-fields",
            Command::Decompose => "decompose",
        }
    }
}

#[derive(Debug, Clone)]
pub struct Problem {
    pub gamma: GammaClass,
    pub algebra: Option<QuaternionSymbol>,
    pub field: PolyquadraticField,
    pub certificates: Vec<ExtensionCertificate>,
    pub command: Command,
    pub warnings: Vec<String>,
}

struct Ctx {
    warnings: Vec<String>,
}

impl Ctx {
    fn class(&mut self, line: usize, what: &str, n: i64) -> Result<SquareClass, SemanticError> {
        let c = SquareClass::new(n).map_err(|_| sem(line, format!("{what} must be nonzero")))?;
        if c.value() != n {
            self.warnings
                .push(format!("line {line}: {what} = {n} is not squarefree, reduced to {c}"));
        }
        Ok(c)
    }

    fn abs_class(&mut self, line: usize, what: &str, n: i64) -> Result<AbsSquareClass, SemanticError> {
        if n < 0 {
            self.warnings
                .push(format!("line {line}: {what} = {n} is negative, using its absolute value"));
        }
        let c = self.class(line, what, n.abs())?;
        Ok(c.abs())
    }

    fn field(&mut self, line: usize, spec: &FieldSpec) -> Result<PolyquadraticField, SemanticError> {
        let mut k = PolyquadraticField::rationals();
        if let FieldSpec::Sqrt(gens) = spec {
            for &g in gens {
                let t = self.class(line, "field generator", g)?;
                if t.is_one() {
                    return Err(sem(line, format!("generator is a square: sqrt {g}")));
                }
                k = k
                    .adjoin(t)
                    .map_err(|_| sem(line, format!("generator sqrt {g} is dependent on the previous ones")))?;
            }
        }
        Ok(k)
    }
}

fn place(line: usize, p: &str) -> Result<Place, SemanticError> {
    if p == "inf" {
        return Ok(Place::Infinity);
    }
    let n: u64 = p
        .parse()
        .map_err(|_| sem(line, format!("`{p}` is not a place (expected a prime or inf)")))?;
    if !is_prime(n) {
        return Err(sem(line, format!("{n} is not a prime")));
    }
    Ok(Place::Finite(n))
}

fn shape_of(g: &GroupSpec) -> Shape {
    match *g {
        GroupSpec::Cyclic(2) => Shape::C2,
        GroupSpec::Cyclic(n) => Shape::Cyclic(n),
        GroupSpec::V4 => Shape::V4,
        GroupSpec::Dihedral(n) => Shape::Dihedral(n),
    }
}

/// Evaluates `expr` over the named elements (`theta` is the primitive element).
fn eval_expr(field: &NumberField, names: &[(String, FieldElement)], expr: &str) -> Result<FieldElement, String> {
    let lookup = |name: &str| -> Result<FieldElement, String> {
        if let Some((_, v)) = names.iter().rev().find(|(n, _)| n == name) {
            return Ok(v.clone());
        }
        if name == "theta" {
            return Ok(field.generator());
        }
        Err(format!("unknown name `{name}`"))
    };
    let bytes = expr.as_bytes();
    let mut pos = 0;
    let mut total = field.zero();
    while pos < bytes.len() {
        let mut negative = false;
        while pos < bytes.len() && (bytes[pos] == b'+' || bytes[pos] == b'-') {
            negative ^= bytes[pos] == b'-';
            pos += 1;
        }
        let mut term = field.one();
        loop {
            let start = pos;
            if pos < bytes.len() && bytes[pos].is_ascii_digit() {
                while pos < bytes.len() && (bytes[pos].is_ascii_digit() || bytes[pos] == b'/') {
                    pos += 1;
                }
                let r = crate::format::parse_rational_str(&expr[start..pos])
                    .ok_or_else(|| format!("bad number `{}`", &expr[start..pos]))?;
                term = field.scale(&term, &r);
            } else {
                while pos < bytes.len() && (bytes[pos].is_ascii_alphanumeric() || bytes[pos] == b'_') {
                    pos += 1;
                }
                if start == pos {
                    return Err(format!("unexpected character in `{expr}`"));
                }
                let mut v = lookup(&expr[start..pos])?;
                if pos < bytes.len() && bytes[pos] == b'^' {
                    pos += 1;
                    let s = pos;
                    while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                        pos += 1;
                    }
                    let e: i64 = expr[s..pos].parse().map_err(|_| format!("bad exponent in `{expr}`"))?;
                    v = field.pow(&v, e).map_err(|e| e.to_string())?;
                }
                term = field.mul(&term, &v);
            }
            if pos < bytes.len() && bytes[pos] == b'*' {
                pos += 1;
                continue;
            }
            break;
        }
        if negative {
            term = field.neg(&term);
        }
        total = field.add(&total, &term);
        if pos < bytes.len() && bytes[pos] != b'+' && bytes[pos] != b'-' {
            return Err(format!("unexpected character in `{expr}`"));
        }
    }
    Ok(total)
}

fn eval(field: &NumberField, names: &[(String, FieldElement)], e: &EltSpec) -> Result<FieldElement, String> {
    match e {
        EltSpec::Vector(v) => field.element(v.clone()).map_err(|e| e.to_string()),
        EltSpec::Expr(s) => eval_expr(field, names, s),
    }
}

#[derive(Default)]
struct CertDraft {
    line: usize,
    name: String,
    field: Option<NumberField>,
    group: Option<(Shape, FiniteGroup)>,
    gens: Vec<FieldElement>,
    embeds: Vec<(String, FieldElement)>,
    lambdas: Vec<LambdaWitness>,
    norm_facts: Vec<NormFact>,
}

impl CertDraft {
    fn field(&self, line: usize) -> Result<&NumberField, SemanticError> {
        self.field
            .as_ref()
            .ok_or_else(|| sem(line, format!("certificate {}: minpoly must come first", self.name)))
    }

    fn group(&self, line: usize) -> Result<&FiniteGroup, SemanticError> {
        self.group
            .as_ref()
            .map(|(_, g)| g)
            .ok_or_else(|| sem(line, format!("certificate {}: group must be given before this line", self.name)))
    }

    fn elt(&self, line: usize, e: &EltSpec) -> Result<FieldElement, SemanticError> {
        eval(self.field(line)?, &self.embeds, e).map_err(|m| sem(line, format!("certificate {}: {m}", self.name)))
    }

    fn words(&self, line: usize, words: &[String]) -> Result<Vec<usize>, SemanticError> {
        let g = self.group(line)?;
        words
            .iter()
            .map(|w| g.parse_word(w).map_err(|e| sem(line, format!("certificate {}: {e}", self.name))))
            .collect()
    }

    fn add(&mut self, line: usize, entry: &Entry) -> Result<(), SemanticError> {
        match entry {
            Entry::Minpoly(coeffs) => {
                if self.field.is_some() {
                    return Err(sem(line, "duplicate minpoly"));
                }
                let f = NumberField::new(coeffs.clone())
                    .map_err(|e| sem(line, format!("certificate {}: {e}", self.name)))?;
                self.field = Some(f);
            }
            Entry::Group(g) => {
                if self.group.is_some() {
                    return Err(sem(line, "duplicate group"));
                }
                let shape = shape_of(g);
                self.group = Some((shape, shape.group()));
            }
            Entry::Gen(label, e) => {
                let names = self.group(line)?.generator_names().to_vec();
                let expected = names.get(self.gens.len()).ok_or_else(|| {
                    sem(line, format!("certificate {}: too many gen lines", self.name))
                })?;
                if label != expected {
                    return Err(sem(line, format!("gen `{label}` out of order, expected `{expected}`")));
                }
                let v = self.elt(line, e)?;
                self.gens.push(v);
            }
            Entry::Embed(name, e) => {
                let v = self.elt(line, e)?;
                self.embeds.push((name.clone(), v));
            }
            Entry::Lambda(words, values) => {
                let subgroup = self.words(line, words)?;
                let values = values.iter().map(|v| self.elt(line, v)).collect::<Result<_, _>>()?;
                self.lambdas.push(LambdaWitness { subgroup, values });
            }
            Entry::NormFact {
                subgroup,
                element,
                is_norm,
                source,
            } => {
                let subgroup = self.words(line, subgroup)?;
                let element = self.elt(line, element)?;
                let source = match source {
                    SourceSpec::Witness(w) => NormSource::Witness(self.elt(line, w)?),
                    SourceSpec::Oracle(note) => NormSource::Oracle(note.clone()),
                };
                self.norm_facts.push(NormFact {
                    subgroup,
                    element,
                    is_norm: *is_norm,
                    source,
                });
            }
            _ => unreachable!("not a certificate line"),
        }
        Ok(())
    }

    fn finish(self) -> Result<ExtensionCertificate, SemanticError> {
        let line = self.line;
        let field = self.field.ok_or_else(|| sem(line, format!("certificate {}: missing minpoly", self.name)))?;
        let (shape, group) = self.group.ok_or_else(|| sem(line, format!("certificate {}: missing group", self.name)))?;
        if self.gens.len() != group.generators().len() {
            return Err(sem(
                line,
                format!("certificate {}: expected {} gen lines, found {}", self.name, group.generators().len(), self.gens.len()),
            ));
        }
        Ok(ExtensionCertificate {
            name: self.name,
            field,
            shape,
            generator_images: self.gens,
            embeds: self.embeds,
            lambdas: self.lambdas,
            norm_facts: self.norm_facts,
        })
    }
}

fn set_once<T>(slot: &mut Option<(usize, T)>, line: usize, key: &str, v: T) -> Result<(), SemanticError> {
    if let Some((first, _)) = slot {
        return Err(sem(line, format!("duplicate `{key}` (first given on line {first})")));
    }
    *slot = Some((line, v));
    Ok(())
}

/// Checks a parsed file and builds the engine inputs.
pub fn build_problem(file: &ProblemFile) -> Result<Problem, SemanticError> {
    let mut ctx = Ctx { warnings: Vec::new() };
    let mut pbar = None;
    let mut sign = None;
    let mut algebra = None;
    let mut field = None;
    let mut command = None;
    let mut certs: Vec<ExtensionCertificate> = Vec::new();
    let mut draft: Option<CertDraft> = None;
    let mut last_line = 0;
    for (line, entry) in file.entries() {
        last_line = line;
        if entry.is_certificate_line() {
            draft.as_mut().expect("parser nests certificate lines").add(line, entry)?;
            continue;
        }
        if let Some(d) = draft.take() {
            certs.push(d.finish()?);
        }
        match entry {
            Entry::Pbar(pairs) => {
                let mut v = Vec::new();
                for &(t, d) in pairs {
                    v.push((ctx.class(line, "t", t)?, ctx.abs_class(line, "d", d)?));
                }
                set_once(&mut pbar, line, "class.pbar", v)?;
            }
            Entry::Sign(s) => {
                let c = match s {
                    SignSpec::Ram(places) => {
                        let mut ps = Vec::new();
                        for p in places {
                            let v = place(line, p)?;
                            if ps.contains(&v) {
                                return Err(sem(line, format!("place {p} listed twice")));
                            }
                            ps.push(v);
                        }
                        if ps.len() % 2 == 1 {
                            return Err(sem(line, "odd ramification set"));
                        }
                        QuaternionClass::from_places(ps).map_err(|e| sem(line, e.to_string()))?
                    }
                    SignSpec::Symbol(a, b) => symbol_class(ctx.class(line, "a", *a)?, ctx.class(line, "b", *b)?),
                };
                set_once(&mut sign, line, "class.sign", c)?;
            }
            Entry::Algebra(a, b) => {
                let s = QuaternionSymbol::new(ctx.class(line, "a", *a)?, ctx.class(line, "b", *b)?);
                if !s.is_division() {
                    return Err(sem(line, format!("algebra {s} is split")));
                }
                set_once(&mut algebra, line, "algebra", s)?;
            }
            Entry::Field(spec) => {
                let k = ctx.field(line, spec)?;
                set_once(&mut field, line, "field", k)?;
            }
            Entry::Command(c) => {
                let c = match c {
                    CommandSpec::Decide => Command::Decide,
                    CommandSpec::DecideWithEndos(l) => Command::DecideWithEndos(ctx.field(line, l)?),
                    CommandSpec::Kp => Command::Kp,
                    CommandSpec::MinimalFields => Command::MinimalFields,
                    CommandSpec::Decompose => Command::Decompose,
                };
                set_once(&mut command, line, "command", c)?;
            }
            Entry::Certificate(name) => {
                if certs.iter().any(|c| &c.name == name) {
                    return Err(sem(line, format!("duplicate certificate `{name}`")));
                }
                draft = Some(CertDraft {
                    line,
                    name: name.clone(),
                    ..CertDraft::default()
                });
            }
            _ => unreachable!(),
        }
    }
    if let Some(d) = draft.take() {
        certs.push(d.finish()?);
    }
    let end = last_line + 1;
    let (_, pairs) = pbar.ok_or_else(|| sem(end, "missing `class.pbar`"))?;
    let (_, sign) = sign.ok_or_else(|| sem(end, "missing `class.sign`"))?;
    let (_, command) = command.ok_or_else(|| sem(end, "missing `command`"))?;
    let algebra = algebra.map(|(_, a)| a);
    if algebra.is_none() && matches!(command, Command::Decide | Command::DecideWithEndos(_)) {
        return Err(sem(end, format!("missing `algebra` (required by {})", command.name())));
    }
    let field = field.map(|(_, k)| k).unwrap_or_else(PolyquadraticField::rationals);
    let q = PolyquadraticField::rationals();
    Ok(Problem {
        gamma: GammaClass {
            pbar: PMorphism::new(pairs, q.clone()),
            sign: SignComponent::from_class(sign),
            base: q,
        },
        algebra,
        field,
        certificates: certs,
        command,
        warnings: ctx.warnings,
    })
}
