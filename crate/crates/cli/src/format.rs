//! The line-oriented problem file format.
//!
//! Parsing keeps comments, blank lines and the integers exactly as written,
//! so `serialize(parse(text))` reproduces any file already in canonical form.

use std::fmt::{self, Write as _};

use bbdescent_core::Rational;
use num_bigint::BigInt;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}, column {column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SignSpec {
    /// Places as written; `inf` is the real place.
    Ram(Vec<String>),
    Symbol(i64, i64),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FieldSpec {
    Rationals,
    Sqrt(Vec<i64>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CommandSpec {
    Decide,
    DecideWithEndos(FieldSpec),
    Kp,
    MinimalFields,
    Decompose,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GroupSpec {
    Cyclic(u32),
    V4,
    Dihedral(u32),
}

/// A field element: a coordinate vector or an expression over `embed` names.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EltSpec {
    Vector(Vec<Rational>),
    Expr(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SourceSpec {
    Witness(EltSpec),
    Oracle(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Entry {
    Pbar(Vec<(i64, i64)>),
    Sign(SignSpec),
    Algebra(i64, i64),
    Field(FieldSpec),
    Command(CommandSpec),
    Certificate(String),
    Minpoly(Vec<BigInt>),
    Group(GroupSpec),
    Gen(String, EltSpec),
    Embed(String, EltSpec),
    Lambda(Vec<String>, Vec<EltSpec>),
    NormFact {
        subgroup: Vec<String>,
        element: EltSpec,
        is_norm: bool,
        source: SourceSpec,
    },
}

impl Entry {
    pub fn is_certificate_line(&self) -> bool {
        matches!(
            self,
            Entry::Minpoly(_)
                | Entry::Group(_)
                | Entry::Gen(..)
                | Entry::Embed(..)
                | Entry::Lambda(..)
                | Entry::NormFact { .. }
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Line {
    /// A blank or comment-only line, verbatim.
    Raw(String),
    /// An entry with its trailing comment (including the whitespace before `#`).
    Entry {
        line: usize,
        entry: Entry,
        comment: Option<String>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ProblemFile {
    pub lines: Vec<Line>,
}

impl ProblemFile {
    pub fn entries(&self) -> impl Iterator<Item = (usize, &Entry)> {
        self.lines.iter().filter_map(|l| match l {
            Line::Entry { line, entry, .. } => Some((*line, entry)),
            Line::Raw(_) => None,
        })
    }

    /// Drops every certificate section.
    pub fn without_certificates(&self) -> ProblemFile {
        let mut lines = Vec::new();
        let mut in_cert = false;
        for l in &self.lines {
            if let Line::Entry { entry, .. } = l {
                if let Entry::Certificate(_) = entry {
                    in_cert = true;
                    continue;
                }
                if in_cert && entry.is_certificate_line() {
                    continue;
                }
                in_cert = false;
            }
            lines.push(l.clone());
        }
        ProblemFile { lines }
    }
}

struct Cursor<'a> {
    text: &'a str,
    pos: usize,
    line: usize,
    base: usize,
}

impl<'a> Cursor<'a> {
    fn new(text: &'a str, line: usize, base: usize) -> Self {
        Cursor { text, pos: 0, line, base }
    }

    fn err(&self, message: impl Into<String>) -> ParseError {
        ParseError {
            line: self.line,
            column: self.base + self.pos + 1,
            message: message.into(),
        }
    }

    fn rest(&self) -> &'a str {
        &self.text[self.pos..]
    }

    fn skip_ws(&mut self) {
        let n = self.rest().len() - self.rest().trim_start().len();
        self.pos += n;
    }

    fn at_end(&mut self) -> bool {
        self.skip_ws();
        self.rest().is_empty()
    }

    fn eat(&mut self, s: &str) -> bool {
        self.skip_ws();
        if self.rest().starts_with(s) {
            self.pos += s.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, s: &str) -> Result<(), ParseError> {
        if self.eat(s) {
            Ok(())
        } else {
            Err(self.err(format!("expected `{s}`")))
        }
    }

    fn finish(&mut self) -> Result<(), ParseError> {
        if self.at_end() {
            Ok(())
        } else {
            Err(self.err(format!("unexpected `{}`", self.rest())))
        }
    }

    fn take_while(&mut self, f: impl Fn(char) -> bool) -> &'a str {
        let rest = self.rest();
        let n = rest.find(|c: char| !f(c)).unwrap_or(rest.len());
        self.pos += n;
        &rest[..n]
    }

    fn word(&mut self) -> Result<&'a str, ParseError> {
        self.skip_ws();
        let w = self.take_while(|c| c.is_ascii_alphanumeric() || c == '_' || c == '-' || c == '.');
        if w.is_empty() {
            return Err(self.err("expected a name"));
        }
        Ok(w)
    }

    fn int(&mut self) -> Result<i64, ParseError> {
        self.skip_ws();
        let start = self.pos;
        let t = self.take_while(|c| c.is_ascii_digit() || c == '-' || c == '+');
        t.parse().map_err(|_| {
            self.pos = start;
            self.err("expected an integer")
        })
    }

    fn bigint(&mut self) -> Result<BigInt, ParseError> {
        self.skip_ws();
        let start = self.pos;
        let t = self.take_while(|c| c.is_ascii_digit() || c == '-' || c == '+');
        t.parse().map_err(|_| {
            self.pos = start;
            self.err("expected an integer")
        })
    }

    fn rational(&mut self) -> Result<Rational, ParseError> {
        self.skip_ws();
        let start = self.pos;
        let t = self.take_while(|c| c.is_ascii_digit() || c == '-' || c == '+' || c == '/');
        parse_rational_str(t).ok_or_else(|| {
            self.pos = start;
            self.err("expected a rational number")
        })
    }
}

pub fn parse_rational_str(t: &str) -> Option<Rational> {
    let (n, d) = match t.split_once('/') {
        Some((n, d)) => (n.parse::<BigInt>().ok()?, d.parse::<BigInt>().ok()?),
        None => (t.parse::<BigInt>().ok()?, BigInt::from(1)),
    };
    if d == BigInt::from(0) {
        return None;
    }
    Some(Rational::new(n, d))
}

/// Splits `text` at the first `#` outside double quotes.
fn split_comment(text: &str) -> (&str, Option<&str>) {
    let mut quoted = false;
    for (i, c) in text.char_indices() {
        match c {
            '"' => quoted = !quoted,
            '#' if !quoted => {
                let body = &text[..i];
                let trimmed = body.trim_end();
                return (trimmed, Some(&text[trimmed.len()..]));
            }
            _ => {}
        }
    }
    (text.trim_end(), None)
}

fn parse_field(c: &mut Cursor) -> Result<FieldSpec, ParseError> {
    c.expect("Q")?;
    if !c.eat("(") {
        return Ok(FieldSpec::Rationals);
    }
    let mut gens = Vec::new();
    loop {
        c.expect("sqrt")?;
        gens.push(c.int()?);
        if c.eat(")") {
            break;
        }
        c.expect(",")?;
    }
    Ok(FieldSpec::Sqrt(gens))
}

fn parse_symbol(c: &mut Cursor) -> Result<(i64, i64), ParseError> {
    c.expect("symbol")?;
    c.expect("(")?;
    let a = c.int()?;
    c.expect(",")?;
    let b = c.int()?;
    c.expect(")")?;
    Ok((a, b))
}

fn parse_elt(c: &mut Cursor) -> Result<EltSpec, ParseError> {
    c.skip_ws();
    if c.eat("[") {
        let mut v = Vec::new();
        if !c.eat("]") {
            loop {
                v.push(c.rational()?);
                if c.eat("]") {
                    break;
                }
                c.expect(",")?;
            }
        }
        return Ok(EltSpec::Vector(v));
    }
    let t = c.take_while(|ch| ch.is_ascii_alphanumeric() || "_+-*/^".contains(ch));
    if t.is_empty() {
        return Err(c.err("expected a field element"));
    }
    Ok(EltSpec::Expr(t.to_string()))
}

fn parse_subgroup(c: &mut Cursor) -> Result<Vec<String>, ParseError> {
    let mut gens = Vec::new();
    loop {
        c.skip_ws();
        let w = c.take_while(|ch| ch.is_ascii_alphanumeric() || ch == '^');
        if w.is_empty() {
            return Err(c.err("expected a group word"));
        }
        gens.push(w.to_string());
        if !c.eat(",") {
            break;
        }
    }
    c.expect(":")?;
    Ok(gens)
}

fn parse_group(c: &mut Cursor) -> Result<GroupSpec, ParseError> {
    c.skip_ws();
    let start = c.pos;
    let w = c.word()?;
    let bad = |c: &mut Cursor| {
        c.pos = start;
        c.err(format!("unknown group `{w}` (expected C<n>, V4 or D<2n>)"))
    };
    if w == "V4" {
        return Ok(GroupSpec::V4);
    }
    let (kind, num) = w.split_at(1);
    let n: u32 = match num.parse() {
        Ok(n) => n,
        Err(_) => return Err(bad(c)),
    };
    match kind {
        "C" if n >= 2 => Ok(GroupSpec::Cyclic(n)),
        "D" if n >= 6 && n % 2 == 0 => Ok(GroupSpec::Dihedral(n / 2)),
        _ => Err(bad(c)),
    }
}

fn parse_normfact(c: &mut Cursor) -> Result<Entry, ParseError> {
    let subgroup = parse_subgroup(c)?;
    c.expect("element=")?;
    let element = parse_elt(c)?;
    c.expect("isnorm=")?;
    let is_norm = if c.eat("true") {
        true
    } else if c.eat("false") {
        false
    } else {
        return Err(c.err("expected `true` or `false`"));
    };
    c.expect("source=")?;
    let source = if c.eat("witness") {
        SourceSpec::Witness(parse_elt(c)?)
    } else if c.eat("oracle") {
        c.expect("\"")?;
        let note = c.take_while(|ch| ch != '"').to_string();
        c.expect("\"")?;
        SourceSpec::Oracle(note)
    } else {
        return Err(c.err("expected `witness <elt>` or `oracle \"<note>\"`"));
    };
    Ok(Entry::NormFact {
        subgroup,
        element,
        is_norm,
        source,
    })
}

fn parse_top(c: &mut Cursor) -> Result<Entry, ParseError> {
    if c.eat("certificate") {
        let name = c.word()?.to_string();
        c.expect(":")?;
        return Ok(Entry::Certificate(name));
    }
    let key = c.word()?;
    c.expect("=")?;
    let entry = match key {
        "class.pbar" => {
            let mut pairs = Vec::new();
            if c.eat("()") {
                return Ok(Entry::Pbar(pairs));
            }
            while c.eat("(") {
                let t = c.int()?;
                c.expect(",")?;
                let d = c.int()?;
                c.expect(")")?;
                pairs.push((t, d));
            }
            if pairs.is_empty() {
                return Err(c.err("expected `(t,d)` pairs or `()`"));
            }
            Entry::Pbar(pairs)
        }
        "class.sign" => {
            if c.eat("ram{") {
                let mut places = Vec::new();
                if !c.eat("}") {
                    loop {
                        places.push(c.word()?.to_string());
                        if c.eat("}") {
                            break;
                        }
                        c.expect(",")?;
                    }
                }
                Entry::Sign(SignSpec::Ram(places))
            } else {
                let (a, b) = parse_symbol(c)?;
                Entry::Sign(SignSpec::Symbol(a, b))
            }
        }
        "algebra" => {
            let (a, b) = parse_symbol(c)?;
            Entry::Algebra(a, b)
        }
        "field" => Entry::Field(parse_field(c)?),
        "command" => {
            c.skip_ws();
            let start = c.pos;
            let cmd = c.word()?;
            Entry::Command(match cmd {
                "decide" => CommandSpec::Decide,
                "decide-with-endos" => {
                    c.expect("L=")?;
                    CommandSpec::DecideWithEndos(parse_field(c)?)
                }
                "kp" => CommandSpec::Kp,
                "minimal-fields" => CommandSpec::MinimalFields,
                "decompose" => CommandSpec::Decompose,
                other => {
                    c.pos = start;
                    return Err(c.err(format!("unknown command `{other}`")));
                }
            })
        }
        other => {
            c.pos = 0;
            return Err(c.err(format!("unknown key `{other}`")));
        }
    };
    Ok(entry)
}

fn parse_cert_line(c: &mut Cursor) -> Result<Entry, ParseError> {
    let key = c.word()?;
    match key {
        "minpoly" => {
            c.expect("=")?;
            let mut coeffs = Vec::new();
            while !c.at_end() {
                coeffs.push(c.bigint()?);
                c.eat(",");
            }
            if coeffs.is_empty() {
                return Err(c.err("expected coefficients"));
            }
            Ok(Entry::Minpoly(coeffs))
        }
        "group" => {
            c.expect("=")?;
            Ok(Entry::Group(parse_group(c)?))
        }
        "gen" | "embed" => {
            let name = c.word()?.to_string();
            c.expect("=")?;
            let e = parse_elt(c)?;
            Ok(if key == "gen" { Entry::Gen(name, e) } else { Entry::Embed(name, e) })
        }
        "lambda" => {
            let gens = parse_subgroup(c)?;
            let mut values = Vec::new();
            while !c.at_end() {
                values.push(parse_elt(c)?);
            }
            Ok(Entry::Lambda(gens, values))
        }
        "normfact" => parse_normfact(c),
        other => {
            c.pos = 0;
            Err(c.err(format!("unknown certificate key `{other}`")))
        }
    }
}

pub fn parse_problem(text: &str) -> Result<ProblemFile, ParseError> {
    let mut lines = Vec::new();
    let mut in_cert = false;
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let (body, comment) = split_comment(raw);
        if body.trim().is_empty() {
            lines.push(Line::Raw(raw.to_string()));
            continue;
        }
        let indent = body.len() - body.trim_start().len();
        let mut c = Cursor::new(body.trim_start(), line, indent);
        let entry = if indent > 0 {
            if !in_cert {
                return Err(c.err("indented line outside a certificate"));
            }
            parse_cert_line(&mut c)?
        } else {
            let e = parse_top(&mut c)?;
            in_cert = matches!(e, Entry::Certificate(_));
            e
        };
        c.finish()?;
        lines.push(Line::Entry {
            line,
            entry,
            comment: comment.map(str::to_string),
        });
    }
    Ok(ProblemFile { lines })
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rationals => write!(f, "Q"),
            FieldSpec::Sqrt(gens) => {
                let parts: Vec<String> = gens.iter().map(|g| format!("sqrt {g}")).collect();
                write!(f, "Q({})", parts.join(", "))
            }
        }
    }
}

impl fmt::Display for EltSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EltSpec::Vector(v) => {
                let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
                write!(f, "[{}]", parts.join(", "))
            }
            EltSpec::Expr(e) => write!(f, "{e}"),
        }
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupSpec::Cyclic(n) => write!(f, "C{n}"),
            GroupSpec::V4 => write!(f, "V4"),
            GroupSpec::Dihedral(n) => write!(f, "D{}", 2 * n),
        }
    }
}

impl fmt::Display for Entry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Entry::Pbar(pairs) => {
                write!(f, "class.pbar = ")?;
                if pairs.is_empty() {
                    return write!(f, "()");
                }
                for (t, d) in pairs {
                    write!(f, "({t},{d})")?;
                }
                Ok(())
            }
            Entry::Sign(SignSpec::Ram(places)) => write!(f, "class.sign = ram{{{}}}", places.join(",")),
            Entry::Sign(SignSpec::Symbol(a, b)) => write!(f, "class.sign = symbol({a},{b})"),
            Entry::Algebra(a, b) => write!(f, "algebra = symbol({a},{b})"),
            Entry::Field(k) => write!(f, "field = {k}"),
            Entry::Command(cmd) => {
                write!(f, "command = ")?;
                match cmd {
                    CommandSpec::Decide => write!(f, "decide"),
                    CommandSpec::DecideWithEndos(l) => write!(f, "decide-with-endos L={l}"),
                    CommandSpec::Kp => write!(f, "kp"),
                    CommandSpec::MinimalFields => write!(f, "minimal-fields"),
                    CommandSpec::Decompose => write!(f, "decompose"),
                }
            }
            Entry::Certificate(name) => write!(f, "certificate {name}:"),
            Entry::Minpoly(c) => {
                let parts: Vec<String> = c.iter().map(|x| x.to_string()).collect();
                write!(f, "  minpoly = {}", parts.join(" "))
            }
            Entry::Group(g) => write!(f, "  group = {g}"),
            Entry::Gen(name, e) => write!(f, "  gen {name} = {e}"),
            Entry::Embed(name, e) => write!(f, "  embed {name} = {e}"),
            Entry::Lambda(gens, values) => {
                let parts: Vec<String> = values.iter().map(|x| x.to_string()).collect();
                write!(f, "  lambda {}: {}", gens.join(","), parts.join(" "))
            }
            Entry::NormFact {
                subgroup,
                element,
                is_norm,
                source,
            } => {
                write!(f, "  normfact {}: element={element} isnorm={is_norm} source=", subgroup.join(","))?;
                match source {
                    SourceSpec::Witness(w) => write!(f, "witness {w}"),
                    SourceSpec::Oracle(note) => write!(f, "oracle \"{note}\""),
                }
            }
        }
    }
}

/// The canonical text of a parsed file.
pub fn serialize(p: &ProblemFile) -> String {
    let mut out = String::new();
    for l in &p.lines {
        match l {
            Line::Raw(s) => out.push_str(s),
            Line::Entry { entry, comment, .. } => {
                let _ = write!(out, "{entry}");
                if let Some(c) = comment {
                    out.push_str(c);
                }
            }
        }
        out.push('\n');
    }
    out
}
