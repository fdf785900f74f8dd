//! Group presentations with parametrized relator families.
//!
//! The native text format is line oriented, `#` starts a comment:
//!
//! ```text
//! group Q
//! gens a[*]
//! rel a[s]^s * a[s-1]^-1 for s in 2..
//! ```
//!
//! `gens` declares either an indexed family `a[*]` or a finite list `x, y`.
//! A `rel` line without a `for` clause is an explicit relator and is stored
//! freely reduced. Ranges are inclusive: `1..5` is `1, 2, 3, 4, 5`, `2..` is
//! unbounded.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt::{self, Write};

use thiserror::Error;

use crate::expr::{tokenize, EvalError, ParseError, ParseErrorKind, Parser, SchemaExpr, Tok, Token};
use crate::word::{is_identifier, Alphabet, Word};

/// Integer parameter `name` ranging over `lo..=hi`, or `lo..` when `hi` is `None`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ParamRange {
    pub name: String,
    pub lo: i64,
    pub hi: Option<i64>,
}

impl ParamRange {
    pub fn new(name: &str, lo: i64, hi: Option<i64>) -> Self {
        ParamRange {
            name: name.to_string(),
            lo,
            hi,
        }
    }

    /// Values not exceeding `bound`.
    pub fn values(&self, bound: i64) -> core::ops::RangeInclusive<i64> {
        let hi = self.hi.map_or(bound, |h| h.min(bound));
        self.lo..=hi
    }
}

impl fmt::Display for ParamRange {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} in {}..", self.name, self.lo)?;
        if let Some(hi) = self.hi {
            write!(f, "{hi}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SchemaError {
    #[error("at most 2 parameters per relator, found {0}")]
    TooManyParameters(usize),
    #[error("parameter `{0}` declared twice")]
    DuplicateParameter(String),
    #[error("parameter `{0}` is used but not declared")]
    UndeclaredParameter(String),
    #[error("empty range {lo}..{hi}")]
    EmptyRange { lo: i64, hi: i64 },
}

/// A relator template whose indices and exponents depend affinely on up to two
/// integer parameters.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RelatorSchema {
    body: SchemaExpr,
    params: Vec<ParamRange>,
}

impl RelatorSchema {
    pub fn new(body: SchemaExpr, params: Vec<ParamRange>) -> Result<Self, SchemaError> {
        if params.len() > 2 {
            return Err(SchemaError::TooManyParameters(params.len()));
        }
        for (k, p) in params.iter().enumerate() {
            if params[..k].iter().any(|q| q.name == p.name) {
                return Err(SchemaError::DuplicateParameter(p.name.clone()));
            }
            if let Some(hi) = p.hi {
                if hi < p.lo {
                    return Err(SchemaError::EmptyRange { lo: p.lo, hi });
                }
            }
        }
        if let Some(p) = body
            .params()
            .into_iter()
            .find(|u| !params.iter().any(|d| &d.name == u))
        {
            return Err(SchemaError::UndeclaredParameter(p));
        }
        Ok(RelatorSchema { body, params })
    }

    pub fn body(&self) -> &SchemaExpr {
        &self.body
    }

    pub fn params(&self) -> &[ParamRange] {
        &self.params
    }

    /// Every parameter tuple with all values `≤ bound`, first parameter outermost.
    pub fn tuples(&self, bound: i64) -> Vec<Vec<(String, i64)>> {
        let mut out: Vec<Vec<(String, i64)>> = alloc::vec![Vec::new()];
        for p in &self.params {
            out = out
                .into_iter()
                .flat_map(|prefix| {
                    p.values(bound).map(move |v| {
                        let mut t = prefix.clone();
                        t.push((p.name.clone(), v));
                        t
                    })
                })
                .collect();
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Relator {
    Explicit(Word),
    Schema(RelatorSchema),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PresentationError {
    #[error("explicit relators must be nonempty")]
    EmptyRelator,
    #[error("relator uses generator id {0}, which is outside the alphabet")]
    ForeignGenerator(u32),
    #[error("invalid presentation name `{0}`")]
    InvalidName(String),
}

/// `⟨ alphabet | relators ⟩`. Relators keep their input order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    name: String,
    alphabet: Alphabet,
    relators: Vec<Relator>,
}

fn valid_name(name: &str) -> bool {
    !name.is_empty() && !name.contains(|c: char| c.is_whitespace() || c == '#')
}

impl Presentation {
    pub fn new(name: &str, alphabet: Alphabet) -> Result<Self, PresentationError> {
        if !valid_name(name) {
            return Err(PresentationError::InvalidName(name.to_string()));
        }
        Ok(Presentation {
            name: name.to_string(),
            alphabet,
            relators: Vec::new(),
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn relators(&self) -> &[Relator] {
        &self.relators
    }

    pub fn push_explicit(&mut self, word: Word) -> Result<(), PresentationError> {
        if word.is_empty() {
            return Err(PresentationError::EmptyRelator);
        }
        if let Some(l) = word.letters().iter().find(|l| !self.alphabet.contains(l.generator())) {
            return Err(PresentationError::ForeignGenerator(l.generator()));
        }
        self.relators.push(Relator::Explicit(word));
        Ok(())
    }

    pub fn push_schema(&mut self, schema: RelatorSchema) {
        self.relators.push(Relator::Schema(schema));
    }

    /// The explicit relators, or `None` if any schema is present.
    pub fn explicit_relators(&self) -> Option<Vec<&Word>> {
        self.relators
            .iter()
            .map(|r| match r {
                Relator::Explicit(w) => Some(w),
                Relator::Schema(_) => None,
            })
            .collect()
    }

    pub fn has_schemas(&self) -> bool {
        self.relators.iter().any(|r| matches!(r, Relator::Schema(_)))
    }

    /// Smallest lower bound over all schema parameters.
    pub fn min_param_lo(&self) -> Option<i64> {
        self.relators
            .iter()
            .filter_map(|r| match r {
                Relator::Schema(s) => s.params().iter().map(|p| p.lo).min(),
                Relator::Explicit(_) => None,
            })
            .min()
    }

    pub fn parse(text: &str) -> Result<Self, ParseError> {
        parse_presentation(text)
    }

    pub fn render(&self, format: Format) -> Result<String, RenderError> {
        match format {
            Format::Native => Ok(self.render_native()),
            Format::Cas => self.render_cas(),
        }
    }

    /// Native text; `Presentation::parse` reads it back to an equal value.
    pub fn render_native(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "group {}", self.name);
        match &self.alphabet {
            Alphabet::Indexed(base) => {
                let _ = writeln!(out, "gens {base}[*]");
            }
            Alphabet::Finite(names) => {
                let _ = writeln!(out, "gens {}", names.join(", "));
            }
        }
        for r in &self.relators {
            match r {
                Relator::Explicit(w) => {
                    let _ = writeln!(out, "rel {}", self.alphabet.display(w));
                }
                Relator::Schema(s) => {
                    let _ = write!(out, "rel {}", s.body.render(&self.alphabet));
                    for (k, p) in s.params.iter().enumerate() {
                        out.push_str(if k == 0 { " for " } else { ", " });
                        let _ = write!(out, "{p}");
                    }
                    out.push('\n');
                }
            }
        }
        out
    }

    /// A GAP-style finitely presented group declaration. Explicit relators only.
    pub fn render_cas(&self) -> Result<String, RenderError> {
        let words = self.explicit_relators().ok_or(RenderError::SchemasPresent)?;
        let (names, cas_alphabet): (Vec<String>, Alphabet) = match &self.alphabet {
            Alphabet::Finite(names) => (names.clone(), self.alphabet.clone()),
            Alphabet::Indexed(base) => {
                let n = words.iter().map(|w| w.max_generator()).max().unwrap_or(0).max(1);
                let names: Vec<String> = (1..=n).map(|i| format!("{base}{i}")).collect();
                let alphabet = Alphabet::Finite(names.clone());
                (names, alphabet)
            }
        };
        let mut ident: String = self
            .name
            .chars()
            .map(|c| if c.is_ascii_alphanumeric() || c == '_' { c } else { '_' })
            .collect();
        if ident.starts_with(|c: char| c.is_ascii_digit()) {
            ident.insert_str(0, "G_");
        }
        let mut out = String::new();
        let quoted: Vec<String> = names.iter().map(|n| format!("\"{n}\"")).collect();
        let _ = writeln!(out, "F := FreeGroup({});;", quoted.join(", "));
        for (k, n) in names.iter().enumerate() {
            let _ = writeln!(out, "{n} := F.{};;", k + 1);
        }
        let rels: Vec<String> = words
            .iter()
            .map(|w| cas_alphabet.display_starred(w).to_string())
            .collect();
        if rels.is_empty() {
            let _ = writeln!(out, "{ident} := F / [ ];;");
        } else {
            let _ = writeln!(out, "{ident} := F / [\n  {}\n];;", rels.join(",\n  "));
        }
        Ok(out)
    }

    /// Expands every schema over its parameter tuples with all values `≤ bound`.
    pub fn instantiate(&self, bound: i64, options: &InstantiateOptions) -> Result<Instantiated, InstantiateError> {
        if let Some(lo) = self.min_param_lo() {
            if bound < lo {
                return Err(InstantiateError::BoundBelowRange { bound, lo });
            }
        }
        let mut out = Presentation {
            name: self.name.clone(),
            alphabet: self.alphabet.clone(),
            relators: Vec::new(),
        };
        let mut origins = Vec::new();
        let mut warnings = Vec::new();
        let mut seen: BTreeSet<Word> = BTreeSet::new();
        let mut keep = |w: Word, origin: RelatorOrigin, warnings: &mut Vec<InstantiateWarning>| {
            if options.dedupe && !seen.insert(cyclic_class_key(&w)) {
                warnings.push(InstantiateWarning::DuplicateDropped(origin));
                return;
            }
            out.relators.push(Relator::Explicit(w));
            origins.push(origin);
        };
        for (k, r) in self.relators.iter().enumerate() {
            match r {
                Relator::Explicit(w) => keep(
                    w.clone(),
                    RelatorOrigin {
                        relator: k,
                        params: Vec::new(),
                    },
                    &mut warnings,
                ),
                Relator::Schema(s) => {
                    for tuple in s.tuples(bound) {
                        let env: Vec<(&str, i64)> = tuple.iter().map(|(n, v)| (n.as_str(), *v)).collect();
                        let origin = RelatorOrigin {
                            relator: k,
                            params: tuple.clone(),
                        };
                        let w = s.body.eval(&env).map_err(|source| InstantiateError::Eval {
                            origin: origin.clone(),
                            source,
                        })?;
                        if w.is_empty() {
                            warnings.push(InstantiateWarning::EmptyDropped(origin));
                        } else {
                            keep(w, origin, &mut warnings);
                        }
                    }
                }
            }
        }
        Ok(Instantiated {
            presentation: out,
            origins,
            warnings,
        })
    }
}

/// Representative of a relator's class under inversion and cyclic permutation.
pub fn cyclic_class_key(w: &Word) -> Word {
    let (core, _) = w.cyclically_reduce();
    let inv = core.inverse();
    let n = core.len();
    let rotations = |v: &Word| -> Vec<Word> {
        let l = v.letters();
        (0..n.max(1))
            .map(|s| Word::reduce(l[s.min(n)..].iter().chain(&l[..s.min(n)]).copied()))
            .collect()
    };
    rotations(&core)
        .into_iter()
        .chain(rotations(&inv))
        .min()
        .unwrap_or_default()
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct InstantiateOptions {
    /// Drop relators equal to an earlier one up to inversion and cyclic permutation.
    pub dedupe: bool,
}

/// Which input relator (0-based) and parameter values produced an output relator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelatorOrigin {
    pub relator: usize,
    pub params: Vec<(String, i64)>,
}

impl fmt::Display for RelatorOrigin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "relator {}", self.relator + 1)?;
        for (k, (n, v)) in self.params.iter().enumerate() {
            write!(f, "{}{n}={v}", if k == 0 { " at " } else { ", " })?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum InstantiateWarning {
    EmptyDropped(RelatorOrigin),
    DuplicateDropped(RelatorOrigin),
}

impl fmt::Display for InstantiateWarning {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            InstantiateWarning::EmptyDropped(o) => write!(f, "{o} reduces to the empty word; dropped"),
            InstantiateWarning::DuplicateDropped(o) => write!(f, "{o} duplicates an earlier relator; dropped"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InstantiateError {
    #[error("bound {bound} is below the smallest parameter lower bound {lo}")]
    BoundBelowRange { bound: i64, lo: i64 },
    #[error("{origin}: {source}")]
    Eval { origin: RelatorOrigin, source: EvalError },
}

/// Output of [`Presentation::instantiate`]: explicit relators only.
#[derive(Clone, Debug)]
pub struct Instantiated {
    pub presentation: Presentation,
    /// One entry per output relator.
    pub origins: Vec<RelatorOrigin>,
    pub warnings: Vec<InstantiateWarning>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Native,
    /// GAP-style `F / [ ... ]` declaration.
    Cas,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RenderError {
    #[error("the cas format needs explicit relators; instantiate first")]
    SchemasPresent,
}

fn header_err(line: usize, column: usize, msg: &str) -> ParseError {
    ParseError::new(line, column, ParseErrorKind::Header(msg.to_string()))
}

fn parse_presentation(text: &str) -> Result<Presentation, ParseError> {
    let mut name: Option<String> = None;
    let mut presentation: Option<Presentation> = None;
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.split('#').next().unwrap_or("");
        let trimmed = line.trim_start();
        if trimmed.trim().is_empty() {
            continue;
        }
        let indent = line.chars().count() - trimmed.chars().count();
        let keyword: String = trimmed.chars().take_while(|c| !c.is_whitespace()).collect();
        let rest = &trimmed[keyword.len()..];
        let rest_col = indent + keyword.chars().count() + 1;
        match keyword.as_str() {
            "group" => {
                if name.is_some() {
                    return Err(header_err(line_no, indent + 1, "duplicate `group` line"));
                }
                let n = rest.trim();
                if !valid_name(n) {
                    return Err(header_err(line_no, rest_col, "expected a group name"));
                }
                name = Some(n.to_string());
            }
            "gens" => {
                let n = name
                    .as_ref()
                    .ok_or_else(|| header_err(line_no, indent + 1, "`gens` before `group`"))?;
                if presentation.is_some() {
                    return Err(header_err(line_no, indent + 1, "duplicate `gens` line"));
                }
                let alphabet = parse_gens(rest.trim())
                    .ok_or_else(|| header_err(line_no, rest_col, "expected `name[*]` or a comma-separated symbol list"))?;
                presentation = Some(Presentation::new(n, alphabet).expect("name validated"));
            }
            "rel" => {
                let p = presentation
                    .as_mut()
                    .ok_or_else(|| header_err(line_no, indent + 1, "`rel` before `gens`"))?;
                let eol = line.trim_end().chars().count() + 1;
                parse_rel(p, rest, line_no, rest_col, eol)?;
            }
            _ => {
                return Err(header_err(
                    line_no,
                    indent + 1,
                    "expected `group`, `gens` or `rel`",
                ))
            }
        }
    }
    presentation.ok_or_else(|| {
        let line = text.lines().count().max(1);
        header_err(line, 1, "missing `group` or `gens` line")
    })
}

fn parse_gens(spec: &str) -> Option<Alphabet> {
    if let Some(base) = spec.strip_suffix("[*]") {
        return Alphabet::indexed(base.trim()).ok();
    }
    let names: Vec<&str> = spec.split(',').map(str::trim).collect();
    if names.iter().any(|n| !is_identifier(n)) {
        return None;
    }
    Alphabet::finite(&names).ok()
}

fn parse_rel(p: &mut Presentation, text: &str, line: usize, col: usize, eol: usize) -> Result<(), ParseError> {
    let tokens = tokenize(text, line, col)?;
    let split = tokens
        .iter()
        .position(|t| t.tok == Tok::Ident("for".into()))
        .unwrap_or(tokens.len());
    let (body_toks, clause) = tokens.split_at(split);
    let params = if clause.is_empty() {
        Vec::new()
    } else {
        parse_params(&clause[1..], line, clause[0].end, eol, p.alphabet())?
    };
    let names: Vec<String> = params.iter().map(|r| r.name.clone()).collect();
    let body_eol = clause.first().map_or(eol, |t| t.column);
    let body = Parser::new(body_toks, line, body_eol, p.alphabet(), &names).parse_all()?;
    let col = body_toks.first().map_or(col, |t| t.column);
    if params.is_empty() {
        let word = body.eval(&[]).map_err(|e| {
            let kind = match e {
                EvalError::IndexOutOfRange(i) => ParseErrorKind::IndexOutOfRange(i),
                EvalError::ExponentOutOfRange(n) => ParseErrorKind::ExponentOutOfRange(n),
                EvalError::Unbound(n) => ParseErrorKind::UndeclaredParameter(n),
            };
            ParseError::new(line, col, kind)
        })?;
        p.push_explicit(word)
            .map_err(|_| ParseError::new(line, col, ParseErrorKind::EmptyRelator))?;
    } else {
        let schema = RelatorSchema::new(body, params).map_err(|e| {
            let kind = match e {
                SchemaError::TooManyParameters(n) => ParseErrorKind::TooManyParameters(n),
                SchemaError::DuplicateParameter(n) => ParseErrorKind::DuplicateParameter(n),
                SchemaError::UndeclaredParameter(n) => ParseErrorKind::UndeclaredParameter(n),
                SchemaError::EmptyRange { lo, hi } => ParseErrorKind::EmptyRange { lo, hi },
            };
            ParseError::new(line, col, kind)
        })?;
        p.push_schema(schema);
    }
    Ok(())
}

/// `name in lo..[hi] (, name in lo..[hi])*`
fn parse_params(
    toks: &[Token],
    line: usize,
    start_col: usize,
    eol: usize,
    alphabet: &Alphabet,
) -> Result<Vec<ParamRange>, ParseError> {
    let mut pos = 0;
    let mut out: Vec<ParamRange> = Vec::new();
    let at = |pos: usize| toks.get(pos).map_or(eol, |t| t.column);
    let unexpected = |pos: usize, expected: &'static str| {
        let found = toks
            .get(pos)
            .map_or_else(|| "end of line".to_string(), |t| t.tok.to_string());
        ParseError::new(line, at(pos), ParseErrorKind::Unexpected { expected, found })
    };
    let int = |pos: &mut usize| -> Result<i64, ParseError> {
        let neg = toks.get(*pos).map(|t| &t.tok) == Some(&Tok::Minus);
        if neg {
            *pos += 1;
        }
        match toks.get(*pos).map(|t| &t.tok) {
            Some(Tok::Int(n)) => {
                *pos += 1;
                Ok(if neg { -n } else { *n })
            }
            _ => Err(unexpected(*pos, "an integer")),
        }
    };
    if toks.is_empty() {
        return Err(ParseError::new(
            line,
            start_col,
            ParseErrorKind::Unexpected {
                expected: "a parameter name",
                found: "end of line".into(),
            },
        ));
    }
    loop {
        let name_col = at(pos);
        let name = match toks.get(pos).map(|t| &t.tok) {
            Some(Tok::Ident(n)) if n != "in" && n != "for" => n.clone(),
            _ => return Err(unexpected(pos, "a parameter name")),
        };
        let shadows = match alphabet {
            Alphabet::Finite(_) => alphabet.resolve(&name).is_some(),
            Alphabet::Indexed(base) => *base == name,
        };
        if shadows {
            return Err(ParseError::new(line, name_col, ParseErrorKind::ParameterShadowsGenerator(name)));
        }
        if out.iter().any(|p| p.name == name) {
            return Err(ParseError::new(line, name_col, ParseErrorKind::DuplicateParameter(name)));
        }
        pos += 1;
        if toks.get(pos).map(|t| &t.tok) != Some(&Tok::Ident("in".into())) {
            return Err(unexpected(pos, "`in`"));
        }
        pos += 1;
        let lo = int(&mut pos)?;
        if toks.get(pos).map(|t| &t.tok) != Some(&Tok::DotDot) {
            return Err(unexpected(pos, "`..`"));
        }
        pos += 1;
        let hi_col = at(pos);
        let hi = match toks.get(pos).map(|t| &t.tok) {
            Some(Tok::Int(_)) | Some(Tok::Minus) => Some(int(&mut pos)?),
            _ => None,
        };
        if let Some(hi) = hi {
            if hi < lo {
                return Err(ParseError::new(line, hi_col, ParseErrorKind::EmptyRange { lo, hi }));
            }
        }
        out.push(ParamRange { name, lo, hi });
        match toks.get(pos).map(|t| &t.tok) {
            None => break,
            Some(Tok::Comma) => pos += 1,
            Some(_) => return Err(unexpected(pos, "`,` or end of line")),
        }
    }
    if out.len() > 2 {
        return Err(ParseError::new(line, start_col, ParseErrorKind::TooManyParameters(out.len())));
    }
    Ok(out)
}
