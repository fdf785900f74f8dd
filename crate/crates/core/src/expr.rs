//! Word expressions: the shared syntax of word literals and relator schemas.
//!
//! ```text
//! atom      := name | name[affine]
//! factor    := atom ('^' affine)? | '(' word-expr ')' ('^' affine)? | '[' word-expr ',' word-expr ']' ('^' affine)?
//! word-expr := factor (('*' | whitespace) factor)*
//! affine    := ('-')? term (('+' | '-') term)*
//! term      := integer | param | integer '*' param
//! ```
//!
//! An index bracket must touch its name (`a[1]`); a detached `[` opens a
//! commutator. In exponents `2*s` is a product only when `s` is a declared
//! parameter, so `x^2*y` still reads as `x^2 · y`.

use alloc::boxed::Box;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use thiserror::Error;

use crate::word::{Alphabet, Letter, Word};

/// Exponents beyond this are rejected at evaluation.
pub const MAX_EXPONENT: i64 = 1 << 20;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}, column {column}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("unexpected character `{0}`")]
    UnexpectedChar(char),
    #[error("expected {expected}, found {found}")]
    Unexpected {
        expected: &'static str,
        found: String,
    },
    #[error("undeclared generator `{0}`")]
    UndeclaredGenerator(String),
    #[error("undeclared parameter `{0}`")]
    UndeclaredParameter(String),
    #[error("generator `{0}` needs an index")]
    IndexRequired(String),
    #[error("generator `{0}` takes no index")]
    UnexpectedIndex(String),
    #[error("generator index {0} is below 1")]
    IndexOutOfRange(i64),
    #[error("integer literal out of range")]
    IntegerOverflow,
    #[error("exponent {0} out of range")]
    ExponentOutOfRange(i64),
    #[error("empty relator")]
    EmptyRelator,
    #[error("at most 2 parameters per relator, found {0}")]
    TooManyParameters(usize),
    #[error("parameter `{0}` declared twice")]
    DuplicateParameter(String),
    #[error("parameter `{0}` clashes with a generator name")]
    ParameterShadowsGenerator(String),
    #[error("empty range {lo}..{hi}")]
    EmptyRange { lo: i64, hi: i64 },
    #[error("{0}")]
    Header(String),
}

impl ParseError {
    pub(crate) fn new(line: usize, column: usize, kind: ParseErrorKind) -> Self {
        ParseError { line, column, kind }
    }
}

/// `c₀ + Σ cᵢ·pᵢ` over named integer parameters.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AffineExpr {
    /// Sorted by name, no zero coefficients.
    terms: Vec<(String, i64)>,
    constant: i64,
}

impl AffineExpr {
    pub fn constant(c: i64) -> Self {
        AffineExpr {
            terms: Vec::new(),
            constant: c,
        }
    }

    pub fn param(name: &str) -> Self {
        Self::linear(&[(name, 1)], 0)
    }

    pub fn linear(terms: &[(&str, i64)], constant: i64) -> Self {
        let mut e = Self::constant(constant);
        for &(name, c) in terms {
            e.add_term(name, c);
        }
        e
    }

    fn add_term(&mut self, name: &str, coefficient: i64) {
        match self.terms.binary_search_by(|(n, _)| n.as_str().cmp(name)) {
            Ok(k) => {
                self.terms[k].1 += coefficient;
                if self.terms[k].1 == 0 {
                    self.terms.remove(k);
                }
            }
            Err(k) if coefficient != 0 => self.terms.insert(k, (name.to_string(), coefficient)),
            Err(_) => {}
        }
    }

    pub fn as_constant(&self) -> Option<i64> {
        self.terms.is_empty().then_some(self.constant)
    }

    pub fn params(&self) -> impl Iterator<Item = &str> {
        self.terms.iter().map(|(n, _)| n.as_str())
    }

    /// Evaluates at the given parameter values; `None` if a parameter is unbound
    /// or the arithmetic overflows.
    pub fn eval(&self, env: &[(&str, i64)]) -> Option<i64> {
        self.terms.iter().try_fold(self.constant, |acc, (name, c)| {
            let v = env.iter().find(|(n, _)| n == name)?.1;
            acc.checked_add(c.checked_mul(v)?)
        })
    }
}

impl fmt::Display for AffineExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, (name, c)) in self.terms.iter().enumerate() {
            match (*c, k) {
                (1, 0) => write!(f, "{name}")?,
                (1, _) => write!(f, "+{name}")?,
                (-1, _) => write!(f, "-{name}")?,
                (c, 0) => write!(f, "{c}*{name}")?,
                (c, _) if c > 0 => write!(f, "+{c}*{name}")?,
                (c, _) => write!(f, "-{}*{name}", c.unsigned_abs())?,
            }
        }
        match (self.constant, self.terms.is_empty()) {
            (c, true) => write!(f, "{c}"),
            (0, false) => Ok(()),
            (c, false) if c > 0 => write!(f, "+{c}"),
            (c, false) => write!(f, "{c}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum GeneratorRef {
    /// A symbol of a finite alphabet, by generator id.
    Fixed(u32),
    /// A member of the indexed family.
    Indexed(AffineExpr),
}

/// One generator raised to a (possibly parametrized) exponent.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SchemaAtom {
    pub generator: GeneratorRef,
    pub exponent: AffineExpr,
}

/// Expression tree of a relator body.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum SchemaExpr {
    Atom(SchemaAtom),
    Product(Vec<SchemaExpr>),
    /// A bracketed group with exponent; `(u)` alone has exponent 1.
    Power(Box<SchemaExpr>, AffineExpr),
    /// `[u, v] = u⁻¹ v⁻¹ u v`.
    Commutator(Box<SchemaExpr>, Box<SchemaExpr>),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EvalError {
    #[error("parameter `{0}` is unbound or overflows")]
    Unbound(String),
    #[error("generator index {0} is out of range")]
    IndexOutOfRange(i64),
    #[error("exponent {0} out of range")]
    ExponentOutOfRange(i64),
}

fn eval_affine(e: &AffineExpr, env: &[(&str, i64)]) -> Result<i64, EvalError> {
    e.eval(env).ok_or_else(|| {
        let name = e
            .params()
            .find(|p| !env.iter().any(|(n, _)| n == p))
            .unwrap_or("?");
        EvalError::Unbound(name.to_string())
    })
}

fn check_exponent(n: i64) -> Result<i64, EvalError> {
    if n.abs() > MAX_EXPONENT {
        Err(EvalError::ExponentOutOfRange(n))
    } else {
        Ok(n)
    }
}

impl SchemaExpr {
    /// Evaluates to a freely reduced word.
    pub fn eval(&self, env: &[(&str, i64)]) -> Result<Word, EvalError> {
        match self {
            SchemaExpr::Atom(atom) => {
                let g = match &atom.generator {
                    GeneratorRef::Fixed(g) => *g,
                    GeneratorRef::Indexed(index) => {
                        let i = eval_affine(index, env)?;
                        if !(1..=i64::from(i32::MAX)).contains(&i) {
                            return Err(EvalError::IndexOutOfRange(i));
                        }
                        i as u32
                    }
                };
                let n = check_exponent(eval_affine(&atom.exponent, env)?)?;
                Ok(Word::from_letter(Letter::pos(g)).pow(n))
            }
            SchemaExpr::Product(factors) => factors
                .iter()
                .try_fold(Word::identity(), |acc, f| Ok(acc.multiply(&f.eval(env)?))),
            SchemaExpr::Power(inner, exponent) => {
                let n = check_exponent(eval_affine(exponent, env)?)?;
                Ok(inner.eval(env)?.pow(n))
            }
            SchemaExpr::Commutator(u, v) => Ok(Word::commutator(&u.eval(env)?, &v.eval(env)?)),
        }
    }

    pub fn params(&self) -> Vec<String> {
        let mut out = Vec::new();
        self.collect_params(&mut out);
        out
    }

    fn collect_params(&self, out: &mut Vec<String>) {
        let add = |e: &AffineExpr, out: &mut Vec<String>| {
            for p in e.params() {
                if !out.iter().any(|q| q == p) {
                    out.push(p.to_string());
                }
            }
        };
        match self {
            SchemaExpr::Atom(atom) => {
                if let GeneratorRef::Indexed(i) = &atom.generator {
                    add(i, out);
                }
                add(&atom.exponent, out);
            }
            SchemaExpr::Product(fs) => fs.iter().for_each(|f| f.collect_params(out)),
            SchemaExpr::Power(inner, e) => {
                inner.collect_params(out);
                add(e, out);
            }
            SchemaExpr::Commutator(u, v) => {
                u.collect_params(out);
                v.collect_params(out);
            }
        }
    }

    /// Renders in the syntax accepted by the parser.
    pub fn render(&self, alphabet: &Alphabet) -> String {
        let mut s = String::new();
        self.render_into(alphabet, &mut s);
        s
    }

    fn render_into(&self, alphabet: &Alphabet, out: &mut String) {
        use core::fmt::Write;
        match self {
            SchemaExpr::Atom(atom) => {
                match (&atom.generator, alphabet) {
                    (GeneratorRef::Fixed(g), _) => {
                        out.push_str(&alphabet.symbol(*g).unwrap_or_else(|| "?".into()))
                    }
                    (GeneratorRef::Indexed(i), Alphabet::Indexed(base)) => {
                        let _ = write!(out, "{base}[{i}]");
                    }
                    (GeneratorRef::Indexed(i), Alphabet::Finite(_)) => {
                        let _ = write!(out, "?[{i}]");
                    }
                }
                if atom.exponent != AffineExpr::constant(1) {
                    let _ = write!(out, "^{}", atom.exponent);
                }
            }
            SchemaExpr::Product(fs) => {
                for (k, f) in fs.iter().enumerate() {
                    if k > 0 {
                        out.push(' ');
                    }
                    f.render_into(alphabet, out);
                }
            }
            SchemaExpr::Power(inner, e) => {
                out.push('(');
                inner.render_into(alphabet, out);
                out.push(')');
                if *e != AffineExpr::constant(1) {
                    let _ = write!(out, "^{e}");
                }
            }
            SchemaExpr::Commutator(u, v) => {
                out.push('[');
                u.render_into(alphabet, out);
                out.push_str(", ");
                v.render_into(alphabet, out);
                out.push(']');
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) enum Tok {
    Ident(String),
    Int(i64),
    LBrack,
    RBrack,
    LParen,
    RParen,
    Caret,
    Star,
    Comma,
    Plus,
    Minus,
    DotDot,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident(s) => write!(f, "`{s}`"),
            Tok::Int(n) => write!(f, "`{n}`"),
            Tok::LBrack => f.write_str("`[`"),
            Tok::RBrack => f.write_str("`]`"),
            Tok::LParen => f.write_str("`(`"),
            Tok::RParen => f.write_str("`)`"),
            Tok::Caret => f.write_str("`^`"),
            Tok::Star => f.write_str("`*`"),
            Tok::Comma => f.write_str("`,`"),
            Tok::Plus => f.write_str("`+`"),
            Tok::Minus => f.write_str("`-`"),
            Tok::DotDot => f.write_str("`..`"),
        }
    }
}

#[derive(Clone, Debug)]
pub(crate) struct Token {
    pub tok: Tok,
    /// 1-based column of the first character.
    pub column: usize,
    /// Column one past the last character.
    pub end: usize,
}

/// Splits one line into tokens. `column_offset` is the column of `text[0]`.
pub(crate) fn tokenize(text: &str, line: usize, column_offset: usize) -> Result<Vec<Token>, ParseError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let column = column_offset + i;
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        let start = i;
        let tok = if c.is_ascii_alphabetic() || c == '_' {
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            Tok::Ident(chars[start..i].iter().collect())
        } else if c.is_ascii_digit() {
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let digits: String = chars[start..i].iter().collect();
            let n = digits
                .parse::<i64>()
                .map_err(|_| ParseError::new(line, column, ParseErrorKind::IntegerOverflow))?;
            Tok::Int(n)
        } else {
            i += 1;
            match c {
                '[' => Tok::LBrack,
                ']' => Tok::RBrack,
                '(' => Tok::LParen,
                ')' => Tok::RParen,
                '^' => Tok::Caret,
                '*' => Tok::Star,
                ',' => Tok::Comma,
                '+' => Tok::Plus,
                '-' => Tok::Minus,
                '.' if chars.get(i) == Some(&'.') => {
                    i += 1;
                    Tok::DotDot
                }
                other => {
                    return Err(ParseError::new(line, column, ParseErrorKind::UnexpectedChar(other)))
                }
            }
        };
        out.push(Token {
            tok,
            column,
            end: column_offset + i,
        });
    }
    Ok(out)
}

/// Recursive-descent parser over one line's tokens.
pub(crate) struct Parser<'a> {
    tokens: &'a [Token],
    pos: usize,
    line: usize,
    /// Column reported for errors at end of input.
    eol: usize,
    alphabet: &'a Alphabet,
    params: &'a [String],
}

impl<'a> Parser<'a> {
    pub fn new(tokens: &'a [Token], line: usize, eol: usize, alphabet: &'a Alphabet, params: &'a [String]) -> Self {
        Parser {
            tokens,
            pos: 0,
            line,
            eol,
            alphabet,
            params,
        }
    }

    fn peek(&self) -> Option<&'a Tok> {
        self.tokens.get(self.pos).map(|t| &t.tok)
    }

    fn peek_at(&self, k: usize) -> Option<&'a Tok> {
        self.tokens.get(self.pos + k).map(|t| &t.tok)
    }

    fn column(&self) -> usize {
        self.tokens.get(self.pos).map_or(self.eol, |t| t.column)
    }

    pub fn error(&self, kind: ParseErrorKind) -> ParseError {
        ParseError::new(self.line, self.column(), kind)
    }

    fn unexpected(&self, expected: &'static str) -> ParseError {
        let found = self
            .peek()
            .map_or_else(|| "end of line".to_string(), |t| t.to_string());
        self.error(ParseErrorKind::Unexpected { expected, found })
    }

    fn expect(&mut self, tok: Tok, expected: &'static str) -> Result<(), ParseError> {
        if self.peek() == Some(&tok) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.unexpected(expected))
        }
    }

    pub fn at_end(&self) -> bool {
        self.pos >= self.tokens.len()
    }

    fn is_param(&self, name: &str) -> bool {
        self.params.iter().any(|p| p == name)
    }

    fn starts_factor(&self) -> bool {
        matches!(
            self.peek(),
            Some(Tok::Ident(_)) | Some(Tok::LParen) | Some(Tok::LBrack)
        )
    }

    /// Parses a whole line as a word expression.
    pub fn parse_all(&mut self) -> Result<SchemaExpr, ParseError> {
        if self.at_end() {
            return Err(self.error(ParseErrorKind::EmptyRelator));
        }
        let e = self.word_expr()?;
        if !self.at_end() {
            return Err(self.unexpected("a factor"));
        }
        Ok(e)
    }

    fn word_expr(&mut self) -> Result<SchemaExpr, ParseError> {
        let mut factors = alloc::vec![self.factor()?];
        loop {
            if self.peek() == Some(&Tok::Star) {
                self.pos += 1;
                factors.push(self.factor()?);
            } else if self.starts_factor() {
                factors.push(self.factor()?);
            } else {
                break;
            }
        }
        Ok(if factors.len() == 1 {
            factors.pop().unwrap()
        } else {
            SchemaExpr::Product(factors)
        })
    }

    fn factor(&mut self) -> Result<SchemaExpr, ParseError> {
        match self.peek() {
            Some(Tok::Ident(_)) => {
                let generator = self.generator()?;
                let exponent = self.exponent()?.unwrap_or_else(|| AffineExpr::constant(1));
                Ok(SchemaExpr::Atom(SchemaAtom { generator, exponent }))
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let inner = self.word_expr()?;
                self.expect(Tok::RParen, "`)`")?;
                let e = self.exponent()?.unwrap_or_else(|| AffineExpr::constant(1));
                Ok(SchemaExpr::Power(Box::new(inner), e))
            }
            Some(Tok::LBrack) => {
                self.pos += 1;
                let u = self.word_expr()?;
                self.expect(Tok::Comma, "`,`")?;
                let v = self.word_expr()?;
                self.expect(Tok::RBrack, "`]`")?;
                let c = SchemaExpr::Commutator(Box::new(u), Box::new(v));
                Ok(match self.exponent()? {
                    Some(e) => SchemaExpr::Power(Box::new(c), e),
                    None => c,
                })
            }
            _ => Err(self.unexpected("a generator, `(` or `[`")),
        }
    }

    fn generator(&mut self) -> Result<GeneratorRef, ParseError> {
        let name = match self.peek() {
            Some(Tok::Ident(n)) => n,
            _ => return Err(self.unexpected("a generator")),
        };
        let name_tok = &self.tokens[self.pos];
        let indexed = matches!(self.tokens.get(self.pos + 1), Some(t) if t.tok == Tok::LBrack && t.column == name_tok.end);
        match self.alphabet {
            Alphabet::Finite(_) => {
                let g = self
                    .alphabet
                    .resolve(name)
                    .ok_or_else(|| self.error(ParseErrorKind::UndeclaredGenerator(name.clone())))?;
                if indexed {
                    return Err(self.error(ParseErrorKind::UnexpectedIndex(name.clone())));
                }
                self.pos += 1;
                Ok(GeneratorRef::Fixed(g))
            }
            Alphabet::Indexed(base) => {
                if name != base {
                    return Err(self.error(ParseErrorKind::UndeclaredGenerator(name.clone())));
                }
                if !indexed {
                    return Err(self.error(ParseErrorKind::IndexRequired(name.clone())));
                }
                self.pos += 2;
                let col = self.column();
                let index = self.affine()?;
                if let Some(i) = index.as_constant() {
                    if i < 1 {
                        return Err(ParseError::new(self.line, col, ParseErrorKind::IndexOutOfRange(i)));
                    }
                }
                self.expect(Tok::RBrack, "`]`")?;
                Ok(GeneratorRef::Indexed(index))
            }
        }
    }

    fn exponent(&mut self) -> Result<Option<AffineExpr>, ParseError> {
        if self.peek() != Some(&Tok::Caret) {
            return Ok(None);
        }
        self.pos += 1;
        self.affine().map(Some)
    }

    fn affine(&mut self) -> Result<AffineExpr, ParseError> {
        let mut e = AffineExpr::constant(0);
        let mut sign = 1i64;
        match self.peek() {
            Some(Tok::Minus) => {
                sign = -1;
                self.pos += 1;
            }
            Some(Tok::Plus) => self.pos += 1,
            _ => {}
        }
        self.term(&mut e, sign)?;
        loop {
            let sign = match self.peek() {
                Some(Tok::Plus) => 1,
                Some(Tok::Minus) => -1,
                _ => break,
            };
            self.pos += 1;
            self.term(&mut e, sign)?;
        }
        Ok(e)
    }

    fn term(&mut self, e: &mut AffineExpr, sign: i64) -> Result<(), ParseError> {
        match self.peek() {
            Some(Tok::Int(n)) => {
                let n = *n;
                self.pos += 1;
                let coeff_param = match (self.peek(), self.peek_at(1)) {
                    (Some(Tok::Star), Some(Tok::Ident(p))) if self.is_param(p) => Some(p),
                    _ => None,
                };
                if let Some(p) = coeff_param {
                    self.pos += 2;
                    e.add_term(p, sign * n);
                } else {
                    e.constant = e
                        .constant
                        .checked_add(sign * n)
                        .ok_or_else(|| self.error(ParseErrorKind::IntegerOverflow))?;
                }
                Ok(())
            }
            Some(Tok::Ident(p)) => {
                if !self.is_param(p) {
                    return Err(self.error(ParseErrorKind::UndeclaredParameter(p.clone())));
                }
                self.pos += 1;
                e.add_term(p, sign);
                Ok(())
            }
            _ => Err(self.unexpected("an integer or parameter")),
        }
    }
}

/// Parses and evaluates a parameter-free word expression.
pub(crate) fn parse_word(alphabet: &Alphabet, text: &str) -> Result<Word, ParseError> {
    let tokens = tokenize(text, 1, 1)?;
    let eol = text.chars().count() + 1;
    let expr = Parser::new(&tokens, 1, eol, alphabet, &[]).parse_all()?;
    expr.eval(&[]).map_err(|e| {
        let kind = match e {
            EvalError::IndexOutOfRange(i) => ParseErrorKind::IndexOutOfRange(i),
            EvalError::ExponentOutOfRange(n) => ParseErrorKind::ExponentOutOfRange(n),
            EvalError::Unbound(p) => ParseErrorKind::UndeclaredParameter(p),
        };
        ParseError::new(1, 1, kind)
    })
}
