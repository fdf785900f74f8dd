//! Free group arithmetic.
//!
//! A [`Word`] is a freely reduced sequence of [`Letter`]s. Letters refer to
//! generators by a positive id; how ids map to names is the business of an
//! [`Alphabet`]. For a finite alphabet the id is the 1-based position of the
//! symbol, for an indexed family `a[*]` the id is the index itself.

use alloc::borrow::Cow;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;
use core::ops::Mul;

use thiserror::Error;

use crate::expr::{self, ParseError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WordError {
    #[error("generator id {0} is not part of the alphabet")]
    AlphabetMismatch(u32),
    #[error("no image given for generator {0}")]
    MissingImage(String),
    #[error("duplicate symbol `{0}` in alphabet")]
    DuplicateSymbol(String),
    #[error("invalid symbol name `{0}`")]
    InvalidSymbol(String),
    #[error("empty alphabet")]
    EmptyAlphabet,
}

/// A generator or its inverse.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter(i32);

impl Letter {
    /// Panics if `generator` is zero or exceeds `i32::MAX`.
    pub fn new(generator: u32, inverse: bool) -> Self {
        assert!(generator >= 1, "generator ids start at 1");
        let g = i32::try_from(generator).expect("generator id out of range");
        Letter(if inverse { -g } else { g })
    }

    pub const fn pos(generator: u32) -> Self {
        Letter(generator as i32)
    }

    pub const fn neg(generator: u32) -> Self {
        Letter(-(generator as i32))
    }

    pub fn generator(self) -> u32 {
        self.0.unsigned_abs()
    }

    /// +1 or -1.
    pub fn sign(self) -> i32 {
        self.0.signum()
    }

    pub fn is_inverse(self) -> bool {
        self.0 < 0
    }

    #[must_use]
    pub fn inverse(self) -> Self {
        Letter(-self.0)
    }
}

impl fmt::Debug for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_inverse() {
            write!(f, "g{}^-1", self.generator())
        } else {
            write!(f, "g{}", self.generator())
        }
    }
}

/// `x` and `y`, the generators of the rank 2 free group over [`Alphabet::f2`].
pub const X: Letter = Letter::pos(1);
pub const Y: Letter = Letter::pos(2);

/// A freely reduced word. The empty word is the identity.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word {
    letters: Vec<Letter>,
}

impl Word {
    pub fn identity() -> Self {
        Word::default()
    }

    pub fn from_letter(letter: Letter) -> Self {
        Word {
            letters: alloc::vec![letter],
        }
    }

    /// Freely reduces an arbitrary letter sequence.
    pub fn reduce<I: IntoIterator<Item = Letter>>(letters: I) -> Self {
        let mut out: Vec<Letter> = Vec::new();
        for l in letters {
            push_reduced(&mut out, l);
        }
        Word { letters: out }
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn multiply(&self, other: &Word) -> Word {
        let mut out = self.letters.clone();
        out.reserve(other.len());
        for &l in &other.letters {
            push_reduced(&mut out, l);
        }
        Word { letters: out }
    }

    pub fn inverse(&self) -> Word {
        Word {
            letters: self.letters.iter().rev().map(|l| l.inverse()).collect(),
        }
    }

    /// `g⁻¹ · self · g`.
    pub fn conjugate(&self, g: &Word) -> Word {
        g.inverse().multiply(self).multiply(g)
    }

    pub fn pow(&self, n: i64) -> Word {
        let base = if n < 0 { self.inverse() } else { self.clone() };
        let mut out = Word::identity();
        for _ in 0..n.unsigned_abs() {
            out = out.multiply(&base);
        }
        out
    }

    /// `[u, v] = u⁻¹ v⁻¹ u v`.
    pub fn commutator(u: &Word, v: &Word) -> Word {
        u.inverse().multiply(&v.inverse()).multiply(u).multiply(v)
    }

    /// Splits `self` as `conjugator⁻¹ · core · conjugator` with `core` cyclically
    /// reduced.
    pub fn cyclically_reduce(&self) -> (Word, Word) {
        let l = &self.letters;
        let mut k = 0;
        while k < l.len() / 2 && l[k] == l[l.len() - 1 - k].inverse() {
            k += 1;
        }
        let core = Word {
            letters: l[k..l.len() - k].to_vec(),
        };
        let conjugator = Word {
            letters: l[l.len() - k..].to_vec(),
        };
        (core, conjugator)
    }

    /// True iff `self` and `other` are conjugate-by-rotation: their cyclic cores
    /// agree up to a cyclic shift.
    pub fn cyclically_equal(&self, other: &Word) -> bool {
        let (a, _) = self.cyclically_reduce();
        let (b, _) = other.cyclically_reduce();
        if a.len() != b.len() {
            return false;
        }
        if a.is_empty() {
            return true;
        }
        (0..a.len()).any(|s| {
            a.letters[s..]
                .iter()
                .chain(&a.letters[..s])
                .eq(b.letters.iter())
        })
    }

    /// Applies the homomorphism sending each generator to its image.
    pub fn substitute<'a, F>(&self, mut image: F) -> Result<Word, u32>
    where
        F: FnMut(u32) -> Option<Cow<'a, Word>>,
    {
        let mut out: Vec<Letter> = Vec::new();
        for &l in &self.letters {
            let img = image(l.generator()).ok_or(l.generator())?;
            if l.is_inverse() {
                for &m in img.letters.iter().rev() {
                    push_reduced(&mut out, m.inverse());
                }
            } else {
                for &m in img.letters.iter() {
                    push_reduced(&mut out, m);
                }
            }
        }
        Ok(Word { letters: out })
    }

    /// Exponent sum of every generator id in `1..=n`.
    pub fn exponent_sums(&self, n: usize) -> Vec<i64> {
        let mut sums = alloc::vec![0i64; n];
        for l in &self.letters {
            let g = l.generator() as usize;
            if (1..=n).contains(&g) {
                sums[g - 1] += i64::from(l.sign());
            }
        }
        sums
    }

    pub fn max_generator(&self) -> u32 {
        self.letters.iter().map(|l| l.generator()).max().unwrap_or(0)
    }
}

fn push_reduced(out: &mut Vec<Letter>, l: Letter) {
    if out.last() == Some(&l.inverse()) {
        out.pop();
    } else {
        out.push(l);
    }
}

impl Mul for &Word {
    type Output = Word;
    fn mul(self, rhs: &Word) -> Word {
        self.multiply(rhs)
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(&self.letters).finish()
    }
}

impl FromIterator<Letter> for Word {
    fn from_iter<I: IntoIterator<Item = Letter>>(iter: I) -> Self {
        Word::reduce(iter)
    }
}

/// The symbols a word may draw its letters from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Alphabet {
    /// Named symbols; generator id `k` is `symbols[k - 1]`.
    Finite(Vec<String>),
    /// `base[1], base[2], …`; generator id is the index.
    Indexed(String),
}

pub(crate) fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
        && s != "for"
        && s != "in"
}

impl Alphabet {
    pub fn finite<S: AsRef<str>>(symbols: &[S]) -> Result<Self, WordError> {
        if symbols.is_empty() {
            return Err(WordError::EmptyAlphabet);
        }
        let mut names: Vec<String> = Vec::with_capacity(symbols.len());
        for s in symbols {
            let s = s.as_ref();
            if !is_identifier(s) {
                return Err(WordError::InvalidSymbol(s.to_string()));
            }
            if names.iter().any(|n| n == s) {
                return Err(WordError::DuplicateSymbol(s.to_string()));
            }
            names.push(s.to_string());
        }
        Ok(Alphabet::Finite(names))
    }

    pub fn indexed(base: &str) -> Result<Self, WordError> {
        if !is_identifier(base) {
            return Err(WordError::InvalidSymbol(base.to_string()));
        }
        Ok(Alphabet::Indexed(base.to_string()))
    }

    /// `{x, y}`.
    pub fn f2() -> Self {
        Alphabet::Finite(alloc::vec!["x".into(), "y".into()])
    }

    /// `{a, b}`, the alphabet of the classical comparison words.
    pub fn ab() -> Self {
        Alphabet::Finite(alloc::vec!["a".into(), "b".into()])
    }

    pub fn contains(&self, generator: u32) -> bool {
        match self {
            Alphabet::Finite(names) => (1..=names.len()).contains(&(generator as usize)),
            Alphabet::Indexed(_) => generator >= 1,
        }
    }

    /// Number of generators, `None` for an indexed family.
    pub fn rank(&self) -> Option<usize> {
        match self {
            Alphabet::Finite(names) => Some(names.len()),
            Alphabet::Indexed(_) => None,
        }
    }

    /// Looks up a finite symbol by name.
    pub fn resolve(&self, name: &str) -> Option<u32> {
        match self {
            Alphabet::Finite(names) => names.iter().position(|n| n == name).map(|p| p as u32 + 1),
            Alphabet::Indexed(_) => None,
        }
    }

    pub fn symbol(&self, generator: u32) -> Option<String> {
        match self {
            Alphabet::Finite(names) => names.get((generator as usize).checked_sub(1)?).cloned(),
            Alphabet::Indexed(base) if generator >= 1 => Some(alloc::format!("{base}[{generator}]")),
            Alphabet::Indexed(_) => None,
        }
    }

    pub fn check(&self, word: &Word) -> Result<(), WordError> {
        match word.letters().iter().find(|l| !self.contains(l.generator())) {
            Some(l) => Err(WordError::AlphabetMismatch(l.generator())),
            None => Ok(()),
        }
    }

    /// Validating version of [`Word::reduce`].
    pub fn reduce<I: IntoIterator<Item = Letter>>(&self, letters: I) -> Result<Word, WordError> {
        let w = Word::reduce(letters);
        self.check(&w)?;
        Ok(w)
    }

    /// Parses a parameter-free word expression such as `x*y^-1` or
    /// `[a[1], a[2]] (a[3])^2`.
    pub fn parse_word(&self, text: &str) -> Result<Word, ParseError> {
        expr::parse_word(self, text)
    }

    /// Display adapter: compact whitespace-separated form `x y^-1 x^-1`.
    pub fn display<'a>(&'a self, word: &'a Word) -> WordDisplay<'a> {
        WordDisplay {
            alphabet: self,
            word,
            separator: " ",
        }
    }

    /// Display adapter using `*` between factors, `x*y^-1*x^-1`.
    pub fn display_starred<'a>(&'a self, word: &'a Word) -> WordDisplay<'a> {
        WordDisplay {
            alphabet: self,
            word,
            separator: "*",
        }
    }
}

/// Runs of equal letters collapse into one `^n` factor. The identity renders as `1`.
pub struct WordDisplay<'a> {
    alphabet: &'a Alphabet,
    word: &'a Word,
    separator: &'a str,
}

impl fmt::Display for WordDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.word.is_empty() {
            return f.write_str("1");
        }
        for (k, (letter, run)) in runs(self.word.letters()).enumerate() {
            if k > 0 {
                f.write_str(self.separator)?;
            }
            let name = self
                .alphabet
                .symbol(letter.generator())
                .unwrap_or_else(|| alloc::format!("?{}", letter.generator()));
            let exp = i64::from(letter.sign()) * run as i64;
            if exp == 1 {
                write!(f, "{name}")?;
            } else {
                write!(f, "{name}^{exp}")?;
            }
        }
        Ok(())
    }
}

/// Maximal runs of a repeated letter.
pub fn runs(letters: &[Letter]) -> impl Iterator<Item = (Letter, usize)> + '_ {
    let mut i = 0;
    core::iter::from_fn(move || {
        let first = *letters.get(i)?;
        let start = i;
        while letters.get(i) == Some(&first) {
            i += 1;
        }
        Some((first, i - start))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn f2(s: &str) -> Word {
        Alphabet::f2().parse_word(s).unwrap()
    }

    // Stack-free reducer: repeatedly delete the first cancelling pair.
    fn naive_reduce(mut v: Vec<Letter>) -> Vec<Letter> {
        loop {
            let pos = v.windows(2).position(|p| p[0] == p[1].inverse());
            match pos {
                Some(i) => {
                    v.drain(i..i + 2);
                }
                None => return v,
            }
        }
    }

    #[test]
    fn reduce_examples() {
        let (x, y) = (X, Y);
        assert!(Word::reduce([x, x.inverse()]).is_empty());
        let w = Word::reduce([x, y, y.inverse(), x]);
        assert_eq!(w.letters(), &[x, x]);
    }

    #[test]
    fn reduce_expanded_universal_word() {
        // y^{(xy)^2 x^-1} y^{-x} written out piece by piece:
        // x y⁻¹x⁻¹y⁻¹x⁻¹ · y · xyxy · x⁻¹ · x⁻¹y⁻¹x
        let literal: Vec<Letter> = [
            "x y^-1 x^-1 y^-1 x^-1",
            "y",
            "x y x y",
            "x^-1",
            "x^-1 y^-1 x",
        ]
        .iter()
        .flat_map(|s| f2(s).letters().to_vec())
        .collect();
        let expected = [X, Y.inverse(), X.inverse(), Y.inverse(), X.inverse(), Y, X, Y, X, Y]
            .into_iter()
            .chain([X.inverse(), X.inverse(), Y.inverse(), X])
            .collect::<Vec<_>>();
        assert_eq!(naive_reduce(literal.clone()), expected);
        assert_eq!(Word::reduce(literal).letters(), &expected[..]);

        // conjugator and conjugate inverse written without pre-cancellation
        let g = vec![X, Y, X, Y, X.inverse()];
        let mut long: Vec<Letter> = g.iter().rev().map(|l| l.inverse()).collect();
        long.push(Y);
        long.extend(&g);
        long.extend([Y.inverse(), Y, X.inverse(), Y.inverse(), X]);
        assert_eq!(long.len(), 16);
        assert_eq!(naive_reduce(long.clone()), expected);
        assert_eq!(Word::reduce(long).len(), 14);
    }

    #[test]
    fn multiply_examples() {
        assert!(f2("x").multiply(&f2("x^-1")).is_empty());
        assert_eq!(f2("x y").multiply(&f2("y^-1 x")), f2("x x"));
    }

    #[test]
    fn invert_examples() {
        assert!(Word::identity().inverse().is_empty());
        assert_eq!(f2("x y").inverse(), f2("y^-1 x^-1"));
    }

    #[test]
    fn conjugate_examples() {
        assert_eq!(f2("y").conjugate(&Word::identity()), f2("y"));
        assert_eq!(f2("y").conjugate(&f2("x")), f2("x^-1 y x"));
        assert_eq!(f2("y").conjugate(&f2("x^-1")), f2("x y x^-1"));
    }

    #[test]
    fn power_examples() {
        assert_eq!(f2("x").pow(3), f2("x x x"));
        assert_eq!(f2("x y^-1").pow(-1), f2("y x^-1"));
        assert!(f2("x y").pow(0).is_empty());
        let g = f2("x y x^-1 y^2");
        for i in -4..=4 {
            assert_eq!(f2("y").conjugate(&g).pow(i), f2("y").pow(i).conjugate(&g));
        }
    }

    #[test]
    fn substitute_examples() {
        let a = Alphabet::indexed("a").unwrap();
        let imgs = [f2("x"), f2("y")];
        let lookup = |g: u32| imgs.get(g as usize - 1).map(Cow::Borrowed);
        assert!(Word::identity().substitute(lookup).unwrap().is_empty());
        let w = a.parse_word("a[1] a[2]").unwrap();
        assert_eq!(w.substitute(lookup).unwrap(), f2("x y"));
        let w = a.parse_word("a[3]").unwrap();
        assert_eq!(w.substitute(lookup), Err(3));
    }

    #[test]
    fn cyclic_reduction() {
        let (core, conj) = f2("x^-1 y x").cyclically_reduce();
        assert_eq!((core, conj), (f2("y"), f2("x")));
        let (core, conj) = Word::identity().cyclically_reduce();
        assert!(core.is_empty() && conj.is_empty());
        let c = f2("x y x^-1 y^-1");
        assert_eq!(c.cyclically_reduce(), (c.clone(), Word::identity()));
        let w = f2("x^-2 y x y^-1 x^2");
        let (core, conj) = w.cyclically_reduce();
        assert_eq!(core.conjugate(&conj), w);
        assert!(f2("x y x^-1 y^-1").cyclically_equal(&f2("y^-1 x y x^-1")));
        assert!(!f2("x y").cyclically_equal(&f2("x y^-1")));
    }

    #[test]
    fn alphabet_validation() {
        assert_eq!(
            Alphabet::finite(&["x", "x"]),
            Err(WordError::DuplicateSymbol("x".into()))
        );
        assert!(Alphabet::finite::<&str>(&[]).is_err());
        let f = Alphabet::f2();
        assert_eq!(
            f.reduce([Letter::pos(3)]),
            Err(WordError::AlphabetMismatch(3))
        );
        assert!(Alphabet::indexed("a").unwrap().contains(1_000_000));
    }

    #[test]
    fn display_forms() {
        let f = Alphabet::f2();
        let w = f2("x y^-1 y^-1 x^-1");
        assert_eq!(f.display(&w).to_string(), "x y^-2 x^-1");
        assert_eq!(f.display_starred(&w).to_string(), "x*y^-2*x^-1");
        assert_eq!(f.display(&Word::identity()).to_string(), "1");
        let a = Alphabet::indexed("a").unwrap();
        let w = a.parse_word("a[2]^3 a[1]^-1").unwrap();
        assert_eq!(a.display(&w).to_string(), "a[2]^3 a[1]^-1");
    }
}
