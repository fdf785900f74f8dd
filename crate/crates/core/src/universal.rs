//! Universal words in `F₂ = ⟨x, y⟩` and the auxiliary words they are built from.
//!
//! With `a = y^x`, `z = y^{x⁻¹}` and `tᵢ = yⁱ x yⁱ x⁻¹`:
//!
//! * general:      `aᵢ = y^{(x yⁱ)² x⁻¹} · y^{-x}`
//! * torsion-free: `āᵢ = y^{(x yⁱ)² x⁻¹} = a^{tᵢ}`
//!
//! Both are produced by expanding the defining expression and reducing; the
//! expanded closed form of `aᵢ` is kept separately so the two routes can be
//! compared.

use alloc::vec::Vec;
use core::fmt;

use thiserror::Error;

use crate::embed::EmbeddingMode;
use crate::word::{Letter, Word, X, Y};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("index {0} is below 1")]
pub struct DomainError(pub u32);

fn check(i: u32) -> Result<i64, DomainError> {
    if i == 0 {
        Err(DomainError(i))
    } else {
        Ok(i64::from(i))
    }
}

fn x() -> Word {
    Word::from_letter(X)
}

fn y() -> Word {
    Word::from_letter(Y)
}

/// `a(x, y) = y^x = x⁻¹ y x`.
pub fn a_word() -> Word {
    y().conjugate(&x())
}

/// `z(x, y) = y^{x⁻¹} = x y x⁻¹`.
pub fn z_word() -> Word {
    y().conjugate(&x().inverse())
}

/// The conjugator `(x yⁱ)² x⁻¹`.
pub fn conjugator(i: u32) -> Result<Word, DomainError> {
    let i = check(i)?;
    Ok(x().multiply(&y().pow(i)).pow(2).multiply(&x().inverse()))
}

pub fn universal_word(i: u32, mode: EmbeddingMode) -> Result<Word, DomainError> {
    let bar = y().conjugate(&conjugator(i)?);
    Ok(match mode {
        EmbeddingMode::TorsionFree => bar,
        EmbeddingMode::General => bar.multiply(&y().inverse().conjugate(&x())),
    })
}

/// `x (y⁻ⁱ x⁻¹)² y (x yⁱ)² x⁻² y⁻¹ x`, assembled letter by letter.
pub fn closed_form(i: u32) -> Result<Word, DomainError> {
    let n = check(i)? as usize;
    let (xi, yi) = (X.inverse(), Y.inverse());
    let mut letters: Vec<Letter> = Vec::with_capacity(4 * n + 10);
    letters.push(X);
    for _ in 0..2 {
        letters.extend(core::iter::repeat_n(yi, n));
        letters.push(xi);
    }
    letters.push(Y);
    for _ in 0..2 {
        letters.push(X);
        letters.extend(core::iter::repeat_n(Y, n));
    }
    letters.extend([xi, xi, yi, X]);
    Ok(Word::reduce(letters))
}

/// `tᵢ = yⁱ x yⁱ x⁻¹`.
pub fn stable_letter_word(i: u32) -> Result<Word, DomainError> {
    let i = check(i)?;
    let yi = y().pow(i);
    Ok(yi.multiply(&x()).multiply(&yi).multiply(&x().inverse()))
}

/// The classical comparison word
/// `eᵢ = a⁻¹b⁻¹a b⁻ⁱ a b⁻¹a⁻¹ bⁱ a⁻¹ b a b⁻ⁱ a b a⁻¹ bⁱ` over `{a, b}`
/// (`a` has id 1, `b` id 2, see [`crate::word::Alphabet::ab`]).
pub fn hnn_comparison_word(i: u32) -> Result<Word, DomainError> {
    let i = check(i)?;
    let a = Word::from_letter(Letter::pos(1));
    let b = Word::from_letter(Letter::pos(2));
    let (ai, bi) = (a.inverse(), b.inverse());
    let pieces = [
        ai.clone(),
        bi.clone(),
        a.clone(),
        b.pow(-i),
        a.clone(),
        bi,
        ai.clone(),
        b.pow(i),
        ai.clone(),
        b.clone(),
        a.clone(),
        b.pow(-i),
        a,
        b.clone(),
        ai,
        b.pow(i),
    ];
    Ok(pieces.iter().fold(Word::identity(), |acc, p| acc.multiply(p)))
}

/// The four identities checked for each index.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Identity {
    /// `a^{tᵢ} = aᵢ · a`
    ConjugateByStableLetter,
    /// `yⁱ zⁱ = tᵢ`
    StableLetterViaZ,
    /// `y^x = a`
    YConjugateByX,
    /// `z^x = y`
    ZConjugateByX,
}

impl Identity {
    pub const ALL: [Identity; 4] = [
        Identity::ConjugateByStableLetter,
        Identity::StableLetterViaZ,
        Identity::YConjugateByX,
        Identity::ZConjugateByX,
    ];
}

impl fmt::Display for Identity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Identity::ConjugateByStableLetter => "a^t_i = a_i a",
            Identity::StableLetterViaZ => "y^i z^i = t_i",
            Identity::YConjugateByX => "y^x = a",
            Identity::ZConjugateByX => "z^x = y",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct IdentityCheck {
    pub i: u32,
    pub identity: Identity,
    pub passed: bool,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct IdentityReport {
    pub checks: Vec<IdentityCheck>,
}

impl IdentityReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn first_failure(&self) -> Option<&IdentityCheck> {
        self.checks.iter().find(|c| !c.passed)
    }
}

/// Checks the identities for `i = 1..=max_i` by free reduction alone.
pub fn verify_identities(max_i: u32) -> IdentityReport {
    // built from literal letters rather than through `a_word`/`z_word`
    let a = Word::reduce([X.inverse(), Y, X]);
    let z = Word::reduce([X, Y, X.inverse()]);
    let mut checks = Vec::with_capacity(4 * max_i as usize);
    for i in 1..=max_i {
        let t = stable_letter_word(i).expect("i >= 1");
        let ai = universal_word(i, EmbeddingMode::General).expect("i >= 1");
        let yi = Word::from_letter(Y).pow(i64::from(i));
        for identity in Identity::ALL {
            let passed = match identity {
                Identity::ConjugateByStableLetter => a.conjugate(&t) == ai.multiply(&a),
                Identity::StableLetterViaZ => yi.multiply(&z.pow(i64::from(i))) == t,
                Identity::YConjugateByX => Word::from_letter(Y).conjugate(&Word::from_letter(X)) == a,
                Identity::ZConjugateByX => z.conjugate(&Word::from_letter(X)) == Word::from_letter(Y),
            };
            checks.push(IdentityCheck { i, identity, passed });
        }
    }
    IdentityReport { checks }
}
