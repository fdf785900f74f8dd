//! The three worked presentations shipped with the crate.

use alloc::format;
use alloc::string::String;

use crate::embed::EmbeddingMode;
use crate::presentation::Presentation;

/// Free abelian group of countable rank, `⟨a₁, a₂, … | [a_k, a_l]⟩`.
pub const FREE_ABELIAN: &str = "group Zinf\ngens a[*]\nrel [a[k], a[l]] for k in 1.., l in 1..\n";

/// Additive rationals, `⟨a₁, a₂, … | a_s^s a_{s-1}⁻¹, s ≥ 2⟩`.
pub const RATIONALS: &str = "group Q\ngens a[*]\nrel a[s]^s a[s-1]^-1 for s in 2..\n";

/// Quasicyclic `p`-group, `⟨a₁, a₂, … | a₁^p, a_{s+1}^p a_s⁻¹, s ≥ 1⟩`.
/// `p` is not checked for primality.
pub fn pruefer_text(p: u32) -> String {
    format!("group C{p}inf\ngens a[*]\nrel a[1]^{p}\nrel a[s+1]^{p} a[s]^-1 for s in 1..\n")
}

pub fn free_abelian() -> Presentation {
    Presentation::parse(FREE_ABELIAN).expect("built-in presentation parses")
}

pub fn rationals() -> Presentation {
    Presentation::parse(RATIONALS).expect("built-in presentation parses")
}

pub fn pruefer(p: u32) -> Presentation {
    Presentation::parse(&pruefer_text(p)).expect("built-in presentation parses")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Builtin {
    FreeAbelian,
    Rationals,
    Pruefer(u32),
}

impl Builtin {
    /// `free-abelian`, `rationals` or `pruefer`; `p` is used only by the latter.
    pub fn from_name(name: &str, p: u32) -> Option<Self> {
        match name {
            "free-abelian" => Some(Builtin::FreeAbelian),
            "rationals" => Some(Builtin::Rationals),
            "pruefer" => Some(Builtin::Pruefer(p)),
            _ => None,
        }
    }

    pub fn presentation(self) -> Presentation {
        match self {
            Builtin::FreeAbelian => free_abelian(),
            Builtin::Rationals => rationals(),
            Builtin::Pruefer(p) => pruefer(p),
        }
    }

    /// Torsion-free groups get the shorter words; the Prüfer group has torsion.
    pub fn mode(self) -> EmbeddingMode {
        match self {
            Builtin::FreeAbelian | Builtin::Rationals => EmbeddingMode::TorsionFree,
            Builtin::Pruefer(_) => EmbeddingMode::General,
        }
    }
}
