//! Rewriting a presentation over `a₁, a₂, …` into a presentation over `{x, y}`
//! by sending each `aᵢ` to a universal word.

use alloc::borrow::Cow;
use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use thiserror::Error;

use crate::presentation::{InstantiateError, InstantiateOptions, Presentation, RelatorOrigin};
use crate::universal::{universal_word, DomainError};
use crate::word::{Alphabet, Word};

/// Which family of universal words generators are sent to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum EmbeddingMode {
    /// `aᵢ ↦ aᵢ(x, y)`; valid for every group.
    General,
    /// `aᵢ ↦ āᵢ(x, y)`; shorter, valid when the group is torsion-free.
    TorsionFree,
}

impl EmbeddingMode {
    pub fn as_str(self) -> &'static str {
        match self {
            EmbeddingMode::General => "general",
            EmbeddingMode::TorsionFree => "torsion-free",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        match s {
            "general" => Some(EmbeddingMode::General),
            "torsion-free" => Some(EmbeddingMode::TorsionFree),
            _ => None,
        }
    }
}

impl fmt::Display for EmbeddingMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

pub fn image_of_generator(i: u32, mode: EmbeddingMode) -> Result<Word, DomainError> {
    universal_word(i, mode)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EmbedOptions {
    pub mode: EmbeddingMode,
    pub bound: i64,
    pub dedupe: bool,
    /// Cyclically reduce every output relator.
    pub cyclic_reduce: bool,
}

impl EmbedOptions {
    pub fn new(mode: EmbeddingMode, bound: i64) -> Self {
        EmbedOptions {
            mode,
            bound,
            dedupe: false,
            cyclic_reduce: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EmbedError {
    #[error("the source presentation must use a single indexed generator family")]
    NotIndexed,
    #[error(transparent)]
    Instantiate(#[from] InstantiateError),
}

/// Recorded alongside the output presentation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EmbedMetadata {
    pub source: String,
    pub mode: EmbeddingMode,
    pub bound: i64,
    pub dedupe: bool,
    pub cyclic_reduce: bool,
}

impl fmt::Display for EmbedMetadata {
    /// One comment line, keys sorted.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "# embedding bound={} cyclic-reduce={} dedupe={} mode={} source={}",
            self.bound, self.cyclic_reduce, self.dedupe, self.mode, self.source
        )
    }
}

#[derive(Clone, Debug)]
pub struct Embedding {
    /// `T_G`, named `T_<source name>`.
    pub presentation: Presentation,
    pub metadata: EmbedMetadata,
    /// Which instantiated source relator each output relator came from.
    pub origins: Vec<RelatorOrigin>,
    /// Instantiation warnings and the torsion-freeness notice.
    pub notices: Vec<String>,
}

/// Instantiates `source` up to `options.bound` and substitutes universal words.
pub fn embed(source: &Presentation, options: &EmbedOptions) -> Result<Embedding, EmbedError> {
    if !matches!(source.alphabet(), Alphabet::Indexed(_)) {
        return Err(EmbedError::NotIndexed);
    }
    let inst = source.instantiate(options.bound, &InstantiateOptions { dedupe: options.dedupe })?;
    let mut notices: Vec<String> = inst.warnings.iter().map(|w| w.to_string()).collect();
    if options.mode == EmbeddingMode::TorsionFree {
        notices.push(format!(
            "torsion-free mode: `{}` is assumed torsion-free; this is not checked",
            source.name()
        ));
    }
    let mut images: BTreeMap<u32, Word> = BTreeMap::new();
    let mut target = Presentation::new(&format!("T_{}", source.name()), Alphabet::f2()).expect("valid name");
    let mut origins = Vec::new();
    let words = inst.presentation.explicit_relators().expect("instantiate yields explicit relators");
    for (w, origin) in words.into_iter().zip(inst.origins) {
        for l in w.letters() {
            images
                .entry(l.generator())
                .or_insert_with(|| image_of_generator(l.generator(), options.mode).expect("generator ids are >= 1"));
        }
        let mut out = w
            .substitute(|g| images.get(&g).map(Cow::Borrowed))
            .expect("all images computed");
        if options.cyclic_reduce {
            out = out.cyclically_reduce().0;
        }
        // the universal words freely generate a free subgroup, so a nonempty
        // relator never maps to the empty word
        target.push_explicit(out).expect("nonempty relator over {x, y}");
        origins.push(origin);
    }
    Ok(Embedding {
        presentation: target,
        metadata: EmbedMetadata {
            source: String::from(source.name()),
            mode: options.mode,
            bound: options.bound,
            dedupe: options.dedupe,
            cyclic_reduce: options.cyclic_reduce,
        },
        origins,
        notices,
    })
}
