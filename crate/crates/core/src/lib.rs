//! Embedding countable group presentations into 2-generator groups.
//!
//! A presentation `⟨a₁, a₂, … | r₁, r₂, …⟩` is rewritten into a presentation
//! over `{x, y}` by replacing each `aᵢ` with a fixed universal word of the free
//! group of rank 2. Alongside the transform the crate carries the tools used
//! to check its claims on finite truncations: free reduction, Stallings
//! graphs, Smith normal form and a permutation-representation search.
//!
//! The crate is `no_std` and needs only `alloc`.

#![no_std]

extern crate alloc;

pub mod abelian;
pub mod builtin;
pub mod embed;
pub mod expr;
pub mod homsearch;
pub mod presentation;
pub mod stallings;
pub mod universal;
pub mod word;

pub use abelian::{abelianization, AbelianInvariants};
pub use embed::{embed, image_of_generator, EmbedOptions, Embedding, EmbeddingMode};
pub use expr::{AffineExpr, ParseError, SchemaAtom, SchemaExpr};
pub use homsearch::{check_assignment, hom_search, PermAssignment, Permutation, SearchConfig, SearchOutcome};
pub use presentation::{Format, InstantiateOptions, Presentation, RelatorSchema};
pub use stallings::{is_free_basis, SubgroupGraph};
pub use universal::{hnn_comparison_word, stable_letter_word, universal_word, verify_identities};
pub use word::{Alphabet, Letter, Word};
