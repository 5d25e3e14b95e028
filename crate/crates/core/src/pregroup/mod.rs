//! Pregroup types and the typed tensor product.
//!
//! A word is a tensor of factors `s ⊗ e_γ`, where `s` is a semantic vector
//! and `γ` a basic type or one of its iterated adjoints. Multiplying two
//! tensors cancels the factors meeting at the seam whenever their types
//! contract, replacing each cancelled pair by the inner product of its
//! semantic parts, and otherwise concatenates them.

mod lexicon;
mod tensor;
mod types;

pub use lexicon::{Lexicon, LexiconEntry};
pub use tensor::{basis_product, gamma_product, GammaVec, TypedFactor, TypedTensor};
pub use types::{contracts, AdjointType, ComplexType, Contraction, Derivation};
