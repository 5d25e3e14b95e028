//! Context-theoretic semantics.
//!
//! Meanings of words and strings are elements of an algebra; the algebra
//! embeds into a vector lattice whose componentwise order measures
//! entailment. This crate provides:
//!
//! - [`lattice`]: sparse vectors with lattice operations, norms and the
//!   degree of entailment `‖u ∧ v‖₁ / ‖u‖₁`;
//! - [`algebras`]: point-wise, additive, tensor, free-monoid and commutative
//!   convolution products, and complete context theories built from them;
//! - [`context`]: real-valued languages, context vectors and the context
//!   algebra they generate;
//! - [`docproj`]: document-occurrence projections;
//! - [`lda`]: latent Dirichlet allocation and Monte-Carlo projection
//!   entailment;
//! - [`pregroup`]: pregroup types and the typed tensor product;
//! - [`rte`]: entailment-pair datasets, accuracy and confidence weighted
//!   score.

pub mod algebras;
pub mod cli;
pub mod config;
pub mod context;
pub mod demo;
pub mod docproj;
pub mod error;
pub mod lattice;
pub mod lda;
mod linalg;
pub mod pregroup;
pub mod rte;

pub use error::{Error, Result};
pub use lattice::{BasisKey, SparseVec};

/// Splits on whitespace, optionally lowercasing.
pub fn tokenize(text: &str, lowercase: bool) -> Vec<String> {
    text.split_whitespace()
        .map(|w| {
            if lowercase {
                w.to_lowercase()
            } else {
                w.to_owned()
            }
        })
        .collect()
}
