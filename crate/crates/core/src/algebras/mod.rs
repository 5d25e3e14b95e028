//! Bilinear associative products on [`SparseVec`].
//!
//! Each product expects a particular key variant:
//!
//! | product                    | keys                                   |
//! |----------------------------|----------------------------------------|
//! | point-wise                 | `Axis` or `DocId`                      |
//! | additive                   | `Axis`, with axis 0 the scalar slot    |
//! | tensor algebra             | `Seq` of decimal axis indices          |
//! | free-monoid convolution    | `Seq`                                  |
//! | commutative convolution    | `Multiset`                             |

mod theory;

use std::sync::Arc;

pub use theory::{parse_word_table, ContextTheory, Psi};

use crate::context::ContextAlgebra;
use crate::error::{Error, Result};
use crate::lattice::{BasisKey, SparseVec};

fn require_keys(
    op: &'static str,
    expected: &'static str,
    vecs: [&SparseVec; 2],
    ok: impl Fn(&BasisKey) -> bool,
) -> Result<()> {
    for v in vecs {
        if let Some(k) = v.keys().find(|k| !ok(k)) {
            return Err(Error::KeyVariantMismatch {
                op,
                expected,
                found: k.variant_name().to_owned(),
            });
        }
    }
    Ok(())
}

/// Componentwise product; the support is the intersection of supports.
pub fn pointwise_product(u: &SparseVec, v: &SparseVec) -> Result<SparseVec> {
    require_keys("pointwise product", "axis or doc", [u, v], |k| {
        matches!(k, BasisKey::Axis(_) | BasisKey::DocId(_))
    })?;
    Ok(SparseVec::from_pairs(
        u.iter().map(|(k, &a)| (k.clone(), a * v.get(k))),
    ))
}

/// `(α, u₁..uₙ) ⊞ (β, v₁..vₙ) = (αβ, αv₁ + βu₁, ..., αvₙ + βuₙ)`.
pub fn additive_product(u: &SparseVec, v: &SparseVec) -> Result<SparseVec> {
    require_keys("additive product", "axis", [u, v], |k| {
        matches!(k, BasisKey::Axis(_))
    })?;
    let slot = BasisKey::Axis(0);
    let alpha = u.get(&slot);
    let beta = v.get(&slot);
    let body = u.zip_with(v, |a, b| alpha * b + beta * a);
    Ok(SparseVec::from_pairs(
        body.iter()
            .filter(|(k, _)| **k != BasisKey::Axis(0))
            .map(|(k, &c)| (k.clone(), c))
            .chain(std::iter::once((slot, alpha * beta))),
    ))
}

/// Bilinear extension of a product on basis keys. `None` means the basis
/// product is zero.
pub(crate) fn bilinear(
    u: &SparseVec,
    v: &SparseVec,
    key_product: impl Fn(&BasisKey, &BasisKey) -> Option<(BasisKey, f64)>,
) -> SparseVec {
    let mut pairs = Vec::with_capacity(u.len() * v.len());
    for (ka, &a) in u {
        for (kb, &b) in v {
            if let Some((k, w)) = key_product(ka, kb) {
                pairs.push((k, a * b * w));
            }
        }
    }
    SparseVec::from_pairs(pairs)
}

fn concat(a: &[String], b: &[String]) -> Vec<String> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    out.extend_from_slice(a);
    out.extend_from_slice(b);
    out
}

/// `(f·g)(x) = Σ_{yz = x} f(y) g(z)` on the free monoid of word sequences.
pub fn convolution(u: &SparseVec, v: &SparseVec) -> Result<SparseVec> {
    require_keys("convolution", "seq", [u, v], |k| {
        matches!(k, BasisKey::Seq(_))
    })?;
    Ok(bilinear(u, v, |a, b| match (a, b) {
        (BasisKey::Seq(x), BasisKey::Seq(y)) => Some((BasisKey::Seq(concat(x, y)), 1.0)),
        _ => unreachable!("checked above"),
    }))
}

/// Tensor-algebra product: basis tensors concatenate, ranks add. Keys are
/// `Seq`s of axis indices (see [`BasisKey::axis_seq`]), so this is the
/// free-monoid convolution over the axis alphabet.
pub fn tensor_alg_product(u: &SparseVec, v: &SparseVec) -> Result<SparseVec> {
    convolution(u, v).map_err(|e| match e {
        Error::KeyVariantMismatch { found, .. } => Error::KeyVariantMismatch {
            op: "tensor product",
            expected: "seq of axis indices",
            found,
        },
        e => e,
    })
}

/// Embeds a vector over `Axis` keys as a rank-one tensor.
pub fn rank_one(v: &SparseVec) -> Result<SparseVec> {
    v.iter()
        .map(|(k, &c)| match k {
            BasisKey::Axis(i) => Ok((BasisKey::axis_seq(&[*i]), c)),
            other => Err(Error::KeyVariantMismatch {
                op: "rank-one embedding",
                expected: "axis",
                found: other.variant_name().to_owned(),
            }),
        })
        .collect()
}

/// Convolution on the free commutative monoid: keys multiply by multiset
/// union.
pub fn commutative_convolution(u: &SparseVec, v: &SparseVec) -> Result<SparseVec> {
    require_keys("commutative convolution", "bag", [u, v], |k| {
        matches!(k, BasisKey::Multiset(_))
    })?;
    Ok(bilinear(u, v, |a, b| match (a, b) {
        (BasisKey::Multiset(x), BasisKey::Multiset(y)) => {
            let mut m = concat(x, y);
            m.sort();
            Some((BasisKey::Multiset(m), 1.0))
        }
        _ => unreachable!("checked above"),
    }))
}

/// `½(e_a + e_ε)` in the free-monoid algebra.
pub fn subsequence_xi(word: &str) -> SparseVec {
    SparseVec::from_pairs([(BasisKey::seq(&[word]), 0.5), (BasisKey::empty_seq(), 0.5)])
}

/// `½(e_[a] + e_[ε])` in the commutative quotient.
pub fn overlap_xi(word: &str) -> SparseVec {
    SparseVec::from_pairs([
        (BasisKey::bag(&[word]), 0.5),
        (BasisKey::Multiset(Vec::new()), 0.5),
    ])
}

#[derive(Clone, Debug)]
pub enum ProductKind {
    Pointwise,
    Additive,
    TensorAlg,
    Convolution,
    CommutativeConvolution,
    ContextAlgebra(Arc<ContextAlgebra>),
    /// The typed tensor product on expanded basis tensors; see
    /// [`crate::pregroup::basis_product`].
    Pregroup,
}

impl ProductKind {
    pub fn multiply(&self, u: &SparseVec, v: &SparseVec) -> Result<SparseVec> {
        match self {
            ProductKind::Pointwise => pointwise_product(u, v),
            ProductKind::Additive => additive_product(u, v),
            ProductKind::TensorAlg => tensor_alg_product(u, v),
            ProductKind::Convolution => convolution(u, v),
            ProductKind::CommutativeConvolution => commutative_convolution(u, v),
            ProductKind::ContextAlgebra(alg) => alg.product(u, v),
            ProductKind::Pregroup => crate::pregroup::basis_product(u, v),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            ProductKind::Pointwise => "pointwise",
            ProductKind::Additive => "additive",
            ProductKind::TensorAlg => "tensor",
            ProductKind::Convolution => "subsequence",
            ProductKind::CommutativeConvolution => "overlap",
            ProductKind::ContextAlgebra(_) => "context",
            ProductKind::Pregroup => "pregroup",
        }
    }
}

#[cfg(test)]
mod tests;
