use std::collections::{BTreeMap, BTreeSet};

use super::{overlap_xi, rank_one, subsequence_xi, ProductKind};
use crate::error::{Error, Result};
use crate::lattice::{self, BasisKey, SparseVec};

/// The embedding of the algebra into the lattice where entailment is
/// measured. Every algebra here already lives inside a sequence space, so
/// both variants act as the identity on coordinates.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Psi {
    Identity,
    /// Inclusion of a subspace (the context algebra) into its ambient space.
    CanonicalInclusion,
}

impl Psi {
    pub fn apply(&self, v: &SparseVec) -> SparseVec {
        v.clone()
    }
}

/// An alphabet, a word embedding into a unital algebra, and the lattice
/// embedding of that algebra.
#[derive(Clone, Debug)]
pub struct ContextTheory {
    xi: BTreeMap<String, SparseVec>,
    product: ProductKind,
    unity: SparseVec,
    psi: Psi,
}

impl ContextTheory {
    /// Assembles a theory, checking that `unity` is a two-sided identity on
    /// every word image.
    pub fn new(
        xi: BTreeMap<String, SparseVec>,
        product: ProductKind,
        unity: SparseVec,
        psi: Psi,
    ) -> Result<Self> {
        for (word, v) in &xi {
            let left = product.multiply(&unity, v)?;
            let right = product.multiply(v, &unity)?;
            if left != *v || right != *v {
                return Err(Error::InvalidConfig(format!(
                    "unity is not an identity for the image of `{word}`"
                )));
            }
        }
        Ok(ContextTheory {
            xi,
            product,
            unity,
            psi,
        })
    }

    /// Point-wise multiplication over the finite axis set spanned by the
    /// table; unity is the all-ones vector on those axes.
    pub fn pointwise(table: BTreeMap<String, SparseVec>) -> Result<Self> {
        let axes: BTreeSet<BasisKey> = table.values().flat_map(|v| v.keys().cloned()).collect();
        Self::pointwise_over(table, axes)
    }

    pub fn pointwise_over(
        table: BTreeMap<String, SparseVec>,
        axes: impl IntoIterator<Item = BasisKey>,
    ) -> Result<Self> {
        let unity = SparseVec::from_pairs(axes.into_iter().map(|k| (k, 1.0)));
        Self::new(table, ProductKind::Pointwise, unity, Psi::Identity)
    }

    /// Additive algebra: each `n`-dimensional word vector `v` becomes
    /// `(1, v₁, ..., vₙ)` with the scalar slot on axis 0.
    pub fn additive(table: BTreeMap<String, SparseVec>) -> Result<Self> {
        let xi = table
            .into_iter()
            .map(|(w, v)| Ok((w, shift_axes(&v)?)))
            .collect::<Result<_>>()?;
        let unity = SparseVec::basis(BasisKey::Axis(0));
        Self::new(xi, ProductKind::Additive, unity, Psi::Identity)
    }

    /// Tensor algebra over the word vectors' space; words are rank-one
    /// tensors and unity is the scalar component.
    pub fn tensor(table: BTreeMap<String, SparseVec>) -> Result<Self> {
        let xi = table
            .into_iter()
            .map(|(w, v)| Ok((w, rank_one(&v)?)))
            .collect::<Result<_>>()?;
        let unity = SparseVec::basis(BasisKey::axis_seq(&[]));
        Self::new(xi, ProductKind::TensorAlg, unity, Psi::Identity)
    }

    /// Subsequence matching in the free-monoid algebra.
    pub fn subsequence<I, S>(alphabet: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let xi = alphabet
            .into_iter()
            .map(|w| (w.as_ref().to_owned(), subsequence_xi(w.as_ref())))
            .collect();
        ContextTheory {
            xi,
            product: ProductKind::Convolution,
            unity: SparseVec::basis(BasisKey::empty_seq()),
            psi: Psi::Identity,
        }
    }

    /// Lexical overlap in the commutative quotient.
    pub fn overlap<I, S>(alphabet: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let xi = alphabet
            .into_iter()
            .map(|w| (w.as_ref().to_owned(), overlap_xi(w.as_ref())))
            .collect();
        ContextTheory {
            xi,
            product: ProductKind::CommutativeConvolution,
            unity: SparseVec::basis(BasisKey::Multiset(Vec::new())),
            psi: Psi::Identity,
        }
    }

    pub fn alphabet(&self) -> impl Iterator<Item = &str> {
        self.xi.keys().map(String::as_str)
    }

    pub fn contains_word(&self, word: &str) -> bool {
        self.xi.contains_key(word)
    }

    pub fn xi(&self, word: &str) -> Result<&SparseVec> {
        self.xi
            .get(word)
            .ok_or_else(|| Error::UnknownWord(word.to_owned()))
    }

    pub fn product(&self) -> &ProductKind {
        &self.product
    }

    pub fn unity(&self) -> &SparseVec {
        &self.unity
    }

    pub fn psi(&self) -> Psi {
        self.psi
    }

    pub fn multiply(&self, u: &SparseVec, v: &SparseVec) -> Result<SparseVec> {
        self.product.multiply(u, v)
    }

    /// `x̂ = ξ(x₁)ξ(x₂)…ξ(xₙ)`, folded left to right; `ε̂` is the unity.
    pub fn lift_string<S: AsRef<str>>(&self, words: &[S]) -> Result<SparseVec> {
        let mut iter = words.iter();
        let Some(first) = iter.next() else {
            return Ok(self.unity.clone());
        };
        let mut acc = self.xi(first.as_ref())?.clone();
        for w in iter {
            acc = self.product.multiply(&acc, self.xi(w.as_ref())?)?;
        }
        Ok(acc)
    }

    /// Degree to which string `x` entails string `y`.
    pub fn string_entailment<S: AsRef<str>, T: AsRef<str>>(&self, x: &[S], y: &[T]) -> Result<f64> {
        let xv = self.psi.apply(&self.lift_string(x)?);
        let yv = self.psi.apply(&self.lift_string(y)?);
        lattice::degree_of_entailment(&xv, &yv)
    }
}

fn shift_axes(v: &SparseVec) -> Result<SparseVec> {
    let body = v
        .iter()
        .map(|(k, &c)| match k {
            BasisKey::Axis(i) => Ok((BasisKey::Axis(i + 1), c)),
            other => Err(Error::KeyVariantMismatch {
                op: "additive embedding",
                expected: "axis",
                found: other.variant_name().to_owned(),
            }),
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SparseVec::from_pairs(
        std::iter::once((BasisKey::Axis(0), 1.0)).chain(body),
    ))
}

/// Parses a word-vector table.
///
/// Each non-comment line is either `word<TAB>c₀<TAB>c₁...` (dense
/// coordinates on `axis:0, axis:1, ...`) or `word<TAB>key<TAB>coefficient`
/// (one sparse entry; a word may span several lines).
pub fn parse_word_table(text: &str) -> Result<BTreeMap<String, SparseVec>> {
    let mut pairs: BTreeMap<String, Vec<(BasisKey, f64)>> = BTreeMap::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let l = raw.trim_end_matches('\r');
        if l.trim().is_empty() || l.trim_start().starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = l.split('\t').collect();
        if fields.len() < 2 || fields[0].trim().is_empty() {
            return Err(Error::parse(line, "expected `word<TAB>...`"));
        }
        let word = fields[0].trim().to_owned();
        let entry = pairs.entry(word).or_default();
        if fields[1].contains(':') {
            if fields.len() != 3 {
                return Err(Error::parse(
                    line,
                    "expected `word<TAB>key<TAB>coefficient`",
                ));
            }
            let v = lattice::parse_vector(&format!("{}\t{}", fields[1], fields[2]))
                .map_err(|e| Error::parse(line, e.to_string()))?;
            entry.extend(v.iter().map(|(k, &c)| (k.clone(), c)));
        } else {
            for (axis, f) in fields[1..].iter().enumerate() {
                let c: f64 = f
                    .trim()
                    .parse()
                    .map_err(|_| Error::parse(line, format!("invalid coefficient `{f}`")))?;
                entry.push((BasisKey::Axis(axis as u64), c));
            }
        }
    }
    Ok(pairs
        .into_iter()
        .map(|(w, p)| (w, SparseVec::from_pairs(p)))
        .collect())
}
