//! Words as projections on the space of documents.
//!
//! `P_u` keeps exactly the documents containing `u`. Projections commute and
//! their product is their meet, so a string maps to the projection onto the
//! documents containing all of its words. With the uniform document
//! distribution `p(d) = 1/|D|`, `φ(U) = ‖U⁺p‖₁ − ‖U⁻p‖₁` and entailment is
//! `φ(P_x ∧ P_y) / φ(P_x)`.

use std::collections::{BTreeMap, BTreeSet};
use std::ops::Deref;

use crate::algebras::ContextTheory;
use crate::error::{Error, Result};
use crate::lattice::{self, BasisKey, Norm, SparseVec};

/// Word → documents posting lists over a fixed corpus.
#[derive(Clone, Debug)]
pub struct DocumentIndex {
    doc_count: u64,
    postings: BTreeMap<String, BTreeSet<u64>>,
}

impl DocumentIndex {
    pub fn from_corpus<S: AsRef<str>>(docs: &[Vec<S>]) -> Result<Self> {
        if docs.is_empty() {
            return Err(Error::EmptyCorpus);
        }
        let mut postings: BTreeMap<String, BTreeSet<u64>> = BTreeMap::new();
        for (d, doc) in docs.iter().enumerate() {
            for word in doc {
                postings
                    .entry(word.as_ref().to_owned())
                    .or_default()
                    .insert(d as u64);
            }
        }
        Ok(DocumentIndex {
            doc_count: docs.len() as u64,
            postings,
        })
    }

    pub fn doc_count(&self) -> u64 {
        self.doc_count
    }

    /// Documents containing `word`; empty for unseen words.
    pub fn postings(&self, word: &str) -> BTreeSet<u64> {
        self.postings.get(word).cloned().unwrap_or_default()
    }

    /// Number of documents containing `word`.
    pub fn doc_freq(&self, word: &str) -> u64 {
        self.postings.get(word).map_or(0, |p| p.len() as u64)
    }

    pub fn vocabulary(&self) -> impl Iterator<Item = &str> {
        self.postings.keys().map(String::as_str)
    }

    /// The projection onto documents containing every word in `words`. No
    /// words gives the identity.
    pub fn projection<S: AsRef<str>>(&self, words: &[S]) -> ProjectionVec {
        let mut docs: Option<BTreeSet<u64>> = None;
        for w in words {
            let p = self.postings(w.as_ref());
            docs = Some(match docs {
                None => p,
                Some(d) => d.intersection(&p).copied().collect(),
            });
        }
        let docs = docs.unwrap_or_else(|| (0..self.doc_count).collect());
        ProjectionVec(SparseVec::from_pairs(
            docs.into_iter().map(|d| (BasisKey::DocId(d), 1.0)),
        ))
    }

    /// `φ(U) = ‖U⁺p‖₁ − ‖U⁻p‖₁` for a diagonal operator `U`, given by its
    /// diagonal over `DocId` keys, with `p` uniform over documents.
    pub fn phi(&self, diagonal: &SparseVec) -> f64 {
        let n = self.doc_count as f64;
        let pos = lattice::norm(&lattice::pos_part(diagonal), Norm::L1);
        let neg = lattice::norm(&lattice::neg_part(diagonal), Norm::L1);
        pos / n - neg / n
    }

    /// Fraction of documents containing all words of `x` that also contain
    /// all words of `y`.
    pub fn entail<S: AsRef<str>, T: AsRef<str>>(&self, x: &[S], y: &[T]) -> Result<f64> {
        let px = self.projection(x);
        let denom = self.phi(&px);
        if denom <= 0.0 {
            return Err(Error::ZeroAntecedent);
        }
        let py = self.projection(y);
        Ok(self.phi(&lattice::meet(&px, &py)) / denom)
    }

    /// Lexical entailment probability `n_{u,v} / n_v`.
    pub fn lep(&self, u: &str, v: &str) -> Result<f64> {
        let nv = self.doc_freq(v);
        if nv == 0 {
            return Err(Error::ZeroAntecedent);
        }
        let nuv = self.projection(&[u, v]).len() as f64;
        Ok(nuv / nv as f64)
    }

    /// The same model as a point-wise context theory over documents: words
    /// map to their indicator vectors and unity is the identity projection.
    pub fn context_theory(&self) -> Result<ContextTheory> {
        let xi = self
            .postings
            .keys()
            .map(|w| (w.clone(), self.projection(&[w]).0))
            .collect();
        ContextTheory::pointwise_over(xi, (0..self.doc_count).map(BasisKey::DocId))
    }
}

/// A 0/1 indicator over `DocId` keys.
#[derive(Clone, Debug, PartialEq)]
pub struct ProjectionVec(SparseVec);

impl ProjectionVec {
    pub fn docs(&self) -> impl Iterator<Item = u64> + '_ {
        self.0.keys().map(|k| match k {
            BasisKey::DocId(d) => *d,
            _ => unreachable!("projections are keyed by document"),
        })
    }

    pub fn into_inner(self) -> SparseVec {
        self.0
    }
}

impl Deref for ProjectionVec {
    type Target = SparseVec;

    fn deref(&self) -> &SparseVec {
        &self.0
    }
}

#[cfg(test)]
mod tests {
    use proptest::prelude::*;

    use super::*;
    use crate::algebras::pointwise_product;

    fn toy() -> DocumentIndex {
        DocumentIndex::from_corpus(&[vec!["cat", "sits"], vec!["cat", "dog"], vec!["dog", "runs"]])
            .unwrap()
    }

    fn indicator(docs: &[u64]) -> SparseVec {
        SparseVec::from_pairs(docs.iter().map(|&d| (BasisKey::DocId(d), 1.0)))
    }

    #[test]
    fn index_and_projections() {
        let idx = toy();
        assert_eq!(idx.postings("cat"), BTreeSet::from([0, 1]));
        assert!(idx.postings("fish").is_empty());
        assert_eq!(idx.doc_count(), 3);
        assert_eq!(*idx.projection(&["cat"]), indicator(&[0, 1]));
        assert_eq!(*idx.projection(&["cat", "dog"]), indicator(&[1]));
        assert_eq!(*idx.projection::<&str>(&[]), indicator(&[0, 1, 2]));
        assert!(matches!(
            DocumentIndex::from_corpus::<&str>(&[]),
            Err(Error::EmptyCorpus)
        ));
    }

    #[test]
    fn phi_values() {
        let idx = toy();
        assert!((idx.phi(&idx.projection(&["cat"])) - 2.0 / 3.0).abs() < 1e-15);
        assert_eq!(idx.phi(&idx.projection::<&str>(&[])), 1.0);
        assert_eq!(idx.phi(&SparseVec::zero()), 0.0);
        let signed = SparseVec::from_pairs([(BasisKey::DocId(0), 2.0), (BasisKey::DocId(2), -1.0)]);
        assert!((idx.phi(&signed) - 1.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn entailment_values() {
        let idx = toy();
        assert_eq!(idx.entail(&["cat"], &["dog"]).unwrap(), 0.5);
        assert_eq!(idx.entail(&["cat"], &["cat"]).unwrap(), 1.0);
        assert_eq!(idx.entail(&["cat", "sits"], &["cat"]).unwrap(), 1.0);
        assert!(matches!(
            idx.entail(&["fish"], &["cat"]),
            Err(Error::ZeroAntecedent)
        ));
        // lep(u, v) = n_uv / n_v is entailment from v to u
        assert_eq!(
            idx.lep("dog", "cat").unwrap(),
            idx.entail(&["cat"], &["dog"]).unwrap()
        );
    }

    #[test]
    fn matches_pointwise_context_theory() {
        let idx = toy();
        let th = idx.context_theory().unwrap();
        for x in ["cat", "dog", "sits", "runs"] {
            for y in ["cat", "dog", "sits", "runs"] {
                assert_eq!(
                    th.string_entailment(&[x], &[y]).unwrap(),
                    idx.entail(&[x], &[y]).unwrap()
                );
            }
        }
    }

    fn corpus() -> impl Strategy<Value = Vec<Vec<&'static str>>> {
        let word = prop::sample::select(vec!["a", "b", "c", "d", "e"]);
        prop::collection::vec(prop::collection::vec(word, 0..4), 1..8)
    }

    fn words() -> impl Strategy<Value = Vec<&'static str>> {
        prop::collection::vec(prop::sample::select(vec!["a", "b", "c", "d", "e"]), 0..3)
    }

    proptest! {
        #[test]
        fn projection_laws(docs in corpus(), x in words(), y in words(), extra in words()) {
            let idx = DocumentIndex::from_corpus(&docs).unwrap();
            let px = idx.projection(&x);
            let py = idx.projection(&y);
            prop_assert_eq!(pointwise_product(&px, &px).unwrap(), px.0.clone());
            let via_meet = lattice::meet(&px, &py);
            let via_product = pointwise_product(&px, &py).unwrap();
            let union: Vec<&str> = x.iter().chain(&y).copied().collect();
            let via_union = idx.projection(&union);
            prop_assert_eq!(&via_meet, &via_product);
            prop_assert_eq!(&via_meet, &via_union.0);
            prop_assert_eq!(via_product, pointwise_product(&py, &px).unwrap());
            let more: Vec<&str> = x.iter().chain(&extra).copied().collect();
            prop_assert!(idx.phi(&idx.projection(&more)) <= idx.phi(&px));
        }
    }
}
