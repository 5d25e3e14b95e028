//! Real-valued languages and the context algebra they generate.
//!
//! The context vector of a string `x` is the function `(y, z) ↦ L(yxz)`.
//! Context vectors span a subspace of the sequence space over pairs of
//! strings, and defining `û · v̂ = (uv)^` on any basis of that subspace
//! yields the same associative product whichever basis is chosen.

mod basis;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

pub use basis::{CandidateOrder, ContextAlgebra, ContextBasis};

use crate::algebras::{ContextTheory, ProductKind, Psi};
use crate::error::{Error, Result};
use crate::lattice::{BasisKey, SparseVec};

pub type Words = Vec<String>;

/// Tolerance for the total mass of a distribution.
pub const MASS_TOL: f64 = 1e-9;

/// Most specific class of a language; each class implies the ones after it.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum LanguageClass {
    Distribution,
    Fuzzy,
    Positive,
    Real,
}

impl fmt::Display for LanguageClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            LanguageClass::Distribution => "distribution",
            LanguageClass::Fuzzy => "fuzzy",
            LanguageClass::Positive => "positive",
            LanguageClass::Real => "real",
        })
    }
}

/// A finitely supported function from word sequences to the reals.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Language {
    values: BTreeMap<Words, f64>,
}

impl Language {
    /// Repeated strings accumulate; zero values are dropped.
    pub fn new<I>(values: I) -> Self
    where
        I: IntoIterator<Item = (Words, f64)>,
    {
        let mut map = BTreeMap::new();
        for (s, v) in values {
            *map.entry(s).or_insert(0.0) += v;
        }
        map.retain(|_, v: &mut f64| *v != 0.0);
        Language { values: map }
    }

    /// `L(x) = (occurrences of x in the corpus) / |C|`.
    pub fn from_corpus(corpus: &[Words]) -> Result<Self> {
        if corpus.is_empty() {
            return Err(Error::EmptyCorpus);
        }
        let w = 1.0 / corpus.len() as f64;
        Ok(Self::new(corpus.iter().map(|doc| (doc.clone(), w))))
    }

    pub fn get<S: AsRef<str>>(&self, x: &[S]) -> f64 {
        let key: Words = x.iter().map(|w| w.as_ref().to_owned()).collect();
        self.values.get(&key).copied().unwrap_or(0.0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Words, f64)> {
        self.values.iter().map(|(k, &v)| (k, v))
    }

    pub fn support_len(&self) -> usize {
        self.values.len()
    }

    pub fn alphabet(&self) -> BTreeSet<String> {
        self.values.keys().flatten().cloned().collect()
    }

    pub fn max_string_len(&self) -> usize {
        self.values.keys().map(Vec::len).max().unwrap_or(0)
    }

    pub fn classify(&self) -> LanguageClass {
        if self.values.values().any(|&v| v < 0.0) {
            return LanguageClass::Real;
        }
        if self.values.values().any(|&v| v > 1.0) {
            return LanguageClass::Positive;
        }
        let mass: f64 = self.values.values().sum();
        if (mass - 1.0).abs() <= MASS_TOL {
            LanguageClass::Distribution
        } else {
            LanguageClass::Fuzzy
        }
    }

    /// `Σ L(x)|x|` over the support.
    pub fn average_length(&self) -> Result<f64> {
        if let Some((s, _)) = self.values.iter().find(|(_, &v)| v < 0.0) {
            return Err(Error::NotPositive { key: s.join(" ") });
        }
        Ok(self.values.iter().map(|(s, &v)| v * s.len() as f64).sum())
    }

    /// `x̂(y, z) = L(yxz)`, enumerated over every occurrence of `x` as a
    /// contiguous substring of a support string. `ε` occurs at every split
    /// position.
    pub fn context_vector<S: AsRef<str>>(&self, x: &[S]) -> SparseVec {
        let n = x.len();
        let mut pairs = Vec::new();
        for (s, &v) in &self.values {
            if s.len() < n {
                continue;
            }
            for i in 0..=(s.len() - n) {
                if s[i..i + n].iter().zip(x).all(|(a, b)| a == b.as_ref()) {
                    pairs.push((BasisKey::CtxPair(s[..i].to_vec(), s[i + n..].to_vec()), v));
                }
            }
        }
        SparseVec::from_pairs(pairs)
    }

    /// Every contiguous substring of every support string, `ε` included.
    /// Strings outside this set have zero context vectors.
    pub fn substrings(&self, max_len: usize) -> BTreeSet<Words> {
        let mut out = BTreeSet::new();
        out.insert(Vec::new());
        for s in self.values.keys() {
            for i in 0..s.len() {
                for j in (i + 1)..=s.len().min(i.saturating_add(max_len)) {
                    out.insert(s[i..j].to_vec());
                }
            }
        }
        out
    }

    /// Parses `string<TAB>value` lines; the string is space separated and
    /// may be empty.
    pub fn parse_tsv(text: &str) -> Result<Self> {
        let mut values = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let l = raw.trim_end_matches('\r');
            if l.trim().is_empty() || l.starts_with('#') {
                continue;
            }
            let (s, v) = l
                .rsplit_once('\t')
                .ok_or_else(|| Error::parse(line, "expected `string<TAB>value`"))?;
            let v: f64 = v
                .trim()
                .parse()
                .map_err(|_| Error::parse(line, format!("invalid value `{}`", v.trim())))?;
            if !v.is_finite() {
                return Err(Error::parse(line, "value must be finite"));
            }
            values.push((crate::tokenize(s, false), v));
        }
        Ok(Self::new(values))
    }

    pub fn to_tsv(&self) -> String {
        self.values
            .iter()
            .map(|(s, v)| format!("{}\t{v}\n", s.join(" ")))
            .collect()
    }
}

/// One document per non-blank line, whitespace tokenised.
pub fn parse_corpus(text: &str, lowercase: bool) -> Vec<Words> {
    text.lines()
        .filter(|l| !l.trim().is_empty())
        .map(|l| crate::tokenize(l, lowercase))
        .collect()
}

/// The context theory of a finite distribution: words map to their
/// context vectors, multiplication is the context-algebra product and
/// entailment is measured in the ambient pair space.
pub fn build_context_theory(language: Language, max_len: usize) -> Result<ContextTheory> {
    let class = language.classify();
    if class != LanguageClass::Distribution {
        return Err(Error::NotDistribution(class.to_string()));
    }
    let xi = language
        .alphabet()
        .into_iter()
        .map(|w| {
            let v = language.context_vector(&[&w]);
            (w, v)
        })
        .collect();
    let unity = language.context_vector::<&str>(&[]);
    let algebra = ContextAlgebra::new(language, max_len)?;
    ContextTheory::new(
        xi,
        ProductKind::ContextAlgebra(Arc::new(algebra)),
        unity,
        Psi::CanonicalInclusion,
    )
}

#[cfg(test)]
mod tests;
