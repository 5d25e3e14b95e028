use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{Language, Words};
use crate::error::{Error, Result};
use crate::lattice::{BasisKey, SparseVec};
use crate::linalg::IncrementalQr;

/// Relative residual below which a vector counts as lying in a span.
pub const RANK_TOL: f64 = 1e-9;

/// Order in which candidate strings are offered to the basis scan.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum CandidateOrder {
    #[default]
    LengthLex,
    /// Longest strings first, reverse lexicographic within a length.
    ReverseLengthLex,
    Shuffled(u64),
}

/// Strings whose context vectors form a basis of the span of all candidate
/// context vectors.
#[derive(Clone, Debug)]
pub struct ContextBasis {
    strings: Vec<Words>,
    vectors: Vec<SparseVec>,
    coords: BTreeMap<BasisKey, usize>,
    qr: IncrementalQr,
}

impl ContextBasis {
    pub fn select(language: &Language, max_len: usize) -> Result<Self> {
        Self::select_with_order(language, max_len, CandidateOrder::LengthLex)
    }

    /// Scans every substring of the support up to `max_len` in the given
    /// order and keeps each one whose context vector increases the rank.
    /// Fails if some word's context vector is not reached.
    pub fn select_with_order(
        language: &Language,
        max_len: usize,
        order: CandidateOrder,
    ) -> Result<Self> {
        let mut candidates: Vec<Words> = language.substrings(max_len).into_iter().collect();
        candidates.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        match order {
            CandidateOrder::LengthLex => {}
            CandidateOrder::ReverseLengthLex => candidates.reverse(),
            CandidateOrder::Shuffled(seed) => {
                candidates.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
            }
        }

        let vectors: Vec<SparseVec> = candidates
            .iter()
            .map(|s| language.context_vector(s))
            .collect();
        let coords: BTreeMap<BasisKey, usize> = language
            .substrings(usize::MAX)
            .iter()
            .flat_map(|s| {
                language
                    .context_vector(s)
                    .keys()
                    .cloned()
                    .collect::<Vec<_>>()
            })
            .collect::<std::collections::BTreeSet<_>>()
            .into_iter()
            .enumerate()
            .map(|(i, k)| (k, i))
            .collect();

        let mut basis = ContextBasis {
            strings: Vec::new(),
            vectors: Vec::new(),
            coords,
            qr: IncrementalQr::default(),
        };
        for (s, v) in candidates.into_iter().zip(vectors) {
            let dense = basis.dense(&v).expect("candidate keys are indexed");
            if basis.qr.try_push(&dense, RANK_TOL) {
                basis.strings.push(s);
                basis.vectors.push(v);
            }
        }

        for word in language.alphabet() {
            let v = language.context_vector(&[&word]);
            if basis.expand(&v).is_err() {
                return Err(Error::SpanNotReached { word, max_len });
            }
        }
        Ok(basis)
    }

    fn dense(&self, v: &SparseVec) -> Option<Vec<f64>> {
        let mut out = vec![0.0; self.coords.len()];
        for (k, &c) in v {
            out[*self.coords.get(k)?] = c;
        }
        Some(out)
    }

    pub fn strings(&self) -> &[Words] {
        &self.strings
    }

    pub fn vectors(&self) -> &[SparseVec] {
        &self.vectors
    }

    pub fn len(&self) -> usize {
        self.strings.len()
    }

    pub fn is_empty(&self) -> bool {
        self.strings.is_empty()
    }

    /// Coefficients `α` with `v = Σ αᵢ ûᵢ`.
    pub fn expand(&self, v: &SparseVec) -> Result<Vec<f64>> {
        let Some(dense) = self.dense(v) else {
            let residual = v
                .iter()
                .filter(|(k, _)| !self.coords.contains_key(k))
                .map(|(_, c)| c * c)
                .sum::<f64>()
                .sqrt();
            return Err(Error::NotInSpan { residual });
        };
        let (alpha, residual) = self.qr.solve(&dense);
        let scale = crate::linalg::norm2(&dense).max(f64::MIN_POSITIVE);
        if residual > RANK_TOL * scale {
            return Err(Error::NotInSpan { residual });
        }
        Ok(alpha)
    }
}

/// The algebra generated by the context vectors of a language.
#[derive(Clone, Debug)]
pub struct ContextAlgebra {
    language: Language,
    basis: ContextBasis,
}

impl ContextAlgebra {
    pub fn new(language: Language, max_len: usize) -> Result<Self> {
        let basis = ContextBasis::select(&language, max_len)?;
        Ok(ContextAlgebra { language, basis })
    }

    pub fn with_basis(language: Language, basis: ContextBasis) -> Self {
        ContextAlgebra { language, basis }
    }

    pub fn language(&self) -> &Language {
        &self.language
    }

    pub fn basis(&self) -> &ContextBasis {
        &self.basis
    }

    /// Expands `u = Σ αᵢ ûᵢ` and `v = Σ βⱼ ûⱼ` in the basis and returns
    /// `Σ αᵢ βⱼ (uᵢuⱼ)^`.
    pub fn product(&self, u: &SparseVec, v: &SparseVec) -> Result<SparseVec> {
        let alpha = self.basis.expand(u)?;
        let beta = self.basis.expand(v)?;
        let strings = self.basis.strings();
        let mut pairs = Vec::new();
        for (i, &a) in alpha.iter().enumerate() {
            if a == 0.0 {
                continue;
            }
            for (j, &b) in beta.iter().enumerate() {
                if b == 0.0 {
                    continue;
                }
                let mut uv = strings[i].clone();
                uv.extend_from_slice(&strings[j]);
                let ctx = self.language.context_vector(&uv);
                pairs.extend(ctx.iter().map(|(k, &c)| (k.clone(), a * b * c)));
            }
        }
        Ok(SparseVec::from_pairs(pairs))
    }
}
