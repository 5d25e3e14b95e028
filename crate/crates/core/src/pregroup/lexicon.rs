use std::collections::BTreeMap;

use super::tensor::{GammaVec, TypedFactor, TypedTensor};
use super::types::ComplexType;
use crate::algebras::{ContextTheory, ProductKind, Psi};
use crate::error::{Error, Result};
use crate::lattice::{parse_inline, BasisKey, SparseVec};

#[derive(Clone, Debug)]
pub struct LexiconEntry {
    pub typ: ComplexType,
    pub meaning: GammaVec,
}

/// Words with irreducible types and typed tensor meanings.
#[derive(Clone, Debug, Default)]
pub struct Lexicon {
    entries: BTreeMap<String, LexiconEntry>,
}

/// A factor vector: either an inline literal (`axis:0=1,axis:2=0.5`) or
/// dense whitespace separated coordinates (`1 0 0.5`).
fn parse_factor_vector(s: &str, line: usize) -> Result<SparseVec> {
    if s.contains('=') {
        return parse_inline(s, line);
    }
    let coords = s
        .split_whitespace()
        .map(|c| {
            c.parse::<f64>()
                .ok()
                .filter(|x| x.is_finite())
                .ok_or_else(|| Error::parse(line, format!("invalid coordinate `{c}`")))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SparseVec::from_axes(&coords))
}

impl Lexicon {
    /// Adds `weight · (s₁⊗e_γ₁) ⊗ … ⊗ (sₙ⊗e_γₙ)` to the meaning of `word`.
    /// Every entry for a word must carry the same irreducible type.
    pub fn add(
        &mut self,
        word: &str,
        typ: ComplexType,
        vectors: Vec<SparseVec>,
        weight: f64,
    ) -> Result<()> {
        if typ.is_empty() {
            return Err(Error::InvalidConfig(format!("`{word}` has the unit type")));
        }
        if !typ.is_irreducible() {
            return Err(Error::InvalidConfig(format!(
                "type `{typ}` of `{word}` is reducible"
            )));
        }
        if vectors.len() != typ.len() {
            return Err(Error::InvalidConfig(format!(
                "`{word}` has {} type factors but {} vectors",
                typ.len(),
                vectors.len()
            )));
        }
        let factors = vectors
            .into_iter()
            .zip(&typ.0)
            .map(|(v, t)| TypedFactor::new(v, t.clone()))
            .collect::<Result<Vec<_>>>()?;
        let term = GammaVec::from(TypedTensor::new(weight, factors));
        match self.entries.get_mut(word) {
            Some(e) if e.typ != typ => Err(Error::InvalidConfig(format!(
                "`{word}` has types `{}` and `{typ}`",
                e.typ
            ))),
            Some(e) => {
                e.meaning = e.meaning.add(&term);
                Ok(())
            }
            None => {
                self.entries
                    .insert(word.to_owned(), LexiconEntry { typ, meaning: term });
                Ok(())
            }
        }
    }

    /// Lines `word<TAB>type<TAB>vectors[<TAB>weight]` with one vector per
    /// type factor, separated by `;`. Repeated words add terms.
    pub fn parse(text: &str) -> Result<Self> {
        let mut lex = Lexicon::default();
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let l = raw.trim_end_matches('\r');
            if l.trim().is_empty() || l.starts_with('#') {
                continue;
            }
            let fields: Vec<&str> = l.split('\t').collect();
            if !(3..=4).contains(&fields.len()) {
                return Err(Error::parse(
                    line,
                    "expected `word<TAB>type<TAB>vectors[<TAB>weight]`",
                ));
            }
            let typ: ComplexType = fields[1]
                .parse()
                .map_err(|e| Error::parse(line, format!("{e}")))?;
            let vectors = fields[2]
                .split(';')
                .map(|s| parse_factor_vector(s, line))
                .collect::<Result<Vec<_>>>()?;
            let weight = match fields.get(3) {
                Some(w) => w
                    .trim()
                    .parse()
                    .map_err(|_| Error::parse(line, format!("invalid weight `{w}`")))?,
                None => 1.0,
            };
            lex.add(fields[0].trim(), typ, vectors, weight)
                .map_err(|e| Error::parse(line, e.to_string()))?;
        }
        Ok(lex)
    }

    pub fn get(&self, word: &str) -> Result<&LexiconEntry> {
        self.entries
            .get(word)
            .ok_or_else(|| Error::UnknownWord(word.to_owned()))
    }

    pub fn words(&self) -> impl Iterator<Item = &str> {
        self.entries.keys().map(String::as_str)
    }

    /// The concatenated lexical types of a sentence.
    pub fn sentence_type<S: AsRef<str>>(&self, words: &[S]) -> Result<ComplexType> {
        let mut out = ComplexType::unit();
        for w in words {
            out = out.concat(&self.get(w.as_ref())?.typ);
        }
        Ok(out)
    }

    /// Left-to-right product of the word meanings, starting from `1`.
    pub fn compose<S: AsRef<str>>(&self, words: &[S]) -> Result<GammaVec> {
        let mut acc = GammaVec::one();
        for w in words {
            acc = super::gamma_product(&acc, &self.get(w.as_ref())?.meaning);
        }
        Ok(acc)
    }

    /// The lexicon as a context theory on expanded tensors.
    pub fn context_theory(&self) -> Result<ContextTheory> {
        let xi = self
            .entries
            .iter()
            .map(|(w, e)| (w.clone(), e.meaning.expand()))
            .collect();
        ContextTheory::new(
            xi,
            ProductKind::Pregroup,
            SparseVec::basis(BasisKey::empty_seq()),
            Psi::Identity,
        )
    }
}
