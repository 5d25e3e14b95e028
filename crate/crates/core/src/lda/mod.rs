//! Latent Dirichlet allocation as a corpus model for projection entailment.
//!
//! A document of length `N` is generated by drawing `θ ~ Dirichlet(α)` and
//! then, for each position, a topic `z ~ θ` and a word `w ~ β_z`. The
//! probability that word `a` occurs at least once is
//! `p_θ(a) = 1 − (1 − Σ_z β_z(a) θ_z)^N`, and the probability that a random
//! document contains all words of `x` is the expectation of `Π_{a∈x} p_θ(a)`
//! over `θ`, estimated by Monte-Carlo sampling.

mod gibbs;
mod monte_carlo;

use std::collections::BTreeMap;
use std::fmt::Write;

pub use gibbs::{train_lda, SamplerConfig};
pub use monte_carlo::{entail_lda, phi_projection, sample_dirichlet, McConfig, McEstimate};

use crate::error::{Error, Result};

/// Tolerance on `Σ_w β_z(w) = 1`.
pub const ROW_TOL: f64 = 1e-9;
/// Tolerance for `θ` lying on the simplex.
pub const SIMPLEX_TOL: f64 = 1e-6;

const FORMAT_TAG: &str = "ctxsem-lda";
const FORMAT_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq)]
pub struct LdaModel {
    alpha: Vec<f64>,
    /// `k × V`, row `z` is `p(w | z)`.
    beta: Vec<Vec<f64>>,
    vocab: Vec<String>,
    index: BTreeMap<String, usize>,
}

impl LdaModel {
    pub fn new(alpha: Vec<f64>, beta: Vec<Vec<f64>>, vocab: Vec<String>) -> Result<Self> {
        if alpha.is_empty() {
            return Err(Error::InvalidConfig(
                "model needs at least one topic".into(),
            ));
        }
        if alpha.iter().any(|&a| !(a > 0.0 && a.is_finite())) {
            return Err(Error::InvalidConfig(
                "alpha must be strictly positive".into(),
            ));
        }
        if beta.len() != alpha.len() {
            return Err(Error::InvalidConfig(format!(
                "{} topics in alpha but {} beta rows",
                alpha.len(),
                beta.len()
            )));
        }
        for (z, row) in beta.iter().enumerate() {
            if row.len() != vocab.len() {
                return Err(Error::InvalidConfig(format!(
                    "beta row {z} has {} entries for a vocabulary of {}",
                    row.len(),
                    vocab.len()
                )));
            }
            if row.iter().any(|&p| !(0.0..=1.0).contains(&p)) {
                return Err(Error::InvalidConfig(format!(
                    "beta row {z} is not a distribution"
                )));
            }
            let sum: f64 = row.iter().sum();
            if (sum - 1.0).abs() > ROW_TOL {
                return Err(Error::InvalidConfig(format!("beta row {z} sums to {sum}")));
            }
        }
        let mut index = BTreeMap::new();
        for (i, w) in vocab.iter().enumerate() {
            if index.insert(w.clone(), i).is_some() {
                return Err(Error::InvalidConfig(format!(
                    "duplicate vocabulary word `{w}`"
                )));
            }
        }
        Ok(LdaModel {
            alpha,
            beta,
            vocab,
            index,
        })
    }

    pub fn topics(&self) -> usize {
        self.alpha.len()
    }

    pub fn alpha(&self) -> &[f64] {
        &self.alpha
    }

    pub fn beta(&self) -> &[Vec<f64>] {
        &self.beta
    }

    pub fn vocab(&self) -> &[String] {
        &self.vocab
    }

    pub fn word_id(&self, word: &str) -> Result<usize> {
        self.index
            .get(word)
            .copied()
            .ok_or_else(|| Error::UnknownWord(word.to_owned()))
    }

    pub fn contains(&self, word: &str) -> bool {
        self.index.contains_key(word)
    }

    /// `p(z_i) = α_i / Σ_j α_j`, the mean of `θ_i`.
    pub fn topic_marginal(&self, i: usize) -> Result<f64> {
        let a = self.alpha.get(i).ok_or(Error::IndexOutOfRange {
            index: i,
            len: self.alpha.len(),
        })?;
        Ok(a / self.alpha.iter().sum::<f64>())
    }

    /// Probability that `word` occurs at least once in a document of length
    /// `doc_length` generated with topic proportions `theta`.
    pub fn word_prob_given_theta(&self, word: &str, theta: &[f64], doc_length: u64) -> Result<f64> {
        let id = self.word_id(word)?;
        if theta.len() != self.topics()
            || theta.iter().any(|&t| t < -SIMPLEX_TOL)
            || (theta.iter().sum::<f64>() - 1.0).abs() > SIMPLEX_TOL
        {
            return Err(Error::NotSimplex);
        }
        Ok(self.occurrence_prob(id, theta, doc_length))
    }

    /// Unchecked form of [`Self::word_prob_given_theta`].
    pub(crate) fn occurrence_prob(&self, id: usize, theta: &[f64], doc_length: u64) -> f64 {
        let p: f64 = self
            .beta
            .iter()
            .zip(theta)
            .map(|(row, &t)| row[id] * t)
            .sum::<f64>()
            .clamp(0.0, 1.0);
        // 1 - (1 - p)^N without cancellation for small p
        (-(doc_length as f64 * (-p).ln_1p()).exp_m1()).clamp(0.0, 1.0)
    }

    pub fn to_tsv(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "format\t{FORMAT_TAG}\t{FORMAT_VERSION}");
        let _ = writeln!(out, "topics\t{}", self.topics());
        let _ = writeln!(out, "alpha\t{}", join(&self.alpha));
        let _ = writeln!(out, "vocab\t{}", self.vocab.join("\t"));
        for row in &self.beta {
            let _ = writeln!(out, "beta\t{}", join(row));
        }
        out
    }

    pub fn parse_tsv(text: &str) -> Result<Self> {
        let mut topics = None;
        let mut alpha = None;
        let mut vocab = None;
        let mut beta = Vec::new();
        let mut saw_format = false;
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let l = raw.trim_end_matches('\r');
            if l.trim().is_empty() || l.starts_with('#') {
                continue;
            }
            let mut fields = l.split('\t');
            let tag = fields.next().unwrap_or_default();
            let rest: Vec<&str> = fields.collect();
            match tag {
                "format" => {
                    if rest != [FORMAT_TAG, &FORMAT_VERSION.to_string()] {
                        return Err(Error::parse(line, "unsupported model format"));
                    }
                    saw_format = true;
                }
                "topics" => {
                    let k: usize = rest
                        .first()
                        .and_then(|s| s.parse().ok())
                        .ok_or_else(|| Error::parse(line, "invalid topic count"))?;
                    topics = Some(k);
                }
                "alpha" => alpha = Some(parse_floats(&rest, line)?),
                "vocab" => vocab = Some(rest.iter().map(|s| s.to_string()).collect()),
                "beta" => beta.push(parse_floats(&rest, line)?),
                other => return Err(Error::parse(line, format!("unknown record `{other}`"))),
            }
        }
        if !saw_format {
            return Err(Error::parse(1, "missing format header"));
        }
        let alpha = alpha.ok_or_else(|| Error::parse(0, "missing alpha"))?;
        let vocab = vocab.ok_or_else(|| Error::parse(0, "missing vocab"))?;
        if topics != Some(alpha.len()) {
            return Err(Error::parse(0, "topic count does not match alpha"));
        }
        Self::new(alpha, beta, vocab)
    }
}

fn join(v: &[f64]) -> String {
    v.iter().map(f64::to_string).collect::<Vec<_>>().join("\t")
}

fn parse_floats(fields: &[&str], line: usize) -> Result<Vec<f64>> {
    fields
        .iter()
        .map(|s| {
            s.trim()
                .parse()
                .map_err(|_| Error::parse(line, format!("invalid number `{s}`")))
        })
        .collect()
}
