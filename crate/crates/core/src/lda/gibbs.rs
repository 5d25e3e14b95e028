use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::LdaModel;
use crate::error::{Error, Result};

/// Collapsed Gibbs sampler settings.
#[derive(Clone, Debug, PartialEq)]
pub struct SamplerConfig {
    pub topics: usize,
    /// Symmetric document-topic prior; `None` uses `min(50 / k, 1)`.
    pub alpha: Option<f64>,
    /// Symmetric topic-word smoothing.
    pub beta_smooth: f64,
    pub iterations: usize,
    pub burn_in: usize,
    pub seed: u64,
}

impl Default for SamplerConfig {
    fn default() -> Self {
        SamplerConfig {
            topics: 10,
            alpha: None,
            beta_smooth: 0.01,
            iterations: 500,
            burn_in: 200,
            seed: 0,
        }
    }
}

impl SamplerConfig {
    pub fn validate(&self) -> Result<()> {
        if self.topics == 0 {
            return Err(Error::InvalidConfig("topics must be at least 1".into()));
        }
        if self.iterations <= self.burn_in {
            return Err(Error::InvalidConfig(format!(
                "iterations ({}) must exceed burn-in ({})",
                self.iterations, self.burn_in
            )));
        }
        if !(self.beta_smooth > 0.0 && self.beta_smooth.is_finite()) {
            return Err(Error::InvalidConfig(
                "beta smoothing must be positive".into(),
            ));
        }
        if let Some(a) = self.alpha {
            if !(a > 0.0 && a.is_finite()) {
                return Err(Error::InvalidConfig("alpha must be positive".into()));
            }
        }
        Ok(())
    }

    pub fn resolved_alpha(&self) -> f64 {
        self.alpha
            .unwrap_or_else(|| (50.0 / self.topics as f64).min(1.0))
    }
}

/// Fits `α` (fixed, symmetric) and `β` by collapsed Gibbs sampling. `β` is
/// the smoothed topic-word estimate averaged over the post-burn-in sweeps.
/// The vocabulary is the sorted set of corpus words.
pub fn train_lda<S: AsRef<str>>(docs: &[Vec<S>], cfg: &SamplerConfig) -> Result<LdaModel> {
    cfg.validate()?;
    let vocab: Vec<String> = docs
        .iter()
        .flatten()
        .map(|w| w.as_ref().to_owned())
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    if vocab.is_empty() {
        return Err(Error::EmptyCorpus);
    }
    let ids: Vec<Vec<usize>> = docs
        .iter()
        .map(|d| {
            d.iter()
                .map(|w| {
                    vocab
                        .binary_search_by(|v| v.as_str().cmp(w.as_ref()))
                        .unwrap()
                })
                .collect()
        })
        .collect();

    let k = cfg.topics;
    let v = vocab.len();
    let alpha = cfg.resolved_alpha();
    let eta = cfg.beta_smooth;
    let v_eta = v as f64 * eta;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);

    let mut n_dk = vec![vec![0u32; k]; ids.len()];
    let mut n_kw = vec![vec![0u32; v]; k];
    let mut n_k = vec![0u32; k];
    let mut z: Vec<Vec<usize>> = Vec::with_capacity(ids.len());
    for (d, doc) in ids.iter().enumerate() {
        let zs: Vec<usize> = doc.iter().map(|_| rng.random_range(0..k)).collect();
        for (&w, &t) in doc.iter().zip(&zs) {
            n_dk[d][t] += 1;
            n_kw[t][w] += 1;
            n_k[t] += 1;
        }
        z.push(zs);
    }

    let mut acc = vec![vec![0.0f64; v]; k];
    let mut weights = vec![0.0f64; k];
    for sweep in 0..cfg.iterations {
        for (d, doc) in ids.iter().enumerate() {
            for (i, &w) in doc.iter().enumerate() {
                let old = z[d][i];
                n_dk[d][old] -= 1;
                n_kw[old][w] -= 1;
                n_k[old] -= 1;

                let mut total = 0.0;
                for t in 0..k {
                    let p = (f64::from(n_dk[d][t]) + alpha) * (f64::from(n_kw[t][w]) + eta)
                        / (f64::from(n_k[t]) + v_eta);
                    total += p;
                    weights[t] = total;
                }
                let u = rng.random::<f64>() * total;
                let new = weights.iter().position(|&c| u < c).unwrap_or(k - 1);

                z[d][i] = new;
                n_dk[d][new] += 1;
                n_kw[new][w] += 1;
                n_k[new] += 1;
            }
        }
        if sweep >= cfg.burn_in {
            for t in 0..k {
                let denom = f64::from(n_k[t]) + v_eta;
                for (a, &c) in acc[t].iter_mut().zip(&n_kw[t]) {
                    *a += (f64::from(c) + eta) / denom;
                }
            }
        }
    }

    let beta = acc
        .into_iter()
        .map(|row| {
            let s: f64 = row.iter().sum();
            row.into_iter().map(|x| x / s).collect()
        })
        .collect();
    LdaModel::new(vec![alpha; k], beta, vocab)
}
