use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Gamma};

use super::LdaModel;
use crate::error::{Error, Result};

/// Monte-Carlo settings for projection estimates.
#[derive(Clone, Debug, PartialEq)]
pub struct McConfig {
    /// Number of `θ` draws, `M`.
    pub samples: usize,
    /// Document length `N`.
    pub doc_length: u64,
    pub seed: u64,
}

impl Default for McConfig {
    fn default() -> Self {
        McConfig {
            samples: 1000,
            doc_length: 1_000_000,
            seed: 0,
        }
    }
}

impl McConfig {
    pub fn validate(&self) -> Result<()> {
        if self.samples == 0 {
            return Err(Error::InvalidConfig(
                "sample count must be at least 1".into(),
            ));
        }
        if self.doc_length == 0 {
            return Err(Error::InvalidConfig(
                "document length must be at least 1".into(),
            ));
        }
        Ok(())
    }
}

/// Sample mean with its standard error. With a single sample the error is
/// reported as zero.
#[derive(Clone, Copy, Debug, PartialEq, serde::Serialize)]
pub struct McEstimate {
    pub estimate: f64,
    pub std_error: f64,
}

/// Draws `θ ~ Dirichlet(α)` by normalising independent `Gamma(αᵢ, 1)`
/// variates.
pub fn sample_dirichlet<R: Rng + ?Sized>(alpha: &[f64], rng: &mut R) -> Vec<f64> {
    if alpha.len() == 1 {
        return vec![1.0];
    }
    let mut g: Vec<f64> = alpha
        .iter()
        .map(|&a| Gamma::new(a, 1.0).expect("alpha is positive").sample(rng))
        .collect();
    let s: f64 = g.iter().sum();
    if s > 0.0 && s.is_finite() {
        g.iter_mut().for_each(|x| *x /= s);
    } else {
        // every variate underflowed: the mass sits on a single coordinate
        let i = rng.random_range(0..alpha.len());
        g = vec![0.0; alpha.len()];
        g[i] = 1.0;
    }
    g
}

fn word_ids<S: AsRef<str>>(model: &LdaModel, words: &[S]) -> Result<BTreeSet<usize>> {
    words.iter().map(|w| model.word_id(w.as_ref())).collect()
}

fn coverage(model: &LdaModel, ids: &BTreeSet<usize>, theta: &[f64], n: u64) -> f64 {
    ids.iter()
        .map(|&id| model.occurrence_prob(id, theta, n))
        .product()
}

/// Estimates `φ(P_x)`, the probability that a random document contains every
/// word of `x`. An empty `x` is the identity projection with `φ = 1`.
pub fn phi_projection<S: AsRef<str>>(
    model: &LdaModel,
    words: &[S],
    cfg: &McConfig,
) -> Result<McEstimate> {
    cfg.validate()?;
    let ids = word_ids(model, words)?;
    if ids.is_empty() {
        return Ok(McEstimate {
            estimate: 1.0,
            std_error: 0.0,
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let (mut mean, mut m2) = (0.0f64, 0.0f64);
    for i in 0..cfg.samples {
        let theta = sample_dirichlet(model.alpha(), &mut rng);
        let f = coverage(model, &ids, &theta, cfg.doc_length);
        let delta = f - mean;
        mean += delta / (i + 1) as f64;
        m2 += delta * (f - mean);
    }
    let m = cfg.samples as f64;
    let std_error = if cfg.samples > 1 {
        (m2 / (m - 1.0) / m).sqrt()
    } else {
        0.0
    };
    Ok(McEstimate {
        estimate: mean,
        std_error,
    })
}

/// `φ(P_x ∧ P_y) / φ(P_x)` with numerator and denominator estimated from the
/// same `θ` draws, so the ratio never exceeds one.
pub fn entail_lda<S: AsRef<str>, T: AsRef<str>>(
    model: &LdaModel,
    x: &[S],
    y: &[T],
    cfg: &McConfig,
) -> Result<f64> {
    cfg.validate()?;
    let xs = word_ids(model, x)?;
    let ys = word_ids(model, y)?;
    let extra: BTreeSet<usize> = ys.difference(&xs).copied().collect();
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let (mut num, mut den) = (0.0f64, 0.0f64);
    for _ in 0..cfg.samples {
        let theta = sample_dirichlet(model.alpha(), &mut rng);
        let d = coverage(model, &xs, &theta, cfg.doc_length);
        den += d;
        num += d * coverage(model, &extra, &theta, cfg.doc_length);
    }
    if den <= 0.0 {
        return Err(Error::ZeroAntecedent);
    }
    Ok((num / den).min(1.0))
}
