//! Entailment-pair datasets and their evaluation.
//!
//! Datasets are TSV files with lines `id<TAB>text<TAB>hypothesis<TAB>0|1`
//! and an optional header line. A pair is predicted to entail when its score
//! reaches the threshold. The confidence weighted score ranks pairs by score
//! and averages the precision of every prefix of the ranking.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RtePair {
    pub id: String,
    pub text: Vec<String>,
    pub hypothesis: Vec<String>,
    pub label: bool,
}

pub fn parse_dataset(text: &str, lowercase: bool) -> Result<Vec<RtePair>> {
    let mut pairs = Vec::new();
    let mut ids = BTreeSet::new();
    let mut first = true;
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let l = raw.trim_end_matches('\r');
        if l.trim().is_empty() || l.starts_with('#') {
            continue;
        }
        let bad = |msg: &str| Error::MalformedDataset {
            line,
            msg: msg.to_owned(),
        };
        let fields: Vec<&str> = l.split('\t').collect();
        if fields.len() != 4 {
            return Err(bad("expected `id<TAB>text<TAB>hypothesis<TAB>label`"));
        }
        let label = match fields[3].trim() {
            "1" => true,
            "0" => false,
            _ if first => {
                first = false;
                continue;
            }
            other => return Err(bad(&format!("label must be 0 or 1, got `{other}`"))),
        };
        first = false;
        let id = fields[0].trim().to_owned();
        if id.is_empty() {
            return Err(bad("empty id"));
        }
        if !ids.insert(id.clone()) {
            return Err(bad(&format!("duplicate id `{id}`")));
        }
        let text = crate::tokenize(fields[1], lowercase);
        let hypothesis = crate::tokenize(fields[2], lowercase);
        if text.is_empty() || hypothesis.is_empty() {
            return Err(bad("text and hypothesis must be nonempty"));
        }
        pairs.push(RtePair {
            id,
            text,
            hypothesis,
            label,
        });
    }
    if pairs.is_empty() {
        return Err(Error::MalformedDataset {
            line: 0,
            msg: "dataset has no pairs".into(),
        });
    }
    Ok(pairs)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PairScore {
    pub id: String,
    pub score: f64,
    pub label: bool,
    pub predicted: bool,
    /// Set when the scorer could not score the pair and 0 was used.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EvalReport {
    pub n: usize,
    pub accuracy: f64,
    pub cws: f64,
    pub threshold: f64,
    pub pairs: Vec<PairScore>,
}

/// Scores every pair in dataset order. A pair whose antecedent has zero
/// weight scores 0 and is noted; any other scorer error aborts.
pub fn run_rte_eval<F>(pairs: &[RtePair], threshold: f64, mut scorer: F) -> Result<EvalReport>
where
    F: FnMut(&RtePair) -> Result<f64>,
{
    let mut scored = Vec::with_capacity(pairs.len());
    for p in pairs {
        let (score, note) = match scorer(p) {
            Ok(s) => (s, None),
            Err(Error::ZeroAntecedent) => (0.0, Some(Error::ZeroAntecedent.to_string())),
            Err(e) => return Err(e),
        };
        scored.push(PairScore {
            id: p.id.clone(),
            score,
            label: p.label,
            predicted: score >= threshold,
            note,
        });
    }
    let n = scored.len();
    let correct = scored.iter().filter(|s| s.predicted == s.label).count();
    Ok(EvalReport {
        n,
        accuracy: if n == 0 {
            0.0
        } else {
            correct as f64 / n as f64
        },
        cws: cws(&scored),
        threshold,
        pairs: scored,
    })
}

/// `(1/n) Σᵢ (correct among the top i) / i`, ranking by score descending
/// with ties broken by id.
pub fn cws(scores: &[PairScore]) -> f64 {
    if scores.is_empty() {
        return 0.0;
    }
    let mut ranked: Vec<&PairScore> = scores.iter().collect();
    ranked.sort_by(|a, b| b.score.total_cmp(&a.score).then_with(|| a.id.cmp(&b.id)));
    let mut correct = 0usize;
    let mut total = 0.0;
    for (i, s) in ranked.iter().enumerate() {
        if s.predicted == s.label {
            correct += 1;
        }
        total += correct as f64 / (i + 1) as f64;
    }
    total / scores.len() as f64
}
