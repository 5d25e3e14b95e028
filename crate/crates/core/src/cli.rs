//! The `ctxsem` command-line interface.
//!
//! Every command returns its output as a string so it can be tested without
//! spawning a process; `main` prints it and maps errors to exit codes.

use std::collections::BTreeSet;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use crate::algebras::{parse_word_table, ContextTheory};
use crate::config::Config;
use crate::context::{build_context_theory, parse_corpus, ContextBasis, Language};
use crate::docproj::DocumentIndex;
use crate::error::{read_to_string, Error, Result};
use crate::lda::{self, LdaModel, McConfig, SamplerConfig};
use crate::pregroup::{ComplexType, Lexicon};
use crate::rte;

pub const EXIT_INPUT: u8 = 2;
pub const EXIT_MODEL: u8 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "ctxsem",
    version,
    about = "Context-theoretic semantics toolkit"
)]
pub struct Cli {
    /// Seed for every random choice (default 0).
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// `key=value` file supplying defaults for model options.
    #[arg(long, global = true, value_name = "FILE")]
    pub config: Option<PathBuf>,
    /// Print machine-readable JSON.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build a language from a corpus (one document per line).
    BuildLang {
        #[arg(long)]
        corpus: PathBuf,
        #[arg(long)]
        lowercase: bool,
        /// Write the language as `string<TAB>value` lines.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Also select a context basis up to this candidate length.
        #[arg(long)]
        max_len: Option<usize>,
    },
    /// Degree to which string X entails string Y.
    Entail {
        #[command(flatten)]
        model: ModelArgs,
        x: String,
        y: String,
    },
    /// Score an entailment dataset and report accuracy and CWS.
    RteEval {
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long)]
        dataset: PathBuf,
        #[arg(long)]
        threshold: Option<f64>,
    },
    /// Train an LDA model with a collapsed Gibbs sampler.
    LdaTrain {
        #[arg(long)]
        corpus: PathBuf,
        #[arg(long)]
        topics: usize,
        #[arg(long)]
        iterations: Option<usize>,
        #[arg(long)]
        burn_in: Option<usize>,
        #[arg(long)]
        alpha: Option<f64>,
        #[arg(long)]
        beta_smooth: Option<f64>,
        #[arg(long)]
        lowercase: bool,
        #[arg(long)]
        out: PathBuf,
    },
    /// Type-check a sentence against a pregroup lexicon.
    PregroupParse {
        #[arg(long)]
        lexicon: PathBuf,
        /// Target type.
        #[arg(long, default_value = "s")]
        target: String,
        #[arg(required = true)]
        sentence: Vec<String>,
    },
    /// Compose the typed tensor meaning of a sentence.
    PregroupCompose {
        #[arg(long)]
        lexicon: PathBuf,
        #[arg(required = true)]
        sentence: Vec<String>,
    },
    /// Replay the worked examples and report pass/fail.
    Demo,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ModelKind {
    Pointwise,
    Additive,
    Tensor,
    #[value(alias = "subseq")]
    Subsequence,
    Overlap,
    Context,
    Docproj,
    Lda,
    Pregroup,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum OovPolicy {
    #[default]
    Error,
    Skip,
}

#[derive(Clone, Debug, Default, Args)]
pub struct ModelArgs {
    #[arg(long, value_enum)]
    pub model: Option<ModelKind>,
    /// Word vector table for pointwise, additive and tensor models.
    #[arg(long)]
    pub vectors: Option<PathBuf>,
    /// Corpus for docproj and context models.
    #[arg(long)]
    pub corpus: Option<PathBuf>,
    /// Language file for the context model.
    #[arg(long)]
    pub lang: Option<PathBuf>,
    #[arg(long)]
    pub lda_model: Option<PathBuf>,
    #[arg(long)]
    pub lexicon: Option<PathBuf>,
    /// LDA document length.
    #[arg(long = "N")]
    pub doc_length: Option<u64>,
    /// LDA Monte-Carlo sample count.
    #[arg(long = "M")]
    pub samples: Option<usize>,
    /// Longest candidate string for the context basis.
    #[arg(long)]
    pub max_len: Option<usize>,
    #[arg(long, value_enum)]
    pub oov: Option<OovPolicy>,
    #[arg(long)]
    pub lowercase: bool,
}

/// Model options after merging flags over the config file.
#[derive(Clone, Debug)]
struct Resolved {
    kind: ModelKind,
    vectors: Option<PathBuf>,
    corpus: Option<PathBuf>,
    lang: Option<PathBuf>,
    lda_model: Option<PathBuf>,
    lexicon: Option<PathBuf>,
    mc: McConfig,
    max_len: Option<usize>,
    oov: OovPolicy,
    lowercase: bool,
    seed: u64,
}

fn enum_from(s: &str, key: &str) -> Result<ModelKind> {
    ModelKind::from_str(s, true).map_err(|_| Error::InvalidConfig(format!("unknown {key} `{s}`")))
}

fn resolve(args: &ModelArgs, cfg: &Config, seed: u64) -> Result<Resolved> {
    let path = |flag: &Option<PathBuf>, key: &str| {
        flag.clone().or_else(|| cfg.get(key).map(PathBuf::from))
    };
    let kind = match args.model {
        Some(k) => k,
        None => match cfg.get("model").or_else(|| cfg.get("product")) {
            Some(s) => enum_from(s, "model")?,
            None => return Err(Error::InvalidConfig("no model given (use --model)".into())),
        },
    };
    let oov = match args.oov {
        Some(o) => o,
        None => match cfg.get("oov") {
            Some(s) => OovPolicy::from_str(s, true)
                .map_err(|_| Error::InvalidConfig(format!("unknown oov policy `{s}`")))?,
            None => OovPolicy::Error,
        },
    };
    let defaults = McConfig::default();
    Ok(Resolved {
        kind,
        vectors: path(&args.vectors, "vectors"),
        corpus: path(&args.corpus, "corpus"),
        lang: path(&args.lang, "lang"),
        lda_model: path(&args.lda_model, "lda_model"),
        lexicon: path(&args.lexicon, "lexicon"),
        mc: McConfig {
            samples: args
                .samples
                .map_or_else(|| cfg.get_parsed("M"), |m| Ok(Some(m)))?
                .unwrap_or(defaults.samples),
            doc_length: args
                .doc_length
                .map_or_else(|| cfg.get_parsed("N"), |n| Ok(Some(n)))?
                .unwrap_or(defaults.doc_length),
            seed,
        },
        max_len: args
            .max_len
            .map_or_else(|| cfg.get_parsed("max_len"), |m| Ok(Some(m)))?,
        oov,
        lowercase: args.lowercase || cfg.get_parsed("lowercase")?.unwrap_or(false),
        seed,
    })
}

fn require<'a>(p: &'a Option<PathBuf>, flag: &str, kind: ModelKind) -> Result<&'a Path> {
    p.as_deref().ok_or_else(|| {
        Error::InvalidConfig(format!("model {kind:?} needs --{flag}").to_lowercase())
    })
}

fn load_corpus(path: &Path, lowercase: bool) -> Result<Vec<Vec<String>>> {
    Ok(parse_corpus(&read_to_string(path)?, lowercase))
}

enum Scorer {
    Theory(ContextTheory),
    Docs(DocumentIndex),
    Lda(LdaModel, McConfig),
}

impl Scorer {
    /// `vocabulary` is the set of words that will be scored; the subsequence
    /// and overlap theories are built over it.
    fn build(r: &Resolved, vocabulary: &BTreeSet<String>) -> Result<Self> {
        let table = || -> Result<_> {
            parse_word_table(&read_to_string(require(&r.vectors, "vectors", r.kind)?)?)
        };
        Ok(match r.kind {
            ModelKind::Pointwise => Scorer::Theory(ContextTheory::pointwise(table()?)?),
            ModelKind::Additive => Scorer::Theory(ContextTheory::additive(table()?)?),
            ModelKind::Tensor => Scorer::Theory(ContextTheory::tensor(table()?)?),
            ModelKind::Subsequence => Scorer::Theory(ContextTheory::subsequence(vocabulary)),
            ModelKind::Overlap => Scorer::Theory(ContextTheory::overlap(vocabulary)),
            ModelKind::Context => {
                let lang = match (&r.lang, &r.corpus) {
                    (Some(p), _) => Language::parse_tsv(&read_to_string(p)?)?,
                    (None, Some(p)) => Language::from_corpus(&load_corpus(p, r.lowercase)?)?,
                    (None, None) => {
                        return Err(Error::InvalidConfig(
                            "model context needs --lang or --corpus".into(),
                        ))
                    }
                };
                let max_len = r.max_len.unwrap_or_else(|| lang.max_string_len());
                Scorer::Theory(build_context_theory(lang, max_len)?)
            }
            ModelKind::Docproj => {
                let docs = load_corpus(require(&r.corpus, "corpus", r.kind)?, r.lowercase)?;
                Scorer::Docs(DocumentIndex::from_corpus(&docs)?)
            }
            ModelKind::Lda => {
                let text = read_to_string(require(&r.lda_model, "lda-model", r.kind)?)?;
                Scorer::Lda(LdaModel::parse_tsv(&text)?, r.mc.clone())
            }
            ModelKind::Pregroup => {
                let text = read_to_string(require(&r.lexicon, "lexicon", r.kind)?)?;
                Scorer::Theory(Lexicon::parse(&text)?.context_theory()?)
            }
        })
    }

    fn knows(&self, word: &str) -> bool {
        match self {
            Scorer::Theory(t) => t.contains_word(word),
            // unseen words have empty postings, which is a valid projection
            Scorer::Docs(_) => true,
            Scorer::Lda(m, _) => m.contains(word),
        }
    }

    fn score(&self, x: &[String], y: &[String]) -> Result<f64> {
        match self {
            Scorer::Theory(t) => t.string_entailment(x, y),
            Scorer::Docs(d) => d.entail(x, y),
            Scorer::Lda(m, mc) => lda::entail_lda(m, x, y, mc),
        }
    }

    /// Whether the support of `x̂` lies inside the support of `ŷ`.
    fn support_inclusion(&self, x: &[String], y: &[String]) -> Option<bool> {
        let Scorer::Theory(t) = self else {
            return None;
        };
        let xv = t.psi().apply(&t.lift_string(x).ok()?);
        let yv = t.psi().apply(&t.lift_string(y).ok()?);
        Some(xv.keys().all(|k| yv.contains_key(k)))
    }
}

/// Drops out-of-vocabulary words under the skip policy, collecting warnings.
fn filter_oov(
    scorer: &Scorer,
    oov: OovPolicy,
    words: &[String],
    warnings: &mut Vec<String>,
) -> Result<Vec<String>> {
    let mut out = Vec::with_capacity(words.len());
    for w in words {
        if scorer.knows(w) {
            out.push(w.clone());
        } else if oov == OovPolicy::Skip {
            warnings.push(format!("skipping unknown word `{w}`"));
        } else {
            return Err(Error::UnknownWord(w.clone()));
        }
    }
    Ok(out)
}

/// Output of a command and the exit status it implies.
#[derive(Debug)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: u8,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome {
            stdout,
            stderr: String::new(),
            code: 0,
        }
    }
}

pub fn exit_code(e: &Error) -> u8 {
    if e.is_input_error() {
        EXIT_INPUT
    } else {
        EXIT_MODEL
    }
}

/// Runs a parsed command line.
pub fn execute(cli: &Cli) -> Outcome {
    match dispatch(cli) {
        Ok(o) => o,
        Err(e) => Outcome {
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
            code: exit_code(&e),
        },
    }
}

fn to_json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("reports serialize");
    s.push('\n');
    s
}

fn dispatch(cli: &Cli) -> Result<Outcome> {
    let cfg = match &cli.config {
        Some(p) => Config::load(p)?,
        None => Config::default(),
    };
    let seed = match cli.seed {
        Some(s) => s,
        None => cfg.get_parsed("seed")?.unwrap_or(0),
    };
    match &cli.command {
        Command::BuildLang {
            corpus,
            lowercase,
            out,
            max_len,
        } => build_lang(cli.json, corpus, *lowercase, out.as_deref(), *max_len),
        Command::Entail { model, x, y } => entail(cli.json, &resolve(model, &cfg, seed)?, x, y),
        Command::RteEval {
            model,
            dataset,
            threshold,
        } => {
            let threshold = match threshold {
                Some(t) => *t,
                None => cfg.get_parsed("threshold")?.unwrap_or(0.5),
            };
            rte_eval(cli.json, &resolve(model, &cfg, seed)?, dataset, threshold)
        }
        Command::LdaTrain {
            corpus,
            topics,
            iterations,
            burn_in,
            alpha,
            beta_smooth,
            lowercase,
            out,
        } => {
            let d = SamplerConfig::default();
            let sampler = SamplerConfig {
                topics: *topics,
                alpha: alpha.or(cfg.get_parsed("alpha")?),
                beta_smooth: beta_smooth
                    .or(cfg.get_parsed("beta_smooth")?)
                    .unwrap_or(d.beta_smooth),
                iterations: iterations
                    .or(cfg.get_parsed("iterations")?)
                    .unwrap_or(d.iterations),
                burn_in: burn_in.or(cfg.get_parsed("burn_in")?).unwrap_or(d.burn_in),
                seed,
            };
            lda_train(cli.json, corpus, *lowercase, &sampler, out)
        }
        Command::PregroupParse {
            lexicon,
            target,
            sentence,
        } => pregroup_parse(cli.json, lexicon, target, sentence),
        Command::PregroupCompose { lexicon, sentence } => {
            pregroup_compose(cli.json, lexicon, sentence)
        }
        Command::Demo => {
            let report = crate::demo::run_demo();
            let stdout = if cli.json {
                to_json(&report)
            } else {
                format!("{report}\n")
            };
            Ok(Outcome {
                stdout,
                stderr: String::new(),
                code: if report.all_passed() { 0 } else { EXIT_MODEL },
            })
        }
    }
}

fn build_lang(
    json: bool,
    corpus: &Path,
    lowercase: bool,
    out: Option<&Path>,
    max_len: Option<usize>,
) -> Result<Outcome> {
    let lang = Language::from_corpus(&load_corpus(corpus, lowercase)?)?;
    if let Some(p) = out {
        std::fs::write(p, lang.to_tsv()).map_err(|e| Error::io(p, e))?;
    }
    let basis = match max_len {
        Some(m) => Some(ContextBasis::select(&lang, m)?),
        None => None,
    };
    let summary = json!({
        "class": lang.classify(),
        "support": lang.support_len(),
        "alphabet": lang.alphabet(),
        "average_length": lang.average_length()?,
        "max_len": max_len,
        "basis": basis.as_ref().map(|b| {
            b.strings().iter().map(|s| s.join(" ")).collect::<Vec<_>>()
        }),
    });
    if json {
        return Ok(Outcome::ok(to_json(&summary)));
    }
    let mut s = format!(
        "class: {}\nsupport: {}\nalphabet: {}\naverage length: {}\n",
        lang.classify(),
        lang.support_len(),
        lang.alphabet().into_iter().collect::<Vec<_>>().join(" "),
        lang.average_length()?
    );
    if let Some(b) = basis {
        let strings: Vec<String> = b
            .strings()
            .iter()
            .map(|w| {
                if w.is_empty() {
                    "ε".to_owned()
                } else {
                    w.join(" ")
                }
            })
            .collect();
        s.push_str(&format!("basis ({}): {}\n", b.len(), strings.join(", ")));
    }
    if out.is_none() {
        s.push_str(&lang.to_tsv());
    }
    Ok(Outcome::ok(s))
}

#[derive(Serialize)]
struct Provenance {
    model: ModelKind,
    seed: u64,
    #[serde(rename = "N", skip_serializing_if = "Option::is_none")]
    doc_length: Option<u64>,
    #[serde(rename = "M", skip_serializing_if = "Option::is_none")]
    samples: Option<usize>,
}

impl Provenance {
    fn of(r: &Resolved) -> Self {
        let lda = r.kind == ModelKind::Lda;
        Provenance {
            model: r.kind,
            seed: r.seed,
            doc_length: lda.then_some(r.mc.doc_length),
            samples: lda.then_some(r.mc.samples),
        }
    }

    fn text(&self) -> String {
        let mut s = format!("model: {:?}\nseed: {}\n", self.model, self.seed).to_lowercase();
        if let (Some(n), Some(m)) = (self.doc_length, self.samples) {
            s.push_str(&format!("N: {n}\nM: {m}\n"));
        }
        s
    }
}

fn entail(json: bool, r: &Resolved, x: &str, y: &str) -> Result<Outcome> {
    let x = crate::tokenize(x, r.lowercase);
    let y = crate::tokenize(y, r.lowercase);
    let vocab: BTreeSet<String> = x.iter().chain(&y).cloned().collect();
    let scorer = Scorer::build(r, &vocab)?;
    let mut warnings = Vec::new();
    let x = filter_oov(&scorer, r.oov, &x, &mut warnings)?;
    let y = filter_oov(&scorer, r.oov, &y, &mut warnings)?;
    let score = scorer.score(&x, &y)?;
    let inclusion = scorer.support_inclusion(&x, &y);
    let prov = Provenance::of(r);
    let stdout = if json {
        to_json(&json!({
            "x": x.join(" "),
            "y": y.join(" "),
            "score": score,
            "support_inclusion": inclusion,
            "provenance": prov,
        }))
    } else {
        let mut s = format!("score: {score}\n");
        if let Some(i) = inclusion {
            s.push_str(&format!("support inclusion: {i}\n"));
        }
        s + &prov.text()
    };
    Ok(Outcome {
        stdout,
        stderr: warnings.iter().map(|w| format!("warning: {w}\n")).collect(),
        code: 0,
    })
}

fn rte_eval(json: bool, r: &Resolved, dataset: &Path, threshold: f64) -> Result<Outcome> {
    let pairs = rte::parse_dataset(&read_to_string(dataset)?, r.lowercase)?;
    let vocab: BTreeSet<String> = pairs
        .iter()
        .flat_map(|p| p.text.iter().chain(&p.hypothesis).cloned())
        .collect();
    let scorer = Scorer::build(r, &vocab)?;
    let mut warnings = Vec::new();
    let report = rte::run_rte_eval(&pairs, threshold, |p| {
        let t = filter_oov(&scorer, r.oov, &p.text, &mut warnings)?;
        let h = filter_oov(&scorer, r.oov, &p.hypothesis, &mut warnings)?;
        scorer.score(&t, &h)
    })?;
    let prov = Provenance::of(r);
    let stdout = if json {
        to_json(&json!({ "report": report, "provenance": prov }))
    } else {
        let mut s = format!(
            "n: {}\naccuracy: {}\ncws: {}\nthreshold: {}\n",
            report.n, report.accuracy, report.cws, report.threshold
        );
        s.push_str(&prov.text());
        for p in &report.pairs {
            s.push_str(&format!(
                "{}\t{}\t{}\t{}{}\n",
                p.id,
                p.score,
                u8::from(p.label),
                u8::from(p.predicted),
                p.note
                    .as_deref()
                    .map(|n| format!("\t{n}"))
                    .unwrap_or_default()
            ));
        }
        s
    };
    Ok(Outcome {
        stdout,
        stderr: warnings.iter().map(|w| format!("warning: {w}\n")).collect(),
        code: 0,
    })
}

fn lda_train(
    json: bool,
    corpus: &Path,
    lowercase: bool,
    cfg: &SamplerConfig,
    out: &Path,
) -> Result<Outcome> {
    let docs = load_corpus(corpus, lowercase)?;
    let model = lda::train_lda(&docs, cfg)?;
    std::fs::write(out, model.to_tsv()).map_err(|e| Error::io(out, e))?;
    let summary = json!({
        "topics": model.topics(),
        "vocabulary": model.vocab().len(),
        "alpha": model.alpha().first(),
        "beta_smooth": cfg.beta_smooth,
        "iterations": cfg.iterations,
        "burn_in": cfg.burn_in,
        "seed": cfg.seed,
        "out": out.display().to_string(),
    });
    if json {
        return Ok(Outcome::ok(to_json(&summary)));
    }
    Ok(Outcome::ok(format!(
        "topics: {}\nvocabulary: {}\nalpha: {}\niterations: {} (burn-in {})\nseed: {}\nwrote {}\n",
        model.topics(),
        model.vocab().len(),
        model.alpha()[0],
        cfg.iterations,
        cfg.burn_in,
        cfg.seed,
        out.display()
    )))
}

fn sentence_words(sentence: &[String]) -> Vec<String> {
    sentence
        .iter()
        .flat_map(|s| crate::tokenize(s, false))
        .collect()
}

fn pregroup_parse(
    json: bool,
    lexicon: &Path,
    target: &str,
    sentence: &[String],
) -> Result<Outcome> {
    let lex = Lexicon::parse(&read_to_string(lexicon)?)?;
    let words = sentence_words(sentence);
    let ty = lex.sentence_type(&words)?;
    let target: ComplexType = target.parse()?;
    let derivation = ty.reduces_to(&target);
    if json {
        return Ok(Outcome::ok(to_json(&json!({
            "type": ty.to_string(),
            "target": target.to_string(),
            "reduces": derivation.is_some(),
            "derivation": derivation.as_ref().map(|d| {
                d.states().iter().map(ToString::to_string).collect::<Vec<_>>()
            }),
        }))));
    }
    let mut s = format!(
        "type: {ty}\nreduces to {target}: {}\n",
        derivation.is_some()
    );
    if let Some(d) = derivation {
        s.push_str(&format!("derivation: {d}\n"));
    }
    Ok(Outcome::ok(s))
}

fn pregroup_compose(json: bool, lexicon: &Path, sentence: &[String]) -> Result<Outcome> {
    let lex = Lexicon::parse(&read_to_string(lexicon)?)?;
    let words = sentence_words(sentence);
    let meaning = lex.compose(&words)?;
    let types: Vec<String> = meaning.types().iter().map(ToString::to_string).collect();
    if json {
        let expanded: Vec<(String, f64)> = meaning
            .expand()
            .iter()
            .map(|(k, &c)| (k.to_string(), c))
            .collect();
        return Ok(Outcome::ok(to_json(&json!({
            "sentence": words.join(" "),
            "types": types,
            "meaning": meaning.to_string(),
            "expanded": expanded,
        }))));
    }
    Ok(Outcome::ok(format!(
        "types: {}\nmeaning: {meaning}\n",
        if types.is_empty() {
            "-".to_owned()
        } else {
            types.join(", ")
        }
    )))
}
