//! End-to-end translation: correction, analysis, pronoun resolution,
//! longest-match mapping, out-of-vocabulary resolution and rendering.

use std::collections::BTreeSet;
use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bundled;
use crate::gec::{self, Edit, GecBackend, GecConfig, GecRuleSet};
use crate::lexicon::{Lexicon, LexiconError, LexiconFormat};
use crate::nlu::{self, EmbeddingError, EmbeddingTable, NluResources, SessionContext, SynonymGraph};
use crate::par::{self, Execution};
use crate::textproc::{analyze, ResourceError, TagResources};
use crate::tp::{self, PictogramSequence, SegmentKind, TpError};
use crate::tpa::{TpaPredictor, WordPrediction};

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("line {line}: expected key = value")]
    Syntax { line: usize },
    #[error("unknown config key {0:?}")]
    UnknownKey(String),
    #[error("invalid value for {key}: {reason}")]
    Value { key: String, reason: String },
    #[error("tau must lie in [0, 1], got {0}")]
    Tau(f64),
    #[error("external GEC backend needs gec_endpoint")]
    MissingEndpoint,
    #[error("cannot read config {path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
}

#[derive(Debug, Error)]
pub enum PipelineError {
    #[error("input is empty")]
    EmptyInput,
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error("lexicon {path}: {source}")]
    Lexicon {
        path: String,
        source: LexiconError,
    },
    #[error(transparent)]
    Resource(#[from] ResourceError),
    #[error("{path}: {source}")]
    Embeddings {
        path: String,
        source: EmbeddingError,
    },
    #[error(transparent)]
    Render(#[from] TpError),
}

/// Everything needed to build a [`Pipeline`]. Unset paths fall back to the
/// bundled resources (demo lexicon, English tag data, demo synonyms).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PipelineConfig {
    pub lexicon: Option<PathBuf>,
    pub lexicon_format: Option<LexiconFormat>,
    pub tag_dictionary: Option<PathBuf>,
    pub suffix_rules: Option<PathBuf>,
    pub stopwords: Option<PathBuf>,
    pub gazetteer: Option<PathBuf>,
    pub gec_rules_dir: Option<PathBuf>,
    pub embeddings: Option<PathBuf>,
    pub synonyms: Option<PathBuf>,
    pub gec_backend: GecBackend,
    pub gec_endpoint: Option<String>,
    pub gec_timeout_ms: u64,
    pub tau: f64,
    pub session_capacity: usize,
    pub session_idle_secs: u64,
    pub bind: String,
    pub asset_root: Option<PathBuf>,
    /// Allows endpoints that read server-side files by path.
    pub local_mode: bool,
}

impl Default for PipelineConfig {
    fn default() -> Self {
        PipelineConfig {
            lexicon: None,
            lexicon_format: None,
            tag_dictionary: None,
            suffix_rules: None,
            stopwords: None,
            gazetteer: None,
            gec_rules_dir: None,
            embeddings: None,
            synonyms: None,
            gec_backend: GecBackend::Rules,
            gec_endpoint: None,
            gec_timeout_ms: 2000,
            tau: nlu::DEFAULT_TAU,
            session_capacity: nlu::DEFAULT_SESSION_CAPACITY,
            session_idle_secs: 30 * 60,
            bind: "127.0.0.1:8080".into(),
            asset_root: None,
            local_mode: false,
        }
    }
}

pub const ENV_PREFIX: &str = "PICTOPIPE_";

fn parse_value<T: FromStr>(key: &str, value: &str) -> Result<T, ConfigError>
where
    T::Err: std::fmt::Display,
{
    value.parse().map_err(|e: T::Err| ConfigError::Value {
        key: key.into(),
        reason: e.to_string(),
    })
}

fn opt_path(value: &str) -> Option<PathBuf> {
    (!value.is_empty()).then(|| PathBuf::from(value))
}

impl PipelineConfig {
    pub const KEYS: &'static [&'static str] = &[
        "lexicon",
        "lexicon_format",
        "tag_dictionary",
        "suffix_rules",
        "stopwords",
        "gazetteer",
        "gec_rules_dir",
        "embeddings",
        "synonyms",
        "gec_backend",
        "gec_endpoint",
        "gec_timeout_ms",
        "tau",
        "session_capacity",
        "session_idle_secs",
        "bind",
        "asset_root",
        "local_mode",
    ];

    /// Sets one field from its textual form. An empty value clears optional
    /// fields.
    pub fn set(&mut self, key: &str, value: &str) -> Result<(), ConfigError> {
        let value = value.trim();
        match key {
            "lexicon" => self.lexicon = opt_path(value),
            "lexicon_format" => {
                self.lexicon_format = if value.is_empty() {
                    None
                } else {
                    Some(value.parse().map_err(|_| ConfigError::Value {
                        key: key.into(),
                        reason: "expected jsonl or tsv".into(),
                    })?)
                }
            }
            "tag_dictionary" => self.tag_dictionary = opt_path(value),
            "suffix_rules" => self.suffix_rules = opt_path(value),
            "stopwords" => self.stopwords = opt_path(value),
            "gazetteer" => self.gazetteer = opt_path(value),
            "gec_rules_dir" => self.gec_rules_dir = opt_path(value),
            "embeddings" => self.embeddings = opt_path(value),
            "synonyms" => self.synonyms = opt_path(value),
            "gec_backend" => {
                self.gec_backend = match value.to_ascii_lowercase().as_str() {
                    "rules" => GecBackend::Rules,
                    "external" => GecBackend::External,
                    _ => {
                        return Err(ConfigError::Value {
                            key: key.into(),
                            reason: "expected rules or external".into(),
                        })
                    }
                }
            }
            "gec_endpoint" => self.gec_endpoint = (!value.is_empty()).then(|| value.to_string()),
            "gec_timeout_ms" => self.gec_timeout_ms = parse_value(key, value)?,
            "tau" => self.tau = parse_value(key, value)?,
            "session_capacity" => self.session_capacity = parse_value(key, value)?,
            "session_idle_secs" => self.session_idle_secs = parse_value(key, value)?,
            "bind" => self.bind = value.to_string(),
            "asset_root" => self.asset_root = opt_path(value),
            "local_mode" => self.local_mode = parse_value(key, value)?,
            _ => return Err(ConfigError::UnknownKey(key.into())),
        }
        Ok(())
    }

    /// Parses `key = value` lines. Blank lines, `#` lines and a trailing
    /// `#` comment preceded by whitespace are ignored.
    pub fn parse(text: &str) -> Result<Self, ConfigError> {
        let mut cfg = PipelineConfig::default();
        for (i, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (k, v) = line.split_once('=').ok_or(ConfigError::Syntax { line: i + 1 })?;
            let v = match v.match_indices('#').find(|(at, _)| v[..*at].ends_with(char::is_whitespace)) {
                Some((at, _)) => &v[..at],
                None => v,
            };
            cfg.set(k.trim(), v)?;
        }
        Ok(cfg)
    }

    pub fn from_file(path: &Path) -> Result<Self, ConfigError> {
        let text = std::fs::read_to_string(path).map_err(|source| ConfigError::Io {
            path: path.to_path_buf(),
            source,
        })?;
        Self::parse(&text)
    }

    /// Applies `PICTOPIPE_<KEY>` overrides from the given variables. Unknown
    /// `PICTOPIPE_` variables are ignored.
    pub fn apply_env<I, K, V>(&mut self, vars: I) -> Result<(), ConfigError>
    where
        I: IntoIterator<Item = (K, V)>,
        K: AsRef<str>,
        V: AsRef<str>,
    {
        for (k, v) in vars {
            let Some(key) = k.as_ref().strip_prefix(ENV_PREFIX) else {
                continue;
            };
            let key = key.to_ascii_lowercase();
            if Self::KEYS.contains(&key.as_str()) {
                self.set(&key, v.as_ref())?;
            }
        }
        Ok(())
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        if !(0.0..=1.0).contains(&self.tau) {
            return Err(ConfigError::Tau(self.tau));
        }
        if self.gec_backend == GecBackend::External && self.gec_endpoint.is_none() {
            return Err(ConfigError::MissingEndpoint);
        }
        Ok(())
    }

    pub fn gec_config(&self) -> GecConfig {
        match (&self.gec_backend, &self.gec_endpoint) {
            (GecBackend::External, Some(endpoint)) => GecConfig::External {
                endpoint: endpoint.clone(),
                timeout: Duration::from_millis(self.gec_timeout_ms),
            },
            _ => GecConfig::Rules,
        }
    }
}

/// Loaded, immutable resources. Safe to share across threads.
#[derive(Debug)]
pub struct Pipeline {
    lexicon: Lexicon,
    vocab: BTreeSet<String>,
    tags: TagResources,
    gec_rules: GecRuleSet,
    gec: GecConfig,
    nlu: NluResources,
    bundled_lexicon: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SegmentView {
    pub kind: String,
    pub words: String,
    pub entry_id: Option<String>,
    pub image_ref: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub similarity: Option<f64>,
}

/// Wall-clock time per stage, in microseconds.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct StageTiming {
    pub gec_us: u64,
    pub analyze_us: u64,
    pub tp_us: u64,
    pub nlu_us: u64,
    pub total_us: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TranslationResult {
    pub input: String,
    pub corrected: String,
    pub edits: Vec<Edit>,
    pub gec_backend: GecBackend,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gec_fallback: Option<String>,
    pub segments: Vec<SegmentView>,
    pub images: Vec<String>,
    pub timing: StageTiming,
}

fn micros(since: Instant) -> u64 {
    since.elapsed().as_micros().try_into().unwrap_or(u64::MAX)
}

impl Pipeline {
    pub fn new(
        lexicon: Lexicon,
        tags: TagResources,
        gec_rules: GecRuleSet,
        gec: GecConfig,
        nlu: NluResources,
    ) -> Self {
        Pipeline {
            vocab: lexicon.unigram_vocab(),
            lexicon,
            tags,
            gec_rules,
            gec,
            nlu,
            bundled_lexicon: false,
        }
    }

    /// The demo lexicon with all bundled resources and rule-based
    /// correction.
    pub fn bundled() -> Self {
        let lexicon = Lexicon::load(bundled::DEMO_LEXICON.as_bytes(), LexiconFormat::Tsv)
            .expect("bundled lexicon is valid");
        let mut p = Pipeline::new(
            lexicon,
            TagResources::bundled(),
            GecRuleSet::bundled(),
            GecConfig::Rules,
            NluResources {
                synonyms: Some(SynonymGraph::bundled()),
                ..NluResources::default()
            },
        );
        p.bundled_lexicon = true;
        p
    }

    pub fn from_config(cfg: &PipelineConfig) -> Result<Self, PipelineError> {
        cfg.validate()?;
        let (lexicon, bundled_lexicon) = match &cfg.lexicon {
            Some(path) => (
                Lexicon::load_path(path, cfg.lexicon_format).map_err(|source| {
                    PipelineError::Lexicon {
                        path: path.display().to_string(),
                        source,
                    }
                })?,
                false,
            ),
            None => (
                Lexicon::load(bundled::DEMO_LEXICON.as_bytes(), LexiconFormat::Tsv)
                    .expect("bundled lexicon is valid"),
                true,
            ),
        };
        let tags = TagResources::load_paths(
            cfg.tag_dictionary.as_deref(),
            cfg.suffix_rules.as_deref(),
            cfg.stopwords.as_deref(),
            cfg.gazetteer.as_deref(),
        )?;
        let gec_rules = match &cfg.gec_rules_dir {
            Some(dir) => GecRuleSet::load_dir(dir)?,
            None => GecRuleSet::bundled(),
        };
        let emb_err = |path: &Path| {
            let path = path.display().to_string();
            move |source| PipelineError::Embeddings { path, source }
        };
        let embeddings = match &cfg.embeddings {
            Some(p) => Some(EmbeddingTable::load_path(p).map_err(emb_err(p))?),
            None => None,
        };
        let synonyms = match &cfg.synonyms {
            Some(p) => SynonymGraph::load_path(p).map_err(emb_err(p))?,
            None => SynonymGraph::bundled(),
        };
        let mut p = Pipeline::new(
            lexicon,
            tags,
            gec_rules,
            cfg.gec_config(),
            NluResources {
                embeddings,
                synonyms: Some(synonyms),
                tau: cfg.tau,
            },
        );
        p.bundled_lexicon = bundled_lexicon;
        Ok(p)
    }

    pub fn lexicon(&self) -> &Lexicon {
        &self.lexicon
    }

    pub fn tags(&self) -> &TagResources {
        &self.tags
    }

    pub fn gec_rules(&self) -> &GecRuleSet {
        &self.gec_rules
    }

    pub fn nlu(&self) -> &NluResources {
        &self.nlu
    }

    /// Runs only the correction stage with the configured backend.
    pub fn correct(&self, text: &str) -> gec::GecResult {
        gec::correct(text, &self.gec_rules, &self.gec)
    }

    /// Bytes of a bundled demo image, available only while the bundled
    /// lexicon is in use.
    pub fn bundled_asset(&self, image_ref: &str) -> Option<&'static [u8]> {
        if !self.bundled_lexicon {
            return None;
        }
        bundled::DEMO_ASSETS
            .iter()
            .find(|(r, _)| *r == image_ref)
            .map(|(_, b)| *b)
    }

    /// Maps already-corrected text without touching any session.
    pub fn map_sentence(&self, text: &str) -> PictogramSequence {
        let tokens = analyze(text, &self.tags);
        let seq = tp::map_text(&tokens, &self.lexicon);
        nlu::resolve_unknowns(&seq, &self.lexicon, &self.vocab, &self.nlu)
    }

    /// Translates one utterance and records its nouns in `session`.
    pub fn process(
        &self,
        text: &str,
        session: &mut SessionContext,
    ) -> Result<TranslationResult, PipelineError> {
        if text.trim().is_empty() {
            return Err(PipelineError::EmptyInput);
        }
        let t0 = Instant::now();
        let g = gec::correct(text, &self.gec_rules, &self.gec);
        let gec_us = micros(t0);

        let t = Instant::now();
        let tokens = analyze(&g.corrected, &self.tags);
        let tokens = nlu::resolve_pronouns(&tokens, session, &self.lexicon);
        let analyze_us = micros(t);

        let t = Instant::now();
        let seq = tp::map_text(&tokens, &self.lexicon);
        let tp_us = micros(t);

        let t = Instant::now();
        let seq = nlu::resolve_unknowns(&seq, &self.lexicon, &self.vocab, &self.nlu);
        let nlu_us = micros(t);

        let images = tp::render(&seq, &self.lexicon)?;
        let segments = seq
            .segments
            .iter()
            .map(|s| {
                let entry = s.kind.entry_id().and_then(|id| self.lexicon.get(id));
                SegmentView {
                    kind: s.kind.name().to_string(),
                    words: seq.words(s),
                    entry_id: entry.map(|e| e.id.clone()),
                    image_ref: entry.map(|e| e.image_ref.clone()),
                    similarity: match &s.kind {
                        SegmentKind::Substituted { similarity, .. } => Some(*similarity),
                        _ => None,
                    },
                }
            })
            .collect();
        session.observe(&seq.source);
        Ok(TranslationResult {
            input: text.to_string(),
            corrected: g.corrected,
            edits: g.edits,
            gec_backend: g.backend,
            gec_fallback: g.fallback,
            segments,
            images,
            timing: StageTiming {
                gec_us,
                analyze_us,
                tp_us,
                nlu_us,
                total_us: micros(t0),
            },
        })
    }

    /// Translates independent utterances, each with a fresh session.
    pub fn process_batch<S: AsRef<str> + Sync>(
        &self,
        texts: &[S],
        exec: Execution,
    ) -> Vec<Result<TranslationResult, PipelineError>> {
        par::map(exec, texts, |t| {
            self.process(t.as_ref(), &mut SessionContext::default())
        })
    }
}

/// Scores the mapping stages on the sentence as written (no correction, no
/// session), so predictions stay aligned with the gold tokenization.
impl TpaPredictor for Pipeline {
    fn predict(&self, sentence: &str) -> Vec<WordPrediction> {
        let seq = self.map_sentence(sentence);
        let mut out = Vec::with_capacity(seq.source.len());
        for seg in &seq.segments {
            for tok in &seq.source[seg.start..seg.end] {
                if tok.is_punct() {
                    continue;
                }
                out.push(WordPrediction {
                    token: tok.clone(),
                    entry_id: seg.kind.entry_id().map(str::to_string),
                    ne: tok.ne,
                });
            }
        }
        out
    }
}
