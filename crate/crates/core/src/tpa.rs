//! Text-to-pictogram accuracy.
//!
//! For every counted word, a correct conversion scores one point and, with
//! the penalty enabled, a wrong entity label costs one point. Function-class
//! words (DET/ADP/CONJ) and stopwords can be excluded from the count. The
//! result is `(correct - penalties) / (N + epsilon)`, reported on a ×100
//! scale.

use std::fmt::Write as _;
use std::io::BufRead;
use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::par::{self, Execution};
use crate::textproc::{NeLabel, Token};

#[derive(Debug, Error)]
pub enum TpaError {
    #[error("sample {index}: {words} counted words but {gold_tp} gold_tp and {gold_ne} gold_ne labels")]
    Misaligned {
        index: usize,
        words: usize,
        gold_tp: usize,
        gold_ne: usize,
    },
    #[error("empty corpus")]
    EmptyCorpus,
    #[error("line {line}: {reason}")]
    Malformed { line: usize, reason: String },
    #[error("epsilon must be positive, got {0}")]
    BadEpsilon(f64),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum MatchMode {
    /// A word is correct when its rendered-ness agrees with the gold label.
    #[default]
    Lenient,
    /// A word is correct when the predicted entry id equals the gold id.
    Strict,
}

pub const DEFAULT_EPSILON: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TpaConfig {
    pub delete_pos: bool,
    pub delete_stopwords: bool,
    pub apply_penalty: bool,
    pub epsilon: f64,
    pub match_mode: MatchMode,
}

impl Default for TpaConfig {
    fn default() -> Self {
        TpaConfig {
            delete_pos: true,
            delete_stopwords: true,
            apply_penalty: false,
            epsilon: DEFAULT_EPSILON,
            match_mode: MatchMode::Lenient,
        }
    }
}

impl TpaConfig {
    /// Deletion settings for case 1..=4: both filters, stopwords only,
    /// POS only, neither.
    pub fn for_case(case: u8, apply_penalty: bool) -> Option<Self> {
        let (delete_pos, delete_stopwords) = match case {
            1 => (true, true),
            2 => (false, true),
            3 => (true, false),
            4 => (false, false),
            _ => return None,
        };
        Some(TpaConfig {
            delete_pos,
            delete_stopwords,
            apply_penalty,
            ..TpaConfig::default()
        })
    }
}

/// Gold conversion label for one word: an entry id, `null` for "no
/// pictogram", or a plain should-convert flag.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(from = "Option<RawGold>", into = "Option<RawGold>")]
pub enum GoldTp {
    Entry(String),
    None,
    Flag(bool),
}

#[derive(Clone, Serialize, Deserialize)]
#[serde(untagged)]
enum RawGold {
    Flag(bool),
    Entry(String),
}

impl From<Option<RawGold>> for GoldTp {
    fn from(r: Option<RawGold>) -> Self {
        match r {
            None => GoldTp::None,
            Some(RawGold::Flag(b)) => GoldTp::Flag(b),
            Some(RawGold::Entry(s)) => GoldTp::Entry(s),
        }
    }
}

impl From<GoldTp> for Option<RawGold> {
    fn from(g: GoldTp) -> Self {
        match g {
            GoldTp::None => None,
            GoldTp::Flag(b) => Some(RawGold::Flag(b)),
            GoldTp::Entry(s) => Some(RawGold::Entry(s)),
        }
    }
}

impl GoldTp {
    pub fn should_render(&self) -> bool {
        match self {
            GoldTp::Entry(_) => true,
            GoldTp::None => false,
            GoldTp::Flag(b) => *b,
        }
    }

    /// Kronecker delta between this gold label and a predicted entry.
    pub fn agrees(&self, predicted: Option<&str>, mode: MatchMode) -> bool {
        match (mode, self) {
            (MatchMode::Strict, GoldTp::Entry(id)) => predicted == Some(id.as_str()),
            (MatchMode::Strict, GoldTp::None) => predicted.is_none(),
            _ => predicted.is_some() == self.should_render(),
        }
    }
}

/// One annotated sentence. Gold arrays have one element per non-punctuation
/// token of `sentence`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TpaSample {
    pub sentence: String,
    pub gold_tp: Vec<GoldTp>,
    pub gold_ne: Vec<NeLabel>,
}

pub fn load_corpus<R: BufRead>(source: R) -> Result<Vec<TpaSample>, TpaError> {
    let mut out = Vec::new();
    for (i, line) in source.lines().enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let s = serde_json::from_str(&line).map_err(|e| TpaError::Malformed {
            line: i + 1,
            reason: e.to_string(),
        })?;
        out.push(s);
    }
    Ok(out)
}

pub fn load_corpus_path(path: &Path) -> Result<Vec<TpaSample>, TpaError> {
    load_corpus(std::io::BufReader::new(std::fs::File::open(path)?))
}

/// What the system under test produced for one word.
#[derive(Debug, Clone, PartialEq)]
pub struct WordPrediction {
    /// The analyzed token; its `pos` and `is_stopword` drive filtering.
    pub token: Token,
    pub entry_id: Option<String>,
    pub ne: NeLabel,
}

/// Produces per-word predictions for the non-punctuation tokens of a
/// sentence, in order.
pub trait TpaPredictor: Sync {
    fn predict(&self, sentence: &str) -> Vec<WordPrediction>;
}

impl<F> TpaPredictor for F
where
    F: Fn(&str) -> Vec<WordPrediction> + Sync,
{
    fn predict(&self, sentence: &str) -> Vec<WordPrediction> {
        self(sentence)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct SentenceBreakdown {
    pub index: usize,
    pub counted: usize,
    pub correct: usize,
    pub penalties: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TpaReport {
    pub config: TpaConfig,
    /// `100 * ratio`.
    pub score: f64,
    pub ratio: f64,
    pub counted: usize,
    pub correct: usize,
    pub penalties: usize,
    pub per_sentence: Vec<SentenceBreakdown>,
    /// Set when no word was counted, in which case the score is 0.
    pub no_counted_words: bool,
}

/// Runs the predictor over every sample and checks alignment.
pub fn predict_corpus<P: TpaPredictor + ?Sized>(
    corpus: &[TpaSample],
    predictor: &P,
    exec: Execution,
) -> Result<Vec<Vec<WordPrediction>>, TpaError> {
    if corpus.is_empty() {
        return Err(TpaError::EmptyCorpus);
    }
    par::try_map_indexed(exec, corpus, |index, s| {
        let preds = predictor.predict(&s.sentence);
        if preds.len() != s.gold_tp.len() || preds.len() != s.gold_ne.len() {
            return Err(TpaError::Misaligned {
                index,
                words: preds.len(),
                gold_tp: s.gold_tp.len(),
                gold_ne: s.gold_ne.len(),
            });
        }
        Ok(preds)
    })
}

fn score_sentence(
    index: usize,
    sample: &TpaSample,
    preds: &[WordPrediction],
    cfg: &TpaConfig,
) -> SentenceBreakdown {
    let mut b = SentenceBreakdown {
        index,
        ..Default::default()
    };
    for ((p, y), z) in preds.iter().zip(&sample.gold_tp).zip(&sample.gold_ne) {
        if cfg.delete_pos && p.token.pos.is_function_class() {
            continue;
        }
        if cfg.delete_stopwords && p.token.is_stopword {
            continue;
        }
        b.counted += 1;
        if y.agrees(p.entry_id.as_deref(), cfg.match_mode) {
            b.correct += 1;
        }
        if cfg.apply_penalty && p.ne != *z {
            b.penalties += 1;
        }
    }
    b
}

/// Scores precomputed predictions (aligned with `corpus`).
pub fn score_predictions(
    corpus: &[TpaSample],
    predictions: &[Vec<WordPrediction>],
    cfg: &TpaConfig,
    exec: Execution,
) -> Result<TpaReport, TpaError> {
    if cfg.epsilon.is_nan() || cfg.epsilon <= 0.0 {
        return Err(TpaError::BadEpsilon(cfg.epsilon));
    }
    if corpus.is_empty() {
        return Err(TpaError::EmptyCorpus);
    }
    let pairs: Vec<(&TpaSample, &Vec<WordPrediction>)> = corpus.iter().zip(predictions).collect();
    let per_sentence = par::map_indexed(exec, &pairs, |i, (s, p)| score_sentence(i, s, p, cfg));
    let (mut counted, mut correct, mut penalties) = (0usize, 0usize, 0usize);
    for b in &per_sentence {
        counted += b.counted;
        correct += b.correct;
        penalties += b.penalties;
    }
    let ratio = if counted == 0 {
        0.0
    } else {
        (correct as f64 - penalties as f64) / (counted as f64 + cfg.epsilon)
    };
    Ok(TpaReport {
        config: *cfg,
        score: 100.0 * ratio,
        ratio,
        counted,
        correct,
        penalties,
        per_sentence,
        no_counted_words: counted == 0,
    })
}

pub fn tpa_score<P: TpaPredictor + ?Sized>(
    corpus: &[TpaSample],
    predictor: &P,
    cfg: &TpaConfig,
    exec: Execution,
) -> Result<TpaReport, TpaError> {
    let preds = predict_corpus(corpus, predictor, exec)?;
    score_predictions(corpus, &preds, cfg, exec)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CaseCell {
    pub case: u8,
    pub delete_pos: bool,
    pub delete_stopwords: bool,
    pub penalty: bool,
    pub report: TpaReport,
}

/// All four deletion cases, each without and with the entity penalty.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CaseMatrix {
    pub cells: Vec<CaseCell>,
}

impl CaseMatrix {
    pub fn cell(&self, case: u8, penalty: bool) -> Option<&CaseCell> {
        self.cells
            .iter()
            .find(|c| c.case == case && c.penalty == penalty)
    }

    /// Aligned text table, one row per case.
    pub fn to_table(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "{:<5} {:<10} {:<10} {:>9} {:>16} {:>7}",
            "case", "del_pos", "del_stop", "TPA", "TPA w/ penalty", "N"
        );
        for case in 1..=4u8 {
            let (Some(off), Some(on)) = (self.cell(case, false), self.cell(case, true)) else {
                continue;
            };
            let _ = writeln!(
                out,
                "{:<5} {:<10} {:<10} {:>9.2} {:>16.2} {:>7}",
                case,
                off.delete_pos,
                off.delete_stopwords,
                off.report.score,
                on.report.score,
                off.report.counted
            );
        }
        out
    }
}

pub fn run_case_matrix<P: TpaPredictor + ?Sized>(
    corpus: &[TpaSample],
    predictor: &P,
    epsilon: f64,
    match_mode: MatchMode,
    exec: Execution,
) -> Result<CaseMatrix, TpaError> {
    let preds = predict_corpus(corpus, predictor, exec)?;
    let mut cells = Vec::with_capacity(8);
    for case in 1..=4u8 {
        for penalty in [false, true] {
            let mut cfg = TpaConfig::for_case(case, penalty).expect("case in range");
            cfg.epsilon = epsilon;
            cfg.match_mode = match_mode;
            let report = score_predictions(corpus, &preds, &cfg, exec)?;
            cells.push(CaseCell {
                case,
                delete_pos: cfg.delete_pos,
                delete_stopwords: cfg.delete_stopwords,
                penalty,
                report,
            });
        }
    }
    Ok(CaseMatrix { cells })
}
