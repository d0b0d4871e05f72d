//! Corpus BLEU and GLEU for correction output, and Spearman rank
//! correlation with a significance test.

use std::collections::HashMap;
use std::io::BufRead;
use std::path::Path;

use serde::{Deserialize, Serialize};
use statrs::distribution::{ContinuousCDF, StudentsT};
use thiserror::Error;

use crate::par::{self, Execution};
use crate::textproc::tokenize;

#[derive(Debug, Error, PartialEq)]
pub enum MetricError {
    #[error("empty corpus")]
    EmptyCorpus,
    #[error("pair {0}: empty hypothesis")]
    EmptyHypothesis(usize),
    #[error("pair {0}: no reference")]
    NoReference(usize),
    #[error("pair {0}: missing source")]
    MissingSource(usize),
    #[error("max_n must be at least 1")]
    BadOrder,
    #[error("inputs differ in length: {0} vs {1}")]
    LengthMismatch(usize, usize),
    #[error("need at least 3 observations, got {0}")]
    TooShort(usize),
    #[error("input is constant")]
    Constant,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScoredPair {
    pub source: Vec<String>,
    pub hypothesis: Vec<String>,
    pub references: Vec<Vec<String>>,
}

impl ScoredPair {
    /// Tokenizes each side with the pipeline tokenizer (punctuation split
    /// off, case kept).
    pub fn from_text(source: &str, hypothesis: &str, references: &[&str]) -> Self {
        ScoredPair {
            source: metric_tokens(source),
            hypothesis: metric_tokens(hypothesis),
            references: references.iter().map(|r| metric_tokens(r)).collect(),
        }
    }
}

pub fn metric_tokens(s: &str) -> Vec<String> {
    tokenize(s).into_iter().map(|t| t.surface).collect()
}

fn ngram_counts(tokens: &[String], n: usize) -> HashMap<&[String], usize> {
    let mut m = HashMap::new();
    if tokens.len() >= n {
        for g in tokens.windows(n) {
            *m.entry(g).or_insert(0) += 1;
        }
    }
    m
}

/// Per-reference maximum count of each n-gram.
fn max_ref_counts(refs: &[Vec<String>], n: usize) -> HashMap<&[String], usize> {
    let mut m: HashMap<&[String], usize> = HashMap::new();
    for r in refs {
        for (g, c) in ngram_counts(r, n) {
            let e = m.entry(g).or_insert(0);
            *e = (*e).max(c);
        }
    }
    m
}

/// Length of the reference closest to `hyp_len`, shorter on ties.
fn closest_ref_len(refs: &[Vec<String>], hyp_len: usize) -> usize {
    refs.iter()
        .map(Vec::len)
        .min_by_key(|&r| (r.abs_diff(hyp_len), r))
        .unwrap_or(0)
}

#[derive(Debug, Clone, Default)]
struct Stats {
    hyp_len: usize,
    ref_len: usize,
    /// (numerator, denominator) per order.
    orders: Vec<(usize, usize)>,
}

fn validate(corpus: &[ScoredPair], max_n: usize, need_source: bool) -> Result<(), MetricError> {
    if corpus.is_empty() {
        return Err(MetricError::EmptyCorpus);
    }
    if max_n == 0 {
        return Err(MetricError::BadOrder);
    }
    for (i, p) in corpus.iter().enumerate() {
        if p.hypothesis.is_empty() {
            return Err(MetricError::EmptyHypothesis(i));
        }
        if p.references.is_empty() {
            return Err(MetricError::NoReference(i));
        }
        if need_source && p.source.is_empty() {
            return Err(MetricError::MissingSource(i));
        }
    }
    Ok(())
}

fn sum_stats(per_pair: Vec<Stats>, max_n: usize) -> Stats {
    let mut total = Stats {
        orders: vec![(0, 0); max_n],
        ..Stats::default()
    };
    for s in per_pair {
        total.hyp_len += s.hyp_len;
        total.ref_len += s.ref_len;
        for (t, o) in total.orders.iter_mut().zip(s.orders) {
            t.0 += o.0;
            t.1 += o.1;
        }
    }
    total
}

fn brevity_penalty(hyp_len: usize, ref_len: usize) -> f64 {
    if hyp_len > ref_len {
        1.0
    } else {
        (1.0 - ref_len as f64 / hyp_len as f64).exp()
    }
}

fn bleu_stats(p: &ScoredPair, max_n: usize) -> Stats {
    let orders = (1..=max_n)
        .map(|n| {
            let hyp = ngram_counts(&p.hypothesis, n);
            let refs = max_ref_counts(&p.references, n);
            let matched = hyp
                .iter()
                .map(|(g, &c)| c.min(refs.get(g).copied().unwrap_or(0)))
                .sum();
            (matched, hyp.values().sum())
        })
        .collect();
    Stats {
        hyp_len: p.hypothesis.len(),
        ref_len: closest_ref_len(&p.references, p.hypothesis.len()),
        orders,
    }
}

/// Corpus BLEU on a 0..100 scale.
///
/// Clipped n-gram matches are pooled over the corpus. A zero match count at
/// order 2 or above is smoothed to `1 / (total + 1)`; zero unigram matches
/// give 0. Orders for which the corpus has no hypothesis n-grams at all are
/// left out of the geometric mean.
pub fn bleu(corpus: &[ScoredPair], max_n: usize) -> Result<f64, MetricError> {
    bleu_with(corpus, max_n, Execution::default())
}

pub fn bleu_with(corpus: &[ScoredPair], max_n: usize, exec: Execution) -> Result<f64, MetricError> {
    validate(corpus, max_n, false)?;
    let total = sum_stats(par::map(exec, corpus, |p| bleu_stats(p, max_n)), max_n);
    let mut log_sum = 0.0;
    let mut used = 0usize;
    for (i, &(m, t)) in total.orders.iter().enumerate() {
        if t == 0 {
            continue;
        }
        let p = if m > 0 {
            m as f64 / t as f64
        } else if i == 0 {
            return Ok(0.0);
        } else {
            1.0 / (t as f64 + 1.0)
        };
        log_sum += p.ln();
        used += 1;
    }
    let bp = brevity_penalty(total.hyp_len, total.ref_len);
    Ok((100.0 * bp * (log_sum / used as f64).exp()).clamp(0.0, 100.0))
}

fn gleu_stats(p: &ScoredPair, max_n: usize) -> Stats {
    let orders = (1..=max_n)
        .map(|n| {
            let hyp = ngram_counts(&p.hypothesis, n);
            let src = ngram_counts(&p.source, n);
            let refs = max_ref_counts(&p.references, n);
            let mut matched = 0usize;
            let mut penalty = 0usize;
            for (g, &c) in &hyp {
                let r = refs.get(g).copied().unwrap_or(0);
                matched += c.min(r);
                if r == 0 {
                    penalty += c.min(src.get(g).copied().unwrap_or(0));
                }
            }
            (matched.saturating_sub(penalty), hyp.values().sum())
        })
        .collect();
    Stats {
        hyp_len: p.hypothesis.len(),
        ref_len: closest_ref_len(&p.references, p.hypothesis.len()),
        orders,
    }
}

/// Corpus GLEU on a 0..100 scale.
///
/// Per sentence and order, the numerator is the clipped reference matches
/// minus hypothesis n-grams copied from the source that no reference
/// contains (at most their source count), floored at 0. Numerators and
/// hypothesis n-gram totals are pooled over the corpus and combined like
/// BLEU, without smoothing: any pooled order with a zero numerator gives 0.
pub fn gleu(corpus: &[ScoredPair], max_n: usize) -> Result<f64, MetricError> {
    gleu_with(corpus, max_n, Execution::default())
}

pub fn gleu_with(corpus: &[ScoredPair], max_n: usize, exec: Execution) -> Result<f64, MetricError> {
    validate(corpus, max_n, true)?;
    let total = sum_stats(par::map(exec, corpus, |p| gleu_stats(p, max_n)), max_n);
    let mut log_sum = 0.0;
    let mut used = 0usize;
    for &(m, t) in &total.orders {
        if t == 0 {
            continue;
        }
        if m == 0 {
            return Ok(0.0);
        }
        log_sum += (m as f64 / t as f64).ln();
        used += 1;
    }
    let bp = brevity_penalty(total.hyp_len, total.ref_len);
    Ok((100.0 * bp * (log_sum / used as f64).exp()).clamp(0.0, 100.0))
}

/// Average (fractional) ranks, 1-based; ties share the mean of their ranks.
pub fn average_ranks(x: &[f64]) -> Vec<f64> {
    let mut idx: Vec<usize> = (0..x.len()).collect();
    idx.sort_by(|&a, &b| x[a].total_cmp(&x[b]));
    let mut ranks = vec![0.0; x.len()];
    let mut i = 0;
    while i < idx.len() {
        let mut j = i;
        while j + 1 < idx.len() && x[idx[j + 1]] == x[idx[i]] {
            j += 1;
        }
        let r = (i + j) as f64 / 2.0 + 1.0;
        for &k in &idx[i..=j] {
            ranks[k] = r;
        }
        i = j + 1;
    }
    ranks
}

fn pearson(a: &[f64], b: &[f64]) -> f64 {
    let n = a.len() as f64;
    let ma = a.iter().sum::<f64>() / n;
    let mb = b.iter().sum::<f64>() / n;
    let (mut sab, mut saa, mut sbb) = (0.0, 0.0, 0.0);
    for (x, y) in a.iter().zip(b) {
        let (dx, dy) = (x - ma, y - mb);
        sab += dx * dy;
        saa += dx * dx;
        sbb += dy * dy;
    }
    (sab / (saa * sbb).sqrt()).clamp(-1.0, 1.0)
}

/// Largest `n` for which the p-value is computed by enumerating all
/// permutations.
pub const EXACT_MAX_N: usize = 8;

/// Slack used when comparing permuted statistics against the observed one,
/// so permutations that tie it exactly are not lost to rounding.
const TIE_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Spearman {
    pub rho: f64,
    /// Two-sided.
    pub p_value: f64,
    pub exact: bool,
}

/// Spearman's rho with a two-sided p-value: exact by permutation for
/// `n <= 8`, otherwise from Student's t with `n - 2` degrees of freedom.
pub fn spearman(x: &[f64], y: &[f64]) -> Result<Spearman, MetricError> {
    if x.len() != y.len() {
        return Err(MetricError::LengthMismatch(x.len(), y.len()));
    }
    let n = x.len();
    if n < 3 {
        return Err(MetricError::TooShort(n));
    }
    let constant = |v: &[f64]| v.iter().all(|a| *a == v[0]);
    if constant(x) || constant(y) {
        return Err(MetricError::Constant);
    }
    let rx = average_ranks(x);
    let ry = average_ranks(y);
    let rho = pearson(&rx, &ry);
    if n <= EXACT_MAX_N {
        return Ok(Spearman {
            rho,
            p_value: exact_p(&rx, &ry, rho),
            exact: true,
        });
    }
    let df = (n - 2) as f64;
    let p_value = if rho.abs() >= 1.0 {
        0.0
    } else {
        let t = rho * (df / (1.0 - rho * rho)).sqrt();
        let dist = StudentsT::new(0.0, 1.0, df).expect("df is positive");
        (2.0 * (1.0 - dist.cdf(t.abs()))).clamp(0.0, 1.0)
    };
    Ok(Spearman {
        rho,
        p_value,
        exact: false,
    })
}

/// Share of permutations of `ry` whose |rho| reaches the observed |rho|.
fn exact_p(rx: &[f64], ry: &[f64], rho: f64) -> f64 {
    let target = rho.abs() - TIE_TOLERANCE;
    let mut perm = ry.to_vec();
    let n = perm.len();
    let mut hits = 0u64;
    let mut total = 0u64;
    // Heap's algorithm, iterative.
    let mut c = vec![0usize; n];
    let mut visit = |p: &[f64]| {
        total += 1;
        if pearson(rx, p).abs() >= target {
            hits += 1;
        }
    };
    visit(&perm);
    let mut i = 0;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                perm.swap(0, i);
            } else {
                perm.swap(c[i], i);
            }
            visit(&perm);
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    hits as f64 / total as f64
}

/// A row of a correction evaluation corpus: `source<TAB>hypothesis<TAB>
/// reference[<TAB>reference...]`, or just `source<TAB>reference`, in which
/// case the hypothesis is left for the caller to produce.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GecCorpusRow {
    pub source: String,
    pub hypothesis: Option<String>,
    pub references: Vec<String>,
}

#[derive(Debug, Error)]
pub enum GecCorpusError {
    #[error("line {line}: expected 2 or more tab-separated columns, found {found}")]
    Columns { line: usize, found: usize },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub fn load_gec_corpus<R: BufRead>(source: R) -> Result<Vec<GecCorpusRow>, GecCorpusError> {
    let mut rows = Vec::new();
    for (i, line) in source.lines().enumerate() {
        let line = line?;
        if line.trim().is_empty() || line.starts_with('#') {
            continue;
        }
        let cols: Vec<&str> = line.split('\t').collect();
        let row = match cols.as_slice() {
            [s, r] => GecCorpusRow {
                source: s.to_string(),
                hypothesis: None,
                references: vec![r.to_string()],
            },
            [s, h, refs @ ..] if !refs.is_empty() => GecCorpusRow {
                source: s.to_string(),
                hypothesis: Some(h.to_string()),
                references: refs.iter().map(|r| r.to_string()).collect(),
            },
            _ => {
                return Err(GecCorpusError::Columns {
                    line: i + 1,
                    found: cols.len(),
                })
            }
        };
        rows.push(row);
    }
    Ok(rows)
}

pub fn load_gec_corpus_path(path: &Path) -> Result<Vec<GecCorpusRow>, GecCorpusError> {
    load_gec_corpus(std::io::BufReader::new(std::fs::File::open(path)?))
}
