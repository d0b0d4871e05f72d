//! Reference implementations and input generators shared by the
//! integration tests. The oracles are written for clarity, not speed: plain
//! scans, exact arithmetic where it matters, no shared code with the
//! library beyond its data types.

#![allow(dead_code, clippy::needless_range_loop)]

use std::collections::{BTreeMap, BTreeSet, HashMap};

use itertools::Itertools;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use rand::seq::IndexedRandom;
use rand::Rng;

use pictopipe_core::lexicon::{Lexicon, LexiconEntry, LexiconFormat};
use pictopipe_core::metrics::ScoredPair;
use pictopipe_core::morph;
use pictopipe_core::textproc::{NeLabel, Pos, Token};
use pictopipe_core::tpa::{GoldTp, MatchMode, TpaConfig, TpaSample, WordPrediction};

// ---------------------------------------------------------------- lexicon

/// Scans every entry; keeps the longest match, then highest priority, then
/// smallest id.
pub fn lookup_oracle<'a>(
    entries: &'a [LexiconEntry],
    tokens: &[String],
    start: usize,
) -> Option<(&'a LexiconEntry, usize)> {
    let mut best: Option<&LexiconEntry> = None;
    for e in entries {
        let end = start + e.phrase.len();
        if end > tokens.len() || tokens[start..end] != e.phrase[..] {
            continue;
        }
        best = match best {
            None => Some(e),
            Some(b) => {
                let better = e.phrase.len() > b.phrase.len()
                    || (e.phrase.len() == b.phrase.len()
                        && (e.priority > b.priority || (e.priority == b.priority && e.id < b.id)));
                Some(if better { e } else { b })
            }
        };
    }
    best.map(|e| (e, e.phrase.len()))
}

/// Longest-first segmentation: at each position try every length from the
/// longest phrase in the lexicon down to 1, for the word itself and for each
/// of its base forms, keeping the longest (the word itself on ties). Returns `(label, start, end)` where label is the entry id,
/// `"dropped"` for punctuation or `"unknown"`.
pub fn tp_oracle(tokens: &[Token], lex: &Lexicon) -> Vec<(String, usize, usize)> {
    let norms: Vec<String> = tokens.iter().map(|t| t.normalized.clone()).collect();
    let max = lex.entries().iter().map(|e| e.phrase.len()).max().unwrap_or(0);
    let exact = |probe: &[String], i: usize| -> Option<(String, usize)> {
        for len in (1..=max.min(probe.len() - i)).rev() {
            let window = &probe[i..i + len];
            let best = lex
                .entries()
                .iter()
                .filter(|e| e.phrase[..] == *window)
                .min_by(|a, b| b.priority.cmp(&a.priority).then_with(|| a.id.cmp(&b.id)));
            if let Some(e) = best {
                return Some((e.id.clone(), len));
            }
        }
        None
    };
    let mut out = Vec::new();
    let mut i = 0;
    while i < tokens.len() {
        if norms[i].is_empty() {
            out.push(("dropped".to_string(), i, i + 1));
            i += 1;
            continue;
        }
        let mut hit = exact(&norms, i);
        for cand in morph::lemma_candidates(&norms[i]) {
            let mut probe = norms.clone();
            probe[i] = cand;
            if let Some(h) = exact(&probe, i) {
                if hit.as_ref().is_none_or(|b| h.1 > b.1) {
                    hit = Some(h);
                }
            }
        }
        match hit {
            Some((id, len)) => {
                out.push((id, i, i + len));
                i += len;
            }
            None => {
                out.push(("unknown".to_string(), i, i + 1));
                i += 1;
            }
        }
    }
    out
}

pub const FUZZ_WORDS: &[&str] = &[
    "ka", "ko", "mu", "ri", "te", "zo", "ne", "pi", "kas", "mus", "tes",
];

/// TSV text of a random lexicon over [`FUZZ_WORDS`]; phrases of length
/// 1..=4 with priorities 0..3, never the same phrase twice at one priority.
pub fn random_lexicon_tsv<R: Rng>(rng: &mut R) -> String {
    let n = rng.random_range(1..=16);
    let mut seen = BTreeSet::new();
    let mut rows = Vec::new();
    for _ in 0..n {
        let len = rng.random_range(1..=4);
        let phrase: Vec<&str> = (0..len).map(|_| *FUZZ_WORDS.choose(rng).unwrap()).collect();
        let priority = rng.random_range(0..3);
        if !seen.insert((phrase.clone(), priority)) {
            continue;
        }
        rows.push(format!("{}\timg/{}.png\t\t{}", phrase.join(" "), rows.len(), priority));
    }
    rows.join("\n") + "\n"
}

pub fn random_lexicon<R: Rng>(rng: &mut R) -> Lexicon {
    Lexicon::load(random_lexicon_tsv(rng).as_bytes(), LexiconFormat::Tsv).unwrap()
}

/// A sentence over [`FUZZ_WORDS`], with occasional capitals and punctuation.
pub fn random_fuzz_sentence<R: Rng>(rng: &mut R) -> String {
    let n = rng.random_range(0..=12);
    let mut words = Vec::new();
    for _ in 0..n {
        let mut w = FUZZ_WORDS.choose(rng).unwrap().to_string();
        if rng.random_bool(0.1) {
            w = w.to_uppercase();
        }
        if rng.random_bool(0.1) {
            w.push(*['!', ',', '?', '.'].choose(rng).unwrap());
        }
        words.push(w);
    }
    words.join(" ")
}

// ------------------------------------------------------------------- tpa

/// Algorithm as written: walk every word, skip filtered ones, add the
/// conversion delta, subtract the entity penalty, count N; then divide.
pub fn tpa_oracle(corpus: &[TpaSample], predictions: &[Vec<WordPrediction>], cfg: &TpaConfig) -> f64 {
    let mut score: i64 = 0;
    let mut n: i64 = 0;
    for (sample, preds) in corpus.iter().zip(predictions) {
        for j in 0..preds.len() {
            let w = &preds[j];
            let pos_filtered = matches!(w.token.pos, Pos::Det | Pos::Adp | Pos::Conj);
            if cfg.delete_pos && pos_filtered {
                continue;
            }
            if cfg.delete_stopwords && w.token.is_stopword {
                continue;
            }
            let y = &sample.gold_tp[j];
            let y_hat = &w.entry_id;
            let delta = match (cfg.match_mode, y) {
                (MatchMode::Strict, GoldTp::Entry(id)) => y_hat.as_deref() == Some(id.as_str()),
                (MatchMode::Strict, GoldTp::None) => y_hat.is_none(),
                (MatchMode::Strict, GoldTp::Flag(b)) => y_hat.is_some() == *b,
                (MatchMode::Lenient, GoldTp::Entry(_)) => y_hat.is_some(),
                (MatchMode::Lenient, GoldTp::None) => y_hat.is_none(),
                (MatchMode::Lenient, GoldTp::Flag(b)) => y_hat.is_some() == *b,
            };
            score += delta as i64;
            if cfg.apply_penalty {
                score -= (w.ne != sample.gold_ne[j]) as i64;
            }
            n += 1;
        }
    }
    if n == 0 {
        return 0.0;
    }
    100.0 * (score as f64 / (n as f64 + cfg.epsilon))
}

const TPA_WORDS: &[&str] = &[
    "I", "love", "BTS", "the", "dog", "is", "tired", "and", "my", "pup", "with", "friends",
    "eat", "a", "pizza", "Elsa", "in", "Korea", "play", "baseball", "zzyzx", "happy", "to",
    "of", "New", "York", "but", "we", "cookie", "sleepy",
];

/// Sentences over a mixed vocabulary with random gold labels. Gold arrays
/// line up with the non-punctuation tokens.
pub fn synthetic_tpa_corpus<R: Rng>(rng: &mut R, n: usize) -> Vec<TpaSample> {
    let ne_labels = ["NONE", "PERSON", "ORG", "LOC", "MISC"];
    (0..n)
        .map(|_| {
            let len = rng.random_range(1..=10);
            let mut words: Vec<String> =
                (0..len).map(|_| TPA_WORDS.choose(rng).unwrap().to_string()).collect();
            if rng.random_bool(0.5) {
                words.last_mut().unwrap().push(*['!', '?', '.'].choose(rng).unwrap());
            }
            let gold_tp = (0..len)
                .map(|_| match rng.random_range(0..4) {
                    0 => GoldTp::None,
                    1 => GoldTp::Flag(rng.random_bool(0.7)),
                    _ => GoldTp::Entry(words[rng.random_range(0..len)].to_lowercase()),
                })
                .collect();
            let gold_ne = (0..len)
                .map(|_| {
                    if rng.random_bool(0.8) {
                        NeLabel::None
                    } else {
                        ne_labels.choose(rng).unwrap().parse().unwrap()
                    }
                })
                .collect();
            TpaSample {
                sentence: words.join(" "),
                gold_tp,
                gold_ne,
            }
        })
        .collect()
}

// --------------------------------------------------------------- metrics

fn ngrams(tokens: &[String], n: usize) -> Vec<Vec<String>> {
    if tokens.len() < n {
        return Vec::new();
    }
    (0..=tokens.len() - n).map(|i| tokens[i..i + n].to_vec()).collect()
}

fn count(list: &[Vec<String>], g: &[String]) -> usize {
    list.iter().filter(|x| x[..] == *g).count()
}

fn distinct(list: &[Vec<String>]) -> Vec<Vec<String>> {
    let mut d: Vec<Vec<String>> = Vec::new();
    for g in list {
        if !d.contains(g) {
            d.push(g.clone());
        }
    }
    d
}

fn closest_ref_len(refs: &[Vec<String>], c: usize) -> usize {
    let mut best = refs[0].len();
    for r in refs {
        let (d, bd) = (r.len().abs_diff(c), best.abs_diff(c));
        if d < bd || (d == bd && r.len() < best) {
            best = r.len();
        }
    }
    best
}

fn combine(precisions: &[f64], c: usize, r: usize) -> f64 {
    let bp = if c > r { 1.0 } else { (1.0 - r as f64 / c as f64).exp() };
    let mean_log = precisions.iter().map(|p| p.ln()).sum::<f64>() / precisions.len() as f64;
    100.0 * bp * mean_log.exp()
}

pub fn bleu_oracle(corpus: &[ScoredPair], max_n: usize) -> f64 {
    let mut precisions = Vec::new();
    for n in 1..=max_n {
        let (mut matched, mut total) = (0usize, 0usize);
        for p in corpus {
            let hyp = ngrams(&p.hypothesis, n);
            total += hyp.len();
            for g in distinct(&hyp) {
                let in_ref = p
                    .references
                    .iter()
                    .map(|r| count(&ngrams(r, n), &g))
                    .max()
                    .unwrap_or(0);
                matched += count(&hyp, &g).min(in_ref);
            }
        }
        if total == 0 {
            continue;
        }
        if matched == 0 {
            if n == 1 {
                return 0.0;
            }
            precisions.push(1.0 / (total as f64 + 1.0));
        } else {
            precisions.push(matched as f64 / total as f64);
        }
    }
    let c: usize = corpus.iter().map(|p| p.hypothesis.len()).sum();
    let r: usize = corpus
        .iter()
        .map(|p| closest_ref_len(&p.references, p.hypothesis.len()))
        .sum();
    combine(&precisions, c, r)
}

pub fn gleu_oracle(corpus: &[ScoredPair], max_n: usize) -> f64 {
    let mut precisions = Vec::new();
    for n in 1..=max_n {
        let (mut num, mut total) = (0usize, 0usize);
        for p in corpus {
            let hyp = ngrams(&p.hypothesis, n);
            let src = ngrams(&p.source, n);
            total += hyp.len();
            let (mut matched, mut penalty) = (0i64, 0i64);
            for g in distinct(&hyp) {
                let in_ref = p
                    .references
                    .iter()
                    .map(|r| count(&ngrams(r, n), &g))
                    .max()
                    .unwrap_or(0);
                let h = count(&hyp, &g);
                matched += h.min(in_ref) as i64;
                if in_ref == 0 {
                    penalty += h.min(count(&src, &g)) as i64;
                }
            }
            num += (matched - penalty).max(0) as usize;
        }
        if total == 0 {
            continue;
        }
        if num == 0 {
            return 0.0;
        }
        precisions.push(num as f64 / total as f64);
    }
    let c: usize = corpus.iter().map(|p| p.hypothesis.len()).sum();
    let r: usize = corpus
        .iter()
        .map(|p| closest_ref_len(&p.references, p.hypothesis.len()))
        .sum();
    combine(&precisions, c, r)
}

const METRIC_WORDS: &[&str] = &["the", "dog", "is", "tired", "a", "cat", "eats", "pizza", "I", "love", "to", "play"];

fn random_tokens<R: Rng>(rng: &mut R, lo: usize, hi: usize) -> Vec<String> {
    let n = rng.random_range(lo..=hi);
    (0..n).map(|_| METRIC_WORDS.choose(rng).unwrap().to_string()).collect()
}

/// Source/hypothesis/reference triples with plenty of overlap so every
/// order has matches, plus some fully random rows.
pub fn random_scored_corpus<R: Rng>(rng: &mut R) -> Vec<ScoredPair> {
    let n = rng.random_range(1..=12);
    (0..n)
        .map(|_| {
            let reference = random_tokens(rng, 1, 12);
            let mutate = |rng: &mut R, base: &[String]| -> Vec<String> {
                let mut out = Vec::new();
                for w in base {
                    if !rng.random_bool(0.85) {
                        continue;
                    }
                    if rng.random_bool(0.15) {
                        out.push(METRIC_WORDS.choose(rng).unwrap().to_string());
                    } else {
                        out.push(w.clone());
                    }
                }
                if out.is_empty() || rng.random_bool(0.2) {
                    out.push(METRIC_WORDS.choose(rng).unwrap().to_string());
                }
                out
            };
            let source = mutate(rng, &reference);
            let hypothesis = if rng.random_bool(0.2) {
                random_tokens(rng, 1, 10)
            } else {
                mutate(rng, &reference)
            };
            let mut references = vec![reference.clone()];
            if rng.random_bool(0.25) {
                references.push(mutate(rng, &reference));
            }
            ScoredPair {
                source,
                hypothesis,
                references,
            }
        })
        .collect()
}

/// Rank by definition: one plus the number of smaller values, plus half of
/// the other equal values.
fn def_ranks(x: &[f64]) -> Vec<f64> {
    x.iter()
        .map(|a| {
            let less = x.iter().filter(|b| *b < a).count() as f64;
            let equal = x.iter().filter(|b| *b == a).count() as f64;
            1.0 + less + (equal - 1.0) / 2.0
        })
        .collect()
}

fn pearson(a: &[f64], b: &[f64]) -> f64 {
    let n = a.len() as f64;
    let ma = a.iter().sum::<f64>() / n;
    let mb = b.iter().sum::<f64>() / n;
    let cov: f64 = a.iter().zip(b).map(|(x, y)| (x - ma) * (y - mb)).sum();
    let va: f64 = a.iter().map(|x| (x - ma).powi(2)).sum();
    let vb: f64 = b.iter().map(|y| (y - mb).powi(2)).sum();
    cov / (va * vb).sqrt()
}

pub fn spearman_rho_oracle(x: &[f64], y: &[f64]) -> f64 {
    pearson(&def_ranks(x), &def_ranks(y))
}

/// Two-sided exact p-value: the share of all orderings of `y` whose |rho|
/// is at least the observed |rho| (with 1e-9 slack for exact ties).
pub fn spearman_p_oracle(x: &[f64], y: &[f64]) -> f64 {
    let observed = spearman_rho_oracle(x, y).abs();
    let rx = def_ranks(x);
    let mut hits = 0u64;
    let mut total = 0u64;
    for perm in y.iter().copied().permutations(y.len()) {
        total += 1;
        if pearson(&rx, &def_ranks(&perm)).abs() >= observed - 1e-9 {
            hits += 1;
        }
    }
    hits as f64 / total as f64
}

// ------------------------------------------------------------------- nlu

fn exact(x: f64) -> BigRational {
    BigRational::from_float(x).expect("finite")
}

/// `(dot, |u|^2 |v|^2)` in exact arithmetic.
fn exact_parts(u: &[f64], v: &[f64]) -> (BigRational, BigRational) {
    let zero = BigRational::zero();
    let (mut dot, mut nu, mut nv) = (zero.clone(), zero.clone(), zero);
    for (a, b) in u.iter().zip(v) {
        let (a, b) = (exact(*a), exact(*b));
        dot += &a * &b;
        nu += &a * &a;
        nv += &b * &b;
    }
    (dot, nu * nv)
}

/// `sign(cos) * cos^2` exactly; monotone in cos, 0 for zero vectors.
fn cos_key(u: &[f64], v: &[f64]) -> BigRational {
    let (dot, prod) = exact_parts(u, v);
    if prod.is_zero() {
        return BigRational::zero();
    }
    let sq = &dot * &dot / prod;
    if dot.is_negative() {
        -sq
    } else {
        sq
    }
}

fn key_to_cos(k: &BigRational) -> f64 {
    let m = k.abs().to_f64().unwrap().sqrt();
    if k.is_negative() {
        -m
    } else {
        m
    }
}

/// Cosine similarity from exactly computed dot product and norms; only the
/// final square root is rounded.
pub fn cosine_oracle(u: &[f64], v: &[f64]) -> f64 {
    key_to_cos(&cos_key(u, v))
}

fn tau_key(tau: f64) -> BigRational {
    let t = exact(tau);
    let sq = &t * &t;
    if t.is_negative() {
        -sq
    } else {
        sq
    }
}

/// Exhaustive version of the substitute search: synonyms in the vocabulary
/// first (best by similarity, 1.0 without vectors), otherwise the best
/// vocabulary word at or above `tau`. Ties go to the smaller word.
pub fn find_substitute_oracle(
    word: &str,
    vocab: &BTreeSet<String>,
    vectors: &HashMap<String, Vec<f64>>,
    synonyms: &BTreeMap<String, BTreeSet<String>>,
    tau: f64,
) -> Option<(String, f64)> {
    let one = BigRational::from_integer(BigInt::from(1));
    let own = vectors.get(word);
    let syns: Vec<&String> = synonyms
        .get(word)
        .map(|s| s.iter().filter(|w| vocab.contains(*w)).collect())
        .unwrap_or_default();
    if !syns.is_empty() {
        let mut best: Option<(&String, BigRational)> = None;
        for s in syns {
            let k = match (own, vectors.get(s)) {
                (Some(u), Some(v)) => cos_key(u, v),
                _ => one.clone(),
            };
            if best.as_ref().is_none_or(|(bw, bk)| k > *bk || (k == *bk && s < *bw)) {
                best = Some((s, k));
            }
        }
        let (w, k) = best.unwrap();
        return Some((w.clone(), key_to_cos(&k)));
    }
    let own = own?;
    let mut best: Option<(&String, BigRational)> = None;
    for w in vocab {
        let Some(v) = vectors.get(w) else { continue };
        let k = cos_key(own, v);
        if best.as_ref().is_none_or(|(bw, bk)| k > *bk || (k == *bk && w < *bw)) {
            best = Some((w, k));
        }
    }
    let (w, k) = best?;
    (k >= tau_key(tau)).then(|| (w.clone(), key_to_cos(&k)))
}

/// Random vocabulary, embeddings (with deliberate duplicate and zero
/// vectors so ties and degenerate cases occur) and synonym pairs.
pub struct SubstituteInstance {
    pub word: String,
    pub vocab: BTreeSet<String>,
    pub vectors: HashMap<String, Vec<f64>>,
    pub synonyms: BTreeMap<String, BTreeSet<String>>,
    pub tau: f64,
}

pub fn substitute_instance<R: Rng>(rng: &mut R) -> SubstituteInstance {
    let dim = rng.random_range(2..6);
    let names: Vec<String> = (0..rng.random_range(2..14)).map(|i| format!("v{i:02}")).collect();
    let vocab: BTreeSet<String> = names.iter().filter(|_| rng.random_bool(0.7)).cloned().collect();
    let word = "query".to_string();
    let mut vectors: HashMap<String, Vec<f64>> = HashMap::new();
    for n in names.iter().chain(std::iter::once(&word)) {
        if rng.random_bool(0.9) {
            let v = match rng.random_range(0..10) {
                0 => vec![0.0; dim],
                1 | 2 if !vectors.is_empty() => {
                    let keys: Vec<&String> = vectors.keys().collect();
                    vectors[*keys.choose(rng).unwrap()].clone()
                }
                _ => random_vector(rng, dim),
            };
            vectors.insert(n.clone(), v);
        }
    }
    let mut synonyms: BTreeMap<String, BTreeSet<String>> = BTreeMap::new();
    if rng.random_bool(0.3) {
        for _ in 0..rng.random_range(1..4) {
            let s = names.choose(rng).unwrap().clone();
            synonyms.entry(word.clone()).or_default().insert(s.clone());
            synonyms.entry(s).or_default().insert(word.clone());
        }
    }
    SubstituteInstance {
        word,
        vocab,
        vectors,
        synonyms,
        tau: rng.random_range(0.0..0.8),
    }
}

pub fn random_vector<R: Rng>(rng: &mut R, dim: usize) -> Vec<f64> {
    (0..dim).map(|_| rng.random_range(-1.0..1.0)).collect()
}
