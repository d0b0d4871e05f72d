//! Out-of-vocabulary handling: synonym and embedding based substitution,
//! recency-based pronoun resolution, and suppression of leftover function
//! words.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::io::{BufRead, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bundled;
use crate::lexicon::Lexicon;
use crate::textproc::{normalize_word, EntityClass, NeLabel, Pos, Token};
use crate::tp::{DropReason, PictogramSequence, SegmentKind};

#[derive(Debug, Error)]
pub enum EmbeddingError {
    #[error("row {row}: {reason}")]
    Header { row: usize, reason: String },
    #[error("row {row}: expected {expected} components, found {found}")]
    Arity {
        row: usize,
        expected: usize,
        found: usize,
    },
    #[error("row {row}: component {value:?} is not a finite number")]
    NonNumeric { row: usize, value: String },
    #[error("row {row}: duplicate word {word:?}")]
    Duplicate { row: usize, word: String },
    #[error("expected {expected} vectors, found {found}")]
    Count { expected: usize, found: usize },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

#[derive(Debug, Error)]
#[error("vector dimensions differ: {0} vs {1}")]
pub struct DimensionMismatch(pub usize, pub usize);

/// Word vectors in word2vec text format.
#[derive(Debug, Clone, PartialEq)]
pub struct EmbeddingTable {
    dim: usize,
    vectors: HashMap<String, Vec<f64>>,
}

impl EmbeddingTable {
    pub fn new(dim: usize, vectors: HashMap<String, Vec<f64>>) -> Result<Self, EmbeddingError> {
        if dim == 0 {
            return Err(EmbeddingError::Header {
                row: 1,
                reason: "dimension must be positive".into(),
            });
        }
        for (i, (w, v)) in vectors.iter().enumerate() {
            if v.len() != dim {
                return Err(EmbeddingError::Arity {
                    row: i + 2,
                    expected: dim,
                    found: v.len(),
                });
            }
            if w.is_empty() || v.iter().any(|x| !x.is_finite()) {
                return Err(EmbeddingError::NonNumeric {
                    row: i + 2,
                    value: w.clone(),
                });
            }
        }
        Ok(EmbeddingTable { dim, vectors })
    }

    /// Reads `V D` on the first line, then `V` lines of `word c1 .. cD`.
    pub fn load<R: BufRead>(source: R) -> Result<Self, EmbeddingError> {
        let mut lines = source.lines();
        let header = lines.next().transpose()?.ok_or(EmbeddingError::Header {
            row: 1,
            reason: "missing header".into(),
        })?;
        let nums: Vec<&str> = header.split_whitespace().collect();
        let parse_usize = |s: &str| {
            s.parse::<usize>().map_err(|_| EmbeddingError::Header {
                row: 1,
                reason: format!("{s:?} is not a count"),
            })
        };
        if nums.len() != 2 {
            return Err(EmbeddingError::Header {
                row: 1,
                reason: "header must be \"<vocab size> <dimension>\"".into(),
            });
        }
        let (count, dim) = (parse_usize(nums[0])?, parse_usize(nums[1])?);
        if dim == 0 {
            return Err(EmbeddingError::Header {
                row: 1,
                reason: "dimension must be positive".into(),
            });
        }
        let mut vectors = HashMap::with_capacity(count);
        for (i, line) in lines.enumerate() {
            let row = i + 2;
            let line = line?;
            if line.trim().is_empty() {
                continue;
            }
            let mut parts = line.split(' ').filter(|s| !s.is_empty());
            let word = parts.next().unwrap_or_default().to_string();
            let comps: Vec<&str> = parts.collect();
            if comps.len() != dim {
                return Err(EmbeddingError::Arity {
                    row,
                    expected: dim,
                    found: comps.len(),
                });
            }
            let v = comps
                .iter()
                .map(|c| match c.parse::<f64>() {
                    Ok(x) if x.is_finite() => Ok(x),
                    _ => Err(EmbeddingError::NonNumeric {
                        row,
                        value: c.to_string(),
                    }),
                })
                .collect::<Result<Vec<f64>, _>>()?;
            if vectors.insert(word.clone(), v).is_some() {
                return Err(EmbeddingError::Duplicate { row, word });
            }
        }
        if vectors.len() != count {
            return Err(EmbeddingError::Count {
                expected: count,
                found: vectors.len(),
            });
        }
        Ok(EmbeddingTable { dim, vectors })
    }

    pub fn load_path(path: &Path) -> Result<Self, EmbeddingError> {
        Self::load(std::io::BufReader::new(std::fs::File::open(path)?))
    }

    /// Writes the table in word2vec text format, words sorted.
    pub fn write<W: Write>(&self, mut out: W) -> std::io::Result<()> {
        writeln!(out, "{} {}", self.vectors.len(), self.dim)?;
        let mut words: Vec<&String> = self.vectors.keys().collect();
        words.sort();
        for w in words {
            write!(out, "{w}")?;
            for x in &self.vectors[w] {
                write!(out, " {x}")?;
            }
            writeln!(out)?;
        }
        Ok(())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn get(&self, word: &str) -> Option<&[f64]> {
        self.vectors.get(word).map(Vec::as_slice)
    }
}

/// `dot(u, v) / (|u| |v|)`, clamped to `[-1, 1]`. A zero vector has
/// similarity 0 with everything.
pub fn cosine_similarity(u: &[f64], v: &[f64]) -> Result<f64, DimensionMismatch> {
    if u.len() != v.len() {
        return Err(DimensionMismatch(u.len(), v.len()));
    }
    let (mut dot, mut nu, mut nv) = (0.0, 0.0, 0.0);
    for (a, b) in u.iter().zip(v) {
        dot += a * b;
        nu += a * a;
        nv += b * b;
    }
    if nu == 0.0 || nv == 0.0 {
        return Ok(0.0);
    }
    // one sqrt keeps cos(u, -u) at exactly -1; split it when the product
    // would overflow or underflow
    let prod = nu * nv;
    let denom = if prod.is_normal() {
        prod.sqrt()
    } else {
        nu.sqrt() * nv.sqrt()
    };
    Ok((dot / denom).clamp(-1.0, 1.0))
}

/// Symmetric synonym graph without self-loops.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct SynonymGraph {
    adjacency: HashMap<String, BTreeSet<String>>,
}

impl SynonymGraph {
    pub fn from_pairs<I, S>(pairs: I) -> Self
    where
        I: IntoIterator<Item = (S, S)>,
        S: AsRef<str>,
    {
        let mut g = SynonymGraph::default();
        for (a, b) in pairs {
            g.add(a.as_ref(), b.as_ref());
        }
        g
    }

    pub fn add(&mut self, a: &str, b: &str) {
        let (a, b) = (normalize_word(a.trim()), normalize_word(b.trim()));
        if a == b || a.is_empty() || b.is_empty() {
            return;
        }
        self.adjacency.entry(a.clone()).or_default().insert(b.clone());
        self.adjacency.entry(b).or_default().insert(a);
    }

    /// TSV of `word<TAB>synonym` pairs.
    pub fn load<R: BufRead>(source: R) -> Result<Self, EmbeddingError> {
        let mut g = SynonymGraph::default();
        for (i, line) in source.lines().enumerate() {
            let line = line?;
            if line.trim().is_empty() || line.starts_with('#') {
                continue;
            }
            let (a, b) = line.split_once('\t').ok_or_else(|| EmbeddingError::Header {
                row: i + 1,
                reason: "expected word<TAB>synonym".into(),
            })?;
            g.add(a, b);
        }
        Ok(g)
    }

    pub fn load_path(path: &Path) -> Result<Self, EmbeddingError> {
        Self::load(std::io::BufReader::new(std::fs::File::open(path)?))
    }

    pub fn bundled() -> Self {
        Self::load(bundled::SYNONYMS.as_bytes()).expect("bundled synonyms are valid")
    }

    pub fn neighbors(&self, word: &str) -> impl Iterator<Item = &str> {
        self.adjacency
            .get(word)
            .into_iter()
            .flat_map(|s| s.iter().map(String::as_str))
    }

    pub fn is_symmetric(&self) -> bool {
        self.adjacency.iter().all(|(a, bs)| {
            bs.iter()
                .all(|b| b != a && self.adjacency.get(b).is_some_and(|s| s.contains(a)))
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Substitute {
    pub word: String,
    pub similarity: f64,
}

/// Picks a lexicon word to stand in for an unknown `word`.
///
/// Synonyms come first: among synonyms present in `vocab`, the one most
/// similar to `word` by embedding (1.0 when either lacks a vector). Failing
/// that, the vocabulary word with the highest cosine similarity, provided it
/// reaches `tau`. Ties go to the lexicographically smaller word.
pub fn find_substitute(
    word: &str,
    vocab: &BTreeSet<String>,
    embeddings: Option<&EmbeddingTable>,
    synonyms: Option<&SynonymGraph>,
    tau: f64,
) -> Option<Substitute> {
    let own = embeddings.and_then(|e| e.get(word));
    let sim_to = |other: &str| -> Option<f64> {
        let v = embeddings?.get(other)?;
        cosine_similarity(own?, v).ok()
    };

    if let Some(syn) = synonyms {
        let mut best: Option<Substitute> = None;
        let mut cands: Vec<&str> = syn.neighbors(word).filter(|s| vocab.contains(*s)).collect();
        cands.sort_unstable();
        for c in cands {
            let s = sim_to(c).unwrap_or(1.0);
            if best.as_ref().is_none_or(|b| s > b.similarity) {
                best = Some(Substitute {
                    word: c.to_string(),
                    similarity: s,
                });
            }
        }
        if best.is_some() {
            return best;
        }
    }

    let emb = embeddings?;
    let own = own?;
    let mut best: Option<Substitute> = None;
    for c in vocab {
        let Some(v) = emb.get(c) else { continue };
        let Ok(s) = cosine_similarity(own, v) else { continue };
        if best.as_ref().is_none_or(|b| s > b.similarity) {
            best = Some(Substitute {
                word: c.clone(),
                similarity: s,
            });
        }
    }
    best.filter(|b| b.similarity >= tau)
}

/// Nouns mentioned in earlier utterances of a session, oldest first.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SessionContext {
    recent: VecDeque<(String, NeLabel)>,
    capacity: usize,
}

pub const DEFAULT_SESSION_CAPACITY: usize = 8;

impl Default for SessionContext {
    fn default() -> Self {
        Self::new(DEFAULT_SESSION_CAPACITY)
    }
}

impl SessionContext {
    pub fn new(capacity: usize) -> Self {
        SessionContext {
            recent: VecDeque::with_capacity(capacity),
            capacity,
        }
    }

    pub fn push(&mut self, noun: impl Into<String>, ne: NeLabel) {
        if self.capacity == 0 {
            return;
        }
        if self.recent.len() == self.capacity {
            self.recent.pop_front();
        }
        self.recent.push_back((noun.into(), ne));
    }

    /// Records the nouns and proper nouns of an analyzed utterance.
    pub fn observe(&mut self, tokens: &[Token]) {
        for t in tokens {
            if matches!(t.pos, Pos::Noun | Pos::Propn) && !t.normalized.is_empty() {
                self.push(t.normalized.clone(), t.ne);
            }
        }
    }

    pub fn recent(&self) -> impl DoubleEndedIterator<Item = &(String, NeLabel)> {
        self.recent.iter()
    }

    pub fn len(&self) -> usize {
        self.recent.len()
    }

    pub fn is_empty(&self) -> bool {
        self.recent.is_empty()
    }

    pub fn capacity(&self) -> usize {
        self.capacity
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Antecedent {
    Person,
    NonPerson,
    Any,
}

fn third_person(word: &str) -> Option<Antecedent> {
    match word {
        "he" | "she" | "him" | "her" => Some(Antecedent::Person),
        "it" => Some(Antecedent::NonPerson),
        "they" | "them" => Some(Antecedent::Any),
        _ => None,
    }
}

/// Replaces third-person pronouns with the most recent compatible context
/// noun that has its own pictogram. *he/she/him/her* only take PERSON
/// entities, *it* takes anything else, *they/them* take either. First and
/// second person pronouns are never touched.
pub fn resolve_pronouns(tokens: &[Token], ctx: &SessionContext, lex: &Lexicon) -> Vec<Token> {
    tokens
        .iter()
        .map(|t| {
            let Some(want) = third_person(&t.normalized) else {
                return t.clone();
            };
            let found = ctx.recent().rev().find(|(noun, ne)| {
                let person = *ne == NeLabel::Entity(EntityClass::Person);
                let ok = match want {
                    Antecedent::Person => person,
                    Antecedent::NonPerson => !person,
                    Antecedent::Any => true,
                };
                ok && lex.contains_word(noun)
            });
            match found {
                Some((noun, ne)) => Token {
                    normalized: noun.clone(),
                    pos: if ne.is_entity() { Pos::Propn } else { Pos::Noun },
                    is_stopword: false,
                    ne: *ne,
                    ..t.clone()
                },
                None => t.clone(),
            }
        })
        .collect()
}

#[derive(Debug, Clone)]
pub struct NluResources {
    pub embeddings: Option<EmbeddingTable>,
    pub synonyms: Option<SynonymGraph>,
    pub tau: f64,
}

pub const DEFAULT_TAU: f64 = 0.4;

impl Default for NluResources {
    fn default() -> Self {
        NluResources {
            embeddings: None,
            synonyms: None,
            tau: DEFAULT_TAU,
        }
    }
}

/// Resolves each `Unknown` segment: function words (DET/ADP/CONJ or
/// stopwords) are dropped, other words get a substitute pictogram when one
/// is found and otherwise stay unknown. Other segments pass through.
pub fn resolve_unknowns(
    seq: &PictogramSequence,
    lex: &Lexicon,
    vocab: &BTreeSet<String>,
    res: &NluResources,
) -> PictogramSequence {
    let mut out = seq.clone();
    for seg in &mut out.segments {
        if seg.kind != SegmentKind::Unknown {
            continue;
        }
        let tok = &seq.source[seg.start];
        if tok.pos.is_function_class() || tok.is_stopword {
            seg.kind = SegmentKind::Dropped {
                reason: DropReason::FunctionWord,
            };
            continue;
        }
        let sub = find_substitute(
            &tok.normalized,
            vocab,
            res.embeddings.as_ref(),
            res.synonyms.as_ref(),
            res.tau,
        );
        if let Some(sub) = sub {
            if let Some((entry, _)) = lex.lookup(&[sub.word.as_str()], 0) {
                seg.kind = SegmentKind::Substituted {
                    original: tok.normalized.clone(),
                    substitute: sub.word,
                    entry_id: entry.id.clone(),
                    similarity: sub.similarity,
                };
            }
        }
    }
    out
}
