//! Pictogram lexicon: normalized phrases mapped to image references, indexed
//! by first token for longest-match lookup.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::io::BufRead;
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum LexiconError {
    #[error("row {row}: {reason}")]
    Malformed { row: usize, reason: String },
    #[error("row {row}: duplicate phrase {phrase:?} at priority {priority}")]
    DuplicatePhrase {
        row: usize,
        phrase: String,
        priority: i64,
    },
    #[error("row {row}: duplicate id {id:?}")]
    DuplicateId { row: usize, id: String },
    #[error("lexicon is empty")]
    Empty,
    #[error("unknown lexicon format {0:?} (expected jsonl or tsv)")]
    UnknownFormat(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LexiconFormat {
    Jsonl,
    Tsv,
}

impl LexiconFormat {
    /// Guesses the format from a file extension; anything but `.jsonl`/`.json`
    /// is treated as TSV.
    pub fn from_path(path: &Path) -> Self {
        match path.extension().and_then(|e| e.to_str()) {
            Some("jsonl") | Some("json") => LexiconFormat::Jsonl,
            _ => LexiconFormat::Tsv,
        }
    }
}

impl FromStr for LexiconFormat {
    type Err = LexiconError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "jsonl" => Ok(LexiconFormat::Jsonl),
            "tsv" => Ok(LexiconFormat::Tsv),
            other => Err(LexiconError::UnknownFormat(other.to_string())),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LexiconEntry {
    pub id: String,
    pub phrase: Vec<String>,
    pub image_ref: String,
    pub priority: i64,
}

impl LexiconEntry {
    pub fn phrase_text(&self) -> String {
        self.phrase.join(" ")
    }
}

/// Lowercases, collapses internal whitespace and strips terminal `.,!?`
/// from each word. Hyphens and apostrophes inside words are kept.
pub fn normalize_phrase(raw: &str) -> Vec<String> {
    raw.split_whitespace()
        .map(|w| {
            w.trim_end_matches(['.', ',', '!', '?'])
                .to_lowercase()
                .replace('\u{2019}', "'")
        })
        .filter(|w| !w.is_empty())
        .collect()
}

#[derive(Debug, Deserialize)]
struct JsonRecord {
    #[serde(default)]
    id: Option<String>,
    phrase: String,
    image_ref: String,
    #[serde(default)]
    priority: Option<i64>,
}

/// A record before ids are assigned and duplicates are checked.
#[derive(Debug, Clone)]
struct RawRecord {
    row: usize,
    id: Option<String>,
    phrase: Vec<String>,
    image_ref: String,
    priority: i64,
}

#[derive(Debug, Clone)]
pub struct Lexicon {
    entries: Vec<LexiconEntry>,
    // first token -> entry indices, longest phrase first, then priority desc, then id asc
    index: HashMap<String, Vec<usize>>,
    by_id: HashMap<String, usize>,
    max_ngram: usize,
}

impl Lexicon {
    pub fn load<R: BufRead>(source: R, format: LexiconFormat) -> Result<Self, LexiconError> {
        let mut raws = Vec::new();
        for (i, line) in source.lines().enumerate() {
            let row = i + 1;
            let line = line.map_err(|e| LexiconError::Malformed {
                row,
                reason: format!("not valid UTF-8: {e}"),
            })?;
            let line = line.strip_suffix('\r').unwrap_or(&line);
            if line.trim().is_empty() {
                continue;
            }
            let raw = match format {
                LexiconFormat::Jsonl => parse_jsonl_row(row, line)?,
                LexiconFormat::Tsv => parse_tsv_row(row, line)?,
            };
            raws.push(raw);
        }
        Self::build(raws)
    }

    pub fn load_path(path: &Path, format: Option<LexiconFormat>) -> Result<Self, LexiconError> {
        let format = format.unwrap_or_else(|| LexiconFormat::from_path(path));
        let file = std::fs::File::open(path)?;
        Self::load(std::io::BufReader::new(file), format)
    }

    /// Builds a lexicon from already-constructed entries. Phrases are
    /// re-normalized; empty ids are auto-assigned.
    pub fn from_entries(entries: Vec<LexiconEntry>) -> Result<Self, LexiconError> {
        let raws = entries
            .into_iter()
            .enumerate()
            .map(|(i, e)| {
                let phrase = normalize_phrase(&e.phrase.join(" "));
                if phrase.is_empty() {
                    return Err(LexiconError::Malformed {
                        row: i + 1,
                        reason: "empty phrase".into(),
                    });
                }
                Ok(RawRecord {
                    row: i + 1,
                    id: (!e.id.is_empty()).then_some(e.id),
                    phrase,
                    image_ref: e.image_ref,
                    priority: e.priority,
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        Self::build(raws)
    }

    fn build(raws: Vec<RawRecord>) -> Result<Self, LexiconError> {
        if raws.is_empty() {
            return Err(LexiconError::Empty);
        }
        let mut seen_phrase: HashSet<(Vec<String>, i64)> = HashSet::new();
        for r in &raws {
            if r.image_ref.trim().is_empty() {
                return Err(LexiconError::Malformed {
                    row: r.row,
                    reason: "empty image_ref".into(),
                });
            }
            if !seen_phrase.insert((r.phrase.clone(), r.priority)) {
                return Err(LexiconError::DuplicatePhrase {
                    row: r.row,
                    phrase: r.phrase.join(" "),
                    priority: r.priority,
                });
            }
        }

        // Explicit ids are claimed first so an auto id never steals one.
        let mut taken: HashSet<String> = HashSet::new();
        for r in &raws {
            if let Some(id) = &r.id {
                if !taken.insert(id.clone()) {
                    return Err(LexiconError::DuplicateId {
                        row: r.row,
                        id: id.clone(),
                    });
                }
            }
        }
        let mut entries = Vec::with_capacity(raws.len());
        for r in raws {
            let id = match r.id {
                Some(id) => id,
                None => {
                    let base = r.phrase.join("_");
                    let mut candidate = base.clone();
                    let mut n = 2;
                    while taken.contains(&candidate) {
                        candidate = format!("{base}_{n}");
                        n += 1;
                    }
                    taken.insert(candidate.clone());
                    candidate
                }
            };
            entries.push(LexiconEntry {
                id,
                phrase: r.phrase,
                image_ref: r.image_ref.trim().to_string(),
                priority: r.priority,
            });
        }

        let mut index: HashMap<String, Vec<usize>> = HashMap::new();
        let mut by_id = HashMap::with_capacity(entries.len());
        let mut max_ngram = 0;
        for (i, e) in entries.iter().enumerate() {
            index.entry(e.phrase[0].clone()).or_default().push(i);
            by_id.insert(e.id.clone(), i);
            max_ngram = max_ngram.max(e.phrase.len());
        }
        for bucket in index.values_mut() {
            bucket.sort_by(|&a, &b| {
                let (ea, eb) = (&entries[a], &entries[b]);
                eb.phrase
                    .len()
                    .cmp(&ea.phrase.len())
                    .then(eb.priority.cmp(&ea.priority))
                    .then_with(|| ea.id.cmp(&eb.id))
            });
        }
        Ok(Lexicon {
            entries,
            index,
            by_id,
            max_ngram,
        })
    }

    /// Longest entry matching `tokens[start..]`. Ties on length go to the
    /// higher priority, then the lexicographically smaller id.
    pub fn lookup<S: AsRef<str>>(&self, tokens: &[S], start: usize) -> Option<(&LexiconEntry, usize)> {
        let first = tokens.get(start)?.as_ref();
        let remaining = tokens.len() - start;
        self.index.get(first)?.iter().find_map(|&i| {
            let e = &self.entries[i];
            let len = e.phrase.len();
            (len <= remaining
                && e.phrase
                    .iter()
                    .zip(&tokens[start..start + len])
                    .all(|(p, t)| p == t.as_ref()))
            .then_some((e, len))
        })
    }

    pub fn get(&self, id: &str) -> Option<&LexiconEntry> {
        self.by_id.get(id).map(|&i| &self.entries[i])
    }

    pub fn entries(&self) -> &[LexiconEntry] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn max_ngram(&self) -> usize {
        self.max_ngram
    }

    /// Index bucket for a first token, in lookup order.
    pub fn bucket(&self, first: &str) -> Vec<&LexiconEntry> {
        self.index
            .get(first)
            .map(|b| b.iter().map(|&i| &self.entries[i]).collect())
            .unwrap_or_default()
    }

    /// Single-word phrases, the candidate set for semantic substitution.
    pub fn unigram_vocab(&self) -> BTreeSet<String> {
        self.entries
            .iter()
            .filter(|e| e.phrase.len() == 1)
            .map(|e| e.phrase[0].clone())
            .collect()
    }

    /// True if `word` alone is a complete lexicon phrase.
    pub fn contains_word(&self, word: &str) -> bool {
        self.lookup(&[word], 0).is_some()
    }
}

fn parse_jsonl_row(row: usize, line: &str) -> Result<RawRecord, LexiconError> {
    let rec: JsonRecord = serde_json::from_str(line).map_err(|e| LexiconError::Malformed {
        row,
        reason: e.to_string(),
    })?;
    let phrase = normalize_phrase(&rec.phrase);
    if phrase.is_empty() {
        return Err(LexiconError::Malformed {
            row,
            reason: "empty phrase".into(),
        });
    }
    Ok(RawRecord {
        row,
        id: rec.id.filter(|s| !s.trim().is_empty()),
        phrase,
        image_ref: rec.image_ref,
        priority: rec.priority.unwrap_or(0),
    })
}

fn parse_tsv_row(row: usize, line: &str) -> Result<RawRecord, LexiconError> {
    let cols: Vec<&str> = line.split('\t').collect();
    if !(2..=4).contains(&cols.len()) {
        return Err(LexiconError::Malformed {
            row,
            reason: format!("expected 2 to 4 tab-separated columns, found {}", cols.len()),
        });
    }
    let phrase = normalize_phrase(cols[0]);
    if phrase.is_empty() {
        return Err(LexiconError::Malformed {
            row,
            reason: "empty phrase".into(),
        });
    }
    let id = cols
        .get(2)
        .map(|s| s.trim())
        .filter(|s| !s.is_empty())
        .map(str::to_string);
    let priority = match cols.get(3).map(|s| s.trim()).filter(|s| !s.is_empty()) {
        Some(p) => p.parse::<i64>().map_err(|_| LexiconError::Malformed {
            row,
            reason: format!("priority {p:?} is not an integer"),
        })?,
        None => 0,
    };
    Ok(RawRecord {
        row,
        id,
        phrase,
        image_ref: cols[1].to_string(),
        priority,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tsv(s: &str) -> Result<Lexicon, LexiconError> {
        Lexicon::load(s.as_bytes(), LexiconFormat::Tsv)
    }

    #[test]
    fn bucket_orders_longest_first() {
        let lex = tsv("ice cream\timg/icecream.png\nice\timg/ice.png\n").unwrap();
        assert_eq!(lex.max_ngram(), 2);
        let bucket: Vec<String> = lex.bucket("ice").iter().map(|e| e.phrase_text()).collect();
        assert_eq!(bucket, ["ice cream", "ice"]);
    }

    #[test]
    fn jsonl_unigrams() {
        let src = r#"{"phrase":"I","image_ref":"i.png"}
{"phrase":"love","image_ref":"love.png"}
{"id":"bts","phrase":"BTS","image_ref":"bts.png","priority":3}
"#;
        let lex = Lexicon::load(src.as_bytes(), LexiconFormat::Jsonl).unwrap();
        assert_eq!(lex.len(), 3);
        assert_eq!(lex.max_ngram(), 1);
        assert_eq!(lex.get("bts").unwrap().phrase, ["bts"]);
        assert_eq!(lex.get("i").unwrap().image_ref, "i.png");
    }

    #[test]
    fn lookup_prefers_longest() {
        let lex = tsv("ice cream\timg/icecream.png\nice\timg/ice.png\n").unwrap();
        let toks = ["eat", "ice", "cream"];
        let (e, len) = lex.lookup(&toks, 1).unwrap();
        assert_eq!((e.phrase_text().as_str(), len), ("ice cream", 2));
        assert!(lex.lookup(&toks, 0).is_none());
        // truncated input falls back to the unigram
        let (e, len) = lex.lookup(&["ice"], 0).unwrap();
        assert_eq!((e.id.as_str(), len), ("ice", 1));
    }

    #[test]
    fn priority_breaks_duplicate_phrase() {
        let lex = tsv("dog\tlow.png\ta\t1\ndog\thigh.png\tb\t5\n").unwrap();
        assert_eq!(lex.lookup(&["dog"], 0).unwrap().0.id, "b");
    }

    #[test]
    fn normalization() {
        assert_eq!(normalize_phrase("  Ice   Cream! "), ["ice", "cream"]);
        assert_eq!(normalize_phrase("T-shirt"), ["t-shirt"]);
        assert_eq!(normalize_phrase("don\u{2019}t."), ["don't"]);
        assert!(normalize_phrase("?!").is_empty());
    }

    #[test]
    fn load_errors() {
        assert!(matches!(tsv(""), Err(LexiconError::Empty)));
        assert!(matches!(
            tsv("a\ta.png\nb\n"),
            Err(LexiconError::Malformed { row: 2, .. })
        ));
        assert!(matches!(
            tsv("Dog\ta.png\n\ndog.\tb.png\n"),
            Err(LexiconError::DuplicatePhrase { row: 3, .. })
        ));
        assert!(matches!(
            tsv("a\ta.png\tx\nb\tb.png\tx\n"),
            Err(LexiconError::DuplicateId { row: 2, .. })
        ));
        assert!(matches!(
            tsv("a\ta.png\t\tnope\n"),
            Err(LexiconError::Malformed { row: 1, .. })
        ));
        assert!(matches!(tsv("a\t  \n"), Err(LexiconError::Malformed { row: 1, .. })));
        assert!(matches!(
            Lexicon::load("{\"phrase\":1}".as_bytes(), LexiconFormat::Jsonl),
            Err(LexiconError::Malformed { row: 1, .. })
        ));
    }

    #[test]
    fn auto_ids_do_not_collide() {
        let lex = tsv("ice cream\ta.png\t\t1\nice cream\tb.png\t\t2\nx\tc.png\tice_cream\n").unwrap();
        let ids: Vec<&str> = lex.entries().iter().map(|e| e.id.as_str()).collect();
        assert_eq!(ids, ["ice_cream_2", "ice_cream_3", "ice_cream"]);
    }

    #[test]
    fn load_is_deterministic() {
        let src = "b a\t1.png\na\t2.png\na b c\t3.png\nb\t4.png\n";
        let a = tsv(src).unwrap();
        let b = tsv(src).unwrap();
        assert_eq!(a.entries(), b.entries());
        for first in ["a", "b"] {
            let ia: Vec<_> = a.bucket(first).iter().map(|e| e.id.clone()).collect();
            let ib: Vec<_> = b.bucket(first).iter().map(|e| e.id.clone()).collect();
            assert_eq!(ia, ib);
        }
    }
}
