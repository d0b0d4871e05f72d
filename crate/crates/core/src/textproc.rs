//! Tokenization, coarse POS tagging, stopword flagging and gazetteer-based
//! entity detection.
//!
//! Everything here is rule- and dictionary-driven so output is deterministic.
//! The resources ([`TagResources`]) are plain text files and can be swapped
//! or extended without touching code.

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::io::BufRead;
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bundled;

#[derive(Debug, Error)]
pub enum ResourceError {
    #[error("{file}: row {row}: {reason}")]
    Malformed {
        file: String,
        row: usize,
        reason: String,
    },
    #[error("{file}: {reason}")]
    Invalid { file: String, reason: String },
    #[error("{file}: {source}")]
    Io {
        file: String,
        #[source]
        source: std::io::Error,
    },
}

/// Coarse part-of-speech tag.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Pos {
    Det,
    Adp,
    Conj,
    Pron,
    Noun,
    Propn,
    Verb,
    Adj,
    Adv,
    Num,
    Intj,
    Other,
}

impl Pos {
    pub const ALL: [Pos; 12] = [
        Pos::Det,
        Pos::Adp,
        Pos::Conj,
        Pos::Pron,
        Pos::Noun,
        Pos::Propn,
        Pos::Verb,
        Pos::Adj,
        Pos::Adv,
        Pos::Num,
        Pos::Intj,
        Pos::Other,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Pos::Det => "DET",
            Pos::Adp => "ADP",
            Pos::Conj => "CONJ",
            Pos::Pron => "PRON",
            Pos::Noun => "NOUN",
            Pos::Propn => "PROPN",
            Pos::Verb => "VERB",
            Pos::Adj => "ADJ",
            Pos::Adv => "ADV",
            Pos::Num => "NUM",
            Pos::Intj => "INTJ",
            Pos::Other => "OTHER",
        }
    }

    /// Determiners, prepositions and conjunctions: the function-word classes
    /// that are never rendered and are excluded from TPA counting.
    pub fn is_function_class(self) -> bool {
        matches!(self, Pos::Det | Pos::Adp | Pos::Conj)
    }
}

impl fmt::Display for Pos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Pos {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Pos::ALL
            .into_iter()
            .find(|p| p.as_str().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| format!("unknown POS tag {s:?}"))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum EntityClass {
    Person,
    Org,
    Loc,
    Misc,
}

impl EntityClass {
    pub fn as_str(self) -> &'static str {
        match self {
            EntityClass::Person => "PERSON",
            EntityClass::Org => "ORG",
            EntityClass::Loc => "LOC",
            EntityClass::Misc => "MISC",
        }
    }
}

impl FromStr for EntityClass {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_uppercase().as_str() {
            "PERSON" | "PER" => Ok(EntityClass::Person),
            "ORG" => Ok(EntityClass::Org),
            "LOC" => Ok(EntityClass::Loc),
            "MISC" => Ok(EntityClass::Misc),
            other => Err(format!("unknown entity class {other:?}")),
        }
    }
}

/// Named-entity label. Serialized as `"NONE"` or the class name; `"O"` and
/// the empty string are accepted as aliases for `NONE` when parsing.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub enum NeLabel {
    #[default]
    None,
    Entity(EntityClass),
}

impl NeLabel {
    pub fn is_entity(self) -> bool {
        matches!(self, NeLabel::Entity(_))
    }
}

impl fmt::Display for NeLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NeLabel::None => f.write_str("NONE"),
            NeLabel::Entity(c) => f.write_str(c.as_str()),
        }
    }
}

impl FromStr for NeLabel {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_uppercase().as_str() {
            "" | "O" | "NONE" => Ok(NeLabel::None),
            other => other.parse().map(NeLabel::Entity),
        }
    }
}

impl From<NeLabel> for String {
    fn from(l: NeLabel) -> String {
        l.to_string()
    }
}

impl TryFrom<String> for NeLabel {
    type Error = String;

    fn try_from(s: String) -> Result<Self, Self::Error> {
        s.parse()
    }
}

/// Byte offsets into the source sentence.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Span {
    pub start: usize,
    pub end: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Token {
    pub surface: String,
    /// Lowercased form; empty for pure punctuation.
    pub normalized: String,
    pub pos: Pos,
    pub is_stopword: bool,
    pub ne: NeLabel,
    pub span: Span,
}

impl Token {
    pub fn is_punct(&self) -> bool {
        self.normalized.is_empty()
    }
}

pub fn normalize_word(surface: &str) -> String {
    surface.to_lowercase().replace('\u{2019}', "'")
}

/// Splits on whitespace, then peels leading and trailing non-alphanumeric
/// characters off each chunk as single-character punctuation tokens.
/// Internal apostrophes and hyphens stay, so contractions are kept whole.
pub fn tokenize(sentence: &str) -> Vec<Token> {
    let mut out = Vec::new();
    let push = |out: &mut Vec<Token>, start: usize, text: &str, punct: bool| {
        out.push(Token {
            surface: text.to_string(),
            normalized: if punct {
                String::new()
            } else {
                normalize_word(text)
            },
            pos: Pos::Other,
            is_stopword: false,
            ne: NeLabel::None,
            span: Span {
                start,
                end: start + text.len(),
            },
        });
    };

    for (chunk_start, chunk) in whitespace_chunks(sentence) {
        let chars: Vec<(usize, char)> = chunk.char_indices().collect();
        let lead = chars.iter().take_while(|(_, c)| !c.is_alphanumeric()).count();
        if lead == chars.len() {
            for &(off, c) in &chars {
                push(&mut out, chunk_start + off, &chunk[off..off + c.len_utf8()], true);
            }
            continue;
        }
        let trail = chars.iter().rev().take_while(|(_, c)| !c.is_alphanumeric()).count();
        for &(off, c) in &chars[..lead] {
            push(&mut out, chunk_start + off, &chunk[off..off + c.len_utf8()], true);
        }
        let word_start = chars[lead].0;
        let word_end = if trail == 0 {
            chunk.len()
        } else {
            chars[chars.len() - trail].0
        };
        push(&mut out, chunk_start + word_start, &chunk[word_start..word_end], false);
        for &(off, c) in &chars[chars.len() - trail..] {
            push(&mut out, chunk_start + off, &chunk[off..off + c.len_utf8()], true);
        }
    }
    out
}

fn whitespace_chunks(s: &str) -> impl Iterator<Item = (usize, &str)> {
    let mut pos = 0;
    std::iter::from_fn(move || {
        let rest = &s[pos..];
        let skip = rest.len() - rest.trim_start().len();
        let start = pos + skip;
        if start >= s.len() {
            return None;
        }
        let len = s[start..].find(char::is_whitespace).unwrap_or(s.len() - start);
        pos = start + len;
        Some((start, &s[start..start + len]))
    })
}

/// Index of the first word token of each sentence in `tokens`.
pub fn sentence_initial_flags(tokens: &[Token]) -> Vec<bool> {
    let mut flags = vec![false; tokens.len()];
    let mut at_start = true;
    for (i, t) in tokens.iter().enumerate() {
        if t.is_punct() {
            if matches!(t.surface.as_str(), "." | "!" | "?") {
                at_start = true;
            }
        } else {
            flags[i] = at_start;
            at_start = false;
        }
    }
    flags
}

#[derive(Debug, Clone)]
pub struct TagResources {
    pub tag_dictionary: HashMap<String, Pos>,
    pub suffix_rules: Vec<(String, Pos)>,
    pub stopword_set: HashSet<String>,
    /// Phrase tokens -> class.
    pub gazetteer: HashMap<Vec<String>, EntityClass>,
    gazetteer_max: usize,
}

impl TagResources {
    pub fn new(
        tag_dictionary: HashMap<String, Pos>,
        suffix_rules: Vec<(String, Pos)>,
        stopword_set: HashSet<String>,
        gazetteer: HashMap<Vec<String>, EntityClass>,
    ) -> Result<Self, ResourceError> {
        if suffix_rules.is_empty() {
            return Err(ResourceError::Invalid {
                file: "suffix rules".into(),
                reason: "no suffix rules".into(),
            });
        }
        let stopword_set = stopword_set.iter().map(|w| normalize_word(w.trim())).collect();
        let gazetteer_max = gazetteer.keys().map(Vec::len).max().unwrap_or(0);
        Ok(TagResources {
            tag_dictionary,
            suffix_rules,
            stopword_set,
            gazetteer,
            gazetteer_max,
        })
    }

    /// The resources compiled into the crate.
    pub fn bundled() -> Self {
        Self::parse(
            bundled::TAG_DICTIONARY,
            bundled::SUFFIX_RULES,
            bundled::STOPWORDS,
            bundled::GAZETTEER,
        )
        .expect("bundled tag resources are valid")
    }

    pub fn parse(
        tag_dictionary: &str,
        suffix_rules: &str,
        stopwords: &str,
        gazetteer: &str,
    ) -> Result<Self, ResourceError> {
        Self::from_readers(
            tag_dictionary.as_bytes(),
            suffix_rules.as_bytes(),
            stopwords.as_bytes(),
            gazetteer.as_bytes(),
        )
    }

    pub fn from_readers(
        tag_dictionary: impl BufRead,
        suffix_rules: impl BufRead,
        stopwords: impl BufRead,
        gazetteer: impl BufRead,
    ) -> Result<Self, ResourceError> {
        let mut dict = HashMap::new();
        for (row, cols) in tsv_rows("tag dictionary", tag_dictionary, 2)? {
            let pos = parse_pos("tag dictionary", row, &cols[1])?;
            dict.insert(normalize_word(cols[0].trim()), pos);
        }
        let mut suffixes = Vec::new();
        for (row, cols) in tsv_rows("suffix rules", suffix_rules, 2)? {
            let pos = parse_pos("suffix rules", row, &cols[1])?;
            suffixes.push((normalize_word(cols[0].trim()), pos));
        }
        let mut stops = HashSet::new();
        for line in stopwords.lines() {
            let line = line.map_err(|source| ResourceError::Io {
                file: "stopwords".into(),
                source,
            })?;
            let w = line.trim();
            if !w.is_empty() && !w.starts_with('#') {
                stops.insert(normalize_word(w));
            }
        }
        let mut gaz = HashMap::new();
        for (row, cols) in tsv_rows("gazetteer", gazetteer, 2)? {
            let class: EntityClass = cols[1].parse().map_err(|reason| ResourceError::Malformed {
                file: "gazetteer".into(),
                row,
                reason,
            })?;
            let phrase: Vec<String> = cols[0].split_whitespace().map(normalize_word).collect();
            if phrase.is_empty() {
                return Err(ResourceError::Malformed {
                    file: "gazetteer".into(),
                    row,
                    reason: "empty phrase".into(),
                });
            }
            gaz.insert(phrase, class);
        }
        Self::new(dict, suffixes, stops, gaz)
    }

    /// Loads from files; any path left as `None` uses the bundled resource.
    pub fn load_paths(
        tag_dictionary: Option<&Path>,
        suffix_rules: Option<&Path>,
        stopwords: Option<&Path>,
        gazetteer: Option<&Path>,
    ) -> Result<Self, ResourceError> {
        let read = |p: Option<&Path>, fallback: &'static str| -> Result<String, ResourceError> {
            match p {
                Some(p) => std::fs::read_to_string(p).map_err(|source| ResourceError::Io {
                    file: p.display().to_string(),
                    source,
                }),
                None => Ok(fallback.to_string()),
            }
        };
        Self::parse(
            &read(tag_dictionary, bundled::TAG_DICTIONARY)?,
            &read(suffix_rules, bundled::SUFFIX_RULES)?,
            &read(stopwords, bundled::STOPWORDS)?,
            &read(gazetteer, bundled::GAZETTEER)?,
        )
    }

    pub fn is_stopword(&self, normalized: &str) -> bool {
        self.stopword_set.contains(normalized)
    }

    /// Longest gazetteer phrase starting at `start`.
    pub fn gazetteer_match(&self, tokens: &[Token], start: usize) -> Option<(EntityClass, usize)> {
        let max = self.gazetteer_max.min(tokens.len() - start);
        (1..=max).rev().find_map(|len| {
            let key: Vec<String> = tokens[start..start + len]
                .iter()
                .map(|t| t.normalized.clone())
                .collect();
            self.gazetteer.get(&key).map(|&c| (c, len))
        })
    }
}

fn parse_pos(file: &str, row: usize, s: &str) -> Result<Pos, ResourceError> {
    s.parse().map_err(|reason| ResourceError::Malformed {
        file: file.into(),
        row,
        reason,
    })
}

fn tsv_rows(
    file: &str,
    r: impl BufRead,
    min_cols: usize,
) -> Result<Vec<(usize, Vec<String>)>, ResourceError> {
    let mut rows = Vec::new();
    for (i, line) in r.lines().enumerate() {
        let line = line.map_err(|source| ResourceError::Io {
            file: file.into(),
            source,
        })?;
        if line.trim().is_empty() || line.starts_with('#') {
            continue;
        }
        let cols: Vec<String> = line.split('\t').map(str::to_string).collect();
        if cols.len() < min_cols {
            return Err(ResourceError::Malformed {
                file: file.into(),
                row: i + 1,
                reason: format!("expected {min_cols} tab-separated columns"),
            });
        }
        rows.push((i + 1, cols));
    }
    Ok(rows)
}

fn looks_numeric(w: &str) -> bool {
    w.chars().any(|c| c.is_ascii_digit())
        && w.chars().all(|c| c.is_ascii_digit() || matches!(c, ',' | '.'))
}

fn starts_uppercase(s: &str) -> bool {
    s.chars().next().is_some_and(char::is_uppercase)
}

/// Assigns a coarse tag to every token. Dictionary words get their listed
/// tag; unknown capitalized words that do not start a sentence become PROPN;
/// the rest go through the suffix rules and default to NOUN.
pub fn pos_tag(mut tokens: Vec<Token>, res: &TagResources) -> Vec<Token> {
    let initial = sentence_initial_flags(&tokens);
    for (t, is_initial) in tokens.iter_mut().zip(initial) {
        t.pos = tag_word(t, is_initial, res);
    }
    tokens
}

fn tag_word(t: &Token, is_initial: bool, res: &TagResources) -> Pos {
    if t.is_punct() {
        return Pos::Other;
    }
    let w = t.normalized.as_str();
    if let Some(&p) = res.tag_dictionary.get(w) {
        return p;
    }
    if looks_numeric(w) {
        return Pos::Num;
    }
    if !is_initial && starts_uppercase(&t.surface) {
        return Pos::Propn;
    }
    let n = w.chars().count();
    res.suffix_rules
        .iter()
        .find(|(suffix, _)| w.ends_with(suffix.as_str()) && n >= suffix.chars().count() + 2)
        .map(|&(_, p)| p)
        .unwrap_or(Pos::Noun)
}

pub fn mark_stopwords(mut tokens: Vec<Token>, res: &TagResources) -> Vec<Token> {
    for t in &mut tokens {
        t.is_stopword = res.is_stopword(&t.normalized);
    }
    tokens
}

/// Left-to-right: the longest gazetteer phrase at a position labels all its
/// tokens with its class; failing that, a maximal run of PROPN tokens (that
/// does not run into a gazetteer match) becomes one MISC entity.
pub fn detect_entities(mut tokens: Vec<Token>, res: &TagResources) -> Vec<Token> {
    for t in &mut tokens {
        t.ne = NeLabel::None;
    }
    let mut i = 0;
    while i < tokens.len() {
        if let Some((class, len)) = res.gazetteer_match(&tokens, i) {
            for t in &mut tokens[i..i + len] {
                t.ne = NeLabel::Entity(class);
            }
            i += len;
        } else if tokens[i].pos == Pos::Propn {
            let mut j = i + 1;
            while j < tokens.len()
                && tokens[j].pos == Pos::Propn
                && res.gazetteer_match(&tokens, j).is_none()
            {
                j += 1;
            }
            for t in &mut tokens[i..j] {
                t.ne = NeLabel::Entity(EntityClass::Misc);
            }
            i = j;
        } else {
            i += 1;
        }
    }
    tokens
}

/// Full pass: tokenize, tag, flag stopwords, detect entities.
pub fn analyze(sentence: &str, res: &TagResources) -> Vec<Token> {
    let tokens = pos_tag(tokenize(sentence), res);
    let tokens = mark_stopwords(tokens, res);
    detect_entities(tokens, res)
}
