//! Grammar error correction.
//!
//! [`correct_rules`] is a deterministic rule engine for the error classes
//! seen in children's speech: duplicated auxiliaries, `do` + modal fronting,
//! missing infinitive `to`, articles before sports/games after *play*,
//! single-edit misspellings, `a` + plural noun, and over-regularized past
//! tenses. [`correct_external`] talks to an external correction service and
//! [`correct`] picks between the two, falling back to the rules whenever the
//! service fails.

use std::collections::{HashMap, HashSet};
use std::io::BufRead;
use std::path::Path;
use std::time::Duration;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bundled;
use crate::morph;
use crate::textproc::{tokenize, ResourceError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EditCategory {
    AuxiliaryDuplication,
    ModalFronting,
    InfinitiveInsertion,
    ArticleDeletion,
    Spelling,
    IndefinitePlural,
    IrregularPast,
    Capitalization,
    External,
}

/// One edit against the source sentence. `start..end` are byte offsets; an
/// insertion has `start == end`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Edit {
    pub start: usize,
    pub end: usize,
    pub original: String,
    pub replacement: String,
    pub category: EditCategory,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum GecBackend {
    Rules,
    External,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GecResult {
    pub corrected: String,
    pub edits: Vec<Edit>,
    pub backend: GecBackend,
    /// Set when an external backend was configured but failed and the rules
    /// produced this result instead.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub fallback: Option<String>,
}

/// Replays `edits` (sorted, non-overlapping) against `source`.
pub fn apply_edits(source: &str, edits: &[Edit]) -> String {
    let mut out = String::with_capacity(source.len() + 16);
    let mut pos = 0;
    for e in edits {
        out.push_str(&source[pos..e.start]);
        out.push_str(&e.replacement);
        pos = e.end;
    }
    out.push_str(&source[pos..]);
    out
}

#[derive(Debug, Clone)]
pub struct GecRuleSet {
    /// Over-regularized past form -> correct irregular past ("taked" -> "took").
    pub irregular_past: HashMap<String, String>,
    /// Headwords used as repair targets for misspellings.
    pub spelling_dictionary: HashSet<String>,
    /// Verbs that take `to` + infinitive (love, like, want, ...).
    pub infinitive_verbs: HashSet<String>,
    /// Games and sports that take no article after *play*.
    pub bare_noun_list: HashSet<String>,
    /// Base-form verbs that can follow an infinitive verb.
    pub base_verbs: HashSet<String>,
    /// Countable nouns, for the `a` + plural repair.
    pub count_nouns: HashSet<String>,
}

const AUXILIARIES: &[&str] = &[
    "is", "am", "are", "was", "were", "do", "does", "did", "has", "have", "had", "can", "could",
    "will", "would", "should", "shall", "may", "might", "must",
];
const DO_FORMS: &[&str] = &["do", "does", "did"];
const MODALS: &[&str] = &[
    "can", "could", "will", "would", "should", "shall", "may", "might", "must",
];
const ARTICLES: &[&str] = &["a", "an", "the"];

impl GecRuleSet {
    pub fn bundled() -> Self {
        Self::parse(
            bundled::IRREGULAR_PAST,
            bundled::SPELLING_DICTIONARY,
            bundled::INFINITIVE_VERBS,
            bundled::BARE_NOUNS,
            bundled::BASE_VERBS,
            bundled::COUNT_NOUNS,
        )
        .expect("bundled GEC rules are valid")
    }

    pub fn parse(
        irregular_past: &str,
        spelling_dictionary: &str,
        infinitive_verbs: &str,
        bare_nouns: &str,
        base_verbs: &str,
        count_nouns: &str,
    ) -> Result<Self, ResourceError> {
        let mut past = HashMap::new();
        for (i, line) in irregular_past.lines().enumerate() {
            if line.trim().is_empty() || line.starts_with('#') {
                continue;
            }
            let (k, v) = line.split_once('\t').ok_or_else(|| ResourceError::Malformed {
                file: "irregular past".into(),
                row: i + 1,
                reason: "expected two tab-separated columns".into(),
            })?;
            past.insert(k.trim().to_lowercase(), v.trim().to_lowercase());
        }
        let rules = GecRuleSet {
            irregular_past: past,
            spelling_dictionary: word_set(spelling_dictionary.as_bytes())?,
            infinitive_verbs: word_set(infinitive_verbs.as_bytes())?,
            bare_noun_list: word_set(bare_nouns.as_bytes())?,
            base_verbs: word_set(base_verbs.as_bytes())?,
            count_nouns: word_set(count_nouns.as_bytes())?,
        };
        for (name, empty) in [
            ("irregular past", rules.irregular_past.is_empty()),
            ("spelling dictionary", rules.spelling_dictionary.is_empty()),
            ("infinitive verbs", rules.infinitive_verbs.is_empty()),
            ("bare nouns", rules.bare_noun_list.is_empty()),
        ] {
            if empty {
                return Err(ResourceError::Invalid {
                    file: name.into(),
                    reason: "must not be empty".into(),
                });
            }
        }
        Ok(rules)
    }

    /// Loads the six rule files from a directory using the bundled file names.
    pub fn load_dir(dir: &Path) -> Result<Self, ResourceError> {
        let read = |name: &str| {
            let p = dir.join(name);
            std::fs::read_to_string(&p).map_err(|source| ResourceError::Io {
                file: p.display().to_string(),
                source,
            })
        };
        Self::parse(
            &read("irregular_past.tsv")?,
            &read("spelling_dictionary.txt")?,
            &read("infinitive_verbs.txt")?,
            &read("bare_nouns.txt")?,
            &read("base_verbs.txt")?,
            &read("count_nouns.txt")?,
        )
    }

    /// A word is known if it is a headword, an irregular form, or a regular
    /// inflection of a headword.
    pub fn is_known(&self, word: &str) -> bool {
        self.spelling_dictionary.contains(word)
            || self.irregular_past.contains_key(word)
            || self.irregular_past.values().any(|v| v == word)
            || morph::lemma_candidates(word).iter().any(|l| {
                self.spelling_dictionary.contains(l) && morph::is_regular_inflection(word, l)
            })
    }

    fn has_lemma_in(&self, word: &str, set: &HashSet<String>) -> bool {
        set.contains(word)
            || morph::lemma_candidates(word)
                .iter()
                .any(|l| set.contains(l) && morph::is_regular_inflection(word, l))
    }

    fn is_plural_count_noun(&self, word: &str) -> bool {
        !self.count_nouns.contains(word)
            && morph::lemma_candidates(word)
                .iter()
                .any(|l| self.count_nouns.contains(l) && morph::plural(l) == word)
    }

    /// Unique repair target for an unknown word, if any.
    fn spelling_target(&self, word: &str) -> Option<String> {
        let mut hits: Vec<String> = edits1(word)
            .into_iter()
            .filter(|c| self.spelling_dictionary.contains(c))
            .collect();
        hits.sort();
        hits.dedup();
        match hits.len() {
            1 => hits.pop(),
            0 => {
                // a trailing run of one repeated letter is treated as noise
                let chars: Vec<char> = word.chars().collect();
                let last = *chars.last()?;
                let run = chars.iter().rev().take_while(|&&c| c == last).count();
                if run < 2 || run >= chars.len() {
                    return None;
                }
                let stripped: String = chars[..chars.len() - run].iter().collect();
                self.spelling_dictionary.contains(&stripped).then_some(stripped)
            }
            _ => None,
        }
    }
}

fn word_set(r: impl BufRead) -> Result<HashSet<String>, ResourceError> {
    let mut set = HashSet::new();
    for line in r.lines() {
        let line = line.map_err(|source| ResourceError::Io {
            file: "word list".into(),
            source,
        })?;
        let w = line.trim();
        if !w.is_empty() && !w.starts_with('#') {
            set.insert(w.to_lowercase());
        }
    }
    Ok(set)
}

/// All strings at Damerau-Levenshtein distance one over `[a-z']`.
fn edits1(word: &str) -> Vec<String> {
    const ALPHABET: &str = "abcdefghijklmnopqrstuvwxyz'";
    let chars: Vec<char> = word.chars().collect();
    let n = chars.len();
    let mut out = Vec::with_capacity(60 * (n + 1));
    let join = |v: &[char]| v.iter().collect::<String>();
    for i in 0..n {
        let mut v = chars.clone();
        v.remove(i);
        out.push(join(&v));
    }
    for i in 0..n.saturating_sub(1) {
        let mut v = chars.clone();
        v.swap(i, i + 1);
        out.push(join(&v));
    }
    for i in 0..n {
        for c in ALPHABET.chars() {
            if c != chars[i] {
                let mut v = chars.clone();
                v[i] = c;
                out.push(join(&v));
            }
        }
    }
    for i in 0..=n {
        for c in ALPHABET.chars() {
            let mut v = chars.clone();
            v.insert(i, c);
            out.push(join(&v));
        }
    }
    out.retain(|s| s != word);
    out
}

fn match_case(original: &str, replacement: &str) -> String {
    let mut chars = original.chars();
    let first_upper = chars.next().is_some_and(char::is_uppercase);
    let all_upper = original.chars().count() > 1 && original.chars().all(|c| !c.is_lowercase());
    if all_upper {
        replacement.to_uppercase()
    } else if first_upper {
        capitalize(replacement)
    } else {
        replacement.to_string()
    }
}

fn capitalize(s: &str) -> String {
    let mut c = s.chars();
    match c.next() {
        Some(f) => f.to_uppercase().chain(c).collect(),
        None => String::new(),
    }
}

/// A word or punctuation mark in the sentence being rewritten. `src` points
/// back at the source token it came from; inserted words have none.
#[derive(Debug, Clone)]
struct Piece {
    text: String,
    src: Option<usize>,
    punct: bool,
    category: Option<EditCategory>,
}

impl Piece {
    fn lower(&self) -> String {
        self.text.to_lowercase()
    }
}

struct Rewriter<'a> {
    rules: &'a GecRuleSet,
    pieces: Vec<Piece>,
    deleted: HashMap<usize, EditCategory>,
}

impl<'a> Rewriter<'a> {
    /// Word piece positions grouped by sentence.
    fn sentences(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new()];
        for (i, p) in self.pieces.iter().enumerate() {
            if p.punct {
                if matches!(p.text.as_str(), "." | "!" | "?") && !out.last().unwrap().is_empty() {
                    out.push(Vec::new());
                }
            } else {
                out.last_mut().unwrap().push(i);
            }
        }
        out.retain(|s| !s.is_empty());
        out
    }

    fn delete(&mut self, pos: usize, cat: EditCategory) {
        let p = self.pieces.remove(pos);
        if let Some(src) = p.src {
            self.deleted.insert(src, cat);
        }
    }

    fn replace(&mut self, pos: usize, text: String, cat: EditCategory) {
        let p = &mut self.pieces[pos];
        if p.text != text {
            p.text = text;
            p.category = Some(cat);
        }
    }

    fn aux_duplication(&mut self) -> bool {
        for words in self.sentences() {
            let first = self.pieces[words[0]].lower();
            if !AUXILIARIES.contains(&first.as_str()) {
                continue;
            }
            // the repeated auxiliary must not be the last word of the clause
            if let Some(&pos) = words
                .iter()
                .enumerate()
                .skip(2)
                .filter(|&(k, _)| k + 1 < words.len())
                .map(|(_, p)| p)
                .find(|&&p| self.pieces[p].lower() == first)
            {
                self.delete(pos, EditCategory::AuxiliaryDuplication);
                return true;
            }
        }
        false
    }

    fn modal_fronting(&mut self) -> bool {
        for words in self.sentences() {
            if words.len() < 4 {
                continue;
            }
            let (w0, w1, w2) = (
                self.pieces[words[0]].lower(),
                self.pieces[words[1]].lower(),
                self.pieces[words[2]].lower(),
            );
            if DO_FORMS.contains(&w0.as_str())
                && !AUXILIARIES.contains(&w1.as_str())
                && MODALS.contains(&w2.as_str())
            {
                let text = match_case(&self.pieces[words[0]].text, &w2);
                self.replace(words[0], text, EditCategory::ModalFronting);
                self.delete(words[2], EditCategory::ModalFronting);
                return true;
            }
        }
        false
    }

    fn infinitive_insertion(&mut self) -> bool {
        for words in self.sentences() {
            for pair in words.windows(2) {
                let (a, b) = (self.pieces[pair[0]].lower(), self.pieces[pair[1]].lower());
                if self.rules.has_lemma_in(&a, &self.rules.infinitive_verbs)
                    && self.rules.base_verbs.contains(&b)
                {
                    self.pieces.insert(
                        pair[1],
                        Piece {
                            text: "to".into(),
                            src: None,
                            punct: false,
                            category: Some(EditCategory::InfinitiveInsertion),
                        },
                    );
                    return true;
                }
            }
        }
        false
    }

    fn article_deletion(&mut self) -> bool {
        for words in self.sentences() {
            for w in words.windows(3) {
                let verb = self.pieces[w[0]].lower();
                if (verb == "play" || morph::is_regular_inflection(&verb, "play"))
                    && ARTICLES.contains(&self.pieces[w[1]].lower().as_str())
                    && self.rules.bare_noun_list.contains(&self.pieces[w[2]].lower())
                {
                    self.delete(w[1], EditCategory::ArticleDeletion);
                    return true;
                }
            }
        }
        false
    }

    fn spelling(&mut self) -> bool {
        let mut changed = false;
        for words in self.sentences() {
            for (k, &pos) in words.iter().enumerate() {
                let text = self.pieces[pos].text.clone();
                if !text.chars().all(|c| c.is_alphabetic() || c == '\'') {
                    continue;
                }
                // proper nouns and acronyms are left alone
                let mut rest = text.chars();
                let first_upper = rest.next().is_some_and(char::is_uppercase);
                if rest.any(char::is_uppercase) || (first_upper && k != 0) {
                    continue;
                }
                let lower = text.to_lowercase();
                if self.rules.is_known(&lower) {
                    continue;
                }
                if let Some(target) = self.rules.spelling_target(&lower) {
                    self.replace(pos, match_case(&text, &target), EditCategory::Spelling);
                    changed = true;
                }
            }
        }
        changed
    }

    fn indefinite_plural(&mut self) -> bool {
        for words in self.sentences() {
            for pair in words.windows(2) {
                let art = self.pieces[pair[0]].lower();
                if (art == "a" || art == "an")
                    && self.rules.is_plural_count_noun(&self.pieces[pair[1]].lower())
                {
                    self.delete(pair[0], EditCategory::IndefinitePlural);
                    return true;
                }
            }
        }
        false
    }

    fn irregular_past(&mut self) -> bool {
        let mut changed = false;
        for pos in 0..self.pieces.len() {
            if self.pieces[pos].punct {
                continue;
            }
            let text = self.pieces[pos].text.clone();
            if let Some(fixed) = self.rules.irregular_past.get(&text.to_lowercase()) {
                self.replace(pos, match_case(&text, fixed), EditCategory::IrregularPast);
                changed = true;
            }
        }
        changed
    }

    fn first_word_capitalization(&mut self, source_first_upper: bool) {
        if !source_first_upper {
            return;
        }
        if let Some(pos) = self.pieces.iter().position(|p| !p.punct) {
            let text = &self.pieces[pos].text;
            if text.chars().next().is_some_and(char::is_lowercase) {
                let cap = capitalize(text);
                let cat = self.pieces[pos].category.unwrap_or(EditCategory::Capitalization);
                self.replace(pos, cap, cat);
            }
        }
    }
}

/// Applies the rule cascade to a fixpoint. Rule order is fixed: structural
/// rules (auxiliary duplication, modal fronting, infinitive insertion,
/// article deletion) run before spelling repair, then the `a` + plural and
/// irregular-past repairs.
pub fn correct_rules(sentence: &str, rules: &GecRuleSet) -> GecResult {
    let tokens = tokenize(sentence);
    let pieces = tokens
        .iter()
        .enumerate()
        .map(|(i, t)| Piece {
            text: t.surface.clone(),
            src: Some(i),
            punct: t.is_punct(),
            category: None,
        })
        .collect();
    let mut rw = Rewriter {
        rules,
        pieces,
        deleted: HashMap::new(),
    };
    let first_upper = tokens
        .iter()
        .find(|t| !t.is_punct())
        .is_some_and(|t| t.surface.chars().next().is_some_and(char::is_uppercase));

    for _ in 0..16 {
        let mut changed = false;
        while rw.aux_duplication() {
            changed = true;
        }
        while rw.modal_fronting() {
            changed = true;
        }
        while rw.infinitive_insertion() {
            changed = true;
        }
        while rw.article_deletion() {
            changed = true;
        }
        changed |= rw.spelling();
        while rw.indefinite_plural() {
            changed = true;
        }
        changed |= rw.irregular_past();
        if !changed {
            break;
        }
    }
    rw.first_word_capitalization(first_upper);

    let edits = build_edits(sentence, &tokens, &rw.pieces, &rw.deleted);
    GecResult {
        corrected: apply_edits(sentence, &edits),
        edits,
        backend: GecBackend::Rules,
        fallback: None,
    }
}

fn build_edits(
    source: &str,
    tokens: &[crate::textproc::Token],
    pieces: &[Piece],
    deleted: &HashMap<usize, EditCategory>,
) -> Vec<Edit> {
    // inserted pieces are anchored before the next surviving source token
    let mut inserts_before: HashMap<usize, Vec<&Piece>> = HashMap::new();
    let mut current: HashMap<usize, &Piece> = HashMap::new();
    let mut pending: Vec<&Piece> = Vec::new();
    for p in pieces {
        match p.src {
            None => pending.push(p),
            Some(i) => {
                if !pending.is_empty() {
                    inserts_before.insert(i, std::mem::take(&mut pending));
                }
                current.insert(i, p);
            }
        }
    }

    let is_ws = |a: usize, b: usize| source[a..b].chars().all(char::is_whitespace);
    let mut edits = Vec::new();
    for (i, t) in tokens.iter().enumerate() {
        let (start, end) = (t.span.start, t.span.end);
        if let Some(&cat) = deleted.get(&i) {
            let next = tokens.get(i + 1).map(|n| n.span.start);
            let prev = i.checked_sub(1).map(|j| (j, tokens[j].span.end));
            let (s, e) = match (next, prev) {
                (Some(n), _) if n > end && is_ws(end, n) => (start, n),
                (_, Some((j, p))) if p < start && is_ws(p, start) && !deleted.contains_key(&j) => {
                    (p, end)
                }
                _ => (start, end),
            };
            edits.push(Edit {
                start: s,
                end: e,
                original: source[s..e].to_string(),
                replacement: String::new(),
                category: cat,
            });
            continue;
        }
        if let Some(ins) = inserts_before.get(&i) {
            for p in ins {
                edits.push(Edit {
                    start,
                    end: start,
                    original: String::new(),
                    replacement: format!("{} ", p.text),
                    category: p.category.unwrap_or(EditCategory::External),
                });
            }
        }
        if let Some(p) = current.get(&i) {
            if p.text != t.surface {
                edits.push(Edit {
                    start,
                    end,
                    original: t.surface.clone(),
                    replacement: p.text.clone(),
                    category: p.category.unwrap_or(EditCategory::Capitalization),
                });
            }
        }
    }
    for p in pending {
        edits.push(Edit {
            start: source.len(),
            end: source.len(),
            original: String::new(),
            replacement: format!(" {}", p.text),
            category: p.category.unwrap_or(EditCategory::External),
        });
    }
    edits
}

#[derive(Debug, Error)]
pub enum ExternalGecError {
    #[error("external GEC request failed: {0}")]
    Transport(String),
    #[error("external GEC returned status {0}")]
    Status(u16),
    #[error("external GEC response malformed: {0}")]
    Malformed(String),
}

#[derive(Serialize)]
struct ExternalRequest<'a> {
    text: &'a str,
}

#[derive(Deserialize)]
struct ExternalResponse {
    corrected: String,
}

/// Sends `{"text": ...}` to `endpoint` and expects `{"corrected": ...}` back.
/// Edits are reconstructed by a word-level diff.
pub fn correct_external(
    sentence: &str,
    endpoint: &str,
    timeout: Duration,
) -> Result<GecResult, ExternalGecError> {
    let agent: ureq::Agent = ureq::Agent::config_builder()
        .timeout_global(Some(timeout))
        .http_status_as_error(false)
        .build()
        .into();
    let mut resp = agent
        .post(endpoint)
        .send_json(ExternalRequest { text: sentence })
        .map_err(|e| ExternalGecError::Transport(e.to_string()))?;
    let status = resp.status();
    if !status.is_success() {
        return Err(ExternalGecError::Status(status.as_u16()));
    }
    let body: ExternalResponse = resp
        .body_mut()
        .read_json()
        .map_err(|e| ExternalGecError::Malformed(e.to_string()))?;
    let edits = diff_edits(sentence, &body.corrected);
    Ok(GecResult {
        corrected: apply_edits(sentence, &edits),
        edits,
        backend: GecBackend::External,
        fallback: None,
    })
}

/// Word-level diff between `source` and `target`, expressed as edits on
/// `source`. Replaying the edits yields `target` exactly.
pub fn diff_edits(source: &str, target: &str) -> Vec<Edit> {
    let a = tokenize(source);
    let b = tokenize(target);
    let (n, m) = (a.len(), b.len());
    let mut lcs = vec![vec![0u32; m + 1]; n + 1];
    for i in (0..n).rev() {
        for j in (0..m).rev() {
            lcs[i][j] = if a[i].surface == b[j].surface {
                lcs[i + 1][j + 1] + 1
            } else {
                lcs[i + 1][j].max(lcs[i][j + 1])
            };
        }
    }
    // anchors: matched token pairs, plus sentinels at both ends
    let mut anchors = vec![(0usize, 0usize, 0usize, 0usize)];
    let (mut i, mut j) = (0, 0);
    while i < n && j < m {
        if a[i].surface == b[j].surface {
            anchors.push((a[i].span.start, a[i].span.end, b[j].span.start, b[j].span.end));
            i += 1;
            j += 1;
        } else if lcs[i + 1][j] >= lcs[i][j + 1] {
            i += 1;
        } else {
            j += 1;
        }
    }
    anchors.push((source.len(), source.len(), target.len(), target.len()));

    let mut edits = Vec::new();
    for w in anchors.windows(2) {
        let (s0, s1) = (w[0].1, w[1].0);
        let (t0, t1) = (w[0].3, w[1].2);
        let (src_gap, tgt_gap) = (&source[s0..s1], &target[t0..t1]);
        if src_gap == tgt_gap {
            continue;
        }
        let prefix = common_prefix(src_gap, tgt_gap);
        let suffix = common_suffix(&src_gap[prefix..], &tgt_gap[prefix..]);
        let (s, e) = (s0 + prefix, s1 - suffix);
        edits.push(Edit {
            start: s,
            end: e,
            original: source[s..e].to_string(),
            replacement: target[t0 + prefix..t1 - suffix].to_string(),
            category: EditCategory::External,
        });
    }
    edits
}

fn common_prefix(a: &str, b: &str) -> usize {
    a.char_indices()
        .zip(b.chars())
        .take_while(|((_, x), y)| x == y)
        .last()
        .map_or(0, |((i, c), _)| i + c.len_utf8())
}

fn common_suffix(a: &str, b: &str) -> usize {
    a.chars()
        .rev()
        .zip(b.chars().rev())
        .take_while(|(x, y)| x == y)
        .map(|(c, _)| c.len_utf8())
        .sum()
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub enum GecConfig {
    #[default]
    Rules,
    External { endpoint: String, timeout: Duration },
}

/// Dispatches to the configured backend. Never fails: an unreachable or
/// misbehaving external service yields the rule-based result with
/// `fallback` set to the reason.
pub fn correct(sentence: &str, rules: &GecRuleSet, config: &GecConfig) -> GecResult {
    match config {
        GecConfig::Rules => correct_rules(sentence, rules),
        GecConfig::External { endpoint, timeout } => {
            match correct_external(sentence, endpoint, *timeout) {
                Ok(r) => r,
                Err(e) => GecResult {
                    fallback: Some(e.to_string()),
                    ..correct_rules(sentence, rules)
                },
            }
        }
    }
}
