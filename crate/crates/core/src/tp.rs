//! Text-to-pictogram mapping by greedy longest-match scanning.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::lexicon::{Lexicon, LexiconEntry};
use crate::morph;
use crate::textproc::Token;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum DropReason {
    FunctionWord,
    NoMatchPolicy,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SegmentKind {
    Matched {
        entry_id: String,
    },
    Substituted {
        original: String,
        substitute: String,
        entry_id: String,
        similarity: f64,
    },
    Dropped {
        reason: DropReason,
    },
    Unknown,
}

impl SegmentKind {
    pub fn entry_id(&self) -> Option<&str> {
        match self {
            SegmentKind::Matched { entry_id } | SegmentKind::Substituted { entry_id, .. } => {
                Some(entry_id)
            }
            _ => None,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            SegmentKind::Matched { .. } => "matched",
            SegmentKind::Substituted { .. } => "substituted",
            SegmentKind::Dropped { .. } => "dropped",
            SegmentKind::Unknown => "unknown",
        }
    }
}

/// A run of source tokens `start..end` and what it became.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Segment {
    #[serde(flatten)]
    pub kind: SegmentKind,
    pub start: usize,
    pub end: usize,
}

impl Segment {
    pub fn len(&self) -> usize {
        self.end - self.start
    }

    pub fn is_empty(&self) -> bool {
        self.start == self.end
    }

    pub fn is_rendered(&self) -> bool {
        self.kind.entry_id().is_some()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PictogramSequence {
    pub segments: Vec<Segment>,
    pub source: Vec<Token>,
}

impl PictogramSequence {
    /// True if the segments tile `0..source.len()` in order.
    pub fn is_partition(&self) -> bool {
        let mut pos = 0;
        for s in &self.segments {
            if s.start != pos || s.end <= s.start {
                return false;
            }
            pos = s.end;
        }
        pos == self.source.len()
    }

    /// Surface words covered by a segment, space-joined.
    pub fn words(&self, seg: &Segment) -> String {
        self.source[seg.start..seg.end]
            .iter()
            .map(|t| t.surface.as_str())
            .collect::<Vec<_>>()
            .join(" ")
    }

    pub fn rendered_count(&self) -> usize {
        self.segments.iter().filter(|s| s.is_rendered()).count()
    }
}

#[derive(Debug, Error)]
pub enum TpError {
    #[error("segment refers to unknown lexicon entry {0:?}")]
    DanglingEntry(String),
}

/// Longest match at `start` over the surface form and the base forms of the
/// first token. Ties go to the surface form, then to the earlier base form.
pub fn match_at<'a>(tokens: &[&str], start: usize, lex: &'a Lexicon) -> Option<(&'a LexiconEntry, usize)> {
    let mut best = lex.lookup(tokens, start);
    if best.is_some_and(|(_, len)| len == lex.max_ngram()) {
        return best;
    }
    for cand in morph::lemma_candidates(tokens[start]) {
        let mut probe = tokens.to_vec();
        probe[start] = cand.as_str();
        if let Some(hit) = lex.lookup(&probe, start) {
            if best.is_none_or(|(_, len)| hit.1 > len) {
                best = Some(hit);
            }
        }
    }
    best
}

/// Scans left to right; at each position takes the longest lexicon phrase
/// and advances past it. Punctuation is dropped; words with no match become
/// single-token `Unknown` segments for the NLU stage.
pub fn map_text(tokens: &[Token], lex: &Lexicon) -> PictogramSequence {
    let norms: Vec<&str> = tokens.iter().map(|t| t.normalized.as_str()).collect();
    let mut segments = Vec::new();
    let mut i = 0;
    while i < tokens.len() {
        let (kind, len) = if tokens[i].is_punct() {
            (
                SegmentKind::Dropped {
                    reason: DropReason::FunctionWord,
                },
                1,
            )
        } else {
            match match_at(&norms, i, lex) {
                Some((e, len)) => (
                    SegmentKind::Matched {
                        entry_id: e.id.clone(),
                    },
                    len,
                ),
                None => (SegmentKind::Unknown, 1),
            }
        };
        segments.push(Segment {
            kind,
            start: i,
            end: i + len,
        });
        i += len;
    }
    PictogramSequence {
        segments,
        source: tokens.to_vec(),
    }
}

/// Image references of rendered segments, in order.
pub fn render(seq: &PictogramSequence, lex: &Lexicon) -> Result<Vec<String>, TpError> {
    seq.segments
        .iter()
        .filter_map(|s| s.kind.entry_id())
        .map(|id| {
            lex.get(id)
                .map(|e| e.image_ref.clone())
                .ok_or_else(|| TpError::DanglingEntry(id.to_string()))
        })
        .collect()
}
