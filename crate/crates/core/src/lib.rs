//! Text-to-pictogram engine.
//!
//! Noisy input text is repaired by a rule-based grammar corrector ([`gec`]),
//! tokenized and tagged ([`textproc`]), mapped onto pictogram lexicon entries
//! by greedy longest-match scanning ([`tp`]), and remaining out-of-vocabulary
//! words are resolved through synonyms and embeddings ([`nlu`]). [`pipeline`]
//! wires the stages together; [`tpa`] and [`metrics`] score the results.

pub mod gec;
pub mod lexicon;
pub mod metrics;
pub mod nlu;
pub mod par;
pub mod pipeline;
pub mod textproc;
pub mod tp;
pub mod tpa;

mod bundled;
pub mod morph;

pub use gec::{GecBackend, GecConfig, GecResult, GecRuleSet};
pub use lexicon::{Lexicon, LexiconEntry, LexiconFormat};
pub use nlu::{EmbeddingTable, NluResources, SessionContext, SynonymGraph};
pub use par::Execution;
pub use pipeline::{Pipeline, PipelineConfig, TranslationResult};
pub use textproc::{EntityClass, NeLabel, Pos, TagResources, Token};
pub use tp::{PictogramSequence, Segment, SegmentKind};
pub use tpa::{TpaConfig, TpaReport, TpaSample};
