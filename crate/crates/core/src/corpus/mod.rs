//! POS-tagged corpora: ingestion, token frequency statistics, and
//! deterministic synthetic corpus generation.
//!
//! Corpora arrive pre-tagged (CoNLL-U or a simple two-column format); no
//! tagger is bundled. Every token carries one of the 12 universal POS tags.

mod parse;
mod synth;

use std::collections::HashMap;
use std::fmt;
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::tokenizer::BpeModel;

pub use parse::{load_tagged_corpus, map_upos, parse_conllu, parse_two_column, CorpusFormat};
pub use synth::{generate_synthetic, synthetic_minimal_pairs, SyntheticCorpusSpec, SyntheticPair};

/// Number of tags in the universal tagset used throughout.
pub const TAG_COUNT: usize = 12;

/// The closed 12-tag universal POS tagset.
///
/// `Punct` serialises as `"."` to match the tagset's notation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum PosTag {
    #[serde(rename = "ADJ")]
    Adj,
    #[serde(rename = "ADP")]
    Adp,
    #[serde(rename = "ADV")]
    Adv,
    #[serde(rename = "CONJ")]
    Conj,
    #[serde(rename = "DET")]
    Det,
    #[serde(rename = "NOUN")]
    Noun,
    #[serde(rename = "NUM")]
    Num,
    #[serde(rename = "PRON")]
    Pron,
    #[serde(rename = "PRT")]
    Prt,
    #[serde(rename = "VERB")]
    Verb,
    #[serde(rename = "X")]
    X,
    #[serde(rename = ".")]
    Punct,
}

/// All 12 tags in canonical column order (the order used by POS matrices
/// and reports).
pub const ALL_TAGS: [PosTag; TAG_COUNT] = [
    PosTag::Adj,
    PosTag::Adp,
    PosTag::Adv,
    PosTag::Conj,
    PosTag::Det,
    PosTag::Noun,
    PosTag::Num,
    PosTag::Pron,
    PosTag::Prt,
    PosTag::Verb,
    PosTag::X,
    PosTag::Punct,
];

impl PosTag {
    /// Column index of this tag in the canonical order.
    pub fn index(self) -> usize {
        match self {
            PosTag::Adj => 0,
            PosTag::Adp => 1,
            PosTag::Adv => 2,
            PosTag::Conj => 3,
            PosTag::Det => 4,
            PosTag::Noun => 5,
            PosTag::Num => 6,
            PosTag::Pron => 7,
            PosTag::Prt => 8,
            PosTag::Verb => 9,
            PosTag::X => 10,
            PosTag::Punct => 11,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            PosTag::Adj => "ADJ",
            PosTag::Adp => "ADP",
            PosTag::Adv => "ADV",
            PosTag::Conj => "CONJ",
            PosTag::Det => "DET",
            PosTag::Noun => "NOUN",
            PosTag::Num => "NUM",
            PosTag::Pron => "PRON",
            PosTag::Prt => "PRT",
            PosTag::Verb => "VERB",
            PosTag::X => "X",
            PosTag::Punct => ".",
        }
    }
}

impl fmt::Display for PosTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for PosTag {
    type Err = CorpusError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        ALL_TAGS
            .iter()
            .copied()
            .find(|t| t.as_str() == s)
            .ok_or_else(|| CorpusError::UnknownTag {
                line: 0,
                tag: s.to_string(),
            })
    }
}

#[derive(Debug, Error)]
pub enum CorpusError {
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
    #[error("line {line}: malformed line: {msg}")]
    Malformed { line: usize, msg: String },
    #[error("line {line}: unknown tag {tag:?}")]
    UnknownTag { line: usize, tag: String },
    #[error("unknown UPOS label {tag:?}")]
    UnknownUpos { tag: String },
    #[error("empty corpus")]
    EmptyCorpus,
    #[error("invalid synthetic corpus spec: {0}")]
    InvalidSpec(String),
    #[error("template references tag {tag} with an empty word pool")]
    EmptyWordPool { tag: PosTag },
}

/// A single word occurrence with its POS tag.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TaggedToken {
    pub form: String,
    pub tag: PosTag,
}

impl TaggedToken {
    pub fn new(form: impl Into<String>, tag: PosTag) -> Self {
        let form = form.into();
        debug_assert!(!form.is_empty(), "token form must be non-empty");
        Self { form, tag }
    }
}

/// An ordered sequence of tagged sentences.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TaggedCorpus {
    pub sentences: Vec<Vec<TaggedToken>>,
    pub source_id: String,
}

impl TaggedCorpus {
    pub fn new(sentences: Vec<Vec<TaggedToken>>, source_id: impl Into<String>) -> Self {
        Self {
            sentences,
            source_id: source_id.into(),
        }
    }

    /// Total number of word tokens across all sentences.
    pub fn token_count(&self) -> usize {
        self.sentences.iter().map(|s| s.len()).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.sentences.is_empty()
    }

    /// Serialise to the two-column format: `FORM\tTAG` per line, blank line
    /// between sentences.
    pub fn to_two_column(&self) -> String {
        let mut out = String::new();
        for (i, sentence) in self.sentences.iter().enumerate() {
            if i > 0 {
                out.push('\n');
            }
            for token in sentence {
                out.push_str(&token.form);
                out.push('\t');
                out.push_str(token.tag.as_str());
                out.push('\n');
            }
        }
        out
    }

    pub fn save_two_column(&self, path: &Path) -> Result<(), CorpusError> {
        std::fs::write(path, self.to_two_column())?;
        Ok(())
    }
}

/// Subword-token frequency counts over an encoded corpus.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FrequencyTable {
    counts: Vec<u64>,
    total: u64,
}

impl FrequencyTable {
    /// Builds a table directly from per-id counts (ids index into `counts`).
    pub fn from_counts(counts: Vec<u64>) -> Self {
        let total = counts.iter().sum();
        Self { counts, total }
    }

    pub fn vocab_size(&self) -> usize {
        self.counts.len()
    }

    /// Count of a token id; ids outside the vocabulary report 0.
    pub fn count(&self, id: u32) -> u64 {
        self.counts.get(id as usize).copied().unwrap_or(0)
    }

    pub fn total(&self) -> u64 {
        self.total
    }

    /// Natural log frequency under the +1 convention: `ln(count + 1)`.
    ///
    /// Unseen tokens report 0.0.
    pub fn ln_freq(&self, id: u32) -> f64 {
        ((self.count(id) + 1) as f64).ln()
    }
}

/// Counts subword-token occurrences across the encoded corpus.
pub fn count_frequencies(corpus: &TaggedCorpus, tokenizer: &BpeModel) -> FrequencyTable {
    let mut counts = vec![0u64; tokenizer.vocab_size()];
    for sentence in &corpus.sentences {
        let words: Vec<&str> = sentence.iter().map(|t| t.form.as_str()).collect();
        let enc = tokenizer.encode(&words);
        for id in enc.ids {
            counts[id as usize] += 1;
        }
    }
    FrequencyTable::from_counts(counts)
}

/// Per-word-type occurrence counts, useful for inspecting a corpus.
pub fn word_counts(corpus: &TaggedCorpus) -> HashMap<String, u64> {
    let mut counts = HashMap::new();
    for sentence in &corpus.sentences {
        for token in sentence {
            *counts.entry(token.form.clone()).or_insert(0) += 1;
        }
    }
    counts
}

#[cfg(test)]
mod tests;
