//! Desk-scale masked-language-model pretraining with syntactically informed
//! label smoothing, plus the two measurement instruments used to study it:
//! an empirical anisotropy estimator over contextual hidden states and a
//! minimal-pair frequency-bias evaluator.
//!
//! Pipeline overview:
//!
//! ```text
//! tagged corpus ──► tokenizer (BPE) ──► POS matrix ──► similarity model
//!       │                 │                                  │
//!       └── frequencies ──┤                 smoothing targets┘
//!                         ▼                                  │
//!                 packed MLM batches ──► trainer ◄───────────┘
//!                                          │
//!                        checkpoints ──────┴──► anisotropy / freq-bias reports
//! ```
//!
//! The `nn` module contains the dense-tensor reverse-mode engine and the
//! pre-LN transformer encoder everything else runs on.

pub mod corpus;
pub mod tokenizer;

pub use corpus::{
    generate_synthetic, load_tagged_corpus, map_upos, CorpusError, CorpusFormat, FrequencyTable,
    PosTag, SyntheticCorpusSpec, TaggedCorpus, TaggedToken,
};
pub use tokenizer::{BpeModel, Encoding, TokenizerError};
