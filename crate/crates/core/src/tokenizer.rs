//! Byte-pair-encoding subword tokenizer with word-boundary awareness.
//!
//! Merges never cross word boundaries and word-final subwords carry an
//! end-of-word marker, so decoding is unambiguous. Each [`Encoding`] keeps a
//! per-token index of the source word so subwords can inherit their parent
//! word's POS tag.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::corpus::{word_counts, TaggedCorpus};

/// Marker appended to the final subword of every word.
pub const END_OF_WORD: &str = "</w>";

pub const PAD_ID: u32 = 0;
pub const UNK_ID: u32 = 1;
pub const MASK_ID: u32 = 2;
pub const BOS_ID: u32 = 3;
pub const EOS_ID: u32 = 4;
/// Number of special tokens; specials occupy ids `0..SPECIAL_COUNT`.
pub const SPECIAL_COUNT: usize = 5;

const SPECIAL_TOKENS: [&str; SPECIAL_COUNT] = ["<pad>", "<unk>", "<mask>", "<s>", "</s>"];

#[derive(Debug, Error)]
pub enum TokenizerError {
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
    #[error("vocab_size {requested} too small: need at least {minimum} (specials + base alphabet)")]
    VocabTooSmall { requested: usize, minimum: usize },
    #[error("token id {id} out of range (vocab size {vocab})")]
    IdOutOfRange { id: u32, vocab: usize },
    #[error("invalid tokenizer file: {0}")]
    InvalidFile(String),
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

/// A trained BPE model: vocabulary, ranked merges, and fixed special ids.
#[derive(Debug, Clone)]
pub struct BpeModel {
    vocab: HashMap<String, u32>,
    id_to_token: Vec<String>,
    merges: Vec<(String, String)>,
    merge_ranks: HashMap<(String, String), u32>,
}

/// The result of encoding a sequence of words.
///
/// `word_index[i]` is the index of the word that produced token `i`;
/// special tokens carry `None`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Encoding {
    pub ids: Vec<u32>,
    pub word_index: Vec<Option<u32>>,
}

impl Encoding {
    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }
}

/// Splits a word into its base symbols: one per char, with the end-of-word
/// marker folded into the final symbol.
fn word_symbols(word: &str) -> Vec<String> {
    let chars: Vec<char> = word.chars().collect();
    let last = chars.len() - 1;
    chars
        .iter()
        .enumerate()
        .map(|(i, c)| {
            if i == last {
                format!("{c}{END_OF_WORD}")
            } else {
                c.to_string()
            }
        })
        .collect()
}

/// Trains a BPE model on the corpus: greedy merges of the most frequent
/// word-internal symbol pair, ties broken by lexicographic pair order.
pub fn train_bpe(corpus: &TaggedCorpus, vocab_size: usize) -> Result<BpeModel, TokenizerError> {
    let counts = word_counts(corpus);
    // Deterministic word order: HashMap iteration order must not leak into
    // the result.
    let mut words: Vec<(Vec<String>, u64)> = counts
        .into_iter()
        .collect::<BTreeMap<_, _>>()
        .into_iter()
        .map(|(word, count)| (word_symbols(&word), count))
        .collect();

    let base: BTreeSet<String> = words
        .iter()
        .flat_map(|(symbols, _)| symbols.iter().cloned())
        .collect();
    let minimum = SPECIAL_COUNT + base.len();
    if vocab_size < minimum {
        return Err(TokenizerError::VocabTooSmall {
            requested: vocab_size,
            minimum,
        });
    }

    let mut id_to_token: Vec<String> = SPECIAL_TOKENS.iter().map(|s| s.to_string()).collect();
    id_to_token.extend(base.iter().cloned());
    let mut vocab: HashMap<String, u32> = id_to_token
        .iter()
        .enumerate()
        .map(|(i, t)| (t.clone(), i as u32))
        .collect();

    let mut merges = Vec::new();
    while vocab.len() < vocab_size {
        let mut pair_counts: HashMap<(String, String), u64> = HashMap::new();
        for (symbols, count) in &words {
            for window in symbols.windows(2) {
                let key = (window[0].clone(), window[1].clone());
                *pair_counts.entry(key).or_insert(0) += count;
            }
        }
        let best = pair_counts
            .into_iter()
            .max_by(|(pa, ca), (pb, cb)| ca.cmp(cb).then_with(|| pb.cmp(pa)));
        let Some((pair, count)) = best else {
            break;
        };
        if count == 0 {
            break;
        }
        let merged = format!("{}{}", pair.0, pair.1);
        for (symbols, _) in &mut words {
            let mut i = 0;
            while i + 1 < symbols.len() {
                if symbols[i] == pair.0 && symbols[i + 1] == pair.1 {
                    symbols[i] = merged.clone();
                    symbols.remove(i + 1);
                }
                i += 1;
            }
        }
        // Distinct merges can produce the same token string; the id is
        // allocated only once.
        if !vocab.contains_key(&merged) {
            vocab.insert(merged.clone(), id_to_token.len() as u32);
            id_to_token.push(merged);
        }
        merges.push(pair);
    }

    let merge_ranks = merges
        .iter()
        .enumerate()
        .map(|(rank, pair)| (pair.clone(), rank as u32))
        .collect();
    Ok(BpeModel {
        vocab,
        id_to_token,
        merges,
        merge_ranks,
    })
}

impl BpeModel {
    pub fn vocab_size(&self) -> usize {
        self.id_to_token.len()
    }

    pub fn merges(&self) -> &[(String, String)] {
        &self.merges
    }

    pub fn token(&self, id: u32) -> Option<&str> {
        self.id_to_token.get(id as usize).map(|s| s.as_str())
    }

    pub fn token_id(&self, token: &str) -> Option<u32> {
        self.vocab.get(token).copied()
    }

    pub fn is_special(&self, id: u32) -> bool {
        (id as usize) < SPECIAL_COUNT
    }

    /// Applies merges to one word and returns its subword symbol strings.
    fn segment_word(&self, word: &str) -> Vec<String> {
        let mut symbols = word_symbols(word);
        loop {
            let mut best: Option<(u32, usize)> = None;
            for i in 0..symbols.len().saturating_sub(1) {
                let key = (symbols[i].clone(), symbols[i + 1].clone());
                if let Some(&rank) = self.merge_ranks.get(&key) {
                    if best.map_or(true, |(r, _)| rank < r) {
                        best = Some((rank, i));
                    }
                }
            }
            let Some((rank, _)) = best else {
                break;
            };
            let (a, b) = self.merges[rank as usize].clone();
            let merged = format!("{a}{b}");
            let mut i = 0;
            while i + 1 < symbols.len() {
                if symbols[i] == a && symbols[i + 1] == b {
                    symbols[i] = merged.clone();
                    symbols.remove(i + 1);
                }
                i += 1;
            }
        }
        symbols
    }

    /// Encodes words into subword ids with per-token word alignment.
    /// Symbols unseen at training time map to UNK.
    pub fn encode<S: AsRef<str>>(&self, words: &[S]) -> Encoding {
        let mut ids = Vec::new();
        let mut word_index = Vec::new();
        for (w, word) in words.iter().enumerate() {
            for symbol in self.segment_word(word.as_ref()) {
                ids.push(self.vocab.get(&symbol).copied().unwrap_or(UNK_ID));
                word_index.push(Some(w as u32));
            }
        }
        Encoding { ids, word_index }
    }

    /// Encodes words wrapped in BOS/EOS; the specials carry no word index.
    pub fn encode_bounded<S: AsRef<str>>(&self, words: &[S]) -> Encoding {
        let inner = self.encode(words);
        let mut ids = Vec::with_capacity(inner.ids.len() + 2);
        let mut word_index = Vec::with_capacity(inner.ids.len() + 2);
        ids.push(BOS_ID);
        word_index.push(None);
        ids.extend(inner.ids);
        word_index.extend(inner.word_index);
        ids.push(EOS_ID);
        word_index.push(None);
        Encoding { ids, word_index }
    }

    /// Inverse of [`encode`] up to UNK lossiness; special tokens are dropped.
    pub fn decode(&self, ids: &[u32]) -> Result<String, TokenizerError> {
        let mut words: Vec<String> = Vec::new();
        let mut current = String::new();
        for &id in ids {
            if id as usize >= self.id_to_token.len() {
                return Err(TokenizerError::IdOutOfRange {
                    id,
                    vocab: self.id_to_token.len(),
                });
            }
            if self.is_special(id) {
                continue;
            }
            let token = &self.id_to_token[id as usize];
            if let Some(stem) = token.strip_suffix(END_OF_WORD) {
                current.push_str(stem);
                words.push(std::mem::take(&mut current));
            } else {
                current.push_str(token);
            }
        }
        if !current.is_empty() {
            words.push(current);
        }
        Ok(words.join(" "))
    }

    pub fn save(&self, path: &Path) -> Result<(), TokenizerError> {
        std::fs::write(path, self.to_json()?)?;
        Ok(())
    }

    pub fn load(path: &Path) -> Result<Self, TokenizerError> {
        let text = std::fs::read_to_string(path)?;
        Self::from_json(&text)
    }

    pub fn to_json(&self) -> Result<String, TokenizerError> {
        let file = TokenizerFile {
            vocab: self
                .id_to_token
                .iter()
                .enumerate()
                .map(|(i, t)| (t.clone(), i as u32))
                .collect(),
            merges: self.merges.iter().map(|(a, b)| format!("{a} {b}")).collect(),
            specials: SpecialIds::default(),
        };
        Ok(serde_json::to_string_pretty(&file)?)
    }

    pub fn from_json(text: &str) -> Result<Self, TokenizerError> {
        let file: TokenizerFile = serde_json::from_str(text)?;
        let mut id_to_token = vec![String::new(); file.vocab.len()];
        let mut vocab = HashMap::with_capacity(file.vocab.len());
        for (token, id) in file.vocab {
            let idx = id as usize;
            if idx >= id_to_token.len() || !id_to_token[idx].is_empty() {
                return Err(TokenizerError::InvalidFile(format!(
                    "vocab ids must be a permutation of 0..|V|; bad id {id}"
                )));
            }
            id_to_token[idx] = token.clone();
            vocab.insert(token, id);
        }
        for (i, expected) in SPECIAL_TOKENS.iter().enumerate() {
            if id_to_token.get(i).map(|s| s.as_str()) != Some(*expected) {
                return Err(TokenizerError::InvalidFile(format!(
                    "special token {expected} must occupy id {i}"
                )));
            }
        }
        let mut merges = Vec::with_capacity(file.merges.len());
        for entry in &file.merges {
            let Some((a, b)) = entry.split_once(' ') else {
                return Err(TokenizerError::InvalidFile(format!(
                    "merge entry {entry:?} is not \"a b\""
                )));
            };
            merges.push((a.to_string(), b.to_string()));
        }
        let merge_ranks = merges
            .iter()
            .enumerate()
            .map(|(rank, pair)| (pair.clone(), rank as u32))
            .collect();
        Ok(Self {
            vocab,
            id_to_token,
            merges,
            merge_ranks,
        })
    }
}

#[derive(Serialize, Deserialize)]
struct TokenizerFile {
    vocab: BTreeMap<String, u32>,
    merges: Vec<String>,
    specials: SpecialIds,
}

#[derive(Serialize, Deserialize)]
struct SpecialIds {
    pad: u32,
    unk: u32,
    mask: u32,
    bos: u32,
    eos: u32,
}

impl Default for SpecialIds {
    fn default() -> Self {
        Self {
            pad: PAD_ID,
            unk: UNK_ID,
            mask: MASK_ID,
            bos: BOS_ID,
            eos: EOS_ID,
        }
    }
}
