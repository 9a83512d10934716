//! Loaders for the two supported pre-tagged corpus formats.

use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::{CorpusError, PosTag, TaggedCorpus, TaggedToken};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum CorpusFormat {
    #[serde(rename = "conllu")]
    Conllu,
    #[serde(rename = "two-column")]
    TwoColumn,
}

/// Maps a 17-tag UD UPOS label onto the 12-tag universal set.
///
/// Total over the 17 UD labels and surjective onto the 12-tag set.
pub fn map_upos(tag: &str) -> Result<PosTag, CorpusError> {
    let mapped = match tag {
        "ADJ" => PosTag::Adj,
        "ADP" => PosTag::Adp,
        "ADV" => PosTag::Adv,
        "AUX" => PosTag::Verb,
        "CCONJ" => PosTag::Conj,
        "DET" => PosTag::Det,
        "INTJ" => PosTag::X,
        "NOUN" => PosTag::Noun,
        "NUM" => PosTag::Num,
        "PART" => PosTag::Prt,
        "PRON" => PosTag::Pron,
        "PROPN" => PosTag::Noun,
        "PUNCT" => PosTag::Punct,
        "SCONJ" => PosTag::Conj,
        "SYM" => PosTag::X,
        "VERB" => PosTag::Verb,
        "X" => PosTag::X,
        _ => {
            return Err(CorpusError::UnknownUpos {
                tag: tag.to_string(),
            })
        }
    };
    Ok(mapped)
}

/// Loads a tagged corpus from disk in the declared format.
pub fn load_tagged_corpus(path: &Path, format: CorpusFormat) -> Result<TaggedCorpus, CorpusError> {
    let text = std::fs::read_to_string(path)?;
    let source_id = path.display().to_string();
    match format {
        CorpusFormat::Conllu => parse_conllu(&text, &source_id),
        CorpusFormat::TwoColumn => parse_two_column(&text, &source_id),
    }
}

/// Parses the two-column format: `FORM\tTAG12` per line, blank line ends a
/// sentence.
pub fn parse_two_column(text: &str, source_id: &str) -> Result<TaggedCorpus, CorpusError> {
    let mut sentences = Vec::new();
    let mut current: Vec<TaggedToken> = Vec::new();
    for (idx, line) in text.lines().enumerate() {
        let line_no = idx + 1;
        if line.trim().is_empty() {
            if !current.is_empty() {
                sentences.push(std::mem::take(&mut current));
            }
            continue;
        }
        let mut parts = line.split('\t');
        let form = parts.next().unwrap_or("");
        let tag = parts.next().ok_or_else(|| CorpusError::Malformed {
            line: line_no,
            msg: "expected FORM\\tTAG".to_string(),
        })?;
        if parts.next().is_some() {
            return Err(CorpusError::Malformed {
                line: line_no,
                msg: "more than two tab-separated fields".to_string(),
            });
        }
        if form.is_empty() {
            return Err(CorpusError::Malformed {
                line: line_no,
                msg: "empty token form".to_string(),
            });
        }
        let tag = PosTag::from_str(tag).map_err(|_| CorpusError::UnknownTag {
            line: line_no,
            tag: tag.to_string(),
        })?;
        current.push(TaggedToken::new(form, tag));
    }
    if !current.is_empty() {
        sentences.push(current);
    }
    if sentences.is_empty() {
        return Err(CorpusError::EmptyCorpus);
    }
    Ok(TaggedCorpus::new(sentences, source_id))
}

/// Parses the consumed CoNLL-U subset: 10 tab-separated columns, of which
/// FORM (2) and UPOS (4) are used. Comment lines start with `#`; blank line
/// ends a sentence; multiword-range and empty-node lines are skipped.
pub fn parse_conllu(text: &str, source_id: &str) -> Result<TaggedCorpus, CorpusError> {
    let mut sentences = Vec::new();
    let mut current: Vec<TaggedToken> = Vec::new();
    for (idx, line) in text.lines().enumerate() {
        let line_no = idx + 1;
        if line.trim().is_empty() {
            if !current.is_empty() {
                sentences.push(std::mem::take(&mut current));
            }
            continue;
        }
        if line.starts_with('#') {
            continue;
        }
        let cols: Vec<&str> = line.split('\t').collect();
        if cols.len() != 10 {
            return Err(CorpusError::Malformed {
                line: line_no,
                msg: format!("expected 10 tab-separated columns, got {}", cols.len()),
            });
        }
        // Multiword token ranges ("1-2") and empty nodes ("1.1") are not
        // word lines.
        if cols[0].contains('-') || cols[0].contains('.') {
            continue;
        }
        let form = cols[1];
        if form.is_empty() {
            return Err(CorpusError::Malformed {
                line: line_no,
                msg: "empty FORM column".to_string(),
            });
        }
        let tag = map_upos(cols[3]).map_err(|_| CorpusError::UnknownTag {
            line: line_no,
            tag: cols[3].to_string(),
        })?;
        current.push(TaggedToken::new(form, tag));
    }
    if !current.is_empty() {
        sentences.push(current);
    }
    if sentences.is_empty() {
        return Err(CorpusError::EmptyCorpus);
    }
    Ok(TaggedCorpus::new(sentences, source_id))
}
