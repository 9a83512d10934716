//! Deterministic synthetic Zipfian corpus generation.
//!
//! Sentences instantiate POS-tag templates; each slot draws a word from the
//! tag's pool under a rank-Zipf distribution. Function tags get small fixed
//! pools and content tags share the remaining vocabulary, so token frequency
//! is strongly correlated with word class (frequent function words, a long
//! tail of rare content words).

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{CorpusError, PosTag, TaggedCorpus, TaggedToken, TAG_COUNT};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SyntheticCorpusSpec {
    pub vocab_words: usize,
    pub zipf_exponent: f64,
    pub sentence_templates: Vec<Vec<PosTag>>,
    pub n_sentences: usize,
    pub seed: u64,
}

impl SyntheticCorpusSpec {
    fn validate(&self) -> Result<(), CorpusError> {
        if self.n_sentences == 0 {
            return Err(CorpusError::InvalidSpec("n_sentences must be > 0".into()));
        }
        if !(self.zipf_exponent > 0.0) {
            return Err(CorpusError::InvalidSpec("zipf_exponent must be > 0".into()));
        }
        if self.vocab_words == 0 {
            return Err(CorpusError::InvalidSpec("vocab_words must be > 0".into()));
        }
        if self.sentence_templates.is_empty() {
            return Err(CorpusError::InvalidSpec(
                "at least one sentence template is required".into(),
            ));
        }
        if self.sentence_templates.iter().any(|t| t.is_empty()) {
            return Err(CorpusError::InvalidSpec(
                "sentence templates must be non-empty".into(),
            ));
        }
        Ok(())
    }
}

/// One synthetic minimal pair: the good sentence conforms to its template,
/// the bad one has a single content slot filled from a different tag's pool.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SyntheticPair {
    pub sentence_good: String,
    pub sentence_bad: String,
    #[serde(rename = "UID")]
    pub uid: String,
    #[serde(rename = "linguistics_term")]
    pub subtask: String,
}

const CONSONANTS: [char; 12] = ['b', 'd', 'f', 'g', 'k', 'l', 'm', 'n', 'p', 'r', 's', 't'];
const VOWELS: [char; 5] = ['a', 'e', 'i', 'o', 'u'];
const PUNCT_POOL: [&str; 4] = [".", ",", "?", "!"];

/// Fixed pool sizes for function-word tags.
const FUNCTION_POOLS: [(PosTag, usize); 6] = [
    (PosTag::Det, 6),
    (PosTag::Adp, 8),
    (PosTag::Conj, 4),
    (PosTag::Pron, 8),
    (PosTag::Prt, 4),
    (PosTag::Num, 8),
];

/// Content tags share the leftover vocabulary by these weights.
const CONTENT_WEIGHTS: [(PosTag, usize); 5] = [
    (PosTag::Noun, 4),
    (PosTag::Verb, 3),
    (PosTag::Adj, 2),
    (PosTag::Adv, 1),
    (PosTag::X, 1),
];

fn tag_prefix(tag: PosTag) -> char {
    match tag {
        PosTag::Adj => 'j',
        PosTag::Adp => 'p',
        PosTag::Adv => 'w',
        PosTag::Conj => 'c',
        PosTag::Det => 'd',
        PosTag::Noun => 'n',
        PosTag::Num => 'm',
        PosTag::Pron => 'h',
        PosTag::Prt => 'y',
        PosTag::Verb => 'v',
        PosTag::X => 'x',
        PosTag::Punct => '.',
    }
}

fn pseudo_word(tag: PosTag, rank: usize) -> String {
    let mut word = String::new();
    word.push(tag_prefix(tag));
    let mut r = rank;
    loop {
        let syllable = r % 60;
        word.push(CONSONANTS[syllable % 12]);
        word.push(VOWELS[syllable / 12]);
        r /= 60;
        if r == 0 {
            break;
        }
    }
    word
}

/// Deterministic per-tag word pools for a spec (no RNG involved).
pub(crate) fn word_pools(spec: &SyntheticCorpusSpec) -> [Vec<String>; TAG_COUNT] {
    let mut pools: [Vec<String>; TAG_COUNT] = Default::default();
    let mut budget = spec.vocab_words;

    let punct_take = PUNCT_POOL.len().min(budget);
    pools[PosTag::Punct.index()] = PUNCT_POOL[..punct_take]
        .iter()
        .map(|s| s.to_string())
        .collect();
    budget -= punct_take;

    for (tag, size) in FUNCTION_POOLS {
        let take = size.min(budget);
        pools[tag.index()] = (0..take).map(|r| pseudo_word(tag, r)).collect();
        budget -= take;
    }

    let weight_total: usize = CONTENT_WEIGHTS.iter().map(|(_, w)| w).sum();
    let mut allocated = 0;
    let content_budget = budget;
    for (tag, weight) in CONTENT_WEIGHTS {
        let share = content_budget * weight / weight_total;
        pools[tag.index()] = (0..share).map(|r| pseudo_word(tag, r)).collect();
        allocated += share;
    }
    // Leftover from flooring goes to content tags in weight order.
    let mut leftover = content_budget - allocated;
    for (tag, _) in CONTENT_WEIGHTS {
        if leftover == 0 {
            break;
        }
        let pool = &mut pools[tag.index()];
        pool.push(pseudo_word(tag, pool.len()));
        leftover -= 1;
    }
    pools
}

/// Samples 0-based ranks with probability proportional to `(rank+1)^-s`.
pub(crate) struct ZipfSampler {
    cdf: Vec<f64>,
}

impl ZipfSampler {
    pub(crate) fn new(n: usize, exponent: f64) -> Self {
        assert!(n > 0);
        let mut cdf = Vec::with_capacity(n);
        let mut acc = 0.0;
        for rank in 0..n {
            acc += ((rank + 1) as f64).powf(-exponent);
            cdf.push(acc);
        }
        let total = *cdf.last().unwrap();
        for value in &mut cdf {
            *value /= total;
        }
        Self { cdf }
    }

    pub(crate) fn sample(&self, rng: &mut impl Rng) -> usize {
        let u: f64 = rng.random();
        self.cdf.partition_point(|&c| c < u).min(self.cdf.len() - 1)
    }
}

fn pool_samplers(
    pools: &[Vec<String>; TAG_COUNT],
    exponent: f64,
) -> [Option<ZipfSampler>; TAG_COUNT] {
    let mut samplers: [Option<ZipfSampler>; TAG_COUNT] = Default::default();
    for (i, pool) in pools.iter().enumerate() {
        if !pool.is_empty() {
            samplers[i] = Some(ZipfSampler::new(pool.len(), exponent));
        }
    }
    samplers
}

/// Generates a corpus as a pure function of its spec: identical specs
/// (including seed) yield identical corpora.
pub fn generate_synthetic(spec: &SyntheticCorpusSpec) -> Result<TaggedCorpus, CorpusError> {
    spec.validate()?;
    let pools = word_pools(spec);
    let samplers = pool_samplers(&pools, spec.zipf_exponent);
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);

    let mut sentences = Vec::with_capacity(spec.n_sentences);
    for _ in 0..spec.n_sentences {
        let template = &spec.sentence_templates[rng.random_range(0..spec.sentence_templates.len())];
        let mut sentence = Vec::with_capacity(template.len());
        for &tag in template {
            let pool = &pools[tag.index()];
            if pool.is_empty() {
                return Err(CorpusError::EmptyWordPool { tag });
            }
            let rank = samplers[tag.index()].as_ref().unwrap().sample(&mut rng);
            sentence.push(TaggedToken::new(pool[rank].clone(), tag));
        }
        sentences.push(sentence);
    }
    Ok(TaggedCorpus::new(
        sentences,
        format!("synthetic:seed={}", spec.seed),
    ))
}

const SUBSTITUTION_TAGS: [PosTag; 4] = [PosTag::Noun, PosTag::Verb, PosTag::Adj, PosTag::Adv];

/// Generates minimal pairs from the same word pools as [`generate_synthetic`]:
/// each pair substitutes one content slot with a word of a different tag.
///
/// Deterministic in `(spec, n_pairs, seed)`; `seed` is independent of the
/// corpus seed so evaluation pairs can differ from training sentences.
pub fn synthetic_minimal_pairs(
    spec: &SyntheticCorpusSpec,
    n_pairs: usize,
    seed: u64,
) -> Result<Vec<SyntheticPair>, CorpusError> {
    spec.validate()?;
    let pools = word_pools(spec);
    let samplers = pool_samplers(&pools, spec.zipf_exponent);

    let usable_tags: Vec<PosTag> = SUBSTITUTION_TAGS
        .iter()
        .copied()
        .filter(|t| !pools[t.index()].is_empty())
        .collect();
    if usable_tags.len() < 2 {
        return Err(CorpusError::InvalidSpec(
            "minimal pairs need at least two non-empty content tag pools".into(),
        ));
    }
    let templates: Vec<&Vec<PosTag>> = spec
        .sentence_templates
        .iter()
        .filter(|t| t.iter().any(|tag| usable_tags.contains(tag)))
        .collect();
    if templates.is_empty() {
        return Err(CorpusError::InvalidSpec(
            "no sentence template contains a substitutable content slot".into(),
        ));
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut pairs = Vec::with_capacity(n_pairs);
    for i in 0..n_pairs {
        let template = templates[rng.random_range(0..templates.len())];
        let mut words = Vec::with_capacity(template.len());
        for &tag in template {
            let pool = &pools[tag.index()];
            if pool.is_empty() {
                return Err(CorpusError::EmptyWordPool { tag });
            }
            let rank = samplers[tag.index()].as_ref().unwrap().sample(&mut rng);
            words.push(pool[rank].clone());
        }
        let slots: Vec<usize> = template
            .iter()
            .enumerate()
            .filter(|(_, tag)| usable_tags.contains(tag))
            .map(|(i, _)| i)
            .collect();
        let slot = slots[rng.random_range(0..slots.len())];
        let good_tag = template[slot];
        let other_tags: Vec<PosTag> = usable_tags
            .iter()
            .copied()
            .filter(|&t| t != good_tag)
            .collect();
        let bad_tag = other_tags[rng.random_range(0..other_tags.len())];
        let bad_rank = samplers[bad_tag.index()].as_ref().unwrap().sample(&mut rng);
        let bad_word = pools[bad_tag.index()][bad_rank].clone();

        let sentence_good = words.join(" ");
        let mut bad_words = words;
        bad_words[slot] = bad_word;
        let sentence_bad = bad_words.join(" ");

        pairs.push(SyntheticPair {
            sentence_good,
            sentence_bad,
            uid: format!("pair{i:05}"),
            subtask: format!("sub_{}_{}", good_tag.as_str(), bad_tag.as_str()),
        });
    }
    Ok(pairs)
}
