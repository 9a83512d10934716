use proptest::prelude::*;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::synth::ZipfSampler;
use super::*;
use crate::tokenizer::train_bpe;

#[test]
fn two_column_parses_one_sentence() {
    let corpus = parse_two_column("the\tDET\ncat\tNOUN\n\n", "t").unwrap();
    assert_eq!(corpus.sentences.len(), 1);
    assert_eq!(corpus.token_count(), 2);
    assert_eq!(corpus.sentences[0][0], TaggedToken::new("the", PosTag::Det));
    assert_eq!(corpus.sentences[0][1], TaggedToken::new("cat", PosTag::Noun));
}

#[test]
fn two_column_splits_sentences_on_blank_lines() {
    let corpus = parse_two_column("a\tX\n\nb\tX\nc\tX\n", "t").unwrap();
    assert_eq!(corpus.sentences.len(), 2);
    assert_eq!(corpus.sentences[1].len(), 2);
}

#[test]
fn two_column_reports_malformed_line_number() {
    let err = parse_two_column("a\tX\nbroken\n", "t").unwrap_err();
    match err {
        CorpusError::Malformed { line, .. } => assert_eq!(line, 2),
        other => panic!("unexpected error {other:?}"),
    }
}

#[test]
fn two_column_rejects_unknown_tag() {
    let err = parse_two_column("a\tBLORP\n", "t").unwrap_err();
    match err {
        CorpusError::UnknownTag { line, tag } => {
            assert_eq!(line, 1);
            assert_eq!(tag, "BLORP");
        }
        other => panic!("unexpected error {other:?}"),
    }
}

#[test]
fn blank_only_input_is_empty_corpus() {
    assert!(matches!(
        parse_two_column("\n\n\n", "t"),
        Err(CorpusError::EmptyCorpus)
    ));
    assert!(matches!(
        parse_conllu("# just a comment\n\n", "t"),
        Err(CorpusError::EmptyCorpus)
    ));
}

fn conllu_line(id: &str, form: &str, upos: &str) -> String {
    format!("{id}\t{form}\t_\t{upos}\t_\t_\t_\t_\t_\t_")
}

#[test]
fn conllu_maps_propn_to_noun_and_skips_ranges() {
    let text = [
        "# sent_id = 1".to_string(),
        conllu_line("1-2", "don't", "_"),
        conllu_line("1", "Alice", "PROPN"),
        conllu_line("2", "runs", "VERB"),
        String::new(),
    ]
    .join("\n");
    let corpus = parse_conllu(&text, "t").unwrap();
    assert_eq!(corpus.sentences.len(), 1);
    assert_eq!(corpus.sentences[0].len(), 2);
    assert_eq!(corpus.sentences[0][0].tag, PosTag::Noun);
    assert_eq!(corpus.sentences[0][1].tag, PosTag::Verb);
}

#[test]
fn conllu_rejects_wrong_column_count() {
    let err = parse_conllu("1\tword\tVERB\n", "t").unwrap_err();
    assert!(matches!(err, CorpusError::Malformed { line: 1, .. }));
}

#[test]
fn map_upos_fixed_points_and_collapses() {
    assert_eq!(map_upos("NOUN").unwrap(), PosTag::Noun);
    assert_eq!(map_upos("CCONJ").unwrap(), PosTag::Conj);
    assert_eq!(map_upos("SCONJ").unwrap(), PosTag::Conj);
    assert_eq!(map_upos("PUNCT").unwrap(), PosTag::Punct);
    assert_eq!(map_upos("AUX").unwrap(), PosTag::Verb);
    assert_eq!(map_upos("PART").unwrap(), PosTag::Prt);
    assert_eq!(map_upos("SYM").unwrap(), PosTag::X);
    assert_eq!(map_upos("INTJ").unwrap(), PosTag::X);
    assert!(map_upos("WAT").is_err());
}

#[test]
fn map_upos_is_total_and_surjective() {
    let upos17 = [
        "ADJ", "ADP", "ADV", "AUX", "CCONJ", "DET", "INTJ", "NOUN", "NUM", "PART", "PRON",
        "PROPN", "PUNCT", "SCONJ", "SYM", "VERB", "X",
    ];
    let image: std::collections::BTreeSet<PosTag> =
        upos17.iter().map(|u| map_upos(u).unwrap()).collect();
    assert_eq!(image.len(), TAG_COUNT);
}

#[test]
fn count_frequencies_counts_each_subword() {
    let corpus = parse_two_column("a\tX\na\tX\nb\tX\n", "t").unwrap();
    let model = train_bpe(&corpus, 16).unwrap();
    let freq = count_frequencies(&corpus, &model);
    let a_id = model.encode(&["a"]).ids[0];
    let b_id = model.encode(&["b"]).ids[0];
    assert_eq!(freq.count(a_id), 2);
    assert_eq!(freq.count(b_id), 1);
    assert_eq!(freq.total(), 3);
}

#[test]
fn ln_freq_uses_plus_one_convention() {
    let mut counts = vec![0u64; 8];
    counts[5] = 4229;
    let freq = FrequencyTable::from_counts(counts);
    assert!((freq.ln_freq(5) - 8.350).abs() < 1e-3);
    assert_eq!(freq.ln_freq(6), 0.0);
    assert_eq!(freq.ln_freq(999), 0.0);
}

#[test]
fn frequency_total_matches_encoded_token_count() {
    let corpus = parse_two_column("the\tDET\ncats\tNOUN\nsat\tVERB\n\nthe\tDET\n", "t").unwrap();
    let model = train_bpe(&corpus, 32).unwrap();
    let freq = count_frequencies(&corpus, &model);
    let encoded: usize = corpus
        .sentences
        .iter()
        .map(|s| {
            let words: Vec<&str> = s.iter().map(|t| t.form.as_str()).collect();
            model.encode(&words).len()
        })
        .sum();
    assert_eq!(freq.total() as usize, encoded);
}

fn small_spec() -> SyntheticCorpusSpec {
    SyntheticCorpusSpec {
        vocab_words: 80,
        zipf_exponent: 1.1,
        sentence_templates: vec![
            vec![PosTag::Det, PosTag::Noun, PosTag::Verb, PosTag::Punct],
            vec![PosTag::Det, PosTag::Adj, PosTag::Noun, PosTag::Verb, PosTag::Punct],
        ],
        n_sentences: 50,
        seed: 7,
    }
}

#[test]
fn synthetic_sentences_follow_templates() {
    let spec = SyntheticCorpusSpec {
        n_sentences: 1,
        sentence_templates: vec![vec![PosTag::Det, PosTag::Noun]],
        ..small_spec()
    };
    let corpus = generate_synthetic(&spec).unwrap();
    assert_eq!(corpus.sentences.len(), 1);
    assert_eq!(corpus.sentences[0].len(), 2);
    assert_eq!(corpus.sentences[0][0].tag, PosTag::Det);
    assert_eq!(corpus.sentences[0][1].tag, PosTag::Noun);
}

#[test]
fn synthetic_generation_is_pure_in_its_spec() {
    let spec = small_spec();
    let a = generate_synthetic(&spec).unwrap();
    let b = generate_synthetic(&spec).unwrap();
    assert_eq!(a, b);
    assert_eq!(a.to_two_column(), b.to_two_column());
}

#[test]
fn synthetic_rejects_zero_sentences() {
    let spec = SyntheticCorpusSpec {
        n_sentences: 0,
        ..small_spec()
    };
    assert!(matches!(
        generate_synthetic(&spec),
        Err(CorpusError::InvalidSpec(_))
    ));
}

#[test]
fn synthetic_rejects_empty_word_pool() {
    // vocab_words = 5 is eaten by punctuation and DET; ADV stays empty.
    let spec = SyntheticCorpusSpec {
        vocab_words: 5,
        sentence_templates: vec![vec![PosTag::Adv]],
        ..small_spec()
    };
    assert!(matches!(
        generate_synthetic(&spec),
        Err(CorpusError::EmptyWordPool { tag: PosTag::Adv })
    ));
}

#[test]
fn zipf_sampler_matches_target_slope() {
    let sampler = ZipfSampler::new(100, 1.1);
    let mut rng = ChaCha8Rng::seed_from_u64(33);
    let mut counts = vec![0u64; 100];
    for _ in 0..10_000 {
        counts[sampler.sample(&mut rng)] += 1;
    }
    // Least-squares slope of ln(count) on ln(rank+1).
    let points: Vec<(f64, f64)> = counts
        .iter()
        .enumerate()
        .filter(|(_, &c)| c > 0)
        .map(|(r, &c)| (((r + 1) as f64).ln(), (c as f64).ln()))
        .collect();
    let n = points.len() as f64;
    let sx: f64 = points.iter().map(|p| p.0).sum();
    let sy: f64 = points.iter().map(|p| p.1).sum();
    let sxx: f64 = points.iter().map(|p| p.0 * p.0).sum();
    let sxy: f64 = points.iter().map(|p| p.0 * p.1).sum();
    let slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    assert!(
        (slope + 1.1).abs() <= 0.15,
        "slope {slope} not within 0.15 of -1.1"
    );
}

#[test]
fn synthetic_pairs_are_deterministic_and_substitutive() {
    let spec = small_spec();
    let a = synthetic_minimal_pairs(&spec, 20, 3).unwrap();
    let b = synthetic_minimal_pairs(&spec, 20, 3).unwrap();
    assert_eq!(a, b);
    for pair in &a {
        assert_ne!(pair.sentence_good, pair.sentence_bad);
        let good: Vec<&str> = pair.sentence_good.split_whitespace().collect();
        let bad: Vec<&str> = pair.sentence_bad.split_whitespace().collect();
        assert_eq!(good.len(), bad.len());
        let diffs = good.iter().zip(&bad).filter(|(g, b)| g != *b).count();
        assert_eq!(diffs, 1, "exactly one slot substituted");
    }
}

proptest! {
    #[test]
    fn two_column_round_trip(sentences in proptest::collection::vec(
        proptest::collection::vec(
            ("[a-z]{1,8}", 0usize..TAG_COUNT).prop_map(|(form, t)| TaggedToken::new(form, ALL_TAGS[t])),
            1..6,
        ),
        1..5,
    )) {
        let corpus = TaggedCorpus::new(sentences, "prop");
        let reloaded = parse_two_column(&corpus.to_two_column(), "prop").unwrap();
        prop_assert_eq!(corpus, reloaded);
    }
}
