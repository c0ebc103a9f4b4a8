mod common;

use std::collections::BTreeSet;

use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use verseproj::align::{
    build_alignment, build_alignment_with, SentenceId, SentenceVerseMap, VerseStatus,
};
use verseproj::par::Execution;
use verseproj::scripture::{Bible, Book, VerseLabel, VerseText};
use verseproj::synth::{generate, SynthSpec};

fn mat(v: u32) -> VerseLabel {
    VerseLabel::simple(Book::from_code("MAT").unwrap(), 1, v)
}

fn fused(v: u32) -> VerseLabel {
    VerseLabel {
        verse_hi: v + 1,
        ..mat(v)
    }
}

/// Random source mapping and target over verses `1..=n`.
fn random_inputs(n: u32, rng: &mut ChaCha8Rng) -> (Vec<VerseLabel>, SentenceVerseMap, Bible) {
    let mut svm = SentenceVerseMap::default();
    let mut next = 0;
    let mut add = |svm: &mut SentenceVerseMap, labels: Vec<VerseLabel>| {
        svm.insert(SentenceId::new("mat/1", next), labels).unwrap();
        next += 1;
    };
    let mut v = 1;
    while v <= n {
        match rng.gen_range(0..10) {
            0 if v < n => {
                add(&mut svm, vec![fused(v)]);
                v += 2;
                continue;
            }
            1 if v < n => add(&mut svm, vec![mat(v), mat(v + 1)]),
            _ => {
                for _ in 0..rng.gen_range(1..=3) {
                    add(&mut svm, vec![mat(v)]);
                }
            }
        }
        v += 1;
    }
    let mut target = Vec::new();
    let mut v = 1;
    while v <= n {
        match rng.gen_range(0..10) {
            0 => {}
            1 if v < n => {
                target.push(VerseText {
                    label: fused(v),
                    text: format!("t{v}"),
                });
                v += 1;
            }
            _ => target.push(VerseText {
                label: mat(v),
                text: format!("t{v}"),
            }),
        }
        v += 1;
    }
    let verses = (1..=n).map(mat).collect();
    (verses, svm, Bible::from_verses("t", target).unwrap())
}

fn mismatches(verses: &[VerseLabel], svm: &SentenceVerseMap, target: &Bible) -> usize {
    let table = build_alignment(svm, &BTreeSet::new(), target);
    let oracle = common::brute_status(verses, svm, target);
    let got: BTreeSet<VerseLabel> = table.rows.keys().copied().collect();
    assert_eq!(got, oracle.keys().copied().collect::<BTreeSet<_>>());
    oracle
        .iter()
        .filter(|(v, s)| table.rows[v].status != **s)
        .count()
}

#[test]
fn synthetic_corpus_matches_oracle() {
    let c = generate(&SynthSpec::default()).unwrap();
    assert_eq!(mismatches(&c.verses, &c.svm, &c.target), 0);
    let counts = build_alignment(&c.svm, &BTreeSet::new(), &c.target).status_counts();
    assert_eq!(counts[&VerseStatus::CombinedSource], 6);
    assert_eq!(counts[&VerseStatus::CombinedTarget], 6);
    assert_eq!(counts[&VerseStatus::MissingTarget], 4);
    assert_eq!(counts[&VerseStatus::CrossVerse], 10);
}

#[test]
fn thousand_random_rows_match_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    let (verses, svm, target) = random_inputs(1000, &mut rng);
    assert_eq!(mismatches(&verses, &svm, &target), 0);
}

#[test]
fn ingestion_order_does_not_matter() {
    let c = generate(&SynthSpec {
        seed: 4,
        ..Default::default()
    })
    .unwrap();
    let mut entries: Vec<(SentenceId, Vec<VerseLabel>)> = c
        .svm
        .iter()
        .map(|(id, ls)| (id.clone(), ls.to_vec()))
        .collect();
    entries.shuffle(&mut ChaCha8Rng::seed_from_u64(1));
    let mut shuffled = SentenceVerseMap::default();
    for (id, ls) in entries {
        shuffled.insert(id, ls).unwrap();
    }
    let a = build_alignment_with(Execution::Sequential, &c.svm, &BTreeSet::new(), &c.target);
    let b = build_alignment_with(Execution::default(), &shuffled, &BTreeSet::new(), &c.target);
    assert_eq!(a, b);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn random_inputs_match_oracle(seed in any::<u64>(), n in 2u32..80) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (verses, svm, target) = random_inputs(n, &mut rng);
        prop_assert_eq!(mismatches(&verses, &svm, &target), 0);
    }

    #[test]
    fn usable_verses_have_one_simple_target(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (_, svm, target) = random_inputs(60, &mut rng);
        let table = build_alignment(&svm, &BTreeSet::new(), &target);
        for v in table.usable_verses() {
            let hits = target.verses.iter().filter(|t| t.label.contains(v.book, v.chapter, v.verse_lo)).count();
            prop_assert_eq!(hits, 1);
            prop_assert!(target.covering(&v).is_some_and(|t| !t.label.is_combined()));
            prop_assert!(!table.rows[&v].sentences.is_empty());
        }
    }
}
