use std::collections::BTreeSet;

use proptest::prelude::*;

use verseproj::scripture::{
    coverage_check, parse_bible_tsv, Bible, Book, BookCodes, VerseLabel, VerseText, BOOK_CODES,
};

fn arb_label() -> impl Strategy<Value = VerseLabel> {
    (0..BOOK_CODES.len(), 1u32..30, 1u32..40, 0u32..3).prop_map(|(b, c, v, extra)| VerseLabel {
        book: Book::from_code(BOOK_CODES[b]).unwrap(),
        chapter: c,
        verse_lo: v,
        verse_hi: v + if extra == 2 { 1 } else { 0 },
    })
}

/// Labels with pairwise disjoint verse ranges.
fn arb_disjoint() -> impl Strategy<Value = Vec<VerseLabel>> {
    prop::collection::vec(arb_label(), 0..60).prop_map(|labels| {
        let mut taken = BTreeSet::new();
        let mut out = Vec::new();
        for l in labels {
            let keys: Vec<_> = l
                .verses()
                .map(|v| (v.book, v.chapter, v.verse_lo))
                .collect();
            if keys.iter().all(|k| !taken.contains(k)) {
                taken.extend(keys);
                out.push(l);
            }
        }
        out
    })
}

fn bible(labels: &[VerseLabel]) -> Bible {
    let verses = labels
        .iter()
        .map(|l| VerseText {
            label: *l,
            text: format!("text of {l}"),
        })
        .collect();
    Bible::from_verses("t", verses).unwrap()
}

proptest! {
    #[test]
    fn labels_round_trip_through_display(l in arb_label()) {
        prop_assert_eq!(l.to_string().parse::<VerseLabel>().unwrap(), l);
        let books = BookCodes::builtin();
        prop_assert_eq!(books.parse_label(&l.to_string()).unwrap(), l);
    }

    #[test]
    fn tsv_round_trip(labels in arb_disjoint()) {
        let b = bible(&labels);
        let again = parse_bible_tsv(&b.to_tsv(), "t", &BookCodes::builtin()).unwrap();
        prop_assert_eq!(&again.verses, &b.verses);
        let simple: usize = labels.iter().map(|l| l.verses().count()).sum();
        prop_assert_eq!(again.index_len(), simple);
    }

    #[test]
    fn coverage_is_monotone_and_thresholded(
        labels in arb_disjoint(),
        reference in prop::collection::btree_set(arb_label().prop_map(|l| VerseLabel { verse_hi: l.verse_lo, ..l }), 0..80),
        keep in 0usize..60,
        min in 0usize..40,
    ) {
        let full = bible(&labels);
        let part = bible(&labels[..keep.min(labels.len())]);
        let a = coverage_check(&part, &reference, min);
        let b = coverage_check(&full, &reference, min);
        prop_assert!(a.overlap <= b.overlap);
        prop_assert_eq!(b.accepted, b.overlap >= min);
        let brute = reference
            .iter()
            .filter(|r| labels.iter().any(|l| !l.is_combined() && l == *r))
            .count();
        prop_assert_eq!(b.overlap, brute);
    }
}
