mod common;

use proptest::prelude::*;

use verseproj::scripture::{Book, VerseLabel};
use verseproj::tasks::{
    gen_sac, gen_ss, split_dataset, Provenance, SenseUsage, SenseVerse, Split, SplitRatios, Task,
    TaskInstance,
};

const SENSES: [&str; 6] = ["go.01", "go.02", "say.01", "see.01", "take.01", "give.01"];

fn arb_corpus(n: usize) -> impl Strategy<Value = Vec<SenseVerse>> {
    prop::collection::vec(prop::collection::vec((0..SENSES.len(), 0usize..4), 0..4), n).prop_map(
        |verses| {
            verses
                .into_iter()
                .enumerate()
                .map(|(i, usages)| SenseVerse {
                    label: VerseLabel::simple(
                        Book::from_code("LUK").unwrap(),
                        1 + i as u32 / 20,
                        1 + i as u32 % 20,
                    ),
                    text: format!("verse {i}"),
                    usages: usages
                        .into_iter()
                        .map(|(s, a)| SenseUsage {
                            sense: SENSES[s].into(),
                            arg_count: a,
                        })
                        .collect(),
                })
                .collect()
        },
    )
}

fn check(instances: &[TaskInstance], corpus: &[SenseVerse]) -> Result<(), TestCaseError> {
    for inst in instances {
        if let Err(e) = common::verify_pair(inst, corpus) {
            return Err(TestCaseError::fail(e));
        }
    }
    let (pos, neg) = common::class_counts(instances);
    prop_assert!(pos.abs_diff(neg) <= 1, "{pos} positive vs {neg} negative");
    Ok(())
}

fn singles(n: usize) -> Vec<TaskInstance> {
    (0..n)
        .map(|i| {
            let label = VerseLabel::simple(
                Book::from_code("GEN").unwrap(),
                1 + i as u32 / 50,
                1 + i as u32 % 50,
            );
            TaskInstance::single(Task::Pns, label, "t", (i % 2) as u32)
        })
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn ss_instances_verify(corpus in arb_corpus(50), seed in any::<u64>()) {
        let out = gen_ss(&corpus, seed);
        check(&out, &corpus)?;
        prop_assert_eq!(&out, &gen_ss(&corpus, seed));
    }

    #[test]
    fn sac_instances_verify(corpus in arb_corpus(50), seed in any::<u64>()) {
        let out = gen_sac(&corpus, seed);
        check(&out, &corpus)?;
        prop_assert_eq!(&out, &gen_sac(&corpus, seed));
    }

    #[test]
    fn split_is_a_partition(n in 1usize..400, seed in any::<u64>(), train in 0.0f64..1.0) {
        let dev = (1.0 - train) / 2.0;
        let ratios = SplitRatios::new(train, dev, 1.0 - train - dev).unwrap();
        let input = singles(n);
        let b = split_dataset(input.clone(), ratios, seed, Provenance::new("t", seed)).unwrap();
        let mut all: Vec<TaskInstance> = Split::ALL.iter().flat_map(|&s| b.split(s).to_vec()).collect();
        all.sort_by(|a, b| a.identity().cmp(&b.identity()));
        prop_assert_eq!(all, input);
        let (tr, dv, _) = ratios.sizes(n);
        prop_assert_eq!((b.train.len(), b.dev.len()), (tr, dv));
        prop_assert!((tr as f64 - train * n as f64).abs() <= 1.0);
    }
}

#[test]
fn thousand_instances_two_seeds() {
    let ratios = SplitRatios::default();
    let a = split_dataset(singles(1000), ratios, 1, Provenance::new("t", 1)).unwrap();
    let b = split_dataset(singles(1000), ratios, 2, Provenance::new("t", 2)).unwrap();
    assert_ne!(a.train, b.train);
    for bundle in [&a, &b] {
        assert!(bundle.train.len().abs_diff(800) <= 1);
        assert!(bundle.dev.len().abs_diff(100) <= 1);
        assert!(bundle.test.len().abs_diff(100) <= 1);
    }
}
