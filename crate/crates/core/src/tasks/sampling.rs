//! Balanced verse-pair sampling for the SS and SAC tasks.
//!
//! Verses are visited in canonical order. For every distinct sense `s` in a
//! verse `v1`, one positive and one negative partner are drawn uniformly from
//! their pools with a seeded generator. A `(v1, s)` pair is dropped when
//! either pool is empty, so each kept pair contributes one instance of each
//! class.

use std::collections::BTreeMap;

use rand::Rng;

use super::labels::SenseUsage;
use super::{Task, TaskInstance};
use crate::rng;
use crate::scripture::VerseLabel;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SenseVerse {
    pub label: VerseLabel,
    pub text: String,
    pub usages: Vec<SenseUsage>,
}

impl SenseVerse {
    pub fn has_sense(&self, sense: &str) -> bool {
        self.usages.iter().any(|u| u.sense == sense)
    }

    /// Argument count of the first usage of `sense`.
    pub fn first_arg_count(&self, sense: &str) -> Option<usize> {
        self.usages
            .iter()
            .find(|u| u.sense == sense)
            .map(|u| u.arg_count)
    }

    /// Distinct senses in order of first usage.
    fn distinct_senses(&self) -> Vec<&str> {
        let mut out: Vec<&str> = Vec::new();
        for u in &self.usages {
            if !out.contains(&u.sense.as_str()) {
                out.push(&u.sense);
            }
        }
        out
    }
}

/// Sorted verse indices per sense.
fn sense_index(corpus: &[SenseVerse]) -> BTreeMap<&str, Vec<usize>> {
    let mut index: BTreeMap<&str, Vec<usize>> = BTreeMap::new();
    for (i, v) in corpus.iter().enumerate() {
        for s in v.distinct_senses() {
            index.entry(s).or_default().push(i);
        }
    }
    index
}

/// The `r`-th element of `0..n` that is not in the sorted `excluded` list.
fn nth_outside(mut r: usize, excluded: &[usize]) -> usize {
    for &e in excluded {
        if e <= r {
            r += 1;
        } else {
            break;
        }
    }
    r
}

fn pair(task: Task, v1: &SenseVerse, v2: &SenseVerse, sense: &str, label: u32) -> TaskInstance {
    TaskInstance {
        task,
        verse_1: v1.label,
        text_1: v1.text.clone(),
        verse_2: Some(v2.label),
        text_2: Some(v2.text.clone()),
        sense: Some(sense.to_string()),
        label,
    }
}

/// Trims trailing instances of the majority class until the class counts
/// differ by at most one.
pub fn balance(mut instances: Vec<TaskInstance>) -> Vec<TaskInstance> {
    let pos = instances.iter().filter(|i| i.label == 1).count();
    let neg = instances.len() - pos;
    if pos.abs_diff(neg) <= 1 {
        return instances;
    }
    let (major, mut excess) = if pos > neg {
        (1, pos - neg - 1)
    } else {
        (0, neg - pos - 1)
    };
    let mut i = instances.len();
    while excess > 0 {
        i -= 1;
        if instances[i].label == major {
            instances.remove(i);
            excess -= 1;
        }
    }
    instances
}

/// Same Sense: label 1 iff `v2` also uses `s`.
pub fn gen_ss(corpus: &[SenseVerse], seed: u64) -> Vec<TaskInstance> {
    let mut rng = rng::substream(seed, &format!("{}/ss", rng::SAMPLING));
    let index = sense_index(corpus);
    let n = corpus.len();
    let mut out = Vec::new();
    for (i, v1) in corpus.iter().enumerate() {
        for s in v1.distinct_senses() {
            let holders = &index[s];
            let lacking = n - holders.len();
            if holders.len() < 2 || lacking == 0 {
                continue;
            }
            let me = holders
                .binary_search(&i)
                .expect("verse indexed under its own sense");
            let mut r = rng.gen_range(0..holders.len() - 1);
            if r >= me {
                r += 1;
            }
            let positive = holders[r];
            let negative = nth_outside(rng.gen_range(0..lacking), holders);
            out.push(pair(Task::Ss, v1, &corpus[positive], s, 1));
            out.push(pair(Task::Ss, v1, &corpus[negative], s, 0));
        }
    }
    balance(out)
}

/// Same Argument Count: label 1 iff the first usages of `s` in both verses
/// have the same number of arguments.
pub fn gen_sac(corpus: &[SenseVerse], seed: u64) -> Vec<TaskInstance> {
    let mut rng = rng::substream(seed, &format!("{}/sac", rng::SAMPLING));
    let index = sense_index(corpus);
    let mut out = Vec::new();
    for (i, v1) in corpus.iter().enumerate() {
        for s in v1.distinct_senses() {
            let mine = v1.first_arg_count(s);
            let (equal, unequal): (Vec<usize>, Vec<usize>) = index[s]
                .iter()
                .copied()
                .filter(|&j| j != i)
                .partition(|&j| corpus[j].first_arg_count(s) == mine);
            if equal.is_empty() || unequal.is_empty() {
                continue;
            }
            let positive = equal[rng.gen_range(0..equal.len())];
            let negative = unequal[rng.gen_range(0..unequal.len())];
            out.push(pair(Task::Sac, v1, &corpus[positive], s, 1));
            out.push(pair(Task::Sac, v1, &corpus[negative], s, 0));
        }
    }
    balance(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scripture::Book;

    fn verse(v: u32, usages: &[(&str, usize)]) -> SenseVerse {
        SenseVerse {
            label: VerseLabel::simple(Book::from_code("JHN").unwrap(), 1, v),
            text: format!("verse {v}"),
            usages: usages
                .iter()
                .map(|(s, n)| SenseUsage {
                    sense: s.to_string(),
                    arg_count: *n,
                })
                .collect(),
        }
    }

    #[test]
    fn nth_outside_enumerates_complement() {
        let excluded = [0, 2, 3, 7];
        let complement: Vec<usize> = (0..6).map(|r| nth_outside(r, &excluded)).collect();
        assert_eq!(complement, [1, 4, 5, 6, 8, 9]);
    }

    #[test]
    fn empty_corpus() {
        assert!(gen_ss(&[], 1).is_empty());
        assert!(gen_sac(&[], 1).is_empty());
    }

    #[test]
    fn lone_holder_is_dropped() {
        let corpus = [
            verse(1, &[("go.01", 1)]),
            verse(2, &[]),
            verse(3, &[("say.01", 2)]),
        ];
        let out = gen_ss(&corpus, 3);
        assert!(out.iter().all(|i| i.sense.as_deref() != Some("go.01")));
        assert!(out.is_empty());
    }

    #[test]
    fn forced_draws() {
        let corpus = [
            verse(1, &[("go.01", 1)]),
            verse(2, &[("go.01", 2)]),
            verse(3, &[]),
        ];
        let out = gen_ss(&corpus, 11);
        let from_v1: Vec<_> = out
            .iter()
            .filter(|i| i.verse_1 == corpus[0].label)
            .collect();
        assert_eq!(from_v1.len(), 2);
        assert_eq!(from_v1[0].verse_2, Some(corpus[1].label));
        assert_eq!(from_v1[0].label, 1);
        assert_eq!(from_v1[1].verse_2, Some(corpus[2].label));
        assert_eq!(from_v1[1].label, 0);
    }

    #[test]
    fn sac_labels() {
        let corpus = [
            verse(1, &[("go.01", 2)]),
            verse(2, &[("go.01", 2)]),
            verse(3, &[("go.01", 3)]),
        ];
        let out = gen_sac(&corpus, 5);
        for inst in &out {
            let a = corpus.iter().find(|v| v.label == inst.verse_1).unwrap();
            let b = corpus
                .iter()
                .find(|v| Some(v.label) == inst.verse_2)
                .unwrap();
            assert_eq!(
                inst.label == 1,
                a.first_arg_count("go.01") == b.first_arg_count("go.01")
            );
        }
        // v1 and v2 both have a (2,2) partner and a (2,3) partner; v3 has no equal partner
        assert_eq!(out.len(), 4);
    }

    #[test]
    fn sac_uses_first_usage() {
        let corpus = [
            verse(1, &[("go.01", 2), ("go.01", 3)]),
            verse(2, &[("go.01", 3)]),
            verse(3, &[("go.01", 2)]),
        ];
        let out = gen_sac(&corpus, 0);
        let v1_pos = out
            .iter()
            .find(|i| i.verse_1 == corpus[0].label && i.label == 1)
            .unwrap();
        assert_eq!(v1_pos.verse_2, Some(corpus[2].label));
    }

    #[test]
    fn balance_truncates_majority() {
        let v = verse(1, &[]);
        let mk = |label| pair(Task::Ss, &v, &v, "x.01", label);
        let out = balance(vec![mk(1), mk(1), mk(0), mk(1), mk(1)]);
        let pos = out.iter().filter(|i| i.label == 1).count();
        assert_eq!((pos, out.len() - pos), (2, 1));
    }

    #[test]
    fn seeded_determinism() {
        let corpus: Vec<SenseVerse> = (1..40)
            .map(|v| {
                verse(
                    v,
                    &[(["a.01", "b.01", "c.01"][v as usize % 3], (v % 4) as usize)],
                )
            })
            .collect();
        assert_eq!(gen_ss(&corpus, 9), gen_ss(&corpus, 9));
        assert_eq!(gen_sac(&corpus, 9), gen_sac(&corpus, 9));
        assert_ne!(gen_ss(&corpus, 9), gen_ss(&corpus, 10));
    }
}
