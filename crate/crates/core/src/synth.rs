//! Seeded synthetic corpora for tests, benchmarks and demos.
//!
//! Builds ONF documents with varied clause types, coreference mentions and
//! predicates, a sentence-to-verse sidecar, and a target translation, with
//! an exact number of cross-verse sentences, combined source verses,
//! combined target verses and missing target verses.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::align::{SentenceId, SentenceVerseMap};
use crate::error::{Error, Result};
use crate::onf::{
    parse_tree, CorefMention, OnfDocument, OnfSentence, PropArg, PropInstance, SyntaxTree, Token,
};
use crate::rng;
use crate::scripture::{Bible, Book, VerseLabel, VerseText};

#[derive(Debug, Clone)]
pub struct SynthSpec {
    pub verses: usize,
    pub verses_per_chapter: u32,
    /// Probability that a verse holds more than one sentence.
    pub multi_sentence: f64,
    pub cross_verse: usize,
    pub combined_source: usize,
    pub combined_target: usize,
    pub missing_target: usize,
    /// Size of the predicate sense inventory.
    pub senses: usize,
    pub seed: u64,
}

impl Default for SynthSpec {
    fn default() -> Self {
        SynthSpec {
            verses: 200,
            verses_per_chapter: 25,
            multi_sentence: 0.3,
            cross_verse: 5,
            combined_source: 3,
            combined_target: 3,
            missing_target: 4,
            senses: 12,
            seed: 0,
        }
    }
}

#[derive(Debug, Clone)]
pub struct SynthCorpus {
    pub docs: Vec<OnfDocument>,
    pub svm: SentenceVerseMap,
    pub sidecar_tsv: String,
    pub target: Bible,
    pub target_tsv: String,
    /// Simple source verses in order.
    pub verses: Vec<VerseLabel>,
    pub cross_verse_sentences: Vec<SentenceId>,
    pub combined_source: Vec<VerseLabel>,
    pub combined_target: Vec<VerseLabel>,
    pub missing_target: Vec<VerseLabel>,
}

const NAMES: [&str; 8] = [
    "Jesus", "Peter", "John", "Mary", "Martha", "Paul", "Galilee", "Judea",
];
const NOUNS: [&str; 8] = [
    "man", "woman", "crowd", "house", "boat", "servant", "city", "bread",
];
const PRONOUNS: [&str; 4] = ["he", "she", "they", "him"];
const VERBS: [&str; 6] = ["said", "went", "saw", "took", "gave", "heard"];

fn pick<'a>(rng: &mut ChaCha8Rng, xs: &[&'a str]) -> &'a str {
    xs[rng.gen_range(0..xs.len())]
}

fn noun_phrase(rng: &mut ChaCha8Rng) -> String {
    match rng.gen_range(0..5) {
        0 => format!("(NNP {})", pick(rng, &NAMES)),
        1 => format!("(PRP {})", pick(rng, &PRONOUNS)),
        2 => format!(
            "(NP (NNS {}s)) (PP (IN from) (NP (NNP {})))",
            pick(rng, &NOUNS),
            pick(rng, &NAMES)
        ),
        3 => format!(
            "(NNP {}) (CC and) (NNP {})",
            pick(rng, &NAMES),
            pick(rng, &NAMES)
        ),
        _ => format!("(DT the) (NN {})", pick(rng, &NOUNS)),
    }
}

fn clause(rng: &mut ChaCha8Rng) -> String {
    format!(
        "(NP-SBJ {}) (VP (VBD {}) (NP {}))",
        noun_phrase(rng),
        pick(rng, &VERBS),
        noun_phrase(rng)
    )
}

/// A bracketed tree of one of several clause shapes.
fn random_tree(rng: &mut ChaCha8Rng) -> String {
    match rng.gen_range(0..12) {
        0..=3 => format!("(TOP (S {} (. .)))", clause(rng)),
        4 => format!("(TOP (S-CLF (NP-SBJ (PRP It)) (VP (VBD was) (NP-PRD {})) (. .)))", noun_phrase(rng)),
        5 => format!("(TOP (S-IMP (NP-SBJ (-NONE- *PRO*)) (VP (VB go) (PP (IN to) (NP {}))) (. !)))", noun_phrase(rng)),
        6 => format!("(TOP (SQ (VBD did) (NP-SBJ {}) (VP (VB see) (NP {})) (. ?)))", noun_phrase(rng), noun_phrase(rng)),
        7 => format!(
            "(TOP (SBARQ (WHNP-1 (WP who)) (SQ (NP-SBJ (-NONE- *T*-1)) (VP (VBD {}) (NP {}))) (. ?)))",
            pick(rng, &VERBS),
            noun_phrase(rng)
        ),
        8 => format!("(TOP (S (S {}) (CC and) (S {}) (. .)))", clause(rng), clause(rng)),
        9 => format!("(TOP (S (S {}) (CC but) (S (VP (VBD {}))) (. .)))", clause(rng), pick(rng, &VERBS)),
        10 => format!("(TOP (FRAG (NP {}) (. .)))", noun_phrase(rng)),
        _ => format!("(TOP (SINV (VP (VBD {})) (NP-SBJ {}) (. .)))", pick(rng, &VERBS), noun_phrase(rng)),
    }
}

fn levels_to(tree: &SyntaxTree, head: usize, target: &SyntaxTree) -> Option<usize> {
    let path = tree.path_to_token(head)?;
    let i = path.iter().position(|n| std::ptr::eq(*n, target))?;
    Some(path.len() - 1 - i)
}

fn random_sentence(rng: &mut ChaCha8Rng, index: usize, senses: usize) -> OnfSentence {
    let tree = parse_tree(&random_tree(rng)).expect("generated trees are well formed");
    let tokens: Vec<Token> = tree
        .tokens()
        .into_iter()
        .map(|(surface, pos)| Token { surface, pos })
        .collect();

    let mut mentions = Vec::new();
    for node in tree.nodes() {
        let Some((lo, hi)) = node.span() else {
            continue;
        };
        let np = crate::onf::tree::base_category(&node.label) == "NP" && !node.is_leaf();
        let pron = node.is_leaf() && matches!(node.label.as_str(), "PRP" | "WP" | "NNP");
        if (np || pron) && rng.gen_bool(0.6) {
            mentions.push(CorefMention {
                coref_type: "IDENT".into(),
                chain_id: rng.gen_range(0..40),
                start_token: lo,
                end_token: hi,
            });
        }
    }
    mentions.sort_by_key(|m| m.start_token);

    let mut props = Vec::new();
    let nps: Vec<&SyntaxTree> = tree
        .nodes()
        .filter(|n| {
            !n.is_leaf() && n.span().is_some() && crate::onf::tree::base_category(&n.label) == "NP"
        })
        .collect();
    for (head, tok) in tokens.iter().enumerate() {
        if !tok.pos.starts_with("VB") || !rng.gen_bool(0.8) {
            continue;
        }
        let sense_no = rng.gen_range(0..senses);
        let mut args = vec![PropArg {
            role: "v".into(),
            head_token: head,
            levels_up: 0,
        }];
        let n_args = rng.gen_range(0..=3usize);
        for (k, np) in nps.iter().take(n_args).enumerate() {
            let (lo, _) = np.span().unwrap();
            let levels_up = levels_to(&tree, lo, np).expect("np dominates its first token");
            let role = ["ARG0", "ARG1", "ARGM-LOC"][k];
            args.push(PropArg {
                role: role.into(),
                head_token: lo,
                levels_up,
            });
        }
        props.push(PropInstance {
            head_token: head,
            sense_label: format!("pred{}.{:02}", sense_no / 3, sense_no % 3 + 1),
            args,
        });
    }

    let plain = tokens
        .iter()
        .map(|t| t.surface.as_str())
        .collect::<Vec<_>>()
        .join(" ");
    OnfSentence {
        index,
        plain_text: plain,
        tokens,
        tree,
        mentions,
        props,
    }
}

/// Picks `count` verse positions satisfying `ok`, keeping picks at least two
/// positions apart from each other and from `used`.
fn pick_positions(
    rng: &mut ChaCha8Rng,
    n: usize,
    count: usize,
    used: &mut BTreeSet<usize>,
    ok: impl Fn(usize) -> bool,
) -> Result<Vec<usize>> {
    let mut candidates: Vec<usize> = (0..n).filter(|&i| ok(i)).collect();
    candidates.shuffle(rng);
    let mut out = Vec::new();
    for c in candidates {
        if out.len() == count {
            break;
        }
        let lo = c.saturating_sub(2);
        if used.range(lo..=c + 2).next().is_none() {
            used.insert(c);
            out.push(c);
        }
    }
    if out.len() < count {
        return Err(Error::Config(format!(
            "synthetic corpus too small for {count} special verses"
        )));
    }
    out.sort_unstable();
    Ok(out)
}

pub fn generate(spec: &SynthSpec) -> Result<SynthCorpus> {
    let mut rng = rng::substream(spec.seed, "synth");
    let mat = Book::from_code("MAT").expect("MAT is canonical");
    let per = spec.verses_per_chapter.max(2);
    let verses: Vec<VerseLabel> = (0..spec.verses as u32)
        .map(|i| VerseLabel::simple(mat, 1 + i / per, 1 + i % per))
        .collect();
    let same_chapter_as_next =
        |i: usize| i + 1 < verses.len() && verses[i + 1].chapter == verses[i].chapter;

    let mut used = BTreeSet::new();
    let cross = pick_positions(
        &mut rng,
        verses.len(),
        spec.cross_verse,
        &mut used,
        same_chapter_as_next,
    )?;
    let comb_src = pick_positions(
        &mut rng,
        verses.len(),
        spec.combined_source,
        &mut used,
        same_chapter_as_next,
    )?;
    let comb_tgt = pick_positions(
        &mut rng,
        verses.len(),
        spec.combined_target,
        &mut used,
        same_chapter_as_next,
    )?;
    let missing = pick_positions(
        &mut rng,
        verses.len(),
        spec.missing_target,
        &mut used,
        |_| true,
    )?;

    // sentences per verse position
    let mut by_chapter: BTreeMap<u32, Vec<OnfSentence>> = BTreeMap::new();
    let mut svm = SentenceVerseMap::default();
    let mut cross_ids = Vec::new();
    let comb_src_set: BTreeSet<usize> = comb_src.iter().flat_map(|&i| [i, i + 1]).collect();
    for (i, verse) in verses.iter().enumerate() {
        let doc = by_chapter.entry(verse.chapter).or_default();
        let n = if rng.gen_bool(spec.multi_sentence) {
            rng.gen_range(2..=3)
        } else {
            1
        };
        for k in 0..n {
            let index = doc.len();
            doc.push(random_sentence(&mut rng, index, spec.senses.max(1)));
            let id = SentenceId::new(format!("mat/{}", verse.chapter), index);
            let labels = if comb_src_set.contains(&i) {
                let first = if comb_src.contains(&i) { i } else { i - 1 };
                vec![VerseLabel {
                    verse_hi: verses[first].verse_lo + 1,
                    ..verses[first]
                }]
            } else if k == n - 1 && cross.contains(&i) {
                cross_ids.push(id.clone());
                vec![*verse, verses[i + 1]]
            } else {
                vec![*verse]
            };
            svm.insert(id, labels)?;
        }
    }
    let docs: Vec<OnfDocument> = by_chapter
        .into_iter()
        .map(|(ch, sentences)| OnfDocument {
            doc_id: format!("mat/{ch}"),
            sentences,
        })
        .collect();

    let mut sidecar_tsv = String::from("# doc_id\tsentence\tverses\n");
    for (id, labels) in svm.iter() {
        let joined: Vec<String> = labels.iter().map(VerseLabel::to_string).collect();
        let _ = writeln!(
            sidecar_tsv,
            "{}\t{}\t{}",
            id.doc_id,
            id.index,
            joined.join(";")
        );
    }

    let mut target_verses = Vec::new();
    let mut i = 0;
    while i < verses.len() {
        if missing.contains(&i) {
            i += 1;
            continue;
        }
        if comb_tgt.contains(&i) {
            let label = VerseLabel {
                verse_hi: verses[i].verse_lo + 1,
                ..verses[i]
            };
            target_verses.push(VerseText {
                label,
                text: format!("translated {label}"),
            });
            i += 2;
            continue;
        }
        target_verses.push(VerseText {
            label: verses[i],
            text: format!("translated {}", verses[i]),
        });
        i += 1;
    }
    let target = Bible::from_verses("synth", target_verses)?;
    let target_tsv = target.to_tsv();

    let label_at = |xs: &[usize], combined: bool| -> Vec<VerseLabel> {
        xs.iter()
            .map(|&i| {
                if combined {
                    VerseLabel {
                        verse_hi: verses[i].verse_lo + 1,
                        ..verses[i]
                    }
                } else {
                    verses[i]
                }
            })
            .collect()
    };
    Ok(SynthCorpus {
        combined_source: label_at(&comb_src, true),
        combined_target: label_at(&comb_tgt, true),
        missing_target: label_at(&missing, false),
        docs,
        svm,
        sidecar_tsv,
        target,
        target_tsv,
        verses,
        cross_verse_sentences: cross_ids,
    })
}

impl SynthCorpus {
    /// Writes `onf/<doc_id>.onf`, `sidecar.tsv` and `target.tsv` under `dir`.
    pub fn write_to(&self, dir: &Path) -> Result<()> {
        for doc in &self.docs {
            let path = dir.join("onf").join(format!("{}.onf", doc.doc_id));
            let parent = path.parent().expect("doc path has a parent");
            fs::create_dir_all(parent).map_err(|e| Error::io(parent, e))?;
            fs::write(&path, doc.to_onf_string()).map_err(|e| Error::io(&path, e))?;
        }
        let sidecar = dir.join("sidecar.tsv");
        fs::write(&sidecar, &self.sidecar_tsv).map_err(|e| Error::io(&sidecar, e))?;
        let target = dir.join("target.tsv");
        fs::write(&target, &self.target_tsv).map_err(|e| Error::io(&target, e))?;
        Ok(())
    }
}
