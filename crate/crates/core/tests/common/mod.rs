#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};
use std::fs;
use std::path::{Path, PathBuf};

use verseproj::align::{SentenceVerseMap, VerseStatus};
use verseproj::scripture::{Bible, VerseLabel};
use verseproj::tasks::{SenseVerse, Task, TaskInstance};

pub fn fixtures() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures")
}

pub fn onf_dir() -> PathBuf {
    fixtures().join("onf")
}

/// Raw text of each fixture ONF file keyed by doc id.
pub fn raw_fixture_files() -> BTreeMap<String, String> {
    let mut out = BTreeMap::new();
    for sub in ["jhn/11", "mat/28", "mrk/1"] {
        let text = fs::read_to_string(onf_dir().join(format!("{sub}.onf"))).unwrap();
        out.insert(sub.to_string(), text);
    }
    out
}

/// A sentence block as seen by a naive line scan of the raw file.
#[derive(Debug, Default)]
pub struct RawBlock {
    pub tree: String,
    pub leaves: Vec<String>,
}

pub fn raw_blocks(text: &str) -> Vec<RawBlock> {
    let mut blocks: Vec<RawBlock> = Vec::new();
    let mut mode = "";
    for line in text.lines() {
        match line.trim() {
            "Plain sentence:" => {
                blocks.push(RawBlock::default());
                mode = "";
                continue;
            }
            "Tree:" => {
                mode = "tree";
                continue;
            }
            "Leaves:" => {
                mode = "leaves";
                continue;
            }
            "Treebanked sentence:" => {
                mode = "";
                continue;
            }
            _ => {}
        }
        if line.trim().chars().all(|c| c == '-' || c == '=') {
            if mode == "leaves" && !blocks.last().unwrap().leaves.is_empty() {
                mode = "";
            }
            continue;
        }
        if !line.starts_with(' ') {
            mode = "";
        }
        let Some(b) = blocks.last_mut() else { continue };
        match mode {
            "tree" => {
                b.tree.push(' ');
                b.tree.push_str(line.trim());
            }
            "leaves" if !line.trim().is_empty() => b.leaves.push(line.trim().to_string()),
            _ => {}
        }
    }
    blocks
}

/// `(TAG word)` pairs of a bracketed tree, empty categories dropped.
pub fn raw_pos_tags(tree: &str) -> Vec<String> {
    let spaced = tree.replace('(', " ( ").replace(')', " ) ");
    let toks: Vec<&str> = spaced.split_whitespace().collect();
    let mut out = Vec::new();
    for w in toks.windows(4) {
        if w[0] == "("
            && w[3] == ")"
            && !["(", ")"].contains(&w[1])
            && !["(", ")"].contains(&w[2])
            && w[1] != "-NONE-"
        {
            out.push(w[1].to_string());
        }
    }
    out
}

pub fn brute_nmc(block: &RawBlock) -> u32 {
    let tags = raw_pos_tags(&block.tree);
    let pron = ["PRP", "PRP$", "WP", "WP$", "DT"];
    block
        .leaves
        .iter()
        .filter_map(|l| l.strip_prefix("coref:"))
        .filter(|payload| {
            let span = payload.split_whitespace().nth(2).unwrap();
            let (a, b) = span.split_once('-').unwrap();
            !(a == b && pron.contains(&tags[a.parse::<usize>().unwrap()].as_str()))
        })
        .count() as u32
}

/// Mood code from the raw top label: 0 declarative, 1 interrogative,
/// 2 imperative.
pub fn brute_sm(block: &RawBlock) -> Option<u32> {
    let rest = block
        .tree
        .trim()
        .strip_prefix("(TOP")
        .unwrap_or(block.tree.trim());
    let label: String = rest
        .trim_start()
        .trim_start_matches('(')
        .chars()
        .take_while(|c| !c.is_whitespace() && *c != '(')
        .collect();
    match label.as_str() {
        "S" | "S-CLF" => Some(0),
        "SQ" | "SBARQ" | "SQ-CLF" => Some(1),
        "S-IMP" => Some(2),
        _ => None,
    }
}

/// (sense, non-`v` arg count) per prop in file order.
pub fn brute_sense_usages(block: &RawBlock) -> Vec<(String, usize)> {
    let mut out: Vec<(String, usize)> = Vec::new();
    let mut in_prop = false;
    for l in &block.leaves {
        if let Some(p) = l.strip_prefix("prop:") {
            out.push((p.trim().to_string(), 0));
            in_prop = true;
        } else if l.contains("->") && in_prop {
            if !l.starts_with("v ") {
                out.last_mut().unwrap().1 += 1;
            }
        } else {
            in_prop = false;
        }
    }
    out
}

/// Status of every simple source verse, computed by scanning all inputs.
pub fn brute_status(
    verses: &[VerseLabel],
    svm: &SentenceVerseMap,
    target: &Bible,
) -> BTreeMap<VerseLabel, VerseStatus> {
    let mut out = BTreeMap::new();
    for v in verses {
        let in_combined_source = svm.iter().any(|(_, ls)| {
            ls.iter()
                .any(|l| l.is_combined() && l.contains(v.book, v.chapter, v.verse_lo))
        });
        let in_combined_target = target
            .verses
            .iter()
            .any(|t| t.label.is_combined() && t.label.contains(v.book, v.chapter, v.verse_lo));
        let simple_target = target.verses.iter().any(|t| t.label == *v);
        let crossing = svm.iter().any(|(_, ls)| ls.len() > 1 && ls.contains(v));
        let status = if in_combined_source {
            VerseStatus::CombinedSource
        } else if in_combined_target {
            VerseStatus::CombinedTarget
        } else if !simple_target {
            VerseStatus::MissingTarget
        } else if crossing {
            VerseStatus::CrossVerse
        } else {
            VerseStatus::Usable
        };
        out.insert(*v, status);
    }
    out
}

/// Checks one SS/SAC instance against the corpus by scanning usages.
/// Returns a description of the first violated property.
pub fn verify_pair(inst: &TaskInstance, corpus: &[SenseVerse]) -> Result<(), String> {
    let sense = inst.sense.as_deref().ok_or("missing sense")?;
    let v2 = inst.verse_2.ok_or("missing verse_2")?;
    if inst.verse_1 == v2 {
        return Err(format!("{} paired with itself", inst.verse_1));
    }
    let find = |l: VerseLabel| {
        corpus
            .iter()
            .find(|v| v.label == l)
            .ok_or(format!("{l} not in corpus"))
    };
    let a = find(inst.verse_1)?;
    let b = find(v2)?;
    if inst.text_1 != a.text || inst.text_2.as_deref() != Some(b.text.as_str()) {
        return Err("text does not match verse".into());
    }
    let uses = |v: &SenseVerse| v.usages.iter().any(|u| u.sense == sense);
    if !uses(a) {
        return Err(format!("{} does not use {sense}", a.label));
    }
    let expected = match inst.task {
        Task::Ss => uses(b),
        Task::Sac => {
            if !uses(b) {
                return Err(format!("{} does not use {sense}", b.label));
            }
            let first = |v: &SenseVerse| {
                let mut count = None;
                for u in &v.usages {
                    if u.sense == sense {
                        count = Some(u.arg_count);
                        break;
                    }
                }
                count
            };
            first(a) == first(b)
        }
        t => return Err(format!("{t} is not a pair task")),
    };
    if (inst.label == 1) != expected {
        return Err(format!(
            "label {} wrong for {} / {} / {sense}",
            inst.label, a.label, b.label
        ));
    }
    Ok(())
}

pub fn class_counts(instances: &[TaskInstance]) -> (usize, usize) {
    let pos = instances.iter().filter(|i| i.label == 1).count();
    (pos, instances.len() - pos)
}

/// Every file under `dir` with its bytes, keyed by relative path.
pub fn tree_bytes(dir: &Path) -> BTreeMap<String, Vec<u8>> {
    let mut out = BTreeMap::new();
    let mut stack = vec![dir.to_path_buf()];
    while let Some(d) = stack.pop() {
        for entry in fs::read_dir(&d).unwrap() {
            let p = entry.unwrap().path();
            if p.is_dir() {
                stack.push(p);
            } else {
                let rel = p.strip_prefix(dir).unwrap().to_string_lossy().into_owned();
                out.insert(rel, fs::read(&p).unwrap());
            }
        }
    }
    out
}

pub fn distinct<T: Ord + Clone>(xs: &[T]) -> BTreeSet<T> {
    xs.iter().cloned().collect()
}
