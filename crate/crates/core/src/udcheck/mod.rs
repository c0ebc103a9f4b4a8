//! Cross-check of projected NMC/PNS labels against labels derived from
//! dependency parses of the target translation.

pub mod conllu;
pub mod labels;
pub mod metrics;

use std::collections::BTreeMap;

pub use conllu::{parse_conllu, UdSentence, UdToken};
pub use labels::{ud_nmc, ud_pns, UD_NMC_CAP};
pub use metrics::{agreement, random_annotations, AgreementReport};

use crate::error::{Error, Result};
use crate::par::{self, Execution};
use crate::scripture::{BookCodes, VerseLabel};
use crate::tasks::Task;

/// Parses a `sentence_ordinal<TAB>VERSE LABEL` table (0-based ordinals).
pub fn parse_ordinal_sidecar(text: &str, books: &BookCodes) -> Result<BTreeMap<usize, VerseLabel>> {
    let mut out = BTreeMap::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim_end_matches('\r');
        if line.trim().is_empty() || line.starts_with('#') {
            continue;
        }
        let err = |m: String| Error::Alignment(format!("verse sidecar line {}: {m}", i + 1));
        let (ord, label) = line
            .split_once('\t')
            .ok_or_else(|| err("expected ordinal<TAB>label".into()))?;
        let ord: usize = match ord.trim().parse() {
            Ok(n) => n,
            Err(_) if out.is_empty() && i == 0 => continue,
            Err(_) => return Err(err(format!("bad sentence ordinal {ord:?}"))),
        };
        let label = books.parse_label(label).map_err(|e| err(e.to_string()))?;
        if out.insert(ord, label).is_some() {
            return Err(err(format!("duplicate ordinal {ord}")));
        }
    }
    Ok(out)
}

/// Groups parsed sentences into verses. Sentences without a sidecar entry
/// are ignored; within a verse, sentences keep file order.
pub fn group_by_verse(
    sentences: Vec<UdSentence>,
    verse_of: &BTreeMap<usize, VerseLabel>,
) -> BTreeMap<VerseLabel, Vec<UdSentence>> {
    let mut out: BTreeMap<VerseLabel, Vec<UdSentence>> = BTreeMap::new();
    for (i, s) in sentences.into_iter().enumerate() {
        if let Some(label) = verse_of.get(&i) {
            out.entry(*label).or_default().push(s);
        }
    }
    out
}

/// NMC (capped) or PNS labels per verse.
pub fn ud_labels(
    task: Task,
    verses: &BTreeMap<VerseLabel, Vec<UdSentence>>,
    cap: u32,
    exec: Execution,
) -> Result<BTreeMap<VerseLabel, u32>> {
    let items: Vec<(&VerseLabel, &Vec<UdSentence>)> = verses.iter().collect();
    let labels = match task {
        Task::Nmc => par::map(exec, &items, |(_, s)| ud_nmc(s, Some(cap))),
        Task::Pns => par::map(exec, &items, |(_, s)| ud_pns(s)),
        other => {
            return Err(Error::Config(format!(
                "dependency-based labels exist only for NMC and PNS, not {other}"
            )))
        }
    };
    Ok(items.into_iter().map(|(l, _)| *l).zip(labels).collect())
}
