//! Sentence-to-verse mapping and verse alignment with a target translation.
//!
//! Source sentences are mapped to one verse, or to two consecutive verses
//! when a sentence crosses a verse boundary. Each simple source verse then
//! gets exactly one [`VerseStatus`]; only `Usable` verses feed the task
//! generators.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::onf::OnfDocument;
use crate::par::{self, Execution};
use crate::scripture::{Bible, BookCodes, VerseLabel};

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct SentenceId {
    pub doc_id: String,
    pub index: usize,
}

impl SentenceId {
    pub fn new(doc_id: impl Into<String>, index: usize) -> Self {
        SentenceId {
            doc_id: doc_id.into(),
            index,
        }
    }
}

impl fmt::Display for SentenceId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}#{}", self.doc_id, self.index)
    }
}

/// Checks that a sentence's verse list has one label, or two consecutive
/// labels in the same chapter.
fn check_labels(id: &SentenceId, labels: &[VerseLabel]) -> Result<()> {
    match labels {
        [_] => Ok(()),
        [a, b] if a.book == b.book && a.chapter == b.chapter && b.verse_lo == a.verse_hi + 1 => {
            Ok(())
        }
        [_, _] => Err(Error::Alignment(format!(
            "sentence {id} spans non-consecutive verses {} and {}",
            labels[0], labels[1]
        ))),
        _ => Err(Error::Alignment(format!(
            "sentence {id} maps to {} verses; expected 1 or 2",
            labels.len()
        ))),
    }
}

/// Verse labels for each source sentence.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SentenceVerseMap {
    entries: BTreeMap<SentenceId, Vec<VerseLabel>>,
}

impl SentenceVerseMap {
    pub fn insert(&mut self, id: SentenceId, labels: Vec<VerseLabel>) -> Result<()> {
        check_labels(&id, &labels)?;
        self.entries.insert(id, labels);
        Ok(())
    }

    pub fn get(&self, id: &SentenceId) -> Option<&[VerseLabel]> {
        self.entries.get(id).map(Vec::as_slice)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&SentenceId, &[VerseLabel])> {
        self.entries.iter().map(|(k, v)| (k, v.as_slice()))
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Merges another fragment; later entries win.
    pub fn extend(&mut self, other: SentenceVerseMap) {
        self.entries.extend(other.entries);
    }

    /// Sentences that cross a verse boundary.
    pub fn cross_verse(&self) -> impl Iterator<Item = &SentenceId> {
        self.entries
            .iter()
            .filter(|(_, v)| v.len() == 2)
            .map(|(k, _)| k)
    }

    /// Combined labels the source itself uses.
    pub fn combined_labels(&self) -> BTreeSet<VerseLabel> {
        self.entries
            .values()
            .flatten()
            .filter(|l| l.is_combined())
            .copied()
            .collect()
    }

    /// Simple verses of the source corpus, excluding members of combined
    /// source verses. This is the reference set for coverage checks.
    pub fn reference_verses(&self) -> BTreeSet<VerseLabel> {
        self.entries
            .values()
            .flatten()
            .filter(|l| !l.is_combined())
            .copied()
            .collect()
    }
}

/// Sidecar table: `doc_id<TAB>sentence_index<TAB>LABEL[;LABEL]`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Sidecar {
    entries: BTreeMap<SentenceId, Vec<VerseLabel>>,
}

impl Sidecar {
    pub fn parse(text: &str, books: &BookCodes) -> Result<Self> {
        let mut entries = BTreeMap::new();
        let mut seen_data = false;
        for (i, raw) in text.lines().enumerate() {
            let line = raw.trim_end_matches('\r');
            if line.trim().is_empty() || line.starts_with('#') {
                continue;
            }
            let err = |m: String| Error::Alignment(format!("sidecar line {}: {m}", i + 1));
            let fields: Vec<&str> = line.split('\t').collect();
            if fields.len() != 3 {
                return Err(err(format!(
                    "expected 3 tab-separated fields, found {}",
                    fields.len()
                )));
            }
            let first = !seen_data;
            seen_data = true;
            let index: usize = match fields[1].trim().parse() {
                Ok(n) => n,
                Err(_) if first => continue,
                Err(_) => {
                    return Err(err(format!(
                        "sentence index {:?} is not an integer",
                        fields[1]
                    )))
                }
            };
            let labels = fields[2]
                .split(';')
                .map(|s| books.parse_label(s))
                .collect::<Result<Vec<_>>>()
                .map_err(|e| err(e.to_string()))?;
            let id = SentenceId::new(fields[0].trim(), index);
            check_labels(&id, &labels).map_err(|e| err(e.to_string()))?;
            if entries.insert(id.clone(), labels).is_some() {
                return Err(err(format!("duplicate entry for sentence {id}")));
            }
        }
        Ok(Sidecar { entries })
    }

    pub fn get(&self, id: &SentenceId) -> Option<&[VerseLabel]> {
        self.entries.get(id).map(Vec::as_slice)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum VerseStrategy {
    /// Every sentence must be listed in the sidecar.
    #[default]
    Sidecar,
    /// A sentence whose first token is `k` (or `k-m`) opens verse `k` of the
    /// chapter named by the doc id (`.../<book>/<chapter>`); following
    /// sentences inherit it. Sidecar entries, when given, take precedence.
    LeadingNumber,
}

#[derive(Debug, Clone, Copy)]
pub struct VerseExtractor<'a> {
    pub strategy: VerseStrategy,
    pub sidecar: Option<&'a Sidecar>,
    pub books: &'a BookCodes,
}

/// Book and chapter from a doc id ending in `<book>/<chapter>`.
fn doc_chapter(doc_id: &str, books: &BookCodes) -> Option<(crate::scripture::Book, u32)> {
    let segs: Vec<&str> = doc_id.split('/').collect();
    let pos = segs
        .iter()
        .rposition(|s| s.parse::<u32>().is_ok_and(|n| n > 0))?;
    let chapter = segs[pos].parse().ok()?;
    let book = books.resolve(segs.get(pos.checked_sub(1)?)?)?;
    Some((book, chapter))
}

fn leading_verse(first_token: &str) -> Option<(u32, u32)> {
    let (lo, hi) = match first_token.split_once('-') {
        Some((a, b)) => (a.parse().ok()?, b.parse().ok()?),
        None => {
            let v = first_token.parse().ok()?;
            (v, v)
        }
    };
    if first_token.starts_with('+') || lo == 0 || hi < lo {
        return None;
    }
    Some((lo, hi))
}

/// Maps each sentence of `doc` to its verse label(s).
pub fn assign_verses(
    doc: &OnfDocument,
    extractor: &VerseExtractor<'_>,
) -> Result<SentenceVerseMap> {
    let mut map = SentenceVerseMap::default();
    let mut unresolved = Vec::new();
    let chapter = match extractor.strategy {
        VerseStrategy::LeadingNumber => doc_chapter(&doc.doc_id, extractor.books),
        VerseStrategy::Sidecar => None,
    };
    let mut current: Option<VerseLabel> = None;

    for s in &doc.sentences {
        let id = SentenceId::new(doc.doc_id.clone(), s.index);
        if let Some(labels) = extractor.sidecar.and_then(|sc| sc.get(&id)) {
            current = labels.last().copied();
            map.insert(id, labels.to_vec())?;
            continue;
        }
        if extractor.strategy == VerseStrategy::LeadingNumber {
            let opened = chapter.zip(s.tokens.first().and_then(|t| leading_verse(&t.surface)));
            if let Some(((book, ch), (lo, hi))) = opened {
                current = Some(VerseLabel {
                    book,
                    chapter: ch,
                    verse_lo: lo,
                    verse_hi: hi,
                });
            }
            if let Some(label) = current {
                map.insert(id, vec![label])?;
                continue;
            }
        }
        unresolved.push(id.to_string());
    }
    if !unresolved.is_empty() {
        return Err(Error::Alignment(format!(
            "no verse for sentence(s): {}",
            unresolved.join(", ")
        )));
    }
    Ok(map)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum VerseStatus {
    Usable,
    CrossVerse,
    CombinedSource,
    CombinedTarget,
    MissingTarget,
}

impl VerseStatus {
    pub const ALL: [VerseStatus; 5] = [
        VerseStatus::Usable,
        VerseStatus::CrossVerse,
        VerseStatus::CombinedSource,
        VerseStatus::CombinedTarget,
        VerseStatus::MissingTarget,
    ];
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlignmentRow {
    pub sentences: Vec<SentenceId>,
    pub status: VerseStatus,
}

/// One row per simple source verse.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct AlignmentTable {
    pub rows: BTreeMap<VerseLabel, AlignmentRow>,
}

impl AlignmentTable {
    /// Usable verses in canonical order.
    pub fn usable_verses(&self) -> Vec<VerseLabel> {
        self.rows
            .iter()
            .filter(|(_, r)| r.status == VerseStatus::Usable)
            .map(|(l, _)| *l)
            .collect()
    }

    pub fn status_counts(&self) -> BTreeMap<VerseStatus, usize> {
        let mut counts: BTreeMap<VerseStatus, usize> =
            VerseStatus::ALL.iter().map(|s| (*s, 0)).collect();
        for row in self.rows.values() {
            *counts.get_mut(&row.status).unwrap() += 1;
        }
        counts
    }
}

pub fn usable_verses(table: &AlignmentTable) -> Vec<VerseLabel> {
    table.usable_verses()
}

/// Assigns a status to every simple source verse. Priority:
/// CombinedSource, CombinedTarget, MissingTarget, CrossVerse, Usable.
pub fn build_alignment(
    svm: &SentenceVerseMap,
    source_combined: &BTreeSet<VerseLabel>,
    target: &Bible,
) -> AlignmentTable {
    build_alignment_with(Execution::default(), svm, source_combined, target)
}

pub fn build_alignment_with(
    exec: Execution,
    svm: &SentenceVerseMap,
    source_combined: &BTreeSet<VerseLabel>,
    target: &Bible,
) -> AlignmentTable {
    let mut sentences: BTreeMap<VerseLabel, Vec<SentenceId>> = BTreeMap::new();
    let mut combined_source: BTreeSet<VerseLabel> = BTreeSet::new();
    for (id, labels) in svm.iter() {
        for label in labels {
            if label.is_combined() {
                combined_source.extend(label.verses());
            }
            for v in label.verses() {
                sentences.entry(v).or_default().push(id.clone());
            }
        }
    }
    for label in source_combined {
        combined_source.extend(label.verses());
        for v in label.verses() {
            sentences.entry(v).or_default();
        }
    }
    let cross: BTreeSet<&SentenceId> = svm.cross_verse().collect();

    let verses: Vec<(VerseLabel, Vec<SentenceId>)> = sentences.into_iter().collect();
    let statuses = par::map(exec, &verses, |(verse, ids)| {
        if combined_source.contains(verse) {
            VerseStatus::CombinedSource
        } else {
            match target.covering(verse) {
                Some(t) if t.label.is_combined() => VerseStatus::CombinedTarget,
                None => VerseStatus::MissingTarget,
                Some(_) if ids.iter().any(|id| cross.contains(id)) => VerseStatus::CrossVerse,
                Some(_) => VerseStatus::Usable,
            }
        }
    });
    AlignmentTable {
        rows: verses
            .into_iter()
            .zip(statuses)
            .map(|((verse, sentences), status)| (verse, AlignmentRow { sentences, status }))
            .collect(),
    }
}
