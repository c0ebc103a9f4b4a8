//! The five projected classification tasks.

pub mod export;
pub mod labels;
pub mod sampling;
pub mod split;

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::align::AlignmentTable;
use crate::error::{Error, Result};
use crate::onf::{OnfDocument, OnfSentence};
use crate::par::{self, Execution};
use crate::scripture::{Bible, VerseLabel};

pub use export::{export, read_jsonl, write_jsonl};
pub use labels::{
    cap_label, nmc_label, pns_label, sense_usages, sm_label, LabelConfig, Mood, SenseUsage,
};
pub use sampling::{gen_sac, gen_ss, SenseVerse};
pub use split::{split_dataset, DatasetBundle, Provenance, Split, SplitRatios};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Task {
    #[serde(rename = "NMC")]
    Nmc,
    #[serde(rename = "PNS")]
    Pns,
    #[serde(rename = "SM")]
    Sm,
    #[serde(rename = "SS")]
    Ss,
    #[serde(rename = "SAC")]
    Sac,
}

impl Task {
    pub const ALL: [Task; 5] = [Task::Nmc, Task::Pns, Task::Sm, Task::Ss, Task::Sac];

    pub fn name(self) -> &'static str {
        match self {
            Task::Nmc => "NMC",
            Task::Pns => "PNS",
            Task::Sm => "SM",
            Task::Ss => "SS",
            Task::Sac => "SAC",
        }
    }

    /// Lower-case stem used in file names.
    pub fn file_stem(self) -> &'static str {
        match self {
            Task::Nmc => "nmc",
            Task::Pns => "pns",
            Task::Sm => "sm",
            Task::Ss => "ss",
            Task::Sac => "sac",
        }
    }

    pub fn is_pair_task(self) -> bool {
        matches!(self, Task::Ss | Task::Sac)
    }
}

impl fmt::Display for Task {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Task {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Task::ALL
            .into_iter()
            .find(|t| t.name().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| Error::Config(format!("unknown task {s:?}")))
    }
}

/// One labeled example. Field order is the JSON-lines column order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TaskInstance {
    pub task: Task,
    pub verse_1: VerseLabel,
    pub text_1: String,
    pub verse_2: Option<VerseLabel>,
    pub text_2: Option<String>,
    pub sense: Option<String>,
    pub label: u32,
}

impl TaskInstance {
    pub fn single(task: Task, verse: VerseLabel, text: &str, label: u32) -> Self {
        TaskInstance {
            task,
            verse_1: verse,
            text_1: text.to_string(),
            verse_2: None,
            text_2: None,
            sense: None,
            label,
        }
    }

    /// Sort key identifying the instance independently of its position.
    pub fn identity(&self) -> (Task, VerseLabel, Option<VerseLabel>, Option<&str>, u32) {
        (
            self.task,
            self.verse_1,
            self.verse_2,
            self.sense.as_deref(),
            self.label,
        )
    }
}

/// A usable verse with its source sentences and target text.
#[derive(Debug, Clone)]
pub struct ProjectedVerse<'a> {
    pub label: VerseLabel,
    pub text: &'a str,
    pub sentences: Vec<&'a OnfSentence>,
}

/// Collects source sentences and target text for each usable verse, in
/// canonical order.
pub fn project_verses<'a>(
    docs: &'a [OnfDocument],
    table: &AlignmentTable,
    target: &'a Bible,
) -> Result<Vec<ProjectedVerse<'a>>> {
    let lookup: HashMap<(&str, usize), &OnfSentence> = docs
        .iter()
        .flat_map(|d| {
            d.sentences
                .iter()
                .map(move |s| ((d.doc_id.as_str(), s.index), s))
        })
        .collect();
    table
        .usable_verses()
        .into_iter()
        .map(|label| {
            let row = &table.rows[&label];
            let sentences = row
                .sentences
                .iter()
                .map(|id| {
                    lookup
                        .get(&(id.doc_id.as_str(), id.index))
                        .copied()
                        .ok_or_else(|| {
                            Error::Alignment(format!(
                                "verse {label} refers to unknown sentence {id}"
                            ))
                        })
                })
                .collect::<Result<Vec<_>>>()?;
            let text = target.covering(&label).ok_or_else(|| {
                Error::Alignment(format!("usable verse {label} has no target text"))
            })?;
            Ok(ProjectedVerse {
                label,
                text: &text.text,
                sentences,
            })
        })
        .collect()
}

/// NMC, PNS or SM instances; verses whose label is undefined are skipped.
pub fn gen_single(
    task: Task,
    verses: &[ProjectedVerse<'_>],
    cfg: &LabelConfig,
    exec: Execution,
) -> Vec<TaskInstance> {
    let labels = par::map(exec, verses, |v| single_label(task, v, cfg));
    verses
        .iter()
        .zip(labels)
        .filter_map(|(v, label)| label.map(|l| TaskInstance::single(task, v.label, v.text, l)))
        .collect()
}

fn single_label(task: Task, verse: &ProjectedVerse<'_>, cfg: &LabelConfig) -> Option<u32> {
    let first = verse.sentences.first()?;
    match task {
        Task::Nmc => Some(nmc_label(&verse.sentences, cfg)),
        Task::Pns => pns_label(first),
        Task::Sm => sm_label(first).map(|m| m as u32),
        Task::Ss | Task::Sac => None,
    }
}

/// Sense usages for every verse, the input to the pair tasks.
pub fn sense_corpus(
    verses: &[ProjectedVerse<'_>],
    cfg: &LabelConfig,
    exec: Execution,
) -> Vec<SenseVerse> {
    par::map(exec, verses, |v| SenseVerse {
        label: v.label,
        text: v.text.to_string(),
        usages: sense_usages(&v.sentences, cfg),
    })
}
