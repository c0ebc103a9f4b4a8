//! Labels computed from the source annotations of one verse.

use serde::{Deserialize, Serialize};

use crate::onf::tree::{base_category, label_has_prefix, label_segments};
use crate::onf::{CorefMention, OnfSentence, SyntaxTree};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LabelConfig {
    /// POS tags that make a single-token mention pronominal.
    pub pronominal_tags: Vec<String>,
    /// Count only numbered arguments (`ARG0`..`ARG5`) instead of every
    /// non-`v` argument.
    pub numbered_args_only: bool,
}

impl Default for LabelConfig {
    fn default() -> Self {
        LabelConfig {
            pronominal_tags: ["PRP", "PRP$", "WP", "WP$", "DT"]
                .map(String::from)
                .to_vec(),
            numbered_args_only: false,
        }
    }
}

impl LabelConfig {
    pub fn is_pronominal(&self, sentence: &OnfSentence, mention: &CorefMention) -> bool {
        mention.start_token == mention.end_token
            && self
                .pronominal_tags
                .iter()
                .any(|t| *t == sentence.tokens[mention.start_token].pos)
    }

    fn counts_arg(&self, role: &str) -> bool {
        if role == "v" {
            return false;
        }
        if self.numbered_args_only {
            role.strip_prefix("ARG")
                .is_some_and(|n| !n.is_empty() && n.bytes().all(|b| b.is_ascii_digit()))
        } else {
            true
        }
    }
}

/// Non-pronominal coreference mentions across the verse's sentences.
pub fn nmc_label(sentences: &[&OnfSentence], cfg: &LabelConfig) -> u32 {
    sentences
        .iter()
        .flat_map(|s| s.mentions.iter().map(move |m| (s, m)))
        .filter(|(s, m)| !cfg.is_pronominal(s, m))
        .count() as u32
}

/// NMC label clipped at `cap`.
pub fn cap_label(label: u32, cap: u32) -> u32 {
    label.min(cap)
}

fn is_subject(node: &SyntaxTree) -> bool {
    !node.is_leaf() && label_has_prefix(&node.label, &["NP", "SBJ"])
}

fn is_coordinator(node: &SyntaxTree) -> bool {
    matches!(base_category(&node.label), "CC" | "CONJP")
}

/// Subject candidates of the main clause: NP-SBJ children of the root and,
/// when the root coordinates clauses, NP-SBJ children of its S conjuncts.
pub fn main_clause_subjects(root: &SyntaxTree) -> Vec<&SyntaxTree> {
    let mut found: Vec<&SyntaxTree> = root.children.iter().filter(|c| is_subject(c)).collect();
    if root.children.iter().any(is_coordinator) {
        for conjunct in root
            .children
            .iter()
            .filter(|c| !c.is_leaf() && base_category(&c.label) == "S")
        {
            found.extend(conjunct.children.iter().filter(|c| is_subject(c)));
        }
    }
    found
}

/// 1 if the single main-clause subject contains an NNP/NNPS token, 0 if it
/// does not, `None` when there is no unique subject.
pub fn pns_label(first_sentence: &OnfSentence) -> Option<u32> {
    match main_clause_subjects(&first_sentence.tree).as_slice() {
        [subject] => Some(
            subject
                .leaves()
                .filter(|l| !l.is_empty_category())
                .any(|l| l.label == "NNP" || l.label == "NNPS") as u32,
        ),
        _ => None,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Mood {
    Declarative = 0,
    Interrogative = 1,
    Imperative = 2,
}

/// Mood encoded in a clause label; coindices are ignored.
pub fn mood_of_label(label: &str) -> Option<Mood> {
    let segs: Vec<&str> = label_segments(label)
        .into_iter()
        .filter(|s| !s.bytes().all(|b| b.is_ascii_digit()))
        .collect();
    match segs.as_slice() {
        ["S"] | ["S", "CLF"] => Some(Mood::Declarative),
        ["S", "IMP"] => Some(Mood::Imperative),
        ["SQ"] | ["SBARQ"] | ["SQ", "CLF"] => Some(Mood::Interrogative),
        _ => None,
    }
}

/// Mood of the sentence's top constituent; `None` discards the verse.
pub fn sm_label(first_sentence: &OnfSentence) -> Option<Mood> {
    mood_of_label(&first_sentence.tree.label)
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SenseUsage {
    pub sense: String,
    pub arg_count: usize,
}

/// One entry per predicate, in sentence order then head-token order.
pub fn sense_usages(sentences: &[&OnfSentence], cfg: &LabelConfig) -> Vec<SenseUsage> {
    let mut out = Vec::new();
    for s in sentences {
        let mut props: Vec<_> = s.props.iter().collect();
        props.sort_by_key(|p| p.head_token);
        out.extend(props.into_iter().map(|p| SenseUsage {
            sense: p.sense_label.clone(),
            arg_count: p.args.iter().filter(|a| cfg.counts_arg(&a.role)).count(),
        }));
    }
    out
}
