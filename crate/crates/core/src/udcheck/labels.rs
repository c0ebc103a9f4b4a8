//! NMC and PNS labels rebuilt from dependency parses.

use std::collections::VecDeque;

use super::conllu::UdSentence;

/// Default cap for dependency-based mention counts.
pub const UD_NMC_CAP: u32 = 3;

/// Counts PROPN and NOUN tokens, skipping nouns attached as `compound`
/// (compound modifiers are not separate markables). `None` leaves the count
/// uncapped.
pub fn ud_nmc(verse: &[UdSentence], cap: Option<u32>) -> u32 {
    let count = verse
        .iter()
        .flat_map(|s| &s.tokens)
        .filter(|t| match t.upos.as_str() {
            "PROPN" => true,
            "NOUN" => t.base_deprel() != "compound",
            _ => false,
        })
        .count() as u32;
    match cap {
        Some(c) => count.min(c),
        None => count,
    }
}

/// Ids in breadth-first order from the root(s): by distance, then by id.
pub fn bfs_order(sentence: &UdSentence) -> Vec<usize> {
    let mut order = Vec::with_capacity(sentence.tokens.len());
    let mut queue: VecDeque<usize> = sentence.dependents(0).collect();
    while let Some(id) = queue.pop_front() {
        order.push(id);
        queue.extend(sentence.dependents(id));
    }
    order
}

/// 1 if the first `nsubj` met in breadth-first order heads a subtree with a
/// PROPN token, else 0 (also 0 when there is no subject). Only the verse's
/// first sentence is used.
pub fn ud_pns(verse: &[UdSentence]) -> u32 {
    let Some(sentence) = verse.first() else {
        return 0;
    };
    let Some(subject) = bfs_order(sentence)
        .into_iter()
        .find(|&id| sentence.token(id).base_deprel() == "nsubj")
    else {
        return 0;
    };
    let mut stack = vec![subject];
    while let Some(id) = stack.pop() {
        if sentence.token(id).upos == "PROPN" {
            return 1;
        }
        stack.extend(sentence.dependents(id));
    }
    0
}
