//! Reader for the 10-column CoNLL-U dependency format.

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UdToken {
    /// 1-based word id.
    pub id: usize,
    pub form: String,
    pub upos: String,
    /// 0 for the root.
    pub head: usize,
    pub deprel: String,
}

impl UdToken {
    /// Universal relation without its subtype (`nsubj:pass` → `nsubj`).
    pub fn base_deprel(&self) -> &str {
        self.deprel.split(':').next().unwrap_or("")
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UdSentence {
    pub tokens: Vec<UdToken>,
}

impl UdSentence {
    pub fn token(&self, id: usize) -> &UdToken {
        &self.tokens[id - 1]
    }

    /// Ids whose head is `id`, ascending.
    pub fn dependents(&self, id: usize) -> impl Iterator<Item = usize> + '_ {
        self.tokens
            .iter()
            .filter(move |t| t.head == id)
            .map(|t| t.id)
    }
}

/// Parses blank-line separated sentences. Comment lines, multiword-token
/// ranges (`3-4`) and empty nodes (`5.1`) are skipped.
pub fn parse_conllu(text: &str) -> Result<Vec<UdSentence>> {
    let mut sentences = Vec::new();
    let mut tokens: Vec<UdToken> = Vec::new();
    let mut start_line = 1;

    for (i, raw) in text.lines().enumerate() {
        let lineno = i + 1;
        let line = raw.trim_end_matches('\r');
        if line.trim().is_empty() {
            if !tokens.is_empty() {
                sentences.push(finish(std::mem::take(&mut tokens), start_line)?);
            }
            continue;
        }
        if line.starts_with('#') {
            continue;
        }
        if tokens.is_empty() {
            start_line = lineno;
        }
        let err = |message: String| Error::Conllu {
            line: lineno,
            message,
        };
        let cols: Vec<&str> = line.split('\t').collect();
        if cols.len() != 10 {
            return Err(err(format!("expected 10 columns, found {}", cols.len())));
        }
        if cols[0].contains('-') || cols[0].contains('.') {
            continue;
        }
        let id: usize = cols[0]
            .parse()
            .map_err(|_| err(format!("bad id {:?}", cols[0])))?;
        if id != tokens.len() + 1 {
            return Err(err(format!("expected id {}, found {id}", tokens.len() + 1)));
        }
        let head: usize = cols[6]
            .parse()
            .map_err(|_| err(format!("bad head {:?}", cols[6])))?;
        tokens.push(UdToken {
            id,
            form: cols[1].to_string(),
            upos: cols[3].to_string(),
            head,
            deprel: cols[7].to_string(),
        });
    }
    if !tokens.is_empty() {
        sentences.push(finish(tokens, start_line)?);
    }
    Ok(sentences)
}

fn finish(tokens: Vec<UdToken>, line: usize) -> Result<UdSentence> {
    let err = |message: String| Error::Conllu { line, message };
    let n = tokens.len();
    if let Some(t) = tokens.iter().find(|t| t.head > n) {
        return Err(err(format!("token {} has dangling head {}", t.id, t.head)));
    }
    if !tokens.iter().any(|t| t.head == 0) {
        return Err(err("sentence has no root".into()));
    }
    for t in &tokens {
        // walk to the root; more than n steps means a cycle
        let mut cur = t.id;
        for _ in 0..=n {
            cur = tokens[cur - 1].head;
            if cur == 0 {
                break;
            }
        }
        if cur != 0 {
            return Err(err(format!("cyclic heads through token {}", t.id)));
        }
    }
    Ok(UdSentence { tokens })
}
