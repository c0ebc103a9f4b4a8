//! OntoNotes Normal Form documents.
//!
//! A document is a sequence of sentence blocks. Each block has the sections
//! `Plain sentence:`, `Treebanked sentence:`, `Tree:` and `Leaves:`, each
//! header followed by a dashed underline. The Leaves section lists tokens as
//! `N  surface` lines; annotation lines beneath a token have the form
//! `kind: payload`. Only `coref` and `prop` annotations are modeled; other
//! kinds (`name`, `sense`, ...) and any text outside sentence blocks, such as
//! trailing coreference chain listings, are skipped.

use std::fmt::Write as _;

use super::tree::{parse_tree, SyntaxTree};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OnfDocument {
    /// Corpus-relative identifier, e.g. `jhn/11`.
    pub doc_id: String,
    pub sentences: Vec<OnfSentence>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Token {
    pub surface: String,
    pub pos: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OnfSentence {
    pub index: usize,
    pub plain_text: String,
    pub tokens: Vec<Token>,
    pub tree: SyntaxTree,
    pub mentions: Vec<CorefMention>,
    pub props: Vec<PropInstance>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CorefMention {
    pub coref_type: String,
    pub chain_id: u32,
    pub start_token: usize,
    /// Inclusive.
    pub end_token: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PropInstance {
    pub head_token: usize,
    /// `lemma.NN`, e.g. `cry.02`.
    pub sense_label: String,
    pub args: Vec<PropArg>,
}

impl PropInstance {
    /// The predicate's own `v` argument.
    pub fn verb(&self) -> &PropArg {
        self.args
            .iter()
            .find(|a| a.role == "v")
            .expect("prop instances always carry a v arg")
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PropArg {
    pub role: String,
    pub head_token: usize,
    pub levels_up: usize,
}

/// True for `lemma.digits` sense labels.
pub fn is_valid_sense_label(label: &str) -> bool {
    match label.rsplit_once('.') {
        Some((lemma, num)) => {
            !lemma.is_empty()
                && !num.is_empty()
                && num.bytes().all(|b| b.is_ascii_digit())
                && !label.chars().any(char::is_whitespace)
        }
        None => false,
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Section {
    Outside,
    Plain,
    Treebanked,
    Tree,
    Leaves,
}

#[derive(Default)]
struct RawBlock {
    plain: Vec<String>,
    treebanked: Vec<String>,
    tree: Option<Vec<String>>,
    leaves: Vec<(usize, String)>,
}

fn is_rule(line: &str) -> bool {
    let t = line.trim();
    t.len() >= 3 && (t.bytes().all(|b| b == b'-') || t.bytes().all(|b| b == b'='))
}

fn header(line: &str) -> Option<Section> {
    match line.trim() {
        "Plain sentence:" => Some(Section::Plain),
        "Treebanked sentence:" => Some(Section::Treebanked),
        "Tree:" => Some(Section::Tree),
        "Leaves:" => Some(Section::Leaves),
        _ => None,
    }
}

/// Parses the text of one ONF file.
pub fn parse_onf(doc_id: &str, text: &str) -> Result<OnfDocument> {
    let mut blocks: Vec<RawBlock> = Vec::new();
    let mut section = Section::Outside;
    let mut underline_pending = false;

    for (lineno, line) in text.lines().enumerate() {
        if let Some(next) = header(line) {
            let new_block = match blocks.last() {
                None => true,
                Some(b) => next == Section::Plain || (next == Section::Tree && b.tree.is_some()),
            };
            if new_block {
                blocks.push(RawBlock::default());
            }
            let block = blocks.last_mut().unwrap();
            if next == Section::Tree {
                block.tree = Some(Vec::new());
            }
            section = next;
            underline_pending = true;
            continue;
        }
        if is_rule(line) {
            if std::mem::take(&mut underline_pending) {
                continue;
            }
            if section == Section::Leaves {
                section = Section::Outside;
            }
            continue;
        }
        if !line.trim().is_empty() {
            underline_pending = false;
        }
        let Some(block) = blocks.last_mut() else {
            continue;
        };
        let indented = line.starts_with([' ', '\t']);
        match section {
            Section::Outside => {}
            _ if line.trim().is_empty() => {}
            Section::Leaves if !indented => section = Section::Outside,
            Section::Plain => block.plain.push(line.trim().to_string()),
            Section::Treebanked => block.treebanked.push(line.trim().to_string()),
            Section::Tree => block.tree.as_mut().unwrap().push(line.trim().to_string()),
            Section::Leaves => block.leaves.push((lineno + 1, line.to_string())),
        }
    }

    let sentences = blocks
        .into_iter()
        .enumerate()
        .map(|(i, b)| build_sentence(i, b))
        .collect::<Result<Vec<_>>>()?;
    Ok(OnfDocument {
        doc_id: doc_id.to_string(),
        sentences,
    })
}

fn build_sentence(index: usize, raw: RawBlock) -> Result<OnfSentence> {
    let err = |m: String| Error::onf(Some(index), m);
    let tree_text = raw
        .tree
        .ok_or_else(|| err("block has no Tree section".into()))?
        .join(" ");
    let tree = parse_tree(&tree_text).map_err(|e| match e {
        Error::Onf { message, .. } => err(message),
        other => other,
    })?;
    let tokens: Vec<Token> = tree
        .tokens()
        .into_iter()
        .map(|(surface, pos)| Token { surface, pos })
        .collect();
    if tokens.is_empty() {
        return Err(err("tree has no tokens".into()));
    }
    let (mentions, props) = parse_leaves(index, tokens.len(), &raw.leaves)?;
    Ok(OnfSentence {
        index,
        plain_text: raw.plain.join(" "),
        tokens,
        tree,
        mentions,
        props,
    })
}

enum Open {
    None,
    Skipped,
    Prop(PropInstance),
}

fn parse_leaves(
    sentence: usize,
    ntokens: usize,
    lines: &[(usize, String)],
) -> Result<(Vec<CorefMention>, Vec<PropInstance>)> {
    let err = |line: usize, m: String| Error::onf(Some(sentence), format!("line {line}: {m}"));
    let check = |line: usize, tok: usize| -> Result<()> {
        if tok >= ntokens {
            Err(err(
                line,
                format!("token index {tok} out of range for {ntokens} tokens"),
            ))
        } else {
            Ok(())
        }
    };

    let mut mentions = Vec::new();
    let mut props = Vec::new();
    let mut current_leaf: Option<usize> = None;
    let mut open = Open::None;

    let close = |open: Open, props: &mut Vec<PropInstance>, line: usize| -> Result<()> {
        if let Open::Prop(p) = open {
            if !p.args.iter().any(|a| a.role == "v") {
                return Err(err(line, format!("prop {} has no v arg", p.sense_label)));
            }
            props.push(p);
        }
        Ok(())
    };

    for (lineno, raw) in lines {
        let lineno = *lineno;
        let line = raw.trim();
        if let Some(idx) = leaf_index(line) {
            close(std::mem::replace(&mut open, Open::None), &mut props, lineno)?;
            check(lineno, idx)?;
            current_leaf = Some(idx);
        } else if let Some((kind, payload)) = annotation(line) {
            close(std::mem::replace(&mut open, Open::None), &mut props, lineno)?;
            let leaf = current_leaf
                .ok_or_else(|| err(lineno, "annotation before any token line".into()))?;
            open = match kind {
                "coref" => {
                    let m = parse_coref(payload).map_err(|m| err(lineno, m))?;
                    check(lineno, m.end_token)?;
                    mentions.push(m);
                    Open::None
                }
                "prop" => {
                    let sense = payload.split_whitespace().next().unwrap_or("");
                    if !is_valid_sense_label(sense) {
                        return Err(err(lineno, format!("malformed sense label {sense:?}")));
                    }
                    Open::Prop(PropInstance {
                        head_token: leaf,
                        sense_label: sense.to_string(),
                        args: Vec::new(),
                    })
                }
                _ => Open::Skipped,
            };
        } else {
            match &mut open {
                Open::Prop(p) => {
                    let arg = parse_arg(line).map_err(|m| err(lineno, m))?;
                    check(lineno, arg.head_token)?;
                    if arg.role == "v" && p.args.iter().any(|a| a.role == "v") {
                        return Err(err(
                            lineno,
                            format!("duplicate v arg in prop {}", p.sense_label),
                        ));
                    }
                    p.args.push(arg);
                }
                Open::Skipped => {}
                Open::None => {
                    return Err(err(lineno, format!("unexpected line {line:?} in Leaves")));
                }
            }
        }
    }
    let last = lines.last().map_or(0, |(l, _)| *l);
    close(open, &mut props, last)?;
    Ok((mentions, props))
}

/// `N  surface` token line.
fn leaf_index(line: &str) -> Option<usize> {
    let end = line.find(char::is_whitespace).unwrap_or(line.len());
    let head = &line[..end];
    if head.is_empty() || !head.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    head.parse().ok()
}

/// `kind: payload` with a lowercase kind.
fn annotation(line: &str) -> Option<(&str, &str)> {
    let (kind, rest) = line.split_once(':')?;
    if kind.is_empty() || !kind.bytes().all(|b| b.is_ascii_lowercase() || b == b'_') {
        return None;
    }
    Some((kind, rest.trim()))
}

/// `TYPE CHAIN START-END [surface...]`
fn parse_coref(payload: &str) -> std::result::Result<CorefMention, String> {
    let mut fields = payload.split_whitespace();
    let (Some(ty), Some(chain), Some(span)) = (fields.next(), fields.next(), fields.next()) else {
        return Err(format!(
            "coref payload {payload:?} needs TYPE CHAIN START-END"
        ));
    };
    let chain_id = chain
        .parse()
        .map_err(|_| format!("bad coref chain id {chain:?}"))?;
    let (s, e) = span
        .split_once('-')
        .ok_or_else(|| format!("bad coref span {span:?}"))?;
    let start_token: usize = s.parse().map_err(|_| format!("bad coref span {span:?}"))?;
    let end_token: usize = e.parse().map_err(|_| format!("bad coref span {span:?}"))?;
    if start_token > end_token {
        return Err(format!("coref span {span:?} is inverted"));
    }
    Ok(CorefMention {
        coref_type: ty.to_string(),
        chain_id,
        start_token,
        end_token,
    })
}

/// `ROLE  * -> HEAD:LEVELS, surface` (only the first pointer is kept).
fn parse_arg(line: &str) -> std::result::Result<PropArg, String> {
    let mut parts = line.splitn(2, char::is_whitespace);
    let role = parts.next().unwrap_or("");
    let rest = parts.next().unwrap_or("");
    let pointers = rest.split_once("->").map_or(rest, |(_, r)| r);
    let pointer = pointers
        .split(|c: char| c.is_whitespace() || c == ',' || c == ';' || c == '*')
        .find(|w| w.contains(':'))
        .ok_or_else(|| format!("arg line {line:?} has no HEAD:LEVELS pointer"))?;
    let (h, l) = pointer.split_once(':').unwrap();
    let head_token = h
        .parse()
        .map_err(|_| format!("bad arg pointer {pointer:?}"))?;
    let levels_up = l
        .parse()
        .map_err(|_| format!("bad arg pointer {pointer:?}"))?;
    Ok(PropArg {
        role: role.to_string(),
        head_token,
        levels_up,
    })
}

impl OnfDocument {
    /// Renders the document back to ONF text that [`parse_onf`] reads.
    /// Mentions are listed under their first token, props under their head.
    pub fn to_onf_string(&self) -> String {
        let mut out = String::new();
        for s in &self.sentences {
            s.write_onf(&mut out);
        }
        out
    }
}

const RULE: &str =
    "------------------------------------------------------------------------------------------";

impl OnfSentence {
    fn write_onf(&self, out: &mut String) {
        let surfaces: Vec<&str> = self
            .tree
            .leaves()
            .map(|l| l.leaf.as_ref().unwrap().surface.as_str())
            .collect();
        let _ = writeln!(out, "{RULE}");
        let _ = writeln!(
            out,
            "Plain sentence:\n---------------\n    {}\n",
            self.plain_text
        );
        let _ = writeln!(
            out,
            "Treebanked sentence:\n--------------------\n    {}\n",
            surfaces.join(" ")
        );
        let _ = writeln!(
            out,
            "Tree:\n-----\n    (TOP {})\n",
            self.tree.to_bracketed()
        );
        let _ = writeln!(out, "Leaves:\n-------");
        for (i, tok) in self.tokens.iter().enumerate() {
            let _ = writeln!(out, "    {i:<3} {}", tok.surface);
            for m in self.mentions.iter().filter(|m| m.start_token == i) {
                let span: Vec<&str> = self.tokens[m.start_token..=m.end_token]
                    .iter()
                    .map(|t| t.surface.as_str())
                    .collect();
                let _ = writeln!(
                    out,
                    "            coref: {:<12} {:<5} {}-{}    {}",
                    m.coref_type,
                    m.chain_id,
                    m.start_token,
                    m.end_token,
                    span.join(" ")
                );
            }
            for p in self.props.iter().filter(|p| p.head_token == i) {
                let _ = writeln!(out, "            prop:  {}", p.sense_label);
                for a in &p.args {
                    let _ = writeln!(
                        out,
                        "             {:<10} * -> {}:{},  {}",
                        a.role, a.head_token, a.levels_up, self.tokens[a.head_token].surface
                    );
                }
            }
        }
        out.push('\n');
    }
}
