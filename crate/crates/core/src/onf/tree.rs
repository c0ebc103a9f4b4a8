//! Penn Treebank style constituency trees.

use std::fmt;

use crate::error::{Error, Result};

/// POS tag marking an empty category (trace, null complementizer, ...).
pub const EMPTY_CATEGORY_TAG: &str = "-NONE-";

/// A constituent or a preterminal.
///
/// Preterminals are leaves: `label` holds the POS tag and `leaf` the word.
/// Inner nodes have at least one child and no `leaf`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SyntaxTree {
    pub label: String,
    pub children: Vec<SyntaxTree>,
    pub leaf: Option<Leaf>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Leaf {
    /// Position among the sentence's non-empty tokens; `None` for empty
    /// categories.
    pub token_index: Option<usize>,
    pub surface: String,
}

impl SyntaxTree {
    pub fn is_leaf(&self) -> bool {
        self.leaf.is_some()
    }

    pub fn is_empty_category(&self) -> bool {
        matches!(&self.leaf, Some(l) if l.token_index.is_none())
    }

    /// Token index of a non-empty leaf.
    pub fn token_index(&self) -> Option<usize> {
        self.leaf.as_ref().and_then(|l| l.token_index)
    }

    /// Pre-order iterator over every node.
    pub fn nodes(&self) -> Nodes<'_> {
        Nodes { stack: vec![self] }
    }

    /// Leaves left to right, empty categories included.
    pub fn leaves(&self) -> impl Iterator<Item = &SyntaxTree> {
        self.nodes().filter(|n| n.is_leaf())
    }

    /// `(surface, pos)` of every non-empty leaf, in token order.
    pub fn tokens(&self) -> Vec<(String, String)> {
        self.leaves()
            .filter(|n| !n.is_empty_category())
            .map(|n| (n.leaf.as_ref().unwrap().surface.clone(), n.label.clone()))
            .collect()
    }

    pub fn token_count(&self) -> usize {
        self.leaves().filter(|n| !n.is_empty_category()).count()
    }

    /// Inclusive token span covered by this node, `None` if it dominates
    /// only empty categories.
    pub fn span(&self) -> Option<(usize, usize)> {
        let mut idx = self.nodes().filter_map(SyntaxTree::token_index);
        let first = idx.next()?;
        let last = idx.last().unwrap_or(first);
        Some((first, last))
    }

    /// Nodes from the root down to the leaf holding `token`.
    pub fn path_to_token(&self, token: usize) -> Option<Vec<&SyntaxTree>> {
        let mut path = vec![self];
        if self.descend_to(token, &mut path) {
            Some(path)
        } else {
            None
        }
    }

    fn descend_to<'a>(&'a self, token: usize, path: &mut Vec<&'a SyntaxTree>) -> bool {
        if self.token_index() == Some(token) {
            return true;
        }
        for child in &self.children {
            match child.span() {
                Some((lo, hi)) if lo <= token && token <= hi => {
                    path.push(child);
                    return child.descend_to(token, path);
                }
                _ => {}
            }
        }
        false
    }

    /// Span of the constituent `levels_up` steps above the leaf for
    /// `head_token` (0 is the leaf itself).
    pub fn resolve_arg_span(&self, head_token: usize, levels_up: usize) -> Result<(usize, usize)> {
        let path = self
            .path_to_token(head_token)
            .ok_or_else(|| Error::Range(format!("token {head_token} not found in tree")))?;
        let depth = path.len() - 1;
        if levels_up > depth {
            return Err(Error::Range(format!(
                "{levels_up} levels up from token {head_token} exceeds its depth {depth}"
            )));
        }
        // a path ending at a non-empty leaf always has a span
        Ok(path[depth - levels_up]
            .span()
            .expect("ancestor of a token has a span"))
    }

    /// Bracketed form without a TOP wrapper.
    pub fn to_bracketed(&self) -> String {
        let mut out = String::new();
        self.write_bracketed(&mut out);
        out
    }

    fn write_bracketed(&self, out: &mut String) {
        out.push('(');
        out.push_str(&self.label);
        if let Some(leaf) = &self.leaf {
            out.push(' ');
            out.push_str(&leaf.surface);
        }
        for child in &self.children {
            out.push(' ');
            child.write_bracketed(out);
        }
        out.push(')');
    }

    fn assign_token_indices(&mut self, next: &mut usize) {
        if let Some(leaf) = &mut self.leaf {
            if self.label != EMPTY_CATEGORY_TAG {
                leaf.token_index = Some(*next);
                *next += 1;
            }
        }
        for child in &mut self.children {
            child.assign_token_indices(next);
        }
    }
}

impl fmt::Display for SyntaxTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_bracketed())
    }
}

pub struct Nodes<'a> {
    stack: Vec<&'a SyntaxTree>,
}

impl<'a> Iterator for Nodes<'a> {
    type Item = &'a SyntaxTree;

    fn next(&mut self) -> Option<Self::Item> {
        let node = self.stack.pop()?;
        self.stack.extend(node.children.iter().rev());
        Some(node)
    }
}

/// Splits a label into its category and function-tag segments on `-` and
/// `=`. Labels that begin with a dash (`-NONE-`, `-LRB-`) are one segment.
pub fn label_segments(label: &str) -> Vec<&str> {
    if label.starts_with('-') {
        return vec![label];
    }
    label.split(['-', '=']).filter(|s| !s.is_empty()).collect()
}

/// Category with function tags and coindices removed (`NP-SBJ-1` → `NP`).
pub fn base_category(label: &str) -> &str {
    label_segments(label).first().copied().unwrap_or(label)
}

/// True when the label's leading segments equal `prefix`
/// (`NP-SBJ=2` matches `["NP", "SBJ"]`).
pub fn label_has_prefix(label: &str, prefix: &[&str]) -> bool {
    let segs = label_segments(label);
    segs.len() >= prefix.len() && segs.iter().zip(prefix).all(|(a, b)| a == b)
}

#[derive(Debug, PartialEq)]
enum Tok<'a> {
    Open,
    Close,
    Atom(&'a str),
}

fn tokenize(s: &str) -> Vec<Tok<'_>> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, c) in s.char_indices() {
        if c == '(' || c == ')' || c.is_whitespace() {
            if let Some(st) = start.take() {
                out.push(Tok::Atom(&s[st..i]));
            }
            match c {
                '(' => out.push(Tok::Open),
                ')' => out.push(Tok::Close),
                _ => {}
            }
        } else if start.is_none() {
            start = Some(i);
        }
    }
    if let Some(st) = start {
        out.push(Tok::Atom(&s[st..]));
    }
    out
}

#[derive(Default)]
struct Frame {
    label: Option<String>,
    word: Option<String>,
    children: Vec<SyntaxTree>,
}

/// Parses one bracketed tree. A `TOP` (or unlabeled) wrapper around a single
/// constituent is removed, and non-empty leaves are numbered left to right.
pub fn parse_tree(sexpr: &str) -> Result<SyntaxTree> {
    let err = |m: String| Error::onf(None, m);
    let mut stack: Vec<Frame> = Vec::new();
    let mut root: Option<SyntaxTree> = None;

    for tok in tokenize(sexpr) {
        match tok {
            Tok::Open => {
                if stack.is_empty() && root.is_some() {
                    return Err(err("more than one root constituent".into()));
                }
                if let Some(top) = stack.last() {
                    if top.word.is_some() {
                        return Err(err("constituent mixes a word with children".into()));
                    }
                }
                stack.push(Frame::default());
            }
            Tok::Atom(a) => {
                let Some(top) = stack.last_mut() else {
                    return Err(err(format!("text {a:?} outside of brackets")));
                };
                if top.label.is_none() && top.children.is_empty() {
                    top.label = Some(a.to_string());
                } else if top.word.is_none() && top.children.is_empty() {
                    top.word = Some(a.to_string());
                } else {
                    return Err(err(format!("unexpected token {a:?}")));
                }
            }
            Tok::Close => {
                let frame = stack
                    .pop()
                    .ok_or_else(|| err("unbalanced parentheses: unexpected ')'".into()))?;
                let label = frame.label.unwrap_or_default();
                let node = if let Some(word) = frame.word {
                    SyntaxTree {
                        label,
                        children: Vec::new(),
                        leaf: Some(Leaf {
                            token_index: None,
                            surface: word,
                        }),
                    }
                } else if !frame.children.is_empty() {
                    SyntaxTree {
                        label,
                        children: frame.children,
                        leaf: None,
                    }
                } else {
                    return Err(err(format!("empty constituent {label:?}")));
                };
                if node.is_leaf() && node.label.is_empty() {
                    return Err(err("leaf without a POS tag".into()));
                }
                match stack.last_mut() {
                    Some(parent) => parent.children.push(node),
                    None => root = Some(node),
                }
            }
        }
    }
    if !stack.is_empty() {
        return Err(err(format!(
            "unbalanced parentheses: {} unclosed",
            stack.len()
        )));
    }
    let mut root = root.ok_or_else(|| err("empty tree".into()))?;
    while (root.label == "TOP" || root.label.is_empty()) && root.children.len() == 1 {
        root = root.children.pop().unwrap();
    }
    if root.label.is_empty() {
        return Err(err("unlabeled root constituent".into()));
    }
    root.assign_token_indices(&mut 0);
    Ok(root)
}
