//! OntoNotes Normal Form parsing and tree queries.

mod document;
pub mod tree;

use std::path::{Path, PathBuf};

pub use document::{
    is_valid_sense_label, parse_onf, CorefMention, OnfDocument, OnfSentence, PropArg, PropInstance,
    Token,
};
pub use tree::{parse_tree, SyntaxTree};

use crate::error::{Error, Result};
use crate::par::{self, Execution};

/// Finds every `*.onf` file under `dir`, sorted by path.
pub fn find_onf_files(dir: &Path) -> Result<Vec<PathBuf>> {
    let mut files = Vec::new();
    for entry in walkdir::WalkDir::new(dir).sort_by_file_name() {
        let entry = entry.map_err(|e| {
            let path = e.path().unwrap_or(dir).to_path_buf();
            Error::io(path, e.into())
        })?;
        if entry.file_type().is_file() && entry.path().extension().is_some_and(|x| x == "onf") {
            files.push(entry.into_path());
        }
    }
    Ok(files)
}

/// Document id for a file: its path relative to `root`, `/`-separated,
/// without the `.onf` extension.
pub fn doc_id_for(root: &Path, file: &Path) -> String {
    let rel = file.strip_prefix(root).unwrap_or(file).with_extension("");
    rel.components()
        .map(|c| c.as_os_str().to_string_lossy())
        .collect::<Vec<_>>()
        .join("/")
}

/// Reads and parses every ONF file under `dir`.
pub fn load_corpus(dir: &Path, exec: Execution) -> Result<Vec<OnfDocument>> {
    let files = find_onf_files(dir)?;
    par::try_map(exec, &files, |path| {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        parse_onf(&doc_id_for(dir, path), &text).map_err(|e| e.in_file(path))
    })
}
