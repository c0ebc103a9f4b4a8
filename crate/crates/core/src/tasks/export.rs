//! JSON-lines export of dataset bundles.

use std::fs;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};

use super::labels::cap_label;
use super::split::{DatasetBundle, Split};
use super::{Task, TaskInstance};
use crate::error::{Error, Result};

/// `{task}.{split}.jsonl`
pub fn split_file_name(task: Task, split: Split) -> String {
    format!("{}.{}.jsonl", task.file_stem(), split.name())
}

/// `{task}.{split}.cap{N}.jsonl`
pub fn capped_file_name(task: Task, split: Split, cap: u32) -> String {
    format!("{}.{}.cap{cap}.jsonl", task.file_stem(), split.name())
}

pub fn write_jsonl(path: &Path, instances: &[TaskInstance]) -> Result<()> {
    let file = fs::File::create(path).map_err(|e| Error::io(path, e))?;
    let mut w = BufWriter::new(file);
    for inst in instances {
        serde_json::to_writer(&mut w, inst).map_err(|e| Error::Json {
            path: path.to_path_buf(),
            source: e,
        })?;
        w.write_all(b"\n").map_err(|e| Error::io(path, e))?;
    }
    w.flush().map_err(|e| Error::io(path, e))
}

pub fn read_jsonl(path: &Path) -> Result<Vec<TaskInstance>> {
    let file = fs::File::open(path).map_err(|e| Error::io(path, e))?;
    let mut out = Vec::new();
    for line in BufReader::new(file).lines() {
        let line = line.map_err(|e| Error::io(path, e))?;
        if line.trim().is_empty() {
            continue;
        }
        out.push(serde_json::from_str(&line).map_err(|e| Error::Json {
            path: path.to_path_buf(),
            source: e,
        })?);
    }
    Ok(out)
}

/// Writes one file per split into `dir`. For NMC with `cap` set, a capped
/// copy (`label = min(label, cap)`) is written next to the raw file.
pub fn export(bundle: &DatasetBundle, dir: &Path, cap: Option<u32>) -> Result<Vec<PathBuf>> {
    fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    let mut written = Vec::new();
    for split in Split::ALL {
        let instances = bundle.split(split);
        let path = dir.join(split_file_name(bundle.task, split));
        write_jsonl(&path, instances)?;
        written.push(path);
        if let (Task::Nmc, Some(cap)) = (bundle.task, cap) {
            let capped: Vec<TaskInstance> = instances
                .iter()
                .map(|i| TaskInstance {
                    label: cap_label(i.label, cap),
                    ..i.clone()
                })
                .collect();
            let path = dir.join(capped_file_name(bundle.task, split, cap));
            write_jsonl(&path, &capped)?;
            written.push(path);
        }
    }
    Ok(written)
}
