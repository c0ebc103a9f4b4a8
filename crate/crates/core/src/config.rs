//! Run configuration.
//!
//! Settings come from three layers, later ones winning: a plain-text
//! `key = value` file, `VERSEPROJ_*` environment variables (paths only),
//! and command-line flags.

use std::path::{Path, PathBuf};

use crate::align::VerseStrategy;
use crate::error::{Error, Result};
use crate::scripture::DEFAULT_MIN_OVERLAP;
use crate::tasks::{SplitRatios, Task};

/// Environment variables that may override path settings.
pub const ENV_PATHS: [(&str, &str); 5] = [
    ("VERSEPROJ_SOURCE_DIR", "source_dir"),
    ("VERSEPROJ_SIDECAR", "sidecar"),
    ("VERSEPROJ_TARGET", "target"),
    ("VERSEPROJ_OUT_DIR", "out_dir"),
    ("VERSEPROJ_BOOK_CODES", "book_codes"),
];

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub source_dir: PathBuf,
    pub sentence_verse_sidecar: Option<PathBuf>,
    pub verse_strategy: VerseStrategy,
    pub target_tsv: PathBuf,
    pub out_dir: PathBuf,
    pub seed: u64,
    pub split_ratios: SplitRatios,
    pub cap: Option<u32>,
    pub min_overlap: usize,
    pub tasks: Vec<Task>,
    pub book_codes: Option<PathBuf>,
    /// Generate even when coverage is below `min_overlap`.
    pub allow_low_coverage: bool,
    pub numbered_args_only: bool,
}

/// One layer of optional settings.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct ConfigLayer {
    pub source_dir: Option<PathBuf>,
    pub sidecar: Option<PathBuf>,
    pub verse_strategy: Option<VerseStrategy>,
    pub target: Option<PathBuf>,
    pub out_dir: Option<PathBuf>,
    pub seed: Option<u64>,
    pub split_ratios: Option<SplitRatios>,
    pub cap: Option<u32>,
    pub min_overlap: Option<usize>,
    pub tasks: Option<Vec<Task>>,
    pub book_codes: Option<PathBuf>,
    pub allow_low_coverage: Option<bool>,
    pub numbered_args_only: Option<bool>,
}

fn parse_bool(key: &str, v: &str) -> Result<bool> {
    match v.to_ascii_lowercase().as_str() {
        "true" | "yes" | "1" | "on" => Ok(true),
        "false" | "no" | "0" | "off" => Ok(false),
        _ => Err(Error::Config(format!(
            "{key}: expected a boolean, got {v:?}"
        ))),
    }
}

fn parse_num<T: std::str::FromStr>(key: &str, v: &str) -> Result<T> {
    v.parse()
        .map_err(|_| Error::Config(format!("{key}: expected a number, got {v:?}")))
}

pub fn parse_strategy(v: &str) -> Result<VerseStrategy> {
    match v {
        "sidecar" => Ok(VerseStrategy::Sidecar),
        "leading-number" | "leading_number" => Ok(VerseStrategy::LeadingNumber),
        _ => Err(Error::Config(format!(
            "verse_strategy: expected sidecar or leading-number, got {v:?}"
        ))),
    }
}

pub fn parse_tasks(v: &str) -> Result<Vec<Task>> {
    if v.trim().eq_ignore_ascii_case("all") {
        return Ok(Task::ALL.to_vec());
    }
    let mut tasks: Vec<Task> = v
        .split(',')
        .filter(|s| !s.trim().is_empty())
        .map(str::parse)
        .collect::<Result<_>>()?;
    tasks.sort();
    tasks.dedup();
    if tasks.is_empty() {
        return Err(Error::Config("tasks: at least one task is required".into()));
    }
    Ok(tasks)
}

impl ConfigLayer {
    /// Parses `key = value` lines; `#` starts a comment line. Relative paths
    /// are resolved against `base`.
    pub fn from_kv(text: &str, base: &Path) -> Result<Self> {
        let mut layer = ConfigLayer::default();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| {
                Error::Config(format!("config line {}: expected key = value", i + 1))
            })?;
            layer
                .set(key.trim(), value.trim(), Some(base))
                .map_err(|e| Error::Config(format!("config line {}: {e}", i + 1)))?;
        }
        Ok(layer)
    }

    pub fn from_kv_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        let base = path.parent().unwrap_or(Path::new("."));
        Self::from_kv(&text, base).map_err(|e| e.in_file(path))
    }

    /// Path overrides from `VERSEPROJ_*` variables, read through `get`.
    pub fn from_env(get: impl Fn(&str) -> Option<String>) -> Self {
        let mut layer = ConfigLayer::default();
        for (var, key) in ENV_PATHS {
            if let Some(v) = get(var).filter(|v| !v.is_empty()) {
                // path keys never fail to parse
                layer
                    .set(key, &v, None)
                    .expect("path keys accept any value");
            }
        }
        layer
    }

    pub fn set(&mut self, key: &str, value: &str, base: Option<&Path>) -> Result<()> {
        let path = |v: &str| {
            let p = PathBuf::from(v);
            match base {
                Some(b) if p.is_relative() => b.join(p),
                _ => p,
            }
        };
        match key {
            "source_dir" => self.source_dir = Some(path(value)),
            "sidecar" | "sentence_verse_sidecar" => self.sidecar = Some(path(value)),
            "target" | "target_tsv" => self.target = Some(path(value)),
            "out_dir" => self.out_dir = Some(path(value)),
            "book_codes" => self.book_codes = Some(path(value)),
            "verse_strategy" => self.verse_strategy = Some(parse_strategy(value)?),
            "seed" => self.seed = Some(parse_num(key, value)?),
            "split" | "split_ratios" => self.split_ratios = Some(value.parse()?),
            "cap" => {
                self.cap = match value {
                    "" | "none" => None,
                    v => Some(parse_num(key, v)?),
                }
            }
            "min_overlap" => self.min_overlap = Some(parse_num(key, value)?),
            "tasks" => self.tasks = Some(parse_tasks(value)?),
            "allow_low_coverage" => self.allow_low_coverage = Some(parse_bool(key, value)?),
            "numbered_args_only" => self.numbered_args_only = Some(parse_bool(key, value)?),
            _ => return Err(Error::Config(format!("unknown key {key:?}"))),
        }
        Ok(())
    }

    /// Overlays `other` on top of `self`.
    pub fn merge(mut self, other: ConfigLayer) -> Self {
        macro_rules! take {
            ($($f:ident),*) => { $( if other.$f.is_some() { self.$f = other.$f; } )* };
        }
        take!(
            source_dir,
            sidecar,
            verse_strategy,
            target,
            out_dir,
            seed,
            split_ratios,
            cap,
            min_overlap,
            tasks,
            book_codes,
            allow_low_coverage,
            numbered_args_only
        );
        self
    }

    pub fn resolve(self) -> Result<RunConfig> {
        let missing = |k: &str| Error::Config(format!("{k} is required"));
        let verse_strategy = self.verse_strategy.unwrap_or_default();
        if verse_strategy == VerseStrategy::Sidecar && self.sidecar.is_none() {
            return Err(missing("sidecar (required by the sidecar verse strategy)"));
        }
        let split_ratios = self.split_ratios.unwrap_or_default();
        split_ratios.validate()?;
        Ok(RunConfig {
            source_dir: self.source_dir.ok_or_else(|| missing("source_dir"))?,
            sentence_verse_sidecar: self.sidecar,
            verse_strategy,
            target_tsv: self.target.ok_or_else(|| missing("target"))?,
            out_dir: self.out_dir.ok_or_else(|| missing("out_dir"))?,
            seed: self.seed.ok_or_else(|| missing("seed"))?,
            split_ratios,
            cap: self.cap,
            min_overlap: self.min_overlap.unwrap_or(DEFAULT_MIN_OVERLAP),
            tasks: self.tasks.unwrap_or_else(|| Task::ALL.to_vec()),
            book_codes: self.book_codes,
            allow_low_coverage: self.allow_low_coverage.unwrap_or(false),
            numbered_args_only: self.numbered_args_only.unwrap_or(false),
        })
    }
}
