//! End-to-end drivers behind the command-line subcommands.

use std::collections::{BTreeMap, BTreeSet};
use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::align::{
    assign_verses, build_alignment, SentenceVerseMap, Sidecar, VerseExtractor, VerseStatus,
};
use crate::config::RunConfig;
use crate::error::{Error, Result};
use crate::onf::{self, OnfDocument};
use crate::par::Execution;
use crate::scripture::{coverage_check, parse_bible_tsv, Bible, BookCodes, Coverage, VerseLabel};
use crate::tasks::export::{capped_file_name, split_file_name};
use crate::tasks::{
    self, cap_label, export, gen_sac, gen_single, gen_ss, project_verses, read_jsonl,
    split_dataset, DatasetBundle, LabelConfig, Provenance, Split, Task, TaskInstance,
};
use crate::udcheck::{self, agreement, random_annotations, AgreementReport};

pub const STATS_FILE: &str = "stats.json";

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::io(path, e))
}

pub fn load_book_codes(path: Option<&Path>) -> Result<BookCodes> {
    match path {
        Some(p) => BookCodes::from_tsv(&read(p)?).map_err(|e| e.in_file(p)),
        None => Ok(BookCodes::builtin()),
    }
}

/// Translation id: the target file's stem.
pub fn translation_id(path: &Path) -> String {
    path.file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "target".into())
}

pub fn load_bible(path: &Path, books: &BookCodes) -> Result<Bible> {
    parse_bible_tsv(&read(path)?, &translation_id(path), books).map_err(|e| e.in_file(path))
}

/// Maps every sentence of the corpus to its verses.
pub fn map_sentences(
    docs: &[OnfDocument],
    cfg: &RunConfig,
    books: &BookCodes,
) -> Result<SentenceVerseMap> {
    let sidecar = match &cfg.sentence_verse_sidecar {
        Some(p) => Some(Sidecar::parse(&read(p)?, books).map_err(|e| e.in_file(p))?),
        None => None,
    };
    let extractor = VerseExtractor {
        strategy: cfg.verse_strategy,
        sidecar: sidecar.as_ref(),
        books,
    };
    let mut svm = SentenceVerseMap::default();
    for doc in docs {
        svm.extend(assign_verses(doc, &extractor)?);
    }
    Ok(svm)
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SplitStats {
    pub count: usize,
    pub labels: BTreeMap<u32, usize>,
}

impl SplitStats {
    pub fn of(instances: &[TaskInstance]) -> Self {
        let mut labels = BTreeMap::new();
        for i in instances {
            *labels.entry(i.label).or_insert(0) += 1;
        }
        SplitStats {
            count: instances.len(),
            labels,
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct TaskStats {
    pub total: usize,
    pub splits: BTreeMap<Split, SplitStats>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Stats {
    pub provenance: Provenance,
    pub source_documents: usize,
    pub source_sentences: usize,
    pub coverage: Coverage,
    pub target_verses: usize,
    pub target_skipped_empty: usize,
    pub verse_status: BTreeMap<VerseStatus, usize>,
    pub tasks: BTreeMap<Task, TaskStats>,
}

/// Runs the full pipeline and writes every requested dataset plus
/// `stats.json` into `cfg.out_dir`. Output is staged in a sibling directory
/// and moved into place only when everything was written.
pub fn run_generate(cfg: &RunConfig) -> Result<Stats> {
    run_generate_with(cfg, Execution::default())
}

pub fn run_generate_with(cfg: &RunConfig, exec: Execution) -> Result<Stats> {
    cfg.split_ratios.validate()?;
    let books = load_book_codes(cfg.book_codes.as_deref())?;
    let docs = onf::load_corpus(&cfg.source_dir, exec)?;
    let svm = map_sentences(&docs, cfg, &books)?;
    let target = load_bible(&cfg.target_tsv, &books)?;

    let coverage = coverage_check(&target, &svm.reference_verses(), cfg.min_overlap);
    if !coverage.accepted && !cfg.allow_low_coverage {
        return Err(Error::Coverage {
            overlap: coverage.overlap,
            minimum: cfg.min_overlap,
        });
    }

    let table = build_alignment(&svm, &BTreeSet::new(), &target);
    let verses = project_verses(&docs, &table, &target)?;
    let label_cfg = LabelConfig {
        numbered_args_only: cfg.numbered_args_only,
        ..LabelConfig::default()
    };
    let provenance = Provenance::new(&target.translation_id, cfg.seed);

    let mut bundles = Vec::new();
    let senses = cfg
        .tasks
        .iter()
        .any(|t| t.is_pair_task())
        .then(|| tasks::sense_corpus(&verses, &label_cfg, exec));
    for &task in &cfg.tasks {
        let instances = match task {
            Task::Nmc | Task::Pns | Task::Sm => gen_single(task, &verses, &label_cfg, exec),
            Task::Ss => gen_ss(senses.as_deref().unwrap(), cfg.seed),
            Task::Sac => gen_sac(senses.as_deref().unwrap(), cfg.seed),
        };
        let bundle = if instances.is_empty() {
            DatasetBundle {
                task,
                train: Vec::new(),
                dev: Vec::new(),
                test: Vec::new(),
                provenance: provenance.clone(),
            }
        } else {
            split_dataset(instances, cfg.split_ratios, cfg.seed, provenance.clone())?
        };
        bundles.push(bundle);
    }

    let stats = Stats {
        provenance,
        source_documents: docs.len(),
        source_sentences: docs.iter().map(|d| d.sentences.len()).sum(),
        coverage,
        target_verses: target.len(),
        target_skipped_empty: target.skipped_empty,
        verse_status: table.status_counts(),
        tasks: bundles
            .iter()
            .map(|b| {
                let splits: BTreeMap<Split, SplitStats> = Split::ALL
                    .iter()
                    .map(|&s| (s, SplitStats::of(b.split(s))))
                    .collect();
                (
                    b.task,
                    TaskStats {
                        total: b.len(),
                        splits,
                    },
                )
            })
            .collect(),
    };

    write_staged(&cfg.out_dir, |dir| {
        for b in &bundles {
            export(b, dir, cfg.cap)?;
        }
        let path = dir.join(STATS_FILE);
        let json = serde_json::to_string_pretty(&stats).map_err(|e| Error::Json {
            path: path.clone(),
            source: e,
        })?;
        fs::write(&path, json + "\n").map_err(|e| Error::io(&path, e))
    })?;
    Ok(stats)
}

fn staging_dir(out_dir: &Path) -> PathBuf {
    let name = out_dir
        .file_name()
        .map(|n| n.to_string_lossy().into_owned())
        .unwrap_or_else(|| "out".into());
    out_dir.with_file_name(format!(".{name}.partial"))
}

/// Runs `write` against a staging directory, then replaces `out_dir` with
/// it. On failure the staging directory is removed and `out_dir` is left
/// untouched.
fn write_staged(out_dir: &Path, write: impl FnOnce(&Path) -> Result<()>) -> Result<()> {
    let stage = staging_dir(out_dir);
    if stage.exists() {
        fs::remove_dir_all(&stage).map_err(|e| Error::io(&stage, e))?;
    }
    fs::create_dir_all(&stage).map_err(|e| Error::io(&stage, e))?;
    let result = write(&stage).and_then(|()| {
        if out_dir.exists() {
            fs::remove_dir_all(out_dir).map_err(|e| Error::io(out_dir, e))?;
        }
        fs::rename(&stage, out_dir).map_err(|e| Error::io(out_dir, e))
    });
    if result.is_err() {
        let _ = fs::remove_dir_all(&stage);
    }
    result
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BaselineReport {
    pub task: Task,
    pub majority_label: u32,
    pub train_size: usize,
    pub test_size: usize,
    pub accuracy: f64,
}

/// Most frequent label; ties go to the smallest label.
pub fn majority_label(labels: impl IntoIterator<Item = u32>) -> Option<u32> {
    let mut counts: BTreeMap<u32, usize> = BTreeMap::new();
    for l in labels {
        *counts.entry(l).or_insert(0) += 1;
    }
    counts
        .into_iter()
        .fold(None, |best: Option<(u32, usize)>, (l, c)| match best {
            Some((_, bc)) if bc >= c => best,
            _ => Some((l, c)),
        })
        .map(|(l, _)| l)
}

/// Majority-label accuracy given train and test labels.
pub fn majority_baseline(train: &[u32], test: &[u32]) -> Result<(u32, f64)> {
    let majority = majority_label(train.iter().copied())
        .ok_or_else(|| Error::Dataset("training split is empty".into()))?;
    if test.is_empty() {
        return Err(Error::Dataset("test split is empty".into()));
    }
    let hits = test.iter().filter(|&&l| l == majority).count();
    Ok((majority, hits as f64 / test.len() as f64))
}

/// Majority baseline from exported files in `dir`. With `cap`, NMC labels
/// are capped (the capped file is used when present).
pub fn run_baseline(dir: &Path, task: Task, cap: Option<u32>) -> Result<BaselineReport> {
    let load = |split: Split| -> Result<Vec<u32>> {
        let capped = cap.filter(|_| task == Task::Nmc);
        let path = match capped {
            Some(c) if dir.join(capped_file_name(task, split, c)).exists() => {
                dir.join(capped_file_name(task, split, c))
            }
            _ => dir.join(split_file_name(task, split)),
        };
        let labels = read_jsonl(&path)?.into_iter().map(|i| i.label);
        Ok(match capped {
            Some(c) => labels.map(|l| cap_label(l, c)).collect(),
            None => labels.collect(),
        })
    };
    let train = load(Split::Train)?;
    let test = load(Split::Test)?;
    let (majority_label, accuracy) = majority_baseline(&train, &test)?;
    Ok(BaselineReport {
        task,
        majority_label,
        train_size: train.len(),
        test_size: test.len(),
        accuracy,
    })
}

/// Verse-keyed labels from a `.jsonl` instance file (single-verse tasks) or
/// a `LABEL<TAB>int` table.
pub fn read_label_file(path: &Path, books: &BookCodes) -> Result<BTreeMap<VerseLabel, u32>> {
    let mut out = BTreeMap::new();
    let mut put = |label: VerseLabel, value: u32| -> Result<()> {
        if out.insert(label, value).is_some() {
            return Err(Error::Dataset(format!("duplicate verse {label}")).in_file(path));
        }
        Ok(())
    };
    if path.extension().is_some_and(|e| e == "jsonl") {
        for inst in read_jsonl(path)? {
            put(inst.verse_1, inst.label)?;
        }
        return Ok(out);
    }
    for (i, raw) in read(path)?.lines().enumerate() {
        let line = raw.trim_end_matches('\r');
        if line.trim().is_empty() || line.starts_with('#') {
            continue;
        }
        let err = |m: String| Error::Dataset(format!("line {}: {m}", i + 1)).in_file(path);
        let (label, value) = line
            .split_once('\t')
            .ok_or_else(|| err("expected VERSE<TAB>label".into()))?;
        let label = books.parse_label(label).map_err(|e| err(e.to_string()))?;
        let value = value
            .trim()
            .parse()
            .map_err(|_| err(format!("bad label {value:?}")))?;
        put(label, value)?;
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CompareRow {
    pub pair: String,
    #[serde(flatten)]
    pub report: AgreementReport,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CompareReport {
    pub task: Task,
    pub n: usize,
    pub seed: u64,
    pub rows: Vec<CompareRow>,
}

/// Compares projected and dependency-derived labels verse by verse, each
/// against a seeded random baseline too. NMC labels are capped at `cap`.
pub fn compare_labels(
    projected: &BTreeMap<VerseLabel, u32>,
    ud: &BTreeMap<VerseLabel, u32>,
    task: Task,
    seed: u64,
    cap: u32,
) -> Result<CompareReport> {
    if !matches!(task, Task::Nmc | Task::Pns) {
        return Err(Error::Config(format!(
            "comparison is defined for NMC and PNS, not {task}"
        )));
    }
    let a: BTreeSet<&VerseLabel> = projected.keys().collect();
    let b: BTreeSet<&VerseLabel> = ud.keys().collect();
    if a != b {
        let diff: Vec<String> = a.symmetric_difference(&b).map(|l| l.to_string()).collect();
        return Err(Error::Dataset(format!(
            "label files cover different verses; symmetric difference ({}): {}",
            diff.len(),
            diff.join(", ")
        )));
    }
    let norm = |m: &BTreeMap<VerseLabel, u32>| -> Vec<u32> {
        m.values()
            .map(|&l| if task == Task::Nmc { l.min(cap) } else { l })
            .collect()
    };
    let p = norm(projected);
    let u = norm(ud);
    let r = random_annotations(task, p.len(), seed);
    Ok(CompareReport {
        task,
        n: p.len(),
        seed,
        rows: vec![
            CompareRow {
                pair: "projected/ud".into(),
                report: agreement(&p, &u, task)?,
            },
            CompareRow {
                pair: "projected/random".into(),
                report: agreement(&p, &r, task)?,
            },
            CompareRow {
                pair: "ud/random".into(),
                report: agreement(&u, &r, task)?,
            },
        ],
    })
}

/// Where dependency-based labels come from.
pub enum UdSource<'a> {
    Labels(&'a Path),
    Conllu {
        conllu: &'a Path,
        verse_sidecar: &'a Path,
    },
}

pub fn run_compare(
    projected: &Path,
    ud: UdSource<'_>,
    task: Task,
    seed: u64,
    cap: u32,
    books: &BookCodes,
) -> Result<CompareReport> {
    let projected = read_label_file(projected, books)?;
    let ud = match ud {
        UdSource::Labels(p) => read_label_file(p, books)?,
        UdSource::Conllu {
            conllu,
            verse_sidecar,
        } => {
            let sentences = udcheck::parse_conllu(&read(conllu)?).map_err(|e| e.in_file(conllu))?;
            let verse_of = udcheck::parse_ordinal_sidecar(&read(verse_sidecar)?, books)
                .map_err(|e| e.in_file(verse_sidecar))?;
            let grouped = udcheck::group_by_verse(sentences, &verse_of);
            udcheck::ud_labels(task, &grouped, cap, Execution::default())?
        }
    };
    compare_labels(&projected, &ud, task, seed, cap)
}

/// Per-task split counts and label histograms of the datasets in `dir`.
pub fn dataset_stats(dir: &Path) -> Result<BTreeMap<Task, TaskStats>> {
    let mut out = BTreeMap::new();
    for task in Task::ALL {
        let mut stats = TaskStats::default();
        let mut found = false;
        for split in Split::ALL {
            let path = dir.join(split_file_name(task, split));
            if !path.exists() {
                continue;
            }
            found = true;
            let s = SplitStats::of(&read_jsonl(&path)?);
            stats.total += s.count;
            stats.splits.insert(split, s);
        }
        if found {
            out.insert(task, stats);
        }
    }
    Ok(out)
}
