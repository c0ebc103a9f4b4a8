//! Deterministic train/dev/test splits.

use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use serde::{Deserialize, Serialize};

use super::{Task, TaskInstance};
use crate::error::{Error, Result};
use crate::rng;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Split {
    Train,
    Dev,
    Test,
}

impl Split {
    pub const ALL: [Split; 3] = [Split::Train, Split::Dev, Split::Test];

    pub fn name(self) -> &'static str {
        match self {
            Split::Train => "train",
            Split::Dev => "dev",
            Split::Test => "test",
        }
    }
}

impl fmt::Display for Split {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SplitRatios {
    pub train: f64,
    pub dev: f64,
    pub test: f64,
}

impl Default for SplitRatios {
    fn default() -> Self {
        SplitRatios {
            train: 0.8,
            dev: 0.1,
            test: 0.1,
        }
    }
}

impl SplitRatios {
    pub fn new(train: f64, dev: f64, test: f64) -> Result<Self> {
        let r = SplitRatios { train, dev, test };
        r.validate()?;
        Ok(r)
    }

    pub fn validate(&self) -> Result<()> {
        let parts = [self.train, self.dev, self.test];
        if parts.iter().any(|p| !p.is_finite() || *p < 0.0) {
            return Err(Error::Config(format!(
                "split ratios must be non-negative: {self}"
            )));
        }
        if (parts.iter().sum::<f64>() - 1.0).abs() > 1e-6 {
            return Err(Error::Config(format!("split ratios must sum to 1: {self}")));
        }
        Ok(())
    }

    /// Split sizes for `n` items: train and dev rounded, test takes the rest.
    /// Train and dev sizes are rounded down; test takes the remainder.
    pub fn sizes(&self, n: usize) -> (usize, usize, usize) {
        let part = |r: f64| ((n as f64) * r + 1e-9).floor() as usize;
        let train = part(self.train).min(n);
        let dev = part(self.dev).min(n - train);
        (train, dev, n - train - dev)
    }
}

impl fmt::Display for SplitRatios {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{},{}", self.train, self.dev, self.test)
    }
}

impl FromStr for SplitRatios {
    type Err = Error;

    /// `train,dev,test`, e.g. `0.8,0.1,0.1`.
    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<f64> = s
            .split([',', '/'])
            .map(|p| p.trim().parse::<f64>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|_| Error::Config(format!("bad split ratios {s:?}")))?;
        match parts.as_slice() {
            [a, b, c] => SplitRatios::new(*a, *b, *c),
            _ => Err(Error::Config(format!(
                "split ratios need three values: {s:?}"
            ))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Provenance {
    pub translation_id: String,
    pub seed: u64,
    pub generator_version: String,
}

impl Provenance {
    pub fn new(translation_id: &str, seed: u64) -> Self {
        Provenance {
            translation_id: translation_id.to_string(),
            seed,
            generator_version: env!("CARGO_PKG_VERSION").to_string(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DatasetBundle {
    pub task: Task,
    pub train: Vec<TaskInstance>,
    pub dev: Vec<TaskInstance>,
    pub test: Vec<TaskInstance>,
    pub provenance: Provenance,
}

impl DatasetBundle {
    pub fn split(&self, split: Split) -> &[TaskInstance] {
        match split {
            Split::Train => &self.train,
            Split::Dev => &self.dev,
            Split::Test => &self.test,
        }
    }

    pub fn len(&self) -> usize {
        self.train.len() + self.dev.len() + self.test.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// Sorts instances by identity, shuffles them with the seed's splitting
/// stream and cuts contiguous train/dev/test blocks. Pair tasks are split
/// by instance.
pub fn split_dataset(
    mut instances: Vec<TaskInstance>,
    ratios: SplitRatios,
    seed: u64,
    provenance: Provenance,
) -> Result<DatasetBundle> {
    ratios.validate()?;
    let task = instances
        .first()
        .map(|i| i.task)
        .ok_or_else(|| Error::Dataset("cannot split an empty instance list".into()))?;
    if let Some(other) = instances.iter().find(|i| i.task != task) {
        return Err(Error::Dataset(format!(
            "mixed tasks in one dataset: {task} and {}",
            other.task
        )));
    }
    instances.sort_by(|a, b| a.identity().cmp(&b.identity()));
    let mut rng = rng::substream(seed, &format!("{}/{}", rng::SPLITTING, task.file_stem()));
    instances.shuffle(&mut rng);

    let (n_train, n_dev, _) = ratios.sizes(instances.len());
    let test = instances.split_off(n_train + n_dev);
    let dev = instances.split_off(n_train);
    Ok(DatasetBundle {
        task,
        train: instances,
        dev,
        test,
        provenance,
    })
}
