//! Agreement between two label vectors and seeded random baselines.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rng;
use crate::tasks::Task;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AgreementReport {
    pub n: usize,
    pub accuracy: f64,
    /// NMC only.
    pub mse: Option<f64>,
    /// PNS only; two empty positive sets count as full agreement.
    pub jaccard: Option<f64>,
}

/// Accuracy for every task, plus MSE for NMC and Jaccard over positives
/// for PNS.
pub fn agreement(a: &[u32], b: &[u32], task: Task) -> Result<AgreementReport> {
    if a.len() != b.len() {
        return Err(Error::Dataset(format!(
            "label vectors differ in length: {} vs {}",
            a.len(),
            b.len()
        )));
    }
    let n = a.len();
    let mean = |total: f64| if n == 0 { 0.0 } else { total / n as f64 };
    let same = a.iter().zip(b).filter(|(x, y)| x == y).count();
    let accuracy = if n == 0 { 1.0 } else { same as f64 / n as f64 };
    let mse = (task == Task::Nmc).then(|| {
        mean(
            a.iter()
                .zip(b)
                .map(|(&x, &y)| (f64::from(x) - f64::from(y)).powi(2))
                .sum(),
        )
    });
    let jaccard = (task == Task::Pns).then(|| {
        let both = a.iter().zip(b).filter(|(&x, &y)| x == 1 && y == 1).count();
        let either = a.iter().zip(b).filter(|(&x, &y)| x == 1 || y == 1).count();
        if either == 0 {
            1.0
        } else {
            both as f64 / either as f64
        }
    });
    Ok(AgreementReport {
        n,
        accuracy,
        mse,
        jaccard,
    })
}

/// Number of distinct labels used for random baselines.
pub fn label_space(task: Task) -> u32 {
    match task {
        Task::Nmc => 4,
        Task::Sm => 3,
        Task::Pns | Task::Ss | Task::Sac => 2,
    }
}

/// `n` uniform labels over the task's label space.
pub fn random_annotations(task: Task, n: usize, seed: u64) -> Vec<u32> {
    let mut rng = rng::substream(
        seed,
        &format!("{}/{}", rng::RANDOM_BASELINE, task.file_stem()),
    );
    let k = label_space(task);
    (0..n).map(|_| rng.gen_range(0..k)).collect()
}
