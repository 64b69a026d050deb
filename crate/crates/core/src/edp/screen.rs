//! `ExpSup`, Lift and free-rider screening over a candidate episode set.

use std::cmp::Ordering;

use crate::automaton::support;
use crate::edp::exact::expected_support_exact;
use crate::edp::model::EpisodeContext;
use crate::edp::partition::{enumerate_partitions, DualPartition};
use crate::episode::{Episode, EpisodeEntry};
use crate::error::{EdpError, Result};
use crate::par;
use crate::sequence::EventSequence;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ScreenMode {
    /// Evaluate every partition.
    #[default]
    Full,
    /// Stop at the first partition that already pushes Lift below the threshold.
    EarlyExit,
}

/// Which null models the maximum in `ExpSup` ranges over.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum NullModel {
    /// All proper dual partitions.
    #[default]
    Edp,
    /// Only the all-random partition.
    Ind,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScreenConfig {
    pub min_lift: f64,
    pub mode: ScreenMode,
    pub null_model: NullModel,
    /// Evaluate the partitions of one episode concurrently (implies full mode).
    pub partition_parallel: bool,
    pub workers: usize,
    /// Window bound used to count support for entries that carry none.
    pub max_window: usize,
}

impl Default for ScreenConfig {
    fn default() -> Self {
        Self {
            min_lift: 1.0,
            mode: ScreenMode::Full,
            null_model: NullModel::Edp,
            partition_parallel: false,
            workers: 1,
            max_window: 12,
        }
    }
}

impl ScreenConfig {
    fn validate(&self) -> Result<()> {
        if !(self.min_lift.is_finite() && self.min_lift > 0.0) {
            return Err(EdpError::InvalidParameter(format!(
                "min_lift must be positive, got {}",
                self.min_lift
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PartitionResult {
    pub partition: DualPartition,
    pub expectation: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScreeningRecord {
    pub episode: Episode,
    pub labels: Vec<String>,
    pub observed_support: usize,
    pub exp_sup: f64,
    pub lift: f64,
    pub kept: bool,
    pub best_partition: DualPartition,
    /// Set when early exit stopped the enumeration.
    pub witness_partition: Option<DualPartition>,
    pub fully_enumerated: bool,
    /// Expectations of every partition evaluated, in evaluation order.
    pub evaluated: Vec<PartitionResult>,
}

impl ScreeningRecord {
    pub fn arrow(&self) -> String {
        self.labels.join(crate::episode::ARROW)
    }
}

/// `sp / ExpSup`, with `0` for zero support and `+inf` for a zero expectation.
pub fn lift(observed_support: usize, exp_sup: f64) -> f64 {
    if observed_support == 0 {
        0.0
    } else if exp_sup <= 0.0 {
        f64::INFINITY
    } else {
        observed_support as f64 / exp_sup
    }
}

/// Candidate null models for an episode, in evaluation order.
pub fn candidate_partitions(ctx: &EpisodeContext<'_>, null_model: NullModel) -> Vec<DualPartition> {
    match null_model {
        NullModel::Edp => enumerate_partitions(ctx.omega()),
        NullModel::Ind => vec![DualPartition::independent(ctx.omega().to_vec())],
    }
}

fn evaluate(ctx: &EpisodeContext<'_>, partition: DualPartition) -> PartitionResult {
    let model = ctx
        .model(partition)
        .expect("partition built from the same context");
    let expectation = expected_support_exact(&model);
    PartitionResult {
        partition: model.partition().clone(),
        expectation,
    }
}

/// Computes `ExpSup`, Lift and the keep/screen verdict for one episode.
pub fn exp_sup(
    ctx: &EpisodeContext<'_>,
    observed_support: usize,
    cfg: &ScreenConfig,
) -> Result<ScreeningRecord> {
    cfg.validate()?;
    let partitions = candidate_partitions(ctx, cfg.null_model);
    let total = partitions.len();
    let early_exit = cfg.mode == ScreenMode::EarlyExit && !cfg.partition_parallel;

    let mut evaluated = Vec::with_capacity(total);
    let mut witness = None;
    if early_exit {
        for p in partitions {
            let r = evaluate(ctx, p);
            let explains = (observed_support as f64) < cfg.min_lift * r.expectation;
            let partition = r.partition.clone();
            evaluated.push(r);
            if explains {
                witness = Some(partition);
                break;
            }
        }
    } else {
        let parallel = cfg.partition_parallel && cfg.workers > 1;
        evaluated = par::map_nested(&partitions, parallel, |p| evaluate(ctx, p.clone()));
    }

    // first maximum in evaluation order
    let best = evaluated
        .iter()
        .fold(None::<&PartitionResult>, |acc, r| match acc {
            Some(b) if b.expectation >= r.expectation => Some(b),
            _ => Some(r),
        })
        .expect("at least one partition");
    let exp_sup = best.expectation;
    let lift = lift(observed_support, exp_sup);
    let kept = witness.is_none() && lift >= cfg.min_lift;
    let episode = ctx.episode().clone();
    Ok(ScreeningRecord {
        labels: episode.labels(ctx.sequence().alphabet()),
        episode,
        observed_support,
        exp_sup,
        lift,
        kept,
        best_partition: best.partition.clone(),
        witness_partition: witness,
        fully_enumerated: evaluated.len() == total,
        evaluated,
    })
}

/// Ranking order: Lift descending, then support descending, then labels.
pub fn rank_order(a: &ScreeningRecord, b: &ScreeningRecord) -> Ordering {
    b.lift
        .total_cmp(&a.lift)
        .then_with(|| b.observed_support.cmp(&a.observed_support))
        .then_with(|| a.labels.cmp(&b.labels))
}

/// Screens every candidate episode. Kept records come first in rank order,
/// followed by the screened ones in the same order.
pub fn screen(
    seq: &EventSequence,
    candidates: &[EpisodeEntry],
    cfg: &ScreenConfig,
) -> Result<Vec<ScreeningRecord>> {
    cfg.validate()?;
    let resolved = candidates
        .iter()
        .map(|entry| {
            let episode = Episode::from_labels(&entry.labels, seq.alphabet())?;
            let sp = entry
                .support
                .unwrap_or_else(|| support(seq, &episode, cfg.max_window));
            Ok((episode, sp))
        })
        .collect::<Result<Vec<_>>>()?;

    let mut records = par::map_ordered(&resolved, cfg.workers, |(episode, sp)| {
        let ctx = EpisodeContext::new(seq, episode)?;
        exp_sup(&ctx, *sp, cfg)
    })
    .into_iter()
    .collect::<Result<Vec<_>>>()?;

    records.sort_by(|a, b| b.kept.cmp(&a.kept).then_with(|| rank_order(a, b)));
    Ok(records)
}

/// Kept records only, in rank order.
pub fn kept_ranking(records: &[ScreeningRecord]) -> Vec<&ScreeningRecord> {
    let mut kept: Vec<&ScreeningRecord> = records.iter().filter(|r| r.kept).collect();
    kept.sort_by(|a, b| rank_order(a, b));
    kept
}
