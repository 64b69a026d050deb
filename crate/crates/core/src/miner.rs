//! Depth-first prefix-extension mining of frequent serial episodes under
//! minimal-occurrence support.

use std::cmp::Ordering;

use crate::automaton::support;
use crate::episode::{Episode, EpisodeEntry};
use crate::error::{EdpError, Result};
use crate::par;
use crate::sequence::{EventId, EventSequence};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MinerConfig {
    pub min_sup: usize,
    /// Maximal window size, `t_e - t_s < max_window`.
    pub max_window: usize,
    pub max_len: usize,
    pub workers: usize,
}

impl Default for MinerConfig {
    fn default() -> Self {
        Self {
            min_sup: 200,
            max_window: 12,
            max_len: 6,
            workers: 1,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FrequentEpisode {
    pub episode: Episode,
    pub labels: Vec<String>,
    pub support: usize,
}

impl FrequentEpisode {
    pub fn entry(&self) -> EpisodeEntry {
        EpisodeEntry::new(self.labels.iter().cloned(), Some(self.support))
    }
}

/// Mines every episode with support `>= min_sup`, length `2..=max_len` and at
/// least two distinct events. Output is sorted by label sequence.
///
/// A node is extended only while its own support reaches `min_sup`; appending
/// an event never increases minimal-occurrence support.
pub fn mine_frequent(seq: &EventSequence, cfg: &MinerConfig) -> Result<Vec<FrequentEpisode>> {
    if cfg.min_sup == 0 {
        return Err(EdpError::InvalidParameter(
            "min_sup must be at least 1".into(),
        ));
    }
    if cfg.max_len < 2 {
        return Err(EdpError::InvalidParameter(
            "max_len must be at least 2".into(),
        ));
    }
    if cfg.max_window == 0 {
        return Err(EdpError::InvalidParameter(
            "max_window must be at least 1".into(),
        ));
    }

    let supports = seq.event_supports();
    let mut seeds: Vec<EventId> = seq
        .alphabet()
        .ids()
        .filter(|e| supports[e.index()] >= cfg.min_sup)
        .collect();
    seeds.sort_by(|a, b| seq.label(*a).cmp(seq.label(*b)));

    let subtrees = par::map_ordered(&seeds, cfg.workers, |&seed| {
        let mut found = Vec::new();
        let mut prefix = vec![seed];
        extend(seq, cfg, &seeds, &mut prefix, &mut found);
        found
    });

    let mut out: Vec<FrequentEpisode> = subtrees
        .into_iter()
        .flatten()
        .map(|(events, support)| {
            let episode = Episode::new(events).expect("non-empty");
            FrequentEpisode {
                labels: episode.labels(seq.alphabet()),
                episode,
                support,
            }
        })
        .collect();
    out.sort_by(|a, b| a.labels.cmp(&b.labels));
    Ok(out)
}

fn extend(
    seq: &EventSequence,
    cfg: &MinerConfig,
    extensions: &[EventId],
    prefix: &mut Vec<EventId>,
    found: &mut Vec<(Vec<EventId>, usize)>,
) {
    if prefix.len() >= cfg.max_len {
        return;
    }
    for &e in extensions {
        prefix.push(e);
        let episode = Episode::new(prefix.clone()).expect("non-empty");
        let sp = support(seq, &episode, cfg.max_window);
        if sp >= cfg.min_sup {
            if prefix.iter().any(|&x| x != prefix[0]) {
                found.push((prefix.clone(), sp));
            }
            extend(seq, cfg, extensions, prefix, found);
        }
        prefix.pop();
    }
}

fn by_support(a: &FrequentEpisode, b: &FrequentEpisode) -> Ordering {
    b.support
        .cmp(&a.support)
        .then_with(|| a.labels.cmp(&b.labels))
}

/// The `k` most frequent episodes, support descending, ties by label sequence.
pub fn top_k_by_support(episodes: &[FrequentEpisode], k: usize) -> Vec<FrequentEpisode> {
    let mut sorted = episodes.to_vec();
    sorted.sort_by(by_support);
    sorted.truncate(k);
    sorted
}
