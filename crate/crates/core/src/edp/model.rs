//! Generative null models `M_I`: informative events replay the original
//! sequence, random events fire independently at every timestamp with their
//! empirical probability.

use crate::automaton::EpisodeAutomaton;
use crate::edp::partition::DualPartition;
use crate::episode::Episode;
use crate::error::{EdpError, Result};
use crate::sequence::{EventId, EventSequence};

/// Longest episode the exact engine accepts (state sets are dense bitmaps).
pub const MAX_EPISODE_LEN: usize = 20;
/// Largest episode alphabet accepted (event sets are bitmasks over it).
pub const MAX_EPISODE_ALPHABET: usize = 16;

/// Precomputed per-episode view of a sequence, shared by all partitions.
#[derive(Debug, Clone)]
pub struct EpisodeContext<'s> {
    seq: &'s EventSequence,
    automaton: EpisodeAutomaton,
    omega: Vec<EventId>,
    present: Vec<u32>,
    p_ind: Vec<f64>,
}

impl<'s> EpisodeContext<'s> {
    pub fn new(seq: &'s EventSequence, episode: &Episode) -> Result<Self> {
        if let Some(bad) = episode
            .events()
            .iter()
            .find(|e| !seq.alphabet().contains(**e))
        {
            return Err(EdpError::UnknownEvent(bad.0));
        }
        let omega = episode.distinct_events();
        if episode.len() > MAX_EPISODE_LEN || omega.len() > MAX_EPISODE_ALPHABET {
            return Err(EdpError::InvalidParameter(format!(
                "episode too large for exact evaluation (length {}, {} distinct events)",
                episode.len(),
                omega.len()
            )));
        }
        let present = seq
            .iter()
            .map(|(_, slot)| {
                omega
                    .iter()
                    .enumerate()
                    .filter(|(_, e)| slot.binary_search(e).is_ok())
                    .fold(0u32, |m, (i, _)| m | (1 << i))
            })
            .collect::<Vec<_>>();
        let mut counts = vec![0usize; omega.len()];
        for mask in &present {
            for (i, c) in counts.iter_mut().enumerate() {
                if mask & (1 << i) != 0 {
                    *c += 1;
                }
            }
        }
        let n = seq.len() as f64;
        let p_ind = counts.into_iter().map(|c| c as f64 / n).collect();
        Ok(Self {
            seq,
            automaton: EpisodeAutomaton::new(episode.clone()),
            omega,
            present,
            p_ind,
        })
    }

    pub fn sequence(&self) -> &'s EventSequence {
        self.seq
    }

    pub fn episode(&self) -> &Episode {
        self.automaton.episode()
    }

    pub fn automaton(&self) -> &EpisodeAutomaton {
        &self.automaton
    }

    /// Distinct events `Ω_α`, first appearance order.
    pub fn omega(&self) -> &[EventId] {
        &self.omega
    }

    pub fn len(&self) -> usize {
        self.present.len()
    }

    pub fn is_empty(&self) -> bool {
        self.present.is_empty()
    }

    pub fn position(&self, e: EventId) -> Option<usize> {
        self.omega.iter().position(|&x| x == e)
    }

    /// Bitmask over `Ω_α` of the events present at timestamp `t` in the original.
    #[inline]
    pub fn present_mask(&self, t: usize) -> u32 {
        self.present[t - 1]
    }

    /// `p_ind` of `omega[i]`.
    pub fn p_ind_at(&self, i: usize) -> f64 {
        self.p_ind[i]
    }

    pub fn model(&self, partition: DualPartition) -> Result<GenerativeModel<'_, 's>> {
        GenerativeModel::new(self, partition)
    }
}

/// `M_I` for one partition of one episode.
#[derive(Debug, Clone)]
pub struct GenerativeModel<'c, 's> {
    ctx: &'c EpisodeContext<'s>,
    partition: DualPartition,
}

impl<'c, 's> GenerativeModel<'c, 's> {
    pub fn new(ctx: &'c EpisodeContext<'s>, partition: DualPartition) -> Result<Self> {
        if partition.omega() != ctx.omega() {
            return Err(EdpError::InvalidParameter(
                "partition does not match the episode alphabet".into(),
            ));
        }
        Ok(Self { ctx, partition })
    }

    pub fn context(&self) -> &'c EpisodeContext<'s> {
        self.ctx
    }

    pub fn partition(&self) -> &DualPartition {
        &self.partition
    }

    /// Informative events present at `t`, as a mask over `Ω_α`.
    #[inline]
    pub fn fixed_mask(&self, t: usize) -> u32 {
        self.ctx.present_mask(t) & self.partition.informative_mask()
    }

    fn check_t(&self, t: usize) -> Result<()> {
        if t == 0 || t > self.ctx.len() {
            return Err(EdpError::InvalidParameter(format!(
                "timestamp {t} outside 1..={}",
                self.ctx.len()
            )));
        }
        Ok(())
    }

    fn position(&self, e: EventId) -> Result<usize> {
        self.ctx
            .position(e)
            .ok_or_else(|| EdpError::NotInEpisode(self.ctx.sequence().label(e).to_string()))
    }

    fn prob_at(&self, i: usize, t: usize) -> f64 {
        let bit = 1u32 << i;
        if self.partition.informative_mask() & bit != 0 {
            if self.ctx.present_mask(t) & bit != 0 {
                1.0
            } else {
                0.0
            }
        } else {
            self.ctx.p_ind_at(i)
        }
    }

    /// `P(e | M, t)`.
    pub fn event_gen_prob(&self, e: EventId, t: usize) -> Result<f64> {
        self.check_t(t)?;
        Ok(self.prob_at(self.position(e)?, t))
    }

    /// `P(E' | M, t)` for an event set given as a mask over `Ω_α`.
    pub fn eventset_mask_prob(&self, mask: u32, t: usize) -> f64 {
        (0..self.ctx.omega().len())
            .map(|i| {
                let p = self.prob_at(i, t);
                if mask & (1 << i) != 0 {
                    p
                } else {
                    1.0 - p
                }
            })
            .product()
    }

    /// `P(E' | M, t)`; `eset` must be a subset of `Ω_α`.
    pub fn eventset_gen_prob(&self, eset: &[EventId], t: usize) -> Result<f64> {
        self.check_t(t)?;
        let mut mask = 0u32;
        for &e in eset {
            mask |= 1 << self.position(e)?;
        }
        Ok(self.eventset_mask_prob(mask, t))
    }

    /// `P(Ŝ | M, n)`. Events of `candidate` outside `Ω_α` are ignored and labels
    /// are matched against the original sequence.
    pub fn random_sequence_prob(&self, candidate: &EventSequence) -> Result<f64> {
        if candidate.len() != self.ctx.len() {
            return Err(EdpError::InvalidParameter(format!(
                "candidate length {} differs from {}",
                candidate.len(),
                self.ctx.len()
            )));
        }
        let lookup: Vec<Option<usize>> = candidate
            .alphabet()
            .labels()
            .iter()
            .map(|l| {
                self.ctx
                    .sequence()
                    .alphabet()
                    .id(l)
                    .and_then(|e| self.ctx.position(e))
            })
            .collect();
        Ok(candidate
            .iter()
            .map(|(t, slot)| {
                let mask = slot
                    .iter()
                    .filter_map(|e| lookup[e.index()])
                    .fold(0u32, |m, i| m | (1 << i));
                self.eventset_mask_prob(mask, t)
            })
            .product())
    }

    /// Subsets of the random events with their (time-independent) probability.
    /// Zero-probability subsets are dropped.
    pub fn random_subsets(&self) -> Vec<(u32, f64)> {
        let random: Vec<usize> = (0..self.ctx.omega().len())
            .filter(|i| self.partition.random_mask() & (1 << i) != 0)
            .collect();
        let mut out = Vec::with_capacity(1 << random.len());
        for bits in 0u32..(1 << random.len()) {
            let mut mask = 0u32;
            let mut p = 1.0;
            for (j, &i) in random.iter().enumerate() {
                let q = self.ctx.p_ind_at(i);
                if bits & (1 << j) != 0 {
                    mask |= 1 << i;
                    p *= q;
                } else {
                    p *= 1.0 - q;
                }
            }
            if p > 0.0 {
                out.push((mask, p));
            }
        }
        out
    }
}
