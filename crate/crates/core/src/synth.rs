//! Synthetic benchmark with two planted episodes and a high-frequency noise
//! event.
//!
//! The generated sequence has:
//! - `a,b,c` planted at consecutive timestamps `plant_abc` times,
//! - `d,e,f,g` planted `plant_defg` times with positive integer gaps drawn
//!   from a normal distribution, rounded and redrawn until at least 1,
//! - `X` at each timestamp independently with probability `p_noise`,
//! - uniform filler from the 44 remaining letters (see [`FillerMode`]).
//!
//! The ground truth is every subepisode of length >= 2 of the two plants.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};

use crate::episode::{EpisodeEntry, ARROW};
use crate::error::{EdpError, Result};
use crate::sequence::{Alphabet, EventId, EventSequence};

pub const PATTERN_ABC: [&str; 3] = ["a", "b", "c"];
pub const PATTERN_DEFG: [&str; 4] = ["d", "e", "f", "g"];
pub const NOISE_EVENT: &str = "X";

/// Where filler events go.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum FillerMode {
    /// One filler event at every timestamp.
    #[default]
    Every,
    /// One filler event only at timestamps that hold no planted pattern event.
    Unplanted,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SynConfig {
    pub n: usize,
    pub plant_abc: usize,
    pub plant_defg: usize,
    pub gap_mean: f64,
    pub gap_std: f64,
    pub p_noise: f64,
    pub filler: FillerMode,
    pub seed: u64,
}

impl Default for SynConfig {
    fn default() -> Self {
        Self {
            n: 10_000,
            plant_abc: 300,
            plant_defg: 300,
            gap_mean: 2.0,
            gap_std: 2.0,
            p_noise: 0.3,
            filler: FillerMode::Every,
            seed: 0,
        }
    }
}

impl SynConfig {
    fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(EdpError::InvalidParameter(m));
        if self.n == 0 {
            return bad("n must be positive".into());
        }
        if !(0.0..=1.0).contains(&self.p_noise) {
            return bad(format!("p_noise {} outside [0, 1]", self.p_noise));
        }
        if !(self.gap_std.is_finite() && self.gap_std > 0.0 && self.gap_mean.is_finite()) {
            return bad(format!(
                "gap distribution N({}, {}) is invalid",
                self.gap_mean, self.gap_std
            ));
        }
        if self.plant_abc > 0 && self.n < PATTERN_ABC.len() {
            return bad(format!("n = {} cannot hold a planted a->b->c", self.n));
        }
        if self.plant_defg > 0 && self.n < PATTERN_DEFG.len() {
            return bad(format!("n = {} cannot hold a planted d->e->f->g", self.n));
        }
        Ok(())
    }
}

#[derive(Debug, Clone)]
pub struct SynDataset {
    pub sequence: EventSequence,
    pub truth: Vec<EpisodeEntry>,
}

/// The 52 labels `a..z A..Z`.
pub fn syn_alphabet() -> Alphabet {
    let labels = ('a'..='z').chain('A'..='Z').map(|c| c.to_string());
    Alphabet::from_labels(labels).expect("letters are valid labels")
}

pub fn generate_syn(cfg: &SynConfig) -> Result<SynDataset> {
    cfg.validate()?;
    let alphabet = syn_alphabet();
    let id = |l: &str| alphabet.id(l).expect("letter in alphabet");
    let n = cfg.n;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut slots: Vec<Vec<EventId>> = vec![Vec::new(); n];
    let mut planted = vec![false; n];

    let abc: Vec<EventId> = PATTERN_ABC.iter().map(|l| id(l)).collect();
    for _ in 0..cfg.plant_abc {
        let t = rng.random_range(1..=n - 2);
        for (offset, &e) in abc.iter().enumerate() {
            slots[t - 1 + offset].push(e);
            planted[t - 1 + offset] = true;
        }
    }

    let defg: Vec<EventId> = PATTERN_DEFG.iter().map(|l| id(l)).collect();
    let gap_dist = Normal::new(cfg.gap_mean, cfg.gap_std)
        .map_err(|e| EdpError::InvalidParameter(e.to_string()))?;
    for _ in 0..cfg.plant_defg {
        let mut attempts = 0;
        let (gaps, span) = loop {
            let gaps: Vec<usize> = (1..defg.len())
                .map(|_| draw_gap(&gap_dist, &mut rng))
                .collect();
            let span: usize = gaps.iter().sum();
            if span < n {
                break (gaps, span);
            }
            attempts += 1;
            if attempts > 10_000 {
                return Err(EdpError::InvalidParameter(format!(
                    "n = {n} too small for the d->e->f->g gap distribution"
                )));
            }
        };
        // uniform over the placements that fit
        let mut t = rng.random_range(1..=n - span);
        for (i, &e) in defg.iter().enumerate() {
            if i > 0 {
                t += gaps[i - 1];
            }
            slots[t - 1].push(e);
            planted[t - 1] = true;
        }
    }

    let noise = id(NOISE_EVENT);
    for slot in slots.iter_mut() {
        if rng.random::<f64>() < cfg.p_noise {
            slot.push(noise);
        }
    }

    let reserved: Vec<EventId> = abc
        .iter()
        .chain(defg.iter())
        .copied()
        .chain(std::iter::once(noise))
        .collect();
    let fillers: Vec<EventId> = alphabet.ids().filter(|e| !reserved.contains(e)).collect();
    for (slot, &has_plant) in slots.iter_mut().zip(&planted) {
        if cfg.filler == FillerMode::Every || !has_plant {
            slot.push(fillers[rng.random_range(0..fillers.len())]);
        }
    }

    let sequence = EventSequence::from_slots(alphabet, slots)?;
    Ok(SynDataset {
        sequence,
        truth: ground_truth(&[&PATTERN_ABC, &PATTERN_DEFG]),
    })
}

fn draw_gap<R: Rng>(dist: &Normal<f64>, rng: &mut R) -> usize {
    loop {
        let g = dist.sample(rng).round();
        if g >= 1.0 {
            return g as usize;
        }
    }
}

/// Every distinct subepisode of length >= 2 of each pattern.
pub fn ground_truth(patterns: &[&[&str]]) -> Vec<EpisodeEntry> {
    let mut out: Vec<EpisodeEntry> = Vec::new();
    for pattern in patterns {
        let k = pattern.len();
        let mut subsets: Vec<u32> = (0u32..(1 << k)).filter(|m| m.count_ones() >= 2).collect();
        // by size, then lexicographic by positions
        subsets.sort_by_key(|m| (m.count_ones(), std::cmp::Reverse(m.reverse_bits())));
        for mask in subsets {
            let labels: Vec<&str> = (0..k)
                .filter(|i| mask & (1 << i) != 0)
                .map(|i| pattern[i])
                .collect();
            let entry = EpisodeEntry::new(labels, None);
            if !out.contains(&entry) {
                out.push(entry);
            }
        }
    }
    out
}

/// Renders a ground-truth list in the episode list format.
pub fn truth_arrows(truth: &[EpisodeEntry]) -> Vec<String> {
    truth.iter().map(|e| e.labels.join(ARROW)).collect()
}
