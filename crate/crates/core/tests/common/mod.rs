//! Independent oracles and random-instance generators shared by the
//! integration suites. Nothing here calls the crate's scanning automaton or
//! expectation engine.

#![allow(dead_code)]

use edp_core::{Alphabet, Episode, EventId, EventSequence};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const LABELS: [&str; 3] = ["a", "b", "c"];

/// Does `episode` embed into slots `s..=e` at strictly increasing timestamps?
pub fn embeds(slots: &[Vec<bool>], episode: &[usize], s: usize, e: usize) -> bool {
    let mut next = 0;
    for slot in &slots[s - 1..e] {
        if next < episode.len() && slot[episode[next]] {
            next += 1;
        }
    }
    next == episode.len()
}

/// Every minimal window `[s, e]` with `e - s < delta`, by checking all windows.
pub fn minimal_windows(
    slots: &[Vec<bool>],
    episode: &[usize],
    delta: usize,
) -> Vec<(usize, usize)> {
    let n = slots.len();
    let mut out = Vec::new();
    for e in 1..=n {
        for s in 1..=e {
            if e - s >= delta || !embeds(slots, episode, s, e) {
                continue;
            }
            let shrinks_left = s < e && embeds(slots, episode, s + 1, e);
            let shrinks_right = s < e && embeds(slots, episode, s, e - 1);
            if !shrinks_left && !shrinks_right {
                out.push((s, e));
            }
        }
    }
    out
}

/// Presence table `slots[t-1][event index]`.
pub fn table(seq: &EventSequence) -> Vec<Vec<bool>> {
    let m = seq.alphabet().len();
    seq.iter()
        .map(|(_, slot)| {
            let mut row = vec![false; m];
            for e in slot {
                row[e.index()] = true;
            }
            row
        })
        .collect()
}

pub fn indices(episode: &Episode) -> Vec<usize> {
    episode.events().iter().map(|e| e.index()).collect()
}

pub fn oracle_support(seq: &EventSequence, episode: &Episode, delta: usize) -> usize {
    minimal_windows(&table(seq), &indices(episode), delta).len()
}

/// Expected unbounded minimal-occurrence count when the events in `random`
/// are redrawn independently at every timestamp with their empirical
/// frequency and every other event keeps its original placement. Enumerates
/// all `2^(|random| * n)` placements.
pub fn exhaustive_expectation(seq: &EventSequence, episode: &Episode, random: &[EventId]) -> f64 {
    let base = table(seq);
    let n = base.len();
    let probs: Vec<f64> = random
        .iter()
        .map(|&e| base.iter().filter(|row| row[e.index()]).count() as f64 / n as f64)
        .collect();
    let ep = indices(episode);
    let bits = random.len() * n;
    assert!(bits <= 20, "oracle instance too large");
    let mut total = 0.0;
    for assignment in 0u64..(1u64 << bits) {
        let mut slots = base.clone();
        let mut weight = 1.0;
        for (t, slot) in slots.iter_mut().enumerate() {
            for (r, &e) in random.iter().enumerate() {
                let present = assignment >> (t * random.len() + r) & 1 == 1;
                slot[e.index()] = present;
                weight *= if present { probs[r] } else { 1.0 - probs[r] };
            }
        }
        if weight > 0.0 {
            total += weight * minimal_windows(&slots, &ep, usize::MAX).len() as f64;
        }
    }
    total
}

/// All episodes over the alphabet with length `2..=max_len`, at least two
/// distinct events and oracle support `>= min_sup`, sorted by labels.
pub fn brute_force_frequent(
    seq: &EventSequence,
    min_sup: usize,
    max_window: usize,
    max_len: usize,
) -> Vec<(Vec<String>, usize)> {
    let slots = table(seq);
    let m = seq.alphabet().len();
    let mut out = Vec::new();
    for len in 2..=max_len {
        for code in 0..m.pow(len as u32) {
            let ep: Vec<usize> = (0..len).map(|i| code / m.pow(i as u32) % m).collect();
            if ep.iter().all(|&x| x == ep[0]) {
                continue;
            }
            let sp = minimal_windows(&slots, &ep, max_window).len();
            if sp >= min_sup {
                let labels = ep
                    .iter()
                    .map(|&i| seq.alphabet().labels()[i].clone())
                    .collect();
                out.push((labels, sp));
            }
        }
    }
    out.sort();
    out
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random sequence over the first `m` labels; every label is in the alphabet
/// even if it never occurs.
pub fn random_sequence(rng: &mut impl Rng, n: usize, m: usize, density: f64) -> EventSequence {
    let alphabet = Alphabet::from_labels(LABELS[..m].iter().copied()).unwrap();
    let slots = (0..n)
        .map(|_| {
            (0..m)
                .filter(|_| rng.random::<f64>() < density)
                .map(|i| EventId(i as u32))
                .collect()
        })
        .collect();
    EventSequence::from_slots(alphabet, slots).unwrap()
}

pub fn random_episode(rng: &mut impl Rng, m: usize, max_len: usize) -> Episode {
    let len = rng.random_range(1..=max_len);
    Episode::new(
        (0..len)
            .map(|_| EventId(rng.random_range(0..m) as u32))
            .collect(),
    )
    .unwrap()
}

/// Sequence from a presence table over the first `rows[0].len()` labels.
pub fn from_table(m: usize, rows: &[Vec<bool>]) -> EventSequence {
    let alphabet = Alphabet::from_labels(LABELS[..m].iter().copied()).unwrap();
    let slots = rows
        .iter()
        .map(|row| {
            (0..m)
                .filter(|&i| row[i])
                .map(|i| EventId(i as u32))
                .collect()
        })
        .collect();
    EventSequence::from_slots(alphabet, slots).unwrap()
}

pub fn episode_of(ids: &[usize]) -> Episode {
    Episode::new(ids.iter().map(|&i| EventId(i as u32)).collect()).unwrap()
}
