//! Prefix automata and minimal-occurrence counting.
//!
//! State `j` of an episode automaton stands for the prefix `H_j`; state 0 is the
//! source and state `k` the sink. While scanning, at most one tracked instance
//! is kept per intermediate state: the one with the latest start. An instance
//! advances at most one state per timestamp, so an occurrence uses strictly
//! increasing timestamps.

use std::fmt;

use crate::episode::Episode;
use crate::error::{EdpError, Result};
use crate::sequence::{EventId, EventSequence};

/// Window bound meaning "no maximal window size".
pub const UNBOUNDED: usize = usize::MAX;

/// Closed time window `[start, end]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Window {
    pub start: usize,
    pub end: usize,
}

impl Window {
    pub fn new(start: usize, end: usize) -> Self {
        debug_assert!(start <= end);
        Self { start, end }
    }

    pub fn contains(&self, other: &Window) -> bool {
        self.start <= other.start && other.end <= self.end
    }
}

impl fmt::Display for Window {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.start, self.end)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EpisodeAutomaton {
    episode: Episode,
}

impl EpisodeAutomaton {
    pub fn new(episode: Episode) -> Self {
        Self { episode }
    }

    pub fn episode(&self) -> &Episode {
        &self.episode
    }

    pub const SOURCE: usize = 0;

    pub fn sink(&self) -> usize {
        self.episode.len()
    }

    /// Event that moves the automaton out of `state`.
    #[inline]
    pub fn trigger(&self, state: usize) -> Option<EventId> {
        self.episode.events().get(state).copied()
    }

    /// `T(H, E)`: advances by one state iff the next needed event is present.
    pub fn transition_with<F>(&self, state: usize, contains: F) -> Result<usize>
    where
        F: Fn(EventId) -> bool,
    {
        match self.trigger(state) {
            None => Err(EdpError::TransitionFromSink),
            Some(e) if contains(e) => Ok(state + 1),
            Some(_) => Ok(state),
        }
    }

    /// [`transition_with`](Self::transition_with) for an explicit event set.
    pub fn transition(&self, state: usize, eset: &[EventId]) -> Result<usize> {
        self.transition_with(state, |e| eset.contains(&e))
    }
}

/// An automaton instance that has left the source at `start`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TrackedAutomaton {
    pub state: usize,
    pub start: usize,
}

/// Incremental minimal-occurrence scanner. Feed timestamps in increasing order.
#[derive(Debug, Clone)]
pub struct OccurrenceTracker<'a> {
    automaton: &'a EpisodeAutomaton,
    delta: usize,
    starts: Vec<Option<usize>>,
    scratch: Vec<Option<usize>>,
    last_t: usize,
}

impl<'a> OccurrenceTracker<'a> {
    /// `delta` is the maximal window size (`t_e - t_s < delta`); use [`UNBOUNDED`]
    /// for none.
    pub fn new(automaton: &'a EpisodeAutomaton, delta: usize) -> Self {
        let k = automaton.sink();
        Self {
            automaton,
            delta: delta.max(1),
            starts: vec![None; k],
            scratch: vec![None; k],
            last_t: 0,
        }
    }

    /// Active instances outside the source, lowest state first.
    pub fn active(&self) -> Vec<TrackedAutomaton> {
        self.starts
            .iter()
            .enumerate()
            .filter_map(|(state, s)| s.map(|start| TrackedAutomaton { state, start }))
            .collect()
    }

    /// Processes timestamp `t`, returning the minimal window that ends at `t`.
    pub fn feed<F>(&mut self, t: usize, contains: F) -> Option<Window>
    where
        F: Fn(EventId) -> bool,
    {
        debug_assert!(t > self.last_t);
        self.last_t = t;
        let k = self.starts.len();
        let horizon = t.saturating_sub(self.delta);
        for s in self.starts.iter_mut().skip(1) {
            if matches!(s, Some(start) if *start <= horizon) {
                *s = None;
            }
        }

        let next = &mut self.scratch;
        next.iter_mut().for_each(|s| *s = None);
        let mut hit = None;
        let events = self.automaton.episode().events();

        for j in 0..k {
            let start = if j == 0 { Some(t) } else { self.starts[j] };
            let Some(start) = start else { continue };
            if contains(events[j]) {
                if j + 1 == k {
                    hit = Some(Window::new(start, t));
                } else {
                    next[j + 1] = Some(start);
                }
            }
        }
        // stale copies survive only where no advanced copy landed
        for j in 1..k {
            if next[j].is_none() && !contains(events[j]) {
                next[j] = self.starts[j];
            }
        }
        std::mem::swap(&mut self.starts, &mut self.scratch);
        hit
    }
}

/// All minimal occurrence windows of `episode` with `t_e - t_s < delta`,
/// sorted by end time.
pub fn minimal_occurrences(seq: &EventSequence, episode: &Episode, delta: usize) -> Vec<Window> {
    let automaton = EpisodeAutomaton::new(episode.clone());
    let mut tracker = OccurrenceTracker::new(&automaton, delta);
    seq.iter()
        .filter_map(|(t, slot)| tracker.feed(t, |e| slot.binary_search(&e).is_ok()))
        .collect()
}

/// Observed support `sp(α)`: the number of minimal occurrence windows.
pub fn support(seq: &EventSequence, episode: &Episode, delta: usize) -> usize {
    let automaton = EpisodeAutomaton::new(episode.clone());
    let mut tracker = OccurrenceTracker::new(&automaton, delta);
    seq.iter()
        .filter(|(t, slot)| {
            tracker
                .feed(*t, |e| slot.binary_search(&e).is_ok())
                .is_some()
        })
        .count()
}
