//! Serial episodes and the episode list file format (`e1->e2->e3[<TAB>support]`).

use std::fmt::Write as _;

use crate::error::{EdpError, ParseError, Result};
use crate::sequence::{is_valid_label, Alphabet, EventId};

pub const ARROW: &str = "->";

/// A serial episode `e1 -> e2 -> ... -> ek`, k >= 1. Repeated events are allowed.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Episode {
    events: Vec<EventId>,
}

impl Episode {
    pub fn new(events: Vec<EventId>) -> Result<Self> {
        if events.is_empty() {
            return Err(EdpError::EmptyEpisode);
        }
        Ok(Self { events })
    }

    /// Resolves a label sequence against `alphabet`.
    pub fn from_labels<S: AsRef<str>>(labels: &[S], alphabet: &Alphabet) -> Result<Self> {
        let events = labels
            .iter()
            .map(|l| {
                alphabet
                    .id(l.as_ref())
                    .ok_or_else(|| EdpError::UnknownLabel(l.as_ref().to_string()))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(events)
    }

    /// Parses `a->b->c` against `alphabet`.
    pub fn parse(text: &str, alphabet: &Alphabet) -> Result<Self> {
        let labels: Vec<&str> = text.split(ARROW).collect();
        Self::from_labels(&labels, alphabet)
    }

    pub fn events(&self) -> &[EventId] {
        &self.events
    }

    /// Episode length `k`.
    pub fn len(&self) -> usize {
        self.events.len()
    }

    pub fn is_empty(&self) -> bool {
        self.events.is_empty()
    }

    /// Distinct events of the episode in order of first appearance.
    pub fn distinct_events(&self) -> Vec<EventId> {
        let mut out: Vec<EventId> = Vec::with_capacity(self.events.len());
        for &e in &self.events {
            if !out.contains(&e) {
                out.push(e);
            }
        }
        out
    }

    /// True iff there is an order-preserving embedding of `self` into `other`.
    pub fn is_subepisode_of(&self, other: &Episode) -> bool {
        is_subsequence(&self.events, &other.events)
    }

    /// The `j`-prefix `H_j`. `Ok(None)` is the empty episode (`j == 0`).
    pub fn prefix(&self, j: usize) -> Result<Option<Episode>> {
        let k = self.len();
        if j > k {
            return Err(EdpError::PrefixOutOfRange { j, k });
        }
        Ok((j > 0).then(|| Episode {
            events: self.events[..j].to_vec(),
        }))
    }

    pub fn labels(&self, alphabet: &Alphabet) -> Vec<String> {
        self.events
            .iter()
            .map(|&e| alphabet.label(e).unwrap_or("?").to_string())
            .collect()
    }

    /// Arrow text form, e.g. `a->b->c`.
    pub fn display(&self, alphabet: &Alphabet) -> String {
        self.labels(alphabet).join(ARROW)
    }
}

/// Greedy subsequence test; greedy leftmost matching is exact for sequences.
pub fn is_subsequence<T: PartialEq>(needle: &[T], haystack: &[T]) -> bool {
    let mut rest = haystack.iter();
    needle.iter().all(|x| rest.any(|y| y == x))
}

/// One line of an episode list file: labels plus an optional support.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EpisodeEntry {
    pub labels: Vec<String>,
    pub support: Option<usize>,
}

impl EpisodeEntry {
    pub fn new<S: Into<String>>(
        labels: impl IntoIterator<Item = S>,
        support: Option<usize>,
    ) -> Self {
        Self {
            labels: labels.into_iter().map(Into::into).collect(),
            support,
        }
    }

    pub fn arrow(&self) -> String {
        self.labels.join(ARROW)
    }
}

/// Parses a single `a->b->c` string into labels.
pub fn parse_arrow(text: &str) -> Option<Vec<String>> {
    let labels: Vec<String> = text.split(ARROW).map(str::to_string).collect();
    labels.iter().all(|l| is_valid_label(l)).then_some(labels)
}

/// Parses an episode list file. Blank lines are skipped.
pub fn parse_episode_list(text: &str) -> Result<Vec<EpisodeEntry>, ParseError> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        if raw.trim().is_empty() {
            continue;
        }
        let (episode, support) = match raw.split_once('\t') {
            Some((e, s)) => {
                let s = s
                    .trim()
                    .parse::<usize>()
                    .map_err(|_| ParseError::Malformed {
                        line,
                        reason: format!("invalid support {s:?}"),
                    })?;
                (e, Some(s))
            }
            None => (raw, None),
        };
        let labels = parse_arrow(episode).ok_or_else(|| ParseError::InvalidLabel {
            line,
            label: episode.to_string(),
        })?;
        out.push(EpisodeEntry { labels, support });
    }
    Ok(out)
}

pub fn write_episode_list(entries: &[EpisodeEntry]) -> String {
    let mut out = String::new();
    for entry in entries {
        out.push_str(&entry.arrow());
        if let Some(s) = entry.support {
            let _ = write!(out, "\t{s}");
        }
        out.push('\n');
    }
    out
}
