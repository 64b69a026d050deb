//! Event alphabets, event sequences and the sequence file format.
//!
//! A sequence file starts with a `# length=N` header followed by one line per
//! non-empty timestamp, a tab, then comma-separated labels:
//!
//! ```text
//! # length=5
//! 1<TAB>a
//! 3<TAB>a,c
//! ```
//!
//! Timestamps are the consecutive integers `1..=N`; timestamps without a data
//! line are empty slots.

use std::collections::HashMap;
use std::fmt;

use crate::error::{EdpError, ParseError, Result};

/// Dense identifier of an interned event label.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EventId(pub u32);

impl EventId {
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for EventId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

/// Returns true when `label` can be written to the sequence and episode formats.
pub fn is_valid_label(label: &str) -> bool {
    !label.is_empty()
        && !label
            .chars()
            .any(|c| matches!(c, '\t' | ',' | '\n' | '\r' | '-' | '>'))
}

/// Interned event labels, ids assigned densely in first-seen order.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Alphabet {
    symbols: Vec<String>,
    lookup: HashMap<String, EventId>,
}

impl Alphabet {
    pub fn new() -> Self {
        Self::default()
    }

    /// Builds an alphabet from labels in order. Duplicates are ignored.
    pub fn from_labels<I, S>(labels: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let mut alphabet = Self::new();
        for label in labels {
            alphabet.intern(label.as_ref())?;
        }
        Ok(alphabet)
    }

    /// Returns the id of `label`, adding it if it is new.
    pub fn intern(&mut self, label: &str) -> Result<EventId> {
        if let Some(&id) = self.lookup.get(label) {
            return Ok(id);
        }
        if !is_valid_label(label) {
            return Err(EdpError::InvalidLabel(label.to_string()));
        }
        let id = EventId(self.symbols.len() as u32);
        self.symbols.push(label.to_string());
        self.lookup.insert(label.to_string(), id);
        Ok(id)
    }

    pub fn id(&self, label: &str) -> Option<EventId> {
        self.lookup.get(label).copied()
    }

    pub fn label(&self, id: EventId) -> Option<&str> {
        self.symbols.get(id.index()).map(String::as_str)
    }

    pub fn contains(&self, id: EventId) -> bool {
        id.index() < self.symbols.len()
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.symbols
    }

    pub fn ids(&self) -> impl Iterator<Item = EventId> {
        (0..self.symbols.len() as u32).map(EventId)
    }
}

/// A single long sequence of event sets over timestamps `1..=n`.
///
/// Slot contents are kept sorted by id so membership tests are a binary search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EventSequence {
    alphabet: Alphabet,
    slots: Vec<Vec<EventId>>,
}

impl EventSequence {
    /// Builds a sequence from per-timestamp event sets; `slots[0]` is timestamp 1.
    ///
    /// Duplicate events inside a slot are collapsed.
    pub fn from_slots(alphabet: Alphabet, mut slots: Vec<Vec<EventId>>) -> Result<Self> {
        if slots.is_empty() {
            return Err(EdpError::InvalidParameter(
                "sequence length must be positive".into(),
            ));
        }
        for slot in &mut slots {
            if let Some(bad) = slot.iter().find(|e| !alphabet.contains(**e)) {
                return Err(EdpError::UnknownEvent(bad.0));
            }
            slot.sort_unstable();
            slot.dedup();
        }
        Ok(Self { alphabet, slots })
    }

    /// Builds a sequence from label sets, interning labels in first-seen order.
    pub fn from_label_slots<S: AsRef<str>>(slots: &[Vec<S>]) -> Result<Self> {
        let mut alphabet = Alphabet::new();
        let mut ids = Vec::with_capacity(slots.len());
        for slot in slots {
            let mut set = Vec::with_capacity(slot.len());
            for label in slot {
                set.push(alphabet.intern(label.as_ref())?);
            }
            ids.push(set);
        }
        Self::from_slots(alphabet, ids)
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    /// Number of timestamps `n`.
    pub fn len(&self) -> usize {
        self.slots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.slots.is_empty()
    }

    /// Events at timestamp `t` (1-based).
    ///
    /// # Panics
    /// Panics if `t` is outside `1..=n`.
    #[inline]
    pub fn slot(&self, t: usize) -> &[EventId] {
        &self.slots[t - 1]
    }

    #[inline]
    pub fn contains(&self, t: usize, event: EventId) -> bool {
        self.slot(t).binary_search(&event).is_ok()
    }

    /// Iterates `(t, events)` for every timestamp, including empty ones.
    pub fn iter(&self) -> impl Iterator<Item = (usize, &[EventId])> {
        self.slots
            .iter()
            .enumerate()
            .map(|(i, s)| (i + 1, s.as_slice()))
    }

    /// Total number of events over all slots.
    pub fn total_events(&self) -> usize {
        self.slots.iter().map(Vec::len).sum()
    }

    /// Number of timestamps containing `event`.
    pub fn event_support(&self, event: EventId) -> Result<usize> {
        if !self.alphabet.contains(event) {
            return Err(EdpError::UnknownEvent(event.0));
        }
        Ok(self
            .slots
            .iter()
            .filter(|s| s.binary_search(&event).is_ok())
            .count())
    }

    /// Supports of every alphabet event, indexed by id.
    pub fn event_supports(&self) -> Vec<usize> {
        let mut counts = vec![0; self.alphabet.len()];
        for slot in &self.slots {
            for e in slot {
                counts[e.index()] += 1;
            }
        }
        counts
    }

    /// Empirical occurrence probability `sp(e) / n`.
    pub fn p_ind(&self, event: EventId) -> Result<f64> {
        Ok(self.event_support(event)? as f64 / self.len() as f64)
    }

    pub fn label(&self, event: EventId) -> &str {
        self.alphabet.label(event).unwrap_or("?")
    }

    /// Parses the sequence file format.
    pub fn parse(text: &str) -> Result<Self, ParseError> {
        let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l));
        let length = match lines.next() {
            Some((line, header)) => parse_header(line, header)?,
            None => return Err(ParseError::MissingLength { line: 1 }),
        };

        let mut alphabet = Alphabet::new();
        let mut slots = vec![Vec::new(); length];
        let mut previous = 0usize;
        for (line, content) in lines {
            let (ts, labels) = content
                .split_once('\t')
                .ok_or_else(|| ParseError::Malformed {
                    line,
                    reason: "expected `<timestamp><TAB><labels>`".into(),
                })?;
            let timestamp: usize = ts.parse().map_err(|_| ParseError::Malformed {
                line,
                reason: format!("invalid timestamp {ts:?}"),
            })?;
            if timestamp == 0 || timestamp > length {
                return Err(ParseError::TimestampOutOfRange {
                    line,
                    timestamp,
                    length,
                });
            }
            if timestamp == previous {
                return Err(ParseError::DuplicateTimestamp { line, timestamp });
            }
            if timestamp < previous {
                return Err(ParseError::NonIncreasing {
                    line,
                    timestamp,
                    previous,
                });
            }
            previous = timestamp;

            let slot = &mut slots[timestamp - 1];
            for label in labels.split(',') {
                let id = alphabet
                    .intern(label)
                    .map_err(|_| ParseError::InvalidLabel {
                        line,
                        label: label.to_string(),
                    })?;
                slot.push(id);
            }
            slot.sort_unstable();
            slot.dedup();
        }
        Ok(Self { alphabet, slots })
    }

    /// Writes the canonical file form: labels sorted within a slot, empty slots omitted.
    pub fn serialize(&self) -> String {
        let mut out = format!("# length={}\n", self.len());
        for (t, slot) in self.iter() {
            if slot.is_empty() {
                continue;
            }
            let mut labels: Vec<&str> = slot.iter().map(|&e| self.label(e)).collect();
            labels.sort_unstable();
            out.push_str(&t.to_string());
            out.push('\t');
            out.push_str(&labels.join(","));
            out.push('\n');
        }
        out
    }
}

fn parse_header(line: usize, header: &str) -> Result<usize, ParseError> {
    let value = header
        .trim_end()
        .strip_prefix('#')
        .map(str::trim_start)
        .and_then(|h| h.strip_prefix("length="))
        .ok_or(ParseError::MissingLength { line })?;
    match value.trim().parse::<usize>() {
        Ok(n) if n > 0 => Ok(n),
        _ => Err(ParseError::Malformed {
            line,
            reason: format!("invalid sequence length {value:?}"),
        }),
    }
}
