use std::fmt;

use crate::sequence::{Alphabet, EventId};

/// Split of an episode's distinct events into informative and random events.
///
/// Bit `i` of `informative` refers to `omega[i]`, the episode's distinct events
/// in order of first appearance. Screening only uses proper partitions; the
/// full partition (every event informative) exists for validation.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DualPartition {
    omega: Vec<EventId>,
    informative: u32,
}

impl DualPartition {
    /// # Panics
    /// Panics if `informative` has bits outside `omega`.
    pub fn new(omega: Vec<EventId>, informative: u32) -> Self {
        assert!(omega.len() <= 31, "episode alphabet too large");
        assert_eq!(informative & !full_mask(omega.len()), 0);
        Self { omega, informative }
    }

    /// The IND baseline: every event random.
    pub fn independent(omega: Vec<EventId>) -> Self {
        Self::new(omega, 0)
    }

    /// Every event informative. Not a valid screening partition.
    pub fn full(omega: Vec<EventId>) -> Self {
        let mask = full_mask(omega.len());
        Self::new(omega, mask)
    }

    pub fn omega(&self) -> &[EventId] {
        &self.omega
    }

    pub fn informative_mask(&self) -> u32 {
        self.informative
    }

    pub fn random_mask(&self) -> u32 {
        !self.informative & full_mask(self.omega.len())
    }

    pub fn is_proper(&self) -> bool {
        self.informative != full_mask(self.omega.len())
    }

    pub fn random_count(&self) -> usize {
        self.random_mask().count_ones() as usize
    }

    pub fn is_informative(&self, e: EventId) -> Option<bool> {
        self.omega
            .iter()
            .position(|&x| x == e)
            .map(|i| self.informative & (1 << i) != 0)
    }

    pub fn informative_events(&self) -> Vec<EventId> {
        self.select(self.informative)
    }

    pub fn random_events(&self) -> Vec<EventId> {
        self.select(self.random_mask())
    }

    fn select(&self, mask: u32) -> Vec<EventId> {
        self.omega
            .iter()
            .enumerate()
            .filter(|(i, _)| mask & (1 << i) != 0)
            .map(|(_, &e)| e)
            .collect()
    }

    pub fn informative_labels(&self, alphabet: &Alphabet) -> Vec<String> {
        self.informative_events()
            .into_iter()
            .map(|e| alphabet.label(e).unwrap_or("?").to_string())
            .collect()
    }

    pub fn display<'a>(&'a self, alphabet: &'a Alphabet) -> impl fmt::Display + 'a {
        PartitionDisplay {
            partition: self,
            alphabet,
        }
    }
}

struct PartitionDisplay<'a> {
    partition: &'a DualPartition,
    alphabet: &'a Alphabet,
}

impl fmt::Display for PartitionDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let lbl = |v: Vec<EventId>| {
            v.into_iter()
                .map(|e| self.alphabet.label(e).unwrap_or("?"))
                .collect::<Vec<_>>()
                .join(",")
        };
        write!(
            f,
            "I={{{}}} R={{{}}}",
            lbl(self.partition.informative_events()),
            lbl(self.partition.random_events())
        )
    }
}

#[inline]
pub(crate) fn full_mask(len: usize) -> u32 {
    if len >= 32 {
        u32::MAX
    } else {
        (1u32 << len) - 1
    }
}

/// All proper partitions of `omega`: `2^|omega| - 1` of them.
///
/// Ordered by number of random events ascending (cheapest first), ties by
/// informative bitmask ascending.
pub fn enumerate_partitions(omega: &[EventId]) -> Vec<DualPartition> {
    let full = full_mask(omega.len());
    let mut masks: Vec<u32> = (0..full).collect();
    masks.sort_by_key(|&m| ((!m & full).count_ones(), m));
    masks
        .into_iter()
        .map(|m| DualPartition::new(omega.to_vec(), m))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ids(n: u32) -> Vec<EventId> {
        (0..n).map(EventId).collect()
    }

    #[test]
    fn counts_and_order() {
        assert_eq!(
            enumerate_partitions(&ids(1)),
            vec![DualPartition::new(ids(1), 0)]
        );
        let two: Vec<u32> = enumerate_partitions(&ids(2))
            .iter()
            .map(|p| p.informative_mask())
            .collect();
        assert_eq!(two, vec![0b01, 0b10, 0b00]);
        for n in 1..=6 {
            let parts = enumerate_partitions(&ids(n));
            assert_eq!(parts.len(), (1 << n) - 1);
            assert!(parts.iter().all(DualPartition::is_proper));
            assert!(parts
                .windows(2)
                .all(|w| w[0].random_count() <= w[1].random_count()));
        }
    }

    #[test]
    fn four_event_alphabet_contains_non_prefix_splits() {
        let al = Alphabet::from_labels(["a", "b", "c", "d"]).unwrap();
        let omega: Vec<EventId> = al.ids().collect();
        let parts = enumerate_partitions(&omega);
        let has = |inf: &[&str]| {
            parts.iter().any(|p| {
                let mut l = p.informative_labels(&al);
                l.sort();
                l == inf
            })
        };
        assert!(has(&["a", "c"]));
        assert!(has(&["a", "b", "d"]));
        let ac = parts
            .iter()
            .find(|p| p.informative_mask() == 0b0101)
            .unwrap();
        assert_eq!(ac.random_events(), vec![EventId(1), EventId(3)]);
        assert_eq!(ac.display(&al).to_string(), "I={a,c} R={b,d}");
    }

    #[test]
    fn full_partition_is_not_proper() {
        let p = DualPartition::full(ids(3));
        assert!(!p.is_proper());
        assert_eq!(p.random_count(), 0);
        assert!(DualPartition::independent(ids(3)).is_proper());
    }
}
