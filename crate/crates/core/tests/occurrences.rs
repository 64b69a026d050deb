mod common;

use common::*;
use edp_core::automaton::{minimal_occurrences, support, EpisodeAutomaton, OccurrenceTracker};
use edp_core::{Window, UNBOUNDED};
use proptest::prelude::*;

fn instance() -> impl Strategy<Value = (usize, Vec<Vec<bool>>, Vec<usize>)> {
    (1usize..=3).prop_flat_map(|m| {
        (
            Just(m),
            prop::collection::vec(prop::collection::vec(prop::bool::weighted(0.45), m), 1..=12),
            prop::collection::vec(0..m, 1..=4),
        )
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn windows_match_brute_force((m, rows, ep) in instance(), delta in 1usize..=13) {
        let seq = from_table(m, &rows);
        let episode = episode_of(&ep);
        let expected: Vec<Window> = minimal_windows(&rows, &ep, delta)
            .into_iter()
            .map(|(s, e)| Window::new(s, e))
            .collect();
        prop_assert_eq!(minimal_occurrences(&seq, &episode, delta), expected.clone());
        prop_assert_eq!(support(&seq, &episode, delta), expected.len());
        let unbounded = minimal_windows(&rows, &ep, usize::MAX).len();
        prop_assert_eq!(support(&seq, &episode, UNBOUNDED), unbounded);
    }

    #[test]
    fn support_grows_with_window((m, rows, ep) in instance()) {
        let seq = from_table(m, &rows);
        let episode = episode_of(&ep);
        let counts: Vec<usize> = (1..=rows.len() + 1).map(|d| support(&seq, &episode, d)).collect();
        prop_assert!(counts.windows(2).all(|w| w[0] <= w[1]), "{:?}", counts);
        prop_assert_eq!(*counts.last().unwrap(), support(&seq, &episode, UNBOUNDED));
    }

    #[test]
    fn windows_are_unnested((m, rows, ep) in instance(), delta in 1usize..=13) {
        let seq = from_table(m, &rows);
        let ws = minimal_occurrences(&seq, &episode_of(&ep), delta);
        for (i, a) in ws.iter().enumerate() {
            prop_assert!(a.end - a.start < delta);
            prop_assert!(a.end - a.start + 1 >= ep.len());
            for b in &ws[i + 1..] {
                prop_assert!(a.start < b.start && a.end < b.end);
            }
        }
    }

    #[test]
    fn tracker_keeps_one_instance_per_state((m, rows, ep) in instance()) {
        let seq = from_table(m, &rows);
        let automaton = EpisodeAutomaton::new(episode_of(&ep));
        let mut tracker = OccurrenceTracker::new(&automaton, UNBOUNDED);
        for (t, slot) in seq.iter() {
            tracker.feed(t, |e| slot.contains(&e));
            let active = tracker.active();
            let states: Vec<usize> = active.iter().map(|a| a.state).collect();
            let mut dedup = states.clone();
            dedup.dedup();
            prop_assert_eq!(&states, &dedup);
            prop_assert!(active.iter().all(|a| a.state >= 1 && a.state < ep.len() && a.start <= t));
            // deeper states started no later than shallower ones
            prop_assert!(active.windows(2).all(|w| w[0].start >= w[1].start));
        }
    }
}

#[test]
fn randomized_instances_match_oracle() {
    let mut rng = rng(4);
    for _ in 0..200 {
        let n = 1 + rand::Rng::random_range(&mut rng, 0..12);
        let m = 1 + rand::Rng::random_range(&mut rng, 0..3);
        let seq = random_sequence(&mut rng, n, m, 0.4);
        let episode = random_episode(&mut rng, m, 3);
        let delta = rand::Rng::random_range(&mut rng, 1..=n + 1);
        assert_eq!(
            support(&seq, &episode, delta),
            oracle_support(&seq, &episode, delta),
            "{}",
            seq.serialize()
        );
    }
}
