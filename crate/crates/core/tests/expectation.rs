mod common;

use common::*;
use edp_core::edp::{
    enumerate_partitions, exp_sup, expected_support_exact, expected_support_mc, screen,
    DualPartition, EpisodeContext, ExactEngine, NullModel, ScreenConfig, ScreenMode,
};
use edp_core::{support, Alphabet, EpisodeEntry, EventId, EventSequence, UNBOUNDED};
use proptest::prelude::*;

const TOL: f64 = 1e-9;

/// Small instance: table rows, episode ids, and a partition mask.
fn instance(max_n: usize) -> impl Strategy<Value = (usize, Vec<Vec<bool>>, Vec<usize>, u32)> {
    (1usize..=3).prop_flat_map(move |m| {
        (
            Just(m),
            prop::collection::vec(
                prop::collection::vec(prop::bool::weighted(0.45), m),
                1..=max_n,
            ),
            prop::collection::vec(0..m, 1..=3),
            any::<u32>(),
        )
    })
}

fn omega_len(ep: &[usize]) -> usize {
    let mut seen = ep.to_vec();
    seen.sort_unstable();
    seen.dedup();
    seen.len()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn exact_matches_exhaustive_enumeration((m, rows, ep, bits) in instance(8)) {
        let seq = from_table(m, &rows);
        let episode = episode_of(&ep);
        let ctx = EpisodeContext::new(&seq, &episode).unwrap();
        let k = omega_len(&ep);
        // proper partitions with at most two random events
        let candidates: Vec<u32> = (0..(1u32 << k) - 1)
            .filter(|m| k - m.count_ones() as usize <= 2)
            .collect();
        let mask = candidates[bits as usize % candidates.len()];
        let partition = DualPartition::new(ctx.omega().to_vec(), mask);
        let random = partition.random_events();
        let exact = expected_support_exact(&ctx.model(partition).unwrap());
        let oracle = exhaustive_expectation(&seq, &episode, &random);
        prop_assert!((exact - oracle).abs() <= TOL, "exact {} oracle {}", exact, oracle);
    }

    #[test]
    fn full_partition_reproduces_observed_support((m, rows, ep, _b) in instance(10)) {
        let seq = from_table(m, &rows);
        let episode = episode_of(&ep);
        let ctx = EpisodeContext::new(&seq, &episode).unwrap();
        let full = ctx.model(DualPartition::full(ctx.omega().to_vec())).unwrap();
        let observed = support(&seq, &episode, UNBOUNDED) as f64;
        prop_assert_eq!(expected_support_exact(&full), observed);
        let mc = expected_support_mc(&full, 3, 1, None);
        prop_assert_eq!(mc.mean, observed);
        prop_assert_eq!(mc.std_error, 0.0);
    }

    #[test]
    fn mass_is_conserved_and_expectations_are_bounded((m, rows, ep, _b) in instance(10)) {
        let seq = from_table(m, &rows);
        let episode = episode_of(&ep);
        let ctx = EpisodeContext::new(&seq, &episode).unwrap();
        for partition in enumerate_partitions(ctx.omega()) {
            let model = ctx.model(partition).unwrap();
            let mut engine = ExactEngine::new(&model);
            while !engine.is_done() {
                engine.step();
                prop_assert!((engine.distribution().total_mass() - 1.0).abs() <= TOL);
                prop_assert!(engine.distribution().len() <= 1 << (ep.len() - 1));
            }
            let e = engine.run();
            prop_assert!(e >= 0.0 && e <= seq.len() as f64 + TOL, "{}", e);
        }
    }

    #[test]
    fn edp_expectation_dominates_independent((m, rows, ep, _b) in instance(10), sp in 0usize..6) {
        let seq = from_table(m, &rows);
        let episode = episode_of(&ep);
        let ctx = EpisodeContext::new(&seq, &episode).unwrap();
        let edp = exp_sup(&ctx, sp, &ScreenConfig::default()).unwrap();
        let ind = exp_sup(&ctx, sp, &ScreenConfig { null_model: NullModel::Ind, ..ScreenConfig::default() }).unwrap();
        prop_assert!(edp.exp_sup >= ind.exp_sup);
        prop_assert!(edp.lift <= ind.lift);
        prop_assert!(ind.best_partition.informative_mask() == 0);
        prop_assert_eq!(edp.evaluated.len(), (1 << omega_len(&ep)) - 1);
    }

    #[test]
    fn early_exit_agrees_with_full((m, rows, ep, _b) in instance(10), sp in 0usize..6, lift_x4 in 1u32..12) {
        let seq = from_table(m, &rows);
        let episode = episode_of(&ep);
        let ctx = EpisodeContext::new(&seq, &episode).unwrap();
        let min_lift = lift_x4 as f64 / 4.0;
        let full = exp_sup(&ctx, sp, &ScreenConfig { min_lift, ..ScreenConfig::default() }).unwrap();
        let early = exp_sup(&ctx, sp, &ScreenConfig { min_lift, mode: ScreenMode::EarlyExit, ..ScreenConfig::default() }).unwrap();
        prop_assert_eq!(full.kept, early.kept);
        match &early.witness_partition {
            Some(w) => {
                let e = early.evaluated.last().unwrap();
                prop_assert_eq!(&e.partition, w);
                prop_assert!((sp as f64) < min_lift * e.expectation);
                prop_assert!(!early.kept);
            }
            None => {
                prop_assert!(early.fully_enumerated);
                prop_assert_eq!(early.lift, full.lift);
            }
        }
    }

    #[test]
    fn bounded_sampling_never_exceeds_unbounded((m, rows, ep, bits) in instance(10), delta in 1usize..6, seed in 0u64..50) {
        let seq = from_table(m, &rows);
        let episode = episode_of(&ep);
        let ctx = EpisodeContext::new(&seq, &episode).unwrap();
        let partitions = enumerate_partitions(ctx.omega());
        let p = partitions[bits as usize % partitions.len()].clone();
        let model = ctx.model(p).unwrap();
        let bounded = expected_support_mc(&model, 40, seed, Some(delta));
        let unbounded = expected_support_mc(&model, 40, seed, None);
        prop_assert!(bounded.mean <= unbounded.mean);
        prop_assert_eq!(expected_support_mc(&model, 40, seed, Some(delta)), bounded);
    }
}

/// Relabels events so that ids and alphabet order differ while the sequence
/// is the same up to renaming.
fn permuted(seq: &EventSequence, order: &[usize]) -> EventSequence {
    let labels: Vec<&str> = order.iter().map(|&i| LABELS[i]).collect();
    let alphabet = Alphabet::from_labels(labels).unwrap();
    let slots = seq
        .iter()
        .map(|(_, slot)| {
            slot.iter()
                .map(|e| alphabet.id(seq.label(*e)).unwrap())
                .collect()
        })
        .collect();
    EventSequence::from_slots(alphabet, slots).unwrap()
}

#[test]
fn expectation_is_invariant_to_event_numbering() {
    let mut rng = rng(21);
    let orders = [[0, 1, 2], [2, 0, 1], [1, 2, 0], [2, 1, 0]];
    for _ in 0..100 {
        let seq = random_sequence(&mut rng, 9, 3, 0.4);
        let episode = random_episode(&mut rng, 3, 3);
        let labels = episode.labels(seq.alphabet());
        let reference: Vec<f64> = {
            let ctx = EpisodeContext::new(&seq, &episode).unwrap();
            enumerate_partitions(ctx.omega())
                .into_iter()
                .map(|p| expected_support_exact(&ctx.model(p).unwrap()))
                .collect()
        };
        for order in &orders {
            let other = permuted(&seq, order);
            let ep = edp_core::Episode::from_labels(&labels, other.alphabet()).unwrap();
            let ctx = EpisodeContext::new(&other, &ep).unwrap();
            let values: Vec<f64> = enumerate_partitions(ctx.omega())
                .into_iter()
                .map(|p| expected_support_exact(&ctx.model(p).unwrap()))
                .collect();
            for (a, b) in reference.iter().zip(&values) {
                assert!((a - b).abs() <= 1e-12, "{a} vs {b}");
            }
        }
    }
}

#[test]
fn oracle_reproduces_five_slot_values() {
    let seq = edp_core::fixtures::d1();
    let ab = edp_core::Episode::parse("a->b", seq.alphabet()).unwrap();
    let id = |l| seq.alphabet().id(l).unwrap();
    let closed_form: f64 = (1..=4)
        .map(|g| 0.16 * (5 - g) as f64 * 0.36f64.powi(g - 1))
        .sum();
    for (random, want) in [
        (vec![id("b")], 1.28),
        (vec![id("a")], 1.04),
        (vec![id("a"), id("b")], 0.861_736_96),
        (vec![id("a"), id("b")], closed_form),
    ] {
        let got = exhaustive_expectation(&seq, &ab, &random);
        assert!((got - want).abs() <= TOL, "{got} vs {want}");
    }
    assert_eq!(oracle_support(&seq, &ab, 5), 2);
}

#[test]
fn repeated_labels_partition_by_type() {
    let seq = EventSequence::parse("# length=6\n1\ta\n2\ta,b\n3\tb\n4\ta\n5\tb\n6\tb\n").unwrap();
    let episode = edp_core::Episode::parse("a->b->b", seq.alphabet()).unwrap();
    let ctx = EpisodeContext::new(&seq, &episode).unwrap();
    assert_eq!(ctx.omega().len(), 2);
    let parts = enumerate_partitions(ctx.omega());
    assert_eq!(parts.len(), 3);
    for p in parts {
        let random = p.random_events();
        let exact = expected_support_exact(&ctx.model(p).unwrap());
        let oracle = exhaustive_expectation(&seq, &episode, &random);
        assert!((exact - oracle).abs() <= TOL);
    }
}

#[test]
fn screen_is_worker_independent() {
    let mut rng = rng(33);
    let seq = random_sequence(&mut rng, 60, 3, 0.35);
    let entries: Vec<EpisodeEntry> = (0..40)
        .map(|_| {
            let ep = random_episode(&mut rng, 3, 3);
            EpisodeEntry::new(ep.labels(seq.alphabet()), None)
        })
        .collect();
    let run = |workers, mode, partition_parallel| {
        let cfg = ScreenConfig {
            workers,
            mode,
            partition_parallel,
            max_window: 6,
            ..ScreenConfig::default()
        };
        screen(&seq, &entries, &cfg).unwrap()
    };
    let base = run(1, ScreenMode::Full, false);
    assert_eq!(base.len(), entries.len());
    assert_eq!(base, run(4, ScreenMode::Full, false));
    assert_eq!(base, run(4, ScreenMode::Full, true));
    let early = run(1, ScreenMode::EarlyExit, false);
    assert_eq!(early, run(3, ScreenMode::EarlyExit, false));
    let verdicts = |r: &[edp_core::edp::ScreeningRecord]| -> Vec<(Vec<String>, bool)> {
        let mut v: Vec<_> = r.iter().map(|x| (x.labels.clone(), x.kept)).collect();
        v.sort();
        v
    };
    assert_eq!(verdicts(&base), verdicts(&early));
}

#[test]
fn zero_expectation_gives_infinite_lift() {
    // b never occurs, so no partition can produce an occurrence
    let seq = EventSequence::from_slots(
        Alphabet::from_labels(["a", "b"]).unwrap(),
        vec![vec![EventId(0)], vec![], vec![EventId(0)]],
    )
    .unwrap();
    let episode = edp_core::Episode::parse("a->b", seq.alphabet()).unwrap();
    let ctx = EpisodeContext::new(&seq, &episode).unwrap();
    let r = exp_sup(&ctx, 1, &ScreenConfig::default()).unwrap();
    assert_eq!(r.exp_sup, 0.0);
    assert!(r.lift.is_infinite() && r.kept);
    let zero = exp_sup(&ctx, 0, &ScreenConfig::default()).unwrap();
    assert_eq!(zero.lift, 0.0);
    assert!(!zero.kept);
}
