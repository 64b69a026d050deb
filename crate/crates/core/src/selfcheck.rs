//! Built-in oracle suite: frozen expectations on the five-slot fixture plus
//! normalization and conservation invariants on both fixtures.

use std::fmt;

use crate::automaton::{minimal_occurrences, support, Window, UNBOUNDED};
use crate::edp::{
    enumerate_partitions, exp_sup, expected_support_exact, DualPartition, EpisodeContext,
    ExactEngine, ScreenConfig,
};
use crate::episode::Episode;
use crate::fixtures::{d1, running_example};
use crate::sequence::EventSequence;

pub const TOLERANCE: f64 = 1e-9;

/// Expected values checked by [`run`]. [`Default`] holds the frozen constants.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Constants {
    pub ab_informative_a: f64,
    pub ab_informative_b: f64,
    pub ab_independent: f64,
    pub ab_lift: f64,
}

impl Default for Constants {
    fn default() -> Self {
        Self {
            ab_informative_a: 1.28,
            ab_informative_b: 1.04,
            ab_independent: 0.861_736_96,
            ab_lift: 1.5625,
        }
    }
}

impl Constants {
    /// Every constant shifted by `offset`, as a negative control.
    pub fn perturbed(offset: f64) -> Self {
        let c = Self::default();
        Self {
            ab_informative_a: c.ab_informative_a + offset,
            ab_informative_b: c.ab_informative_b + offset,
            ab_independent: c.ab_independent + offset,
            ab_lift: c.ab_lift + offset,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "{tag} {:<28} {}", self.name, self.detail)
    }
}

fn close(name: &'static str, actual: f64, expected: f64) -> Check {
    Check {
        name,
        passed: (actual - expected).abs() <= TOLERANCE,
        detail: format!("got {actual:.12}, want {expected:.12}"),
    }
}

fn partition_of(seq: &EventSequence, episode: &Episode, informative: &[&str]) -> f64 {
    let ctx = EpisodeContext::new(seq, episode).expect("fixture episode");
    let mut mask = 0;
    for l in informative {
        let e = seq.alphabet().id(l).expect("fixture label");
        mask |= 1 << ctx.position(e).expect("label in episode");
    }
    let model = ctx
        .model(DualPartition::new(ctx.omega().to_vec(), mask))
        .expect("valid partition");
    expected_support_exact(&model)
}

/// Runs every check; the suite passes iff all returned checks pass.
pub fn run(expected: &Constants) -> Vec<Check> {
    let mut out = Vec::new();
    let d1 = d1();
    let ab = Episode::parse("a->b", d1.alphabet()).expect("fixture episode");

    out.push(close(
        "exact a->b I={a}",
        partition_of(&d1, &ab, &["a"]),
        expected.ab_informative_a,
    ));
    out.push(close(
        "exact a->b I={b}",
        partition_of(&d1, &ab, &["b"]),
        expected.ab_informative_b,
    ));
    out.push(close(
        "exact a->b I={}",
        partition_of(&d1, &ab, &[]),
        expected.ab_independent,
    ));

    let sp = support(&d1, &ab, 5);
    out.push(Check {
        name: "support a->b",
        passed: sp == 2,
        detail: format!("got {sp}, want 2"),
    });
    let ctx = EpisodeContext::new(&d1, &ab).expect("fixture episode");
    let record = exp_sup(&ctx, sp, &ScreenConfig::default()).expect("valid config");
    out.push(close("lift a->b", record.lift, expected.ab_lift));

    let fig = running_example();
    let abc = Episode::parse("a->b->c", fig.alphabet()).expect("fixture episode");
    let windows = minimal_occurrences(&fig, &abc, 4);
    let want = vec![Window::new(2, 4), Window::new(7, 10)];
    out.push(Check {
        name: "minimal occurrences a->b->c",
        passed: windows == want,
        detail: format!(
            "got {}",
            windows
                .iter()
                .map(Window::to_string)
                .collect::<Vec<_>>()
                .join(" ")
        ),
    });

    let mut worst_norm: f64 = 0.0;
    let mut worst_mass: f64 = 0.0;
    let mut identity_ok = true;
    for (seq, text) in [
        (&d1, "a->b"),
        (&d1, "b->a->c"),
        (&fig, "a->b->c"),
        (&fig, "d->c->d->a"),
    ] {
        let episode = Episode::parse(text, seq.alphabet()).expect("fixture episode");
        let ctx = EpisodeContext::new(seq, &episode).expect("fixture episode");
        let omega = ctx.omega().len();
        for partition in enumerate_partitions(ctx.omega()) {
            let model = ctx.model(partition).expect("valid partition");
            for t in 1..=seq.len() {
                let total: f64 = (0..1u32 << omega)
                    .map(|m| model.eventset_mask_prob(m, t))
                    .sum();
                worst_norm = worst_norm.max((total - 1.0).abs());
            }
            let mut engine = ExactEngine::new(&model);
            while !engine.is_done() {
                engine.step();
                worst_mass = worst_mass.max((engine.distribution().total_mass() - 1.0).abs());
            }
        }
        let full = ctx
            .model(DualPartition::full(ctx.omega().to_vec()))
            .expect("full partition");
        let observed = support(seq, &episode, UNBOUNDED) as f64;
        identity_ok &= (expected_support_exact(&full) - observed).abs() <= TOLERANCE;
    }
    out.push(Check {
        name: "event-set normalization",
        passed: worst_norm <= TOLERANCE,
        detail: format!("max |sum - 1| = {worst_norm:.3e}"),
    });
    out.push(Check {
        name: "distribution conservation",
        passed: worst_mass <= TOLERANCE,
        detail: format!("max |mass - 1| = {worst_mass:.3e}"),
    });
    out.push(Check {
        name: "full-partition identity",
        passed: identity_ok,
        detail: "expectation equals unbounded support".into(),
    });
    out
}
