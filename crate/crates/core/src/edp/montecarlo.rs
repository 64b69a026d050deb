//! Sampling estimate of the expected support. Draws whole random sequences from
//! the generative model and counts minimal occurrences with the scanning
//! automaton, optionally under a window bound.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::automaton::{OccurrenceTracker, UNBOUNDED};
use crate::edp::model::GenerativeModel;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct McEstimate {
    pub mean: f64,
    /// Standard error of the mean; 0 for a single sample.
    pub std_error: f64,
    pub samples: usize,
}

impl McEstimate {
    /// Whether `value` lies within `z` standard errors of the estimate.
    pub fn brackets(&self, value: f64, z: f64) -> bool {
        (value - self.mean).abs() <= z * self.std_error
    }
}

/// Monte-Carlo estimate of `E[sp(α | Ŝ)]` from `samples` draws.
///
/// `delta` bounds the window (`None` for unbounded).
pub fn expected_support_mc(
    model: &GenerativeModel<'_, '_>,
    samples: usize,
    seed: u64,
    delta: Option<usize>,
) -> McEstimate {
    let samples = samples.max(1);
    let ctx = model.context();
    let n = ctx.len();
    let delta = delta.unwrap_or(UNBOUNDED);
    let random: Vec<(u32, f64)> = (0..ctx.omega().len())
        .filter(|i| model.partition().random_mask() & (1 << i) != 0)
        .map(|i| (1u32 << i, ctx.p_ind_at(i)))
        .collect();

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut sum = 0.0;
    let mut sum_sq = 0.0;
    for _ in 0..samples {
        let mut tracker = OccurrenceTracker::new(ctx.automaton(), delta);
        let mut count = 0usize;
        for t in 1..=n {
            let mut mask = model.fixed_mask(t);
            for &(bit, p) in &random {
                if rng.random::<f64>() < p {
                    mask |= bit;
                }
            }
            let hit = tracker.feed(t, |e| ctx.position(e).is_some_and(|i| mask & (1 << i) != 0));
            if hit.is_some() {
                count += 1;
            }
        }
        let c = count as f64;
        sum += c;
        sum_sq += c * c;
    }

    let m = samples as f64;
    let mean = sum / m;
    let std_error = if samples > 1 {
        let var = ((sum_sq - m * mean * mean) / (m - 1.0)).max(0.0);
        (var / m).sqrt()
    } else {
        0.0
    };
    McEstimate {
        mean,
        std_error,
        samples,
    }
}
