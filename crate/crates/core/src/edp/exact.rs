//! Exact expected support under a generative model.
//!
//! The engine never materialises random sequences. It carries a probability
//! distribution over sets of active automaton states (`ActiveListDistribution`)
//! from one timestamp to the next. For every pair of a state set `L` and a
//! random event set `E'`, each active state advances by one if its trigger is in
//! `E'`, an arrival at the sink adds `P(L) * P(E')` to the expectation, the
//! source is always kept, and identical successor sets are merged by summing
//! their mass. Because sets carry no start times, window bounds are not applied:
//! the expectation uses unbounded minimal occurrences.

use crate::edp::model::GenerativeModel;
use crate::edp::partition::full_mask;

/// Neumaier compensated sum.
#[derive(Debug, Clone, Copy, Default)]
pub(crate) struct CompensatedSum {
    sum: f64,
    carry: f64,
}

impl CompensatedSum {
    #[inline]
    pub(crate) fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.carry += (self.sum - t) + x;
        } else {
            self.carry += (x - t) + self.sum;
        }
        self.sum = t;
    }

    #[inline]
    pub(crate) fn value(&self) -> f64 {
        self.sum + self.carry
    }
}

/// Probability mass over sets of active automaton states.
///
/// Internally a state set is a bitmask with bit `j` for state `H_j`; bit 0 (the
/// source) is always set, so the dense index is `mask >> 1`.
#[derive(Debug, Clone)]
pub struct ActiveListDistribution {
    mass: Vec<f64>,
    active: Vec<u32>,
}

impl ActiveListDistribution {
    fn initial(k: usize) -> Self {
        let mut mass = vec![0.0; 1 << (k - 1)];
        mass[0] = 1.0;
        Self {
            mass,
            active: vec![0],
        }
    }

    fn empty_like(&self) -> Self {
        Self {
            mass: vec![0.0; self.mass.len()],
            active: Vec::with_capacity(self.active.len()),
        }
    }

    #[inline]
    fn add(&mut self, index: u32, w: f64) {
        let slot = &mut self.mass[index as usize];
        if *slot == 0.0 {
            self.active.push(index);
        }
        *slot += w;
    }

    fn clear(&mut self) {
        for &i in &self.active {
            self.mass[i as usize] = 0.0;
        }
        self.active.clear();
    }

    /// Number of distinct state sets carrying mass.
    pub fn len(&self) -> usize {
        self.active.len()
    }

    pub fn is_empty(&self) -> bool {
        self.active.is_empty()
    }

    /// Total probability mass; 1 up to rounding.
    pub fn total_mass(&self) -> f64 {
        let mut s = CompensatedSum::default();
        for &i in &self.active {
            s.add(self.mass[i as usize]);
        }
        s.value()
    }

    /// `(states, P(L))` pairs, states ascending, sorted by state set.
    pub fn entries(&self) -> Vec<(Vec<usize>, f64)> {
        let mut out: Vec<(Vec<usize>, f64)> = self
            .active
            .iter()
            .map(|&i| {
                let mask = (i << 1) | 1;
                let states = (0..32).filter(|j| mask & (1 << j) != 0).collect();
                (states, self.mass[i as usize])
            })
            .collect();
        out.sort_by(|a, b| a.0.cmp(&b.0));
        out
    }
}

/// Step-by-step evaluator of the expected support for one model.
#[derive(Debug, Clone)]
pub struct ExactEngine<'m, 'c, 's> {
    model: &'m GenerativeModel<'c, 's>,
    k: usize,
    /// For each event mask over `Ω_α`, the states whose trigger it contains.
    triggers: Vec<u32>,
    random: Vec<(u32, f64)>,
    current: ActiveListDistribution,
    next: ActiveListDistribution,
    expectation: CompensatedSum,
    t: usize,
}

impl<'m, 'c, 's> ExactEngine<'m, 'c, 's> {
    pub fn new(model: &'m GenerativeModel<'c, 's>) -> Self {
        let ctx = model.context();
        let automaton = ctx.automaton();
        let k = automaton.sink();
        let omega = ctx.omega();
        let triggers = (0..=full_mask(omega.len()))
            .map(|emask| {
                let contains = |e| ctx.position(e).is_some_and(|i| emask & (1 << i) != 0);
                (0..k)
                    .filter(|&j| automaton.transition_with(j, contains) == Ok(j + 1))
                    .fold(0u32, |m, j| m | (1 << j))
            })
            .collect();
        let current = ActiveListDistribution::initial(k);
        let next = current.empty_like();
        Self {
            model,
            k,
            triggers,
            random: model.random_subsets(),
            current,
            next,
            expectation: CompensatedSum::default(),
            t: 0,
        }
    }

    /// Timestamps processed so far.
    pub fn timestamp(&self) -> usize {
        self.t
    }

    pub fn is_done(&self) -> bool {
        self.t >= self.model.context().len()
    }

    pub fn distribution(&self) -> &ActiveListDistribution {
        &self.current
    }

    /// Expected number of minimal occurrences ending at or before the current
    /// timestamp.
    pub fn accumulated(&self) -> f64 {
        self.expectation.value()
    }

    /// Processes the next timestamp.
    pub fn step(&mut self) {
        debug_assert!(!self.is_done());
        self.t += 1;
        let fixed = self.model.fixed_mask(self.t);
        let k = self.k;
        let keep = full_mask(k);
        let sink_bit = 1u32 << (k - 1);

        for &index in &self.current.active {
            let p_list = self.current.mass[index as usize];
            let states = (index << 1) | 1;
            for &(rmask, p_set) in &self.random {
                let w = p_list * p_set;
                if w == 0.0 {
                    continue;
                }
                let trig = self.triggers[(fixed | rmask) as usize];
                let advanced = states & trig;
                if advanced & sink_bit != 0 {
                    self.expectation.add(w);
                }
                let successor = ((advanced << 1) & keep) | (states & !trig) | 1;
                self.next.add(successor >> 1, w);
            }
        }
        std::mem::swap(&mut self.current, &mut self.next);
        self.next.clear();
    }

    /// Runs to the end and returns the expectation.
    pub fn run(mut self) -> f64 {
        while !self.is_done() {
            self.step();
        }
        self.accumulated()
    }
}

/// `E[sp(α | Ŝ)]` for `Ŝ ~ M`, unbounded window.
pub fn expected_support_exact(model: &GenerativeModel<'_, '_>) -> f64 {
    ExactEngine::new(model).run()
}
