//! Precision@k of ranked episodes against a ground-truth set.

use std::collections::HashSet;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

/// `|top-k ∩ truth| / k`. Missing ranks (fewer than `k` ranked) count as misses.
///
/// Episodes match by exact label sequence.
pub fn precision_at_k(ranked: &[Vec<String>], truth: &HashSet<Vec<String>>, k: usize) -> f64 {
    if k == 0 {
        return 0.0;
    }
    let hits = ranked.iter().take(k).filter(|e| truth.contains(*e)).count();
    hits as f64 / k as f64
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MethodRow {
    pub method: String,
    /// `precision[i]` is precision@(i+1).
    pub precision: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComparisonTable {
    pub k_max: usize,
    pub truth_size: usize,
    pub methods: Vec<MethodRow>,
}

impl ComparisonTable {
    pub fn precision(&self, method: &str, k: usize) -> Option<f64> {
        self.methods
            .iter()
            .find(|m| m.method == method)
            .and_then(|m| m.precision.get(k.checked_sub(1)?))
            .copied()
    }

    /// Aligned text table, one row per `k`, one column per method.
    pub fn to_text(&self) -> String {
        let width = self
            .methods
            .iter()
            .map(|m| m.method.len())
            .max()
            .unwrap_or(0)
            .max(7);
        let mut out = format!("{:>5}", "k");
        for m in &self.methods {
            let _ = write!(out, "  {:>width$}", m.method);
        }
        out.push('\n');
        for k in 1..=self.k_max {
            let _ = write!(out, "{k:>5}");
            for m in &self.methods {
                let _ = write!(
                    out,
                    "  {:>width$}",
                    format!("{:.1}%", 100.0 * m.precision[k - 1])
                );
            }
            out.push('\n');
        }
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("table serializes")
    }
}

/// Precision@k for `k = 1..=k_max` for every named ranking.
pub fn compare_methods(
    rankings: &[(String, Vec<Vec<String>>)],
    truth: &HashSet<Vec<String>>,
    k_max: usize,
) -> ComparisonTable {
    let methods = rankings
        .iter()
        .map(|(name, ranked)| MethodRow {
            method: name.clone(),
            precision: (1..=k_max)
                .map(|k| precision_at_k(ranked, truth, k))
                .collect(),
        })
        .collect();
    ComparisonTable {
        k_max,
        truth_size: truth.len(),
        methods,
    }
}
