//! Runs synth -> mine -> screen -> eval on the synthetic benchmark.
//!
//! `cargo run --release --example syn_pipeline -- [seed] [p_noise] [every|unplanted] [max_len]`

use std::collections::HashSet;
use std::time::Instant;

use edp_core::edp::{kept_ranking, screen, NullModel, ScreenConfig};
use edp_core::eval::compare_methods;
use edp_core::miner::{mine_frequent, MinerConfig};
use edp_core::synth::{generate_syn, FillerMode, SynConfig};

fn main() {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let seed = args.first().and_then(|s| s.parse().ok()).unwrap_or(0);
    let p_noise = args.get(1).and_then(|s| s.parse().ok()).unwrap_or(0.3);
    let filler = if args.get(2).map(String::as_str) == Some("unplanted") {
        FillerMode::Unplanted
    } else {
        FillerMode::Every
    };
    let cfg = SynConfig {
        seed,
        p_noise,
        filler,
        ..SynConfig::default()
    };
    let data = generate_syn(&cfg).unwrap();
    let seq = &data.sequence;
    println!(
        "events/timestamp {:.3}",
        seq.total_events() as f64 / seq.len() as f64
    );

    let clock = Instant::now();
    let max_len = args.get(3).and_then(|s| s.parse().ok()).unwrap_or(6);
    let f = mine_frequent(
        seq,
        &MinerConfig {
            max_len,
            ..MinerConfig::default()
        },
    )
    .unwrap();
    println!("|F| = {} ({:.2?})", f.len(), clock.elapsed());
    let mut by_len = std::collections::BTreeMap::new();
    for e in &f {
        *by_len.entry(e.labels.len()).or_insert(0) += 1;
    }
    println!("by length {by_len:?}");
    let with_x = f
        .iter()
        .filter(|e| e.labels.iter().any(|l| l == "X"))
        .count();
    println!("with X {with_x}");
    let entries: Vec<_> = f.iter().map(|e| e.entry()).collect();

    let truth: HashSet<Vec<String>> = data.truth.iter().map(|e| e.labels.clone()).collect();
    let mut rankings = Vec::new();
    for (name, null_model) in [("EDP", NullModel::Edp), ("IND", NullModel::Ind)] {
        let clock = Instant::now();
        let records = screen(
            seq,
            &entries,
            &ScreenConfig {
                null_model,
                ..ScreenConfig::default()
            },
        )
        .unwrap();
        let kept = kept_ranking(&records);
        println!("{name}: {} kept ({:.2?})", kept.len(), clock.elapsed());
        for r in kept.iter().take(22) {
            println!(
                "  {:<14} sp={:<4} exp={:>9.3} lift={:.4}",
                r.arrow(),
                r.observed_support,
                r.exp_sup,
                r.lift
            );
        }
        rankings.push((
            name.to_string(),
            kept.iter().map(|r| r.labels.clone()).collect(),
        ));
    }
    print!("{}", compare_methods(&rankings, &truth, 15).to_text());
}
