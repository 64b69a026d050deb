//! Free-rider episode screening.
//!
//! Mines frequent serial episodes from a single event sequence and screens
//! episodes whose observed minimal-occurrence support is explained by a
//! dual-partition null model: informative events are replayed from the data
//! while the remaining events are regenerated independently. Survivors are
//! ranked by Lift.
//!
//! ```
//! use edp_core::{edp, fixtures, Episode};
//!
//! let seq = fixtures::d1();
//! let ab = Episode::parse("a->b", seq.alphabet()).unwrap();
//! let ctx = edp::EpisodeContext::new(&seq, &ab).unwrap();
//! let record = edp::exp_sup(&ctx, 2, &edp::ScreenConfig::default()).unwrap();
//! assert!((record.lift - 1.5625).abs() < 1e-12);
//! ```

pub mod automaton;
pub mod edp;
pub mod episode;
pub mod error;
pub mod eval;
pub mod fixtures;
pub mod miner;
pub mod par;
pub mod selfcheck;
pub mod sequence;
pub mod synth;

pub use automaton::{minimal_occurrences, support, EpisodeAutomaton, Window, UNBOUNDED};
pub use episode::{Episode, EpisodeEntry};
pub use error::{EdpError, ParseError, Result};
pub use sequence::{Alphabet, EventId, EventSequence};
