//! Dual-partition null models and free-rider screening.
//!
//! For an episode with distinct events `Ω`, every proper split of `Ω` into
//! informative and random events defines a generative model. Its expected
//! minimal-occurrence support is computed exactly by [`expected_support_exact`]
//! (or estimated by sampling with [`expected_support_mc`]). `ExpSup` is the
//! maximum over partitions and `Lift = sp / ExpSup`.

mod exact;
mod model;
mod montecarlo;
mod partition;
mod report;
mod screen;

pub use exact::{expected_support_exact, ActiveListDistribution, ExactEngine};
pub use model::{EpisodeContext, GenerativeModel, MAX_EPISODE_ALPHABET, MAX_EPISODE_LEN};
pub use montecarlo::{expected_support_mc, McEstimate};
pub use partition::{enumerate_partitions, DualPartition};
pub use report::{kept_labels, parse_report, write_report, PartitionJson, ReportLine};
pub use screen::{
    candidate_partitions, exp_sup, kept_ranking, lift, rank_order, screen, NullModel,
    PartitionResult, ScreenConfig, ScreenMode, ScreeningRecord,
};
