//! JSON-lines screening report.
//!
//! One object per episode:
//!
//! ```text
//! {"episode":"a->b","support":2,"exp_sup":1.28,"lift":1.5625,"kept":true,
//!  "best_partition":{"informative":["a"]},"witness_partition":null,"fully_enumerated":true}
//! ```
//!
//! JSON has no infinity, so an unbounded lift is written as the string `"inf"`.

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::edp::screen::ScreeningRecord;
use crate::error::ParseError;
use crate::sequence::Alphabet;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PartitionJson {
    pub informative: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportLine {
    pub episode: String,
    pub support: usize,
    pub exp_sup: f64,
    #[serde(serialize_with = "ser_lift", deserialize_with = "de_lift")]
    pub lift: f64,
    pub kept: bool,
    pub best_partition: PartitionJson,
    pub witness_partition: Option<PartitionJson>,
    pub fully_enumerated: bool,
}

fn ser_lift<S: Serializer>(v: &f64, s: S) -> Result<S::Ok, S::Error> {
    if v.is_infinite() && *v > 0.0 {
        s.serialize_str("inf")
    } else {
        s.serialize_f64(*v)
    }
}

fn de_lift<'de, D: Deserializer<'de>>(d: D) -> Result<f64, D::Error> {
    #[derive(Deserialize)]
    #[serde(untagged)]
    enum Lift {
        Num(f64),
        Text(String),
    }
    match Lift::deserialize(d)? {
        Lift::Num(v) => Ok(v),
        Lift::Text(t) if t == "inf" => Ok(f64::INFINITY),
        Lift::Text(t) => Err(serde::de::Error::custom(format!("invalid lift {t:?}"))),
    }
}

impl ReportLine {
    pub fn from_record(record: &ScreeningRecord, alphabet: &Alphabet) -> Self {
        Self {
            episode: record.arrow(),
            support: record.observed_support,
            exp_sup: record.exp_sup,
            lift: record.lift,
            kept: record.kept,
            best_partition: PartitionJson {
                informative: record.best_partition.informative_labels(alphabet),
            },
            witness_partition: record.witness_partition.as_ref().map(|p| PartitionJson {
                informative: p.informative_labels(alphabet),
            }),
            fully_enumerated: record.fully_enumerated,
        }
    }

    pub fn labels(&self) -> Vec<String> {
        self.episode
            .split(crate::episode::ARROW)
            .map(str::to_string)
            .collect()
    }
}

pub fn write_report(records: &[ScreeningRecord], alphabet: &Alphabet) -> String {
    let mut out = String::new();
    for r in records {
        let line = ReportLine::from_record(r, alphabet);
        out.push_str(&serde_json::to_string(&line).expect("report line serializes"));
        out.push('\n');
    }
    out
}

pub fn parse_report(text: &str) -> Result<Vec<ReportLine>, ParseError> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(i, l)| {
            serde_json::from_str(l).map_err(|e| ParseError::Malformed {
                line: i + 1,
                reason: e.to_string(),
            })
        })
        .collect()
}

/// Kept episodes in file order, as label sequences.
pub fn kept_labels(lines: &[ReportLine]) -> Vec<Vec<String>> {
    lines
        .iter()
        .filter(|l| l.kept)
        .map(ReportLine::labels)
        .collect()
}
