//! JSON documents with a fixed field order.

use serde::Serialize;
use sumchain::{TargetKind, TargetSet};

#[derive(Debug, Serialize)]
pub struct TargetsDoc {
    pub kind: &'static str,
    pub params: Option<Vec<i64>>,
}

impl TargetsDoc {
    pub fn of(ts: &TargetSet) -> Self {
        let kind = ts.kind();
        let params = match kind {
            TargetKind::Recurrence { x0, x1 } => Some(vec![*x0, *x1]),
            TargetKind::Explicit(v) => Some(v.clone()),
            _ => None,
        };
        TargetsDoc {
            kind: kind.name(),
            params,
        }
    }
}

#[derive(Debug, Serialize)]
pub struct SequenceDoc {
    pub n: usize,
    pub targets: TargetsDoc,
    pub mode: &'static str,
    pub beads: Vec<u32>,
    pub sums: Vec<i64>,
    pub closed: bool,
}

impl SequenceDoc {
    pub fn new(beads: &[u32], ts: &TargetSet, closed: bool) -> Self {
        let mut sums: Vec<i64> = beads
            .windows(2)
            .map(|w| i64::from(w[0]) + i64::from(w[1]))
            .collect();
        if closed && beads.len() >= 3 {
            sums.push(i64::from(beads[0]) + i64::from(beads[beads.len() - 1]));
        }
        SequenceDoc {
            n: beads.len(),
            targets: TargetsDoc::of(ts),
            mode: if closed { "necklace" } else { "chain" },
            beads: beads.to_vec(),
            sums,
            closed,
        }
    }
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string(value).expect("documents serialize")
}
