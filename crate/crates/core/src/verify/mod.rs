//! Runnable checks of the structural statements, each keyed by a statement
//! id, plus the brute-force oracles they lean on.

pub mod oracle;
mod registry;
pub mod sample;

use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::format::to_edge_list;
use crate::graph::Graph;

pub use registry::{statement, Statement, STATEMENTS};

/// Kept mismatches per report; the count is always exact.
pub const MISMATCH_LIMIT: usize = 100;

const CHUNK: u64 = 1 << 14;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Mode {
    Exhaustive,
    Sampled { seed: u64, count: u64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ModeKind {
    Exhaustive,
    Sampled,
}

/// Caller overrides; anything left `None` takes the statement's default.
#[derive(Debug, Clone, Default)]
pub struct Params {
    pub n: Option<usize>,
    pub mode: Option<ModeKind>,
    pub seed: Option<u64>,
    pub count: Option<u64>,
    /// Worker threads; `None` or `Some(0)` uses rayon's default.
    pub jobs: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Mismatch {
    pub index: u64,
    /// Edge-list text, 1-based.
    pub graph: String,
    pub expected: String,
    pub observed: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub statement_id: String,
    pub n: Option<usize>,
    pub mode: Mode,
    pub instances_checked: u64,
    pub positives: u64,
    pub mismatch_count: u64,
    pub mismatches: Vec<Mismatch>,
    pub pass: bool,
    #[serde(skip)]
    pub elapsed: Duration,
}

/// Result of a single instance.
pub(crate) struct Outcome {
    checked: bool,
    positive: bool,
    mismatch: Option<(String, String, String)>,
}

impl Outcome {
    /// Hypothesis not met; the instance does not count.
    pub(crate) fn skip() -> Self {
        Outcome {
            checked: false,
            positive: false,
            mismatch: None,
        }
    }

    pub(crate) fn ok(positive: bool) -> Self {
        Outcome {
            checked: true,
            positive,
            mismatch: None,
        }
    }

    pub(crate) fn bad(g: &Graph, expected: impl Into<String>, observed: impl Into<String>) -> Self {
        Outcome {
            checked: true,
            positive: false,
            mismatch: Some((to_edge_list(g), expected.into(), observed.into())),
        }
    }

    /// Turns a library error raised mid-check into a mismatch on `g`.
    pub(crate) fn guard(g: &Graph, r: Result<Outcome>) -> Outcome {
        r.unwrap_or_else(|e| Outcome::bad(g, "no error", e.to_string()))
    }
}

#[derive(Debug, Default)]
pub(crate) struct Tally {
    swept: u64,
    checked: u64,
    positives: u64,
    mismatch_count: u64,
    mismatches: Vec<Mismatch>,
}

impl Tally {
    fn push(&mut self, index: u64, o: Outcome) {
        self.swept = self.swept.max(index + 1);
        if o.checked {
            self.checked += 1;
        }
        if o.positive {
            self.positives += 1;
        }
        if let Some((graph, expected, observed)) = o.mismatch {
            self.mismatch_count += 1;
            if self.mismatches.len() < MISMATCH_LIMIT {
                self.mismatches.push(Mismatch {
                    index,
                    graph,
                    expected,
                    observed,
                });
            }
        }
    }

    pub(crate) fn merge(&mut self, other: Tally) {
        let offset = self.swept;
        self.swept += other.swept;
        self.checked += other.checked;
        self.positives += other.positives;
        self.mismatch_count += other.mismatch_count;
        for mut m in other.mismatches {
            if self.mismatches.len() < MISMATCH_LIMIT {
                m.index += offset;
                self.mismatches.push(m);
            }
        }
    }
}

/// Execution context handed to each statement.
pub(crate) struct Run<'a> {
    pub n: usize,
    pub mode: Mode,
    pool: &'a rayon::ThreadPool,
}

impl Run<'_> {
    /// Evaluates `f` on `0..count` in parallel; results merge in index
    /// order, so the tally does not depend on the worker count.
    pub(crate) fn sweep<F>(&self, count: u64, f: F) -> Tally
    where
        F: Fn(u64) -> Outcome + Sync,
    {
        let mut tally = Tally::default();
        let mut start = 0;
        while start < count {
            let end = (start + CHUNK).min(count);
            let chunk: Vec<Outcome> = self
                .pool
                .install(|| (start..end).into_par_iter().map(&f).collect());
            for (i, o) in (start..end).zip(chunk) {
                tally.push(i, o);
            }
            start = end;
        }
        tally
    }

    pub(crate) fn seed(&self) -> u64 {
        match self.mode {
            Mode::Sampled { seed, .. } => seed,
            Mode::Exhaustive => 0,
        }
    }

    pub(crate) fn count(&self) -> u64 {
        match self.mode {
            Mode::Sampled { count, .. } => count,
            Mode::Exhaustive => 0,
        }
    }
}

pub const DEFAULT_SEED: u64 = 1;

/// Runs one registry entry.
pub fn run_statement(statement_id: &str, params: &Params) -> Result<VerificationReport> {
    let st = statement(statement_id).ok_or_else(|| Error::UnknownStatement(statement_id.to_string()))?;
    let (n, mode) = st.resolve(params)?;
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(jobs) = params.jobs.filter(|&j| j > 0) {
        builder = builder.num_threads(jobs);
    }
    let pool = builder
        .build()
        .map_err(|e| Error::Anomaly(format!("thread pool: {e}")))?;
    let started = Instant::now();
    let mut tally = Tally::default();
    let sizes: Vec<usize> = match n {
        Some(n) => vec![n],
        None => (st.n_min..=st.n_max).collect(),
    };
    for size in sizes {
        let run = Run {
            n: size,
            mode,
            pool: &pool,
        };
        tally.merge((st.run)(&run)?);
    }
    Ok(VerificationReport {
        statement_id: st.id.to_string(),
        n,
        mode,
        instances_checked: tally.checked,
        positives: tally.positives,
        pass: tally.mismatch_count == 0,
        mismatch_count: tally.mismatch_count,
        mismatches: tally.mismatches,
        elapsed: started.elapsed(),
    })
}
