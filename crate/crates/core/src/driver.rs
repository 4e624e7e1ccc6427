//! End-to-end runs behind the command-line entry points.
//!
//! Exit codes: 0 success, 2 invalid input, 3 cap exceeded, 4 a verification
//! (lemma check or oracle diff) failed.

use std::path::Path;
use std::time::Instant;

use thiserror::Error;

use crate::checks::check_all;
use crate::corpus::{CorpusEntry, CorpusError};
use crate::graph::{CommGraph, GraphError};
use crate::group::{enumerate, Group, GroupError};
use crate::oracle::{self, Apsp, OracleDiff, ORACLE_MAX_ORDER};
use crate::report::{BalancedReport, DiameterReport, GraphReport, UhypReport, WitnessReport};
use crate::sampler::SamplerConfig;

#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Corpus(#[from] CorpusError),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("{group}: order {order} exceeds the oracle cap of {cap}")]
    OracleCap {
        group: String,
        order: usize,
        cap: usize,
    },
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("verification failed: {0}")]
    Verification(String),
}

impl Error {
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Group(GroupError::CapExceeded { .. }) | Error::OracleCap { .. } => 3,
            Error::Verification(_) => 4,
            _ => 2,
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct RunOptions {
    pub max_order: Option<usize>,
    /// When false, `millis` is reported as 0 so output is byte-stable.
    pub timing: bool,
}

impl Default for RunOptions {
    fn default() -> Self {
        Self {
            max_order: None,
            timing: true,
        }
    }
}

struct Clock {
    start: Instant,
    enabled: bool,
}

impl Clock {
    fn start(opts: &RunOptions) -> Self {
        Self {
            start: Instant::now(),
            enabled: opts.timing,
        }
    }

    fn millis(&self) -> u64 {
        if self.enabled {
            self.start.elapsed().as_millis() as u64
        } else {
            0
        }
    }
}

/// Builds, enumerates, and sanity-checks the order of a corpus entry.
pub fn build_group(entry: &CorpusEntry, max_order: Option<usize>) -> Result<Group, Error> {
    let mut spec = entry.spec()?;
    spec.name = entry.name.clone();
    spec.max_order = max_order;
    let group = enumerate(&spec)?;
    entry.check_order(group.order())?;
    Ok(group)
}

pub fn analyze_group(
    group: &Group,
    clock_start: Instant,
    timing: bool,
) -> Result<GraphReport, Error> {
    let graph = CommGraph::new(group);
    let components = graph.components().len();
    let diameter = graph.diameter()?;
    let (verdict, degenerate_pairs) = if diameter.exceeds(4) {
        (crate::graph::Verdict::DiamGt4, None)
    } else {
        let search = graph.find_balanced_pair();
        let v = match search.witness {
            Some(w) => crate::graph::Verdict::Balanced(w),
            None => crate::graph::Verdict::Neither,
        };
        (v, Some(search.degenerate_pairs))
    };
    let (label, witness) = GraphReport::verdict_of(group, &verdict);
    Ok(GraphReport {
        group: group.name().to_string(),
        order: group.order(),
        classes: group.class_count(),
        components,
        diameter,
        verdict: label,
        witness,
        degenerate_pairs,
        millis: if timing {
            clock_start.elapsed().as_millis() as u64
        } else {
            0
        },
    })
}

pub fn run_analyze(entry: &CorpusEntry, opts: &RunOptions) -> Result<GraphReport, Error> {
    let clock = Clock::start(opts);
    let group = build_group(entry, opts.max_order)?;
    analyze_group(&group, clock.start, clock.enabled)
}

pub fn run_diam(entry: &CorpusEntry, opts: &RunOptions) -> Result<DiameterReport, Error> {
    let clock = Clock::start(opts);
    let group = build_group(entry, opts.max_order)?;
    let graph = CommGraph::new(&group);
    Ok(DiameterReport {
        group: group.name().to_string(),
        order: group.order(),
        components: graph.components().len(),
        diameter: graph.diameter()?,
        millis: clock.millis(),
    })
}

pub fn run_balanced(entry: &CorpusEntry, opts: &RunOptions) -> Result<BalancedReport, Error> {
    let clock = Clock::start(opts);
    let group = build_group(entry, opts.max_order)?;
    let graph = CommGraph::new(&group);
    let search = graph.find_balanced_pair();
    Ok(BalancedReport {
        group: group.name().to_string(),
        order: group.order(),
        balanced: search.witness.is_some(),
        witness: search
            .witness
            .as_ref()
            .map(|w| WitnessReport::new(&group, w)),
        degenerate_pairs: search.degenerate_pairs,
        millis: clock.millis(),
    })
}

/// Exhaustive engine-vs-brute-force comparison. `oracle_cap` defaults to
/// [`ORACLE_MAX_ORDER`].
pub fn run_oracle_diff(
    entry: &CorpusEntry,
    oracle_cap: Option<usize>,
    max_order: Option<usize>,
) -> Result<OracleDiff, Error> {
    let group = build_group(entry, max_order)?;
    let cap = oracle_cap.unwrap_or(ORACLE_MAX_ORDER);
    if group.order() > cap {
        return Err(Error::OracleCap {
            group: entry.name.clone(),
            order: group.order(),
            cap,
        });
    }
    let graph = CommGraph::new(&group);
    let apsp = Apsp::compute(&group);
    Ok(oracle::diff(&graph, &apsp))
}

pub fn run_uhyp(samples: u64, seed: u64, bound: i64) -> Result<UhypReport, Error> {
    if samples == 0 {
        return Err(Error::Invalid("--samples must be at least 1".into()));
    }
    if bound < 1 {
        return Err(Error::Invalid("--bound must be at least 1".into()));
    }
    let cfg = SamplerConfig::new(seed).with_bound(bound);
    let reports = check_all(&cfg, samples);
    Ok(UhypReport {
        seed,
        samples,
        bound,
        passed: reports.iter().all(|r| r.passed()),
        reports,
    })
}

/// One entry per line; blank lines and `#` comments are ignored.
pub fn parse_corpus(text: &str) -> Result<Vec<CorpusEntry>, Error> {
    text.lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .filter(|l| !l.is_empty())
        .map(|l| l.parse::<CorpusEntry>().map_err(Error::from))
        .collect()
}

pub fn run_corpus(path: &Path, opts: &RunOptions) -> Result<Vec<GraphReport>, Error> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Invalid(format!("cannot read {}: {e}", path.display())))?;
    parse_corpus(&text)?
        .iter()
        .map(|entry| run_analyze(entry, opts))
        .collect()
}
