//! Brute-force reference computations for the commuting graph.
//!
//! Nothing here touches conjugacy classes, conjugator witnesses or the
//! Cayley table: adjacency is rebuilt from raw image arrays and every
//! vertex gets its own BFS.

use std::collections::VecDeque;

use rayon::prelude::*;
use serde::Serialize;

use crate::distance::Distance;
use crate::graph::{BalancedWitness, CommGraph};
use crate::group::Group;

/// Hard cap on group order for exhaustive all-pairs work.
pub const ORACLE_MAX_ORDER: usize = 2000;

pub struct Apsp {
    n: usize,
    dist: Vec<u32>,
}

const INF: u32 = u32::MAX;

impl Apsp {
    /// All-pairs shortest paths over element indices (identity row/column
    /// unused).
    pub fn compute(group: &Group) -> Self {
        let n = group.order();
        let elems = group.elements();
        let adjacency: Vec<Vec<u32>> = (0..n)
            .into_par_iter()
            .map(|x| {
                if x == 0 {
                    return Vec::new();
                }
                (1..n)
                    .filter(|&y| y != x && elems[x].then(&elems[y]) == elems[y].then(&elems[x]))
                    .map(|y| y as u32)
                    .collect()
            })
            .collect();
        let rows: Vec<Vec<u32>> = (0..n)
            .into_par_iter()
            .map(|s| {
                let mut d = vec![INF; n];
                if s == 0 {
                    return d;
                }
                d[s] = 0;
                let mut queue = VecDeque::from([s]);
                while let Some(v) = queue.pop_front() {
                    for &y in &adjacency[v] {
                        if d[y as usize] == INF {
                            d[y as usize] = d[v] + 1;
                            queue.push_back(y as usize);
                        }
                    }
                }
                d
            })
            .collect();
        Self {
            n,
            dist: rows.concat(),
        }
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn get(&self, x: u32, y: u32) -> Distance {
        let raw = self.dist[x as usize * self.n + y as usize];
        if raw == INF {
            Distance::Infinite
        } else {
            Distance::Finite(raw)
        }
    }

    pub fn diameter(&self) -> Option<Distance> {
        let n = self.n as u32;
        (1..n)
            .flat_map(|x| (1..n).map(move |y| (x, y)))
            .map(|(x, y)| self.get(x, y))
            .max()
    }

    /// Number of connected components (vertices grouped by reachability).
    pub fn component_count(&self) -> usize {
        let n = self.n as u32;
        let mut labelled = vec![false; self.n];
        let mut count = 0;
        for x in 1..n {
            if labelled[x as usize] {
                continue;
            }
            count += 1;
            for y in 1..n {
                if self.get(x, y).is_finite() {
                    labelled[y as usize] = true;
                }
            }
        }
        count
    }

    pub fn witness(&self, group: &Group, x: u32, y: u32) -> BalancedWitness {
        let ex = group.element(x);
        let ey = group.element(y);
        let xy = group.index_of(&ex.then(ey)).expect("closed");
        let xinv_y = group.index_of(&ex.inverse().then(ey)).expect("closed");
        BalancedWitness {
            x,
            y,
            distances: [
                self.get(x, y),
                self.get(x, xy),
                self.get(y, xy),
                self.get(x, xinv_y),
                self.get(y, xinv_y),
            ],
        }
    }

    /// Exhaustive search over all ordered non-degenerate pairs.
    pub fn find_balanced_pair(&self, group: &Group) -> Option<BalancedWitness> {
        let n = self.n as u32;
        (1..n).into_par_iter().find_map_first(|x| {
            let ex = group.element(x);
            (1..n).find_map(|y| {
                let ey = group.element(y);
                if y == x || ex.then(ey).is_identity() {
                    return None;
                }
                let w = self.witness(group, x, y);
                w.is_positive().then_some(w)
            })
        })
    }

    /// "DIAM_GT4", "BALANCED" or "NEITHER", by brute force.
    pub fn verdict(&self, group: &Group) -> &'static str {
        match self.diameter() {
            None => "EMPTY",
            Some(d) if d.exceeds(4) => "DIAM_GT4",
            Some(_) => match self.find_balanced_pair(group) {
                Some(_) => "BALANCED",
                None => "NEITHER",
            },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Mismatch {
    pub x: u32,
    pub y: u32,
    pub engine: Distance,
    pub oracle: Distance,
}

/// Differences between the class-row distance engine and brute force.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OracleDiff {
    pub group: String,
    pub order: usize,
    pub pairs_checked: u64,
    pub mismatch_count: u64,
    pub mismatches: Vec<Mismatch>,
    pub engine_diameter: Option<Distance>,
    pub oracle_diameter: Option<Distance>,
    pub engine_components: usize,
    pub oracle_components: usize,
}

impl OracleDiff {
    pub fn is_empty(&self) -> bool {
        self.mismatch_count == 0
            && self.engine_diameter == self.oracle_diameter
            && self.engine_components == self.oracle_components
    }
}

/// Mismatches beyond this many are counted but not listed.
const MAX_LISTED: usize = 100;

pub fn diff(graph: &CommGraph<'_>, apsp: &Apsp) -> OracleDiff {
    let group = graph.group();
    let n = group.order() as u32;
    let mut mismatches: Vec<Mismatch> = (1..n)
        .into_par_iter()
        .flat_map_iter(|x| {
            (1..n).filter_map(move |y| {
                let engine = graph.distance(x, y).expect("vertex");
                let oracle = apsp.get(x, y);
                (engine != oracle).then_some(Mismatch {
                    x,
                    y,
                    engine,
                    oracle,
                })
            })
        })
        .collect();
    let mismatch_count = mismatches.len() as u64;
    mismatches.truncate(MAX_LISTED);
    OracleDiff {
        group: group.name().to_string(),
        order: group.order(),
        pairs_checked: u64::from(n.saturating_sub(1)).pow(2),
        mismatch_count,
        mismatches,
        engine_diameter: graph.diameter().ok(),
        oracle_diameter: apsp.diameter(),
        engine_components: graph.components().len(),
        oracle_components: apsp.component_count(),
    }
}
