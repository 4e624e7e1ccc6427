//! The commuting graph of a finite group.
//!
//! Vertices are the non-identity elements; `x ~ y` iff `x ≠ y` and
//! `xy = yx`. Adjacency is never materialized: the neighbors of `x` are its
//! centralizer minus `{1, x}`, obtained by conjugating the centralizer of
//! the class representative of `x`.
//!
//! Conjugation by any `g` is a graph automorphism, so all distances reduce
//! to BFS rows rooted at class representatives:
//! `d(x, y) = d(rep(x), y^g)` where `x^g = rep(x)`. Only one BFS per
//! nontrivial class is ever run.

use fixedbitset::FixedBitSet;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::distance::Distance;
use crate::group::Group;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("the identity is not a vertex of the commuting graph")]
    IdentityVertex,
    #[error("element index {0} out of range")]
    BadVertex(u32),
    #[error("graph has no vertices (trivial group)")]
    Empty,
    #[error("degenerate pair ({x}, {y}): xy or x⁻¹y is the identity")]
    DegeneratePair { x: u32, y: u32 },
}

/// Single-source distances; `dist` is indexed by element index (the
/// identity slot is unused and holds infinity).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistanceRow {
    pub source: u32,
    dist: Vec<u32>,
}

impl DistanceRow {
    pub fn get(&self, y: u32) -> Distance {
        Distance::from_raw(self.dist[y as usize])
    }

    /// Largest distance to any vertex, infinite if some vertex is unreached.
    pub fn eccentricity(&self) -> Distance {
        self.dist[1..]
            .iter()
            .map(|&d| Distance::from_raw(d))
            .max()
            .unwrap_or(Distance::ZERO)
    }

    pub fn iter(&self) -> impl Iterator<Item = (u32, Distance)> + '_ {
        self.dist
            .iter()
            .enumerate()
            .skip(1)
            .map(|(y, &d)| (y as u32, Distance::from_raw(d)))
    }
}

/// The five distances `d(x,y), d(x,xy), d(y,xy), d(x,x⁻¹y), d(y,x⁻¹y)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct BalancedWitness {
    pub x: u32,
    pub y: u32,
    pub distances: [Distance; 5],
}

impl BalancedWitness {
    /// All five distances exceed 3.
    pub fn is_positive(&self) -> bool {
        self.distances.iter().all(|d| d.exceeds(3))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BalancedSearch {
    pub witness: Option<BalancedWitness>,
    /// Pairs in the (representative, vertex) search space with `xy = 1`
    /// or `x⁻¹y = 1`; these are never tested.
    pub degenerate_pairs: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    DiamGt4,
    Balanced(BalancedWitness),
    Neither,
}

impl Verdict {
    pub fn label(&self) -> &'static str {
        match self {
            Verdict::DiamGt4 => "DIAM_GT4",
            Verdict::Balanced(_) => "BALANCED",
            Verdict::Neither => "NEITHER",
        }
    }

    pub fn witness(&self) -> Option<&BalancedWitness> {
        match self {
            Verdict::Balanced(w) => Some(w),
            _ => None,
        }
    }
}

pub struct CommGraph<'g> {
    group: &'g Group,
    rep_centralizers: Vec<Vec<u32>>,
    /// One row per conjugacy class; `None` for the identity class.
    rows: Vec<Option<DistanceRow>>,
}

impl<'g> CommGraph<'g> {
    /// Builds the graph and the per-class distance rows. Rows are computed
    /// in parallel and stored by class id, so the result does not depend on
    /// scheduling.
    pub fn new(group: &'g Group) -> Self {
        let rep_centralizers = group
            .class_reps()
            .par_iter()
            .map(|&r| group.centralizer(r))
            .collect();
        let mut graph = Self {
            group,
            rep_centralizers,
            rows: Vec::new(),
        };
        let rows = group
            .class_reps()
            .par_iter()
            .map(|&r| (r != Group::IDENTITY).then(|| graph.bfs_raw(r)))
            .collect();
        graph.rows = rows;
        graph
    }

    pub fn group(&self) -> &'g Group {
        self.group
    }

    pub fn vertex_count(&self) -> usize {
        self.group.order() - 1
    }

    fn check_vertex(&self, x: u32) -> Result<(), GraphError> {
        if x == Group::IDENTITY {
            Err(GraphError::IdentityVertex)
        } else if x as usize >= self.group.order() {
            Err(GraphError::BadVertex(x))
        } else {
            Ok(())
        }
    }

    /// Calls `f` on every neighbor of `x` (unordered).
    fn for_each_neighbor(&self, x: u32, mut f: impl FnMut(u32)) {
        let g = self.group;
        let class = g.class_of()[x as usize] as usize;
        // x = rep^{h} with h = conjugator⁻¹, and C(x) = C(rep)^h.
        let h = g.inv(g.conjugator()[x as usize]);
        let h_inv = g.conjugator()[x as usize];
        for &c in &self.rep_centralizers[class] {
            let y = g.mul(g.mul(h_inv, c), h);
            if y != Group::IDENTITY && y != x {
                f(y);
            }
        }
    }

    pub fn neighbors(&self, x: u32) -> Result<Vec<u32>, GraphError> {
        self.check_vertex(x)?;
        let mut out = Vec::new();
        self.for_each_neighbor(x, |y| out.push(y));
        out.sort_unstable();
        Ok(out)
    }

    fn bfs_raw(&self, source: u32) -> DistanceRow {
        let n = self.group.order();
        let mut dist = vec![Distance::RAW_INF; n];
        let mut seen = FixedBitSet::with_capacity(n);
        let mut frontier = vec![source];
        let mut next = Vec::new();
        seen.insert(source as usize);
        dist[source as usize] = 0;
        let mut level = 0;
        while !frontier.is_empty() {
            level += 1;
            for &v in &frontier {
                self.for_each_neighbor(v, |y| {
                    if !seen.put(y as usize) {
                        dist[y as usize] = level;
                        next.push(y);
                    }
                });
            }
            std::mem::swap(&mut frontier, &mut next);
            next.clear();
        }
        DistanceRow { source, dist }
    }

    pub fn bfs_from(&self, x: u32) -> Result<DistanceRow, GraphError> {
        self.check_vertex(x)?;
        Ok(self.bfs_raw(x))
    }

    /// Cached row of the class representative of `x`'s class.
    pub fn class_row(&self, x: u32) -> Result<&DistanceRow, GraphError> {
        self.check_vertex(x)?;
        let class = self.group.class_of()[x as usize] as usize;
        Ok(self.rows[class]
            .as_ref()
            .expect("non-identity class has a row"))
    }

    pub fn distance(&self, x: u32, y: u32) -> Result<Distance, GraphError> {
        self.check_vertex(y)?;
        let row = self.class_row(x)?;
        let g = self.group.conjugator()[x as usize];
        Ok(row.get(self.group.conjugate(y, g)))
    }

    /// Connected components, each sorted, ordered by smallest vertex.
    pub fn components(&self) -> Vec<Vec<u32>> {
        let n = self.group.order();
        let mut seen = FixedBitSet::with_capacity(n);
        seen.insert(0);
        let mut out = Vec::new();
        for start in 1..n {
            if seen.put(start) {
                continue;
            }
            let mut comp = vec![start as u32];
            let mut head = 0;
            while head < comp.len() {
                let v = comp[head];
                head += 1;
                self.for_each_neighbor(v, |y| {
                    if !seen.put(y as usize) {
                        comp.push(y);
                    }
                });
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// Maximum eccentricity, taken over class representatives only.
    pub fn diameter(&self) -> Result<Distance, GraphError> {
        if self.vertex_count() == 0 {
            return Err(GraphError::Empty);
        }
        Ok(self
            .rows
            .iter()
            .flatten()
            .map(DistanceRow::eccentricity)
            .max()
            .unwrap_or(Distance::ZERO))
    }

    fn witness_unchecked(&self, x: u32, y: u32) -> BalancedWitness {
        let g = self.group;
        let xy = g.mul(x, y);
        let xinv_y = g.mul(g.inv(x), y);
        let d = |a, b| self.distance(a, b).expect("valid vertices");
        BalancedWitness {
            x,
            y,
            distances: [d(x, y), d(x, xy), d(y, xy), d(x, xinv_y), d(y, xinv_y)],
        }
    }

    fn is_degenerate(&self, x: u32, y: u32) -> bool {
        let g = self.group;
        g.mul(x, y) == Group::IDENTITY || x == y
    }

    /// Evaluates the five-distance relation for `(x, y)`; the witness is
    /// returned whether or not the pair is balanced.
    pub fn is_balanced_pair(&self, x: u32, y: u32) -> Result<(bool, BalancedWitness), GraphError> {
        self.check_vertex(x)?;
        self.check_vertex(y)?;
        if self.is_degenerate(x, y) {
            return Err(GraphError::DegeneratePair { x, y });
        }
        let w = self.witness_unchecked(x, y);
        Ok((w.is_positive(), w))
    }

    /// First balanced pair in (class representative, vertex) order. The
    /// relation is invariant under simultaneous conjugation, so fixing `x`
    /// to a representative loses nothing.
    pub fn find_balanced_pair(&self) -> BalancedSearch {
        let g = self.group;
        let n = g.order() as u32;
        let reps: Vec<u32> = g.class_reps().iter().copied().filter(|&r| r != 0).collect();
        let degenerate_pairs = reps
            .iter()
            .map(|&x| if g.inv(x) == x { 1 } else { 2 })
            .sum();
        let witness = reps.par_iter().find_map_first(|&x| {
            let row = self.class_row(x).expect("vertex");
            debug_assert_eq!(row.source, x);
            let x_inv = g.inv(x);
            (1..n).find_map(|y| {
                if self.is_degenerate(x, y) || !row.get(y).exceeds(3) {
                    return None;
                }
                let xy = g.mul(x, y);
                let xinv_y = g.mul(x_inv, y);
                if !row.get(xy).exceeds(3) || !row.get(xinv_y).exceeds(3) {
                    return None;
                }
                let w = self.witness_unchecked(x, y);
                w.is_positive().then_some(w)
            })
        });
        BalancedSearch {
            witness,
            degenerate_pairs,
        }
    }

    pub fn hypothesis_check(&self) -> Result<Verdict, GraphError> {
        if self.diameter()?.exceeds(4) {
            return Ok(Verdict::DiamGt4);
        }
        Ok(match self.find_balanced_pair().witness {
            Some(w) => Verdict::Balanced(w),
            None => Verdict::Neither,
        })
    }
}
