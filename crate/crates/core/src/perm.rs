//! Permutations on `{0, …, n-1}`.
//!
//! Composition is left-to-right: `p.then(&q)` applies `p` first, then `q`,
//! so `(0 1)` followed by `(0 2)` is the 3-cycle `(0 1 2)`. Group products
//! `xy` throughout the crate use this convention.

use std::fmt;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PermError {
    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(usize, usize),
    #[error("degree must be positive")]
    EmptyDegree,
    #[error("image {image} at position {position} is out of range for degree {degree}")]
    OutOfRange {
        position: usize,
        image: usize,
        degree: usize,
    },
    #[error("image {image} appears more than once (second time at position {position})")]
    Repeated { position: usize, image: usize },
    #[error("invalid cycle notation: {0}")]
    Cycle(String),
}

/// A permutation stored as its image array.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<u32>,
}

impl Permutation {
    /// Validates `images` as a bijection on `0..images.len()`.
    pub fn new(images: Vec<u32>) -> Result<Self, PermError> {
        let degree = images.len();
        if degree == 0 {
            return Err(PermError::EmptyDegree);
        }
        let mut seen = vec![false; degree];
        for (position, &image) in images.iter().enumerate() {
            let image = image as usize;
            if image >= degree {
                return Err(PermError::OutOfRange {
                    position,
                    image,
                    degree,
                });
            }
            if std::mem::replace(&mut seen[image], true) {
                return Err(PermError::Repeated { position, image });
            }
        }
        Ok(Self { images })
    }

    pub fn identity(degree: usize) -> Self {
        Self {
            images: (0..degree as u32).collect(),
        }
    }

    /// Builds a permutation from disjoint cycles, e.g. `&[&[0, 1], &[2, 3]]`.
    pub fn from_cycles(degree: usize, cycles: &[&[u32]]) -> Result<Self, PermError> {
        let mut images: Vec<u32> = (0..degree as u32).collect();
        let mut touched = vec![false; degree];
        for cycle in cycles {
            for (k, &point) in cycle.iter().enumerate() {
                let p = point as usize;
                if p >= degree {
                    return Err(PermError::Cycle(format!("point {p} >= degree {degree}")));
                }
                if std::mem::replace(&mut touched[p], true) {
                    return Err(PermError::Cycle(format!("point {p} used twice")));
                }
                images[p] = cycle[(k + 1) % cycle.len()];
            }
        }
        Self::new(images)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[u32] {
        &self.images
    }

    pub fn image(&self, point: usize) -> usize {
        self.images[point] as usize
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i as u32 == x)
    }

    /// `self` first, then `other`.
    pub fn compose(&self, other: &Self) -> Result<Self, PermError> {
        if self.degree() != other.degree() {
            return Err(PermError::DegreeMismatch(self.degree(), other.degree()));
        }
        Ok(self.then(other))
    }

    /// Unchecked variant of [`compose`](Self::compose); panics on mismatched degrees.
    pub fn then(&self, other: &Self) -> Self {
        assert_eq!(self.degree(), other.degree(), "degree mismatch");
        Self {
            images: self
                .images
                .iter()
                .map(|&x| other.images[x as usize])
                .collect(),
        }
    }

    pub fn inverse(&self) -> Self {
        let mut images = vec![0; self.degree()];
        for (i, &x) in self.images.iter().enumerate() {
            images[x as usize] = i as u32;
        }
        Self { images }
    }

    /// Element order (lcm of cycle lengths).
    pub fn order(&self) -> u64 {
        self.cycles()
            .iter()
            .fold(1u64, |acc, c| num_integer::lcm(acc, c.len() as u64))
    }

    /// Nontrivial cycles, each starting at its smallest point.
    pub fn cycles(&self) -> Vec<Vec<u32>> {
        let mut seen = vec![false; self.degree()];
        let mut out = Vec::new();
        for start in 0..self.degree() {
            if seen[start] || self.image(start) == start {
                continue;
            }
            let mut cycle = Vec::new();
            let mut p = start;
            while !seen[p] {
                seen[p] = true;
                cycle.push(p as u32);
                p = self.image(p);
            }
            out.push(cycle);
        }
        out
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return f.write_str("()");
        }
        for c in cycles {
            let parts: Vec<String> = c.iter().map(|p| p.to_string()).collect();
            write!(f, "({})", parts.join(" "))?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation{}", self)
    }
}

/// Free-function form of [`Permutation::compose`].
pub fn compose(p: &Permutation, q: &Permutation) -> Result<Permutation, PermError> {
    p.compose(q)
}

pub fn invert(p: &Permutation) -> Permutation {
    p.inverse()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn cyc(degree: usize, cycles: &[&[u32]]) -> Permutation {
        Permutation::from_cycles(degree, cycles).unwrap()
    }

    #[test]
    fn compose_transpositions_left_to_right() {
        let p = cyc(3, &[&[0, 1]]);
        let q = cyc(3, &[&[0, 2]]);
        assert_eq!(compose(&p, &q).unwrap(), cyc(3, &[&[0, 1, 2]]));
    }

    #[test]
    fn compose_identity_and_inverse_pair() {
        let q = cyc(4, &[&[0, 3, 1]]);
        assert_eq!(compose(&Permutation::identity(4), &q).unwrap(), q);
        let r = cyc(3, &[&[0, 1, 2]]);
        let s = cyc(3, &[&[0, 2, 1]]);
        assert!(compose(&r, &s).unwrap().is_identity());
    }

    #[test]
    fn compose_rejects_degree_mismatch() {
        let err = compose(&Permutation::identity(3), &Permutation::identity(4)).unwrap_err();
        assert_eq!(err, PermError::DegreeMismatch(3, 4));
    }

    #[test]
    fn invert_examples() {
        assert_eq!(invert(&cyc(3, &[&[0, 1, 2]])), cyc(3, &[&[0, 2, 1]]));
        assert!(invert(&Permutation::identity(5)).is_identity());
        let inv = cyc(4, &[&[0, 1], &[2, 3]]);
        assert_eq!(invert(&inv), inv);
    }

    #[test]
    fn new_rejects_non_bijections() {
        assert!(matches!(
            Permutation::new(vec![0, 0, 1]),
            Err(PermError::Repeated {
                position: 1,
                image: 0
            })
        ));
        assert!(matches!(
            Permutation::new(vec![0, 3, 1]),
            Err(PermError::OutOfRange { position: 1, .. })
        ));
        assert_eq!(Permutation::new(vec![]), Err(PermError::EmptyDegree));
    }

    #[test]
    fn display_uses_cycle_notation() {
        assert_eq!(cyc(5, &[&[1, 3], &[0, 2, 4]]).to_string(), "(0 2 4)(1 3)");
        assert_eq!(Permutation::identity(2).to_string(), "()");
        assert_eq!(cyc(6, &[&[0, 1], &[2, 3, 4]]).order(), 6);
    }

    fn arb_perm(degree: usize) -> impl Strategy<Value = Permutation> {
        Just((0..degree as u32).collect::<Vec<_>>())
            .prop_shuffle()
            .prop_map(|v| Permutation::new(v).unwrap())
    }

    proptest! {
        #[test]
        fn inverse_cancels(p in arb_perm(7)) {
            prop_assert!(p.then(&p.inverse()).is_identity());
            prop_assert!(p.inverse().then(&p).is_identity());
        }

        #[test]
        fn composition_is_associative(p in arb_perm(6), q in arb_perm(6), r in arb_perm(6)) {
            prop_assert_eq!(p.then(&q).then(&r), p.then(&q.then(&r)));
        }
    }
}
