//! Finite permutation groups, fully enumerated.
//!
//! Elements are interned and addressed by dense indices in canonical order:
//! the identity is index 0 and the rest follow lexicographically by image
//! array. Conjugation is written `x^g = g⁻¹ x g`.

use std::collections::HashMap;

use rayon::prelude::*;
use thiserror::Error;

use crate::perm::{PermError, Permutation};

pub const DEFAULT_MAX_ORDER: usize = 2_000_000;

/// Groups at most this large get a precomputed Cayley table.
const CAYLEY_TABLE_LIMIT: usize = 2048;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("generator list is empty")]
    NoGenerators,
    #[error("generator {index} has degree {found}, expected {expected}")]
    DegreeMismatch {
        index: usize,
        expected: usize,
        found: usize,
    },
    #[error("group order exceeds cap of {cap} elements")]
    CapExceeded { cap: usize },
    #[error("subset is empty")]
    EmptySubset,
    #[error("subset is the whole group")]
    WholeGroup,
    #[error("subset is not closed under conjugation (element {0} is missing a conjugate)")]
    NotNormal(u32),
    #[error("element index {0} out of range")]
    BadElement(u32),
    #[error(transparent)]
    Perm(#[from] PermError),
}

#[derive(Debug, Clone)]
pub struct GroupSpec {
    pub name: String,
    pub generators: Vec<Permutation>,
    pub max_order: Option<usize>,
}

impl GroupSpec {
    pub fn new(name: impl Into<String>, generators: Vec<Permutation>) -> Self {
        Self {
            name: name.into(),
            generators,
            max_order: None,
        }
    }

    pub fn with_max_order(mut self, cap: usize) -> Self {
        self.max_order = Some(cap);
        self
    }

    pub fn degree(&self) -> Option<usize> {
        self.generators.first().map(Permutation::degree)
    }
}

/// An enumerated group with conjugacy data. Immutable once built.
pub struct Group {
    name: String,
    degree: usize,
    elements: Vec<Permutation>,
    index: HashMap<Permutation, u32>,
    generators: Vec<u32>,
    inverse_index: Vec<u32>,
    class_of: Vec<u32>,
    class_reps: Vec<u32>,
    class_sizes: Vec<u32>,
    conjugator: Vec<u32>,
    table: Option<Vec<u32>>,
}

impl std::fmt::Debug for Group {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Group")
            .field("name", &self.name)
            .field("degree", &self.degree)
            .field("order", &self.order())
            .field("classes", &self.class_count())
            .finish()
    }
}

/// Breadth-first closure of the generators, canonical ordering, and all
/// derived tables (inverses, classes, conjugator witnesses).
pub fn enumerate(spec: &GroupSpec) -> Result<Group, GroupError> {
    let first = spec.generators.first().ok_or(GroupError::NoGenerators)?;
    let degree = first.degree();
    for (index, g) in spec.generators.iter().enumerate() {
        if g.degree() != degree {
            return Err(GroupError::DegreeMismatch {
                index,
                expected: degree,
                found: g.degree(),
            });
        }
    }
    let cap = spec.max_order.unwrap_or(DEFAULT_MAX_ORDER);

    let mut elements = vec![Permutation::identity(degree)];
    let mut index: HashMap<Permutation, u32> = HashMap::new();
    index.insert(elements[0].clone(), 0);
    let mut head = 0;
    while head < elements.len() {
        for g in &spec.generators {
            let next = elements[head].then(g);
            if !index.contains_key(&next) {
                if elements.len() >= cap {
                    return Err(GroupError::CapExceeded { cap });
                }
                index.insert(next.clone(), elements.len() as u32);
                elements.push(next);
            }
        }
        head += 1;
    }

    // The identity image array is lexicographically smallest, so a plain
    // sort puts it at index 0.
    elements.sort_unstable();
    for (i, e) in elements.iter().enumerate() {
        *index.get_mut(e).expect("interned") = i as u32;
    }

    let generators = spec.generators.iter().map(|g| index[g]).collect();
    let inverse_index = elements.iter().map(|e| index[&e.inverse()]).collect();
    let n = elements.len();

    let mut group = Group {
        name: spec.name.clone(),
        degree,
        elements,
        index,
        generators,
        inverse_index,
        class_of: Vec::new(),
        class_reps: Vec::new(),
        class_sizes: Vec::new(),
        conjugator: Vec::new(),
        table: None,
    };
    if n <= CAYLEY_TABLE_LIMIT {
        let table: Vec<u32> = (0..n)
            .into_par_iter()
            .flat_map_iter(|a| {
                let g = &group;
                (0..n).map(move |b| g.lookup_product(a as u32, b as u32))
            })
            .collect();
        group.table = Some(table);
    }
    group.compute_classes();
    Ok(group)
}

impl Group {
    fn lookup_product(&self, a: u32, b: u32) -> u32 {
        let p = self.elements[a as usize].then(&self.elements[b as usize]);
        self.index[&p]
    }

    /// Orbit BFS under conjugation by the generators. For every element `e`
    /// reached from representative `r` we track `h` with `e = r^h`; the
    /// stored conjugator is `h⁻¹`, which carries `e` back to `r`.
    fn compute_classes(&mut self) {
        let n = self.order();
        let mut class_of = vec![u32::MAX; n];
        let mut carry = vec![0u32; n];
        let mut class_reps = Vec::new();
        let mut class_sizes = Vec::new();
        let mut queue = Vec::new();
        for start in 0..n {
            if class_of[start] != u32::MAX {
                continue;
            }
            let class = class_reps.len() as u32;
            class_reps.push(start as u32);
            class_of[start] = class;
            carry[start] = 0;
            queue.clear();
            queue.push(start as u32);
            let mut head = 0;
            while head < queue.len() {
                let a = queue[head];
                head += 1;
                for &s in &self.generators {
                    let b = self.conjugate(a, s);
                    if class_of[b as usize] == u32::MAX {
                        class_of[b as usize] = class;
                        carry[b as usize] = self.mul(carry[a as usize], s);
                        queue.push(b);
                    }
                }
            }
            class_sizes.push(queue.len() as u32);
        }
        self.conjugator = carry
            .iter()
            .map(|&h| self.inverse_index[h as usize])
            .collect();
        self.class_of = class_of;
        self.class_reps = class_reps;
        self.class_sizes = class_sizes;
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn element(&self, e: u32) -> &Permutation {
        &self.elements[e as usize]
    }

    pub fn index_of(&self, p: &Permutation) -> Option<u32> {
        self.index.get(p).copied()
    }

    pub fn generators(&self) -> &[u32] {
        &self.generators
    }

    pub const IDENTITY: u32 = 0;

    /// Product `ab` (`a` first, then `b`).
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        match &self.table {
            Some(t) => t[a as usize * self.order() + b as usize],
            None => self.lookup_product(a, b),
        }
    }

    pub fn inv(&self, a: u32) -> u32 {
        self.inverse_index[a as usize]
    }

    pub fn inverse_index(&self) -> &[u32] {
        &self.inverse_index
    }

    /// `a^g = g⁻¹ a g`.
    pub fn conjugate(&self, a: u32, g: u32) -> u32 {
        self.mul(self.mul(self.inv(g), a), g)
    }

    pub fn commutes(&self, a: u32, b: u32) -> bool {
        match &self.table {
            Some(_) => self.mul(a, b) == self.mul(b, a),
            None => {
                let (p, q) = (self.element(a), self.element(b));
                (0..self.degree).all(|x| q.image(p.image(x)) == p.image(q.image(x)))
            }
        }
    }

    pub fn class_of(&self) -> &[u32] {
        &self.class_of
    }

    pub fn class_reps(&self) -> &[u32] {
        &self.class_reps
    }

    pub fn class_sizes(&self) -> &[u32] {
        &self.class_sizes
    }

    pub fn class_count(&self) -> usize {
        self.class_reps.len()
    }

    /// Witness `g` with `e^g` equal to the representative of `e`'s class.
    pub fn conjugator(&self) -> &[u32] {
        &self.conjugator
    }

    pub fn rep_of(&self, e: u32) -> u32 {
        self.class_reps[self.class_of[e as usize] as usize]
    }

    pub fn centralizer(&self, x: u32) -> Vec<u32> {
        (0..self.order() as u32)
            .filter(|&g| self.commutes(g, x))
            .collect()
    }

    /// Elements whose conjugacy class is a singleton.
    pub fn center(&self) -> Vec<u32> {
        (0..self.order() as u32)
            .filter(|&e| self.class_sizes[self.class_of[e as usize] as usize] == 1)
            .collect()
    }

    pub fn is_abelian(&self) -> bool {
        self.class_count() == self.order()
    }

    /// Conjugacy classes as sorted element lists, in class-id order.
    pub fn conjugacy_classes(&self) -> Vec<Vec<u32>> {
        let mut classes = vec![Vec::new(); self.class_count()];
        for (e, &c) in self.class_of.iter().enumerate() {
            classes[c as usize].push(e as u32);
        }
        classes
    }

    fn membership(&self, set: &[u32]) -> Result<Vec<bool>, GroupError> {
        let mut member = vec![false; self.order()];
        for &e in set {
            *member
                .get_mut(e as usize)
                .ok_or(GroupError::BadElement(e))? = true;
        }
        Ok(member)
    }

    pub fn is_conjugation_closed(&self, set: &[u32]) -> bool {
        self.first_unclosed(set).is_ok_and(|m| m.is_none())
    }

    fn first_unclosed(&self, set: &[u32]) -> Result<Option<u32>, GroupError> {
        let member = self.membership(set)?;
        let mut per_class = vec![0u32; self.class_count()];
        for (e, &m) in member.iter().enumerate() {
            if m {
                per_class[self.class_of[e] as usize] += 1;
            }
        }
        Ok(member
            .iter()
            .enumerate()
            .find(|&(e, &m)| {
                let c = self.class_of[e] as usize;
                m && per_class[c] != self.class_sizes[c]
            })
            .map(|(e, _)| e as u32))
    }

    /// Nonempty and closed under products and inverses.
    pub fn is_subgroup(&self, set: &[u32]) -> bool {
        let Ok(member) = self.membership(set) else {
            return false;
        };
        !set.is_empty()
            && set.iter().all(|&a| member[self.inv(a) as usize])
            && set
                .iter()
                .all(|&a| set.iter().all(|&b| member[self.mul(a, b) as usize]))
    }

    /// `X = {x : xA ⊆ A}` for a proper nonempty normal subset `A`.
    /// The result is always a proper normal subgroup.
    pub fn normal_subset_stabilizer(&self, subset: &[u32]) -> Result<Vec<u32>, GroupError> {
        if subset.is_empty() {
            return Err(GroupError::EmptySubset);
        }
        let member = self.membership(subset)?;
        if member.iter().all(|&m| m) {
            return Err(GroupError::WholeGroup);
        }
        if let Some(e) = self.first_unclosed(subset)? {
            return Err(GroupError::NotNormal(e));
        }
        let elems: Vec<u32> = (0..self.order() as u32)
            .filter(|&e| member[e as usize])
            .collect();
        Ok((0..self.order() as u32)
            .filter(|&x| elems.iter().all(|&a| member[self.mul(x, a) as usize]))
            .collect())
    }
}

/// Free-function form of [`Group::centralizer`].
pub fn centralizer(group: &Group, x: u32) -> Vec<u32> {
    group.centralizer(x)
}

pub fn center(group: &Group) -> Vec<u32> {
    group.center()
}

pub fn conjugacy_classes(group: &Group) -> Vec<Vec<u32>> {
    group.conjugacy_classes()
}

pub fn normal_subset_stabilizer(group: &Group, subset: &[u32]) -> Result<Vec<u32>, GroupError> {
    group.normal_subset_stabilizer(subset)
}
