//! Finite lattices and their order-preserving self-maps.
//!
//! A [`Lattice`] is stored as its order matrix together with fully tabulated
//! join and meet operations. Elements are identified by position; names are
//! only used for input and output.

use std::collections::HashMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::order;

/// Default maximum number of lattice elements.
pub const DEFAULT_LATTICE_CAP: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BoundKind {
    Join,
    Meet,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum StandardLattice {
    Powerset,
    Chain,
    Boolean,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Lattice {
    names: Vec<String>,
    leq: Vec<Vec<bool>>,
    join: Vec<Vec<usize>>,
    meet: Vec<Vec<usize>>,
    top: usize,
    bottom: usize,
}

fn index_names(names: &[String]) -> Result<HashMap<&str, usize>> {
    let mut index = HashMap::with_capacity(names.len());
    for (i, n) in names.iter().enumerate() {
        if index.insert(n.as_str(), i).is_some() {
            return Err(Error::DuplicateName(n.clone()));
        }
    }
    Ok(index)
}

fn resolve_pairs(
    index: &HashMap<&str, usize>,
    pairs: &[(String, String)],
) -> Result<Vec<(usize, usize)>> {
    pairs
        .iter()
        .map(|(a, b)| {
            let ia = *index.get(a.as_str()).ok_or_else(|| Error::UnknownElement(a.clone()))?;
            let ib = *index.get(b.as_str()).ok_or_else(|| Error::UnknownElement(b.clone()))?;
            Ok((ia, ib))
        })
        .collect()
}

impl Lattice {
    /// Builds a lattice from its Hasse covers `(lower, upper)`.
    pub fn from_covers(names: Vec<String>, covers: &[(String, String)]) -> Result<Self> {
        Self::from_pairs(names, covers, DEFAULT_LATTICE_CAP)
    }

    /// Builds a lattice from a full order relation. The relation is closed
    /// anyway, so any generating set of pairs is accepted.
    pub fn from_relation(names: Vec<String>, leq: &[(String, String)]) -> Result<Self> {
        Self::from_pairs(names, leq, DEFAULT_LATTICE_CAP)
    }

    pub fn from_pairs(names: Vec<String>, pairs: &[(String, String)], cap: usize) -> Result<Self> {
        let index = index_names(&names)?;
        let pairs = resolve_pairs(&index, pairs)?;
        if names.len() > cap {
            return Err(Error::SizeCapExceeded { what: "lattice", size: names.len(), cap });
        }
        let leq = order::closure(names.len(), &pairs);
        Self::from_order(names, leq)
    }

    /// Builds from an already reflexive and transitive relation matrix.
    pub(crate) fn from_order(names: Vec<String>, leq: Vec<Vec<bool>>) -> Result<Self> {
        let n = names.len();
        if n < 2 {
            return Err(Error::TrivialLattice);
        }
        if let Some((a, b)) = order::antisymmetry_violation(&leq) {
            return Err(Error::NotAntisymmetric { a: names[a].clone(), b: names[b].clone() });
        }
        let mut join = vec![vec![0; n]; n];
        let mut meet = vec![vec![0; n]; n];
        for a in 0..n {
            for b in a..n {
                let lub = least_upper(&leq, a, b).ok_or_else(|| Error::NotALattice {
                    a: names[a].clone(),
                    b: names[b].clone(),
                    bound: "least upper bound",
                })?;
                let glb = greatest_lower(&leq, a, b).ok_or_else(|| Error::NotALattice {
                    a: names[a].clone(),
                    b: names[b].clone(),
                    bound: "greatest lower bound",
                })?;
                join[a][b] = lub;
                join[b][a] = lub;
                meet[a][b] = glb;
                meet[b][a] = glb;
            }
        }
        let top = (1..n).fold(0, |acc, x| join[acc][x]);
        let bottom = (1..n).fold(0, |acc, x| meet[acc][x]);
        Ok(Lattice { names, leq, join, meet, top, bottom })
    }

    /// `{}`, `{1}`, `{2}`, `{1,2}`, ... indexed by bitmask.
    pub fn powerset(n: usize) -> Result<Self> {
        if n == 0 || n > 6 {
            return Err(Error::SizeOutOfRange { what: "powerset", size: n });
        }
        let size = 1usize << n;
        let names = (0..size).map(|mask| subset_name(mask, n)).collect();
        let mut leq = vec![vec![false; size]; size];
        for a in 0..size {
            for b in 0..size {
                leq[a][b] = a & !b == 0;
            }
        }
        Self::from_order(names, leq)
    }

    /// `0 < 1 < ... < n-1`.
    pub fn chain(n: usize) -> Result<Self> {
        if n < 2 || n > DEFAULT_LATTICE_CAP {
            return Err(Error::SizeOutOfRange { what: "chain", size: n });
        }
        let names = (0..n).map(|i| i.to_string()).collect();
        let leq = (0..n).map(|a| (0..n).map(|b| a <= b).collect()).collect();
        Self::from_order(names, leq)
    }

    pub fn boolean() -> Self {
        Self::chain(2).expect("two-element chain")
    }

    pub fn standard(kind: StandardLattice, n: usize) -> Result<Self> {
        match kind {
            StandardLattice::Powerset => Self::powerset(n),
            StandardLattice::Chain => Self::chain(n),
            StandardLattice::Boolean => Ok(Self::boolean()),
        }
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, x: usize) -> &str {
        &self.names[x]
    }

    pub fn index_of(&self, name: &str) -> Result<usize> {
        self.names
            .iter()
            .position(|n| n == name)
            .ok_or_else(|| Error::UnknownElement(name.to_string()))
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.leq[a][b]
    }

    pub fn relation(&self) -> &[Vec<bool>] {
        &self.leq
    }

    pub fn join(&self, a: usize, b: usize) -> usize {
        self.join[a][b]
    }

    pub fn meet(&self, a: usize, b: usize) -> usize {
        self.meet[a][b]
    }

    pub fn top(&self) -> usize {
        self.top
    }

    pub fn bottom(&self) -> usize {
        self.bottom
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.len()
    }

    /// Join or meet of an arbitrary subset; the empty join is the bottom and
    /// the empty meet is the top.
    pub fn bound<I: IntoIterator<Item = usize>>(&self, kind: BoundKind, subset: I) -> usize {
        match kind {
            BoundKind::Join => subset.into_iter().fold(self.bottom, |acc, x| self.join[acc][x]),
            BoundKind::Meet => subset.into_iter().fold(self.top, |acc, x| self.meet[acc][x]),
        }
    }

    pub fn bound_named(&self, kind: BoundKind, subset: &[&str]) -> Result<usize> {
        let idx = subset.iter().map(|s| self.index_of(s)).collect::<Result<Vec<_>>>()?;
        Ok(self.bound(kind, idx))
    }

    /// The order-dual lattice, with the same element names.
    pub fn dual(&self) -> Lattice {
        let n = self.len();
        let leq = (0..n).map(|a| (0..n).map(|b| self.leq[b][a]).collect()).collect();
        Lattice {
            names: self.names.clone(),
            leq,
            join: self.meet.clone(),
            meet: self.join.clone(),
            top: self.bottom,
            bottom: self.top,
        }
    }

    /// Hasse covers as index pairs.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        order::covers(&self.leq)
    }
}

fn least_upper(leq: &[Vec<bool>], a: usize, b: usize) -> Option<usize> {
    let n = leq.len();
    let upper: Vec<usize> = (0..n).filter(|&c| leq[a][c] && leq[b][c]).collect();
    upper.iter().copied().find(|&c| upper.iter().all(|&d| leq[c][d]))
}

fn greatest_lower(leq: &[Vec<bool>], a: usize, b: usize) -> Option<usize> {
    let n = leq.len();
    let lower: Vec<usize> = (0..n).filter(|&c| leq[c][a] && leq[c][b]).collect();
    lower.iter().copied().find(|&c| lower.iter().all(|&d| leq[d][c]))
}

fn subset_name(mask: usize, n: usize) -> String {
    let items: Vec<String> = (0..n).filter(|i| mask >> i & 1 == 1).map(|i| (i + 1).to_string()).collect();
    format!("{{{}}}", items.join(","))
}

/// Order-preserving self-map of a lattice.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticeMorphism {
    lattice: Arc<Lattice>,
    mapping: Vec<usize>,
}

impl LatticeMorphism {
    pub fn new(lattice: Arc<Lattice>, mapping: Vec<usize>) -> Result<Self> {
        if mapping.len() != lattice.len() {
            return Err(Error::Mismatched("lattice morphism domain"));
        }
        if let Some(&bad) = mapping.iter().find(|&&y| y >= lattice.len()) {
            return Err(Error::UnknownElement(bad.to_string()));
        }
        for a in lattice.elements() {
            for b in lattice.elements() {
                if lattice.leq(a, b) && !lattice.leq(mapping[a], mapping[b]) {
                    return Err(Error::NotOrderPreserving {
                        a: lattice.name(a).to_string(),
                        b: lattice.name(b).to_string(),
                    });
                }
            }
        }
        Ok(LatticeMorphism { lattice, mapping })
    }

    pub fn identity(lattice: Arc<Lattice>) -> Self {
        let mapping = lattice.elements().collect();
        LatticeMorphism { lattice, mapping }
    }

    /// `cons(value)`.
    pub fn constant(lattice: Arc<Lattice>, value: usize) -> Self {
        let mapping = vec![value; lattice.len()];
        LatticeMorphism { lattice, mapping }
    }

    /// Bottom on the down-set of `threshold`, top elsewhere.
    pub fn threshold(lattice: Arc<Lattice>, threshold: usize) -> Self {
        let mapping = lattice
            .elements()
            .map(|x| if lattice.leq(x, threshold) { lattice.bottom() } else { lattice.top() })
            .collect();
        LatticeMorphism { lattice, mapping }
    }

    /// `x |-> x v value`.
    pub fn join_with(lattice: Arc<Lattice>, value: usize) -> Self {
        let mapping = lattice.elements().map(|x| lattice.join(x, value)).collect();
        LatticeMorphism { lattice, mapping }
    }

    pub fn lattice(&self) -> &Arc<Lattice> {
        &self.lattice
    }

    pub fn mapping(&self) -> &[usize] {
        &self.mapping
    }

    pub fn apply(&self, x: usize) -> usize {
        self.mapping[x]
    }

    /// `next` after `self`.
    pub fn then(&self, next: &LatticeMorphism) -> Result<LatticeMorphism> {
        if *self.lattice != *next.lattice {
            return Err(Error::Mismatched("lattice"));
        }
        let mapping = self.mapping.iter().map(|&x| next.mapping[x]).collect();
        LatticeMorphism::new(self.lattice.clone(), mapping)
    }
}
