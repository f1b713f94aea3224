//! Finite ordered monoids, their morphisms, products and division.

use std::collections::{HashMap, HashSet, VecDeque};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::order;

/// Default cap on the number of elements of constructed monoids.
pub const DEFAULT_MONOID_CAP: usize = 10_000;

/// A finite monoid given by its Cayley table, with a compatible partial order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrderedMonoid {
    names: Vec<String>,
    identity: usize,
    mul: Vec<Vec<usize>>,
    leq: Vec<Vec<bool>>,
}

impl OrderedMonoid {
    /// Named-input constructor; see [`OrderedMonoid::from_table`].
    pub fn new(
        names: Vec<String>,
        identity: &str,
        mul: &[Vec<String>],
        leq: &[(String, String)],
    ) -> Result<Self> {
        let index: HashMap<&str, usize> = names.iter().enumerate().map(|(i, n)| (n.as_str(), i)).collect();
        if index.len() != names.len() {
            let dup = names.iter().enumerate().find(|(i, n)| index[n.as_str()] != *i).map(|(_, n)| n.clone());
            return Err(Error::DuplicateName(dup.unwrap_or_default()));
        }
        let lookup = |s: &String| index.get(s.as_str()).copied().ok_or_else(|| Error::UnknownElement(s.clone()));
        let identity = lookup(&identity.to_string())?;
        let mul = mul
            .iter()
            .map(|row| row.iter().map(lookup).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        let leq = leq.iter().map(|(a, b)| Ok((lookup(a)?, lookup(b)?))).collect::<Result<Vec<_>>>()?;
        Self::from_table(names, identity, mul, &leq)
    }

    /// Validates unit laws, associativity, the closed order, and
    /// compatibility of the order with left and right translations.
    pub fn from_table(
        names: Vec<String>,
        identity: usize,
        mul: Vec<Vec<usize>>,
        leq_pairs: &[(usize, usize)],
    ) -> Result<Self> {
        let n = names.len();
        if n == 0 {
            return Err(Error::SizeOutOfRange { what: "monoid", size: 0 });
        }
        if n > DEFAULT_MONOID_CAP {
            return Err(Error::SizeCapExceeded { what: "monoid", size: n, cap: DEFAULT_MONOID_CAP });
        }
        if mul.len() != n || mul.iter().any(|r| r.len() != n) {
            return Err(Error::Mismatched("multiplication table shape"));
        }
        if let Some(&bad) = mul.iter().flatten().find(|&&x| x >= n) {
            return Err(Error::UnknownElement(bad.to_string()));
        }
        if identity >= n {
            return Err(Error::UnknownElement(identity.to_string()));
        }
        if let Some(&(a, b)) = leq_pairs.iter().find(|&&(a, b)| a >= n || b >= n) {
            return Err(Error::UnknownElement(a.max(b).to_string()));
        }
        if (0..n).any(|x| mul[identity][x] != x || mul[x][identity] != x) {
            return Err(Error::NoIdentity(names[identity].clone()));
        }
        for x in 0..n {
            for y in 0..n {
                let xy = mul[x][y];
                for z in 0..n {
                    if mul[xy][z] != mul[x][mul[y][z]] {
                        return Err(Error::NotAssociative {
                            x: names[x].clone(),
                            y: names[y].clone(),
                            z: names[z].clone(),
                        });
                    }
                }
            }
        }
        let leq = order::closure(n, leq_pairs);
        if let Some((a, b)) = order::antisymmetry_violation(&leq) {
            return Err(Error::NotAntisymmetric { a: names[a].clone(), b: names[b].clone() });
        }
        let m = OrderedMonoid { names, identity, mul, leq };
        m.check_compatible()?;
        Ok(m)
    }

    pub(crate) fn from_parts_unchecked(
        names: Vec<String>,
        identity: usize,
        mul: Vec<Vec<usize>>,
        leq: Vec<Vec<bool>>,
    ) -> Self {
        OrderedMonoid { names, identity, mul, leq }
    }

    fn check_compatible(&self) -> Result<()> {
        for x in self.elements() {
            for y in self.elements() {
                if x == y || !self.leq[x][y] {
                    continue;
                }
                for z in self.elements() {
                    let side = if !self.leq(self.mul[z][x], self.mul[z][y]) {
                        "left"
                    } else if !self.leq(self.mul[x][z], self.mul[y][z]) {
                        "right"
                    } else {
                        continue;
                    };
                    return Err(Error::NotCompatible {
                        x: self.names[x].clone(),
                        y: self.names[y].clone(),
                        z: self.names[z].clone(),
                        side,
                    });
                }
            }
        }
        Ok(())
    }

    /// The one-element monoid.
    pub fn trivial() -> Self {
        OrderedMonoid {
            names: vec!["1".into()],
            identity: 0,
            mul: vec![vec![0]],
            leq: vec![vec![true]],
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

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, x: usize, y: usize) -> usize {
        self.mul[x][y]
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.mul
    }

    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.leq[x][y]
    }

    pub fn relation(&self) -> &[Vec<bool>] {
        &self.leq
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.len()
    }

    /// Product of a sequence of elements, left to right.
    pub fn product<I: IntoIterator<Item = usize>>(&self, xs: I) -> usize {
        xs.into_iter().fold(self.identity, |acc, x| self.mul[acc][x])
    }

    pub fn greatest(&self) -> Option<usize> {
        self.elements().find(|&g| self.elements().all(|x| self.leq[x][g]))
    }

    /// Same table with the equality order.
    pub fn with_equality_order(&self) -> OrderedMonoid {
        let n = self.len();
        let leq = (0..n).map(|a| (0..n).map(|b| a == b).collect()).collect();
        OrderedMonoid { leq, ..self.clone() }
    }

    /// True iff `x^k = x^(k+1)` for every `x`, for some `k <= |M|`.
    pub fn is_aperiodic(&self) -> bool {
        self.elements().all(|x| {
            let mut p = x;
            for _ in 0..self.len() {
                let next = self.mul[p][x];
                if next == p {
                    return true;
                }
                p = next;
            }
            false
        })
    }

    pub fn identity_is_greatest(&self) -> bool {
        self.elements().all(|x| self.leq[x][self.identity])
    }

    /// Submonoid closure of a set of elements; the result is sorted.
    pub fn closure_of(&self, generators: &[usize]) -> Vec<usize> {
        let mut seen = vec![false; self.len()];
        seen[self.identity] = true;
        let mut queue = VecDeque::from([self.identity]);
        while let Some(x) = queue.pop_front() {
            for &g in generators {
                let y = self.mul[x][g];
                if !seen[y] {
                    seen[y] = true;
                    queue.push_back(y);
                }
            }
        }
        self.elements().filter(|&x| seen[x]).collect()
    }

    /// Restriction to a multiplicatively closed carrier containing the identity.
    pub(crate) fn restrict(&self, carrier: &[usize]) -> OrderedMonoid {
        let pos: HashMap<usize, usize> = carrier.iter().enumerate().map(|(i, &x)| (x, i)).collect();
        let names = carrier.iter().map(|&x| self.names[x].clone()).collect();
        let mul = carrier
            .iter()
            .map(|&x| carrier.iter().map(|&y| pos[&self.mul[x][y]]).collect())
            .collect();
        let leq = carrier
            .iter()
            .map(|&x| carrier.iter().map(|&y| self.leq[x][y]).collect())
            .collect();
        OrderedMonoid { names, identity: pos[&self.identity], mul, leq }
    }

    /// Brute-force isomorphism of ordered monoids: a bijection preserving
    /// identity, multiplication, and the order in both directions.
    pub fn isomorphism_to(&self, other: &OrderedMonoid) -> Option<Vec<usize>> {
        let n = self.len();
        if n != other.len() {
            return None;
        }
        let mut map = vec![usize::MAX; n];
        let mut used = vec![false; n];
        map[self.identity] = other.identity;
        used[other.identity] = true;
        let order: Vec<usize> = std::iter::once(self.identity)
            .chain(self.elements().filter(|&x| x != self.identity))
            .collect();
        if self.extend_iso(other, &order, 1, &mut map, &mut used) {
            Some(map)
        } else {
            None
        }
    }

    fn extend_iso(
        &self,
        other: &OrderedMonoid,
        order: &[usize],
        k: usize,
        map: &mut [usize],
        used: &mut [bool],
    ) -> bool {
        let assigned = &order[..k];
        // consistency on assigned elements
        for &x in assigned {
            for &y in assigned {
                if self.leq[x][y] != other.leq[map[x]][map[y]] {
                    return false;
                }
                let xy = self.mul[x][y];
                if map[xy] != usize::MAX && map[xy] != other.mul[map[x]][map[y]] {
                    return false;
                }
            }
        }
        if k == order.len() {
            return true;
        }
        let x = order[k];
        for cand in other.elements() {
            if used[cand] {
                continue;
            }
            map[x] = cand;
            used[cand] = true;
            if self.extend_iso(other, order, k + 1, map, used) {
                return true;
            }
            used[cand] = false;
            map[x] = usize::MAX;
        }
        false
    }

    pub fn is_isomorphic(&self, other: &OrderedMonoid) -> bool {
        self.isomorphism_to(other).is_some()
    }
}

/// Order-preserving monoid morphism.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonoidMorphism {
    source: Arc<OrderedMonoid>,
    target: Arc<OrderedMonoid>,
    mapping: Vec<usize>,
}

impl MonoidMorphism {
    pub fn new(source: Arc<OrderedMonoid>, target: Arc<OrderedMonoid>, mapping: Vec<usize>) -> Result<Self> {
        if mapping.len() != source.len() {
            return Err(Error::Mismatched("morphism domain"));
        }
        if let Some(&bad) = mapping.iter().find(|&&y| y >= target.len()) {
            return Err(Error::UnknownElement(bad.to_string()));
        }
        if mapping[source.identity()] != target.identity() {
            return Err(Error::NotAMorphism {
                x: source.name(source.identity()).into(),
                y: source.name(source.identity()).into(),
            });
        }
        for x in source.elements() {
            for y in source.elements() {
                if mapping[source.mul(x, y)] != target.mul(mapping[x], mapping[y]) {
                    return Err(Error::NotAMorphism { x: source.name(x).into(), y: source.name(y).into() });
                }
                if source.leq(x, y) && !target.leq(mapping[x], mapping[y]) {
                    return Err(Error::NotOrderPreserving { a: source.name(x).into(), b: source.name(y).into() });
                }
            }
        }
        Ok(MonoidMorphism { source, target, mapping })
    }

    pub(crate) fn new_unchecked(source: Arc<OrderedMonoid>, target: Arc<OrderedMonoid>, mapping: Vec<usize>) -> Self {
        MonoidMorphism { source, target, mapping }
    }

    pub fn identity(m: Arc<OrderedMonoid>) -> Self {
        let mapping = m.elements().collect();
        MonoidMorphism { source: m.clone(), target: m, mapping }
    }

    pub fn source(&self) -> &Arc<OrderedMonoid> {
        &self.source
    }

    pub fn target(&self) -> &Arc<OrderedMonoid> {
        &self.target
    }

    pub fn mapping(&self) -> &[usize] {
        &self.mapping
    }

    pub fn apply(&self, x: usize) -> usize {
        self.mapping[x]
    }

    pub fn is_surjective(&self) -> bool {
        let mut hit = vec![false; self.target.len()];
        for &y in &self.mapping {
            hit[y] = true;
        }
        hit.into_iter().all(|h| h)
    }

    pub fn is_injective(&self) -> bool {
        let set: HashSet<usize> = self.mapping.iter().copied().collect();
        set.len() == self.mapping.len()
    }

    /// `next` after `self`.
    pub fn then(&self, next: &MonoidMorphism) -> Result<MonoidMorphism> {
        if *self.target != *next.source {
            return Err(Error::Mismatched("morphism carriers"));
        }
        let mapping = self.mapping.iter().map(|&x| next.mapping[x]).collect();
        Ok(MonoidMorphism { source: self.source.clone(), target: next.target.clone(), mapping })
    }
}

/// Mixed-radix indexing of a direct product; the last factor varies fastest.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProductShape {
    sizes: Vec<usize>,
}

impl ProductShape {
    pub fn new(sizes: Vec<usize>) -> Self {
        ProductShape { sizes }
    }

    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }

    /// Total size, or `None` on overflow.
    pub fn total(&self) -> Option<usize> {
        self.sizes.iter().try_fold(1usize, |acc, &s| acc.checked_mul(s))
    }

    pub fn encode(&self, digits: &[usize]) -> usize {
        digits.iter().zip(&self.sizes).fold(0, |acc, (&d, &s)| acc * s + d)
    }

    pub fn decode(&self, mut index: usize) -> Vec<usize> {
        let mut digits = vec![0; self.sizes.len()];
        for (d, &s) in digits.iter_mut().zip(&self.sizes).rev() {
            *d = index % s;
            index /= s;
        }
        digits
    }
}

pub(crate) fn tuple_name<S: AsRef<str>>(parts: &[S]) -> String {
    let inner: Vec<&str> = parts.iter().map(|s| s.as_ref()).collect();
    format!("({})", inner.join(","))
}

/// A direct product with its projections.
#[derive(Debug, Clone)]
pub struct DirectProduct {
    pub monoid: Arc<OrderedMonoid>,
    pub shape: ProductShape,
    pub projections: Vec<MonoidMorphism>,
}

/// Componentwise product of ordered monoids.
pub fn direct_product(factors: &[Arc<OrderedMonoid>], cap: usize) -> Result<DirectProduct> {
    if factors.is_empty() {
        return Err(Error::SizeOutOfRange { what: "product factors", size: 0 });
    }
    let shape = ProductShape::new(factors.iter().map(|f| f.len()).collect());
    let total = shape.total().unwrap_or(usize::MAX);
    if total > cap {
        return Err(Error::SizeCapExceeded { what: "direct product", size: total, cap });
    }
    let tuples: Vec<Vec<usize>> = (0..total).map(|i| shape.decode(i)).collect();
    let names = tuples
        .iter()
        .map(|t| {
            let parts: Vec<&str> = t.iter().zip(factors).map(|(&d, f)| f.name(d)).collect();
            tuple_name(&parts)
        })
        .collect();
    let mut mul = vec![vec![0; total]; total];
    let mut leq = vec![vec![false; total]; total];
    let mut digits = vec![0; factors.len()];
    for (a, ta) in tuples.iter().enumerate() {
        for (b, tb) in tuples.iter().enumerate() {
            for (k, f) in factors.iter().enumerate() {
                digits[k] = f.mul(ta[k], tb[k]);
            }
            mul[a][b] = shape.encode(&digits);
            leq[a][b] = factors.iter().enumerate().all(|(k, f)| f.leq(ta[k], tb[k]));
        }
    }
    let ids: Vec<usize> = factors.iter().map(|f| f.identity()).collect();
    let monoid = Arc::new(OrderedMonoid::from_parts_unchecked(names, shape.encode(&ids), mul, leq));
    let projections = factors
        .iter()
        .enumerate()
        .map(|(k, f)| {
            let mapping = tuples.iter().map(|t| t[k]).collect();
            MonoidMorphism::new_unchecked(monoid.clone(), f.clone(), mapping)
        })
        .collect();
    Ok(DirectProduct { monoid, shape, projections })
}

/// Submonoid generated by `generators`, with its embedding.
pub fn generated_submonoid(m: &Arc<OrderedMonoid>, generators: &[usize]) -> Result<(Arc<OrderedMonoid>, MonoidMorphism)> {
    if let Some(&bad) = generators.iter().find(|&&g| g >= m.len()) {
        return Err(Error::UnknownElement(bad.to_string()));
    }
    let carrier = m.closure_of(generators);
    let sub = Arc::new(m.restrict(&carrier));
    let embedding = MonoidMorphism::new_unchecked(sub.clone(), m.clone(), carrier);
    Ok((sub, embedding))
}

/// Search limits for [`divides`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DivisionBudget {
    /// Maximum number of distinct submonoids of the target examined.
    pub max_submonoids: usize,
    /// Maximum number of generator-image assignments tried.
    pub max_candidates: u64,
}

impl Default for DivisionBudget {
    fn default() -> Self {
        DivisionBudget { max_submonoids: 1 << 10, max_candidates: 2_000_000 }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DivisionWitness {
    /// Generators of the submonoid of the larger monoid.
    pub generators: Vec<usize>,
    /// Sorted carrier of that submonoid.
    pub carrier: Vec<usize>,
    /// Image in the smaller monoid of each carrier element.
    pub mapping: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Division {
    Yes(DivisionWitness),
    No,
    BudgetExhausted,
}

impl Division {
    pub fn is_yes(&self) -> bool {
        matches!(self, Division::Yes(_))
    }
}

/// Decides whether `small` is a quotient of a submonoid of `large`.
///
/// Submonoids are enumerated by ascending generator-set size; for each one,
/// surjective order-preserving morphisms are searched by assigning images to
/// its generators and propagating along right multiplication.
pub fn divides(small: &OrderedMonoid, large: &OrderedMonoid, budget: DivisionBudget) -> Division {
    let mut seen: HashSet<Vec<usize>> = HashSet::new();
    let mut level: Vec<(Vec<usize>, Vec<usize>)> = vec![(Vec::new(), vec![large.identity()])];
    seen.insert(vec![large.identity()]);
    let mut examined = 0usize;
    let mut candidates = 0u64;
    let mut truncated = false;
    while !level.is_empty() {
        for (gens, carrier) in &level {
            examined += 1;
            if examined > budget.max_submonoids {
                return Division::BudgetExhausted;
            }
            if carrier.len() < small.len() {
                continue;
            }
            match search_quotient(small, large, gens, carrier, budget.max_candidates, &mut candidates) {
                Search::Found(mapping) => {
                    return Division::Yes(DivisionWitness {
                        generators: gens.clone(),
                        carrier: carrier.clone(),
                        mapping,
                    })
                }
                Search::Exhausted => {}
                Search::OutOfBudget => {
                    truncated = true;
                    break;
                }
            }
        }
        if truncated {
            return Division::BudgetExhausted;
        }
        let mut next = Vec::new();
        for (gens, carrier) in &level {
            for x in large.elements() {
                if carrier.binary_search(&x).is_ok() {
                    continue;
                }
                let mut g = gens.clone();
                g.push(x);
                let c = large.closure_of(&g);
                if seen.insert(c.clone()) {
                    next.push((g, c));
                }
            }
        }
        level = next;
    }
    Division::No
}

enum Search {
    Found(Vec<usize>),
    Exhausted,
    OutOfBudget,
}

fn search_quotient(
    small: &OrderedMonoid,
    large: &OrderedMonoid,
    gens: &[usize],
    carrier: &[usize],
    max_candidates: u64,
    candidates: &mut u64,
) -> Search {
    let mut images = vec![0usize; gens.len()];
    if gens.is_empty() {
        // carrier is {1}
        *candidates += 1;
        return if small.len() == 1 { Search::Found(vec![small.identity()]) } else { Search::Exhausted };
    }
    let pos: HashMap<usize, usize> = carrier.iter().enumerate().map(|(i, &x)| (x, i)).collect();
    fn rec(
        k: usize,
        small: &OrderedMonoid,
        large: &OrderedMonoid,
        gens: &[usize],
        carrier: &[usize],
        pos: &HashMap<usize, usize>,
        images: &mut Vec<usize>,
        max_candidates: u64,
        candidates: &mut u64,
    ) -> Search {
        if k == gens.len() {
            *candidates += 1;
            if *candidates > max_candidates {
                return Search::OutOfBudget;
            }
            return match propagate(small, large, gens, carrier, pos, images) {
                Some(m) => Search::Found(m),
                None => Search::Exhausted,
            };
        }
        for img in small.elements() {
            let ok = (0..k).all(|j| {
                (!large.leq(gens[j], gens[k]) || small.leq(images[j], img))
                    && (!large.leq(gens[k], gens[j]) || small.leq(img, images[j]))
            });
            if !ok {
                continue;
            }
            images[k] = img;
            match rec(k + 1, small, large, gens, carrier, pos, images, max_candidates, candidates) {
                Search::Exhausted => {}
                other => return other,
            }
        }
        Search::Exhausted
    }
    rec(0, small, large, gens, carrier, &pos, &mut images, max_candidates, candidates)
}

fn propagate(
    small: &OrderedMonoid,
    large: &OrderedMonoid,
    gens: &[usize],
    carrier: &[usize],
    pos: &HashMap<usize, usize>,
    images: &[usize],
) -> Option<Vec<usize>> {
    let mut map = vec![usize::MAX; carrier.len()];
    map[pos[&large.identity()]] = small.identity();
    let mut queue = VecDeque::from([large.identity()]);
    while let Some(x) = queue.pop_front() {
        let fx = map[pos[&x]];
        for (g, &ig) in gens.iter().zip(images) {
            let y = large.mul(x, *g);
            let fy = small.mul(fx, ig);
            let slot = &mut map[pos[&y]];
            if *slot == usize::MAX {
                *slot = fy;
                queue.push_back(y);
            } else if *slot != fy {
                return None;
            }
        }
    }
    let mut hit = vec![false; small.len()];
    for &y in &map {
        hit[y] = true;
    }
    if !hit.iter().all(|&h| h) {
        return None;
    }
    for (i, &x) in carrier.iter().enumerate() {
        for (j, &y) in carrier.iter().enumerate() {
            if large.leq(x, y) && !small.leq(map[i], map[j]) {
                return None;
            }
        }
    }
    Some(map)
}
