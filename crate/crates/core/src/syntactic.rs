//! Syntactic ordered monoids and recognition by finite ordered monoids.

use std::collections::HashMap;
use std::sync::Arc;

use crate::automaton::{render_word, words_up_to, LatticeAutomaton, Word};
use crate::coloring::{OpColoring, Side};
use crate::error::{Error, Result};
use crate::lattice::{BoundKind, Lattice, LatticeMorphism};
use crate::monoid::{direct_product, tuple_name, OrderedMonoid, ProductShape, DEFAULT_MONOID_CAP};

/// Monoid of state maps of a trimmed automaton.
#[derive(Debug, Clone)]
pub struct TransitionMonoid {
    /// The trimmed automaton whose states the maps act on.
    pub automaton: LatticeAutomaton,
    /// `maps[m][s]` is the state reached from `s` under element `m`; element 0 is the identity.
    pub maps: Vec<Vec<usize>>,
    /// Shortlex-least word for each element.
    pub words: Vec<Word>,
    /// Image of each letter.
    pub generators: Vec<usize>,
    /// The monoid with the equality order; `x * y` applies `x` first.
    pub monoid: Arc<OrderedMonoid>,
}

/// Computes the transition monoid of the reachable part of `a`.
pub fn transition_monoid(a: &LatticeAutomaton, cap: usize) -> Result<TransitionMonoid> {
    let t = a.trim();
    let n = t.num_states();
    let k = t.alphabet().len();
    let identity: Vec<usize> = (0..n).collect();
    let mut index: HashMap<Vec<usize>, usize> = HashMap::from([(identity.clone(), 0)]);
    let mut maps = vec![identity];
    let mut words: Vec<Word> = vec![Vec::new()];
    let mut right: Vec<Vec<usize>> = Vec::new();
    let mut i = 0;
    while i < maps.len() {
        let mut row = Vec::with_capacity(k);
        for c in 0..k {
            let next: Vec<usize> = maps[i].iter().map(|&s| t.delta(s, c)).collect();
            let id = match index.get(&next) {
                Some(&id) => id,
                None => {
                    if maps.len() >= cap {
                        return Err(Error::SizeCapExceeded { what: "transition monoid", size: maps.len() + 1, cap });
                    }
                    let mut w = words[i].clone();
                    w.push(c);
                    index.insert(next.clone(), maps.len());
                    maps.push(next);
                    words.push(w);
                    maps.len() - 1
                }
            };
            row.push(id);
        }
        right.push(row);
        i += 1;
    }
    let size = maps.len();
    let generators: Vec<usize> = (0..k).map(|c| right[0][c]).collect();
    let mut mul = vec![vec![0; size]; size];
    for x in 0..size {
        for y in 0..size {
            // x then y: follow y's word from x
            mul[x][y] = words[y].iter().fold(x, |acc, &c| right[acc][c]);
        }
    }
    let names = words.iter().map(|w| render_word(t.alphabet(), w)).collect();
    let leq = (0..size).map(|a| (0..size).map(|b| a == b).collect()).collect();
    let monoid = Arc::new(OrderedMonoid::from_parts_unchecked(names, 0, mul, leq));
    Ok(TransitionMonoid { automaton: t, maps, words, generators, monoid })
}

/// Triple `(eta, M, P)` recognizing `w |-> P(eta(w))`; `eta` is given on letters.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RecognitionTriple {
    alphabet: Vec<String>,
    generator_images: Vec<usize>,
    coloring: OpColoring,
}

impl RecognitionTriple {
    pub fn new(alphabet: Vec<String>, generator_images: Vec<usize>, coloring: OpColoring) -> Result<Self> {
        if generator_images.len() != alphabet.len() {
            return Err(Error::Mismatched("generator map domain"));
        }
        if let Some(&bad) = generator_images.iter().find(|&&x| x >= coloring.monoid().len()) {
            return Err(Error::UnknownElement(bad.to_string()));
        }
        Ok(RecognitionTriple { alphabet, generator_images, coloring })
    }

    pub fn alphabet(&self) -> &[String] {
        &self.alphabet
    }

    pub fn generator_images(&self) -> &[usize] {
        &self.generator_images
    }

    pub fn coloring(&self) -> &OpColoring {
        &self.coloring
    }

    pub fn monoid(&self) -> &Arc<OrderedMonoid> {
        self.coloring.monoid()
    }

    pub fn lattice(&self) -> &Arc<Lattice> {
        self.coloring.lattice()
    }

    pub fn eta(&self, w: &[usize]) -> usize {
        self.monoid().product(w.iter().map(|&a| self.generator_images[a]))
    }

    pub fn evaluate(&self, w: &[usize]) -> usize {
        self.coloring.color(self.eta(w))
    }

    /// Same morphism and monoid, different coloring.
    pub fn with_coloring(&self, coloring: OpColoring) -> Result<Self> {
        if coloring.monoid() != self.monoid() {
            return Err(Error::Mismatched("monoid"));
        }
        Ok(RecognitionTriple { coloring, ..self.clone() })
    }

    /// Right-regular representation: states are monoid elements, the
    /// initial state is the identity, and letters act by right multiplication.
    pub fn to_automaton(&self) -> LatticeAutomaton {
        let m = self.monoid();
        let delta = m
            .elements()
            .map(|x| self.generator_images.iter().map(|&g| m.mul(x, g)).collect())
            .collect();
        LatticeAutomaton::new(
            self.lattice().clone(),
            self.alphabet.clone(),
            m.names().to_vec(),
            m.identity(),
            delta,
            self.coloring.colors().to_vec(),
        )
        .expect("monoid tables are total")
    }

    /// Whether this triple recognizes the language of `a`.
    pub fn recognizes(&self, a: &LatticeAutomaton) -> Result<bool> {
        LatticeAutomaton::equivalent(&self.to_automaton(), a)
    }
}

/// Syntactic ordered monoid, syntactic morphism, and syntactic coloring.
#[derive(Debug, Clone)]
pub struct SyntacticResult {
    pub triple: RecognitionTriple,
    /// Shortlex-least word of each element.
    pub witnesses: Vec<Word>,
}

impl SyntacticResult {
    pub fn monoid(&self) -> &Arc<OrderedMonoid> {
        self.triple.monoid()
    }

    pub fn coloring(&self) -> &OpColoring {
        self.triple.coloring()
    }

    pub fn generator_images(&self) -> &[usize] {
        self.triple.generator_images()
    }

    pub fn eta(&self, w: &[usize]) -> usize {
        self.triple.eta(w)
    }
}

/// Greatest relation `s <= t` with `F(s) <= F(t)` that is stable under every letter.
pub fn state_preorder(a: &LatticeAutomaton) -> Vec<Vec<bool>> {
    let n = a.num_states();
    let l = a.lattice();
    let mut rel: Vec<Vec<bool>> = (0..n).map(|s| (0..n).map(|t| l.leq(a.output(s), a.output(t))).collect()).collect();
    loop {
        let mut changed = false;
        for s in 0..n {
            for t in 0..n {
                if rel[s][t] && (0..a.alphabet().len()).any(|c| !rel[a.delta(s, c)][a.delta(t, c)]) {
                    rel[s][t] = false;
                    changed = true;
                }
            }
        }
        if !changed {
            return rel;
        }
    }
}

/// Computes the syntactic ordered monoid of the language of `a`.
///
/// Two transition-monoid elements are compared by the state preorder on
/// every reachable state; the syntactic monoid is the quotient by the
/// induced equivalence. Elements are numbered in shortlex order of their
/// least words and named by those words.
pub fn syntactic(a: &LatticeAutomaton, cap: usize) -> Result<SyntacticResult> {
    let tm = transition_monoid(a, cap)?;
    let t = &tm.automaton;
    let sim = state_preorder(t);
    let size = tm.maps.len();
    let pre = |x: usize, y: usize| tm.maps[x].iter().zip(&tm.maps[y]).all(|(&s, &u)| sim[s][u]);
    let mut class = vec![usize::MAX; size];
    let mut reps: Vec<usize> = Vec::new();
    for x in 0..size {
        if class[x] != usize::MAX {
            continue;
        }
        let c = reps.len();
        reps.push(x);
        for y in x..size {
            if class[y] == usize::MAX && pre(x, y) && pre(y, x) {
                class[y] = c;
            }
        }
    }
    let tmul = &tm.monoid;
    let mul: Vec<Vec<usize>> = reps.iter().map(|&x| reps.iter().map(|&y| class[tmul.mul(x, y)]).collect()).collect();
    let leq: Vec<Vec<bool>> = reps.iter().map(|&x| reps.iter().map(|&y| pre(x, y)).collect()).collect();
    let colors: Vec<usize> = reps.iter().map(|&x| t.output(tm.maps[x][t.initial()])).collect();
    for x in 0..size {
        if t.output(tm.maps[x][t.initial()]) != colors[class[x]] {
            return Err(Error::InternalInconsistency(format!("coloring not constant on class of {}", tmul.name(x))));
        }
        for y in 0..size {
            if class[tmul.mul(x, y)] != mul[class[x]][class[y]] {
                return Err(Error::InternalInconsistency("syntactic congruence is not a congruence".into()));
            }
            if pre(x, y) != leq[class[x]][class[y]] {
                return Err(Error::InternalInconsistency("syntactic order not well defined".into()));
            }
        }
    }
    let names = reps.iter().map(|&x| tmul.name(x).to_string()).collect();
    let monoid = Arc::new(OrderedMonoid::from_parts_unchecked(names, 0, mul, leq));
    let coloring = OpColoring::new(monoid.clone(), t.lattice().clone(), colors)
        .map_err(|e| Error::InternalInconsistency(format!("syntactic coloring: {e}")))?;
    let generator_images = tm.generators.iter().map(|&g| class[g]).collect();
    let triple = RecognitionTriple::new(t.alphabet().to_vec(), generator_images, coloring)?;
    let witnesses = reps.iter().map(|&x| tm.words[x].clone()).collect();
    Ok(SyntacticResult { triple, witnesses })
}

/// Outcome of rebuilding a language from its cuts.
#[derive(Debug, Clone)]
pub struct CutReconstruction {
    /// Syntactic data of each cut, indexed by lattice element.
    pub cuts: Vec<SyntacticResult>,
    /// Recognizer on the image of the paired morphism inside the product of
    /// the cut monoids; elements are tuples indexed by lattice element.
    pub triple: RecognitionTriple,
    /// Size of the full direct product, if it fits in `usize`.
    pub product_size: Option<usize>,
    /// Whether the combined coloring was also validated on the full product.
    pub full_product_checked: bool,
    pub equal: bool,
}

/// Recognizes `L` through the syntactic monoids of its cuts, with coloring
/// `x |-> meet over lambda of (P_lambda(x_lambda) v lambda)`.
pub fn reconstruct_from_cuts(a: &LatticeAutomaton, cap: usize) -> Result<CutReconstruction> {
    let l = a.lattice().clone();
    let cuts = l
        .elements()
        .map(|lambda| syntactic(&a.cut(lambda)?, cap))
        .collect::<Result<Vec<_>>>()?;
    let factors: Vec<Arc<OrderedMonoid>> = cuts.iter().map(|c| c.monoid().clone()).collect();
    let shape = ProductShape::new(factors.iter().map(|f| f.len()).collect());
    let combine = |digits: &[usize]| {
        l.bound(
            BoundKind::Meet,
            digits.iter().zip(&cuts).enumerate().map(|(lambda, (&d, c))| l.join(c.coloring().color(d), lambda)),
        )
    };

    // image of the paired morphism
    let gens: Vec<Vec<usize>> = (0..a.alphabet().len())
        .map(|c| cuts.iter().map(|s| s.generator_images()[c]).collect())
        .collect();
    let identity: Vec<usize> = factors.iter().map(|f| f.identity()).collect();
    let mut index: HashMap<Vec<usize>, usize> = HashMap::from([(identity.clone(), 0)]);
    let mut tuples = vec![identity];
    let mut i = 0;
    while i < tuples.len() {
        for g in &gens {
            let next: Vec<usize> = tuples[i].iter().zip(g).zip(&factors).map(|((&x, &y), f)| f.mul(x, y)).collect();
            if !index.contains_key(&next) {
                if tuples.len() >= cap {
                    return Err(Error::SizeCapExceeded { what: "cut product image", size: tuples.len() + 1, cap });
                }
                index.insert(next.clone(), tuples.len());
                tuples.push(next);
            }
        }
        i += 1;
    }
    let mul = tuples
        .iter()
        .map(|x| {
            tuples
                .iter()
                .map(|y| {
                    let z: Vec<usize> = x.iter().zip(y).zip(&factors).map(|((&p, &q), f)| f.mul(p, q)).collect();
                    index[&z]
                })
                .collect()
        })
        .collect();
    let leq = tuples
        .iter()
        .map(|x| tuples.iter().map(|y| (0..factors.len()).all(|k| factors[k].leq(x[k], y[k]))).collect())
        .collect();
    let names = tuples
        .iter()
        .map(|t| tuple_name(&t.iter().zip(&factors).map(|(&d, f)| f.name(d)).collect::<Vec<_>>()))
        .collect();
    let image = Arc::new(OrderedMonoid::from_parts_unchecked(names, 0, mul, leq));
    let colors = tuples.iter().map(|t| combine(t)).collect();
    let coloring = OpColoring::new(image, l.clone(), colors)?;
    let generator_images = gens.iter().map(|g| index[g]).collect();
    let triple = RecognitionTriple::new(a.alphabet().to_vec(), generator_images, coloring)?;

    let product_size = shape.total();
    let mut full_product_checked = false;
    if let Some(total) = product_size.filter(|&t| t <= cap.min(4096)) {
        let prod = direct_product(&factors, total)?;
        let colors = prod.monoid.elements().map(|x| combine(&prod.shape.decode(x))).collect();
        OpColoring::new(prod.monoid.clone(), l.clone(), colors)?;
        full_product_checked = true;
    }
    let equal = triple.recognizes(a)?;
    Ok(CutReconstruction { cuts, triple, product_size, full_product_checked, equal })
}

/// Algebraic shuffle-ideal verdict.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShuffleVerdict {
    pub is_ideal: bool,
    /// When not an ideal: `(w, v)` with `w` a subword of `v` and `L(v) </= L(w)`.
    pub witness: Option<(Word, Word)>,
}

/// Decides the shuffle-ideal property: the identity of the syntactic
/// ordered monoid must be its greatest element. On failure a subword
/// witness is read off an element above which the identity fails to lie.
pub fn is_shuffle_ideal(a: &LatticeAutomaton, cap: usize) -> Result<ShuffleVerdict> {
    let s = syntactic(a, cap)?;
    let m = s.monoid();
    if m.identity_is_greatest() {
        return Ok(ShuffleVerdict { is_ideal: true, witness: None });
    }
    let p = s.coloring();
    let l = p.lattice();
    let x = m.elements().find(|&x| !m.leq(x, m.identity())).expect("identity not greatest");
    for u in m.elements() {
        for v in m.elements() {
            if !l.leq(p.color(m.product([u, x, v])), p.color(m.mul(u, v))) {
                let sub: Word = s.witnesses[u].iter().chain(&s.witnesses[v]).copied().collect();
                let sup: Word = s.witnesses[u].iter().chain(&s.witnesses[x]).chain(&s.witnesses[v]).copied().collect();
                return Ok(ShuffleVerdict { is_ideal: false, witness: Some((sub, sup)) });
            }
        }
    }
    Err(Error::InternalInconsistency("no context separates an element from the identity".into()))
}

/// Searches `v` in shortlex order up to `max_len`, and for each `v` its
/// subwords `w` by decreasing length, for the first pair with `L(v) </= L(w)`.
pub fn shuffle_ideal_falsify(a: &LatticeAutomaton, max_len: usize) -> Option<(Word, Word)> {
    let l = a.lattice();
    for v in words_up_to(a.alphabet().len(), max_len) {
        let lv = a.evaluate(&v);
        let n = v.len();
        let mut masks: Vec<u32> = (0..1u32 << n).collect();
        masks.sort_by_key(|&m| (std::cmp::Reverse(m.count_ones()), m));
        for mask in masks {
            let w: Word = (0..n).filter(|&i| mask >> i & 1 == 1).map(|i| v[i]).collect();
            if !l.leq(lv, a.evaluate(&w)) {
                return Some((w, v));
            }
        }
    }
    None
}

/// Result of expressing an ideal language through operations on `L`.
#[derive(Debug, Clone)]
pub struct IdealConstruction {
    pub automaton: LatticeAutomaton,
    /// Contexts and thresholds used, one per element not below `m`.
    pub terms: Vec<IdealTerm>,
    pub equal: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdealTerm {
    pub element: usize,
    pub left: Word,
    pub right: Word,
    pub threshold: usize,
}

/// Builds `iota[m] o eta_L` from `L` using only quotients, lattice
/// morphisms, and joins, then checks it against the direct construction.
pub fn ideal_language_construction(a: &LatticeAutomaton, m: usize, cap: usize) -> Result<IdealConstruction> {
    let s = syntactic(a, cap)?;
    let mon = s.monoid();
    if m >= mon.len() {
        return Err(Error::UnknownElement(m.to_string()));
    }
    let l = a.lattice().clone();
    let p = s.coloring();
    let mut terms = Vec::new();
    let automaton = if mon.greatest() == Some(m) {
        a.recolor(&LatticeMorphism::constant(l.clone(), l.bottom()))?
    } else {
        let mut acc: Option<LatticeAutomaton> = None;
        for y in mon.elements().filter(|&y| !mon.leq(y, m)) {
            let (u, v) = mon
                .elements()
                .flat_map(|u| mon.elements().map(move |v| (u, v)))
                .find(|&(u, v)| !l.leq(p.color(mon.product([u, y, v])), p.color(mon.product([u, m, v]))))
                .ok_or_else(|| Error::InternalInconsistency(format!("no context separates {} from {}", mon.name(y), mon.name(m))))?;
            let threshold = p.color(mon.product([u, m, v]));
            let alpha = LatticeMorphism::threshold(l.clone(), threshold);
            let term = a
                .quotient(Side::Left, &s.witnesses[u])?
                .quotient(Side::Right, &s.witnesses[v])?
                .recolor(&alpha)?;
            acc = Some(match acc {
                None => term.minimize(),
                Some(prev) => LatticeAutomaton::product(BoundKind::Join, &prev, &term)?.minimize(),
            });
            terms.push(IdealTerm { element: y, left: s.witnesses[u].clone(), right: s.witnesses[v].clone(), threshold });
        }
        acc.expect("some element lies outside the down-set of a non-greatest element")
    };
    let direct = s.triple.with_coloring(OpColoring::ideal(mon.clone(), l, m)?)?.to_automaton();
    let equal = LatticeAutomaton::equivalent(&automaton, &direct)?;
    Ok(IdealConstruction { automaton, terms, equal })
}

/// Syntactic monoid with the crate's default cap.
pub fn syntactic_default(a: &LatticeAutomaton) -> Result<SyntacticResult> {
    syntactic(a, DEFAULT_MONOID_CAP)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automaton::tests::{contains_a, empty_only, names, example_machine};
    use crate::monoid::{divides, DivisionBudget};

    /// Literal syntactic preorder over contexts up to `ctx` letters.
    fn context_leq(a: &LatticeAutomaton, w1: &[usize], w2: &[usize], ctx: usize) -> bool {
        let k = a.alphabet().len();
        let l = a.lattice();
        words_up_to(k, ctx).all(|u| {
            words_up_to(k, ctx).all(|v| {
                let x: Word = u.iter().chain(w1).chain(&v).copied().collect();
                let y: Word = u.iter().chain(w2).chain(&v).copied().collect();
                l.leq(a.evaluate(&x), a.evaluate(&y))
            })
        })
    }

    #[test]
    fn transition_monoid_basics() {
        let one = LatticeAutomaton::constant(Arc::new(Lattice::boolean()), names(&["a"]), 0);
        assert_eq!(transition_monoid(&one, 100).unwrap().monoid.len(), 1);
        let a = example_machine();
        let tm = transition_monoid(&a, 100).unwrap();
        assert_eq!(tm.generators[1], tm.generators[2]);
        assert_eq!(tm.words[0], Vec::<usize>::new());
        for u in words_up_to(3, 2) {
            for v in words_up_to(3, 2) {
                let uv: Word = u.iter().chain(&v).copied().collect();
                let eta = |w: &[usize]| tm.monoid.product(w.iter().map(|&c| tm.generators[c]));
                assert_eq!(eta(&uv), tm.monoid.mul(eta(&u), eta(&v)));
            }
        }
        assert!(matches!(transition_monoid(&a, 2), Err(Error::SizeCapExceeded { .. })));
    }

    #[test]
    fn syntactic_of_constant_is_trivial() {
        let one = LatticeAutomaton::constant(Arc::new(Lattice::powerset(2).unwrap()), names(&["a", "b"]), 2);
        let s = syntactic_default(&one).unwrap();
        assert_eq!(s.monoid().len(), 1);
    }

    #[test]
    fn syntactic_of_contains_a_is_u1() {
        let a = contains_a();
        let s = syntactic_default(&a).unwrap();
        let m = s.monoid();
        assert_eq!(m.len(), 2);
        assert!(m.identity_is_greatest());
        let za = s.eta(&[0]);
        assert!(m.leq(za, m.identity()) && !m.leq(m.identity(), za));
        // bounded-context oracle agrees that a < ε strictly
        assert!(context_leq(&a, &[0], &[], 2));
        assert!(!context_leq(&a, &[], &[0], 2));
    }

    #[test]
    fn syntactic_order_matches_context_oracle() {
        for a in [example_machine(), contains_a(), empty_only()] {
            let s = syntactic_default(&a).unwrap();
            let m = s.monoid();
            OrderedMonoid::from_table(
                m.names().to_vec(),
                m.identity(),
                m.table().to_vec(),
                &crate::order::pairs(m.relation()),
            )
            .unwrap();
            for x in m.elements() {
                for y in m.elements() {
                    assert_eq!(m.leq(x, y), context_leq(&a, &s.witnesses[x], &s.witnesses[y], 3), "{x} {y}");
                }
            }
            for w in words_up_to(a.alphabet().len(), 6) {
                assert_eq!(s.triple.evaluate(&w), a.evaluate(&w));
            }
            assert!(s.triple.recognizes(&a).unwrap());
        }
    }

    #[test]
    fn triples() {
        let a = contains_a();
        let s = syntactic_default(&a).unwrap();
        let aut = s.triple.to_automaton();
        assert_eq!(aut.num_states(), 2);
        assert!(LatticeAutomaton::equivalent(&aut, &a).unwrap());
        let l = a.lattice().clone();
        let bad = s.triple.with_coloring(OpColoring::constant(s.monoid().clone(), l, 0)).unwrap();
        assert!(!bad.recognizes(&a).unwrap());
    }

    #[test]
    fn cuts_rebuild_language() {
        for a in [contains_a(), example_machine()] {
            let r = reconstruct_from_cuts(&a, DEFAULT_MONOID_CAP).unwrap();
            assert!(r.equal);
            assert!(r.full_product_checked);
        }
        let k = LatticeAutomaton::constant(Arc::new(Lattice::chain(3).unwrap()), names(&["a"]), 1);
        let r = reconstruct_from_cuts(&k, DEFAULT_MONOID_CAP).unwrap();
        assert!(r.equal);
        assert!(r.cuts.iter().all(|c| c.monoid().len() == 1));
    }

    #[test]
    fn shuffle_ideals() {
        let a = contains_a();
        assert!(is_shuffle_ideal(&a, 100).unwrap().is_ideal);
        assert_eq!(shuffle_ideal_falsify(&a, 8), None);
        let e = empty_only();
        let v = is_shuffle_ideal(&e, 100).unwrap();
        assert!(!v.is_ideal);
        let (w, sup) = v.witness.unwrap();
        assert!(!e.lattice().leq(e.evaluate(&sup), e.evaluate(&w)));
        assert_eq!(shuffle_ideal_falsify(&e, 3), Some((vec![], vec![0])));
        let k = LatticeAutomaton::constant(Arc::new(Lattice::boolean()), names(&["a"]), 1);
        assert!(is_shuffle_ideal(&k, 100).unwrap().is_ideal);
    }

    #[test]
    fn example_machine_is_not_a_shuffle_ideal() {
        let a = example_machine();
        let found = shuffle_ideal_falsify(&a, 2).unwrap();
        assert_eq!(found, (a.parse_word("a").unwrap(), a.parse_word("ba").unwrap()));
        assert!(!is_shuffle_ideal(&a, 100).unwrap().is_ideal);
    }

    #[test]
    fn ideal_construction() {
        let a = contains_a();
        let s = syntactic_default(&a).unwrap();
        for m in s.monoid().elements() {
            let r = ideal_language_construction(&a, m, 100).unwrap();
            assert!(r.equal);
        }
        let z = s.eta(&[0]);
        let r = ideal_language_construction(&a, z, 100).unwrap();
        assert_eq!(r.terms.len(), 1);
        assert_eq!((r.terms[0].left.len(), r.terms[0].right.len()), (0, 0));
        let top = ideal_language_construction(&a, s.monoid().identity(), 100).unwrap();
        assert_eq!(top.automaton.minimize().num_states(), 1);
    }

    #[test]
    fn syntactic_divides_recognizers() {
        let a = example_machine();
        let s = syntactic_default(&a).unwrap();
        let tm = transition_monoid(&a, 1000).unwrap();
        assert!(divides(s.monoid(), &tm.monoid, DivisionBudget::default()).is_yes() || tm.monoid.len() > 10);
    }
}
