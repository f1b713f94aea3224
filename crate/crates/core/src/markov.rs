//! Finite Markov chains, their ergodic classes, and the lattice language of
//! "which ergodic class does a word reach".
//!
//! Everything here is generic over the [`Probability`] scalar. With
//! [`crate::Rational`] all arithmetic is exact; `f64` and `f32` are accepted
//! with a small tolerance on row sums and residuals.

use std::fmt::Debug;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{Num, Signed, Zero};

use serde_json::{json, Map, Value};

use crate::automaton::LatticeAutomaton;
use crate::io;
use crate::error::{Error, Result};
use crate::lattice::Lattice;
use crate::Rational;

/// Scalar type for transition probabilities.
pub trait Probability: Num + Signed + PartialOrd + Clone + Debug {
    /// Parses `p/q`, an integer, or a decimal literal.
    fn parse_probability(s: &str) -> Option<Self>;
    /// Exact zero test for exact types; tolerance test for floats.
    fn is_negligible(&self) -> bool;
    fn to_f64(&self) -> f64;
    /// `p/q` in lowest terms for rationals, shortest round-trip decimal for floats.
    fn render(&self) -> String;

    fn approx_eq(&self, other: &Self) -> bool {
        (self.clone() - other.clone()).is_negligible()
    }
}

impl Probability for Rational {
    fn parse_probability(s: &str) -> Option<Self> {
        let s = s.trim();
        if let Some((p, q)) = s.split_once('/') {
            let p: BigInt = p.trim().parse().ok()?;
            let q: BigInt = q.trim().parse().ok()?;
            if q.is_zero() {
                return None;
            }
            return Some(Rational::new(p, q));
        }
        if let Some((int, frac)) = s.split_once('.') {
            if frac.is_empty() || !frac.chars().all(|c| c.is_ascii_digit()) {
                return None;
            }
            let negative = int.starts_with('-');
            let int: BigInt = match int.trim_start_matches(['-', '+']) {
                "" => BigInt::zero(),
                i => i.parse().ok()?,
            };
            let scale = num_traits::pow(BigInt::from(10), frac.len());
            let frac: BigInt = frac.parse().ok()?;
            let mag = Rational::new(int * &scale + frac, scale);
            return Some(if negative { -mag } else { mag });
        }
        s.parse::<BigInt>().ok().map(Rational::from_integer)
    }

    fn is_negligible(&self) -> bool {
        self.is_zero()
    }

    fn to_f64(&self) -> f64 {
        num_traits::ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }

    fn render(&self) -> String {
        if self.is_integer() {
            self.numer().to_string()
        } else {
            format!("{}/{}", self.numer(), self.denom())
        }
    }
}

macro_rules! impl_float_probability {
    ($t:ty, $eps:expr) => {
        impl Probability for $t {
            fn parse_probability(s: &str) -> Option<Self> {
                let s = s.trim();
                if let Some((p, q)) = s.split_once('/') {
                    let p: $t = p.trim().parse().ok()?;
                    let q: $t = q.trim().parse().ok()?;
                    return if q == 0.0 { None } else { Some(p / q) };
                }
                s.parse().ok().filter(|x: &$t| x.is_finite())
            }

            fn is_negligible(&self) -> bool {
                self.abs() <= $eps
            }

            fn to_f64(&self) -> f64 {
                *self as f64
            }

            fn render(&self) -> String {
                format!("{}", self)
            }
        }
    };
}

impl_float_probability!(f64, 1e-12);
impl_float_probability!(f32, 1e-6);

pub fn parse_probability<T: Probability>(s: &str) -> Result<T> {
    T::parse_probability(s).ok_or_else(|| Error::BadFraction(s.to_string()))
}

/// A finite Markov chain with a row-stochastic transition matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct MarkovChain<T> {
    states: Vec<String>,
    matrix: Vec<Vec<T>>,
}

impl<T: Probability> MarkovChain<T> {
    pub fn new(states: Vec<String>, matrix: Vec<Vec<T>>) -> Result<Self> {
        let n = states.len();
        if n == 0 {
            return Err(Error::SizeOutOfRange { what: "chain states", size: 0 });
        }
        for (i, s) in states.iter().enumerate() {
            if states[..i].contains(s) {
                return Err(Error::DuplicateName(s.clone()));
            }
        }
        if matrix.len() != n || matrix.iter().any(|r| r.len() != n) {
            return Err(Error::Mismatched("transition matrix shape"));
        }
        for (s, row) in matrix.iter().enumerate() {
            for (t, p) in row.iter().enumerate() {
                if p.is_negative() && !p.is_negligible() {
                    return Err(Error::NegativeEntry {
                        state: states[s].clone(),
                        target: states[t].clone(),
                        value: p.render(),
                    });
                }
            }
            let sum = row.iter().cloned().fold(T::zero(), |a, b| a + b);
            if !sum.approx_eq(&T::one()) {
                return Err(Error::RowSumNotOne { state: states[s].clone(), actual: sum.render() });
            }
        }
        Ok(MarkovChain { states, matrix })
    }

    pub fn states(&self) -> &[String] {
        &self.states
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    pub fn prob(&self, s: usize, t: usize) -> &T {
        &self.matrix[s][t]
    }

    pub fn matrix(&self) -> &[Vec<T>] {
        &self.matrix
    }

    pub fn index_of(&self, name: &str) -> Result<usize> {
        self.states.iter().position(|s| s == name).ok_or_else(|| Error::UnknownElement(name.to_string()))
    }

    fn positive(&self, s: usize, t: usize) -> bool {
        !self.matrix[s][t].is_negligible()
    }

    /// `reach[s][t]`: `t` is reachable from `s` by a positive-probability path (including `s = t`).
    pub fn reachability(&self) -> Vec<Vec<bool>> {
        let n = self.len();
        let mut reach = vec![vec![false; n]; n];
        for (s, row) in reach.iter_mut().enumerate() {
            let mut stack = vec![s];
            row[s] = true;
            while let Some(x) = stack.pop() {
                for y in 0..n {
                    if self.positive(x, y) && !row[y] {
                        row[y] = true;
                        stack.push(y);
                    }
                }
            }
        }
        reach
    }
}

/// Communicating classes of a chain and their condensation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ErgodicStructure {
    /// Communicating classes, each sorted, ordered by least member.
    pub classes: Vec<Vec<usize>>,
    /// Whether each class is closed.
    pub ergodic: Vec<bool>,
    pub class_of: Vec<usize>,
    /// Edges `(i, j)` with `i != j` of the condensation.
    pub class_dag: Vec<(usize, usize)>,
}

impl ErgodicStructure {
    /// Indices of the ergodic classes, in class order.
    pub fn ergodic_classes(&self) -> Vec<usize> {
        (0..self.classes.len()).filter(|&c| self.ergodic[c]).collect()
    }

    pub fn transient_states(&self) -> Vec<usize> {
        let mut out: Vec<usize> = (0..self.class_of.len()).filter(|&s| !self.ergodic[self.class_of[s]]).collect();
        out.sort_unstable();
        out
    }
}

pub fn ergodic_structure<T: Probability>(chain: &MarkovChain<T>) -> ErgodicStructure {
    let n = chain.len();
    let reach = chain.reachability();
    let mut class_of = vec![usize::MAX; n];
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for s in 0..n {
        if class_of[s] != usize::MAX {
            continue;
        }
        let members: Vec<usize> = (s..n).filter(|&t| reach[s][t] && reach[t][s]).collect();
        for &t in &members {
            class_of[t] = classes.len();
        }
        classes.push(members);
    }
    let mut class_dag = Vec::new();
    for s in 0..n {
        for t in 0..n {
            let (a, b) = (class_of[s], class_of[t]);
            if a != b && chain.positive(s, t) && !class_dag.contains(&(a, b)) {
                class_dag.push((a, b));
            }
        }
    }
    class_dag.sort_unstable();
    let ergodic = (0..classes.len()).map(|c| !class_dag.iter().any(|&(a, _)| a == c)).collect();
    ErgodicStructure { classes, ergodic, class_of, class_dag }
}

/// One deterministic map with its weight.
#[derive(Debug, Clone, PartialEq)]
pub struct Letter<T> {
    pub name: String,
    pub map: Vec<usize>,
    pub weight: T,
}

/// A convex combination of deterministic maps reproducing a chain.
#[derive(Debug, Clone, PartialEq)]
pub struct Decomposition<T> {
    pub letters: Vec<Letter<T>>,
}

impl<T: Probability> Decomposition<T> {
    /// Checks positivity, total weight one, and exact reconstruction of the matrix.
    pub fn validate(&self, chain: &MarkovChain<T>) -> Result<()> {
        let n = chain.len();
        let total = self.letters.iter().fold(T::zero(), |a, l| a + l.weight.clone());
        if !total.approx_eq(&T::one()) {
            return Err(Error::BadDecomposition(format!("weights sum to {}", total.render())));
        }
        for l in &self.letters {
            if !l.weight.is_positive() {
                return Err(Error::BadDecomposition(format!("letter {} has non-positive weight", l.name)));
            }
            if l.map.len() != n || l.map.iter().any(|&t| t >= n) {
                return Err(Error::BadDecomposition(format!("letter {} is not a map on the states", l.name)));
            }
        }
        for s in 0..n {
            for t in 0..n {
                let sum = self.letters.iter().filter(|l| l.map[s] == t).fold(T::zero(), |a, l| a + l.weight.clone());
                if !sum.approx_eq(chain.prob(s, t)) {
                    return Err(Error::BadDecomposition(format!(
                        "entry ({}, {}) is {} but letters give {}",
                        chain.states[s],
                        chain.states[t],
                        chain.prob(s, t).render(),
                        sum.render()
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn names(&self) -> Vec<String> {
        self.letters.iter().map(|l| l.name.clone()).collect()
    }

    pub fn weights(&self) -> Vec<T> {
        self.letters.iter().map(|l| l.weight.clone()).collect()
    }
}

/// Greedy decomposition: repeatedly pick, in every row, the column with the
/// largest residual (lowest index on ties), weight the resulting map by the
/// least picked residual, and subtract. Letters are named `ℓ1`, `ℓ2`, ...
pub fn decompose<T: Probability>(chain: &MarkovChain<T>) -> Decomposition<T> {
    let n = chain.len();
    let mut residual = chain.matrix.clone();
    let mut letters = Vec::new();
    // every step zeroes at least one entry
    for _ in 0..=n * n {
        if residual.iter().flatten().all(|p| p.is_negligible()) {
            break;
        }
        let map: Vec<usize> = residual
            .iter()
            .map(|row| {
                let mut best = 0;
                for (t, p) in row.iter().enumerate() {
                    if *p > row[best] {
                        best = t;
                    }
                }
                best
            })
            .collect();
        let weight = (0..n)
            .map(|s| residual[s][map[s]].clone())
            .fold(None, |acc: Option<T>, p| match acc {
                Some(m) if m <= p => Some(m),
                _ => Some(p),
            })
            .expect("non-empty chain");
        if weight.is_negligible() {
            break;
        }
        for s in 0..n {
            residual[s][map[s]] = residual[s][map[s]].clone() - weight.clone();
        }
        letters.push(Letter { name: format!("ℓ{}", letters.len() + 1), map, weight });
    }
    Decomposition { letters }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ColoringMode {
    /// `{i}` on the `i`-th ergodic class, the top element elsewhere.
    Basic,
    /// Each state colored by the set of ergodic classes reachable from it.
    Reachable,
}

/// Lattice of subsets of ergodic-class numbers `1..=k`.
pub fn class_lattice(structure: &ErgodicStructure) -> Result<Lattice> {
    let k = structure.ergodic_classes().len();
    if k == 0 {
        return Err(Error::NoErgodicClass);
    }
    Lattice::powerset(k)
}

/// The deterministic automaton whose letters are the decomposition's maps,
/// colored by ergodic classes.
pub fn simulating_automaton<T: Probability>(
    chain: &MarkovChain<T>,
    decomposition: &Decomposition<T>,
    mode: ColoringMode,
    initial: Option<&str>,
) -> Result<LatticeAutomaton> {
    decomposition.validate(chain)?;
    let structure = ergodic_structure(chain);
    let lattice = Arc::new(class_lattice(&structure)?);
    let ergodic = structure.ergodic_classes();
    let reach = chain.reachability();
    let initial = match initial {
        Some(name) => chain.index_of(name).map_err(|_| Error::NoInitial(name.to_string()))?,
        None => 0,
    };
    let output = (0..chain.len())
        .map(|s| {
            let c = structure.class_of[s];
            let mask = match (mode, ergodic.iter().position(|&e| e == c)) {
                (_, Some(i)) => 1usize << i,
                (ColoringMode::Basic, None) => (1usize << ergodic.len()) - 1,
                (ColoringMode::Reachable, None) => ergodic
                    .iter()
                    .enumerate()
                    .filter(|(_, &e)| reach[s][structure.classes[e][0]])
                    .fold(0, |m, (i, _)| m | 1 << i),
            };
            mask
        })
        .collect();
    let delta = (0..chain.len()).map(|s| decomposition.letters.iter().map(|l| l.map[s]).collect()).collect();
    LatticeAutomaton::new(lattice, decomposition.names(), chain.states.clone(), initial, delta, output)
}

/// Absorption probabilities into each ergodic class.
#[derive(Debug, Clone, PartialEq)]
pub struct Absorption<T> {
    /// Ergodic class indices (into [`ErgodicStructure::classes`]).
    pub classes: Vec<usize>,
    /// `probs[i][s]`: probability that the chain started at `s` is absorbed in `classes[i]`.
    pub probs: Vec<Vec<T>>,
}

/// Solves `x_s = sum_t P(s,t) x_t` on transient states with `x = 1` on the
/// target class and `0` on the other ergodic classes.
pub fn absorption_probabilities<T: Probability>(chain: &MarkovChain<T>) -> Result<Absorption<T>> {
    let structure = ergodic_structure(chain);
    let classes = structure.ergodic_classes();
    if classes.is_empty() {
        return Err(Error::NoErgodicClass);
    }
    let transient = structure.transient_states();
    let pos: Vec<Option<usize>> = (0..chain.len()).map(|s| transient.iter().position(|&t| t == s)).collect();
    let m = transient.len();
    let mut probs = Vec::with_capacity(classes.len());
    for &c in &classes {
        let mut x: Vec<T> = (0..chain.len())
            .map(|s| if structure.class_of[s] == c { T::one() } else { T::zero() })
            .collect();
        if m > 0 {
            let mut a = vec![vec![T::zero(); m]; m];
            let mut b = vec![T::zero(); m];
            for (i, &s) in transient.iter().enumerate() {
                a[i][i] = T::one();
                for t in 0..chain.len() {
                    let p = chain.prob(s, t).clone();
                    match pos[t] {
                        Some(j) => a[i][j] = a[i][j].clone() - p,
                        None if structure.class_of[t] == c => b[i] = b[i].clone() + p,
                        None => {}
                    }
                }
            }
            let sol = solve(a, b)?;
            for (i, &s) in transient.iter().enumerate() {
                x[s] = sol[i].clone();
            }
        }
        probs.push(x);
    }
    Ok(Absorption { classes, probs })
}

/// Gaussian elimination with partial pivoting on absolute value.
pub fn solve<T: Probability>(mut a: Vec<Vec<T>>, mut b: Vec<T>) -> Result<Vec<T>> {
    let n = b.len();
    for col in 0..n {
        let pivot = (col..n)
            .max_by(|&i, &j| a[i][col].abs().partial_cmp(&a[j][col].abs()).unwrap_or(std::cmp::Ordering::Equal))
            .ok_or(Error::SingularSystem)?;
        if a[pivot][col].is_negligible() {
            return Err(Error::SingularSystem);
        }
        a.swap(col, pivot);
        b.swap(col, pivot);
        for row in col + 1..n {
            if a[row][col].is_zero() {
                continue;
            }
            let f = a[row][col].clone() / a[col][col].clone();
            for k in col..n {
                let delta = f.clone() * a[col][k].clone();
                a[row][k] = a[row][k].clone() - delta;
            }
            let delta = f * b[col].clone();
            b[row] = b[row].clone() - delta;
        }
    }
    let mut x = vec![T::zero(); n];
    for row in (0..n).rev() {
        let mut acc = b[row].clone();
        for k in row + 1..n {
            acc = acc - a[row][k].clone() * x[k].clone();
        }
        x[row] = acc / a[row][row].clone();
    }
    Ok(x)
}

/// Distribution of `L(w)` over lattice elements for a random word of length
/// `n` with independent letters drawn by `weights`.
pub fn word_measure<T: Probability>(a: &LatticeAutomaton, weights: &[T], n: usize) -> Result<Vec<T>> {
    if weights.len() != a.alphabet().len() {
        return Err(Error::Mismatched("letters and weights"));
    }
    let mut dist = vec![T::zero(); a.num_states()];
    dist[a.initial()] = T::one();
    for _ in 0..n {
        let mut next = vec![T::zero(); a.num_states()];
        for (s, p) in dist.iter().enumerate() {
            if p.is_zero() {
                continue;
            }
            for (c, w) in weights.iter().enumerate() {
                let t = a.delta(s, c);
                next[t] = next[t].clone() + p.clone() * w.clone();
            }
        }
        dist = next;
    }
    let mut out = vec![T::zero(); a.lattice().len()];
    for (s, p) in dist.into_iter().enumerate() {
        let c = a.output(s);
        out[c] = out[c].clone() + p;
    }
    Ok(out)
}

/// Options for [`analyze`].
#[derive(Debug, Clone)]
pub struct AnalyzeOptions<T> {
    /// Letters to use instead of the greedy decomposition.
    pub decomposition: Option<Decomposition<T>>,
    pub initial: Option<String>,
    /// Bound for the subword falsifier.
    pub max_len: usize,
    /// Word length for the word measure.
    pub horizon: usize,
    /// Words to evaluate in basic mode.
    pub words: Vec<String>,
}

impl<T> Default for AnalyzeOptions<T> {
    fn default() -> Self {
        AnalyzeOptions { decomposition: None, initial: None, max_len: 6, horizon: 16, words: Vec::new() }
    }
}

fn mode_report(a: &LatticeAutomaton, max_len: usize) -> Result<Value> {
    let s = crate::syntactic::syntactic_default(a)?;
    let m = s.monoid();
    let l = a.lattice();
    let colors: Map<String, Value> =
        m.elements().map(|x| (m.name(x).to_string(), io::element_to_json(l.name(s.coloring().color(x))))).collect();
    let mut leq: Vec<(&str, &str)> = Vec::new();
    for x in m.elements() {
        for y in m.elements() {
            if x != y && m.leq(x, y) {
                leq.push((m.name(x), m.name(y)));
            }
        }
    }
    leq.sort();
    let verdict = crate::syntactic::is_shuffle_ideal(a, crate::monoid::DEFAULT_MONOID_CAP)?;
    let pair = |p: &(crate::automaton::Word, crate::automaton::Word)| json!([a.render_word(&p.0), a.render_word(&p.1)]);
    let falsifier = crate::syntactic::shuffle_ideal_falsify(a, max_len);
    Ok(json!({
        "automaton": io::automaton_to_json(a),
        "minimal_states": a.minimize().num_states(),
        "syntactic": {
            "size": m.len(),
            "colors": colors,
            "leq": leq.iter().map(|(x, y)| json!([x, y])).collect::<Vec<_>>(),
            "aperiodic": m.is_aperiodic(),
            "identity_is_greatest": m.identity_is_greatest(),
        },
        "shuffle_ideal": {
            "algebraic": verdict.is_ideal,
            "witness": verdict.witness.as_ref().map(pair),
            "falsifier": {"max_len": max_len, "witness": falsifier.as_ref().map(pair)},
        },
    }))
}

/// Two states with equal colors under `from` but different colors under
/// `to`, i.e. a proof that `to` is not a recoloring of `from`.
pub fn recoloring_obstruction(from: &LatticeAutomaton, to: &LatticeAutomaton) -> Option<(usize, usize)> {
    let n = from.num_states();
    (0..n)
        .flat_map(|s| (s + 1..n).map(move |t| (s, t)))
        .find(|&(s, t)| from.output(s) == from.output(t) && to.output(s) != to.output(t))
}

/// Ergodic structure, decomposition, both simulating automata with their
/// syntactic data, absorption probabilities, and the word measure.
pub fn analyze<T: Probability>(chain: &MarkovChain<T>, opts: &AnalyzeOptions<T>) -> Result<Value> {
    let structure = ergodic_structure(chain);
    let names = |xs: &[usize]| xs.iter().map(|&s| chain.states[s].clone()).collect::<Vec<_>>();
    let ergodic = structure.ergodic_classes();
    let label = |c: usize| ergodic.iter().position(|&e| e == c).map(|i| format!("C{}", i + 1));
    let (decomposition, source) = match &opts.decomposition {
        Some(d) => {
            d.validate(chain)?;
            (d.clone(), "supplied")
        }
        None => (decompose(chain), "greedy"),
    };
    let initial = opts.initial.as_deref();
    let basic = simulating_automaton(chain, &decomposition, ColoringMode::Basic, initial)?;
    let reachable = simulating_automaton(chain, &decomposition, ColoringMode::Reachable, initial)?;
    let absorption = absorption_probabilities(chain)?;
    let absorption_json: Map<String, Value> = absorption
        .classes
        .iter()
        .zip(&absorption.probs)
        .map(|(&c, row)| {
            let row: Map<String, Value> =
                row.iter().enumerate().map(|(s, p)| (chain.states[s].clone(), json!(p.render()))).collect();
            (label(c).expect("ergodic"), Value::Object(row))
        })
        .collect();
    let measure = word_measure(&basic, &decomposition.weights(), opts.horizon)?;
    let l = basic.lattice();
    let distribution: Map<String, Value> =
        l.elements().map(|x| (l.name(x).to_string(), json!(measure[x].render()))).collect();
    let evaluations = opts
        .words
        .iter()
        .map(|w| Ok((w.clone(), io::element_to_json(l.name(basic.evaluate(&basic.parse_word(w)?))))))
        .collect::<Result<Map<String, Value>>>()?;
    let obstruction = recoloring_obstruction(&reachable, &basic);
    let mut d = io::decomposition_to_json(&decomposition, chain);
    d["source"] = json!(source);
    Ok(json!({
        "states": chain.states,
        "initial": basic.states()[basic.initial()],
        "classes": structure.classes.iter().enumerate().map(|(c, members)| json!({
            "states": names(members),
            "ergodic": structure.ergodic[c],
            "label": label(c),
        })).collect::<Vec<_>>(),
        "ergodic_classes": ergodic.iter().map(|&c| names(&structure.classes[c])).collect::<Vec<_>>(),
        "transient": names(&structure.transient_states()),
        "class_dag": structure.class_dag.iter().map(|&(a, b)| json!([a, b])).collect::<Vec<_>>(),
        "decomposition": d,
        "modes": {
            "basic": mode_report(&basic, opts.max_len)?,
            "reachable": mode_report(&reachable, opts.max_len)?,
        },
        "basic_from_reachable": {
            "is_recoloring": obstruction.is_none(),
            "witness": obstruction.map(|(s, t)| json!([chain.states[s], chain.states[t]])),
        },
        "absorption": absorption_json,
        "word_measure": {"horizon": opts.horizon, "distribution": distribution},
        "evaluations": evaluations,
    }))
}
