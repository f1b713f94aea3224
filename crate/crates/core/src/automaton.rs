//! Lattice-valued languages represented by complete deterministic Moore machines.

use std::collections::{HashMap, VecDeque};
use std::sync::Arc;

use crate::coloring::Side;
use crate::error::{Error, Result};
use crate::lattice::{BoundKind, Lattice, LatticeMorphism};
use crate::monoid::tuple_name;

/// A word as a sequence of letter indices.
pub type Word = Vec<usize>;

/// All words over `k` letters in length-lexicographic order, up to `max_len`.
pub fn words_up_to(k: usize, max_len: usize) -> impl Iterator<Item = Word> {
    (0..=max_len).flat_map(move |len| {
        let count = if k == 0 { usize::from(len == 0) } else { k.pow(len as u32) };
        (0..count).map(move |mut i| {
            let mut w = vec![0; len];
            for slot in w.iter_mut().rev() {
                *slot = i % k;
                i /= k;
            }
            w
        })
    })
}

/// Renders a word over `alphabet`; single-character letters are concatenated,
/// longer ones joined with `.`. The empty word renders as `ε`.
pub fn render_word(alphabet: &[String], w: &[usize]) -> String {
    if w.is_empty() {
        return "ε".to_string();
    }
    let sep = if alphabet.iter().all(|a| a.chars().count() == 1) { "" } else { "." };
    w.iter().map(|&a| alphabet[a].as_str()).collect::<Vec<_>>().join(sep)
}

/// Parses a word in the form produced by [`render_word`]. The empty string
/// is also accepted for the empty word.
pub fn parse_word(alphabet: &[String], s: &str) -> Result<Word> {
    if s == "ε" || s.is_empty() {
        return Ok(Vec::new());
    }
    if alphabet.iter().any(|a| a.chars().count() != 1) {
        return parse_word_list(alphabet, &s.split('.').collect::<Vec<_>>());
    }
    s.chars()
        .map(|c| {
            let mut buf = [0u8; 4];
            let c = c.encode_utf8(&mut buf);
            alphabet.iter().position(|a| a == c).ok_or_else(|| Error::UnknownLetter(c.to_string()))
        })
        .collect()
}

/// Parses a word written as a list of letter names.
pub fn parse_word_list<S: AsRef<str>>(alphabet: &[String], letters: &[S]) -> Result<Word> {
    letters
        .iter()
        .map(|l| {
            let l = l.as_ref();
            alphabet.iter().position(|a| a == l).ok_or_else(|| Error::UnknownLetter(l.to_string()))
        })
        .collect()
}

/// A homomorphism of free monoids given by its letter images.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FreeMorphism {
    source: Vec<String>,
    target: Vec<String>,
    images: Vec<Word>,
}

impl FreeMorphism {
    pub fn new(source: Vec<String>, target: Vec<String>, images: Vec<Word>) -> Result<Self> {
        if images.len() != source.len() {
            return Err(Error::Mismatched("free morphism domain"));
        }
        if let Some(&bad) = images.iter().flatten().find(|&&a| a >= target.len()) {
            return Err(Error::UnknownLetter(bad.to_string()));
        }
        Ok(FreeMorphism { source, target, images })
    }

    pub fn identity(alphabet: Vec<String>) -> Self {
        let images = (0..alphabet.len()).map(|a| vec![a]).collect();
        FreeMorphism { source: alphabet.clone(), target: alphabet, images }
    }

    pub fn source(&self) -> &[String] {
        &self.source
    }

    pub fn target(&self) -> &[String] {
        &self.target
    }

    pub fn images(&self) -> &[Word] {
        &self.images
    }

    pub fn apply(&self, w: &[usize]) -> Word {
        w.iter().flat_map(|&a| self.images[a].iter().copied()).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticeAutomaton {
    lattice: Arc<Lattice>,
    alphabet: Vec<String>,
    states: Vec<String>,
    initial: usize,
    delta: Vec<Vec<usize>>,
    output: Vec<usize>,
}

impl LatticeAutomaton {
    pub fn new(
        lattice: Arc<Lattice>,
        alphabet: Vec<String>,
        states: Vec<String>,
        initial: usize,
        delta: Vec<Vec<usize>>,
        output: Vec<usize>,
    ) -> Result<Self> {
        for (i, a) in alphabet.iter().enumerate() {
            if alphabet[..i].contains(a) {
                return Err(Error::DuplicateName(a.clone()));
            }
        }
        for (i, s) in states.iter().enumerate() {
            if states[..i].contains(s) {
                return Err(Error::DuplicateName(s.clone()));
            }
        }
        if states.is_empty() {
            return Err(Error::SizeOutOfRange { what: "automaton states", size: 0 });
        }
        if initial >= states.len() {
            return Err(Error::NoInitial(initial.to_string()));
        }
        if delta.len() != states.len() || output.len() != states.len() {
            return Err(Error::Mismatched("automaton tables"));
        }
        for (s, row) in delta.iter().enumerate() {
            if row.len() != alphabet.len() {
                let letter = alphabet.get(row.len()).cloned().unwrap_or_default();
                return Err(Error::PartialAutomaton { state: states[s].clone(), letter });
            }
            if let Some(&bad) = row.iter().find(|&&t| t >= states.len()) {
                return Err(Error::UnknownElement(bad.to_string()));
            }
        }
        if let Some(&bad) = output.iter().find(|&&c| c >= lattice.len()) {
            return Err(Error::UnknownElement(bad.to_string()));
        }
        Ok(LatticeAutomaton { lattice, alphabet, states, initial, delta, output })
    }

    /// One-state automaton for the constant language.
    pub fn constant(lattice: Arc<Lattice>, alphabet: Vec<String>, value: usize) -> Self {
        let k = alphabet.len();
        LatticeAutomaton {
            lattice,
            alphabet,
            states: vec!["q".into()],
            initial: 0,
            delta: vec![vec![0; k]],
            output: vec![value],
        }
    }

    pub fn lattice(&self) -> &Arc<Lattice> {
        &self.lattice
    }

    pub fn alphabet(&self) -> &[String] {
        &self.alphabet
    }

    pub fn states(&self) -> &[String] {
        &self.states
    }

    pub fn num_states(&self) -> usize {
        self.states.len()
    }

    pub fn initial(&self) -> usize {
        self.initial
    }

    pub fn delta(&self, state: usize, letter: usize) -> usize {
        self.delta[state][letter]
    }

    pub fn transitions(&self) -> &[Vec<usize>] {
        &self.delta
    }

    pub fn output(&self, state: usize) -> usize {
        self.output[state]
    }

    pub fn outputs(&self) -> &[usize] {
        &self.output
    }

    pub fn parse_word(&self, s: &str) -> Result<Word> {
        parse_word(&self.alphabet, s)
    }

    pub fn render_word(&self, w: &[usize]) -> String {
        render_word(&self.alphabet, w)
    }

    pub fn run(&self, from: usize, w: &[usize]) -> usize {
        w.iter().fold(from, |s, &a| self.delta[s][a])
    }

    /// `L(w) = F(delta*(q0, w))`.
    pub fn evaluate(&self, w: &[usize]) -> usize {
        self.output[self.run(self.initial, w)]
    }

    pub fn checked_evaluate(&self, w: &[usize]) -> Result<usize> {
        if let Some(&bad) = w.iter().find(|&&a| a >= self.alphabet.len()) {
            return Err(Error::UnknownLetter(bad.to_string()));
        }
        Ok(self.evaluate(w))
    }

    fn same_carrier(&self, other: &LatticeAutomaton) -> Result<()> {
        if self.alphabet != other.alphabet {
            return Err(Error::Mismatched("alphabet"));
        }
        if self.lattice != other.lattice {
            return Err(Error::Mismatched("lattice"));
        }
        Ok(())
    }

    /// Reachable part of the synchronous product, with outputs combined by
    /// join or meet.
    pub fn product(kind: BoundKind, a: &LatticeAutomaton, b: &LatticeAutomaton) -> Result<LatticeAutomaton> {
        a.same_carrier(b)?;
        let k = a.alphabet.len();
        let mut index: HashMap<(usize, usize), usize> = HashMap::new();
        let mut pairs = vec![(a.initial, b.initial)];
        index.insert((a.initial, b.initial), 0);
        let mut delta = Vec::new();
        let mut i = 0;
        while i < pairs.len() {
            let (p, q) = pairs[i];
            let mut row = Vec::with_capacity(k);
            for c in 0..k {
                let next = (a.delta[p][c], b.delta[q][c]);
                let id = *index.entry(next).or_insert_with(|| {
                    pairs.push(next);
                    pairs.len() - 1
                });
                row.push(id);
            }
            delta.push(row);
            i += 1;
        }
        let states = pairs.iter().map(|&(p, q)| tuple_name(&[&a.states[p], &b.states[q]])).collect();
        let output = pairs.iter().map(|&(p, q)| a.lattice.bound(kind, [a.output[p], b.output[q]])).collect();
        Ok(LatticeAutomaton { lattice: a.lattice.clone(), alphabet: a.alphabet.clone(), states, initial: 0, delta, output })
    }

    /// `u\L` (left) or `L/u` (right).
    pub fn quotient(&self, side: Side, u: &[usize]) -> Result<LatticeAutomaton> {
        if let Some(&bad) = u.iter().find(|&&a| a >= self.alphabet.len()) {
            return Err(Error::UnknownLetter(bad.to_string()));
        }
        let mut out = self.clone();
        match side {
            Side::Left => out.initial = self.run(self.initial, u),
            Side::Right => {
                out.output = (0..self.num_states()).map(|q| self.output[self.run(q, u)]).collect();
            }
        }
        Ok(out)
    }

    /// `L o h` for a free morphism `h` into this automaton's alphabet.
    pub fn inverse_hom(&self, h: &FreeMorphism) -> Result<LatticeAutomaton> {
        if h.target() != self.alphabet.as_slice() {
            return Err(Error::Mismatched("alphabet"));
        }
        let delta = (0..self.num_states())
            .map(|q| h.images().iter().map(|img| self.run(q, img)).collect())
            .collect();
        Ok(LatticeAutomaton {
            lattice: self.lattice.clone(),
            alphabet: h.source().to_vec(),
            states: self.states.clone(),
            initial: self.initial,
            delta,
            output: self.output.clone(),
        })
    }

    /// `alpha o L`.
    pub fn recolor(&self, alpha: &LatticeMorphism) -> Result<LatticeAutomaton> {
        if **alpha.lattice() != *self.lattice {
            return Err(Error::Mismatched("lattice"));
        }
        let mut out = self.clone();
        out.output = self.output.iter().map(|&c| alpha.apply(c)).collect();
        Ok(out)
    }

    /// Two-valued cut: bottom where `L(w) <= lambda`, top elsewhere.
    pub fn cut(&self, lambda: usize) -> Result<LatticeAutomaton> {
        if lambda >= self.lattice.len() {
            return Err(Error::UnknownElement(lambda.to_string()));
        }
        self.recolor(&LatticeMorphism::threshold(self.lattice.clone(), lambda))
    }

    /// States reachable from the initial state, in breadth-first order.
    pub fn reachable(&self) -> Vec<usize> {
        let mut seen = vec![false; self.num_states()];
        seen[self.initial] = true;
        let mut order = vec![self.initial];
        let mut i = 0;
        while i < order.len() {
            for &t in &self.delta[order[i]] {
                if !seen[t] {
                    seen[t] = true;
                    order.push(t);
                }
            }
            i += 1;
        }
        order
    }

    /// Restriction to reachable states, renumbered in breadth-first order.
    pub fn trim(&self) -> LatticeAutomaton {
        let order = self.reachable();
        self.restrict(&order)
    }

    fn restrict(&self, order: &[usize]) -> LatticeAutomaton {
        let mut pos = vec![usize::MAX; self.num_states()];
        for (i, &s) in order.iter().enumerate() {
            pos[s] = i;
        }
        LatticeAutomaton {
            lattice: self.lattice.clone(),
            alphabet: self.alphabet.clone(),
            states: order.iter().map(|&s| self.states[s].clone()).collect(),
            initial: pos[self.initial],
            delta: order.iter().map(|&s| self.delta[s].iter().map(|&t| pos[t]).collect()).collect(),
            output: order.iter().map(|&s| self.output[s]).collect(),
        }
    }

    /// Minimal equivalent machine: trim, then coarsest partition refinement
    /// starting from the partition by output value. Blocks are numbered in
    /// breadth-first order from the initial state and named by their members.
    pub fn minimize(&self) -> LatticeAutomaton {
        let t = self.trim();
        let n = t.num_states();
        let mut block = renumber(&t.output);
        loop {
            let sigs: Vec<Vec<usize>> = (0..n)
                .map(|s| std::iter::once(block[s]).chain(t.delta[s].iter().map(|&q| block[q])).collect())
                .collect();
            let next = renumber(&sigs);
            let done = next.iter().max() == block.iter().max();
            block = next;
            if done {
                break;
            }
        }
        let count = block.iter().max().map_or(0, |&b| b + 1);
        let mut members: Vec<Vec<usize>> = vec![Vec::new(); count];
        for s in 0..n {
            members[block[s]].push(s);
        }
        // block-level machine, then renumber by BFS (already BFS-ordered since t is trimmed
        // and blocks are numbered by first member)
        let states = members.iter().map(|m| m.iter().map(|&s| t.states[s].as_str()).collect::<Vec<_>>().join("|")).collect();
        let delta = members.iter().map(|m| t.delta[m[0]].iter().map(|&q| block[q]).collect()).collect();
        let output = members.iter().map(|m| t.output[m[0]]).collect();
        let quotient = LatticeAutomaton {
            lattice: t.lattice.clone(),
            alphabet: t.alphabet.clone(),
            states,
            initial: block[t.initial],
            delta,
            output,
        };
        quotient.trim()
    }

    /// Shortlex-least word on which the two languages differ.
    pub fn distinguishing_word(a: &LatticeAutomaton, b: &LatticeAutomaton) -> Result<Option<Word>> {
        a.same_carrier(b)?;
        let mut parent: HashMap<(usize, usize), Option<((usize, usize), usize)>> = HashMap::new();
        let start = (a.initial, b.initial);
        parent.insert(start, None);
        let mut queue = VecDeque::from([start]);
        while let Some((p, q)) = queue.pop_front() {
            if a.output[p] != b.output[q] {
                let mut w = Vec::new();
                let mut cur = (p, q);
                while let Some(Some((prev, c))) = parent.get(&cur) {
                    w.push(*c);
                    cur = *prev;
                }
                w.reverse();
                return Ok(Some(w));
            }
            for c in 0..a.alphabet.len() {
                let next = (a.delta[p][c], b.delta[q][c]);
                if let std::collections::hash_map::Entry::Vacant(e) = parent.entry(next) {
                    e.insert(Some(((p, q), c)));
                    queue.push_back(next);
                }
            }
        }
        Ok(None)
    }

    pub fn equivalent(a: &LatticeAutomaton, b: &LatticeAutomaton) -> Result<bool> {
        Ok(Self::distinguishing_word(a, b)?.is_none())
    }
}

/// Dense renumbering of keys by first occurrence.
fn renumber<K: std::hash::Hash + Eq + Clone>(keys: &[K]) -> Vec<usize> {
    let mut ids: HashMap<K, usize> = HashMap::new();
    keys.iter()
        .map(|k| {
            let next = ids.len();
            *ids.entry(k.clone()).or_insert(next)
        })
        .collect()
}
