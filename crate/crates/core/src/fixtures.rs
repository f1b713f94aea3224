//! Small named instances used by the test suites, the verification harness,
//! and the command-line tool.

use std::sync::Arc;

use crate::automaton::LatticeAutomaton;
use crate::lattice::Lattice;
use crate::markov::{parse_probability, Decomposition, Letter, MarkovChain, Probability};

fn names(v: &[&str]) -> Vec<String> {
    v.iter().map(|x| x.to_string()).collect()
}

/// The six-state machine over `{a, b, c}` simulating [`example_chain`] with
/// [`example_decomposition`], colored by ergodic class.
pub fn example_machine() -> LatticeAutomaton {
    let l = Arc::new(Lattice::powerset(2).expect("powerset(2)"));
    // t1 t2 s11 s12 s21 s22
    let delta = vec![
        vec![2, 1, 1],
        vec![4, 1, 1],
        vec![3, 3, 3],
        vec![2, 2, 2],
        vec![5, 4, 4],
        vec![4, 5, 5],
    ];
    LatticeAutomaton::new(
        l,
        names(&["a", "b", "c"]),
        names(&["t1", "t2", "s11", "s12", "s21", "s22"]),
        0,
        delta,
        vec![3, 3, 1, 1, 2, 2],
    )
    .expect("valid automaton")
}

/// Boolean language valued 0 exactly on words containing `a`, over `{a, b}`.
pub fn contains_a() -> LatticeAutomaton {
    LatticeAutomaton::new(
        Arc::new(Lattice::boolean()),
        names(&["a", "b"]),
        names(&["no", "yes"]),
        0,
        vec![vec![1, 0], vec![1, 1]],
        vec![1, 0],
    )
    .expect("valid automaton")
}

/// Boolean language valued 0 only on the empty word.
pub fn empty_only() -> LatticeAutomaton {
    LatticeAutomaton::new(
        Arc::new(Lattice::boolean()),
        names(&["a", "b"]),
        names(&["start", "sink"]),
        0,
        vec![vec![1, 1], vec![1, 1]],
        vec![0, 1],
    )
    .expect("valid automaton")
}

/// Six-state chain with two ergodic classes; state order t1 t2 s11 s12 s21 s22.
pub fn example_chain<T: Probability>() -> MarkovChain<T> {
    let p = |s: &str| parse_probability::<T>(s).expect("literal");
    let z = || T::zero();
    let m = vec![
        vec![z(), p("2/3"), p("1/3"), z(), z(), z()],
        vec![z(), p("2/3"), z(), z(), p("1/3"), z()],
        vec![z(), z(), z(), p("1"), z(), z()],
        vec![z(), z(), p("1"), z(), z(), z()],
        vec![z(), z(), z(), z(), p("2/3"), p("1/3")],
        vec![z(), z(), z(), z(), p("1/3"), p("2/3")],
    ];
    MarkovChain::new(names(&["t1", "t2", "s11", "s12", "s21", "s22"]), m).expect("stochastic")
}

/// Letters a, b, c each of weight 1/3, with b and c acting identically.
pub fn example_decomposition<T: Probability>() -> Decomposition<T> {
    let third = parse_probability::<T>("1/3").expect("literal");
    let a = vec![2, 4, 3, 2, 5, 4];
    let bc = vec![1, 1, 3, 2, 4, 5];
    Decomposition {
        letters: vec![
            Letter { name: "a".into(), map: a, weight: third.clone() },
            Letter { name: "b".into(), map: bc.clone(), weight: third.clone() },
            Letter { name: "c".into(), map: bc, weight: third },
        ],
    }
}
