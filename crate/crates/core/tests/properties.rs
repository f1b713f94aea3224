use std::collections::HashSet;
use std::sync::Arc;

use latlang::automaton::{words_up_to, LatticeAutomaton};
use latlang::io;
use latlang::lattice::BoundKind;
use latlang::markov::{self, ColoringMode, MarkovChain};
use latlang::syntactic;
use latlang::variety::{self, random};
use latlang::Rational;
use num_traits::{One, Zero};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn small_automaton(seed: u64) -> LatticeAutomaton {
    let mut r = rng(seed);
    let l = Arc::new(random::lattice(&mut r, 6));
    random::automaton(&mut r, l, &["a", "b"], 4)
}

/// Row-stochastic matrices with entries in multiples of 1/den.
fn chain_strategy() -> impl Strategy<Value = MarkovChain<Rational>> {
    (1usize..=5, 1i64..=6).prop_flat_map(|(n, den)| {
        prop::collection::vec(prop::collection::vec(0i64..=den, n), n).prop_map(move |raw| {
            let matrix = raw
                .into_iter()
                .enumerate()
                .map(|(i, mut row)| {
                    let mut total: i64 = row.iter().sum();
                    if total == 0 {
                        row[i] = 1;
                        total = 1;
                    }
                    row.iter().map(|&x| Rational::new(x.into(), total.into())).collect()
                })
                .collect();
            MarkovChain::new((0..n).map(|i| format!("s{i}")).collect(), matrix).expect("stochastic")
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn lattice_laws(seed in any::<u64>()) {
        let l = random::lattice(&mut rng(seed), 10);
        for a in l.elements() {
            for b in l.elements() {
                let j = l.join(a, b);
                let m = l.meet(a, b);
                prop_assert!(l.leq(a, j) && l.leq(b, j));
                prop_assert!(l.leq(m, a) && l.leq(m, b));
                prop_assert_eq!(l.join(a, m), a);
                prop_assert_eq!(l.meet(a, j), a);
                prop_assert_eq!(l.leq(a, b), j == b);
                for c in l.elements() {
                    if l.leq(a, c) && l.leq(b, c) {
                        prop_assert!(l.leq(j, c));
                    }
                }
            }
        }
    }

    #[test]
    fn colorings_stay_order_preserving(seed in any::<u64>()) {
        let mut r = rng(seed);
        let m = random::ordered_monoid(&mut r, 8);
        let l = Arc::new(random::lattice(&mut r, 6));
        let p = random::coloring(&mut r, m.clone(), l.clone());
        let q = random::coloring(&mut r, m.clone(), l.clone());
        let alpha = random::lattice_morphism(&mut r, l.clone());
        let mut out = vec![
            latlang::OpColoring::combine(BoundKind::Join, &p, &q).unwrap(),
            latlang::OpColoring::combine(BoundKind::Meet, &p, &q).unwrap(),
            p.postcompose(&alpha).unwrap(),
        ];
        for u in m.elements() {
            out.push(p.quotient(latlang::Side::Left, u).unwrap());
            out.push(p.quotient(latlang::Side::Right, u).unwrap());
        }
        for c in &out {
            prop_assert!(c.validate().is_ok());
        }
    }

    #[test]
    fn minimize_preserves_language(seed in any::<u64>()) {
        let a = small_automaton(seed);
        let m = a.minimize();
        prop_assert!(m.num_states() <= a.num_states());
        prop_assert!(LatticeAutomaton::equivalent(&a, &m).unwrap());
        for w in words_up_to(2, 5) {
            prop_assert_eq!(a.evaluate(&w), m.evaluate(&w));
        }
        prop_assert_eq!(m.minimize().num_states(), m.num_states());
    }

    #[test]
    fn syntactic_monoid_recognizes(seed in any::<u64>()) {
        let a = small_automaton(seed);
        let s = syntactic::syntactic(&a, 10_000).unwrap();
        prop_assert!(s.triple.recognizes(&a).unwrap());
        for w in words_up_to(2, 5) {
            prop_assert_eq!(s.triple.evaluate(&w), a.evaluate(&w));
        }
        for (x, w) in s.witnesses.iter().enumerate() {
            prop_assert_eq!(s.eta(w), x);
        }
    }

    #[test]
    fn automaton_json_round_trip(seed in any::<u64>()) {
        let a = small_automaton(seed);
        let v = io::automaton_to_json(&a);
        let b = io::automaton_from_json(&v).unwrap();
        prop_assert_eq!(io::automaton_to_json(&b), v);
        let s = syntactic::syntactic(&a, 10_000).unwrap();
        let t = io::triple_to_json(&s.triple);
        let back = io::triple_from_json(&t).unwrap();
        prop_assert_eq!(io::triple_to_json(&back), t);
        let lv = io::lattice_to_json(a.lattice());
        prop_assert_eq!(io::lattice_to_json(&io::lattice_from_json(&lv).unwrap()), lv);
    }

    #[test]
    fn ordered_monoid_axioms(seed in any::<u64>()) {
        let m = random::ordered_monoid(&mut rng(seed), 12);
        let e = m.identity();
        for x in m.elements() {
            prop_assert_eq!(m.mul(e, x), x);
            prop_assert_eq!(m.mul(x, e), x);
            for y in m.elements() {
                prop_assert!(!(x != y && m.leq(x, y) && m.leq(y, x)));
                for z in m.elements() {
                    prop_assert_eq!(m.mul(m.mul(x, y), z), m.mul(x, m.mul(y, z)));
                    if m.leq(x, y) {
                        prop_assert!(m.leq(m.mul(z, x), m.mul(z, y)) && m.leq(m.mul(x, z), m.mul(y, z)));
                    }
                    if m.leq(x, y) && m.leq(y, z) {
                        prop_assert!(m.leq(x, z));
                    }
                }
            }
        }
    }

    #[test]
    fn ergodic_classes_partition_and_are_sinks(c in chain_strategy()) {
        let e = markov::ergodic_structure(&c);
        let mut seen = vec![0; c.len()];
        for (i, class) in e.classes.iter().enumerate() {
            for &s in class {
                seen[s] += 1;
                prop_assert_eq!(e.class_of[s], i);
            }
        }
        prop_assert!(seen.iter().all(|&k| k == 1));
        let reach = c.reachability();
        for (i, class) in e.classes.iter().enumerate() {
            let closed = class.iter().all(|&s| (0..c.len()).all(|t| !reach[s][t] || e.class_of[t] == i));
            prop_assert_eq!(e.ergodic[i], closed);
            if e.ergodic[i] {
                prop_assert!(e.class_dag.iter().all(|&(from, _)| from != i));
            }
        }
        prop_assert!(!e.ergodic_classes().is_empty());
    }

    #[test]
    fn decomposition_reconstructs_chain(c in chain_strategy()) {
        let d = markov::decompose(&c);
        prop_assert!(d.validate(&c).is_ok());
        for s in 0..c.len() {
            for t in 0..c.len() {
                let sum: Rational = d.letters.iter().filter(|x| x.map[s] == t).map(|x| x.weight.clone()).sum();
                prop_assert_eq!(&sum, c.prob(s, t));
            }
        }
        let back = io::chain_from_json::<Rational>(&io::chain_to_json(&c)).unwrap();
        prop_assert_eq!(back.matrix(), c.matrix());
    }

    #[test]
    fn absorption_is_a_distribution(c in chain_strategy()) {
        let e = markov::ergodic_structure(&c);
        let a = markov::absorption_probabilities(&c).unwrap();
        let reach = c.reachability();
        for s in 0..c.len() {
            let total: Rational = a.probs.iter().map(|row| row[s].clone()).sum();
            prop_assert!(total.is_one());
            for (i, &class) in a.classes.iter().enumerate() {
                let reachable = e.classes[class].iter().any(|&t| reach[s][t]);
                prop_assert_eq!(a.probs[i][s] > Rational::zero(), reachable);
            }
        }
    }

    #[test]
    fn word_measure_sums_to_one(c in chain_strategy(), n in 0usize..12) {
        let d = markov::decompose(&c);
        for mode in [ColoringMode::Basic, ColoringMode::Reachable] {
            let a = markov::simulating_automaton(&c, &d, mode, None).unwrap();
            let m = markov::word_measure(&a, &d.weights(), n).unwrap();
            let total: Rational = m.iter().cloned().sum();
            prop_assert!(total.is_one());
        }
    }
}

#[test]
fn enumeration_has_no_isomorphic_duplicates() {
    for n in 1..=3 {
        let all = variety::enumerate_ordered_monoids(n).unwrap();
        for (i, x) in all.iter().enumerate() {
            for y in &all[i + 1..] {
                assert!(!x.is_isomorphic(y), "duplicate in size {n}");
            }
        }
        let names: HashSet<String> = all.iter().map(|m| io::monoid_to_json(m).to_string()).collect();
        assert_eq!(names.len(), all.len());
    }
}
