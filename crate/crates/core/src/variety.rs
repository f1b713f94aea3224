//! Small ordered monoids and instance-level checks of the correspondence
//! between positive varieties of lattice languages and pseudo-varieties of
//! ordered monoids.
//!
//! Every check reads its instance from a JSON `inputs` object, so a report
//! can be replayed from its serialized form alone (see [`replay`]).

use std::collections::HashSet;
use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::automaton::{words_up_to, FreeMorphism, LatticeAutomaton, Word};
use crate::coloring::{OpColoring, Side};
use crate::error::{Error, Result};
use crate::fixtures;
use crate::io;
use crate::lattice::{BoundKind, Lattice, LatticeMorphism};
use crate::monoid::{
    direct_product, divides, generated_submonoid, Division, DivisionBudget, OrderedMonoid, DEFAULT_MONOID_CAP,
};
use crate::order;
use crate::syntactic::{
    ideal_language_construction, is_shuffle_ideal, reconstruct_from_cuts, shuffle_ideal_falsify, syntactic,
    RecognitionTriple, SyntacticResult,
};

/// Largest carrier accepted by [`enumerate_ordered_monoids`].
pub const MAX_ENUMERATION_SIZE: usize = 4;

const ELEMENT_NAMES: [&str; MAX_ENUMERATION_SIZE] = ["1", "a", "b", "c"];

/// All ordered monoids with `n` elements up to isomorphism, sorted by
/// canonical form. Representatives have identity `"1"`.
pub fn enumerate_ordered_monoids(n: usize) -> Result<Vec<OrderedMonoid>> {
    if n == 0 {
        return Err(Error::SizeOutOfRange { what: "enumeration", size: 0 });
    }
    if n > MAX_ENUMERATION_SIZE {
        return Err(Error::SizeCapExceeded { what: "enumeration", size: n, cap: MAX_ENUMERATION_SIZE });
    }
    let posets = partial_orders(n);
    let perms: Vec<Vec<usize>> = permutations_fixing_zero(n);
    let cells: Vec<(usize, usize)> = (1..n).flat_map(|i| (1..n).map(move |j| (i, j))).collect();
    let mut seen: HashSet<Vec<u8>> = HashSet::new();
    let total = n.pow(cells.len() as u32);
    for code in 0..total {
        let mut mul = vec![vec![0usize; n]; n];
        for i in 0..n {
            mul[0][i] = i;
            mul[i][0] = i;
        }
        let mut c = code;
        for &(i, j) in &cells {
            mul[i][j] = c % n;
            c /= n;
        }
        let assoc = (0..n).all(|x| (0..n).all(|y| (0..n).all(|z| mul[mul[x][y]][z] == mul[x][mul[y][z]])));
        if !assoc {
            continue;
        }
        for rel in &posets {
            let compatible = (0..n).all(|x| {
                (0..n).all(|y| !rel[x][y] || (0..n).all(|z| rel[mul[z][x]][mul[z][y]] && rel[mul[x][z]][mul[y][z]]))
            });
            if compatible {
                let key = perms.iter().map(|p| relabel_key(&mul, rel, p)).min().expect("identity permutation");
                seen.insert(key);
            }
        }
    }
    let mut keys: Vec<Vec<u8>> = seen.into_iter().collect();
    keys.sort();
    keys.iter().map(|k| monoid_from_key(n, k)).collect()
}

fn partial_orders(n: usize) -> Vec<Vec<Vec<bool>>> {
    let off: Vec<(usize, usize)> = (0..n).flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j))).collect();
    let mut out = Vec::new();
    for bits in 0u32..1 << off.len() {
        let mut rel = vec![vec![false; n]; n];
        for (i, row) in rel.iter_mut().enumerate() {
            row[i] = true;
        }
        for (k, &(i, j)) in off.iter().enumerate() {
            rel[i][j] = bits >> k & 1 == 1;
        }
        let antisymmetric = off.iter().all(|&(i, j)| !(rel[i][j] && rel[j][i]));
        let transitive =
            (0..n).all(|i| (0..n).all(|j| !rel[i][j] || (0..n).all(|k| !rel[j][k] || rel[i][k])));
        if antisymmetric && transitive {
            out.push(rel);
        }
    }
    out
}

fn permutations_fixing_zero(n: usize) -> Vec<Vec<usize>> {
    fn rec(prefix: &mut Vec<usize>, rest: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rest.is_empty() {
            out.push(prefix.clone());
            return;
        }
        for i in 0..rest.len() {
            let x = rest.remove(i);
            prefix.push(x);
            rec(prefix, rest, out);
            prefix.pop();
            rest.insert(i, x);
        }
    }
    let mut out = Vec::new();
    rec(&mut vec![0], &mut (1..n).collect(), &mut out);
    out
}

/// Table then order of the monoid relabelled by `p` (old index -> new index).
fn relabel_key(mul: &[Vec<usize>], rel: &[Vec<bool>], p: &[usize]) -> Vec<u8> {
    let n = p.len();
    let mut inv = vec![0; n];
    for (old, &new) in p.iter().enumerate() {
        inv[new] = old;
    }
    let mut key = Vec::with_capacity(2 * n * n);
    for a in 0..n {
        for b in 0..n {
            key.push(p[mul[inv[a]][inv[b]]] as u8);
        }
    }
    for a in 0..n {
        for b in 0..n {
            key.push(u8::from(rel[inv[a]][inv[b]]));
        }
    }
    key
}

fn monoid_from_key(n: usize, key: &[u8]) -> Result<OrderedMonoid> {
    let mul = (0..n).map(|a| (0..n).map(|b| key[a * n + b] as usize).collect()).collect();
    let leq: Vec<(usize, usize)> = (0..n)
        .flat_map(|a| (0..n).map(move |b| (a, b)))
        .filter(|&(a, b)| key[n * n + a * n + b] == 1)
        .collect();
    OrderedMonoid::from_table(ELEMENT_NAMES[..n].iter().map(|s| s.to_string()).collect(), 0, mul, &leq)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail,
    BudgetExhausted,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::BudgetExhausted => "budget_exhausted",
        }
    }

    fn parse(s: &str) -> Result<Self> {
        match s {
            "pass" => Ok(Verdict::Pass),
            "fail" => Ok(Verdict::Fail),
            "budget_exhausted" => Ok(Verdict::BudgetExhausted),
            _ => Err(Error::Parse(format!("unknown verdict `{s}`"))),
        }
    }
}

/// Outcome of one check on one instance.
#[derive(Debug, Clone, PartialEq)]
pub struct VerificationReport {
    pub check: String,
    /// Seed, index, and generation sizes; `null` for ad hoc runs.
    pub instance: Value,
    pub verdict: Verdict,
    /// Everything needed to rerun the check.
    pub inputs: Value,
    pub witness: Option<Value>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }

    pub fn to_json(&self) -> Value {
        json!({
            "check": self.check,
            "instance": self.instance,
            "verdict": self.verdict.as_str(),
            "inputs": self.inputs,
            "witness": self.witness,
        })
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let get = |k: &str| v.get(k).ok_or_else(|| Error::Parse(format!("report lacks `{k}`")));
        Ok(VerificationReport {
            check: get("check")?.as_str().unwrap_or_default().to_string(),
            instance: get("instance")?.clone(),
            verdict: Verdict::parse(get("verdict")?.as_str().unwrap_or_default())?,
            inputs: get("inputs")?.clone(),
            witness: v.get("witness").filter(|w| !w.is_null()).cloned(),
        })
    }
}

struct Outcome {
    verdict: Verdict,
    witness: Option<Value>,
}

impl Outcome {
    fn pass() -> Self {
        Outcome { verdict: Verdict::Pass, witness: None }
    }

    fn fail(witness: Value) -> Self {
        Outcome { verdict: Verdict::Fail, witness: Some(witness) }
    }

    fn check(ok: bool, witness: impl FnOnce() -> Value) -> Self {
        if ok {
            Outcome::pass()
        } else {
            Outcome::fail(witness())
        }
    }
}

/// Names of the checks understood by [`run_check`].
pub const CHECKS: &[&str] = &[
    "lattice_laws",
    "coloring_closure",
    "ideal_representation",
    "closure",
    "syntactic_minimality",
    "recog_by_synt",
    "cut_reconstruction",
    "ideal_language",
    "shuffle_consistency",
    "subdirect_embedding",
    "cons_regression",
];

/// Runs `check` on serialized `inputs`. Cap overruns become
/// `budget_exhausted`, other errors a failure carrying the error.
pub fn run_check(check: &str, inputs: &Value, instance: Value) -> VerificationReport {
    let outcome = dispatch(check, inputs).unwrap_or_else(|e| Outcome {
        verdict: if matches!(e, Error::SizeCapExceeded { .. }) { Verdict::BudgetExhausted } else { Verdict::Fail },
        witness: Some(e.to_json()),
    });
    VerificationReport {
        check: check.to_string(),
        instance,
        verdict: outcome.verdict,
        inputs: inputs.clone(),
        witness: outcome.witness,
    }
}

/// Reruns a serialized report.
pub fn replay(report: &Value) -> Result<VerificationReport> {
    let r = VerificationReport::from_json(report)?;
    if !CHECKS.contains(&r.check.as_str()) {
        return Err(Error::Parse(format!("unknown check `{}`", r.check)));
    }
    Ok(run_check(&r.check, &r.inputs, r.instance))
}

fn input<'a>(inputs: &'a Value, key: &str) -> Result<&'a Value> {
    inputs.get(key).ok_or_else(|| Error::Parse(format!("inputs lack `{key}`")))
}

fn dispatch(check: &str, inputs: &Value) -> Result<Outcome> {
    let automaton = |key: &str| io::automaton_from_json(input(inputs, key)?);
    match check {
        "lattice_laws" => Ok(lattice_laws(&io::lattice_from_json(input(inputs, "lattice")?)?)),
        "coloring_closure" => {
            let a = automaton("automaton")?;
            let s = syntactic(&a, DEFAULT_MONOID_CAP)?;
            let m = s.monoid().clone();
            let l = a.lattice().clone();
            let colors = input(inputs, "colors")?
                .as_object()
                .ok_or_else(|| Error::Parse("`colors` must be an object".into()))?;
            let q = m
                .elements()
                .map(|x| {
                    let c = colors.get(m.name(x)).ok_or_else(|| Error::UnknownElement(m.name(x).to_string()))?;
                    l.index_of(&io::element_from_json(c)?)
                })
                .collect::<Result<Vec<_>>>()?;
            let q = OpColoring::new(m.clone(), l.clone(), q)?;
            let alpha = io::lattice_morphism_from_json(l, input(inputs, "morphism")?)?;
            let gens = input(inputs, "generators")?
                .as_array()
                .ok_or_else(|| Error::Parse("`generators` must be a list".into()))?
                .iter()
                .map(|g| m.index_of(g.as_str().unwrap_or_default()))
                .collect::<Result<Vec<_>>>()?;
            coloring_closure(&s, &q, &alpha, &gens)
        }
        "ideal_representation" => ideal_representation(&io::coloring_from_json(input(inputs, "coloring")?)?),
        "closure" => {
            let a = automaton("left")?;
            let b = automaton("right")?;
            let u = io::word_from_json(a.alphabet(), input(inputs, "word")?)?;
            let h = io::free_morphism_from_json(input(inputs, "hom")?, a.alphabet())?;
            let alpha = io::lattice_morphism_from_json(a.lattice().clone(), input(inputs, "morphism")?)?;
            closure(&a, &b, &u, &h, &alpha)
        }
        "syntactic_minimality" => {
            syntactic_minimality(&automaton("automaton")?, &io::triple_from_json(input(inputs, "triple")?)?)
        }
        "recog_by_synt" => {
            let langs = input(inputs, "languages")?
                .as_array()
                .ok_or_else(|| Error::Parse("`languages` must be a list".into()))?
                .iter()
                .map(io::automaton_from_json)
                .collect::<Result<Vec<_>>>()?;
            recog_by_synt(&langs, &io::triple_from_json(input(inputs, "triple")?)?)
        }
        "cut_reconstruction" => {
            let r = reconstruct_from_cuts(&automaton("automaton")?, DEFAULT_MONOID_CAP)?;
            Ok(Outcome::check(r.equal, || json!({"equal": false})))
        }
        "ideal_language" => ideal_language_check(&automaton("automaton")?),
        "shuffle_consistency" => {
            let max_len = input(inputs, "max_len")?.as_u64().ok_or_else(|| Error::Parse("`max_len`".into()))?;
            shuffle_consistency(&automaton("automaton")?, max_len as usize)
        }
        "subdirect_embedding" => subdirect(&io::monoid_from_json(input(inputs, "monoid")?)?),
        "cons_regression" => cons_regression(&io::lattice_from_json(input(inputs, "lattice")?)?),
        _ => Err(Error::Parse(format!("unknown check `{check}`"))),
    }
}

fn lattice_laws(l: &Lattice) -> Outcome {
    let n = l.len();
    for a in 0..n {
        if l.join(a, a) != a || l.meet(a, a) != a {
            return Outcome::fail(json!({"law": "idempotence", "a": l.name(a)}));
        }
        for b in 0..n {
            if l.join(a, b) != l.join(b, a) || l.meet(a, b) != l.meet(b, a) {
                return Outcome::fail(json!({"law": "commutativity", "a": l.name(a), "b": l.name(b)}));
            }
            if l.join(a, l.meet(a, b)) != a || l.meet(a, l.join(a, b)) != a {
                return Outcome::fail(json!({"law": "absorption", "a": l.name(a), "b": l.name(b)}));
            }
            if l.leq(a, b) != (l.join(a, b) == b) {
                return Outcome::fail(json!({"law": "order", "a": l.name(a), "b": l.name(b)}));
            }
            for c in 0..n {
                if l.join(l.join(a, b), c) != l.join(a, l.join(b, c)) || l.meet(l.meet(a, b), c) != l.meet(a, l.meet(b, c))
                {
                    return Outcome::fail(
                        json!({"law": "associativity", "a": l.name(a), "b": l.name(b), "c": l.name(c)}),
                    );
                }
            }
        }
    }
    let dd = l.dual().dual();
    Outcome::check(dd.names() == l.names() && dd.relation() == l.relation(), || json!({"law": "dual involution"}))
}

fn coloring_closure(s: &SyntacticResult, q: &OpColoring, alpha: &LatticeMorphism, gens: &[usize]) -> Result<Outcome> {
    let p = s.coloring();
    let m = s.monoid();
    let k = s.triple.alphabet().len();
    // each construction validates its result; an error here is a failure
    OpColoring::combine(BoundKind::Join, p, q)?;
    OpColoring::combine(BoundKind::Meet, p, q)?;
    let (_, prod) = OpColoring::product(BoundKind::Join, &[p.clone(), q.clone()], 4096)?;
    OpColoring::product(BoundKind::Meet, &[p.clone(), q.clone()], 4096)?;
    p.precompose(&prod.projections[0])?;
    q.precompose(&prod.projections[1])?;
    p.postcompose(alpha)?;
    q.postcompose(alpha)?;
    let (sub, embedding) = generated_submonoid(m, gens)?;
    let restricted = p.precompose(&embedding)?;
    restricted.extend_from_submonoid(&embedding)?;
    debug_assert_eq!(restricted.monoid(), &sub);
    let words: Vec<Word> = words_up_to(k, 3).chain(s.witnesses.iter().cloned()).collect();
    for u in m.elements() {
        let uw = &s.witnesses[u];
        for side in [Side::Left, Side::Right] {
            let quot = p.quotient(side, u)?;
            q.quotient(side, u)?;
            for w in &words {
                let full: Word = match side {
                    Side::Left => uw.iter().chain(w).copied().collect(),
                    Side::Right => w.iter().chain(uw).copied().collect(),
                };
                if s.triple.evaluate(&full) != quot.color(s.eta(w)) {
                    return Ok(Outcome::fail(json!({
                        "identity": if side == Side::Left { "left quotient" } else { "right quotient" },
                        "u": m.name(u),
                        "word": s.triple.to_automaton().render_word(w),
                    })));
                }
            }
        }
    }
    Ok(Outcome::pass())
}

fn ideal_representation(p: &OpColoring) -> Result<Outcome> {
    let (q, equal) = p.reconstruct_from_ideals()?;
    let m = p.monoid();
    let l = p.lattice();
    let bad = m.elements().find(|&x| q.color(x) != p.color(x));
    Ok(Outcome::check(equal && bad.is_none(), || {
        let x = bad.unwrap_or(0);
        json!({"element": m.name(x), "expected": l.name(p.color(x)), "actual": l.name(q.color(x))})
    }))
}

const CLOSURE_WORD_LEN: usize = 5;

fn closure(
    a: &LatticeAutomaton,
    b: &LatticeAutomaton,
    u: &[usize],
    h: &FreeMorphism,
    alpha: &LatticeMorphism,
) -> Result<Outcome> {
    if a.alphabet() != b.alphabet() {
        return Err(Error::Mismatched("alphabet"));
    }
    if a.lattice() != b.lattice() {
        return Err(Error::Mismatched("lattice"));
    }
    let l = a.lattice();
    let k = a.alphabet().len();
    let sa = syntactic(a, DEFAULT_MONOID_CAP)?;
    let sb = syntactic(b, DEFAULT_MONOID_CAP)?;
    let cat = |x: &[usize], y: &[usize]| -> Word { x.iter().chain(y).copied().collect() };

    type Spec<'a> = (&'static str, LatticeAutomaton, Option<RecognitionTriple>, Box<dyn Fn(&[usize]) -> usize + 'a>);
    let mut specs: Vec<Spec> = Vec::new();
    for (name, kind) in [("join", BoundKind::Join), ("meet", BoundKind::Meet)] {
        let triple = match OpColoring::product(kind, &[sa.coloring().clone(), sb.coloring().clone()], 4096) {
            Ok((p, prod)) => {
                let gens = (0..k)
                    .map(|c| prod.shape.encode(&[sa.generator_images()[c], sb.generator_images()[c]]))
                    .collect();
                Some(RecognitionTriple::new(a.alphabet().to_vec(), gens, p)?)
            }
            Err(Error::SizeCapExceeded { .. }) => None,
            Err(e) => return Err(e),
        };
        specs.push((
            name,
            LatticeAutomaton::product(kind, a, b)?,
            triple,
            Box::new(move |w: &[usize]| l.bound(kind, [a.evaluate(w), b.evaluate(w)])),
        ));
    }
    let eu = sa.eta(u);
    specs.push((
        "left quotient",
        a.quotient(Side::Left, u)?,
        Some(sa.triple.with_coloring(sa.coloring().quotient(Side::Left, eu)?)?),
        Box::new(|w: &[usize]| a.evaluate(&cat(u, w))),
    ));
    specs.push((
        "right quotient",
        a.quotient(Side::Right, u)?,
        Some(sa.triple.with_coloring(sa.coloring().quotient(Side::Right, eu)?)?),
        Box::new(|w: &[usize]| a.evaluate(&cat(w, u))),
    ));
    specs.push((
        "recolor",
        a.recolor(alpha)?,
        Some(sa.triple.with_coloring(sa.coloring().postcompose(alpha)?)?),
        Box::new(|w: &[usize]| alpha.apply(a.evaluate(w))),
    ));

    for (name, auto, triple, expected) in &specs {
        for w in words_up_to(k, CLOSURE_WORD_LEN) {
            let want = expected(&w);
            let got_a = auto.evaluate(&w);
            let got_t = triple.as_ref().map(|t| t.evaluate(&w)).unwrap_or(want);
            if got_a != want || got_t != want {
                return Ok(Outcome::fail(json!({
                    "operation": name,
                    "word": a.render_word(&w),
                    "expected": l.name(want),
                    "automaton": l.name(got_a),
                    "recognizer": l.name(got_t),
                })));
            }
        }
    }

    let inv = a.inverse_hom(h)?;
    let gens = (0..h.source().len()).map(|c| sa.eta(&h.images()[c])).collect();
    let inv_triple = RecognitionTriple::new(h.source().to_vec(), gens, sa.coloring().clone())?;
    for w in words_up_to(h.source().len(), CLOSURE_WORD_LEN) {
        let want = a.evaluate(&h.apply(&w));
        if inv.evaluate(&w) != want || inv_triple.evaluate(&w) != want {
            return Ok(Outcome::fail(json!({
                "operation": "inverse homomorphism",
                "word": inv.render_word(&w),
                "expected": l.name(want),
                "automaton": l.name(inv.evaluate(&w)),
                "recognizer": l.name(inv_triple.evaluate(&w)),
            })));
        }
    }
    Ok(Outcome::pass())
}

fn word_json(a: &LatticeAutomaton, w: &[usize]) -> Value {
    json!(a.render_word(w))
}

fn syntactic_minimality(a: &LatticeAutomaton, t: &RecognitionTriple) -> Result<Outcome> {
    let ta = t.to_automaton();
    if let Some(w) = LatticeAutomaton::distinguishing_word(&ta, a)? {
        return Err(Error::NotARecognizer { word: w.iter().map(|&c| a.alphabet()[c].clone()).collect() });
    }
    let s = syntactic(a, DEFAULT_MONOID_CAP)?;
    Ok(match divides(s.monoid(), t.monoid(), DivisionBudget::default()) {
        Division::Yes(_) => Outcome::pass(),
        Division::No => Outcome::fail(json!({"syntactic_size": s.monoid().len(), "recognizer_size": t.monoid().len()})),
        Division::BudgetExhausted => {
            Outcome { verdict: Verdict::BudgetExhausted, witness: Some(json!({"budget": "division search"})) }
        }
    })
}

/// Passes iff the syntactic ordered monoid of `a` divides the monoid of `t`.
/// `t` must recognize `a` ([`Error::NotARecognizer`] otherwise).
pub fn verify_syntactic_minimality(a: &LatticeAutomaton, t: &RecognitionTriple) -> Result<VerificationReport> {
    let inputs = json!({"automaton": io::automaton_to_json(a), "triple": io::triple_to_json(t)});
    let outcome = syntactic_minimality(a, t)?;
    Ok(VerificationReport {
        check: "syntactic_minimality".into(),
        instance: Value::Null,
        verdict: outcome.verdict,
        inputs,
        witness: outcome.witness,
    })
}

fn recog_by_synt(langs: &[LatticeAutomaton], t: &RecognitionTriple) -> Result<Outcome> {
    let first = langs.first().ok_or(Error::SizeOutOfRange { what: "languages", size: 0 })?;
    let l = first.lattice().clone();
    if langs.iter().any(|a| a.lattice() != &l || a.alphabet() != first.alphabet()) || t.lattice() != &l {
        return Err(Error::Mismatched("languages"));
    }
    if t.alphabet() != first.alphabet() {
        return Err(Error::Mismatched("alphabet"));
    }
    let synt = langs.iter().map(|a| syntactic(a, DEFAULT_MONOID_CAP)).collect::<Result<Vec<_>>>()?;
    let factors: Vec<Arc<OrderedMonoid>> = synt.iter().map(|s| s.monoid().clone()).collect();
    let prod = direct_product(&factors, DEFAULT_MONOID_CAP)?;
    if prod.monoid != *t.monoid() {
        return Err(Error::Mismatched("carrier is not the product of the syntactic monoids"));
    }
    let m = t.monoid();
    for x in m.elements() {
        let lhs = t.with_coloring(OpColoring::ideal(m.clone(), l.clone(), x)?)?.to_automaton();
        let digits = prod.shape.decode(x);
        let mut rhs: Option<LatticeAutomaton> = None;
        for (s, &d) in synt.iter().zip(&digits) {
            let part = s.triple.with_coloring(OpColoring::ideal(s.monoid().clone(), l.clone(), d)?)?.to_automaton();
            rhs = Some(match rhs {
                None => part.minimize(),
                Some(acc) => LatticeAutomaton::product(BoundKind::Join, &acc, &part)?.minimize(),
            });
        }
        let rhs = rhs.expect("at least one language");
        if let Some(w) = LatticeAutomaton::distinguishing_word(&lhs, &rhs)? {
            return Ok(Outcome::fail(json!({"part": "join identity", "element": m.name(x), "word": word_json(first, &w)})));
        }
    }
    let mut combo: Option<LatticeAutomaton> = None;
    for x in m.elements() {
        let ideal = t.with_coloring(OpColoring::ideal(m.clone(), l.clone(), x)?)?.to_automaton();
        let term = ideal.recolor(&LatticeMorphism::join_with(l.clone(), t.coloring().color(x)))?;
        combo = Some(match combo {
            None => term.minimize(),
            Some(acc) => LatticeAutomaton::product(BoundKind::Meet, &acc, &term)?.minimize(),
        });
    }
    let combo = combo.expect("non-empty monoid");
    Ok(match LatticeAutomaton::distinguishing_word(&t.to_automaton(), &combo)? {
        None => Outcome::pass(),
        Some(w) => Outcome::fail(json!({"part": "ideal meet", "word": word_json(first, &w)})),
    })
}

/// Checks the join identity for ideal colorings and the ideal-meet
/// decomposition of `t`'s coloring; `t` must live on the direct product of
/// the syntactic monoids of `languages`.
pub fn verify_recog_by_synt(languages: &[LatticeAutomaton], t: &RecognitionTriple) -> Result<VerificationReport> {
    let inputs = json!({
        "languages": languages.iter().map(io::automaton_to_json).collect::<Vec<_>>(),
        "triple": io::triple_to_json(t),
    });
    let outcome = recog_by_synt(languages, t)?;
    Ok(VerificationReport { check: "recog_by_synt".into(), instance: Value::Null, verdict: outcome.verdict, inputs, witness: outcome.witness })
}

/// The triple on the product of the syntactic monoids of `languages` with
/// the paired syntactic morphism and coloring `colors` (indexed by product element).
pub fn product_triple(languages: &[LatticeAutomaton], colors: Option<Vec<usize>>) -> Result<RecognitionTriple> {
    let first = languages.first().ok_or(Error::SizeOutOfRange { what: "languages", size: 0 })?;
    let synt = languages.iter().map(|a| syntactic(a, DEFAULT_MONOID_CAP)).collect::<Result<Vec<_>>>()?;
    let factors: Vec<Arc<OrderedMonoid>> = synt.iter().map(|s| s.monoid().clone()).collect();
    let prod = direct_product(&factors, DEFAULT_MONOID_CAP)?;
    let gens = (0..first.alphabet().len())
        .map(|c| prod.shape.encode(&synt.iter().map(|s| s.generator_images()[c]).collect::<Vec<_>>()))
        .collect();
    let l = first.lattice().clone();
    let colors = match colors {
        Some(c) => c,
        None => prod
            .monoid
            .elements()
            .map(|x| l.bound(BoundKind::Join, prod.shape.decode(x).iter().zip(&synt).map(|(&d, s)| s.coloring().color(d))))
            .collect(),
    };
    RecognitionTriple::new(first.alphabet().to_vec(), gens, OpColoring::new(prod.monoid.clone(), l, colors)?)
}

fn ideal_language_check(a: &LatticeAutomaton) -> Result<Outcome> {
    let s = syntactic(a, DEFAULT_MONOID_CAP)?;
    for m in s.monoid().elements() {
        let c = ideal_language_construction(a, m, DEFAULT_MONOID_CAP)?;
        if !c.equal {
            return Ok(Outcome::fail(json!({"element": s.monoid().name(m)})));
        }
    }
    Ok(Outcome::pass())
}

fn is_subword(w: &[usize], v: &[usize]) -> bool {
    let mut it = v.iter();
    w.iter().all(|c| it.any(|d| d == c))
}

fn shuffle_consistency(a: &LatticeAutomaton, max_len: usize) -> Result<Outcome> {
    let verdict = is_shuffle_ideal(a, DEFAULT_MONOID_CAP)?;
    let falsified = shuffle_ideal_falsify(a, max_len);
    let l = a.lattice();
    let semantic = |(w, v): &(Word, Word)| is_subword(w, v) && !l.leq(a.evaluate(v), a.evaluate(w));
    let render = |p: &(Word, Word)| json!([a.render_word(&p.0), a.render_word(&p.1)]);
    if verdict.is_ideal {
        if let Some(p) = &falsified {
            return Ok(Outcome::fail(json!({"algebraic": true, "falsifier": render(p)})));
        }
        return Ok(Outcome::pass());
    }
    let witness = verdict.witness.as_ref().ok_or(Error::InternalInconsistency("negative verdict without witness".into()))?;
    if !semantic(witness) {
        return Ok(Outcome::fail(json!({"algebraic": false, "bad_witness": render(witness)})));
    }
    if let Some(p) = &falsified {
        if !semantic(p) {
            return Ok(Outcome::fail(json!({"algebraic": false, "bad_falsifier": render(p)})));
        }
    }
    Ok(Outcome::pass())
}

/// For each `m`, the language `iota[m] o eval` over the alphabet `M` and its
/// syntactic monoid; `phi(x) = (eta_m(x))_m`.
pub struct SubdirectEmbedding {
    pub languages: Vec<SyntacticResult>,
    /// `phi[x][m]`.
    pub phi: Vec<Vec<usize>>,
}

pub fn subdirect_components(m: &Arc<OrderedMonoid>) -> Result<SubdirectEmbedding> {
    let b = Arc::new(Lattice::boolean());
    let alphabet = m.names().to_vec();
    let languages = m
        .elements()
        .map(|e| {
            let t = RecognitionTriple::new(alphabet.clone(), m.elements().collect(), OpColoring::ideal(m.clone(), b.clone(), e)?)?;
            syntactic(&t.to_automaton(), DEFAULT_MONOID_CAP)
        })
        .collect::<Result<Vec<_>>>()?;
    let phi = m.elements().map(|x| languages.iter().map(|s| s.eta(&[x])).collect()).collect();
    Ok(SubdirectEmbedding { languages, phi })
}

fn subdirect(m: &OrderedMonoid) -> Result<Outcome> {
    let m = Arc::new(m.clone());
    let e = subdirect_components(&m)?;
    let comps: Vec<&Arc<OrderedMonoid>> = e.languages.iter().map(|s| s.monoid()).collect();
    let phi = &e.phi;
    if comps.iter().zip(&phi[m.identity()]).any(|(c, &v)| v != c.identity()) {
        return Ok(Outcome::fail(json!({"property": "unit"})));
    }
    for x in m.elements() {
        for y in m.elements() {
            let xy = m.mul(x, y);
            if (0..comps.len()).any(|i| phi[xy][i] != comps[i].mul(phi[x][i], phi[y][i])) {
                return Ok(Outcome::fail(json!({"property": "multiplicative", "x": m.name(x), "y": m.name(y)})));
            }
            if x != y && phi[x] == phi[y] {
                return Ok(Outcome::fail(json!({"property": "injective", "x": m.name(x), "y": m.name(y)})));
            }
            let below = (0..comps.len()).all(|i| comps[i].leq(phi[x][i], phi[y][i]));
            if below != m.leq(x, y) {
                return Ok(Outcome::fail(json!({"property": "order embedding", "x": m.name(x), "y": m.name(y)})));
            }
        }
    }
    Ok(Outcome::pass())
}

/// Embeds `m` into the product of the syntactic monoids of its ideal languages.
pub fn subdirect_embedding(m: &OrderedMonoid) -> VerificationReport {
    run_check("subdirect_embedding", &json!({"monoid": io::monoid_to_json(m)}), Value::Null)
}

/// Searches order-preserving self-maps of `l` for one sending a constant
/// bottom or top language to a constant strictly between them.
pub fn cons_escape(l: &Lattice) -> Option<(LatticeMorphism, usize)> {
    let n = l.len();
    let ext = order::linear_extension(l.relation());
    let mut image = vec![usize::MAX; n];
    fn rec(l: &Lattice, ext: &[usize], i: usize, image: &mut Vec<usize>) -> bool {
        if i == ext.len() {
            let (b, t) = (image[l.bottom()], image[l.top()]);
            return ![l.bottom(), l.top()].contains(&b) || ![l.bottom(), l.top()].contains(&t);
        }
        let x = ext[i];
        for y in l.elements() {
            let ok = ext[..i].iter().all(|&z| !l.leq(z, x) || l.leq(image[z], y));
            if ok {
                image[x] = y;
                if rec(l, ext, i + 1, image) {
                    return true;
                }
            }
        }
        image[x] = usize::MAX;
        false
    }
    if !rec(l, &ext, 0, &mut image) {
        return None;
    }
    let alpha = LatticeMorphism::new(Arc::new(l.clone()), image).ok()?;
    let b = alpha.apply(l.bottom());
    let value = if b != l.bottom() && b != l.top() { b } else { alpha.apply(l.top()) };
    Some((alpha, value))
}

fn cons_regression(l: &Lattice) -> Result<Outcome> {
    if l.len() < 3 {
        return Err(Error::SizeOutOfRange { what: "lattice for the constant-language regression", size: l.len() });
    }
    Ok(match cons_escape(l) {
        Some(_) => Outcome::pass(),
        None => Outcome::fail(json!({"closed": true})),
    })
}

/// Random instance generators. All draws come from the supplied RNG.
pub mod random {
    use super::*;

    /// A lattice with `2..=max` elements: a random graded poset, rejected
    /// until it is a lattice (a chain after 200 rejections).
    pub fn lattice<R: Rng>(rng: &mut R, max: usize) -> Lattice {
        let n = rng.gen_range(2..=max.max(2));
        for _ in 0..200 {
            if let Ok(l) = graded_candidate(rng, n) {
                return l;
            }
        }
        Lattice::chain(n).expect("chain")
    }

    fn graded_candidate<R: Rng>(rng: &mut R, n: usize) -> Result<Lattice> {
        let middle = n - 2;
        let height = if middle == 0 { 0 } else { rng.gen_range(1..=middle) };
        let mut levels: Vec<usize> = (0..middle).map(|i| if i < height { i + 1 } else { rng.gen_range(1..=height) }).collect();
        levels.sort_unstable();
        // index 0 is bottom, 1..=middle the middle elements, n-1 top
        let mut names = vec!["0".to_string()];
        names.extend((1..=middle).map(|i| format!("p{i}")));
        names.push("1".to_string());
        let level_of = |i: usize| if i == 0 { 0 } else if i == n - 1 { height + 1 } else { levels[i - 1] };
        let mut covers = Vec::new();
        let mut has_upper = vec![false; n];
        for x in 1..n - 1 {
            let below: Vec<usize> = (0..n - 1).filter(|&y| level_of(y) + 1 == level_of(x)).collect();
            let mut picked: Vec<usize> = below.iter().copied().filter(|_| rng.gen_bool(0.5)).collect();
            if picked.is_empty() {
                picked.push(*below.choose(rng).expect("previous level is non-empty"));
            }
            for y in picked {
                covers.push((names[y].clone(), names[x].clone()));
                has_upper[y] = true;
            }
        }
        for x in 0..n - 1 {
            if !has_upper[x] {
                covers.push((names[x].clone(), names[n - 1].clone()));
            }
        }
        Lattice::from_covers(names, &covers)
    }

    /// Uniform total transition table and outputs; `1..=max_states` states, initial state `q0`.
    pub fn automaton<R: Rng>(rng: &mut R, lattice: Arc<Lattice>, letters: &[&str], max_states: usize) -> LatticeAutomaton {
        let n = rng.gen_range(1..=max_states.max(1));
        let delta = (0..n).map(|_| letters.iter().map(|_| rng.gen_range(0..n)).collect()).collect();
        let output = (0..n).map(|_| rng.gen_range(0..lattice.len())).collect();
        LatticeAutomaton::new(
            lattice,
            letters.iter().map(|s| s.to_string()).collect(),
            (0..n).map(|i| format!("q{i}")).collect(),
            0,
            delta,
            output,
        )
        .expect("valid random automaton")
    }

    /// Order-preserving map from a poset (given by its relation) into `l`.
    pub fn monotone<R: Rng>(rng: &mut R, rel: &[Vec<bool>], l: &Lattice) -> Vec<usize> {
        let mut image = vec![l.bottom(); rel.len()];
        for x in order::linear_extension(rel) {
            let floor = l.bound(BoundKind::Join, (0..rel.len()).filter(|&y| y != x && rel[y][x]).map(|y| image[y]));
            image[x] = l.join(floor, rng.gen_range(0..l.len()));
        }
        image
    }

    pub fn coloring<R: Rng>(rng: &mut R, m: Arc<OrderedMonoid>, l: Arc<Lattice>) -> OpColoring {
        let colors = monotone(rng, m.relation(), &l);
        OpColoring::new(m, l, colors).expect("monotone by construction")
    }

    pub fn lattice_morphism<R: Rng>(rng: &mut R, l: Arc<Lattice>) -> LatticeMorphism {
        let mapping = monotone(rng, l.relation(), &l);
        LatticeMorphism::new(l, mapping).expect("monotone by construction")
    }

    pub fn word<R: Rng>(rng: &mut R, k: usize, max_len: usize) -> Word {
        let n = rng.gen_range(0..=max_len);
        (0..n).map(|_| rng.gen_range(0..k)).collect()
    }

    /// Syntactic ordered monoid of a random small automaton, at most `max` elements.
    pub fn ordered_monoid<R: Rng>(rng: &mut R, max: usize) -> Arc<OrderedMonoid> {
        for _ in 0..200 {
            let l = Arc::new(lattice(rng, 4));
            let a = automaton(rng, l, &["a", "b"], 3);
            if let Ok(s) = syntactic(&a, max + 1) {
                if s.monoid().len() <= max {
                    return s.monoid().clone();
                }
            }
        }
        Arc::new(OrderedMonoid::trivial())
    }

    /// Meet of "contains the pattern `p_i` as a subword gives at most `lambda_i`"
    /// languages; a shuffle ideal by construction.
    pub fn shuffle_ideal<R: Rng>(rng: &mut R, lattice: Arc<Lattice>, letters: &[&str]) -> LatticeAutomaton {
        let k = letters.len();
        let alphabet: Vec<String> = letters.iter().map(|s| s.to_string()).collect();
        let mut acc = LatticeAutomaton::constant(lattice.clone(), alphabet.clone(), lattice.top());
        for _ in 0..rng.gen_range(1..=2) {
            let p: Word = (0..rng.gen_range(1..=2)).map(|_| rng.gen_range(0..k)).collect();
            let value = rng.gen_range(0..lattice.len());
            let n = p.len() + 1;
            let delta = (0..n).map(|s| (0..k).map(|c| if s < p.len() && p[s] == c { s + 1 } else { s }).collect()).collect();
            let output = (0..n).map(|s| if s == p.len() { value } else { lattice.top() }).collect();
            let part = LatticeAutomaton::new(
                lattice.clone(),
                alphabet.clone(),
                (0..n).map(|i| format!("m{i}")).collect(),
                0,
                delta,
                output,
            )
            .expect("valid pattern automaton");
            acc = LatticeAutomaton::product(BoundKind::Meet, &acc, &part).expect("same alphabet").minimize();
        }
        acc
    }
}

/// Instance counts and size bounds for [`run_suite`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuiteSizes {
    pub lattices: usize,
    pub colorings: usize,
    pub ideals: usize,
    pub closure: usize,
    pub minimality: usize,
    pub recog: usize,
    pub cuts: usize,
    pub ideal_languages: usize,
    pub shuffle: usize,
    pub subdirect: usize,
    pub cons: usize,
    pub max_lattice: usize,
    pub max_states: usize,
    pub shuffle_len: usize,
}

impl Default for SuiteSizes {
    fn default() -> Self {
        SuiteSizes {
            lattices: 50,
            colorings: 200,
            ideals: 100,
            closure: 50,
            minimality: 30,
            recog: 10,
            cuts: 30,
            ideal_languages: 20,
            shuffle: 30,
            subdirect: 10,
            cons: 10,
            max_lattice: 8,
            max_states: 5,
            shuffle_len: 8,
        }
    }
}

impl SuiteSizes {
    /// Overrides from `key=value` pairs separated by commas.
    pub fn with_overrides(mut self, spec: &str) -> Result<Self> {
        for item in spec.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let (k, v) = item.split_once('=').ok_or_else(|| Error::Parse(format!("expected key=value, got `{item}`")))?;
            let v: usize = v.parse().map_err(|_| Error::Parse(format!("bad count in `{item}`")))?;
            let slot = match k {
                "lattices" => &mut self.lattices,
                "colorings" => &mut self.colorings,
                "ideals" => &mut self.ideals,
                "closure" => &mut self.closure,
                "minimality" => &mut self.minimality,
                "recog" => &mut self.recog,
                "cuts" => &mut self.cuts,
                "ideal_languages" => &mut self.ideal_languages,
                "shuffle" => &mut self.shuffle,
                "subdirect" => &mut self.subdirect,
                "cons" => &mut self.cons,
                "max_lattice" => &mut self.max_lattice,
                "max_states" => &mut self.max_states,
                "shuffle_len" => &mut self.shuffle_len,
                _ => return Err(Error::Parse(format!("unknown size `{k}`"))),
            };
            *slot = v;
        }
        Ok(self)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "lattices": self.lattices, "colorings": self.colorings, "ideals": self.ideals,
            "closure": self.closure, "minimality": self.minimality, "recog": self.recog,
            "cuts": self.cuts, "ideal_languages": self.ideal_languages, "shuffle": self.shuffle,
            "subdirect": self.subdirect, "cons": self.cons, "max_lattice": self.max_lattice,
            "max_states": self.max_states, "shuffle_len": self.shuffle_len,
        })
    }
}

fn rng_for(seed: u64, check: &str) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let stream = CHECKS.iter().position(|c| *c == check).unwrap_or(CHECKS.len()) as u64;
    rng.set_stream(stream);
    rng
}

const LETTERS: [&str; 2] = ["a", "b"];

/// Generates the inputs of every instance of `check` in suite order.
pub fn suite_inputs(check: &str, seed: u64, sizes: &SuiteSizes) -> Vec<Value> {
    let mut rng = rng_for(seed, check);
    let rng = &mut rng;
    let ml = sizes.max_lattice.max(2);
    let ms = sizes.max_states.max(1);
    let small_lattice = |rng: &mut ChaCha8Rng| Arc::new(random::lattice(rng, ml.min(6)));
    let mut out = Vec::new();
    match check {
        "lattice_laws" => {
            out.push(json!({"lattice": io::lattice_to_json(&Lattice::powerset(3).expect("powerset"))}));
            out.push(json!({"lattice": io::lattice_to_json(&Lattice::chain(5).expect("chain"))}));
            for _ in 0..sizes.lattices {
                out.push(json!({"lattice": io::lattice_to_json(&random::lattice(rng, ml))}));
            }
        }
        "coloring_closure" => {
            while out.len() < sizes.colorings {
                let l = Arc::new(random::lattice(rng, ml));
                let a = random::automaton(rng, l.clone(), &LETTERS, ms.min(3));
                let Ok(s) = syntactic(&a, 17) else { continue };
                let m = s.monoid().clone();
                if m.len() > 16 {
                    continue;
                }
                let q = random::coloring(rng, m.clone(), l.clone());
                let alpha = random::lattice_morphism(rng, l.clone());
                let gens: Vec<&str> = m.names().iter().filter(|_| rng.gen_bool(0.5)).map(String::as_str).collect();
                let colors: serde_json::Map<String, Value> =
                    m.elements().map(|x| (m.name(x).to_string(), io::element_to_json(l.name(q.color(x))))).collect();
                out.push(json!({
                    "automaton": io::automaton_to_json(&a),
                    "colors": colors,
                    "morphism": io::lattice_morphism_to_json(&alpha),
                    "generators": gens,
                }));
            }
        }
        "ideal_representation" => {
            for _ in 0..sizes.ideals {
                let m = random::ordered_monoid(rng, 6);
                let l = Arc::new(random::lattice(rng, ml));
                out.push(json!({"coloring": io::coloring_to_json(&random::coloring(rng, m, l))}));
            }
        }
        "closure" => {
            for _ in 0..sizes.closure {
                let l = small_lattice(rng);
                let a = random::automaton(rng, l.clone(), &LETTERS, ms);
                let b = random::automaton(rng, l.clone(), &LETTERS, ms);
                let u = random::word(rng, 2, 3);
                let images: serde_json::Map<String, Value> = ["x", "y", "z"]
                    .iter()
                    .map(|s| (s.to_string(), json!(a.render_word(&random::word(rng, 2, 2)))))
                    .collect();
                out.push(json!({
                    "left": io::automaton_to_json(&a),
                    "right": io::automaton_to_json(&b),
                    "word": a.render_word(&u),
                    "hom": {"images": images},
                    "morphism": io::lattice_morphism_to_json(&random::lattice_morphism(rng, l)),
                }));
            }
        }
        "syntactic_minimality" => {
            while out.len() < sizes.minimality {
                let l = small_lattice(rng);
                let t = if out.len() % 2 == 0 {
                    // round trip through a random triple
                    let m = random::ordered_monoid(rng, 10);
                    let gens = (0..2).map(|_| rng.gen_range(0..m.len())).collect();
                    let p = random::coloring(rng, m, l.clone());
                    RecognitionTriple::new(LETTERS.iter().map(|s| s.to_string()).collect(), gens, p).expect("valid")
                } else {
                    // transition monoid of a random automaton, equality order
                    let a = random::automaton(rng, l.clone(), &LETTERS, ms);
                    let Ok(tm) = crate::syntactic::transition_monoid(&a, 11) else { continue };
                    if tm.monoid.len() > 10 {
                        continue;
                    }
                    let t = &tm.automaton;
                    let colors = tm.maps.iter().map(|f| t.output(f[t.initial()])).collect();
                    let p = OpColoring::new(tm.monoid.clone(), l.clone(), colors).expect("equality order");
                    RecognitionTriple::new(t.alphabet().to_vec(), tm.generators.clone(), p).expect("valid")
                };
                let a = t.to_automaton().minimize();
                out.push(json!({"automaton": io::automaton_to_json(&a), "triple": io::triple_to_json(&t)}));
            }
        }
        "recog_by_synt" => {
            let c = fixtures::contains_a();
            let cuts: Vec<LatticeAutomaton> = c.lattice().elements().map(|x| c.cut(x).expect("cut")).collect();
            for langs in [vec![c.clone()], cuts] {
                let t = product_triple(&langs, None).expect("small product");
                out.push(recog_inputs(&langs, &t));
            }
            while out.len() < sizes.recog + 2 {
                let l = small_lattice(rng);
                let k = rng.gen_range(1..=2);
                let langs: Vec<LatticeAutomaton> = (0..k).map(|_| random::automaton(rng, l.clone(), &LETTERS, 3)).collect();
                let Ok(t) = product_triple(&langs, None) else { continue };
                if t.monoid().len() > 48 {
                    continue;
                }
                let p = random::coloring(rng, t.monoid().clone(), l);
                let t = t.with_coloring(p).expect("same monoid");
                out.push(recog_inputs(&langs, &t));
            }
        }
        "cut_reconstruction" => {
            out.push(json!({"automaton": io::automaton_to_json(&fixtures::contains_a())}));
            out.push(json!({"automaton": io::automaton_to_json(&fixtures::example_machine())}));
            for _ in 0..sizes.cuts {
                let l = small_lattice(rng);
                out.push(json!({"automaton": io::automaton_to_json(&random::automaton(rng, l, &LETTERS, ms))}));
            }
        }
        "ideal_language" => {
            out.push(json!({"automaton": io::automaton_to_json(&fixtures::example_machine())}));
            while out.len() < sizes.ideal_languages + 1 {
                let l = small_lattice(rng);
                let a = random::automaton(rng, l, &LETTERS, ms.min(3));
                match syntactic(&a, 25) {
                    Ok(s) if s.monoid().len() <= 24 => out.push(json!({"automaton": io::automaton_to_json(&a)})),
                    _ => continue,
                }
            }
        }
        "shuffle_consistency" => {
            for a in [fixtures::contains_a(), fixtures::empty_only(), fixtures::example_machine()] {
                out.push(json!({"automaton": io::automaton_to_json(&a), "max_len": sizes.shuffle_len}));
            }
            for i in 0..sizes.shuffle {
                let l = small_lattice(rng);
                let a = if i % 2 == 0 {
                    random::shuffle_ideal(rng, l, &LETTERS)
                } else {
                    random::automaton(rng, l, &LETTERS, ms)
                };
                out.push(json!({"automaton": io::automaton_to_json(&a), "max_len": sizes.shuffle_len}));
            }
        }
        "subdirect_embedding" => {
            for n in 1..=2 {
                for m in enumerate_ordered_monoids(n).expect("n <= 2") {
                    out.push(json!({"monoid": io::monoid_to_json(&m)}));
                }
            }
            for _ in 0..sizes.subdirect {
                out.push(json!({"monoid": io::monoid_to_json(&random::ordered_monoid(rng, 6))}));
            }
        }
        "cons_regression" => {
            out.push(json!({"lattice": io::lattice_to_json(&Lattice::chain(3).expect("chain"))}));
            while out.len() < sizes.cons + 1 {
                let l = random::lattice(rng, ml);
                if l.len() >= 3 {
                    out.push(json!({"lattice": io::lattice_to_json(&l)}));
                }
            }
        }
        _ => {}
    }
    out
}

fn recog_inputs(langs: &[LatticeAutomaton], t: &RecognitionTriple) -> Value {
    json!({
        "languages": langs.iter().map(io::automaton_to_json).collect::<Vec<_>>(),
        "triple": io::triple_to_json(t),
    })
}

/// A recognizer on the syntactic monoid of "contains a" whose letter images
/// are swapped; [`recog_by_synt`] must fail on it.
pub fn known_bad_inputs() -> Value {
    let c = fixtures::contains_a();
    let t = product_triple(std::slice::from_ref(&c), None).expect("small product");
    let mut gens = t.generator_images().to_vec();
    gens.reverse();
    let bad = RecognitionTriple::new(t.alphabet().to_vec(), gens, t.coloring().clone()).expect("valid triple");
    recog_inputs(&[c], &bad)
}

/// Runs every check on seeded instances, in fixed order. With `inject_bad`
/// one known-bad instance is appended.
pub fn run_suite_with(seed: u64, sizes: &SuiteSizes, inject_bad: bool) -> Vec<VerificationReport> {
    let mut reports = Vec::new();
    for check in CHECKS {
        for (index, inputs) in suite_inputs(check, seed, sizes).into_iter().enumerate() {
            let instance = json!({"seed": seed, "index": index, "sizes": sizes.to_json()});
            reports.push(run_check(check, &inputs, instance));
        }
    }
    if inject_bad {
        let instance = json!({"seed": seed, "index": 0, "injected": true});
        reports.push(run_check("recog_by_synt", &known_bad_inputs(), instance));
    }
    reports
}

pub fn run_suite(seed: u64, sizes: &SuiteSizes) -> Vec<VerificationReport> {
    run_suite_with(seed, sizes, false)
}
