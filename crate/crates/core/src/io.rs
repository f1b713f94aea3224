//! JSON loaders and canonical writers.
//!
//! Element names of the form `{1,2}` are written as JSON lists (`["1","2"]`);
//! both forms are accepted on input. Objects are written with sorted keys.

use std::path::Path;
use std::sync::Arc;

use serde_json::{json, Map, Value};

use crate::automaton::{parse_word, parse_word_list, render_word, FreeMorphism, LatticeAutomaton, Word};
use crate::coloring::OpColoring;
use crate::error::{Error, Result};
use crate::lattice::{Lattice, LatticeMorphism};
use crate::markov::{parse_probability, Decomposition, Letter, MarkovChain, Probability};
use crate::monoid::OrderedMonoid;
use crate::syntactic::RecognitionTriple;

fn parse_err(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}

pub fn read_json(path: &Path) -> Result<Value> {
    let text = std::fs::read_to_string(path).map_err(|e| parse_err(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| parse_err(format!("{}: {e}", path.display())))
}

/// Pretty-printed JSON with sorted keys and a trailing newline.
pub fn to_canonical_string(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

fn field<'a>(v: &'a Value, key: &str) -> Result<&'a Value> {
    v.get(key).ok_or_else(|| parse_err(format!("missing field `{key}`")))
}

fn object<'a>(v: &'a Value, what: &str) -> Result<&'a Map<String, Value>> {
    v.as_object().ok_or_else(|| parse_err(format!("`{what}` must be an object")))
}

fn array<'a>(v: &'a Value, what: &str) -> Result<&'a Vec<Value>> {
    v.as_array().ok_or_else(|| parse_err(format!("`{what}` must be a list")))
}

fn string(v: &Value, what: &str) -> Result<String> {
    match v {
        Value::String(s) => Ok(s.clone()),
        Value::Number(n) => Ok(n.to_string()),
        _ => Err(parse_err(format!("`{what}` must be a string"))),
    }
}

fn strings(v: &Value, what: &str) -> Result<Vec<String>> {
    array(v, what)?.iter().map(|x| string(x, what)).collect()
}

/// Element name from a string, number, or list of set members.
pub fn element_from_json(v: &Value) -> Result<String> {
    match v {
        Value::Array(items) => {
            let mut members = items.iter().map(|x| string(x, "set element")).collect::<Result<Vec<_>>>()?;
            if members.iter().all(|m| m.parse::<i64>().is_ok()) {
                members.sort_by_key(|m| m.parse::<i64>().unwrap_or_default());
            } else {
                members.sort();
            }
            Ok(format!("{{{}}}", members.join(",")))
        }
        _ => string(v, "element"),
    }
}

pub fn element_to_json(name: &str) -> Value {
    match name.strip_prefix('{').and_then(|s| s.strip_suffix('}')) {
        Some("") => json!([]),
        Some(inner) if !inner.contains(['{', '}']) => json!(inner.split(',').collect::<Vec<_>>()),
        _ => json!(name),
    }
}

fn pairs(v: &Value, what: &str) -> Result<Vec<(String, String)>> {
    array(v, what)?
        .iter()
        .map(|p| match p.as_array().map(Vec::as_slice) {
            Some([a, b]) => Ok((element_from_json(a)?, element_from_json(b)?)),
            _ => Err(parse_err(format!("`{what}` entries must be pairs"))),
        })
        .collect()
}

/// `{"elements", "cover"}`, or `{"elements", "leq", "relation": "full"}`.
pub fn lattice_from_json(v: &Value) -> Result<Lattice> {
    let names = array(field(v, "elements")?, "elements")?.iter().map(element_from_json).collect::<Result<Vec<_>>>()?;
    if let Some(cover) = v.get("cover") {
        return Lattice::from_covers(names, &pairs(cover, "cover")?);
    }
    let leq = pairs(field(v, "leq")?, "leq")?;
    match v.get("relation").and_then(Value::as_str) {
        Some("full") | None => Lattice::from_relation(names, &leq),
        Some(other) => Err(parse_err(format!("unknown relation kind `{other}`"))),
    }
}

/// A lattice object, or one of `powerset:N`, `chain:N`, `boolean`.
pub fn lattice_ref_from_json(v: &Value) -> Result<Lattice> {
    match v {
        Value::String(s) => standard_lattice(s),
        _ => lattice_from_json(v),
    }
}

pub fn standard_lattice(spec: &str) -> Result<Lattice> {
    let (kind, n) = spec.split_once(':').unwrap_or((spec, ""));
    let size = || n.parse::<usize>().map_err(|_| parse_err(format!("bad lattice size in `{spec}`")));
    match kind {
        "powerset" => Lattice::powerset(size()?),
        "chain" => Lattice::chain(size()?),
        "boolean" | "B" => Ok(Lattice::boolean()),
        _ => Err(parse_err(format!("unknown lattice `{spec}`"))),
    }
}

/// Full order relation, pairs sorted by name.
pub fn lattice_to_json(l: &Lattice) -> Value {
    let mut leq: Vec<(&str, &str)> = Vec::new();
    for a in l.elements() {
        for b in l.elements() {
            if l.leq(a, b) {
                leq.push((l.name(a), l.name(b)));
            }
        }
    }
    leq.sort();
    json!({
        "elements": l.names().iter().map(|n| element_to_json(n)).collect::<Vec<_>>(),
        "leq": leq.iter().map(|(a, b)| json!([element_to_json(a), element_to_json(b)])).collect::<Vec<_>>(),
        "relation": "full",
    })
}

/// `{"mapping": {x: y}}` or a bare mapping object.
pub fn lattice_morphism_from_json(l: Arc<Lattice>, v: &Value) -> Result<LatticeMorphism> {
    let map = object(v.get("mapping").unwrap_or(v), "mapping")?;
    let mut mapping = vec![usize::MAX; l.len()];
    for (k, x) in map {
        mapping[l.index_of(k)?] = l.index_of(&element_from_json(x)?)?;
    }
    if let Some(missing) = mapping.iter().position(|&m| m == usize::MAX) {
        return Err(Error::UnknownElement(format!("no image for {}", l.name(missing))));
    }
    LatticeMorphism::new(l, mapping)
}

pub fn lattice_morphism_to_json(a: &LatticeMorphism) -> Value {
    let l = a.lattice();
    let mapping: Map<String, Value> =
        l.elements().map(|x| (l.name(x).to_string(), element_to_json(l.name(a.apply(x))))).collect();
    json!({ "mapping": mapping })
}

/// `{"elements", "identity", "mul", "leq"}`; `leq` may be omitted for the equality order.
pub fn monoid_from_json(v: &Value) -> Result<OrderedMonoid> {
    let names = array(field(v, "elements")?, "elements")?.iter().map(element_from_json).collect::<Result<Vec<_>>>()?;
    let identity = element_from_json(field(v, "identity")?)?;
    let mul = array(field(v, "mul")?, "mul")?
        .iter()
        .map(|row| array(row, "mul")?.iter().map(element_from_json).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    let leq = match v.get("leq") {
        Some(l) => pairs(l, "leq")?,
        None => Vec::new(),
    };
    OrderedMonoid::new(names, &identity, &mul, &leq)
}

/// Writes non-reflexive order pairs sorted by name.
pub fn monoid_to_json(m: &OrderedMonoid) -> Value {
    let mut leq: Vec<(&str, &str)> = Vec::new();
    for a in m.elements() {
        for b in m.elements() {
            if a != b && m.leq(a, b) {
                leq.push((m.name(a), m.name(b)));
            }
        }
    }
    leq.sort();
    json!({
        "elements": m.names(),
        "identity": m.name(m.identity()),
        "mul": m.elements().map(|x| m.elements().map(|y| m.name(m.mul(x, y))).collect::<Vec<_>>()).collect::<Vec<_>>(),
        "leq": leq.iter().map(|(a, b)| json!([a, b])).collect::<Vec<_>>(),
    })
}

/// `{"monoid", "lattice", "colors": {element: lattice element}}`.
pub fn coloring_from_json(v: &Value) -> Result<OpColoring> {
    let monoid = Arc::new(monoid_from_json(field(v, "monoid")?)?);
    let lattice = Arc::new(lattice_ref_from_json(field(v, "lattice")?)?);
    let map = object(field(v, "colors")?, "colors")?;
    let mut colors = vec![usize::MAX; monoid.len()];
    for (k, c) in map {
        colors[monoid.index_of(k)?] = lattice.index_of(&element_from_json(c)?)?;
    }
    if let Some(missing) = colors.iter().position(|&c| c == usize::MAX) {
        return Err(Error::UnknownElement(format!("no color for {}", monoid.name(missing))));
    }
    OpColoring::new(monoid, lattice, colors)
}

pub fn coloring_to_json(p: &OpColoring) -> Value {
    let m = p.monoid();
    let l = p.lattice();
    let colors: Map<String, Value> =
        m.elements().map(|x| (m.name(x).to_string(), element_to_json(l.name(p.color(x))))).collect();
    json!({ "monoid": monoid_to_json(m), "lattice": lattice_to_json(l), "colors": colors })
}

/// `{"alphabet", "generators": {letter: element}, "coloring"}`.
pub fn triple_from_json(v: &Value) -> Result<RecognitionTriple> {
    let alphabet = strings(field(v, "alphabet")?, "alphabet")?;
    let coloring = coloring_from_json(field(v, "coloring")?)?;
    let gens = object(field(v, "generators")?, "generators")?;
    let images = alphabet
        .iter()
        .map(|a| {
            let x = gens.get(a).ok_or_else(|| Error::UnknownLetter(a.clone()))?;
            coloring.monoid().index_of(&string(x, "generator image")?)
        })
        .collect::<Result<Vec<_>>>()?;
    RecognitionTriple::new(alphabet, images, coloring)
}

pub fn triple_to_json(t: &RecognitionTriple) -> Value {
    let m = t.monoid();
    let gens: Map<String, Value> =
        t.alphabet().iter().zip(t.generator_images()).map(|(a, &g)| (a.clone(), json!(m.name(g)))).collect();
    json!({ "alphabet": t.alphabet(), "generators": gens, "coloring": coloring_to_json(t.coloring()) })
}

/// A word as a string (see [`parse_word`]) or a list of letter names.
pub fn word_from_json(alphabet: &[String], v: &Value) -> Result<Word> {
    match v {
        Value::String(s) => parse_word(alphabet, s),
        Value::Array(_) => parse_word_list(alphabet, &strings(v, "word")?),
        _ => Err(parse_err("a word must be a string or a list of letters")),
    }
}

pub fn word_to_json(alphabet: &[String], w: &[usize]) -> Value {
    Value::String(render_word(alphabet, w))
}

/// `{"lattice", "alphabet", "states", "initial", "delta": {s: {a: t}}, "output": {s: x}}`.
pub fn automaton_from_json(v: &Value) -> Result<LatticeAutomaton> {
    let lattice = Arc::new(lattice_ref_from_json(field(v, "lattice")?)?);
    let alphabet = strings(field(v, "alphabet")?, "alphabet")?;
    let states = strings(field(v, "states")?, "states")?;
    let state_index = |name: &str| {
        states.iter().position(|s| s == name).ok_or_else(|| Error::UnknownElement(name.to_string()))
    };
    let initial_name = string(field(v, "initial")?, "initial")?;
    let initial = state_index(&initial_name).map_err(|_| Error::NoInitial(initial_name.clone()))?;
    let delta_obj = object(field(v, "delta")?, "delta")?;
    let mut delta = Vec::with_capacity(states.len());
    for s in &states {
        let row = delta_obj.get(s).map(|r| object(r, "delta row")).transpose()?;
        let mut targets = Vec::with_capacity(alphabet.len());
        for a in &alphabet {
            let t = row
                .and_then(|r| r.get(a))
                .ok_or_else(|| Error::PartialAutomaton { state: s.clone(), letter: a.clone() })?;
            targets.push(state_index(&string(t, "delta target")?)?);
        }
        if let Some(r) = row {
            if let Some(bad) = r.keys().find(|k| !alphabet.contains(k)) {
                return Err(Error::UnknownLetter(bad.clone()));
            }
        }
        delta.push(targets);
    }
    if let Some(bad) = delta_obj.keys().find(|k| !states.contains(k)) {
        return Err(Error::UnknownElement(bad.clone()));
    }
    let out_obj = object(field(v, "output")?, "output")?;
    let output = states
        .iter()
        .map(|s| {
            let x = out_obj.get(s).ok_or_else(|| parse_err(format!("no output for state {s}")))?;
            lattice.index_of(&element_from_json(x)?)
        })
        .collect::<Result<Vec<_>>>()?;
    LatticeAutomaton::new(lattice, alphabet, states, initial, delta, output)
}

pub fn automaton_to_json(a: &LatticeAutomaton) -> Value {
    let l = a.lattice();
    let delta: Map<String, Value> = (0..a.num_states())
        .map(|s| {
            let row: Map<String, Value> = a
                .alphabet()
                .iter()
                .enumerate()
                .map(|(c, letter)| (letter.clone(), json!(a.states()[a.delta(s, c)])))
                .collect();
            (a.states()[s].clone(), Value::Object(row))
        })
        .collect();
    let output: Map<String, Value> =
        (0..a.num_states()).map(|s| (a.states()[s].clone(), element_to_json(l.name(a.output(s))))).collect();
    json!({
        "lattice": lattice_to_json(l),
        "alphabet": a.alphabet(),
        "states": a.states(),
        "initial": a.states()[a.initial()],
        "delta": delta,
        "output": output,
    })
}

/// `{"images": {letter: word}}` with an optional `"alphabet"` fixing the
/// source letter order (otherwise the keys in sorted order).
pub fn free_morphism_from_json(v: &Value, target: &[String]) -> Result<FreeMorphism> {
    let images = object(field(v, "images")?, "images")?;
    let source = match v.get("alphabet") {
        Some(a) => strings(a, "alphabet")?,
        None => images.keys().cloned().collect(),
    };
    let words = source
        .iter()
        .map(|a| {
            let w = images.get(a).ok_or_else(|| Error::UnknownLetter(a.clone()))?;
            word_from_json(target, w)
        })
        .collect::<Result<Vec<_>>>()?;
    FreeMorphism::new(source, target.to_vec(), words)
}

/// `{"states": [...], "rows": {s: {t: "p/q"}}}`; missing entries are zero.
pub fn chain_from_json<T: Probability>(v: &Value) -> Result<MarkovChain<T>> {
    let states = strings(field(v, "states")?, "states")?;
    let rows = object(field(v, "rows")?, "rows")?;
    if let Some(bad) = rows.keys().find(|k| !states.contains(k)) {
        return Err(Error::UnknownElement(bad.clone()));
    }
    let mut matrix = vec![vec![T::zero(); states.len()]; states.len()];
    for (s, name) in states.iter().enumerate() {
        let Some(row) = rows.get(name) else { continue };
        for (t, p) in object(row, "row")? {
            let j = states.iter().position(|x| x == t).ok_or_else(|| Error::UnknownElement(t.clone()))?;
            matrix[s][j] = probability_from_json(p)?;
        }
    }
    MarkovChain::new(states, matrix)
}

fn probability_from_json<T: Probability>(v: &Value) -> Result<T> {
    match v {
        Value::String(s) => parse_probability(s),
        Value::Number(n) => parse_probability(&n.to_string()),
        _ => Err(Error::BadFraction(v.to_string())),
    }
}

/// Writes only positive entries.
pub fn chain_to_json<T: Probability>(c: &MarkovChain<T>) -> Value {
    let rows: Map<String, Value> = (0..c.len())
        .map(|s| {
            let row: Map<String, Value> = (0..c.len())
                .filter(|&t| !c.prob(s, t).is_zero())
                .map(|t| (c.states()[t].clone(), json!(c.prob(s, t).render())))
                .collect();
            (c.states()[s].clone(), Value::Object(row))
        })
        .collect();
    json!({ "states": c.states(), "rows": rows })
}

/// `{"letters": [{"name", "weight", "map": {s: t}}]}`, validated against `chain`.
pub fn decomposition_from_json<T: Probability>(v: &Value, chain: &MarkovChain<T>) -> Result<Decomposition<T>> {
    let letters = array(field(v, "letters")?, "letters")?
        .iter()
        .map(|l| {
            let name = string(field(l, "name")?, "name")?;
            let weight = probability_from_json(field(l, "weight")?)?;
            let map_obj = object(field(l, "map")?, "map")?;
            let map = chain
                .states()
                .iter()
                .map(|s| {
                    let t = map_obj.get(s).ok_or_else(|| Error::BadDecomposition(format!("letter {name} has no image for {s}")))?;
                    chain.index_of(&string(t, "map target")?)
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(Letter { name, map, weight })
        })
        .collect::<Result<Vec<_>>>()?;
    let d = Decomposition { letters };
    d.validate(chain)?;
    Ok(d)
}

pub fn decomposition_to_json<T: Probability>(d: &Decomposition<T>, chain: &MarkovChain<T>) -> Value {
    let letters: Vec<Value> = d
        .letters
        .iter()
        .map(|l| {
            let map: Map<String, Value> =
                l.map.iter().enumerate().map(|(s, &t)| (chain.states()[s].clone(), json!(chain.states()[t]))).collect();
            json!({ "name": l.name, "weight": l.weight.render(), "map": map })
        })
        .collect();
    json!({ "letters": letters })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automaton::tests::example_machine;
    use crate::markov::tests::{example_chain, example_decomposition};
    use crate::Rational;

    #[test]
    fn set_names_round_trip() {
        assert_eq!(element_to_json("{1,2}"), json!(["1", "2"]));
        assert_eq!(element_to_json("{}"), json!([]));
        assert_eq!(element_to_json("top"), json!("top"));
        assert_eq!(element_from_json(&json!(["2", 1])).unwrap(), "{1,2}");
        assert_eq!(element_from_json(&json!("{1}")).unwrap(), "{1}");
    }

    #[test]
    fn lattice_round_trip() {
        let l = Lattice::powerset(2).unwrap();
        let v = lattice_to_json(&l);
        let back = lattice_from_json(&v).unwrap();
        assert_eq!(lattice_to_json(&back), v);
        let diamond = json!({"elements": ["0", "x", "y", "1"], "cover": [["0","x"],["0","y"],["x","1"],["y","1"]]});
        assert_eq!(lattice_from_json(&diamond).unwrap().len(), 4);
        let vee = json!({"elements": ["0", "x", "y"], "cover": [["0","x"],["0","y"]]});
        assert_eq!(lattice_from_json(&vee).unwrap_err().kind(), "NotALattice");
        assert_eq!(standard_lattice("chain:3").unwrap().len(), 3);
        assert!(standard_lattice("tree:3").is_err());
    }

    #[test]
    fn automaton_round_trip() {
        let a = example_machine();
        let v = automaton_to_json(&a);
        let b = automaton_from_json(&v).unwrap();
        assert_eq!(automaton_to_json(&b), v);
        assert!(LatticeAutomaton::equivalent(&a, &b).unwrap());
        let mut partial = v.clone();
        partial["delta"]["t1"].as_object_mut().unwrap().remove("b");
        assert_eq!(
            automaton_from_json(&partial).unwrap_err(),
            Error::PartialAutomaton { state: "t1".into(), letter: "b".into() }
        );
    }

    #[test]
    fn monoid_and_coloring_round_trip() {
        let m = Arc::new(crate::monoid::tests::u1(&[(1, 0)]));
        let l = Arc::new(Lattice::boolean());
        let p = OpColoring::new(m.clone(), l, vec![1, 0]).unwrap();
        let v = coloring_to_json(&p);
        let q = coloring_from_json(&v).unwrap();
        assert_eq!(q.colors(), p.colors());
        assert_eq!(monoid_to_json(q.monoid()), monoid_to_json(&m));
    }

    #[test]
    fn chain_and_decomposition_round_trip() {
        let c = example_chain::<Rational>();
        let v = chain_to_json(&c);
        assert_eq!(v["rows"]["t1"]["t2"], json!("2/3"));
        let back: MarkovChain<Rational> = chain_from_json(&v).unwrap();
        assert_eq!(back, c);
        let d = example_decomposition::<Rational>();
        let dv = decomposition_to_json(&d, &c);
        assert_eq!(decomposition_from_json(&dv, &c).unwrap(), d);
        let bad = json!({"states": ["x"], "rows": {"x": {"x": "1/0"}}});
        assert_eq!(chain_from_json::<Rational>(&bad).unwrap_err().kind(), "BadFraction");
    }

    #[test]
    fn free_morphisms_and_words() {
        let target: Vec<String> = vec!["a".into(), "b".into()];
        let h = free_morphism_from_json(&json!({"images": {"x": "ab", "y": "ε"}}), &target).unwrap();
        assert_eq!(h.source(), &["x".to_string(), "y".to_string()]);
        assert_eq!(h.apply(&[0, 1, 0]), vec![0, 1, 0, 1]);
        let long: Vec<String> = vec!["ℓ1".into(), "ℓ2".into()];
        assert_eq!(word_from_json(&long, &json!("ℓ2.ℓ1")).unwrap(), vec![1, 0]);
        assert_eq!(word_from_json(&long, &json!(["ℓ2"])).unwrap(), vec![1]);
        assert_eq!(word_to_json(&long, &[0, 1]), json!("ℓ1.ℓ2"));
    }
}
