//! The `latlang` command-line front end.
//!
//! Exit codes: 0 success or a true verdict, 2 a false verdict or a witness,
//! 3 an exhausted search budget, 1 an error. Errors are printed as
//! `{"error": {"kind", "message", "witness"}}`.

use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use crate::automaton::{FreeMorphism, LatticeAutomaton};
use crate::error::{Error, Result};
use crate::io;
use crate::lattice::BoundKind;
use crate::markov::{self, AnalyzeOptions, MarkovChain, Probability};
use crate::monoid::{direct_product, divides, Division, DivisionBudget, OrderedMonoid, DEFAULT_MONOID_CAP};
use crate::syntactic;
use crate::variety::{self, SuiteSizes, Verdict};
use crate::{Rational, Side};

pub const EXIT_OK: i32 = 0;
pub const EXIT_ERROR: i32 = 1;
pub const EXIT_FALSE: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Both,
    Basic,
    Reachable,
}

#[derive(Debug, Parser)]
#[command(name = "latlang", version, about = "Lattice-valued regular languages and ordered monoids")]
struct Cli {
    /// Output format; `json` is stable, `text` is for reading.
    #[arg(long, value_enum, default_value = "json", global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Finite lattices.
    #[command(subcommand)]
    Lattice(LatticeCmd),
    /// Finite ordered monoids.
    #[command(subcommand)]
    Monoid(MonoidCmd),
    /// Lattice-valued languages given by automata.
    #[command(subcommand)]
    Lang(LangCmd),
    /// Enumeration and verification suite.
    #[command(subcommand)]
    Variety(VarietyCmd),
    /// Ergodic-class analysis of Markov chains.
    #[command(subcommand)]
    Markov(MarkovCmd),
}

#[derive(Debug, Subcommand)]
enum LatticeCmd {
    /// Validate and print in canonical form.
    Check { file: PathBuf },
    /// Print the order dual.
    Dual { file: PathBuf },
}

#[derive(Debug, Subcommand)]
enum MonoidCmd {
    Check {
        file: PathBuf,
    },
    /// Direct product of one or more monoids.
    Product {
        #[arg(required = true)]
        files: Vec<PathBuf>,
    },
    /// Whether SMALL divides LARGE.
    Divides {
        small: PathBuf,
        large: PathBuf,
        /// Maximum number of generator assignments tried.
        #[arg(long)]
        budget: Option<u64>,
    },
    Aperiodic {
        file: PathBuf,
    },
}

#[derive(Debug, Subcommand)]
enum LangCmd {
    /// Value of a word.
    Eval {
        file: PathBuf,
        #[arg(long)]
        word: String,
    },
    Minimize {
        file: PathBuf,
    },
    Equiv {
        left: PathBuf,
        right: PathBuf,
    },
    /// Syntactic ordered monoid, morphism, and coloring.
    Syntactic {
        file: PathBuf,
    },
    #[command(subcommand)]
    Op(OpCmd),
    /// Two-valued cut at LAMBDA.
    Cut {
        file: PathBuf,
        #[arg(long)]
        lambda: String,
    },
    /// Rebuild the language from the syntactic monoids of its cuts.
    Reconstruct {
        file: PathBuf,
    },
    ShuffleCheck {
        file: PathBuf,
        #[arg(long, default_value_t = 8)]
        max_len: usize,
    },
}

#[derive(Debug, Subcommand)]
enum OpCmd {
    Join { left: PathBuf, right: PathBuf },
    Meet { left: PathBuf, right: PathBuf },
    /// Left quotient `u\L`.
    Quotl {
        file: PathBuf,
        #[arg(long)]
        word: String,
    },
    /// Right quotient `L/u`.
    Quotr {
        file: PathBuf,
        #[arg(long)]
        word: String,
    },
    /// Inverse image under a letter-to-word morphism.
    Invhom {
        file: PathBuf,
        #[arg(long)]
        hom: PathBuf,
    },
    /// Apply an order-preserving map of the lattice.
    Recolor {
        file: PathBuf,
        #[arg(long)]
        morphism: PathBuf,
    },
}

#[derive(Debug, Subcommand)]
enum VarietyCmd {
    /// Ordered monoids of size N up to isomorphism.
    Enumerate { n: usize },
    /// Seeded verification suite, one JSON report per line.
    Suite {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Overrides such as `colorings=20,max_states=3`.
        #[arg(long)]
        sizes: Option<String>,
        /// Append one known-bad instance.
        #[arg(long)]
        inject_bad: bool,
    },
    Subdirect {
        file: PathBuf,
    },
}

#[derive(Debug, Subcommand)]
enum MarkovCmd {
    Analyze {
        file: PathBuf,
        #[arg(long)]
        decomposition: Option<PathBuf>,
        #[arg(long)]
        initial: Option<String>,
        #[arg(long, default_value_t = 6)]
        max_len: usize,
        #[arg(long, default_value_t = 16)]
        horizon: usize,
        /// Words to evaluate.
        #[arg(long)]
        word: Vec<String>,
        #[arg(long, value_enum, default_value = "both")]
        mode: ModeArg,
        /// Use `f64` instead of exact rationals.
        #[arg(long)]
        float: bool,
    },
    /// Greedy decomposition into deterministic maps.
    Decompose {
        file: PathBuf,
        #[arg(long)]
        float: bool,
    },
    Absorb {
        file: PathBuf,
        #[arg(long)]
        float: bool,
    },
}

/// Exit code and stdout of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Output {
    pub code: i32,
    pub stdout: String,
}

struct Doc {
    code: i32,
    body: Value,
}

impl Doc {
    fn ok(body: Value) -> Self {
        Doc { code: EXIT_OK, body }
    }

    fn verdict(ok: bool, body: Value) -> Self {
        Doc { code: if ok { EXIT_OK } else { EXIT_FALSE }, body }
    }
}

/// Runs one invocation; `args` includes the program name.
pub fn run<I, S>(args: I) -> Output
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                return Output { code: EXIT_OK, stdout: e.to_string() };
            }
            let body = json!({"error": {"kind": "Usage", "message": e.to_string().trim_end(), "witness": null}});
            return Output { code: EXIT_ERROR, stdout: io::to_canonical_string(&body) };
        }
    };
    if let Command::Variety(VarietyCmd::Suite { seed, sizes, inject_bad }) = &cli.command {
        return suite(*seed, sizes.as_deref(), *inject_bad, cli.format);
    }
    match dispatch(cli.command) {
        Ok(doc) => Output { code: doc.code, stdout: render(&doc.body, cli.format) },
        Err(e) => Output { code: EXIT_ERROR, stdout: render(&e.to_json(), cli.format) },
    }
}

fn render(v: &Value, format: Format) -> String {
    match format {
        Format::Json => io::to_canonical_string(v),
        Format::Text => {
            let mut out = String::new();
            text(v, 0, &mut out);
            out
        }
    }
}

fn text(v: &Value, depth: usize, out: &mut String) {
    let pad = "  ".repeat(depth);
    match v {
        Value::Object(map) => {
            for (k, x) in map {
                match x {
                    Value::Object(_) | Value::Array(_) if !is_flat(x) => {
                        out.push_str(&format!("{pad}{k}:\n"));
                        text(x, depth + 1, out);
                    }
                    _ => out.push_str(&format!("{pad}{k}: {}\n", inline(x))),
                }
            }
        }
        Value::Array(items) => {
            for x in items {
                if is_flat(x) {
                    out.push_str(&format!("{pad}- {}\n", inline(x)));
                } else {
                    out.push_str(&format!("{pad}-\n"));
                    text(x, depth + 1, out);
                }
            }
        }
        _ => out.push_str(&format!("{pad}{}\n", inline(v))),
    }
}

fn is_flat(v: &Value) -> bool {
    match v {
        Value::Array(items) => items.iter().all(|x| !x.is_object() && !x.is_array() || (x.is_array() && is_flat(x))),
        Value::Object(_) => false,
        _ => true,
    }
}

fn inline(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Array(items) => format!("[{}]", items.iter().map(inline).collect::<Vec<_>>().join(", ")),
        Value::Null => "-".into(),
        other => other.to_string(),
    }
}

fn load_automaton(p: &Path) -> Result<LatticeAutomaton> {
    io::automaton_from_json(&io::read_json(p)?)
}

fn load_monoid(p: &Path) -> Result<OrderedMonoid> {
    io::monoid_from_json(&io::read_json(p)?)
}

/// Element given on the command line: a name, or a JSON list of set members.
fn element_arg(s: &str) -> Result<String> {
    if s.trim_start().starts_with('[') {
        let v: Value = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        io::element_from_json(&v)
    } else {
        Ok(s.to_string())
    }
}

fn pair_json(a: &LatticeAutomaton, p: &(Vec<usize>, Vec<usize>)) -> Value {
    json!([a.render_word(&p.0), a.render_word(&p.1)])
}

fn dispatch(cmd: Command) -> Result<Doc> {
    match cmd {
        Command::Lattice(c) => lattice(c),
        Command::Monoid(c) => monoid(c),
        Command::Lang(c) => lang(c),
        Command::Variety(c) => variety_cmd(c),
        Command::Markov(c) => markov_cmd(c),
    }
}

fn lattice(cmd: LatticeCmd) -> Result<Doc> {
    match cmd {
        LatticeCmd::Check { file } => {
            let l = io::lattice_from_json(&io::read_json(&file)?)?;
            Ok(Doc::ok(json!({
                "lattice": io::lattice_to_json(&l),
                "size": l.len(),
                "top": io::element_to_json(l.name(l.top())),
                "bottom": io::element_to_json(l.name(l.bottom())),
            })))
        }
        LatticeCmd::Dual { file } => {
            let l = io::lattice_from_json(&io::read_json(&file)?)?;
            Ok(Doc::ok(io::lattice_to_json(&l.dual())))
        }
    }
}

fn monoid(cmd: MonoidCmd) -> Result<Doc> {
    match cmd {
        MonoidCmd::Check { file } => {
            let m = load_monoid(&file)?;
            Ok(Doc::ok(json!({
                "monoid": io::monoid_to_json(&m),
                "size": m.len(),
                "aperiodic": m.is_aperiodic(),
                "identity_is_greatest": m.identity_is_greatest(),
            })))
        }
        MonoidCmd::Product { files } => {
            let factors = files.iter().map(|f| load_monoid(f).map(Arc::new)).collect::<Result<Vec<_>>>()?;
            let p = direct_product(&factors, DEFAULT_MONOID_CAP)?;
            Ok(Doc::ok(io::monoid_to_json(&p.monoid)))
        }
        MonoidCmd::Divides { small, large, budget } => {
            let s = load_monoid(&small)?;
            let l = load_monoid(&large)?;
            let mut b = DivisionBudget::default();
            if let Some(n) = budget {
                b.max_candidates = n;
            }
            Ok(match divides(&s, &l, b) {
                Division::Yes(w) => {
                    let mapping: Map<String, Value> =
                        w.carrier.iter().zip(&w.mapping).map(|(&x, &y)| (l.name(x).to_string(), json!(s.name(y)))).collect();
                    Doc::ok(json!({
                        "divides": true,
                        "witness": {
                            "generators": w.generators.iter().map(|&g| l.name(g)).collect::<Vec<_>>(),
                            "mapping": mapping,
                        },
                    }))
                }
                Division::No => Doc::verdict(
                    false,
                    json!({"divides": false, "witness": {"small": io::monoid_to_json(&s), "large": io::monoid_to_json(&l)}}),
                ),
                Division::BudgetExhausted => Doc { code: EXIT_BUDGET, body: json!({"divides": null, "budget_exhausted": true}) },
            })
        }
        MonoidCmd::Aperiodic { file } => {
            let m = load_monoid(&file)?;
            let n = m.len();
            let power = |x: usize, k: usize| m.product(std::iter::repeat(x).take(k));
            let bad = m.elements().find(|&x| power(x, n) != power(x, n + 1));
            Ok(Doc::verdict(
                bad.is_none(),
                json!({"aperiodic": bad.is_none(), "witness": bad.map(|x| json!({"element": m.name(x), "exponent": n}))}),
            ))
        }
    }
}

fn lang(cmd: LangCmd) -> Result<Doc> {
    match cmd {
        LangCmd::Eval { file, word } => {
            let a = load_automaton(&file)?;
            let w = a.parse_word(&word)?;
            Ok(Doc::ok(json!({"value": io::element_to_json(a.lattice().name(a.evaluate(&w)))})))
        }
        LangCmd::Minimize { file } => Ok(Doc::ok(io::automaton_to_json(&load_automaton(&file)?.minimize()))),
        LangCmd::Equiv { left, right } => {
            let a = load_automaton(&left)?;
            let b = load_automaton(&right)?;
            Ok(match LatticeAutomaton::distinguishing_word(&a, &b)? {
                None => Doc::ok(json!({"equivalent": true})),
                Some(w) => {
                    let l = a.lattice();
                    Doc::verdict(
                        false,
                        json!({"equivalent": false, "witness": {
                            "word": a.render_word(&w),
                            "left": io::element_to_json(l.name(a.evaluate(&w))),
                            "right": io::element_to_json(l.name(b.evaluate(&w))),
                        }}),
                    )
                }
            })
        }
        LangCmd::Syntactic { file } => {
            let a = load_automaton(&file)?;
            let s = syntactic::syntactic_default(&a)?;
            let m = s.monoid();
            Ok(Doc::ok(json!({
                "triple": io::triple_to_json(&s.triple),
                "size": m.len(),
                "aperiodic": m.is_aperiodic(),
                "identity_is_greatest": m.identity_is_greatest(),
            })))
        }
        LangCmd::Op(op) => lang_op(op),
        LangCmd::Cut { file, lambda } => {
            let a = load_automaton(&file)?;
            let x = a.lattice().index_of(&element_arg(&lambda)?)?;
            Ok(Doc::ok(io::automaton_to_json(&a.cut(x)?)))
        }
        LangCmd::Reconstruct { file } => {
            let a = load_automaton(&file)?;
            let r = syntactic::reconstruct_from_cuts(&a, DEFAULT_MONOID_CAP)?;
            let l = a.lattice();
            let cut_sizes: Map<String, Value> =
                l.elements().map(|x| (l.name(x).to_string(), json!(r.cuts[x].monoid().len()))).collect();
            Ok(Doc::verdict(
                r.equal,
                json!({
                    "equal": r.equal,
                    "cut_sizes": cut_sizes,
                    "image_size": r.triple.monoid().len(),
                    "product_size": r.product_size,
                    "full_product_checked": r.full_product_checked,
                    "witness": if r.equal { Value::Null } else { io::automaton_to_json(&a) },
                }),
            ))
        }
        LangCmd::ShuffleCheck { file, max_len } => {
            let a = load_automaton(&file)?;
            let v = syntactic::is_shuffle_ideal(&a, DEFAULT_MONOID_CAP)?;
            let f = syntactic::shuffle_ideal_falsify(&a, max_len);
            Ok(Doc::verdict(
                v.is_ideal && f.is_none(),
                json!({
                    "shuffle_ideal": v.is_ideal,
                    "witness": v.witness.as_ref().map(|p| pair_json(&a, p)),
                    "falsifier": {"max_len": max_len, "witness": f.as_ref().map(|p| pair_json(&a, p))},
                }),
            ))
        }
    }
}

fn lang_op(op: OpCmd) -> Result<Doc> {
    let out = match op {
        OpCmd::Join { left, right } => LatticeAutomaton::product(BoundKind::Join, &load_automaton(&left)?, &load_automaton(&right)?)?,
        OpCmd::Meet { left, right } => LatticeAutomaton::product(BoundKind::Meet, &load_automaton(&left)?, &load_automaton(&right)?)?,
        OpCmd::Quotl { file, word } => {
            let a = load_automaton(&file)?;
            a.quotient(Side::Left, &a.parse_word(&word)?)?.trim()
        }
        OpCmd::Quotr { file, word } => {
            let a = load_automaton(&file)?;
            a.quotient(Side::Right, &a.parse_word(&word)?)?
        }
        OpCmd::Invhom { file, hom } => {
            let a = load_automaton(&file)?;
            let h: FreeMorphism = io::free_morphism_from_json(&io::read_json(&hom)?, a.alphabet())?;
            a.inverse_hom(&h)?
        }
        OpCmd::Recolor { file, morphism } => {
            let a = load_automaton(&file)?;
            let alpha = io::lattice_morphism_from_json(a.lattice().clone(), &io::read_json(&morphism)?)?;
            a.recolor(&alpha)?
        }
    };
    Ok(Doc::ok(io::automaton_to_json(&out)))
}

fn variety_cmd(cmd: VarietyCmd) -> Result<Doc> {
    match cmd {
        VarietyCmd::Enumerate { n } => {
            let ms = variety::enumerate_ordered_monoids(n)?;
            Ok(Doc::ok(json!({"n": n, "count": ms.len(), "monoids": ms.iter().map(io::monoid_to_json).collect::<Vec<_>>()})))
        }
        VarietyCmd::Subdirect { file } => {
            let r = variety::subdirect_embedding(&load_monoid(&file)?);
            let code = match r.verdict {
                Verdict::Pass => EXIT_OK,
                Verdict::Fail => EXIT_FALSE,
                Verdict::BudgetExhausted => EXIT_BUDGET,
            };
            Ok(Doc { code, body: r.to_json() })
        }
        VarietyCmd::Suite { .. } => unreachable!("handled before dispatch"),
    }
}

fn suite(seed: u64, sizes: Option<&str>, inject_bad: bool, format: Format) -> Output {
    let sizes = match sizes.map(|s| SuiteSizes::default().with_overrides(s)).unwrap_or(Ok(SuiteSizes::default())) {
        Ok(s) => s,
        Err(e) => return Output { code: EXIT_ERROR, stdout: render(&e.to_json(), format) },
    };
    let reports = variety::run_suite_with(seed, &sizes, inject_bad);
    let mut stdout = String::new();
    for r in &reports {
        match format {
            Format::Json => {
                stdout.push_str(&serde_json::to_string(&r.to_json()).expect("serializable"));
                stdout.push('\n');
            }
            Format::Text => {
                let index = r.instance.get("index").and_then(Value::as_u64).unwrap_or(0);
                stdout.push_str(&format!("{:<22} {:>4}  {}\n", r.check, index, r.verdict.as_str()));
            }
        }
    }
    let code = if reports.iter().any(|r| r.verdict == Verdict::Fail) {
        EXIT_FALSE
    } else if reports.iter().any(|r| r.verdict == Verdict::BudgetExhausted) {
        EXIT_BUDGET
    } else {
        EXIT_OK
    };
    Output { code, stdout }
}

fn markov_cmd(cmd: MarkovCmd) -> Result<Doc> {
    match cmd {
        MarkovCmd::Analyze { file, decomposition, initial, max_len, horizon, word, mode, float } => {
            let base = AnalyzeOptions::<()> { decomposition: None, initial, max_len, horizon, words: word };
            let run = |exact: bool| -> Result<Value> {
                if exact {
                    analyze_with::<Rational>(&file, decomposition.as_deref(), &base)
                } else {
                    analyze_with::<f64>(&file, decomposition.as_deref(), &base)
                }
            };
            let mut report = run(!float)?;
            if mode != ModeArg::Both {
                let keep = if mode == ModeArg::Basic { "basic" } else { "reachable" };
                if let Some(modes) = report["modes"].as_object_mut() {
                    modes.retain(|k, _| k == keep);
                }
            }
            Ok(Doc::ok(report))
        }
        MarkovCmd::Decompose { file, float } => {
            if float {
                decompose_with::<f64>(&file)
            } else {
                decompose_with::<Rational>(&file)
            }
        }
        MarkovCmd::Absorb { file, float } => {
            if float {
                absorb_with::<f64>(&file)
            } else {
                absorb_with::<Rational>(&file)
            }
        }
    }
}

fn analyze_with<T: Probability>(file: &Path, decomposition: Option<&Path>, base: &AnalyzeOptions<()>) -> Result<Value> {
    let chain: MarkovChain<T> = io::chain_from_json(&io::read_json(file)?)?;
    let d = decomposition.map(|p| io::decomposition_from_json(&io::read_json(p)?, &chain)).transpose()?;
    let opts = AnalyzeOptions {
        decomposition: d,
        initial: base.initial.clone(),
        max_len: base.max_len,
        horizon: base.horizon,
        words: base.words.clone(),
    };
    markov::analyze(&chain, &opts)
}

fn decompose_with<T: Probability>(file: &Path) -> Result<Doc> {
    let chain: MarkovChain<T> = io::chain_from_json(&io::read_json(file)?)?;
    let d = markov::decompose(&chain);
    d.validate(&chain)?;
    Ok(Doc::ok(io::decomposition_to_json(&d, &chain)))
}

fn absorb_with<T: Probability>(file: &Path) -> Result<Doc> {
    let chain: MarkovChain<T> = io::chain_from_json(&io::read_json(file)?)?;
    let structure = markov::ergodic_structure(&chain);
    let abs = markov::absorption_probabilities(&chain)?;
    let mut table = Map::new();
    let mut classes = Map::new();
    for (i, (&c, row)) in abs.classes.iter().zip(&abs.probs).enumerate() {
        let label = format!("C{}", i + 1);
        let row: Map<String, Value> = row.iter().enumerate().map(|(s, p)| (chain.states()[s].clone(), json!(p.render()))).collect();
        table.insert(label.clone(), Value::Object(row));
        classes.insert(label, json!(structure.classes[c].iter().map(|&s| chain.states()[s].as_str()).collect::<Vec<_>>()));
    }
    Ok(Doc::ok(json!({"classes": classes, "absorption": table})))
}
