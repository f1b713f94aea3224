//! Lattice-valued regular languages and finite ordered monoids.
//!
//! The algebraic half of the crate covers finite lattices ([`lattice`]),
//! ordered monoids and op-colorings ([`monoid`], [`coloring`]), languages
//! given by complete Moore machines ([`automaton`]) and their syntactic
//! ordered monoids ([`syntactic`]). [`variety`] checks the finite
//! ingredients of the variety correspondence on concrete instances, and
//! [`markov`] applies all of it to the ergodic classes of finite Markov
//! chains, generic over the probability scalar.

pub mod automaton;
pub mod cli;
pub mod coloring;
pub mod error;
pub mod fixtures;
pub mod io;
pub mod lattice;
pub mod markov;
pub mod monoid;
mod order;
pub mod syntactic;
pub mod variety;

pub use automaton::{FreeMorphism, LatticeAutomaton, Word};
pub use coloring::{OpColoring, Side};
pub use error::{Error, Result};
pub use lattice::{BoundKind, Lattice, LatticeMorphism, StandardLattice};
pub use monoid::{Division, DivisionBudget, MonoidMorphism, OrderedMonoid};
pub use syntactic::{RecognitionTriple, SyntacticResult};

/// Exact rational probabilities.
pub type Rational = num_rational::BigRational;





/// Markov chain with exact rational probabilities.
pub type ExactChain = markov::MarkovChain<Rational>;
/// Markov chain with `f64` probabilities.
pub type FloatChain = markov::MarkovChain<f64>;
pub type ExactDecomposition = markov::Decomposition<Rational>;
pub type FloatDecomposition = markov::Decomposition<f64>;
