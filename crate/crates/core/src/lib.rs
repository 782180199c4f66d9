//! Knowledge compilation for β-acyclic CNF formulas.
//!
//! [`compiler::compile`] turns a β-acyclic formula into a decision-DNNF of
//! linear size by dynamic programming over the sub-hypergraphs `H_e^x`.
//! Around it sit a DPLL counter with component caching, brute-force oracles
//! and small exhaustive tools for rectangle covers and MIM-width.

pub mod circuit;
pub mod cnf;
pub mod compiler;
pub mod dimacs;
pub mod dpll;
pub mod examples;
pub mod hypergraph;
pub mod lowerbound;
pub mod nnf;
pub mod random;
pub mod tree;
pub mod truth_table;

pub use circuit::{Gate, NnfCircuit};
pub use cnf::{Assignment, Clause, CnfFormula, Literal, Var};
pub use hypergraph::{EliminationOrder, Hypergraph, OrderedHypergraph};
