//! Small fixed instances used throughout the tests and the CLI.

use crate::circuit::{Gate, NnfCircuit};
use crate::cnf::{CnfFormula, Literal};
use crate::lowerbound::graph::Graph;
use crate::tree::{BinaryTree, BranchDecomposition, Vtree};

/// `(1∨2)(3∨4)(2∨5)(4∨5)(2∨4∨5)`; 13 models over `{1..5}`.
pub fn fstar() -> CnfFormula {
    CnfFormula::from_dimacs_clauses(&[&[1, 2], &[3, 4], &[2, 5], &[4, 5], &[2, 4, 5]])
}

/// The three pairwise edges on `{1,2,3}`; not β-acyclic.
pub fn triangle() -> CnfFormula {
    CnfFormula::from_dimacs_clauses(&[&[1, 2], &[2, 3], &[1, 3]])
}

/// `(¬x ∧ z) ∨ (x ∧ (y ∨ z))` with `x = 1`, `y = 2`, `z = 3`.
pub fn guarded_or_circuit() -> NnfCircuit {
    NnfCircuit::new(
        vec![
            Gate::Lit(Literal::pos(1)),
            Gate::Lit(Literal::neg(1)),
            Gate::Lit(Literal::pos(2)),
            Gate::Lit(Literal::pos(3)),
            Gate::Or(vec![2, 3]),
            Gate::And(vec![0, 4]),
            Gate::And(vec![1, 3]),
            Gate::Or(vec![5, 6]),
        ],
        3,
    )
    .expect("fixture is topological")
}

/// `((y z) x)`.
pub fn guarded_or_vtree() -> Vtree {
    BinaryTree::parse("((2 3) 1)").expect("fixture parses")
}

/// The 4-cycle `1-2-3-4-1` with chord `1-3`.
pub fn chorded_square() -> Graph {
    Graph::from_edges(&[(1, 2), (2, 3), (3, 4), (4, 1), (1, 3)]).expect("fixture is simple")
}

/// `((1 2) (3 4))`; the node over `{1, 2}` is the distinguished one.
pub fn chorded_square_decomposition() -> BranchDecomposition {
    BinaryTree::parse("((1 2) (3 4))").expect("fixture parses")
}

/// `(x_1 ∨ x_2)(x_2 ∨ x_3)…(x_{n-1} ∨ x_n)`.
pub fn chain(n: u32) -> CnfFormula {
    let clauses: Vec<Vec<i64>> = (1..n).map(|i| vec![i64::from(i), i64::from(i) + 1]).collect();
    let refs: Vec<&[i64]> = clauses.iter().map(Vec::as_slice).collect();
    CnfFormula::from_dimacs_clauses(&refs).with_declared_vars(n)
}

/// `(x_1 ∨ y_1) ∧ … ∧ (x_k ∨ y_k)` with `x_i = i` and `y_i = k + i`.
pub fn matching_formula(k: u32) -> CnfFormula {
    let clauses: Vec<Vec<i64>> = (1..=k)
        .map(|i| vec![i64::from(i), i64::from(k + i)])
        .collect();
    let refs: Vec<&[i64]> = clauses.iter().map(Vec::as_slice).collect();
    CnfFormula::from_dimacs_clauses(&refs).with_declared_vars(2 * k)
}
