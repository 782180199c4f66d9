//! `F̂ = {K ∪ {c_K} | K ∈ F}`: one fresh positive variable per clause.

use super::LabError;
use crate::cnf::{Clause, CnfFormula, Literal, Var};
use crate::hypergraph::{beta_elimination_order, is_beta_acyclic, EliminationOrder, Hypergraph};

/// First unused id: the larger of the declared and the used variables.
pub fn fresh_base(f: &CnfFormula) -> Var {
    f.declared_vars().max(f.vars().last().copied().unwrap_or(0))
}

/// Clause `j` gains the variable `n + 1 + j`.
pub fn hat(f: &CnfFormula) -> CnfFormula {
    let n = fresh_base(f);
    let clauses = f.clauses().iter().enumerate().map(|(j, c)| {
        let c_k = Literal::pos(n + 1 + j as Var);
        Clause::new(c.literals().iter().copied().chain([c_k])).expect("fresh variable")
    });
    CnfFormula::new(clauses).with_declared_vars(n + f.len() as Var)
}

fn clause_hypergraph(f: &CnfFormula) -> Result<Hypergraph, LabError> {
    Ok(Hypergraph::new(
        f.clauses().iter().map(Clause::vars).filter(|e| !e.is_empty()),
    )?)
}

/// `(c_1, …, c_m, x_1, …, x_n)` for a greedy β-elimination order of `F`.
pub fn hat_order(f: &CnfFormula) -> Result<EliminationOrder, LabError> {
    let base = beta_elimination_order(&clause_hypergraph(f)?)?;
    let n = fresh_base(f);
    let seq: Vec<Var> = (0..f.len() as Var)
        .map(|j| n + 1 + j)
        .chain(base.sequence().iter().copied())
        .collect();
    Ok(EliminationOrder::new(seq)?)
}

/// The fresh-first order is a β-elimination order of `H(F̂)`, and `H(F̂)` is
/// β-acyclic.
pub fn hat_preserves_beta(f: &CnfFormula) -> Result<bool, LabError> {
    let order = hat_order(f)?;
    let h = hat(f).hypergraph()?;
    Ok(order.is_beta_for(&h) && is_beta_acyclic(&h))
}

/// `|H| ≤ n(n+1)/2` for `n = |V(H)|`.
pub fn edge_bound_holds(h: &Hypergraph) -> bool {
    let n = h.vertices().len();
    h.len() <= n * (n + 1) / 2
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::examples::{fstar, triangle};

    #[test]
    fn hat_examples() {
        let xy = CnfFormula::from_dimacs_clauses(&[&[1, 2]]);
        assert_eq!(hat(&xy), CnfFormula::from_dimacs_clauses(&[&[1, 2, 3]]));
        let h = hat(&fstar());
        assert_eq!(h.len(), 5);
        assert_eq!(h.vars().len(), 10);
        assert_eq!(h.size(), fstar().size() + 5);
        assert!(hat(&CnfFormula::default()).is_empty());
    }

    #[test]
    fn beta_is_preserved() {
        assert!(hat_preserves_beta(&fstar()).unwrap());
        assert_eq!(hat_order(&fstar()).unwrap().sequence(), &[6, 7, 8, 9, 10, 1, 2, 3, 4, 5]);
        assert!(hat_preserves_beta(&CnfFormula::from_dimacs_clauses(&[&[1]])).unwrap());
        assert!(matches!(hat_preserves_beta(&triangle()), Err(LabError::NotBetaAcyclic(_))));
    }

    #[test]
    fn edge_bound() {
        assert!(edge_bound_holds(&fstar().hypergraph().unwrap()));
        let all_pairs_and_singletons = Hypergraph::from_slices(&[&[1], &[2], &[1, 2]]).unwrap();
        assert!(edge_bound_holds(&all_pairs_and_singletons));
    }
}
