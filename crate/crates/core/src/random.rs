//! Seeded generators for β-acyclic hypergraphs and CNF formulas.
//!
//! Hypergraphs are grown backwards along a hidden elimination order: vertex
//! `x_i` joins a `⊆`-chain of the partial edges built from `x_{i+1}, …, x_n`,
//! which is exactly the β-condition at `x_i`. Vertex ids are then shuffled so
//! the hidden order is not the identity.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::cnf::{Clause, CnfFormula, Literal, Var};
use crate::hypergraph::{Hypergraph, VertexSet};

pub type SeededRng = ChaCha8Rng;

pub fn rng(seed: u64) -> SeededRng {
    ChaCha8Rng::seed_from_u64(seed)
}

#[derive(Debug, Clone, Copy)]
pub struct BetaParams {
    pub max_vertices: usize,
    pub max_edges: usize,
    /// Chance that a partial edge stops growing after each step.
    pub close_probability: f64,
    /// Chance of opening a fresh edge at a vertex already covered.
    pub fresh_probability: f64,
    /// Chance that a chain member is also kept, as a new edge, without the
    /// current vertex.
    pub fork_probability: f64,
}

impl Default for BetaParams {
    fn default() -> Self {
        BetaParams {
            max_vertices: 10,
            max_edges: 30,
            close_probability: 0.15,
            fresh_probability: 0.5,
            fork_probability: 0.5,
        }
    }
}

/// A β-acyclic hypergraph on `1..=n` for some `1 ≤ n ≤ max_vertices`, with at
/// least one and at most `max_edges` edges.
pub fn beta_hypergraph(rng: &mut SeededRng, params: &BetaParams) -> Hypergraph {
    let n = rng.gen_range(1..=params.max_vertices.max(1));
    // partial edges as vertex positions in the hidden order, with an open flag
    let mut partial: Vec<(VertexSet, bool)> = Vec::new();
    for pos in (0..n).rev() {
        let v = pos as Var;
        let mut open: Vec<usize> = (0..partial.len()).filter(|&i| partial[i].1).collect();
        open.shuffle(rng);
        let mut chain: Vec<usize> = Vec::new();
        for i in open {
            if rng.gen_bool(0.5) {
                continue;
            }
            let comparable = chain.iter().all(|&j| {
                partial[i].0.is_subset(&partial[j].0) || partial[j].0.is_subset(&partial[i].0)
            });
            if comparable {
                chain.push(i);
            }
        }
        for &i in &chain {
            // the copy keeps the old restriction, which is still comparable
            // with every chain member
            if rng.gen_bool(params.fork_probability) {
                let copy = partial[i].clone();
                partial.push(copy);
            }
            partial[i].0.insert(v);
        }
        if chain.is_empty() || rng.gen_bool(params.fresh_probability) {
            partial.push((VertexSet::from([v]), true));
        }
        for p in &mut partial {
            if p.1 && rng.gen_bool(params.close_probability) {
                p.1 = false;
            }
        }
    }
    let mut labels: Vec<Var> = (1..=n as Var).collect();
    labels.shuffle(rng);
    let mut edges: Vec<VertexSet> = partial
        .into_iter()
        .map(|(e, _)| e.into_iter().map(|p| labels[p as usize]).collect())
        .collect();
    edges.sort();
    edges.dedup();
    edges.shuffle(rng);
    edges.truncate(params.max_edges.max(1));
    Hypergraph::new(edges).expect("generated edges are non-empty")
}

#[derive(Debug, Clone, Copy)]
pub struct CnfParams {
    pub beta: BetaParams,
    pub max_clauses: usize,
    /// Chance of a second clause over an edge already used.
    pub repeat_probability: f64,
    pub negative_probability: f64,
}

impl Default for CnfParams {
    fn default() -> Self {
        CnfParams {
            beta: BetaParams {
                max_vertices: 16,
                ..BetaParams::default()
            },
            max_clauses: 30,
            repeat_probability: 0.3,
            negative_probability: 0.5,
        }
    }
}

fn random_clause(rng: &mut SeededRng, e: &VertexSet, negative: f64) -> Clause {
    Clause::new(e.iter().map(|&v| Literal::new(v, !rng.gen_bool(negative)).expect("ids start at 1")))
    .expect("one literal per variable")
}

/// A β-acyclic CNF whose hypergraph comes from [`beta_hypergraph`], with
/// random polarities. Declares the hypergraph's vertex count.
pub fn beta_cnf(rng: &mut SeededRng, params: &CnfParams) -> CnfFormula {
    let h = beta_hypergraph(rng, &params.beta);
    let mut clauses = Vec::new();
    for e in h.edges() {
        clauses.push(random_clause(rng, e, params.negative_probability));
        if rng.gen_bool(params.repeat_probability) {
            clauses.push(random_clause(rng, e, params.negative_probability));
        }
    }
    clauses.shuffle(rng);
    clauses.truncate(params.max_clauses.max(1));
    let declared = h.vertices().last().copied().unwrap_or(0);
    CnfFormula::new(clauses).with_declared_vars(declared)
}

/// Uniform random `k`-CNF-like formula with clause widths in `1..=3`, not
/// necessarily β-acyclic.
pub fn any_cnf(rng: &mut SeededRng, vars: Var, clauses: usize) -> CnfFormula {
    let mut out = Vec::new();
    for _ in 0..clauses {
        let width = rng.gen_range(1..=3.min(vars as usize).max(1));
        let mut chosen: Vec<Var> = (1..=vars).collect();
        chosen.shuffle(rng);
        chosen.truncate(width);
        let lits = chosen.into_iter().map(|v| if rng.gen_bool(0.5) { Literal::pos(v) } else { Literal::neg(v) });
        out.push(Clause::new(lits).expect("distinct variables"));
    }
    CnfFormula::new(out).with_declared_vars(vars)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypergraph::is_beta_acyclic;

    #[test]
    fn generated_hypergraphs_are_beta_acyclic() {
        let mut r = rng(7);
        for _ in 0..300 {
            let h = beta_hypergraph(&mut r, &BetaParams::default());
            assert!(is_beta_acyclic(&h), "{h:?}");
            assert!(!h.is_empty());
            assert!(h.vertices().len() <= 10);
        }
    }

    #[test]
    fn generated_formulas_respect_limits() {
        let mut r = rng(11);
        let mut negative = false;
        for _ in 0..300 {
            let f = beta_cnf(&mut r, &CnfParams::default());
            assert!(f.vars().len() <= 16);
            assert!((1..=30).contains(&f.len()));
            assert!(is_beta_acyclic(&f.hypergraph().unwrap()));
            negative |= !f.is_monotone();
        }
        assert!(negative);
    }

    #[test]
    fn seeds_are_reproducible() {
        let a = beta_cnf(&mut rng(3), &CnfParams::default());
        let b = beta_cnf(&mut rng(3), &CnfParams::default());
        assert_eq!(a, b);
    }
}
