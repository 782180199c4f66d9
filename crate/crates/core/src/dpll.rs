//! Exhaustive DPLL with component splitting and caching.
//!
//! Counts models of `F` over `var(F)`. Each call first looks the residual
//! formula up in the cache, then splits it into variable-disjoint components
//! if it can, and otherwise branches on the first variable of the strategy
//! order that still occurs. The run is recorded as a decision-DNNF: branches
//! become decision gates, splits decomposable ∧-gates, cache hits shared
//! gates.

use std::collections::{BTreeSet, HashMap};

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::circuit::{CircuitBuilder, Gate, GateId, NnfCircuit};
use crate::cnf::{Clause, CnfFormula, Var};
use crate::hypergraph::{beta_elimination_order, HypergraphError, NotBetaAcyclic};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OrderStrategy {
    /// `x_n` first, for a greedy β-elimination order `x_1 < … < x_n`.
    ReverseBetaElimination,
    /// Listed variables first, the rest by ascending id.
    FixedSequence(Vec<Var>),
    /// Ascending variable id.
    LexicographicFallback,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DpllError {
    #[error("step budget of {0} exhausted")]
    Budget(u64),
    #[error(transparent)]
    NotBetaAcyclic(#[from] NotBetaAcyclic),
    #[error(transparent)]
    Hypergraph(#[from] HypergraphError),
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct DpllStats {
    pub decisions: u64,
    pub splits: u64,
    pub cache_hits: u64,
    pub cache_misses: u64,
    pub cache_entries: usize,
    /// Deepest nesting of residual formulas under evaluation.
    pub peak_residuals: usize,
    pub steps: u64,
}

#[derive(Debug, Clone)]
pub struct DpllRun {
    pub count: BigUint,
    pub circuit: NnfCircuit,
    pub stats: DpllStats,
}

/// Sorted, duplicate-free clauses; the cache key.
type Residual = Vec<Clause>;

fn residual_vars(r: &Residual) -> BTreeSet<Var> {
    r.iter().flat_map(|c| c.literals().iter().map(|l| l.var())).collect()
}

fn assign(r: &Residual, x: Var, value: bool) -> Residual {
    let mut out: Residual = r
        .iter()
        .filter(|c| c.literal_of(x).is_none_or(|l| !l.eval(value)))
        .map(|c| {
            Clause::new(c.literals().iter().copied().filter(|l| l.var() != x))
                .expect("subset of a clause is not tautological")
        })
        .collect();
    out.sort();
    out.dedup();
    out
}

/// Variable-disjoint groups of clauses, by union-find over variables.
fn components(r: &Residual) -> Vec<Residual> {
    let vars: Vec<Var> = residual_vars(r).into_iter().collect();
    let index: HashMap<Var, usize> = vars.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let mut parent: Vec<usize> = (0..vars.len()).collect();
    fn find(p: &mut [usize], mut i: usize) -> usize {
        while p[i] != i {
            p[i] = p[p[i]];
            i = p[i];
        }
        i
    }
    for c in r {
        let mut lits = c.literals().iter();
        if let Some(first) = lits.next() {
            let a = find(&mut parent, index[&first.var()]);
            for l in lits {
                let b = find(&mut parent, index[&l.var()]);
                parent[b] = a;
            }
        }
    }
    let mut groups: HashMap<usize, Residual> = HashMap::new();
    for c in r {
        let root = find(&mut parent, index[&c.literals()[0].var()]);
        groups.entry(root).or_default().push(c.clone());
    }
    let mut out: Vec<Residual> = groups.into_values().collect();
    out.sort();
    out
}

struct Engine {
    priority: HashMap<Var, usize>,
    cache: HashMap<Residual, (GateId, BigUint)>,
    builder: CircuitBuilder,
    stats: DpllStats,
    budget: Option<u64>,
    depth: usize,
}

impl Engine {
    fn pick(&self, r: &Residual) -> Var {
        residual_vars(r)
            .into_iter()
            .min_by_key(|v| (self.priority.get(v).copied().unwrap_or(usize::MAX), *v))
            .expect("non-empty residual has a variable")
    }

    fn solve(&mut self, r: Residual) -> Result<(GateId, BigUint), DpllError> {
        self.stats.steps += 1;
        if self.budget.is_some_and(|b| self.stats.steps > b) {
            return Err(DpllError::Budget(self.budget.unwrap_or_default()));
        }
        if r.is_empty() {
            return Ok((self.builder.constant(true), BigUint::one()));
        }
        if r.iter().any(Clause::is_empty) {
            return Ok((self.builder.constant(false), BigUint::zero()));
        }
        if let Some(hit) = self.cache.get(&r) {
            self.stats.cache_hits += 1;
            return Ok(hit.clone());
        }
        self.stats.cache_misses += 1;
        self.depth += 1;
        self.stats.peak_residuals = self.stats.peak_residuals.max(self.depth);
        let parts = components(&r);
        let result = if parts.len() > 1 {
            self.stats.splits += 1;
            let mut gates = Vec::with_capacity(parts.len());
            let mut count = BigUint::one();
            for p in parts {
                let (g, n) = self.solve(p)?;
                gates.push(g);
                count *= n;
            }
            (self.builder.push(Gate::And(gates)), count)
        } else {
            self.stats.decisions += 1;
            let x = self.pick(&r);
            let width = residual_vars(&r).len();
            let branch = |engine: &mut Engine, value: bool| -> Result<(GateId, BigUint), DpllError> {
                let sub = assign(&r, x, value);
                let free = width - 1 - residual_vars(&sub).len();
                let (g, n) = engine.solve(sub)?;
                Ok((g, n << free))
            };
            let (hi, n1) = branch(self, true)?;
            let (lo, n0) = branch(self, false)?;
            (self.builder.push(Gate::Decision { var: x, hi, lo }), n1 + n0)
        };
        self.depth -= 1;
        self.cache.insert(r, result.clone());
        self.stats.cache_entries = self.cache.len();
        Ok(result)
    }
}

fn priority(f: &CnfFormula, strategy: &OrderStrategy) -> Result<HashMap<Var, usize>, DpllError> {
    let seq: Vec<Var> = match strategy {
        OrderStrategy::ReverseBetaElimination => {
            let h = f.hypergraph()?;
            let mut s = beta_elimination_order(&h)?.sequence().to_vec();
            s.reverse();
            s
        }
        OrderStrategy::FixedSequence(s) => s.clone(),
        OrderStrategy::LexicographicFallback => Vec::new(),
    };
    let mut out = HashMap::new();
    for (i, v) in seq.into_iter().enumerate() {
        out.entry(v).or_insert(i);
    }
    Ok(out)
}

/// Runs the counter and keeps the trace. `budget` caps the number of calls.
pub fn run_dpll(f: &CnfFormula, strategy: &OrderStrategy, budget: Option<u64>) -> Result<DpllRun, DpllError> {
    let mut engine = Engine {
        priority: if f.has_empty_clause() {
            HashMap::new()
        } else {
            priority(f, strategy)?
        },
        cache: HashMap::new(),
        builder: CircuitBuilder::new(),
        stats: DpllStats::default(),
        budget,
        depth: 0,
    };
    let mut start: Residual = f.clauses().to_vec();
    start.sort();
    let (root, count) = engine.solve(start)?;
    Ok(DpllRun {
        count,
        circuit: engine.builder.finish(root, f.declared_vars()),
        stats: engine.stats,
    })
}

/// `#F` over `var(F)`.
pub fn count_dpll(f: &CnfFormula, strategy: &OrderStrategy, budget: Option<u64>) -> Result<(BigUint, DpllStats), DpllError> {
    run_dpll(f, strategy, budget).map(|r| (r.count, r.stats))
}

/// The decision-DNNF traced by the counter.
pub fn trace_to_circuit(f: &CnfFormula, strategy: &OrderStrategy, budget: Option<u64>) -> Result<NnfCircuit, DpllError> {
    run_dpll(f, strategy, budget).map(|r| r.circuit)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cnf::brute_force_count;
    use crate::examples::{chain, fstar};

    const STRATEGIES: [fn() -> OrderStrategy; 3] = [
        || OrderStrategy::ReverseBetaElimination,
        || OrderStrategy::FixedSequence(vec![3, 1, 5]),
        || OrderStrategy::LexicographicFallback,
    ];

    #[test]
    fn fstar_counts_13() {
        for s in STRATEGIES {
            let (n, stats) = count_dpll(&fstar(), &s(), None).unwrap();
            assert_eq!(n, BigUint::from(13u32));
            assert_eq!(stats.cache_entries as u64, stats.cache_misses);
        }
        let c = trace_to_circuit(&fstar(), &OrderStrategy::ReverseBetaElimination, None).unwrap();
        c.check_decomposable().unwrap();
        c.check_decision().unwrap();
        assert_eq!(c.count_models(&(1..=5).collect()).unwrap(), BigUint::from(13u32));
    }

    #[test]
    fn small_cases() {
        let xy = CnfFormula::from_dimacs_clauses(&[&[1, 2]]);
        for s in STRATEGIES {
            assert_eq!(count_dpll(&xy, &s(), None).unwrap().0, BigUint::from(3u32));
        }
        let f = CnfFormula::new([Clause::empty()]);
        assert_eq!(count_dpll(&f, &OrderStrategy::LexicographicFallback, None).unwrap().0, BigUint::zero());
        assert_eq!(
            count_dpll(&CnfFormula::default(), &OrderStrategy::ReverseBetaElimination, None).unwrap().0,
            BigUint::one()
        );
    }

    #[test]
    fn unit_clause_trace() {
        let c = trace_to_circuit(&CnfFormula::from_dimacs_clauses(&[&[1]]), &OrderStrategy::LexicographicFallback, None)
            .unwrap();
        let Gate::Decision { var: 1, lo, .. } = c.gate(c.output()).clone() else {
            panic!("expected a decision on 1");
        };
        assert_eq!(c.gate(lo), &Gate::False);
    }

    #[test]
    fn components_become_an_and() {
        let f = CnfFormula::from_dimacs_clauses(&[&[1, 2], &[3, 4]]);
        let run = run_dpll(&f, &OrderStrategy::LexicographicFallback, None).unwrap();
        assert!(matches!(run.circuit.gate(run.circuit.output()), Gate::And(cs) if cs.len() == 2));
        assert_eq!(run.count, BigUint::from(9u32));
        assert_eq!(run.stats.splits, 1);
    }

    #[test]
    fn triangle_needs_a_fallback() {
        let t = crate::examples::triangle();
        assert!(matches!(
            count_dpll(&t, &OrderStrategy::ReverseBetaElimination, None),
            Err(DpllError::NotBetaAcyclic(_))
        ));
        let expected = brute_force_count(&t, &t.vars(), 24).unwrap();
        assert_eq!(count_dpll(&t, &OrderStrategy::LexicographicFallback, None).unwrap().0, expected);
    }

    #[test]
    fn budget_aborts() {
        assert_eq!(
            count_dpll(&chain(30), &OrderStrategy::LexicographicFallback, Some(5)).unwrap_err(),
            DpllError::Budget(5)
        );
    }

    #[test]
    fn chain_cache_is_linear_in_reverse_order() {
        let small = count_dpll(&chain(20), &OrderStrategy::ReverseBetaElimination, None).unwrap().1;
        let large = count_dpll(&chain(40), &OrderStrategy::ReverseBetaElimination, None).unwrap().1;
        assert!(large.cache_entries <= 3 * small.cache_entries);
    }
}
