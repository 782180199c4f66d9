//! Oracles written directly from the definitions, sharing no code with the
//! library beyond its data types.
#![allow(dead_code)]

use std::collections::BTreeSet;

use betakc::{CnfFormula, Var};

/// Models of `f` over `domain` by enumerating every row.
pub fn naive_count(f: &CnfFormula, domain: &BTreeSet<Var>) -> u64 {
    let vars: Vec<Var> = domain.iter().copied().collect();
    let value = |mask: u64, v: Var| mask >> vars.iter().position(|&w| w == v).unwrap() & 1 == 1;
    (0..1u64 << vars.len())
        .filter(|&m| {
            f.clauses()
                .iter()
                .all(|c| c.literals().iter().any(|l| value(m, l.var()) == l.is_positive()))
        })
        .count() as u64
}

/// Truth value of `f` on row `mask` of `vars`.
pub fn naive_eval(f: &CnfFormula, vars: &[Var], mask: u64) -> bool {
    f.clauses().iter().all(|c| {
        c.literals().iter().any(|l| {
            let i = vars.iter().position(|&w| w == l.var()).unwrap();
            (mask >> i & 1 == 1) == l.is_positive()
        })
    })
}

/// β-condition read off the definition: for every `i`, the edges containing
/// `x_i`, cut to `{x_i, …, x_n}`, form a `⊆`-chain.
pub fn naive_is_beta_order(edges: &[BTreeSet<Var>], order: &[Var]) -> bool {
    (0..order.len()).all(|i| {
        let tail: BTreeSet<Var> = order[i..].iter().copied().collect();
        let cut: Vec<BTreeSet<Var>> = edges
            .iter()
            .filter(|e| e.contains(&order[i]))
            .map(|e| e.intersection(&tail).copied().collect())
            .collect();
        cut.iter().all(|a| cut.iter().all(|b| a.is_subset(b) || b.is_subset(a)))
    })
}

pub fn permutations(items: &[Var]) -> Vec<Vec<Var>> {
    if items.is_empty() {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for i in 0..items.len() {
        let mut rest = items.to_vec();
        let head = rest.remove(i);
        for mut p in permutations(&rest) {
            p.insert(0, head);
            out.push(p);
        }
    }
    out
}

pub fn naive_is_beta_acyclic(edges: &[BTreeSet<Var>]) -> bool {
    let vs: Vec<Var> = edges.iter().flatten().copied().collect::<BTreeSet<_>>().into_iter().collect();
    permutations(&vs).iter().any(|p| naive_is_beta_order(edges, p))
}

/// `e <_H f` iff the latest vertex of `e Δ f` lies in `f`.
pub fn naive_edge_less(order: &[Var], e: &BTreeSet<Var>, f: &BTreeSet<Var>) -> bool {
    let pos = |v: &Var| order.iter().position(|w| w == v).unwrap();
    e.symmetric_difference(f).max_by_key(|v| pos(v)).is_some_and(|m| f.contains(m))
}

/// `H_e^x` as a set of edges, by a fixpoint over the walk relation.
pub fn naive_reach(edges: &[BTreeSet<Var>], order: &[Var], e: &BTreeSet<Var>, x: Var) -> BTreeSet<BTreeSet<Var>> {
    let pos = |v: &Var| order.iter().position(|w| w == v).unwrap();
    let below: BTreeSet<Var> = order.iter().copied().filter(|v| pos(v) <= pos(&x)).collect();
    let allowed: Vec<&BTreeSet<Var>> = edges.iter().filter(|f| *f == e || naive_edge_less(order, f, e)).collect();
    let mut reached: BTreeSet<BTreeSet<Var>> = BTreeSet::from([e.clone()]);
    loop {
        let before = reached.len();
        let touched: BTreeSet<Var> = reached.iter().flatten().copied().filter(|v| below.contains(v)).collect();
        for f in &allowed {
            if f.iter().any(|v| touched.contains(v)) {
                reached.insert((*f).clone());
            }
        }
        if reached.len() == before {
            return reached;
        }
    }
}
