//! Linear-size decision-DNNF compilation of β-acyclic formulas.
//!
//! Fix a β-elimination order `x_1 < … < x_n`. For every clause `C` with
//! `var(C) = e` and every variable `x`, the program builds a gate computing
//! `F_e^x[τ_C^x]`, where `F_e^x` keeps the clauses whose variable set lies in
//! `H_e^x` and `τ_C^x` is the falsifying assignment of `C` cut to the
//! variables above `x`. Step `x` only touches clauses containing `x`; for the
//! others the gate of the last variable of `e` below `x` is reused.
//!
//! At a step, branching on `x` leaves `F_e^x[τ_C^x ∪ {x ↦ b}]`, which is
//! either satisfied outright or equal to the decomposable conjunction of the
//! gates for `(g, C(g), pred(x))` over the `⊆`-maximal unsatisfied edges `g`.

use std::collections::HashMap;
use std::time::Instant;

use serde::Serialize;
use thiserror::Error;

use crate::circuit::{CircuitBuilder, Gate, GateId, NnfCircuit};
use crate::cnf::{Assignment, Clause, CnfFormula, Literal, Var};
use crate::hypergraph::{
    beta_elimination_order, EliminationOrder, Hypergraph, HypergraphError, NotBetaAcyclic,
    OrderedHypergraph, VertexSet,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CompileError {
    #[error(transparent)]
    NotBetaAcyclic(#[from] NotBetaAcyclic),
    #[error("unusable elimination order: {0}")]
    Order(#[from] HypergraphError),
    #[error("variable {0} is first in the order and has no predecessor")]
    NoPredecessor(Var),
    #[error("assignment must bind exactly {expected:?}, binds {found:?}")]
    Domain { expected: Vec<Var>, found: Vec<Var> },
    #[error("edge {0:?} is not a clause variable set of the formula")]
    UnknownEdge(Vec<Var>),
    #[error("variable {0} does not occur in the formula")]
    UnknownVariable(Var),
}

/// Outcome of splitting `F_e^x[τ]` at the predecessor of `x`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Explosion {
    /// Every clause of `F_e^x` is satisfied by `τ`.
    Tautology,
    /// One `(g, C(g))` per maximal edge, `C(g)` a clause id.
    Conjunction(Vec<(VertexSet, usize)>),
}

#[derive(Debug, Clone, Serialize)]
pub struct CompileReport {
    pub vars: usize,
    pub clauses: usize,
    pub size: usize,
    pub edges: usize,
    pub components: usize,
    pub gates: usize,
    pub nnf_size: usize,
    pub max_and_fanin: usize,
    /// `(x, c(x))` in elimination order.
    pub clause_counts: Vec<(Var, usize)>,
    pub order: Vec<Var>,
    /// Seven gates per clause-variable incidence, plus the shared constants
    /// and the component join.
    pub gate_budget: usize,
    pub wall_time_us: u64,
}

impl CompileReport {
    pub fn within_budget(&self) -> bool {
        self.nnf_size <= self.gate_budget
    }

    pub fn fanin_within_edges(&self) -> bool {
        self.max_and_fanin <= self.edges.max(1)
    }
}

/// `(edge index, τ_C^x, rank of x)`.
type Key = (usize, Vec<Literal>, usize);

/// One gate of the table: it computes `F_e^x[τ_C^x]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TableEntry {
    pub edge: VertexSet,
    pub clause: usize,
    pub x: Var,
    pub gate: GateId,
}

struct Component {
    oh: OrderedHypergraph,
    /// clause ids whose variable set is edge `i`, ascending
    clauses_of: Vec<Vec<usize>>,
    reach: HashMap<(usize, usize), Vec<bool>>,
    cache: HashMap<Key, GateId>,
    root: Option<GateId>,
}

impl Component {
    fn reach(&mut self, e: usize, rank: usize) -> &[bool] {
        let oh = &self.oh;
        self.reach.entry((e, rank)).or_insert_with(|| {
            let mut member = vec![false; oh.len()];
            for g in oh.reach(e, rank) {
                member[g] = true;
            }
            member
        })
    }

    /// `τ_C^x` for the vertex of rank `rank`, as its literals.
    fn cut(&self, clause: &Clause, rank: usize) -> Vec<Literal> {
        let order = self.oh.order();
        clause
            .literals()
            .iter()
            .filter(|l| order.rank(l.var()).expect("clause vertex is ordered") > rank)
            .map(|l| l.negated())
            .collect()
    }

    /// `None` for a tautology, else `(g, C(g))` as edge indices.
    fn explode(&mut self, f: &CnfFormula, e: usize, rank: usize, tau: &Assignment) -> Option<Vec<(usize, usize)>> {
        let in_h: Vec<bool> = self.reach(e, rank).to_vec();
        let mut a: Vec<(usize, usize)> = Vec::new();
        for (g, member) in in_h.iter().enumerate() {
            if !member {
                continue;
            }
            if let Some(&c) = self.clauses_of[g]
                .iter()
                .find(|&&c| !f.clause(c).satisfied_by(tau))
            {
                a.push((g, c));
            }
        }
        if a.is_empty() {
            return None;
        }
        let y = rank - 1;
        let mut u = Vec::new();
        for &(g, c) in &a {
            // only larger edges can reach g
            let dominated = a
                .iter()
                .filter(|&&(h, _)| h > g)
                .any(|&(h, _)| self.reach(h, y)[g]);
            if !dominated {
                u.push((g, c));
            }
        }
        Some(u)
    }

    /// Gate for `(g, C, x)` where `x` has rank `rank`, from an earlier step.
    fn lookup(&self, f: &CnfFormula, g: usize, clause: usize, rank: usize, b: &mut CircuitBuilder) -> GateId {
        let ranks = self.oh.edge_ranks(g);
        match ranks.iter().rev().find(|&&r| r <= rank) {
            None => b.constant(false),
            Some(&r) => {
                let key = (g, self.cut(f.clause(clause), r), r);
                *self
                    .cache
                    .get(&key)
                    .expect("earlier steps filled every (edge, clause) at the edge's vertices")
            }
        }
    }

    fn step(&mut self, f: &CnfFormula, e: usize, clause: usize, rank: usize, b: &mut CircuitBuilder) -> GateId {
        let order = self.oh.order().clone();
        let x = order.at(rank);
        let tau: Assignment = self
            .cut(f.clause(clause), rank)
            .into_iter()
            .map(|l| (l.var(), l.is_positive()))
            .collect();
        if rank == 0 {
            // every clause of F_e^{x_1} lives inside e, so the residue is over x_1
            let sub = self.sub_formula(f, e, rank).restrict(&tau);
            let at = |v: bool| {
                sub.evaluate(&Assignment::new().with(x, v))
                    .expect("residue only mentions x_1")
            };
            return match (at(true), at(false)) {
                (true, true) => b.constant(true),
                (true, false) => b.literal(Literal::pos(x)),
                (false, true) => b.literal(Literal::neg(x)),
                (false, false) => b.constant(false),
            };
        }
        let branch = |value: bool, this: &mut Component, b: &mut CircuitBuilder| {
            let tau_b = tau.clone().with(x, value);
            match this.explode(f, e, rank, &tau_b) {
                None => b.constant(true),
                Some(parts) => {
                    let children: Vec<GateId> = parts
                        .iter()
                        .map(|&(g, c)| this.lookup(f, g, c, rank - 1, b))
                        .collect();
                    match children.as_slice() {
                        [only] => *only,
                        _ => b.push(Gate::And(children)),
                    }
                }
            }
        };
        let hi = branch(true, self, b);
        let lo = branch(false, self, b);
        b.push(Gate::Decision { var: x, hi, lo })
    }

    fn sub_formula(&mut self, f: &CnfFormula, e: usize, rank: usize) -> CnfFormula {
        let member = self.reach(e, rank).to_vec();
        let ids: Vec<usize> = member
            .iter()
            .enumerate()
            .filter(|(_, &m)| m)
            .flat_map(|(g, _)| self.clauses_of[g].iter().copied())
            .collect();
        CnfFormula::new(ids.into_iter().map(|c| f.clause(c).clone()))
    }

    fn run(&mut self, f: &CnfFormula, b: &mut CircuitBuilder) {
        let n = self.oh.order().len();
        for rank in 0..n {
            let edges: Vec<usize> = self.oh.incident(rank).to_vec();
            for e in edges {
                for clause in self.clauses_of[e].clone() {
                    let key = (e, self.cut(f.clause(clause), rank), rank);
                    if self.cache.contains_key(&key) {
                        continue;
                    }
                    let gate = self.step(f, e, clause, rank, b);
                    self.cache.insert(key, gate);
                }
            }
        }
        // the largest edge contains x_n and reaches every edge
        let top = self.oh.len() - 1;
        let clause = self.clauses_of[top][0];
        self.root = Some(self.lookup(f, top, clause, n - 1, b));
    }
}

/// The dynamic program over every connected component of `H(F)`.
pub struct DynamicProgram<'f> {
    formula: &'f CnfFormula,
    order: EliminationOrder,
    components: Vec<Component>,
    builder: CircuitBuilder,
    root: Option<GateId>,
}

impl<'f> DynamicProgram<'f> {
    /// Validates (or computes) the order. The formula must have no empty
    /// clause.
    pub fn new(formula: &'f CnfFormula, order: Option<&EliminationOrder>) -> Result<Self, CompileError> {
        let h = formula.hypergraph()?;
        let order = resolve_order(&h, order)?;
        let mut components = Vec::new();
        for comp in h.connected_components() {
            let comp_order = order.restricted_to(&comp.vertices());
            let oh = OrderedHypergraph::new(&comp, comp_order)?;
            let mut clauses_of = vec![Vec::new(); oh.len()];
            for (id, c) in formula.clauses().iter().enumerate() {
                if let Some(i) = oh.index_of(&c.vars()) {
                    clauses_of[i].push(id);
                }
            }
            components.push(Component {
                oh,
                clauses_of,
                reach: HashMap::new(),
                cache: HashMap::new(),
                root: None,
            });
        }
        Ok(DynamicProgram {
            formula,
            order,
            components,
            builder: CircuitBuilder::new(),
            root: None,
        })
    }

    pub fn order(&self) -> &EliminationOrder {
        &self.order
    }

    pub fn run(&mut self) -> GateId {
        if let Some(r) = self.root {
            return r;
        }
        let mut roots = Vec::new();
        for c in &mut self.components {
            c.run(self.formula, &mut self.builder);
            roots.push(c.root.expect("component ran"));
        }
        let root = match roots.as_slice() {
            [] => self.builder.constant(true),
            [only] => *only,
            _ => self.builder.push(Gate::And(roots)),
        };
        self.root = Some(root);
        root
    }

    /// Every table gate, one per distinct key (first clause id kept).
    pub fn entries(&self) -> Vec<TableEntry> {
        let mut out = Vec::new();
        for c in &self.components {
            let order = c.oh.order();
            for (e, clauses) in c.clauses_of.iter().enumerate() {
                for &clause in clauses {
                    for &rank in c.oh.edge_ranks(e) {
                        let key = (e, c.cut(self.formula.clause(clause), rank), rank);
                        if let Some(&gate) = c.cache.get(&key) {
                            out.push(TableEntry {
                                edge: c.oh.edge(e).clone(),
                                clause,
                                x: order.at(rank),
                                gate,
                            });
                        }
                    }
                }
            }
        }
        out
    }

    /// The gate built for `(e, C, x)`, walking back to the last vertex of
    /// `e` not above `x` when `x ∉ e`.
    pub fn gate_for(&mut self, e: &VertexSet, clause: usize, x: Var) -> Option<GateId> {
        let c = self.components.iter().find(|c| c.oh.index_of(e).is_some())?;
        let g = c.oh.index_of(e)?;
        let rank = c.oh.order().rank(x)?;
        Some(c.lookup(self.formula, g, clause, rank, &mut self.builder))
    }

    /// The sub-circuit rooted at a table gate.
    pub fn circuit_at(&self, gate: GateId) -> NnfCircuit {
        self.builder.clone().finish(gate, self.formula.declared_vars())
    }

    pub fn gate(&self, id: GateId) -> &Gate {
        self.builder.gate(id)
    }

    pub fn finish(mut self) -> NnfCircuit {
        let root = self.run();
        let vars = self.formula.declared_vars();
        self.builder.finish(root, vars)
    }
}

fn resolve_order(h: &Hypergraph, order: Option<&EliminationOrder>) -> Result<EliminationOrder, CompileError> {
    match order {
        Some(o) => {
            let o = o.restricted_to(&h.vertices());
            o.check_covers(h)?;
            o.check_beta(h)?;
            Ok(o)
        }
        None => Ok(beta_elimination_order(h)?),
    }
}

/// Compiles `F` along `order` (greedy β-elimination order when absent).
pub fn compile(f: &CnfFormula, order: Option<&EliminationOrder>) -> Result<(NnfCircuit, CompileReport), CompileError> {
    let start = Instant::now();
    let (circuit, order, components, edges) = if f.has_empty_clause() {
        (NnfCircuit::constant(false), EliminationOrder::default(), 0, 0)
    } else {
        let mut dp = DynamicProgram::new(f, order)?;
        let order = dp.order().clone();
        let components = dp.components.len();
        let edges = dp.components.iter().map(|c| c.oh.len()).sum();
        dp.run();
        (dp.finish(), order, components, edges)
    };
    let clause_counts: Vec<(Var, usize)> = order
        .sequence()
        .iter()
        .map(|&x| (x, f.occurrences(x)))
        .collect();
    let incidences: usize = clause_counts.iter().map(|&(_, c)| c).sum();
    let report = CompileReport {
        vars: f.vars().len(),
        clauses: f.len(),
        size: f.size(),
        edges,
        components,
        gates: circuit.gate_count(),
        nnf_size: circuit.nnf_size(),
        max_and_fanin: circuit.max_and_fanin(),
        clause_counts,
        order: order.sequence().to_vec(),
        gate_budget: 7 * incidences + 2 + usize::from(components > 1),
        wall_time_us: u64::try_from(start.elapsed().as_micros()).unwrap_or(u64::MAX),
    };
    Ok((circuit, report))
}

/// `F_e^x = {C ∈ F | var(C) ∈ H_e^x}`.
pub fn sub_formula(f: &CnfFormula, order: &EliminationOrder, e: &VertexSet, x: Var) -> Result<CnfFormula, CompileError> {
    let h = f.hypergraph()?;
    if !h.contains_edge(e) {
        return Err(CompileError::UnknownEdge(e.iter().copied().collect()));
    }
    let sub = crate::hypergraph::sub_hypergraph(&h, &order.restricted_to(&h.vertices()), e, x)?;
    Ok(CnfFormula::new(
        f.clauses()
            .iter()
            .filter(|c| sub.contains_edge(&c.vars()))
            .cloned(),
    ))
}

/// Splits `F_e^x[τ]` for `τ` binding exactly `e ∩ V_{≥x}`.
pub fn compute_u(
    f: &CnfFormula,
    order: &EliminationOrder,
    e: &VertexSet,
    x: Var,
    tau: &Assignment,
) -> Result<Explosion, CompileError> {
    let h = f.hypergraph()?;
    if !h.contains_edge(e) {
        return Err(CompileError::UnknownEdge(e.iter().copied().collect()));
    }
    let order = order.restricted_to(&h.vertices());
    let rank = order.rank(x).ok_or(CompileError::UnknownVariable(x))?;
    if rank == 0 {
        return Err(CompileError::NoPredecessor(x));
    }
    let expected: Vec<Var> = e
        .iter()
        .copied()
        .filter(|&v| order.rank(v).is_some_and(|r| r >= rank))
        .collect();
    let found: Vec<Var> = tau.domain().into_iter().collect();
    if expected != found {
        return Err(CompileError::Domain { expected, found });
    }
    let oh = OrderedHypergraph::new(&h, order)?;
    let mut clauses_of = vec![Vec::new(); oh.len()];
    for (id, c) in f.clauses().iter().enumerate() {
        clauses_of[oh.index_of(&c.vars()).expect("edge of H(F)")].push(id);
    }
    let ei = oh.index_of(e).expect("checked above");
    let mut comp = Component {
        oh,
        clauses_of,
        reach: HashMap::new(),
        cache: HashMap::new(),
        root: None,
    };
    Ok(match comp.explode(f, ei, rank, tau) {
        None => Explosion::Tautology,
        Some(u) => Explosion::Conjunction(
            u.into_iter()
                .map(|(g, c)| (comp.oh.edge(g).clone(), c))
                .collect(),
        ),
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct SweepRow {
    pub size: usize,
    pub gates: usize,
    pub nnf_size: usize,
    pub max_and_fanin: usize,
    pub wall_time_us: u64,
}

pub fn compile_stats_sweep(family: &[CnfFormula]) -> Result<Vec<SweepRow>, CompileError> {
    family
        .iter()
        .map(|f| {
            let (_, r) = compile(f, None)?;
            Ok(SweepRow {
                size: r.size,
                gates: r.gates,
                nnf_size: r.nnf_size,
                max_and_fanin: r.max_and_fanin,
                wall_time_us: r.wall_time_us,
            })
        })
        .collect()
}
