//! NNF circuits and decision-DNNF queries.
//!
//! Gates live in topological order: every child index is smaller than its
//! parent's, and the last gate is the output. A [`Gate::Decision`] gate on
//! `x` stands for `(x ∧ hi) ∨ (¬x ∧ lo)`.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::cnf::{Assignment, CnfFormula, Literal, Var};
use crate::hypergraph::VertexSet;
use crate::tree::{Node, Vtree};
use crate::truth_table::{TableSpace, TruthTable};

/// Default cap on variables enumerated by semantic checks.
pub const DEFAULT_ENUMERATION_CAP: usize = 20;

pub type GateId = usize;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Gate {
    Lit(Literal),
    True,
    False,
    And(Vec<GateId>),
    Or(Vec<GateId>),
    Decision { var: Var, hi: GateId, lo: GateId },
}

impl Gate {
    pub fn children(&self) -> &[GateId] {
        match self {
            Gate::And(c) | Gate::Or(c) => c,
            _ => &[],
        }
    }

    fn for_each_child(&self, mut f: impl FnMut(GateId)) {
        match self {
            Gate::And(c) | Gate::Or(c) => c.iter().copied().for_each(&mut f),
            Gate::Decision { hi, lo, .. } => {
                f(*hi);
                f(*lo);
            }
            _ => {}
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CircuitError {
    #[error("circuit has no gates")]
    Empty,
    #[error("gate {gate} refers to child {child}, which is not an earlier gate")]
    BadChild { gate: GateId, child: GateId },
    #[error("variable {0} is not bound by the assignment")]
    Unbound(Var),
    #[error("refusing to enumerate {vars} variables (cap is {cap})")]
    CapExceeded { vars: usize, cap: usize },
    #[error("circuit variable {0} is outside the counting domain")]
    OutsideDomain(Var),
    #[error("not a decision-DNNF: {0}")]
    NotDecisionDnnf(Violation),
    #[error("not decomposable: {0}")]
    NotDecomposable(Violation),
}

/// First gate found breaking a structural property.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub gate: GateId,
    pub reason: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "gate {}: {}", self.gate, self.reason)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NnfCircuit {
    gates: Vec<Gate>,
    vars: Vec<VertexSet>,
    num_vars: Var,
}

impl NnfCircuit {
    /// Validates topological order; `num_vars` is raised to the largest
    /// variable used.
    pub fn new(gates: Vec<Gate>, num_vars: Var) -> Result<Self, CircuitError> {
        if gates.is_empty() {
            return Err(CircuitError::Empty);
        }
        let mut vars: Vec<VertexSet> = Vec::with_capacity(gates.len());
        let mut max_var = num_vars;
        for (i, g) in gates.iter().enumerate() {
            let mut bad = None;
            g.for_each_child(|c| {
                if c >= i {
                    bad.get_or_insert(c);
                }
            });
            if let Some(child) = bad {
                return Err(CircuitError::BadChild { gate: i, child });
            }
            let mut set = VertexSet::new();
            match g {
                Gate::Lit(l) => {
                    set.insert(l.var());
                }
                Gate::Decision { var, .. } => {
                    set.insert(*var);
                }
                _ => {}
            }
            g.for_each_child(|c| set.extend(vars[c].iter().copied()));
            if let Some(&m) = set.last() {
                max_var = max_var.max(m);
            }
            vars.push(set);
        }
        Ok(NnfCircuit {
            gates,
            vars,
            num_vars: max_var,
        })
    }

    pub fn constant(value: bool) -> Self {
        NnfCircuit::new(vec![if value { Gate::True } else { Gate::False }], 0)
            .expect("single gate")
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn gate(&self, id: GateId) -> &Gate {
        &self.gates[id]
    }

    pub fn output(&self) -> GateId {
        self.gates.len() - 1
    }

    pub fn num_vars(&self) -> Var {
        self.num_vars
    }

    /// `var(D_v)`.
    pub fn gate_vars(&self, id: GateId) -> &VertexSet {
        &self.vars[id]
    }

    /// Variables below the output gate.
    pub fn vars(&self) -> &VertexSet {
        &self.vars[self.output()]
    }

    /// Variables of every literal or decision in the circuit.
    pub fn all_vars(&self) -> VertexSet {
        self.vars.iter().flatten().copied().collect()
    }

    pub fn gate_count(&self) -> usize {
        self.gates.len()
    }

    /// Child edges, counting two per decision gate.
    pub fn edge_count(&self) -> usize {
        self.gates
            .iter()
            .map(|g| match g {
                Gate::And(c) | Gate::Or(c) => c.len(),
                Gate::Decision { .. } => 2,
                _ => 0,
            })
            .sum()
    }

    /// Gate count of the plain NNF expansion: each decision gate is one
    /// ∨-gate and two binary ∧-gates, plus the literal inputs `x` and `¬x`
    /// (shared with existing literal gates).
    pub fn nnf_size(&self) -> usize {
        let mut literals: BTreeSet<Literal> = BTreeSet::new();
        let mut other = 0;
        for g in &self.gates {
            match g {
                Gate::Lit(l) => {
                    literals.insert(*l);
                }
                Gate::Decision { var, .. } => {
                    other += 3;
                    literals.insert(Literal::pos(*var));
                    literals.insert(Literal::neg(*var));
                }
                _ => other += 1,
            }
        }
        other + literals.len()
    }

    /// Largest fanin among explicit ∧-gates.
    pub fn max_and_fanin(&self) -> usize {
        self.gates
            .iter()
            .filter_map(|g| match g {
                Gate::And(c) => Some(c.len()),
                _ => None,
            })
            .max()
            .unwrap_or(0)
    }

    /// Every ∧-gate (and the implicit ∧-gates of decision gates) has
    /// pairwise variable-disjoint inputs.
    pub fn check_decomposable(&self) -> Result<(), Violation> {
        for (i, g) in self.gates.iter().enumerate() {
            match g {
                Gate::And(children) => {
                    let distinct: BTreeSet<GateId> = children.iter().copied().collect();
                    let mut seen = VertexSet::new();
                    for c in distinct {
                        if let Some(&v) = self.vars[c].intersection(&seen).next() {
                            return Err(Violation {
                                gate: i,
                                reason: format!("inputs share variable {v}"),
                            });
                        }
                        seen.extend(self.vars[c].iter().copied());
                    }
                }
                Gate::Decision { var, hi, lo } => {
                    if self.vars[*hi].contains(var) || self.vars[*lo].contains(var) {
                        return Err(Violation {
                            gate: i,
                            reason: format!("decision variable {var} occurs below the decision"),
                        });
                    }
                }
                _ => {}
            }
        }
        Ok(())
    }

    /// Does `child` contain the literal `lit` as a conjunct?
    fn guarded_by(&self, child: GateId, lit: Literal) -> bool {
        match &self.gates[child] {
            Gate::Lit(l) => *l == lit,
            Gate::And(cs) => cs.iter().any(|&c| self.gates[c] == Gate::Lit(lit)),
            _ => false,
        }
    }

    /// The variable a plain ∨-gate decides on, if it has the shape
    /// `(x ∧ …) ∨ (¬x ∧ …)`.
    pub fn decision_shape(&self, id: GateId) -> Option<Var> {
        let Gate::Or(children) = &self.gates[id] else {
            return None;
        };
        let [a, b] = children.as_slice() else {
            return None;
        };
        if a == b {
            return None;
        }
        let candidates: Vec<Literal> = match &self.gates[*a] {
            Gate::Lit(l) => vec![*l],
            Gate::And(cs) => cs
                .iter()
                .filter_map(|&c| match self.gates[c] {
                    Gate::Lit(l) => Some(l),
                    _ => None,
                })
                .collect(),
            _ => vec![],
        };
        candidates
            .into_iter()
            .find(|l| self.guarded_by(*b, l.negated()))
            .map(Literal::var)
    }

    /// Every ∨-gate is a decision gate.
    pub fn check_decision(&self) -> Result<(), Violation> {
        for (i, g) in self.gates.iter().enumerate() {
            if matches!(g, Gate::Or(_)) && self.decision_shape(i).is_none() {
                return Err(Violation {
                    gate: i,
                    reason: "∨-gate is not of the form (x ∧ a) ∨ (¬x ∧ b)".into(),
                });
            }
        }
        Ok(())
    }

    fn check_cap(&self, vars: &VertexSet, cap: usize) -> Result<(), CircuitError> {
        if vars.len() > cap.min(crate::truth_table::MAX_TABLE_VARS) {
            return Err(CircuitError::CapExceeded {
                vars: vars.len(),
                cap,
            });
        }
        Ok(())
    }

    /// Truth table of every gate over `space`.
    pub fn gate_tables(&self, space: &TableSpace) -> Vec<TruthTable> {
        let mut tables: Vec<TruthTable> = Vec::with_capacity(self.gates.len());
        for g in &self.gates {
            let t = match g {
                Gate::Lit(l) => space.literal(*l),
                Gate::True => space.constant(true),
                Gate::False => space.constant(false),
                Gate::And(cs) => cs.iter().fold(space.constant(true), |mut acc, &c| {
                    acc.and_assign(&tables[c]);
                    acc
                }),
                Gate::Or(cs) => cs.iter().fold(space.constant(false), |mut acc, &c| {
                    acc.or_assign(&tables[c]);
                    acc
                }),
                Gate::Decision { var, hi, lo } => {
                    let mut a = space.literal(Literal::pos(*var));
                    a.and_assign(&tables[*hi]);
                    let mut b = space.literal(Literal::neg(*var));
                    b.and_assign(&tables[*lo]);
                    a.or_assign(&b);
                    a
                }
            };
            tables.push(t);
        }
        tables
    }

    /// Truth table of the output over `space`.
    pub fn output_table(&self, space: &TableSpace) -> TruthTable {
        self.gate_tables(space).pop().expect("non-empty circuit")
    }

    /// Semantic determinism by enumeration: the inputs of every ∨-gate are
    /// pairwise contradictory. Returns the first offending gate.
    pub fn check_deterministic(&self, cap: usize) -> Result<Result<(), Violation>, CircuitError> {
        let vars = self.all_vars();
        self.check_cap(&vars, cap)?;
        let space = TableSpace::new(&vars);
        let tables = self.gate_tables(&space);
        for (i, g) in self.gates.iter().enumerate() {
            let branches: Vec<TruthTable> = match g {
                Gate::Or(cs) => {
                    let distinct: BTreeSet<GateId> = cs.iter().copied().collect();
                    distinct.into_iter().map(|c| tables[c].clone()).collect()
                }
                Gate::Decision { var, hi, lo } => vec![
                    space.literal(Literal::pos(*var)).and(&tables[*hi]),
                    space.literal(Literal::neg(*var)).and(&tables[*lo]),
                ],
                _ => continue,
            };
            for a in 0..branches.len() {
                for b in a + 1..branches.len() {
                    if !branches[a].and(&branches[b]).is_zero() {
                        return Ok(Err(Violation {
                            gate: i,
                            reason: format!("inputs {a} and {b} are jointly satisfiable"),
                        }));
                    }
                }
            }
        }
        Ok(Ok(()))
    }

    pub fn evaluate(&self, tau: &Assignment) -> Result<bool, CircuitError> {
        let mut values: Vec<bool> = Vec::with_capacity(self.gates.len());
        for g in &self.gates {
            let v = match g {
                Gate::Lit(l) => l.eval(tau.get(l.var()).ok_or(CircuitError::Unbound(l.var()))?),
                Gate::True => true,
                Gate::False => false,
                Gate::And(cs) => cs.iter().all(|&c| values[c]),
                Gate::Or(cs) => cs.iter().any(|&c| values[c]),
                Gate::Decision { var, hi, lo } => {
                    if tau.get(*var).ok_or(CircuitError::Unbound(*var))? {
                        values[*hi]
                    } else {
                        values[*lo]
                    }
                }
            };
            values.push(v);
        }
        Ok(values[self.output()])
    }

    /// `D[τ]`: bound literals become constants, which are then folded. Each
    /// original gate yields at most one new gate.
    pub fn condition(&self, tau: &Assignment) -> NnfCircuit {
        if tau.is_empty() {
            return self.clone();
        }
        let mut b = CircuitBuilder::new();
        let mut map: Vec<GateId> = Vec::with_capacity(self.gates.len());
        for g in &self.gates {
            let id = match g {
                Gate::Lit(l) => match tau.get(l.var()) {
                    Some(v) => b.constant(l.eval(v)),
                    None => b.literal(*l),
                },
                Gate::True => b.constant(true),
                Gate::False => b.constant(false),
                Gate::And(cs) => {
                    let mapped: Vec<GateId> = cs.iter().map(|&c| map[c]).collect();
                    if mapped.iter().any(|&c| b.is_false(c)) {
                        b.constant(false)
                    } else {
                        let kept: Vec<GateId> = mapped.into_iter().filter(|&c| !b.is_true(c)).collect();
                        match kept.as_slice() {
                            [] => b.constant(true),
                            [only] => *only,
                            _ => b.push(Gate::And(kept)),
                        }
                    }
                }
                Gate::Or(cs) => {
                    let mapped: Vec<GateId> = cs.iter().map(|&c| map[c]).collect();
                    if mapped.iter().any(|&c| b.is_true(c)) {
                        b.constant(true)
                    } else {
                        let kept: Vec<GateId> = mapped.into_iter().filter(|&c| !b.is_false(c)).collect();
                        match kept.as_slice() {
                            [] => b.constant(false),
                            [only] => *only,
                            _ => b.push(Gate::Or(kept)),
                        }
                    }
                }
                Gate::Decision { var, hi, lo } => match tau.get(*var) {
                    Some(true) => map[*hi],
                    Some(false) => map[*lo],
                    None => b.push(Gate::Decision {
                        var: *var,
                        hi: map[*hi],
                        lo: map[*lo],
                    }),
                },
            };
            map.push(id);
        }
        b.finish(map[self.output()], self.num_vars)
    }

    fn require_dec_dnnf(&self) -> Result<(), CircuitError> {
        self.check_decomposable().map_err(CircuitError::NotDecomposable)?;
        self.check_decision().map_err(CircuitError::NotDecisionDnnf)
    }

    /// Model count over `domain` for a decision-DNNF, in one bottom-up pass.
    pub fn count_models(&self, domain: &VertexSet) -> Result<BigUint, CircuitError> {
        self.require_dec_dnnf()?;
        if let Some(&v) = self.vars().iter().find(|v| !domain.contains(v)) {
            return Err(CircuitError::OutsideDomain(v));
        }
        let width = |id: GateId| self.vars[id].len();
        let mut counts: Vec<BigUint> = Vec::with_capacity(self.gates.len());
        for (i, g) in self.gates.iter().enumerate() {
            let n = match g {
                Gate::Lit(_) | Gate::True => BigUint::one(),
                Gate::False => BigUint::zero(),
                Gate::And(cs) => {
                    let distinct: BTreeSet<GateId> = cs.iter().copied().collect();
                    distinct.into_iter().map(|c| counts[c].clone()).product()
                }
                // children of a decision-shaped ∨ are disjoint
                Gate::Or(cs) => cs
                    .iter()
                    .map(|&c| &counts[c] << (width(i) - width(c)))
                    .sum(),
                Gate::Decision { hi, lo, .. } => {
                    (&counts[*hi] << (width(i) - 1 - width(*hi)))
                        + (&counts[*lo] << (width(i) - 1 - width(*lo)))
                }
            };
            counts.push(n);
        }
        let free = domain.len() - self.vars().len();
        Ok(counts.pop().expect("non-empty circuit") << free)
    }

    /// Satisfiability of a DNNF with a witness binding every variable below
    /// the output (unconstrained ones set to false).
    pub fn is_satisfiable(&self) -> Result<Option<Assignment>, CircuitError> {
        self.check_decomposable().map_err(CircuitError::NotDecomposable)?;
        let mut sat: Vec<bool> = Vec::with_capacity(self.gates.len());
        for g in &self.gates {
            let s = match g {
                Gate::Lit(_) | Gate::True => true,
                Gate::False => false,
                Gate::And(cs) => cs.iter().all(|&c| sat[c]),
                Gate::Or(cs) => cs.iter().any(|&c| sat[c]),
                Gate::Decision { hi, lo, .. } => sat[*hi] || sat[*lo],
            };
            sat.push(s);
        }
        if !sat[self.output()] {
            return Ok(None);
        }
        let mut witness = Assignment::new();
        let mut visited = vec![false; self.gates.len()];
        let mut stack = vec![self.output()];
        while let Some(id) = stack.pop() {
            if std::mem::replace(&mut visited[id], true) {
                continue;
            }
            match &self.gates[id] {
                Gate::Lit(l) => {
                    witness.set(l.var(), l.is_positive());
                }
                Gate::And(cs) => stack.extend(cs.iter().copied()),
                Gate::Or(cs) => {
                    stack.push(*cs.iter().find(|&&c| sat[c]).expect("some input is satisfiable"))
                }
                Gate::Decision { var, hi, lo } => {
                    if sat[*hi] {
                        witness.set(*var, true);
                        stack.push(*hi);
                    } else {
                        witness.set(*var, false);
                        stack.push(*lo);
                    }
                }
                Gate::True | Gate::False => {}
            }
        }
        for &v in self.vars() {
            if !witness.binds(v) {
                witness.set(v, false);
            }
        }
        Ok(Some(witness))
    }

    /// Every ∧-gate is binary and splits its inputs along some vtree node.
    /// The implicit `x ∧ hi` and `¬x ∧ lo` gates of decisions are included.
    pub fn respects_vtree(&self, vtree: &Vtree) -> Result<(), Violation> {
        let leaves = vtree.leaves();
        if let Some(&v) = self.all_vars().iter().find(|v| !leaves.contains(v)) {
            return Err(Violation {
                gate: self.output(),
                reason: format!("variable {v} is not a vtree leaf"),
            });
        }
        let sets = vtree.leaf_sets();
        let splits: Vec<(&VertexSet, &VertexSet)> = vtree
            .nodes()
            .iter()
            .filter_map(|n| match *n {
                Node::Internal(a, b) => Some((&sets[a], &sets[b])),
                Node::Leaf(_) => None,
            })
            .collect();
        let respects = |a: &VertexSet, b: &VertexSet| {
            splits.iter().any(|(l, r)| {
                (a.is_subset(l) && b.is_subset(r)) || (a.is_subset(r) && b.is_subset(l))
            })
        };
        for (i, g) in self.gates.iter().enumerate() {
            match g {
                Gate::And(cs) => {
                    let [a, b] = cs.as_slice() else {
                        return Err(Violation {
                            gate: i,
                            reason: format!("∧-gate has {} inputs, not 2", cs.len()),
                        });
                    };
                    if !respects(&self.vars[*a], &self.vars[*b]) {
                        return Err(Violation {
                            gate: i,
                            reason: "no vtree node splits the inputs".into(),
                        });
                    }
                }
                Gate::Decision { var, hi, lo } => {
                    let x = VertexSet::from([*var]);
                    if !respects(&x, &self.vars[*hi]) || !respects(&x, &self.vars[*lo]) {
                        return Err(Violation {
                            gate: i,
                            reason: format!("no vtree node separates decision variable {var}"),
                        });
                    }
                }
                _ => {}
            }
        }
        Ok(())
    }

    /// Truth-table comparison against a CNF over `var(F) ∪ var(D)`.
    pub fn equivalent_to_formula(&self, f: &CnfFormula, cap: usize) -> Result<bool, CircuitError> {
        let mut vars = f.vars();
        vars.extend(self.all_vars());
        self.check_cap(&vars, cap)?;
        let space = TableSpace::new(&vars);
        Ok(self.output_table(&space) == space.formula(f))
    }
}

/// Appends gates in topological order, sharing constants and literals.
#[derive(Debug, Clone, Default)]
pub struct CircuitBuilder {
    gates: Vec<Gate>,
    true_gate: Option<GateId>,
    false_gate: Option<GateId>,
    literals: HashMap<Literal, GateId>,
}

impl CircuitBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.gates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    pub fn gate(&self, id: GateId) -> &Gate {
        &self.gates[id]
    }

    /// Appends without sharing. Panics on forward references.
    pub fn push(&mut self, gate: Gate) -> GateId {
        let id = self.gates.len();
        gate.for_each_child(|c| assert!(c < id, "child {c} is not an earlier gate"));
        self.gates.push(gate);
        id
    }

    pub fn constant(&mut self, value: bool) -> GateId {
        let slot = if value { self.true_gate } else { self.false_gate };
        if let Some(id) = slot {
            return id;
        }
        let id = self.push(if value { Gate::True } else { Gate::False });
        if value {
            self.true_gate = Some(id);
        } else {
            self.false_gate = Some(id);
        }
        id
    }

    pub fn literal(&mut self, lit: Literal) -> GateId {
        if let Some(&id) = self.literals.get(&lit) {
            return id;
        }
        let id = self.push(Gate::Lit(lit));
        self.literals.insert(lit, id);
        id
    }

    pub fn is_true(&self, id: GateId) -> bool {
        self.gates[id] == Gate::True
    }

    pub fn is_false(&self, id: GateId) -> bool {
        self.gates[id] == Gate::False
    }

    /// Keeps the gates reachable from `root`, renumbered so `root` is last.
    pub fn finish(self, root: GateId, num_vars: Var) -> NnfCircuit {
        let mut live = vec![false; self.gates.len()];
        live[root] = true;
        for i in (0..=root).rev() {
            if live[i] {
                self.gates[i].for_each_child(|c| live[c] = true);
            }
        }
        let mut renumber = vec![usize::MAX; self.gates.len()];
        let mut gates = Vec::new();
        for (i, g) in self.gates.into_iter().enumerate().take(root + 1) {
            if !live[i] {
                continue;
            }
            renumber[i] = gates.len();
            gates.push(match g {
                Gate::And(cs) => Gate::And(cs.into_iter().map(|c| renumber[c]).collect()),
                Gate::Or(cs) => Gate::Or(cs.into_iter().map(|c| renumber[c]).collect()),
                Gate::Decision { var, hi, lo } => Gate::Decision {
                    var,
                    hi: renumber[hi],
                    lo: renumber[lo],
                },
                other => other,
            });
        }
        NnfCircuit::new(gates, num_vars).expect("builder output is topological")
    }
}
