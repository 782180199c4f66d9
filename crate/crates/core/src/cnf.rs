//! CNF formulas, partial assignments and restriction.
//!
//! Variables are DIMACS-style positive integers. Clauses and formulas use set
//! semantics: duplicate literals and duplicate clauses collapse, and
//! tautological clauses are not representable.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigUint;
use thiserror::Error;

use crate::hypergraph::{EliminationOrder, Hypergraph, HypergraphError};

/// A variable identifier, always `>= 1`.
pub type Var = u32;

/// Default cap on the number of variables enumerated by [`brute_force_count`].
pub const DEFAULT_BRUTE_FORCE_CAP: usize = 24;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CnfError {
    #[error("variable ids start at 1, got 0")]
    ZeroVariable,
    #[error("clause contains both {0} and -{0}")]
    Tautology(Var),
    #[error("variable {0} is not bound by the assignment")]
    Unbound(Var),
    #[error("refusing to enumerate {vars} variables (cap is {cap})")]
    CapExceeded { vars: usize, cap: usize },
    #[error("formula variable {0} is outside the counting domain")]
    OutsideDomain(Var),
}

/// A variable or its negation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Literal {
    var: Var,
    positive: bool,
}

impl Literal {
    pub fn new(var: Var, positive: bool) -> Result<Self, CnfError> {
        if var == 0 {
            return Err(CnfError::ZeroVariable);
        }
        Ok(Literal { var, positive })
    }

    pub fn pos(var: Var) -> Self {
        Literal::new(var, true).expect("variable ids start at 1")
    }

    pub fn neg(var: Var) -> Self {
        Literal::new(var, false).expect("variable ids start at 1")
    }

    /// Builds a literal from a signed DIMACS integer.
    pub fn from_dimacs(value: i64) -> Result<Self, CnfError> {
        if value == 0 || value.unsigned_abs() > u64::from(Var::MAX) {
            return Err(CnfError::ZeroVariable);
        }
        Literal::new(value.unsigned_abs() as Var, value > 0)
    }

    pub fn to_dimacs(self) -> i64 {
        if self.positive {
            i64::from(self.var)
        } else {
            -i64::from(self.var)
        }
    }

    pub fn var(self) -> Var {
        self.var
    }

    pub fn is_positive(self) -> bool {
        self.positive
    }

    pub fn negated(self) -> Self {
        Literal {
            var: self.var,
            positive: !self.positive,
        }
    }

    /// Value of the literal under a variable value.
    pub fn eval(self, value: bool) -> bool {
        value == self.positive
    }
}

impl fmt::Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_dimacs())
    }
}

/// A non-tautological set of literals, stored sorted by variable.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Clause {
    literals: Vec<Literal>,
}

impl Clause {
    /// Collapses duplicate literals; fails on a tautology.
    pub fn new<I: IntoIterator<Item = Literal>>(literals: I) -> Result<Self, CnfError> {
        let mut literals: Vec<Literal> = literals.into_iter().collect();
        literals.sort();
        literals.dedup();
        for pair in literals.windows(2) {
            if pair[0].var == pair[1].var {
                return Err(CnfError::Tautology(pair[0].var));
            }
        }
        Ok(Clause { literals })
    }

    /// Convenience constructor from signed DIMACS integers.
    pub fn from_dimacs(values: &[i64]) -> Result<Self, CnfError> {
        let lits = values
            .iter()
            .map(|&v| Literal::from_dimacs(v))
            .collect::<Result<Vec<_>, _>>()?;
        Clause::new(lits)
    }

    pub fn empty() -> Self {
        Clause::default()
    }

    pub fn literals(&self) -> &[Literal] {
        &self.literals
    }

    pub fn len(&self) -> usize {
        self.literals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.literals.is_empty()
    }

    pub fn vars(&self) -> BTreeSet<Var> {
        self.literals.iter().map(|l| l.var).collect()
    }

    pub fn contains_var(&self, var: Var) -> bool {
        self.literal_of(var).is_some()
    }

    pub fn literal_of(&self, var: Var) -> Option<Literal> {
        self.literals
            .binary_search_by_key(&var, |l| l.var)
            .ok()
            .map(|i| self.literals[i])
    }

    /// True if some literal is set true by `tau`. Unbound literals count as
    /// not satisfied.
    pub fn satisfied_by(&self, tau: &Assignment) -> bool {
        self.literals
            .iter()
            .any(|l| tau.get(l.var).is_some_and(|v| l.eval(v)))
    }

    /// The unique assignment of `var(C)` that falsifies this clause.
    pub fn falsifying_assignment(&self) -> Assignment {
        self.literals.iter().map(|l| (l.var, !l.positive)).collect()
    }

    /// The falsifying assignment restricted to the variables strictly above
    /// `cutoff` in `order`. Variables missing from the order are kept.
    pub fn falsifying_assignment_above(&self, cutoff: Var, order: &EliminationOrder) -> Assignment {
        let bound = order.rank(cutoff);
        self.literals
            .iter()
            .filter(|l| match (bound, order.rank(l.var)) {
                (Some(b), Some(r)) => r > b,
                _ => true,
            })
            .map(|l| (l.var, !l.positive))
            .collect()
    }
}

impl fmt::Display for Clause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, l) in self.literals.iter().enumerate() {
            if i > 0 {
                write!(f, " ∨ ")?;
            }
            if l.positive {
                write!(f, "{}", l.var)?;
            } else {
                write!(f, "¬{}", l.var)?;
            }
        }
        write!(f, ")")
    }
}

/// A set of clauses. Clause ids are positions in first-occurrence order;
/// equality ignores that order.
#[derive(Debug, Clone, Default)]
pub struct CnfFormula {
    clauses: Vec<Clause>,
    declared_vars: Var,
}

impl PartialEq for CnfFormula {
    fn eq(&self, other: &Self) -> bool {
        let mut a: Vec<&Clause> = self.clauses.iter().collect();
        let mut b: Vec<&Clause> = other.clauses.iter().collect();
        a.sort();
        b.sort();
        a == b
    }
}

impl Eq for CnfFormula {}

impl CnfFormula {
    /// Builds a formula; duplicate clauses collapse keeping the first
    /// occurrence.
    pub fn new<I: IntoIterator<Item = Clause>>(clauses: I) -> Self {
        let mut seen = BTreeSet::new();
        let mut kept = Vec::new();
        for c in clauses {
            if seen.insert(c.clone()) {
                kept.push(c);
            }
        }
        let max = kept
            .iter()
            .flat_map(|c| c.literals.iter().map(|l| l.var))
            .max()
            .unwrap_or(0);
        CnfFormula {
            clauses: kept,
            declared_vars: max,
        }
    }

    /// Builds a formula from signed DIMACS clauses. Panics on tautologies;
    /// intended for fixtures.
    pub fn from_dimacs_clauses(clauses: &[&[i64]]) -> Self {
        CnfFormula::new(
            clauses
                .iter()
                .map(|c| Clause::from_dimacs(c).expect("fixture clause must be well formed")),
        )
    }

    /// Raises the declared variable count (the DIMACS header value). Never
    /// drops below the largest variable in use.
    pub fn with_declared_vars(mut self, n: Var) -> Self {
        self.declared_vars = self.declared_vars.max(n);
        self
    }

    pub fn declared_vars(&self) -> Var {
        self.declared_vars
    }

    pub fn clauses(&self) -> &[Clause] {
        &self.clauses
    }

    pub fn clause(&self, id: usize) -> &Clause {
        &self.clauses[id]
    }

    pub fn len(&self) -> usize {
        self.clauses.len()
    }

    pub fn is_empty(&self) -> bool {
        self.clauses.is_empty()
    }

    pub fn vars(&self) -> BTreeSet<Var> {
        self.clauses
            .iter()
            .flat_map(|c| c.literals.iter().map(|l| l.var))
            .collect()
    }

    /// `Σ_C |var(C)|`.
    pub fn size(&self) -> usize {
        self.clauses.iter().map(Clause::len).sum()
    }

    pub fn has_empty_clause(&self) -> bool {
        self.clauses.iter().any(Clause::is_empty)
    }

    pub fn is_monotone(&self) -> bool {
        self.clauses
            .iter()
            .all(|c| c.literals.iter().all(|l| l.positive))
    }

    /// Number of clauses mentioning `var`.
    pub fn occurrences(&self, var: Var) -> usize {
        self.clauses.iter().filter(|c| c.contains_var(var)).count()
    }

    /// `F[τ]`: satisfied clauses are removed, falsified literals deleted.
    /// A clause whose literals are all falsified stays as the empty clause.
    pub fn restrict(&self, tau: &Assignment) -> CnfFormula {
        let clauses = self.clauses.iter().filter(|c| !c.satisfied_by(tau)).map(|c| Clause {
            literals: c
                .literals
                .iter()
                .copied()
                .filter(|l| !tau.binds(l.var))
                .collect(),
        });
        CnfFormula::new(clauses).with_declared_vars(self.declared_vars)
    }

    /// Evaluates the formula under an assignment binding every variable.
    pub fn evaluate(&self, tau: &Assignment) -> Result<bool, CnfError> {
        let mut all = true;
        for c in &self.clauses {
            let mut sat = false;
            for l in &c.literals {
                match tau.get(l.var) {
                    Some(v) => sat |= l.eval(v),
                    None => return Err(CnfError::Unbound(l.var)),
                }
            }
            all &= sat;
        }
        Ok(all)
    }

    /// `H(F) = {var(C) | C ∈ F}`. Fails if `F` holds the empty clause.
    pub fn hypergraph(&self) -> Result<Hypergraph, HypergraphError> {
        Hypergraph::new(self.clauses.iter().map(Clause::vars))
    }
}

impl fmt::Display for CnfFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.clauses.is_empty() {
            return write!(f, "⊤");
        }
        for (i, c) in self.clauses.iter().enumerate() {
            if i > 0 {
                write!(f, " ∧ ")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

/// A partial map from variables to truth values.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct Assignment {
    bindings: BTreeMap<Var, bool>,
}

impl Assignment {
    pub fn new() -> Self {
        Self::default()
    }

    /// Total assignment over `vars` read from the bits of `mask`: the i-th
    /// variable (in iteration order) takes bit i.
    pub fn from_bits<'a, I: IntoIterator<Item = &'a Var>>(vars: I, mask: u64) -> Self {
        vars.into_iter()
            .enumerate()
            .map(|(i, &v)| (v, (mask >> i) & 1 == 1))
            .collect()
    }

    pub fn get(&self, var: Var) -> Option<bool> {
        self.bindings.get(&var).copied()
    }

    pub fn binds(&self, var: Var) -> bool {
        self.bindings.contains_key(&var)
    }

    pub fn set(&mut self, var: Var, value: bool) -> Option<bool> {
        self.bindings.insert(var, value)
    }

    pub fn with(mut self, var: Var, value: bool) -> Self {
        self.bindings.insert(var, value);
        self
    }

    pub fn len(&self) -> usize {
        self.bindings.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bindings.is_empty()
    }

    pub fn domain(&self) -> BTreeSet<Var> {
        self.bindings.keys().copied().collect()
    }

    pub fn iter(&self) -> impl Iterator<Item = (Var, bool)> + '_ {
        self.bindings.iter().map(|(&k, &v)| (k, v))
    }

    /// `τ|_Y`.
    pub fn restrict_to(&self, vars: &BTreeSet<Var>) -> Assignment {
        self.iter().filter(|(v, _)| vars.contains(v)).collect()
    }

    /// `τ ≃ τ'`: agreement on the shared domain.
    pub fn compatible(&self, other: &Assignment) -> bool {
        self.iter()
            .all(|(v, b)| other.get(v).is_none_or(|o| o == b))
    }

    /// `τ ∪ τ'`, defined only for compatible assignments.
    pub fn union(&self, other: &Assignment) -> Option<Assignment> {
        if !self.compatible(other) {
            return None;
        }
        let mut out = self.clone();
        out.bindings.extend(other.iter());
        Some(out)
    }
}

impl FromIterator<(Var, bool)> for Assignment {
    fn from_iter<T: IntoIterator<Item = (Var, bool)>>(iter: T) -> Self {
        Assignment {
            bindings: iter.into_iter().collect(),
        }
    }
}

impl fmt::Display for Assignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, (v, b)) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}↦{}", v, u8::from(b))?;
        }
        write!(f, "}}")
    }
}

/// Counts the models of `formula` over `domain` by enumerating every
/// assignment. Refuses domains larger than `cap`.
pub fn brute_force_count(
    formula: &CnfFormula,
    domain: &BTreeSet<Var>,
    cap: usize,
) -> Result<BigUint, CnfError> {
    if domain.len() > cap.min(63) {
        return Err(CnfError::CapExceeded {
            vars: domain.len(),
            cap,
        });
    }
    let position: BTreeMap<Var, usize> = domain.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    // each clause as (positive mask, negative mask) over domain positions
    let mut masks = Vec::with_capacity(formula.len());
    for c in formula.clauses() {
        let (mut pos, mut neg) = (0u64, 0u64);
        for l in c.literals() {
            let bit = 1u64 << position.get(&l.var()).ok_or(CnfError::OutsideDomain(l.var()))?;
            if l.is_positive() {
                pos |= bit;
            } else {
                neg |= bit;
            }
        }
        masks.push((pos, neg));
    }
    let mut count: u64 = 0;
    for bits in 0..(1u64 << domain.len()) {
        if masks.iter().all(|&(p, n)| bits & p != 0 || !bits & n != 0) {
            count += 1;
        }
    }
    Ok(BigUint::from(count))
}
