//! Bit-parallel truth tables over a small, fixed variable list.
//!
//! Row `i` of a table is the assignment giving the `p`-th variable of the
//! space the value of bit `p` of `i`. Used as the enumeration oracle for
//! equivalence and determinism checks.

use std::collections::{BTreeSet, HashMap};

use crate::cnf::{CnfFormula, Literal, Var};

/// Hard ceiling on table width regardless of caller caps.
pub const MAX_TABLE_VARS: usize = 26;

const PATTERNS: [u64; 6] = [
    0xAAAA_AAAA_AAAA_AAAA,
    0xCCCC_CCCC_CCCC_CCCC,
    0xF0F0_F0F0_F0F0_F0F0,
    0xFF00_FF00_FF00_FF00,
    0xFFFF_0000_FFFF_0000,
    0xFFFF_FFFF_0000_0000,
];

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruthTable {
    words: Vec<u64>,
}

impl TruthTable {
    pub fn count_ones(&self) -> u64 {
        self.words.iter().map(|w| u64::from(w.count_ones())).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn row(&self, i: usize) -> bool {
        (self.words[i / 64] >> (i % 64)) & 1 == 1
    }

    pub fn and_assign(&mut self, other: &TruthTable) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= b;
        }
    }

    pub fn or_assign(&mut self, other: &TruthTable) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }

    pub fn and(&self, other: &TruthTable) -> TruthTable {
        let mut out = self.clone();
        out.and_assign(other);
        out
    }

    /// First row set to one.
    pub fn first_one(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .find(|(_, &w)| w != 0)
            .map(|(i, w)| i * 64 + w.trailing_zeros() as usize)
    }
}

/// The variable list a family of tables is indexed by.
#[derive(Debug, Clone)]
pub struct TableSpace {
    vars: Vec<Var>,
    position: HashMap<Var, usize>,
    words: usize,
    last_mask: u64,
}

impl TableSpace {
    /// Panics above [`MAX_TABLE_VARS`]; callers enforce their own caps first.
    pub fn new(vars: &BTreeSet<Var>) -> Self {
        assert!(vars.len() <= MAX_TABLE_VARS, "truth table too wide");
        let vars: Vec<Var> = vars.iter().copied().collect();
        let position = vars.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let rows = 1usize << vars.len();
        let words = rows.div_ceil(64);
        let last_mask = if rows >= 64 { u64::MAX } else { (1u64 << rows) - 1 };
        TableSpace {
            vars,
            position,
            words,
            last_mask,
        }
    }

    pub fn vars(&self) -> &[Var] {
        &self.vars
    }

    pub fn rows(&self) -> usize {
        1 << self.vars.len()
    }

    pub fn constant(&self, value: bool) -> TruthTable {
        let mut words = vec![if value { u64::MAX } else { 0 }; self.words];
        *words.last_mut().expect("at least one word") &= self.last_mask;
        TruthTable { words }
    }

    /// Panics if the literal's variable is not in the space.
    pub fn literal(&self, lit: Literal) -> TruthTable {
        let p = self.position[&lit.var()];
        let mut words: Vec<u64> = (0..self.words)
            .map(|w| {
                let word = if p < 6 {
                    PATTERNS[p]
                } else if (w >> (p - 6)) & 1 == 1 {
                    u64::MAX
                } else {
                    0
                };
                if lit.is_positive() {
                    word
                } else {
                    !word
                }
            })
            .collect();
        *words.last_mut().expect("at least one word") &= self.last_mask;
        TruthTable { words }
    }

    pub fn formula(&self, f: &CnfFormula) -> TruthTable {
        let mut acc = self.constant(true);
        for c in f.clauses() {
            let mut clause = self.constant(false);
            for &l in c.literals() {
                clause.or_assign(&self.literal(l));
            }
            acc.and_assign(&clause);
        }
        acc
    }

    /// Value of variable `v` in row `row`.
    pub fn value(&self, row: usize, v: Var) -> bool {
        (row >> self.position[&v]) & 1 == 1
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn literal_tables_match_row_semantics() {
        for n in [1usize, 3, 6, 7, 9] {
            let vars: BTreeSet<Var> = (1..=n as Var).collect();
            let space = TableSpace::new(&vars);
            for &v in &vars {
                let t = space.literal(Literal::pos(v));
                let nt = space.literal(Literal::neg(v));
                for row in 0..space.rows() {
                    assert_eq!(t.row(row), space.value(row, v));
                    assert_eq!(nt.row(row), !space.value(row, v));
                }
                assert_eq!(t.count_ones(), (space.rows() / 2) as u64);
            }
        }
    }

    #[test]
    fn formula_table_counts_models() {
        let f = CnfFormula::from_dimacs_clauses(&[&[1, 2], &[3, 4], &[2, 5], &[4, 5], &[2, 4, 5]]);
        let space = TableSpace::new(&f.vars());
        assert_eq!(space.formula(&f).count_ones(), 13);
        let empty = TableSpace::new(&BTreeSet::new());
        assert_eq!(empty.constant(true).count_ones(), 1);
        assert_eq!(empty.formula(&CnfFormula::default()).count_ones(), 1);
    }
}
