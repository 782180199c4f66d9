//! `(Y, Z)`-rectangles and exact minimum rectangle covers of small functions.
//!
//! Assignments of a variable list are bitmasks: bit `p` is the value of the
//! `p`-th variable.

use std::collections::{BTreeSet, HashSet};

use super::LabError;
use crate::cnf::{CnfFormula, Var};
use crate::hypergraph::VertexSet;
use crate::truth_table::TableSpace;

/// Largest `|Y ∪ Z|` accepted by the cover search.
pub const RECTANGLE_VAR_CAP: usize = 8;

/// A Boolean function given by its satisfying set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExplicitFunction {
    vars: Vec<Var>,
    sat: BTreeSet<u64>,
}

impl ExplicitFunction {
    pub fn new(vars: &VertexSet, sat: BTreeSet<u64>) -> Result<Self, LabError> {
        cap(vars.len())?;
        let limit = 1u64 << vars.len();
        Ok(ExplicitFunction {
            vars: vars.iter().copied().collect(),
            sat: sat.into_iter().filter(|&m| m < limit).collect(),
        })
    }

    pub fn constant(vars: &VertexSet, value: bool) -> Result<Self, LabError> {
        let sat = if value { (0..1u64 << vars.len()).collect() } else { BTreeSet::new() };
        Self::new(vars, sat)
    }

    /// `sat(F)` over `vars ⊇ var(F)`.
    pub fn from_formula(f: &CnfFormula, vars: &VertexSet) -> Result<Self, LabError> {
        cap(vars.len())?;
        let mut all = vars.clone();
        all.extend(f.vars());
        if all.len() != vars.len() {
            return Err(LabError::NotPartition);
        }
        let space = TableSpace::new(vars);
        let table = space.formula(f);
        let sat = (0..space.rows()).filter(|&r| table.row(r)).map(|r| r as u64).collect();
        Self::new(vars, sat)
    }

    pub fn vars(&self) -> &[Var] {
        &self.vars
    }

    pub fn sat(&self) -> &BTreeSet<u64> {
        &self.sat
    }

    fn mask_of(&self, part: &VertexSet) -> u64 {
        self.vars
            .iter()
            .enumerate()
            .filter(|(_, v)| part.contains(v))
            .fold(0, |m, (p, _)| m | 1 << p)
    }
}

fn cap(n: usize) -> Result<(), LabError> {
    if n > RECTANGLE_VAR_CAP {
        return Err(LabError::CapExceeded {
            what: "variable set",
            size: n,
            cap: RECTANGLE_VAR_CAP,
        });
    }
    Ok(())
}

/// A function together with the partition `(Y, Z)` it is tested against.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rectangle {
    pub function: ExplicitFunction,
    pub y: VertexSet,
}

impl Rectangle {
    pub fn new(function: ExplicitFunction, y: VertexSet) -> Result<Self, LabError> {
        if !y.iter().all(|v| function.vars.contains(v)) {
            return Err(LabError::NotPartition);
        }
        Ok(Rectangle { function, y })
    }

    /// `τ, τ' ∈ sat(r) ⇒ τ|_Y ∪ τ'|_Z ∈ sat(r)`.
    pub fn is_rectangle(&self) -> bool {
        let ym = self.function.mask_of(&self.y);
        let sat = &self.function.sat;
        sat.iter()
            .all(|&a| sat.iter().all(|&b| sat.contains(&((a & ym) | (b & !ym)))))
    }
}

/// A minimum cover, each rectangle given by its `Y`-parts and `Z`-parts as
/// full-width masks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RectangleCover {
    pub size: usize,
    pub rectangles: Vec<(Vec<u64>, Vec<u64>)>,
}

type Bits = Vec<u64>;

fn bit(b: &Bits, i: usize) -> bool {
    b[i / 64] >> (i % 64) & 1 == 1
}

fn set_bit(b: &mut Bits, i: usize) {
    b[i / 64] |= 1 << (i % 64);
}

fn count(b: &Bits) -> usize {
    b.iter().map(|w| w.count_ones() as usize).sum()
}

fn and_count(a: &Bits, b: &Bits) -> usize {
    a.iter().zip(b).map(|(x, y)| (x & y).count_ones() as usize).sum()
}

/// Scatters the low bits of `index` onto the positions of `mask`.
fn deposit(index: usize, mask: u64) -> u64 {
    let mut out = 0;
    let mut k = 0;
    for p in 0..64 {
        if mask >> p & 1 == 1 {
            if index >> k & 1 == 1 {
                out |= 1 << p;
            }
            k += 1;
        }
    }
    out
}

fn extract(value: u64, mask: u64) -> usize {
    let mut out = 0;
    let mut k = 0;
    for p in 0..64 {
        if mask >> p & 1 == 1 {
            if value >> p & 1 == 1 {
                out |= 1 << k;
            }
            k += 1;
        }
    }
    out
}

/// Fewest `(Y, Z)`-rectangles whose union is `sat(f)`.
///
/// Candidates are the maximal all-ones submatrices of the `Y × Z` matrix of
/// `f`, found by closing every subset of the shorter side. Any cover can be
/// widened to one using maximal rectangles only, so the minimum is kept.
pub fn min_rectangle_cover(f: &ExplicitFunction, y: &VertexSet, z: &VertexSet) -> Result<RectangleCover, LabError> {
    let vars: VertexSet = f.vars.iter().copied().collect();
    if !y.is_disjoint(z) || &y.union(z).copied().collect::<VertexSet>() != &vars {
        return Err(LabError::NotPartition);
    }
    cap(vars.len())?;
    let ym = f.mask_of(y);
    let zm = f.mask_of(z);
    let (rows, cols) = (1usize << y.len(), 1usize << z.len());
    let mut matrix = vec![vec![false; cols]; rows];
    for &s in &f.sat {
        matrix[extract(s, ym)][extract(s, zm)] = true;
    }
    // iterate subsets of the shorter side
    let transpose = rows > cols;
    let (short, long) = if transpose { (cols, rows) } else { (rows, cols) };
    let one = |s: usize, l: usize| if transpose { matrix[l][s] } else { matrix[s][l] };
    let mut seen: HashSet<(Vec<usize>, Vec<usize>)> = HashSet::new();
    for subset in 1usize..1 << short {
        let longs: Vec<usize> = (0..long)
            .filter(|&l| (0..short).filter(|s| subset >> s & 1 == 1).all(|s| one(s, l)))
            .collect();
        if longs.is_empty() {
            continue;
        }
        let shorts: Vec<usize> = (0..short).filter(|&s| longs.iter().all(|&l| one(s, l))).collect();
        seen.insert((shorts, longs));
    }
    let cells = rows * cols;
    let words = cells.div_ceil(64);
    let cell = |r: usize, c: usize| r * cols + c;
    let mut candidates: Vec<(Vec<usize>, Vec<usize>, Bits)> = seen
        .into_iter()
        .map(|(s, l)| {
            let (rs, cs) = if transpose { (l, s) } else { (s, l) };
            let mut b = vec![0u64; words];
            for &r in &rs {
                for &c in &cs {
                    set_bit(&mut b, cell(r, c));
                }
            }
            (rs, cs, b)
        })
        .collect();
    candidates.sort();
    let mut target = vec![0u64; words];
    for (r, row) in matrix.iter().enumerate() {
        for (c, &v) in row.iter().enumerate() {
            if v {
                set_bit(&mut target, cell(r, c));
            }
        }
    }
    let masks: Vec<Bits> = candidates.iter().map(|c| c.2.clone()).collect();
    let chosen = exact_cover(&target, &masks, cells);
    let rectangles = chosen
        .into_iter()
        .map(|i| {
            let (rs, cs, _) = &candidates[i];
            (
                rs.iter().map(|&r| deposit(r, ym)).collect(),
                cs.iter().map(|&c| deposit(c, zm)).collect(),
            )
        })
        .collect::<Vec<_>>();
    Ok(RectangleCover {
        size: rectangles.len(),
        rectangles,
    })
}

/// Minimum set cover of `target` by `sets`, by branch and bound. Branches on
/// the uncovered element with the fewest covering sets.
fn exact_cover(target: &Bits, sets: &[Bits], universe: usize) -> Vec<usize> {
    struct Search<'a> {
        sets: &'a [Bits],
        universe: usize,
        best: Vec<usize>,
    }
    impl Search<'_> {
        fn go(&mut self, uncovered: &Bits, chosen: &mut Vec<usize>) {
            let left = count(uncovered);
            if left == 0 {
                if chosen.len() < self.best.len() {
                    self.best = chosen.clone();
                }
                return;
            }
            let widest = self.sets.iter().map(|s| and_count(s, uncovered)).max().unwrap_or(0);
            if widest == 0 || chosen.len() + left.div_ceil(widest) >= self.best.len() {
                return;
            }
            let pivot = (0..self.universe)
                .filter(|&i| bit(uncovered, i))
                .min_by_key(|&i| self.sets.iter().filter(|s| bit(s, i)).count())
                .expect("something is uncovered");
            let mut options: Vec<usize> = (0..self.sets.len()).filter(|&j| bit(&self.sets[j], pivot)).collect();
            options.sort_by_key(|&j| std::cmp::Reverse(and_count(&self.sets[j], uncovered)));
            for j in options {
                let rest: Bits = uncovered.iter().zip(&self.sets[j]).map(|(u, s)| u & !s).collect();
                chosen.push(j);
                self.go(&rest, chosen);
                chosen.pop();
            }
        }
    }
    // greedy cover as the initial bound
    let mut greedy = Vec::new();
    let mut uncovered = target.clone();
    while count(&uncovered) > 0 {
        let j = (0..sets.len())
            .max_by_key(|&j| and_count(&sets[j], &uncovered))
            .expect("maximal rectangles cover every one");
        greedy.push(j);
        uncovered = uncovered.iter().zip(&sets[j]).map(|(u, s)| u & !s).collect();
    }
    let mut search = Search {
        sets,
        universe,
        best: greedy,
    };
    search.go(target, &mut Vec::new());
    search.best
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::examples::matching_formula;

    fn vs(v: &[Var]) -> VertexSet {
        v.iter().copied().collect()
    }

    #[test]
    fn rectangle_law() {
        let xy = vs(&[1, 2]);
        // 00 and 11 only
        let diag = ExplicitFunction::new(&xy, BTreeSet::from([0b00, 0b11])).unwrap();
        assert!(!Rectangle::new(diag, vs(&[1])).unwrap().is_rectangle());
        // {a=1} × {b ∈ {0,1}}
        let product = ExplicitFunction::new(&xy, BTreeSet::from([0b01, 0b11])).unwrap();
        assert!(Rectangle::new(product, vs(&[1])).unwrap().is_rectangle());
        let empty = ExplicitFunction::constant(&xy, false).unwrap();
        assert!(Rectangle::new(empty, vs(&[1])).unwrap().is_rectangle());
    }

    #[test]
    fn cover_examples() {
        for k in 1..=2u32 {
            let f = matching_formula(k);
            let func = ExplicitFunction::from_formula(&f, &f.vars()).unwrap();
            let cover = min_rectangle_cover(&func, &(1..=k).collect(), &(k + 1..=2 * k).collect()).unwrap();
            assert_eq!(cover.size, 1 << k);
            // the cover reproduces sat(f)
            let mut union = BTreeSet::new();
            for (ys, zs) in &cover.rectangles {
                for a in ys {
                    for b in zs {
                        union.insert(a | b);
                    }
                }
            }
            assert_eq!(&union, func.sat());
        }
        let zero = ExplicitFunction::constant(&vs(&[1, 2]), false).unwrap();
        assert_eq!(min_rectangle_cover(&zero, &vs(&[1]), &vs(&[2])).unwrap().size, 0);
        let one = ExplicitFunction::constant(&vs(&[1, 2]), true).unwrap();
        assert_eq!(min_rectangle_cover(&one, &vs(&[1]), &vs(&[2])).unwrap().size, 1);
    }

    #[test]
    fn partition_and_cap_errors() {
        let f = ExplicitFunction::constant(&vs(&[1, 2]), true).unwrap();
        assert_eq!(min_rectangle_cover(&f, &vs(&[1]), &vs(&[1, 2])), Err(LabError::NotPartition));
        assert!(matches!(
            ExplicitFunction::constant(&(1..=9).collect(), true),
            Err(LabError::CapExceeded { size: 9, .. })
        ));
    }
}
