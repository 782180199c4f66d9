//! MIM-width of branch decompositions, and exact MIM-width of small graphs.

use super::graph::Graph;
use super::LabError;
use crate::cnf::Var;
use crate::hypergraph::VertexSet;
use crate::tree::{BinaryTree, BranchDecomposition};

pub const DEFAULT_MIMW_CAP: usize = 16;
pub const EXACT_MIMW_CAP: usize = 8;

fn check_cap(g: &Graph, cap: usize) -> Result<(), LabError> {
    if g.vertex_count() > cap {
        return Err(LabError::CapExceeded {
            what: "graph",
            size: g.vertex_count(),
            cap,
        });
    }
    Ok(())
}

/// Maximum induced matching across the cut `(S, V ∖ S)`.
pub fn cut_mim(g: &Graph, s: &VertexSet) -> usize {
    let rest: VertexSet = g.vertices().difference(s).copied().collect();
    g.max_induced_matching(s, &rest).len()
}

/// `(V_t, width)` for every node `t` of the decomposition, in node order.
pub fn node_widths(g: &Graph, t: &BranchDecomposition, cap: usize) -> Result<Vec<(VertexSet, usize)>, LabError> {
    check_cap(g, cap)?;
    if !t.is_bijective_over(&g.vertices()) {
        return Err(LabError::NotBijective);
    }
    Ok(t.leaf_sets()
        .into_iter()
        .map(|s| {
            let w = cut_mim(g, &s);
            (s, w)
        })
        .collect())
}

pub fn mimw_of_decomposition(g: &Graph, t: &BranchDecomposition, cap: usize) -> Result<usize, LabError> {
    Ok(node_widths(g, t, cap)?
        .into_iter()
        .map(|(_, w)| w)
        .max()
        .unwrap_or(0))
}

/// Minimum MIM-width over all branch decompositions, with a witness.
///
/// A subtree's cost depends only on its leaf set `S`, so
/// `best(S) = max(mim(S), min_{A ⊎ B = S} max(best(A), best(B)))`, computed
/// over subsets with `A` holding the lowest element of `S` to skip mirrored
/// splits.
pub fn exact_mimw(g: &Graph, cap: usize) -> Result<(usize, BranchDecomposition), LabError> {
    check_cap(g, cap.min(20))?;
    let vs: Vec<Var> = g.vertices().into_iter().collect();
    if vs.is_empty() {
        return Err(LabError::EmptyGraph);
    }
    let n = vs.len();
    let full: u32 = if n == 32 { u32::MAX } else { (1u32 << n) - 1 };
    let set_of = |mask: u32| -> VertexSet {
        (0..n).filter(|i| mask >> i & 1 == 1).map(|i| vs[i]).collect()
    };
    let mut best: Vec<usize> = vec![usize::MAX; full as usize + 1];
    let mut split: Vec<u32> = vec![0; full as usize + 1];
    // subsets in increasing numeric order visit every proper subset first
    for s in 1..=full {
        let width = cut_mim(g, &set_of(s));
        if s.count_ones() == 1 {
            best[s as usize] = width;
            continue;
        }
        let low = s & s.wrapping_neg();
        let rest = s ^ low;
        let mut choice = (usize::MAX, 0u32);
        // a ranges over proper subsets of s containing low
        let mut sub = rest;
        loop {
            let a = sub | low;
            if a != s {
                let cost = best[a as usize].max(best[(s ^ a) as usize]);
                if cost < choice.0 {
                    choice = (cost, a);
                }
            }
            if sub == 0 {
                break;
            }
            sub = (sub - 1) & rest;
        }
        best[s as usize] = width.max(choice.0);
        split[s as usize] = choice.1;
    }
    fn build(mask: u32, split: &[u32], vs: &[Var]) -> BinaryTree {
        if mask.count_ones() == 1 {
            return BinaryTree::leaf(vs[mask.trailing_zeros() as usize]);
        }
        let a = split[mask as usize];
        BinaryTree::join(build(a, split, vs), build(mask ^ a, split, vs))
    }
    Ok((best[full as usize], build(full, &split, &vs)))
}
