//! Hypergraphs, β-elimination orders and the sub-hypergraphs `H_e^x`.
//!
//! [`OrderedHypergraph`] fixes an elimination order and re-indexes the edges
//! by the induced edge order, so edge comparisons become index comparisons.

use std::cmp::Ordering;
use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt::Write as _;

use thiserror::Error;

use crate::cnf::Var;

pub type VertexSet = BTreeSet<Var>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HypergraphError {
    #[error("hypergraphs cannot contain the empty edge")]
    EmptyEdge,
    #[error("vertex {0} appears twice in the elimination order")]
    DuplicateVertex(Var),
    #[error("vertex {0} of the hypergraph is missing from the order")]
    MissingVertex(Var),
    #[error("order mentions vertex {0}, which is not in the hypergraph")]
    ForeignVertex(Var),
    #[error("edge {0:?} is not in the hypergraph")]
    UnknownEdge(Vec<Var>),
    #[error("vertex {0} is not in the hypergraph")]
    UnknownVertex(Var),
    #[error("the edge is not reachable in the requested sub-hypergraph")]
    NotInSubHypergraph,
    #[error("{0}")]
    Beta(#[from] BetaViolation),
    #[error("found a shortest path that is not decreasing; the order is not a β-elimination order")]
    PathNotDecreasing,
    #[error("line {line}: {reason}")]
    Parse { line: usize, reason: String },
}

/// A finite set of non-empty finite vertex sets.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Hypergraph {
    edges: Vec<VertexSet>,
}

impl Hypergraph {
    pub fn new<I: IntoIterator<Item = VertexSet>>(edges: I) -> Result<Self, HypergraphError> {
        let mut edges: Vec<VertexSet> = edges.into_iter().collect();
        if edges.iter().any(BTreeSet::is_empty) {
            return Err(HypergraphError::EmptyEdge);
        }
        edges.sort();
        edges.dedup();
        Ok(Hypergraph { edges })
    }

    pub fn from_slices(edges: &[&[Var]]) -> Result<Self, HypergraphError> {
        Hypergraph::new(edges.iter().map(|e| e.iter().copied().collect()))
    }

    pub fn edges(&self) -> &[VertexSet] {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn contains_edge(&self, e: &VertexSet) -> bool {
        self.edges.binary_search(e).is_ok()
    }

    pub fn vertices(&self) -> VertexSet {
        self.edges.iter().flatten().copied().collect()
    }

    /// Partition of the edges into classes linked by shared vertices, ordered
    /// by their smallest edge.
    pub fn connected_components(&self) -> Vec<Hypergraph> {
        let mut parent: Vec<usize> = (0..self.edges.len()).collect();
        fn find(parent: &mut [usize], mut i: usize) -> usize {
            while parent[i] != i {
                parent[i] = parent[parent[i]];
                i = parent[i];
            }
            i
        }
        let mut owner: HashMap<Var, usize> = HashMap::new();
        for (i, e) in self.edges.iter().enumerate() {
            for &v in e {
                if let Some(&j) = owner.get(&v) {
                    let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                    if a != b {
                        parent[a.max(b)] = a.min(b);
                    }
                } else {
                    owner.insert(v, i);
                }
            }
        }
        let mut groups: Vec<(usize, Vec<VertexSet>)> = Vec::new();
        let mut slot: HashMap<usize, usize> = HashMap::new();
        for (i, e) in self.edges.iter().enumerate() {
            let root = find(&mut parent, i);
            let k = *slot.entry(root).or_insert_with(|| {
                groups.push((root, Vec::new()));
                groups.len() - 1
            });
            groups[k].1.push(e.clone());
        }
        groups
            .into_iter()
            .map(|(_, edges)| Hypergraph { edges })
            .collect()
    }

    /// Parses the text format: one edge per line as whitespace-separated
    /// vertex ids, `#` starts a comment.
    pub fn parse_text(text: &str) -> Result<Self, HypergraphError> {
        let mut edges = Vec::new();
        for (i, line) in text.lines().enumerate() {
            let body = line.split('#').next().unwrap_or("").trim();
            if body.is_empty() {
                continue;
            }
            let edge = body
                .split_whitespace()
                .map(|t| match t.parse::<Var>() {
                    Ok(v) if v > 0 => Ok(v),
                    _ => Err(HypergraphError::Parse {
                        line: i + 1,
                        reason: format!("bad vertex id `{t}`"),
                    }),
                })
                .collect::<Result<VertexSet, _>>()?;
            edges.push(edge);
        }
        Hypergraph::new(edges)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for e in &self.edges {
            let line: Vec<String> = e.iter().map(|v| v.to_string()).collect();
            let _ = writeln!(out, "{}", line.join(" "));
        }
        out
    }
}

/// Reported when the β-condition fails at position `position` of an order.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("β-condition fails at vertex {vertex} (position {position}): {left:?} and {right:?} are incomparable after elimination")]
pub struct BetaViolation {
    pub position: usize,
    pub vertex: Var,
    pub left: Vec<Var>,
    pub right: Vec<Var>,
}

/// Certificate that greedy elimination got stuck: no remaining vertex is a
/// nest point of the remaining edges.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("not β-acyclic: after eliminating {eliminated:?}, no vertex of {stuck:?} is a nest point")]
pub struct NotBetaAcyclic {
    pub eliminated: Vec<Var>,
    pub stuck: Vec<Var>,
    pub remaining_edges: Vec<Vec<Var>>,
}

/// A vertex order `x_1 < … < x_n`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct EliminationOrder {
    sequence: Vec<Var>,
    rank: HashMap<Var, usize>,
}

impl EliminationOrder {
    pub fn new(sequence: Vec<Var>) -> Result<Self, HypergraphError> {
        let mut rank = HashMap::with_capacity(sequence.len());
        for (i, &v) in sequence.iter().enumerate() {
            if rank.insert(v, i).is_some() {
                return Err(HypergraphError::DuplicateVertex(v));
            }
        }
        Ok(EliminationOrder { sequence, rank })
    }

    /// Parses one vertex id per line; blank lines and `#` comments ignored.
    pub fn parse_text(text: &str) -> Result<Self, HypergraphError> {
        let mut seq = Vec::new();
        for (i, line) in text.lines().enumerate() {
            let body = line.split('#').next().unwrap_or("").trim();
            for t in body.split_whitespace() {
                match t.parse::<Var>() {
                    Ok(v) if v > 0 => seq.push(v),
                    _ => {
                        return Err(HypergraphError::Parse {
                            line: i + 1,
                            reason: format!("bad vertex id `{t}`"),
                        })
                    }
                }
            }
        }
        EliminationOrder::new(seq)
    }

    pub fn sequence(&self) -> &[Var] {
        &self.sequence
    }

    pub fn len(&self) -> usize {
        self.sequence.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sequence.is_empty()
    }

    /// 0-based position of `v`.
    pub fn rank(&self, v: Var) -> Option<usize> {
        self.rank.get(&v).copied()
    }

    pub fn contains(&self, v: Var) -> bool {
        self.rank.contains_key(&v)
    }

    pub fn at(&self, position: usize) -> Var {
        self.sequence[position]
    }

    pub fn first(&self) -> Option<Var> {
        self.sequence.first().copied()
    }

    pub fn last(&self) -> Option<Var> {
        self.sequence.last().copied()
    }

    pub fn predecessor(&self, v: Var) -> Option<Var> {
        match self.rank(v)? {
            0 => None,
            r => Some(self.sequence[r - 1]),
        }
    }

    /// Compares two vertices by position. Both must be in the order.
    pub fn compare(&self, a: Var, b: Var) -> Ordering {
        self.rank[&a].cmp(&self.rank[&b])
    }

    /// The subsequence over `keep`.
    pub fn restricted_to(&self, keep: &VertexSet) -> EliminationOrder {
        EliminationOrder::new(
            self.sequence
                .iter()
                .copied()
                .filter(|v| keep.contains(v))
                .collect(),
        )
        .expect("a subsequence has no duplicates")
    }

    /// Checks that the order is a permutation of `V(H)`.
    pub fn check_covers(&self, h: &Hypergraph) -> Result<(), HypergraphError> {
        let vertices = h.vertices();
        if let Some(&v) = vertices.iter().find(|v| !self.contains(**v)) {
            return Err(HypergraphError::MissingVertex(v));
        }
        if let Some(&v) = self.sequence.iter().find(|v| !vertices.contains(v)) {
            return Err(HypergraphError::ForeignVertex(v));
        }
        Ok(())
    }

    /// Checks coverage and, for every `x_i`, that the edges through `x_i`
    /// minus `{x_1..x_i}` form a chain under inclusion.
    pub fn check_beta(&self, h: &Hypergraph) -> Result<(), HypergraphError> {
        self.check_covers(h)?;
        for (i, &x) in self.sequence.iter().enumerate() {
            let mut rests: Vec<Vec<Var>> = h
                .edges()
                .iter()
                .filter(|e| e.contains(&x))
                .map(|e| e.iter().copied().filter(|&v| self.rank[&v] > i).collect())
                .collect();
            rests.sort_by_key(Vec::len);
            for w in rests.windows(2) {
                if !is_subset_sorted(&w[0], &w[1]) {
                    return Err(BetaViolation {
                        position: i,
                        vertex: x,
                        left: w[0].clone(),
                        right: w[1].clone(),
                    }
                    .into());
                }
            }
        }
        Ok(())
    }

    pub fn is_beta_for(&self, h: &Hypergraph) -> bool {
        self.check_beta(h).is_ok()
    }
}

fn is_subset_sorted(small: &[Var], big: &[Var]) -> bool {
    let set: BTreeSet<&Var> = big.iter().collect();
    small.iter().all(|v| set.contains(v))
}

fn is_chain(sets: &mut [&VertexSet]) -> bool {
    sets.sort_by_key(|s| s.len());
    sets.windows(2).all(|w| w[0].is_subset(w[1]))
}

/// Greedy nest-point elimination, smallest vertex id first. The produced
/// order is re-verified against the β-condition.
pub fn beta_elimination_order(h: &Hypergraph) -> Result<EliminationOrder, NotBetaAcyclic> {
    let mut current: Vec<VertexSet> = h.edges().to_vec();
    let mut remaining = h.vertices();
    let mut sequence = Vec::with_capacity(remaining.len());
    while !remaining.is_empty() {
        let pick = remaining.iter().copied().find(|&x| {
            let mut through: Vec<&VertexSet> = current.iter().filter(|e| e.contains(&x)).collect();
            is_chain(&mut through)
        });
        let Some(x) = pick else {
            let mut rest: Vec<Vec<Var>> = current.iter().map(|e| e.iter().copied().collect()).collect();
            rest.sort();
            rest.dedup();
            return Err(NotBetaAcyclic {
                eliminated: sequence,
                stuck: remaining.into_iter().collect(),
                remaining_edges: rest,
            });
        };
        sequence.push(x);
        remaining.remove(&x);
        for e in current.iter_mut() {
            e.remove(&x);
        }
        current.retain(|e| !e.is_empty());
    }
    let order = EliminationOrder::new(sequence).expect("greedy never repeats a vertex");
    if let Err(e) = order.check_beta(h) {
        panic!("greedy nest-point elimination produced an invalid order: {e}");
    }
    Ok(order)
}

pub fn is_beta_acyclic(h: &Hypergraph) -> bool {
    beta_elimination_order(h).is_ok()
}

/// `e <_H f` iff `max(e Δ f) ∈ f`. Equal edges compare equal.
pub fn compare_edges(
    order: &EliminationOrder,
    e: &VertexSet,
    f: &VertexSet,
) -> Result<Ordering, HypergraphError> {
    let mut top: Option<(usize, bool)> = None;
    for v in e.symmetric_difference(f) {
        let r = order.rank(*v).ok_or(HypergraphError::MissingVertex(*v))?;
        if top.is_none_or(|(best, _)| r > best) {
            top = Some((r, f.contains(v)));
        }
    }
    Ok(match top {
        None => Ordering::Equal,
        Some((_, true)) => Ordering::Less,
        Some((_, false)) => Ordering::Greater,
    })
}

/// A set of edge indices of an [`OrderedHypergraph`], ascending.
pub type EdgeSet = Vec<usize>;

/// A hypergraph together with an elimination order, edges indexed in
/// ascending `<_H` order.
#[derive(Debug, Clone)]
pub struct OrderedHypergraph {
    edges: Vec<VertexSet>,
    /// vertex ranks of each edge, ascending
    ranked: Vec<Vec<usize>>,
    /// edges through each vertex rank, ascending
    incident: Vec<Vec<usize>>,
    order: EliminationOrder,
}

impl OrderedHypergraph {
    /// Requires `order` to be a permutation of `V(H)`; the β-condition is not
    /// checked here (see [`EliminationOrder::check_beta`]).
    pub fn new(h: &Hypergraph, order: EliminationOrder) -> Result<Self, HypergraphError> {
        order.check_covers(h)?;
        let mut ranked: Vec<(Vec<usize>, VertexSet)> = h
            .edges()
            .iter()
            .map(|e| {
                let mut r: Vec<usize> = e.iter().map(|v| order.rank[v]).collect();
                r.sort_unstable();
                (r, e.clone())
            })
            .collect();
        // <_H is the lexicographic order on descending rank vectors
        ranked.sort_by(|a, b| a.0.iter().rev().cmp(b.0.iter().rev()));
        let mut incident = vec![Vec::new(); order.len()];
        for (i, (r, _)) in ranked.iter().enumerate() {
            for &v in r {
                incident[v].push(i);
            }
        }
        let (ranked, edges) = ranked.into_iter().unzip();
        Ok(OrderedHypergraph {
            edges,
            ranked,
            incident,
            order,
        })
    }

    pub fn order(&self) -> &EliminationOrder {
        &self.order
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    /// Edges in ascending `<_H` order.
    pub fn edges(&self) -> &[VertexSet] {
        &self.edges
    }

    pub fn edge(&self, index: usize) -> &VertexSet {
        &self.edges[index]
    }

    /// Vertex ranks of edge `index`, ascending.
    pub fn edge_ranks(&self, index: usize) -> &[usize] {
        &self.ranked[index]
    }

    pub fn index_of(&self, e: &VertexSet) -> Option<usize> {
        self.edges.iter().position(|f| f == e)
    }

    /// Edges through the vertex of rank `rank`, ascending.
    pub fn incident(&self, rank: usize) -> &[usize] {
        &self.incident[rank]
    }

    /// The edges named by `set`, as a plain hypergraph.
    pub fn to_hypergraph(&self, set: &[usize]) -> Hypergraph {
        Hypergraph::new(set.iter().map(|&i| self.edges[i].clone())).expect("edges are non-empty")
    }

    pub fn vertices_of(&self, set: &[usize]) -> VertexSet {
        set.iter().flat_map(|&i| self.edges[i].iter().copied()).collect()
    }

    /// `H_e^x` for the vertex of rank `x_rank`: edges reachable from `e`
    /// through edges `≤_H e` and vertices of rank `≤ x_rank`.
    pub fn reach(&self, e: usize, x_rank: usize) -> EdgeSet {
        let mut seen_edge = vec![false; self.edges.len()];
        let mut seen_vertex = vec![false; self.incident.len()];
        let mut queue = VecDeque::from([e]);
        seen_edge[e] = true;
        while let Some(g) = queue.pop_front() {
            for &v in self.ranked[g].iter().take_while(|&&v| v <= x_rank) {
                if std::mem::replace(&mut seen_vertex[v], true) {
                    continue;
                }
                for &f in self.incident[v].iter().take_while(|&&f| f <= e) {
                    if !std::mem::replace(&mut seen_edge[f], true) {
                        queue.push_back(f);
                    }
                }
            }
        }
        seen_edge
            .iter()
            .enumerate()
            .filter_map(|(i, &s)| s.then_some(i))
            .collect()
    }

    fn rank_of(&self, x: Var) -> Result<usize, HypergraphError> {
        self.order.rank(x).ok_or(HypergraphError::UnknownVertex(x))
    }

    /// `H_e^x` as a set of edge indices.
    pub fn sub_hypergraph(&self, e: usize, x: Var) -> Result<EdgeSet, HypergraphError> {
        if e >= self.edges.len() {
            return Err(HypergraphError::UnknownEdge(Vec::new()));
        }
        Ok(self.reach(e, self.rank_of(x)?))
    }

    /// A decreasing path from `e` to `f` through vertices `≤ x`. Taken as a
    /// shortest such path, which is decreasing whenever the order is a
    /// β-elimination order.
    pub fn decreasing_path(&self, e: usize, x: Var, f: usize) -> Result<Walk, HypergraphError> {
        let x_rank = self.rank_of(x)?;
        if e >= self.edges.len() || f >= self.edges.len() {
            return Err(HypergraphError::UnknownEdge(Vec::new()));
        }
        // BFS over edges ≤ e, remembering the (edge, vertex) we came from
        let mut parent: Vec<Option<(usize, usize)>> = vec![None; self.edges.len()];
        let mut seen = vec![false; self.edges.len()];
        seen[e] = true;
        let mut queue = VecDeque::from([e]);
        while let Some(g) = queue.pop_front() {
            if g == f {
                break;
            }
            for &v in self.ranked[g].iter().take_while(|&&v| v <= x_rank) {
                for &h in self.incident[v].iter().take_while(|&&h| h <= e) {
                    if !seen[h] {
                        seen[h] = true;
                        parent[h] = Some((g, v));
                        queue.push_back(h);
                    }
                }
            }
        }
        if !seen[f] {
            return Err(HypergraphError::NotInSubHypergraph);
        }
        let mut edges = vec![f];
        let mut vertices = Vec::new();
        let mut cur = f;
        while let Some((g, v)) = parent[cur] {
            edges.push(g);
            vertices.push(self.order.at(v));
            cur = g;
        }
        edges.reverse();
        vertices.reverse();
        let walk = Walk { edges, vertices };
        if !walk.is_decreasing(self) {
            return Err(HypergraphError::PathNotDecreasing);
        }
        Ok(walk)
    }
}

/// An alternating sequence `(e_1, x_1, …, x_n, e_{n+1})` of edge indices and
/// vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Walk {
    pub edges: Vec<usize>,
    pub vertices: Vec<Var>,
}

impl Walk {
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn is_walk(&self, h: &OrderedHypergraph) -> bool {
        self.edges.len() == self.vertices.len() + 1
            && self.vertices.iter().enumerate().all(|(i, v)| {
                h.edge(self.edges[i]).contains(v) && h.edge(self.edges[i + 1]).contains(v)
            })
    }

    pub fn is_path(&self, h: &OrderedHypergraph) -> bool {
        let distinct_edges: BTreeSet<_> = self.edges.iter().collect();
        let distinct_vertices: BTreeSet<_> = self.vertices.iter().collect();
        self.is_walk(h)
            && distinct_edges.len() == self.edges.len()
            && distinct_vertices.len() == self.vertices.len()
    }

    pub fn is_decreasing(&self, h: &OrderedHypergraph) -> bool {
        let order = h.order();
        self.is_path(h)
            && self.edges.windows(2).all(|w| w[0] > w[1])
            && self
                .vertices
                .windows(2)
                .all(|w| order.compare(w[0], w[1]) == Ordering::Greater)
    }
}

/// `H_e^x` computed directly on a hypergraph and order.
pub fn sub_hypergraph(
    h: &Hypergraph,
    order: &EliminationOrder,
    e: &VertexSet,
    x: Var,
) -> Result<Hypergraph, HypergraphError> {
    let oh = OrderedHypergraph::new(h, order.clone())?;
    let idx = oh
        .index_of(e)
        .ok_or_else(|| HypergraphError::UnknownEdge(e.iter().copied().collect()))?;
    let set = oh.sub_hypergraph(idx, x)?;
    Ok(oh.to_hypergraph(&set))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(v: &[Var]) -> VertexSet {
        v.iter().copied().collect()
    }

    fn hstar() -> Hypergraph {
        Hypergraph::from_slices(&[&[1, 2], &[3, 4], &[2, 5], &[4, 5], &[2, 4, 5]]).unwrap()
    }

    fn triangle() -> Hypergraph {
        Hypergraph::from_slices(&[&[1, 2], &[2, 3], &[1, 3]]).unwrap()
    }

    fn all_orders(vs: &[Var]) -> Vec<Vec<Var>> {
        if vs.is_empty() {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for i in 0..vs.len() {
            let mut rest = vs.to_vec();
            let x = rest.remove(i);
            for mut tail in all_orders(&rest) {
                tail.insert(0, x);
                out.push(tail);
            }
        }
        out
    }

    #[test]
    fn greedy_order_on_examples() {
        let order = beta_elimination_order(&hstar()).unwrap();
        assert_eq!(order.sequence(), &[1, 2, 3, 4, 5]);
        assert!(is_beta_acyclic(&hstar()));

        let single = Hypergraph::from_slices(&[&[1, 2, 3]]).unwrap();
        assert_eq!(beta_elimination_order(&single).unwrap().sequence(), &[1, 2, 3]);
        assert!(is_beta_acyclic(&Hypergraph::default()));
    }

    #[test]
    fn triangle_has_no_beta_order() {
        let t = triangle();
        let err = beta_elimination_order(&t).unwrap_err();
        assert_eq!(err.stuck, vec![1, 2, 3]);
        assert!(!is_beta_acyclic(&t));
        // exhaustive confirmation over all 3! orders
        for seq in all_orders(&[1, 2, 3]) {
            assert!(!EliminationOrder::new(seq).unwrap().is_beta_for(&t));
        }
    }

    #[test]
    fn order_validation() {
        assert_eq!(
            EliminationOrder::new(vec![1, 2, 1]).unwrap_err(),
            HypergraphError::DuplicateVertex(1)
        );
        let o = EliminationOrder::new(vec![1, 2, 3, 4]).unwrap();
        assert_eq!(o.check_covers(&hstar()), Err(HypergraphError::MissingVertex(5)));
        let o = EliminationOrder::new(vec![1, 2, 3, 4, 5, 6]).unwrap();
        assert_eq!(o.check_covers(&hstar()), Err(HypergraphError::ForeignVertex(6)));
        let bad = EliminationOrder::new(vec![5, 4, 3, 2, 1]).unwrap();
        assert!(matches!(bad.check_beta(&hstar()), Err(HypergraphError::Beta(_))));
    }

    #[test]
    fn edge_order_on_hstar() {
        let order = EliminationOrder::new(vec![1, 2, 3, 4, 5]).unwrap();
        let oh = OrderedHypergraph::new(&hstar(), order.clone()).unwrap();
        let expected = [set(&[1, 2]), set(&[3, 4]), set(&[2, 5]), set(&[4, 5]), set(&[2, 4, 5])];
        assert_eq!(oh.edges(), &expected);
        assert_eq!(
            compare_edges(&order, &set(&[1, 2]), &set(&[2, 5])).unwrap(),
            Ordering::Less
        );
        assert_eq!(
            compare_edges(&order, &set(&[2, 5]), &set(&[2, 5])).unwrap(),
            Ordering::Equal
        );
        assert_eq!(
            compare_edges(&order, &set(&[1, 7]), &set(&[1])),
            Err(HypergraphError::MissingVertex(7))
        );
        // the index order agrees with the max-of-symmetric-difference rule
        for i in 0..5 {
            for j in 0..5 {
                assert_eq!(
                    compare_edges(&order, oh.edge(i), oh.edge(j)).unwrap(),
                    i.cmp(&j)
                );
            }
        }
    }

    #[test]
    fn sub_hypergraphs_on_hstar() {
        let order = EliminationOrder::new(vec![1, 2, 3, 4, 5]).unwrap();
        let oh = OrderedHypergraph::new(&hstar(), order.clone()).unwrap();
        // e1..e5 are indices 0..4
        assert_eq!(oh.sub_hypergraph(4, 4).unwrap(), vec![0, 1, 2, 3, 4]);
        // e2 and e4 touch the rest only through 4 and 5
        assert_eq!(oh.sub_hypergraph(4, 3).unwrap(), vec![0, 2, 4]);
        assert_eq!(oh.sub_hypergraph(1, 3).unwrap(), vec![1]);
        assert_eq!(
            oh.sub_hypergraph(4, 9),
            Err(HypergraphError::UnknownVertex(9))
        );
        let direct = sub_hypergraph(&hstar(), &order, &set(&[2, 4, 5]), 3).unwrap();
        assert!(!direct.contains_edge(&set(&[3, 4])));
        assert_eq!(direct.len(), 3);
    }

    #[test]
    fn decreasing_paths_on_hstar() {
        let order = EliminationOrder::new(vec![1, 2, 3, 4, 5]).unwrap();
        let oh = OrderedHypergraph::new(&hstar(), order).unwrap();
        let p = oh.decreasing_path(4, 4, 1).unwrap();
        assert_eq!(p, Walk { edges: vec![4, 1], vertices: vec![4] });
        let p = oh.decreasing_path(4, 4, 0).unwrap();
        assert_eq!(p, Walk { edges: vec![4, 0], vertices: vec![2] });
        let p = oh.decreasing_path(4, 4, 4).unwrap();
        assert!(p.is_empty());
        assert_eq!(
            oh.decreasing_path(4, 3, 1),
            Err(HypergraphError::NotInSubHypergraph)
        );
    }

    #[test]
    fn components() {
        assert_eq!(hstar().connected_components().len(), 1);
        let two = Hypergraph::from_slices(&[&[1, 2], &[3, 4]]).unwrap();
        let comps = two.connected_components();
        assert_eq!(comps.len(), 2);
        assert_eq!(comps[0].vertices(), set(&[1, 2]));
        assert!(Hypergraph::default().connected_components().is_empty());
    }

    #[test]
    fn rejects_empty_edges() {
        assert_eq!(
            Hypergraph::new([VertexSet::new()]).unwrap_err(),
            HypergraphError::EmptyEdge
        );
    }

    #[test]
    fn text_format() {
        let text = "# five edges\n1 2\n3 4\n2 5\n4 5 # trailing\n2 4 5\n\n";
        let h = Hypergraph::parse_text(text).unwrap();
        assert_eq!(h, hstar());
        assert_eq!(Hypergraph::parse_text(&h.to_text()).unwrap(), h);
        assert!(matches!(
            Hypergraph::parse_text("1 x\n"),
            Err(HypergraphError::Parse { line: 1, .. })
        ));
        let o = EliminationOrder::parse_text("3\n1\n# c\n2\n").unwrap();
        assert_eq!(o.sequence(), &[3, 1, 2]);
    }
}
