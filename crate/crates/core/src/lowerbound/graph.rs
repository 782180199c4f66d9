//! Simple undirected graphs, cut subgraphs `G[X, Y]` and induced matchings.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use super::LabError;
use crate::cnf::{CnfFormula, Var};
use crate::hypergraph::VertexSet;

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Graph {
    adj: BTreeMap<Var, BTreeSet<Var>>,
}

impl Graph {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_edges(edges: &[(Var, Var)]) -> Result<Self, LabError> {
        let mut g = Graph::new();
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn add_vertex(&mut self, v: Var) -> Result<(), LabError> {
        if v == 0 {
            return Err(LabError::ZeroVertex);
        }
        self.adj.entry(v).or_default();
        Ok(())
    }

    pub fn add_edge(&mut self, u: Var, v: Var) -> Result<(), LabError> {
        if u == v {
            return Err(LabError::SelfLoop(u));
        }
        self.add_vertex(u)?;
        self.add_vertex(v)?;
        self.adj.get_mut(&u).expect("just added").insert(v);
        self.adj.get_mut(&v).expect("just added").insert(u);
        Ok(())
    }

    pub fn vertices(&self) -> VertexSet {
        self.adj.keys().copied().collect()
    }

    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.values().map(BTreeSet::len).sum::<usize>() / 2
    }

    /// Edges as `(u, v)` with `u < v`, ascending.
    pub fn edges(&self) -> Vec<(Var, Var)> {
        self.adj
            .iter()
            .flat_map(|(&u, ns)| ns.range(u + 1..).map(move |&v| (u, v)))
            .collect()
    }

    pub fn has_edge(&self, u: Var, v: Var) -> bool {
        self.adj.get(&u).is_some_and(|ns| ns.contains(&v))
    }

    pub fn neighbors(&self, v: Var) -> impl Iterator<Item = Var> + '_ {
        self.adj.get(&v).into_iter().flatten().copied()
    }

    /// Edges of `G[X, Y]` as `(x, y)` pairs with `x ∈ X`, `y ∈ Y`.
    pub fn cross_edges(&self, x: &VertexSet, y: &VertexSet) -> Vec<(Var, Var)> {
        x.iter()
            .flat_map(|&u| self.neighbors(u).filter(|v| y.contains(v)).map(move |v| (u, v)))
            .collect()
    }

    /// A maximum induced matching of `G[X, Y]`, by exhaustive search with
    /// a size bound.
    pub fn max_induced_matching(&self, x: &VertexSet, y: &VertexSet) -> Vec<(Var, Var)> {
        let edges = self.cross_edges(x, y);
        // cross edges only; edges inside X or inside Y do not exist in G[X,Y]
        let conflict = |a: (Var, Var), b: (Var, Var)| {
            a.0 == b.0 || a.1 == b.1 || self.has_edge(a.0, b.1) || self.has_edge(b.0, a.1)
        };
        let limit = x.len().min(y.len());
        let mut best: Vec<(Var, Var)> = Vec::new();
        let mut chosen: Vec<(Var, Var)> = Vec::new();
        fn go(
            i: usize,
            edges: &[(Var, Var)],
            chosen: &mut Vec<(Var, Var)>,
            best: &mut Vec<(Var, Var)>,
            limit: usize,
            conflict: &dyn Fn((Var, Var), (Var, Var)) -> bool,
        ) {
            if chosen.len() > best.len() {
                *best = chosen.clone();
            }
            if best.len() == limit || i == edges.len() || chosen.len() + (edges.len() - i) <= best.len() {
                return;
            }
            let e = edges[i];
            if chosen.iter().all(|&c| !conflict(c, e)) {
                chosen.push(e);
                go(i + 1, edges, chosen, best, limit, conflict);
                chosen.pop();
            }
            go(i + 1, edges, chosen, best, limit, conflict);
        }
        go(0, &edges, &mut chosen, &mut best, limit, &conflict);
        best
    }

    /// Edge list, one `u v` pair per line; a line with a single id adds an
    /// isolated vertex. `#` and `c` lines are comments.
    pub fn parse_text(text: &str) -> Result<Self, LabError> {
        let mut g = Graph::new();
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let body = raw.split('#').next().unwrap_or("").trim();
            if body.is_empty() || body.starts_with('c') {
                continue;
            }
            let ids: Vec<Var> = body
                .split_whitespace()
                .map(|t| {
                    t.parse::<Var>().map_err(|_| LabError::Parse {
                        line,
                        reason: format!("`{t}` is not a vertex id"),
                    })
                })
                .collect::<Result<_, _>>()?;
            match ids.as_slice() {
                [v] => g.add_vertex(*v)?,
                [u, v] => g.add_edge(*u, *v)?,
                _ => {
                    return Err(LabError::Parse {
                        line,
                        reason: "expected `u v`".into(),
                    })
                }
            }
        }
        Ok(g)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (&v, ns) in &self.adj {
            if ns.is_empty() {
                let _ = writeln!(out, "{v}");
            }
        }
        for (u, v) in self.edges() {
            let _ = writeln!(out, "{u} {v}");
        }
        out
    }
}

/// Variables and clauses as vertices, one edge per occurrence. Clause `j`
/// is vertex `n + 1 + j` for `n` the largest declared or used variable.
#[derive(Debug, Clone)]
pub struct IncidenceGraph {
    pub graph: Graph,
    pub variables: VertexSet,
    pub clause_vertices: Vec<Var>,
}

pub fn incidence_graph(f: &CnfFormula) -> IncidenceGraph {
    let vars = f.vars();
    let base = f.declared_vars().max(vars.last().copied().unwrap_or(0));
    let mut graph = Graph::new();
    let mut clause_vertices = Vec::with_capacity(f.len());
    for (j, c) in f.clauses().iter().enumerate() {
        let cv = base + 1 + j as Var;
        clause_vertices.push(cv);
        graph.add_vertex(cv).expect("positive id");
        for l in c.literals() {
            graph.add_edge(l.var(), cv).expect("variable and clause ids differ");
        }
    }
    IncidenceGraph {
        graph,
        variables: vars,
        clause_vertices,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::examples::{chorded_square, fstar};

    fn set(v: &[Var]) -> VertexSet {
        v.iter().copied().collect()
    }

    #[test]
    fn incidence_examples() {
        let g = incidence_graph(&fstar());
        assert_eq!(g.graph.vertex_count(), 10);
        assert_eq!(g.graph.edge_count(), 11);
        assert_eq!(g.clause_vertices, vec![6, 7, 8, 9, 10]);
        assert_eq!(incidence_graph(&CnfFormula::default()).graph.vertex_count(), 0);
        let unit = incidence_graph(&CnfFormula::from_dimacs_clauses(&[&[1]]));
        assert_eq!(unit.graph.edges(), vec![(1, 2)]);
    }

    #[test]
    fn chorded_square_cut_has_no_induced_pair() {
        let g = chorded_square();
        let (x, y) = (set(&[1, 2]), set(&[3, 4]));
        let mut cut = g.cross_edges(&x, &y);
        cut.sort();
        assert_eq!(cut, vec![(1, 3), (1, 4), (2, 3)]);
        assert_eq!(g.max_induced_matching(&x, &y).len(), 1);
    }

    #[test]
    fn perfect_matching_is_induced() {
        for j in 1..=3u32 {
            let edges: Vec<(Var, Var)> = (1..=j).map(|i| (i, j + i)).collect();
            let g = Graph::from_edges(&edges).unwrap();
            let m = g.max_induced_matching(&(1..=j).collect(), &(j + 1..=2 * j).collect());
            assert_eq!(m.len(), j as usize);
        }
    }

    #[test]
    fn text_round_trip() {
        let mut g = chorded_square();
        g.add_vertex(9).unwrap();
        assert_eq!(Graph::parse_text(&g.to_text()).unwrap(), g);
        assert_eq!(Graph::from_edges(&[(2, 2)]), Err(LabError::SelfLoop(2)));
        assert!(matches!(Graph::parse_text("1 2 3\n"), Err(LabError::Parse { line: 1, .. })));
    }
}
