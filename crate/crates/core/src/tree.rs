//! Rooted binary trees with labeled leaves, shared by vtrees and branch
//! decompositions.
//!
//! Text form is nested parentheses over leaf labels. A group of one item is
//! that item; a group of `k > 2` items is folded to the left, so
//! `((1 2)((3)(4)))` reads as `((1 2) (3 4))`.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::cnf::Var;
use crate::hypergraph::VertexSet;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TreeError {
    #[error("position {0}: unexpected `{1}`")]
    Unexpected(usize, char),
    #[error("unbalanced parentheses")]
    Unbalanced,
    #[error("empty group at position {0}")]
    EmptyGroup(usize),
    #[error("bad leaf label `{0}`")]
    BadLabel(String),
    #[error("leaf {0} occurs twice")]
    DuplicateLeaf(Var),
    #[error("tree has no leaves")]
    Empty,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Node {
    Leaf(Var),
    Internal(usize, usize),
}

/// Nodes are stored children-first; the root is the last node.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BinaryTree {
    nodes: Vec<Node>,
}

/// A vtree: leaves in bijection with a variable set.
pub type Vtree = BinaryTree;
/// A branch decomposition: leaves in bijection with graph vertices.
pub type BranchDecomposition = BinaryTree;

impl BinaryTree {
    pub fn leaf(label: Var) -> Self {
        BinaryTree {
            nodes: vec![Node::Leaf(label)],
        }
    }

    pub fn join(left: BinaryTree, right: BinaryTree) -> Self {
        let offset = left.nodes.len();
        let mut nodes = left.nodes;
        let lroot = offset - 1;
        nodes.extend(right.nodes.into_iter().map(|n| match n {
            Node::Leaf(v) => Node::Leaf(v),
            Node::Internal(a, b) => Node::Internal(a + offset, b + offset),
        }));
        let rroot = nodes.len() - 1;
        nodes.push(Node::Internal(lroot, rroot));
        BinaryTree { nodes }
    }

    /// Left-deep caterpillar over `labels`.
    pub fn caterpillar(labels: &[Var]) -> Option<Self> {
        let (&first, rest) = labels.split_first()?;
        Some(
            rest.iter()
                .fold(BinaryTree::leaf(first), |t, &v| BinaryTree::join(t, BinaryTree::leaf(v))),
        )
    }

    pub fn nodes(&self) -> &[Node] {
        &self.nodes
    }

    pub fn root(&self) -> usize {
        self.nodes.len() - 1
    }

    pub fn node(&self, i: usize) -> Node {
        self.nodes[i]
    }

    pub fn leaves(&self) -> VertexSet {
        self.nodes
            .iter()
            .filter_map(|n| match n {
                Node::Leaf(v) => Some(*v),
                Node::Internal(..) => None,
            })
            .collect()
    }

    pub fn leaf_count(&self) -> usize {
        self.nodes.iter().filter(|n| matches!(n, Node::Leaf(_))).count()
    }

    /// Leaf labels under every node, indexed like [`BinaryTree::nodes`].
    pub fn leaf_sets(&self) -> Vec<VertexSet> {
        let mut sets: Vec<VertexSet> = Vec::with_capacity(self.nodes.len());
        for n in &self.nodes {
            let s = match *n {
                Node::Leaf(v) => BTreeSet::from([v]),
                Node::Internal(a, b) => sets[a].union(&sets[b]).copied().collect(),
            };
            sets.push(s);
        }
        sets
    }

    /// True if no label repeats and the labels are exactly `labels`.
    pub fn is_bijective_over(&self, labels: &VertexSet) -> bool {
        self.leaf_count() == labels.len() && &self.leaves() == labels
    }

    pub fn parse(text: &str) -> Result<Self, TreeError> {
        let chars: Vec<char> = text.chars().collect();
        let mut pos = 0;
        let tree = parse_item(&chars, &mut pos)?.ok_or(TreeError::Empty)?;
        skip_ws(&chars, &mut pos);
        if pos != chars.len() {
            return Err(TreeError::Unexpected(pos, chars[pos]));
        }
        let mut seen = BTreeSet::new();
        for n in &tree.nodes {
            if let Node::Leaf(v) = n {
                if !seen.insert(*v) {
                    return Err(TreeError::DuplicateLeaf(*v));
                }
            }
        }
        Ok(tree)
    }

    pub fn to_parens(&self) -> String {
        fn go(t: &BinaryTree, i: usize, out: &mut String) {
            match t.nodes[i] {
                Node::Leaf(v) => out.push_str(&v.to_string()),
                Node::Internal(a, b) => {
                    out.push('(');
                    go(t, a, out);
                    out.push(' ');
                    go(t, b, out);
                    out.push(')');
                }
            }
        }
        let mut out = String::new();
        go(self, self.root(), &mut out);
        out
    }
}

fn skip_ws(chars: &[char], pos: &mut usize) {
    while *pos < chars.len() && chars[*pos].is_whitespace() {
        *pos += 1;
    }
}

fn parse_item(chars: &[char], pos: &mut usize) -> Result<Option<BinaryTree>, TreeError> {
    skip_ws(chars, pos);
    let Some(&c) = chars.get(*pos) else {
        return Ok(None);
    };
    if c == '(' {
        let start = *pos;
        *pos += 1;
        let mut items = Vec::new();
        loop {
            skip_ws(chars, pos);
            match chars.get(*pos) {
                None => return Err(TreeError::Unbalanced),
                Some(')') => {
                    *pos += 1;
                    break;
                }
                Some(_) => match parse_item(chars, pos)? {
                    Some(t) => items.push(t),
                    None => return Err(TreeError::Unbalanced),
                },
            }
        }
        let mut it = items.into_iter();
        let first = it.next().ok_or(TreeError::EmptyGroup(start))?;
        Ok(Some(it.fold(first, BinaryTree::join)))
    } else if c.is_ascii_digit() {
        let start = *pos;
        while *pos < chars.len() && chars[*pos].is_ascii_alphanumeric() {
            *pos += 1;
        }
        let token: String = chars[start..*pos].iter().collect();
        match token.parse::<Var>() {
            Ok(v) if v > 0 => Ok(Some(BinaryTree::leaf(v))),
            _ => Err(TreeError::BadLabel(token)),
        }
    } else if c == ')' {
        Err(TreeError::Unbalanced)
    } else {
        Err(TreeError::Unexpected(*pos, c))
    }
}
