//! The two extremal families — double trees and oriented complete
//! bipartite graphs — plus classification against them and exhaustive
//! enumeration of double trees up to isomorphism.

use std::collections::BTreeMap;

use rand::Rng;

use crate::digraph::Digraph;
use crate::{Error, Result};

/// Vertex cap for `all_double_trees`; Prufer enumeration is n^(n-2).
pub const ALL_DOUBLE_TREES_CAP: usize = 10;

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum ExtremalClass {
    /// Every edge double; the underlying undirected graph is a tree.
    DoubleTree { tree_edges: Vec<(usize, usize)> },
    /// No double edges, parts differ in size by at most one, and every
    /// edge runs from `part_u` to `part_v` with all such pairs present.
    SimpleBalancedCompleteBipartite {
        part_u: Vec<usize>,
        part_v: Vec<usize>,
    },
    Other,
}

/// Doubles every edge of an undirected tree. The input must be a tree:
/// the vertex count is inferred as one more than the edge count, and the
/// edges must connect exactly those vertices.
pub fn double_tree(tree_edges: &[(usize, usize)]) -> Result<Digraph> {
    let n = tree_edges.len() + 1;
    let mut und = vec![Vec::new(); n];
    for &(a, b) in tree_edges {
        if a >= n || b >= n {
            return Err(Error::NotATree(format!(
                "vertex {} out of range for {} edges (expected labels 0..{})",
                a.max(b),
                tree_edges.len(),
                n
            )));
        }
        if a == b {
            return Err(Error::NotATree(format!("loop at vertex {a}")));
        }
        if und[a].contains(&b) {
            return Err(Error::NotATree(format!("duplicate edge {{{a}, {b}}}")));
        }
        und[a].push(b);
        und[b].push(a);
    }
    // n-1 distinct edges + connected => acyclic
    let mut seen = vec![false; n];
    let mut stack = vec![0usize];
    seen[0] = true;
    while let Some(v) = stack.pop() {
        for &w in &und[v] {
            if !seen[w] {
                seen[w] = true;
                stack.push(w);
            }
        }
    }
    if let Some(v) = seen.iter().position(|s| !s) {
        return Err(Error::NotATree(format!(
            "disconnected: vertex {v} unreachable from vertex 0"
        )));
    }
    let mut edges = Vec::with_capacity(2 * tree_edges.len());
    for &(a, b) in tree_edges {
        edges.push((a, b));
        edges.push((b, a));
    }
    Digraph::build(n, &edges)
}

/// All `a * b` edges directed from part `{0..a}` to part `{a..a+b}`.
/// Contains no directed path of length two, hence is irredundant.
pub fn oriented_complete_bipartite(a: usize, b: usize) -> Result<Digraph> {
    if a == 0 || b == 0 {
        return Err(Error::EmptyPart { a, b });
    }
    let mut edges = Vec::with_capacity(a * b);
    for u in 0..a {
        for v in a..a + b {
            edges.push((u, v));
        }
    }
    Digraph::build(a + b, &edges)
}

/// Matches a graph against the two extremal shapes. The bipartition is
/// recovered from the orientation: sources (out-edges only) form one
/// part, sinks the other; isolated vertices make the graph `Other`.
pub fn classify_extremal(g: &Digraph) -> ExtremalClass {
    let n = g.vertex_count();
    if let Some(tree_edges) = double_tree_shape(g) {
        return ExtremalClass::DoubleTree { tree_edges };
    }

    if n == 0 || g.edge_count() == 0 {
        return ExtremalClass::Other;
    }
    let mut part_u = Vec::new();
    let mut part_v = Vec::new();
    for v in 0..n {
        let out = g.out_degree(v);
        let inn = g.in_degree(v);
        match (out > 0, inn > 0) {
            (true, false) => part_u.push(v),
            (false, true) => part_v.push(v),
            _ => return ExtremalClass::Other, // mixed or isolated
        }
    }
    if part_u.len().abs_diff(part_v.len()) > 1 {
        return ExtremalClass::Other;
    }
    if g.edge_count() != part_u.len() * part_v.len() {
        return ExtremalClass::Other;
    }
    for &u in &part_u {
        for &v in &part_v {
            if !g.has_edge(u, v) {
                return ExtremalClass::Other;
            }
        }
    }
    ExtremalClass::SimpleBalancedCompleteBipartite { part_u, part_v }
}

fn double_tree_shape(g: &Digraph) -> Option<Vec<(usize, usize)>> {
    let n = g.vertex_count();
    let und = g.underlying_undirected_edges();
    if und.len() + 1 != n || g.edge_count() != 2 * und.len() {
        return None;
    }
    // every underlying edge double, n-1 of them; connectivity decides
    for &(a, b) in &und {
        if !(g.has_edge(a, b) && g.has_edge(b, a)) {
            return None;
        }
    }
    let mut adj = vec![Vec::new(); n];
    for &(a, b) in &und {
        adj[a].push(b);
        adj[b].push(a);
    }
    let mut seen = vec![false; n];
    let mut stack = vec![0usize];
    seen[0] = true;
    let mut count = 1;
    while let Some(v) = stack.pop() {
        for &w in &adj[v] {
            if !seen[w] {
                seen[w] = true;
                count += 1;
                stack.push(w);
            }
        }
    }
    (count == n).then_some(und)
}

/// Decodes a Prufer sequence over `0..n` into the tree's edge list.
fn prufer_decode(n: usize, seq: &[usize]) -> Vec<(usize, usize)> {
    use std::cmp::Reverse;
    use std::collections::BinaryHeap;

    debug_assert_eq!(seq.len(), n.saturating_sub(2));
    let mut degree = vec![1usize; n];
    for &v in seq {
        degree[v] += 1;
    }
    let mut leaves: BinaryHeap<Reverse<usize>> = (0..n)
        .filter(|&v| degree[v] == 1)
        .map(Reverse)
        .collect();
    let mut edges = Vec::with_capacity(n - 1);
    for &v in seq {
        let Reverse(leaf) = leaves.pop().expect("a leaf always remains");
        edges.push((leaf.min(v), leaf.max(v)));
        degree[v] -= 1;
        if degree[v] == 1 {
            leaves.push(Reverse(v));
        }
    }
    let Reverse(a) = leaves.pop().unwrap();
    let Reverse(b) = leaves.pop().unwrap();
    edges.push((a.min(b), a.max(b)));
    edges
}

/// One double tree per isomorphism class, in canonical-code order.
/// Enumerates all labeled trees via Prufer sequences and deduplicates.
pub fn all_double_trees(n: usize) -> Result<Vec<Digraph>> {
    if n < 1 || n > ALL_DOUBLE_TREES_CAP {
        return Err(Error::CapExceeded {
            what: "double-tree enumeration",
            cap: ALL_DOUBLE_TREES_CAP,
            got: n,
        });
    }
    if n == 1 {
        return Ok(vec![Digraph::empty(1)]);
    }
    if n == 2 {
        return Ok(vec![double_tree(&[(0, 1)])?]);
    }
    let mut classes = BTreeMap::new();
    let mut seq = vec![0usize; n - 2];
    loop {
        let tree = prufer_decode(n, &seq);
        let dt = double_tree(&tree)?;
        let code = dt.canonical_code()?;
        classes.entry(code).or_insert(dt);
        // next sequence in base n
        let mut i = 0;
        loop {
            if i == seq.len() {
                let reps = classes.into_values().collect();
                return Ok(reps);
            }
            seq[i] += 1;
            if seq[i] < n {
                break;
            }
            seq[i] = 0;
            i += 1;
        }
    }
}

/// Uniform random labeled tree on `n` vertices via a random Prufer
/// sequence. Deterministic for a given RNG state.
pub fn random_tree<R: Rng>(n: usize, rng: &mut R) -> Vec<(usize, usize)> {
    match n {
        0 | 1 => Vec::new(),
        2 => vec![(0, 1)],
        _ => {
            let seq: Vec<usize> = (0..n - 2).map(|_| rng.gen_range(0..n)).collect();
            prufer_decode(n, &seq)
        }
    }
}
