//! Irredundancy diagnostics: bad-edge witnesses, the full check, and the
//! incremental extension test used by the search.
//!
//! An edge `(u, v)` is *bad* when `v` is still reachable from `u` after
//! deleting the edge; a graph is irredundant exactly when it has no bad
//! edges.

use crate::digraph::{Digraph, ReachabilityMatrix};
use crate::{Error, Result};

/// A bad edge together with an alternate directed path proving badness.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BadEdgeWitness {
    pub edge: (usize, usize),
    /// Starts at `edge.0`, ends at `edge.1`, at least two edges long,
    /// and never uses `edge` itself.
    pub alternate_path: Vec<usize>,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct IrredundanceReport {
    pub is_irredundant: bool,
    pub bad_edges: Vec<BadEdgeWitness>,
}

/// Witness for a single edge, or None if the edge is not bad.
pub fn bad_edge_witness(g: &Digraph, e: (usize, usize)) -> Result<Option<BadEdgeWitness>> {
    let path = g.reaches_avoiding_edge(e.0, e.1, e)?;
    Ok(path.map(|alternate_path| BadEdgeWitness {
        edge: e,
        alternate_path,
    }))
}

/// Reports every bad edge, each with a deterministic witness path.
pub fn check(g: &Digraph) -> IrredundanceReport {
    let bad_edges: Vec<BadEdgeWitness> = g
        .edges()
        .filter_map(|e| bad_edge_witness(g, e).expect("edges come from the graph"))
        .collect();
    IrredundanceReport {
        is_irredundant: bad_edges.is_empty(),
        bad_edges,
    }
}

/// Incremental test: given an irredundant `g` with its reachability
/// matrix, decides whether `g + e` stays irredundant without rebuilding
/// the full report.
///
/// `g + e` is irredundant iff the head of `e` is not already reachable
/// from its tail, and no existing edge `(x, y)` gains an alternate path
/// routed through `e`, i.e. there is no edge with a path `x -> e.0`
/// and a path `e.1 -> y`, both avoiding `(x, y)`.
pub fn extend_keeps_irredundant(
    g: &Digraph,
    reach: &ReachabilityMatrix,
    e: (usize, usize),
) -> Result<bool> {
    let (u, v) = e;
    if u >= g.vertex_count() {
        return Err(Error::VertexOutOfRange {
            v: u,
            n: g.vertex_count(),
        });
    }
    if v >= g.vertex_count() {
        return Err(Error::VertexOutOfRange {
            v,
            n: g.vertex_count(),
        });
    }
    if u == v {
        return Err(Error::LoopEdge(u));
    }
    if g.has_edge(u, v) {
        return Err(Error::EdgeAlreadyPresent { u, v });
    }
    if reach.reaches(u, v) {
        return Ok(false);
    }
    for (x, y) in g.edges() {
        let fwd = g.reach_from_avoiding(x, Some((x, y)));
        if !fwd.get(u) {
            continue;
        }
        let bwd = g.reach_to_avoiding(y, Some((x, y)));
        if bwd.get(v) {
            return Ok(false);
        }
    }
    Ok(true)
}
