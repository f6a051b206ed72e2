//! Contractions of double edges and directed triangles, and the
//! recurrence bound they yield for the maximum edge count.
//!
//! Both contractions require an irredundant input: only then does the
//! merged vertex inherit at most one edge per outside neighbor in each
//! direction, making the edge count drop by exactly 2 (double edge) or
//! 3 (triangle). The exclusivity claims behind that accounting are
//! verified at runtime and violations fail loudly.

use crate::digraph::Digraph;
use crate::irredundance;
use crate::{Error, Result};

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ContractionKind {
    DoubleEdge,
    Triangle,
}

/// Result of contracting a 2- or 3-cycle into a single vertex.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ContractionOutcome {
    pub kind: ContractionKind,
    /// Old labels of the contracted cycle.
    pub cycle: Vec<usize>,
    pub contracted: Digraph,
    /// New label of the merged vertex.
    pub merged_vertex: usize,
    /// Old label -> new label; all cycle vertices map to `merged_vertex`.
    pub vertex_map: Vec<usize>,
}

fn ensure_irredundant(g: &Digraph) -> Result<()> {
    let report = irredundance::check(g);
    match report.bad_edges.first() {
        None => Ok(()),
        Some(w) => Err(Error::NotIrredundant {
            u: w.edge.0,
            v: w.edge.1,
        }),
    }
}

/// Relabeling shared by both contractions: survivors keep their relative
/// order and the merged vertex takes the smallest removed label.
fn contract_set(g: &Digraph, removed: &[usize], kind: ContractionKind) -> ContractionOutcome {
    let n = g.vertex_count();
    let anchor = *removed.iter().min().unwrap();
    let is_removed = |v: usize| removed.contains(&v);

    let mut vertex_map = vec![0usize; n];
    let mut next = 0usize;
    let mut merged_vertex = 0usize;
    for v in 0..n {
        if v == anchor {
            merged_vertex = next;
            next += 1;
        } else if !is_removed(v) {
            vertex_map[v] = next;
            next += 1;
        }
    }
    for &v in removed {
        vertex_map[v] = merged_vertex;
    }

    let mut contracted = Digraph::empty(n - removed.len() + 1);
    for (a, b) in g.edges() {
        match (is_removed(a), is_removed(b)) {
            (false, false) => {
                let _ = contracted.add_edge(vertex_map[a], vertex_map[b]);
            }
            (true, false) => {
                if !contracted.has_edge(merged_vertex, vertex_map[b]) {
                    contracted.add_edge(merged_vertex, vertex_map[b]).unwrap();
                }
            }
            (false, true) => {
                if !contracted.has_edge(vertex_map[a], merged_vertex) {
                    contracted.add_edge(vertex_map[a], merged_vertex).unwrap();
                }
            }
            (true, true) => {} // internal cycle edge, dropped
        }
    }

    ContractionOutcome {
        kind,
        cycle: removed.to_vec(),
        contracted,
        merged_vertex,
        vertex_map,
    }
}

/// Contracts the double edge `u <-> v` into a single vertex. The input
/// must be irredundant: that guarantees no outside vertex has edges to
/// (or from) both endpoints, so the edge count drops by exactly 2 and the
/// result is again irredundant.
pub fn contract_double_edge(g: &Digraph, u: usize, v: usize) -> Result<ContractionOutcome> {
    if !g.has_edge(u, v) || !g.has_edge(v, u) {
        return Err(Error::NotDoubleEdge { u, v });
    }
    ensure_irredundant(g)?;
    for w in 0..g.vertex_count() {
        if w == u || w == v {
            continue;
        }
        if g.has_edge(w, u) && g.has_edge(w, v) {
            return Err(Error::ContractionInvariant(format!(
                "vertex {w} has edges to both endpoints of double edge ({u}, {v})"
            )));
        }
        if g.has_edge(u, w) && g.has_edge(v, w) {
            return Err(Error::ContractionInvariant(format!(
                "vertex {w} has edges from both endpoints of double edge ({u}, {v})"
            )));
        }
    }
    let outcome = contract_set(g, &[u, v], ContractionKind::DoubleEdge);
    if outcome.contracted.edge_count() + 2 != g.edge_count() {
        return Err(Error::ContractionInvariant(format!(
            "edge count dropped from {} to {}, expected a drop of 2",
            g.edge_count(),
            outcome.contracted.edge_count()
        )));
    }
    Ok(outcome)
}

/// Contracts an undirected triangle into a single vertex. The input must
/// be irredundant and free of double edges; the triangle is then
/// necessarily a directed 3-cycle and the edge count drops by exactly 3.
pub fn contract_triangle(
    g: &Digraph,
    u1: usize,
    u2: usize,
    u3: usize,
) -> Result<ContractionOutcome> {
    if let Some((a, b)) = g.find_double_edge() {
        return Err(Error::DoubleEdgePresent { u: a, v: b });
    }
    let tri = [u1, u2, u3];
    let linked = |a: usize, b: usize| g.has_edge(a, b) || g.has_edge(b, a);
    if u1 == u2
        || u1 == u3
        || u2 == u3
        || !(linked(u1, u2) && linked(u2, u3) && linked(u1, u3))
    {
        return Err(Error::NotTriangle(u1, u2, u3));
    }
    ensure_irredundant(g)?;
    // With no double edges, irredundancy forces the triangle to be a
    // directed 3-cycle.
    let directed_cycle = (g.has_edge(u1, u2) && g.has_edge(u2, u3) && g.has_edge(u3, u1))
        || (g.has_edge(u2, u1) && g.has_edge(u1, u3) && g.has_edge(u3, u2));
    if !directed_cycle {
        return Err(Error::ContractionInvariant(format!(
            "triangle ({u1}, {u2}, {u3}) is not a directed 3-cycle"
        )));
    }
    for v in 0..g.vertex_count() {
        if tri.contains(&v) {
            continue;
        }
        let into = tri.iter().filter(|&&t| g.has_edge(v, t)).count();
        let from = tri.iter().filter(|&&t| g.has_edge(t, v)).count();
        if into > 1 || from > 1 {
            return Err(Error::ContractionInvariant(format!(
                "vertex {v} has {into} edges into and {from} edges out of triangle ({u1}, {u2}, {u3})"
            )));
        }
    }
    let outcome = contract_set(g, &tri, ContractionKind::Triangle);
    if outcome.contracted.edge_count() + 3 != g.edge_count() {
        return Err(Error::ContractionInvariant(format!(
            "edge count dropped from {} to {}, expected a drop of 3",
            g.edge_count(),
            outcome.contracted.edge_count()
        )));
    }
    Ok(outcome)
}

/// Repeatedly contracts: a double edge if one exists, else a triangle,
/// until neither remains. Returns the full trace.
pub fn reduce_fully(g: &Digraph) -> Result<Vec<ContractionOutcome>> {
    ensure_irredundant(g)?;
    let mut steps = Vec::new();
    let mut current = g.clone();
    loop {
        let outcome = if let Some((u, v)) = current.find_double_edge() {
            contract_double_edge(&current, u, v)?
        } else if let Some((a, b, c)) = current.find_triangle() {
            contract_triangle(&current, a, b, c)?
        } else {
            return Ok(steps);
        };
        current = outcome.contracted.clone();
        steps.push(outcome);
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, serde::Serialize)]
pub enum RecurrenceTerm {
    /// f(n-1) + 2, from double-edge contraction.
    DoubleEdge,
    /// f(n-2) + 3, from triangle contraction.
    Triangle,
    /// floor(n^2 / 4), from Mantel's theorem.
    Mantel,
}

/// Upper bounds on f(n) from the contraction recurrence
/// f(n) <= max { f(n-1)+2, f(n-2)+3, floor(n^2/4) }, seeded with
/// f(1) = 0 and f(2) = 2.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BoundTable {
    /// values[n] for 1 <= n <= N; index 0 is unused.
    pub values: Vec<usize>,
    /// Which recurrence terms attain the maximum, per n >= 3.
    pub attained: Vec<Vec<RecurrenceTerm>>,
}

impl BoundTable {
    pub fn value(&self, n: usize) -> usize {
        self.values[n]
    }
}

pub fn recurrence_bound(max_n: usize) -> Result<BoundTable> {
    if max_n < 2 {
        return Err(Error::BoundTableTooSmall(max_n));
    }
    let mut values = vec![0usize; max_n + 1];
    let mut attained = vec![Vec::new(); max_n + 1];
    values[1] = 0;
    values[2] = 2;
    for n in 3..=max_n {
        let terms = [
            (RecurrenceTerm::DoubleEdge, values[n - 1] + 2),
            (RecurrenceTerm::Triangle, values[n - 2] + 3),
            (RecurrenceTerm::Mantel, n * n / 4),
        ];
        let best = terms.iter().map(|t| t.1).max().unwrap();
        values[n] = best;
        attained[n] = terms
            .iter()
            .filter(|t| t.1 == best)
            .map(|t| t.0)
            .collect();
    }
    Ok(BoundTable { values, attained })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::irredundance::check;

    fn g(n: usize, edges: &[(usize, usize)]) -> Digraph {
        Digraph::build(n, edges).unwrap()
    }

    #[test]
    fn contract_double_edge_examples() {
        // double edge {0,1} plus edge (2,0)
        let h = g(3, &[(0, 1), (1, 0), (2, 0)]);
        let out = contract_double_edge(&h, 0, 1).unwrap();
        assert_eq!(out.contracted.vertex_count(), 2);
        assert_eq!(out.contracted.edge_count(), 1);
        assert_eq!(out.merged_vertex, 0);
        assert_eq!(out.vertex_map, vec![0, 0, 1]);
        assert!(out.contracted.has_edge(1, 0));
        assert!(check(&out.contracted).is_irredundant);

        // isolated double edge
        let d = g(2, &[(0, 1), (1, 0)]);
        let out = contract_double_edge(&d, 0, 1).unwrap();
        assert_eq!(out.contracted.vertex_count(), 1);
        assert_eq!(out.contracted.edge_count(), 0);

        // double tree on a path: contracting either double edge leaves a
        // double edge on 2 vertices
        let path = g(3, &[(0, 1), (1, 0), (1, 2), (2, 1)]);
        for (u, v) in [(0, 1), (1, 2)] {
            let out = contract_double_edge(&path, u, v).unwrap();
            assert_eq!(out.contracted.edge_count(), 2);
            assert_eq!(out.contracted.find_double_edge(), Some((0, 1)));
            assert!(check(&out.contracted).is_irredundant);
        }
    }

    #[test]
    fn contract_double_edge_rejections() {
        let h = g(3, &[(0, 1), (1, 2)]);
        assert!(matches!(
            contract_double_edge(&h, 0, 1),
            Err(Error::NotDoubleEdge { u: 0, v: 1 })
        ));

        // redundant graph: (0,2) is bad
        let r = g(3, &[(0, 1), (1, 0), (0, 2), (1, 2)]);
        assert!(matches!(
            contract_double_edge(&r, 0, 1),
            Err(Error::NotIrredundant { .. })
        ));
    }

    #[test]
    fn contract_triangle_examples() {
        let cycle = g(3, &[(0, 1), (1, 2), (2, 0)]);
        let out = contract_triangle(&cycle, 0, 1, 2).unwrap();
        assert_eq!(out.contracted.vertex_count(), 1);
        assert_eq!(out.contracted.edge_count(), 0);

        // 3-cycle plus pendant in-edge (3,0)
        let h = g(4, &[(0, 1), (1, 2), (2, 0), (3, 0)]);
        let out = contract_triangle(&h, 0, 1, 2).unwrap();
        assert_eq!(out.contracted.vertex_count(), 2);
        assert_eq!(out.contracted.edge_count(), 1);
        assert_eq!(out.merged_vertex, 0);
        assert!(out.contracted.has_edge(1, 0));
        assert!(check(&out.contracted).is_irredundant);

        // 3-cycle plus pendant out-edge (0,3)
        let h = g(4, &[(0, 1), (1, 2), (2, 0), (0, 3)]);
        let out = contract_triangle(&h, 0, 1, 2).unwrap();
        assert_eq!(out.contracted.vertex_count(), 2);
        assert_eq!(out.contracted.edge_count(), 1);
        assert!(out.contracted.has_edge(0, 1));
        assert!(check(&out.contracted).is_irredundant);
    }

    #[test]
    fn contract_triangle_rejections() {
        let h = g(4, &[(0, 1), (1, 2), (2, 0), (3, 0)]);
        assert!(matches!(
            contract_triangle(&h, 0, 1, 3),
            Err(Error::NotTriangle(0, 1, 3))
        ));

        let with_double = g(3, &[(0, 1), (1, 0), (1, 2)]);
        assert!(matches!(
            contract_triangle(&with_double, 0, 1, 2),
            Err(Error::DoubleEdgePresent { u: 0, v: 1 })
        ));
    }

    #[test]
    fn reduce_fully_examples() {
        // double tree on 5 vertices (a path): 4 double-edge contractions
        let mut edges = Vec::new();
        for i in 0..4 {
            edges.push((i, i + 1));
            edges.push((i + 1, i));
        }
        let steps = reduce_fully(&g(5, &edges)).unwrap();
        assert_eq!(steps.len(), 4);
        assert!(steps.iter().all(|s| s.kind == ContractionKind::DoubleEdge));
        assert_eq!(steps.last().unwrap().contracted.vertex_count(), 1);

        let mut edges = Vec::new();
        for u in 0..3 {
            for v in 3..7 {
                edges.push((u, v));
            }
        }
        assert!(reduce_fully(&g(7, &edges)).unwrap().is_empty());

        let steps = reduce_fully(&g(3, &[(0, 1), (1, 2), (2, 0)])).unwrap();
        assert_eq!(steps.len(), 1);
        assert_eq!(steps[0].kind, ContractionKind::Triangle);
        assert_eq!(steps[0].contracted.vertex_count(), 1);
    }

    #[test]
    fn recurrence_examples() {
        let table = recurrence_bound(8).unwrap();
        assert_eq!(table.value(7), 12);
        assert!(table.attained[7].contains(&RecurrenceTerm::DoubleEdge));
        assert!(table.attained[7].contains(&RecurrenceTerm::Mantel));
        assert_eq!(table.value(8), 16);
        assert_eq!(table.attained[8], vec![RecurrenceTerm::Mantel]);

        assert!(matches!(recurrence_bound(1), Err(Error::BoundTableTooSmall(1))));
    }

    #[test]
    fn recurrence_matches_closed_form_to_100() {
        let table = recurrence_bound(100).unwrap();
        for n in 1..=100 {
            let expected = if n <= 7 { 2 * n - 2 } else { n * n / 4 };
            assert_eq!(table.value(n), expected, "mismatch at n = {n}");
        }
        // crossover: floor((n+2)^2/4) >= floor((n+1)^2/4) + 2 for n >= 7
        for n in 7..=98 {
            assert!((n + 2) * (n + 2) / 4 >= (n + 1) * (n + 1) / 4 + 2);
        }
    }
}
