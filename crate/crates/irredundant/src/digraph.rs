//! Core directed-graph representation: reachability, the underlying
//! undirected view, triangle and double-edge detection, brute-force
//! canonical forms, and the Mantel bound check.

use crate::bits::BitRow;
use crate::{Error, Result};

/// Default vertex cap for brute-force canonicalization.
pub const DEFAULT_CANONICAL_LIMIT: usize = 10;

/// A directed graph on vertices `0..n` with no loops. Double edges
/// (both `(u,v)` and `(v,u)`) are allowed; parallel edges in the same
/// direction are not representable.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Digraph {
    n: usize,
    out: Vec<BitRow>,
    inn: Vec<BitRow>,
    edge_count: usize,
}

impl Digraph {
    pub fn empty(n: usize) -> Self {
        Digraph {
            n,
            out: vec![BitRow::new(n); n],
            inn: vec![BitRow::new(n); n],
            edge_count: 0,
        }
    }

    /// Builds a graph from an edge list. Duplicate edges collapse;
    /// loops and out-of-range labels are rejected.
    pub fn build(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Digraph::empty(n);
        for &(u, v) in edges {
            if u >= n {
                return Err(Error::VertexOutOfRange { v: u, n });
            }
            if v >= n {
                return Err(Error::VertexOutOfRange { v, n });
            }
            if u == v {
                return Err(Error::LoopEdge(u));
            }
            if !g.has_edge(u, v) {
                g.add_edge_unchecked(u, v);
            }
        }
        Ok(g)
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.out[u].get(v)
    }

    pub fn out_row(&self, v: usize) -> &BitRow {
        &self.out[v]
    }

    pub fn in_row(&self, v: usize) -> &BitRow {
        &self.inn[v]
    }

    pub fn out_degree(&self, v: usize) -> usize {
        self.out[v].count_ones()
    }

    pub fn in_degree(&self, v: usize) -> usize {
        self.inn[v].count_ones()
    }

    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<()> {
        if u >= self.n {
            return Err(Error::VertexOutOfRange { v: u, n: self.n });
        }
        if v >= self.n {
            return Err(Error::VertexOutOfRange { v, n: self.n });
        }
        if u == v {
            return Err(Error::LoopEdge(u));
        }
        if self.has_edge(u, v) {
            return Err(Error::EdgeAlreadyPresent { u, v });
        }
        self.add_edge_unchecked(u, v);
        Ok(())
    }

    fn add_edge_unchecked(&mut self, u: usize, v: usize) {
        self.out[u].set(v);
        self.inn[v].set(u);
        self.edge_count += 1;
    }

    pub fn remove_edge(&mut self, u: usize, v: usize) -> Result<()> {
        if !self.has_edge(u, v) {
            return Err(Error::NotAnEdge { u, v });
        }
        self.out[u].clear(v);
        self.inn[v].clear(u);
        self.edge_count -= 1;
        Ok(())
    }

    /// Edges in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |u| self.out[u].iter_ones().map(move |v| (u, v)))
    }

    /// Reachability closure. `reach[u][u]` is true by convention.
    pub fn reachability(&self) -> ReachabilityMatrix {
        let rows = (0..self.n)
            .map(|u| self.reach_from_avoiding(u, None))
            .collect();
        ReachabilityMatrix { n: self.n, rows }
    }

    /// Vertices reachable from `start` by a directed path, optionally
    /// treating one edge as deleted. Includes `start`.
    pub fn reach_from_avoiding(&self, start: usize, skip: Option<(usize, usize)>) -> BitRow {
        let mut seen = BitRow::new(self.n);
        seen.set(start);
        let mut stack = vec![start];
        while let Some(x) = stack.pop() {
            for y in self.out[x].iter_ones() {
                if skip == Some((x, y)) || seen.get(y) {
                    continue;
                }
                seen.set(y);
                stack.push(y);
            }
        }
        seen
    }

    /// Vertices that reach `target`, optionally avoiding one edge. Includes `target`.
    pub fn reach_to_avoiding(&self, target: usize, skip: Option<(usize, usize)>) -> BitRow {
        let mut seen = BitRow::new(self.n);
        seen.set(target);
        let mut stack = vec![target];
        while let Some(y) = stack.pop() {
            for x in self.inn[y].iter_ones() {
                if skip == Some((x, y)) || seen.get(x) {
                    continue;
                }
                seen.set(x);
                stack.push(x);
            }
        }
        seen
    }

    /// Shortest directed path from `u` to `v` in the graph with edge `e`
    /// deleted, or None. Ties are broken toward the smallest next vertex,
    /// so the result is deterministic.
    pub fn reaches_avoiding_edge(
        &self,
        u: usize,
        v: usize,
        e: (usize, usize),
    ) -> Result<Option<Vec<usize>>> {
        if !self.has_edge(e.0, e.1) {
            return Err(Error::NotAnEdge { u: e.0, v: e.1 });
        }
        let fwd = self.bfs_dist_avoiding(u, e, false);
        let total = match fwd[v] {
            Some(d) => d,
            None => return Ok(None),
        };
        let bwd = self.bfs_dist_avoiding(v, e, true);
        let mut path = vec![u];
        let mut cur = u;
        while cur != v {
            let d = fwd[cur].unwrap();
            // smallest successor on some shortest u->v path
            let next = self.out[cur]
                .iter_ones()
                .find(|&w| {
                    (cur, w) != e && fwd[w] == Some(d + 1) && bwd[w] == Some(total - d - 1)
                })
                .expect("BFS distances admit a successor");
            path.push(next);
            cur = next;
        }
        Ok(Some(path))
    }

    fn bfs_dist_avoiding(
        &self,
        start: usize,
        skip: (usize, usize),
        reverse: bool,
    ) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.n];
        dist[start] = Some(0);
        let mut queue = std::collections::VecDeque::from([start]);
        while let Some(x) = queue.pop_front() {
            let d = dist[x].unwrap();
            let row = if reverse { &self.inn[x] } else { &self.out[x] };
            for y in row.iter_ones() {
                let edge = if reverse { (y, x) } else { (x, y) };
                if edge == skip || dist[y].is_some() {
                    continue;
                }
                dist[y] = Some(d + 1);
                queue.push_back(y);
            }
        }
        dist
    }

    /// Unordered pairs `{u, v}` with an edge in at least one direction,
    /// as sorted `(min, max)` tuples in lexicographic order.
    pub fn underlying_undirected_edges(&self) -> Vec<(usize, usize)> {
        let mut pairs = Vec::new();
        for u in 0..self.n {
            for v in u + 1..self.n {
                if self.has_edge(u, v) || self.has_edge(v, u) {
                    pairs.push((u, v));
                }
            }
        }
        pairs
    }

    /// Lexicographically smallest triangle of the underlying undirected
    /// graph, or None.
    pub fn find_triangle(&self) -> Option<(usize, usize, usize)> {
        let und: Vec<BitRow> = (0..self.n)
            .map(|v| {
                let mut row = self.out[v].clone();
                row.union_inplace(&self.inn[v]);
                row
            })
            .collect();
        for u in 0..self.n {
            for v in u + 1..self.n {
                if !und[u].get(v) {
                    continue;
                }
                for w in v + 1..self.n {
                    if und[u].get(w) && und[v].get(w) {
                        return Some((u, v, w));
                    }
                }
            }
        }
        None
    }

    /// Lexicographically smallest pair `{u, v}` with edges in both
    /// directions, or None.
    pub fn find_double_edge(&self) -> Option<(usize, usize)> {
        for u in 0..self.n {
            for v in self.out[u].iter_ones() {
                if v > u && self.has_edge(v, u) {
                    return Some((u, v));
                }
            }
        }
        None
    }

    pub fn canonical_code(&self) -> Result<CanonicalCode> {
        self.canonical_code_with_limit(DEFAULT_CANONICAL_LIMIT)
    }

    /// Minimum row-major adjacency bit string over all vertex permutations,
    /// restricted to orderings compatible with the sorted
    /// (out-degree, in-degree) sequence.
    pub fn canonical_code_with_limit(&self, limit: usize) -> Result<CanonicalCode> {
        if self.n > limit {
            return Err(Error::CanonicalTooLarge { n: self.n, limit });
        }
        let n = self.n;
        // Vertices grouped by degree key, descending; only within-block
        // permutations can yield the minimal code.
        let mut keyed: Vec<(usize, usize, usize)> = (0..n)
            .map(|v| (self.out_degree(v), self.in_degree(v), v))
            .collect();
        keyed.sort_by(|a, b| (b.0, b.1, a.2).cmp(&(a.0, a.1, b.2)));
        let mut blocks: Vec<Vec<usize>> = Vec::new();
        for &(od, id, v) in &keyed {
            match blocks.last_mut() {
                Some(block)
                    if self.out_degree(block[0]) == od && self.in_degree(block[0]) == id =>
                {
                    block.push(v)
                }
                _ => blocks.push(vec![v]),
            }
        }

        let mut perm: Vec<usize> = keyed.iter().map(|k| k.2).collect();
        let mut best: Option<Vec<u8>> = None;
        let mut pos = vec![0usize; n];
        self.minimize_over_blocks(&blocks, 0, 0, &mut perm, &mut pos, &mut best);
        Ok(CanonicalCode {
            n,
            bytes: best.unwrap_or_default(),
        })
    }

    fn minimize_over_blocks(
        &self,
        blocks: &[Vec<usize>],
        block_idx: usize,
        offset: usize,
        perm: &mut [usize],
        pos: &mut [usize],
        best: &mut Option<Vec<u8>>,
    ) {
        if block_idx == blocks.len() {
            let code = self.encode_under(perm, pos);
            if best.as_ref().map_or(true, |b| code < *b) {
                *best = Some(code);
            }
            return;
        }
        let len = blocks[block_idx].len();
        permute_in_place(perm, offset, len, &mut |perm| {
            self.minimize_over_blocks(blocks, block_idx + 1, offset + len, perm, pos, best)
        });
    }

    fn encode_under(&self, perm: &[usize], pos: &mut [usize]) -> Vec<u8> {
        let n = self.n;
        for (i, &old) in perm.iter().enumerate() {
            pos[old] = i;
        }
        let mut bytes = vec![0u8; (n * n).div_ceil(8)];
        for (i, &old) in perm.iter().enumerate() {
            for w in self.out[old].iter_ones() {
                let bit = i * n + pos[w];
                bytes[bit / 8] |= 1 << (7 - bit % 8);
            }
        }
        bytes
    }

    /// Triangle-freeness of the underlying undirected graph, its edge
    /// count, and the Mantel bound. `violation` flags a triangle-free
    /// graph exceeding the bound, which would indicate a bug.
    pub fn mantel_bound_check(&self) -> MantelReport {
        let undirected_edge_count = self.underlying_undirected_edges().len();
        let is_triangle_free = self.find_triangle().is_none();
        let bound = self.n * self.n / 4;
        MantelReport {
            is_triangle_free,
            undirected_edge_count,
            bound,
            violation: is_triangle_free && undirected_edge_count > bound,
        }
    }
}

/// Heap's algorithm over `slice[offset..offset+len]`, visiting every
/// arrangement exactly once.
fn permute_in_place<F: FnMut(&mut [usize])>(
    slice: &mut [usize],
    offset: usize,
    len: usize,
    visit: &mut F,
) {
    fn heap<F: FnMut(&mut [usize])>(slice: &mut [usize], offset: usize, k: usize, visit: &mut F) {
        if k <= 1 {
            visit(slice);
            return;
        }
        for i in 0..k {
            heap(slice, offset, k - 1, visit);
            if k % 2 == 0 {
                slice.swap(offset + i, offset + k - 1);
            } else {
                slice.swap(offset, offset + k - 1);
            }
        }
    }
    heap(slice, offset, len, visit);
}

/// `reach[u][v]` is true iff there is a directed path (possibly empty)
/// from `u` to `v`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ReachabilityMatrix {
    n: usize,
    rows: Vec<BitRow>,
}

impl ReachabilityMatrix {
    pub fn vertex_count(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn reaches(&self, u: usize, v: usize) -> bool {
        self.rows[u].get(v)
    }

    pub fn row(&self, u: usize) -> &BitRow {
        &self.rows[u]
    }
}

/// Permutation-invariant byte encoding of a digraph. Equal codes mean
/// isomorphic graphs (and vice versa).
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct CanonicalCode {
    n: usize,
    bytes: Vec<u8>,
}

impl CanonicalCode {
    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn to_hex(&self) -> String {
        self.bytes.iter().map(|b| format!("{b:02x}")).collect()
    }

    /// Decodes the canonical adjacency matrix back into a graph; the
    /// result is the canonical representative of the class.
    pub fn to_digraph(&self) -> Digraph {
        let n = self.n;
        let mut g = Digraph::empty(n);
        for i in 0..n {
            for j in 0..n {
                let bit = i * n + j;
                if self.bytes[bit / 8] >> (7 - bit % 8) & 1 == 1 {
                    g.add_edge_unchecked(i, j);
                }
            }
        }
        g
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct MantelReport {
    pub is_triangle_free: bool,
    pub undirected_edge_count: usize,
    pub bound: usize,
    pub violation: bool,
}
