//! Randomized property tests for the invariants the library relies on.

use std::collections::{BTreeSet, HashSet};

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use irredundant::constructors::all_double_trees;
use irredundant::digraph::Digraph;
use irredundant::irredundance::{check, extend_keeps_irredundant};
use irredundant::search::grow_random_irredundant;

/// Arbitrary digraph on up to `max_n` vertices as (n, edge bitmask as
/// pair selections).
fn arb_digraph(max_n: usize) -> impl Strategy<Value = Digraph> {
    (1..=max_n).prop_flat_map(|n| {
        let slots = n * n;
        proptest::collection::vec(proptest::bool::ANY, slots).prop_map(move |bits| {
            let mut edges = Vec::new();
            for u in 0..n {
                for v in 0..n {
                    if u != v && bits[u * n + v] {
                        edges.push((u, v));
                    }
                }
            }
            Digraph::build(n, &edges).unwrap()
        })
    })
}

fn arb_irredundant(max_n: usize) -> impl Strategy<Value = Digraph> {
    (1..=max_n, any::<u64>(), 0.3f64..1.0).prop_map(|(n, seed, keep)| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        grow_random_irredundant(n, keep, &mut rng)
    })
}

/// Reference reachability by plain DFS over the edge list.
fn reach_oracle(g: &Digraph, start: usize) -> HashSet<usize> {
    let mut seen = HashSet::from([start]);
    let mut stack = vec![start];
    while let Some(x) = stack.pop() {
        for (u, v) in g.edges() {
            if u == x && seen.insert(v) {
                stack.push(v);
            }
        }
    }
    seen
}

/// Reference "alternate path" predicate: path enumeration avoiding one
/// edge, checked against the incremental machinery.
fn has_alternate_path(g: &Digraph, (u, v): (usize, usize)) -> bool {
    fn dfs(g: &Digraph, skip: (usize, usize), x: usize, target: usize, seen: &mut Vec<bool>) -> bool {
        if x == target {
            return true;
        }
        seen[x] = true;
        for (a, b) in g.edges() {
            if a == x && (a, b) != skip && !seen[b] && dfs(g, skip, b, target, seen) {
                return true;
            }
        }
        false
    }
    dfs(g, (u, v), u, v, &mut vec![false; g.vertex_count()])
}

proptest! {
    #[test]
    fn reachability_matches_dfs_oracle(g in arb_digraph(10)) {
        let reach = g.reachability();
        for start in 0..g.vertex_count() {
            let oracle = reach_oracle(&g, start);
            for v in 0..g.vertex_count() {
                prop_assert_eq!(reach.reaches(start, v), oracle.contains(&v));
            }
        }
    }

    #[test]
    fn check_matches_path_enumeration(g in arb_digraph(5)) {
        let report = check(&g);
        let bad: BTreeSet<(usize, usize)> =
            report.bad_edges.iter().map(|w| w.edge).collect();
        for e in g.edges() {
            prop_assert_eq!(bad.contains(&e), has_alternate_path(&g, e), "edge {:?}", e);
        }
    }

    #[test]
    fn canonical_code_is_relabeling_invariant(g in arb_digraph(7), seed in any::<u64>()) {
        use rand::seq::SliceRandom;
        let code = g.canonical_code().unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = g.vertex_count();
        let mut perm: Vec<usize> = (0..n).collect();
        perm.shuffle(&mut rng);
        let relabeled: Vec<(usize, usize)> =
            g.edges().map(|(u, v)| (perm[u], perm[v])).collect();
        let h = Digraph::build(n, &relabeled).unwrap();
        prop_assert_eq!(h.canonical_code().unwrap(), code);
    }

    #[test]
    fn downward_closure_holds(g in arb_irredundant(7), pick in any::<prop::sample::Index>()) {
        let edges: Vec<(usize, usize)> = g.edges().collect();
        prop_assume!(!edges.is_empty());
        let (u, v) = edges[pick.index(edges.len())];
        let mut h = g.clone();
        h.remove_edge(u, v).unwrap();
        prop_assert!(check(&h).is_irredundant);
    }

    #[test]
    fn incremental_check_agrees_with_recomputation(
        g in arb_irredundant(7),
        u in 0usize..7,
        v in 0usize..7,
    ) {
        let n = g.vertex_count();
        prop_assume!(u < n && v < n && u != v && !g.has_edge(u, v));
        let reach = g.reachability();
        let fast = extend_keeps_irredundant(&g, &reach, (u, v)).unwrap();
        let mut h = g.clone();
        h.add_edge(u, v).unwrap();
        prop_assert_eq!(fast, check(&h).is_irredundant);
    }

    #[test]
    fn witnesses_reverify(g in arb_digraph(6)) {
        for w in check(&g).bad_edges {
            let (u, v) = w.edge;
            let path = &w.alternate_path;
            prop_assert_eq!(path.first(), Some(&u));
            prop_assert_eq!(path.last(), Some(&v));
            prop_assert!(path.len() >= 3);
            for pair in path.windows(2) {
                prop_assert!(g.has_edge(pair[0], pair[1]));
                prop_assert!((pair[0], pair[1]) != (u, v));
            }
        }
    }
}

/// Canonical codes separate all non-isomorphic digraphs on 3 vertices.
#[test]
fn canonical_code_separates_three_vertex_digraphs() {
    let mut by_code: std::collections::HashMap<_, Vec<Digraph>> = Default::default();
    let pairs = [(0, 1), (1, 0), (0, 2), (2, 0), (1, 2), (2, 1)];
    for mask in 0u32..64 {
        let edges: Vec<(usize, usize)> = pairs
            .iter()
            .enumerate()
            .filter(|(k, _)| mask >> k & 1 == 1)
            .map(|(_, &e)| e)
            .collect();
        let g = Digraph::build(3, &edges).unwrap();
        by_code.entry(g.canonical_code().unwrap()).or_default().push(g);
    }
    // 16 isomorphism classes of digraphs on 3 vertices (OEIS A000273)
    assert_eq!(by_code.len(), 16);
    // and every bucket really is one orbit: all members map to the
    // representative under some permutation
    for (code, members) in by_code {
        let rep = code.to_digraph();
        for g in members {
            assert!(is_isomorphic_brute(&g, &rep));
        }
    }
}

fn is_isomorphic_brute(a: &Digraph, b: &Digraph) -> bool {
    let n = a.vertex_count();
    if n != b.vertex_count() || a.edge_count() != b.edge_count() {
        return false;
    }
    let mut perm: Vec<usize> = (0..n).collect();
    loop {
        if a.edges().all(|(u, v)| b.has_edge(perm[u], perm[v])) {
            return true;
        }
        if !next_permutation(&mut perm) {
            return false;
        }
    }
}

fn next_permutation(p: &mut [usize]) -> bool {
    let n = p.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && p[i - 1] >= p[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while p[j] <= p[i - 1] {
        j -= 1;
    }
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

/// Cross-check all_double_trees against direct enumeration of connected
/// (n-1)-edge simple undirected graphs for n <= 6.
#[test]
fn all_double_trees_matches_direct_tree_enumeration() {
    for n in 1..=6usize {
        let expected: BTreeSet<_> = enumerate_trees(n)
            .into_iter()
            .map(|tree| {
                let doubled: Vec<(usize, usize)> = tree
                    .iter()
                    .flat_map(|&(u, v)| [(u, v), (v, u)])
                    .collect();
                Digraph::build(n, &doubled)
                    .unwrap()
                    .canonical_code()
                    .unwrap()
            })
            .collect();
        let got: BTreeSet<_> = all_double_trees(n)
            .unwrap()
            .iter()
            .map(|g| g.canonical_code().unwrap())
            .collect();
        assert_eq!(got, expected, "n = {n}");
    }
}

fn enumerate_trees(n: usize) -> Vec<Vec<(usize, usize)>> {
    if n == 1 {
        return vec![vec![]];
    }
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .collect();
    let mut trees = Vec::new();
    let mut choice: Vec<usize> = (0..n - 1).collect();
    loop {
        let edges: Vec<(usize, usize)> = choice.iter().map(|&k| pairs[k]).collect();
        if is_connected(n, &edges) {
            trees.push(edges);
        }
        // next (n-1)-subset of pairs in lexicographic order
        let m = pairs.len();
        let k = choice.len();
        let mut i = k;
        loop {
            if i == 0 {
                return trees;
            }
            i -= 1;
            if choice[i] + (k - i) < m {
                choice[i] += 1;
                for j in i + 1..k {
                    choice[j] = choice[j - 1] + 1;
                }
                break;
            }
        }
    }
}

fn is_connected(n: usize, edges: &[(usize, usize)]) -> bool {
    let mut seen = vec![false; n];
    let mut stack = vec![0usize];
    seen[0] = true;
    while let Some(x) = stack.pop() {
        for &(u, v) in edges {
            let other = if u == x {
                v
            } else if v == x {
                u
            } else {
                continue;
            };
            if !seen[other] {
                seen[other] = true;
                stack.push(other);
            }
        }
    }
    seen.into_iter().all(|s| s)
}
