//! Exhaustive, isomorph-reduced computation of f(n) — the maximum edge
//! count of an irredundant graph on n vertices — together with the
//! complete-bipartite orientation sweep and an enumerator for small n.
//!
//! The search walks edge subsets depth-first over the 2*C(n,2) candidate
//! edges in lexicographic order, extending only when the graph stays
//! irredundant. Downward closure (every edge-deleted subgraph of an
//! irredundant graph is irredundant) makes this complete: once a
//! candidate fails at a node it fails in every descendant, so each node
//! passes its surviving candidate list down and bounds the branch by
//! `current_edges + |surviving|`.

use std::collections::BTreeSet;
use std::sync::atomic::{AtomicBool, AtomicUsize, Ordering};
use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::Rng;
use rayon::prelude::*;

use crate::constructors::{all_double_trees, classify_extremal, ExtremalClass};
use crate::digraph::{CanonicalCode, Digraph};
use crate::irredundance::{check, extend_keeps_irredundant};
use crate::reduction::recurrence_bound;
use crate::{Error, Result};

/// Hard cap on the exhaustive search; beyond 8 vertices the extremal
/// values are settled analytically, not searched.
pub const SEARCH_VERTEX_CAP: usize = 8;

/// Full-enumeration cap for `enumerate_irredundant`.
pub const ENUMERATION_CAP: usize = 6;

/// Cap on `a * b` for the 3^(a*b) bipartite sweep.
pub const SWEEP_CELL_CAP: usize = 16;

#[derive(Clone, Debug)]
pub struct SearchConfig {
    pub budget: Option<Duration>,
    /// Worker threads; 0 means one task pool sized by the runtime, 1 runs
    /// in the calling thread.
    pub jobs: usize,
    /// Disables the bound and recurrence-cap prunes (the search then
    /// visits every irredundant edge set).
    pub pruning: bool,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            budget: None,
            jobs: 1,
            pruning: true,
        }
    }
}

#[derive(Clone, Default, Debug, serde::Serialize)]
pub struct SearchStats {
    pub nodes_expanded: u64,
    pub extend_rejections: u64,
    pub bound_prunes: u64,
    pub cap_prunes: u64,
}

impl SearchStats {
    fn absorb(&mut self, other: &SearchStats) {
        self.nodes_expanded += other.nodes_expanded;
        self.extend_rejections += other.extend_rejections;
        self.bound_prunes += other.bound_prunes;
        self.cap_prunes += other.cap_prunes;
    }
}

#[derive(Clone, Debug)]
pub struct SearchReport {
    pub n: usize,
    pub f_value: usize,
    /// Canonical codes of the maximum irredundant graphs, sorted.
    pub extremal_codes: Vec<CanonicalCode>,
    /// True when the budget expired; `f_value` is then only a lower bound.
    pub partial: bool,
    pub stats: SearchStats,
    pub wall_time: Duration,
}

impl SearchReport {
    /// Canonical representative of each extremal class, in code order.
    pub fn extremal_representatives(&self) -> Vec<Digraph> {
        self.extremal_codes.iter().map(|c| c.to_digraph()).collect()
    }
}

/// Edge count of the best known construction: a double tree for n <= 7,
/// the oriented balanced complete bipartite graph beyond.
pub fn constructive_lower_bound(n: usize) -> usize {
    if n == 0 {
        0
    } else if n <= 7 {
        2 * n - 2
    } else {
        n * n / 4
    }
}

fn lex_candidates(n: usize) -> Vec<(usize, usize)> {
    let mut cands = Vec::with_capacity(n * n.saturating_sub(1));
    for u in 0..n {
        for v in 0..n {
            if u != v {
                cands.push((u, v));
            }
        }
    }
    cands
}

// --- u64 fast path -------------------------------------------------------
//
// The search is capped at 8 vertices, so adjacency rows fit one word.
// These helpers mirror Digraph::reach_*_avoiding; agreement is enforced
// by the brute-force and pruning-safety tests.

#[inline]
fn closure_u64(rows: &[u64], start: usize, skip: Option<(usize, usize)>) -> u64 {
    let mut seen = 1u64 << start;
    let mut frontier = seen;
    while frontier != 0 {
        let mut next = 0u64;
        let mut f = frontier;
        while f != 0 {
            let x = f.trailing_zeros() as usize;
            f &= f - 1;
            let mut row = rows[x];
            if let Some((sx, sy)) = skip {
                if x == sx {
                    row &= !(1 << sy);
                }
            }
            next |= row;
        }
        frontier = next & !seen;
        seen |= next;
    }
    seen
}

fn irredundant_masks(n: usize, out: &[u64]) -> bool {
    for x in 0..n {
        let mut row = out[x];
        while row != 0 {
            let y = row.trailing_zeros() as usize;
            row &= row - 1;
            if closure_u64(out, x, Some((x, y))) >> y & 1 == 1 {
                return false;
            }
        }
    }
    true
}

const MAX_WORD_N: usize = 17; // sweep worst case: parts (1, 16)

struct Engine<'a> {
    n: usize,
    cands: &'a [(usize, usize)],
    out: [u64; MAX_WORD_N],
    inn: [u64; MAX_WORD_N],
    edges: Vec<(usize, usize)>,
    best: &'a AtomicUsize,
    stop: &'a AtomicBool,
    deadline: Option<Instant>,
    /// Global edge-count cap from the contraction recurrence.
    cap: usize,
    pruning: bool,
    /// When set, record every node with at least this many edges instead
    /// of chasing the maximum.
    record_all_min: Option<usize>,
    found: Vec<(usize, CanonicalCode)>,
    stats: SearchStats,
    partial: bool,
}

impl<'a> Engine<'a> {
    fn new(
        n: usize,
        cands: &'a [(usize, usize)],
        best: &'a AtomicUsize,
        stop: &'a AtomicBool,
        deadline: Option<Instant>,
        cap: usize,
        pruning: bool,
        record_all_min: Option<usize>,
    ) -> Self {
        Engine {
            n,
            cands,
            out: [0; MAX_WORD_N],
            inn: [0; MAX_WORD_N],
            edges: Vec::new(),
            best,
            stop,
            deadline,
            cap,
            pruning,
            record_all_min,
            found: Vec::new(),
            stats: SearchStats::default(),
            partial: false,
        }
    }

    fn add(&mut self, (u, v): (usize, usize)) {
        self.out[u] |= 1 << v;
        self.inn[v] |= 1 << u;
        self.edges.push((u, v));
    }

    fn remove(&mut self, (u, v): (usize, usize)) {
        self.out[u] &= !(1 << v);
        self.inn[v] &= !(1 << u);
        self.edges.pop();
    }

    fn record(&mut self) {
        let m = self.edges.len();
        let should = match self.record_all_min {
            Some(min) => m >= min,
            None => {
                let b = self.best.load(Ordering::Relaxed);
                if m >= b {
                    self.best.fetch_max(m, Ordering::Relaxed);
                    true
                } else {
                    false
                }
            }
        };
        if should {
            let g = Digraph::build(self.n, &self.edges).expect("edges are valid");
            let code = g
                .canonical_code_with_limit(self.n)
                .expect("n within search cap");
            self.found.push((m, code));
        }
    }

    /// Keeps the candidates that can extend the current graph without
    /// creating a bad edge: the head must be unreachable from the tail,
    /// and no existing edge (x, y) may gain an alternate route
    /// x -> tail -> head -> y avoiding (x, y).
    fn filter_valid(&mut self, valid: &[usize], filtered: &mut Vec<usize>) {
        let n = self.n;
        let mut reach = [0u64; MAX_WORD_N];
        for u in 0..n {
            reach[u] = closure_u64(&self.out[..n], u, None);
        }
        let mut fwd = Vec::with_capacity(self.edges.len());
        let mut bwd = Vec::with_capacity(self.edges.len());
        for &(x, y) in &self.edges {
            fwd.push(closure_u64(&self.out[..n], x, Some((x, y))));
            bwd.push(closure_u64_rev(&self.inn[..n], y, Some((x, y))));
        }
        filtered.clear();
        'next: for &ci in valid {
            let (u, v) = self.cands[ci];
            if reach[u] >> v & 1 == 1 {
                self.stats.extend_rejections += 1;
                continue;
            }
            for j in 0..self.edges.len() {
                if fwd[j] >> u & 1 == 1 && bwd[j] >> v & 1 == 1 {
                    self.stats.extend_rejections += 1;
                    continue 'next;
                }
            }
            filtered.push(ci);
        }
    }

    fn visit(&mut self, valid: &[usize]) {
        if self.stop.load(Ordering::Relaxed) {
            self.partial = true;
            return;
        }
        self.stats.nodes_expanded += 1;
        if let Some(deadline) = self.deadline {
            if self.stats.nodes_expanded & 0x1fff == 0 && Instant::now() >= deadline {
                self.stop.store(true, Ordering::Relaxed);
                self.partial = true;
                return;
            }
        }
        self.record();
        let m = self.edges.len();
        if self.pruning && m >= self.cap {
            self.stats.cap_prunes += 1;
            return;
        }
        let mut filtered = Vec::with_capacity(valid.len());
        self.filter_valid(valid, &mut filtered);
        if self.pruning && m + filtered.len() < self.best.load(Ordering::Relaxed) {
            self.stats.bound_prunes += 1;
            return;
        }
        for k in 0..filtered.len() {
            if self.pruning && m + (filtered.len() - k) < self.best.load(Ordering::Relaxed) {
                self.stats.bound_prunes += 1;
                break;
            }
            let e = self.cands[filtered[k]];
            self.add(e);
            self.visit(&filtered[k + 1..]);
            self.remove(e);
        }
    }

    fn into_output(self) -> EngineOutput {
        EngineOutput {
            found: self.found,
            stats: self.stats,
            partial: self.partial,
        }
    }
}

#[inline]
fn closure_u64_rev(rows_in: &[u64], target: usize, skip: Option<(usize, usize)>) -> u64 {
    let mut seen = 1u64 << target;
    let mut frontier = seen;
    while frontier != 0 {
        let mut next = 0u64;
        let mut f = frontier;
        while f != 0 {
            let y = f.trailing_zeros() as usize;
            f &= f - 1;
            let mut row = rows_in[y];
            if let Some((sx, sy)) = skip {
                if y == sy {
                    row &= !(1 << sx);
                }
            }
            next |= row;
        }
        frontier = next & !seen;
        seen |= next;
    }
    seen
}

struct EngineOutput {
    found: Vec<(usize, CanonicalCode)>,
    stats: SearchStats,
    partial: bool,
}

/// Exact f(n) with the complete set of extremal isomorphism classes.
///
/// If the budget expires the report is flagged partial and `f_value` is
/// only a lower bound.
pub fn max_irredundant(n: usize, config: &SearchConfig) -> Result<SearchReport> {
    if n < 1 || n > SEARCH_VERTEX_CAP {
        return Err(Error::CapExceeded {
            what: "exhaustive search",
            cap: SEARCH_VERTEX_CAP,
            got: n,
        });
    }
    let started = Instant::now();
    let deadline = config.budget.map(|b| started + b);
    let cands = lex_candidates(n);
    let cap = if config.pruning && n >= 2 {
        recurrence_bound(n)?.value(n)
    } else {
        usize::MAX
    };
    // Seeding with the constructive bound is sound: double trees and the
    // oriented balanced bipartite graph realize it, so f(n) never falls
    // below the seed and ties are still enumerated (the prune is strict).
    let best = AtomicUsize::new(if config.pruning {
        constructive_lower_bound(n)
    } else {
        0
    });
    let stop = AtomicBool::new(false);

    // Top two DFS levels run here; every deeper subtree becomes a task.
    let mut root = Engine::new(n, &cands, &best, &stop, deadline, cap, config.pruning, None);
    root.stats.nodes_expanded += 1;
    root.record(); // empty graph
    let mut tasks: Vec<(usize, usize)> = Vec::new();
    let all: Vec<usize> = (0..cands.len()).collect();
    if !(config.pruning && cands.len() < best.load(Ordering::Relaxed)) {
        for i in 0..cands.len() {
            root.add(cands[i]);
            root.stats.nodes_expanded += 1;
            root.record();
            let mut filtered = Vec::new();
            root.filter_valid(&all[i + 1..], &mut filtered);
            if config.pruning && 1 + filtered.len() < best.load(Ordering::Relaxed) {
                root.stats.bound_prunes += 1;
            } else {
                tasks.extend(filtered.iter().map(|&j| (i, j)));
            }
            root.remove(cands[i]);
        }
    }

    let run_task = |&(i, j): &(usize, usize)| -> EngineOutput {
        let mut engine =
            Engine::new(n, &cands, &best, &stop, deadline, cap, config.pruning, None);
        engine.add(cands[i]);
        engine.add(cands[j]);
        let valid: Vec<usize> = (j + 1..cands.len()).collect();
        engine.visit(&valid);
        engine.into_output()
    };

    let outputs: Vec<EngineOutput> = if config.jobs == 1 {
        tasks.iter().map(run_task).collect()
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(config.jobs)
            .build()
            .expect("thread pool");
        pool.install(|| tasks.par_iter().map(run_task).collect())
    };

    let mut found = root.found;
    let mut stats = root.stats.clone();
    let mut partial = root.partial;
    for output in outputs {
        found.extend(output.found);
        stats.absorb(&output.stats);
        partial |= output.partial;
    }

    let f_value = found.iter().map(|(m, _)| *m).max().unwrap_or(0);
    let extremal: BTreeSet<CanonicalCode> = found
        .into_iter()
        .filter(|(m, _)| *m == f_value)
        .map(|(_, code)| code)
        .collect();
    let extremal_codes: Vec<CanonicalCode> = extremal.into_iter().collect();
    debug_assert!(extremal_codes
        .iter()
        .all(|c| check(&c.to_digraph()).is_irredundant));

    log::info!(
        "search n={n}: f={f_value}, {} classes, {} nodes, partial={partial}",
        extremal_codes.len(),
        stats.nodes_expanded
    );
    Ok(SearchReport {
        n,
        f_value,
        extremal_codes,
        partial,
        stats,
        wall_time: started.elapsed(),
    })
}

/// All irredundant graphs on `n` vertices with at least `min_edges`
/// edges, one canonical representative per isomorphism class, in
/// canonical-code order.
pub fn enumerate_irredundant(n: usize, min_edges: usize) -> Result<Vec<Digraph>> {
    if n < 1 || n > ENUMERATION_CAP {
        return Err(Error::CapExceeded {
            what: "full enumeration",
            cap: ENUMERATION_CAP,
            got: n,
        });
    }
    let cands = lex_candidates(n);
    let best = AtomicUsize::new(0);
    let stop = AtomicBool::new(false);
    let mut engine = Engine::new(
        n,
        &cands,
        &best,
        &stop,
        None,
        usize::MAX,
        false,
        Some(min_edges),
    );
    let all: Vec<usize> = (0..cands.len()).collect();
    engine.visit(&all);
    let codes: BTreeSet<CanonicalCode> =
        engine.found.into_iter().map(|(_, code)| code).collect();
    Ok(codes.iter().map(|c| c.to_digraph()).collect())
}

/// Per-n verdict comparing the search against the closed form and the
/// extremal characterization (double trees up to n = 7, the simple
/// balanced complete bipartite orientation from n = 7 on).
#[derive(Clone, Debug)]
pub struct TheoremVerdict {
    pub n: usize,
    pub expected_f: usize,
    pub found_f: usize,
    pub expected_class_count: usize,
    pub found_class_count: usize,
    /// Extremal representatives that fall outside the families the
    /// characterization allows for this n.
    pub unexpected: Vec<Digraph>,
    pub partial: bool,
    pub pass: bool,
}

pub fn verify_theorem(max_n: usize, config: &SearchConfig) -> Result<Vec<TheoremVerdict>> {
    if max_n > SEARCH_VERTEX_CAP {
        return Err(Error::CapExceeded {
            what: "theorem verification",
            cap: SEARCH_VERTEX_CAP,
            got: max_n,
        });
    }
    let mut verdicts = Vec::new();
    for n in 1..=max_n {
        let report = max_irredundant(n, config)?;
        let expected_f = constructive_lower_bound(n);
        let expected_class_count = match n {
            _ if n <= 6 => all_double_trees(n)?.len(),
            7 => all_double_trees(7)?.len() + 1,
            _ => 1,
        };
        let reps = report.extremal_representatives();
        let allowed = |class: &ExtremalClass| match n {
            _ if n <= 6 => matches!(class, ExtremalClass::DoubleTree { .. }),
            7 => !matches!(class, ExtremalClass::Other),
            _ => matches!(
                class,
                ExtremalClass::SimpleBalancedCompleteBipartite { .. }
            ),
        };
        let unexpected: Vec<Digraph> = reps
            .into_iter()
            .filter(|g| !allowed(&classify_extremal(g)))
            .collect();
        let pass = !report.partial
            && report.f_value == expected_f
            && report.extremal_codes.len() == expected_class_count
            && unexpected.is_empty();
        verdicts.push(TheoremVerdict {
            n,
            expected_f,
            found_f: report.f_value,
            expected_class_count,
            found_class_count: report.extremal_codes.len(),
            unexpected,
            partial: report.partial,
            pass,
        });
    }
    Ok(verdicts)
}

/// Outcome of sweeping every assignment of {forward, backward, double}
/// over the cells of a complete bipartite graph.
#[derive(Clone, Debug)]
pub struct BipartiteSweepReport {
    pub parts: (usize, usize),
    pub orientations_checked: u64,
    pub irredundant_count: u64,
    /// Irredundant assignments that are not simple (no split U, V with
    /// the edge set exactly U x V).
    pub non_simple_irredundant: Vec<Digraph>,
    /// Whether the path-of-length-three claim was applicable (both parts
    /// at least 3) and therefore checked.
    pub p3_checked: bool,
    /// Irredundant assignments containing a directed path of length 3.
    pub p3_violations: u64,
}

/// Sweeps all 3^(a*b) complete-bipartite assignments, recording every
/// irredundant one that is not simple, and (for parts of size >= 3)
/// counting irredundant assignments with a directed path of length three.
pub fn verify_bipartite_simplicity(a: usize, b: usize) -> Result<BipartiteSweepReport> {
    if a == 0 || b == 0 {
        return Err(Error::EmptyPart { a, b });
    }
    let cells = a * b;
    if cells > SWEEP_CELL_CAP {
        return Err(Error::CapExceeded {
            what: "bipartite sweep cells (3^(a*b) assignments)",
            cap: SWEEP_CELL_CAP,
            got: cells,
        });
    }
    let n = a + b;
    let pairs: Vec<(usize, usize)> = (0..a)
        .flat_map(|u| (a..n).map(move |v| (u, v)))
        .collect();
    let p3_checked = a >= 3 && b >= 3;

    let mut assign = vec![0u8; cells];
    let mut orientations_checked = 0u64;
    let mut irredundant_count = 0u64;
    let mut p3_violations = 0u64;
    let mut non_simple = Vec::new();
    loop {
        orientations_checked += 1;
        let mut out = [0u64; MAX_WORD_N];
        let mut inn = [0u64; MAX_WORD_N];
        for (k, &(u, v)) in pairs.iter().enumerate() {
            if assign[k] != 1 {
                out[u] |= 1 << v;
                inn[v] |= 1 << u;
            }
            if assign[k] != 0 {
                out[v] |= 1 << u;
                inn[u] |= 1 << v;
            }
        }
        if irredundant_masks(n, &out[..n]) {
            irredundant_count += 1;
            if !simple_split_masks(n, &out[..n], &inn[..n]) {
                let edges: Vec<(usize, usize)> = (0..n)
                    .flat_map(|u| {
                        let row = out[u];
                        (0..n).filter(move |&v| row >> v & 1 == 1).map(move |v| (u, v))
                    })
                    .collect();
                non_simple.push(Digraph::build(n, &edges)?);
            }
            if p3_checked && has_directed_p3(n, &out[..n]) {
                p3_violations += 1;
            }
        }
        // next assignment in base 3
        let mut k = 0;
        loop {
            if k == cells {
                return Ok(BipartiteSweepReport {
                    parts: (a, b),
                    orientations_checked,
                    irredundant_count,
                    non_simple_irredundant: non_simple,
                    p3_checked,
                    p3_violations,
                });
            }
            assign[k] += 1;
            if assign[k] < 3 {
                break;
            }
            assign[k] = 0;
            k += 1;
        }
    }
}

/// Simplicity in the strict sense: no double edges, and the vertices
/// split into sources and sinks with every source-sink edge present.
fn simple_split_masks(n: usize, out: &[u64], inn: &[u64]) -> bool {
    let mut sources = 0u64;
    let mut sinks = 0u64;
    for v in 0..n {
        if out[v] & inn[v] != 0 {
            return false; // double edge at v
        }
        match (out[v] != 0, inn[v] != 0) {
            (true, false) => sources |= 1 << v,
            (false, true) => sinks |= 1 << v,
            _ => return false, // mixed or isolated vertex
        }
    }
    (0..n)
        .filter(|&v| sources >> v & 1 == 1)
        .all(|v| out[v] == sinks)
}

fn has_directed_p3(n: usize, out: &[u64]) -> bool {
    for x in 0..n {
        let mut row = out[x];
        while row != 0 {
            let y = row.trailing_zeros() as usize;
            row &= row - 1;
            let mut second = out[y] & !(1 << x);
            while second != 0 {
                let z = second.trailing_zeros() as usize;
                second &= second - 1;
                if out[z] & !(1 << x | 1 << y | 1 << z) != 0 {
                    return true;
                }
            }
        }
    }
    false
}

/// Randomly grown irredundant graph: shuffled candidate edges are added
/// greedily whenever the incremental check allows, each with probability
/// `keep`. Deterministic for a given RNG state.
pub fn grow_random_irredundant<R: Rng>(n: usize, keep: f64, rng: &mut R) -> Digraph {
    let mut cands = lex_candidates(n);
    cands.shuffle(rng);
    let mut g = Digraph::empty(n);
    for e in cands {
        let take = rng.gen_bool(keep);
        if !take {
            continue;
        }
        let reach = g.reachability();
        if extend_keeps_irredundant(&g, &reach, e).expect("candidate edge is absent") {
            g.add_edge(e.0, e.1).unwrap();
        }
    }
    g
}
