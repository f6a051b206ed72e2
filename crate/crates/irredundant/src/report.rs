//! Machine-readable JSON reports. Every command emits one `JsonReport`
//! envelope on standard output; `schema_version` is "1".

use serde::Serialize;

use crate::digraph::Digraph;
use crate::io::to_edge_list;
use crate::irredundance::IrredundanceReport;
use crate::reduction::{BoundTable, ContractionOutcome};
use crate::search::{BipartiteSweepReport, SearchReport, SearchStats, TheoremVerdict};

pub const SCHEMA_VERSION: &str = "1";

#[derive(Serialize)]
pub struct JsonReport {
    pub schema_version: &'static str,
    pub command: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub input_summary: Option<InputSummary>,
    pub result: serde_json::Value,
    pub timing: Timing,
}

#[derive(Serialize)]
pub struct InputSummary {
    pub n: usize,
    pub edge_count: usize,
}

#[derive(Serialize)]
pub struct Timing {
    pub wall_ms: u128,
}

impl JsonReport {
    pub fn new(
        command: &str,
        input: Option<&Digraph>,
        result: serde_json::Value,
        wall_ms: u128,
    ) -> Self {
        JsonReport {
            schema_version: SCHEMA_VERSION,
            command: command.to_string(),
            input_summary: input.map(|g| InputSummary {
                n: g.vertex_count(),
                edge_count: g.edge_count(),
            }),
            result,
            timing: Timing { wall_ms },
        }
    }
}

#[derive(Serialize)]
pub struct GraphView {
    pub n: usize,
    pub edge_count: usize,
    pub edges: Vec<(usize, usize)>,
    pub edge_list: String,
}

impl GraphView {
    pub fn of(g: &Digraph) -> Self {
        GraphView {
            n: g.vertex_count(),
            edge_count: g.edge_count(),
            edges: g.edges().collect(),
            edge_list: to_edge_list(g),
        }
    }
}

#[derive(Serialize)]
pub struct CheckResult {
    pub is_irredundant: bool,
    pub bad_edges: Vec<BadEdgeView>,
}

#[derive(Serialize)]
pub struct BadEdgeView {
    pub edge: (usize, usize),
    pub alternate_path: Vec<usize>,
}

impl CheckResult {
    pub fn of(report: &IrredundanceReport) -> Self {
        CheckResult {
            is_irredundant: report.is_irredundant,
            bad_edges: report
                .bad_edges
                .iter()
                .map(|w| BadEdgeView {
                    edge: w.edge,
                    alternate_path: w.alternate_path.clone(),
                })
                .collect(),
        }
    }
}

#[derive(Serialize)]
pub struct ReduceResult {
    pub steps: Vec<ContractionView>,
    pub final_graph: GraphView,
}

#[derive(Serialize)]
pub struct ContractionView {
    pub kind: String,
    pub cycle: Vec<usize>,
    pub edges_before: usize,
    pub edges_after: usize,
    pub merged_vertex: usize,
    pub vertex_map: Vec<usize>,
    pub contracted: GraphView,
}

impl ReduceResult {
    pub fn of(original: &Digraph, steps: &[ContractionOutcome]) -> Self {
        let mut edges_before = original.edge_count();
        let mut views = Vec::with_capacity(steps.len());
        for step in steps {
            views.push(ContractionView {
                kind: format!("{:?}", step.kind),
                cycle: step.cycle.clone(),
                edges_before,
                edges_after: step.contracted.edge_count(),
                merged_vertex: step.merged_vertex,
                vertex_map: step.vertex_map.clone(),
                contracted: GraphView::of(&step.contracted),
            });
            edges_before = step.contracted.edge_count();
        }
        let final_graph = steps.last().map_or(original, |s| &s.contracted);
        ReduceResult {
            steps: views,
            final_graph: GraphView::of(final_graph),
        }
    }
}

#[derive(Serialize)]
pub struct SearchResultView {
    pub n: usize,
    pub f_value: usize,
    pub extremal_class_count: usize,
    pub extremal_codes: Vec<String>,
    pub extremal_representatives: Vec<GraphView>,
    pub partial: bool,
    pub stats: SearchStats,
    pub wall_ms: u128,
}

impl SearchResultView {
    pub fn of(report: &SearchReport) -> Self {
        SearchResultView {
            n: report.n,
            f_value: report.f_value,
            extremal_class_count: report.extremal_codes.len(),
            extremal_codes: report.extremal_codes.iter().map(|c| c.to_hex()).collect(),
            extremal_representatives: report
                .extremal_representatives()
                .iter()
                .map(GraphView::of)
                .collect(),
            partial: report.partial,
            stats: report.stats.clone(),
            wall_ms: report.wall_time.as_millis(),
        }
    }
}

#[derive(Serialize)]
pub struct TheoremResultView {
    pub pass: bool,
    pub verdicts: Vec<TheoremVerdictView>,
}

#[derive(Serialize)]
pub struct TheoremVerdictView {
    pub n: usize,
    pub expected_f: usize,
    pub found_f: usize,
    pub expected_class_count: usize,
    pub found_class_count: usize,
    pub unexpected_classes: Vec<GraphView>,
    pub partial: bool,
    pub pass: bool,
}

impl TheoremResultView {
    pub fn of(verdicts: &[TheoremVerdict]) -> Self {
        TheoremResultView {
            pass: verdicts.iter().all(|v| v.pass),
            verdicts: verdicts
                .iter()
                .map(|v| TheoremVerdictView {
                    n: v.n,
                    expected_f: v.expected_f,
                    found_f: v.found_f,
                    expected_class_count: v.expected_class_count,
                    found_class_count: v.found_class_count,
                    unexpected_classes: v.unexpected.iter().map(GraphView::of).collect(),
                    partial: v.partial,
                    pass: v.pass,
                })
                .collect(),
        }
    }
}

#[derive(Serialize)]
pub struct SweepResultView {
    pub pass: bool,
    pub parts: (usize, usize),
    pub orientations_checked: u64,
    pub irredundant_count: u64,
    pub non_simple_count: usize,
    pub non_simple_irredundant: Vec<GraphView>,
    pub p3_checked: bool,
    pub p3_violations: u64,
}

impl SweepResultView {
    pub fn of(report: &BipartiteSweepReport) -> Self {
        SweepResultView {
            pass: report.non_simple_irredundant.is_empty() && report.p3_violations == 0,
            parts: report.parts,
            orientations_checked: report.orientations_checked,
            irredundant_count: report.irredundant_count,
            non_simple_count: report.non_simple_irredundant.len(),
            non_simple_irredundant: report
                .non_simple_irredundant
                .iter()
                .map(GraphView::of)
                .collect(),
            p3_checked: report.p3_checked,
            p3_violations: report.p3_violations,
        }
    }
}

#[derive(Serialize)]
pub struct RecurrenceResultView {
    pub pass: bool,
    pub max_n: usize,
    pub values: Vec<usize>,
    pub mismatches: Vec<RecurrenceMismatch>,
}

#[derive(Serialize)]
pub struct RecurrenceMismatch {
    pub n: usize,
    pub bound: usize,
    pub closed_form: usize,
}

/// Theorem 1's closed form: 2n-2 up to n = 7, then the Mantel value.
pub fn closed_form(n: usize) -> usize {
    if n <= 7 {
        2 * n.max(1) - 2
    } else {
        n * n / 4
    }
}

impl RecurrenceResultView {
    pub fn of(table: &BoundTable) -> Self {
        let max_n = table.values.len() - 1;
        let mismatches: Vec<RecurrenceMismatch> = (1..=max_n)
            .filter(|&n| table.value(n) != closed_form(n))
            .map(|n| RecurrenceMismatch {
                n,
                bound: table.value(n),
                closed_form: closed_form(n),
            })
            .collect();
        RecurrenceResultView {
            pass: mismatches.is_empty(),
            max_n,
            values: table.values[1..].to_vec(),
            mismatches,
        }
    }
}
