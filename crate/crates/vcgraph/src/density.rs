//! Shatter-function tables, growth bounds, and the quadratic lower-bound
//! constructions.
//!
//! A [`PiTable`] records `π(n)` rows for one graph, each flagged exact or
//! lower-bound and carrying a witness set. [`Bound`] values are closed-form
//! ceilings a table can be checked against row by row; [`StepBound`] checks
//! the per-step recursions `π(n) - π(n-1) <= f(n)`. The quadratic bounds hold
//! for `n >= 1` (any nonempty family has `π(0) = 1`, which a polynomial with
//! zero constant term cannot dominate), so rows below a bound's domain are
//! reported as skipped rather than compared.
//!
//! [`DensityWitness`] is the other half of the density story: explicit base
//! sets whose pair subsets are all realized by neighbourhood traces, giving
//! the `Ω(n²)` companion to the `O(n²)` bounds.

use serde::Serialize;

use crate::combin::binomial;
use crate::graph::{DomainLabel, Graph, GraphError, GraphSpec, VertexId};
use crate::report::CheckReport;
use crate::search::{shatter_function, SearchBudget, SearchError};
use crate::set_system::{NeighborhoodMode, PiMode, SetSystem, SystemError};

#[derive(Debug, thiserror::Error)]
pub enum DensityError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Search(#[from] SearchError),
    #[error(transparent)]
    System(#[from] SystemError),
    #[error("label {0} does not name a vertex of the graph")]
    UnknownLabel(String),
    #[error("bound '{bound}' does not apply to {graph}")]
    NotApplicable { bound: String, graph: String },
    #[error("slope estimate needs at least {need} exact rows with n >= 2, got {got}")]
    InsufficientRows { need: usize, got: usize },
    #[error("malformed table document: {0}")]
    Schema(String),
}

/// Compact dash-joined rendering of a label, safe inside CSV fields:
/// `{1,3}` becomes `1-3`, `(0,1,2)` becomes `0-1-2`.
pub fn compact_label(label: &DomainLabel) -> String {
    let join = |xs: &[u32]| {
        xs.iter()
            .map(|x| x.to_string())
            .collect::<Vec<_>>()
            .join("-")
    };
    match label {
        DomainLabel::Subset(s) => join(s.elements()),
        DomainLabel::Tuple(t) => join(t.entries()),
        DomainLabel::Pair { row, col } => join(&[*row, *col]),
        DomainLabel::Index(i) => i.to_string(),
    }
}

/// One table row: `π(n)` with provenance flag and a witness attaining it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TableRow {
    pub n: u32,
    pub pi: u64,
    pub mode: PiMode,
    pub witness_ids: Vec<VertexId>,
    pub witness_labels: Vec<String>,
}

/// Shatter-function table for one graph, with the search configuration that
/// produced it recorded for reproducibility.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PiTable {
    pub graph: GraphSpec,
    pub mode: NeighborhoodMode,
    pub seed: u64,
    pub exhaustive_cap: u64,
    pub restarts: u32,
    pub rows: Vec<TableRow>,
}

/// Computes `π(0..=n_max)` for the neighbourhood system of one graph.
pub fn pi_table(
    spec: GraphSpec,
    mode: NeighborhoodMode,
    n_max: u32,
    budget: &SearchBudget,
) -> Result<PiTable, DensityError> {
    let graph = spec.build()?;
    let ss = SetSystem::neighborhoods(&graph, mode);
    let mut rows = Vec::new();
    for n in 0..=n_max.min(graph.num_vertices() as u32) {
        let row = shatter_function(&ss, n, budget)?;
        rows.push(TableRow {
            n: row.n,
            pi: row.pi,
            mode: row.mode,
            witness_labels: row
                .witness
                .iter()
                .map(|&v| compact_label(graph.label(v)))
                .collect(),
            witness_ids: row.witness,
        });
    }
    Ok(PiTable {
        graph: spec,
        mode,
        seed: budget.seed,
        exhaustive_cap: budget.exhaustive_cap,
        restarts: budget.restarts,
        rows,
    })
}

/// Class-level row: the maximum of `π(n)` across a list of graphs. The row
/// is exact only when every contributing row is exact; a maximum involving
/// lower bounds is itself only a lower bound.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassRow {
    pub n: u32,
    pub pi: u64,
    pub mode: PiMode,
}

/// Per-graph tables plus the class-level maximum rows.
#[derive(Clone, Debug)]
pub struct PiProfile {
    pub tables: Vec<PiTable>,
    pub class_rows: Vec<ClassRow>,
}

pub fn pi_profile(
    specs: &[GraphSpec],
    n_max: u32,
    budget: &SearchBudget,
) -> Result<PiProfile, DensityError> {
    let tables: Vec<PiTable> = specs
        .iter()
        .map(|&s| pi_table(s, NeighborhoodMode::Open, n_max, budget))
        .collect::<Result<_, _>>()?;
    let mut class_rows = Vec::new();
    for n in 0..=n_max {
        let contributing: Vec<&TableRow> = tables
            .iter()
            .filter_map(|t| t.rows.iter().find(|r| r.n == n))
            .collect();
        if contributing.is_empty() {
            continue;
        }
        class_rows.push(ClassRow {
            n,
            pi: contributing.iter().map(|r| r.pi).max().unwrap(),
            mode: if contributing.iter().all(|r| r.mode == PiMode::Exact) {
                PiMode::Exact
            } else {
                PiMode::LowerBound
            },
        });
    }
    Ok(PiProfile { tables, class_rows })
}

/// A closed-form ceiling on `π(n)` for a family of graphs.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Bound {
    /// `sum_{i<=d} C(n,i)` for a system of VC-dimension `d`; any graph.
    SauerShelah { dimension: u32 },
    /// `(13n^2 + 3n) / 2` for Johnson graphs, `n >= 1`.
    JohnsonQuadratic,
    /// `4n^2 + n` for Hamming graphs, `n >= 1`.
    HammingQuadratic,
    /// `min(n+1, rows) * min(n+1, cols)` for the rook's graph.
    RookGrid { rows: u32, cols: u32 },
    /// `4n^2` for Johnson graphs on 3-element subsets, `n >= 1`.
    JohnsonTripleQuadratic,
}

impl Bound {
    pub fn name(&self) -> String {
        match self {
            Bound::SauerShelah { dimension } => format!("sauer-shelah(d={dimension})"),
            Bound::JohnsonQuadratic => "(13n^2+3n)/2".to_string(),
            Bound::HammingQuadratic => "4n^2+n".to_string(),
            Bound::RookGrid { rows, cols } => {
                format!("min(n+1,{rows})*min(n+1,{cols})")
            }
            Bound::JohnsonTripleQuadratic => "4n^2".to_string(),
        }
    }

    /// Smallest `n` the bound is claimed for.
    pub fn min_n(&self) -> u32 {
        match self {
            Bound::SauerShelah { .. } | Bound::RookGrid { .. } => 0,
            Bound::JohnsonQuadratic | Bound::HammingQuadratic | Bound::JohnsonTripleQuadratic => 1,
        }
    }

    pub fn applies_to(&self, spec: &GraphSpec) -> bool {
        match self {
            Bound::SauerShelah { .. } => true,
            Bound::JohnsonQuadratic => matches!(spec, GraphSpec::Johnson { .. }),
            Bound::HammingQuadratic => matches!(spec, GraphSpec::Hamming { .. }),
            Bound::RookGrid { rows, cols } => {
                matches!(spec, GraphSpec::Rook { rows: r, cols: c } if r == rows && c == cols)
            }
            Bound::JohnsonTripleQuadratic => {
                matches!(spec, GraphSpec::Johnson { k: 3, .. })
            }
        }
    }

    pub fn eval(&self, n: u32) -> u64 {
        let n64 = n as u64;
        match self {
            Bound::SauerShelah { dimension } => {
                crate::set_system::sauer_shelah_bound(*dimension, n)
            }
            Bound::JohnsonQuadratic => (13 * n64 * n64 + 3 * n64) / 2,
            Bound::HammingQuadratic => 4 * n64 * n64 + n64,
            Bound::RookGrid { rows, cols } => {
                (n64 + 1).min(*rows as u64) * (n64 + 1).min(*cols as u64)
            }
            Bound::JohnsonTripleQuadratic => 4 * n64 * n64,
        }
    }
}

/// The family bounds that apply to `spec`, with Sauer-Shelah included when
/// the VC-dimension is known.
pub fn standard_bounds(spec: &GraphSpec, vc: Option<u32>) -> Vec<Bound> {
    let mut out = Vec::new();
    if let Some(d) = vc {
        out.push(Bound::SauerShelah { dimension: d });
    }
    match *spec {
        GraphSpec::Johnson { k, .. } => {
            out.push(Bound::JohnsonQuadratic);
            if k == 3 {
                out.push(Bound::JohnsonTripleQuadratic);
            }
        }
        GraphSpec::Hamming { .. } => out.push(Bound::HammingQuadratic),
        GraphSpec::Rook { rows, cols } => out.push(Bound::RookGrid { rows, cols }),
        _ => {}
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RowStatus {
    Pass,
    Fail,
    Skipped,
}

#[derive(Clone, Debug, Serialize)]
pub struct BoundRow {
    pub n: u32,
    pub pi: u64,
    pub mode: PiMode,
    pub bound: u64,
    pub status: RowStatus,
}

#[derive(Clone, Debug, Serialize)]
pub struct BoundReport {
    pub bound: String,
    pub rows: Vec<BoundRow>,
}

impl BoundReport {
    pub fn passed(&self) -> bool {
        self.rows.iter().all(|r| r.status != RowStatus::Fail)
    }
}

/// Compares every table row against the bound. Exact rows must satisfy it;
/// lower-bound rows must not exceed it either, since a certified trace count
/// above a proven ceiling would falsify the bound outright.
pub fn check_bound(table: &PiTable, bound: &Bound) -> Result<BoundReport, DensityError> {
    if !bound.applies_to(&table.graph) {
        return Err(DensityError::NotApplicable {
            bound: bound.name(),
            graph: table.graph.to_string(),
        });
    }
    let rows = table
        .rows
        .iter()
        .map(|row| {
            let status = if row.n < bound.min_n() {
                RowStatus::Skipped
            } else if row.pi <= bound.eval(row.n) {
                RowStatus::Pass
            } else {
                RowStatus::Fail
            };
            BoundRow {
                n: row.n,
                pi: row.pi,
                mode: row.mode,
                bound: bound.eval(row.n),
                status,
            }
        })
        .collect();
    Ok(BoundReport {
        bound: bound.name(),
        rows,
    })
}

/// Per-step ceiling for `π(n) - π(n-1)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StepBound {
    /// `4n + 1` for Hamming graphs.
    Hamming,
    /// `4n + min(m, n+1) * min(k, n+1)` for `J(m,k)`.
    Johnson { m: u32, k: u32 },
}

impl StepBound {
    pub fn name(&self) -> String {
        match self {
            StepBound::Hamming => "4n+1".to_string(),
            StepBound::Johnson { m, k } => format!("4n+min({m},n+1)*min({k},n+1)"),
        }
    }

    pub fn eval(&self, n: u32) -> u64 {
        let n64 = n as u64;
        match self {
            StepBound::Hamming => 4 * n64 + 1,
            StepBound::Johnson { m, k } => {
                4 * n64 + (n64 + 1).min(*m as u64) * (n64 + 1).min(*k as u64)
            }
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct RecursionRow {
    pub n: u32,
    pub delta: Option<u64>,
    pub bound: u64,
    pub status: RowStatus,
}

#[derive(Clone, Debug, Serialize)]
pub struct RecursionReport {
    pub step: String,
    pub rows: Vec<RecursionRow>,
}

impl RecursionReport {
    pub fn passed(&self) -> bool {
        self.rows.iter().all(|r| r.status != RowStatus::Fail)
    }
}

/// Checks `π(n) - π(n-1) <= step(n)` over consecutive *exact* rows; pairs
/// with a missing or non-exact side are reported as skipped.
pub fn check_recursion(table: &PiTable, step: &StepBound) -> RecursionReport {
    let exact = |n: u32| {
        table
            .rows
            .iter()
            .find(|r| r.n == n && r.mode == PiMode::Exact)
    };
    let max_n = table.rows.iter().map(|r| r.n).max().unwrap_or(0);
    let mut rows = Vec::new();
    for n in 1..=max_n {
        let (prev, cur) = (exact(n - 1), exact(n));
        match (prev, cur) {
            (Some(p), Some(c)) => {
                let delta = c.pi.saturating_sub(p.pi);
                rows.push(RecursionRow {
                    n,
                    delta: Some(delta),
                    bound: step.eval(n),
                    status: if delta <= step.eval(n) {
                        RowStatus::Pass
                    } else {
                        RowStatus::Fail
                    },
                });
            }
            _ => rows.push(RecursionRow {
                n,
                delta: None,
                bound: step.eval(n),
                status: RowStatus::Skipped,
            }),
        }
    }
    RecursionReport {
        step: step.name(),
        rows,
    }
}

/// Least-squares slope of `log π` against `log n` over exact rows with
/// `n >= 2`. This is an empirical growth indicator, not the class
/// VC-density; the residual (root mean square) exposes super-polynomial
/// growth as a poor fit whose slope keeps climbing with `n_max`.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct SlopeEstimate {
    pub slope: f64,
    pub residual: f64,
    pub rows_used: usize,
}

pub fn density_slope_estimate(table: &PiTable) -> Result<SlopeEstimate, DensityError> {
    let pts: Vec<(f64, f64)> = table
        .rows
        .iter()
        .filter(|r| r.mode == PiMode::Exact && r.n >= 2)
        .map(|r| ((r.n as f64).ln(), (r.pi as f64).ln()))
        .collect();
    if pts.len() < 3 {
        return Err(DensityError::InsufficientRows {
            need: 3,
            got: pts.len(),
        });
    }
    let n = pts.len() as f64;
    let mean_x = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let mean_y = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = pts.iter().map(|p| (p.0 - mean_x).powi(2)).sum();
    let sxy: f64 = pts.iter().map(|p| (p.0 - mean_x) * (p.1 - mean_y)).sum();
    let slope = sxy / sxx;
    let intercept = mean_y - slope * mean_x;
    let residual = (pts
        .iter()
        .map(|p| (p.1 - (slope * p.0 + intercept)).powi(2))
        .sum::<f64>()
        / n)
        .sqrt();
    Ok(SlopeEstimate {
        slope,
        residual,
        rows_used: pts.len(),
    })
}

/// CSV rendering with header `n,pi,mode,witness`; witness labels are
/// dash-joined and space-separated, so the field never needs quoting.
pub fn table_to_csv(table: &PiTable) -> String {
    let mut out = String::from("n,pi,mode,witness\n");
    for row in &table.rows {
        out.push_str(&format!(
            "{},{},{},{}\n",
            row.n,
            row.pi,
            row.mode,
            row.witness_labels.join(" ")
        ));
    }
    out
}

pub fn table_to_json(table: &PiTable) -> serde_json::Value {
    serde_json::json!({
        "schema_version": 1,
        "graph": {
            "family": table.graph.family_tag().family_name(),
            "params": table.graph.family_tag().params(),
        },
        "neighborhoods": match table.mode {
            NeighborhoodMode::Open => "open",
            NeighborhoodMode::Closed => "closed",
        },
        "seed": table.seed,
        "exhaustive_cap": table.exhaustive_cap,
        "restarts": table.restarts,
        "rows": table.rows.iter().map(|r| serde_json::json!({
            "n": r.n,
            "pi": r.pi,
            "mode": match r.mode { PiMode::Exact => "exact", PiMode::LowerBound => "lower_bound" },
            "witness_ids": r.witness_ids,
            "witness_labels": r.witness_labels,
        })).collect::<Vec<_>>(),
    })
}

pub fn table_from_json(value: &serde_json::Value) -> Result<PiTable, DensityError> {
    let bad = |msg: &str| DensityError::Schema(msg.to_string());
    let graph = value.get("graph").ok_or_else(|| bad("missing 'graph'"))?;
    let family = graph
        .get("family")
        .and_then(|f| f.as_str())
        .ok_or_else(|| bad("missing 'graph.family'"))?;
    let params: Vec<u32> = graph
        .get("params")
        .and_then(|p| p.as_array())
        .ok_or_else(|| bad("missing 'graph.params'"))?
        .iter()
        .map(|x| x.as_u64().map(|v| v as u32))
        .collect::<Option<_>>()
        .ok_or_else(|| bad("non-integer parameter"))?;
    let spec = GraphSpec::parse(family, &params)
        .map_err(|e| DensityError::Schema(e.to_string()))?;
    let mode = match value.get("neighborhoods").and_then(|m| m.as_str()) {
        Some("closed") => NeighborhoodMode::Closed,
        _ => NeighborhoodMode::Open,
    };
    let rows_value = value
        .get("rows")
        .and_then(|r| r.as_array())
        .ok_or_else(|| bad("missing 'rows'"))?;
    let mut rows = Vec::new();
    for (i, rv) in rows_value.iter().enumerate() {
        let field = |name: &str| {
            rv.get(name)
                .and_then(|x| x.as_u64())
                .ok_or_else(|| DensityError::Schema(format!("row {i}: missing '{name}'")))
        };
        let mode = match rv.get("mode").and_then(|m| m.as_str()) {
            Some("exact") => PiMode::Exact,
            Some("lower_bound") => PiMode::LowerBound,
            other => {
                return Err(DensityError::Schema(format!(
                    "row {i}: bad mode {other:?}"
                )))
            }
        };
        rows.push(TableRow {
            n: field("n")? as u32,
            pi: field("pi")?,
            mode,
            witness_ids: rv
                .get("witness_ids")
                .and_then(|w| w.as_array())
                .ok_or_else(|| DensityError::Schema(format!("row {i}: missing witness_ids")))?
                .iter()
                .map(|x| x.as_u64().map(|v| v as usize))
                .collect::<Option<_>>()
                .ok_or_else(|| DensityError::Schema(format!("row {i}: bad witness id")))?,
            witness_labels: rv
                .get("witness_labels")
                .and_then(|w| w.as_array())
                .ok_or_else(|| DensityError::Schema(format!("row {i}: missing witness_labels")))?
                .iter()
                .map(|x| x.as_str().map(|s| s.to_string()))
                .collect::<Option<_>>()
                .ok_or_else(|| DensityError::Schema(format!("row {i}: bad witness label")))?,
        });
    }
    Ok(PiTable {
        graph: spec,
        mode,
        seed: value.get("seed").and_then(|s| s.as_u64()).unwrap_or(0),
        exhaustive_cap: value
            .get("exhaustive_cap")
            .and_then(|s| s.as_u64())
            .unwrap_or(0),
        restarts: value
            .get("restarts")
            .and_then(|s| s.as_u64())
            .unwrap_or(0) as u32,
        rows,
    })
}

/// A pair-witness row of a density lower-bound construction: the vertex
/// whose neighbourhood traces exactly `{base[first], base[second]}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairWitness {
    pub first: usize,
    pub second: usize,
    pub witness: DomainLabel,
}

/// An explicit base set together with a verified-against-the-graph witness
/// for every 2-subset; realizing all `C(|A|,2)` pairs forces the trace count
/// of `A` to grow quadratically.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DensityWitness {
    pub graph: GraphSpec,
    pub base_set: Vec<DomainLabel>,
    pub pairs: Vec<PairWitness>,
}

#[derive(Clone, Debug)]
pub struct DensityWitnessReport {
    pub checks: CheckReport,
    /// Trace count of the base set in the rebuilt graph.
    pub trace_count: u64,
    /// `C(|A|, 2)`: the number of pair subsets the construction must realize.
    pub pair_floor: u64,
}

impl DensityWitness {
    /// Rebuilds the graph and checks that every claimed pair witness traces
    /// exactly its pair, and that the base set's trace count reaches the
    /// quadratic floor `C(|A|,2)`.
    pub fn verify(&self) -> Result<DensityWitnessReport, DensityError> {
        let graph: Graph = self.graph.build()?;
        let ss = SetSystem::neighborhoods(&graph, NeighborhoodMode::Open);
        let ids: Vec<VertexId> = self
            .base_set
            .iter()
            .map(|l| {
                graph
                    .vertex_with_label(l)
                    .ok_or_else(|| DensityError::UnknownLabel(l.to_string()))
            })
            .collect::<Result<_, _>>()?;
        let mut checks = CheckReport::default();
        for pw in &self.pairs {
            let witness_id = graph
                .vertex_with_label(&pw.witness)
                .ok_or_else(|| DensityError::UnknownLabel(pw.witness.to_string()))?;
            let mask = SetSystem::member_mask(&ss.members()[witness_id], &ids);
            let expected = (1u32 << pw.first) | (1u32 << pw.second);
            checks.record(
                format!("pair ({},{})", pw.first, pw.second),
                mask == expected,
                format!(
                    "N({}) traces mask {mask:#b}, expected {expected:#b}",
                    pw.witness
                ),
            );
        }
        let trace_count = ss.trace_count(&ids)?;
        let pair_floor = binomial(ids.len() as u64, 2);
        checks.record(
            "trace count reaches C(|A|,2)",
            trace_count >= pair_floor,
            format!("traces {trace_count}, floor {pair_floor}"),
        );
        Ok(DensityWitnessReport {
            checks,
            trace_count,
            pair_floor,
        })
    }
}
