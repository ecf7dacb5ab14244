//! Built-in shattered-set tables and their verification.
//!
//! Each [`WitnessTable`] names a graph, a base set, and one witness vertex
//! per subset of the base set (indexed by subset mask over base-set
//! positions). [`verify_witness`] rebuilds the graph and re-traces every
//! row, so the tables are claims that the test suite re-proves rather than
//! data taken on faith. The same JSON schema round-trips shatter
//! certificates produced by the search, so externally produced witness files
//! can be checked with `vcgraph verify --file`.

use serde::Serialize;

use crate::graph::{DomainLabel, FamilyTag, Graph, GraphError, GraphSpec, SubsetLabel, TupleLabel};
use crate::report::CheckReport;
use crate::set_system::{NeighborhoodMode, SetSystem, ShatterCertificate};

#[derive(Debug, thiserror::Error)]
pub enum WitnessError {
    #[error("schema error: {0}")]
    Schema(String),
    #[error("label {0} does not name a vertex of the graph")]
    UnknownLabel(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("cannot export a certificate for a derived graph; rebuildable family required")]
    NotBuildable,
}

/// One row of a witness table: the subset of the base set encoded by
/// `subset_mask` is traced exactly by the neighbourhood of `witness`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WitnessRow {
    pub subset_mask: u32,
    pub witness: DomainLabel,
}

/// A shattered-set claim: base set plus a witness for every subset.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WitnessTable {
    pub graph: GraphSpec,
    pub source: String,
    /// Provenance notes, e.g. how ambiguous rows were resolved.
    pub note: Option<String>,
    pub base_set: Vec<DomainLabel>,
    pub rows: Vec<WitnessRow>,
}

impl WitnessTable {
    /// Every subset mask must appear exactly once.
    pub fn check_complete(&self) -> Result<(), WitnessError> {
        let need = 1usize << self.base_set.len();
        let mut seen = vec![false; need];
        for row in &self.rows {
            let mask = row.subset_mask as usize;
            if mask >= need {
                return Err(WitnessError::Schema(format!(
                    "subset mask {mask} out of range for a base set of {} vertices",
                    self.base_set.len()
                )));
            }
            if seen[mask] {
                return Err(WitnessError::Schema(format!(
                    "duplicate subset mask {mask}"
                )));
            }
            seen[mask] = true;
        }
        if let Some(missing) = seen.iter().position(|&s| !s) {
            return Err(WitnessError::Schema(format!(
                "missing subset mask {missing}"
            )));
        }
        Ok(())
    }
}

fn subset(elems: &[u32]) -> DomainLabel {
    DomainLabel::Subset(SubsetLabel::new(elems.to_vec()).expect("static table label"))
}

fn tuple(entries: &[u32]) -> DomainLabel {
    DomainLabel::Tuple(TupleLabel::new(entries.to_vec()))
}

/// The five built-in shattered-set tables: 4-sets in J(7,2) and J(6,3),
/// 3-sets in H(2,4), H(3,3), and H(4,2). Every row verifies against the
/// freshly built graph; see the per-table notes for the two quirks in the
/// source data.
pub fn builtin_witnesses() -> Vec<WitnessTable> {
    let j72 = WitnessTable {
        graph: GraphSpec::Johnson { m: 7, k: 2 },
        source: "builtin: shattered 4-set in J(7,2)".to_string(),
        note: None,
        base_set: vec![
            subset(&[1, 3]),
            subset(&[1, 4]),
            subset(&[1, 5]),
            subset(&[1, 6]),
        ],
        rows: vec![
            WitnessRow { subset_mask: 0b0000, witness: subset(&[2, 7]) },
            WitnessRow { subset_mask: 0b0001, witness: subset(&[3, 7]) },
            WitnessRow { subset_mask: 0b0010, witness: subset(&[4, 7]) },
            WitnessRow { subset_mask: 0b0100, witness: subset(&[5, 7]) },
            WitnessRow { subset_mask: 0b1000, witness: subset(&[6, 7]) },
            WitnessRow { subset_mask: 0b0011, witness: subset(&[3, 4]) },
            WitnessRow { subset_mask: 0b0101, witness: subset(&[3, 5]) },
            WitnessRow { subset_mask: 0b1001, witness: subset(&[3, 6]) },
            WitnessRow { subset_mask: 0b0110, witness: subset(&[4, 5]) },
            WitnessRow { subset_mask: 0b1010, witness: subset(&[4, 6]) },
            WitnessRow { subset_mask: 0b1100, witness: subset(&[5, 6]) },
            WitnessRow { subset_mask: 0b0111, witness: subset(&[1, 6]) },
            WitnessRow { subset_mask: 0b1011, witness: subset(&[1, 5]) },
            WitnessRow { subset_mask: 0b1101, witness: subset(&[1, 4]) },
            WitnessRow { subset_mask: 0b1110, witness: subset(&[1, 3]) },
            WitnessRow { subset_mask: 0b1111, witness: subset(&[1, 2]) },
        ],
    };

    let j63 = WitnessTable {
        graph: GraphSpec::Johnson { m: 6, k: 3 },
        source: "builtin: shattered 4-set in J(6,3)".to_string(),
        note: Some(
            "four of the singleton and pair rows are witnessed by base-set vertices \
             themselves ({v2} by v1, {v3} by v4, {v1,v3} by v2, {v2,v4} by v3)"
                .to_string(),
        ),
        base_set: vec![
            subset(&[2, 3, 4]),
            subset(&[1, 3, 4]),
            subset(&[1, 3, 5]),
            subset(&[1, 2, 5]),
        ],
        rows: vec![
            WitnessRow { subset_mask: 0b0000, witness: subset(&[4, 5, 6]) },
            WitnessRow { subset_mask: 0b0001, witness: subset(&[2, 3, 6]) },
            WitnessRow { subset_mask: 0b0010, witness: subset(&[2, 3, 4]) },
            WitnessRow { subset_mask: 0b0100, witness: subset(&[1, 2, 5]) },
            WitnessRow { subset_mask: 0b1000, witness: subset(&[1, 2, 6]) },
            WitnessRow { subset_mask: 0b0011, witness: subset(&[3, 4, 6]) },
            WitnessRow { subset_mask: 0b0101, witness: subset(&[1, 3, 4]) },
            WitnessRow { subset_mask: 0b1001, witness: subset(&[2, 4, 5]) },
            WitnessRow { subset_mask: 0b0110, witness: subset(&[1, 3, 6]) },
            WitnessRow { subset_mask: 0b1010, witness: subset(&[1, 3, 5]) },
            WitnessRow { subset_mask: 0b1100, witness: subset(&[1, 5, 6]) },
            WitnessRow { subset_mask: 0b0111, witness: subset(&[3, 4, 5]) },
            WitnessRow { subset_mask: 0b1011, witness: subset(&[1, 2, 4]) },
            WitnessRow { subset_mask: 0b1101, witness: subset(&[2, 3, 5]) },
            WitnessRow { subset_mask: 0b1110, witness: subset(&[1, 4, 5]) },
            WitnessRow { subset_mask: 0b1111, witness: subset(&[1, 2, 3]) },
        ],
    };

    let h24 = WitnessTable {
        graph: GraphSpec::Hamming { d: 2, q: 4 },
        source: "builtin: shattered 3-set in H(2,4)".to_string(),
        note: Some(
            "the three pair rows arrived under one ambiguous '{v1,v2}' heading; each \
             witness is assigned to the pair it actually traces: (0,3) -> {v1,v2}, \
             (0,2) -> {v1,v3}, (0,1) -> {v2,v3}"
                .to_string(),
        ),
        base_set: vec![tuple(&[0, 1]), tuple(&[0, 2]), tuple(&[0, 3])],
        rows: vec![
            WitnessRow { subset_mask: 0b000, witness: tuple(&[1, 0]) },
            WitnessRow { subset_mask: 0b001, witness: tuple(&[1, 1]) },
            WitnessRow { subset_mask: 0b010, witness: tuple(&[2, 2]) },
            WitnessRow { subset_mask: 0b100, witness: tuple(&[3, 3]) },
            WitnessRow { subset_mask: 0b011, witness: tuple(&[0, 3]) },
            WitnessRow { subset_mask: 0b101, witness: tuple(&[0, 2]) },
            WitnessRow { subset_mask: 0b110, witness: tuple(&[0, 1]) },
            WitnessRow { subset_mask: 0b111, witness: tuple(&[0, 0]) },
        ],
    };

    let h33 = WitnessTable {
        graph: GraphSpec::Hamming { d: 3, q: 3 },
        source: "builtin: shattered 3-set in H(3,3)".to_string(),
        note: Some(
            "the printed witness for {v1,v3} was (0,0,1), which is v1 itself and traces \
             the empty set; the verified witness is (1,0,1), matching the 1-based \
             rendition of the same table where the row reads (2,1,2)"
                .to_string(),
        ),
        base_set: vec![tuple(&[0, 0, 1]), tuple(&[0, 1, 0]), tuple(&[1, 0, 0])],
        rows: vec![
            WitnessRow { subset_mask: 0b000, witness: tuple(&[1, 1, 1]) },
            WitnessRow { subset_mask: 0b001, witness: tuple(&[0, 0, 2]) },
            WitnessRow { subset_mask: 0b010, witness: tuple(&[0, 2, 0]) },
            WitnessRow { subset_mask: 0b100, witness: tuple(&[2, 0, 0]) },
            WitnessRow { subset_mask: 0b011, witness: tuple(&[0, 1, 1]) },
            WitnessRow { subset_mask: 0b101, witness: tuple(&[1, 0, 1]) },
            WitnessRow { subset_mask: 0b110, witness: tuple(&[1, 1, 0]) },
            WitnessRow { subset_mask: 0b111, witness: tuple(&[0, 0, 0]) },
        ],
    };

    let h42 = WitnessTable {
        graph: GraphSpec::Hamming { d: 4, q: 2 },
        source: "builtin: shattered 3-set in H(4,2)".to_string(),
        note: None,
        base_set: vec![
            tuple(&[0, 0, 0, 1]),
            tuple(&[0, 0, 1, 0]),
            tuple(&[0, 1, 0, 0]),
        ],
        rows: vec![
            WitnessRow { subset_mask: 0b000, witness: tuple(&[1, 1, 1, 1]) },
            WitnessRow { subset_mask: 0b001, witness: tuple(&[1, 0, 0, 1]) },
            WitnessRow { subset_mask: 0b010, witness: tuple(&[1, 0, 1, 0]) },
            WitnessRow { subset_mask: 0b100, witness: tuple(&[1, 1, 0, 0]) },
            WitnessRow { subset_mask: 0b011, witness: tuple(&[0, 0, 1, 1]) },
            WitnessRow { subset_mask: 0b101, witness: tuple(&[0, 1, 0, 1]) },
            WitnessRow { subset_mask: 0b110, witness: tuple(&[0, 1, 1, 0]) },
            WitnessRow { subset_mask: 0b111, witness: tuple(&[0, 0, 0, 0]) },
        ],
    };

    vec![j72, j63, h24, h33, h42]
}

/// Rebuilds the graph and re-traces every row of the table. The report has
/// one item per row plus a completeness item; verification passes only if
/// every subset mask appears exactly once and every witness traces exactly
/// its claimed subset.
pub fn verify_witness(w: &WitnessTable) -> Result<CheckReport, WitnessError> {
    let graph = w.graph.build()?;
    let ss = SetSystem::neighborhoods(&graph, NeighborhoodMode::Open);
    let mut report = CheckReport::default();
    match w.check_complete() {
        Ok(()) => report.record(
            "subset coverage",
            true,
            format!("all {} subsets present exactly once", w.rows.len()),
        ),
        Err(e) => report.record("subset coverage", false, e.to_string()),
    }
    let ids: Vec<usize> = w
        .base_set
        .iter()
        .map(|l| {
            graph
                .vertex_with_label(l)
                .ok_or_else(|| WitnessError::UnknownLabel(l.to_string()))
        })
        .collect::<Result<_, _>>()?;
    for row in &w.rows {
        let witness_id = graph
            .vertex_with_label(&row.witness)
            .ok_or_else(|| WitnessError::UnknownLabel(row.witness.to_string()))?;
        let actual = SetSystem::member_mask(&ss.members()[witness_id], &ids);
        report.record(
            format!("mask {:#06b} by {}", row.subset_mask, row.witness),
            actual == row.subset_mask,
            format!("neighbourhood traces {actual:#06b}"),
        );
    }
    Ok(report)
}

#[derive(Serialize)]
struct WitnessDocument<'a> {
    schema_version: u32,
    graph: GraphDocument,
    source: &'a str,
    #[serde(skip_serializing_if = "Option::is_none")]
    note: &'a Option<String>,
    base_set: Vec<serde_json::Value>,
    witnesses: Vec<RowDocument>,
}

#[derive(Serialize)]
struct GraphDocument {
    family: &'static str,
    params: Vec<u32>,
}

#[derive(Serialize)]
struct RowDocument {
    subset_mask: u32,
    witness_label: serde_json::Value,
}

/// JSON document for a witness table; inverse of [`import_witness`].
pub fn export_witness(w: &WitnessTable) -> serde_json::Value {
    let tag = w.graph.family_tag();
    serde_json::to_value(WitnessDocument {
        schema_version: 1,
        graph: GraphDocument {
            family: tag.family_name(),
            params: tag.params(),
        },
        source: &w.source,
        note: &w.note,
        base_set: w.base_set.iter().map(|l| l.to_json()).collect(),
        witnesses: w
            .rows
            .iter()
            .map(|r| RowDocument {
                subset_mask: r.subset_mask,
                witness_label: r.witness.to_json(),
            })
            .collect(),
    })
    .expect("witness document serializes")
}

/// Parses a witness document, validating the schema and subset coverage.
pub fn import_witness(json: &str) -> Result<WitnessTable, WitnessError> {
    let value: serde_json::Value =
        serde_json::from_str(json).map_err(|e| WitnessError::Schema(e.to_string()))?;
    import_witness_value(&value)
}

pub fn import_witness_value(value: &serde_json::Value) -> Result<WitnessTable, WitnessError> {
    let bad = |msg: String| WitnessError::Schema(msg);
    let graph_value = value
        .get("graph")
        .ok_or_else(|| bad("missing 'graph'".into()))?;
    let family = graph_value
        .get("family")
        .and_then(|f| f.as_str())
        .ok_or_else(|| bad("missing 'graph.family'".into()))?;
    let params: Vec<u32> = graph_value
        .get("params")
        .and_then(|p| p.as_array())
        .ok_or_else(|| bad("missing 'graph.params'".into()))?
        .iter()
        .map(|x| x.as_u64().and_then(|v| u32::try_from(v).ok()))
        .collect::<Option<_>>()
        .ok_or_else(|| bad("non-integer graph parameter".into()))?;
    let spec =
        GraphSpec::parse(family, &params).map_err(|e| bad(format!("bad graph spec: {e}")))?;
    let tag = spec.family_tag();

    let base_values = value
        .get("base_set")
        .and_then(|b| b.as_array())
        .ok_or_else(|| bad("missing 'base_set'".into()))?;
    let base_set: Vec<DomainLabel> = base_values
        .iter()
        .enumerate()
        .map(|(i, v)| {
            DomainLabel::from_json(v, &tag)
                .ok_or_else(|| bad(format!("base_set[{i}]: unparseable label {v}")))
        })
        .collect::<Result<_, _>>()?;

    let row_values = value
        .get("witnesses")
        .and_then(|w| w.as_array())
        .ok_or_else(|| bad("missing 'witnesses'".into()))?;
    let rows: Vec<WitnessRow> = row_values
        .iter()
        .enumerate()
        .map(|(i, rv)| {
            let mask = rv
                .get("subset_mask")
                .and_then(|m| m.as_u64())
                .ok_or_else(|| bad(format!("witnesses[{i}]: missing 'subset_mask'")))?;
            if mask > u32::MAX as u64 {
                return Err(bad(format!("witnesses[{i}]: subset_mask {mask} out of range")));
            }
            let label_value = rv
                .get("witness_label")
                .ok_or_else(|| bad(format!("witnesses[{i}]: missing 'witness_label'")))?;
            let witness = DomainLabel::from_json(label_value, &tag)
                .ok_or_else(|| bad(format!("witnesses[{i}]: unparseable label")))?;
            Ok(WitnessRow {
                subset_mask: mask as u32,
                witness,
            })
        })
        .collect::<Result<_, WitnessError>>()?;

    let witness = WitnessTable {
        graph: spec,
        source: value
            .get("source")
            .and_then(|s| s.as_str())
            .unwrap_or("imported")
            .to_string(),
        note: value
            .get("note")
            .and_then(|s| s.as_str())
            .map(|s| s.to_string()),
        base_set,
        rows,
    };
    witness.check_complete()?;
    Ok(witness)
}

/// Converts a search-produced certificate into the same document shape, so
/// it can be exported, re-imported, and verified like the built-in tables.
pub fn certificate_to_witness(
    g: &Graph,
    cert: &ShatterCertificate,
    source: &str,
) -> Result<WitnessTable, WitnessError> {
    let spec = match g.family() {
        FamilyTag::Johnson { m, k } => GraphSpec::Johnson { m, k },
        FamilyTag::Hamming { d, q } => GraphSpec::Hamming { d, q },
        FamilyTag::Rook { rows, cols } => GraphSpec::Rook { rows, cols },
        FamilyTag::Complete { n } => GraphSpec::Complete { n },
        FamilyTag::SubdividedComplete { n } => GraphSpec::SubdividedComplete { n },
        FamilyTag::Derived => return Err(WitnessError::NotBuildable),
    };
    Ok(WitnessTable {
        graph: spec,
        source: source.to_string(),
        note: None,
        base_set: cert
            .base_set()
            .iter()
            .map(|&v| g.label(v).clone())
            .collect(),
        rows: cert
            .witnesses()
            .iter()
            .enumerate()
            .map(|(mask, &w)| WitnessRow {
                subset_mask: mask as u32,
                witness: g.label(w).clone(),
            })
            .collect(),
    })
}
