//! Closed-form predicates for Johnson graphs, cross-checkable against the
//! concrete graph.
//!
//! Everything here works on subset labels, independent of any materialized
//! graph: distance is half the symmetric difference, common neighbourhoods
//! have an explicit four-case description, the neighbourhood of any vertex is
//! a rook's grid, and 4-subsets of a neighbourhood fall into sixteen
//! configurations up to relabelling. [`cross_check`] replays all of it
//! against brute force on a real graph and is wired to the `oracle-check`
//! CLI command.

use std::collections::HashMap;
use std::sync::OnceLock;

use crate::density::{DensityWitness, PairWitness};
use crate::graph::{
    rank_subset, DomainLabel, FamilyTag, Graph, GraphSpec, LabelError, SubsetLabel,
};
use crate::report::CheckReport;

/// Graph distance between two Johnson vertices: `|u Δ v| / 2`.
pub fn johnson_distance(u: &SubsetLabel, v: &SubsetLabel) -> Result<u32, LabelError> {
    if u.len() != v.len() {
        return Err(LabelError::SizeMismatch {
            left: u.len(),
            right: v.len(),
        });
    }
    Ok(u.symmetric_difference_size(v) as u32 / 2)
}

fn check_membership(label: &SubsetLabel, m: u32) -> Result<(), LabelError> {
    if let Some(&e) = label.elements().iter().find(|&&e| e > m) {
        return Err(LabelError::ElementOutOfRange { element: e, max: m });
    }
    Ok(())
}

/// The common neighbourhood `N(u) ∩ N(v)` in `J(m, |u|)`, as sorted labels.
///
/// At distance 0 this is all `k(m-k)` neighbours; at distance 1 the `m-2`
/// vertices that keep exactly one of the swapped elements fixed; at distance
/// 2 the four grid corners `(v \ {c}) ∪ {z}` with `c` among the two removed
/// and `z` among the two added elements; farther apart, none.
pub fn johnson_common_neighbors(
    u: &SubsetLabel,
    v: &SubsetLabel,
    m: u32,
) -> Result<Vec<SubsetLabel>, LabelError> {
    check_membership(u, m)?;
    check_membership(v, m)?;
    let dist = johnson_distance(u, v)?;
    let mut out = Vec::new();
    match dist {
        0 => {
            for &a in v.elements() {
                for x in v.complement(m) {
                    out.push(v.swap_element(a, x).expect("valid swap"));
                }
            }
        }
        1 => {
            let removed: Vec<u32> = v
                .elements()
                .iter()
                .copied()
                .filter(|&e| !u.contains(e))
                .collect();
            let added: Vec<u32> = u
                .elements()
                .iter()
                .copied()
                .filter(|&e| !v.contains(e))
                .collect();
            let (a, x) = (removed[0], added[0]);
            for z in 1..=m {
                if z != x && !v.contains(z) {
                    out.push(v.swap_element(a, z).expect("valid swap"));
                }
            }
            for &c in v.elements() {
                if c != a {
                    out.push(v.swap_element(c, x).expect("valid swap"));
                }
            }
        }
        2 => {
            let removed: Vec<u32> = v
                .elements()
                .iter()
                .copied()
                .filter(|&e| !u.contains(e))
                .collect();
            let added: Vec<u32> = u
                .elements()
                .iter()
                .copied()
                .filter(|&e| !v.contains(e))
                .collect();
            for &c in &removed {
                for &z in &added {
                    out.push(v.swap_element(c, z).expect("valid swap"));
                }
            }
        }
        _ => {}
    }
    out.sort_unstable();
    Ok(out)
}

/// `|N(u) ∩ N(v)|` in `J(m, |u|)` by distance: `k(m-k)`, `m-2`, `4`, `0`.
pub fn johnson_intersection_size(u: &SubsetLabel, v: &SubsetLabel, m: u32) -> Result<u64, LabelError> {
    check_membership(u, m)?;
    check_membership(v, m)?;
    let k = u.len() as u64;
    Ok(match johnson_distance(u, v)? {
        0 => k * (m as u64 - k),
        1 => m as u64 - 2,
        2 => 4,
        _ => 0,
    })
}

/// Assignment of neighbourhood labels to `(row, col)` grid cells.
pub type RookEmbedding = Vec<(SubsetLabel, (u32, u32))>;

/// The neighbourhood of `v` in `J(m,k)` laid out as the rook's grid
/// `R(k, m-k)`: the neighbour `(v \ {a}) ∪ {x}` maps to the cell whose row is
/// the position of `a` in `v` and whose column is the position of `x` in the
/// complement of `v` (both ascending, 0-based). The returned pairs are sorted
/// by label; the map is a graph isomorphism onto `R(k, m-k)`.
pub fn rook_embedding(m: u32, k: u32, v: &SubsetLabel) -> Result<RookEmbedding, LabelError> {
    check_membership(v, m)?;
    if v.len() != k as usize {
        return Err(LabelError::SizeMismatch {
            left: v.len(),
            right: k as usize,
        });
    }
    let complement = v.complement(m);
    let mut out = Vec::with_capacity(k as usize * complement.len());
    for (row, &a) in v.elements().iter().enumerate() {
        for (col, &x) in complement.iter().enumerate() {
            out.push((
                v.swap_element(a, x).expect("valid swap"),
                (row as u32, col as u32),
            ));
        }
    }
    out.sort_unstable_by(|a, b| a.0.cmp(&b.0));
    Ok(out)
}

/// True when some three of the labels are pairwise at Johnson distance 2.
pub fn has_distance2_triple(labels: &[SubsetLabel]) -> Result<bool, LabelError> {
    let n = labels.len();
    for i in 0..n {
        for j in i + 1..n {
            if johnson_distance(&labels[i], &labels[j])? != 2 {
                continue;
            }
            for l in j + 1..n {
                if johnson_distance(&labels[i], &labels[l])? == 2
                    && johnson_distance(&labels[j], &labels[l])? == 2
                {
                    return Ok(true);
                }
            }
        }
    }
    Ok(false)
}

/// The sixteen configurations of a 4-subset of a Johnson neighbourhood, up to
/// relabelling of removed elements, added elements, and the four vertices.
/// Configurations IX through XVI are shattered by the edge relation; I
/// through VIII are not.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[allow(clippy::upper_case_acronyms)]
pub enum CaseId {
    I,
    II,
    III,
    IV,
    V,
    VI,
    VII,
    VIII,
    IX,
    X,
    XI,
    XII,
    XIII,
    XIV,
    XV,
    XVI,
}

impl CaseId {
    pub const ALL: [CaseId; 16] = [
        CaseId::I,
        CaseId::II,
        CaseId::III,
        CaseId::IV,
        CaseId::V,
        CaseId::VI,
        CaseId::VII,
        CaseId::VIII,
        CaseId::IX,
        CaseId::X,
        CaseId::XI,
        CaseId::XII,
        CaseId::XIII,
        CaseId::XIV,
        CaseId::XV,
        CaseId::XVI,
    ];

    /// Whether a quad in this configuration is shattered by the edge
    /// relation (in a large enough Johnson graph).
    pub fn shatters(self) -> bool {
        matches!(
            self,
            CaseId::IX
                | CaseId::X
                | CaseId::XI
                | CaseId::XII
                | CaseId::XIII
                | CaseId::XIV
                | CaseId::XV
                | CaseId::XVI
        )
    }

    pub fn roman(self) -> &'static str {
        match self {
            CaseId::I => "I",
            CaseId::II => "II",
            CaseId::III => "III",
            CaseId::IV => "IV",
            CaseId::V => "V",
            CaseId::VI => "VI",
            CaseId::VII => "VII",
            CaseId::VIII => "VIII",
            CaseId::IX => "IX",
            CaseId::X => "X",
            CaseId::XI => "XI",
            CaseId::XII => "XII",
            CaseId::XIII => "XIII",
            CaseId::XIV => "XIV",
            CaseId::XV => "XV",
            CaseId::XVI => "XVI",
        }
    }
}

impl std::fmt::Display for CaseId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.roman())
    }
}

/// Defining pattern of each case as four `(removed-class, added-class)`
/// pairs. Vertices sharing an added element sit in the same row of the rook
/// grid; vertices sharing a removed element sit in the same column. The
/// comment on each entry states the row partition / column partition and,
/// where shapes alone are ambiguous, the alignment that tells the cases
/// apart.
const CASE_PATTERNS: [(CaseId, [(u8, u8); 4]); 16] = [
    // rows 3+1, cols 1+1+1+1
    (CaseId::I, [(1, 1), (2, 1), (3, 1), (4, 2)]),
    // rows 2+2, cols 2+2: full 2x2 grid
    (CaseId::II, [(1, 1), (2, 1), (1, 2), (2, 2)]),
    // rows 2+1+1, cols 2+1+1: the doubled column meets the doubled row
    (CaseId::III, [(1, 1), (2, 1), (1, 2), (3, 3)]),
    // rows 2+1+1, cols 2+1+1: the doubled column avoids the doubled row
    (CaseId::IV, [(1, 1), (2, 1), (3, 2), (3, 3)]),
    // rows 2+1+1, cols 1+1+1+1
    (CaseId::V, [(1, 1), (2, 1), (3, 2), (4, 3)]),
    // rows 1+1+1+1, cols 3+1
    (CaseId::VI, [(1, 1), (1, 2), (1, 3), (2, 4)]),
    // rows 1+1+1+1, cols 2+1+1
    (CaseId::VII, [(1, 1), (1, 2), (2, 3), (3, 4)]),
    // rows 1+1+1+1, cols 1+1+1+1: a diagonal
    (CaseId::VIII, [(1, 1), (2, 2), (3, 3), (4, 4)]),
    // rows 4: four vertices in one row
    (CaseId::IX, [(1, 1), (2, 1), (3, 1), (4, 1)]),
    // rows 3+1, cols 2+1+1: the lone vertex shares a column with the row
    (CaseId::X, [(1, 1), (2, 1), (3, 1), (1, 2)]),
    // rows 2+2, cols 2+1+1: one shared column between the two rows
    (CaseId::XI, [(1, 1), (2, 1), (1, 2), (3, 2)]),
    // rows 2+2, cols 1+1+1+1
    (CaseId::XII, [(1, 1), (2, 1), (3, 2), (4, 2)]),
    // rows 2+1+1, cols 3+1: the tripled column meets the doubled row
    (CaseId::XIII, [(1, 1), (2, 1), (1, 2), (1, 3)]),
    // rows 2+1+1, cols 2+2: both columns meet the doubled row
    (CaseId::XIV, [(1, 1), (2, 1), (1, 2), (2, 3)]),
    // cols 4: four vertices in one column
    (CaseId::XV, [(1, 1), (1, 2), (1, 3), (1, 4)]),
    // rows 1+1+1+1, cols 2+2
    (CaseId::XVI, [(1, 1), (1, 2), (2, 3), (2, 4)]),
];

/// Canonical form of a quad: class counts plus the lexicographically minimal
/// cell set over all relabelings of rows (added-element classes) and columns
/// (removed-element classes).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
struct CanonForm {
    rows: u8,
    cols: u8,
    cells: [(u8, u8); 4],
}

fn permutations(n: u8) -> Vec<Vec<u8>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for rest in permutations(n - 1) {
        for pos in 0..=rest.len() {
            let mut p = rest.clone();
            p.insert(pos, n - 1);
            out.push(p);
        }
    }
    out
}

/// `pairs` are `(removed-class id, added-class id)` per vertex; ids
/// arbitrary. No two pairs may coincide.
fn canonical_form(pairs: &[(u8, u8); 4]) -> CanonForm {
    let mut col_ids: Vec<u8> = pairs.iter().map(|p| p.0).collect();
    col_ids.sort_unstable();
    col_ids.dedup();
    let mut row_ids: Vec<u8> = pairs.iter().map(|p| p.1).collect();
    row_ids.sort_unstable();
    row_ids.dedup();
    let cells: Vec<(u8, u8)> = pairs
        .iter()
        .map(|&(a, x)| {
            (
                row_ids.iter().position(|&r| r == x).unwrap() as u8,
                col_ids.iter().position(|&c| c == a).unwrap() as u8,
            )
        })
        .collect();
    let mut best: Option<[(u8, u8); 4]> = None;
    for row_perm in permutations(row_ids.len() as u8) {
        for col_perm in permutations(col_ids.len() as u8) {
            let mut mapped: [(u8, u8); 4] = [(0, 0); 4];
            for (slot, &(r, c)) in mapped.iter_mut().zip(&cells) {
                *slot = (row_perm[r as usize], col_perm[c as usize]);
            }
            mapped.sort_unstable();
            if best.is_none_or(|b| mapped < b) {
                best = Some(mapped);
            }
        }
    }
    CanonForm {
        rows: row_ids.len() as u8,
        cols: col_ids.len() as u8,
        cells: best.unwrap(),
    }
}

fn case_table() -> &'static HashMap<CanonForm, CaseId> {
    static TABLE: OnceLock<HashMap<CanonForm, CaseId>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut map = HashMap::new();
        for (case, pattern) in CASE_PATTERNS {
            let prior = map.insert(canonical_form(&pattern), case);
            assert!(prior.is_none(), "case patterns must be distinct");
        }
        map
    })
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum ClassifyError {
    #[error("expected exactly 4 vertices, got {0}")]
    WrongQuadSize(usize),
    #[error("label error: {0}")]
    Label(#[from] LabelError),
    #[error("vertex {0} is not adjacent to the centre")]
    NotInNeighborhood(SubsetLabel),
    #[error("vertex {0} appears twice")]
    DuplicateVertex(SubsetLabel),
}

/// Full classification result for a 4-subset of `N(v)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadClass {
    pub case: CaseId,
    /// Class sizes of the shared-removed-element relation, descending.
    pub removed_partition: Vec<u32>,
    /// Class sizes of the shared-added-element relation, descending.
    pub added_partition: Vec<u32>,
    /// Canonical grid cells `(row, col)` of the four vertices.
    pub alignment: [(u8, u8); 4],
}

/// Classifies four distinct neighbours of `v` into one of the sixteen
/// configurations.
pub fn classify_four_subset(
    v: &SubsetLabel,
    quad: &[SubsetLabel],
) -> Result<QuadClass, ClassifyError> {
    if quad.len() != 4 {
        return Err(ClassifyError::WrongQuadSize(quad.len()));
    }
    let mut pairs = [(0u8, 0u8); 4];
    let mut removed_seen: Vec<u32> = Vec::new();
    let mut added_seen: Vec<u32> = Vec::new();
    for (i, w) in quad.iter().enumerate() {
        if johnson_distance(v, w)? != 1 {
            return Err(ClassifyError::NotInNeighborhood(w.clone()));
        }
        if quad[i + 1..].contains(w) {
            return Err(ClassifyError::DuplicateVertex(w.clone()));
        }
        let removed = *v
            .elements()
            .iter()
            .find(|&&e| !w.contains(e))
            .expect("distance 1 leaves one element behind");
        let added = *w
            .elements()
            .iter()
            .find(|&&e| !v.contains(e))
            .expect("distance 1 brings one element in");
        let a_class = match removed_seen.iter().position(|&e| e == removed) {
            Some(p) => p,
            None => {
                removed_seen.push(removed);
                removed_seen.len() - 1
            }
        };
        let x_class = match added_seen.iter().position(|&e| e == added) {
            Some(p) => p,
            None => {
                added_seen.push(added);
                added_seen.len() - 1
            }
        };
        pairs[i] = (a_class as u8, x_class as u8);
    }
    let form = canonical_form(&pairs);
    let case = *case_table()
        .get(&form)
        .expect("every 4-subset of distinct neighbours matches a pattern");
    let partition = |class_of: &dyn Fn(&(u8, u8)) -> u8, classes: usize| -> Vec<u32> {
        let mut sizes = vec![0u32; classes];
        for p in &pairs {
            sizes[class_of(p) as usize] += 1;
        }
        sizes.sort_unstable_by(|a, b| b.cmp(a));
        sizes
    };
    Ok(QuadClass {
        case,
        removed_partition: partition(&|p| p.0, removed_seen.len()),
        added_partition: partition(&|p| p.1, added_seen.len()),
        alignment: form.cells,
    })
}

/// A quad in the given configuration inside `N({1..k})` of `J(m,k)`, for
/// graphs large enough to host it (`k >= 4` and `m - k >= 4` cover all
/// sixteen cases).
pub fn case_representative(
    case: CaseId,
    m: u32,
    k: u32,
) -> Result<(SubsetLabel, Vec<SubsetLabel>), LabelError> {
    let (_, pattern) = CASE_PATTERNS
        .iter()
        .find(|(c, _)| *c == case)
        .expect("all cases present");
    let v = SubsetLabel::new((1..=k).collect())?;
    let mut quad = Vec::with_capacity(4);
    for &(a_class, x_class) in pattern {
        let removed = a_class as u32;
        let added = k + x_class as u32;
        if removed > k || added > m {
            return Err(LabelError::ElementOutOfRange {
                element: added.max(removed),
                max: m,
            });
        }
        quad.push(v.swap_element(removed, added)?);
    }
    Ok((v, quad))
}

/// Base set of `k` pairwise-distance-2 vertices in `J(m,k)` (requires
/// `m > 2k`) together with, for each pair, the vertex whose neighbourhood
/// traces exactly that pair. Verifying the witness against the real graph
/// shows the trace count of the base set grows quadratically in its size.
pub fn johnson_density_witness(m: u32, k: u32) -> Result<DensityWitness, LabelError> {
    if k == 0 || m <= 2 * k {
        return Err(LabelError::ElementOutOfRange {
            element: 2 * k,
            max: m,
        });
    }
    let v = SubsetLabel::new((1..=k).collect())?;
    let base: Vec<SubsetLabel> = (1..=k)
        .map(|i| v.swap_element(i, k + i).expect("fresh element"))
        .collect();
    let mut pairs = Vec::new();
    for i in 0..k {
        for j in i + 1..k {
            // Drops the i-th removed element but adopts the j-th added one.
            let w = v.swap_element(i + 1, k + j + 1).expect("fresh element");
            pairs.push(PairWitness {
                first: i as usize,
                second: j as usize,
                witness: DomainLabel::Subset(w),
            });
        }
    }
    Ok(DensityWitness {
        graph: GraphSpec::Johnson { m, k },
        base_set: base.into_iter().map(DomainLabel::Subset).collect(),
        pairs,
    })
}

#[derive(Debug, thiserror::Error)]
pub enum CrossCheckError {
    #[error("expected a {expected} graph, got {got}")]
    WrongFamily {
        expected: &'static str,
        got: String,
    },
    #[error("label error during cross-check: {0}")]
    Label(#[from] LabelError),
}

/// Replays every closed-form predicate in this module against brute force on
/// a concrete Johnson graph: distances against BFS, common neighbourhoods
/// and their sizes against adjacency-row intersections, and the rook-grid
/// layout of every neighbourhood against the induced subgraph.
pub fn cross_check(g: &Graph) -> Result<CheckReport, CrossCheckError> {
    let FamilyTag::Johnson { m, k } = g.family() else {
        return Err(CrossCheckError::WrongFamily {
            expected: "Johnson",
            got: g.family().to_string(),
        });
    };
    let mut report = CheckReport::default();
    let n = g.num_vertices();
    let labels: Vec<&SubsetLabel> = (0..n).map(|v| g.label(v).as_subset().unwrap()).collect();

    let mut bad_pairs = 0usize;
    for u in 0..n {
        for v in 0..n {
            let formula = johnson_distance(labels[u], labels[v])?;
            let bfs = g.bfs_distance(u, v).unwrap();
            if bfs != Some(formula) {
                bad_pairs += 1;
            }
        }
    }
    report.record(
        "distance formula vs BFS",
        bad_pairs == 0,
        format!("{bad_pairs} mismatches over {} ordered pairs", n * n),
    );

    let mut bad_common = 0usize;
    let mut bad_size = 0usize;
    for u in 0..n {
        for v in 0..n {
            let expected: Vec<usize> = g.neighbors(u).intersection(g.neighbors(v)).to_vec();
            let predicted = johnson_common_neighbors(labels[u], labels[v], m)?;
            let mut predicted_ids: Vec<usize> = predicted
                .iter()
                .map(|l| rank_subset(l, m).unwrap())
                .collect();
            predicted_ids.sort_unstable();
            if predicted_ids != expected {
                bad_common += 1;
            }
            if johnson_intersection_size(labels[u], labels[v], m)? != expected.len() as u64 {
                bad_size += 1;
            }
        }
    }
    report.record(
        "common neighbours vs adjacency rows",
        bad_common == 0,
        format!("{bad_common} mismatches"),
    );
    report.record(
        "intersection-size formula",
        bad_size == 0,
        format!("{bad_size} mismatches"),
    );

    let rook = Graph::rook(k.max(1), (m - k).max(1));
    let mut bad_rook = 0usize;
    if k >= 1 && m - k >= 1 {
        let rook = rook.as_ref().expect("rook parameters are positive");
        let cols = m - k;
        for label in &labels {
            let embedding = rook_embedding(m, k, label)?;
            for (wa, (ra, ca)) in &embedding {
                for (wb, (rb, cb)) in &embedding {
                    if wa == wb {
                        continue;
                    }
                    let in_johnson =
                        g.has_edge(rank_subset(wa, m).unwrap(), rank_subset(wb, m).unwrap());
                    let in_rook = rook.has_edge(
                        (ra * cols + ca) as usize,
                        (rb * cols + cb) as usize,
                    );
                    if in_johnson != in_rook {
                        bad_rook += 1;
                    }
                }
            }
        }
    }
    report.record(
        "neighbourhood rook-grid isomorphism",
        bad_rook == 0,
        format!("{bad_rook} edge mismatches across all {n} neighbourhoods"),
    );
    Ok(report)
}
