//! Graph representation and generators for the studied families.
//!
//! Graphs are immutable once built: simple, undirected, with one bit-vector
//! adjacency row per vertex and a domain label per vertex. Vertex ids are
//! assigned by colex rank of the defining label (subsets) or by little-endian
//! base-`q` value (tuples), so ids are deterministic and certificates are
//! portable across runs.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::bits::VertexSet;
use crate::combin::{binomial, subset_rank_colex, subset_unrank_colex, ColexSubsets};

/// Hard default on materialized graph size. `J(13,6)` (1716 vertices) and
/// `H(6,4)` (4096 vertices) fit; anything bigger must be requested with an
/// explicit cap.
pub const DEFAULT_MAX_VERTICES: usize = 4096;

pub type VertexId = usize;

#[derive(Debug, thiserror::Error)]
pub enum GraphError {
    #[error("graph would have {needed} vertices, exceeding the cap of {cap}")]
    CapacityExceeded { needed: u64, cap: usize },
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("vertex {vertex} out of range for a graph on {num_vertices} vertices")]
    VertexOutOfRange {
        vertex: VertexId,
        num_vertices: usize,
    },
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum LabelError {
    #[error("subset elements must be distinct, ascending, and at least 1")]
    MalformedSubset,
    #[error("label sizes differ: {left} vs {right}")]
    SizeMismatch { left: usize, right: usize },
    #[error("element {element} outside 1..={max}")]
    ElementOutOfRange { element: u32, max: u32 },
    #[error("tuple entry {entry} outside 0..{alphabet}")]
    EntryOutOfRange { entry: u32, alphabet: u32 },
}

/// A `k`-subset of `{1, .., m}`, stored strictly increasing.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct SubsetLabel(Vec<u32>);

impl SubsetLabel {
    pub fn new(elements: Vec<u32>) -> Result<Self, LabelError> {
        if elements.contains(&0) || elements.windows(2).any(|w| w[0] >= w[1]) {
            return Err(LabelError::MalformedSubset);
        }
        Ok(Self(elements))
    }

    /// Like [`SubsetLabel::new`] but sorts first; duplicates still reject.
    pub fn from_unsorted(mut elements: Vec<u32>) -> Result<Self, LabelError> {
        elements.sort_unstable();
        Self::new(elements)
    }

    pub fn elements(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, e: u32) -> bool {
        self.0.binary_search(&e).is_ok()
    }

    /// `(self \ {removed}) ∪ {added}`; both arguments must apply.
    pub fn swap_element(&self, removed: u32, added: u32) -> Result<Self, LabelError> {
        if !self.contains(removed) || self.contains(added) || added == 0 {
            return Err(LabelError::MalformedSubset);
        }
        let mut elems: Vec<u32> = self.0.iter().copied().filter(|&e| e != removed).collect();
        elems.push(added);
        elems.sort_unstable();
        Ok(Self(elems))
    }

    /// Elements of `{1, .., m}` not in this subset, ascending.
    pub fn complement(&self, m: u32) -> Vec<u32> {
        (1..=m).filter(|&e| !self.contains(e)).collect()
    }

    pub fn symmetric_difference_size(&self, other: &Self) -> usize {
        let inter = self.0.iter().filter(|e| other.contains(**e)).count();
        self.0.len() + other.0.len() - 2 * inter
    }
}

impl fmt::Debug for SubsetLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for SubsetLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, e) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, "}}")
    }
}

/// A `d`-tuple over the alphabet `{0, .., q-1}`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct TupleLabel(Vec<u32>);

impl TupleLabel {
    pub fn new(entries: Vec<u32>) -> Self {
        Self(entries)
    }

    pub fn entries(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn check_alphabet(&self, q: u32) -> Result<(), LabelError> {
        match self.0.iter().find(|&&e| e >= q) {
            Some(&entry) => Err(LabelError::EntryOutOfRange { entry, alphabet: q }),
            None => Ok(()),
        }
    }

    /// Copy with coordinate `coord` (0-based) set to `value`.
    pub fn with_entry(&self, coord: usize, value: u32) -> Self {
        let mut entries = self.0.clone();
        entries[coord] = value;
        Self(entries)
    }

    /// 0-based coordinates where the two tuples differ.
    pub fn differing_coords(&self, other: &Self) -> Result<Vec<usize>, LabelError> {
        if self.0.len() != other.0.len() {
            return Err(LabelError::SizeMismatch {
                left: self.0.len(),
                right: other.0.len(),
            });
        }
        Ok((0..self.0.len()).filter(|&i| self.0[i] != other.0[i]).collect())
    }
}

impl fmt::Debug for TupleLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for TupleLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, e) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, ")")
    }
}

/// What a vertex "is" in the family it came from.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum DomainLabel {
    Subset(SubsetLabel),
    Tuple(TupleLabel),
    Pair { row: u32, col: u32 },
    Index(u64),
}

impl DomainLabel {
    pub fn as_subset(&self) -> Option<&SubsetLabel> {
        match self {
            DomainLabel::Subset(s) => Some(s),
            _ => None,
        }
    }

    pub fn as_tuple(&self) -> Option<&TupleLabel> {
        match self {
            DomainLabel::Tuple(t) => Some(t),
            _ => None,
        }
    }

    /// JSON value for the witness / certificate schemas. Subsets, tuples and
    /// pairs all render as plain integer arrays; the graph family on the
    /// surrounding document disambiguates them.
    pub fn to_json(&self) -> serde_json::Value {
        match self {
            DomainLabel::Subset(s) => serde_json::json!(s.elements()),
            DomainLabel::Tuple(t) => serde_json::json!(t.entries()),
            DomainLabel::Pair { row, col } => serde_json::json!([row, col]),
            DomainLabel::Index(i) => serde_json::json!(i),
        }
    }

    /// Parses a JSON value produced by [`DomainLabel::to_json`] in the
    /// context of `family`.
    pub fn from_json(value: &serde_json::Value, family: &FamilyTag) -> Option<DomainLabel> {
        let ints = |v: &serde_json::Value| -> Option<Vec<u32>> {
            v.as_array()?
                .iter()
                .map(|x| u32::try_from(x.as_u64()?).ok())
                .collect()
        };
        match family {
            FamilyTag::Johnson { .. } => Some(DomainLabel::Subset(SubsetLabel::new(ints(value)?).ok()?)),
            FamilyTag::Hamming { .. } => Some(DomainLabel::Tuple(TupleLabel::new(ints(value)?))),
            FamilyTag::Rook { .. } => {
                let v = ints(value)?;
                if v.len() != 2 {
                    return None;
                }
                Some(DomainLabel::Pair { row: v[0], col: v[1] })
            }
            FamilyTag::Complete { .. } | FamilyTag::SubdividedComplete { .. } | FamilyTag::Derived => {
                value.as_u64().map(DomainLabel::Index)
            }
        }
    }
}

impl fmt::Display for DomainLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DomainLabel::Subset(s) => write!(f, "{s}"),
            DomainLabel::Tuple(t) => write!(f, "{t}"),
            DomainLabel::Pair { row, col } => write!(f, "({row},{col})"),
            DomainLabel::Index(i) => write!(f, "v{i}"),
        }
    }
}

/// Which generator produced a graph; `Derived` marks induced subgraphs.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FamilyTag {
    Johnson { m: u32, k: u32 },
    Hamming { d: u32, q: u32 },
    Rook { rows: u32, cols: u32 },
    Complete { n: u32 },
    SubdividedComplete { n: u32 },
    Derived,
}

impl FamilyTag {
    pub fn family_name(&self) -> &'static str {
        match self {
            FamilyTag::Johnson { .. } => "johnson",
            FamilyTag::Hamming { .. } => "hamming",
            FamilyTag::Rook { .. } => "rook",
            FamilyTag::Complete { .. } => "complete",
            FamilyTag::SubdividedComplete { .. } => "subdivided",
            FamilyTag::Derived => "derived",
        }
    }

    pub fn params(&self) -> Vec<u32> {
        match *self {
            FamilyTag::Johnson { m, k } => vec![m, k],
            FamilyTag::Hamming { d, q } => vec![d, q],
            FamilyTag::Rook { rows, cols } => vec![rows, cols],
            FamilyTag::Complete { n } | FamilyTag::SubdividedComplete { n } => vec![n],
            FamilyTag::Derived => vec![],
        }
    }
}

impl fmt::Display for FamilyTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            FamilyTag::Johnson { m, k } => write!(f, "J({m},{k})"),
            FamilyTag::Hamming { d, q } => write!(f, "H({d},{q})"),
            FamilyTag::Rook { rows, cols } => write!(f, "R({rows},{cols})"),
            FamilyTag::Complete { n } => write!(f, "K_{n}"),
            FamilyTag::SubdividedComplete { n } => write!(f, "S(K_{n})"),
            FamilyTag::Derived => write!(f, "derived"),
        }
    }
}

/// A buildable graph description: every family tag except `Derived`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GraphSpec {
    Johnson { m: u32, k: u32 },
    Hamming { d: u32, q: u32 },
    Rook { rows: u32, cols: u32 },
    Complete { n: u32 },
    SubdividedComplete { n: u32 },
}

impl GraphSpec {
    pub fn build(&self) -> Result<Graph, GraphError> {
        self.build_with_cap(DEFAULT_MAX_VERTICES)
    }

    pub fn build_with_cap(&self, cap: usize) -> Result<Graph, GraphError> {
        match *self {
            GraphSpec::Johnson { m, k } => Graph::johnson_with_cap(m, k, cap),
            GraphSpec::Hamming { d, q } => Graph::hamming_with_cap(d, q, cap),
            GraphSpec::Rook { rows, cols } => Graph::rook_with_cap(rows, cols, cap),
            GraphSpec::Complete { n } => Graph::complete_with_cap(n, cap),
            GraphSpec::SubdividedComplete { n } => Graph::subdivided_complete_with_cap(n, cap),
        }
    }

    pub fn family_tag(&self) -> FamilyTag {
        match *self {
            GraphSpec::Johnson { m, k } => FamilyTag::Johnson { m, k },
            GraphSpec::Hamming { d, q } => FamilyTag::Hamming { d, q },
            GraphSpec::Rook { rows, cols } => FamilyTag::Rook { rows, cols },
            GraphSpec::Complete { n } => FamilyTag::Complete { n },
            GraphSpec::SubdividedComplete { n } => FamilyTag::SubdividedComplete { n },
        }
    }

    /// Parses `("johnson", [7, 2])` style family/parameter pairs.
    pub fn parse(family: &str, params: &[u32]) -> Result<GraphSpec, GraphError> {
        let need = |n: usize| -> Result<(), GraphError> {
            if params.len() == n {
                Ok(())
            } else {
                Err(GraphError::InvalidParameters(format!(
                    "family '{family}' takes {n} parameter(s), got {}",
                    params.len()
                )))
            }
        };
        match family {
            "johnson" => {
                need(2)?;
                Ok(GraphSpec::Johnson {
                    m: params[0],
                    k: params[1],
                })
            }
            "hamming" => {
                need(2)?;
                Ok(GraphSpec::Hamming {
                    d: params[0],
                    q: params[1],
                })
            }
            "rook" => {
                need(2)?;
                Ok(GraphSpec::Rook {
                    rows: params[0],
                    cols: params[1],
                })
            }
            "complete" => {
                need(1)?;
                Ok(GraphSpec::Complete { n: params[0] })
            }
            "subdivided" => {
                need(1)?;
                Ok(GraphSpec::SubdividedComplete { n: params[0] })
            }
            other => Err(GraphError::InvalidParameters(format!(
                "unknown family '{other}' (expected johnson, hamming, rook, complete, subdivided)"
            ))),
        }
    }
}

impl fmt::Display for GraphSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.family_tag().fmt(f)
    }
}

/// An immutable finite simple graph with bit-vector adjacency rows.
#[derive(Clone, Debug)]
pub struct Graph {
    rows: Vec<VertexSet>,
    family: FamilyTag,
    labels: Vec<DomainLabel>,
}

impl Graph {
    fn new(num_vertices: usize, family: FamilyTag, labels: Vec<DomainLabel>) -> Self {
        debug_assert_eq!(labels.len(), num_vertices);
        Self {
            rows: vec![VertexSet::empty(num_vertices); num_vertices],
            family,
            labels,
        }
    }

    fn add_edge(&mut self, u: VertexId, v: VertexId) {
        debug_assert_ne!(u, v);
        self.rows[u].insert(v);
        self.rows[v].insert(u);
    }

    fn check_cap(needed: u64, cap: usize) -> Result<usize, GraphError> {
        if needed > cap as u64 {
            Err(GraphError::CapacityExceeded { needed, cap })
        } else {
            Ok(needed as usize)
        }
    }

    /// Johnson graph `J(m,k)`: vertices are the `k`-subsets of `{1, .., m}`
    /// in colex order; two subsets are adjacent when they meet in `k-1`
    /// elements.
    pub fn johnson(m: u32, k: u32) -> Result<Graph, GraphError> {
        Self::johnson_with_cap(m, k, DEFAULT_MAX_VERTICES)
    }

    pub fn johnson_with_cap(m: u32, k: u32, cap: usize) -> Result<Graph, GraphError> {
        if k > m {
            return Err(GraphError::InvalidParameters(format!(
                "johnson requires k <= m, got m={m} k={k}"
            )));
        }
        let n = Self::check_cap(binomial(m as u64, k as u64), cap)?;
        let mut labels = Vec::with_capacity(n);
        let mut it = ColexSubsets::new(m as usize, k as usize);
        while it.advance() {
            let elems: Vec<u32> = it.current().iter().map(|&e| e as u32 + 1).collect();
            labels.push(DomainLabel::Subset(SubsetLabel::new(elems).unwrap()));
        }
        let mut g = Graph::new(n, FamilyTag::Johnson { m, k }, labels);
        for u in 0..n {
            let subset = g.labels[u].as_subset().unwrap().clone();
            for &a in subset.elements() {
                for x in subset.complement(m) {
                    let w = subset.swap_element(a, x).unwrap();
                    let wid = johnson_vertex_id(&w);
                    if wid > u {
                        g.add_edge(u, wid);
                    }
                }
            }
        }
        Ok(g)
    }

    /// Hamming graph `H(d,q)`: vertices are `d`-tuples over `{0, .., q-1}`
    /// ordered by little-endian base-`q` value; adjacency is Hamming
    /// distance 1.
    pub fn hamming(d: u32, q: u32) -> Result<Graph, GraphError> {
        Self::hamming_with_cap(d, q, DEFAULT_MAX_VERTICES)
    }

    pub fn hamming_with_cap(d: u32, q: u32, cap: usize) -> Result<Graph, GraphError> {
        let needed = (q as u64)
            .checked_pow(d)
            .ok_or_else(|| GraphError::InvalidParameters(format!("q^d overflows: q={q} d={d}")))?;
        let n = Self::check_cap(needed, cap)?;
        let mut labels = Vec::with_capacity(n);
        for i in 0..n {
            labels.push(DomainLabel::Tuple(tuple_unrank(i as u64, d, q)));
        }
        let mut g = Graph::new(n, FamilyTag::Hamming { d, q }, labels);
        let mut stride = 1u64;
        for coord in 0..d as usize {
            for u in 0..n {
                let t = g.labels[u].as_tuple().unwrap();
                let cur = t.entries()[coord];
                for val in cur + 1..q {
                    let w = u as u64 + (val - cur) as u64 * stride;
                    g.add_edge(u, w as usize);
                }
            }
            stride *= q as u64;
        }
        Ok(g)
    }

    /// Rook's graph `R(rows, cols)` on the grid cells `(r, c)`, adjacent when
    /// they share a row or a column. Vertex id is `r * cols + c`.
    pub fn rook(rows: u32, cols: u32) -> Result<Graph, GraphError> {
        Self::rook_with_cap(rows, cols, DEFAULT_MAX_VERTICES)
    }

    pub fn rook_with_cap(rows: u32, cols: u32, cap: usize) -> Result<Graph, GraphError> {
        if rows == 0 || cols == 0 {
            return Err(GraphError::InvalidParameters(format!(
                "rook requires both sides >= 1, got {rows}x{cols}"
            )));
        }
        let n = Self::check_cap(rows as u64 * cols as u64, cap)?;
        let labels = (0..n)
            .map(|i| DomainLabel::Pair {
                row: i as u32 / cols,
                col: i as u32 % cols,
            })
            .collect();
        let mut g = Graph::new(n, FamilyTag::Rook { rows, cols }, labels);
        for u in 0..n {
            let (r, c) = (u as u32 / cols, u as u32 % cols);
            for c2 in c + 1..cols {
                g.add_edge(u, (r * cols + c2) as usize);
            }
            for r2 in r + 1..rows {
                g.add_edge(u, (r2 * cols + c) as usize);
            }
        }
        Ok(g)
    }

    /// Complete graph `K_n`.
    pub fn complete(n: u32) -> Result<Graph, GraphError> {
        Self::complete_with_cap(n, DEFAULT_MAX_VERTICES)
    }

    pub fn complete_with_cap(n: u32, cap: usize) -> Result<Graph, GraphError> {
        let n = Self::check_cap(n as u64, cap)?;
        let labels = (0..n).map(|i| DomainLabel::Index(i as u64)).collect();
        let mut g = Graph::new(n, FamilyTag::Complete { n: n as u32 }, labels);
        for u in 0..n {
            for v in u + 1..n {
                g.add_edge(u, v);
            }
        }
        Ok(g)
    }

    /// 1-subdivision of `K_n`: the `n` original vertices (ids `0..n`,
    /// pairwise nonadjacent) plus one degree-2 vertex per original edge.
    /// The subdivision vertex of `{i,j}` has id `n + colex_rank({i,j})` and
    /// carries the `Pair { row: i, col: j }` label (`i < j`).
    pub fn subdivided_complete(n: u32) -> Result<Graph, GraphError> {
        Self::subdivided_complete_with_cap(n, DEFAULT_MAX_VERTICES)
    }

    pub fn subdivided_complete_with_cap(n: u32, cap: usize) -> Result<Graph, GraphError> {
        let pairs = binomial(n as u64, 2);
        let total = Self::check_cap(n as u64 + pairs, cap)?;
        let mut labels: Vec<DomainLabel> =
            (0..n as u64).map(DomainLabel::Index).collect();
        for j in 1..n as usize {
            for i in 0..j {
                labels.push(DomainLabel::Pair {
                    row: i as u32,
                    col: j as u32,
                });
            }
        }
        // Colex order over pairs {i, j} is (j, then i), matching the loop
        // above, so the label at n + rank is the pair with that rank.
        let mut g = Graph::new(total, FamilyTag::SubdividedComplete { n }, labels);
        for j in 1..n as usize {
            for i in 0..j {
                let mid = n as usize + subset_rank_colex(&[i, j]) as usize;
                g.add_edge(i, mid);
                g.add_edge(j, mid);
            }
        }
        Ok(g)
    }

    pub fn num_vertices(&self) -> usize {
        self.rows.len()
    }

    pub fn family(&self) -> FamilyTag {
        self.family
    }

    pub fn neighbors(&self, v: VertexId) -> &VertexSet {
        &self.rows[v]
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.rows[v].len()
    }

    pub fn has_edge(&self, u: VertexId, v: VertexId) -> bool {
        self.rows[u].contains(v)
    }

    pub fn edge_count(&self) -> usize {
        self.rows.iter().map(|r| r.len()).sum::<usize>() / 2
    }

    pub fn label(&self, v: VertexId) -> &DomainLabel {
        &self.labels[v]
    }

    pub fn labels(&self) -> &[DomainLabel] {
        &self.labels
    }

    /// Finds the vertex carrying `label`, if any.
    pub fn vertex_with_label(&self, label: &DomainLabel) -> Option<VertexId> {
        self.labels.iter().position(|l| l == label)
    }

    fn check_vertex(&self, v: VertexId) -> Result<(), GraphError> {
        if v < self.num_vertices() {
            Ok(())
        } else {
            Err(GraphError::VertexOutOfRange {
                vertex: v,
                num_vertices: self.num_vertices(),
            })
        }
    }

    /// Subgraph induced by `keep`, relabelled to `0..keep.len()` in ascending
    /// order of the old ids. Domain labels ride along; the family tag becomes
    /// `Derived`.
    pub fn induced_subgraph(&self, keep: &VertexSet) -> Result<Graph, GraphError> {
        if let Some(v) = keep.iter().find(|&v| v >= self.num_vertices()) {
            return Err(GraphError::VertexOutOfRange {
                vertex: v,
                num_vertices: self.num_vertices(),
            });
        }
        let old_ids = keep.to_vec();
        let labels = old_ids.iter().map(|&v| self.labels[v].clone()).collect();
        let mut g = Graph::new(old_ids.len(), FamilyTag::Derived, labels);
        for (new_u, &old_u) in old_ids.iter().enumerate() {
            for (new_v, &old_v) in old_ids.iter().enumerate().skip(new_u + 1) {
                if self.has_edge(old_u, old_v) {
                    g.add_edge(new_u, new_v);
                }
            }
        }
        Ok(g)
    }

    /// Equivalent to inducing on all vertices except `v`.
    pub fn delete_vertex(&self, v: VertexId) -> Result<Graph, GraphError> {
        self.check_vertex(v)?;
        let mut keep = VertexSet::full(self.num_vertices());
        keep.remove(v);
        self.induced_subgraph(&keep)
    }

    /// Graph-metric distance; `None` when `u` and `v` are disconnected.
    pub fn bfs_distance(&self, u: VertexId, v: VertexId) -> Result<Option<u32>, GraphError> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v {
            return Ok(Some(0));
        }
        let n = self.num_vertices();
        let mut visited = VertexSet::empty(n);
        visited.insert(u);
        let mut frontier = visited.clone();
        let mut dist = 0u32;
        while !frontier.is_empty() {
            dist += 1;
            let mut next = VertexSet::empty(n);
            for w in frontier.iter() {
                next.union_with(&self.rows[w]);
            }
            let next = next.difference(&visited);
            if next.contains(v) {
                return Ok(Some(dist));
            }
            visited.union_with(&next);
            frontier = next;
        }
        Ok(None)
    }

    /// One line per vertex: `u: v1 v2 ...` with ascending neighbour ids.
    pub fn to_adjacency_text(&self) -> String {
        let mut out = String::new();
        for u in 0..self.num_vertices() {
            out.push_str(&u.to_string());
            out.push(':');
            for v in self.rows[u].iter() {
                out.push(' ');
                out.push_str(&v.to_string());
            }
            out.push('\n');
        }
        out
    }

    /// JSON document with family, parameters, labels, and adjacency.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "schema_version": 1,
            "family": self.family.family_name(),
            "params": self.family.params(),
            "num_vertices": self.num_vertices(),
            "labels": self.labels.iter().map(|l| l.to_json()).collect::<Vec<_>>(),
            "adjacency": (0..self.num_vertices())
                .map(|u| self.rows[u].to_vec())
                .collect::<Vec<_>>(),
        })
    }

    /// Asserts simple-graph invariants; used by tests.
    pub fn is_simple(&self) -> bool {
        let n = self.num_vertices();
        for u in 0..n {
            if self.rows[u].contains(u) {
                return false;
            }
            for v in self.rows[u].iter() {
                if !self.rows[v].contains(u) {
                    return false;
                }
            }
        }
        true
    }
}

/// The vertex id a subset label gets in any Johnson graph: its colex rank.
pub fn johnson_vertex_id(label: &SubsetLabel) -> VertexId {
    let ids: Vec<usize> = label.elements().iter().map(|&e| e as usize - 1).collect();
    subset_rank_colex(&ids) as VertexId
}

/// Colex rank of a `k`-subset of `{1, .., m}`, validating the range.
pub fn rank_subset(label: &SubsetLabel, m: u32) -> Result<VertexId, LabelError> {
    if let Some(&e) = label.elements().iter().find(|&&e| e > m) {
        return Err(LabelError::ElementOutOfRange { element: e, max: m });
    }
    Ok(johnson_vertex_id(label))
}

/// Inverse of [`rank_subset`] for the `k`-subsets of `{1, .., m}`.
pub fn unrank_subset(id: VertexId, m: u32, k: u32) -> Result<SubsetLabel, LabelError> {
    if (id as u64) >= binomial(m as u64, k as u64) {
        return Err(LabelError::ElementOutOfRange {
            element: id as u32,
            max: m,
        });
    }
    let elems = subset_unrank_colex(id as u64, k as usize)
        .into_iter()
        .map(|e| e as u32 + 1)
        .collect();
    SubsetLabel::new(elems)
}

/// Little-endian base-`q` value of a tuple.
pub fn rank_tuple(label: &TupleLabel, q: u32) -> Result<VertexId, LabelError> {
    label.check_alphabet(q)?;
    let mut acc = 0u64;
    let mut stride = 1u64;
    for &e in label.entries() {
        acc += e as u64 * stride;
        stride *= q as u64;
    }
    Ok(acc as VertexId)
}

/// Inverse of [`rank_tuple`]: the base-`q` digits of `id`, little-endian,
/// padded to arity `d`.
pub fn tuple_unrank(id: u64, d: u32, q: u32) -> TupleLabel {
    let mut digits = Vec::with_capacity(d as usize);
    let mut rest = id;
    for _ in 0..d {
        digits.push((rest % q as u64) as u32);
        rest /= q as u64;
    }
    TupleLabel::new(digits)
}

/// Alias of [`tuple_unrank`] with range validation.
pub fn unrank_tuple(id: VertexId, d: u32, q: u32) -> Result<TupleLabel, LabelError> {
    let total = (q as u64).pow(d);
    if (id as u64) >= total {
        return Err(LabelError::EntryOutOfRange {
            entry: id as u32,
            alphabet: q,
        });
    }
    Ok(tuple_unrank(id as u64, d, q))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn johnson_4_2_is_octahedron() {
        let g = Graph::johnson(4, 2).unwrap();
        assert_eq!(g.num_vertices(), 6);
        assert!((0..6).all(|v| g.degree(v) == 4));
        assert!(g.is_simple());
    }

    #[test]
    fn johnson_n_1_is_complete() {
        for n in 1..=6u32 {
            let j = Graph::johnson(n, 1).unwrap();
            let k = Graph::complete(n).unwrap();
            assert_eq!(j.num_vertices(), k.num_vertices());
            for u in 0..j.num_vertices() {
                assert_eq!(j.neighbors(u), k.neighbors(u));
            }
        }
    }

    #[test]
    fn johnson_7_2_edge_count() {
        let g = Graph::johnson(7, 2).unwrap();
        assert_eq!(g.num_vertices(), 21);
        assert_eq!(g.edge_count(), 105);
        assert!((0..21).all(|v| g.degree(v) == 10));
    }

    #[test]
    fn johnson_adjacency_matches_pair_scan() {
        // Independent oracle: adjacency iff the labels meet in k-1 elements.
        let g = Graph::johnson(6, 3).unwrap();
        for u in 0..g.num_vertices() {
            for v in 0..g.num_vertices() {
                let lu = g.label(u).as_subset().unwrap();
                let lv = g.label(v).as_subset().unwrap();
                let meet = lu.elements().iter().filter(|e| lv.contains(**e)).count();
                let expect = u != v && meet == 2;
                assert_eq!(g.has_edge(u, v), expect, "pair {u},{v}");
            }
        }
    }

    #[test]
    fn johnson_rejects_bad_params() {
        assert!(matches!(
            Graph::johnson(3, 5),
            Err(GraphError::InvalidParameters(_))
        ));
        assert!(matches!(
            Graph::johnson(40, 20),
            Err(GraphError::CapacityExceeded { .. })
        ));
    }

    #[test]
    fn hamming_3_2_is_cube() {
        let g = Graph::hamming(3, 2).unwrap();
        assert_eq!(g.num_vertices(), 8);
        assert!((0..8).all(|v| g.degree(v) == 3));
        assert!(g.is_simple());
    }

    #[test]
    fn hamming_3_3_degrees() {
        let g = Graph::hamming(3, 3).unwrap();
        assert_eq!(g.num_vertices(), 27);
        assert!((0..27).all(|v| g.degree(v) == 6));
    }

    #[test]
    fn hamming_adjacency_matches_coordinate_scan() {
        let g = Graph::hamming(3, 3).unwrap();
        for u in 0..g.num_vertices() {
            for v in 0..g.num_vertices() {
                let tu = g.label(u).as_tuple().unwrap();
                let tv = g.label(v).as_tuple().unwrap();
                let diff = tu.differing_coords(tv).unwrap().len();
                assert_eq!(g.has_edge(u, v), diff == 1);
            }
        }
    }

    #[test]
    fn hamming_2_n_equals_rook_n_n() {
        let h = Graph::hamming(2, 4).unwrap();
        let r = Graph::rook(4, 4).unwrap();
        assert_eq!(h.num_vertices(), r.num_vertices());
        // (t0, t1) -> cell (t0, t1): both orderings are row-major grids, so
        // the identity on ids after transposing the tuple works out; map
        // explicitly through labels to be safe.
        let map: Vec<usize> = (0..h.num_vertices())
            .map(|u| {
                let t = h.label(u).as_tuple().unwrap();
                r.vertex_with_label(&DomainLabel::Pair {
                    row: t.entries()[0],
                    col: t.entries()[1],
                })
                .unwrap()
            })
            .collect();
        for u in 0..h.num_vertices() {
            for v in 0..h.num_vertices() {
                assert_eq!(h.has_edge(u, v), r.has_edge(map[u], map[v]));
            }
        }
    }

    #[test]
    fn rook_1_n_is_complete() {
        let r = Graph::rook(1, 5).unwrap();
        let k = Graph::complete(5).unwrap();
        for u in 0..5 {
            assert_eq!(r.neighbors(u), k.neighbors(u));
        }
    }

    #[test]
    fn rook_3_3_edges() {
        let g = Graph::rook(3, 3).unwrap();
        assert_eq!(g.num_vertices(), 9);
        assert_eq!(g.edge_count(), 18);
        assert!((0..9).all(|v| g.degree(v) == 4));
    }

    #[test]
    fn complete_5_edges() {
        assert_eq!(Graph::complete(5).unwrap().edge_count(), 10);
    }

    #[test]
    fn subdivided_triangle_is_six_cycle() {
        let g = Graph::subdivided_complete(3).unwrap();
        assert_eq!(g.num_vertices(), 6);
        assert_eq!(g.edge_count(), 6);
        assert!((0..6).all(|v| g.degree(v) == 2));
        // Connected 2-regular on 6 vertices = C6.
        assert_eq!(g.bfs_distance(0, 1).unwrap(), Some(2));
    }

    #[test]
    fn subdivided_k4_counts() {
        let g = Graph::subdivided_complete(4).unwrap();
        assert_eq!(g.num_vertices(), 10);
        assert_eq!(g.edge_count(), 12);
        for u in 0..4 {
            for v in 0..4 {
                assert!(!g.has_edge(u, v));
            }
        }
        for mid in 4..10 {
            assert_eq!(g.degree(mid), 2);
        }
    }

    #[test]
    fn induced_subgraph_identity() {
        let g = Graph::johnson(5, 2).unwrap();
        let all = VertexSet::full(g.num_vertices());
        let h = g.induced_subgraph(&all).unwrap();
        for u in 0..g.num_vertices() {
            assert_eq!(g.neighbors(u), h.neighbors(u));
            assert_eq!(g.label(u), h.label(u));
        }
        assert_eq!(h.family(), FamilyTag::Derived);
    }

    #[test]
    fn induced_subgraph_rejects_out_of_range() {
        let g = Graph::complete(3).unwrap();
        let mut keep = VertexSet::empty(10);
        keep.insert(7);
        assert!(matches!(
            g.induced_subgraph(&keep),
            Err(GraphError::VertexOutOfRange { .. })
        ));
    }

    #[test]
    fn delete_vertex_from_triangle() {
        let g = Graph::complete(3).unwrap().delete_vertex(2).unwrap();
        assert_eq!(g.num_vertices(), 2);
        assert!(g.has_edge(0, 1));
    }

    #[test]
    fn delete_vertex_commutes_on_labels() {
        let g = Graph::johnson(5, 2).unwrap();
        let a = g.delete_vertex(2).unwrap().delete_vertex(4).unwrap();
        // Deleting id 5 first, then id 2, removes the same two original
        // vertices (after the first deletion the old id 5 becomes 4).
        let b = g.delete_vertex(5).unwrap().delete_vertex(2).unwrap();
        assert_eq!(a.labels(), b.labels());
        for u in 0..a.num_vertices() {
            assert_eq!(a.neighbors(u), b.neighbors(u));
        }
    }

    #[test]
    fn bfs_distance_basics() {
        let g = Graph::johnson(6, 3).unwrap();
        assert_eq!(g.bfs_distance(7, 7).unwrap(), Some(0));
        // Disconnected pair: two opposite corners of a 4-cycle, induced.
        let c4 = Graph::hamming(2, 2).unwrap();
        let diag = VertexSet::from_ids(4, [0usize, 3]);
        let h = c4.induced_subgraph(&diag).unwrap();
        assert_eq!(h.bfs_distance(0, 1).unwrap(), None);
        assert!(matches!(
            h.bfs_distance(0, 9),
            Err(GraphError::VertexOutOfRange { .. })
        ));
    }

    #[test]
    fn ranking_round_trips() {
        let s = SubsetLabel::new(vec![1, 2]).unwrap();
        assert_eq!(rank_subset(&s, 7).unwrap(), 0);
        for id in 0..binomial(7, 2) {
            let label = unrank_subset(id as usize, 7, 2).unwrap();
            assert_eq!(rank_subset(&label, 7).unwrap(), id as usize);
        }
        let t = TupleLabel::new(vec![0, 0, 0]);
        assert_eq!(rank_tuple(&t, 3).unwrap(), 0);
        for id in 0..27 {
            let label = unrank_tuple(id, 3, 3).unwrap();
            assert_eq!(rank_tuple(&label, 3).unwrap(), id);
        }
    }

    #[test]
    fn ranking_rejects_malformed() {
        assert!(SubsetLabel::new(vec![2, 2]).is_err());
        assert!(SubsetLabel::new(vec![3, 1]).is_err());
        assert!(SubsetLabel::new(vec![0]).is_err());
        let s = SubsetLabel::new(vec![1, 9]).unwrap();
        assert!(rank_subset(&s, 7).is_err());
        let t = TupleLabel::new(vec![0, 5]);
        assert!(rank_tuple(&t, 3).is_err());
    }

    #[test]
    fn simple_invariants_and_degrees_at_desk_scale() {
        // Every generator output with at most 300 vertices: symmetric,
        // irreflexive, and regular with the family's degree formula.
        let mut checked = 0usize;
        for m in 0..=12u32 {
            for k in 0..=m {
                if binomial(m as u64, k as u64) > 300 {
                    continue;
                }
                let g = Graph::johnson(m, k).unwrap();
                assert!(g.is_simple(), "J({m},{k})");
                let want = (k * (m - k)) as usize;
                assert!(
                    (0..g.num_vertices()).all(|v| g.degree(v) == want),
                    "J({m},{k}) degree"
                );
                checked += 1;
            }
        }
        for d in 0..=8u32 {
            for q in 1..=8u32 {
                if (q as u64).pow(d) > 300 {
                    continue;
                }
                let g = Graph::hamming(d, q).unwrap();
                assert!(g.is_simple(), "H({d},{q})");
                let want = (d * (q - 1)) as usize;
                assert!(
                    (0..g.num_vertices()).all(|v| g.degree(v) == want),
                    "H({d},{q}) degree"
                );
                checked += 1;
            }
        }
        for rows in 1..=8u32 {
            for cols in 1..=8u32 {
                let g = Graph::rook(rows, cols).unwrap();
                assert!(g.is_simple(), "R({rows},{cols})");
                let want = (rows - 1 + cols - 1) as usize;
                assert!(
                    (0..g.num_vertices()).all(|v| g.degree(v) == want),
                    "R({rows},{cols}) degree"
                );
                checked += 1;
            }
        }
        for n in 0..=12u32 {
            assert!(Graph::complete(n).unwrap().is_simple(), "K_{n}");
            assert!(
                Graph::subdivided_complete(n).unwrap().is_simple(),
                "S(K_{n})"
            );
            checked += 2;
        }
        assert!(checked > 100);
    }

    #[test]
    fn johnson_complement_isomorphism() {
        // J(m,k) and J(m,m-k) are isomorphic via label complementation.
        let g2 = Graph::johnson(6, 2).unwrap();
        let g4 = Graph::johnson(6, 4).unwrap();
        let map: Vec<usize> = (0..g2.num_vertices())
            .map(|u| {
                let s = g2.label(u).as_subset().unwrap();
                let comp = SubsetLabel::new(s.complement(6)).unwrap();
                johnson_vertex_id(&comp)
            })
            .collect();
        for u in 0..g2.num_vertices() {
            for v in 0..g2.num_vertices() {
                assert_eq!(g2.has_edge(u, v), g4.has_edge(map[u], map[v]));
            }
        }
    }

    #[test]
    fn johnson_subfamily_embeddings() {
        // Vertices of J(6,3) avoiding element 6 induce J(5,3); vertices
        // containing it induce J(5,2), via the obvious label maps.
        let g = Graph::johnson(6, 3).unwrap();
        let avoid = VertexSet::from_ids(
            g.num_vertices(),
            (0..g.num_vertices()).filter(|&v| !g.label(v).as_subset().unwrap().contains(6)),
        );
        let ind = g.induced_subgraph(&avoid).unwrap();
        let j53 = Graph::johnson(5, 3).unwrap();
        assert_eq!(ind.num_vertices(), j53.num_vertices());
        let map: Vec<usize> = (0..ind.num_vertices())
            .map(|u| johnson_vertex_id(ind.label(u).as_subset().unwrap()))
            .collect();
        for u in 0..ind.num_vertices() {
            for v in 0..ind.num_vertices() {
                assert_eq!(ind.has_edge(u, v), j53.has_edge(map[u], map[v]));
            }
        }

        let containing = VertexSet::from_ids(
            g.num_vertices(),
            (0..g.num_vertices()).filter(|&v| g.label(v).as_subset().unwrap().contains(6)),
        );
        let ind = g.induced_subgraph(&containing).unwrap();
        let j52 = Graph::johnson(5, 2).unwrap();
        assert_eq!(ind.num_vertices(), j52.num_vertices());
        let map: Vec<usize> = (0..ind.num_vertices())
            .map(|u| {
                let s = ind.label(u).as_subset().unwrap();
                let dropped: Vec<u32> =
                    s.elements().iter().copied().filter(|&e| e != 6).collect();
                johnson_vertex_id(&SubsetLabel::new(dropped).unwrap())
            })
            .collect();
        for u in 0..ind.num_vertices() {
            for v in 0..ind.num_vertices() {
                assert_eq!(ind.has_edge(u, v), j52.has_edge(map[u], map[v]));
            }
        }
    }

    #[test]
    fn adjacency_text_shape() {
        let g = Graph::complete(3).unwrap();
        assert_eq!(g.to_adjacency_text(), "0: 1 2\n1: 0 2\n2: 0 1\n");
    }

    #[test]
    fn graph_spec_parse() {
        assert_eq!(
            GraphSpec::parse("johnson", &[7, 2]).unwrap(),
            GraphSpec::Johnson { m: 7, k: 2 }
        );
        assert!(GraphSpec::parse("johnson", &[7]).is_err());
        assert!(GraphSpec::parse("petersen", &[1]).is_err());
    }
}
