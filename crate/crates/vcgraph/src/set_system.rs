//! Finite set systems, traces, shattering, and VC-dimension.
//!
//! A set system pairs a universe `{0, .., universe-1}` with a family of
//! member sets. The systems of interest here are the open or closed
//! neighbourhood families of a graph, where member `i` is the neighbourhood
//! of vertex `i`, but explicit families work too.
//!
//! Duplicate members are kept in storage; traces are collections of
//! *distinct* intersections, so duplicates never inflate a trace count.

use serde::{Deserialize, Serialize};

use crate::bits::VertexSet;
use crate::combin::binomial;
use crate::graph::{FamilyTag, Graph, VertexId};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NeighborhoodMode {
    Open,
    Closed,
}

/// Where a system's members came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Origin {
    OpenNeighborhoods(FamilyTag),
    ClosedNeighborhoods(FamilyTag),
    Explicit,
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum SystemError {
    #[error("member {member} is not a subset of the universe of size {universe}")]
    MemberOutsideUniverse { member: usize, universe: usize },
    #[error("vertex {vertex} outside the universe of size {universe}")]
    VertexOutsideUniverse { vertex: VertexId, universe: usize },
    #[error("duplicate vertex {vertex} in base set")]
    DuplicateVertex { vertex: VertexId },
    #[error("base set has {len} vertices; shattering checks support at most 30")]
    BaseSetTooLarge { len: usize },
}

/// A universe together with a family of vertex sets.
#[derive(Clone, Debug)]
pub struct SetSystem {
    universe: usize,
    members: Vec<VertexSet>,
    origin: Origin,
}

impl SetSystem {
    /// The open or closed neighbourhood system of a graph: one member per
    /// vertex, member `i` being `N(i)` (open) or `N(i) ∪ {i}` (closed).
    pub fn neighborhoods(g: &Graph, mode: NeighborhoodMode) -> SetSystem {
        let members = (0..g.num_vertices())
            .map(|v| {
                let mut s = g.neighbors(v).clone();
                if mode == NeighborhoodMode::Closed {
                    s.insert(v);
                }
                s
            })
            .collect();
        SetSystem {
            universe: g.num_vertices(),
            members,
            origin: match mode {
                NeighborhoodMode::Open => Origin::OpenNeighborhoods(g.family()),
                NeighborhoodMode::Closed => Origin::ClosedNeighborhoods(g.family()),
            },
        }
    }

    pub fn explicit(universe: usize, members: Vec<VertexSet>) -> Result<SetSystem, SystemError> {
        for (i, m) in members.iter().enumerate() {
            if m.capacity() != universe || m.iter().any(|v| v >= universe) {
                return Err(SystemError::MemberOutsideUniverse {
                    member: i,
                    universe,
                });
            }
        }
        Ok(SetSystem {
            universe,
            members,
            origin: Origin::Explicit,
        })
    }

    pub fn universe_size(&self) -> usize {
        self.universe
    }

    pub fn members(&self) -> &[VertexSet] {
        &self.members
    }

    pub fn origin(&self) -> Origin {
        self.origin
    }

    fn check_base_set(&self, a: &[VertexId]) -> Result<(), SystemError> {
        if a.len() > 30 {
            return Err(SystemError::BaseSetTooLarge { len: a.len() });
        }
        for (i, &v) in a.iter().enumerate() {
            if v >= self.universe {
                return Err(SystemError::VertexOutsideUniverse {
                    vertex: v,
                    universe: self.universe,
                });
            }
            if a[i + 1..].contains(&v) {
                return Err(SystemError::DuplicateVertex { vertex: v });
            }
        }
        Ok(())
    }

    /// The mask of `member ∩ a` over the positions of `a`.
    #[inline]
    pub(crate) fn member_mask(member: &VertexSet, a: &[VertexId]) -> u32 {
        let words = member.words();
        let mut mask = 0u32;
        for (i, &v) in a.iter().enumerate() {
            mask |= (((words[v >> 6] >> (v & 63)) & 1) as u32) << i;
        }
        mask
    }

    /// Distinct intersections of the members with `a`, as vertex sets in a
    /// deterministic (mask-ascending) order.
    pub fn trace(&self, a: &[VertexId]) -> Result<Vec<VertexSet>, SystemError> {
        self.check_base_set(a)?;
        let mut seen = vec![false; 1usize << a.len()];
        for m in &self.members {
            seen[Self::member_mask(m, a) as usize] = true;
        }
        Ok(seen
            .iter()
            .enumerate()
            .filter(|(_, &s)| s)
            .map(|(mask, _)| {
                VertexSet::from_ids(
                    self.universe,
                    a.iter()
                        .enumerate()
                        .filter(|(i, _)| (mask >> i) & 1 == 1)
                        .map(|(_, &v)| v),
                )
            })
            .collect())
    }

    /// `|trace(a)|` without materializing the subsets.
    pub fn trace_count(&self, a: &[VertexId]) -> Result<u64, SystemError> {
        self.check_base_set(a)?;
        let mut scratch = TraceScratch::new(a.len());
        Ok(self.trace_count_unchecked(a, &mut scratch))
    }

    /// Hot path used by the exhaustive scans: no validation, caller-provided
    /// scratch. `a` must be valid per [`SetSystem::trace`].
    #[inline]
    pub(crate) fn trace_count_unchecked(&self, a: &[VertexId], scratch: &mut TraceScratch) -> u64 {
        scratch.reset(a.len());
        let mut count = 0u64;
        let ceiling = self.distinct_trace_ceiling(a.len());
        for m in &self.members {
            if scratch.mark(Self::member_mask(m, a)) {
                count += 1;
                if count == ceiling {
                    break;
                }
            }
        }
        count
    }

    /// `min(2^n, number of members)`: no trace can be larger.
    fn distinct_trace_ceiling(&self, n: usize) -> u64 {
        let pow = 1u64 << n;
        pow.min(self.members.len() as u64)
    }

    /// Checks whether `a` is shattered; on success returns the certificate
    /// mapping every subset of `a` to its lowest-id witness member.
    pub fn is_shattered(&self, a: &[VertexId]) -> Result<Option<ShatterCertificate>, SystemError> {
        self.check_base_set(a)?;
        Ok(self.is_shattered_unchecked(a))
    }

    pub(crate) fn is_shattered_unchecked(&self, a: &[VertexId]) -> Option<ShatterCertificate> {
        let need = 1usize << a.len();
        if (self.members.len() as u64) < need as u64 {
            return None;
        }
        let mut witnesses = vec![usize::MAX; need];
        let mut found = 0usize;
        for (idx, m) in self.members.iter().enumerate() {
            let mask = Self::member_mask(m, a) as usize;
            if witnesses[mask] == usize::MAX {
                witnesses[mask] = idx;
                found += 1;
                if found == need {
                    return Some(ShatterCertificate {
                        base_set: a.to_vec(),
                        witnesses,
                    });
                }
            }
        }
        None
    }

    /// Generic VC-dimension search: ascending set size over all subsets of
    /// the universe (colex order), stopping at the first size with no
    /// shattered set. Returns the dimension and a certificate for a largest
    /// shattered set. Prefer [`crate::search::vc_dimension_pruned`] for
    /// neighbourhood systems; this is its independent oracle.
    pub fn vc_dimension(&self) -> (VcDimension, Option<ShatterCertificate>) {
        if self.members.is_empty() {
            return (VcDimension::NegInfinity, None);
        }
        let mut best = self
            .is_shattered_unchecked(&[])
            .expect("empty set is shattered by any nonempty family");
        let mut n = 1usize;
        loop {
            if n > self.universe || (1u64 << n) > self.members.len() as u64 {
                break;
            }
            let mut it = crate::combin::ColexSubsets::new(self.universe, n);
            let mut found = None;
            while it.advance() {
                if let Some(cert) = self.is_shattered_unchecked(it.current()) {
                    found = Some(cert);
                    break;
                }
            }
            match found {
                Some(cert) => {
                    best = cert;
                    n += 1;
                }
                None => break,
            }
        }
        (VcDimension::Finite(best.base_set.len() as u32), Some(best))
    }
}

/// Reusable seen-mask buffer for trace counting.
pub(crate) struct TraceScratch {
    seen: Vec<u64>,
    live: usize,
}

impl TraceScratch {
    pub(crate) fn new(n: usize) -> Self {
        let words = (1usize << n).div_ceil(64);
        Self {
            seen: vec![0; words.max(1)],
            live: 0,
        }
    }

    #[inline]
    fn reset(&mut self, n: usize) {
        let words = (1usize << n).div_ceil(64).max(1);
        if words > self.seen.len() {
            self.seen.resize(words, 0);
        }
        for w in &mut self.seen[..words.max(self.live)] {
            *w = 0;
        }
        self.live = words;
    }

    #[inline]
    fn mark(&mut self, mask: u32) -> bool {
        let word = (mask >> 6) as usize;
        let bit = 1u64 << (mask & 63);
        let fresh = self.seen[word] & bit == 0;
        self.seen[word] |= bit;
        fresh
    }
}

/// VC-dimension with the empty-family case kept distinct from zero.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VcDimension {
    NegInfinity,
    Finite(u32),
}

impl VcDimension {
    pub fn as_finite(&self) -> Option<u32> {
        match self {
            VcDimension::NegInfinity => None,
            VcDimension::Finite(d) => Some(*d),
        }
    }
}

impl std::fmt::Display for VcDimension {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            VcDimension::NegInfinity => write!(f, "-inf"),
            VcDimension::Finite(d) => write!(f, "{d}"),
        }
    }
}

/// Proof object for "this base set is shattered": one witness member per
/// subset of the base set, indexed by subset mask over base-set positions.
/// For neighbourhood systems the witness index is the witnessing vertex id.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShatterCertificate {
    base_set: Vec<VertexId>,
    witnesses: Vec<VertexId>,
}

impl ShatterCertificate {
    pub fn new(base_set: Vec<VertexId>, witnesses: Vec<VertexId>) -> Self {
        assert_eq!(witnesses.len(), 1usize << base_set.len());
        Self {
            base_set,
            witnesses,
        }
    }

    pub fn base_set(&self) -> &[VertexId] {
        &self.base_set
    }

    /// Witness of the subset encoded by `mask` over base-set positions.
    pub fn witness(&self, mask: u32) -> VertexId {
        self.witnesses[mask as usize]
    }

    pub fn witnesses(&self) -> &[VertexId] {
        &self.witnesses
    }

    /// Re-checks every row against the system.
    pub fn verify(&self, ss: &SetSystem) -> bool {
        if self.witnesses.len() != 1usize << self.base_set.len() {
            return false;
        }
        self.witnesses.iter().enumerate().all(|(mask, &w)| {
            w < ss.members.len()
                && SetSystem::member_mask(&ss.members[w], &self.base_set) == mask as u32
        })
    }
}

/// How a shatter-function value was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PiMode {
    Exact,
    LowerBound,
}

impl std::fmt::Display for PiMode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            PiMode::Exact => write!(f, "exact"),
            PiMode::LowerBound => write!(f, "lower_bound"),
        }
    }
}

/// One row of a shatter-function table: the (exact or lower-bound) maximum
/// trace size over `n`-subsets, with a set achieving it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PiRow {
    pub n: u32,
    pub pi: u64,
    pub mode: PiMode,
    pub witness: Vec<VertexId>,
}

/// `sum_{i=0}^{d} C(n, i)`: the ceiling the shatter function of a system of
/// VC-dimension `d` can reach at size `n`; equals `2^n` once `d >= n`.
pub fn sauer_shelah_bound(d: u32, n: u32) -> u64 {
    (0..=d.min(n) as u64).map(|i| binomial(n as u64, i)).sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;

    fn open(g: &Graph) -> SetSystem {
        SetSystem::neighborhoods(g, NeighborhoodMode::Open)
    }

    #[test]
    fn open_system_of_k3() {
        let ss = open(&Graph::complete(3).unwrap());
        assert_eq!(ss.members().len(), 3);
        assert!(ss.members().iter().all(|m| m.len() == 2));
        for (v, m) in ss.members().iter().enumerate() {
            assert!(!m.contains(v));
        }
    }

    #[test]
    fn closed_system_of_k3_is_full_universe() {
        let g = Graph::complete(3).unwrap();
        let ss = SetSystem::neighborhoods(&g, NeighborhoodMode::Closed);
        assert!(ss.members().iter().all(|m| m.len() == 3));
    }

    #[test]
    fn open_system_of_j72_member_sizes() {
        let ss = open(&Graph::johnson(7, 2).unwrap());
        assert_eq!(ss.members().len(), 21);
        assert!(ss.members().iter().all(|m| m.len() == 10));
    }

    #[test]
    fn trace_of_empty_set() {
        let ss = open(&Graph::complete(4).unwrap());
        let tr = ss.trace(&[]).unwrap();
        assert_eq!(tr.len(), 1);
        assert!(tr[0].is_empty());
        assert_eq!(ss.trace_count(&[]).unwrap(), 1);
    }

    #[test]
    fn trace_of_triple_in_complete_graph() {
        // N(v) ∩ A = A \ {v} for v in A, and A for v outside, so exactly 4
        // distinct traces for any 3-subset when n >= 4.
        for n in 4..=7u32 {
            let ss = open(&Graph::complete(n).unwrap());
            assert_eq!(ss.trace_count(&[0, 1, 2]).unwrap(), 4);
            let tr = ss.trace(&[0, 1, 2]).unwrap();
            assert_eq!(tr.len(), 4);
        }
    }

    #[test]
    fn trace_rejects_bad_input() {
        let ss = open(&Graph::complete(4).unwrap());
        assert_eq!(
            ss.trace(&[0, 9]),
            Err(SystemError::VertexOutsideUniverse {
                vertex: 9,
                universe: 4
            })
        );
        assert_eq!(
            ss.trace(&[1, 1]),
            Err(SystemError::DuplicateVertex { vertex: 1 })
        );
        let big: Vec<usize> = (0..31).collect();
        let wide = open(&Graph::complete(40).unwrap());
        assert_eq!(
            wide.trace(&big),
            Err(SystemError::BaseSetTooLarge { len: 31 })
        );
    }

    #[test]
    fn certificate_witnesses_are_lowest_id() {
        let g = Graph::johnson(7, 2).unwrap();
        let ss = open(&g);
        // The four vertices {1,x} for x in 3..=6 form a shattered set.
        let a: Vec<usize> = [(1u32, 3u32), (1, 4), (1, 5), (1, 6)]
            .iter()
            .map(|&(x, y)| {
                crate::graph::johnson_vertex_id(
                    &crate::graph::SubsetLabel::new(vec![x, y]).unwrap(),
                )
            })
            .collect();
        let cert = ss.is_shattered(&a).unwrap().expect("shattered");
        assert!(cert.verify(&ss));
        for mask in 0..16u32 {
            let w = cert.witness(mask);
            // No smaller vertex id traces the same subset.
            for smaller in 0..w {
                assert_ne!(
                    SetSystem::member_mask(&ss.members()[smaller], &a),
                    mask,
                    "witness for mask {mask} not minimal"
                );
            }
        }
    }

    #[test]
    fn shattered_sets_are_downward_closed() {
        let g = Graph::johnson(6, 3).unwrap();
        let ss = open(&g);
        let (dim, cert) = ss.vc_dimension();
        assert_eq!(dim, VcDimension::Finite(4));
        let base = cert.unwrap().base_set().to_vec();
        // Every subset of a shattered set is shattered.
        for mask in 0..(1u32 << base.len()) {
            let sub: Vec<usize> = base
                .iter()
                .enumerate()
                .filter(|(i, _)| (mask >> i) & 1 == 1)
                .map(|(_, &v)| v)
                .collect();
            assert!(ss.is_shattered(&sub).unwrap().is_some());
        }
    }

    #[test]
    fn vc_dimension_of_empty_and_trivial_families() {
        let empty = SetSystem::explicit(3, vec![]).unwrap();
        assert_eq!(empty.vc_dimension().0, VcDimension::NegInfinity);

        let null_member = SetSystem::explicit(3, vec![VertexSet::empty(3)]).unwrap();
        let (dim, cert) = null_member.vc_dimension();
        assert_eq!(dim, VcDimension::Finite(0));
        assert!(cert.unwrap().verify(&null_member));
    }

    #[test]
    fn vc_dimension_of_complete_graph_system() {
        // Derived by brute force: traces of any 2-set never include the
        // empty set, so the open system of K_5 has VC-dimension 1.
        let ss = open(&Graph::complete(5).unwrap());
        assert_eq!(ss.vc_dimension().0, VcDimension::Finite(1));
    }

    #[test]
    fn duplicate_members_do_not_inflate_traces() {
        let m = VertexSet::from_ids(4, [0usize, 1]);
        let ss = SetSystem::explicit(4, vec![m.clone(), m.clone(), m]).unwrap();
        assert_eq!(ss.trace_count(&[0, 1]).unwrap(), 1);
    }

    #[test]
    fn sauer_shelah_values() {
        assert_eq!(sauer_shelah_bound(4, 5), 31);
        assert_eq!(sauer_shelah_bound(3, 5), 26);
        for n in 0..=8 {
            assert_eq!(sauer_shelah_bound(n, n), 1u64 << n);
            assert_eq!(sauer_shelah_bound(n + 3, n), 1u64 << n);
        }
        assert_eq!(sauer_shelah_bound(0, 9), 1);
    }
}
