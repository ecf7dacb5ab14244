//! Exhaustive and sampled searches over subset space.
//!
//! Every search here is deterministic regardless of worker count: the
//! candidate space is cut into fixed-size colex chunks, chunks are processed
//! in parallel, and results reduce in chunk order with ties broken toward the
//! lowest colex rank. Sampled searches derive one PRNG stream per restart
//! index from the recorded seed.
//!
//! The key pruning fact: a shattered set `A` must itself be a trace, i.e.
//! `A ⊆ M` for some member `M`. The pruned VC search therefore enumerates
//! candidates only inside single members (for the edge relation: inside
//! single neighbourhoods) and verifies each candidate against the whole
//! system.

use rayon::prelude::*;

use crate::combin::{binomial, subset_unrank_colex, ColexSubsets};
use crate::graph::{Graph, VertexId};
use crate::rng::SplitMix64;
use crate::set_system::{
    NeighborhoodMode, PiMode, PiRow, SetSystem, ShatterCertificate, TraceScratch, VcDimension,
};

/// Candidates per parallel chunk. Fixed so that chunk boundaries (and hence
/// reductions) do not depend on the number of workers.
const SCAN_CHUNK: u64 = 1 << 15;

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum SearchError {
    #[error("set size {n} exceeds the universe size {universe}")]
    SizeExceedsUniverse { n: u32, universe: usize },
    #[error("the empty graph has no neighbourhood system to search")]
    EmptyGraph,
}

/// Knobs for the shatter-function search.
///
/// Exhaustive scanning is used while `C(universe, n)` stays within
/// `exhaustive_cap`; beyond it the search falls back to `restarts` seeded
/// random starts with greedy single-swap improvement, reporting a lower
/// bound.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchBudget {
    pub exhaustive_cap: u64,
    pub restarts: u32,
    pub seed: u64,
}

impl Default for SearchBudget {
    fn default() -> Self {
        Self {
            exhaustive_cap: 50_000_000,
            restarts: 10_000,
            seed: 1,
        }
    }
}

impl SearchBudget {
    pub fn exact() -> Self {
        Self {
            exhaustive_cap: u64::MAX,
            ..Self::default()
        }
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }
}

/// First shattered `size`-subset in the deterministic enumeration order
/// (member index ascending, then colex within the member), or `None` after
/// an exhaustive scan of all subsets of all members.
pub fn find_shattered_of_size(ss: &SetSystem, size: usize) -> Option<ShatterCertificate> {
    if size == 0 {
        return ss.is_shattered(&[]).expect("empty base set is valid");
    }
    // A family of M members shatters nothing bigger than log2(M) vertices.
    if size >= 64 || (ss.members().len() as u64) < (1u64 << size) {
        return None;
    }
    for member in ss.members() {
        let pool = member.to_vec();
        if pool.len() < size {
            continue;
        }
        let total = binomial(pool.len() as u64, size as u64);
        let chunks = total.div_ceil(SCAN_CHUNK);
        let hit = (0..chunks).into_par_iter().find_map_first(|chunk| {
            let mut it = ColexSubsets::from_rank(pool.len(), size, chunk * SCAN_CHUNK);
            let mut ids = vec![0usize; size];
            let mut left = SCAN_CHUNK;
            while left > 0 && it.advance() {
                for (slot, &pos) in ids.iter_mut().zip(it.current()) {
                    *slot = pool[pos];
                }
                if let Some(cert) = ss.is_shattered_unchecked(&ids) {
                    return Some(cert);
                }
                left -= 1;
            }
            None
        });
        if hit.is_some() {
            return hit;
        }
    }
    None
}

/// VC-dimension of a system by the member-pruned ascending search. Agrees
/// with [`SetSystem::vc_dimension`] whenever every shattered set is a subset
/// of some member, which holds by definition (a shattered set is one of its
/// own traces).
pub fn vc_dimension_pruned(ss: &SetSystem) -> (VcDimension, Option<ShatterCertificate>) {
    if ss.members().is_empty() {
        return (VcDimension::NegInfinity, None);
    }
    let mut best = ss
        .is_shattered(&[])
        .expect("empty base set is valid")
        .expect("empty set is shattered by a nonempty family");
    let mut size = 1usize;
    while let Some(cert) = find_shattered_of_size(ss, size) {
        best = cert;
        size += 1;
    }
    (VcDimension::Finite(best.base_set().len() as u32), Some(best))
}

/// VC-dimension of the edge relation on `g`: the open-neighbourhood system,
/// searched with member pruning. Errors on the empty graph (whose
/// neighbourhood family is empty).
pub fn vc_dimension_edge(g: &Graph) -> Result<(u32, ShatterCertificate), SearchError> {
    if g.num_vertices() == 0 {
        return Err(SearchError::EmptyGraph);
    }
    let ss = SetSystem::neighborhoods(g, NeighborhoodMode::Open);
    let (dim, cert) = vc_dimension_pruned(&ss);
    let d = dim.as_finite().expect("nonempty family has finite VC");
    Ok((d, cert.expect("certificate accompanies finite VC")))
}

/// Budgeted variant of the generic (unpruned) VC search: gives up once a
/// level would examine more than `candidate_cap` subsets. The flag reports
/// whether the result is exact.
pub fn vc_dimension_generic_budgeted(
    ss: &SetSystem,
    candidate_cap: u64,
) -> (VcDimension, Option<ShatterCertificate>, bool) {
    if ss.members().is_empty() {
        return (VcDimension::NegInfinity, None, true);
    }
    let universe = ss.universe_size();
    let mut best = ss
        .is_shattered(&[])
        .expect("empty base set is valid")
        .expect("empty set is shattered");
    let mut n = 1usize;
    loop {
        if n > universe || (1u64 << n) > ss.members().len() as u64 {
            return (VcDimension::Finite(best.base_set().len() as u32), Some(best), true);
        }
        if binomial(universe as u64, n as u64) > candidate_cap {
            return (
                VcDimension::Finite(best.base_set().len() as u32),
                Some(best),
                false,
            );
        }
        let mut it = ColexSubsets::new(universe, n);
        let mut found = None;
        while it.advance() {
            if let Some(cert) = ss.is_shattered_unchecked(it.current()) {
                found = Some(cert);
                break;
            }
        }
        match found {
            Some(cert) => {
                best = cert;
                n += 1;
            }
            None => {
                return (
                    VcDimension::Finite(best.base_set().len() as u32),
                    Some(best),
                    true,
                )
            }
        }
    }
}

/// One shatter-function row `π(n)` for the system, exact or lower-bound
/// depending on the budget. The witness is a set attaining the reported
/// value; for exact rows it is the lowest-colex maximizer.
pub fn shatter_function(
    ss: &SetSystem,
    n: u32,
    budget: &SearchBudget,
) -> Result<PiRow, SearchError> {
    let universe = ss.universe_size();
    if n as usize > universe {
        return Err(SearchError::SizeExceedsUniverse { n, universe });
    }
    let total = binomial(universe as u64, n as u64);
    if total <= budget.exhaustive_cap {
        let (pi, rank) = exhaustive_max_trace(ss, n as usize, total);
        Ok(PiRow {
            n,
            pi,
            mode: PiMode::Exact,
            witness: subset_unrank_colex(rank, n as usize),
        })
    } else {
        let (pi, witness) = sampled_max_trace(ss, n as usize, budget);
        Ok(PiRow {
            n,
            pi,
            mode: PiMode::LowerBound,
            witness,
        })
    }
}

/// Maximum trace count over all `n`-subsets, with the lowest colex rank that
/// attains it.
fn exhaustive_max_trace(ss: &SetSystem, n: usize, total: u64) -> (u64, u64) {
    let universe = ss.universe_size();
    let chunks = total.div_ceil(SCAN_CHUNK).max(1);
    let per_chunk: Vec<(u64, u64)> = (0..chunks)
        .into_par_iter()
        .map(|chunk| {
            let start = chunk * SCAN_CHUNK;
            let mut it = ColexSubsets::from_rank(universe, n, start);
            let mut scratch = TraceScratch::new(n);
            let mut best = (0u64, start);
            let mut rank = start;
            let mut left = SCAN_CHUNK;
            while left > 0 && it.advance() {
                let count = ss.trace_count_unchecked(it.current(), &mut scratch);
                if count > best.0 {
                    best = (count, rank);
                }
                rank += 1;
                left -= 1;
            }
            best
        })
        .collect();
    per_chunk
        .into_iter()
        .reduce(|acc, item| if item.0 > acc.0 { item } else { acc })
        .unwrap_or((0, 0))
}

/// Seeded multistart hill-climb: best trace count over `restarts` random
/// `n`-subsets improved by single-element swaps. Deterministic for a fixed
/// seed and restart count.
fn sampled_max_trace(ss: &SetSystem, n: usize, budget: &SearchBudget) -> (u64, Vec<VertexId>) {
    const RESTART_CHUNK: u64 = 64;
    const MAX_SWEEPS: u32 = 16;
    let universe = ss.universe_size();
    let restarts = budget.restarts as u64;
    let ceiling = (1u64 << n).min(ss.members().len() as u64);
    let chunks = restarts.div_ceil(RESTART_CHUNK).max(1);
    let per_chunk: Vec<(u64, Vec<VertexId>)> = (0..chunks)
        .into_par_iter()
        .map(|chunk| {
            let mut scratch = TraceScratch::new(n);
            let mut best: (u64, Vec<VertexId>) = (0, Vec::new());
            let lo = chunk * RESTART_CHUNK;
            let hi = (lo + RESTART_CHUNK).min(restarts);
            for restart in lo..hi {
                let mut rng = SplitMix64::stream(budget.seed, restart);
                let mut current = rng.sample_distinct(universe, n);
                let mut score = ss.trace_count_unchecked(&current, &mut scratch);
                'sweeps: for _ in 0..MAX_SWEEPS {
                    let mut improved = false;
                    for slot in 0..n {
                        let mut kept = current[slot];
                        for candidate in 0..universe {
                            if current.contains(&candidate) {
                                continue;
                            }
                            current[slot] = candidate;
                            let trial = ss.trace_count_unchecked(&current, &mut scratch);
                            if trial > score {
                                score = trial;
                                kept = candidate;
                                improved = true;
                            } else {
                                current[slot] = kept;
                            }
                        }
                    }
                    if score == ceiling || !improved {
                        break 'sweeps;
                    }
                }
                if score > best.0 {
                    current.sort_unstable();
                    best = (score, current);
                }
                if best.0 == ceiling {
                    break;
                }
            }
            best
        })
        .collect();
    per_chunk
        .into_iter()
        .reduce(|acc, item| if item.0 > acc.0 { item } else { acc })
        .unwrap_or((0, Vec::new()))
}
