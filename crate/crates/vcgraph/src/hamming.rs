//! Closed-form predicates for Hamming graphs, cross-checkable against the
//! concrete graph.
//!
//! Tuples at Hamming distance 1 are adjacent; the neighbourhood of a vertex
//! splits into `d` disjoint cliques of size `q-1` (one per coordinate);
//! adjacent vertices share a `(q-2)`-clique; vertices at distance 2 share
//! exactly two non-adjacent vertices. In `H(d,2)` the vertices at distance 1
//! or 2 from a centre induce the 1-subdivision of `K_d`, which
//! [`two_neighborhood_subdivision_check`] verifies with an explicit
//! isomorphism.

use crate::density::{DensityWitness, PairWitness};
use crate::graph::{
    rank_tuple, DomainLabel, FamilyTag, Graph, GraphError, GraphSpec, LabelError, TupleLabel,
};
use crate::johnson::CrossCheckError;
use crate::report::CheckReport;

/// Number of coordinates where the tuples differ; the graph metric of
/// `H(d,q)`.
pub fn hamming_distance(u: &TupleLabel, v: &TupleLabel) -> Result<u32, LabelError> {
    Ok(u.differing_coords(v)?.len() as u32)
}

/// The common neighbourhood `N(u) ∩ N(v)` in `H(d,q)`, as sorted labels.
///
/// Distance 0 gives all `d(q-1)` neighbours; distance 1 the `q-2` other
/// values of the single differing coordinate; distance 2 exactly the two
/// half-swaps; beyond that nothing.
pub fn hamming_common_neighbors(
    u: &TupleLabel,
    v: &TupleLabel,
    q: u32,
) -> Result<Vec<TupleLabel>, LabelError> {
    u.check_alphabet(q)?;
    v.check_alphabet(q)?;
    let diff = u.differing_coords(v)?;
    let mut out = Vec::new();
    match diff.len() {
        0 => {
            for coord in 0..u.len() {
                let cur = u.entries()[coord];
                for val in 0..q {
                    if val != cur {
                        out.push(u.with_entry(coord, val));
                    }
                }
            }
        }
        1 => {
            let coord = diff[0];
            for val in 0..q {
                if val != u.entries()[coord] && val != v.entries()[coord] {
                    out.push(u.with_entry(coord, val));
                }
            }
        }
        2 => {
            let (i, j) = (diff[0], diff[1]);
            out.push(u.with_entry(j, v.entries()[j]));
            out.push(u.with_entry(i, v.entries()[i]));
        }
        _ => {}
    }
    out.sort_unstable();
    Ok(out)
}

/// `|N(u) ∩ N(v)|` in `H(d,q)` by distance: `d(q-1)`, `q-2`, `2`, `0`.
pub fn hamming_intersection_size(
    u: &TupleLabel,
    v: &TupleLabel,
    d: u32,
    q: u32,
) -> Result<u64, LabelError> {
    if u.len() != d as usize {
        return Err(LabelError::SizeMismatch {
            left: u.len(),
            right: d as usize,
        });
    }
    u.check_alphabet(q)?;
    v.check_alphabet(q)?;
    Ok(match hamming_distance(u, v)? {
        0 => d as u64 * (q as u64 - 1),
        1 => q as u64 - 2,
        2 => 2,
        _ => 0,
    })
}

/// Partition of `N(v)` into the `d` per-coordinate cliques of size `q-1`.
/// Group `i` holds the neighbours that disagree with `v` exactly in
/// coordinate `i`; there are no edges between different groups.
pub fn neighborhood_clique_decomposition(
    d: u32,
    q: u32,
    v: &TupleLabel,
) -> Result<Vec<Vec<TupleLabel>>, LabelError> {
    if v.len() != d as usize {
        return Err(LabelError::SizeMismatch {
            left: v.len(),
            right: d as usize,
        });
    }
    v.check_alphabet(q)?;
    let mut groups = Vec::with_capacity(d as usize);
    for coord in 0..d as usize {
        let cur = v.entries()[coord];
        groups.push(
            (0..q)
                .filter(|&val| val != cur)
                .map(|val| v.with_entry(coord, val))
                .collect(),
        );
    }
    Ok(groups)
}

/// Outcome of checking that the distance-1-or-2 ball around a vertex of
/// `H(d,2)` induces the 1-subdivision of `K_d`.
#[derive(Clone, Debug)]
pub struct SubdivisionCheck {
    pub holds: bool,
    /// `(vertex id in H(d,2), vertex id in the subdivided complete graph)`.
    /// Weight-1 tuples map onto the original vertices, weight-2 tuples onto
    /// the subdivision vertex of their two support coordinates.
    pub isomorphism: Vec<(usize, usize)>,
}

/// Builds `H(d,2)`, takes the vertices at distance exactly 1 or 2 from the
/// all-zeros vertex, and verifies the explicit isomorphism onto
/// `Graph::subdivided_complete(d)`.
pub fn two_neighborhood_subdivision_check(d: u32) -> Result<SubdivisionCheck, GraphError> {
    if d < 2 {
        return Err(GraphError::InvalidParameters(format!(
            "the subdivision check needs d >= 2, got {d}"
        )));
    }
    let h = Graph::hamming(d, 2)?;
    let target = Graph::subdivided_complete(d)?;
    // With q = 2 the little-endian tuple value is the vertex id, so the
    // weight of a vertex is the popcount of its id.
    let ball: Vec<usize> = (0..h.num_vertices())
        .filter(|&v| {
            let w = (v as u64).count_ones();
            w == 1 || w == 2
        })
        .collect();
    let mut pairs = Vec::with_capacity(ball.len());
    for &v in &ball {
        let bits = v as u64;
        let image = if bits.count_ones() == 1 {
            bits.trailing_zeros() as usize
        } else {
            let i = bits.trailing_zeros() as usize;
            let j = (63 - bits.leading_zeros()) as usize;
            d as usize + crate::combin::subset_rank_colex(&[i, j]) as usize
        };
        pairs.push((v, image));
    }
    let mut holds = pairs.len() == target.num_vertices();
    if holds {
        let mut seen = vec![false; target.num_vertices()];
        for &(_, img) in &pairs {
            if seen[img] {
                holds = false;
            }
            seen[img] = true;
        }
    }
    if holds {
        'outer: for (a, (va, ia)) in pairs.iter().enumerate() {
            for (vb, ib) in pairs.iter().skip(a + 1) {
                if h.has_edge(*va, *vb) != target.has_edge(*ia, *ib) {
                    holds = false;
                    break 'outer;
                }
            }
        }
    }
    Ok(SubdivisionCheck {
        holds,
        isomorphism: pairs,
    })
}

/// `4n^2 + n`: the quadratic ceiling the Hamming shatter function obeys for
/// `n >= 1`, derived from the per-vertex step bound of `4n + 1`.
pub fn hamming_pi_recursion_bound(n: u64) -> u64 {
    4 * n * n + n
}

/// Base set `{(c, c, 0, .., 0) : c < q}` in `H(d,q)` with, for each pair, the
/// witness tuple carrying the first element's value in the first coordinate
/// and the second element's value in the second.
pub fn hamming_density_witness(d: u32, q: u32) -> Result<DensityWitness, LabelError> {
    hamming_density_witness_at(d, q, 0, 1)
}

/// [`hamming_density_witness`] generalized to an arbitrary coordinate pair.
pub fn hamming_density_witness_at(
    d: u32,
    q: u32,
    coord_a: usize,
    coord_b: usize,
) -> Result<DensityWitness, LabelError> {
    if d < 2 || coord_a >= d as usize || coord_b >= d as usize || coord_a == coord_b {
        return Err(LabelError::SizeMismatch {
            left: coord_a.max(coord_b),
            right: d as usize,
        });
    }
    let zero = TupleLabel::new(vec![0; d as usize]);
    let base: Vec<TupleLabel> = (0..q)
        .map(|c| zero.with_entry(coord_a, c).with_entry(coord_b, c))
        .collect();
    let mut pairs = Vec::new();
    for i in 0..q as usize {
        for j in i + 1..q as usize {
            let w = zero
                .with_entry(coord_a, base[i].entries()[coord_a])
                .with_entry(coord_b, base[j].entries()[coord_b]);
            pairs.push(PairWitness {
                first: i,
                second: j,
                witness: DomainLabel::Tuple(w),
            });
        }
    }
    Ok(DensityWitness {
        graph: GraphSpec::Hamming { d, q },
        base_set: base.into_iter().map(DomainLabel::Tuple).collect(),
        pairs,
    })
}

/// Replays the closed forms against brute force on a concrete Hamming graph:
/// distance against BFS, common neighbourhoods and sizes against adjacency
/// rows, and the clique decomposition of every neighbourhood.
pub fn cross_check(g: &Graph) -> Result<CheckReport, CrossCheckError> {
    let FamilyTag::Hamming { d, q } = g.family() else {
        return Err(CrossCheckError::WrongFamily {
            expected: "Hamming",
            got: g.family().to_string(),
        });
    };
    let mut report = CheckReport::default();
    let n = g.num_vertices();
    let labels: Vec<&TupleLabel> = (0..n).map(|v| g.label(v).as_tuple().unwrap()).collect();

    let mut bad_dist = 0usize;
    for u in 0..n {
        for v in 0..n {
            let formula = hamming_distance(labels[u], labels[v]).unwrap();
            if g.bfs_distance(u, v).unwrap() != Some(formula) {
                bad_dist += 1;
            }
        }
    }
    report.record(
        "distance formula vs BFS",
        bad_dist == 0,
        format!("{bad_dist} mismatches over {} ordered pairs", n * n),
    );

    let mut bad_common = 0usize;
    let mut bad_size = 0usize;
    for u in 0..n {
        for v in 0..n {
            let expected: Vec<usize> = g.neighbors(u).intersection(g.neighbors(v)).to_vec();
            let predicted = hamming_common_neighbors(labels[u], labels[v], q)?;
            let predicted_ids: Vec<usize> = predicted
                .iter()
                .map(|t| rank_tuple(t, q).unwrap())
                .collect();
            let mut sorted = predicted_ids.clone();
            sorted.sort_unstable();
            if sorted != expected {
                bad_common += 1;
            }
            if hamming_intersection_size(labels[u], labels[v], d, q)? != expected.len() as u64 {
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

    let mut bad_cliques = 0usize;
    for (v, label) in labels.iter().enumerate() {
        let groups = neighborhood_clique_decomposition(d, q, label)?;
        let mut covered: Vec<usize> = Vec::new();
        for group in &groups {
            if group.len() != q.saturating_sub(1) as usize {
                bad_cliques += 1;
            }
            let ids: Vec<usize> = group.iter().map(|t| rank_tuple(t, q).unwrap()).collect();
            for (a, &ua) in ids.iter().enumerate() {
                for &ub in &ids[a + 1..] {
                    if !g.has_edge(ua, ub) {
                        bad_cliques += 1;
                    }
                }
            }
            for &u in &ids {
                if covered.contains(&u) {
                    bad_cliques += 1;
                }
            }
            for &prev in &covered {
                for &u in &ids {
                    if g.has_edge(prev, u) {
                        bad_cliques += 1;
                    }
                }
            }
            covered.extend(ids);
        }
        covered.sort_unstable();
        if covered != g.neighbors(v).to_vec() {
            bad_cliques += 1;
        }
    }
    report.record(
        "neighbourhood clique decomposition",
        bad_cliques == 0,
        format!("{bad_cliques} violations across all {n} neighbourhoods"),
    );
    Ok(report)
}
