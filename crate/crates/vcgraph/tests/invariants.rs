//! Structural invariants that cut across modules: the orbit audit behind the
//! sixteen-case classification, class-level shatter rows, and the closed
//! neighbourhood mode.

use std::collections::BTreeMap;

use vcgraph::combin::ColexSubsets;
use vcgraph::density::pi_profile;
use vcgraph::graph::{GraphSpec, SubsetLabel};
use vcgraph::johnson::classify_four_subset;
use vcgraph::search::vc_dimension_pruned;
use vcgraph::{Graph, NeighborhoodMode, PiMode, SearchBudget, SetSystem, VcDimension};

/// All permutations of `0..n` (small n).
fn permutations(n: usize) -> Vec<Vec<usize>> {
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

/// Two 4-subsets of N(v) get the same CaseId exactly when some permutation
/// of the underlying set fixing v (i.e. permuting v's elements among
/// themselves and the complement's elements among themselves) maps one onto
/// the other. Audited exhaustively on J(8,4).
#[test]
fn case_ids_are_exactly_the_orbits_on_j84() {
    let (m, k) = (8u32, 4u32);
    let g = Graph::johnson(m, k).unwrap();
    let centre = g.label(0).as_subset().unwrap().clone();
    assert_eq!(centre.elements(), &[1, 2, 3, 4]);
    let complement = centre.complement(m);
    let nbrs: Vec<SubsetLabel> = g
        .neighbors(0)
        .iter()
        .map(|u| g.label(u).as_subset().unwrap().clone())
        .collect();
    assert_eq!(nbrs.len(), 16);

    // Orbit representative: the lexicographically smallest image of the quad
    // under all |S_4 x S_4| = 576 label permutations fixing the centre.
    let v_perms = permutations(k as usize);
    let c_perms = permutations(complement.len());
    let orbit_rep = |quad: &[SubsetLabel]| -> Vec<Vec<u32>> {
        let mut best: Option<Vec<Vec<u32>>> = None;
        for vp in &v_perms {
            for cp in &c_perms {
                let map = |e: u32| -> u32 {
                    if let Some(pos) = centre.elements().iter().position(|&x| x == e) {
                        centre.elements()[vp[pos]]
                    } else {
                        let pos = complement.iter().position(|&x| x == e).unwrap();
                        complement[cp[pos]]
                    }
                };
                let mut image: Vec<Vec<u32>> = quad
                    .iter()
                    .map(|w| {
                        let mut elems: Vec<u32> = w.elements().iter().map(|&e| map(e)).collect();
                        elems.sort_unstable();
                        elems
                    })
                    .collect();
                image.sort();
                if best.as_ref().is_none_or(|b| &image < b) {
                    best = Some(image);
                }
            }
        }
        best.unwrap()
    };

    let mut orbit_case: BTreeMap<Vec<Vec<u32>>, vcgraph::johnson::CaseId> = BTreeMap::new();
    let mut case_orbits: BTreeMap<vcgraph::johnson::CaseId, Vec<Vec<Vec<u32>>>> = BTreeMap::new();
    let mut quads = ColexSubsets::new(nbrs.len(), 4);
    while quads.advance() {
        let quad: Vec<SubsetLabel> = quads
            .current()
            .iter()
            .map(|&p| nbrs[p].clone())
            .collect();
        let case = classify_four_subset(&centre, &quad).unwrap().case;
        let rep = orbit_rep(&quad);
        // Same orbit => same case.
        if let Some(prev) = orbit_case.insert(rep.clone(), case) {
            assert_eq!(prev, case, "one orbit classified two ways");
        }
        let reps = case_orbits.entry(case).or_default();
        if !reps.contains(&rep) {
            reps.push(rep);
        }
    }
    // Same case => same orbit: each CaseId owns exactly one orbit.
    assert_eq!(case_orbits.len(), 16, "all sixteen cases occur on J(8,4)");
    for (case, reps) in &case_orbits {
        assert_eq!(reps.len(), 1, "case {case} spans {} orbits", reps.len());
    }
}

#[test]
fn pi_profile_takes_class_maxima() {
    let specs = [
        GraphSpec::Johnson { m: 5, k: 2 },
        GraphSpec::Rook { rows: 3, cols: 3 },
    ];
    let profile = pi_profile(&specs, 3, &SearchBudget::default()).unwrap();
    assert_eq!(profile.tables.len(), 2);
    for row in &profile.class_rows {
        let per_graph: Vec<u64> = profile
            .tables
            .iter()
            .map(|t| t.rows.iter().find(|r| r.n == row.n).unwrap().pi)
            .collect();
        assert_eq!(row.pi, *per_graph.iter().max().unwrap());
        assert_eq!(row.mode, PiMode::Exact);
    }

    // When any contributing row is only a lower bound, the class row is too.
    let starved = SearchBudget {
        exhaustive_cap: 0,
        restarts: 10,
        seed: 3,
    };
    let profile = pi_profile(&specs, 2, &starved).unwrap();
    assert!(profile.class_rows.iter().all(|r| r.mode == PiMode::LowerBound));
}

#[test]
fn closed_neighborhood_systems() {
    // Closed K_3: three copies of the full universe; only the empty set is
    // shattered.
    let g = Graph::complete(3).unwrap();
    let ss = SetSystem::neighborhoods(&g, NeighborhoodMode::Closed);
    let (dim, cert) = vc_dimension_pruned(&ss);
    assert_eq!(dim, VcDimension::Finite(0));
    assert!(cert.unwrap().verify(&ss));

    // Pruned and generic searches agree on closed systems too.
    for spec in [
        GraphSpec::Hamming { d: 2, q: 2 },
        GraphSpec::Johnson { m: 5, k: 2 },
        GraphSpec::Rook { rows: 2, cols: 3 },
        GraphSpec::SubdividedComplete { n: 4 },
    ] {
        let g = spec.build().unwrap();
        let ss = SetSystem::neighborhoods(&g, NeighborhoodMode::Closed);
        assert_eq!(ss.vc_dimension().0, vc_dimension_pruned(&ss).0, "{spec}");
    }
}

#[test]
fn closed_mode_on_the_cli() {
    let out = std::process::Command::new(env!("CARGO_BIN_EXE_vcgraph"))
        .args(["vcdim", "--family", "complete", "--params", "3", "--closed"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("neighborhoods: closed"), "{text}");
    assert!(text.contains("vc_dimension: 0"), "{text}");
}
