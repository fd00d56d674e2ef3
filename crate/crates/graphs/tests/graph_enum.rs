use std::collections::{BTreeMap, BTreeSet};

use graphchi_core::exactnum::{BigInt, BigRational};
use graphchi_graphs::graph_enum::*;
use graphchi_graphs::Parity;
use proptest::prelude::*;

fn all_admissible_up_to(s_max: usize) -> Vec<MultiGraph> {
    (1..=s_max)
        .flat_map(|s| (1..=2 * s / 3).flat_map(move |v| enumerate_multigraphs(v, s, false, true)))
        .map(|f| f.graph())
        .collect()
}

fn permuted(g: &MultiGraph, p: &[usize]) -> MultiGraph {
    MultiGraph::new(g.vertex_count(), g.edges().iter().map(|&(a, b)| (p[a], p[b])))
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..n {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

#[test]
fn spec_examples() {
    assert!(enumerate_multigraphs(1, 1, false, true).is_empty());
    assert_eq!(enumerate_multigraphs(1, 2, true, true), vec![canonical_form(&named::figure_eight())]);
    let rank2: BTreeSet<_> = enumerate_multigraphs(2, 3, true, true).into_iter().collect();
    let expect: BTreeSet<_> = [named::theta(), named::dumbbell()].iter().map(canonical_form).collect();
    assert_eq!(rank2, expect);
    assert_eq!(automorphism_group(&named::complete(4)).order, 24);
    assert_eq!(automorphism_group(&named::figure_eight()).order, 8);
    assert_eq!(automorphism_group(&named::theta()).order, 12);
    assert!(!orientable(&named::theta(), Parity::Even));
    assert!(orientable(&named::complete(4), Parity::Even));
    assert!(!orientable(&named::dumbbell(), Parity::Odd));
}

#[test]
fn canonical_form_agrees_with_brute_force_isomorphism() {
    // every labelled multigraph on 3 vertices with 3 edges
    let pairs: Vec<(usize, usize)> = (0..3).flat_map(|a| (a..3).map(move |b| (a, b))).collect();
    let mut graphs = Vec::new();
    for x in 0..pairs.len() {
        for y in x..pairs.len() {
            for z in y..pairs.len() {
                graphs.push(MultiGraph::new(3, [pairs[x], pairs[y], pairs[z]]));
            }
        }
    }
    let perms = permutations(3);
    for a in &graphs {
        for b in &graphs {
            let iso = perms.iter().any(|p| permuted(a, p).adjacency() == b.adjacency());
            assert_eq!(iso, canonical_form(a) == canonical_form(b), "{a} vs {b}");
        }
    }
}

#[test]
fn group_elements_are_automorphisms_and_match_order() {
    for g in all_admissible_up_to(5) {
        let group = automorphism_group(&g);
        let elements = group.elements(&g, 100_000).expect("small group");
        assert_eq!(BigInt::from(elements.len()), group.order, "{g}");
        for (h, v) in &elements {
            assert!(is_automorphism(&g, h), "{g}");
            if g.edge_count() > 0 {
                assert_eq!(&induced_vertex_permutation(&g, h), v, "{g}");
            }
        }
    }
}

#[test]
fn orders_match_half_edge_brute_force() {
    for g in all_admissible_up_to(4) {
        let count = permutations(g.half_edge_count()).iter().filter(|p| is_automorphism(&g, p)).count();
        assert_eq!(automorphism_group(&g).order, count, "{g}");
    }
}

#[test]
fn orientability_excludes_parallel_edges_and_loops() {
    for g in (2..=5).flat_map(connected_admissible) {
        if orientable(&g, Parity::Even) {
            assert!(!g.has_parallel_edges(), "{g}");
        }
        if orientable(&g, Parity::Odd) {
            assert!(!g.has_loops(), "{g}");
        }
    }
}

#[test]
fn sign_identity_on_half_edges_and_homology() {
    for g in all_admissible_up_to(5) {
        let basis = CycleBasis::new(&g);
        let group = automorphism_group(&g);
        for (h, v) in group.elements(&g, 100_000).unwrap() {
            let lhs = perm_sign(&h) * perm_sign(&v);
            let rhs = perm_sign(&induced_edge_permutation(&h)) * h0_determinant(&g, &v) * h1_determinant(&g, &basis, &h);
            assert_eq!(lhs, rhs, "{g}");
        }
    }
}

fn double_factorial_odd(s: usize) -> BigInt {
    (1..=s).fold(BigInt::from(1), |acc, k| acc * (2 * k as u32 - 1))
}

fn factorial(n: usize) -> BigInt {
    BigInt::from(BigInt::factorial(n as u32))
}

#[test]
fn orbit_counting_per_degree_sequence() {
    // Σ_Γ 1/|Aut Γ| = (2s−1)!! / (Π d_i! · Π m_j!) for each degree sequence
    // (all degrees ≥ 1), since labelled half-edge structures form free orbits
    for s in 1..=4 {
        let mut sums: BTreeMap<Vec<usize>, BigRational> = BTreeMap::new();
        for v in 1..=2 * s {
            for f in enumerate_multigraphs(v, s, false, false) {
                let g = f.graph();
                let mut d = g.degrees();
                if d.contains(&0) {
                    continue;
                }
                d.sort_unstable_by(|a, b| b.cmp(a));
                let term = BigRational::from((BigInt::from(1), automorphism_group(&g).order));
                *sums.entry(d).or_default() += term;
            }
        }
        assert!(!sums.is_empty());
        for (d, sum) in sums {
            let mut denom = d.iter().fold(BigInt::from(1), |acc, &x| acc * factorial(x));
            let mut runs: BTreeMap<usize, usize> = BTreeMap::new();
            for &x in &d {
                *runs.entry(x).or_default() += 1;
            }
            for m in runs.values() {
                denom *= factorial(*m);
            }
            assert_eq!(sum, BigRational::from((double_factorial_odd(s), denom)), "s={s} d={d:?}");
        }
    }
}

#[test]
fn parity_rule_matches_direct_orientability() {
    let pieces: Vec<MultiGraph> = (2..=3).flat_map(connected_admissible).collect();
    for p in [Parity::Even, Parity::Odd] {
        for a in &pieces {
            for b in &pieces {
                let union = a.disjoint_union(b);
                assert_eq!(orientable(&union, p), union_orientable_by_rule(&[a.clone(), b.clone()], p), "{p} {union}");
            }
        }
    }
}

#[test]
fn partition_oracle_examples() {
    assert_eq!(partition_count_oracle(2, 1, Parity::Even).unwrap(), 0);
    assert_eq!(partition_count_oracle(3, 2, Parity::Odd).unwrap(), 1);
    assert!(matches!(partition_count_oracle(9, 1, Parity::Odd), Err(GraphError::ResourceCap { .. })));
}

#[test]
fn dump_format_roundtrip_over_enumeration() {
    for g in all_admissible_up_to(5) {
        assert_eq!(MultiGraph::parse_dump(&g.to_string()).unwrap(), g);
    }
}

fn arb_graph() -> impl Strategy<Value = MultiGraph> {
    (1usize..=5).prop_flat_map(|n| {
        prop::collection::vec((0..n, 0..n), 0..=7).prop_map(move |edges| MultiGraph::new(n, edges))
    })
}

fn arb_graph_and_perm() -> impl Strategy<Value = (MultiGraph, Vec<usize>)> {
    arb_graph().prop_flat_map(|g| {
        let n = g.vertex_count();
        (Just(g), Just((0..n).collect::<Vec<_>>()).prop_shuffle())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn canonical_form_is_relabelling_invariant((g, p) in arb_graph_and_perm()) {
        let h = permuted(&g, &p);
        prop_assert_eq!(canonical_form(&g), canonical_form(&h));
        prop_assert_eq!(automorphism_group(&g).order, automorphism_group(&h).order);
        for parity in [Parity::Even, Parity::Odd] {
            prop_assert_eq!(orientable(&g, parity), orientable(&h, parity));
        }
    }

    #[test]
    fn canonical_graph_reencodes_to_itself(g in arb_graph()) {
        let f = canonical_form(&g);
        prop_assert_eq!(canonical_form(&f.graph()), f);
    }

    #[test]
    fn generators_are_automorphisms(g in arb_graph()) {
        for p in automorphism_group(&g).generators {
            prop_assert!(is_automorphism(&g, &p));
        }
    }

    #[test]
    fn sign_identity_on_random_graphs(g in arb_graph()) {
        let basis = CycleBasis::new(&g);
        let group = automorphism_group(&g);
        if let Some(elements) = group.elements(&g, 5_000) {
            for (h, v) in elements {
                let lhs = perm_sign(&h) * perm_sign(&v);
                let rhs = perm_sign(&induced_edge_permutation(&h)) * h0_determinant(&g, &v) * h1_determinant(&g, &basis, &h);
                prop_assert_eq!(lhs, rhs);
            }
        }
    }
}
