mod common;

use std::collections::{BTreeSet, VecDeque};

use polar_core::betti::betti_table;
use polar_core::cellres::{supports_resolution, ComplexBuilder};
use polar_core::duality::alexander_dual;
use polar_core::graphs::{all_bipartitions, edge_ideal, split_vertex, split_vertex_unchecked, split_witness, valid_splits, SimpleGraph};
use polar_core::hilbert::is_polarization;
use polar_core::ideals::{box_polarization, squarefree_power, MonomialIdeal, VarRef};
use polar_core::partitions::{
    box_partition, d2_criterion, is_maximal, partition_to_ideal, satisfies_criterion, set_partitions, sigma,
    single_variable_partition, FamilySpace, PartitionFamily,
};
use polar_core::trees::{enumerate_spanning_trees, linear_relation_graph, tree_generators, tree_polarization};
use polar_core::trianglegrid::{
    all_choices, chain_sequences, monomials, polarized_generators, ChainSequence, Role, TriangleChoice, TriangleKind,
};

use common::mono;

#[test]
fn squarefree_powers_are_dual() {
    for n in 2..=6 {
        for d in 1..=n {
            let dual = alexander_dual(&squarefree_power(n, d)).unwrap();
            assert_eq!(dual, squarefree_power(n, n - d + 1), "n={n} d={d}");
        }
    }
}

#[test]
fn box_and_single_variable_families_are_maximal_polarizations() {
    for (n, d) in [(4, 2), (4, 3), (5, 2), (5, 3)] {
        let target = squarefree_power(n, d);
        let b = box_partition(n, d).unwrap();
        assert!(satisfies_criterion(&b).ok);
        assert!(is_polarization(&partition_to_ideal(&b), &target).ok);
        assert_eq!(is_maximal(&b), Ok(true), "box n={n} d={d}");
        for i in 1..=n {
            let s = single_variable_partition(n, d, i).unwrap();
            assert!(is_polarization(&partition_to_ideal(&s), &target).ok);
            assert_eq!(is_maximal(&s), Ok(true), "single n={n} d={d} i={i}");
        }
    }
}

#[test]
fn box_family_matches_box_polarization() {
    // the box polarization of I_d is the box polarization of m^d in n-d+1 variables
    for (n, d) in [(4, 2), (5, 2), (5, 3)] {
        let from_family = partition_to_ideal(&box_partition(n, d).unwrap());
        let direct = box_polarization(n - d + 1, d);
        assert_eq!(from_family.isomorphism_form(), direct.isomorphism_form(), "n={n} d={d}");
    }
}

#[test]
fn single_variable_family_is_standard_for_d2() {
    let s = partition_to_ideal(&single_variable_partition(4, 2, 1).unwrap());
    let standard = polar_core::ideals::standard_polarization(&polar_core::ideals::maximal_ideal_power(3, 2));
    assert_eq!(s.isomorphism_form(), standard.isomorphism_form());
}

#[test]
fn d2_criterion_agrees_with_general_criterion() {
    for n in 3..=4 {
        for p in FamilySpace::new(n, 2).unwrap().iter() {
            assert_eq!(d2_criterion(&p).unwrap(), satisfies_criterion(&p).ok);
        }
    }
}

#[test]
fn complete_graph_splits_match_two_part_families() {
    for n in 3..=6u32 {
        let g = SimpleGraph::complete(n);
        for i in 1..=n {
            let splits = valid_splits(&g, VarRef::plain(i)).unwrap();
            let two_part = set_partitions(&sigma(n, 2, i))
                .into_iter()
                .filter(|p| p.len() == 2)
                .filter(|p| {
                    let parts = (1..=n)
                        .map(|k| if k == i { p.clone() } else { vec![sigma(n, 2, k)] })
                        .collect();
                    d2_criterion(&PartitionFamily::new(n, 2, parts).unwrap()).unwrap()
                })
                .count();
            assert_eq!(splits.len(), two_part, "n={n} i={i}");
        }
    }
}

#[test]
fn split_verdicts_match_hilbert_oracle() {
    // K_5 minus two edges gives links that are not complete
    let vs: Vec<VarRef> = (1..=5).map(VarRef::plain).collect();
    let edges: Vec<(VarRef, VarRef)> = (0..5)
        .flat_map(|a| (a + 1..5).map(move |b| (a, b)))
        .filter(|&(a, b)| (a, b) != (1, 2) && (a, b) != (3, 4))
        .map(|(a, b)| (vs[a], vs[b]))
        .collect();
    let g = SimpleGraph::new(vs.clone(), edges).unwrap();
    let base = edge_ideal(&g);
    let mut accepted = 0;
    let mut rejected = 0;
    for &i in &vs {
        for s in all_bipartitions(&g, i).unwrap() {
            match split_vertex(&g, i, &s) {
                Ok(h) => {
                    accepted += 1;
                    assert!(is_polarization(&edge_ideal(&h), &base).ok);
                }
                Err(_) => {
                    rejected += 1;
                    let (a, b) = split_witness(&g, &s).expect("rejected split has a witness");
                    assert!(!g.adjacent(a, b));
                    let h = split_vertex_unchecked(&g, i, &s).unwrap();
                    assert!(!is_polarization(&edge_ideal(&h), &base).ok);
                }
            }
        }
    }
    assert!(accepted > 0 && rejected > 0);
}

#[test]
fn iterated_splits_of_k4_reach_every_valid_family() {
    let k4 = SimpleGraph::complete(4);
    let mut seen: BTreeSet<MonomialIdeal> = BTreeSet::new();
    let mut queue = VecDeque::from([k4]);
    while let Some(g) = queue.pop_front() {
        if !seen.insert(edge_ideal(&g).canonical_form()) {
            continue;
        }
        for &i in g.vertices() {
            for s in valid_splits(&g, i).unwrap() {
                queue.push_back(split_vertex(&g, i, &s).unwrap());
            }
        }
    }
    let families: BTreeSet<MonomialIdeal> = FamilySpace::new(4, 2)
        .unwrap()
        .iter()
        .filter(|p| satisfies_criterion(p).ok)
        .map(|p| partition_to_ideal(&p).canonical_form())
        .collect();
    assert_eq!(seen, families);
}

#[test]
fn tree_polarization_as_cellular_resolution() {
    for t in enumerate_spanning_trees(4).unwrap() {
        let gens = tree_generators(&t);
        let mut b = ComplexBuilder::new(gens.clone());
        for &(v, w) in t.edges() {
            b.add_edge(v as usize - 1, w as usize - 1);
        }
        let x = b.build().unwrap();
        let ideal = tree_polarization(&t);
        assert!(supports_resolution(&x, &ideal).unwrap().ok);
        assert!(x.is_minimal());
        let totals: Vec<usize> = betti_table(&ideal).unwrap().totals().iter().map(|&v| v as usize).collect();
        assert_eq!(x.face_counts(), totals);
        assert_eq!(totals, vec![4, 3]);
    }
}

#[test]
fn box_relation_graph_is_connected() {
    let b = partition_to_ideal(&box_partition(4, 2).unwrap());
    let g = linear_relation_graph(&b).unwrap();
    assert!(g.connected);
    let beta1 = betti_table(&b).unwrap().totals()[1] as usize;
    assert!(g.edges.len() <= beta1);
    assert!(linear_relation_graph(&squarefree_power(5, 4)).unwrap().edges.len() == 10);
}

fn x_part(m: &polar_core::ideals::SplitMonomial) -> polar_core::ideals::SplitMonomial {
    polar_core::ideals::SplitMonomial::from_terms(m.terms().iter().copied().filter(|(v, _)| v.base == 1))
}

#[test]
fn first_worked_chain_example() {
    // x-chain s(3) = ∅ ⊂ {2} ⊂ {1,2} ⊂ [3] gives x-parts x1x2x3, x1x3, x3, 1 on z M_3(x, y)
    let want = ChainSequence::from_sets(3, &[&[], &[2], &[1, 2], &[1, 2, 3]]).unwrap();
    let expected = [mono(&[(1, 1), (1, 2), (1, 3)]), mono(&[(1, 1), (1, 3)]), mono(&[(1, 3)]), mono(&[])];
    let mut hits = 0;
    for c in all_choices(4).unwrap() {
        if chain_sequences(&c, Role::X)[2] != want {
            continue;
        }
        hits += 1;
        let gens = polarized_generators(&c);
        for (j, exp) in expected.iter().enumerate() {
            let e = [3 - j as u32, j as u32, 1];
            let (_, m) = gens.iter().find(|(f, _)| *f == e).unwrap();
            assert_eq!(&x_part(m), exp, "choice {c}, j={j}");
        }
    }
    assert!(hits > 0);
}

#[test]
fn second_worked_chain_example() {
    let want = ChainSequence::from_sets(3, &[&[], &[3], &[2, 3], &[1, 2, 3]]).unwrap();
    let expected = [
        mono(&[(1, 1), (1, 2), (1, 3), (1, 4)]),
        mono(&[(1, 1), (1, 2), (1, 4)]),
        mono(&[(1, 1), (1, 4)]),
        mono(&[(1, 1)]),
    ];
    let mut hits = 0;
    for c in all_choices(4).unwrap() {
        let x_tri = |e: [u32; 3]| c.kind_at(e) == TriangleKind::X;
        if chain_sequences(&c, Role::X)[2] != want || !x_tri([2, 0, 0]) || !x_tri([1, 1, 0]) || x_tri([0, 2, 0]) {
            continue;
        }
        hits += 1;
        let gens = polarized_generators(&c);
        for (j, exp) in expected.iter().enumerate() {
            let e = [4 - j as u32, j as u32, 0];
            let (_, m) = gens.iter().find(|(f, _)| *f == e).unwrap();
            assert_eq!(&x_part(m), exp, "choice {c}, j={j}");
        }
    }
    assert!(hits > 0);
}

#[test]
fn depolarization_recovers_every_construction() {
    for c in all_choices(3).unwrap() {
        for (e, m) in polarized_generators(&c) {
            assert_eq!(m.depolarize(), polar_core::ideals::SplitMonomial::from_exponents(&e));
        }
    }
    for t in enumerate_spanning_trees(5).unwrap() {
        let dep = tree_polarization(&t).depolarize();
        assert!(dep.bijective);
        assert_eq!(dep.ideal.generators(), squarefree_power(5, 4).generators());
    }
    let c = TriangleChoice::uniform(5, TriangleKind::Y).unwrap();
    assert_eq!(polarized_generators(&c).len(), monomials(5).len());
}
