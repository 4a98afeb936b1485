use nodequery::bounds::{
    bounded_degree_bound, certify, certify_all, chromatic_independence_bound, connectivity_bound,
    erdos_rado_sunflower, erdos_rado_threshold, find_sunflower, fvs_density_bound,
    general_hereditary_bound, local_property_bound, mon_trans_indicator, planar_density_bound,
    sunflower_forbidden_bound, triangle_freeness_bound, verify_bound, Argument, Verdict,
};
use nodequery::graph::{all_graphs, standard_graph, subsets_of_size};
use nodequery::property::{and_bounded_degree, localize, BooleanFunction, WitnessFamilies};
use nodequery::solver::exact_cost;
use nodequery::{Error, Graph, PropertySpec, VertexSet};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn named(name: &str, params: &[usize]) -> Graph {
    standard_graph(name, params).unwrap()
}

fn check(b: &nodequery::Bound, p: &PropertySpec, g: &Graph) {
    let v = verify_bound(b, p, g).unwrap();
    assert_eq!(v.verdict, Verdict::Pass, "{} on {g:?}: {:?}", b.certifier, v.reason);
}

#[test]
fn sunflower_forbidden_examples() {
    let e = PropertySpec::emptiness();
    let m4 = named("matching", &[4]);
    let b = sunflower_forbidden_bound(&e, &m4).unwrap();
    assert_eq!(b.value, 4);
    assert_eq!(b.certificate.input, VertexSet::EMPTY);
    check(&b, &e, &m4);

    let t = PropertySpec::triangle_free();
    let f3 = named("friendship", &[3]);
    let b = sunflower_forbidden_bound(&t, &f3).unwrap();
    assert_eq!(b.value, 3);
    assert_eq!(b.certificate.input, VertexSet::singleton(0));
    check(&b, &t, &f3);

    let k3 = named("complete", &[3]);
    let b = sunflower_forbidden_bound(&e, &k3).unwrap();
    assert_eq!(b.value, 2);
    assert_eq!(exact_cost(&e, &k3).unwrap().cost, 3);
    check(&b, &e, &k3);
}

#[test]
fn sunflower_on_disjoint_copies_counts_them() {
    let k4 = named("complete", &[4]);
    for copies in 1..=3 {
        let mut g = Graph::empty(0).unwrap();
        for _ in 0..copies {
            g = g.disjoint_union(&named("complete", &[3])).unwrap();
        }
        let b = sunflower_forbidden_bound(&PropertySpec::triangle_free(), &g).unwrap();
        assert_eq!(b.value, copies);
        let p = PropertySpec::forbidden("K4-free", vec![k4.clone()]).unwrap();
        let mut h = Graph::empty(0).unwrap();
        for _ in 0..copies {
            h = h.disjoint_union(&k4).unwrap();
        }
        assert_eq!(sunflower_forbidden_bound(&p, &h).unwrap().value, copies);
    }
}

#[test]
fn sunflower_requires_relevance() {
    let g = Graph::from_edges(3, &[(0, 1)]).unwrap();
    assert!(matches!(
        sunflower_forbidden_bound(&PropertySpec::emptiness(), &g),
        Err(Error::Precondition(_))
    ));
}

#[test]
fn general_hereditary_examples() {
    let t = PropertySpec::triangle_free();
    let k4 = named("complete", &[4]);
    let b = general_hereditary_bound(&t, &k4).unwrap();
    assert_eq!(b.value, 3);
    assert_eq!(exact_cost(&t, &k4).unwrap().cost, 4);
    check(&b, &t, &k4);

    let e = PropertySpec::emptiness();
    let m4 = named("matching", &[4]);
    let b = general_hereditary_bound(&e, &m4).unwrap();
    assert_eq!(b.value, 4);
    assert!(matches!(b.certificate.argument, Argument::Sunflower { .. }));
    check(&b, &e, &m4);

    let k2 = named("complete", &[2]);
    let b = general_hereditary_bound(&e, &k2).unwrap();
    assert_eq!(b.value, 2);
    assert_eq!(exact_cost(&e, &k2).unwrap().cost, 2);
}

#[test]
fn witness_family_sizes_cover_the_graph() {
    // every vertex lies in a witness, so the witnesses number at least n / k
    for n in 2..=6 {
        for g in all_graphs(n).unwrap() {
            for p in [PropertySpec::emptiness(), PropertySpec::triangle_free(), PropertySpec::acyclic()] {
                let f = BooleanFunction::new(&p, &g).unwrap();
                if !f.is_graph_relevant() {
                    continue;
                }
                let w = WitnessFamilies::from_function(&f, n);
                let k = w.largest_size().unwrap();
                assert!(w.total() * k >= n, "{p} on {g:?}");
            }
        }
    }
}

#[test]
fn fvs_density_examples() {
    let a = PropertySpec::acyclic();
    let petersen = named("petersen", &[]);
    let b = fvs_density_bound(&petersen).unwrap();
    assert_eq!(b.value, 2);
    match &b.certificate.argument {
        Argument::FeedbackVertexSet { fvs, .. } => assert_eq!(fvs.len(), 3),
        other => panic!("unexpected argument {other:?}"),
    }
    check(&b, &a, &petersen);
    assert_eq!(fvs_density_bound(&named("path", &[6])).unwrap().value, 0);
    let k5 = named("complete", &[5]);
    let b = fvs_density_bound(&k5).unwrap();
    assert_eq!(b.value, 2);
    check(&b, &a, &k5);
}

#[test]
fn planar_density_examples() {
    let p = PropertySpec::planar();
    let k6 = named("complete", &[6]);
    let b = planar_density_bound(&k6).unwrap();
    assert_eq!(b.value, 1);
    check(&b, &p, &k6);
    assert_eq!(planar_density_bound(&named("complete", &[7])).unwrap().value, 1);
    assert_eq!(planar_density_bound(&named("wheel", &[6])).unwrap().value, 0);
    assert!(planar_density_bound(&named("complete", &[2])).is_err());
}

#[test]
fn chromatic_independence_examples() {
    let e = PropertySpec::emptiness();
    for k in 1..=4 {
        let g = named("matching", &[k]);
        let b = chromatic_independence_bound(&g).unwrap();
        assert_eq!(b.value, k);
        assert_eq!(exact_cost(&e, &g).unwrap().cost, 2 * k);
        check(&b, &e, &g);
    }
    assert_eq!(chromatic_independence_bound(&named("complete", &[5])).unwrap().value, 1);
    let c5 = named("cycle", &[5]);
    let b = chromatic_independence_bound(&c5).unwrap();
    assert_eq!(b.value, 2);
    assert_eq!(exact_cost(&e, &c5).unwrap().cost, 5);
    check(&b, &e, &c5);
    let k2_plus = Graph::from_edges(3, &[(0, 1)]).unwrap();
    assert!(matches!(chromatic_independence_bound(&k2_plus), Err(Error::Precondition(_))));
}

#[test]
fn chromatic_case_two_is_exercised() {
    // a large independent class forces the second case: K_{1,5} has chi 2 and C_max the leaves
    let star = named("star", &[5]);
    let b = chromatic_independence_bound(&star).unwrap();
    match &b.certificate.argument {
        Argument::Coloring { case, .. } => assert_eq!(*case, 2),
        other => panic!("unexpected argument {other:?}"),
    }
    assert_eq!(b.value, 3);
    check(&b, &PropertySpec::emptiness(), &star);
}

#[test]
fn triangle_freeness_examples() {
    let t = PropertySpec::triangle_free();
    let k4 = named("complete", &[4]);
    let b = triangle_freeness_bound(&k4).unwrap();
    assert_eq!(b.value, 2);
    check(&b, &t, &k4);

    let f3 = named("friendship", &[3]);
    let b = triangle_freeness_bound(&f3).unwrap();
    assert_eq!(b.value, 3);
    match &b.certificate.argument {
        Argument::Triangles { case, d2_max, hitting_set, .. } => {
            assert_eq!(case, "link");
            assert_eq!(*d2_max, 1);
            assert_eq!(hitting_set.len(), 1);
        }
        other => panic!("unexpected argument {other:?}"),
    }
    check(&b, &t, &f3);

    let b = triangle_freeness_bound(&named("complete", &[5])).unwrap();
    match &b.certificate.argument {
        Argument::Triangles { d2_max, .. } => assert_eq!(*d2_max, 3),
        other => panic!("unexpected argument {other:?}"),
    }
    assert!(triangle_freeness_bound(&named("cycle", &[5])).is_err());
}

#[test]
fn bounded_degree_examples() {
    let g = named("star", &[3]);
    let p = PropertySpec::bounded_degree(2);
    let b = bounded_degree_bound(&g, 2).unwrap();
    assert_eq!(b.value, 1);
    assert_eq!(exact_cost(&p, &g).unwrap().cost, 4);
    check(&b, &p, &g);

    let big = named("star", &[9]);
    let b = bounded_degree_bound(&big, 2).unwrap();
    assert_eq!(b.value, 7);
    check(&b, &p, &big);

    // d_max equals d + 1 on a cycle with a chord: only the hitting-set term counts
    let g = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3), (3, 0), (0, 2)]).unwrap();
    let b = bounded_degree_bound(&g, 3);
    assert!(b.is_err());
    let b = bounded_degree_bound(&g, 2).unwrap();
    match &b.certificate.argument {
        Argument::Stars { case, .. } => assert_eq!(case, "hitting-set"),
        other => panic!("unexpected argument {other:?}"),
    }
    check(&b, &PropertySpec::bounded_degree(2), &g);
}

#[test]
fn local_property_examples() {
    let pl = localize(&PropertySpec::emptiness()).unwrap();
    let k4 = named("complete", &[4]);
    let b = local_property_bound(&pl, &k4, 3).unwrap();
    assert_eq!(b.value, 2);
    check(&b, &and_bounded_degree(&pl, 3), &k4);

    let c6 = named("cycle", &[6]);
    assert!(matches!(local_property_bound(&pl, &c6, 2), Err(Error::Precondition(_))));

    let la = localize(&PropertySpec::acyclic()).unwrap();
    let w5 = named("wheel", &[5]);
    let b = local_property_bound(&la, &w5, 4).unwrap();
    assert!(b.value >= 1);
    match &b.certificate.argument {
        Argument::Stars { hitting_set, .. } => assert_eq!(*hitting_set, VertexSet::singleton(0)),
        other => panic!("unexpected argument {other:?}"),
    }
    check(&b, &and_bounded_degree(&la, 4), &w5);
}

#[test]
fn mon_trans_examples() {
    let e = PropertySpec::emptiness();
    let b = mon_trans_indicator(&e, &named("cycle", &[6])).unwrap();
    assert!(b.asymptotic_only);
    assert_eq!(b.value, 1);
    assert_eq!(mon_trans_indicator(&PropertySpec::triangle_free(), &named("complete", &[6])).unwrap().value, 0);
    assert_eq!(mon_trans_indicator(&e, &named("bipartite", &[3, 3])).unwrap().value, 1);
    assert!(mon_trans_indicator(&e, &named("star", &[3])).is_err());
    let v = verify_bound(&b, &e, &named("cycle", &[6])).unwrap();
    assert_eq!(v.verdict, Verdict::Unverifiable);
}

#[test]
fn connectivity_examples() {
    let c = PropertySpec::connected();
    let c4 = named("cycle", &[4]);
    let b = connectivity_bound(&c4).unwrap();
    assert_eq!(b.value, 2);
    check(&b, &c, &c4);
    assert!(matches!(connectivity_bound(&named("complete", &[4])), Err(Error::Precondition(_))));
    let star = named("star", &[4]);
    let b = connectivity_bound(&star).unwrap();
    assert_eq!(b.value, 2);
    check(&b, &c, &star);
}

#[test]
fn corrupted_bound_fails_verification() {
    let petersen = named("petersen", &[]);
    let mut b = fvs_density_bound(&petersen).unwrap();
    b.value += 10;
    let v = verify_bound(&b, &PropertySpec::acyclic(), &petersen).unwrap();
    assert_eq!(v.verdict, Verdict::Fail);

    let m3 = named("matching", &[3]);
    let mut b = chromatic_independence_bound(&m3).unwrap();
    check(&b, &PropertySpec::emptiness(), &m3);
    b.certificate.blocks[0] = VertexSet::from_iter([0, 2]);
    let v = verify_bound(&b, &PropertySpec::emptiness(), &m3).unwrap();
    assert_eq!(v.verdict, Verdict::Fail);
}

#[test]
fn dispatch_rejects_mismatched_certifiers() {
    let g = named("cycle", &[5]);
    assert!(certify("fvs-density", &PropertySpec::emptiness(), &g).is_err());
    assert!(matches!(
        certify("no-such", &PropertySpec::emptiness(), &g),
        Err(Error::InvalidParams { .. })
    ));
    let b = certify("fvs-density", &PropertySpec::acyclic(), &g).unwrap();
    assert_eq!(b.property, "acyclic");
}

fn sweep_properties() -> Vec<PropertySpec> {
    let le = localize(&PropertySpec::emptiness()).unwrap();
    vec![
        PropertySpec::emptiness(),
        PropertySpec::triangle_free(),
        PropertySpec::acyclic(),
        PropertySpec::planar(),
        PropertySpec::bounded_degree(1),
        PropertySpec::bounded_degree(2),
        PropertySpec::path_free(3).unwrap(),
        PropertySpec::clique_free(4).unwrap(),
        le.clone(),
        and_bounded_degree(&le, 2),
        PropertySpec::connected(),
    ]
}

#[test]
fn every_certifier_is_sound_on_small_graphs() {
    let mut checked = 0;
    for n in 1..=5 {
        for g in all_graphs(n).unwrap() {
            for p in sweep_properties() {
                let f = BooleanFunction::new(&p, &g).unwrap();
                if !f.is_graph_relevant() {
                    continue;
                }
                for (name, outcome) in certify_all(&p, &g) {
                    let Ok(b) = outcome else { continue };
                    let v = verify_bound(&b, &p, &g).unwrap();
                    if b.asymptotic_only {
                        assert_eq!(v.verdict, Verdict::Unverifiable);
                    } else {
                        assert_eq!(v.verdict, Verdict::Pass, "{name} for {p} on {g:?}: {:?}", v.reason);
                        checked += 1;
                    }
                }
            }
        }
    }
    assert!(checked > 200);
}

fn random_family(k: usize, size: usize, ground: usize, rng: &mut ChaCha8Rng) -> Vec<VertexSet> {
    let all: Vec<VertexSet> = subsets_of_size(VertexSet::full(ground), k).collect();
    let mut family: Vec<VertexSet> = all.choose_multiple(rng, size).copied().collect();
    family.sort();
    family
}

#[test]
fn erdos_rado_recursion_succeeds_above_threshold() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for k in 1..=3 {
        for p in 2..=4 {
            let threshold = erdos_rado_threshold(k, p) as usize;
            for _ in 0..50 {
                let ground = rng.gen_range(k * p..=16);
                let available = subsets_of_size(VertexSet::full(ground), k).count();
                if available <= threshold {
                    continue;
                }
                let size = rng.gen_range(threshold + 1..=available.min(threshold + 40));
                let family = random_family(k, size, ground, &mut rng);
                let s = erdos_rado_sunflower(&family, p).unwrap().expect("above threshold");
                assert_eq!(s.p(), p);
                assert!(s.is_valid());
                assert!(s.petals.iter().all(|x| family.contains(x)));
            }
        }
    }
}

#[test]
fn exhaustive_fallback_agrees_with_brute_force() {
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    for _ in 0..200 {
        let k = rng.gen_range(1..=3);
        let ground = rng.gen_range(k + 1..=7);
        let available = subsets_of_size(VertexSet::full(ground), k).count();
        let size = rng.gen_range(1..=available.min(8));
        let family = random_family(k, size, ground, &mut rng);
        for p in 1..=4 {
            let found = find_sunflower(&family, p).unwrap();
            let brute = (0..1u32 << family.len()).any(|mask| {
                let chosen: Vec<VertexSet> = (0..family.len())
                    .filter(|i| mask >> i & 1 == 1)
                    .map(|i| family[i])
                    .collect();
                if chosen.len() != p {
                    return false;
                }
                let core = chosen.iter().fold(chosen[0], |c, s| c.intersection(*s));
                chosen
                    .iter()
                    .enumerate()
                    .all(|(i, a)| chosen[..i].iter().all(|b| a.intersection(*b) == core))
            });
            assert_eq!(found.is_some(), brute, "{family:?} p={p}");
            if let Some(s) = found {
                assert!(s.is_valid());
                assert_eq!(s.p(), p);
            }
        }
    }
}
