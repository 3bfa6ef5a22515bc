//! Exhaustive checks of structural invariants at small sizes.

mod common;

use std::collections::HashSet;

use steinerq::automorph::all_elementary;
use steinerq::model::{ClosureOptions, Refutation};
use steinerq::morphisms::{
    certify_independent, classify_endo, occurrences, EndoClass, IndependenceCertificate,
};
use steinerq::psts::{builtin_sts, from_free_levels, hf_order, prefix_deltas, HfResult, PartialSts};
use steinerq::term::{canonicalize, enumerate_reduced, is_reduced, parse, reduce};
use steinerq::{Element, FreeModel, Limits, SteinerQuasigroup, Term};

fn el(s: &str) -> Element {
    reduce(&parse(s).unwrap())
}

fn reduced(n: u32, k: usize) -> Vec<Element> {
    enumerate_reduced(n, k, &Limits::default()).unwrap().into_vec()
}

#[test]
fn subterms_of_reduced_terms_are_reduced() {
    for e in reduced(3, 4) {
        assert!(e.term().subterms().iter().all(|s| is_reduced(s)), "{e}");
        assert_eq!(reduce(e.term()), e);
        assert_eq!(canonicalize(e.term()), *e.term());
    }
}

#[test]
fn products_without_cancellation_are_reduced() {
    let all = reduced(3, 2);
    for a in &all {
        for b in &all {
            let (t, u) = (a.term(), b.term());
            if t == u {
                continue;
            }
            let absorbs = |p: &Term, q: &Term| p.as_prod().is_some_and(|(l, r)| l == q || r == q);
            if absorbs(t, u) || absorbs(u, t) {
                continue;
            }
            assert!(is_reduced(&Term::prod(t.clone(), u.clone())), "{t} * {u}");
        }
    }
}

#[test]
fn level_of_matches_first_level() {
    let m = FreeModel::new(3).unwrap();
    let levels = m.levels(3).unwrap();
    for i in 0..=3 {
        for e in levels.new_at(i) {
            assert_eq!(m.level_of(e), i);
        }
    }
    let by_closure = m.levels_by_closure(3).unwrap();
    for i in 0..=3 {
        assert_eq!(levels.level(i).len(), by_closure.levels.level(i).len());
    }
}

#[test]
fn finite_table_matches_independent_fano() {
    let (_, fano) = builtin_sts(7).unwrap();
    for a in 1..=7u32 {
        for b in 1..=7u32 {
            let pa = fano.point(&a.to_string()).unwrap();
            let pb = fano.point(&b.to_string()).unwrap();
            assert_eq!(fano.name(fano.op(&pa, &pb)), common::fano_mul(a, b).to_string());
        }
    }
}

#[test]
fn refutation_witnesses_restrict_to_subtuples() {
    let m = FreeModel::new(3).unwrap();
    let s2 = reduced(3, 2);
    let mut dependent = 0;
    for a in &s2 {
        for b in &s2 {
            if a >= b {
                continue;
            }
            let tuple = [el("x1"), a.clone(), b.clone()];
            if tuple[0] == *a || tuple[0] == *b {
                continue;
            }
            let Refutation::Dependent { left, right } = m.independence_refute(&tuple, 2).unwrap()
            else {
                continue;
            };
            dependent += 1;
            let mut used: Vec<u32> = left.vars();
            used.extend(right.vars());
            used.sort_unstable();
            used.dedup();
            let sub: Vec<Element> = used.iter().map(|&v| tuple[v as usize - 1].clone()).collect();
            assert!(
                matches!(m.independence_refute(&sub, 2).unwrap(), Refutation::Dependent { .. }),
                "{tuple:?} restricted to {used:?}"
            );
        }
    }
    assert!(dependent > 0);
}

#[test]
fn dependent_extensions_reach_the_prefix_closure() {
    let m = FreeModel::new(3).unwrap();
    let terms = reduced(3, 3);
    for prefix in [[el("x1"), el("x2")], [el("x1*x3"), el("x2")]] {
        let closure = m
            .subalgebra_closure(&prefix, ClosureOptions::with_length_cap(12))
            .unwrap();
        for b in reduced(3, 2) {
            if prefix.contains(&b) {
                continue;
            }
            let tuple = [prefix[0].clone(), prefix[1].clone(), b.clone()];
            if !matches!(m.independence_refute(&tuple, 2).unwrap(), Refutation::Dependent { .. }) {
                continue;
            }
            let found = terms.iter().any(|t| {
                t.term().contains_var(3)
                    && closure.contains(
                        &steinerq::model::evaluate(
                            t.term(),
                            &steinerq::Assignment::new(tuple.to_vec()),
                            &m,
                        )
                        .unwrap(),
                    )
            });
            assert!(found, "no term sends {b} into the closure of {prefix:?}");
        }
    }
}

#[test]
fn independence_example_is_certified() {
    let m = FreeModel::new(3).unwrap();
    let tuple = [el("x1"), el("x2"), el("(x1*x2)*x3")];
    assert_eq!(
        m.independence_refute(&tuple, 4).unwrap(),
        Refutation::NoWitnessUpTo(4)
    );
    assert!(matches!(
        certify_independent(&m, &tuple).unwrap(),
        Some(IndependenceCertificate::AutomorphicImage { pivot: 3, .. })
    ));
}

#[test]
fn embedding_closure_excludes_generator_at_several_caps() {
    let m = FreeModel::new(3).unwrap();
    let gens = [el("x1"), el("x2"), el("(x1*x3)*(x2*x3)")];
    for cap in [4, 8, 12, 16] {
        let c = m
            .subalgebra_closure(&gens, ClosureOptions::with_length_cap(cap))
            .unwrap();
        assert!(!c.contains(&el("x3")), "cap {cap}");
    }
}

#[test]
fn free_truncations_are_unconfined() {
    for n in 1..=4 {
        let m = FreeModel::new(n).unwrap();
        for k in 0..=3 {
            let sts = from_free_levels(&m, k).unwrap();
            let HfResult::Ordering(ord) = hf_order(&sts) else {
                panic!("n = {n}, k = {k} reported confined");
            };
            let d = prefix_deltas(&sts, &ord);
            assert!(d.windows(2).all(|w| w[0] <= w[1]));
            assert!(d.iter().all(|&x| x >= 0));
            assert_eq!(PartialSts::parse(&sts.to_text()).unwrap(), sts);
        }
    }
}

#[test]
fn hf_order_agrees_with_subset_scan_on_small_random_systems() {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(42);
    for _ in 0..300 {
        let n = rng.gen_range(1..=9);
        let proposals = rng.gen_range(0..=20);
        let sts = common::random_partial_sts(&mut rng, n, proposals);
        let greedy = matches!(hf_order(&sts), HfResult::Ordering(_));
        assert_eq!(greedy, common::confined_subsets(&sts).is_empty(), "{}", sts.to_text());
    }
}

#[test]
fn single_path_iff_one_occurrence() {
    for (n, k) in [(2, 3), (3, 3)] {
        for e in reduced(n, k) {
            let r = occurrences(e.term(), n);
            assert_eq!(r.single_path_exists, r.count == 1, "{e}");
        }
    }
}

#[test]
fn two_occurrence_embedding_is_injective() {
    let m = FreeModel::new(3).unwrap();
    let c = classify_endo(
        &m,
        &[el("x1"), el("x2")],
        &el("x3"),
        &parse("(x1*x3)*(x2*x3)").unwrap(),
        None,
    )
    .unwrap();
    assert!(matches!(c.class, EndoClass::EmbeddingNotSurjective { .. }));
    let f = c.spec();
    let images: HashSet<Element> = m
        .levels(3)
        .unwrap()
        .level(3)
        .iter()
        .map(|e| f.apply(e).unwrap())
        .collect();
    assert_eq!(images.len(), m.levels(3).unwrap().level(3).len());
}

#[test]
fn elementary_automorphisms_are_involutions() {
    for n in 2..=4 {
        let m = FreeModel::new(n).unwrap();
        let level = m.levels(3).unwrap();
        for f in all_elementary(&m, 1).unwrap() {
            for e in level.level(3) {
                assert_eq!(&f.apply(&f.apply(e).unwrap()).unwrap(), e, "{f}");
            }
        }
    }
}
