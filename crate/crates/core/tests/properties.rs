mod common;

use proptest::prelude::*;
use steinerq::automorph::{all_elementary, preserves_reduced, tame_decompose, verify_tame};
use steinerq::model::{evaluate, Assignment};
use steinerq::morphisms::EndoSpec;
use steinerq::psts::builtin_sts;
use steinerq::term::{canonicalize, equiv, is_reduced, parse, reduce, substitute};
use steinerq::{FreeModel, Limits, SteinerQuasigroup, Term};

fn term(vars: u32, depth: u32) -> impl Strategy<Value = Term> {
    let leaf = (1..=vars).prop_map(Term::var);
    leaf.prop_recursive(depth, 24, 2, |inner| {
        (inner.clone(), inner).prop_map(|(l, r)| Term::prod(l, r))
    })
}

/// Swap the children of the product nodes selected by the bits of `mask`,
/// visiting nodes in pre-order.
fn flip(t: &Term, mask: &mut u64) -> Term {
    match t.as_prod() {
        None => t.clone(),
        Some((l, r)) => {
            let swap = *mask & 1 == 1;
            *mask = mask.rotate_right(1);
            let (l, r) = (flip(l, mask), flip(r, mask));
            if swap {
                Term::prod(r, l)
            } else {
                Term::prod(l, r)
            }
        }
    }
}

fn fano_assignments() -> Vec<[u32; 3]> {
    let mut out = Vec::new();
    for a in 1..=7 {
        for b in 1..=7 {
            for c in 1..=7 {
                out.push([a, b, c]);
            }
        }
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn canonical_form_is_idempotent(t in term(3, 5)) {
        let c = canonicalize(&t);
        prop_assert_eq!(canonicalize(&c), c.clone());
        prop_assert!(equiv(&t, &c));
        prop_assert!(c.is_canonical());
    }

    #[test]
    fn commuting_subterms_preserves_class(t in term(3, 5), mask in any::<u64>()) {
        let mut m = mask;
        let u = flip(&t, &mut m);
        prop_assert!(equiv(&t, &u));
        prop_assert_eq!(t.rank(), u.rank());
        prop_assert_eq!(t.len(), u.len());
        prop_assert_eq!(is_reduced(&t), is_reduced(&u));
        prop_assert_eq!(reduce(&t), reduce(&u));
    }

    #[test]
    fn reduction_is_idempotent_and_reduced(t in term(3, 5)) {
        let r = reduce(&t);
        prop_assert!(is_reduced(r.term()));
        prop_assert!(r.term().is_canonical());
        prop_assert_eq!(reduce(r.term()), r.clone());
        if is_reduced(&t) {
            prop_assert_eq!(r.term(), &canonicalize(&t));
        }
    }

    #[test]
    fn reduction_is_sound_in_fano(t in term(3, 5)) {
        let r = reduce(&t);
        for asg in fano_assignments() {
            prop_assert_eq!(common::fano_eval(&t, &asg), common::fano_eval(r.term(), &asg));
        }
    }

    #[test]
    fn equivalent_terms_agree_in_fano(t in term(3, 4), mask in any::<u64>()) {
        let mut m = mask;
        let u = flip(&t, &mut m);
        for asg in fano_assignments() {
            prop_assert_eq!(common::fano_eval(&t, &asg), common::fano_eval(&u, &asg));
        }
    }

    #[test]
    fn substitution_length_identity(t in term(3, 4), r in term(3, 3), v in 1u32..=3) {
        let s = substitute(&t, v, &r);
        let occ = t.occurrences(v);
        prop_assert_eq!(s.len() + occ, t.len() + occ * r.len());
    }

    #[test]
    fn print_parse_round_trip(t in term(12, 5)) {
        let text = t.to_string();
        prop_assert_eq!(parse(&text).unwrap(), t.clone());
        let spaced = text.replace('*', " * ").replace('(', "( ");
        prop_assert_eq!(parse(&spaced).unwrap(), t);
    }

    #[test]
    fn free_model_axioms(a in term(3, 4), b in term(3, 4)) {
        let m = FreeModel::new(3).unwrap();
        let (a, b) = (reduce(&a), reduce(&b));
        prop_assert_eq!(m.op(&a, &a), a.clone());
        prop_assert_eq!(m.op(&a, &b), m.op(&b, &a));
        prop_assert_eq!(m.op(&a, &m.op(&a, &b)), b.clone());
    }

    #[test]
    fn homomorphisms_into_fano_respect_products(
        imgs in proptest::collection::vec(1usize..=7, 3),
        a in term(3, 3),
        b in term(3, 3),
    ) {
        let (_, fano) = builtin_sts(7).unwrap();
        let m = FreeModel::new(3).unwrap();
        let images: Vec<usize> = imgs.iter().map(|p| fano.point(&p.to_string()).unwrap()).collect();
        let h = m.extend_hom(images, &fano).unwrap();
        let (a, b) = (reduce(&a), reduce(&b));
        let lhs = h.apply(&m.op(&a, &b)).unwrap();
        let rhs = fano.op(&h.apply(&a).unwrap(), &h.apply(&b).unwrap());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn evaluation_in_free_model_is_reduction(t in term(3, 5)) {
        let m = FreeModel::new(3).unwrap();
        let id = Assignment::new(m.generators());
        prop_assert_eq!(evaluate(&t, &id, &m).unwrap(), reduce(&t));
    }

    #[test]
    fn tame_round_trip(picks in proptest::collection::vec(any::<prop::sample::Index>(), 0..=5)) {
        let m = FreeModel::new(3).unwrap();
        let choices = all_elementary(&m, 2).unwrap();
        let mut spec = EndoSpec::identity(3);
        for p in &picks {
            spec = spec.compose(&p.get(&choices).spec()).unwrap();
        }
        let dec = tame_decompose(&m, &spec).unwrap();
        prop_assert!(verify_tame(&m, &dec, &spec));
        prop_assert!(dec.length_trace.windows(2).all(|w| w[1] < w[0]));

        // a surjective spec with a non-variable image fails to preserve
        // reduced terms within one rank above its images
        if let Some(top) = spec.images().iter().map(|e| e.rank()).max().filter(|&r| r > 0 && r < 4) {
            let p = preserves_reduced(spec.images(), top + 1, &Limits::default()).unwrap();
            prop_assert!(!p.holds(), "{} preserves reduced terms", spec);
        }
    }
}
