use super::{Term, TermKind};

/// Canonical representative of the `~`-class of `t`: children of every product
/// are canonicalised and then put in increasing term order.
pub fn canonicalize(t: &Term) -> Term {
    if t.is_canonical() {
        return t.clone();
    }
    match t.kind() {
        TermKind::Var(_) => t.clone(),
        TermKind::Prod(l, r) => Term::prod_ordered(canonicalize(l), canonicalize(r)),
    }
}

/// `t ~ r`: equal up to commuting subterms. Reflexive.
pub fn equiv(t: &Term, r: &Term) -> bool {
    t.len() == r.len() && t.rank() == r.rank() && canonicalize(t) == canonicalize(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::term::parse;
    use std::collections::{HashSet, VecDeque};

    fn t(s: &str) -> Term {
        parse(s).unwrap()
    }

    /// Every term reachable by flipping the children of one product node.
    fn single_flips(t: &Term) -> Vec<Term> {
        match t.kind() {
            TermKind::Var(_) => vec![],
            TermKind::Prod(l, r) => {
                let mut out = vec![Term::prod(r.clone(), l.clone())];
                out.extend(single_flips(l).into_iter().map(|l2| Term::prod(l2, r.clone())));
                out.extend(single_flips(r).into_iter().map(|r2| Term::prod(l.clone(), r2)));
                out
            }
        }
    }

    fn flip_closure(t: &Term) -> HashSet<Term> {
        let mut seen = HashSet::from([t.clone()]);
        let mut queue = VecDeque::from([t.clone()]);
        while let Some(u) = queue.pop_front() {
            for v in single_flips(&u) {
                if seen.insert(v.clone()) {
                    queue.push_back(v);
                }
            }
        }
        seen
    }

    #[test]
    fn commutativity_examples() {
        assert_eq!(canonicalize(&t("x2*x1")), canonicalize(&t("x1*x2")));
        assert_eq!(canonicalize(&t("x1")), t("x1"));
        let a = t("(x1*x2)*x3");
        let b = t("x3*(x2*x1)");
        assert!(flip_closure(&a).contains(&b));
        assert_eq!(canonicalize(&a), canonicalize(&b));
        assert!(equiv(&t("x1*x2"), &t("x2*x1")));
        assert!(!equiv(&t("x1"), &t("x2")));
    }

    #[test]
    fn canonical_form_agrees_with_flip_closure() {
        let samples = [
            "((x1*x2)*(x3*x1))*x2",
            "(x3*(x2*x1))*((x1*x1)*x2)",
            "x4*((x2*x3)*(x3*x2))",
        ];
        for s in samples {
            let a = t(s);
            let closure = flip_closure(&a);
            let c = canonicalize(&a);
            assert!(closure.contains(&c));
            for b in &closure {
                assert_eq!(canonicalize(b), c, "{b} in the class of {a}");
            }
        }
        // distinct classes stay distinct
        let a = t("(x1*x2)*x3");
        let b = t("(x1*x3)*x2");
        assert!(!flip_closure(&a).contains(&b));
        assert!(!equiv(&a, &b));
    }
}
