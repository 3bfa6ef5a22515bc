use super::{canonicalize, Element, Term, TermKind};

/// True iff no subterm has one of the shapes `t1·t2` with `t1 ~ t2`,
/// `t1·(t2·t3)` with `t1 ~ t2` or `t1 ~ t3`, or `(t1·t2)·t3` with
/// `t1 ~ t3` or `t2 ~ t3`.
pub fn is_reduced(t: &Term) -> bool {
    // reducedness is a ~-class invariant, and on canonical terms ~ is equality
    reduced_canonical(&canonicalize(t))
}

fn reduced_canonical(t: &Term) -> bool {
    match t.kind() {
        TermKind::Var(_) => true,
        TermKind::Prod(a, b) => {
            !cancels(a, b) && reduced_canonical(a) && reduced_canonical(b)
        }
    }
}

/// Whether the product of two canonical terms hits a forbidden shape at the top.
pub(crate) fn cancels(a: &Term, b: &Term) -> bool {
    a == b || has_child(a, b) || has_child(b, a)
}

fn has_child(parent: &Term, child: &Term) -> bool {
    matches!(parent.kind(), TermKind::Prod(l, r) if l == child || r == child)
}

/// Reduced form, computed child-first:
///
/// - variables are already reduced;
/// - for `t1·t2` with reduced children `u1`, `u2`:
///   (a) `u1 ~ u2` gives `u1`;
///   (b) `u1 ~ r·u2` gives `r`;
///   (c) `u2 ~ r·u1` gives `r`;
///   (d) otherwise `u1·u2`.
///
/// The result is canonical and reduced, and equal to `t` in every Steiner
/// quasigroup.
pub fn reduce(t: &Term) -> Element {
    Element::new_unchecked(reduce_term(t))
}

fn reduce_term(t: &Term) -> Term {
    match t.kind() {
        TermKind::Var(_) => t.clone(),
        TermKind::Prod(l, r) => {
            let a = reduce_term(l);
            let b = reduce_term(r);
            mul_reduced(a, b)
        }
    }
}

/// Product of two canonical reduced terms, reduced.
pub(crate) fn mul_reduced(a: Term, b: Term) -> Term {
    if a == b {
        return a;
    }
    if let Some(rest) = cofactor(&a, &b) {
        return rest;
    }
    if let Some(rest) = cofactor(&b, &a) {
        return rest;
    }
    Term::prod_ordered(a, b)
}

/// If `parent = r·child` up to commutativity, return `r`.
fn cofactor(parent: &Term, child: &Term) -> Option<Term> {
    match parent.kind() {
        TermKind::Prod(l, r) if l == child => Some(r.clone()),
        TermKind::Prod(l, r) if r == child => Some(l.clone()),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::term::{equiv, parse};

    fn t(s: &str) -> Term {
        parse(s).unwrap()
    }

    /// Direct scan: every product occurrence checked against the three shapes
    /// using `equiv`, independent of canonical ordering.
    fn reduced_by_scan(t: &Term) -> bool {
        t.subterms().into_iter().all(|s| match s.kind() {
            TermKind::Var(_) => true,
            TermKind::Prod(t1, t2) => {
                if equiv(t1, t2) {
                    return false;
                }
                if let TermKind::Prod(u, v) = t2.kind() {
                    if equiv(t1, u) || equiv(t1, v) {
                        return false;
                    }
                }
                if let TermKind::Prod(u, v) = t1.kind() {
                    if equiv(u, t2) || equiv(v, t2) {
                        return false;
                    }
                }
                true
            }
        })
    }

    #[test]
    fn reducedness_examples() {
        assert!(!is_reduced(&t("x1*x1")));
        assert!(!is_reduced(&t("(x1*x2)*x2")));
        assert!(is_reduced(&t("(x1*x2)*(x1*x3)")));
        assert!(reduced_by_scan(&t("(x1*x2)*(x1*x3)")));
        // nested violation, and commuted forms
        assert!(!is_reduced(&t("x3*(x2*(x1*x2))")));
        assert!(!is_reduced(&t("(x2*x1)*(x1*x2)")));
        assert!(!is_reduced(&t("x2*(x2*x1)")));
    }

    #[test]
    fn reduction_examples() {
        assert_eq!(reduce(&t("x1*x1")).term(), &t("x1"));
        assert_eq!(reduce(&t("(x1*x2)*x2")).term(), &t("x1"));
        assert_eq!(reduce(&t("x2*(x1*x2)")).term(), &t("x1"));
        assert_eq!(reduce(&t("(x2*x1)*(x1*x2)")).term(), &t("x1*x2"));
        assert_eq!(reduce(&t("x3*x1")).term(), &t("x1*x3"));
        // cancels through two levels
        assert_eq!(reduce(&t("(((x1*x2)*x3)*x3)*x2")).term(), &t("x1"));
    }

    #[test]
    fn scan_agrees_on_small_terms() {
        let samples = [
            "x1",
            "x1*x2",
            "(x1*x2)*x3",
            "(x1*x2)*(x2*x3)",
            "(x1*x2)*(x2*x1)",
            "((x1*x2)*x3)*(x1*x2)",
            "((x1*x2)*x3)*x1",
            "x1*((x2*x3)*x1)",
        ];
        for s in samples {
            let term = t(s);
            assert_eq!(is_reduced(&term), reduced_by_scan(&term), "{s}");
            let r = reduce(&term);
            assert!(reduced_by_scan(r.term()));
        }
    }
}
