//! Terms over a single commutative product.
//!
//! A [`Term`] is an immutable, reference-counted binary tree. Every node caches
//! its length (number of variable occurrences), rank (nesting depth), a
//! structural hash and whether it is already in canonical form, so the common
//! queries are O(1).

mod canon;
mod enumerate;
mod parse;
pub(crate) mod reduce;

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use crate::error::{Error, Result};

pub use canon::{canonicalize, equiv};
pub use enumerate::{enumerate_reduced, Enumeration};
pub use parse::parse;
pub use reduce::{is_reduced, reduce};

/// A variable `x_i`; indices start at 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Var(u32);

impl Var {
    pub fn new(index: u32) -> Option<Var> {
        (index >= 1).then_some(Var(index))
    }

    pub fn index(self) -> u32 {
        self.0
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x{}", self.0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum TermKind {
    Var(Var),
    Prod(Term, Term),
}

struct Node {
    kind: TermKind,
    len: usize,
    rank: usize,
    hash: u64,
    canonical: bool,
}

/// A term: a variable or the product of two terms.
#[derive(Clone)]
pub struct Term(Arc<Node>);

fn mix(a: u64, b: u64) -> u64 {
    // splitmix64 finaliser over a simple combination
    let mut z = a.rotate_left(29) ^ b.wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

impl Term {
    /// The variable `x_index`.
    ///
    /// Panics if `index` is 0; use [`Var::new`] for checked construction.
    pub fn var(index: u32) -> Term {
        let v = Var::new(index).expect("variable indices start at 1");
        Term::from_var(v)
    }

    pub fn from_var(v: Var) -> Term {
        Term(Arc::new(Node {
            kind: TermKind::Var(v),
            len: 1,
            rank: 0,
            hash: mix(1, v.0 as u64),
            canonical: true,
        }))
    }

    /// The product `left·right`, keeping the given child order.
    pub fn prod(left: Term, right: Term) -> Term {
        let len = left.len() + right.len();
        let rank = left.rank().max(right.rank()) + 1;
        let hash = mix(mix(2, left.0.hash), right.0.hash);
        let canonical = left.0.canonical && right.0.canonical && left <= right;
        Term(Arc::new(Node {
            kind: TermKind::Prod(left, right),
            len,
            rank,
            hash,
            canonical,
        }))
    }

    /// The product of two canonical terms with children put in canonical order.
    pub(crate) fn prod_ordered(a: Term, b: Term) -> Term {
        if a <= b {
            Term::prod(a, b)
        } else {
            Term::prod(b, a)
        }
    }

    pub fn kind(&self) -> &TermKind {
        &self.0.kind
    }

    pub fn as_var(&self) -> Option<Var> {
        match self.kind() {
            TermKind::Var(v) => Some(*v),
            TermKind::Prod(..) => None,
        }
    }

    pub fn as_prod(&self) -> Option<(&Term, &Term)> {
        match self.kind() {
            TermKind::Prod(l, r) => Some((l, r)),
            TermKind::Var(_) => None,
        }
    }

    pub fn is_var(&self) -> bool {
        self.as_var().is_some()
    }

    /// Number of variable occurrences.
    pub fn len(&self) -> usize {
        self.0.len
    }

    /// Terms always contain at least one variable.
    pub fn is_empty(&self) -> bool {
        false
    }

    /// 0 on variables, `max(rank(l), rank(r)) + 1` on products.
    pub fn rank(&self) -> usize {
        self.0.rank
    }

    /// True when every product node has its children in canonical order.
    pub fn is_canonical(&self) -> bool {
        self.0.canonical
    }

    /// Number of occurrences of `x_index`.
    pub fn occurrences(&self, index: u32) -> usize {
        match self.kind() {
            TermKind::Var(v) => usize::from(v.0 == index),
            TermKind::Prod(l, r) => l.occurrences(index) + r.occurrences(index),
        }
    }

    pub fn contains_var(&self, index: u32) -> bool {
        match self.kind() {
            TermKind::Var(v) => v.0 == index,
            TermKind::Prod(l, r) => l.contains_var(index) || r.contains_var(index),
        }
    }

    /// Largest variable index occurring in the term.
    pub fn max_var(&self) -> u32 {
        match self.kind() {
            TermKind::Var(v) => v.0,
            TermKind::Prod(l, r) => l.max_var().max(r.max_var()),
        }
    }

    /// Sorted, deduplicated variable indices.
    pub fn vars(&self) -> Vec<u32> {
        let mut out = Vec::new();
        self.collect_vars(&mut out);
        out.sort_unstable();
        out.dedup();
        out
    }

    fn collect_vars(&self, out: &mut Vec<u32>) {
        match self.kind() {
            TermKind::Var(v) => out.push(v.0),
            TermKind::Prod(l, r) => {
                l.collect_vars(out);
                r.collect_vars(out);
            }
        }
    }

    /// All subterm occurrences in pre-order, the term itself first.
    pub fn subterms(&self) -> Vec<&Term> {
        let mut out = Vec::new();
        let mut stack = vec![self];
        while let Some(t) = stack.pop() {
            out.push(t);
            if let TermKind::Prod(l, r) = t.kind() {
                stack.push(r);
                stack.push(l);
            }
        }
        out
    }

    /// Replace every occurrence of `x_index` by `replacement`. No reduction.
    pub fn substitute(&self, index: u32, replacement: &Term) -> Term {
        match self.kind() {
            TermKind::Var(v) if v.0 == index => replacement.clone(),
            TermKind::Var(_) => self.clone(),
            TermKind::Prod(l, r) => {
                if !self.contains_var(index) {
                    return self.clone();
                }
                Term::prod(
                    l.substitute(index, replacement),
                    r.substitute(index, replacement),
                )
            }
        }
    }

    /// Simultaneous substitution `x_i ↦ images[i - 1]`; variables beyond the
    /// slice are left alone. No reduction.
    pub fn substitute_all(&self, images: &[Term]) -> Term {
        match self.kind() {
            TermKind::Var(v) => images
                .get(v.0 as usize - 1)
                .cloned()
                .unwrap_or_else(|| self.clone()),
            TermKind::Prod(l, r) => Term::prod(l.substitute_all(images), r.substitute_all(images)),
        }
    }

    fn bytes(&self) -> Bytes<'_> {
        Bytes {
            stack: vec![Frame::Term(self)],
            digits: [0; 10],
            ndigits: 0,
        }
    }
}

/// Free function form of [`Term::substitute`].
pub fn substitute(t: &Term, index: u32, replacement: &Term) -> Term {
    t.substitute(index, replacement)
}

/// Fully parenthesised rendering, e.g. `((x1*x2)*x3)`.
pub fn print(t: &Term) -> String {
    t.to_string()
}

enum Frame<'a> {
    Term(&'a Term),
    Byte(u8),
}

/// Byte stream of the printed form, produced without allocating the string.
struct Bytes<'a> {
    stack: Vec<Frame<'a>>,
    digits: [u8; 10],
    ndigits: usize,
}

impl Iterator for Bytes<'_> {
    type Item = u8;

    fn next(&mut self) -> Option<u8> {
        if self.ndigits > 0 {
            self.ndigits -= 1;
            return Some(self.digits[self.ndigits]);
        }
        match self.stack.pop()? {
            Frame::Byte(b) => Some(b),
            Frame::Term(t) => match t.kind() {
                TermKind::Var(v) => {
                    let mut n = v.0;
                    while n > 0 {
                        self.digits[self.ndigits] = b'0' + (n % 10) as u8;
                        self.ndigits += 1;
                        n /= 10;
                    }
                    Some(b'x')
                }
                TermKind::Prod(l, r) => {
                    self.stack.push(Frame::Byte(b')'));
                    self.stack.push(Frame::Term(r));
                    self.stack.push(Frame::Byte(b'*'));
                    self.stack.push(Frame::Term(l));
                    Some(b'(')
                }
            },
        }
    }
}

impl PartialEq for Term {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.hash == other.0.hash
                && self.0.len == other.0.len
                && self.0.kind == other.0.kind)
    }
}

impl Eq for Term {}

impl Hash for Term {
    fn hash<H: Hasher>(&self, state: &mut H) {
        state.write_u64(self.0.hash);
    }
}

/// Length, then rank, then the printed form compared byte-wise.
impl Ord for Term {
    fn cmp(&self, other: &Self) -> Ordering {
        if Arc::ptr_eq(&self.0, &other.0) {
            return Ordering::Equal;
        }
        self.len()
            .cmp(&other.len())
            .then_with(|| self.rank().cmp(&other.rank()))
            .then_with(|| self.bytes().cmp(other.bytes()))
    }
}

impl PartialOrd for Term {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind() {
            TermKind::Var(v) => write!(f, "{v}"),
            TermKind::Prod(l, r) => write!(f, "({l}*{r})"),
        }
    }
}

impl fmt::Debug for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Term({self})")
    }
}

impl std::str::FromStr for Term {
    type Err = Error;

    fn from_str(s: &str) -> Result<Term> {
        parse(s)
    }
}

/// A canonical reduced term; doubles as an element of a free model.
///
/// Two elements are equal iff their terms are `~`-equivalent.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Element(Term);

impl Element {
    /// Wrap a term that is already canonical and reduced.
    pub fn new(term: Term) -> Result<Element> {
        if !term.is_canonical() {
            return Err(Error::NotCanonical(term.to_string()));
        }
        if !is_reduced(&term) {
            return Err(Error::NotReduced(term.to_string()));
        }
        Ok(Element(term))
    }

    pub(crate) fn new_unchecked(term: Term) -> Element {
        debug_assert!(term.is_canonical());
        Element(term)
    }

    pub fn generator(index: u32) -> Element {
        Element(Term::var(index))
    }

    pub fn term(&self) -> &Term {
        &self.0
    }

    pub fn into_term(self) -> Term {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn rank(&self) -> usize {
        self.0.rank()
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl fmt::Debug for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Element({})", self.0)
    }
}

impl AsRef<Term> for Element {
    fn as_ref(&self) -> &Term {
        &self.0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(s: &str) -> Term {
        parse(s).unwrap()
    }

    #[test]
    fn print_examples() {
        assert_eq!(print(&Term::var(3)), "x3");
        assert_eq!(print(&Term::prod(Term::var(1), Term::var(2))), "(x1*x2)");
    }

    #[test]
    fn rank_and_length() {
        assert_eq!(t("x1").rank(), 0);
        assert_eq!(t("x1*x2").rank(), 1);
        assert_eq!(t("(x1*x2)*(x1*x3)").rank(), 2);
        assert_eq!(t("x1").len(), 1);
        assert_eq!(t("(x1*x2)*x2").len(), 3);
    }

    #[test]
    fn substitution_examples() {
        let y = 9;
        let got = t("x1*x9").substitute(y, &t("x2*x9"));
        assert_eq!(got, t("x1*(x2*x9)"));
        assert_eq!(t("x1").substitute(y, &t("x2*x3")), t("x1"));
    }

    #[test]
    fn byte_stream_matches_display() {
        for s in ["x1", "x12", "(x3*x10)*x2", "((x1*x2)*(x3*x4))*x100"] {
            let term = t(s);
            let bytes: Vec<u8> = term.bytes().collect();
            assert_eq!(String::from_utf8(bytes).unwrap(), term.to_string());
        }
    }

    #[test]
    fn order_is_length_then_rank_then_text() {
        assert!(t("x2") < t("x1*x2"));
        assert!(t("x1") < t("x2"));
        // x10 sorts before x2 byte-wise
        assert!(t("x10") < t("x2"));
        // same length 4: rank 2 before rank 3
        assert!(t("(x1*x2)*(x1*x3)") < t("((x1*x2)*x3)*x1"));
    }

    #[test]
    fn element_rejects_non_canonical_and_non_reduced() {
        assert!(Element::new(t("x2*x1")).is_err());
        assert!(Element::new(t("x1*x1")).is_err());
        assert!(Element::new(t("x1*x2")).is_ok());
    }
}
