//! Occurrences of a distinguished variable, inversion of single-occurrence
//! terms, and the endomorphisms `b ↦ t(ā, b)` of free models.
//!
//! Variable convention: in a term `t(x̄, y)` the variable `y` is the
//! highest-indexed one of the signature and `z` is the next index.

use std::collections::{HashMap, HashSet};
use std::fmt;

use crate::error::{Error, Result};
use crate::model::{evaluate, Assignment, ClosureOptions, FreeModel, SteinerQuasigroup};
use crate::term::{canonicalize, enumerate_reduced, equiv, is_reduced, reduce, Element, Term};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OccurrenceReport {
    pub variable: u32,
    pub count: usize,
    /// Some occurrence of the variable has only single subterms above it.
    pub single_path_exists: bool,
}

/// For every product subterm `p·q` of `t` and each factor equivalent to `r`,
/// the other factor.
fn partners<'a>(products: &[(&'a Term, &'a Term)], r: &Term) -> Vec<&'a Term> {
    let mut out = Vec::new();
    for &(p, q) in products {
        if equiv(p, r) {
            out.push(q);
        }
        if equiv(q, r) {
            out.push(p);
        }
    }
    out
}

/// Whether the subterm `r` of `t` is single: any two products in `t` having a
/// factor equivalent to `r` have equivalent other factors.
pub fn is_single(t: &Term, r: &Term) -> bool {
    let products: Vec<(&Term, &Term)> = t.subterms().into_iter().filter_map(Term::as_prod).collect();
    let found = partners(&products, r);
    for (i, a) in found.iter().enumerate() {
        for b in &found[i + 1..] {
            if !equiv(a, b) {
                return false;
            }
        }
    }
    true
}

/// Paths from the root to each occurrence of `x_var`, as the list of
/// subterms containing it, the root first.
fn occurrence_paths(t: &Term, var: u32) -> Vec<Vec<&Term>> {
    fn walk<'a>(t: &'a Term, var: u32, path: &mut Vec<&'a Term>, out: &mut Vec<Vec<&'a Term>>) {
        path.push(t);
        match t.as_prod() {
            None => {
                if t.as_var().map(|v| v.index()) == Some(var) {
                    out.push(path.clone());
                }
            }
            Some((l, r)) => {
                walk(l, var, path, out);
                walk(r, var, path, out);
            }
        }
        path.pop();
    }
    let mut out = Vec::new();
    walk(t, var, &mut Vec::new(), &mut out);
    out
}

pub fn occurrences(t: &Term, var: u32) -> OccurrenceReport {
    let single_path_exists = occurrence_paths(t, var)
        .iter()
        .any(|path| path.iter().all(|s| is_single(t, s)));
    OccurrenceReport {
        variable: var,
        count: t.occurrences(var),
        single_path_exists,
    }
}

/// For `t` with exactly one occurrence of `x_y`, a term `r(x̄, z)` such that
/// `t(x̄, y) = z` iff `r(x̄, z) = y` in every Steiner quasigroup.
pub fn invert_single(t: &Term, y: u32, z: u32) -> Result<Term> {
    if !is_reduced(t) {
        return Err(Error::NotReduced(t.to_string()));
    }
    let count = t.occurrences(y);
    if count != 1 {
        return Err(Error::OccurrenceCount { var: y, count });
    }
    if t.contains_var(z) {
        return Err(Error::Precondition(format!("x{z} must not occur in {t}")));
    }
    Ok(canonicalize(&invert(t, y, z)))
}

fn invert(t: &Term, y: u32, z: u32) -> Term {
    match t.as_prod() {
        None => Term::var(z),
        Some((l, r)) => {
            let (with_y, other) = if l.contains_var(y) { (l, r) } else { (r, l) };
            let inner = invert(with_y, y, z);
            inner.substitute(z, &Term::prod(other.clone(), Term::var(z)))
        }
    }
}

/// An endomorphism of the free model on `generators` generators, given by the
/// images of `a1..an`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct EndoSpec {
    generators: u32,
    images: Vec<Element>,
}

impl EndoSpec {
    pub fn new(generators: u32, images: Vec<Element>) -> Result<EndoSpec> {
        if images.len() != generators as usize {
            return Err(Error::ArityMismatch {
                expected: generators as usize,
                found: images.len(),
            });
        }
        for e in &images {
            let m = e.term().max_var();
            if m > generators {
                return Err(Error::VariableOutOfRange { index: m, generators });
            }
        }
        Ok(EndoSpec { generators, images })
    }

    /// Images given as arbitrary terms; each is reduced.
    pub fn from_terms(generators: u32, images: &[Term]) -> Result<EndoSpec> {
        EndoSpec::new(generators, images.iter().map(reduce).collect())
    }

    pub fn identity(generators: u32) -> EndoSpec {
        EndoSpec {
            generators,
            images: (1..=generators).map(Element::generator).collect(),
        }
    }

    pub fn generators(&self) -> u32 {
        self.generators
    }

    pub fn images(&self) -> &[Element] {
        &self.images
    }

    pub fn image(&self, i: u32) -> &Element {
        &self.images[i as usize - 1]
    }

    pub fn is_identity(&self) -> bool {
        self.images
            .iter()
            .enumerate()
            .all(|(i, e)| *e == Element::generator(i as u32 + 1))
    }

    /// The image of `e`: `e` with each `x_i` replaced by the `i`-th image,
    /// reduced.
    pub fn apply(&self, e: &Element) -> Result<Element> {
        let m = FreeModel::new(self.generators)?;
        m.check_term(e.term())?;
        evaluate(e.term(), &Assignment::new(self.images.clone()), &m)
    }

    /// `self ∘ other`: first `other`, then `self`.
    pub fn compose(&self, other: &EndoSpec) -> Result<EndoSpec> {
        if self.generators != other.generators {
            return Err(Error::ArityMismatch {
                expected: self.generators as usize,
                found: other.generators as usize,
            });
        }
        let images = other
            .images
            .iter()
            .map(|e| self.apply(e))
            .collect::<Result<Vec<_>>>()?;
        Ok(EndoSpec {
            generators: self.generators,
            images,
        })
    }
}

impl fmt::Display for EndoSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, e) in self.images.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "x{} -> {e}", i + 1)?;
        }
        Ok(())
    }
}

pub fn apply_endo(spec: &EndoSpec, e: &Element) -> Result<Element> {
    spec.apply(e)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EndoClass {
    /// `b` and `t(ā)` have the same image.
    NotInjective { collapsed: Element, partner: Element },
    /// `r(x̄, y)` with `r(x̄, t(x̄, y)) ~red y`.
    Automorphism { inverse: Term },
    /// `b` is not in the closure of `ā, t(ā, b)` within the reported window.
    EmbeddingNotSurjective {
        excluded: Element,
        length_cap: usize,
        closure_size: usize,
        saturated: bool,
    },
}

impl EndoClass {
    pub fn name(&self) -> &'static str {
        match self {
            EndoClass::NotInjective { .. } => "not-injective",
            EndoClass::Automorphism { .. } => "automorphism",
            EndoClass::EmbeddingNotSurjective { .. } => "embedding-not-surjective",
        }
    }
}

/// The endomorphism of `⟨ā, b⟩` fixing `ā` and sending `b` to `t(ā, b)`.
///
/// Certificates refer to the abstract free model on `x1..xk, y` with
/// `y = x_{k+1}`; `image_value` is `t(ā, b)` in the ambient model.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Classification {
    pub prefix_len: u32,
    pub reduced_image: Element,
    pub occurrences: usize,
    pub image_value: Element,
    pub class: EndoClass,
}

impl Classification {
    pub fn y(&self) -> u32 {
        self.prefix_len + 1
    }

    /// The endomorphism as a spec of the abstract model.
    pub fn spec(&self) -> EndoSpec {
        let k = self.prefix_len;
        let mut images: Vec<Element> = (1..=k).map(Element::generator).collect();
        images.push(self.reduced_image.clone());
        EndoSpec { generators: k + 1, images }
    }

    /// Check the certificate over every element of rank at most `rank`.
    ///
    /// Automorphism: the inverse after the forward map, and the forward map
    /// after the inverse, fix every element. Embedding: the forward map is
    /// injective, and the closure check is redone. Not injective: the two
    /// collapsed elements differ and have the same image.
    pub fn verify(&self, rank: usize) -> Result<bool> {
        let m = FreeModel::new(self.y())?;
        let f = self.spec();
        let y = Element::generator(self.y());
        match &self.class {
            EndoClass::NotInjective { partner, .. } => {
                Ok(*partner != y && f.apply(&y)? == f.apply(partner)?)
            }
            EndoClass::Automorphism { inverse } => {
                let mut gi: Vec<Element> = (1..self.y()).map(Element::generator).collect();
                gi.push(reduce(inverse));
                let g = EndoSpec::new(self.y(), gi)?;
                for e in m.levels(rank)?.level(rank) {
                    if g.apply(&f.apply(e)?)? != *e || f.apply(&g.apply(e)?)? != *e {
                        return Ok(false);
                    }
                }
                Ok(true)
            }
            EndoClass::EmbeddingNotSurjective { length_cap, .. } => {
                let mut seen = HashSet::new();
                for e in m.levels(rank)?.level(rank) {
                    if !seen.insert(f.apply(e)?) {
                        return Ok(false);
                    }
                }
                let c = m.subalgebra_closure(f.images(), ClosureOptions::with_length_cap(*length_cap))?;
                Ok(!c.contains(&y))
            }
        }
    }
}

/// Classify `b ↦ t(ā, b)` by the number of occurrences of `y` in the reduced
/// image: none gives a non-injective map, one an automorphism, more a proper
/// embedding.
///
/// `(ā, b)` must be independent; the caller certifies this. A non-reduced
/// image is reduced first. `length_cap` bounds the closure search in the
/// embedding case (default four times the image length).
pub fn classify_endo(
    m: &FreeModel,
    prefix: &[Element],
    b: &Element,
    image: &Term,
    length_cap: Option<usize>,
) -> Result<Classification> {
    let k = u32::try_from(prefix.len()).map_err(|_| Error::ResourceCap {
        what: "prefix length",
        limit: u32::MAX as usize,
    })?;
    let y = k + 1;
    for e in prefix.iter().chain(std::iter::once(b)) {
        m.check_term(e.term())?;
    }
    let mx = image.max_var();
    if mx > y {
        return Err(Error::VariableOutOfRange {
            index: mx,
            generators: y,
        });
    }
    let t = reduce(image);
    let mut values = prefix.to_vec();
    values.push(b.clone());
    let image_value = evaluate(t.term(), &Assignment::new(values), m)?;
    let abstract_model = FreeModel::new(y)?;
    let yy = Element::generator(y);

    let count = t.term().occurrences(y);
    let class = match count {
        0 => {
            let partner = t.clone();
            debug_assert_ne!(partner, yy);
            EndoClass::NotInjective {
                collapsed: yy,
                partner,
            }
        }
        1 => {
            let r = invert_single(t.term(), y, y + 1)?;
            let inverse = canonicalize(&r.substitute(y + 1, &Term::var(y)));
            let back = reduce(&inverse.substitute(y, t.term()));
            let forth = reduce(&t.term().substitute(y, &inverse));
            if back != yy || forth != yy {
                return Err(Error::Precondition(format!(
                    "inverse {inverse} of {t} failed to verify"
                )));
            }
            EndoClass::Automorphism { inverse }
        }
        _ => {
            let mut gens: Vec<Element> = abstract_model.generators();
            gens[y as usize - 1] = t.clone();
            let cap = length_cap.unwrap_or_else(|| FreeModel::default_length_cap(&gens));
            let opts = ClosureOptions {
                length_cap: Some(cap),
                max_elements: None,
            };
            let c = abstract_model.subalgebra_closure(&gens, opts)?;
            if c.contains(&yy) {
                return Err(Error::Precondition(format!(
                    "x{y} lies in the closure of the image of {t}; the image term is not of the expected kind"
                )));
            }
            EndoClass::EmbeddingNotSurjective {
                excluded: yy,
                length_cap: cap,
                closure_size: c.len(),
                saturated: c.saturated(),
            }
        }
    };
    Ok(Classification {
        prefix_len: k,
        reduced_image: t,
        occurrences: count,
        image_value,
        class,
    })
}

/// Diagnostics for `t' = t(x̄, r)` obtained by substituting `r` for `x_z`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubstitutionReport {
    pub substituted: Term,
    pub substituted_reduced: bool,
    /// `r = r1·r2` with `y` occurring in both factors.
    pub premise: bool,
    /// If the premise holds then `t'` is reduced.
    pub reducedness_ok: bool,
    /// For all subterms `s1, s2` of `t`: `s1' ~ s2'` implies `s1 ~ s2`.
    pub injectivity_ok: bool,
    /// A pair of subterms violating the previous check.
    pub collision: Option<(Term, Term)>,
}

pub fn substitution_check(t: &Term, z: u32, r: &Term, y: u32) -> Result<SubstitutionReport> {
    for (name, term) in [("t", t), ("r", r)] {
        if !is_reduced(term) {
            return Err(Error::NotReduced(format!("{name} = {term}")));
        }
    }
    if !r.contains_var(y) {
        return Err(Error::Precondition(format!("x{y} does not occur in {r}")));
    }
    let substituted = t.substitute(z, r);
    let substituted_reduced = is_reduced(&substituted);
    let premise = r
        .as_prod()
        .is_some_and(|(a, b)| a.contains_var(y) && b.contains_var(y));

    let subs = t.subterms();
    let mut by_image: HashMap<Term, &Term> = HashMap::new();
    let mut collision = None;
    for s in subs {
        let key = canonicalize(&s.substitute(z, r));
        match by_image.get(&key) {
            Some(prev) if !equiv(prev, s) => {
                collision = Some(((*prev).clone(), s.clone()));
                break;
            }
            Some(_) => {}
            None => {
                by_image.insert(key, s);
            }
        }
    }
    Ok(SubstitutionReport {
        substituted,
        substituted_reduced,
        premise,
        reducedness_ok: !premise || substituted_reduced,
        injectivity_ok: collision.is_none(),
        collision,
    })
}

/// Substitute `r` for `x_z` in each term and look for two non-equivalent
/// terms with equivalent results.
pub fn substitution_collision(terms: &[Term], z: u32, r: &Term) -> Option<(Term, Term)> {
    let mut by_image: HashMap<Term, &Term> = HashMap::new();
    for t in terms {
        let key = canonicalize(&t.substitute(z, r));
        match by_image.get(&key) {
            Some(prev) if !equiv(prev, t) => return Some(((*prev).clone(), t.clone())),
            Some(_) => {}
            None => {
                by_image.insert(key, t);
            }
        }
    }
    None
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Bound {
    Rank(usize),
    Unbounded,
}

impl fmt::Display for Bound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Bound::Rank(r) => write!(f, "{r}"),
            Bound::Unbounded => f.write_str("unbounded"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Injectivity {
    HoldsUpTo(Bound),
    CounterexamplePair(Term, Term),
}

/// Search for reduced `r1 ≁ r2` over `x1..x_{y-1}` of rank at most
/// `rank_bound` with `t(x̄, r1)^red = t(x̄, r2)^red`.
///
/// A single occurrence of `y` settles the question for every rank.
pub fn injectivity_condition(
    t: &Term,
    y: u32,
    rank_bound: usize,
    limits: &crate::Limits,
) -> Result<Injectivity> {
    if !is_reduced(t) {
        return Err(Error::NotReduced(t.to_string()));
    }
    let count = t.occurrences(y);
    if count == 0 {
        return Err(Error::OccurrenceCount { var: y, count });
    }
    if t.max_var() > y {
        return Err(Error::Precondition(format!(
            "x{y} must be the highest variable of {t}"
        )));
    }
    if count == 1 {
        return Ok(Injectivity::HoldsUpTo(Bound::Unbounded));
    }
    let xs = y - 1;
    if xs == 0 {
        return Ok(Injectivity::HoldsUpTo(Bound::Rank(rank_bound)));
    }
    let rs = enumerate_reduced(xs, rank_bound, limits)?;
    let mut seen: HashMap<Element, &Element> = HashMap::new();
    for r in rs.iter() {
        let value = reduce(&t.substitute(y, r.term()));
        if let Some(prev) = seen.get(&value) {
            return Ok(Injectivity::CounterexamplePair(
                prev.term().clone(),
                r.term().clone(),
            ));
        }
        seen.insert(value, r);
    }
    Ok(Injectivity::HoldsUpTo(Bound::Rank(rank_bound)))
}

/// Why a tuple of elements is independent.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IndependenceCertificate {
    /// Distinct generators.
    BaseSubset,
    /// A subset of the image of the base under the automorphism sending
    /// `a_pivot` to `image`, which has one occurrence of `x_pivot`.
    AutomorphicImage { pivot: u32, image: Element },
}

/// Sufficient conditions for independence in a free model. `None` means no
/// certificate was found, not that the tuple is dependent.
pub fn certify_independent(m: &FreeModel, elems: &[Element]) -> Result<Option<IndependenceCertificate>> {
    for e in elems {
        m.check_term(e.term())?;
    }
    let distinct: HashSet<&Element> = elems.iter().collect();
    if distinct.len() != elems.len() {
        return Ok(None);
    }
    let gens: HashSet<u32> = elems
        .iter()
        .filter_map(|e| e.term().as_var().map(|v| v.index()))
        .collect();
    let others: Vec<&Element> = elems.iter().filter(|e| !e.term().is_var()).collect();
    match others.as_slice() {
        [] => Ok(Some(IndependenceCertificate::BaseSubset)),
        [e] => Ok(e
            .term()
            .vars()
            .into_iter()
            .find(|&v| !gens.contains(&v) && e.term().occurrences(v) == 1)
            .map(|pivot| IndependenceCertificate::AutomorphicImage {
                pivot,
                image: (*e).clone(),
            })),
        _ => Ok(None),
    }
}

/// Elements `b'` of rank at most `rank` in the free model on three generators
/// with `(a1·b')·(a2·b') = (a1·a3)·(a2·a3)`.
pub fn embedding_preimages(rank: usize) -> Result<Vec<Element>> {
    let m = FreeModel::new(3)?;
    let (a1, a2, a3) = (Element::generator(1), Element::generator(2), Element::generator(3));
    let target = m.op(&m.op(&a1, &a3), &m.op(&a2, &a3));
    let levels = m.levels(rank)?;
    Ok(levels
        .level(rank)
        .iter()
        .filter(|b| m.op(&m.op(&a1, b), &m.op(&a2, b)) == target)
        .cloned()
        .collect())
}
