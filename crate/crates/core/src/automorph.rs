//! Elementary automorphisms and the decomposition of automorphisms of free
//! models into them.
//!
//! Composition convention: a decomposition `[f1, …, fm]` denotes
//! `f1 ∘ … ∘ fm`, so `fm` acts first on a generator.

use std::fmt;

use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::model::FreeModel;
use crate::morphisms::EndoSpec;
use crate::term::{enumerate_reduced, is_reduced, reduce, Element, Term};

/// `a_pivot ↦ a_pivot · shift(ā)`, every other generator fixed. An involution.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ElementaryAuto {
    generators: u32,
    pivot: u32,
    shift: Element,
}

impl ElementaryAuto {
    pub fn generators(&self) -> u32 {
        self.generators
    }

    pub fn pivot(&self) -> u32 {
        self.pivot
    }

    pub fn shift(&self) -> &Element {
        &self.shift
    }

    pub fn spec(&self) -> EndoSpec {
        let images = (1..=self.generators)
            .map(|j| {
                if j == self.pivot {
                    reduce(&Term::prod(Term::var(j), self.shift.term().clone()))
                } else {
                    Element::generator(j)
                }
            })
            .collect();
        EndoSpec::new(self.generators, images).expect("images lie in the model")
    }

    pub fn apply(&self, e: &Element) -> Result<Element> {
        self.spec().apply(e)
    }
}

impl fmt::Display for ElementaryAuto {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x{} -> x{}*{}", self.pivot, self.pivot, self.shift)
    }
}

/// The elementary automorphism with the given pivot and shift. The shift is
/// reduced first and must not contain `x_pivot`.
pub fn elementary(m: &FreeModel, pivot: u32, shift: &Term) -> Result<ElementaryAuto> {
    m.generator(pivot)?;
    m.check_term(shift)?;
    let shift = reduce(shift);
    if shift.term().contains_var(pivot) {
        return Err(Error::PivotInShift {
            pivot,
            shift: shift.to_string(),
        });
    }
    Ok(ElementaryAuto {
        generators: m.num_generators(),
        pivot,
        shift,
    })
}

/// Every elementary automorphism of `m` whose shift has rank at most
/// `max_shift_rank`.
pub fn all_elementary(m: &FreeModel, max_shift_rank: usize) -> Result<Vec<ElementaryAuto>> {
    let n = m.num_generators();
    let shifts = enumerate_reduced(n, max_shift_rank, m.limits())?;
    let mut out = Vec::new();
    for pivot in 1..=n {
        for s in shifts.iter().filter(|s| !s.term().contains_var(pivot)) {
            out.push(ElementaryAuto {
                generators: n,
                pivot,
                shift: s.clone(),
            });
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Irreducibility {
    Irreducible,
    /// `t_index ~ r(t̄) · s`, with `x_j` in `r` standing for `t_j`.
    Witness { index: u32, r: Term, s: Element },
}

/// Express `u` as `r(t̄)` up to commutativity, preferring whole images.
fn match_images(u: &Term, images: &[Element]) -> Option<Term> {
    if let Some(j) = images.iter().position(|t| t.term() == u) {
        return Some(Term::var(j as u32 + 1));
    }
    let (p, q) = u.as_prod()?;
    Some(Term::prod(match_images(p, images)?, match_images(q, images)?))
}

/// Look for `i`, `r`, `s` with `t_i ~ r(t̄) · s`.
///
/// Images are canonical, so `r(t̄) ~ u` for a factor `u` of `t_i` holds
/// exactly when `u` is built from whole images by products; the search is a
/// structural match and needs no bound.
pub fn is_irreducible(images: &[Element]) -> Irreducibility {
    for (i, t) in images.iter().enumerate() {
        let Some((u, v)) = t.term().as_prod() else {
            continue;
        };
        for (factor, other) in [(u, v), (v, u)] {
            if let Some(r) = match_images(factor, images) {
                return Irreducibility::Witness {
                    index: i as u32 + 1,
                    r,
                    s: Element::new(other.clone()).expect("factors of reduced terms are reduced"),
                };
            }
        }
    }
    Irreducibility::Irreducible
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Preservation {
    pub checked: usize,
    /// First reduced term (in enumeration order) whose image is not reduced.
    pub violation: Option<Term>,
}

impl Preservation {
    pub fn holds(&self) -> bool {
        self.violation.is_none()
    }
}

/// Substitute the images into every reduced term of rank at most
/// `rank_bound` and check that the results are reduced.
pub fn preserves_reduced(images: &[Element], rank_bound: usize, limits: &Limits) -> Result<Preservation> {
    let n = u32::try_from(images.len())
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| Error::Precondition("need at least one image".into()))?;
    let terms: Vec<Term> = images.iter().map(|e| e.term().clone()).collect();
    let all = enumerate_reduced(n, rank_bound, limits)?;
    let mut checked = 0;
    for r in all.iter() {
        checked += 1;
        if !is_reduced(&r.term().substitute_all(&terms)) {
            return Ok(Preservation {
                checked,
                violation: Some(r.term().clone()),
            });
        }
    }
    Ok(Preservation {
        checked,
        violation: None,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TameDecomposition {
    pub factors: Vec<ElementaryAuto>,
    /// Total image length before each descent step, then at the end.
    pub length_trace: Vec<usize>,
}

impl TameDecomposition {
    /// `f1 ∘ … ∘ fm` as a spec.
    pub fn compose(&self, generators: u32) -> Result<EndoSpec> {
        let mut acc = EndoSpec::identity(generators);
        for f in &self.factors {
            acc = acc.compose(&f.spec())?;
        }
        Ok(acc)
    }
}

fn total_len(images: &[Element]) -> usize {
    images.iter().map(Element::len).sum()
}

/// Write an automorphism as a composition of elementary automorphisms.
///
/// While some image is not a variable, a witness `t_i ~ r(t̄)·s` lets the
/// image `t_i` be replaced by `s` through composition with the elementary
/// automorphism `a_i ↦ a_i·r(ā)`; the total image length strictly drops.
/// The remaining permutation is split into transpositions, each written as
/// `g∘h∘g` with `g: a_i ↦ a_i·a_j` and `h: a_j ↦ a_j·a_i`.
pub fn tame_decompose(m: &FreeModel, spec: &EndoSpec) -> Result<TameDecomposition> {
    let n = m.num_generators();
    if spec.generators() != n {
        return Err(Error::ArityMismatch {
            expected: n as usize,
            found: spec.generators() as usize,
        });
    }
    let mut images = spec.images().to_vec();
    let mut shifts: Vec<ElementaryAuto> = Vec::new();
    let mut trace = vec![total_len(&images)];

    while images.iter().any(|e| !e.term().is_var()) {
        let Irreducibility::Witness { index, r, s } = is_irreducible(&images) else {
            return Err(Error::NotAutomorphism(format!(
                "images [{}] are irreducible but not all variables",
                images.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ")
            )));
        };
        let h = elementary(m, index, &r)?;
        let i = index as usize - 1;
        let before = total_len(&images);
        let next = reduce(&Term::prod(
            images[i].term().clone(),
            r.substitute_all(&images.iter().map(|e| e.term().clone()).collect::<Vec<_>>()),
        ));
        debug_assert_eq!(next, s);
        images[i] = next;
        let after = total_len(&images);
        if after >= before {
            return Err(Error::DescentViolated { before, after });
        }
        trace.push(after);
        shifts.push(h);
    }

    let mut perm: Vec<u32> = images
        .iter()
        .map(|e| e.term().as_var().expect("all images are variables").index())
        .collect();
    {
        let mut seen = vec![false; n as usize];
        for &p in &perm {
            if std::mem::replace(&mut seen[p as usize - 1], true) {
                return Err(Error::NotAutomorphism(format!(
                    "generator x{p} is the image of two generators"
                )));
            }
        }
    }
    let mut transpositions = Vec::new();
    for i in 1..=n {
        if perm[i as usize - 1] == i {
            continue;
        }
        let j = perm.iter().position(|&p| p == i).expect("a permutation") as u32 + 1;
        perm.swap(i as usize - 1, j as usize - 1);
        transpositions.push((i, j));
    }

    let mut factors = Vec::new();
    for &(i, j) in transpositions.iter().rev() {
        let g = elementary(m, i, &Term::var(j))?;
        let h = elementary(m, j, &Term::var(i))?;
        factors.extend([g.clone(), h, g]);
    }
    factors.extend(shifts.into_iter().rev());

    let dec = TameDecomposition {
        factors,
        length_trace: trace,
    };
    if !verify_tame(m, &dec, spec) {
        return Err(Error::Precondition(
            "decomposition failed to reproduce the automorphism".into(),
        ));
    }
    Ok(dec)
}

/// Compose the factors and compare the generator images with `spec`.
pub fn verify_tame(m: &FreeModel, dec: &TameDecomposition, spec: &EndoSpec) -> bool {
    if spec.generators() != m.num_generators()
        || dec.factors.iter().any(|f| f.generators() != m.num_generators())
    {
        return false;
    }
    dec.compose(m.num_generators())
        .is_ok_and(|composed| composed.images() == spec.images())
}
