use std::collections::{BTreeSet, HashMap};

use super::closure::{self, Closure, ClosureOptions};
use super::{evaluate, Assignment, SteinerQuasigroup};
use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::term::reduce::mul_reduced;
use crate::term::{enumerate_reduced, reduce, Element, Term};

/// The free Steiner quasigroup on `a1..an`, with `a_i` represented by `x_i`.
///
/// Elements are canonical reduced terms over `x1..xn`; multiplication is
/// `reduce(a·b)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FreeModel {
    generators: u32,
    limits: Limits,
}

/// Cumulative levels `S_0 ⊆ S_1 ⊆ … ⊆ S_k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Levels {
    sets: Vec<BTreeSet<Element>>,
}

impl Levels {
    pub fn k(&self) -> usize {
        self.sets.len() - 1
    }

    /// `S_i`.
    pub fn level(&self, i: usize) -> &BTreeSet<Element> {
        &self.sets[i]
    }

    /// `S_i ∖ S_{i-1}` (all of `S_0` for `i = 0`).
    pub fn new_at(&self, i: usize) -> Vec<&Element> {
        match i {
            0 => self.sets[0].iter().collect(),
            _ => self.sets[i].difference(&self.sets[i - 1]).collect(),
        }
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.sets.iter().map(BTreeSet::len).collect()
    }

    /// `S_k` in construction order: by first level, then canonical order.
    pub fn construction_order(&self) -> Vec<&Element> {
        (0..self.sets.len()).flat_map(|i| self.new_at(i)).collect()
    }
}

/// Levels built by repeated products, with the step at which each element
/// first appeared.
#[derive(Debug, Clone)]
pub struct ClosureLevels {
    pub levels: Levels,
    pub first_step: HashMap<Element, usize>,
}

/// Outcome of a bounded search for a dependence witness.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Refutation {
    /// Non-equivalent reduced terms that evaluate equal on the tuple.
    Dependent { left: Term, right: Term },
    /// No witness among reduced terms of rank at most `bound`.
    NoWitnessUpTo(usize),
}

/// The homomorphism determined by images of the generators.
#[derive(Debug, Clone)]
pub struct Hom<'a, T: SteinerQuasigroup> {
    images: Assignment<T::Elem>,
    target: &'a T,
}

impl<T: SteinerQuasigroup> Hom<'_, T> {
    pub fn apply(&self, e: &Element) -> Result<T::Elem> {
        evaluate(e.term(), &self.images, self.target)
    }

    pub fn images(&self) -> &[T::Elem] {
        self.images.values()
    }
}

impl FreeModel {
    pub fn new(generators: u32) -> Result<FreeModel> {
        FreeModel::with_limits(generators, Limits::default())
    }

    pub fn with_limits(generators: u32, limits: Limits) -> Result<FreeModel> {
        if generators == 0 {
            return Err(Error::Precondition("a free model needs at least one generator".into()));
        }
        Ok(FreeModel { generators, limits })
    }

    pub fn num_generators(&self) -> u32 {
        self.generators
    }

    pub fn limits(&self) -> &Limits {
        &self.limits
    }

    /// `a_i`, 1-based.
    pub fn generator(&self, i: u32) -> Result<Element> {
        if i == 0 || i > self.generators {
            return Err(Error::VariableOutOfRange {
                index: i,
                generators: self.generators,
            });
        }
        Ok(Element::generator(i))
    }

    pub fn generators(&self) -> Vec<Element> {
        (1..=self.generators).map(Element::generator).collect()
    }

    pub fn check_term(&self, t: &Term) -> Result<()> {
        let m = t.max_var();
        if m > self.generators {
            return Err(Error::VariableOutOfRange {
                index: m,
                generators: self.generators,
            });
        }
        Ok(())
    }

    pub fn contains(&self, e: &Element) -> bool {
        e.term().max_var() <= self.generators
    }

    /// The element denoted by a term over the generators.
    pub fn element(&self, t: &Term) -> Result<Element> {
        self.check_term(t)?;
        Ok(reduce(t))
    }

    pub fn mul(&self, a: &Element, b: &Element) -> Result<Element> {
        self.check_term(a.term())?;
        self.check_term(b.term())?;
        Ok(self.op(a, b))
    }

    fn check_exhaustive(&self, k: usize) -> Result<()> {
        if self.generators > self.limits.max_exhaustive_generators {
            return Err(Error::ResourceCap {
                what: "generator count for exhaustive operations",
                limit: self.limits.max_exhaustive_generators as usize,
            });
        }
        if k > self.limits.max_rank {
            return Err(Error::ResourceCap {
                what: "requested level",
                limit: self.limits.max_rank,
            });
        }
        Ok(())
    }

    /// `S_0..S_k` from the enumeration of reduced terms by rank.
    pub fn levels(&self, k: usize) -> Result<Levels> {
        self.check_exhaustive(k)?;
        let e = enumerate_reduced(self.generators, k, &self.limits)?;
        let mut sets = Vec::with_capacity(k + 1);
        let mut acc = BTreeSet::new();
        for group in e.by_rank {
            acc.extend(group);
            sets.push(acc.clone());
        }
        Ok(Levels { sets })
    }

    /// `S_0 = {a1..an}`, `S_{i+1} = {a·b | a, b ∈ S_i}`.
    pub fn levels_by_closure(&self, k: usize) -> Result<ClosureLevels> {
        self.check_exhaustive(k)?;
        let mut current: BTreeSet<Element> = self.generators().into_iter().collect();
        let mut first_step: HashMap<Element, usize> =
            current.iter().map(|e| (e.clone(), 0)).collect();
        let mut sets = vec![current.clone()];
        for step in 1..=k {
            let items: Vec<&Element> = current.iter().collect();
            let mut next = current.clone();
            for (i, a) in items.iter().enumerate() {
                for b in &items[i + 1..] {
                    let c = self.op(a, b);
                    if next.insert(c.clone()) {
                        first_step.insert(c, step);
                        if next.len() > self.limits.max_classes {
                            return Err(Error::ResourceCap {
                                what: "level size",
                                limit: self.limits.max_classes,
                            });
                        }
                    }
                }
            }
            sets.push(next.clone());
            current = next;
        }
        Ok(ClosureLevels {
            levels: Levels { sets },
            first_step,
        })
    }

    /// The level of an element over the base, which is its rank.
    pub fn level_of(&self, e: &Element) -> usize {
        e.rank()
    }

    /// Bounded closure of `gens` under multiplication; see [`Closure`].
    pub fn subalgebra_closure(&self, gens: &[Element], opts: ClosureOptions) -> Result<Closure> {
        for g in gens {
            self.check_term(g.term())?;
        }
        closure::close(self, gens, opts)
    }

    /// Default length window: four times the longest generator.
    pub fn default_length_cap(gens: &[Element]) -> usize {
        4 * gens.iter().map(Element::len).max().unwrap_or(1)
    }

    /// Search for two non-equivalent reduced terms of rank at most
    /// `rank_bound` taking the same value on `elems`.
    ///
    /// A `Dependent` answer is re-verified by evaluation before it is
    /// returned; `NoWitnessUpTo` only says the search space was exhausted.
    pub fn independence_refute(&self, elems: &[Element], rank_bound: usize) -> Result<Refutation> {
        for e in elems {
            self.check_term(e.term())?;
        }
        if elems.is_empty() {
            return Ok(Refutation::NoWitnessUpTo(rank_bound));
        }
        let arity = u32::try_from(elems.len()).map_err(|_| Error::ResourceCap {
            what: "tuple length",
            limit: u32::MAX as usize,
        })?;
        let terms = enumerate_reduced(arity, rank_bound, &self.limits)?;
        let asg = Assignment::new(elems.to_vec());
        let mut seen: HashMap<Element, &Term> = HashMap::new();
        for t in terms.iter() {
            let value = evaluate(t.term(), &asg, self)?;
            if let Some(&prev) = seen.get(&value) {
                debug_assert_eq!(evaluate(prev, &asg, self)?, value);
                return Ok(Refutation::Dependent {
                    left: prev.clone(),
                    right: t.term().clone(),
                });
            }
            seen.insert(value, t.term());
        }
        Ok(Refutation::NoWitnessUpTo(rank_bound))
    }

    /// The unique homomorphism sending `a_i` to `images[i - 1]`.
    pub fn extend_hom<'a, T: SteinerQuasigroup>(
        &self,
        images: Vec<T::Elem>,
        target: &'a T,
    ) -> Result<Hom<'a, T>> {
        if images.len() != self.generators as usize {
            return Err(Error::ArityMismatch {
                expected: self.generators as usize,
                found: images.len(),
            });
        }
        Ok(Hom {
            images: Assignment::new(images),
            target,
        })
    }
}

impl SteinerQuasigroup for FreeModel {
    type Elem = Element;

    fn op(&self, a: &Element, b: &Element) -> Element {
        Element::new_unchecked(mul_reduced(a.term().clone(), b.term().clone()))
    }
}
