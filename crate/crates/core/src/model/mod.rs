//! Steiner quasigroup models: the free model over canonical reduced terms and
//! finite models given by product tables.

mod closure;
mod finite;
mod free;

use crate::error::{Error, Result};
use crate::term::{Term, TermKind};

pub use closure::{Closure, ClosureOptions};
pub use finite::FiniteModel;
pub use free::{ClosureLevels, FreeModel, Hom, Levels, Refutation};

/// A Steiner quasigroup: commutative, idempotent, `x·(x·y) = y`.
pub trait SteinerQuasigroup {
    type Elem: Clone + Eq + std::hash::Hash + std::fmt::Debug;

    fn op(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
}

/// Values for the variables of a term: `x_i ↦ values[i - 1]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Assignment<E> {
    values: Vec<E>,
}

impl<E> Assignment<E> {
    pub fn new(values: Vec<E>) -> Self {
        Assignment { values }
    }

    pub fn get(&self, index: u32) -> Option<&E> {
        (index as usize).checked_sub(1).and_then(|i| self.values.get(i))
    }

    pub fn values(&self) -> &[E] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

impl<E> From<Vec<E>> for Assignment<E> {
    fn from(values: Vec<E>) -> Self {
        Assignment::new(values)
    }
}

/// Structural fold of `t` with the model's product.
pub fn evaluate<M: SteinerQuasigroup>(
    t: &Term,
    asg: &Assignment<M::Elem>,
    model: &M,
) -> Result<M::Elem> {
    match t.kind() {
        TermKind::Var(v) => asg
            .get(v.index())
            .cloned()
            .ok_or(Error::UnassignedVariable(v.index())),
        TermKind::Prod(l, r) => {
            let a = evaluate(l, asg, model)?;
            let b = evaluate(r, asg, model)?;
            Ok(model.op(&a, &b))
        }
    }
}

/// Calls `f` with every assignment of `arity` variables into `points`, in
/// lexicographic order.
pub fn for_each_assignment<E: Clone>(points: &[E], arity: usize, mut f: impl FnMut(&Assignment<E>)) {
    if points.is_empty() && arity > 0 {
        return;
    }
    let mut idx = vec![0usize; arity];
    loop {
        let asg = Assignment::new(idx.iter().map(|&i| points[i].clone()).collect());
        f(&asg);
        let mut pos = arity;
        loop {
            if pos == 0 {
                return;
            }
            pos -= 1;
            idx[pos] += 1;
            if idx[pos] < points.len() {
                break;
            }
            idx[pos] = 0;
        }
    }
}
