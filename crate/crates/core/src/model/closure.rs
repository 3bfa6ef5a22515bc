use std::collections::{HashMap, HashSet, VecDeque};

use super::{FreeModel, SteinerQuasigroup};
use crate::error::{Error, Result};
use crate::term::{Element, Term, TermKind};

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct ClosureOptions {
    /// Longest element kept; `None` means four times the longest generator.
    pub length_cap: Option<usize>,
    /// Working-set limit; `None` uses the model's limit.
    pub max_elements: Option<usize>,
}

impl ClosureOptions {
    pub fn with_length_cap(cap: usize) -> Self {
        ClosureOptions {
            length_cap: Some(cap),
            max_elements: None,
        }
    }
}

/// Result of a bounded subalgebra closure.
///
/// Products longer than the length cap are discarded. When nothing was
/// discarded the closure reached a true fixpoint and is the whole generated
/// subalgebra.
#[derive(Debug, Clone)]
pub struct Closure {
    elements: Vec<Element>,
    derivations: HashMap<Element, Term>,
    saturated: bool,
    length_cap: usize,
}

impl Closure {
    pub fn contains(&self, e: &Element) -> bool {
        self.derivations.contains_key(e)
    }

    /// A term over the generator positions (`x_i` is the `i`-th generator)
    /// whose value is `e`.
    pub fn derivation(&self, e: &Element) -> Option<&Term> {
        self.derivations.get(e)
    }

    /// Elements in discovery order.
    pub fn elements(&self) -> &[Element] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn saturated(&self) -> bool {
        self.saturated
    }

    pub fn length_cap(&self) -> usize {
        self.length_cap
    }
}

struct State {
    cap: usize,
    max_elements: usize,
    derivations: HashMap<Element, Term>,
    order: Vec<Element>,
    parents: HashMap<Element, Vec<Element>>,
    queue: VecDeque<Element>,
    discarded: bool,
}

impl State {
    fn add(&mut self, e: Element, derivation: Term) -> Result<()> {
        if e.len() > self.cap {
            self.discarded = true;
            return Ok(());
        }
        if self.derivations.contains_key(&e) {
            return Ok(());
        }
        if self.derivations.len() >= self.max_elements {
            return Err(Error::ResourceCap {
                what: "closure working set",
                limit: self.max_elements,
            });
        }
        if let TermKind::Prod(l, r) = e.term().kind() {
            for child in [l, r] {
                self.parents
                    .entry(Element::new_unchecked(child.clone()))
                    .or_default()
                    .push(e.clone());
            }
        }
        self.derivations.insert(e.clone(), derivation);
        self.order.push(e.clone());
        self.queue.push_back(e);
        Ok(())
    }
}

fn children(e: &Element) -> Option<[Element; 2]> {
    e.term().as_prod().map(|(l, r)| {
        [
            Element::new_unchecked(l.clone()),
            Element::new_unchecked(r.clone()),
        ]
    })
}

/// Worklist closure, indexed by element length.
///
/// For a popped element `a` only partners `b` with `len(a) + len(b) <= cap`
/// can give a new in-window product, except when the product cancels, and a
/// product of reduced elements cancels only when one is a child of the other.
/// Those partners are found through the child and parent indices, so the work
/// stays proportional to the size of the result.
pub(super) fn close(model: &FreeModel, gens: &[Element], opts: ClosureOptions) -> Result<Closure> {
    if gens.is_empty() {
        return Err(Error::Precondition("closure needs at least one generator".into()));
    }
    let cap = opts
        .length_cap
        .unwrap_or_else(|| FreeModel::default_length_cap(gens));
    let mut st = State {
        cap,
        max_elements: opts
            .max_elements
            .unwrap_or(model.limits().max_closure_elements),
        derivations: HashMap::new(),
        order: Vec::new(),
        parents: HashMap::new(),
        queue: VecDeque::new(),
        discarded: false,
    };
    for (i, g) in gens.iter().enumerate() {
        st.add(g.clone(), Term::var(i as u32 + 1))?;
    }

    let mut done_by_len: Vec<Vec<Element>> = vec![Vec::new(); cap + 1];
    let mut done: HashSet<Element> = HashSet::new();

    while let Some(a) = st.queue.pop_front() {
        let la = a.len();
        let room = cap - la;
        let da = st.derivations[&a].clone();

        for bucket in done_by_len.iter().take(room + 1).skip(1) {
            for b in bucket {
                let c = model.op(&a, b);
                let d = Term::prod(da.clone(), st.derivations[b].clone());
                st.add(c, d)?;
            }
        }

        // partners beyond the window: only cancelling ones stay in range
        let mut rescued = 0usize;
        let mut partners: Vec<Element> = Vec::new();
        if let Some(kids) = children(&a) {
            partners.extend(kids.into_iter().filter(|k| done.contains(k) && k.len() > room));
        }
        if let Some(ps) = st.parents.get(&a) {
            partners.extend(ps.iter().filter(|p| done.contains(*p) && p.len() > room).cloned());
        }
        for b in partners {
            rescued += 1;
            let c = model.op(&a, &b);
            let d = Term::prod(da.clone(), st.derivations[&b].clone());
            st.add(c, d)?;
        }
        let beyond: usize = done_by_len.iter().skip(room + 1).map(Vec::len).sum();
        if beyond > rescued {
            st.discarded = true;
        }

        done.insert(a.clone());
        done_by_len[la].push(a);
    }

    Ok(Closure {
        elements: st.order,
        derivations: st.derivations,
        saturated: !st.discarded,
        length_cap: cap,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{evaluate, Assignment};
    use crate::term::{parse, reduce};

    fn el(s: &str) -> Element {
        reduce(&parse(s).unwrap())
    }

    /// Naive closure: all pairwise products until nothing new, discarding
    /// long products.
    fn naive(model: &FreeModel, gens: &[Element], cap: usize) -> (HashSet<Element>, bool) {
        let mut set: HashSet<Element> = gens.iter().filter(|g| g.len() <= cap).cloned().collect();
        let mut discarded = set.len() < gens.len();
        loop {
            let items: Vec<Element> = set.iter().cloned().collect();
            let mut grew = false;
            for a in &items {
                for b in &items {
                    let c = model.op(a, b);
                    if c.len() > cap {
                        discarded = true;
                    } else if set.insert(c) {
                        grew = true;
                    }
                }
            }
            if !grew {
                return (set, !discarded);
            }
        }
    }

    #[test]
    fn single_generator_is_saturated() {
        let m = FreeModel::new(3).unwrap();
        let c = m.subalgebra_closure(&[el("x1")], ClosureOptions::default()).unwrap();
        assert_eq!(c.elements(), &[el("x1")]);
        assert!(c.saturated());
    }

    #[test]
    fn cancellation_recovers_generators() {
        let m = FreeModel::new(3).unwrap();
        let c = m
            .subalgebra_closure(&[el("x1*x2"), el("x2")], ClosureOptions::default())
            .unwrap();
        assert!(c.contains(&el("x1")));
        assert!(c.saturated());
        assert_eq!(c.len(), 3);
    }

    #[test]
    fn agrees_with_naive_closure() {
        let m = FreeModel::new(3).unwrap();
        let cases: Vec<(Vec<Element>, usize)> = vec![
            (vec![el("x1"), el("x2"), el("x3")], 4),
            (vec![el("x1"), el("x2"), el("x3")], 5),
            (vec![el("x1*x2"), el("x3")], 6),
            (vec![el("(x1*x2)*x3"), el("x1"), el("x2")], 6),
            (vec![el("(x1*x3)*(x2*x3)"), el("x1"), el("x2")], 8),
        ];
        for (gens, cap) in cases {
            let fast = m
                .subalgebra_closure(&gens, ClosureOptions::with_length_cap(cap))
                .unwrap();
            let (slow, saturated) = naive(&m, &gens, cap);
            let fast_set: HashSet<Element> = fast.elements().iter().cloned().collect();
            assert_eq!(fast_set, slow, "gens {gens:?} cap {cap}");
            assert_eq!(fast.saturated(), saturated);
        }
    }

    #[test]
    fn derivations_evaluate_to_their_elements() {
        let m = FreeModel::new(3).unwrap();
        let gens = vec![el("(x1*x2)*x3"), el("x1"), el("x2")];
        let c = m
            .subalgebra_closure(&gens, ClosureOptions::with_length_cap(7))
            .unwrap();
        let asg = Assignment::new(gens.clone());
        for e in c.elements() {
            let d = c.derivation(e).unwrap();
            assert_eq!(&evaluate(d, &asg, &m).unwrap(), e);
        }
        assert!(c.contains(&el("x3")));
    }

    #[test]
    fn working_set_cap_is_an_error() {
        let m = FreeModel::new(3).unwrap();
        let opts = ClosureOptions {
            length_cap: Some(8),
            max_elements: Some(20),
        };
        assert!(matches!(
            m.subalgebra_closure(&m.generators(), opts),
            Err(Error::ResourceCap { .. })
        ));
    }
}
