use super::reduce::cancels;
use super::{Element, Term};
use crate::error::{Error, Result};
use crate::limits::Limits;

/// Reduced term classes grouped by exact rank, each group in canonical order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Enumeration {
    pub num_vars: u32,
    pub by_rank: Vec<Vec<Element>>,
}

impl Enumeration {
    pub fn max_rank(&self) -> usize {
        self.by_rank.len() - 1
    }

    pub fn count(&self) -> usize {
        self.by_rank.iter().map(Vec::len).sum()
    }

    /// Number of classes of each exact rank.
    pub fn counts(&self) -> Vec<usize> {
        self.by_rank.iter().map(Vec::len).collect()
    }

    /// All classes, rank by rank.
    pub fn iter(&self) -> impl Iterator<Item = &Element> {
        self.by_rank.iter().flatten()
    }

    pub fn into_vec(self) -> Vec<Element> {
        self.by_rank.into_iter().flatten().collect()
    }
}

/// All `~`-classes of reduced terms over `x1..x_num_vars` with rank at most
/// `max_rank`, as canonical representatives.
///
/// Rank-`k` classes are exactly the reduced products `a·b` of classes of rank
/// below `k` with at least one factor of rank `k - 1`; a product of reduced
/// terms is reduced iff it avoids the three forbidden shapes at the top.
pub fn enumerate_reduced(num_vars: u32, max_rank: usize, limits: &Limits) -> Result<Enumeration> {
    if num_vars == 0 {
        return Err(Error::Precondition("num_vars must be at least 1".into()));
    }
    if max_rank > limits.max_rank {
        return Err(Error::ResourceCap {
            what: "requested rank",
            limit: limits.max_rank,
        });
    }
    if num_vars as usize > limits.max_classes {
        return Err(Error::ResourceCap {
            what: "term class count",
            limit: limits.max_classes,
        });
    }
    let vars: Vec<Element> = (1..=num_vars).map(Element::generator).collect();
    let mut total = vars.len();
    let mut by_rank = vec![vars];
    for k in 1..=max_rank {
        let top = &by_rank[k - 1];
        let lower: Vec<&Element> = by_rank[..k - 1].iter().flatten().collect();
        let mut fresh = Vec::new();
        let mut push = |a: &Term, b: &Term| -> Result<()> {
            if !cancels(a, b) {
                total += 1;
                if total > limits.max_classes {
                    return Err(Error::ResourceCap {
                        what: "term class count",
                        limit: limits.max_classes,
                    });
                }
                fresh.push(Element::new_unchecked(Term::prod_ordered(a.clone(), b.clone())));
            }
            Ok(())
        };
        for (i, a) in top.iter().enumerate() {
            for b in &top[i + 1..] {
                push(a.term(), b.term())?;
            }
            for b in &lower {
                push(a.term(), b.term())?;
            }
        }
        fresh.sort_unstable();
        by_rank.push(fresh);
    }
    Ok(Enumeration { num_vars, by_rank })
}
