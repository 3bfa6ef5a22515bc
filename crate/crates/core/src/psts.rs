//! Finite partial Steiner triple systems.
//!
//! Text format, one directive per line:
//!
//! ```text
//! # comment
//! points: a b c d
//! block: a b c
//! ```
//!
//! Several `points:` lines accumulate. Point names are arbitrary tokens
//! without whitespace.

use std::collections::{BTreeSet, HashMap};
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::model::{FiniteModel, FreeModel, SteinerQuasigroup};

/// Points and blocks as read from text, before validation.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct RawSystem {
    pub points: Vec<String>,
    pub blocks: Vec<[String; 3]>,
}

impl RawSystem {
    pub fn parse(text: &str) -> Result<RawSystem> {
        let mut raw = RawSystem::default();
        for (i, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, rest) = line.split_once(':').ok_or_else(|| Error::Format {
                line: i + 1,
                msg: format!("expected `points:` or `block:`, found {line:?}"),
            })?;
            let names: Vec<String> = rest.split_whitespace().map(str::to_string).collect();
            match key.trim() {
                "points" => raw.points.extend(names),
                "block" => {
                    let block: [String; 3] = names.try_into().map_err(|v: Vec<String>| Error::Format {
                        line: i + 1,
                        msg: format!("a block has 3 points, found {}", v.len()),
                    })?;
                    raw.blocks.push(block);
                }
                other => {
                    return Err(Error::Format {
                        line: i + 1,
                        msg: format!("unknown directive {other:?}"),
                    })
                }
            }
        }
        Ok(raw)
    }
}

/// A validated partial Steiner triple system: every block has three distinct
/// points and every pair of points lies in at most one block.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartialSts {
    points: Vec<String>,
    index: HashMap<String, usize>,
    /// Sorted point triples, in input order.
    blocks: Vec<[usize; 3]>,
}

impl PartialSts {
    pub fn validate(raw: &RawSystem) -> Result<PartialSts> {
        let mut index = HashMap::new();
        for (i, p) in raw.points.iter().enumerate() {
            if index.insert(p.clone(), i).is_some() {
                return Err(Error::DuplicatePoint(p.clone()));
            }
        }
        let mut blocks = Vec::with_capacity(raw.blocks.len());
        let mut pair_owner: HashMap<(usize, usize), usize> = HashMap::new();
        for (bi, block) in raw.blocks.iter().enumerate() {
            let mut ids = [0usize; 3];
            for (slot, name) in ids.iter_mut().zip(block) {
                *slot = *index.get(name).ok_or_else(|| Error::UnknownPoint {
                    point: name.clone(),
                    block: block.clone(),
                })?;
            }
            ids.sort_unstable();
            if ids[0] == ids[1] || ids[1] == ids[2] {
                return Err(Error::RepeatedPoint(block.clone()));
            }
            for (a, b) in [(ids[0], ids[1]), (ids[0], ids[2]), (ids[1], ids[2])] {
                if let Some(&prev) = pair_owner.get(&(a, b)) {
                    return Err(Error::DuplicatePair {
                        a: raw.points[a].clone(),
                        b: raw.points[b].clone(),
                        first: raw.blocks[prev].clone(),
                        second: block.clone(),
                    });
                }
                pair_owner.insert((a, b), bi);
            }
            blocks.push(ids);
        }
        Ok(PartialSts {
            points: raw.points.clone(),
            index,
            blocks,
        })
    }

    pub fn parse(text: &str) -> Result<PartialSts> {
        PartialSts::validate(&RawSystem::parse(text)?)
    }

    pub fn empty() -> PartialSts {
        PartialSts::validate(&RawSystem::default()).unwrap()
    }

    pub fn points(&self) -> &[String] {
        &self.points
    }

    pub fn num_points(&self) -> usize {
        self.points.len()
    }

    pub fn name(&self, p: usize) -> &str {
        &self.points[p]
    }

    pub fn point(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    pub fn blocks(&self) -> &[[usize; 3]] {
        &self.blocks
    }

    /// Predimension: number of points minus number of blocks.
    pub fn delta(&self) -> i64 {
        self.points.len() as i64 - self.blocks.len() as i64
    }

    /// Blocks containing point `p`.
    pub fn blocks_of(&self, p: usize) -> impl Iterator<Item = &[usize; 3]> {
        self.blocks.iter().filter(move |b| b.contains(&p))
    }

    /// The subsystem induced on `subset`: those points, and the blocks lying
    /// entirely inside them.
    pub fn induced(&self, subset: &[usize]) -> PartialSts {
        let keep: BTreeSet<usize> = subset.iter().copied().collect();
        let raw = RawSystem {
            points: keep.iter().map(|&p| self.points[p].clone()).collect(),
            blocks: self
                .blocks
                .iter()
                .filter(|b| b.iter().all(|p| keep.contains(p)))
                .map(|b| b.map(|p| self.points[p].clone()))
                .collect(),
        };
        PartialSts::validate(&raw).expect("a subsystem of a valid system is valid")
    }

    /// Same points, a subset of the blocks given by index.
    pub fn with_blocks(&self, block_ids: &[usize]) -> PartialSts {
        PartialSts {
            points: self.points.clone(),
            index: self.index.clone(),
            blocks: block_ids.iter().map(|&i| self.blocks[i]).collect(),
        }
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "points: {}", self.points.join(" "));
        for b in &self.blocks {
            let _ = writeln!(
                out,
                "block: {} {} {}",
                self.points[b[0]], self.points[b[1]], self.points[b[2]]
            );
        }
        out
    }
}

/// A linear order of all points in which each point lies in at most one block
/// whose other two points come earlier.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HfOrdering {
    order: Vec<usize>,
}

impl HfOrdering {
    /// Check `order` against the definition, point by point.
    pub fn verify(sts: &PartialSts, order: Vec<usize>) -> Result<HfOrdering> {
        let n = sts.num_points();
        let mut pos = vec![usize::MAX; n];
        for (i, &p) in order.iter().enumerate() {
            if p >= n || pos[p] != usize::MAX {
                return Err(Error::InvalidOrdering("not a permutation of the points".into()));
            }
            pos[p] = i;
        }
        if order.len() != n {
            return Err(Error::InvalidOrdering("not a permutation of the points".into()));
        }
        for &p in &order {
            let earlier = sts
                .blocks_of(p)
                .filter(|b| b.iter().all(|&q| q == p || pos[q] < pos[p]))
                .count();
            if earlier > 1 {
                return Err(Error::InvalidOrdering(format!(
                    "point {} closes {earlier} blocks of earlier points",
                    sts.name(p)
                )));
            }
        }
        Ok(HfOrdering { order })
    }

    pub fn from_names(sts: &PartialSts, names: &[&str]) -> Result<HfOrdering> {
        let order = names
            .iter()
            .map(|n| {
                sts.point(n)
                    .ok_or_else(|| Error::InvalidOrdering(format!("unknown point {n:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        HfOrdering::verify(sts, order)
    }

    pub fn order(&self) -> &[usize] {
        &self.order
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum HfResult {
    Ordering(HfOrdering),
    /// A nonempty set of points each lying in at least two blocks inside it.
    Confined(Vec<usize>),
}

/// Greedy reverse construction: repeatedly remove the least-named point lying
/// in at most one block of what remains. If everything is removed, the
/// reversed removal order is an HF-ordering; otherwise the residue is a
/// confined configuration.
pub fn hf_order(sts: &PartialSts) -> HfResult {
    let n = sts.num_points();
    let mut alive = vec![true; n];
    let mut live_blocks = vec![0usize; n];
    let mut incident: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (bi, b) in sts.blocks().iter().enumerate() {
        for &p in b {
            live_blocks[p] += 1;
            incident[p].push(bi);
        }
    }
    let mut block_alive = vec![true; sts.blocks().len()];
    let mut by_name: Vec<usize> = (0..n).collect();
    by_name.sort_by(|&a, &b| sts.name(a).cmp(sts.name(b)));

    let mut removed = Vec::with_capacity(n);
    while removed.len() < n {
        let Some(&p) = by_name.iter().find(|&&p| alive[p] && live_blocks[p] <= 1) else {
            let residue = (0..n).filter(|&p| alive[p]).collect();
            return HfResult::Confined(residue);
        };
        alive[p] = false;
        for &bi in &incident[p] {
            if block_alive[bi] {
                block_alive[bi] = false;
                for &q in &sts.blocks()[bi] {
                    live_blocks[q] -= 1;
                }
            }
        }
        removed.push(p);
    }
    removed.reverse();
    let ord = HfOrdering::verify(sts, removed).expect("greedy removal order is an HF-ordering");
    HfResult::Ordering(ord)
}

/// Points that are not the product of two earlier points.
pub fn hf_base(sts: &PartialSts, ord: &HfOrdering) -> Vec<usize> {
    let mut pos = vec![0; sts.num_points()];
    for (i, &p) in ord.order().iter().enumerate() {
        pos[p] = i;
    }
    ord.order()
        .iter()
        .copied()
        .filter(|&p| {
            !sts.blocks_of(p)
                .any(|b| b.iter().all(|&q| q == p || pos[q] < pos[p]))
        })
        .collect()
}

/// Predimension of each prefix of the ordering, from the empty prefix on.
pub fn prefix_deltas(sts: &PartialSts, ord: &HfOrdering) -> Vec<i64> {
    let mut pos = vec![0; sts.num_points()];
    for (i, &p) in ord.order().iter().enumerate() {
        pos[p] = i;
    }
    let mut out = vec![0i64];
    let mut delta = 0i64;
    for &p in ord.order() {
        let closed = sts
            .blocks_of(p)
            .filter(|b| b.iter().all(|&q| q == p || pos[q] < pos[p]))
            .count() as i64;
        delta += 1 - closed;
        out.push(delta);
    }
    out
}

/// The partial system induced on the level `S_k` of a free model. Points are
/// named by their printed canonical term and listed in construction order.
pub fn from_free_levels(model: &FreeModel, k: usize) -> Result<PartialSts> {
    let levels = model.levels(k)?;
    let order = levels.construction_order();
    let top = levels.level(k);
    let mut raw = RawSystem {
        points: order.iter().map(|e| e.to_string()).collect(),
        blocks: Vec::new(),
    };
    let mut seen = BTreeSet::new();
    for (i, a) in order.iter().enumerate() {
        for b in &order[i + 1..] {
            let c = model.op(a, b);
            if top.contains(&c) {
                let mut key = [(*a).clone(), (*b).clone(), c];
                key.sort();
                if seen.insert(key.clone()) {
                    raw.blocks.push(key.map(|e| e.to_string()));
                }
            }
        }
    }
    PartialSts::validate(&raw)
}

const FANO: &str = include_str!("../fixtures/fano.psts");
const STS9: &str = include_str!("../fixtures/sts9.psts");

/// The shipped Steiner triple systems of order 7 and 9 with their product
/// tables; both are validated when loaded.
pub fn builtin_sts(order: u32) -> Result<(PartialSts, FiniteModel)> {
    let text = match order {
        7 => FANO,
        9 => STS9,
        other => return Err(Error::UnsupportedOrder(other)),
    };
    let sts = PartialSts::parse(text)?;
    let model = FiniteModel::from_sts(&sts)?;
    Ok((sts, model))
}
