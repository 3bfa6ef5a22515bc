//! Oracles and generators shared by the integration tests. Nothing here calls
//! the library routines it is used to check.

#![allow(dead_code)]

use std::collections::HashSet;

use rand::Rng;
use steinerq::psts::{PartialSts, RawSystem};
use steinerq::Term;

/// A uniformly shaped random term with `len` leaves over `x1..x_vars`.
pub fn random_term<R: Rng>(rng: &mut R, len: usize, vars: u32) -> Term {
    if len == 1 {
        return Term::var(rng.gen_range(1..=vars));
    }
    let left = rng.gen_range(1..len);
    Term::prod(random_term(rng, left, vars), random_term(rng, len - left, vars))
}

/// Every point subset (as a bitmask over point indices) in which each point
/// lies in at least two blocks inside the subset.
pub fn confined_subsets(sts: &PartialSts) -> Vec<u32> {
    let n = sts.num_points();
    assert!(n <= 20);
    let masks: Vec<u32> = sts
        .blocks()
        .iter()
        .map(|b| b.iter().fold(0u32, |m, &p| m | 1 << p))
        .collect();
    let mut out = Vec::new();
    for subset in 1u32..(1 << n) {
        let inside: Vec<u32> = masks.iter().copied().filter(|m| m & !subset == 0).collect();
        let confined = (0..n).filter(|p| subset >> p & 1 == 1).all(|p| {
            inside.iter().filter(|m| *m >> p & 1 == 1).count() >= 2
        });
        if confined {
            out.push(subset);
        }
    }
    out
}

/// A random partial triple system on `points` points: blocks are proposed at
/// random and kept when no pair is covered twice.
pub fn random_partial_sts<R: Rng>(rng: &mut R, points: usize, proposals: usize) -> PartialSts {
    let names: Vec<String> = (0..points).map(|i| format!("p{i}")).collect();
    let mut used: HashSet<(usize, usize)> = HashSet::new();
    let mut blocks = Vec::new();
    for _ in 0..proposals {
        let mut b = [0usize; 3];
        for slot in &mut b {
            *slot = rng.gen_range(0..points);
        }
        b.sort_unstable();
        if b[0] == b[1] || b[1] == b[2] {
            continue;
        }
        let pairs = [(b[0], b[1]), (b[0], b[2]), (b[1], b[2])];
        if pairs.iter().any(|p| used.contains(p)) {
            continue;
        }
        used.extend(pairs);
        blocks.push(b.map(|p| names[p].clone()));
    }
    PartialSts::validate(&RawSystem {
        points: names,
        blocks,
    })
    .expect("generated without repeated pairs")
}

/// The Fano plane written out independently of the shipped fixture.
pub const FANO_BLOCKS: [[u32; 3]; 7] = [
    [1, 2, 3],
    [1, 4, 5],
    [1, 6, 7],
    [2, 4, 6],
    [2, 5, 7],
    [3, 4, 7],
    [3, 5, 6],
];

/// Product in the Fano plane from the block list above, points `1..=7`.
pub fn fano_mul(a: u32, b: u32) -> u32 {
    if a == b {
        return a;
    }
    let blk = FANO_BLOCKS
        .iter()
        .find(|bl| bl.contains(&a) && bl.contains(&b))
        .expect("every pair lies in a block");
    blk.iter().copied().find(|&c| c != a && c != b).unwrap()
}

/// Fold a term over points `1..=7` of the Fano plane.
pub fn fano_eval(t: &Term, asg: &[u32]) -> u32 {
    match t.as_prod() {
        None => asg[t.as_var().unwrap().index() as usize - 1],
        Some((l, r)) => fano_mul(fano_eval(l, asg), fano_eval(r, asg)),
    }
}
