use std::collections::HashMap;

use super::SteinerQuasigroup;
use crate::error::{Error, Result};
use crate::psts::PartialSts;

/// A finite Steiner quasigroup given by its full product table.
///
/// Elements are point indices `0..size()`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteModel {
    names: Vec<String>,
    index: HashMap<String, usize>,
    table: Vec<usize>,
}

impl FiniteModel {
    /// Build the product table of a complete triple system and check the
    /// quasigroup laws exhaustively.
    pub fn from_sts(sts: &PartialSts) -> Result<FiniteModel> {
        let n = sts.num_points();
        let mut table = vec![usize::MAX; n * n];
        for i in 0..n {
            table[i * n + i] = i;
        }
        for &[a, b, c] in sts.blocks() {
            for (x, y, z) in [(a, b, c), (a, c, b), (b, c, a)] {
                table[x * n + y] = z;
                table[y * n + x] = z;
            }
        }
        for i in 0..n {
            for j in 0..n {
                if table[i * n + j] == usize::MAX {
                    return Err(Error::UncoveredPair(
                        sts.name(i).to_string(),
                        sts.name(j).to_string(),
                    ));
                }
            }
        }
        let model = FiniteModel {
            names: sts.points().to_vec(),
            index: (0..n).map(|i| (sts.name(i).to_string(), i)).collect(),
            table,
        };
        model.check_axioms()?;
        Ok(model)
    }

    fn check_axioms(&self) -> Result<()> {
        let n = self.size();
        for x in 0..n {
            if self.mul(x, x) != x {
                return Err(Error::AxiomViolation(format!("{0}·{0} ≠ {0}", self.names[x])));
            }
            for y in 0..n {
                let xy = self.mul(x, y);
                if xy != self.mul(y, x) {
                    return Err(Error::AxiomViolation(format!(
                        "{}·{} is not commutative",
                        self.names[x], self.names[y]
                    )));
                }
                if self.mul(x, xy) != y {
                    return Err(Error::AxiomViolation(format!(
                        "{0}·({0}·{1}) ≠ {1}",
                        self.names[x], self.names[y]
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn size(&self) -> usize {
        self.names.len()
    }

    pub fn points(&self) -> Vec<usize> {
        (0..self.size()).collect()
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.size() + b]
    }

    pub fn name(&self, p: usize) -> &str {
        &self.names[p]
    }

    pub fn point(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }
}

impl SteinerQuasigroup for FiniteModel {
    type Elem = usize;

    fn op(&self, a: &usize, b: &usize) -> usize {
        self.mul(*a, *b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::psts::{RawSystem, PartialSts};

    #[test]
    fn rejects_partial_system() {
        let raw = RawSystem::parse("points: a b c d\nblock: a b c\n").unwrap();
        let p = PartialSts::validate(&raw).unwrap();
        assert!(matches!(FiniteModel::from_sts(&p), Err(Error::UncoveredPair(..))));
    }

    #[test]
    fn order_three_system() {
        let raw = RawSystem::parse("points: a b c\nblock: a b c\n").unwrap();
        let p = PartialSts::validate(&raw).unwrap();
        let m = FiniteModel::from_sts(&p).unwrap();
        let (a, b, c) = (m.point("a").unwrap(), m.point("b").unwrap(), m.point("c").unwrap());
        assert_eq!(m.mul(a, b), c);
        assert_eq!(m.mul(c, c), c);
    }
}
