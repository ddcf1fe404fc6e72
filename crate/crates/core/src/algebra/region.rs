use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::{parse_uints, AlgebraError, CanonC};

/// Finite truncation `{(k,l,m) : k ≤ K, l ≤ L, m ≤ M, k+l+m > 0}`; caps are inclusive.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Region {
    pub k_cap: u64,
    pub l_cap: u64,
    pub m_cap: u64,
}

impl Region {
    pub const fn new(k_cap: u64, l_cap: u64, m_cap: u64) -> Self {
        Region { k_cap, l_cap, m_cap }
    }

    pub const fn cube(cap: u64) -> Self {
        Region::new(cap, cap, cap)
    }

    /// Elements in lexicographic `(k, l, m)` order.
    pub fn elements(&self) -> Vec<CanonC> {
        let mut out = Vec::with_capacity(self.len());
        for k in 0..=self.k_cap {
            for l in 0..=self.l_cap {
                for m in 0..=self.m_cap {
                    if let Ok(x) = CanonC::new(k, l, m) {
                        out.push(x);
                    }
                }
            }
        }
        out
    }

    pub fn len(&self) -> usize {
        let n = (self.k_cap as usize + 1) * (self.l_cap as usize + 1) * (self.m_cap as usize + 1);
        n - 1
    }

    /// Only `Region(0,0,0)` is empty.
    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn contains(&self, x: &CanonC) -> bool {
        x.k() <= self.k_cap && x.l() <= self.l_cap && x.m() <= self.m_cap
    }

    /// Every cap raised by `by`.
    pub fn grown(&self, by: u64) -> Region {
        Region::new(self.k_cap + by, self.l_cap + by, self.m_cap + by)
    }
}

impl fmt::Display for Region {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{},{}", self.k_cap, self.l_cap, self.m_cap)
    }
}

impl FromStr for Region {
    type Err = AlgebraError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || AlgebraError::Parse { what: "K,L,M", input: s.to_string() };
        match parse_uints(s).ok_or_else(err)?.as_slice() {
            [k, l, m] => Ok(Region::new(*k, *l, *m)),
            _ => Err(err()),
        }
    }
}

/// `𝒞_{i,j} = { b^i (ab)^p a^j : p ≥ 0 }`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Cell {
    pub i: u64,
    pub j: u64,
}

impl Cell {
    pub const fn new(i: u64, j: u64) -> Self {
        Cell { i, j }
    }

    pub fn contains(&self, x: &CanonC) -> bool {
        x.k() == self.i && x.m() == self.j
    }

    /// The part of the cell that lies inside `r`.
    pub fn within(&self, r: &Region) -> Vec<CanonC> {
        if self.i > r.k_cap || self.j > r.m_cap {
            return Vec::new();
        }
        (0..=r.l_cap).filter_map(|p| CanonC::new(self.i, p, self.j).ok()).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    #[test]
    fn sizes() {
        assert_eq!(Region::new(1, 0, 0).elements(), vec![CanonC::B]);
        assert_eq!(Region::cube(1).elements().len(), 7);
        assert_eq!(Region::cube(4).elements().len(), 124);
        assert_eq!(Region::cube(4).len(), 124);
        assert!(Region::cube(0).elements().is_empty());
        assert!(Region::cube(0).is_empty());
    }

    #[test]
    fn lexicographic_and_distinct() {
        let els = Region::new(2, 3, 1).elements();
        assert!(els.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(els.len(), 3 * 4 * 2 - 1);
    }

    #[test]
    fn cells_partition_region() {
        let r = Region::new(3, 2, 4);
        let mut seen = BTreeSet::new();
        for i in 0..=r.k_cap {
            for j in 0..=r.m_cap {
                for x in Cell::new(i, j).within(&r) {
                    assert!(seen.insert(x), "{x} in two cells");
                    assert_eq!(x.cell(), Cell::new(i, j));
                }
            }
        }
        assert_eq!(seen.len(), r.len());
    }
}
