//! Closed-form arithmetic in 𝒞 and ℬ(a,b).

use std::cmp::Ordering;
use std::fmt;
use std::ops::Mul;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub mod formulas;
pub mod green;
pub mod region;
pub mod solve;

pub use green::{green_witness, h_related, simple_witness, GreenSide, WitnessPair};
pub use region::{Cell, Region};
pub use solve::{solve_equation, solve_with_margin, EquationShape, Solutions};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("k + l + m must be positive (𝒞 has no identity)")]
    ZeroTriple,
    #[error("exponent overflow")]
    Overflow,
    #[error("zero exponent: 𝒞 has no identity")]
    ZeroExponent,
    #[error("cannot parse {what} from {input:?}")]
    Parse { what: &'static str, input: String },
}

/// The element `b^k (ab)^l a^m` of 𝒞.
///
/// Fields are private so that `k + l + m > 0` always holds.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonC {
    k: u64,
    l: u64,
    m: u64,
}

impl CanonC {
    pub const A: CanonC = CanonC { k: 0, l: 0, m: 1 };
    pub const B: CanonC = CanonC { k: 1, l: 0, m: 0 };
    pub const AB: CanonC = CanonC { k: 0, l: 1, m: 0 };
    pub const BA: CanonC = CanonC { k: 1, l: 0, m: 1 };

    pub fn new(k: u64, l: u64, m: u64) -> Result<Self, AlgebraError> {
        if k == 0 && l == 0 && m == 0 {
            return Err(AlgebraError::ZeroTriple);
        }
        Ok(CanonC { k, l, m })
    }

    /// Power of `b` in front.
    pub fn k(&self) -> u64 {
        self.k
    }

    /// Power of `ab` in the middle.
    pub fn l(&self) -> u64 {
        self.l
    }

    /// Power of `a` at the end.
    pub fn m(&self) -> u64 {
        self.m
    }

    pub fn triple(&self) -> (u64, u64, u64) {
        (self.k, self.l, self.m)
    }

    /// Product in 𝒞, four cases on how the trailing `a`s of `self` meet the
    /// leading `b`s of `rhs`.
    pub fn try_mul(self, rhs: CanonC) -> Result<CanonC, AlgebraError> {
        let (k, l, m) = self.triple();
        let (n, p, q) = rhs.triple();
        let add = |x: u64, y: u64| x.checked_add(y).ok_or(AlgebraError::Overflow);
        // Each branch yields a valid triple: see the positivity of the
        // nonzero component in each case.
        let out = match m.cmp(&n) {
            Ordering::Less => CanonC { k: add(k, n - m)?, l: p, m: q },
            Ordering::Equal if m != 0 => CanonC { k, l: add(add(l, p)?, 1)?, m: q },
            Ordering::Equal => CanonC { k, l: add(l, p)?, m: q },
            Ordering::Greater => CanonC { k, l, m: add(q, m - n)? },
        };
        Ok(out)
    }

    /// `n`-fold product of `self` with itself.
    pub fn pow(self, n: u64) -> Result<CanonC, AlgebraError> {
        if n == 0 {
            return Err(AlgebraError::ZeroExponent);
        }
        let mut base = self;
        let mut acc: Option<CanonC> = None;
        let mut e = n;
        loop {
            if e & 1 == 1 {
                acc = Some(match acc {
                    None => base,
                    Some(a) => a.try_mul(base)?,
                });
            }
            e >>= 1;
            if e == 0 {
                break;
            }
            base = base.try_mul(base)?;
        }
        Ok(acc.expect("n >= 1"))
    }

    /// The homomorphism onto ℬ(a,b) forgetting the middle `(ab)` block:
    /// `b^k (ab)^l a^m ↦ b^k a^m`.
    pub fn hom(&self) -> BicyclicNF {
        BicyclicNF::new(self.k, self.m)
    }

    pub fn is_idempotent(&self) -> bool {
        self.try_mul(*self).map(|sq| sq == *self).unwrap_or(false)
    }

    pub fn cell(&self) -> Cell {
        Cell::new(self.k, self.m)
    }
}

impl Mul for CanonC {
    type Output = CanonC;

    /// Panics on exponent overflow; use [`CanonC::try_mul`] for untrusted input.
    fn mul(self, rhs: CanonC) -> CanonC {
        self.try_mul(rhs).expect("exponent overflow in 𝒞 product")
    }
}

impl fmt::Display for CanonC {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{},{}", self.k, self.l, self.m)
    }
}

impl FromStr for CanonC {
    type Err = AlgebraError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || AlgebraError::Parse { what: "k,l,m", input: s.to_string() };
        let parts = parse_uints(s).ok_or_else(err)?;
        match parts.as_slice() {
            [k, l, m] => CanonC::new(*k, *l, *m),
            _ => Err(err()),
        }
    }
}

impl Serialize for CanonC {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for CanonC {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// The element `b^i a^j` of the bicyclic monoid; `⟨0,0⟩` is the identity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BicyclicNF {
    pub i: u64,
    pub j: u64,
}

impl BicyclicNF {
    pub const IDENTITY: BicyclicNF = BicyclicNF { i: 0, j: 0 };

    pub const fn new(i: u64, j: u64) -> Self {
        BicyclicNF { i, j }
    }

    pub fn try_mul(self, rhs: BicyclicNF) -> Result<BicyclicNF, AlgebraError> {
        let t = self.j.min(rhs.i);
        let i = (self.i.checked_add(rhs.i).ok_or(AlgebraError::Overflow)?) - t;
        let j = (rhs.j.checked_add(self.j).ok_or(AlgebraError::Overflow)?) - t;
        Ok(BicyclicNF { i, j })
    }
}

impl Mul for BicyclicNF {
    type Output = BicyclicNF;

    fn mul(self, rhs: BicyclicNF) -> BicyclicNF {
        self.try_mul(rhs).expect("exponent overflow in bicyclic product")
    }
}

impl fmt::Display for BicyclicNF {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{}", self.i, self.j)
    }
}

impl FromStr for BicyclicNF {
    type Err = AlgebraError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || AlgebraError::Parse { what: "i,j", input: s.to_string() };
        match parse_uints(s).ok_or_else(err)?.as_slice() {
            [i, j] => Ok(BicyclicNF::new(*i, *j)),
            _ => Err(err()),
        }
    }
}

impl Serialize for BicyclicNF {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

pub(crate) fn parse_uints(s: &str) -> Option<Vec<u64>> {
    s.trim().split(',').map(|p| p.trim().parse::<u64>().ok()).collect()
}

pub fn mul_c(x: CanonC, y: CanonC) -> CanonC {
    x * y
}

pub fn mul_b(x: BicyclicNF, y: BicyclicNF) -> BicyclicNF {
    x * y
}

pub fn pow_c(x: CanonC, n: u64) -> Result<CanonC, AlgebraError> {
    x.pow(n)
}

pub fn hom_h(x: CanonC) -> BicyclicNF {
    x.hom()
}

/// `φ_{i,j}(x) = b^i · x · a^j`, with `φ_{0,0}` the identity map.
pub fn phi(i: u64, j: u64, x: CanonC) -> Result<CanonC, AlgebraError> {
    let mut out = x;
    if i > 0 {
        out = CanonC::new(i, 0, 0)?.try_mul(out)?;
    }
    if j > 0 {
        out = out.try_mul(CanonC::new(0, 0, j)?)?;
    }
    Ok(out)
}

/// Which side a translation multiplies from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Left,
    Right,
}

impl FromStr for Side {
    type Err = AlgebraError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "left" | "l" => Ok(Side::Left),
            "right" | "r" => Ok(Side::Right),
            _ => Err(AlgebraError::Parse { what: "side", input: s.to_string() }),
        }
    }
}

/// `λ_c(x) = c·x` or `ρ_c(x) = x·c`.
pub fn apply_translation(side: Side, c: CanonC, x: CanonC) -> CanonC {
    match side {
        Side::Left => c * x,
        Side::Right => x * c,
    }
}

pub fn is_fixed(side: Side, c: CanonC, x: CanonC) -> bool {
    apply_translation(side, c, x) == x
}

pub fn is_idempotent(x: CanonC) -> bool {
    x.is_idempotent()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(k: u64, l: u64, m: u64) -> CanonC {
        CanonC::new(k, l, m).unwrap()
    }

    #[test]
    fn product_cases() {
        assert_eq!(c(1, 2, 3) * c(2, 1, 1), c(1, 2, 2));
        assert_eq!(c(0, 1, 0) * c(0, 1, 0), c(0, 2, 0));
        assert_eq!(c(2, 0, 1) * c(1, 3, 0), c(2, 4, 0));
        assert_eq!(c(0, 0, 2) * c(1, 0, 0), c(0, 0, 1));
        assert_eq!(c(0, 0, 1) * c(1, 0, 0), c(0, 1, 0));
    }

    #[test]
    fn zero_triple_rejected() {
        assert_eq!(CanonC::new(0, 0, 0), Err(AlgebraError::ZeroTriple));
        assert!("0,0,0".parse::<CanonC>().is_err());
        assert!("1,2".parse::<CanonC>().is_err());
        assert!("1,-2,3".parse::<CanonC>().is_err());
        assert_eq!(" 1, 2 ,3".parse::<CanonC>().unwrap(), c(1, 2, 3));
    }

    #[test]
    fn overflow_is_reported() {
        let big = c(u64::MAX, 0, 0);
        assert_eq!(c(1, 0, 0).try_mul(big), Err(AlgebraError::Overflow));
        let wide = c(0, u64::MAX, 1);
        assert_eq!(wide.try_mul(c(1, 1, 0)), Err(AlgebraError::Overflow));
    }

    #[test]
    fn bicyclic_products() {
        assert_eq!(BicyclicNF::new(0, 1) * BicyclicNF::new(1, 0), BicyclicNF::IDENTITY);
        assert_eq!(BicyclicNF::new(1, 2) * BicyclicNF::new(3, 4), BicyclicNF::new(2, 4));
        assert_eq!(BicyclicNF::IDENTITY * BicyclicNF::new(5, 7), BicyclicNF::new(5, 7));
    }

    #[test]
    fn powers() {
        assert_eq!(pow_c(CanonC::AB, 3).unwrap(), c(0, 3, 0));
        assert_eq!(pow_c(c(1, 0, 1), 2).unwrap(), c(1, 1, 1));
        assert_eq!(pow_c(CanonC::A, 1).unwrap(), CanonC::A);
        assert_eq!(pow_c(CanonC::A, 0), Err(AlgebraError::ZeroExponent));
        for n in 1..=30 {
            let naive = (1..n).fold(c(1, 2, 1), |acc, _| acc * c(1, 2, 1));
            assert_eq!(pow_c(c(1, 2, 1), n).unwrap(), naive);
        }
    }

    #[test]
    fn hom_and_phi() {
        assert_eq!(hom_h(c(2, 3, 1)), BicyclicNF::new(2, 1));
        assert_eq!(hom_h(c(0, 5, 0)), BicyclicNF::IDENTITY);
        assert_eq!(phi(1, 1, CanonC::AB).unwrap(), c(1, 1, 1));
        assert_eq!(phi(0, 0, c(3, 2, 1)).unwrap(), c(3, 2, 1));
        assert_eq!(phi(2, 0, CanonC::A).unwrap(), c(2, 0, 1));
    }

    #[test]
    fn translations() {
        assert_eq!(apply_translation(Side::Left, CanonC::AB, c(2, 1, 0)), c(2, 1, 0));
        assert_eq!(apply_translation(Side::Right, CanonC::AB, c(0, 1, 2)), c(0, 1, 2));
        assert_eq!(apply_translation(Side::Left, c(1, 0, 1), c(1, 0, 1)), c(1, 1, 1));
        assert!(is_fixed(Side::Right, CanonC::AB, c(0, 1, 2)));
        assert!(is_fixed(Side::Left, CanonC::AB, c(2, 1, 0)));
        assert!(!is_fixed(Side::Right, CanonC::AB, CanonC::AB));
    }

    #[test]
    fn no_small_idempotents() {
        assert!(!is_idempotent(CanonC::AB));
        assert!(!is_idempotent(c(1, 0, 1)));
    }
}
