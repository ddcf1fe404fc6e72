//! Brute-force equation solving over a finite region.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use super::{AlgebraError, CanonC, Region};
use crate::par;

/// The left-hand side of an equation in one unknown `X`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EquationShape {
    /// `a · X · b`
    Axb,
    /// `X · b`
    Xb,
    /// `a · X`
    Ax,
    /// `c · X`
    Lx(CanonC),
    /// `X · c`
    Xr(CanonC),
}

impl EquationShape {
    /// Evaluate the left-hand side at `x`; `None` on exponent overflow.
    pub fn eval(&self, x: CanonC) -> Option<CanonC> {
        let (a, b) = (CanonC::A, CanonC::B);
        match *self {
            EquationShape::Axb => a.try_mul(x).and_then(|ax| ax.try_mul(b)).ok(),
            EquationShape::Xb => x.try_mul(b).ok(),
            EquationShape::Ax => a.try_mul(x).ok(),
            EquationShape::Lx(c) => c.try_mul(x).ok(),
            EquationShape::Xr(c) => x.try_mul(c).ok(),
        }
    }
}

impl fmt::Display for EquationShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EquationShape::Axb => f.write_str("axb"),
            EquationShape::Xb => f.write_str("xb"),
            EquationShape::Ax => f.write_str("ax"),
            EquationShape::Lx(c) => write!(f, "lx:{c}"),
            EquationShape::Xr(c) => write!(f, "xr:{c}"),
        }
    }
}

impl FromStr for EquationShape {
    type Err = AlgebraError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let lower = s.to_ascii_lowercase();
        let operand = |rest: &str| -> Result<CanonC, AlgebraError> {
            rest.trim().trim_start_matches('<').trim_end_matches('>').parse()
        };
        match lower.as_str() {
            "axb" => Ok(EquationShape::Axb),
            "xb" => Ok(EquationShape::Xb),
            "ax" => Ok(EquationShape::Ax),
            _ => {
                if let Some(rest) = lower.strip_prefix("lx:") {
                    Ok(EquationShape::Lx(operand(rest)?))
                } else if let Some(rest) = lower.strip_prefix("xr:") {
                    Ok(EquationShape::Xr(operand(rest)?))
                } else {
                    Err(AlgebraError::Parse { what: "equation shape", input: s.to_string() })
                }
            }
        }
    }
}

/// The exact solution set inside the region that was searched.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Solutions {
    pub shape: EquationShape,
    pub rhs: CanonC,
    pub region: Region,
    pub set: BTreeSet<CanonC>,
}

impl Solutions {
    pub fn is_unique(&self) -> bool {
        self.set.len() == 1
    }

    pub fn single(&self) -> Option<CanonC> {
        if self.is_unique() {
            self.set.iter().next().copied()
        } else {
            None
        }
    }
}

pub fn solve_equation(shape: EquationShape, rhs: CanonC, region: Region) -> Solutions {
    let elements = region.elements();
    let hits = par::filter(&elements, |x| shape.eval(*x) == Some(rhs));
    Solutions { shape, rhs, region, set: hits.into_iter().collect() }
}

/// Solve in `region` and again in `region` grown by `margin`; a claimed
/// solution set is only trusted when both agree with it.
pub fn solve_with_margin(
    shape: EquationShape,
    rhs: CanonC,
    region: Region,
    margin: u64,
) -> (Solutions, Solutions) {
    (solve_equation(shape, rhs, region), solve_equation(shape, rhs, region.grown(margin)))
}
