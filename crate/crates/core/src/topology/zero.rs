//! Topology on 𝒞 ∪ {0}: C-points are isolated and `0` has the basic sets
//! `{0} ∪ {x : x.k >= n, x.m >= n}`.

use serde::Serialize;

use crate::algebra::{CanonC, Region};
use crate::extensions::{zero_mul, ExtZeroElem};
use crate::report::{Failure, FailureKind, Report, Tally};

/// `U_n(0)` truncated to `r`; zero first, then the C-points in region order.
pub fn nbhd_zero(n: u64, r: Region) -> Vec<ExtZeroElem> {
    std::iter::once(ExtZeroElem::Zero)
        .chain(r.elements().into_iter().filter(|x| x.k() >= n && x.m() >= n).map(ExtZeroElem::C))
        .collect()
}

pub fn in_zero_nbhd(n: u64, y: ExtZeroElem) -> bool {
    match y {
        ExtZeroElem::Zero => true,
        ExtZeroElem::C(x) => x.k() >= n && x.m() >= n,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum ZeroCondition {
    /// `U_i(0)·U_i(0) ⊆ U_i(0)`
    #[serde(rename = "i")]
    I,
    /// `U_{i+x.k}(0)·{x} ⊆ U_i(0)`
    #[serde(rename = "ii")]
    II,
    /// `{x}·U_{i+x.m}(0) ⊆ U_i(0)`
    #[serde(rename = "iii")]
    III,
}

impl ZeroCondition {
    pub const ALL: [ZeroCondition; 3] = [ZeroCondition::I, ZeroCondition::II, ZeroCondition::III];

    pub fn label(self) -> &'static str {
        match self {
            ZeroCondition::I => "i",
            ZeroCondition::II => "ii",
            ZeroCondition::III => "iii",
        }
    }
}

fn condition_tally(cond: ZeroCondition, x: CanonC, i: u64, r: Region) -> Tally {
    let single = [ExtZeroElem::C(x)];
    let (left, right) = match cond {
        ZeroCondition::I => (nbhd_zero(i, r), nbhd_zero(i, r)),
        ZeroCondition::II => (nbhd_zero(i + x.k(), r), single.to_vec()),
        ZeroCondition::III => (single.to_vec(), nbhd_zero(i + x.m(), r)),
    };
    let mut tally = Tally::default();
    for &s in &left {
        for &t in &right {
            tally.tested += 1;
            let st = zero_mul(s, t);
            if !in_zero_nbhd(i, st) {
                tally.push(Failure::new(
                    FailureKind::InclusionFailure,
                    format!("condition ({}) i={i} x={x}: {s}·{t} = {st} not in U_{i}(0)", cond.label()),
                ));
            }
        }
    }
    tally
}

pub fn check_zero_condition(cond: ZeroCondition, x: CanonC, i: u64, r: Region) -> Report {
    let mut report = Report::new("zero-continuity")
        .param("condition", cond)
        .param("x", x)
        .param("i", i)
        .param("region", r);
    report.add_tally(condition_tally(cond, x, i, r));
    report.finish()
}

/// All three conditions for one `x` and `i`.
pub fn check_zero_continuity(x: CanonC, i: u64, r: Region) -> Report {
    let mut report = Report::new("zero-continuity").param("x", x).param("i", i).param("region", r);
    for cond in ZeroCondition::ALL {
        report.add_tally(condition_tally(cond, x, i, r));
    }
    report.finish()
}

/// Every `1 <= i <= i_max` and every `x` with exponents `<= max_exp`.
pub fn check_zero_grid(i_max: u64, max_exp: u64, r: Region) -> Report {
    let xs = Region::cube(max_exp).elements();
    let mut report = Report::new("zero-continuity-grid")
        .param("i_max", i_max)
        .param("max_exp", max_exp)
        .param("region", r);
    let tally = crate::par::fold(
        &xs,
        Tally::default,
        |mut acc, &x| {
            for i in 1..=i_max {
                for cond in ZeroCondition::ALL {
                    acc = acc.merge(condition_tally(cond, x, i, r));
                }
            }
            acc
        },
        Tally::merge,
    );
    report.add_tally(tally);
    report.finish()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(k: u64, l: u64, m: u64) -> CanonC {
        CanonC::new(k, l, m).unwrap()
    }

    #[test]
    fn nbhd_examples() {
        let u = nbhd_zero(2, Region::new(3, 1, 3));
        assert_eq!(u[0], ExtZeroElem::Zero);
        assert_eq!(u.len(), 1 + 2 * 2 * 2);
        assert!(u.contains(&ExtZeroElem::C(c(2, 0, 3))));
        assert_eq!(nbhd_zero(4, Region::cube(3)), vec![ExtZeroElem::Zero]);
    }

    #[test]
    fn condition_examples() {
        let r = Region::new(5, 2, 5);
        assert!(check_zero_condition(ZeroCondition::I, CanonC::A, 2, r).ok());
        assert!(check_zero_condition(ZeroCondition::II, c(1, 0, 2), 1, r).ok());
        assert!(check_zero_condition(ZeroCondition::III, c(1, 0, 2), 1, r).ok());
    }

    #[test]
    fn shrinking_the_index_breaks_condition_two() {
        // U_i(0)·{x} with no index shift can leave U_i(0).
        let x = c(2, 0, 0);
        let r = Region::cube(4);
        let escaped = nbhd_zero(1, r).into_iter().any(|s| !in_zero_nbhd(1, zero_mul(s, ExtZeroElem::C(x))));
        assert!(escaped);
    }
}
