//! Topology on 𝒞 ⊔ ℬ(a,b): C-points are isolated, and `B:i,j` has the basic
//! sets `{B:i,j} ∪ {C:i,k,j : k >= n}`.

use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;

use super::EXT_CASE3A_NOTE;
use crate::algebra::{BicyclicNF, CanonC};
use crate::extensions::{star_mul, ExtElem};
use crate::par;
use crate::report::{Failure, FailureKind, Report, Tally};

/// Truncated basic set `U_n(x)`; the `(ab)`-exponent runs up to `kcap`.
pub fn nbhd_ext(x: ExtElem, n: u64, kcap: u64) -> Vec<ExtElem> {
    match x {
        ExtElem::C(_) => vec![x],
        ExtElem::B(b) => std::iter::once(x)
            .chain((n..=kcap).filter_map(|k| CanonC::new(b.i, k, b.j).ok().map(ExtElem::C)))
            .collect(),
    }
}

/// Membership in the untruncated `U_n(center)`.
pub fn in_ext_nbhd(center: ExtElem, n: u64, y: ExtElem) -> bool {
    match (center, y) {
        _ if center == y => true,
        (ExtElem::B(b), ExtElem::C(c)) => c.k() == b.i && c.m() == b.j && c.l() >= n,
        _ => false,
    }
}

/// The three shapes of product that need a continuity argument.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ExtCase {
    /// `B:i,k ★ B:m,p`
    BB(BicyclicNF, BicyclicNF),
    /// `B:i,k ★ C:m,n,p`
    BC(BicyclicNF, CanonC),
    /// `C:i,l,k ★ B:m,p`
    CB(CanonC, BicyclicNF),
}

impl ExtCase {
    pub fn number(&self) -> u8 {
        match self {
            ExtCase::BB(..) => 1,
            ExtCase::BC(..) => 2,
            ExtCase::CB(..) => 3,
        }
    }

    fn operands(&self) -> (ExtElem, ExtElem) {
        match *self {
            ExtCase::BB(x, y) => (ExtElem::B(x), ExtElem::B(y)),
            ExtCase::BC(x, y) => (ExtElem::B(x), ExtElem::C(y)),
            ExtCase::CB(x, y) => (ExtElem::C(x), ExtElem::B(y)),
        }
    }

    /// Trailing `a`-exponent of the left factor and leading `b`-exponent of the right.
    fn inner(&self) -> (u64, u64) {
        match *self {
            ExtCase::BB(x, y) => (x.j, y.i),
            ExtCase::BC(x, y) => (x.j, y.k()),
            ExtCase::CB(x, y) => (x.m(), y.i),
        }
    }
}

impl fmt::Display for ExtCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (x, y) = self.operands();
        write!(f, "case {}: {x} ★ {y}", self.number())
    }
}

/// Where the product of the two neighbourhoods must land.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", content = "center", rename_all = "lowercase")]
pub enum ExtTarget {
    /// Contained in the basic set of this B-point, same index `u`.
    Nbhd(BicyclicNF),
    /// Equal to this one-point set.
    Singleton(ExtElem),
}

/// Sub-case letter and target, from the case formulas.
pub fn ext_target(case: ExtCase) -> (char, ExtTarget) {
    let (k, m) = case.inner();
    let sub = match k.cmp(&m) {
        std::cmp::Ordering::Less => 'a',
        std::cmp::Ordering::Equal => 'b',
        std::cmp::Ordering::Greater => 'c',
    };
    let nb = |i: u64, j: u64| ExtTarget::Nbhd(BicyclicNF::new(i, j));
    let target = match (case, sub) {
        (ExtCase::BB(x, y), 'a') => nb(x.i + y.i - x.j, y.j),
        (ExtCase::BB(x, y), 'b') => nb(x.i, y.j),
        (ExtCase::BB(x, y), _) => nb(x.i, x.j - y.i + y.j),
        (ExtCase::BC(x, y), 'a') => {
            ExtTarget::Singleton(ExtElem::C(CanonC::new(x.i + y.k() - x.j, y.l(), y.m()).expect("nonempty")))
        }
        (ExtCase::BC(x, y), 'b') => nb(x.i, y.m()),
        (ExtCase::BC(x, y), _) => nb(x.i, x.j - y.k() + y.m()),
        (ExtCase::CB(x, y), 'a') => nb(x.k() + y.i - x.m(), y.j),
        (ExtCase::CB(x, y), 'b') => nb(x.k(), y.j),
        (ExtCase::CB(x, y), _) => {
            ExtTarget::Singleton(ExtElem::C(CanonC::new(x.k(), x.l(), x.m() - y.i + y.j).expect("nonempty")))
        }
    };
    (sub, target)
}

fn continuity_tally(case: ExtCase, u: u64, kcap: u64) -> Tally {
    let (x, y) = case.operands();
    let (sub, target) = ext_target(case);
    let left = nbhd_ext(x, u, kcap);
    let right = nbhd_ext(y, u, kcap);
    let mut tally = Tally::default();
    let mut products = BTreeSet::new();
    for &s in &left {
        for &t in &right {
            tally.tested += 1;
            let st = star_mul(s, t);
            products.insert(st);
            let inside = match target {
                ExtTarget::Nbhd(b) => in_ext_nbhd(ExtElem::B(b), u, st),
                ExtTarget::Singleton(z) => st == z,
            };
            if !inside {
                tally.push(Failure::new(
                    FailureKind::InclusionFailure,
                    format!("{case} ({sub}), u={u}: {s} ★ {t} = {st} outside {target:?}"),
                ));
            }
        }
    }
    if let ExtTarget::Singleton(z) = target {
        if !products.contains(&z) {
            tally.push(Failure::new(FailureKind::InclusionFailure, format!("{case} ({sub}), u={u}: {z} never produced")));
        }
    }
    tally
}

pub fn check_ext_continuity(case: ExtCase, u: u64, kcap: u64) -> Report {
    let (sub, target) = ext_target(case);
    let (x, y) = case.operands();
    let mut report = Report::new("ext-continuity")
        .param("case", case.number())
        .param("left", x)
        .param("right", y)
        .param("u", u)
        .param("kcap", kcap)
        .note(EXT_CASE3A_NOTE);
    report.detail("subcase", sub.to_string());
    report.detail("target", target);
    report.add_tally(continuity_tally(case, u, kcap));
    report.finish()
}

/// All cases with every exponent `<= max_exp`, `1 <= u <= u_max` and
/// `kcap = u + kcap_extra`.
pub fn check_ext_grid(max_exp: u64, u_max: u64, kcap_extra: u64) -> Report {
    let bs: Vec<BicyclicNF> =
        (0..=max_exp).flat_map(|i| (0..=max_exp).map(move |j| BicyclicNF::new(i, j))).collect();
    let cs = crate::algebra::Region::cube(max_exp).elements();
    let mut cases = Vec::new();
    for &x in &bs {
        cases.extend(bs.iter().map(|&y| ExtCase::BB(x, y)));
        cases.extend(cs.iter().map(|&y| ExtCase::BC(x, y)));
    }
    for &x in &cs {
        cases.extend(bs.iter().map(|&y| ExtCase::CB(x, y)));
    }
    let tally = par::fold(
        &cases,
        Tally::default,
        |mut acc, &case| {
            for u in 1..=u_max {
                acc = acc.merge(continuity_tally(case, u, u + kcap_extra));
            }
            acc
        },
        Tally::merge,
    );
    let mut subcases: BTreeSet<String> = BTreeSet::new();
    for case in &cases {
        subcases.insert(format!("{}{}", case.number(), ext_target(*case).0));
    }
    let mut report = Report::new("ext-continuity-grid")
        .param("max_exp", max_exp)
        .param("u_max", u_max)
        .param("kcap", format!("u+{kcap_extra}"))
        .note(EXT_CASE3A_NOTE);
    report.detail("case_tuples", cases.len());
    report.detail("subcases_exercised", &subcases);
    report.add_tally(tally);
    report.finish()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(k: u64, l: u64, m: u64) -> CanonC {
        CanonC::new(k, l, m).unwrap()
    }

    fn b(i: u64, j: u64) -> BicyclicNF {
        BicyclicNF::new(i, j)
    }

    #[test]
    fn nbhd_examples() {
        let got: Vec<String> = nbhd_ext(ExtElem::B(b(1, 1)), 2, 4).iter().map(|e| e.to_string()).collect();
        assert_eq!(got, ["B:1,1", "C:1,2,1", "C:1,3,1", "C:1,4,1"]);
        assert_eq!(nbhd_ext(ExtElem::C(c(2, 0, 1)), 5, 9), vec![ExtElem::C(c(2, 0, 1))]);
        let got: Vec<String> = nbhd_ext(ExtElem::B(b(0, 0)), 1, 2).iter().map(|e| e.to_string()).collect();
        assert_eq!(got, ["B:0,0", "C:0,1,0", "C:0,2,0"]);
    }

    #[test]
    fn case_examples() {
        let r = check_ext_continuity(ExtCase::BB(b(0, 1), b(1, 0)), 2, 6);
        assert!(r.ok());
        assert_eq!(r.details["subcase"], "b");
        assert_eq!(ext_target(ExtCase::BB(b(0, 1), b(1, 0))).1, ExtTarget::Nbhd(b(0, 0)));

        let case = ExtCase::BC(b(1, 2), c(2, 1, 1));
        assert!(check_ext_continuity(case, 3, 8).ok());
        assert_eq!(ext_target(case), ('b', ExtTarget::Nbhd(b(1, 1))));

        let case = ExtCase::CB(c(1, 1, 3), b(2, 1));
        assert!(check_ext_continuity(case, 2, 6).ok());
        assert_eq!(ext_target(case), ('c', ExtTarget::Singleton(ExtElem::C(c(1, 1, 2)))));
    }

    #[test]
    fn case_three_a_fills_a_basic_set() {
        // C:0,0,1 ★ U_1(B:2,0) reaches B:1,0 and C:1,t,0 for every t >= 1.
        let case = ExtCase::CB(c(0, 0, 1), b(2, 0));
        let (sub, target) = ext_target(case);
        assert_eq!((sub, target), ('a', ExtTarget::Nbhd(b(1, 0))));
        let products: BTreeSet<ExtElem> =
            nbhd_ext(ExtElem::B(b(2, 0)), 1, 4).into_iter().map(|t| star_mul(ExtElem::C(c(0, 0, 1)), t)).collect();
        assert!(products.len() > 1);
        assert!(check_ext_continuity(case, 1, 4).ok());
    }

    #[test]
    fn small_grid_passes() {
        let r = check_ext_grid(2, 2, 6);
        assert!(r.ok(), "{:?}", r.failures);
        assert_eq!(r.details["subcases_exercised"].as_array().unwrap().len(), 9);
    }
}
