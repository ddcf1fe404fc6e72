//! The disjoint union 𝒞 ⊔ ℬ(a,b) under ★, and 𝒞 with an adjoined zero.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::algebra::{hom_h, AlgebraError, BicyclicNF, CanonC, Region};
use crate::par;
use crate::report::{Failure, FailureKind, Report, MAX_STORED_FAILURES};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ExtElem {
    C(CanonC),
    B(BicyclicNF),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ExtZeroElem {
    C(CanonC),
    Zero,
}

impl fmt::Display for ExtElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtElem::C(x) => write!(f, "C:{x}"),
            ExtElem::B(x) => write!(f, "B:{x}"),
        }
    }
}

impl FromStr for ExtElem {
    type Err = AlgebraError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        match s.split_once(':') {
            Some((tag, rest)) if tag.eq_ignore_ascii_case("c") => Ok(ExtElem::C(rest.parse()?)),
            Some((tag, rest)) if tag.eq_ignore_ascii_case("b") => Ok(ExtElem::B(rest.parse()?)),
            _ => Err(AlgebraError::Parse { what: "extension element (C:k,l,m | B:i,j)", input: s.to_string() }),
        }
    }
}

impl fmt::Display for ExtZeroElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtZeroElem::C(x) => write!(f, "C:{x}"),
            ExtZeroElem::Zero => f.write_str("0"),
        }
    }
}

impl FromStr for ExtZeroElem {
    type Err = AlgebraError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s == "0" {
            return Ok(ExtZeroElem::Zero);
        }
        match s.split_once(':') {
            Some((tag, rest)) if tag.eq_ignore_ascii_case("c") => Ok(ExtZeroElem::C(rest.parse()?)),
            _ => Err(AlgebraError::Parse { what: "zero-extension element (C:k,l,m | 0)", input: s.to_string() }),
        }
    }
}

impl Serialize for ExtElem {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl Serialize for ExtZeroElem {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Which case of which product formula a ★-product went through.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum StarBranch {
    CcLt,
    CcEqNonzero,
    CcEqZero,
    CcGt,
    CbLt,
    CbEq,
    CbGt,
    BcLt,
    BcEq,
    BcGt,
    BbLt,
    BbEq,
    BbGt,
}

impl StarBranch {
    pub const ALL: [StarBranch; 13] = [
        StarBranch::CcLt,
        StarBranch::CcEqNonzero,
        StarBranch::CcEqZero,
        StarBranch::CcGt,
        StarBranch::CbLt,
        StarBranch::CbEq,
        StarBranch::CbGt,
        StarBranch::BcLt,
        StarBranch::BcEq,
        StarBranch::BcGt,
        StarBranch::BbLt,
        StarBranch::BbEq,
        StarBranch::BbGt,
    ];

    pub fn label(self) -> &'static str {
        match self {
            StarBranch::CcLt => "CC:lt",
            StarBranch::CcEqNonzero => "CC:eq_nonzero",
            StarBranch::CcEqZero => "CC:eq_zero",
            StarBranch::CcGt => "CC:gt",
            StarBranch::CbLt => "CB:lt",
            StarBranch::CbEq => "CB:eq",
            StarBranch::CbGt => "CB:gt",
            StarBranch::BcLt => "BC:lt",
            StarBranch::BcEq => "BC:eq",
            StarBranch::BcGt => "BC:gt",
            StarBranch::BbLt => "BB:lt",
            StarBranch::BbEq => "BB:eq",
            StarBranch::BbGt => "BB:gt",
        }
    }

    /// Branches of the two mixed-product formulas.
    pub fn is_mixed(self) -> bool {
        matches!(
            self,
            StarBranch::CbLt | StarBranch::CbEq | StarBranch::CbGt | StarBranch::BcLt | StarBranch::BcEq | StarBranch::BcGt
        )
    }

    fn index(self) -> usize {
        self as usize
    }
}

fn add(a: u64, b: u64) -> Result<u64, AlgebraError> {
    a.checked_add(b).ok_or(AlgebraError::Overflow)
}

/// ★-product together with the formula case it used.
pub fn try_star_traced(x: ExtElem, y: ExtElem) -> Result<(ExtElem, StarBranch), AlgebraError> {
    use std::cmp::Ordering::*;
    match (x, y) {
        (ExtElem::C(x), ExtElem::C(y)) => {
            let branch = match x.m().cmp(&y.k()) {
                Less => StarBranch::CcLt,
                Equal if x.m() != 0 => StarBranch::CcEqNonzero,
                Equal => StarBranch::CcEqZero,
                Greater => StarBranch::CcGt,
            };
            Ok((ExtElem::C(x.try_mul(y)?), branch))
        }
        (ExtElem::B(x), ExtElem::B(y)) => {
            let branch = match x.j.cmp(&y.i) {
                Less => StarBranch::BbLt,
                Equal => StarBranch::BbEq,
                Greater => StarBranch::BbGt,
            };
            Ok((ExtElem::B(x.try_mul(y)?), branch))
        }
        (ExtElem::C(x), ExtElem::B(y)) => {
            let (k, l, m) = x.triple();
            let (n, q) = (y.i, y.j);
            Ok(match m.cmp(&n) {
                Less => (ExtElem::B(BicyclicNF::new(add(k, n - m)?, q)), StarBranch::CbLt),
                Equal => (ExtElem::B(BicyclicNF::new(k, q)), StarBranch::CbEq),
                Greater => (ExtElem::C(CanonC::new(k, l, add(q, m - n)?)?), StarBranch::CbGt),
            })
        }
        (ExtElem::B(x), ExtElem::C(y)) => {
            let (k, m) = (x.i, x.j);
            let (n, p, q) = y.triple();
            Ok(match m.cmp(&n) {
                Less => (ExtElem::C(CanonC::new(add(k, n - m)?, p, q)?), StarBranch::BcLt),
                Equal => (ExtElem::B(BicyclicNF::new(k, q)), StarBranch::BcEq),
                Greater => (ExtElem::B(BicyclicNF::new(k, add(q, m - n)?)), StarBranch::BcGt),
            })
        }
    }
}

pub fn try_star_mul(x: ExtElem, y: ExtElem) -> Result<ExtElem, AlgebraError> {
    try_star_traced(x, y).map(|(z, _)| z)
}

/// Panics on exponent overflow.
pub fn star_traced(x: ExtElem, y: ExtElem) -> (ExtElem, StarBranch) {
    try_star_traced(x, y).expect("exponent overflow in star product")
}

/// Panics on exponent overflow.
pub fn star_mul(x: ExtElem, y: ExtElem) -> ExtElem {
    star_traced(x, y).0
}

pub fn try_zero_mul(x: ExtZeroElem, y: ExtZeroElem) -> Result<ExtZeroElem, AlgebraError> {
    match (x, y) {
        (ExtZeroElem::C(x), ExtZeroElem::C(y)) => Ok(ExtZeroElem::C(x.try_mul(y)?)),
        _ => Ok(ExtZeroElem::Zero),
    }
}

/// Panics on exponent overflow.
pub fn zero_mul(x: ExtZeroElem, y: ExtZeroElem) -> ExtZeroElem {
    try_zero_mul(x, y).expect("exponent overflow in product")
}

/// C-parts of `r` followed by every `B:i,j` with `i, j <= bcap`.
pub fn ext_elements(r: Region, bcap: u64) -> Vec<ExtElem> {
    let mut out: Vec<ExtElem> = r.elements().into_iter().map(ExtElem::C).collect();
    for i in 0..=bcap {
        for j in 0..=bcap {
            out.push(ExtElem::B(BicyclicNF::new(i, j)));
        }
    }
    out
}

fn tag_bit(x: ExtElem) -> usize {
    match x {
        ExtElem::C(_) => 0,
        ExtElem::B(_) => 1,
    }
}

#[derive(Default)]
struct StarScan {
    tested: u64,
    failure_count: u64,
    failures: Vec<Failure>,
    branch_hits: [u64; 13],
    combos: [bool; 8],
    signatures: BTreeSet<[u8; 4]>,
}

impl StarScan {
    fn merge(mut self, other: StarScan) -> StarScan {
        self.tested += other.tested;
        self.failure_count += other.failure_count;
        for f in other.failures {
            if self.failures.len() < MAX_STORED_FAILURES {
                self.failures.push(f);
            }
        }
        for (a, b) in self.branch_hits.iter_mut().zip(other.branch_hits) {
            *a += b;
        }
        for (a, b) in self.combos.iter_mut().zip(other.combos) {
            *a |= b;
        }
        self.signatures.extend(other.signatures);
        self
    }
}

pub fn check_star_associativity(r: Region, bcap: u64) -> Report {
    check_star_associativity_with(r, bcap, star_traced)
}

/// Associativity of `op` on all triples of [`ext_elements`], with branch
/// coverage. `op` is a parameter so that broken operations can be fed in.
pub fn check_star_associativity_with<F>(r: Region, bcap: u64, op: F) -> Report
where
    F: Fn(ExtElem, ExtElem) -> (ExtElem, StarBranch) + Sync + Send,
{
    let elems = ext_elements(r, bcap);
    let scan = par::fold(
        &elems,
        StarScan::default,
        |mut acc, &x| {
            for &y in &elems {
                let (xy, b_xy) = op(x, y);
                for &z in &elems {
                    let (left, b_l) = op(xy, z);
                    let (yz, b_yz) = op(y, z);
                    let (right, b_r) = op(x, yz);
                    acc.tested += 1;
                    for b in [b_xy, b_l, b_yz, b_r] {
                        acc.branch_hits[b.index()] += 1;
                    }
                    acc.combos[tag_bit(x) << 2 | tag_bit(y) << 1 | tag_bit(z)] = true;
                    acc.signatures.insert([b_xy as u8, b_l as u8, b_yz as u8, b_r as u8]);
                    if left != right {
                        acc.failure_count += 1;
                        if acc.failures.len() < MAX_STORED_FAILURES {
                            acc.failures.push(Failure::new(
                                FailureKind::AssociativityFailure,
                                format!("({x} ★ {y}) ★ {z} = {left} but {x} ★ ({y} ★ {z}) = {right}"),
                            ));
                        }
                    }
                }
            }
            acc
        },
        StarScan::merge,
    );

    let mut report = Report::new("star-associativity")
        .param("region", r)
        .param("bcap", bcap)
        .note("bicyclic identity B:0,0 is included in the enumeration");
    report.items_tested = scan.tested;
    report.failure_count = scan.failure_count;
    report.failures = scan.failures;

    let hits: BTreeMap<&str, u64> = StarBranch::ALL.iter().map(|b| (b.label(), scan.branch_hits[b.index()])).collect();
    let unhit: Vec<&str> = StarBranch::ALL.iter().filter(|b| scan.branch_hits[b.index()] == 0).map(|b| b.label()).collect();
    let combos = scan.combos.iter().filter(|c| **c).count();
    if !unhit.is_empty() {
        report.warn(format!("branches never exercised: {}", unhit.join(", ")));
    }
    if combos < 8 && !elems.is_empty() {
        report.warn(format!("only {combos} of 8 tag combinations exercised"));
    }
    report.detail("branch_hits", &hits);
    report.detail("branches_covered", StarBranch::ALL.len() - unhit.len());
    report.detail("branches_total", StarBranch::ALL.len());
    report.detail("tag_combos_covered", combos);
    report.detail("case_signatures", scan.signatures.len());
    report.finish()
}

/// Every branch and every tag combination was exercised.
pub fn star_coverage_complete(report: &Report) -> bool {
    let get = |k: &str| report.details.get(k).and_then(|v| v.as_u64());
    get("branches_covered") == Some(StarBranch::ALL.len() as u64) && get("tag_combos_covered") == Some(8)
}

/// Associativity of the zero extension over `{0} ∪ r`, and that 0 absorbs.
pub fn check_zero_associativity(r: Region) -> Report {
    let mut elems: Vec<ExtZeroElem> = vec![ExtZeroElem::Zero];
    elems.extend(r.elements().into_iter().map(ExtZeroElem::C));
    let (tested, failures) = par::fold(
        &elems,
        || (0u64, Vec::new()),
        |(mut n, mut fails), &x| {
            for &y in &elems {
                let xy = zero_mul(x, y);
                for &z in &elems {
                    n += 1;
                    let left = zero_mul(xy, z);
                    let right = zero_mul(x, zero_mul(y, z));
                    if left != right {
                        fails.push(Failure::new(
                            FailureKind::AssociativityFailure,
                            format!("({x}·{y})·{z} = {left} but {x}·({y}·{z}) = {right}"),
                        ));
                    }
                }
            }
            if zero_mul(ExtZeroElem::Zero, x) != ExtZeroElem::Zero || zero_mul(x, ExtZeroElem::Zero) != ExtZeroElem::Zero {
                fails.push(Failure::new(FailureKind::AssociativityFailure, format!("0 does not absorb {x}")));
            }
            (n, fails)
        },
        |(a, mut fa), (b, fb)| {
            fa.extend(fb);
            (a + b, fa)
        },
    );
    let mut report = Report::new("zero-associativity").param("region", r);
    report.record(tested, failures);
    report.finish()
}

pub fn check_pi_homomorphism(r: Region) -> Report {
    check_pi_homomorphism_with(r, hom_h)
}

/// `h(xy) = h(x)h(y)` on all pairs of `r`, plus the mixed identities
/// `C(x) ★ B(h(y)) ∈ {C(xy), B(h(xy))}` and `B(h(x)) ★ C(y) ∈ {C(xy), B(h(xy))}`.
pub fn check_pi_homomorphism_with<H>(r: Region, hom: H) -> Report
where
    H: Fn(CanonC) -> BicyclicNF + Sync + Send,
{
    let elems = r.elements();
    let (tested, failures) = par::fold(
        &elems,
        || (0u64, Vec::new()),
        |(mut n, mut fails), &x| {
            for &y in &elems {
                n += 1;
                let xy = x * y;
                let (hx, hy, hxy) = (hom(x), hom(y), hom(xy));
                if hxy != hx * hy {
                    fails.push(Failure::new(
                        FailureKind::HomomorphismFailure,
                        format!("h({x}·{y}) = {hxy} but h({x})·h({y}) = {}", hx * hy),
                    ));
                }
                let allowed = [ExtElem::C(xy), ExtElem::B(hxy)];
                let cb = star_mul(ExtElem::C(x), ExtElem::B(hy));
                if !allowed.contains(&cb) {
                    fails.push(Failure::new(
                        FailureKind::HomomorphismFailure,
                        format!("C:{x} ★ B:{hy} = {cb}, expected C:{xy} or B:{hxy}"),
                    ));
                }
                let bc = star_mul(ExtElem::B(hx), ExtElem::C(y));
                if !allowed.contains(&bc) {
                    fails.push(Failure::new(
                        FailureKind::HomomorphismFailure,
                        format!("B:{hx} ★ C:{y} = {bc}, expected C:{xy} or B:{hxy}"),
                    ));
                }
            }
            (n, fails)
        },
        |(a, mut fa), (b, fb)| {
            fa.extend(fb);
            (a + b, fa)
        },
    );
    let mut report = Report::new("pi-homomorphism").param("region", r);
    report.record(tested, failures);
    report.finish()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cx(k: u64, l: u64, m: u64) -> ExtElem {
        ExtElem::C(CanonC::new(k, l, m).unwrap())
    }

    fn bx(i: u64, j: u64) -> ExtElem {
        ExtElem::B(BicyclicNF::new(i, j))
    }

    #[test]
    fn star_examples() {
        assert_eq!(star_mul(cx(0, 1, 2), bx(1, 0)), cx(0, 1, 1));
        assert_eq!(star_mul(bx(2, 1), cx(1, 0, 0)), bx(2, 0));
        assert_eq!(star_mul(bx(0, 2), cx(3, 1, 1)), cx(1, 1, 1));
    }

    #[test]
    fn zero_examples() {
        let one = ExtZeroElem::C(CanonC::new(1, 1, 1).unwrap());
        assert_eq!(zero_mul(ExtZeroElem::Zero, one), ExtZeroElem::Zero);
        assert_eq!(zero_mul(ExtZeroElem::Zero, ExtZeroElem::Zero), ExtZeroElem::Zero);
        let ab = ExtZeroElem::C(CanonC::AB);
        assert_eq!(zero_mul(ab, ab), ExtZeroElem::C(CanonC::new(0, 2, 0).unwrap()));
    }

    #[test]
    fn text_forms() {
        for s in ["C:1,2,3", "B:0,0", "B:4,1"] {
            assert_eq!(s.parse::<ExtElem>().unwrap().to_string(), s);
        }
        assert_eq!("0".parse::<ExtZeroElem>().unwrap(), ExtZeroElem::Zero);
        assert_eq!("C:0,1,0".parse::<ExtZeroElem>().unwrap().to_string(), "C:0,1,0");
        assert!("C:0,0,0".parse::<ExtElem>().is_err());
        assert!("X:1,1".parse::<ExtElem>().is_err());
        assert!("B:1,1".parse::<ExtZeroElem>().is_err());
    }

    #[test]
    fn small_star_scan_passes() {
        let r = check_star_associativity(Region::cube(1), 1);
        assert!(r.ok(), "{:?}", r.failures);
        assert_eq!(r.items_tested, 11u64.pow(3));
    }

    #[test]
    fn corrupted_eq_branch_is_caught() {
        let broken = |x: ExtElem, y: ExtElem| {
            let (z, b) = star_traced(x, y);
            match (x, y, b) {
                (ExtElem::C(c), ExtElem::B(d), StarBranch::CbEq) => (ExtElem::B(BicyclicNF::new(c.k(), d.j + 1)), b),
                _ => (z, b),
            }
        };
        let r = check_star_associativity_with(Region::cube(2), 2, broken);
        assert!(!r.ok());
        assert_eq!(r.failures[0].kind, FailureKind::AssociativityFailure);
    }

    #[test]
    fn pi_examples() {
        assert_eq!(hom_h(CanonC::A * CanonC::B), hom_h(CanonC::A) * hom_h(CanonC::B));
        assert!(check_pi_homomorphism(Region::cube(2)).ok());
        let swapped = |x: CanonC| BicyclicNF::new(x.m(), x.k());
        let r = check_pi_homomorphism_with(Region::cube(2), swapped);
        assert!(!r.ok());
        assert_eq!(r.failures[0].kind, FailureKind::HomomorphismFailure);
    }

    #[test]
    fn zero_scan_passes() {
        let r = check_zero_associativity(Region::cube(2));
        assert!(r.ok());
        assert_eq!(r.items_tested, 27u64.pow(3));
    }
}
