//! Fixed points of translations, and the retract behaviour of translations
//! by balanced elements `b^k (ab)^l a^k`.

use std::collections::BTreeMap;

use crate::algebra::{apply_translation, is_fixed, CanonC, Region, Side};
use crate::report::{Failure, FailureKind, Report};

use super::RETRACT_NOTE;

struct Family {
    name: String,
    side: Side,
    by: CanonC,
    member: Box<dyn Fn(&CanonC) -> bool>,
}

fn families(n: u64) -> Vec<Family> {
    let bal = CanonC::new(n, 0, n).expect("n >= 1");
    vec![
        Family { name: "m>=1 fixed by right ab".into(), side: Side::Right, by: CanonC::AB, member: Box::new(|x| x.m() >= 1) },
        Family { name: "k>=1 fixed by left ab".into(), side: Side::Left, by: CanonC::AB, member: Box::new(|x| x.k() >= 1) },
        Family {
            name: format!("m>={} fixed by right {bal}", n + 1),
            side: Side::Right,
            by: bal,
            member: Box::new(move |x| x.m() > n),
        },
        Family {
            name: format!("k>={} fixed by left {bal}", n + 1),
            side: Side::Left,
            by: bal,
            member: Box::new(move |x| x.k() > n),
        },
    ]
}

/// The four fixed-point families for index `n >= 1`, on `r`.
pub fn check_fix_inclusions(n: u64, r: Region) -> Report {
    assert!(n >= 1, "fix-set index must be positive");
    let elems = r.elements();
    let mut report = Report::new("fix-inclusions").param("n", n).param("region", r);
    let mut sizes = BTreeMap::new();
    for fam in families(n) {
        let members: Vec<&CanonC> = elems.iter().filter(|x| (fam.member)(x)).collect();
        let fails: Vec<Failure> = members
            .iter()
            .filter(|x| !is_fixed(fam.side, fam.by, ***x))
            .map(|x| {
                Failure::new(
                    FailureKind::InclusionFailure,
                    format!("{}: {x} maps to {}", fam.name, apply_translation(fam.side, fam.by, **x)),
                )
            })
            .collect();
        sizes.insert(fam.name.clone(), members.len());
        report.record(members.len() as u64, fails);
    }
    report.detail("family_count", sizes.len());
    report.detail("families", &sizes);
    report.finish()
}

/// Points of `r` where translating twice differs from translating once.
pub fn idempotence_exceptions(side: Side, c: CanonC, r: Region) -> Vec<CanonC> {
    r.elements()
        .into_iter()
        .filter(|&x| {
            let once = apply_translation(side, c, x);
            apply_translation(side, c, once) != once
        })
        .collect()
}

/// Image and fixed-set facts for `c = (k, l, k)`; idempotence exceptions
/// are recorded in the details, never as failures.
pub fn check_translation_retract(k: u64, l: u64, r: Region) -> Report {
    assert!(k >= 1, "retract index must be positive");
    let c = CanonC::new(k, l, k).expect("k >= 1");
    let mut report = Report::new("translation-retract")
        .param("k", k)
        .param("l", l)
        .param("region", r)
        .note(RETRACT_NOTE);
    let mut fails = Vec::new();
    let mut tested = 0;
    for x in r.elements() {
        tested += 1;
        let left = apply_translation(Side::Left, c, x);
        let right = apply_translation(Side::Right, c, x);
        if left.k() < k {
            fails.push(Failure::new(FailureKind::InclusionFailure, format!("left by {c}: {x} -> {left} has k < {k}")));
        }
        if right.m() < k {
            fails.push(Failure::new(FailureKind::InclusionFailure, format!("right by {c}: {x} -> {right} has m < {k}")));
        }
        if x.k() > k && left != x {
            fails.push(Failure::new(FailureKind::InclusionFailure, format!("left by {c} moves {x} to {left}")));
        }
        if x.m() > k && right != x {
            fails.push(Failure::new(FailureKind::InclusionFailure, format!("right by {c} moves {x} to {right}")));
        }
    }
    report.record(tested, fails);
    for (side, name, exponent) in [(Side::Left, "left", CanonC::k as fn(&CanonC) -> u64), (Side::Right, "right", CanonC::m)] {
        let ex = idempotence_exceptions(side, c, r);
        let images_at_k = ex.iter().all(|x| exponent(&apply_translation(side, c, *x)) == k);
        let sample: Vec<String> = ex.iter().take(10).map(|x| x.to_string()).collect();
        report.detail(
            &format!("{name}_idempotence_exceptions"),
            serde_json::json!({"count": ex.len(), "images_have_exponent_k": images_at_k, "sample": sample}),
        );
    }
    report.finish()
}
