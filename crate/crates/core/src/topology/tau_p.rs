//! The p-adic topology on 𝒞: basic sets move along the `(ab)`-exponent in
//! steps of `p^α`, inside a fixed cell.

use std::cmp::Ordering;
use std::fmt;
use std::ops::RangeInclusive;

use serde::Serialize;
use thiserror::Error;

use super::{CENTER_INCLUDED_NOTE, METRIC_NOTE, VALUATION_NOTE};
use crate::algebra::{CanonC, Region};
use crate::par;
use crate::report::{Failure, FailureKind, Report, Tally};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum TopologyError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("{name} must be at least 1")]
    ZeroIndex { name: &'static str },
    #[error("p^alpha = {p}^{alpha} overflows")]
    StepOverflow { p: u64, alpha: u32 },
}

pub fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct TauPParams {
    pub p: u64,
    pub alpha: u32,
    pub lambda_max: u64,
}

impl TauPParams {
    pub fn new(p: u64, alpha: u32, lambda_max: u64) -> Result<Self, TopologyError> {
        if !is_prime(p) {
            return Err(TopologyError::NotPrime(p));
        }
        if alpha == 0 {
            return Err(TopologyError::ZeroIndex { name: "alpha" });
        }
        if lambda_max == 0 {
            return Err(TopologyError::ZeroIndex { name: "lambda_max" });
        }
        p.checked_pow(alpha).ok_or(TopologyError::StepOverflow { p, alpha })?;
        Ok(TauPParams { p, alpha, lambda_max })
    }

    /// `p^α`.
    pub fn step(&self) -> u64 {
        self.p.pow(self.alpha)
    }
}

/// `{0}` or `2^(-s)`; `Dyadic(0)` is the value 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(tag = "kind", content = "s", rename_all = "lowercase")]
pub enum MetricValue {
    Zero,
    Dyadic(u32),
}

impl MetricValue {
    pub const ONE: MetricValue = MetricValue::Dyadic(0);

    /// The value scaled by `2^64`, exact.
    fn scaled(self) -> u128 {
        match self {
            MetricValue::Zero => 0,
            MetricValue::Dyadic(s) => 1u128 << (64 - s.min(64)),
        }
    }

    /// `self <= a + b`, compared exactly.
    pub fn le_sum(self, a: MetricValue, b: MetricValue) -> bool {
        self.scaled() <= a.scaled() + b.scaled()
    }
}

impl Ord for MetricValue {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (MetricValue::Zero, MetricValue::Zero) => Ordering::Equal,
            (MetricValue::Zero, _) => Ordering::Less,
            (_, MetricValue::Zero) => Ordering::Greater,
            (MetricValue::Dyadic(a), MetricValue::Dyadic(b)) => b.cmp(a),
        }
    }
}

impl PartialOrd for MetricValue {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for MetricValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MetricValue::Zero => f.write_str("0"),
            MetricValue::Dyadic(0) => f.write_str("1"),
            MetricValue::Dyadic(s) => write!(f, "2^-{s}"),
        }
    }
}

/// Largest `t` with `p^t | n`, for `n > 0`.
pub fn valuation(mut n: u64, p: u64) -> u32 {
    debug_assert!(n > 0 && p >= 2);
    let mut t = 0;
    while n.is_multiple_of(p) {
        n /= p;
        t += 1;
    }
    t
}

pub fn metric_tau_p(x: CanonC, y: CanonC, p: u64) -> MetricValue {
    if x == y {
        MetricValue::Zero
    } else if x.k() == y.k() && x.m() == y.m() {
        MetricValue::Dyadic(valuation(x.l().abs_diff(y.l()), p))
    } else {
        MetricValue::ONE
    }
}

/// `{(k, l + λ·p^α, m) : 0 <= λ <= lambda_max}` in increasing `λ`.
pub fn nbhd_tau_p(x: CanonC, params: TauPParams) -> Vec<CanonC> {
    let step = params.step();
    (0..=params.lambda_max)
        .map_while(|lambda| {
            let l = lambda.checked_mul(step).and_then(|d| d.checked_add(x.l()))?;
            CanonC::new(x.k(), l, x.m()).ok()
        })
        .collect()
}

/// Membership in the untruncated basic set `U_α(center)`.
pub fn in_tau_nbhd(center: CanonC, step: u64, y: CanonC) -> bool {
    y.k() == center.k() && y.m() == center.m() && y.l() >= center.l() && (y.l() - center.l()).is_multiple_of(step)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum TauCondition {
    /// `m < n`
    #[serde(rename = "i")]
    I,
    /// `m = n != 0`
    #[serde(rename = "ii")]
    II,
    /// `m = n = 0`
    #[serde(rename = "iii")]
    III,
    /// `m > n`
    #[serde(rename = "iv")]
    IV,
}

impl TauCondition {
    pub fn label(self) -> &'static str {
        match self {
            TauCondition::I => "i",
            TauCondition::II => "ii",
            TauCondition::III => "iii",
            TauCondition::IV => "iv",
        }
    }
}

/// Which product condition applies to `(x, y)` and the centre of the
/// neighbourhood the product set must land in.
pub fn tau_condition(x: CanonC, y: CanonC) -> (TauCondition, CanonC) {
    let (k, l, m) = x.triple();
    let (n, t, q) = y.triple();
    let tri = |a, b, c| CanonC::new(a, b, c).expect("target is nonempty");
    match m.cmp(&n) {
        Ordering::Less => (TauCondition::I, tri(k + n - m, t, q)),
        Ordering::Equal if m != 0 => (TauCondition::II, tri(k, l + t + 1, q)),
        Ordering::Equal => (TauCondition::III, tri(k, l + t, q)),
        Ordering::Greater => (TauCondition::IV, tri(k, l, q + m - n)),
    }
}

/// Product pairs checked and failures for one `(x, y)`, added to `tally`.
fn product_inclusion(x: CanonC, y: CanonC, params: TauPParams, ux: &[CanonC], uy: &[CanonC], tally: &mut Tally) {
    let (cond, target) = tau_condition(x, y);
    let step = params.step();
    for &u in ux {
        for &v in uy {
            let uv = u * v;
            if !in_tau_nbhd(target, step, uv) {
                tally.push(Failure::new(
                    FailureKind::InclusionFailure,
                    format!(
                        "condition ({}) p={} alpha={}: {u}·{v} = {uv} not in U({target}) for x={x}, y={y}",
                        cond.label(),
                        params.p,
                        params.alpha
                    ),
                ));
            }
        }
    }
    tally.tested += (ux.len() * uy.len()) as u64;
}

fn tau_report(check: &str, params: TauPParams) -> Report {
    Report::new(check)
        .param("p", params.p)
        .param("alpha", params.alpha)
        .param("lambda_max", params.lambda_max)
        .note(CENTER_INCLUDED_NOTE)
        .note(METRIC_NOTE)
        .note(VALUATION_NOTE)
}

pub fn check_tau_p_product(x: CanonC, y: CanonC, params: TauPParams) -> Report {
    let (cond, target) = tau_condition(x, y);
    let ux = nbhd_tau_p(x, params);
    let uy = nbhd_tau_p(y, params);
    let mut tally = Tally::default();
    product_inclusion(x, y, params, &ux, &uy, &mut tally);
    let mut report = tau_report("tau-p-product", params).param("x", x).param("y", y);
    report.detail("condition", cond);
    report.detail("target", target);
    report.add_tally(tally);
    report.finish()
}

/// Product conditions for every ordered pair of `r` and every
/// `p ∈ primes`, `α ∈ alphas`, with `λmax = lambda_factor·p^α`.
pub fn check_tau_p_grid(
    r: Region,
    primes: &[u64],
    alphas: RangeInclusive<u32>,
    lambda_factor: u64,
) -> Result<Report, TopologyError> {
    let elems = r.elements();
    let mut report = Report::new("tau-p-product-grid")
        .param("region", r)
        .param("primes", primes)
        .param("alpha_min", alphas.start())
        .param("alpha_max", alphas.end())
        .param("lambda_factor", lambda_factor)
        .note(CENTER_INCLUDED_NOTE)
        .note(METRIC_NOTE)
        .note(VALUATION_NOTE);
    let mut counts = [0u64; 4];
    for &p in primes {
        for alpha in alphas.clone() {
            let step = TauPParams::new(p, alpha, 1)?.step();
            let lambda_max = lambda_factor.checked_mul(step).ok_or(TopologyError::StepOverflow { p, alpha })?;
            let params = TauPParams::new(p, alpha, lambda_max)?;
            let nbhds: Vec<Vec<CanonC>> = par::map(&elems, |x| nbhd_tau_p(*x, params));
            let indexed: Vec<usize> = (0..elems.len()).collect();
            let tally = par::fold(
                &indexed,
                Tally::default,
                |mut acc, &i| {
                    for j in 0..elems.len() {
                        product_inclusion(elems[i], elems[j], params, &nbhds[i], &nbhds[j], &mut acc);
                    }
                    acc
                },
                Tally::merge,
            );
            report.add_tally(tally);
        }
    }
    for &x in &elems {
        for &y in &elems {
            counts[tau_condition(x, y).0 as usize] += 1;
        }
    }
    report.detail(
        "pairs_per_condition",
        serde_json::json!({"i": counts[0], "ii": counts[1], "iii": counts[2], "iv": counts[3]}),
    );
    Ok(report.finish())
}

/// Finite sample around `x` on which the metric axioms are checked: the
/// centre, the first basic-set points, off-lattice points in the same cell
/// and the neighbouring cells in `k` and `m`.
pub fn metric_sample(x: CanonC, params: TauPParams) -> Vec<CanonC> {
    let (k, l, m) = x.triple();
    let mut out: Vec<CanonC> = nbhd_tau_p(x, TauPParams { lambda_max: params.lambda_max.min(12), ..params });
    for d in 1..=params.step().min(12) {
        out.push(CanonC::new(k, l + d, m).expect("nonzero l"));
    }
    let perturbed = [
        k.checked_add(1).map(|k| (k, l, m)),
        k.checked_sub(1).map(|k| (k, l, m)),
        m.checked_add(1).map(|m| (k, l, m)),
        m.checked_sub(1).map(|m| (k, l, m)),
    ];
    out.extend(perturbed.into_iter().flatten().filter_map(|(a, b, c)| CanonC::new(a, b, c).ok()));
    out.sort();
    out.dedup();
    out
}

pub fn check_tau_p_metric_base(x: CanonC, params: TauPParams) -> Report {
    let p = params.p;
    let radius = MetricValue::Dyadic(params.alpha);
    let mut report = tau_report("tau-p-metric-base", params).param("x", x);
    let mut tested = 0u64;
    let mut fails = Vec::new();
    let metric_fail = |axiom: &str, detail: String| Failure::new(FailureKind::MetricFailure, format!("{axiom}: {detail}"));

    let u = nbhd_tau_p(x, params);
    if u.len() < 2 {
        fails.push(metric_fail("no isolated points", format!("U({x}) has {} element(s)", u.len())));
    }
    for &y in &u {
        tested += 1;
        let d = metric_tau_p(x, y, p);
        if d > radius {
            fails.push(metric_fail("base within ball", format!("d({x},{y}) = {d} > {radius}")));
        }
    }

    let sample = metric_sample(x, params);
    for &y in &sample {
        let d = metric_tau_p(x, y, p);
        if d <= radius && y.l() >= x.l() && !in_tau_nbhd(x, params.step(), y) {
            fails.push(metric_fail("ball within base", format!("d({x},{y}) = {d} but {y} not in U({x})")));
        }
        for &z in &sample {
            tested += 1;
            let dyz = metric_tau_p(y, z, p);
            if (dyz == MetricValue::Zero) != (y == z) {
                fails.push(metric_fail("identity", format!("d({y},{z}) = {dyz}")));
            }
            if dyz != metric_tau_p(z, y, p) {
                fails.push(metric_fail("symmetry", format!("d({y},{z}) != d({z},{y})")));
            }
            for &w in &sample {
                let (dzw, dyw) = (metric_tau_p(z, w, p), metric_tau_p(y, w, p));
                if !dyw.le_sum(dyz, dzw) {
                    fails.push(metric_fail("triangle", format!("d({y},{w}) = {dyw} > d({y},{z}) + d({z},{w})")));
                }
                let same_cell = y.cell() == z.cell() && z.cell() == w.cell();
                if same_cell && dyw > dyz.max(dzw) {
                    fails.push(metric_fail("ultrametric", format!("d({y},{w}) = {dyw} > max({dyz}, {dzw})")));
                }
            }
        }
    }
    report.detail("sample_size", sample.len());
    report.detail("basic_set_size", u.len());
    report.record(tested, fails);
    report.finish()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(k: u64, l: u64, m: u64) -> CanonC {
        CanonC::new(k, l, m).unwrap()
    }

    fn params(p: u64, alpha: u32, lambda_max: u64) -> TauPParams {
        TauPParams::new(p, alpha, lambda_max).unwrap()
    }

    #[test]
    fn param_validation() {
        assert_eq!(TauPParams::new(4, 1, 1), Err(TopologyError::NotPrime(4)));
        assert!(TauPParams::new(2, 0, 1).is_err());
        assert!(TauPParams::new(2, 1, 0).is_err());
        assert!(TauPParams::new(2, 64, 1).is_err());
        assert!(TauPParams::new(7, 2, 3).is_ok());
    }

    #[test]
    fn nbhd_examples() {
        assert_eq!(nbhd_tau_p(c(1, 2, 3), params(2, 1, 3)), vec![c(1, 2, 3), c(1, 4, 3), c(1, 6, 3), c(1, 8, 3)]);
        assert_eq!(nbhd_tau_p(c(0, 1, 0), params(3, 1, 1)), vec![c(0, 1, 0), c(0, 4, 0)]);
    }

    #[test]
    fn metric_examples() {
        assert_eq!(metric_tau_p(c(0, 3, 0), c(0, 7, 0), 2), MetricValue::Dyadic(2));
        assert_eq!(metric_tau_p(c(1, 3, 0), c(0, 3, 0), 2), MetricValue::ONE);
        assert_eq!(metric_tau_p(c(2, 5, 1), c(2, 5, 1), 5), MetricValue::Zero);
        assert_eq!(MetricValue::Dyadic(2).to_string(), "2^-2");
    }

    #[test]
    fn metric_order_and_sum() {
        assert!(MetricValue::Zero < MetricValue::Dyadic(40));
        assert!(MetricValue::Dyadic(3) < MetricValue::Dyadic(1));
        assert!(MetricValue::Dyadic(1).le_sum(MetricValue::Dyadic(2), MetricValue::Dyadic(2)));
        assert!(!MetricValue::Dyadic(0).le_sum(MetricValue::Dyadic(2), MetricValue::Dyadic(2)));
        let v = serde_json::to_value(MetricValue::Dyadic(2)).unwrap();
        assert_eq!(v, serde_json::json!({"kind": "dyadic", "s": 2}));
    }

    #[test]
    fn product_examples() {
        let r = check_tau_p_product(c(1, 1, 0), c(2, 1, 1), params(2, 1, 3));
        assert!(r.ok());
        assert_eq!(r.details["condition"], "i");
        assert_eq!(r.details["target"], "3,1,1");
        let r = check_tau_p_product(c(0, 1, 0), c(0, 1, 0), params(2, 2, 2));
        assert!(r.ok());
        assert_eq!(r.details["condition"], "iii");
        assert_eq!(r.details["target"], "0,2,0");
        let r = check_tau_p_product(c(0, 1, 2), c(0, 1, 1), params(3, 1, 2));
        assert!(r.ok());
        assert_eq!(r.details["condition"], "iv");
        assert_eq!(r.details["target"], "0,1,3");
    }

    #[test]
    fn metric_base_example() {
        let r = check_tau_p_metric_base(c(0, 1, 0), params(2, 1, 4));
        assert!(r.ok(), "{:?}", r.failures);
        assert!(r.convention_notes.len() >= 2);
    }
}
