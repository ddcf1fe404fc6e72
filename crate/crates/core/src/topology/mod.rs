//! Finite truncations of three topologies and checks of their continuity
//! and inclusion properties. A pass is a statement about the truncation only.

pub mod ext;
pub mod fix;
pub mod tau_p;
pub mod zero;

pub use ext::{check_ext_continuity, check_ext_grid, ext_target, in_ext_nbhd, nbhd_ext, ExtCase, ExtTarget};
pub use fix::{check_fix_inclusions, check_translation_retract, idempotence_exceptions};
pub use tau_p::{
    check_tau_p_grid, check_tau_p_metric_base, check_tau_p_product, in_tau_nbhd, is_prime, metric_tau_p, nbhd_tau_p,
    tau_condition, valuation, MetricValue, TauCondition, TauPParams, TopologyError,
};
pub use zero::{check_zero_condition, check_zero_continuity, check_zero_grid, in_zero_nbhd, nbhd_zero, ZeroCondition};

use serde::Serialize;

use crate::algebra::{CanonC, Region};
use crate::extensions::{ExtElem, ExtZeroElem};

pub const CENTER_INCLUDED_NOTE: &str =
    "basic sets use lambda >= 0, so each contains its centre; the printed range lambda >= 1 would exclude it";
pub const METRIC_NOTE: &str =
    "metric on a common cell is 2^(-s), not 2^s; the printed sign is unbounded and does not generate the basic sets";
pub const VALUATION_NOTE: &str = "s is read as the p-adic valuation of |l1 - l2|";
pub const EXT_CASE3A_NOTE: &str = "case 3 sub-case a: the target is the basic set at B:i-k+m,p with the same index u; \
     the printed one-point target has an unbound exponent and the product set is not a single point";
pub const RETRACT_NOTE: &str = "translations by b^k(ab)^l a^k are not idempotent on points with first exponent <= k; \
     these exceptions are recorded, not asserted";

/// Which topology a neighbourhood belongs to, with its centre and index.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NbhdSpec {
    TauP { center: CanonC, params: TauPParams },
    Ext { center: ExtElem, n: u64, kcap: u64 },
    Zero { n: u64, region: Region },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum Nbhd {
    TauP(Vec<CanonC>),
    Ext(Vec<ExtElem>),
    Zero(Vec<ExtZeroElem>),
}

impl NbhdSpec {
    pub fn evaluate(&self) -> Nbhd {
        match *self {
            NbhdSpec::TauP { center, params } => Nbhd::TauP(nbhd_tau_p(center, params)),
            NbhdSpec::Ext { center, n, kcap } => Nbhd::Ext(nbhd_ext(center, n, kcap)),
            NbhdSpec::Zero { n, region } => Nbhd::Zero(nbhd_zero(n, region)),
        }
    }
}

impl Nbhd {
    pub fn len(&self) -> usize {
        match self {
            Nbhd::TauP(v) => v.len(),
            Nbhd::Ext(v) => v.len(),
            Nbhd::Zero(v) => v.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn render(&self) -> Vec<String> {
        match self {
            Nbhd::TauP(v) => v.iter().map(|x| x.to_string()).collect(),
            Nbhd::Ext(v) => v.iter().map(|x| x.to_string()).collect(),
            Nbhd::Zero(v) => v.iter().map(|x| x.to_string()).collect(),
        }
    }
}
