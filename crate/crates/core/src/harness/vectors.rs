//! JSONL regression vectors: one `{op, args, expect, provenance}` record
//! per line, replayed against the library.

use std::fmt;
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use serde_json::{json, Map, Value};
use thiserror::Error;

use super::config::RunConfig;
use super::suites::{run_suite, SuiteId};
use crate::algebra::green::{eval_word, simple_witness};
use crate::algebra::{
    apply_translation, green_witness, h_related, hom_h, is_fixed, is_idempotent, mul_b, mul_c, phi, pow_c,
    solve_equation, BicyclicNF, CanonC, EquationShape, GreenSide, Region, Side,
};
use crate::extensions::{
    check_pi_homomorphism, check_pi_homomorphism_with, check_star_associativity, check_star_associativity_with,
    star_coverage_complete, star_traced, try_star_mul, try_zero_mul, ExtElem, ExtZeroElem, StarBranch,
};
use crate::report::{FailureKind, Report};
use crate::topology::{
    check_ext_continuity, check_fix_inclusions, check_tau_p_metric_base, check_tau_p_product,
    check_translation_retract, check_zero_condition, in_zero_nbhd, check_zero_continuity, metric_tau_p, nbhd_ext, nbhd_tau_p,
    nbhd_zero, ExtCase, TauPParams, ZeroCondition,
};
use crate::words::{
    from_normal_c, oracle_mul_c, parse_word, reduce_c, to_normal_b, to_normal_c, RewriteSystem, Word, WordError,
};

#[derive(Debug, Error)]
pub enum VectorError {
    #[error("cannot read {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

impl VectorError {
    pub fn code(&self) -> &'static str {
        match self {
            VectorError::Io { .. } => "IO_ERROR",
            VectorError::Parse { .. } => "PARSE_ERROR",
        }
    }
}

macro_rules! ops {
    ($($variant:ident => $name:literal),* $(,)?) => {
        #[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
        pub enum VectorOp { $($variant),* }

        impl VectorOp {
            pub const ALL: &'static [VectorOp] = &[$(VectorOp::$variant),*];

            pub fn name(self) -> &'static str {
                match self { $(VectorOp::$variant => $name),* }
            }
        }
    };
}

ops! {
    ParseWord => "parse_word",
    ReduceC => "reduce_c",
    ToNormalC => "to_normal_c",
    FromNormalC => "from_normal_c",
    ToNormalB => "to_normal_b",
    OracleMulC => "oracle_mul_c",
    CriticalPairsCheck => "critical_pairs_check",
    MulC => "mul_c",
    MulB => "mul_b",
    PowC => "pow_c",
    HomH => "hom_h",
    HomPair => "hom_pair",
    Phi => "phi",
    EnumerateRegion => "enumerate_region",
    SolveEquation => "solve_equation",
    GreenWitness => "green_witness",
    HRelated => "h_related",
    HScan => "h_scan",
    SimpleWitness => "simple_witness",
    SimpleScan => "simple_scan",
    ApplyTranslation => "apply_translation",
    IsFixed => "is_fixed",
    IsIdempotent => "is_idempotent",
    IdempotentScan => "idempotent_scan",
    StarMul => "star_mul",
    ZeroMul => "zero_mul",
    CheckStarAssociativity => "check_star_associativity",
    CheckPiHomomorphism => "check_pi_homomorphism",
    NbhdTauP => "nbhd_tau_p",
    MetricTauP => "metric_tau_p",
    CheckTauPProduct => "check_tau_p_product",
    CheckTauPMetricBase => "check_tau_p_metric_base",
    NbhdExt => "nbhd_ext",
    CheckExtContinuity => "check_ext_continuity",
    NbhdZero => "nbhd_zero",
    InZeroNbhd => "in_zero_nbhd",
    CheckZeroContinuity => "check_zero_continuity",
    CheckFixInclusions => "check_fix_inclusions",
    CheckTranslationRetract => "check_translation_retract",
    RunSuite => "run_suite",
    LoadVectors => "load_vectors",
    ReplayVectors => "replay_vectors",
}

impl FromStr for VectorOp {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        VectorOp::ALL.iter().copied().find(|op| op.name() == s).ok_or_else(|| format!("unknown op {s:?}"))
    }
}

impl fmt::Display for VectorOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ProvenanceTag {
    Paper,
    Trivial,
    Derived,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Provenance {
    pub tag: ProvenanceTag,
    #[serde(default)]
    pub citation: String,
}

#[derive(Debug, Clone, PartialEq)]
pub struct VectorRecord {
    pub line: usize,
    pub op: VectorOp,
    pub args: Map<String, Value>,
    pub expect: Value,
    pub provenance: Option<Provenance>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawRecord {
    op: String,
    #[serde(default)]
    args: Map<String, Value>,
    expect: Value,
    #[serde(default)]
    provenance: Option<Provenance>,
}

/// Parse JSONL text; blank lines are skipped, line numbers are 1-based.
pub fn parse_vectors(text: &str) -> Result<Vec<VectorRecord>, VectorError> {
    let mut out = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        if raw.trim().is_empty() {
            continue;
        }
        let rec: RawRecord =
            serde_json::from_str(raw).map_err(|e| VectorError::Parse { line, message: e.to_string() })?;
        let op = rec.op.parse().map_err(|message| VectorError::Parse { line, message })?;
        out.push(VectorRecord { line, op, args: rec.args, expect: rec.expect, provenance: rec.provenance });
    }
    Ok(out)
}

pub fn load_vectors(path: &Path) -> Result<Vec<VectorRecord>, VectorError> {
    let text = std::fs::read_to_string(path)
        .map_err(|source| VectorError::Io { path: path.display().to_string(), source })?;
    parse_vectors(&text)
}

/// `expect` matches `actual` when equal, or, for objects, when every key of
/// `expect` matches the same key of `actual`.
pub fn matches_expectation(expect: &Value, actual: &Value) -> bool {
    match (expect, actual) {
        (Value::Object(e), Value::Object(a)) => {
            e.iter().all(|(k, ev)| a.get(k).is_some_and(|av| matches_expectation(ev, av)))
        }
        _ => expect == actual,
    }
}

pub fn replay_vectors(records: &[VectorRecord], cfg: &RunConfig) -> Report {
    let mut report = Report::new("replay").param("records", records.len());
    let mut mismatches = Vec::new();
    for rec in records {
        report.items_tested += 1;
        let actual = evaluate(rec.op, &rec.args, cfg);
        if !matches_expectation(&rec.expect, &actual) {
            report.fail(
                FailureKind::Mismatch,
                format!("line {} {}: expected {}, got {}", rec.line, rec.op, rec.expect, actual),
            );
            mismatches.push(json!({"line": rec.line, "op": rec.op.name(), "expected": rec.expect, "actual": actual}));
        }
    }
    report.detail("mismatches", &mismatches);
    report.finish()
}

struct ArgError(String);

impl From<WordError> for ArgError {
    fn from(e: WordError) -> Self {
        ArgError(e.code().to_string())
    }
}

type Args<'a> = &'a Map<String, Value>;

fn text<'a>(args: Args<'a>, key: &str) -> Result<&'a str, ArgError> {
    args.get(key).and_then(Value::as_str).ok_or_else(|| ArgError(format!("missing string argument {key}")))
}

fn num(args: Args, key: &str) -> Result<u64, ArgError> {
    match args.get(key) {
        Some(Value::Number(n)) => n.as_u64().ok_or_else(|| ArgError(format!("argument {key} is not a nonnegative integer"))),
        Some(Value::String(s)) => s.parse().map_err(|_| ArgError(format!("argument {key} is not a number"))),
        _ => Err(ArgError(format!("missing numeric argument {key}"))),
    }
}

fn parsed<T: FromStr>(args: Args, key: &str) -> Result<T, ArgError>
where
    T::Err: fmt::Display,
{
    text(args, key)?.parse().map_err(|e: T::Err| ArgError(format!("argument {key}: {e}")))
}

fn strings<T: fmt::Display>(items: impl IntoIterator<Item = T>) -> Value {
    Value::Array(items.into_iter().map(|x| Value::String(x.to_string())).collect())
}

fn tau_params(args: Args) -> Result<TauPParams, ArgError> {
    let alpha = u32::try_from(num(args, "alpha")?).map_err(|_| ArgError("alpha too large".into()))?;
    TauPParams::new(num(args, "p")?, alpha, num(args, "lambda_max")?).map_err(|e| {
        ArgError(match e {
            crate::topology::TopologyError::NotPrime(_) => "NOT_PRIME".into(),
            other => other.to_string(),
        })
    })
}

/// Outcome of a check as a JSON object: pass flag, counts, first failure
/// kind and every detail field.
pub fn report_value(r: &Report) -> Value {
    let mut obj = Map::new();
    obj.insert("ok".into(), json!(r.ok()));
    obj.insert("items_tested".into(), json!(r.items_tested));
    obj.insert("failure_count".into(), json!(r.failure_count));
    obj.insert("vacuous".into(), json!(r.vacuous));
    obj.insert("warnings".into(), json!(r.warnings.len()));
    if let Some(f) = r.failures.first() {
        obj.insert("first_failure".into(), json!(f.kind.code()));
    }
    for (k, v) in &r.details {
        obj.insert(k.clone(), v.clone());
    }
    Value::Object(obj)
}

/// Evaluate one op; errors come back as `{"error": CODE}`.
pub fn evaluate(op: VectorOp, args: &Map<String, Value>, cfg: &RunConfig) -> Value {
    match eval_inner(op, args, cfg) {
        Ok(v) => v,
        Err(ArgError(code)) => json!({ "error": code }),
    }
}

fn eval_inner(op: VectorOp, args: Args, cfg: &RunConfig) -> Result<Value, ArgError> {
    use VectorOp::*;
    let word = |key: &str| -> Result<Word, ArgError> { Ok(parse_word(text(args, key)?)?) };
    let canon = |key: &str| parsed::<CanonC>(args, key);
    let region = |key: &str| parsed::<Region>(args, key);
    Ok(match op {
        ParseWord => json!(word("text")?.to_string()),
        ReduceC => json!(reduce_c(&word("w")?)?.to_string()),
        ToNormalC => json!(to_normal_c(&word("w")?)?.to_string()),
        FromNormalC => json!(from_normal_c(canon("x")?).to_string()),
        ToNormalB => json!(to_normal_b(&word("w")?).to_string()),
        OracleMulC => json!(oracle_mul_c(canon("x")?, canon("y")?).to_string()),
        CriticalPairsCheck => {
            let sys = match text(args, "system")? {
                "c" => RewriteSystem::redei(),
                "b" => RewriteSystem::bicyclic(),
                rules => RewriteSystem::parse(rules)?,
            };
            match sys.critical_pairs_check() {
                Ok(rep) => json!({
                    "ok": true,
                    "superpositions": rep.superpositions.iter()
                        .map(|s| json!({"word": s.word.to_string(), "joined": s.joined.to_string()}))
                        .collect::<Vec<_>>(),
                }),
                Err(WordError::ConfluenceFailure { word, left, right }) => json!({
                    "ok": false, "error": "CONFLUENCE_FAILURE", "word": word.to_string(),
                    "left": left.to_string(), "right": right.to_string(),
                }),
                Err(e) => return Err(e.into()),
            }
        }
        MulC => json!(canon("x")?.try_mul(canon("y")?).map_err(|e| ArgError(e.to_string()))?.to_string()),
        MulB => json!(mul_b(parsed(args, "x")?, parsed(args, "y")?).to_string()),
        PowC => match pow_c(canon("x")?, num(args, "n")?) {
            Ok(x) => json!(x.to_string()),
            Err(crate::algebra::AlgebraError::ZeroExponent) => json!({"error": "ZERO_EXPONENT"}),
            Err(e) => return Err(ArgError(e.to_string())),
        },
        HomH => json!(hom_h(canon("x")?).to_string()),
        HomPair => {
            let (x, y) = (canon("x")?, canon("y")?);
            json!({"h_xy": hom_h(mul_c(x, y)).to_string(), "h_x_h_y": mul_b(hom_h(x), hom_h(y)).to_string()})
        }
        Phi => json!(phi(num(args, "i")?, num(args, "j")?, canon("x")?).map_err(|e| ArgError(e.to_string()))?.to_string()),
        EnumerateRegion => {
            let r = region("region")?;
            json!({"len": r.len(), "elements": strings(r.elements())})
        }
        SolveEquation => {
            let s = solve_equation(parsed::<EquationShape>(args, "shape")?, canon("rhs")?, region("region")?);
            strings(s.set)
        }
        GreenWitness => {
            let side: GreenSide = parsed(args, "side")?;
            match green_witness(side, canon("x")?, canon("y")?, num(args, "maxlen")? as usize) {
                Some(p) => json!({"u": p.u.to_string(), "v": p.v.to_string()}),
                None => Value::Null,
            }
        }
        HRelated => json!(h_related(canon("x")?, canon("y")?, num(args, "maxlen")? as usize)),
        HScan => {
            let elems = region("region")?.elements();
            let maxlen = num(args, "maxlen")? as usize;
            let n = crate::par::filter(&elems, |x| elems.iter().any(|y| x != y && h_related(*x, *y, maxlen))).len();
            json!({"nontrivial": n})
        }
        SimpleWitness => {
            let (x, y) = (canon("x")?, canon("y")?);
            match simple_witness(x, y, num(args, "maxlen")? as usize) {
                Some(p) => {
                    let verified = eval_word(&p.u.concat(&from_normal_c(x)).concat(&p.v)) == Some(y);
                    json!({"found": true, "verified": verified, "u": p.u.to_string(), "v": p.v.to_string()})
                }
                None => json!({"found": false}),
            }
        }
        SimpleScan => {
            let elems = region("region")?.elements();
            let bound = args.get("maxlen").map(|_| num(args, "maxlen")).transpose()?;
            let missing = crate::par::filter(&elems, |x| {
                elems.iter().any(|y| {
                    let b = bound.map(|b| b as usize).unwrap_or_else(|| crate::algebra::green::default_simple_bound(*x, *y));
                    simple_witness(*x, *y, b).is_none()
                })
            })
            .len();
            json!({"pairs": elems.len() * elems.len(), "sources_with_missing": missing})
        }
        ApplyTranslation => {
            json!(apply_translation(parsed::<Side>(args, "side")?, canon("c")?, canon("x")?).to_string())
        }
        IsFixed => json!(is_fixed(parsed::<Side>(args, "side")?, canon("c")?, canon("x")?)),
        IsIdempotent => json!(is_idempotent(canon("x")?)),
        IdempotentScan => {
            let elems = region("region")?.elements();
            json!({"idempotents": crate::par::filter(&elems, |x| is_idempotent(*x)).len(), "checked": elems.len()})
        }
        StarMul => {
            let z = try_star_mul(parsed::<ExtElem>(args, "x")?, parsed::<ExtElem>(args, "y")?)
                .map_err(|e| ArgError(e.to_string()))?;
            json!(z.to_string())
        }
        ZeroMul => {
            let z = try_zero_mul(parsed::<ExtZeroElem>(args, "x")?, parsed::<ExtZeroElem>(args, "y")?)
                .map_err(|e| ArgError(e.to_string()))?;
            json!(z.to_string())
        }
        CheckStarAssociativity => {
            let (r, bcap) = (region("region")?, num(args, "bcap")?);
            let rep = match args.get("fixture").and_then(Value::as_str) {
                None => check_star_associativity(r, bcap),
                Some("corrupt-eq-branch") => check_star_associativity_with(r, bcap, corrupt_eq_branch),
                Some(other) => return Err(ArgError(format!("unknown fixture {other}"))),
            };
            let mut v = report_value(&rep);
            v["full_coverage"] = json!(star_coverage_complete(&rep));
            v
        }
        CheckPiHomomorphism => {
            let r = region("region")?;
            let rep = match args.get("fixture").and_then(Value::as_str) {
                None => check_pi_homomorphism(r),
                Some("swapped-hom") => check_pi_homomorphism_with(r, |x| BicyclicNF::new(x.m(), x.k())),
                Some(other) => return Err(ArgError(format!("unknown fixture {other}"))),
            };
            report_value(&rep)
        }
        NbhdTauP => strings(nbhd_tau_p(canon("x")?, tau_params(args)?)),
        MetricTauP => {
            let p = num(args, "p")?;
            if !crate::topology::is_prime(p) {
                return Err(ArgError("NOT_PRIME".into()));
            }
            json!(metric_tau_p(canon("x")?, canon("y")?, p).to_string())
        }
        CheckTauPProduct => report_value(&check_tau_p_product(canon("x")?, canon("y")?, tau_params(args)?)),
        CheckTauPMetricBase => report_value(&check_tau_p_metric_base(canon("x")?, tau_params(args)?)),
        NbhdExt => strings(nbhd_ext(parsed(args, "x")?, num(args, "n")?, num(args, "kcap")?)),
        CheckExtContinuity => {
            let case = match num(args, "case")? {
                1 => ExtCase::BB(parsed(args, "left")?, parsed(args, "right")?),
                2 => ExtCase::BC(parsed(args, "left")?, parsed(args, "right")?),
                3 => ExtCase::CB(parsed(args, "left")?, parsed(args, "right")?),
                n => return Err(ArgError(format!("no case {n}"))),
            };
            report_value(&check_ext_continuity(case, num(args, "u")?, num(args, "kcap")?))
        }
        NbhdZero => strings(nbhd_zero(num(args, "n")?, region("region")?)),
        InZeroNbhd => json!(in_zero_nbhd(num(args, "n")?, parsed(args, "x")?)),
        CheckZeroContinuity => {
            let (x, i, r) = (canon("x")?, num(args, "i")?, region("region")?);
            let rep = match args.get("condition").and_then(Value::as_str) {
                None | Some("all") => check_zero_continuity(x, i, r),
                Some("i") => check_zero_condition(ZeroCondition::I, x, i, r),
                Some("ii") => check_zero_condition(ZeroCondition::II, x, i, r),
                Some("iii") => check_zero_condition(ZeroCondition::III, x, i, r),
                Some(other) => return Err(ArgError(format!("unknown condition {other}"))),
            };
            report_value(&rep)
        }
        CheckFixInclusions => report_value(&check_fix_inclusions(num(args, "n")?.max(1), region("region")?)),
        CheckTranslationRetract => {
            report_value(&check_translation_retract(num(args, "k")?.max(1), num(args, "l")?, region("region")?))
        }
        RunSuite => {
            let id: SuiteId = parsed(args, "suite")?;
            let rep = run_suite(id, cfg);
            let mut v = report_value(&rep.report);
            v["passed"] = json!(rep.passed);
            v["discrepancies"] = json!(rep.paper_discrepancies.iter().map(|d| d.id.clone()).collect::<Vec<_>>());
            v
        }
        LoadVectors => match parse_vectors(text(args, "text")?) {
            Ok(recs) => json!({"records": recs.len()}),
            Err(e) => json!({"error": e.code()}),
        },
        ReplayVectors => match parse_vectors(text(args, "text")?) {
            Ok(recs) => {
                let rep = replay_vectors(&recs, cfg);
                json!({"passed": rep.ok(), "mismatches": rep.failure_count, "vacuous": rep.vacuous})
            }
            Err(e) => json!({"error": e.code()}),
        },
    })
}

/// Negative control: the `C ★ B` equal-exponent case with the wrong `a`-exponent.
pub fn corrupt_eq_branch(x: ExtElem, y: ExtElem) -> (ExtElem, StarBranch) {
    let (z, b) = star_traced(x, y);
    match (x, y, b) {
        (ExtElem::C(c), ExtElem::B(d), StarBranch::CbEq) => (ExtElem::B(BicyclicNF::new(c.k(), d.j + 1)), b),
        _ => (z, b),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_the_documented_record() {
        let recs = parse_vectors(r#"{"op":"mul_c","args":{"x":"1,2,3","y":"2,1,1"},"expect":"1,2,2"}"#).unwrap();
        assert_eq!(recs.len(), 1);
        assert_eq!(recs[0].op, VectorOp::MulC);
        assert!(replay_vectors(&recs, &RunConfig::default()).ok());
    }

    #[test]
    fn empty_and_blank_inputs() {
        assert!(parse_vectors("").unwrap().is_empty());
        assert!(parse_vectors("\n  \n").unwrap().is_empty());
        let rep = replay_vectors(&[], &RunConfig::default());
        assert!(rep.ok() && rep.vacuous);
    }

    #[test]
    fn bad_lines_report_their_number() {
        let text = "{\"op\":\"mul_c\",\"args\":{},\"expect\":1}\n{\"op\":\"frobnicate\",\"expect\":1}\n";
        match parse_vectors(text) {
            Err(e @ VectorError::Parse { line: 2, .. }) => assert_eq!(e.code(), "PARSE_ERROR"),
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse_vectors("not json"), Err(VectorError::Parse { line: 1, .. })));
    }

    #[test]
    fn flipped_expectation_is_one_mismatch() {
        let text = "{\"op\":\"mul_c\",\"args\":{\"x\":\"1,2,3\",\"y\":\"2,1,1\"},\"expect\":\"1,2,3\"}\n\
                    {\"op\":\"mul_c\",\"args\":{\"x\":\"0,1,0\",\"y\":\"0,1,0\"},\"expect\":\"0,2,0\"}";
        let rep = replay_vectors(&parse_vectors(text).unwrap(), &RunConfig::default());
        assert_eq!(rep.failure_count, 1);
    }

    #[test]
    fn subset_matching() {
        let actual = json!({"ok": true, "n": 3, "inner": {"a": 1, "b": 2}});
        assert!(matches_expectation(&json!({"ok": true}), &actual));
        assert!(matches_expectation(&json!({"inner": {"b": 2}}), &actual));
        assert!(!matches_expectation(&json!({"missing": 1}), &actual));
        assert!(!matches_expectation(&json!([1]), &json!([1, 2])));
    }

    #[test]
    fn reference_corpus_replays() {
        let recs = parse_vectors(crate::harness::REFERENCE_VECTORS).unwrap();
        let rep = replay_vectors(&recs, &RunConfig::default());
        assert!(rep.ok(), "{}", serde_json::to_string_pretty(&rep.details).unwrap());
    }

    #[test]
    fn op_names_round_trip() {
        for op in VectorOp::ALL {
            assert_eq!(op.name().parse::<VectorOp>().unwrap(), *op);
        }
    }
}
