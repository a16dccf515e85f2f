//! Run configuration and JSON/text report emission.
//!
//! Every JSON document carries `"schema": 1` and echoes the RNG seed, and is
//! rendered from deterministic structures only, so identical invocations
//! produce byte-identical output.

use serde_json::{json, Value};

use crate::error::Result;
use crate::group::GroupHandle;
use crate::kgroup::KGroupReport;
use crate::psl::{KleinCaseReport, RankTwoReport};
use crate::subgroup::{is_prime, SubgroupHandle};
use crate::tower::RhoTower;
use crate::weakhom::{AGroup, VerifySettings, WeakHom};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OutputFormat {
    Json,
    Text,
}

#[derive(Clone, Copy, Debug)]
pub struct RunConfig {
    pub enumeration_bound: u64,
    pub exhaustive_pair_bound: u64,
    pub sample_count: u64,
    pub rng_seed: u64,
    pub output_format: OutputFormat,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            enumeration_bound: 1_000_000,
            exhaustive_pair_bound: 10_000,
            sample_count: 1_000_000,
            rng_seed: 0,
            output_format: OutputFormat::Json,
        }
    }
}

impl RunConfig {
    pub fn verify_settings(&self) -> VerifySettings {
        VerifySettings {
            exhaustive_pair_bound: self.exhaustive_pair_bound,
            sample_count: self.sample_count,
            seed: self.rng_seed,
        }
    }
}

fn with_header(config: &RunConfig, mut body: serde_json::Map<String, Value>) -> Value {
    let mut map = serde_json::Map::new();
    map.insert("schema".into(), json!(SCHEMA_VERSION));
    map.insert("seed".into(), json!(config.rng_seed));
    map.append(&mut body);
    Value::Object(map)
}

fn obj(value: Value) -> serde_json::Map<String, Value> {
    match value {
        Value::Object(m) => m,
        _ => unreachable!("report bodies are objects"),
    }
}

/// JSON value for a possibly huge group order: a number when it fits the
/// JSON number range, a decimal string beyond that.
pub fn order_value(n: u128) -> Value {
    match u64::try_from(n) {
        Ok(small) => json!(small),
        Err(_) => json!(n.to_string()),
    }
}

/// Prime factorization of a permutation-group order. Every prime factor
/// divides the degree factorial, so trial division is capped: any remainder
/// past the cap is itself prime for the orders this tool produces.
pub fn prime_factors(mut n: u128) -> Vec<Value> {
    let mut out = Vec::new();
    let mut d = 2u128;
    while d * d <= n && d <= 1_000_000 {
        if n.is_multiple_of(d) {
            out.push(json!(d as u64));
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(order_value(n));
    }
    out
}

pub fn info_report(
    config: &RunConfig,
    spec: &str,
    group: &GroupHandle,
    sylow: Option<(u64, &SubgroupHandle, &SubgroupHandle)>,
) -> Value {
    let mut body = obj(json!({
        "group": spec,
        "degree": group.degree(),
        "order": order_value(group.order()),
        "prime_factors": prime_factors(group.order()),
    }));
    if let Some((p, s, n)) = sylow {
        body.insert("prime".into(), json!(p));
        body.insert("sylow_order".into(), json!(s.order()));
        body.insert(
            "sylow_shape".into(),
            json!(crate::kgroup::SylowShape::of(s).label()),
        );
        body.insert("normalizer_order".into(), json!(n.order()));
    }
    with_header(config, body)
}

pub fn tower_report(config: &RunConfig, spec: &str, tower: &RhoTower, group_order: u128) -> Value {
    let rep = tower.to_report(group_order);
    let mut body = obj(serde_json::to_value(&rep).expect("tower report serializes"));
    body.insert("group".into(), json!(spec));
    body.insert("group_order".into(), order_value(group_order));
    with_header(config, body)
}

pub fn kgroup_report(config: &RunConfig, spec: &str, report: &KGroupReport) -> Value {
    let checks: Vec<Value> = report
        .hypothesis_checks
        .iter()
        .map(|c| serde_json::to_value(c).unwrap())
        .collect();
    let mut body = obj(json!({
        "group": spec,
        "prime": report.prime,
        "group_order": order_value(report.group_order),
        "sylow_order": report.sylow.order(),
        "sylow_shape": report.sylow_shape.label(),
        "theorem": report.theorem.label(),
        "local_normalizer_order": report.local_normalizer.order(),
        "j_order": report.j_order(),
        "j_index": report.j_index(),
        "invariant_factors": report.invariants.factors,
        "hypothesis_checks": checks,
        "conjecture_flag": report.conjecture_flag,
    }));
    if report.conjecture_flag {
        body.insert(
            "note".into(),
            json!(
                "conjectural upper bound only: whether J equals the stable tower \
                 subgroup rho^inf(S) is an open question"
            ),
        );
    }
    with_header(config, body)
}

pub fn fusion_report(
    config: &RunConfig,
    spec: &str,
    p: u64,
    fusion: &crate::kgroup::FusionOutcome,
    frattini: &crate::kgroup::FrattiniOutcome,
) -> Value {
    let fusion_witness = fusion.witness.as_ref().map(|w| {
        json!({
            "subgroup_generators": w.subgroup.generators().iter()
                .map(|g| g.to_cycle_string()).collect::<Vec<_>>(),
            "conjugator": w.conjugator.to_cycle_string(),
        })
    });
    let frattini_witness = frattini.witness.as_ref().map(|q| {
        json!({
            "subgroup_generators": q.generators().iter()
                .map(|g| g.to_cycle_string()).collect::<Vec<_>>(),
        })
    });
    let body = obj(json!({
        "group": spec,
        "prime": p,
        "controls_fusion": fusion.controls,
        "fusion_witness": fusion_witness,
        "frattini_condition": frattini.holds,
        "frattini_witness": frattini_witness,
    }));
    with_header(config, body)
}

pub fn weakhom_table_report(config: &RunConfig, spec: &str, table: &WeakHom) -> Value {
    let mut body = obj(table.to_json());
    body.insert("group".into(), json!(spec));
    with_header(config, body)
}

pub fn agroup_report(config: &RunConfig, spec: &str, ag: &AGroup) -> Value {
    let homs: Vec<Value> = ag.weak_homs.iter().map(|w| w.to_json()).collect();
    let body = obj(json!({
        "group": spec,
        "prime": ag.prime,
        "modulus": ag.modulus,
        "count": ag.weak_homs.len(),
        "normalizer_index": ag.index,
        "invariant_factors": ag.invariants.factors,
        "verification_mode": ag.mode,
        "all_verified": ag.all_verified(),
        "weak_homs": homs,
    }));
    with_header(config, body)
}

pub fn verify_table_report(
    config: &RunConfig,
    spec: &str,
    report: &crate::weakhom::VerifyReport,
) -> Value {
    let failure = report
        .failure
        .as_ref()
        .map(|f| json!({ "axiom": f.axiom.to_string(), "witness": f.witness }));
    let body = obj(json!({
        "group": spec,
        "passed": report.passed,
        "mode": report.mode,
        "failure": failure,
    }));
    with_header(config, body)
}

pub fn rank_two_report(config: &RunConfig, report: &RankTwoReport) -> Value {
    let body = obj(serde_json::to_value(report).expect("report serializes"));
    with_header(config, body)
}

pub fn klein_case_report(config: &RunConfig, report: &KleinCaseReport) -> Value {
    let body = obj(serde_json::to_value(report).expect("report serializes"));
    with_header(config, body)
}

pub fn validate_prime(p: u64) -> Result<()> {
    if is_prime(p) {
        Ok(())
    } else {
        Err(crate::error::Error::NotPrime(p))
    }
}

/// Plain-text rendering: one `key: value` line per top-level field, with
/// nested structures inlined as compact JSON.
pub fn render_text(value: &Value) -> String {
    let mut out = String::new();
    if let Value::Object(map) = value {
        for (k, v) in map {
            match v {
                Value::String(s) => out.push_str(&format!("{}: {}\n", k, s)),
                Value::Array(_) | Value::Object(_) => out.push_str(&format!("{}: {}\n", k, v)),
                other => out.push_str(&format!("{}: {}\n", k, other)),
            }
        }
    } else {
        out.push_str(&format!("{}\n", value));
    }
    out
}

pub fn render(config: &RunConfig, value: &Value) -> String {
    match config.output_format {
        OutputFormat::Json => format!("{}\n", serde_json::to_string_pretty(value).unwrap()),
        OutputFormat::Text => render_text(value),
    }
}
