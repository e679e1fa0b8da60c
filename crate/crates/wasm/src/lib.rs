//! Browser bindings. Each operation has a plain Rust form returning JSON
//! (tested natively) and a thin `wasm_bindgen` wrapper.

use serde::{Deserialize, Serialize};
use wasm_bindgen::prelude::*;

use tmln::inference::{map_exhaustive_over, map_pruned_over, Pattern, DEFAULT_EXHAUSTIVE_BOUND};
use tmln::kbformat::parse;
use tmln::kernel::{Formula, Literal};
use tmln::network::ground;
use tmln::report;
use tmln::semantics::{ParametricSemantics, Validate, Validator};
use tmln::temporal::{relation_holds, Relation, RelationKind, TimeInterval, Timeline};
use tmln::{Instantiation, Tmln};

pub const EXAMPLE_KB: &str = include_str!("../../core/data/oresme.tmln");

fn load(kb: &str) -> Result<Tmln, String> {
    parse(kb).map_err(|ds| ds.iter().map(ToString::to_string).collect::<Vec<_>>().join("\n"))
}

fn json<T: Serialize>(value: &T) -> String {
    serde_json::to_string(value).expect("serializable")
}

/// MAP report for one `delta=… sigma=… theta=…` configuration. Small
/// instances are searched exhaustively, larger ones by branch and bound.
pub fn map_json(kb: &str, config: &str, query: &str, full: bool) -> Result<String, String> {
    let m = load(kb)?;
    let sem = ParametricSemantics::parse_config(config).map_err(|e| e.to_string())?;
    let mi = ground(&m).map_err(|e| e.to_string())?.instantiation;
    let result = if mi.len() <= DEFAULT_EXHAUSTIVE_BOUND {
        map_exhaustive_over(&mi, &sem, DEFAULT_EXHAUSTIVE_BOUND)
    } else {
        map_pruned_over(&mi, &sem)
    }
    .map_err(|e| e.to_string())?;
    let pattern: Option<Pattern> = match query.trim() {
        "" => None,
        q => Some(q.parse().map_err(|e: tmln::Error| e.to_string())?),
    };
    let r = report::map_report(&sem, &result, pattern.as_ref(), full).map_err(|e| e.to_string())?;
    Ok(json(&r))
}

/// The maximal instantiation as a ground report.
pub fn ground_json(kb: &str) -> Result<String, String> {
    let m = load(kb)?;
    let g = ground(&m).map_err(|e| e.to_string())?;
    Ok(json(&report::ground_report(&g)))
}

#[derive(Debug, Deserialize)]
pub struct IntervalInput {
    pub timeline: (i64, i64),
    /// Intervals on which `P` holds.
    pub positive: Vec<(i64, i64)>,
    /// Intervals on which `!P` holds.
    pub negative: Vec<(i64, i64)>,
}

#[derive(Debug, Serialize)]
struct PairReport {
    positive: (i64, i64),
    negative: (i64, i64),
    intersect: bool,
    equal: bool,
    positive_sticks_out: bool,
    negative_sticks_out: bool,
}

#[derive(Debug, Serialize)]
struct RelationReport {
    name: String,
    holds: bool,
}

#[derive(Debug, Serialize)]
struct IntervalReport {
    pairs: Vec<PairReport>,
    relations: Vec<RelationReport>,
    /// Validator output (1 accepts, 0 rejects) per validator.
    validators: Vec<RelationReport>,
}

/// Evaluates the four relations and their negations on intervals of one
/// predicate and its negation.
pub fn interval_relations_json(input: &str) -> Result<String, String> {
    let input: IntervalInput = serde_json::from_str(input).map_err(|e| e.to_string())?;
    let tl = Timeline::new(input.timeline.0, input.timeline.1).map_err(|e| e.to_string())?;
    let lit = |(a, b): (i64, i64), positive: bool| Literal::fact("P", &["K"], a, b).with_polarity(positive);
    let mut inst = Instantiation::new(tl);
    for &iv in &input.positive {
        inst.insert(Formula::Literal(lit(iv, true)), tmln::Weight::ONE).map_err(|e| e.to_string())?;
    }
    for &iv in &input.negative {
        inst.insert(Formula::Literal(lit(iv, false)), tmln::Weight::ONE).map_err(|e| e.to_string())?;
    }
    let interval = |(a, b): (i64, i64)| TimeInterval::new(a, b).map_err(|e| e.to_string());
    let mut pairs = Vec::new();
    for &p in &input.positive {
        for &n in &input.negative {
            let (ip, inn) = (interval(p)?, interval(n)?);
            pairs.push(PairReport {
                positive: p,
                negative: n,
                intersect: ip.intersects(&inn),
                equal: ip == inn,
                positive_sticks_out: ip.sticks_out_of(&inn),
                negative_sticks_out: inn.sticks_out_of(&ip),
            });
        }
    }
    let mut relations = Vec::new();
    for kind in RelationKind::ALL {
        for r in [Relation::of(kind), Relation::not(kind)] {
            let holds = relation_holds(r, inst.formulae(), &tl).map_err(|e| e.to_string())?;
            relations.push(RelationReport { name: r.to_string(), holds });
        }
    }
    let validators =
        RelationKind::ALL.iter().map(|&k| RelationReport { name: k.to_string(), holds: Validator(k).delta(&inst) == 1 }).collect();
    Ok(json(&IntervalReport { pairs, relations, validators }))
}

#[wasm_bindgen]
pub fn example_kb() -> String {
    EXAMPLE_KB.to_string()
}

#[wasm_bindgen]
pub fn run_map(kb: &str, config: &str, query: &str, full: bool) -> Result<String, JsValue> {
    map_json(kb, config, query, full).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn ground_kb(kb: &str) -> Result<String, JsValue> {
    ground_json(kb).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn interval_relations(input: &str) -> Result<String, JsValue> {
    interval_relations_json(input).map_err(|e| JsValue::from_str(&e))
}
