//! Brute-force reference implementations.
//!
//! Nothing here reuses the engine's algorithms: closures are naive nested
//! loops, intervals are materialised point sets, supports come from
//! enumerating every subset, and MAP scores every state with its own
//! validator, selector and aggregator code.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::inference::{map_exhaustive_over, map_pruned_over, MapResult};
use crate::kernel::{derive_closure, Formula, Literal, Rule, Term, TimePoint};
use crate::network::{ground, Derivations, Instantiation, Tmln};
use crate::semantics::{Aggregator, ParametricSemantics, Selector, TOLERANCE};
use crate::temporal::{RelationKind, Timeline};
use crate::weight::{format_strength, Weight};

pub const CLOSURE_LIMIT: usize = 12;
pub const WEIGHT_LIMIT: usize = 10;
pub const MAP_LIMIT: usize = 14;

fn check_size(size: usize, bound: usize) -> Result<()> {
    if size > bound {
        return Err(Error::BoundExceeded { size, bound });
    }
    Ok(())
}

/// Extends `binding` so that `pattern` becomes `ground`, if possible.
fn unify(pattern: &Literal, ground: &Literal, binding: &BTreeMap<String, Term>) -> Option<BTreeMap<String, Term>> {
    if pattern.predicate != ground.predicate || pattern.positive != ground.positive || pattern.args.len() != ground.args.len() {
        return None;
    }
    let mut b = binding.clone();
    let p_terms = pattern.args.iter().chain([&pattern.lower, &pattern.upper]);
    let g_terms = ground.args.iter().chain([&ground.lower, &ground.upper]);
    for (p, g) in p_terms.zip(g_terms) {
        match p {
            Term::Var(v) => match b.get(&v.name) {
                Some(bound) if bound != g => return None,
                Some(_) => {}
                None => {
                    b.insert(v.name.clone(), g.clone());
                }
            },
            other if other != g => return None,
            _ => {}
        }
    }
    Some(b)
}

fn instantiate_literal(lit: &Literal, binding: &BTreeMap<String, Term>) -> Literal {
    let sub = |t: &Term| match t {
        Term::Var(v) => binding.get(&v.name).cloned().unwrap_or_else(|| t.clone()),
        _ => t.clone(),
    };
    Literal {
        predicate: lit.predicate.clone(),
        args: lit.args.iter().map(sub).collect(),
        positive: lit.positive,
        lower: sub(&lit.lower),
        upper: sub(&lit.upper),
    }
}

/// Every binding under which all premises of `rule` are in `facts`.
fn bindings_into(rule: &Rule, facts: &BTreeSet<Literal>) -> Vec<BTreeMap<String, Term>> {
    let mut partial = vec![BTreeMap::new()];
    for premise in &rule.premises {
        let mut next = Vec::new();
        for b in &partial {
            for f in facts {
                if let Some(nb) = unify(premise, f, b) {
                    next.push(nb);
                }
            }
        }
        partial = next;
    }
    partial
}

/// Naive fixpoint; rules may contain variables.
fn naive_closure(formulae: &[&Formula]) -> BTreeSet<Literal> {
    let mut lits: BTreeSet<Literal> = formulae.iter().filter_map(|f| f.as_literal().cloned()).collect();
    loop {
        let mut grew = false;
        for f in formulae {
            if let Formula::Rule(r) = f {
                for b in bindings_into(r, &lits.clone()) {
                    if lits.insert(instantiate_literal(&r.conclusion, &b)) {
                        grew = true;
                    }
                }
            }
        }
        if !grew {
            return lits;
        }
    }
}

/// Literal closure of at most twelve ground formulae.
pub fn brute_closure(formulae: &[Formula]) -> Result<BTreeSet<Literal>> {
    check_size(formulae.len(), CLOSURE_LIMIT)?;
    if let Some(f) = formulae.iter().find(|f| !f.is_ground()) {
        return Err(Error::NonGround(f.to_string()));
    }
    Ok(naive_closure(&formulae.iter().collect::<Vec<_>>()))
}

/// Literal closure of a KB's facts and (non-ground) rules, at most ten items.
pub fn brute_kb_closure(m: &Tmln) -> Result<BTreeSet<Literal>> {
    let items = weighted_items(m);
    check_size(items.len(), WEIGHT_LIMIT)?;
    Ok(naive_closure(&items.iter().map(|(f, _)| f).collect::<Vec<_>>()))
}

fn weighted_items(m: &Tmln) -> Vec<(Formula, Weight)> {
    m.facts()
        .map(|(l, w)| (Formula::Literal(l.clone()), w))
        .chain(m.rules().map(|(_, d)| (Formula::Rule(d.rule.clone()), d.weight)))
        .collect()
}

/// Maximum over inclusion-minimal entailing subsets of their minimum
/// weight, by enumerating all `2^n` subsets of at most ten items.
pub fn brute_weight_items(target: &Literal, items: &[(Formula, Weight)]) -> Result<Weight> {
    check_size(items.len(), WEIGHT_LIMIT)?;
    let n = items.len();
    let entailing: Vec<u32> = (0u32..1 << n)
        .filter(|mask| {
            let subset: Vec<&Formula> = (0..n).filter(|i| mask >> i & 1 == 1).map(|i| &items[i].0).collect();
            naive_closure(&subset).contains(target)
        })
        .collect();
    let minimal = entailing.iter().filter(|&&m| !entailing.iter().any(|&o| o != m && o & m == o));
    minimal
        .map(|&m| (0..n).filter(|i| m >> i & 1 == 1).map(|i| items[i].1).min().unwrap_or(Weight::ONE))
        .max()
        .ok_or_else(|| Error::NotDerivable(target.to_string()))
}

pub fn brute_weight(target: &Literal, m: &Tmln) -> Result<Weight> {
    brute_weight_items(target, &weighted_items(m))
}

pub fn brute_weight_in(target: &Literal, inst: &Instantiation) -> Result<Weight> {
    let items: Vec<(Formula, Weight)> = inst.iter().map(|(f, w)| (f.clone(), w)).collect();
    brute_weight_items(target, &items)
}

/// Maximal instantiation by unification against the naive closure, with
/// support weights from subset enumeration.
pub fn brute_ground(m: &Tmln) -> Result<Instantiation> {
    let items = weighted_items(m);
    check_size(items.len(), WEIGHT_LIMIT)?;
    let all: Vec<&Formula> = items.iter().map(|(f, _)| f).collect();
    let closure = naive_closure(&all);
    let mut out = Instantiation::new(*m.timeline());
    for (l, w) in m.facts() {
        out.insert(Formula::Literal(l.clone()), w)?;
    }
    for (_, decl) in m.rules() {
        for b in bindings_into(&decl.rule, &closure) {
            let premises: Vec<Literal> = decl.rule.premises.iter().map(|p| instantiate_literal(p, &b)).collect();
            let conclusion = instantiate_literal(&decl.rule.conclusion, &b);
            let mut w = decl.weight;
            for p in &premises {
                w = w.min(brute_weight_items(p, &items)?);
            }
            let f = Formula::Rule(Rule::new(premises, conclusion));
            let keep = out.weight(&f).map_or(w, |prev| prev.max(w));
            out.insert(f, keep)?;
        }
    }
    Ok(out)
}

fn points(lit: &Literal, tl: &Timeline) -> BTreeSet<i64> {
    let value = |t: &Term| match t {
        Term::Time(TimePoint::Min) => tl.lower(),
        Term::Time(TimePoint::Max) => tl.upper(),
        Term::Time(TimePoint::At(v)) => *v,
        _ => unreachable!("ground literal"),
    };
    (value(&lit.lower)..=value(&lit.upper)).collect()
}

/// Whether `kind` holds on the closure, straight from the point-set definitions.
pub fn brute_relation(kind: RelationKind, closure: &BTreeSet<Literal>, tl: &Timeline) -> bool {
    let mut pairs = Vec::new();
    for p in closure.iter().filter(|l| l.positive) {
        for n in closure.iter().filter(|l| !l.positive && l.predicate == p.predicate && l.args == p.args) {
            pairs.push((points(p, tl), points(n, tl)));
        }
    }
    match kind {
        RelationKind::PCon => pairs.iter().all(|(a, b)| a.difference(b).next().is_some() && b.difference(a).next().is_some()),
        RelationKind::TCon => pairs.iter().all(|(a, b)| a.intersection(b).next().is_none()),
        RelationKind::PInc => pairs.iter().any(|(a, b)| a.intersection(b).next().is_some()),
        RelationKind::TInc => pairs.iter().any(|(a, b)| a == b),
    }
}

fn brute_delta(kind: RelationKind, formulae: &[&Formula], tl: &Timeline) -> f64 {
    let holds = brute_relation(kind, &naive_closure(formulae), tl);
    let accepted = match kind {
        RelationKind::PCon | RelationKind::TCon => holds,
        RelationKind::PInc | RelationKind::TInc => !holds,
    };
    if accepted {
        1.0
    } else {
        0.0
    }
}

fn brute_select(selector: Selector, items: &[(&Formula, Weight)]) -> Vec<f64> {
    items
        .iter()
        .enumerate()
        .map(|(i, (f, w))| {
            let w = w.to_f64();
            match selector {
                Selector::Id => w,
                Selector::Thresh(alpha) => (w - alpha.to_f64()).max(0.0),
                Selector::Rule => match f {
                    Formula::Rule(r) => {
                        let others: Vec<&Formula> = items.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, (g, _))| *g).collect();
                        let closure = naive_closure(&others);
                        if r.premises.iter().all(|p| closure.contains(p)) {
                            w
                        } else {
                            0.0
                        }
                    }
                    Formula::Literal(_) => w,
                },
            }
        })
        .collect()
}

fn brute_aggregate(aggregator: Aggregator, ws: &[f64]) -> f64 {
    match aggregator {
        Aggregator::Sum => ws.iter().sum(),
        Aggregator::SumAlpha(a) => {
            if ws.is_empty() {
                0.0
            } else {
                ws.iter().map(|w| w.powf(a)).sum::<f64>().powf(1.0 / a)
            }
        }
        Aggregator::Psum => {
            let mut acc = 0.0;
            for (i, w) in ws.iter().enumerate() {
                acc = if i == 0 { *w } else { acc + w - acc * w };
            }
            acc
        }
    }
}

pub fn brute_strength(inst: &Instantiation, sem: &ParametricSemantics) -> f64 {
    let items: Vec<(&Formula, Weight)> = inst.iter().collect();
    let formulae: Vec<&Formula> = items.iter().map(|(f, _)| *f).collect();
    brute_delta(sem.validator.0, &formulae, inst.timeline()) * brute_aggregate(sem.aggregator, &brute_select(sem.selector, &items))
}

/// Optimal strength and ⊆-maximal argmax states, by scoring all subsets.
#[derive(Clone, Debug, PartialEq)]
pub struct BruteMap {
    pub strength: f64,
    pub maps: Vec<Instantiation>,
}

pub fn brute_map(mi: &Instantiation, sem: &ParametricSemantics) -> Result<BruteMap> {
    check_size(mi.len(), MAP_LIMIT)?;
    let n = mi.len();
    let scored: Vec<(u32, f64)> = (0u32..1 << n).map(|mask| (mask, brute_strength(&mi.select_mask(u64::from(mask)), sem))).collect();
    let best = scored.iter().map(|(_, s)| *s).fold(f64::NEG_INFINITY, f64::max);
    let argmax: Vec<u32> = scored.iter().filter(|(_, s)| *s >= best - TOLERANCE).map(|(m, _)| *m).collect();
    let mut maps: Vec<Instantiation> =
        argmax.iter().filter(|&&m| !argmax.iter().any(|&o| o != m && o & m == m)).map(|&m| mi.select_mask(u64::from(m))).collect();
    maps.sort();
    Ok(BruteMap { strength: best, maps })
}

impl BruteMap {
    pub fn agrees_with(&self, engine: &MapResult) -> bool {
        (self.strength - engine.strength).abs() <= TOLERANCE
            && self.maps.len() == engine.maps.len()
            && self.maps.iter().zip(engine.instantiations()).all(|(a, b)| a == b)
    }
}

/// Literals obtained by replacing `TMIN`/`TMAX` with the bounds they denote.
fn denoted(lit: &Literal, tl: &Timeline) -> Literal {
    let fix = |t: &Term| match t {
        Term::Time(TimePoint::Min) => Term::at(tl.lower()),
        Term::Time(TimePoint::Max) => Term::at(tl.upper()),
        other => other.clone(),
    };
    Literal { lower: fix(&lit.lower), upper: fix(&lit.upper), ..lit.clone() }
}

/// Best total weight of a classically consistent subset of `mi`: no literal
/// is derived together with its exact negation.
pub fn classical_optimum(mi: &Instantiation) -> Result<f64> {
    check_size(mi.len(), MAP_LIMIT)?;
    let n = mi.len();
    let mut best = 0.0f64;
    for mask in 0u32..1 << n {
        let subset = mi.select_mask(u64::from(mask));
        let formulae: Vec<&Formula> = subset.formulae().collect();
        let closure: BTreeSet<Literal> = naive_closure(&formulae).iter().map(|l| denoted(l, mi.timeline())).collect();
        let clash = closure.iter().any(|l| closure.contains(&l.clone().negated()));
        if !clash {
            best = best.max(subset.weights().iter().map(|w| w.to_f64()).sum());
        }
    }
    Ok(best)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OracleReport {
    pub operation: String,
    pub input_digest: String,
    pub oracle: String,
    pub engine: String,
    pub matched: bool,
}

pub fn digest(parts: &[&str]) -> String {
    let mut h = Sha256::new();
    for p in parts {
        h.update(p.as_bytes());
        h.update([0u8]);
    }
    hex::encode(h.finalize())
}

fn show_lits(lits: &BTreeSet<Literal>) -> String {
    let v: Vec<String> = lits.iter().map(Literal::to_string).collect();
    format!("{{{}}}", v.join(", "))
}

fn show_maps<'a>(strength: f64, maps: impl Iterator<Item = &'a Instantiation>) -> String {
    let v: Vec<String> = maps
        .map(|m| {
            let f: Vec<String> = m.iter().map(|(f, w)| format!("{f}:{w}")).collect();
            format!("{{{}}}", f.join(", "))
        })
        .collect();
    format!("{} [{}]", format_strength(strength), v.join(", "))
}

fn report(operation: String, digest: &str, oracle: String, engine: String) -> OracleReport {
    OracleReport { matched: oracle == engine, operation, input_digest: digest.to_string(), oracle, engine }
}

/// Runs engine and oracle side by side on grounding, closure, the support
/// weight of every derived literal, and MAP under each of `sems`.
pub fn compare(m: &Tmln, sems: &[ParametricSemantics], kb_text: &str) -> Result<Vec<OracleReport>> {
    let d = digest(&[kb_text]);
    let mut out = Vec::new();

    let engine_mi = ground(m)?.instantiation;
    let oracle_mi = brute_ground(m)?;
    out.push(report("ground".into(), &d, show_maps(0.0, [&oracle_mi].into_iter()), show_maps(0.0, [&engine_mi].into_iter())));

    let formulae: Vec<Formula> = engine_mi.formulae().cloned().collect();
    let engine_closure = derive_closure(&formulae);
    let oracle_closure = brute_kb_closure(m)?;
    out.push(report("closure".into(), &d, show_lits(&oracle_closure), show_lits(&engine_closure)));

    let derivations = Derivations::of_tmln(m);
    for lit in &engine_closure {
        let engine = derivations.weight_of(lit).map(|w| w.to_string()).unwrap_or_else(|e| e.to_string());
        let oracle = brute_weight(lit, m).map(|w| w.to_string()).unwrap_or_else(|e| e.to_string());
        out.push(report(format!("weight {lit}"), &d, oracle, engine));
    }

    for sem in sems {
        out.push(compare_map(&engine_mi, sem, &d)?);
    }
    Ok(out)
}

/// Exhaustive, pruned and brute-force MAP over the same instantiation.
pub fn compare_map(mi: &Instantiation, sem: &ParametricSemantics, digest: &str) -> Result<OracleReport> {
    let exhaustive = map_exhaustive_over(mi, sem, MAP_LIMIT)?;
    let pruned = map_pruned_over(mi, sem)?;
    let brute = brute_map(mi, sem)?;
    let mut r = report(
        format!("map {}", sem.config_line()),
        digest,
        show_maps(brute.strength, brute.maps.iter()),
        show_maps(exhaustive.strength, exhaustive.instantiations()),
    );
    r.matched = brute.agrees_with(&exhaustive) && exhaustive.same_as(&pruned);
    Ok(r)
}
