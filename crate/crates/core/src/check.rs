//! Randomised property suites: the relation lattice, the well-behavedness
//! audits and their mutants, the three principles, validator and strength
//! orderings, pruned search, and the classical-consistency sanity check.
//! Failures carry a counterexample shrunk by greedy deletion.

use std::collections::BTreeSet;

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::gen::{self, KbShape};
use crate::inference::{map_exhaustive, map_pruned, MapResult};
use crate::kernel::{Formula, Literal, Rule, Term, TimePoint};
use crate::network::{ground, instantiate, instantiate_with, Instantiation, Tmln};
use crate::oracle;
use crate::semantics::{
    accepted_relation, audit_well_behaved, con_holds, mutants, tau_entails, Aggregator, AuditReport, Condition, ParametricSemantics,
    Selector, Validate, Validator, TOLERANCE,
};
use crate::temporal::{relation_holds, Relation, RelationKind, Timeline};
use crate::weight::Weight;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SuiteResult {
    pub name: String,
    pub trials: usize,
    /// Trials whose premises held.
    pub checked: usize,
    /// Trials skipped because a premise failed.
    pub vacuous: usize,
    pub failures: usize,
    pub counterexample: Option<String>,
}

impl SuiteResult {
    fn new(name: impl Into<String>) -> Self {
        SuiteResult { name: name.into(), trials: 0, checked: 0, vacuous: 0, failures: 0, counterexample: None }
    }

    pub fn passed(&self) -> bool {
        self.failures == 0
    }

    fn pass(&mut self) {
        self.trials += 1;
        self.checked += 1;
    }

    fn skip(&mut self) {
        self.trials += 1;
        self.vacuous += 1;
    }

    fn fail(&mut self, describe: impl FnOnce() -> String) {
        self.trials += 1;
        self.checked += 1;
        self.failures += 1;
        if self.counterexample.is_none() {
            self.counterexample = Some(describe());
        }
    }

    fn record(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        if ok {
            self.pass()
        } else {
            self.fail(describe)
        }
    }

    fn absorb(&mut self, other: SuiteResult) {
        self.trials += other.trials;
        self.checked += other.checked;
        self.vacuous += other.vacuous;
        self.failures += other.failures;
        if self.counterexample.is_none() {
            self.counterexample = other.counterexample;
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckReport {
    pub seed: u64,
    pub suites: Vec<SuiteResult>,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.suites.iter().all(SuiteResult::passed)
    }

    pub fn suite(&self, name: &str) -> Option<&SuiteResult> {
        self.suites.iter().find(|s| s.name == name)
    }
}

#[derive(Clone, Debug)]
pub struct CheckConfig {
    pub seed: u64,
    /// Formula sets per relation property and samples per audit.
    pub trials: usize,
    /// Random knowledge bases for the principle and ordering suites.
    pub kb_trials: usize,
    /// Run the principle suites on this KB instead of random ones.
    pub kb: Option<Tmln>,
    /// Audit the planted mutant for this condition instead of the shipped
    /// components.
    pub mutant: Option<Condition>,
    pub max_ground: usize,
}

impl Default for CheckConfig {
    fn default() -> Self {
        CheckConfig { seed: 0, trials: 1000, kb_trials: 200, kb: None, mutant: None, max_ground: 12 }
    }
}

/// Greedily drops items while `fails` keeps holding.
pub fn minimize<T: Clone>(mut items: Vec<T>, fails: impl Fn(&[T]) -> bool) -> Vec<T> {
    let mut i = 0;
    while i < items.len() {
        let mut candidate = items.clone();
        candidate.remove(i);
        if fails(&candidate) {
            items = candidate;
        } else {
            i += 1;
        }
    }
    items
}

fn show_set(fs: &[Formula]) -> String {
    let v: Vec<String> = fs.iter().map(Formula::to_string).collect();
    format!("{{{}}}", v.join(", "))
}

fn holds(kind: RelationKind, negated: bool, fs: &[Formula], tl: &Timeline) -> bool {
    let r = if negated { Relation::not(kind) } else { Relation::of(kind) };
    relation_holds(r, fs.iter(), tl).expect("generated formulae lie on the timeline")
}

type Property = (&'static str, fn(&[Formula], &Timeline) -> bool);

fn relation_properties() -> Vec<(&'static str, Vec<Property>)> {
    use RelationKind::*;
    vec![
        ("complementarity", vec![("not tCon <-> pInc", |f, t| !holds(TCon, false, f, t) == holds(PInc, false, f, t))]),
        (
            "subsumption",
            vec![
                ("pCon -> not tInc", |f, t| !holds(PCon, false, f, t) || !holds(TInc, false, f, t)),
                ("tInc -> not pCon", |f, t| !holds(TInc, false, f, t) || !holds(PCon, false, f, t)),
                ("not pCon -> pInc", |f, t| holds(PCon, false, f, t) || holds(PInc, false, f, t)),
                ("not pInc -> pCon", |f, t| holds(PInc, false, f, t) || holds(PCon, false, f, t)),
            ],
        ),
        (
            "inclusion lattice",
            vec![
                ("tCon <-> not pInc", |f, t| holds(TCon, false, f, t) == holds(PInc, true, f, t)),
                ("not pInc -> pCon", |f, t| !holds(PInc, true, f, t) || holds(PCon, false, f, t)),
                ("pCon -> not tInc", |f, t| !holds(PCon, false, f, t) || holds(TInc, true, f, t)),
                ("tInc -> not pCon", |f, t| !holds(TInc, false, f, t) || holds(PCon, true, f, t)),
                ("not pCon -> pInc", |f, t| !holds(PCon, true, f, t) || holds(PInc, false, f, t)),
                ("pInc <-> not tCon", |f, t| holds(PInc, false, f, t) == holds(TCon, true, f, t)),
            ],
        ),
    ]
}

/// Complementarity, subsumption and the inclusion lattice on `trials`
/// random formula sets each.
pub fn relation_suites(seed: u64, trials: usize) -> Vec<SuiteResult> {
    let mut out = Vec::new();
    for (i, (name, props)) in relation_properties().into_iter().enumerate() {
        let mut rng = gen::rng(seed ^ (0x5eed_0000 + i as u64));
        let mut suite = SuiteResult::new(name);
        for _ in 0..trials {
            let (tl, fs) = gen::random_formula_set(&mut rng, 6);
            match props.iter().find(|(_, p)| !p(&fs, &tl)) {
                None => suite.pass(),
                Some((label, p)) => {
                    let small = minimize(fs, |s| !p(s, &tl));
                    suite.fail(|| format!("{label} fails on {} over [{}, {}]", show_set(&small), tl.lower(), tl.upper()));
                }
            }
        }
        out.push(suite);
    }
    out
}

pub fn audit_samples(seed: u64, n: usize) -> Vec<Instantiation> {
    let mut rng = gen::rng(seed ^ 0xa0d1);
    let mut out = vec![Instantiation::new(Timeline::new(0, 8).expect("valid"))];
    while out.len() < n {
        out.push(gen::random_instantiation(&mut rng, 10));
    }
    out
}

fn audit_suite(report: &AuditReport) -> SuiteResult {
    let mut s = SuiteResult::new(format!("well-behaved {} under {}", report.components, report.consistency));
    s.trials = report.samples;
    for c in &report.conditions {
        s.checked += c.checked;
        s.vacuous += c.vacuous;
        if let Some(ce) = &c.counterexample {
            s.failures += 1;
            if s.counterexample.is_none() {
                s.counterexample = Some(format!("{}: {ce}", c.condition));
            }
        }
    }
    s
}

/// Audits of every shipped combination against its matching relation.
pub fn audit_reports(seed: u64, samples: &[Instantiation]) -> Vec<AuditReport> {
    ParametricSemantics::all_combinations()
        .iter()
        .map(|sem| audit_well_behaved(&sem.validator, accepted_relation(sem.validator.0), &sem.selector, &sem.aggregator, samples, seed))
        .collect()
}

pub fn audit_suites(seed: u64, samples: &[Instantiation]) -> Vec<SuiteResult> {
    audit_reports(seed, samples).iter().map(audit_suite).collect()
}

/// Audits the planted mutant for `condition`.
pub fn mutant_report(condition: Condition, seed: u64, samples: &[Instantiation]) -> AuditReport {
    let (v, s, a) = mutants::components_for(condition);
    audit_well_behaved(v.as_ref(), accepted_relation(RelationKind::TCon), s.as_ref(), a.as_ref(), samples, seed)
}

/// One suite per condition: passes when the audit flags its mutant.
pub fn mutant_suites(seed: u64, samples: &[Instantiation]) -> Vec<SuiteResult> {
    Condition::ALL
        .iter()
        .map(|&c| {
            let report = mutant_report(c, seed, samples);
            let mut s = SuiteResult::new(format!("mutant {c} detected"));
            let flagged = report.result(c).is_some_and(|r| !r.passed());
            s.record(flagged, || format!("the audit of {} raised no {c} violation", report.components));
            s
        })
        .collect()
}

pub fn random_kbs(seed: u64, n: usize, max_ground: usize) -> Vec<Tmln> {
    let mut rng = gen::rng(seed ^ 0xb0b);
    let shape = KbShape { max_ground, ..KbShape::default() };
    (0..n).map(|_| gen::random_kb(&mut rng, &shape)).collect()
}

/// A formula added to a KB by a principle test.
#[derive(Clone, Debug)]
pub struct Addition {
    pub formula: Formula,
    pub weight: Weight,
    extended: Tmln,
}

fn fresh_name(m: &Tmln) -> String {
    let used: BTreeSet<&str> = m.signature().predicates().map(|(p, _)| p).collect();
    (0..).map(|i| format!("Fresh{i}")).find(|p| !used.contains(p.as_str())).expect("unbounded name supply")
}

/// A formula over a predicate the KB does not mention: a fact, or (when
/// `as_rule`) a rule generalising one of the KB's facts into the fresh
/// predicate. `None` when the KB offers nothing to build it from.
pub fn fresh_addition(m: &Tmln, rng: &mut ChaCha8Rng, as_rule: bool, weight: Weight) -> Option<Addition> {
    let name = fresh_name(m);
    let tl = *m.timeline();
    let mut extended = m.clone();
    let formula = if as_rule {
        let facts: Vec<&Literal> = m.facts().map(|(l, _)| l).collect();
        if facts.is_empty() {
            return None;
        }
        let src = facts[rng.gen_range(0..facts.len())];
        let sorts = m.signature().predicate_args(&src.predicate)?.to_vec();
        let args: Vec<Term> = sorts.iter().enumerate().map(|(i, s)| Term::var(format!("v{i}"), s.clone())).collect();
        let premise =
            Literal::new(src.predicate.clone(), args.clone(), Term::time_var("t1"), Term::time_var("t2")).with_polarity(src.positive);
        let head =
            Literal::new(name.clone(), vec![args[0].clone()], Term::time_var("t1"), Term::time_var("t2")).with_polarity(rng.gen_bool(0.7));
        extended.signature_mut().add_predicate(name, vec![sorts[0].clone()]);
        let rule = Rule::new(vec![premise], head);
        extended.add_rule("Fresh", rule.clone(), weight).ok()?;
        Formula::Rule(rule)
    } else {
        let (c, sort) = {
            let consts: Vec<(&str, &str)> = m.signature().constants().collect();
            if consts.is_empty() {
                return None;
            }
            let (c, s) = consts[rng.gen_range(0..consts.len())];
            (c.to_string(), s.to_string())
        };
        let a = rng.gen_range(tl.lower()..=tl.upper());
        let b = rng.gen_range(a..=tl.upper());
        let lit = Literal::new(name.clone(), vec![Term::constant(c)], Term::Time(TimePoint::At(a)), Term::Time(TimePoint::At(b)))
            .with_polarity(rng.gen_bool(0.7));
        extended.signature_mut().add_predicate(name, vec![sort]);
        extended.add_fact(lit.clone(), weight).ok()?;
        Formula::Literal(lit)
    };
    Some(Addition { formula, weight, extended })
}

/// Outcome of one principle test.
#[derive(Clone, Debug, PartialEq)]
pub enum Verdict {
    Holds,
    Vacuous,
    Violated(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Principle {
    TemporalNeutrality,
    ConsistencyMonotony,
    InvariantConsistentFacts,
}

impl Principle {
    pub const ALL: [Principle; 3] = [Principle::TemporalNeutrality, Principle::ConsistencyMonotony, Principle::InvariantConsistentFacts];

    pub fn name(self) -> &'static str {
        match self {
            Principle::TemporalNeutrality => "temporal neutrality",
            Principle::ConsistencyMonotony => "consistency monotony",
            Principle::InvariantConsistentFacts => "invariant consistent facts",
        }
    }
}

fn novel(m: &Tmln, phi: &Formula) -> bool {
    ground(m).map(|g| !tau_entails(&g.instantiation, phi)).unwrap_or(false)
}

/// `I` together with the consequences of adding `phi` to it, and whether
/// `I ⊂ MI({phi} ∪ I)` holds with weights.
fn extend_state(inst: &Instantiation, add: &Addition) -> Option<(Instantiation, bool)> {
    let mi = match &add.formula {
        Formula::Literal(_) => instantiate(&inst.with(add.formula.clone(), add.weight).ok()?).ok()?,
        Formula::Rule(r) => instantiate_with(inst, &[(r, add.weight)]).ok()?,
    };
    let strict = inst.is_subset(&mi) && mi.len() > inst.len();
    let mut union = inst.clone();
    for (f, w) in mi.iter() {
        if !union.contains(f) {
            union.insert(f.clone(), w).ok()?;
        }
    }
    if add.formula.is_ground() && !union.contains(&add.formula) {
        union.insert(add.formula.clone(), add.weight).ok()?;
    }
    Some((union, strict))
}

fn show_map(r: &MapResult) -> String {
    let v: Vec<String> = r
        .instantiations()
        .map(|i| {
            let f: Vec<String> = i.iter().map(|(f, w)| format!("{f}:{w}")).collect();
            format!("{{{}}}", f.join(", "))
        })
        .collect();
    format!("{} @ {}", v.join(" | "), r.strength)
}

/// Tests one principle for `sem` on `m` extended by `add`.
pub fn check_principle(principle: Principle, m: &Tmln, add: &Addition, sem: &ParametricSemantics) -> Verdict {
    if !novel(m, &add.formula) {
        return Verdict::Vacuous;
    }
    let con = accepted_relation(sem.validator.0);
    let (Ok(before), Ok(after)) = (map_exhaustive(m, sem), map_exhaustive(&add.extended, sem)) else {
        return Verdict::Vacuous;
    };
    let violated = |what: String| Verdict::Violated(format!("{sem}, adding ({}, {}): {what}", add.formula, add.weight));
    match principle {
        Principle::TemporalNeutrality => {
            if !add.weight.is_zero() {
                return Verdict::Vacuous;
            }
            if (before.strength - after.strength).abs() <= TOLERANCE {
                Verdict::Holds
            } else {
                violated(format!("strength {} became {}", before.strength, after.strength))
            }
        }
        Principle::ConsistencyMonotony => {
            for inst in before.instantiations() {
                match extend_state(inst, add) {
                    Some((union, true)) if con_holds(con, &union) => {}
                    _ => return Verdict::Vacuous,
                }
            }
            if after.strength + TOLERANCE >= before.strength {
                Verdict::Holds
            } else {
                violated(format!("strength dropped from {} to {}", before.strength, after.strength))
            }
        }
        Principle::InvariantConsistentFacts => {
            if !add.formula.is_ground() || add.formula.as_literal().is_none() {
                return Verdict::Vacuous;
            }
            let mut extended = Vec::new();
            for inst in before.instantiations() {
                match inst.with(add.formula.clone(), add.weight) {
                    Ok(e) if con_holds(con, &e) => extended.push(e),
                    _ => return Verdict::Vacuous,
                }
            }
            let maps: Vec<&Instantiation> = after.instantiations().collect();
            match extended.iter().find(|e| !maps.contains(e)) {
                None => Verdict::Holds,
                Some(e) => violated(format!("{} is not among the new maps {}", show_inst(e), show_map(&after))),
            }
        }
    }
}

fn show_inst(i: &Instantiation) -> String {
    let f: Vec<String> = i.iter().map(|(f, w)| format!("{f}:{w}")).collect();
    format!("{{{}}}", f.join(", "))
}

fn kb_items(m: &Tmln) -> Vec<(Formula, Weight, Option<String>)> {
    m.facts()
        .map(|(l, w)| (Formula::Literal(l.clone()), w, None))
        .chain(m.rules().map(|(id, d)| (Formula::Rule(d.rule.clone()), d.weight, Some(id.to_string()))))
        .collect()
}

fn rebuild(m: &Tmln, items: &[(Formula, Weight, Option<String>)]) -> Tmln {
    let mut out = Tmln::new(m.signature().clone(), *m.timeline());
    for (f, w, id) in items {
        match (f, id) {
            (Formula::Literal(l), _) => out.add_fact(l.clone(), *w).expect("taken from a valid KB"),
            (Formula::Rule(r), Some(id)) => out.add_rule(id.clone(), r.clone(), *w).expect("taken from a valid KB"),
            (Formula::Rule(_), None) => unreachable!("rules carry ids"),
        }
    }
    out
}

fn readd(base: &Tmln, add: &Addition) -> Option<Addition> {
    let mut extended = base.clone();
    for (f, w, id) in kb_items(&add.extended) {
        if id.as_deref() == Some("Fresh") || f == add.formula {
            *extended.signature_mut() = add.extended.signature().clone();
            match f {
                Formula::Literal(l) => extended.add_fact(l, w).ok()?,
                Formula::Rule(r) => extended.add_rule("Fresh", r, w).ok()?,
            }
        }
    }
    Some(Addition { formula: add.formula.clone(), weight: add.weight, extended })
}

/// Shrinks the KB of a principle violation, keeping the added formula.
fn minimized_violation(principle: Principle, m: &Tmln, add: &Addition, sem: &ParametricSemantics) -> String {
    let fails = |items: &[(Formula, Weight, Option<String>)]| {
        let base = rebuild(m, items);
        readd(&base, add).is_some_and(|a| matches!(check_principle(principle, &base, &a, sem), Verdict::Violated(_)))
    };
    let small = rebuild(m, &minimize(kb_items(m), fails));
    let detail = readd(&small, add).map(|a| check_principle(principle, &small, &a, sem));
    let kb = crate::kbformat::serialize(&small);
    match detail {
        Some(Verdict::Violated(d)) => format!("{d}\n{kb}"),
        _ => kb,
    }
}

/// The three principles for all shipped combinations on each KB, with a
/// fresh-predicate addition drawn per KB and principle.
pub fn principle_suites(kbs: &[Tmln], seed: u64) -> Vec<SuiteResult> {
    let combos = ParametricSemantics::all_combinations();
    let mut rng = gen::rng(seed ^ 0x9219);
    Principle::ALL
        .iter()
        .map(|&p| {
            let mut suite = SuiteResult::new(p.name());
            for m in kbs {
                let weight = match p {
                    Principle::TemporalNeutrality => Weight::ZERO,
                    _ => gen::weight(&mut rng),
                };
                let as_rule = p != Principle::InvariantConsistentFacts && rng.gen_bool(0.4);
                let Some(add) = fresh_addition(m, &mut rng, as_rule, weight).or_else(|| fresh_addition(m, &mut rng, false, weight)) else {
                    for _ in &combos {
                        suite.skip();
                    }
                    continue;
                };
                for sem in &combos {
                    match check_principle(p, m, &add, sem) {
                        Verdict::Holds => suite.pass(),
                        Verdict::Vacuous => suite.skip(),
                        Verdict::Violated(_) => suite.fail(|| minimized_violation(p, m, &add, sem)),
                    }
                }
            }
            suite
        })
        .collect()
}

fn subset_masks(n: usize, rng: &mut ChaCha8Rng) -> Vec<u64> {
    if n <= 8 {
        (0..1u64 << n).collect()
    } else {
        (0..256).map(|_| rng.gen::<u64>() & ((1u64 << n) - 1)).collect()
    }
}

/// Validator ordering on states of each KB's maximal instantiation, and
/// the optimal-strength chain across validators for each selector and
/// aggregator.
pub fn ordering_suites(kbs: &[Tmln], seed: u64) -> Vec<SuiteResult> {
    use RelationKind::*;
    let mut rng = gen::rng(seed ^ 0x04d3);
    let mut pointwise = SuiteResult::new("validator ordering");
    let mut chain = SuiteResult::new("strength chain");
    let v = |k| Validator(k);
    for m in kbs {
        let mi = ground(m).expect("generated KBs ground").instantiation;
        for mask in subset_masks(mi.len(), &mut rng) {
            let inst = mi.select_mask(mask);
            let [tc, pi, pc, ti] = [TCon, PInc, PCon, TInc].map(|k| v(k).delta(&inst));
            pointwise
                .record(tc == pi && pi <= pc && pc <= ti, || format!("tCon {tc}, pInc {pi}, pCon {pc}, tInc {ti} on {}", show_inst(&inst)));
        }
        for selector in [Selector::Id, Selector::Thresh(Weight::tenths(3)), Selector::Rule] {
            for aggregator in [Aggregator::Sum, Aggregator::SumAlpha(2.0), Aggregator::Psum] {
                let s = [TCon, PInc, PCon, TInc]
                    .map(|k| map_exhaustive(m, &ParametricSemantics::new(k, selector, aggregator)).map(|r| r.strength));
                match s {
                    [Ok(tc), Ok(pi), Ok(pc), Ok(ti)] => chain.record(tc == pi && pi <= pc && pc <= ti, || {
                        format!(
                            "sigma {selector}, theta {aggregator}: tCon {tc}, pInc {pi}, pCon {pc}, tInc {ti}\n{}",
                            crate::kbformat::serialize(m)
                        )
                    }),
                    _ => chain.skip(),
                }
            }
        }
    }
    vec![pointwise, chain]
}

/// Pruned search agrees with exhaustive search for every combination.
pub fn pruned_suite(kbs: &[Tmln]) -> SuiteResult {
    let mut suite = SuiteResult::new("pruned search");
    for m in kbs {
        for sem in ParametricSemantics::all_combinations() {
            match (map_exhaustive(m, &sem), map_pruned(m, &sem)) {
                (Ok(e), Ok(p)) => suite.record(e.same_as(&p), || {
                    format!("{sem}: exhaustive {} but pruned {}\n{}", show_map(&e), show_map(&p), crate::kbformat::serialize(m))
                }),
                _ => suite.skip(),
            }
        }
    }
    suite
}

/// With rules of weight 1, the optimum under the inconsistency-tolerant
/// semantics with identity selection and summation equals the best total
/// weight of a classically consistent sub-state.
pub fn classical_suite(seed: u64, trials: usize) -> SuiteResult {
    let mut rng = gen::rng(seed ^ 0xc4e6);
    let shape = KbShape { certain_rules: true, ..KbShape::default() };
    let sem = ParametricSemantics::new(RelationKind::TInc, Selector::Id, Aggregator::Sum);
    let mut suite = SuiteResult::new("classical optimum");
    for _ in 0..trials {
        let m = gen::random_kb(&mut rng, &shape);
        let mi = ground(&m).expect("generated KBs ground").instantiation;
        match (map_exhaustive(&m, &sem), oracle::classical_optimum(&mi)) {
            (Ok(r), Ok(best)) => suite.record((r.strength - best).abs() <= TOLERANCE, || {
                format!("engine {} but classical optimum {best}\n{}", r.strength, crate::kbformat::serialize(&m))
            }),
            _ => suite.skip(),
        }
    }
    suite
}

/// Every suite. With `mutant`, only the audit of that mutant runs, and it
/// is reported as an ordinary (failing) audit.
pub fn run(config: &CheckConfig) -> CheckReport {
    let samples = audit_samples(config.seed, config.trials);
    if let Some(c) = config.mutant {
        let report = mutant_report(c, config.seed, &samples);
        return CheckReport { seed: config.seed, suites: vec![audit_suite(&report)] };
    }
    let kbs = match &config.kb {
        Some(m) => vec![m.clone()],
        None => random_kbs(config.seed, config.kb_trials, config.max_ground),
    };
    let mut suites = relation_suites(config.seed, config.trials);
    let mut audits = SuiteResult::new("well-behaved components");
    for s in audit_suites(config.seed, &samples) {
        audits.absorb(s);
    }
    suites.push(audits);
    let mut detected = SuiteResult::new("mutants detected");
    for s in mutant_suites(config.seed, &samples) {
        detected.absorb(s);
    }
    suites.push(detected);
    suites.extend(principle_suites(&kbs, config.seed));
    suites.extend(ordering_suites(&kbs, config.seed));
    suites.push(pruned_suite(&kbs));
    suites.push(classical_suite(config.seed, config.kb_trials));
    CheckReport { seed: config.seed, suites }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minimize_drops_irrelevant_items() {
        let small = minimize((0..10).collect(), |s: &[i32]| s.contains(&3) && s.contains(&7));
        assert_eq!(small, vec![3, 7]);
    }

    #[test]
    fn small_run_passes_and_is_reproducible() {
        let config = CheckConfig { seed: 3, trials: 40, kb_trials: 6, ..CheckConfig::default() };
        let a = run(&config);
        assert!(a.passed(), "{:#?}", a.suites.iter().filter(|s| !s.passed()).collect::<Vec<_>>());
        assert_eq!(a, run(&config));
    }

    #[test]
    fn a_wrong_extension_is_reported() {
        let m = crate::kbformat::parse("sort S\ntimeline 0 9\nconst A : S\npred P(S)\nfact P(A, 0, 5) : 0.7\nfact !P(A, 3, 8) : 0.6\n")
            .unwrap();
        let sem = ParametricSemantics::new(RelationKind::TInc, Selector::Id, Aggregator::Sum);
        let mut rng = gen::rng(0);
        let add = fresh_addition(&m, &mut rng, false, Weight::ZERO).unwrap();
        assert_eq!(check_principle(Principle::TemporalNeutrality, &m, &add, &sem), Verdict::Holds);
        assert_eq!(check_principle(Principle::InvariantConsistentFacts, &m, &add, &sem), Verdict::Holds);
        // the "extended" KB silently loses a fact
        let mut broken = add.clone();
        broken.extended = crate::kbformat::parse("sort S\ntimeline 0 9\nconst A : S\npred P(S)\nfact P(A, 0, 5) : 0.7\n").unwrap();
        assert!(matches!(check_principle(Principle::TemporalNeutrality, &m, &broken, &sem), Verdict::Violated(_)));
    }

    #[test]
    fn mutant_run_fails() {
        let config = CheckConfig { seed: 1, trials: 30, mutant: Some(Condition::ThetaB), ..CheckConfig::default() };
        let r = run(&config);
        assert!(!r.passed());
        assert!(r.suites[0].counterexample.as_deref().unwrap().starts_with("theta-(b)"));
    }
}
