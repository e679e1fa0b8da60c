//! Validators, selectors and aggregators, their composition into a scoring
//! semantics, and an empirical audit of the well-behavedness conditions.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::kernel::{derive_closure, Formula, Literal, Rule, Term, TimePoint};
use crate::network::Instantiation;
use crate::temporal::{relation_holds, tau, tau_formula, Relation, RelationKind};
use crate::weight::Weight;

/// Absolute tolerance for comparing strengths and aggregated weights.
pub const TOLERANCE: f64 = 1e-9;

pub trait Validate: Send + Sync {
    fn name(&self) -> String;
    /// 0 or 1.
    fn delta(&self, inst: &Instantiation) -> u8;
}

pub trait Select: Send + Sync {
    fn name(&self) -> String;
    fn select(&self, inst: &Instantiation) -> Vec<Weight>;
}

pub trait Aggregate: Send + Sync {
    fn name(&self) -> String;
    fn aggregate(&self, weights: &[f64]) -> f64;
}

/// The relation a validator accepts: the consistency kinds as they are, the
/// inconsistency kinds negated.
pub fn accepted_relation(kind: RelationKind) -> Relation {
    match kind {
        RelationKind::PCon | RelationKind::TCon => Relation::of(kind),
        RelationKind::PInc | RelationKind::TInc => Relation::not(kind),
    }
}

fn relation_on(relation: Relation, formulae: &[&Formula], inst: &Instantiation) -> bool {
    // every literal of an instantiation was checked against its timeline on insertion
    relation_holds(relation, formulae.iter().copied(), inst.timeline()).expect("instantiation literals are ground and in range")
}

pub fn con_holds(relation: Relation, inst: &Instantiation) -> bool {
    let formulae: Vec<&Formula> = inst.formulae().collect();
    relation_on(relation, &formulae, inst)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Validator(pub RelationKind);

impl Validator {
    pub fn accepts(&self) -> Relation {
        accepted_relation(self.0)
    }
}

impl Validate for Validator {
    fn name(&self) -> String {
        self.0.name().to_string()
    }

    fn delta(&self, inst: &Instantiation) -> u8 {
        u8::from(con_holds(self.accepts(), inst))
    }
}

impl FromStr for Validator {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.parse().map(Validator)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Selector {
    Id,
    Thresh(Weight),
    Rule,
}

impl Selector {
    pub fn thresh(alpha: Weight) -> Result<Self> {
        if alpha >= Weight::ONE {
            return Err(Error::InvalidParameter(format!("selector threshold {alpha} must lie in [0,1)")));
        }
        Ok(Selector::Thresh(alpha))
    }
}

/// Slot of each ground rule whose premises are not all derivable from the
/// other formulae is zeroed; every other slot keeps its weight.
pub fn select_rule(inst: &Instantiation) -> Vec<Weight> {
    let entries: Vec<(&Formula, Weight)> = inst.iter().collect();
    entries
        .iter()
        .enumerate()
        .map(|(i, (formula, w))| match formula {
            Formula::Rule(rule) => {
                let others = entries.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, (f, _))| *f);
                let closure = derive_closure(others);
                if rule.premises.iter().all(|p| closure.contains(p)) {
                    *w
                } else {
                    Weight::ZERO
                }
            }
            Formula::Literal(_) => *w,
        })
        .collect()
}

impl Select for Selector {
    fn name(&self) -> String {
        self.to_string()
    }

    fn select(&self, inst: &Instantiation) -> Vec<Weight> {
        match self {
            Selector::Id => inst.weights(),
            Selector::Thresh(alpha) => inst.weights().into_iter().map(|w| w.saturating_sub(*alpha)).collect(),
            Selector::Rule => select_rule(inst),
        }
    }
}

impl fmt::Display for Selector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Selector::Id => f.write_str("id"),
            Selector::Thresh(a) => write!(f, "thresh:{a}"),
            Selector::Rule => f.write_str("rule"),
        }
    }
}

impl FromStr for Selector {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (name, param) = match s.split_once(':') {
            Some((n, p)) => (n, Some(p)),
            None => (s, None),
        };
        match (name, param) {
            ("id", None) => Ok(Selector::Id),
            ("rule", None) => Ok(Selector::Rule),
            ("thresh", Some(p)) => {
                let alpha: Weight = p.parse().map_err(|e| Error::InvalidParameter(format!("selector threshold: {e}")))?;
                Selector::thresh(alpha)
            }
            ("thresh", None) => Err(Error::InvalidParameter("selector `thresh` needs a parameter, e.g. thresh:0.3".into())),
            _ => Err(Error::InvalidParameter(format!("unknown selector `{s}`"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub enum Aggregator {
    Sum,
    SumAlpha(f64),
    Psum,
}

impl Aggregator {
    pub fn sum_alpha(alpha: f64) -> Result<Self> {
        if !(alpha.is_finite() && alpha >= 1.0) {
            return Err(Error::InvalidParameter(format!("aggregator exponent {alpha} must be at least 1")));
        }
        Ok(Aggregator::SumAlpha(alpha))
    }
}

pub fn probabilistic_sum(a: f64, b: f64) -> f64 {
    a + b - a * b
}

impl Aggregate for Aggregator {
    fn name(&self) -> String {
        self.to_string()
    }

    fn aggregate(&self, weights: &[f64]) -> f64 {
        match self {
            Aggregator::Sum => weights.iter().sum(),
            Aggregator::SumAlpha(alpha) => {
                if weights.is_empty() {
                    0.0
                } else {
                    weights.iter().map(|w| w.powf(*alpha)).sum::<f64>().powf(1.0 / alpha)
                }
            }
            Aggregator::Psum => weights.iter().copied().reduce(probabilistic_sum).unwrap_or(0.0),
        }
    }
}

impl fmt::Display for Aggregator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Aggregator::Sum => f.write_str("sum"),
            Aggregator::SumAlpha(a) => write!(f, "sum_alpha:{a}"),
            Aggregator::Psum => f.write_str("psum"),
        }
    }
}

impl FromStr for Aggregator {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (name, param) = match s.split_once(':') {
            Some((n, p)) => (n, Some(p)),
            None => (s, None),
        };
        match (name, param) {
            ("sum", None) => Ok(Aggregator::Sum),
            ("psum", None) => Ok(Aggregator::Psum),
            ("sum_alpha", Some(p)) => {
                let alpha: f64 = p.parse().map_err(|_| Error::InvalidParameter(format!("aggregator exponent `{p}` is not a number")))?;
                Aggregator::sum_alpha(alpha)
            }
            ("sum_alpha", None) => Err(Error::InvalidParameter("aggregator `sum_alpha` needs a parameter, e.g. sum_alpha:2".into())),
            _ => Err(Error::InvalidParameter(format!("unknown aggregator `{s}`"))),
        }
    }
}

/// Aggregates after checking that every input lies in `[0,1]`.
pub fn aggregate_checked(theta: &dyn Aggregate, weights: &[f64]) -> Result<f64> {
    if let Some(w) = weights.iter().find(|w| !(0.0..=1.0).contains(*w)) {
        return Err(Error::WeightRange(w.to_string()));
    }
    Ok(theta.aggregate(weights))
}

pub fn to_f64s(weights: &[Weight]) -> Vec<f64> {
    weights.iter().map(|w| w.to_f64()).collect()
}

/// A scoring semantics: `strength(I) = delta(I) * aggregate(select(I))`.
pub trait Semantics: Send + Sync {
    fn name(&self) -> String;
    fn delta(&self, inst: &Instantiation) -> u8;
    fn select(&self, inst: &Instantiation) -> Vec<Weight>;
    fn aggregate(&self, weights: &[f64]) -> f64;

    fn strength(&self, inst: &Instantiation) -> f64 {
        if self.delta(inst) == 0 {
            return 0.0;
        }
        self.aggregate(&to_f64s(&self.select(inst)))
    }

    /// The shipped components, if that is what this semantics is made of.
    /// Search-space pruning relies on their monotonicity.
    fn as_shipped(&self) -> Option<&ParametricSemantics> {
        None
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ParametricSemantics {
    pub validator: Validator,
    pub selector: Selector,
    pub aggregator: Aggregator,
}

impl ParametricSemantics {
    pub fn new(kind: RelationKind, selector: Selector, aggregator: Aggregator) -> Self {
        ParametricSemantics { validator: Validator(kind), selector, aggregator }
    }

    /// Parses `delta=<x> sigma=<name>[:a] theta=<name>[:a]` (any order).
    pub fn parse_config(line: &str) -> Result<Self> {
        let (mut delta, mut sigma, mut theta) = (None, None, None);
        for token in line.split_whitespace() {
            let (key, value) =
                token.split_once('=').ok_or_else(|| Error::InvalidParameter(format!("expected key=value, found `{token}`")))?;
            let slot = match key {
                "delta" => &mut delta,
                "sigma" => &mut sigma,
                "theta" => &mut theta,
                _ => return Err(Error::InvalidParameter(format!("unknown key `{key}`"))),
            };
            if slot.replace(value).is_some() {
                return Err(Error::InvalidParameter(format!("key `{key}` given twice")));
            }
        }
        let missing = |k: &str| Error::InvalidParameter(format!("missing `{k}=`"));
        Ok(ParametricSemantics {
            validator: delta.ok_or_else(|| missing("delta"))?.parse()?,
            selector: sigma.ok_or_else(|| missing("sigma"))?.parse()?,
            aggregator: theta.ok_or_else(|| missing("theta"))?.parse()?,
        })
    }

    /// All 36 combinations of the shipped families with the default
    /// parameters (threshold 0.3, exponent 2).
    pub fn all_combinations() -> Vec<ParametricSemantics> {
        let selectors = [Selector::Id, Selector::Thresh(Weight::tenths(3)), Selector::Rule];
        let aggregators = [Aggregator::Sum, Aggregator::SumAlpha(2.0), Aggregator::Psum];
        let mut out = Vec::new();
        for kind in RelationKind::ALL {
            for s in selectors {
                for a in aggregators {
                    out.push(ParametricSemantics::new(kind, s, a));
                }
            }
        }
        out
    }

    pub fn config_line(&self) -> String {
        format!("delta={} sigma={} theta={}", self.validator.0, self.selector, self.aggregator)
    }
}

impl fmt::Display for ParametricSemantics {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<{}, {}, {}>", self.validator.0, self.selector, self.aggregator)
    }
}

impl Semantics for ParametricSemantics {
    fn name(&self) -> String {
        self.to_string()
    }

    fn delta(&self, inst: &Instantiation) -> u8 {
        self.validator.delta(inst)
    }

    fn select(&self, inst: &Instantiation) -> Vec<Weight> {
        self.selector.select(inst)
    }

    fn aggregate(&self, weights: &[f64]) -> f64 {
        self.aggregator.aggregate(weights)
    }

    fn as_shipped(&self) -> Option<&ParametricSemantics> {
        Some(self)
    }
}

/// A semantics assembled from arbitrary components.
pub struct CustomSemantics {
    pub validator: Box<dyn Validate>,
    pub selector: Box<dyn Select>,
    pub aggregator: Box<dyn Aggregate>,
}

impl Semantics for CustomSemantics {
    fn name(&self) -> String {
        format!("<{}, {}, {}>", self.validator.name(), self.selector.name(), self.aggregator.name())
    }

    fn delta(&self, inst: &Instantiation) -> u8 {
        self.validator.delta(inst)
    }

    fn select(&self, inst: &Instantiation) -> Vec<Weight> {
        self.selector.select(inst)
    }

    fn aggregate(&self, weights: &[f64]) -> f64 {
        self.aggregator.aggregate(weights)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Condition {
    DeltaA,
    ThetaA,
    ThetaB,
    ThetaC,
    ThetaD,
    ThetaE,
    SigmaA,
    SigmaB,
    SigmaC,
    SigmaD,
    SigmaE,
}

impl Condition {
    pub const ALL: [Condition; 11] = [
        Condition::DeltaA,
        Condition::ThetaA,
        Condition::ThetaB,
        Condition::ThetaC,
        Condition::ThetaD,
        Condition::ThetaE,
        Condition::SigmaA,
        Condition::SigmaB,
        Condition::SigmaC,
        Condition::SigmaD,
        Condition::SigmaE,
    ];

    pub fn label(self) -> &'static str {
        match self {
            Condition::DeltaA => "delta-(a)",
            Condition::ThetaA => "theta-(a)",
            Condition::ThetaB => "theta-(b)",
            Condition::ThetaC => "theta-(c)",
            Condition::ThetaD => "theta-(d)",
            Condition::ThetaE => "theta-(e)",
            Condition::SigmaA => "sigma-(a)",
            Condition::SigmaB => "sigma-(b)",
            Condition::SigmaC => "sigma-(c)",
            Condition::SigmaD => "sigma-(d)",
            Condition::SigmaE => "sigma-(e)",
        }
    }

    pub fn description(self) -> &'static str {
        match self {
            Condition::DeltaA => "accepts every instantiation satisfying the consistency relation",
            Condition::ThetaA => "empty tuple aggregates to 0",
            Condition::ThetaB => "singleton aggregates to its weight",
            Condition::ThetaC => "symmetric under permutation",
            Condition::ThetaD => "padding with 0 changes nothing",
            Condition::ThetaE => "monotone in an appended coordinate",
            Condition::SigmaA => "empty set selects the empty tuple",
            Condition::SigmaB => "non-empty set selects a non-empty tuple",
            Condition::SigmaC => "a novel weight-0 formula appends exactly a 0",
            Condition::SigmaD => "a novel consistent formula strictly extends the tuple",
            Condition::SigmaE => "a novel consistent formula never lowers the aggregate",
        }
    }
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConditionResult {
    pub condition: Condition,
    /// Samples on which the premise of the condition held.
    pub checked: usize,
    /// Samples on which the premise failed, so nothing was tested.
    pub vacuous: usize,
    pub counterexample: Option<String>,
}

impl ConditionResult {
    pub fn passed(&self) -> bool {
        self.counterexample.is_none()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AuditReport {
    pub components: String,
    pub consistency: String,
    pub samples: usize,
    pub conditions: Vec<ConditionResult>,
}

impl AuditReport {
    pub fn passed(&self) -> bool {
        self.conditions.iter().all(ConditionResult::passed)
    }

    pub fn result(&self, condition: Condition) -> Option<&ConditionResult> {
        self.conditions.iter().find(|c| c.condition == condition)
    }

    pub fn failures(&self) -> impl Iterator<Item = &ConditionResult> {
        self.conditions.iter().filter(|c| !c.passed())
    }
}

struct Tally {
    checked: usize,
    vacuous: usize,
    counterexample: Option<String>,
}

impl Tally {
    fn new() -> Self {
        Tally { checked: 0, vacuous: 0, counterexample: None }
    }

    fn record(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok && self.counterexample.is_none() {
            self.counterexample = Some(describe());
        }
    }
}

fn close(a: f64, b: f64) -> bool {
    (a - b).abs() <= TOLERANCE
}

fn show_weights(ws: &[f64]) -> String {
    let parts: Vec<String> = ws.iter().map(|w| crate::weight::format_strength(*w)).collect();
    format!("({})", parts.join(", "))
}

fn show_selected(ws: &[Weight]) -> String {
    let parts: Vec<String> = ws.iter().map(Weight::to_string).collect();
    format!("({})", parts.join(", "))
}

fn show_inst(inst: &Instantiation) -> String {
    let parts: Vec<String> = inst.iter().map(|(f, w)| format!("({f}, {w})")).collect();
    format!("{{{}}}", parts.join(", "))
}

/// Multiset inclusion of weight tuples, ignoring slot order.
fn multiset_included(small: &[Weight], large: &[Weight], strict: bool) -> bool {
    let mut remaining: Vec<Weight> = large.to_vec();
    remaining.sort();
    for w in small {
        match remaining.binary_search(w) {
            Ok(i) => {
                remaining.remove(i);
            }
            Err(_) => return false,
        }
    }
    !strict || !remaining.is_empty()
}

fn sorted(mut ws: Vec<Weight>) -> Vec<Weight> {
    ws.sort();
    ws
}

/// Whether `tau(closure(I))` entails `tau(phi)`: a literal must be derivable;
/// a rule must be present or have a derivable conclusion.
pub fn tau_entails(inst: &Instantiation, phi: &Formula) -> bool {
    let homogenised = tau(inst.formulae());
    let closure = derive_closure(&homogenised);
    match tau_formula(phi) {
        Formula::Literal(l) => closure.contains(&l),
        rule @ Formula::Rule(_) => homogenised.contains(&rule) || rule.as_rule().is_some_and(|r| closure.contains(&r.conclusion)),
    }
}

fn fresh_predicate(inst: &Instantiation) -> String {
    let used: BTreeSet<&str> = inst.formulae().flat_map(|f| f.literals()).map(|l| l.predicate.as_str()).collect();
    (0..).map(|i| format!("Fresh{i}")).find(|p| !used.contains(p.as_str())).expect("unbounded name supply")
}

fn random_weight(rng: &mut ChaCha8Rng) -> Weight {
    if rng.gen_bool(0.2) {
        Weight::tenths(rng.gen_range(0..=10))
    } else {
        Weight::from_nanos(rng.gen_range(0..=crate::weight::SCALE)).expect("in range")
    }
}

/// A formula over a predicate absent from `inst`: a fact, or a ground rule
/// concluding it from literals already present.
fn novel_formula(inst: &Instantiation, rng: &mut ChaCha8Rng) -> Formula {
    let tl = *inst.timeline();
    let pred = fresh_predicate(inst);
    let a = rng.gen_range(tl.lower()..=tl.upper());
    let b = rng.gen_range(a..=tl.upper());
    let positive = rng.gen_bool(0.7);
    let head =
        Literal::new(pred, vec![Term::constant("C0")], Term::Time(TimePoint::At(a)), Term::Time(TimePoint::At(b))).with_polarity(positive);
    let present: Vec<&Literal> = inst.formulae().filter_map(Formula::as_literal).collect();
    if !present.is_empty() && rng.gen_bool(0.3) {
        let premise = present[rng.gen_range(0..present.len())].clone();
        Formula::Rule(Rule::new(vec![premise], head))
    } else {
        Formula::Literal(head)
    }
}

/// Checks every condition on every sample. `con` is the consistency
/// relation the validator is audited against; novelty cases for the
/// selector conditions are generated from a fresh predicate so that their
/// preconditions are not vacuous.
pub fn audit_well_behaved(
    validator: &dyn Validate,
    con: Relation,
    selector: &dyn Select,
    aggregator: &dyn Aggregate,
    samples: &[Instantiation],
    seed: u64,
) -> AuditReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut tallies: Vec<Tally> = Condition::ALL.iter().map(|_| Tally::new()).collect();
    let idx = |c: Condition| Condition::ALL.iter().position(|x| *x == c).expect("listed");

    for inst in samples {
        let raw: Vec<f64> = to_f64s(&inst.weights());

        // validator
        let t = &mut tallies[idx(Condition::DeltaA)];
        if con_holds(con, inst) {
            let d = validator.delta(inst);
            t.record(d == 1, || format!("delta = {d} on {} although {con} holds", show_inst(inst)));
        } else {
            t.vacuous += 1;
        }

        // aggregator
        let empty = aggregator.aggregate(&[]);
        tallies[idx(Condition::ThetaA)].record(close(empty, 0.0), || format!("aggregate() = {empty}"));

        let w = raw.first().copied().unwrap_or_else(|| random_weight(&mut rng).to_f64());
        let single = aggregator.aggregate(&[w]);
        tallies[idx(Condition::ThetaB)].record(close(single, w), || format!("aggregate({w}) = {single}"));

        let mut shuffled = raw.clone();
        shuffled.shuffle(&mut rng);
        let (a, b) = (aggregator.aggregate(&raw), aggregator.aggregate(&shuffled));
        tallies[idx(Condition::ThetaC)]
            .record(close(a, b), || format!("aggregate{} = {a} but aggregate{} = {b}", show_weights(&raw), show_weights(&shuffled)));

        let mut padded = raw.clone();
        padded.push(0.0);
        let p = aggregator.aggregate(&padded);
        tallies[idx(Condition::ThetaD)]
            .record(close(a, p), || format!("aggregate{} = {a} but aggregate{} = {p}", show_weights(&raw), show_weights(&padded)));

        let (mut y, mut z) = (random_weight(&mut rng).to_f64(), random_weight(&mut rng).to_f64());
        if y > z {
            std::mem::swap(&mut y, &mut z);
        }
        let (mut with_y, mut with_z) = (raw.clone(), raw.clone());
        with_y.push(y);
        with_z.push(z);
        let (ay, az) = (aggregator.aggregate(&with_y), aggregator.aggregate(&with_z));
        tallies[idx(Condition::ThetaE)].record(ay <= az + TOLERANCE, || {
            format!("aggregate{} = {ay} > aggregate{} = {az}", show_weights(&with_y), show_weights(&with_z))
        });

        // selector
        let empty_inst = Instantiation::new(*inst.timeline());
        let se = selector.select(&empty_inst);
        tallies[idx(Condition::SigmaA)].record(se.is_empty(), || format!("select({{}}) = {}", show_selected(&se)));

        let base = selector.select(inst);
        let t = &mut tallies[idx(Condition::SigmaB)];
        if inst.is_empty() {
            t.vacuous += 1;
        } else {
            t.record(!base.is_empty(), || format!("select{} = ()", show_inst(inst)));
        }

        let phi = novel_formula(inst, &mut rng);
        let novel = !tau_entails(inst, &phi);

        let t = &mut tallies[idx(Condition::SigmaC)];
        match inst.with(phi.clone(), Weight::ZERO) {
            Ok(ext) if novel && !inst.contains(&phi) => {
                let got = selector.select(&ext);
                let mut expected = base.clone();
                expected.push(Weight::ZERO);
                t.record(sorted(got.clone()) == sorted(expected.clone()), || {
                    format!(
                        "adding ({phi}, 0) to {} selects {} instead of {}",
                        show_inst(inst),
                        show_selected(&got),
                        show_selected(&expected)
                    )
                });
            }
            _ => t.vacuous += 1,
        }

        let wphi = random_weight(&mut rng);
        let ext = inst.with(phi.clone(), wphi).ok().filter(|e| novel && !inst.contains(&phi) && con_holds(con, e));
        match ext {
            Some(ext) => {
                let got = selector.select(&ext);
                tallies[idx(Condition::SigmaD)].record(multiset_included(&base, &got, true), || {
                    format!("adding ({phi}, {wphi}) to {} selects {} from {}", show_inst(inst), show_selected(&got), show_selected(&base))
                });
                let (before, after) = (aggregator.aggregate(&to_f64s(&base)), aggregator.aggregate(&to_f64s(&got)));
                tallies[idx(Condition::SigmaE)].record(before <= after + TOLERANCE, || {
                    format!("adding ({phi}, {wphi}) to {} lowers the aggregate from {before} to {after}", show_inst(inst))
                });
            }
            None => {
                tallies[idx(Condition::SigmaD)].vacuous += 1;
                tallies[idx(Condition::SigmaE)].vacuous += 1;
            }
        }
    }

    AuditReport {
        components: format!("<{}, {}, {}>", validator.name(), selector.name(), aggregator.name()),
        consistency: con.to_string(),
        samples: samples.len(),
        conditions: Condition::ALL
            .iter()
            .zip(tallies)
            .map(|(c, t)| ConditionResult { condition: *c, checked: t.checked, vacuous: t.vacuous, counterexample: t.counterexample })
            .collect(),
    }
}

/// Deliberately broken components, one per condition, used to show the
/// audit detects each kind of violation.
pub mod mutants {
    use super::*;

    pub struct RejectAll;

    impl Validate for RejectAll {
        fn name(&self) -> String {
            "reject-all".into()
        }

        fn delta(&self, _: &Instantiation) -> u8 {
            0
        }
    }

    /// An aggregator given by a plain function.
    pub struct FnAggregator {
        pub name: &'static str,
        pub f: fn(&[f64]) -> f64,
    }

    impl Aggregate for FnAggregator {
        fn name(&self) -> String {
            self.name.into()
        }

        fn aggregate(&self, weights: &[f64]) -> f64 {
            (self.f)(weights)
        }
    }

    /// A selector given by a plain function.
    pub struct FnSelector {
        pub name: &'static str,
        pub f: fn(&Instantiation) -> Vec<Weight>,
    }

    impl Select for FnSelector {
        fn name(&self) -> String {
            self.name.into()
        }

        fn select(&self, inst: &Instantiation) -> Vec<Weight> {
            (self.f)(inst)
        }
    }

    fn sum(ws: &[f64]) -> f64 {
        ws.iter().sum()
    }

    pub fn aggregator_for(condition: Condition) -> Option<FnAggregator> {
        let (name, f): (&'static str, fn(&[f64]) -> f64) = match condition {
            Condition::ThetaA => ("sum-plus-one", |ws| sum(ws) + 1.0),
            Condition::ThetaB => ("sum-minus-one", |ws| if ws.is_empty() { 0.0 } else { sum(ws) - 1.0 }),
            Condition::ThetaC => ("position-weighted", |ws| ws.iter().enumerate().map(|(i, w)| (i + 1) as f64 * w).sum()),
            Condition::ThetaD => ("length-bonus", |ws| sum(ws) + 0.1 * ws.len().saturating_sub(1) as f64),
            Condition::ThetaE => ("distance-from-one", |ws| if ws.is_empty() { 0.0 } else { (sum(ws) - 1.0).abs() }),
            _ => return None,
        };
        Some(FnAggregator { name, f })
    }

    pub fn selector_for(condition: Condition) -> Option<FnSelector> {
        let (name, f): (&'static str, fn(&Instantiation) -> Vec<Weight>) = match condition {
            Condition::SigmaA => ("zero-on-empty", |inst| if inst.is_empty() { vec![Weight::ZERO] } else { inst.weights() }),
            Condition::SigmaB => ("select-nothing", |_| Vec::new()),
            Condition::SigmaC => ("lift-zero", |inst| {
                inst.weights().into_iter().map(|w| if w.is_zero() { Weight::from_nanos(500_000_000).expect("half") } else { w }).collect()
            }),
            Condition::SigmaD => ("max-only", |inst| inst.weights().into_iter().max().into_iter().collect()),
            Condition::SigmaE => ("normalised", |inst| {
                let n = inst.len() as u32;
                inst.weights().into_iter().map(|w| Weight::from_nanos(w.nanos() / n).expect("shrinks")).collect()
            }),
            _ => return None,
        };
        Some(FnSelector { name, f })
    }

    /// Components for auditing the mutant of `condition`, the remaining
    /// slots filled with shipped, well-behaved ones.
    pub fn components_for(condition: Condition) -> (Box<dyn Validate>, Box<dyn Select>, Box<dyn Aggregate>) {
        let validator: Box<dyn Validate> =
            if condition == Condition::DeltaA { Box::new(RejectAll) } else { Box::new(Validator(RelationKind::TCon)) };
        let selector: Box<dyn Select> = match selector_for(condition) {
            Some(s) => Box::new(s),
            None => Box::new(Selector::Id),
        };
        let aggregator: Box<dyn Aggregate> = match aggregator_for(condition) {
            Some(a) => Box::new(a),
            None => Box::new(Aggregator::Sum),
        };
        (validator, selector, aggregator)
    }
}
