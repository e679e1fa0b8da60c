//! Knowledge bases, instantiations, support weights and grounding.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::kernel::{match_literal, Binding, Formula, Literal, Rule, Signature, Term};
use crate::temporal::{literal_interval, Timeline};
use crate::weight::Weight;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct WeightedFormula {
    pub formula: Formula,
    pub weight: Weight,
}

impl WeightedFormula {
    pub fn new(formula: impl Into<Formula>, weight: Weight) -> Self {
        WeightedFormula { formula: formula.into(), weight }
    }
}

/// Projection onto formulae; duplicates merge.
pub fn tf<'a, I>(items: I) -> BTreeSet<Formula>
where
    I: IntoIterator<Item = &'a WeightedFormula>,
{
    items.into_iter().map(|wf| wf.formula.clone()).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RuleDecl {
    pub rule: Rule,
    pub weight: Weight,
}

/// A temporal Markov logic network: weighted ground facts and weighted
/// universally quantified rules over a signature and a timeline.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Tmln {
    signature: Signature,
    timeline: Timeline,
    facts: BTreeMap<Literal, Weight>,
    rules: BTreeMap<String, RuleDecl>,
}

impl Tmln {
    pub fn new(signature: Signature, timeline: Timeline) -> Self {
        Tmln { signature, timeline, facts: BTreeMap::new(), rules: BTreeMap::new() }
    }

    pub fn signature(&self) -> &Signature {
        &self.signature
    }

    pub fn signature_mut(&mut self) -> &mut Signature {
        &mut self.signature
    }

    pub fn timeline(&self) -> &Timeline {
        &self.timeline
    }

    pub fn facts(&self) -> impl Iterator<Item = (&Literal, Weight)> {
        self.facts.iter().map(|(l, w)| (l, *w))
    }

    pub fn rules(&self) -> impl Iterator<Item = (&str, &RuleDecl)> {
        self.rules.iter().map(|(id, r)| (id.as_str(), r))
    }

    pub fn fact_count(&self) -> usize {
        self.facts.len()
    }

    pub fn rule_count(&self) -> usize {
        self.rules.len()
    }

    pub fn len(&self) -> usize {
        self.facts.len() + self.rules.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn check_fact(&self, lit: &Literal) -> Vec<String> {
        let mut problems = self.signature.check_literal(lit, &mut BTreeMap::new());
        if !lit.is_ground() {
            problems.push(format!("fact `{lit}` is not ground"));
        } else if problems.is_empty() {
            if let Err(e) = literal_interval(lit, &self.timeline) {
                problems.push(format!("`{lit}`: {e}"));
            }
        }
        problems
    }

    pub fn check_rule(&self, rule: &Rule) -> Vec<String> {
        let mut problems = Vec::new();
        if rule.premises.is_empty() {
            problems.push("rule without premises".to_string());
        }
        let mut var_sorts = BTreeMap::new();
        for lit in rule.premises.iter().chain([&rule.conclusion]) {
            problems.extend(self.signature.check_literal(lit, &mut var_sorts));
            for t in [&lit.lower, &lit.upper] {
                if let Term::Time(tp) = t {
                    if !self.timeline.contains(*tp) {
                        problems.push(format!("time point {tp} outside the timeline"));
                    }
                }
            }
        }
        if rule.variables().is_empty() {
            problems.push("rule has no variable".to_string());
        }
        let bound: BTreeSet<&str> = rule.premises.iter().flat_map(|p| p.variables()).map(|v| v.name.as_str()).collect();
        for v in rule.conclusion.variables() {
            if !bound.contains(v.name.as_str()) {
                problems.push(format!("conclusion variable `{}` does not occur in any premise", v.name));
            }
        }
        problems
    }

    /// Adds a fact. Re-adding the same fact with the same weight is a no-op;
    /// with a different weight it is an error.
    pub fn add_fact(&mut self, lit: Literal, weight: Weight) -> Result<()> {
        let problems = self.check_fact(&lit);
        if !problems.is_empty() {
            return Err(Error::InvalidKb(problems.join("; ")));
        }
        match self.facts.get(&lit) {
            Some(w) if *w != weight => Err(Error::InvalidKb(format!("fact `{lit}` declared with weights {w} and {weight}"))),
            _ => {
                self.facts.insert(lit, weight);
                Ok(())
            }
        }
    }

    pub fn add_rule(&mut self, id: impl Into<String>, rule: Rule, weight: Weight) -> Result<()> {
        let id = id.into();
        let problems = self.check_rule(&rule);
        if !problems.is_empty() {
            return Err(Error::InvalidKb(format!("rule {id}: {}", problems.join("; "))));
        }
        if self.rules.contains_key(&id) {
            return Err(Error::InvalidKb(format!("duplicate rule id `{id}`")));
        }
        self.rules.insert(id, RuleDecl { rule, weight });
        Ok(())
    }

    pub fn with_fact(&self, lit: Literal, weight: Weight) -> Result<Tmln> {
        let mut out = self.clone();
        out.add_fact(lit, weight)?;
        Ok(out)
    }

    pub fn weighted_formulae(&self) -> Vec<WeightedFormula> {
        self.facts
            .iter()
            .map(|(l, w)| WeightedFormula::new(l.clone(), *w))
            .chain(self.rules.values().map(|r| WeightedFormula::new(r.rule.clone(), r.weight)))
            .collect()
    }

    pub fn tf(&self) -> BTreeSet<Formula> {
        tf(&self.weighted_formulae())
    }
}

/// A state: a finite set of weighted ground formulae, keyed by formula.
/// Iteration follows the canonical formula order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Instantiation {
    timeline: Timeline,
    items: BTreeMap<Formula, Weight>,
}

impl Instantiation {
    pub fn new(timeline: Timeline) -> Self {
        Instantiation { timeline, items: BTreeMap::new() }
    }

    pub fn from_items<I>(timeline: Timeline, items: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Formula, Weight)>,
    {
        let mut out = Instantiation::new(timeline);
        for (f, w) in items {
            out.insert(f, w)?;
        }
        Ok(out)
    }

    pub fn timeline(&self) -> &Timeline {
        &self.timeline
    }

    pub fn insert(&mut self, formula: Formula, weight: Weight) -> Result<Option<Weight>> {
        if !formula.is_ground() {
            return Err(Error::NonGround(formula.to_string()));
        }
        for lit in formula.literals() {
            literal_interval(lit, &self.timeline)?;
        }
        Ok(self.items.insert(formula, weight))
    }

    pub fn remove(&mut self, formula: &Formula) -> Option<Weight> {
        self.items.remove(formula)
    }

    pub fn with(&self, formula: Formula, weight: Weight) -> Result<Self> {
        let mut out = self.clone();
        out.insert(formula, weight)?;
        Ok(out)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Formula, Weight)> + '_ {
        self.items.iter().map(|(f, w)| (f, *w))
    }

    pub fn formulae(&self) -> impl Iterator<Item = &Formula> + '_ {
        self.items.keys()
    }

    pub fn weight(&self, formula: &Formula) -> Option<Weight> {
        self.items.get(formula).copied()
    }

    pub fn contains(&self, formula: &Formula) -> bool {
        self.items.contains_key(formula)
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    pub fn weights(&self) -> Vec<Weight> {
        self.items.values().copied().collect()
    }

    pub fn tf(&self) -> BTreeSet<Formula> {
        self.items.keys().cloned().collect()
    }

    /// Same formulae with the same weights.
    pub fn is_subset(&self, other: &Instantiation) -> bool {
        self.items.iter().all(|(f, w)| other.items.get(f) == Some(w))
    }

    /// Sub-instantiation selected by a bit mask over canonical positions.
    pub fn select_mask(&self, mask: u64) -> Instantiation {
        let items = self.items.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, (f, w))| (f.clone(), *w)).collect();
        Instantiation { timeline: self.timeline, items }
    }
}

/// Derivation hypergraph over weighted items, used to compute support
/// weights. Items are facts and rules; each ground rule instance is an edge
/// labelled with the item it came from.
#[derive(Clone, Debug)]
pub struct Derivations {
    weights: Vec<Weight>,
    literals: Vec<Literal>,
    index: HashMap<Literal, usize>,
    asserted_by: Vec<Vec<usize>>,
    edges: Vec<Edge>,
    concluded_by: Vec<Vec<usize>>,
}

#[derive(Clone, Debug)]
struct Edge {
    item: usize,
    premises: Vec<usize>,
}

type ItemSet = BTreeSet<usize>;

impl Derivations {
    fn empty(weights: Vec<Weight>) -> Self {
        Derivations {
            weights,
            literals: Vec::new(),
            index: HashMap::new(),
            asserted_by: Vec::new(),
            edges: Vec::new(),
            concluded_by: Vec::new(),
        }
    }

    fn intern(&mut self, lit: &Literal) -> usize {
        if let Some(&i) = self.index.get(lit) {
            return i;
        }
        let i = self.literals.len();
        self.literals.push(lit.clone());
        self.index.insert(lit.clone(), i);
        self.asserted_by.push(Vec::new());
        self.concluded_by.push(Vec::new());
        i
    }

    fn assert_fact(&mut self, item: usize, lit: &Literal) {
        let i = self.intern(lit);
        self.asserted_by[i].push(item);
    }

    fn add_edge(&mut self, item: usize, rule: &Rule) {
        let mut premises: Vec<usize> = rule.premises.iter().map(|p| self.intern(p)).collect();
        premises.sort_unstable();
        premises.dedup();
        let conclusion = self.intern(&rule.conclusion);
        self.concluded_by[conclusion].push(self.edges.len());
        self.edges.push(Edge { item, premises });
    }

    /// Items of an instantiation in canonical order.
    pub fn of_instantiation(inst: &Instantiation) -> Self {
        let mut d = Derivations::empty(inst.weights());
        for (item, (formula, _)) in inst.iter().enumerate() {
            match formula {
                Formula::Literal(l) => d.assert_fact(item, l),
                Formula::Rule(r) => d.add_edge(item, r),
            }
        }
        d
    }

    /// Facts first (canonical order), then rules by id; non-ground rules act
    /// through all their instances over the derivable literals.
    pub fn of_tmln(m: &Tmln) -> Self {
        let facts: Vec<&Literal> = m.facts.keys().collect();
        let rules: Vec<&Rule> = m.rules.values().map(|r| &r.rule).collect();
        let weights = m.facts.values().copied().chain(m.rules.values().map(|r| r.weight)).collect();
        let (_, instances) = saturate(&facts, &rules);
        let mut d = Derivations::empty(weights);
        for (item, lit) in facts.iter().enumerate() {
            d.assert_fact(item, lit);
        }
        for (rule_idx, ground) in &instances {
            d.add_edge(facts.len() + rule_idx, ground);
        }
        d
    }

    pub fn is_derivable(&self, lit: &Literal) -> bool {
        self.index.get(lit).is_some_and(|&i| !self.supports(i, &mut Vec::new()).is_empty())
    }

    /// All inclusion-minimal item sets whose formulae entail `lit`.
    pub fn minimal_supports(&self, lit: &Literal) -> Vec<ItemSet> {
        match self.index.get(lit) {
            Some(&i) => self.supports(i, &mut Vec::new()),
            None => Vec::new(),
        }
    }

    /// Maximum, over minimal supports, of the smallest weight inside the support.
    pub fn weight_of(&self, lit: &Literal) -> Result<Weight> {
        self.minimal_supports(lit)
            .iter()
            .map(|s| s.iter().map(|&i| self.weights[i]).min().unwrap_or(Weight::ONE))
            .max()
            .ok_or_else(|| Error::NotDerivable(lit.to_string()))
    }

    fn supports(&self, lit: usize, path: &mut Vec<usize>) -> Vec<ItemSet> {
        let mut found: Vec<ItemSet> = self.asserted_by[lit].iter().map(|&i| ItemSet::from([i])).collect();
        path.push(lit);
        for &e in &self.concluded_by[lit] {
            let edge = &self.edges[e];
            if edge.premises.iter().any(|p| path.contains(p)) {
                continue;
            }
            let mut partial = vec![ItemSet::from([edge.item])];
            for &p in &edge.premises {
                let sub = self.supports(p, path);
                let next: Vec<ItemSet> = partial.iter().flat_map(|a| sub.iter().map(move |s| a.union(s).copied().collect())).collect();
                partial = minimize(next);
                if partial.is_empty() {
                    break;
                }
            }
            found.extend(partial);
        }
        path.pop();
        minimize(found)
    }
}

fn minimize(mut sets: Vec<ItemSet>) -> Vec<ItemSet> {
    sets.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    sets.dedup();
    let mut kept: Vec<ItemSet> = Vec::new();
    for s in sets {
        if !kept.iter().any(|k| k.is_subset(&s)) {
            kept.push(s);
        }
    }
    kept
}

/// Support weight of `target` in a knowledge base or an instantiation.
pub trait SupportBase {
    fn derivations(&self) -> Derivations;
}

impl SupportBase for Tmln {
    fn derivations(&self) -> Derivations {
        Derivations::of_tmln(self)
    }
}

impl SupportBase for Instantiation {
    fn derivations(&self) -> Derivations {
        Derivations::of_instantiation(self)
    }
}

pub fn weight_of(target: &Literal, base: &impl SupportBase) -> Result<Weight> {
    base.derivations().weight_of(target)
}

type LiteralIndex<'a> = HashMap<(&'a str, bool), Vec<&'a Literal>>;

fn index_literals(lits: &BTreeSet<Literal>) -> LiteralIndex<'_> {
    let mut index: LiteralIndex<'_> = HashMap::new();
    for l in lits {
        index.entry((l.predicate.as_str(), l.positive)).or_default().push(l);
    }
    index
}

/// Bindings making every premise of `rule` a member of the indexed set,
/// joined premise by premise from left to right.
fn premise_bindings(rule: &Rule, index: &LiteralIndex<'_>) -> Vec<Binding> {
    let mut partial = vec![Binding::new()];
    for premise in &rule.premises {
        let candidates = index.get(&(premise.predicate.as_str(), premise.positive)).map(Vec::as_slice).unwrap_or(&[]);
        let mut next = Vec::new();
        for b in &partial {
            for cand in candidates {
                let mut extended = b.clone();
                if match_literal(premise, cand, &mut extended) {
                    next.push(extended);
                }
            }
        }
        partial = next;
        if partial.is_empty() {
            break;
        }
    }
    partial
}

/// Forward chaining with non-ground rules. Returns the literal closure and
/// every ground instance (tagged with its rule's position) whose premises
/// lie in that closure.
fn saturate(facts: &[&Literal], rules: &[&Rule]) -> (BTreeSet<Literal>, Vec<(usize, Rule)>) {
    let mut closure: BTreeSet<Literal> = facts.iter().map(|l| (*l).clone()).collect();
    loop {
        let index = index_literals(&closure);
        let mut fresh = Vec::new();
        for rule in rules {
            for b in premise_bindings(rule, &index) {
                let conclusion = rule.apply(&b).conclusion;
                if !closure.contains(&conclusion) {
                    fresh.push(conclusion);
                }
            }
        }
        if fresh.is_empty() {
            break;
        }
        closure.extend(fresh);
    }
    let index = index_literals(&closure);
    let mut instances = Vec::new();
    for (i, rule) in rules.iter().enumerate() {
        let ground: BTreeSet<Rule> = premise_bindings(rule, &index).iter().map(|b| rule.apply(b)).collect();
        instances.extend(ground.into_iter().map(|g| (i, g)));
    }
    (closure, instances)
}

/// Result of grounding: the maximal instantiation plus, for each ground
/// rule, the ids of the rules it instantiates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Grounding {
    pub instantiation: Instantiation,
    pub origins: BTreeMap<Rule, BTreeSet<String>>,
}

impl Grounding {
    pub fn ground_rules(&self) -> impl Iterator<Item = (&Rule, Weight)> {
        self.instantiation.iter().filter_map(|(f, w)| f.as_rule().map(|r| (r, w)))
    }

    pub fn label(&self, formula: &Formula) -> Option<String> {
        let rule = formula.as_rule()?;
        let ids = self.origins.get(rule)?;
        Some(ids.iter().cloned().collect::<Vec<_>>().join("/"))
    }
}

struct RuleSource<'a> {
    id: Option<&'a str>,
    rule: &'a Rule,
    weight: Weight,
}

fn ground_parts(timeline: Timeline, facts: &[(&Literal, Weight)], rules: &[RuleSource<'_>]) -> Result<Grounding> {
    let fact_lits: Vec<&Literal> = facts.iter().map(|(l, _)| *l).collect();
    let rule_refs: Vec<&Rule> = rules.iter().map(|r| r.rule).collect();
    let (_, instances) = saturate(&fact_lits, &rule_refs);

    let weights = facts.iter().map(|(_, w)| *w).chain(rules.iter().map(|r| r.weight)).collect();
    let mut derivations = Derivations::empty(weights);
    for (item, lit) in fact_lits.iter().enumerate() {
        derivations.assert_fact(item, lit);
    }
    for (rule_idx, ground) in &instances {
        derivations.add_edge(facts.len() + rule_idx, ground);
    }

    let mut instantiation = Instantiation::new(timeline);
    for (lit, w) in facts {
        instantiation.insert(Formula::Literal((*lit).clone()), *w)?;
    }
    let mut origins: BTreeMap<Rule, BTreeSet<String>> = BTreeMap::new();
    for (rule_idx, ground) in instances {
        let source = &rules[rule_idx];
        literal_interval(&ground.conclusion, &timeline)
            .map_err(|e| Error::InvalidKb(format!("instance `{ground}` has an invalid conclusion interval: {e}")))?;
        let mut w = source.weight;
        for p in &ground.premises {
            w = w.min(derivations.weight_of(p)?);
        }
        if let Some(id) = source.id {
            origins.entry(ground.clone()).or_default().insert(id.to_string());
        }
        let formula = Formula::Rule(ground);
        let best = instantiation.weight(&formula).map_or(w, |prev| prev.max(w));
        instantiation.insert(formula, best)?;
    }
    Ok(Grounding { instantiation, origins })
}

/// Maximal instantiation: the facts plus every ground instance of a rule
/// whose premises are derivable, weighted by the minimum of the rule weight
/// and the premises' support weights. Equal instances keep the larger weight.
pub fn ground(m: &Tmln) -> Result<Grounding> {
    let facts: Vec<(&Literal, Weight)> = m.facts().collect();
    let rules: Vec<RuleSource<'_>> = m.rules().map(|(id, d)| RuleSource { id: Some(id), rule: &d.rule, weight: d.weight }).collect();
    ground_parts(m.timeline, &facts, &rules)
}

/// Maximal instantiation of an already ground set, its ground rules acting
/// as rules with an empty binding.
pub fn instantiate(inst: &Instantiation) -> Result<Instantiation> {
    let facts: Vec<(&Literal, Weight)> = inst.iter().filter_map(|(f, w)| f.as_literal().map(|l| (l, w))).collect();
    let rules: Vec<RuleSource<'_>> =
        inst.iter().filter_map(|(f, w)| f.as_rule().map(|r| RuleSource { id: None, rule: r, weight: w })).collect();
    Ok(ground_parts(inst.timeline, &facts, &rules)?.instantiation)
}

/// Like [`instantiate`], with additional (possibly non-ground) weighted rules.
pub fn instantiate_with(inst: &Instantiation, extra: &[(&Rule, Weight)]) -> Result<Instantiation> {
    let facts: Vec<(&Literal, Weight)> = inst.iter().filter_map(|(f, w)| f.as_literal().map(|l| (l, w))).collect();
    let rules: Vec<RuleSource<'_>> = inst
        .iter()
        .filter_map(|(f, w)| f.as_rule().map(|r| RuleSource { id: None, rule: r, weight: w }))
        .chain(extra.iter().map(|(r, w)| RuleSource { id: None, rule: r, weight: *w }))
        .collect();
    Ok(ground_parts(inst.timeline, &facts, &rules)?.instantiation)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::TimePoint;

    fn tl() -> Timeline {
        Timeline::new(0, 10).unwrap()
    }

    fn sig() -> Signature {
        let mut s = Signature::new();
        s.add_sort("S");
        for c in ["A", "B"] {
            s.add_constant(c, "S");
        }
        for p in ["P", "Q", "R", "T"] {
            s.add_predicate(p, vec!["S".into()]);
        }
        s
    }

    fn lit(p: &str, c: &str) -> Literal {
        Literal::fact(p, &[c], 1, 2)
    }

    fn x_rule(premises: &[&str], conclusion: &str) -> Rule {
        let l = |p: &str| Literal::new(p, vec![Term::var("x", "S")], Term::time_var("t"), Term::time_var("u"));
        Rule::new(premises.iter().map(|p| l(p)).collect(), l(conclusion))
    }

    #[test]
    fn tf_projects_and_merges() {
        let a = WeightedFormula::new(lit("P", "A"), Weight::tenths(4));
        let b = WeightedFormula::new(lit("P", "A"), Weight::ONE);
        let c = WeightedFormula::new(lit("Q", "A"), Weight::ONE);
        assert_eq!(tf(&[a, b, c]).len(), 2);
        assert!(tf(&[]).is_empty());
    }

    #[test]
    fn ground_without_rules_is_facts() {
        let mut m = Tmln::new(sig(), tl());
        m.add_fact(lit("P", "A"), Weight::tenths(3)).unwrap();
        let g = ground(&m).unwrap();
        assert_eq!(g.instantiation.len(), 1);
    }

    #[test]
    fn rule_with_unmatched_premise_is_excluded() {
        let mut m = Tmln::new(sig(), tl());
        m.add_fact(lit("P", "A"), Weight::ONE).unwrap();
        m.add_rule("R", x_rule(&["Q"], "R"), Weight::ONE).unwrap();
        assert_eq!(ground(&m).unwrap().instantiation.len(), 1);
    }

    #[test]
    fn two_supports_take_the_best() {
        // P(A) 0.4 -> via R1 (0.9) T(A); Q(A) 0.5 -> via R2 (0.6) T(A)
        let mut m = Tmln::new(sig(), tl());
        m.add_fact(lit("P", "A"), Weight::tenths(4)).unwrap();
        m.add_fact(lit("Q", "A"), Weight::tenths(5)).unwrap();
        m.add_rule("R1", x_rule(&["P"], "T"), Weight::tenths(9)).unwrap();
        m.add_rule("R2", x_rule(&["Q"], "T"), Weight::tenths(6)).unwrap();
        m.add_fact(lit("R", "B"), Weight::ONE).unwrap();
        assert_eq!(weight_of(&lit("T", "A"), &m).unwrap(), Weight::tenths(5));
        assert_eq!(weight_of(&lit("P", "A"), &m).unwrap(), Weight::tenths(4));
        assert!(matches!(weight_of(&lit("T", "B"), &m), Err(Error::NotDerivable(_))));
        let supports = m.derivations().minimal_supports(&lit("T", "A"));
        assert_eq!(supports.len(), 2);
    }

    #[test]
    fn chained_premise_weight_flows_into_ground_rule() {
        let mut m = Tmln::new(sig(), tl());
        m.add_fact(lit("P", "A"), Weight::tenths(7)).unwrap();
        m.add_rule("R1", x_rule(&["P"], "Q"), Weight::tenths(6)).unwrap();
        m.add_rule("R2", x_rule(&["Q"], "R"), Weight::ONE).unwrap();
        let g = ground(&m).unwrap();
        let weights: Vec<String> = g.ground_rules().map(|(r, w)| format!("{} {w}", r.conclusion.predicate)).collect();
        assert_eq!(weights, vec!["Q 0.6", "R 0.6"]);
    }

    #[test]
    fn validation_rejects_bad_rules() {
        let mut m = Tmln::new(sig(), tl());
        let unsafe_rule = Rule::new(
            vec![Literal::new("P", vec![Term::var("x", "S")], Term::time_var("t"), Term::time_var("u"))],
            Literal::new("Q", vec![Term::var("y", "S")], Term::Time(TimePoint::Min), Term::Time(TimePoint::Max)),
        );
        assert!(m.add_rule("U", unsafe_rule, Weight::ONE).is_err());
        let ground_rule = Rule::new(vec![lit("P", "A")], lit("Q", "A"));
        assert!(m.add_rule("G", ground_rule, Weight::ONE).is_err());
        assert!(m.add_fact(Literal::fact("P", &["A"], 5, 3), Weight::ONE).is_err());
        assert!(m.add_fact(Literal::fact("P", &["A"], 5, 30), Weight::ONE).is_err());
        m.add_fact(lit("P", "A"), Weight::ONE).unwrap();
        assert!(m.add_fact(lit("P", "A"), Weight::ONE).is_ok());
        assert!(m.add_fact(lit("P", "A"), Weight::ZERO).is_err());
    }

    #[test]
    fn instantiate_reweights_ground_rules() {
        let gr = Rule::new(vec![lit("P", "A")], lit("Q", "A"));
        let inst = Instantiation::from_items(
            tl(),
            [(Formula::from(lit("P", "A")), Weight::tenths(3)), (Formula::from(gr.clone()), Weight::tenths(8))],
        )
        .unwrap();
        let mi = instantiate(&inst).unwrap();
        assert_eq!(mi.weight(&Formula::from(gr)), Some(Weight::tenths(3)));
        let lonely =
            Instantiation::from_items(tl(), [(Formula::from(Rule::new(vec![lit("P", "B")], lit("Q", "B"))), Weight::ONE)]).unwrap();
        assert!(instantiate(&lonely).unwrap().is_empty());
    }
}
