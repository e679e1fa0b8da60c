//! Temporal MAP inference: the ⊆-maximal states of highest strength, and
//! weighted conclusions drawn from a state.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::kernel::{derive_closure, Formula, Literal, Term, TimePoint};
use crate::network::{ground, Derivations, Instantiation, Tmln};
use crate::semantics::{to_f64s, ParametricSemantics, Selector, Semantics, TOLERANCE};
use crate::temporal::{literal_interval, RelationKind};
use crate::weight::Weight;

pub const DEFAULT_EXHAUSTIVE_BOUND: usize = 20;
pub const EXHAUSTIVE_BOUND_VAR: &str = "TMLN_EXHAUSTIVE_BOUND";
/// States are bit masks over the maximal instantiation.
pub const MAX_PRUNED_SIZE: usize = 64;

/// The exhaustive bound, overridable through the environment.
pub fn exhaustive_bound() -> usize {
    std::env::var(EXHAUSTIVE_BOUND_VAR).ok().and_then(|v| v.trim().parse().ok()).unwrap_or(DEFAULT_EXHAUSTIVE_BOUND)
}

#[derive(Clone, Debug, PartialEq)]
pub struct MapEntry {
    pub instantiation: Instantiation,
    /// Selected weight of each formula, in the instantiation's order.
    pub selected: Vec<Weight>,
}

impl MapEntry {
    /// Formulae shown under the compact convention: those contributing a
    /// non-zero selected weight, minus certain (weight 1) facts. With `full`,
    /// everything.
    pub fn shown(&self, full: bool) -> Vec<&Formula> {
        self.split(full).0
    }

    pub fn suppressed(&self, full: bool) -> Vec<&Formula> {
        self.split(full).1
    }

    fn split(&self, full: bool) -> (Vec<&Formula>, Vec<&Formula>) {
        let mut shown = Vec::new();
        let mut hidden = Vec::new();
        for ((formula, weight), sel) in self.instantiation.iter().zip(&self.selected) {
            let certain_fact = formula.as_literal().is_some() && weight == Weight::ONE;
            if full || !(sel.is_zero() || certain_fact) {
                shown.push(formula);
            } else {
                hidden.push(formula);
            }
        }
        (shown, hidden)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct MapResult {
    pub semantics: String,
    pub strength: f64,
    /// ⊆-maximal optimal states in canonical order.
    pub maps: Vec<MapEntry>,
    pub ground_size: usize,
}

impl MapResult {
    pub fn instantiations(&self) -> impl Iterator<Item = &Instantiation> {
        self.maps.iter().map(|m| &m.instantiation)
    }

    /// Same optimal strength (within tolerance) and the same set of states.
    pub fn same_as(&self, other: &MapResult) -> bool {
        (self.strength - other.strength).abs() <= TOLERANCE
            && self.maps.len() == other.maps.len()
            && self.instantiations().zip(other.instantiations()).all(|(a, b)| a == b)
    }
}

/// Complementary-pair masks and closure machinery for one instantiation.
struct Compiled<'a> {
    mi: &'a Instantiation,
    n: usize,
    weights: Vec<Weight>,
    is_rule: u64,
    fact_bit: Vec<u64>,
    /// Per formula: `(premise mask, conclusion bit)` of a live rule.
    rule: Vec<Option<(u64, u64)>>,
    bad_pairs: [Vec<u64>; 4],
}

fn kind_slot(kind: RelationKind) -> usize {
    match kind {
        RelationKind::PCon => 0,
        RelationKind::TCon => 1,
        RelationKind::PInc => 2,
        RelationKind::TInc => 3,
    }
}

impl<'a> Compiled<'a> {
    fn new(mi: &'a Instantiation) -> Result<Self> {
        let n = mi.len();
        if n > MAX_PRUNED_SIZE {
            return Err(Error::BoundExceeded { size: n, bound: MAX_PRUNED_SIZE });
        }
        // only facts and rule conclusions can ever be derived
        let mut universe: Vec<&Literal> = Vec::new();
        let mut index: HashMap<&Literal, usize> = HashMap::new();
        for f in mi.formulae() {
            let lit = match f {
                Formula::Literal(l) => l,
                Formula::Rule(r) => &r.conclusion,
            };
            index.entry(lit).or_insert_with(|| {
                universe.push(lit);
                universe.len() - 1
            });
        }
        let bit = |l: &Literal| index.get(l).map(|&i| 1u64 << i);

        let mut is_rule = 0u64;
        let mut fact_bit = Vec::with_capacity(n);
        let mut rule = Vec::with_capacity(n);
        for (i, f) in mi.formulae().enumerate() {
            match f {
                Formula::Literal(l) => {
                    fact_bit.push(bit(l).expect("interned"));
                    rule.push(None);
                }
                Formula::Rule(r) => {
                    is_rule |= 1 << i;
                    fact_bit.push(0);
                    let premises: Option<u64> = r.premises.iter().map(bit).try_fold(0u64, |acc, b| b.map(|b| acc | b));
                    rule.push(premises.map(|p| (p, bit(&r.conclusion).expect("interned"))));
                }
            }
        }

        let mut bad_pairs: [Vec<u64>; 4] = Default::default();
        for (i, pos) in universe.iter().enumerate().filter(|(_, l)| l.positive) {
            for (j, neg) in universe.iter().enumerate().filter(|(_, l)| !l.positive && l.is_complement_of(pos)) {
                let (pi, ni) = (literal_interval(pos, mi.timeline())?, literal_interval(neg, mi.timeline())?);
                for kind in RelationKind::ALL {
                    if kind.pair_violates(&pi, &ni) {
                        bad_pairs[kind_slot(kind)].push(1 << i | 1 << j);
                    }
                }
            }
        }
        Ok(Compiled { mi, n, weights: mi.weights(), is_rule, fact_bit, rule, bad_pairs })
    }

    fn full(&self) -> u64 {
        if self.n == 64 {
            u64::MAX
        } else {
            (1u64 << self.n) - 1
        }
    }

    /// Literal closure of the formulae in `mask`, starting from `seed`
    /// (which must be contained in that closure).
    fn closure_from(&self, mask: u64, seed: u64) -> u64 {
        let mut lits = seed;
        let mut m = mask & !self.is_rule;
        while m != 0 {
            lits |= self.fact_bit[m.trailing_zeros() as usize];
            m &= m - 1;
        }
        loop {
            let before = lits;
            let mut r = mask & self.is_rule;
            while r != 0 {
                let i = r.trailing_zeros() as usize;
                r &= r - 1;
                if let Some((prem, concl)) = self.rule[i] {
                    if prem & lits == prem {
                        lits |= concl;
                    }
                }
            }
            if lits == before {
                return lits;
            }
        }
    }

    fn closure(&self, mask: u64) -> u64 {
        self.closure_from(mask, 0)
    }

    fn delta(&self, kind: RelationKind, closure: u64) -> bool {
        self.bad_pairs[kind_slot(kind)].iter().all(|p| closure & p != *p)
    }

    /// Selected weights of `mask` in canonical order. `closure_without`
    /// yields the closure of the mask with one formula removed.
    fn select(&self, selector: Selector, mask: u64, closure_without: impl Fn(u64) -> u64) -> Vec<Weight> {
        let mut out = Vec::with_capacity(mask.count_ones() as usize);
        let mut m = mask;
        while m != 0 {
            let i = m.trailing_zeros() as usize;
            m &= m - 1;
            let w = self.weights[i];
            out.push(match selector {
                Selector::Id => w,
                Selector::Thresh(alpha) => w.saturating_sub(alpha),
                Selector::Rule => match self.rule[i] {
                    _ if self.is_rule >> i & 1 == 0 => w,
                    Some((prem, _)) if closure_without(mask & !(1 << i)) & prem == prem => w,
                    _ => Weight::ZERO,
                },
            });
        }
        out
    }

    fn strength_with(&self, sem: &ParametricSemantics, mask: u64, closure: u64, closure_of: impl Fn(u64) -> u64) -> f64 {
        if !self.delta(sem.validator.0, closure) {
            return 0.0;
        }
        sem.aggregate(&to_f64s(&self.select(sem.selector, mask, closure_of)))
    }

    fn entry(&self, mask: u64, selected: Vec<Weight>) -> MapEntry {
        MapEntry { instantiation: self.mi.select_mask(mask), selected }
    }
}

/// Keeps the candidates not strictly contained in another candidate.
fn maximal(mut candidates: Vec<u64>) -> Vec<u64> {
    candidates.sort_by_key(|m| std::cmp::Reverse(m.count_ones()));
    let mut kept: Vec<u64> = Vec::new();
    for c in candidates {
        if !kept.iter().any(|k| c & k == c) {
            kept.push(c);
        }
    }
    kept
}

fn finish(sem: &dyn Semantics, mi: &Instantiation, best: f64, mut maps: Vec<MapEntry>) -> MapResult {
    maps.sort_by(|a, b| a.instantiation.cmp(&b.instantiation));
    MapResult { semantics: sem.name(), strength: best, maps, ground_size: mi.len() }
}

fn entry_generic(sem: &dyn Semantics, inst: Instantiation) -> MapEntry {
    let selected = sem.select(&inst);
    MapEntry { instantiation: inst, selected }
}

/// Scores every subset of `mi`.
pub fn map_exhaustive_over(mi: &Instantiation, sem: &dyn Semantics, bound: usize) -> Result<MapResult> {
    let n = mi.len();
    if n > bound || n >= 63 {
        return Err(Error::BoundExceeded { size: n, bound: bound.min(62) });
    }
    let count = 1u64 << n;
    let mut scores = Vec::with_capacity(count as usize);
    match sem.as_shipped() {
        Some(shipped) => {
            let c = Compiled::new(mi)?;
            let mut table = vec![0u64; count as usize];
            for mask in 1..count {
                let high = 63 - mask.leading_zeros();
                table[mask as usize] = c.closure_from(mask, table[(mask & !(1 << high)) as usize]);
            }
            for mask in 0..count {
                scores.push(c.strength_with(shipped, mask, table[mask as usize], |m| table[m as usize]));
            }
            let best = scores.iter().copied().fold(0.0, f64::max);
            let candidates = (0..count).filter(|m| scores[*m as usize] >= best - TOLERANCE).collect();
            let maps = maximal(candidates).into_iter().map(|m| c.entry(m, c.select(shipped.selector, m, |x| table[x as usize]))).collect();
            Ok(finish(sem, mi, best, maps))
        }
        None => {
            for mask in 0..count {
                scores.push(sem.strength(&mi.select_mask(mask)));
            }
            let best = scores.iter().copied().fold(0.0, f64::max);
            let candidates = (0..count).filter(|m| scores[*m as usize] >= best - TOLERANCE).collect();
            let maps = maximal(candidates).into_iter().map(|m| entry_generic(sem, mi.select_mask(m))).collect();
            Ok(finish(sem, mi, best, maps))
        }
    }
}

pub fn map_exhaustive(m: &Tmln, sem: &dyn Semantics) -> Result<MapResult> {
    map_exhaustive_over(&ground(m)?.instantiation, sem, exhaustive_bound())
}

struct Search<'c, 'a> {
    c: &'c Compiled<'a>,
    sem: &'c ParametricSemantics,
    best: f64,
    candidates: Vec<(u64, f64)>,
}

impl Search<'_, '_> {
    fn score(&self, mask: u64) -> f64 {
        let closure = self.c.closure(mask);
        self.c.strength_with(self.sem, mask, closure, |m| self.c.closure(m))
    }

    /// Aggregate of everything still reachable, ignoring validation. Sound
    /// because shipped selectors never lower a slot when formulae are added
    /// and shipped aggregators are monotone in added coordinates.
    fn optimistic(&self, mask: u64) -> f64 {
        let selected = self.c.select(self.sem.selector, mask, |m| self.c.closure(m));
        self.sem.aggregate(&to_f64s(&selected))
    }

    fn visit(&mut self, i: usize, included: u64) {
        let remaining = if i >= 64 { 0 } else { self.c.full() & !((1u64 << i) - 1) };
        if self.optimistic(included | remaining) < self.best - TOLERANCE {
            return;
        }
        if i == self.c.n {
            let s = self.score(included);
            if s > self.best {
                self.best = s;
            }
            if s >= self.best - TOLERANCE {
                self.candidates.push((included, s));
            }
            return;
        }
        let with = included | 1 << i;
        // a violated relation persists in every superset: the whole subtree scores 0
        if self.c.delta(self.sem.validator.0, self.c.closure(with)) {
            self.visit(i + 1, with);
        }
        self.visit(i + 1, included);
    }
}

/// Branch and bound over inclusion decisions. Only shipped components are
/// accepted, since the bound relies on their monotonicity.
pub fn map_pruned_over(mi: &Instantiation, sem: &dyn Semantics) -> Result<MapResult> {
    let shipped = sem.as_shipped().ok_or_else(|| Error::UnsupportedComponent(sem.name()))?;
    let c = Compiled::new(mi)?;
    let mut search = Search { c: &c, sem: shipped, best: 0.0, candidates: Vec::new() };
    search.visit(0, 0);
    let best = search.best;
    if best <= TOLERANCE {
        // every state ties; the whole instantiation is the only maximal one
        let full = c.full();
        let selected = c.select(shipped.selector, full, |m| c.closure(m));
        return Ok(finish(sem, mi, best, vec![c.entry(full, selected)]));
    }
    let candidates = search.candidates.iter().filter(|(_, s)| *s >= best - TOLERANCE).map(|(m, _)| *m).collect();
    let maps = maximal(candidates).into_iter().map(|m| c.entry(m, c.select(shipped.selector, m, |x| c.closure(x)))).collect();
    Ok(finish(sem, mi, best, maps))
}

pub fn map_pruned(m: &Tmln, sem: &dyn Semantics) -> Result<MapResult> {
    map_pruned_over(&ground(m)?.instantiation, sem)
}

/// Validation and strength of one state under shipped components, through
/// the compiled representation.
pub fn strength_compiled(inst: &Instantiation, sem: &ParametricSemantics) -> Result<f64> {
    let c = Compiled::new(inst)?;
    let full = c.full();
    Ok(c.strength_with(sem, full, c.closure(full), |m| c.closure(m)))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PatternTerm {
    Any,
    Exact(Term),
}

/// `[!|+]Pred(arg, ..., lower, upper)` where each argument may be `*`.
/// Without a sign both polarities match.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pattern {
    pub predicate: String,
    pub polarity: Option<bool>,
    pub args: Vec<PatternTerm>,
}

impl Pattern {
    pub fn matches(&self, lit: &Literal) -> bool {
        if lit.predicate != self.predicate || self.polarity.is_some_and(|p| p != lit.positive) {
            return false;
        }
        let terms: Vec<&Term> = lit.terms().collect();
        terms.len() == self.args.len()
            && terms.iter().zip(&self.args).all(|(t, p)| match p {
                PatternTerm::Any => true,
                PatternTerm::Exact(e) => *t == e,
            })
    }
}

impl FromStr for Pattern {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let bad = |why: &str| Error::MalformedPattern(format!("`{text}`: {why}"));
        let s = text.trim();
        let (polarity, s) = match s.chars().next() {
            Some('!') => (Some(false), &s[1..]),
            Some('+') => (Some(true), &s[1..]),
            _ => (None, s),
        };
        let open = s.find('(').ok_or_else(|| bad("expected `(`"))?;
        let body = s[open + 1..].strip_suffix(')').ok_or_else(|| bad("expected a closing `)`"))?;
        let predicate = s[..open].trim();
        if predicate.is_empty() || !predicate.chars().all(|c| c.is_alphanumeric() || c == '_') {
            return Err(bad("expected a predicate name"));
        }
        let mut args = Vec::new();
        for raw in body.split(',') {
            let a = raw.trim();
            let term = match a {
                "" => return Err(bad("empty argument")),
                "*" => PatternTerm::Any,
                "TMIN" => PatternTerm::Exact(Term::Time(TimePoint::Min)),
                "TMAX" => PatternTerm::Exact(Term::Time(TimePoint::Max)),
                _ if a.parse::<i64>().is_ok() => PatternTerm::Exact(Term::at(a.parse().expect("checked"))),
                _ if a.chars().all(|c| c.is_alphanumeric() || c == '_' || c == '\'') => PatternTerm::Exact(Term::constant(a)),
                _ => return Err(bad("unexpected argument")),
            };
            args.push(term);
        }
        if args.len() < 3 {
            return Err(bad("a pattern lists at least one argument and both time bounds"));
        }
        Ok(Pattern { predicate: predicate.to_string(), polarity, args })
    }
}

impl fmt::Display for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.polarity {
            Some(true) => f.write_str("+")?,
            Some(false) => f.write_str("!")?,
            None => {}
        }
        let args: Vec<String> = self
            .args
            .iter()
            .map(|a| match a {
                PatternTerm::Any => "*".to_string(),
                PatternTerm::Exact(t) => t.to_string(),
            })
            .collect();
        write!(f, "{}({})", self.predicate, args.join(","))
    }
}

/// Derived literals of `inst` matching `pattern`, each with its support
/// weight inside `inst`.
pub fn conclusions(inst: &Instantiation, pattern: &Pattern) -> Result<Vec<(Literal, Weight)>> {
    let derivations = Derivations::of_instantiation(inst);
    derive_closure(inst.formulae()).into_iter().filter(|l| pattern.matches(l)).map(|l| derivations.weight_of(&l).map(|w| (l, w))).collect()
}
