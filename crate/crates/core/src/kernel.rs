//! Signatures, terms, literals and rules of the temporal many-sorted fragment,
//! together with substitution and forward-chaining derivability.
//!
//! Only the fragment made of ground literals and Horn-shaped rules
//! `(l1 & ... & lk) => l` is supported. Derivability over that fragment is
//! the least fixpoint of rule firing, which is what [`derive_closure`]
//! computes. Negative literals are ordinary atoms carrying a polarity flag:
//! `{P, !P}` derives nothing beyond itself.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Name of the distinguished temporal sort.
pub const TIME_SORT: &str = "Time";

/// A point of the discrete timeline. `Min` and `Max` stand for the
/// configured timeline bounds.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum TimePoint {
    Min,
    At(i64),
    Max,
}

impl fmt::Display for TimePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TimePoint::Min => f.write_str("TMIN"),
            TimePoint::At(t) => write!(f, "{t}"),
            TimePoint::Max => f.write_str("TMAX"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Var {
    pub name: String,
    pub sort: String,
}

impl Var {
    pub fn new(name: impl Into<String>, sort: impl Into<String>) -> Self {
        Var { name: name.into(), sort: sort.into() }
    }

    pub fn temporal(name: impl Into<String>) -> Self {
        Var::new(name, TIME_SORT)
    }

    pub fn is_temporal(&self) -> bool {
        self.sort == TIME_SORT
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Term {
    Const(String),
    Time(TimePoint),
    Var(Var),
}

impl Term {
    pub fn constant(name: impl Into<String>) -> Self {
        Term::Const(name.into())
    }

    pub fn at(t: i64) -> Self {
        Term::Time(TimePoint::At(t))
    }

    pub fn var(name: impl Into<String>, sort: impl Into<String>) -> Self {
        Term::Var(Var::new(name, sort))
    }

    pub fn time_var(name: impl Into<String>) -> Self {
        Term::Var(Var::temporal(name))
    }

    pub fn is_ground(&self) -> bool {
        !matches!(self, Term::Var(_))
    }

    pub fn as_time(&self) -> Option<TimePoint> {
        match self {
            Term::Time(t) => Some(*t),
            _ => None,
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Const(c) => f.write_str(c),
            Term::Time(t) => t.fmt(f),
            Term::Var(v) => f.write_str(&v.name),
        }
    }
}

/// A signed temporal atom `[!]P(a1, ..., ak, lower, upper)`.
///
/// Field order doubles as the canonical ordering: predicate, arguments,
/// polarity, then the bound pair.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Literal {
    pub predicate: String,
    pub args: Vec<Term>,
    pub positive: bool,
    pub lower: Term,
    pub upper: Term,
}

impl Literal {
    pub fn new(predicate: impl Into<String>, args: Vec<Term>, lower: Term, upper: Term) -> Self {
        Literal { predicate: predicate.into(), args, positive: true, lower, upper }
    }

    /// Ground positive literal over constant arguments and integer bounds.
    pub fn fact(predicate: &str, args: &[&str], lower: i64, upper: i64) -> Self {
        Literal::new(predicate, args.iter().map(|a| Term::constant(*a)).collect(), Term::at(lower), Term::at(upper))
    }

    pub fn negated(mut self) -> Self {
        self.positive = !self.positive;
        self
    }

    pub fn with_polarity(mut self, positive: bool) -> Self {
        self.positive = positive;
        self
    }

    pub fn with_bounds(mut self, lower: Term, upper: Term) -> Self {
        self.lower = lower;
        self.upper = upper;
        self
    }

    pub fn is_ground(&self) -> bool {
        self.args.iter().all(Term::is_ground) && self.lower.is_ground() && self.upper.is_ground()
    }

    /// Effective arity, temporal bounds included.
    pub fn arity(&self) -> usize {
        self.args.len() + 2
    }

    pub fn terms(&self) -> impl Iterator<Item = &Term> {
        self.args.iter().chain([&self.lower, &self.upper])
    }

    /// True when both literals talk about the same atom with opposite signs,
    /// bounds aside.
    pub fn is_complement_of(&self, other: &Literal) -> bool {
        self.positive != other.positive && self.predicate == other.predicate && self.args == other.args
    }

    pub fn variables(&self) -> impl Iterator<Item = &Var> {
        self.terms().filter_map(|t| match t {
            Term::Var(v) => Some(v),
            _ => None,
        })
    }

    fn apply(&self, binding: &Binding) -> Literal {
        let subst = |t: &Term| match t {
            Term::Var(v) => binding.get(&v.name).cloned().unwrap_or_else(|| t.clone()),
            _ => t.clone(),
        };
        Literal {
            predicate: self.predicate.clone(),
            args: self.args.iter().map(subst).collect(),
            positive: self.positive,
            lower: subst(&self.lower),
            upper: subst(&self.upper),
        }
    }
}

impl fmt::Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if !self.positive {
            f.write_str("!")?;
        }
        write!(f, "{}(", self.predicate)?;
        for arg in &self.args {
            write!(f, "{arg},")?;
        }
        write!(f, "{},{})", self.lower, self.upper)
    }
}

/// `(p1 & ... & pk) => conclusion`, implicitly universally quantified over
/// its variables.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Rule {
    pub premises: Vec<Literal>,
    pub conclusion: Literal,
}

impl Rule {
    pub fn new(premises: Vec<Literal>, conclusion: Literal) -> Self {
        Rule { premises, conclusion }
    }

    pub fn variables(&self) -> BTreeSet<Var> {
        self.premises.iter().chain([&self.conclusion]).flat_map(|l| l.variables().cloned()).collect()
    }

    pub fn is_ground(&self) -> bool {
        self.premises.iter().all(Literal::is_ground) && self.conclusion.is_ground()
    }

    /// Substitution without coverage or sort checks.
    pub(crate) fn apply(&self, binding: &Binding) -> Rule {
        Rule { premises: self.premises.iter().map(|p| p.apply(binding)).collect(), conclusion: self.conclusion.apply(binding) }
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, p) in self.premises.iter().enumerate() {
            if i > 0 {
                f.write_str(" & ")?;
            }
            p.fmt(f)?;
        }
        write!(f, " => {}", self.conclusion)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Formula {
    Literal(Literal),
    Rule(Rule),
}

impl Formula {
    pub fn is_ground(&self) -> bool {
        match self {
            Formula::Literal(l) => l.is_ground(),
            Formula::Rule(r) => r.is_ground(),
        }
    }

    pub fn as_literal(&self) -> Option<&Literal> {
        match self {
            Formula::Literal(l) => Some(l),
            Formula::Rule(_) => None,
        }
    }

    pub fn as_rule(&self) -> Option<&Rule> {
        match self {
            Formula::Rule(r) => Some(r),
            Formula::Literal(_) => None,
        }
    }

    pub fn literals(&self) -> Box<dyn Iterator<Item = &Literal> + '_> {
        match self {
            Formula::Literal(l) => Box::new(std::iter::once(l)),
            Formula::Rule(r) => Box::new(r.premises.iter().chain([&r.conclusion])),
        }
    }

    pub fn map_literals(&self, f: impl Fn(&Literal) -> Literal) -> Formula {
        match self {
            Formula::Literal(l) => Formula::Literal(f(l)),
            Formula::Rule(r) => Formula::Rule(Rule { premises: r.premises.iter().map(&f).collect(), conclusion: f(&r.conclusion) }),
        }
    }
}

impl From<Literal> for Formula {
    fn from(l: Literal) -> Self {
        Formula::Literal(l)
    }
}

impl From<Rule> for Formula {
    fn from(r: Rule) -> Self {
        Formula::Rule(r)
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Formula::Literal(l) => l.fmt(f),
            Formula::Rule(r) => write!(f, "{{ {r} }}"),
        }
    }
}

/// Variable name to ground term.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Binding(BTreeMap<String, Term>);

impl Binding {
    pub fn new() -> Self {
        Binding::default()
    }

    pub fn with(mut self, var: &str, term: Term) -> Self {
        self.0.insert(var.to_string(), term);
        self
    }

    pub fn insert(&mut self, var: &str, term: Term) -> Option<Term> {
        self.0.insert(var.to_string(), term)
    }

    pub fn get(&self, var: &str) -> Option<&Term> {
        self.0.get(var)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&String, &Term)> {
        self.0.iter()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// Extends `binding` so that `pattern` instantiates to `ground`. On failure
/// the binding may hold partial assignments; callers work on a copy.
pub(crate) fn match_literal(pattern: &Literal, ground: &Literal, binding: &mut Binding) -> bool {
    if pattern.predicate != ground.predicate || pattern.positive != ground.positive || pattern.args.len() != ground.args.len() {
        return false;
    }
    pattern.terms().zip(ground.terms()).all(|(p, g)| match p {
        Term::Var(v) => match binding.get(&v.name) {
            Some(bound) => bound == g,
            None => {
                binding.insert(&v.name, g.clone());
                true
            }
        },
        _ => p == g,
    })
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Signature {
    sorts: BTreeSet<String>,
    constants: BTreeMap<String, String>,
    predicates: BTreeMap<String, Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SignatureViolation {
    ArityBelowThree { predicate: String },
    UnknownSort { symbol: String, sort: String },
    TemporalArgument { predicate: String },
    BadName { symbol: String, reason: &'static str },
}

impl fmt::Display for SignatureViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SignatureViolation::ArityBelowThree { predicate } => {
                write!(f, "{predicate}: arity < 3 (no non-temporal argument)")
            }
            SignatureViolation::UnknownSort { symbol, sort } => write!(f, "{symbol}: unknown sort `{sort}`"),
            SignatureViolation::TemporalArgument { predicate } => {
                write!(f, "{predicate}: the temporal sort is reserved for the two trailing bounds")
            }
            SignatureViolation::BadName { symbol, reason } => write!(f, "{symbol}: {reason}"),
        }
    }
}

impl Signature {
    pub fn new() -> Self {
        Signature::default()
    }

    /// Returns false if the sort already existed.
    pub fn add_sort(&mut self, name: impl Into<String>) -> bool {
        let name = name.into();
        name != TIME_SORT && self.sorts.insert(name)
    }

    pub fn add_constant(&mut self, name: impl Into<String>, sort: impl Into<String>) -> bool {
        let name = name.into();
        if self.constants.contains_key(&name) {
            return false;
        }
        self.constants.insert(name, sort.into());
        true
    }

    pub fn add_predicate(&mut self, name: impl Into<String>, arg_sorts: Vec<String>) -> bool {
        let name = name.into();
        if self.predicates.contains_key(&name) {
            return false;
        }
        self.predicates.insert(name, arg_sorts);
        true
    }

    /// Non-temporal sorts, in name order.
    pub fn sorts(&self) -> impl Iterator<Item = &str> {
        self.sorts.iter().map(String::as_str)
    }

    /// Number of sorts, the temporal sort included.
    pub fn sort_count(&self) -> usize {
        self.sorts.len() + 1
    }

    pub fn has_sort(&self, sort: &str) -> bool {
        sort == TIME_SORT || self.sorts.contains(sort)
    }

    pub fn constants(&self) -> impl Iterator<Item = (&str, &str)> {
        self.constants.iter().map(|(c, s)| (c.as_str(), s.as_str()))
    }

    pub fn constant_sort(&self, name: &str) -> Option<&str> {
        self.constants.get(name).map(String::as_str)
    }

    pub fn predicates(&self) -> impl Iterator<Item = (&str, &[String])> {
        self.predicates.iter().map(|(p, a)| (p.as_str(), a.as_slice()))
    }

    pub fn predicate_args(&self, name: &str) -> Option<&[String]> {
        self.predicates.get(name).map(Vec::as_slice)
    }

    pub fn effective_arity(&self, name: &str) -> Option<usize> {
        self.predicates.get(name).map(|a| a.len() + 2)
    }

    /// Checks a literal's shape and sorts. Variables are recorded in `var_sorts`
    /// so that a whole rule can be checked for consistent variable sorts.
    pub fn check_literal(&self, lit: &Literal, var_sorts: &mut BTreeMap<String, String>) -> Vec<String> {
        let mut problems = Vec::new();
        let Some(arg_sorts) = self.predicate_args(&lit.predicate) else {
            problems.push(format!("unknown predicate `{}`", lit.predicate));
            return problems;
        };
        if arg_sorts.len() != lit.args.len() {
            problems.push(format!("`{}` expects {} arguments, found {}", lit.predicate, arg_sorts.len() + 2, lit.args.len() + 2));
            return problems;
        }
        let expected = arg_sorts.iter().map(String::as_str).chain([TIME_SORT, TIME_SORT]);
        for (term, sort) in lit.terms().zip(expected) {
            match term {
                Term::Const(c) => match self.constant_sort(c) {
                    None => problems.push(format!("unknown constant `{c}`")),
                    Some(s) if s != sort => problems.push(format!("constant `{c}` has sort {s}, expected {sort}")),
                    _ => {}
                },
                Term::Time(_) if sort != TIME_SORT => problems.push(format!("time point `{term}` where sort {sort} is expected")),
                Term::Time(_) => {}
                Term::Var(v) => {
                    if v.sort != sort {
                        problems.push(format!("variable `{}` has sort {}, expected {sort}", v.name, v.sort));
                    }
                    match var_sorts.get(&v.name) {
                        Some(prev) if prev != sort => problems.push(format!("variable `{}` used with sorts {prev} and {sort}", v.name)),
                        Some(_) => {}
                        None => {
                            var_sorts.insert(v.name.clone(), sort.to_string());
                        }
                    }
                }
            }
        }
        problems
    }
}

fn starts_upper(s: &str) -> bool {
    s.chars().next().is_some_and(|c| c.is_ascii_uppercase())
}

/// Lists every violated signature constraint; empty means valid.
pub fn validate_signature(sig: &Signature) -> Vec<SignatureViolation> {
    let mut out = Vec::new();
    for sort in sig.sorts() {
        if !starts_upper(sort) {
            out.push(SignatureViolation::BadName { symbol: sort.to_string(), reason: "sort names start uppercase" });
        }
    }
    for (c, sort) in sig.constants() {
        if !starts_upper(c) || c == "TMIN" || c == "TMAX" {
            out.push(SignatureViolation::BadName { symbol: c.to_string(), reason: "constants start uppercase and may not be TMIN/TMAX" });
        }
        // Constants of the time sort are implicit; declaring one is an error.
        if sort == TIME_SORT || !sig.has_sort(sort) {
            out.push(SignatureViolation::UnknownSort { symbol: c.to_string(), sort: sort.to_string() });
        }
    }
    for (p, args) in sig.predicates() {
        if !starts_upper(p) {
            out.push(SignatureViolation::BadName { symbol: p.to_string(), reason: "predicate names start uppercase" });
        }
        if args.is_empty() {
            out.push(SignatureViolation::ArityBelowThree { predicate: p.to_string() });
        }
        for sort in args {
            if sort == TIME_SORT {
                out.push(SignatureViolation::TemporalArgument { predicate: p.to_string() });
            } else if !sig.has_sort(sort) {
                out.push(SignatureViolation::UnknownSort { symbol: p.to_string(), sort: sort.clone() });
            }
        }
    }
    out
}

/// Instantiates `rule` with `binding`, checking coverage and sorts.
pub fn substitute(rule: &Rule, binding: &Binding, sig: &Signature) -> Result<Rule> {
    for var in rule.variables() {
        let term = binding.get(&var.name).ok_or_else(|| Error::UncoveredVariable(var.name.clone()))?;
        let found = match term {
            Term::Const(c) => sig.constant_sort(c).unwrap_or("<undeclared>").to_string(),
            Term::Time(_) => TIME_SORT.to_string(),
            Term::Var(v) => return Err(Error::NonGround(format!("{} bound to variable {}", var.name, v.name))),
        };
        if found != var.sort {
            return Err(Error::SortMismatch { var: var.name.clone(), expected: var.sort.clone(), found });
        }
    }
    Ok(rule.apply(binding))
}

/// Least fixpoint of rule firing over ground formulae: every input literal,
/// plus the conclusion of every ground rule whose premises are all derived.
/// Non-ground formulae contribute nothing.
pub fn derive_closure<'a, I>(formulae: I) -> BTreeSet<Literal>
where
    I: IntoIterator<Item = &'a Formula>,
{
    let mut agenda: Vec<&Literal> = Vec::new();
    let mut remaining: Vec<(usize, &Literal)> = Vec::new();
    let mut waiting: HashMap<&Literal, Vec<usize>> = HashMap::new();
    for formula in formulae {
        if !formula.is_ground() {
            continue;
        }
        match formula {
            Formula::Literal(l) => agenda.push(l),
            Formula::Rule(r) => {
                let premises: BTreeSet<&Literal> = r.premises.iter().collect();
                let idx = remaining.len();
                remaining.push((premises.len(), &r.conclusion));
                if premises.is_empty() {
                    agenda.push(&r.conclusion);
                }
                for p in premises {
                    waiting.entry(p).or_default().push(idx);
                }
            }
        }
    }
    let mut derived: BTreeSet<Literal> = BTreeSet::new();
    while let Some(lit) = agenda.pop() {
        if derived.contains(lit) {
            continue;
        }
        derived.insert(lit.clone());
        if let Some(rules) = waiting.get(lit) {
            for &idx in rules {
                let (count, conclusion) = &mut remaining[idx];
                *count -= 1;
                if *count == 0 {
                    agenda.push(conclusion);
                }
            }
        }
    }
    derived
}

/// `formulae |- target` over the literal fragment.
pub fn entails<'a, I>(formulae: I, target: &Literal) -> bool
where
    I: IntoIterator<Item = &'a Formula>,
{
    derive_closure(formulae).contains(target)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn oresme_sig() -> Signature {
        let mut sig = Signature::new();
        sig.add_sort("Concept");
        for c in ["NO", "MA", "CoN"] {
            sig.add_constant(c, "Concept");
        }
        sig.add_predicate("Person", vec!["Concept".into()]);
        sig.add_predicate("LivePeriod", vec!["Concept".into(), "Concept".into()]);
        sig.add_predicate("Studied", vec!["Concept".into(), "Concept".into()]);
        sig.add_predicate("PeasantFamily", vec!["Concept".into()]);
        sig
    }

    fn r1() -> Rule {
        let x = || Term::var("x", "Concept");
        Rule::new(
            vec![
                Literal::new("Person", vec![x()], Term::time_var("t1"), Term::time_var("u1")),
                Literal::new("LivePeriod", vec![x(), Term::constant("MA")], Term::time_var("t2"), Term::time_var("u2")),
                Literal::new("Studied", vec![x(), Term::constant("CoN")], Term::time_var("t3"), Term::time_var("u3")),
            ],
            Literal::new("PeasantFamily", vec![x()], Term::Time(TimePoint::Min), Term::Time(TimePoint::Max)),
        )
    }

    #[test]
    fn signature_arity_and_sorts() {
        let mut sig = oresme_sig();
        assert!(validate_signature(&sig).is_empty());
        assert_eq!(sig.effective_arity("Person"), Some(3));
        sig.add_predicate("Bare", vec![]);
        sig.add_constant("Paris", "City");
        let violations = validate_signature(&sig);
        assert_eq!(violations.len(), 2);
        assert!(violations.iter().any(|v| v.to_string().contains("arity < 3")));
        assert!(violations.iter().any(|v| v.to_string().contains("unknown sort")));
    }

    #[test]
    fn substitute_grounds_r1() {
        let sig = oresme_sig();
        let b = Binding::new()
            .with("x", Term::constant("NO"))
            .with("t1", Term::at(1320))
            .with("u1", Term::at(1382))
            .with("t2", Term::at(1320))
            .with("u2", Term::at(1382))
            .with("t3", Term::at(1340))
            .with("u3", Term::at(1354));
        let gr = substitute(&r1(), &b, &sig).unwrap();
        assert!(gr.is_ground());
        assert_eq!(
            gr.to_string(),
            "Person(NO,1320,1382) & LivePeriod(NO,MA,1320,1382) & Studied(NO,CoN,1340,1354) => PeasantFamily(NO,TMIN,TMAX)"
        );
        // identity on ground rules
        assert_eq!(substitute(&gr, &Binding::new(), &sig).unwrap(), gr);
    }

    #[test]
    fn substitute_errors() {
        let sig = oresme_sig();
        let partial = Binding::new()
            .with("x", Term::constant("NO"))
            .with("t1", Term::at(1))
            .with("u1", Term::at(1))
            .with("t2", Term::at(1))
            .with("u2", Term::at(1))
            .with("t3", Term::at(1));
        assert_eq!(substitute(&r1(), &partial, &sig), Err(Error::UncoveredVariable("u3".into())));
        let wrong = partial.clone().with("u3", Term::constant("NO"));
        assert!(matches!(substitute(&r1(), &wrong, &sig), Err(Error::SortMismatch { .. })));
    }

    #[test]
    fn closure_of_conjunction_decomposes() {
        let a = Literal::fact("P", &["A"], 1, 2);
        let b = Literal::fact("P", &["B"], 1, 2);
        let fs = [Formula::from(a.clone()), Formula::from(b.clone())];
        assert_eq!(derive_closure(&fs), BTreeSet::from([a, b]));
        assert!(derive_closure(std::iter::empty::<&Formula>()).is_empty());
    }

    #[test]
    fn closure_fires_negative_conclusion() {
        let f2 = Literal::fact("Philosopher", &["NO"], 1320, 1382);
        let f3 = Literal::fact("LivePeriod", &["NO", "MA"], 1320, 1382);
        let npf =
            Literal::new("PeasantFamily", vec![Term::constant("NO")], Term::Time(TimePoint::Min), Term::Time(TimePoint::Max)).negated();
        let gr2 = Rule::new(vec![f2.clone(), f3.clone()], npf.clone());
        let fs = [Formula::from(f2), Formula::from(f3), Formula::from(gr2.clone())];
        assert!(derive_closure(&fs).contains(&npf));
        assert!(!entails(&fs[2..], &npf));
        assert!(!entails(std::iter::empty::<&Formula>(), &npf));
    }

    #[test]
    fn negative_premises_match_negative_literals() {
        let np = Literal::fact("P", &["A"], 1, 2).negated();
        let q = Literal::fact("Q", &["A"], 1, 2);
        let rule = Rule::new(vec![np.clone()], q.clone());
        assert!(entails(&[Formula::from(np), Formula::from(rule.clone())], &q));
        assert!(!entails(&[Formula::from(Literal::fact("P", &["A"], 1, 2)), Formula::from(rule)], &q));
    }

    fn small_formula(seed: (u8, u8, u8, u8)) -> Formula {
        let lit = |i: u8| Literal::fact(["P", "Q", "R"][(i % 3) as usize], &[["A", "B"][((i / 3) % 2) as usize]], 1, 2);
        if seed.0.is_multiple_of(2) {
            Formula::from(lit(seed.1))
        } else {
            Formula::from(Rule::new(vec![lit(seed.1), lit(seed.2)], lit(seed.3)))
        }
    }

    proptest! {
        #[test]
        fn closure_is_monotone_and_idempotent(
            base in proptest::collection::vec(any::<(u8, u8, u8, u8)>(), 0..8),
            extra in proptest::collection::vec(any::<(u8, u8, u8, u8)>(), 0..4),
        ) {
            let small: Vec<Formula> = base.into_iter().map(small_formula).collect();
            let mut large = small.clone();
            large.extend(extra.into_iter().map(small_formula));
            let c_small = derive_closure(&small);
            let c_large = derive_closure(&large);
            prop_assert!(c_small.is_subset(&c_large));
            let mut again: Vec<Formula> = small.clone();
            again.extend(c_small.iter().cloned().map(Formula::from));
            prop_assert_eq!(derive_closure(&again), c_small);
        }

        #[test]
        fn substitution_commutes_with_premises(x in 0usize..3, times in proptest::collection::vec(1300i64..1400, 6)) {
            let sig = oresme_sig();
            let consts = ["NO", "MA", "CoN"];
            let names = ["t1", "u1", "t2", "u2", "t3", "u3"];
            let mut b = Binding::new().with("x", Term::constant(consts[x]));
            for (n, t) in names.iter().zip(&times) {
                b.insert(n, Term::at(*t));
            }
            let rule = r1();
            let ground = substitute(&rule, &b, &sig).unwrap();
            let each: Vec<Literal> = rule.premises.iter().map(|p| p.apply(&b)).collect();
            prop_assert_eq!(ground.premises, each);
        }
    }
}
