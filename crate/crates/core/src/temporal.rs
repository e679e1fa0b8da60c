//! Discrete timeline, interval extraction and the four temporal
//! (in)consistency relations between complementary derived literals.
//!
//! Intervals are closed integer ranges handled by bound arithmetic only.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::kernel::{derive_closure, Formula, Literal, Term, TimePoint};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Timeline {
    lower: i64,
    upper: i64,
}

impl Timeline {
    pub fn new(lower: i64, upper: i64) -> Result<Self> {
        if lower > upper {
            return Err(Error::InvalidTimeline(lower, upper));
        }
        Ok(Timeline { lower, upper })
    }

    pub fn lower(&self) -> i64 {
        self.lower
    }

    pub fn upper(&self) -> i64 {
        self.upper
    }

    pub fn resolve(&self, t: TimePoint) -> i64 {
        match t {
            TimePoint::Min => self.lower,
            TimePoint::At(v) => v,
            TimePoint::Max => self.upper,
        }
    }

    pub fn contains(&self, t: TimePoint) -> bool {
        let v = self.resolve(t);
        self.lower <= v && v <= self.upper
    }

    pub fn full(&self) -> TimeInterval {
        TimeInterval { start: self.lower, end: self.upper }
    }
}

/// The closed range `{t : start <= t <= end}`; never empty.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TimeInterval {
    start: i64,
    end: i64,
}

impl TimeInterval {
    pub fn new(start: i64, end: i64) -> Result<Self> {
        if start > end {
            return Err(Error::InvertedBounds(start, end));
        }
        Ok(TimeInterval { start, end })
    }

    pub fn start(&self) -> i64 {
        self.start
    }

    pub fn end(&self) -> i64 {
        self.end
    }

    pub fn len(&self) -> u64 {
        self.end.abs_diff(self.start) + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn intersects(&self, other: &TimeInterval) -> bool {
        self.start.max(other.start) <= self.end.min(other.end)
    }

    /// `self \ other` is non-empty.
    pub fn sticks_out_of(&self, other: &TimeInterval) -> bool {
        self.start < other.start || self.end > other.end
    }
}

impl fmt::Display for TimeInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.start, self.end)
    }
}

/// Time points between two bounds, both of which must lie on the timeline.
pub fn ti(t1: TimePoint, t2: TimePoint, timeline: &Timeline) -> Result<TimeInterval> {
    for t in [t1, t2] {
        if !timeline.contains(t) {
            return Err(Error::OutOfTimeline { point: timeline.resolve(t), lower: timeline.lower, upper: timeline.upper });
        }
    }
    TimeInterval::new(timeline.resolve(t1), timeline.resolve(t2))
}

/// Interval of a ground literal.
pub fn literal_interval(lit: &Literal, timeline: &Timeline) -> Result<TimeInterval> {
    match (lit.lower.as_time(), lit.upper.as_time()) {
        (Some(a), Some(b)) => ti(a, b, timeline),
        _ => Err(Error::NonGround(lit.to_string())),
    }
}

/// Rewrites every bound pair, inside facts and rules alike, to `(TMIN, TMAX)`.
pub fn tau<'a, I>(formulae: I) -> BTreeSet<Formula>
where
    I: IntoIterator<Item = &'a Formula>,
{
    formulae.into_iter().map(tau_formula).collect()
}

pub fn tau_formula(formula: &Formula) -> Formula {
    formula.map_literals(|l| l.clone().with_bounds(Term::Time(TimePoint::Min), Term::Time(TimePoint::Max)))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum RelationKind {
    PCon,
    TCon,
    PInc,
    TInc,
}

impl RelationKind {
    pub const ALL: [RelationKind; 4] = [RelationKind::TCon, RelationKind::PInc, RelationKind::PCon, RelationKind::TInc];

    pub fn name(self) -> &'static str {
        match self {
            RelationKind::PCon => "pCon",
            RelationKind::TCon => "tCon",
            RelationKind::PInc => "pInc",
            RelationKind::TInc => "tInc",
        }
    }

    /// Whether one complementary pair with these intervals breaks the
    /// universal condition (consistency kinds) or witnesses the existential
    /// one (inconsistency kinds).
    pub fn pair_violates(self, positive: &TimeInterval, negative: &TimeInterval) -> bool {
        match self {
            RelationKind::PCon => !(positive.sticks_out_of(negative) && negative.sticks_out_of(positive)),
            RelationKind::TCon | RelationKind::PInc => positive.intersects(negative),
            RelationKind::TInc => positive == negative,
        }
    }

    /// Consistency kinds hold when no pair violates; inconsistency kinds
    /// hold when some pair witnesses.
    pub fn holds_given_witness(self, witness: bool) -> bool {
        match self {
            RelationKind::PCon | RelationKind::TCon => !witness,
            RelationKind::PInc | RelationKind::TInc => witness,
        }
    }
}

impl fmt::Display for RelationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for RelationKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "pCon" | "pcon" => Ok(RelationKind::PCon),
            "tCon" | "tcon" => Ok(RelationKind::TCon),
            "pInc" | "pinc" => Ok(RelationKind::PInc),
            "tInc" | "tinc" => Ok(RelationKind::TInc),
            other => Err(Error::InvalidParameter(format!("unknown relation `{other}`"))),
        }
    }
}

/// A relation kind, optionally negated.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Relation {
    pub kind: RelationKind,
    pub negated: bool,
}

impl Relation {
    pub fn of(kind: RelationKind) -> Self {
        Relation { kind, negated: false }
    }

    pub fn not(kind: RelationKind) -> Self {
        Relation { kind, negated: true }
    }
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.negated {
            f.write_str("not ")?;
        }
        self.kind.fmt(f)
    }
}

/// Complementary pairs `(P(..), !P(..))` of a literal set with their intervals.
pub fn complementary_pairs<'a>(
    literals: &'a BTreeSet<Literal>,
    timeline: &Timeline,
) -> Result<Vec<(&'a Literal, &'a Literal, TimeInterval, TimeInterval)>> {
    let mut pairs = Vec::new();
    for pos in literals.iter().filter(|l| l.positive) {
        for neg in literals.iter().filter(|l| !l.positive && l.is_complement_of(pos)) {
            pairs.push((pos, neg, literal_interval(pos, timeline)?, literal_interval(neg, timeline)?));
        }
    }
    Ok(pairs)
}

/// Evaluates a relation on the literal closure of `formulae`.
pub fn relation_holds<'a, I>(relation: Relation, formulae: I, timeline: &Timeline) -> Result<bool>
where
    I: IntoIterator<Item = &'a Formula>,
{
    let formulae: Vec<&Formula> = formulae.into_iter().collect();
    if let Some(f) = formulae.iter().find(|f| !f.is_ground()) {
        return Err(Error::NonGround(f.to_string()));
    }
    let closure = derive_closure(formulae);
    let witness = complementary_pairs(&closure, timeline)?.iter().any(|(_, _, p, n)| relation.kind.pair_violates(p, n));
    Ok(relation.kind.holds_given_witness(witness) != relation.negated)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::Literal;

    fn tl() -> Timeline {
        Timeline::new(1300, 1400).unwrap()
    }

    fn holds(kind: RelationKind, fs: &[Formula]) -> bool {
        relation_holds(Relation::of(kind), fs, &tl()).unwrap()
    }

    #[test]
    fn ti_ranges() {
        let i = ti(TimePoint::At(1340), TimePoint::At(1354), &tl()).unwrap();
        assert_eq!(i.len(), 15);
        assert_eq!(ti(TimePoint::Min, TimePoint::Max, &tl()).unwrap(), tl().full());
        assert_eq!(ti(TimePoint::At(1360), TimePoint::At(1355), &tl()), Err(Error::InvertedBounds(1360, 1355)));
        assert!(matches!(ti(TimePoint::At(1200), TimePoint::At(1355), &tl()), Err(Error::OutOfTimeline { .. })));
    }

    #[test]
    fn tau_homogenises_and_is_idempotent() {
        let fs = [Formula::from(Literal::fact("Studied", &["NO", "CoN"], 1340, 1354))];
        let once = tau(&fs);
        assert_eq!(once.iter().next().unwrap().to_string(), "Studied(NO,CoN,TMIN,TMAX)");
        assert_eq!(tau(&once), once);
    }

    #[test]
    fn overlapping_pair() {
        let fs = [
            Formula::from(Literal::fact("Studied", &["NO", "CoN"], 1340, 1354)),
            Formula::from(Literal::fact("Studied", &["NO", "CoN"], 1353, 1370).negated()),
        ];
        assert!(holds(RelationKind::PInc, &fs));
        assert!(!holds(RelationKind::TCon, &fs));
        assert!(holds(RelationKind::PCon, &fs));
        assert!(!holds(RelationKind::TInc, &fs));
        assert!(!relation_holds(Relation::not(RelationKind::PInc), &fs, &tl()).unwrap());
    }

    #[test]
    fn equal_intervals() {
        let fs = [Formula::from(Literal::fact("P", &["A"], 1301, 1302)), Formula::from(Literal::fact("P", &["A"], 1301, 1302).negated())];
        assert!(holds(RelationKind::TInc, &fs));
        assert!(!holds(RelationKind::PCon, &fs));
    }

    #[test]
    fn no_complementary_pair_is_vacuous() {
        let fs = [Formula::from(Literal::fact("P", &["A"], 1301, 1302)), Formula::from(Literal::fact("P", &["B"], 1301, 1302).negated())];
        assert!(holds(RelationKind::TCon, &fs));
        assert!(holds(RelationKind::PCon, &fs));
        assert!(!holds(RelationKind::PInc, &fs));
        assert!(!holds(RelationKind::TInc, &fs));
    }

    #[test]
    fn non_ground_input_is_rejected() {
        let lit = Literal::new("P", vec![Term::var("x", "S")], Term::at(1300), Term::at(1301));
        assert!(matches!(relation_holds(Relation::of(RelationKind::TCon), &[Formula::from(lit)], &tl()), Err(Error::NonGround(_))));
    }
}
