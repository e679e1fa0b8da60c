//! Seeded random knowledge bases, formula sets and instantiations.

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::kernel::{Formula, Literal, Rule, Signature, Term, TimePoint};
use crate::network::{ground, Instantiation, Tmln};
use crate::temporal::Timeline;
use crate::weight::Weight;

pub use rand::SeedableRng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

const SORT: &str = "Entity";
const CONSTANTS: [&str; 3] = ["A", "B", "C"];
const UNARY: [&str; 4] = ["P", "Q", "R", "S"];
const BINARY: &str = "Link";

/// Size limits for a random knowledge base.
#[derive(Clone, Debug)]
pub struct KbShape {
    pub constants: usize,
    pub predicates: usize,
    pub max_facts: usize,
    pub max_rules: usize,
    pub horizon: i64,
    /// Upper bound on the size of the maximal instantiation.
    pub max_ground: usize,
    /// Upper bound on facts plus rules.
    pub max_items: usize,
    /// Rules get weight 1.
    pub certain_rules: bool,
}

impl Default for KbShape {
    fn default() -> Self {
        KbShape { constants: 2, predicates: 3, max_facts: 6, max_rules: 3, horizon: 8, max_ground: 12, max_items: 10, certain_rules: false }
    }
}

pub fn weight(rng: &mut ChaCha8Rng) -> Weight {
    match rng.gen_range(0..10) {
        0 => Weight::ZERO,
        1 => Weight::ONE,
        2..=6 => Weight::tenths(rng.gen_range(1..10)),
        _ => Weight::from_nanos(rng.gen_range(0..=1000u32) * 1_000_000).expect("in range"),
    }
}

fn signature(shape: &KbShape) -> Signature {
    let mut sig = Signature::new();
    sig.add_sort(SORT);
    for c in &CONSTANTS[..shape.constants.clamp(1, CONSTANTS.len())] {
        sig.add_constant(*c, SORT);
    }
    for p in &UNARY[..shape.predicates.clamp(1, UNARY.len())] {
        sig.add_predicate(*p, vec![SORT.into()]);
    }
    sig.add_predicate(BINARY, vec![SORT.into(), SORT.into()]);
    sig
}

fn bounds(rng: &mut ChaCha8Rng, tl: &Timeline) -> (Term, Term) {
    let a = rng.gen_range(tl.lower()..=tl.upper());
    let b = rng.gen_range(a..=tl.upper());
    let lower = if a == tl.lower() && rng.gen_bool(0.5) { Term::Time(TimePoint::Min) } else { Term::at(a) };
    let upper = if b == tl.upper() && rng.gen_bool(0.5) { Term::Time(TimePoint::Max) } else { Term::at(b) };
    (lower, upper)
}

fn predicates(sig: &Signature) -> Vec<(String, usize)> {
    sig.predicates().map(|(p, args)| (p.to_string(), args.len())).collect()
}

/// A ground literal over the signature.
pub fn ground_literal(rng: &mut ChaCha8Rng, sig: &Signature, tl: &Timeline) -> Literal {
    let preds = predicates(sig);
    let consts: Vec<&str> = sig.constants().map(|(c, _)| c).collect();
    let (pred, arity) = preds.choose(rng).expect("non-empty signature").clone();
    let args = (0..arity).map(|_| Term::constant(*consts.choose(rng).expect("constants"))).collect();
    let (lower, upper) = bounds(rng, tl);
    Literal::new(pred, args, lower, upper).with_polarity(rng.gen_bool(0.65))
}

fn rule(rng: &mut ChaCha8Rng, sig: &Signature, tl: &Timeline) -> Rule {
    let preds = predicates(sig);
    let vars = [Term::var("x", SORT), Term::var("y", SORT)];
    let n = rng.gen_range(1..=2);
    let mut premises = Vec::new();
    for i in 0..n {
        let (pred, arity) = preds.choose(rng).expect("predicates").clone();
        let args = if arity == 1 { vec![vars[i % 2].clone()] } else { vec![vars[0].clone(), vars[1].clone()] };
        let (lo, hi) = (Term::time_var(format!("t{}", 2 * i + 1)), Term::time_var(format!("t{}", 2 * i + 2)));
        premises.push(Literal::new(pred, args, lo, hi).with_polarity(rng.gen_bool(0.8)));
    }
    let bound: Vec<Term> = vars.iter().filter(|v| premises.iter().any(|p| p.args.contains(v))).cloned().collect();
    let (pred, arity) = preds.choose(rng).expect("predicates").clone();
    let args = (0..arity).map(|_| bound.choose(rng).expect("premise variable").clone()).collect();
    let src = &premises[rng.gen_range(0..premises.len())];
    let (lower, upper) = match rng.gen_range(0..5) {
        0 | 1 => (src.lower.clone(), src.upper.clone()),
        2 => (Term::Time(TimePoint::Min), Term::Time(TimePoint::Max)),
        3 => (src.lower.clone(), Term::Time(TimePoint::Max)),
        _ => {
            let (a, b) = bounds(rng, tl);
            (a, b)
        }
    };
    Rule::new(premises, Literal::new(pred, args, lower, upper).with_polarity(rng.gen_bool(0.5)))
}

fn attempt(rng: &mut ChaCha8Rng, shape: &KbShape) -> Tmln {
    let tl = Timeline::new(0, shape.horizon.max(1)).expect("valid horizon");
    let sig = signature(shape);
    let mut m = Tmln::new(sig.clone(), tl);
    let facts = rng.gen_range(0..=shape.max_facts);
    for _ in 0..facts {
        let lit = ground_literal(rng, &sig, &tl);
        let w = weight(rng);
        let _ = m.add_fact(lit, w);
    }
    let rules = rng.gen_range(0..=shape.max_rules);
    for i in 0..rules {
        let r = rule(rng, &sig, &tl);
        let w = if shape.certain_rules { Weight::ONE } else { weight(rng) };
        m.add_rule(format!("R{}", i + 1), r, w).expect("generated rules are well formed");
    }
    m
}

/// A knowledge base whose maximal instantiation and item count respect the
/// shape. Facts whose relations would grow the grounding are retried.
pub fn random_kb(rng: &mut ChaCha8Rng, shape: &KbShape) -> Tmln {
    loop {
        let m = attempt(rng, shape);
        if m.len() > shape.max_items {
            continue;
        }
        if let Ok(g) = ground(&m) {
            if g.instantiation.len() <= shape.max_ground {
                return m;
            }
        }
    }
}

/// A set of ground formulae (mostly literals, some ground rules) on a
/// small vocabulary, so that complementary pairs are common.
pub fn random_formula_set(rng: &mut ChaCha8Rng, max: usize) -> (Timeline, Vec<Formula>) {
    let tl = Timeline::new(0, rng.gen_range(2..=8)).expect("valid");
    let shape = KbShape { constants: 2, predicates: 2, ..KbShape::default() };
    let sig = signature(&shape);
    let n = rng.gen_range(0..=max);
    let mut out: Vec<Formula> = Vec::new();
    for _ in 0..n {
        let lit = ground_literal(rng, &sig, &tl);
        if rng.gen_bool(0.2) && !out.is_empty() {
            let premises: Vec<Literal> = out.iter().filter_map(|f| f.as_literal().cloned()).take(1).collect();
            if !premises.is_empty() {
                out.push(Formula::Rule(Rule::new(premises, lit)));
                continue;
            }
        }
        out.push(Formula::Literal(lit));
    }
    (tl, out)
}

/// A random sub-state of the maximal instantiation of a random KB.
pub fn random_instantiation(rng: &mut ChaCha8Rng, max: usize) -> Instantiation {
    let shape = KbShape { max_ground: max, ..KbShape::default() };
    let m = random_kb(rng, &shape);
    let mi = ground(&m).expect("generated KBs ground").instantiation;
    let keep = rng.gen_range(0.3..=1.0);
    let mut out = Instantiation::new(*mi.timeline());
    for (f, w) in mi.iter() {
        if rng.gen_bool(keep) {
            out.insert(f.clone(), w).expect("same timeline");
        }
    }
    out
}
