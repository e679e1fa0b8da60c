//! Acceptance run: one PASS/FAIL line per criterion. Exits non-zero when
//! any criterion fails.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use tmln::check::{self, SuiteResult};
use tmln::gen::{self, KbShape};
use tmln::inference::Pattern;
use tmln::kbformat::{parse, parse_document, serialize};
use tmln::kernel::{derive_closure, Formula, Literal, Rule, Term, TimePoint};
use tmln::network::{ground, Derivations};
use tmln::oracle;
use tmln::report;
use tmln::semantics::ParametricSemantics;
use tmln::Tmln;

const ORESME: &str = include_str!("../data/oresme.tmln");
const SWEEP: &str = include_str!("../data/oresme.sweep");
const REFERENCE: &str = include_str!("fixtures/oresme_sweep_reference.txt");

const SEED: u64 = 2024;
const GROUND_LIMIT: Duration = Duration::from_secs(1);
const SWEEP_LIMIT: Duration = Duration::from_secs(10);
const LATTICE_LIMIT: Duration = Duration::from_secs(30);
const PRINCIPLE_LIMIT: Duration = Duration::from_secs(300);
const RELATION_TRIALS: usize = 1000;
const AUDIT_SAMPLES: usize = 1000;
const PRINCIPLE_KBS: usize = 200;
const PRINCIPLE_MAX_GROUND: usize = 12;
const ORACLE_KBS: usize = 500;
const ORACLE_MAX_GROUND: usize = 14;
const CLASSICAL_KBS: usize = 200;
const ROUND_TRIP_KBS: usize = 200;

struct Outcome {
    passed: bool,
    detail: String,
}

fn outcome(passed: bool, detail: impl Into<String>) -> Outcome {
    Outcome { passed, detail: detail.into() }
}

fn suites_detail(suites: &[SuiteResult]) -> (bool, String) {
    let passed = suites.iter().all(SuiteResult::passed);
    let mut parts: Vec<String> =
        suites.iter().map(|s| format!("{}: {} checked, {} vacuous, {} failed", s.name, s.checked, s.vacuous, s.failures)).collect();
    if let Some(ce) = suites.iter().find_map(|s| s.counterexample.as_ref()) {
        parts.push(format!("first counterexample: {ce}"));
    }
    (passed, parts.join("; "))
}

fn oresme() -> Tmln {
    parse(ORESME).expect("bundled KB parses")
}

fn peasant() -> Literal {
    Literal::new("PeasantFamily", vec![Term::constant("NO")], Term::Time(TimePoint::Min), Term::Time(TimePoint::Max))
}

fn grounding() -> Outcome {
    let start = Instant::now();
    let g = ground(&oresme()).expect("grounds");
    let elapsed = start.elapsed();
    let [person, philosopher, period] = [("Person", vec!["NO"]), ("Philosopher", vec!["NO"]), ("LivePeriod", vec!["NO", "MA"])]
        .map(|(p, args)| Literal::fact(p, &args, 1320, 1382));
    let studied = |a, b| Literal::fact("Studied", &["NO", "CoN"], a, b);
    let expected = [
        ("GR11", Rule::new(vec![person.clone(), period.clone(), studied(1340, 1354)], peasant()), "0.4"),
        ("GR12", Rule::new(vec![person, period.clone(), studied(1355, 1360)], peasant()), "0.5"),
        ("GR2", Rule::new(vec![philosopher, period], peasant().negated()), "0.8"),
    ];
    let rules: Vec<(String, String)> = g.ground_rules().map(|(r, w)| (r.to_string(), w.to_string())).collect();
    let mut ok = rules.len() == 3 && elapsed < GROUND_LIMIT;
    let mut shown = Vec::new();
    for (label, rule, w) in expected {
        let got = g.instantiation.weight(&Formula::Rule(rule)).map(|w| w.to_string());
        ok &= got.as_deref() == Some(w);
        shown.push(format!("{label} {}", got.unwrap_or_else(|| "missing".into())));
    }
    outcome(ok, format!("{}; {} ground rules; {:?}", shown.join(", "), rules.len(), elapsed))
}

fn sweep() -> Outcome {
    let start = Instant::now();
    let m = oresme();
    let mi = ground(&m).expect("grounds").instantiation;
    let query: Pattern = "PeasantFamily(*,*,*)".parse().expect("pattern");
    let configs = report::parse_sweep(SWEEP).expect("sweep file");
    let rows: Vec<_> = configs
        .iter()
        .map(|sem| {
            let r = tmln::inference::map_exhaustive_over(&mi, sem, 20).expect("in bound");
            report::map_report(sem, &r, Some(&query), false).expect("report")
        })
        .collect();
    let text = report::render_sweep(&rows);
    let elapsed = start.elapsed();
    let got: Vec<&str> = text.split("\n\n").collect();
    let want: Vec<&str> = REFERENCE.split("\n\n").collect();
    let differing: Vec<String> =
        got.iter().zip(&want).filter(|(g, w)| g != w).map(|(g, _)| g.lines().next().unwrap_or("").to_string()).collect();
    let ok = text == REFERENCE && elapsed < SWEEP_LIMIT;
    outcome(
        ok,
        format!(
            "{}/{} rows identical to the reference table ({:?}); differing: [{}]",
            want.len() - differing.len(),
            want.len(),
            elapsed,
            differing.join("; ")
        ),
    )
}

fn consequences() -> Outcome {
    let (a, b) = (Literal::fact("P", &["a"], 1, 5), Literal::fact("P", &["b"], 1, 5));
    let formulae = [Formula::from(a.clone()), Formula::from(b.clone())];
    let expected: BTreeSet<Literal> = [a, b].into();
    let engine = derive_closure(&formulae);
    let brute = oracle::brute_closure(&formulae).expect("small");
    let empty = derive_closure(&[] as &[Formula]).is_empty();
    outcome(
        engine == expected && brute == expected && empty,
        format!("closure {} literals, oracle agrees: {}", engine.len(), brute == engine),
    )
}

fn lattice() -> Outcome {
    let start = Instant::now();
    let suites = check::relation_suites(SEED, RELATION_TRIALS);
    let elapsed = start.elapsed();
    let (ok, detail) = suites_detail(&suites);
    let enough = suites.iter().all(|s| s.trials >= RELATION_TRIALS);
    outcome(ok && enough && elapsed < LATTICE_LIMIT, format!("{detail}; {elapsed:?}"))
}

fn well_behaved() -> Outcome {
    let samples = check::audit_samples(SEED, AUDIT_SAMPLES);
    let audits = check::audit_suites(SEED, &samples);
    let mutants = check::mutant_suites(SEED, &samples);
    let audits_ok = audits.iter().all(SuiteResult::passed);
    let mutants_ok = mutants.iter().all(SuiteResult::passed);
    let vacuous: usize = audits.iter().map(|s| s.vacuous).sum();
    let checked: usize = audits.iter().map(|s| s.checked).sum();
    let mut detail = format!(
        "{} combinations x {} samples: {} condition checks, {} vacuous; mutants detected {}/{}",
        audits.len(),
        samples.len(),
        checked,
        vacuous,
        mutants.iter().filter(|s| s.passed()).count(),
        mutants.len()
    );
    if let Some(s) = audits.iter().chain(&mutants).find(|s| !s.passed()) {
        detail.push_str(&format!("; {}: {}", s.name, s.counterexample.as_deref().unwrap_or("")));
    }
    outcome(audits_ok && mutants_ok && samples.len() >= AUDIT_SAMPLES, detail)
}

fn principles(kbs: &[Tmln]) -> Outcome {
    let start = Instant::now();
    let suites = check::principle_suites(kbs, SEED);
    let elapsed = start.elapsed();
    let (ok, detail) = suites_detail(&suites);
    let sizes_ok = kbs.iter().all(|m| ground(m).map(|g| g.instantiation.len() <= PRINCIPLE_MAX_GROUND).unwrap_or(false));
    outcome(
        ok && sizes_ok && kbs.len() >= PRINCIPLE_KBS && elapsed < PRINCIPLE_LIMIT,
        format!("{} KBs x 36 combinations; {detail}; {elapsed:?}", kbs.len()),
    )
}

fn ordering(kbs: &[Tmln]) -> Outcome {
    let suites = check::ordering_suites(kbs, SEED);
    let (ok, detail) = suites_detail(&suites);
    outcome(ok, detail)
}

fn oracle_equivalence() -> Outcome {
    let mut rng = gen::rng(SEED);
    let shape = KbShape { max_facts: 7, max_rules: 3, max_items: 10, max_ground: ORACLE_MAX_GROUND, ..KbShape::default() };
    let combos = ParametricSemantics::all_combinations();
    let (mut maps, mut weights, mut divergences) = (0, 0, 0);
    let mut first = None;
    let mut largest = 0;
    for i in 0..ORACLE_KBS {
        let m = gen::random_kb(&mut rng, &shape);
        let mi = ground(&m).expect("grounds").instantiation;
        largest = largest.max(mi.len());
        let sem = &combos[i % combos.len()];
        let reports = oracle::compare(&m, std::slice::from_ref(sem), &serialize(&m)).expect("within oracle bounds");
        for r in &reports {
            if r.operation.starts_with("map") {
                maps += 1;
            } else if r.operation.starts_with("weight") {
                weights += 1;
            }
            if !r.matched {
                divergences += 1;
                first.get_or_insert_with(|| format!("{}: oracle {} engine {}", r.operation, r.oracle, r.engine));
            }
        }
        // weights of every derivable literal against the whole KB, as well
        // as inside the maximal instantiation
        let d = Derivations::of_instantiation(&mi);
        if mi.len() <= oracle::WEIGHT_LIMIT {
            for lit in derive_closure(mi.formulae()) {
                weights += 1;
                let (e, o) = (d.weight_of(&lit).ok(), oracle::brute_weight_in(&lit, &mi).ok());
                if e != o {
                    divergences += 1;
                    first.get_or_insert_with(|| format!("weight of {lit} in MI: oracle {o:?} engine {e:?}"));
                }
            }
        }
    }
    let mut detail =
        format!("{ORACLE_KBS} KBs (largest |MI| {largest}): {maps} MAP and {weights} weight comparisons, {divergences} divergences");
    if let Some(f) = first {
        detail.push_str(&format!("; {f}"));
    }
    outcome(divergences == 0, detail)
}

fn classical() -> Outcome {
    let s = check::classical_suite(SEED, CLASSICAL_KBS);
    let (ok, detail) = suites_detail(std::slice::from_ref(&s));
    outcome(ok && s.checked > 0, detail)
}

fn spans_valid(text: &str) -> bool {
    let outcome = parse_document(text);
    let lines = text.split('\n').count();
    let spans_ok = outcome.diagnostics.iter().all(|d| {
        let s = &d.span;
        s.start <= s.end && s.end <= text.len() && s.line >= 1 && s.column >= 1 && s.line <= lines
    });
    let no_partial = outcome.tmln.is_none() || !outcome.diagnostics.iter().any(|d| d.is_error());
    spans_ok && no_partial
}

fn round_trip() -> Outcome {
    let mut rng = gen::rng(SEED);
    let shape = KbShape { max_facts: 8, max_rules: 4, max_items: 12, max_ground: 40, ..KbShape::default() };
    let mut kbs = vec![oresme()];
    kbs.extend((0..ROUND_TRIP_KBS).map(|_| gen::random_kb(&mut rng, &shape)));
    let mut failures = 0;
    let mut spans_checked = 0;
    let mut span_failures = 0;
    for m in &kbs {
        let text = serialize(m);
        match parse(&text) {
            Ok(back) if back == *m && serialize(&back) == text => {}
            _ => failures += 1,
        }
        // damaged copies: every diagnostic must point inside the document
        for _ in 0..3 {
            let mut bytes: Vec<char> = text.chars().collect();
            let at = rand::Rng::gen_range(&mut rng, 0..bytes.len().max(1));
            match rand::Rng::gen_range(&mut rng, 0..3) {
                0 if !bytes.is_empty() => {
                    bytes.remove(at);
                }
                1 => bytes.insert(at.min(bytes.len()), *[':', '(', '!', 'x', '9', '}', '\n'].get(at % 7).unwrap_or(&'?')),
                _ => bytes.truncate(at),
            }
            let damaged: String = bytes.into_iter().collect();
            spans_checked += 1;
            if !spans_valid(&damaged) {
                span_failures += 1;
            }
        }
    }
    outcome(
        failures == 0 && span_failures == 0,
        format!("{} KBs round-tripped, {failures} failures; {spans_checked} damaged documents, {span_failures} with bad spans", kbs.len()),
    )
}

type Criterion<'a> = Box<dyn Fn() -> Outcome + 'a>;

fn main() -> ExitCode {
    let kbs = check::random_kbs(SEED, PRINCIPLE_KBS, PRINCIPLE_MAX_GROUND);
    let criteria: Vec<(&str, Criterion)> = vec![
        ("1 grounding fidelity", Box::new(grounding)),
        ("2 worked example sweep", Box::new(sweep)),
        ("3 consequences of a conjunction", Box::new(consequences)),
        ("4 relation lattice", Box::new(lattice)),
        ("5 well-behavedness audits", Box::new(well_behaved)),
        ("6 principles", Box::new(|| principles(&kbs))),
        ("7 strength ordering", Box::new(|| ordering(&kbs))),
        ("8 oracle equivalence", Box::new(oracle_equivalence)),
        ("9 classical-consistency sanity", Box::new(classical)),
        ("10 format round-trip", Box::new(round_trip)),
    ];
    let mut failed = 0;
    for (name, run) in criteria {
        let start = Instant::now();
        let o = run();
        let status = if o.passed { "PASS" } else { "FAIL" };
        if !o.passed {
            failed += 1;
        }
        println!("{status} criterion {name} ({:.2?}): {}", start.elapsed(), o.detail);
    }
    println!("acceptance: {failed} criteria failed");
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
