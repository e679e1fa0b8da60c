//! The bundled Nicole Oresme knowledge base, end to end.

use std::collections::BTreeMap;

use tmln::inference::{conclusions, map_exhaustive, map_pruned, Pattern};
use tmln::kbformat::{parse, serialize};
use tmln::kernel::{entails, Formula, Literal, Rule, Term, TimePoint};
use tmln::network::{ground, weight_of, Instantiation};
use tmln::semantics::{Aggregator, ParametricSemantics, Selector, Semantics};
use tmln::temporal::RelationKind;
use tmln::{Tmln, Weight};

const ORESME: &str = include_str!("../data/oresme.tmln");

fn kb() -> Tmln {
    parse(ORESME).expect("bundled KB parses")
}

fn fact(label: &str) -> Literal {
    match label {
        "F1" => Literal::fact("Person", &["NO"], 1320, 1382),
        "F2" => Literal::fact("Philosopher", &["NO"], 1320, 1382),
        "F3" => Literal::fact("LivePeriod", &["NO", "MA"], 1320, 1382),
        "F4" => Literal::fact("Studied", &["NO", "CoN"], 1340, 1354),
        "F5" => Literal::fact("Studied", &["NO", "CoN"], 1355, 1360),
        "F6" => Literal::fact("Studied", &["NO", "CoN"], 1353, 1370).negated(),
        other => panic!("no fact {other}"),
    }
}

fn peasant() -> Literal {
    Literal::new("PeasantFamily", vec![Term::constant("NO")], Term::Time(TimePoint::Min), Term::Time(TimePoint::Max))
}

fn formula(label: &str) -> Formula {
    match label {
        "GR11" => Rule::new(vec![fact("F1"), fact("F3"), fact("F4")], peasant()).into(),
        "GR12" => Rule::new(vec![fact("F1"), fact("F3"), fact("F5")], peasant()).into(),
        "GR2" => Rule::new(vec![fact("F2"), fact("F3")], peasant().negated()).into(),
        f => fact(f).into(),
    }
}

fn labels() -> BTreeMap<Formula, &'static str> {
    ["F1", "F2", "F3", "F4", "F5", "F6", "GR11", "GR12", "GR2"].into_iter().map(|l| (formula(l), l)).collect()
}

fn labels_order(label: &str) -> usize {
    ["F1", "F2", "F3", "F4", "F5", "F6", "GR11", "GR12", "GR2"].iter().position(|l| *l == label).unwrap()
}

fn label_set(inst: &Instantiation) -> Vec<&'static str> {
    let names = labels();
    inst.formulae().map(|f| names[f]).collect()
}

#[test]
fn structure_of_the_bundled_kb() {
    let m = kb();
    assert_eq!(m.signature().sort_count(), 2);
    assert_eq!(m.signature().constants().count(), 3);
    assert_eq!(m.signature().predicates().count(), 5);
    assert_eq!(m.fact_count(), 6);
    assert_eq!(m.rule_count(), 2);
    assert_eq!(m.tf().len(), 8);
    assert_eq!(parse(&serialize(&m)).unwrap(), m);
}

#[test]
fn grounding_adds_the_three_ground_rules() {
    let g = ground(&kb()).unwrap();
    let mi = &g.instantiation;
    assert_eq!(mi.len(), 9);
    for (label, w) in [("GR11", "0.4"), ("GR12", "0.5"), ("GR2", "0.8")] {
        assert_eq!(mi.weight(&formula(label)).map(|w| w.to_string()).as_deref(), Some(w), "{label}");
    }
    assert_eq!(g.label(&formula("GR2")).as_deref(), Some("R2"));
}

#[test]
fn closure_and_support_weights() {
    let m = kb();
    let gr = [formula("F1"), formula("F3"), formula("F4"), formula("GR11")];
    assert!(entails(&gr, &peasant()));
    assert!(!entails(&[] as &[Formula], &peasant()));
    assert_eq!(weight_of(&fact("F4"), &m).unwrap(), Weight::tenths(4));
    let small = Instantiation::from_items(
        *m.timeline(),
        ["F2", "F3", "GR2"].map(|l| (formula(l), if l == "GR2" { Weight::tenths(8) } else { Weight::ONE })),
    )
    .unwrap();
    assert_eq!(weight_of(&peasant().negated(), &small).unwrap(), Weight::tenths(8));
}

/// Best strength (sum aggregators only) and compact MAP displays, from an
/// independent brute-force enumeration of the 2^9 states.
/// Config line, strength (none when not pinned) and the MAPs as label sets.
type Row = (&'static str, Option<f64>, Vec<Vec<&'static str>>);

fn expected() -> Vec<Row> {
    vec![
        ("delta=tCon sigma=id theta=sum", Some(5.2), vec![vec!["F6", "GR11", "GR12", "GR2"]]),
        ("delta=pCon sigma=id theta=sum", Some(5.2), vec![vec!["F4", "F6", "GR12", "GR2"], vec!["F6", "GR11", "GR12", "GR2"]]),
        ("delta=tInc sigma=id theta=sum", Some(5.5), vec![vec!["F4", "F5", "F6", "GR11", "GR12"]]),
        ("delta=tCon sigma=id theta=sum_alpha:2", None, vec![vec!["F6", "GR11", "GR12", "GR2"]]),
        ("delta=pCon sigma=id theta=sum_alpha:2", None, vec![vec!["F4", "F6", "GR12", "GR2"], vec!["F6", "GR11", "GR12", "GR2"]]),
        ("delta=tInc sigma=id theta=sum_alpha:2", None, vec![vec!["F4", "F5", "F6", "GR2"], vec!["F5", "F6", "GR11", "GR2"]]),
        ("delta=tCon sigma=rule theta=sum", Some(5.0), vec![vec!["F4", "F5", "GR11", "GR12"]]),
        ("delta=pCon sigma=rule theta=sum", Some(5.0), vec![vec!["F4", "F5", "GR11", "GR12"]]),
        ("delta=tInc sigma=rule theta=sum", Some(5.5), vec![vec!["F4", "F5", "F6", "GR11", "GR12"]]),
        ("delta=tCon sigma=rule theta=sum_alpha:2", None, vec![vec!["F4", "F5", "GR2"]]),
        ("delta=pCon sigma=rule theta=sum_alpha:2", None, vec![vec!["F4", "F5", "GR2"]]),
        ("delta=tInc sigma=rule theta=sum_alpha:2", None, vec![vec!["F4", "F5", "F6", "GR2"]]),
    ]
}

#[test]
fn map_results_for_the_twelve_configurations() {
    let m = kb();
    let names = labels();
    for (config, strength, maps) in expected() {
        let sem = ParametricSemantics::parse_config(config).unwrap();
        let r = map_exhaustive(&m, &sem).unwrap();
        let mut shown: Vec<Vec<&str>> = r
            .maps
            .iter()
            .map(|e| {
                let mut l: Vec<&str> = e.shown(false).into_iter().map(|f| names[f]).collect();
                l.sort_by_key(|n| labels_order(n));
                l
            })
            .collect();
        shown.sort();
        assert_eq!(shown, maps, "{config}");
        if let Some(s) = strength {
            assert!((r.strength - s).abs() < 1e-9, "{config}: {}", r.strength);
        }
        assert!(map_pruned(&m, &sem).unwrap().same_as(&r), "{config}");
        for e in &r.maps {
            assert!((sem.strength(&e.instantiation) - r.strength).abs() < 1e-9);
            assert_eq!(label_set(&e.instantiation).len(), e.instantiation.len());
        }
    }
}

#[test]
fn conclusions_about_peasant_origins() {
    let m = kb();
    let query: Pattern = "PeasantFamily(*,*,*)".parse().unwrap();
    let row1 = map_exhaustive(&m, &ParametricSemantics::new(RelationKind::TCon, Selector::Id, Aggregator::Sum)).unwrap();
    let found = conclusions(&row1.maps[0].instantiation, &query).unwrap();
    assert_eq!(found, vec![(peasant().negated(), Weight::tenths(8))]);

    let inconsistent = map_exhaustive(&m, &ParametricSemantics::new(RelationKind::TInc, Selector::Id, Aggregator::Sum)).unwrap();
    let found = conclusions(&inconsistent.maps[0].instantiation, &query).unwrap();
    assert_eq!(found, vec![(peasant(), Weight::tenths(5))]);

    let none: Pattern = "Unknown(*,*,*)".parse().unwrap();
    assert!(conclusions(&inconsistent.maps[0].instantiation, &none).unwrap().is_empty());
}
