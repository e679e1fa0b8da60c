//! Engine against the brute-force references on seeded random inputs.

use proptest::prelude::*;

use tmln::gen::{self, KbShape};
use tmln::inference::{map_exhaustive_over, map_pruned_over};
use tmln::kbformat::{parse, serialize};
use tmln::kernel::derive_closure;
use tmln::network::{ground, instantiate, Derivations};
use tmln::oracle;
use tmln::report::{self, GroundReport, MapReport};
use tmln::semantics::ParametricSemantics;
use tmln::temporal::{relation_holds, Relation, RelationKind};

fn small_kb(seed: u64) -> tmln::Tmln {
    gen::random_kb(&mut gen::rng(seed), &KbShape::default())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn grounding_matches_reference(seed in any::<u64>()) {
        let m = small_kb(seed);
        let engine = ground(&m).unwrap().instantiation;
        prop_assert_eq!(&engine, &oracle::brute_ground(&m).unwrap());
        // Grounding a ground instantiation adds nothing.
        prop_assert_eq!(instantiate(&engine).unwrap(), engine);
    }

    #[test]
    fn closure_and_weights_match_reference(seed in any::<u64>()) {
        let inst = gen::random_instantiation(&mut gen::rng(seed), 10);
        let fs: Vec<_> = inst.formulae().cloned().collect();
        let closure = derive_closure(&fs);
        prop_assert_eq!(&closure, &oracle::brute_closure(&fs).unwrap());
        let d = Derivations::of_instantiation(&inst);
        for lit in &closure {
            prop_assert_eq!(d.weight_of(lit).unwrap(), oracle::brute_weight_in(lit, &inst).unwrap());
        }
    }

    #[test]
    fn closure_is_monotone_and_idempotent(seed in any::<u64>(), cut in 0usize..10) {
        let (_, fs) = gen::random_formula_set(&mut gen::rng(seed), 10);
        let all = derive_closure(&fs);
        let part = derive_closure(&fs[..cut.min(fs.len())]);
        prop_assert!(part.is_subset(&all));
        let lits: Vec<_> = all.iter().cloned().map(Into::into).collect();
        prop_assert_eq!(derive_closure(&lits), all);
    }

    #[test]
    fn relations_match_point_sets(seed in any::<u64>()) {
        let (tl, fs) = gen::random_formula_set(&mut gen::rng(seed), 10);
        let closure = derive_closure(&fs);
        for kind in RelationKind::ALL {
            let engine = relation_holds(Relation::of(kind), &fs, &tl).unwrap();
            prop_assert_eq!(engine, oracle::brute_relation(kind, &closure, &tl), "{}", kind);
            prop_assert_ne!(engine, relation_holds(Relation::not(kind), &fs, &tl).unwrap());
        }
    }

    #[test]
    fn map_matches_reference(seed in any::<u64>(), which in 0usize..36) {
        let m = small_kb(seed);
        let mi = ground(&m).unwrap().instantiation;
        let sem = &ParametricSemantics::all_combinations()[which];
        let brute = oracle::brute_map(&mi, sem).unwrap();
        let exhaustive = map_exhaustive_over(&mi, sem, 20).unwrap();
        let pruned = map_pruned_over(&mi, sem).unwrap();
        prop_assert!(brute.agrees_with(&exhaustive), "{} on\n{}", sem.config_line(), serialize(&m));
        prop_assert!(exhaustive.same_as(&pruned), "{} on\n{}", sem.config_line(), serialize(&m));
    }

    #[test]
    fn kb_text_round_trips(seed in any::<u64>()) {
        let m = small_kb(seed);
        let text = serialize(&m);
        let back = parse(&text).map_err(|d| TestCaseError::fail(format!("{d:?}\n{text}")))?;
        prop_assert_eq!(&back, &m);
        prop_assert_eq!(serialize(&back), text);
    }

    #[test]
    fn reports_round_trip_through_json(seed in any::<u64>(), which in 0usize..36) {
        let m = small_kb(seed);
        let g = ground(&m).unwrap();
        let r = report::ground_report(&g);
        let back: GroundReport = serde_json::from_str(&serde_json::to_string(&r).unwrap()).unwrap();
        prop_assert_eq!(back, r);

        let sem = &ParametricSemantics::all_combinations()[which];
        let result = map_pruned_over(&g.instantiation, sem).unwrap();
        let r = report::map_report(sem, &result, None, true).unwrap();
        let back: MapReport = serde_json::from_str(&serde_json::to_string(&r).unwrap()).unwrap();
        prop_assert_eq!(back, r);
    }
}
