mod common;

use common::{table, two_map_instance};
use fpgraph::maps::{SetMap, TableMap};
use fpgraph::solver::{
    enumerate_coincidence_points, enumerate_common_fixed_points, jungck_iterate, picard_iterate,
    Termination,
};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn jungck_with_identity_replays_picard((x, s, _) in two_map_instance(5), start in 1u32..32) {
        let s = table(&x, &s);
        let id = TableMap::identity(&x);
        let fam = x.hyperspace();
        let a0 = fam[(start as usize) % fam.len()];
        let budget = fam.len();
        let j = jungck_iterate(&s, &id, &fam, &a0, budget).unwrap();
        let p = picard_iterate(&s, &a0, budget).unwrap();
        prop_assert_eq!(j, p);
    }

    #[test]
    fn jungck_terminates_with_a_declared_outcome((x, s, t) in two_map_instance(5), start in 1u32..32) {
        let (s, t) = (table(&x, &s), table(&x, &t));
        let fam = x.hyperspace();
        let a0 = fam[(start as usize) % fam.len()];
        let limit = 1usize << x.len();
        let trace = jungck_iterate(&s, &t, &fam, &a0, limit).unwrap();
        prop_assert!(trace.steps.len() <= limit);
        prop_assert!(trace.links_hold());
        prop_assert_eq!(trace.steps[0].a, a0);
        let last = trace.steps.last().unwrap();
        match &trace.termination {
            Termination::CoincidenceFound(u) => {
                prop_assert_eq!(u, &last.a);
                prop_assert_eq!(s.apply(u), t.apply(u));
            }
            Termination::RangeViolation(v) => {
                prop_assert_eq!(v, &last.s_of_a);
                prop_assert!(fam.iter().all(|c| &t.apply(c) != v));
            }
            Termination::CycleDetected(period) => {
                let target = last.s_of_a;
                let next = fam.iter().copied().find(|c| t.apply(c) == target).unwrap();
                prop_assert_eq!(trace.steps[trace.steps.len() - period].a, next);
            }
            Termination::StepLimit => prop_assert!(false, "a finite family cannot exhaust the budget"),
        }
        for st in &trace.steps {
            prop_assert_eq!(st.s_of_a, s.apply(&st.a));
            prop_assert_eq!(st.t_of_a, t.apply(&st.a));
        }
    }

    #[test]
    fn enumeration_matches_brute_force((x, s, t) in two_map_instance(5)) {
        let (s, t) = (table(&x, &s), table(&x, &t));
        let fam = x.hyperspace();
        let cp = enumerate_coincidence_points(&s, &t, &fam);
        let brute: Vec<_> = fam.iter().copied().filter(|u| s.apply(u) == t.apply(u)).collect();
        prop_assert_eq!(cp, brute);
        let f = enumerate_common_fixed_points(&s, &t, &fam);
        for u in &fam {
            prop_assert_eq!(f.fix_s.contains(u), s.apply(u) == *u);
            prop_assert_eq!(f.fix_t.contains(u), t.apply(u) == *u);
            prop_assert_eq!(f.common.contains(u), s.apply(u) == *u && t.apply(u) == *u);
        }
    }

    #[test]
    fn step_budget_is_respected((x, s, t) in two_map_instance(4), budget in 1usize..4) {
        let (s, t) = (table(&x, &s), table(&x, &t));
        let fam = x.hyperspace();
        let trace = jungck_iterate(&s, &t, &fam, &fam[0], budget).unwrap();
        prop_assert!(trace.steps.len() <= budget + 1);
    }
}
