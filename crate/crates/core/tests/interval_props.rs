use fpgraph::interval::{IntervalPredicate, IntervalRule, IntervalRuleMap};
use fpgraph::metric::ClosedInterval;
use fpgraph::rational::rat;
use proptest::prelude::*;

fn iv(a: i64, b: i64) -> ClosedInterval {
    ClosedInterval::new(rat(a.min(b), 1), rat(a.max(b), 1)).unwrap()
}

fn rule_map() -> impl Strategy<Value = IntervalRuleMap> {
    let pred = prop_oneof![
        (0i64..=10, 0i64..=10).prop_map(|(a, b)| IntervalPredicate::SubsetOf(iv(a, b))),
        (0i64..=10, 0i64..=10).prop_map(|(a, b)| IntervalPredicate::Equals(iv(a, b))),
    ];
    let out = (0i64..=10, 0i64..=10).prop_map(|(a, b)| iv(a, b));
    (prop::collection::vec((pred, out.clone()), 0..5), out).prop_map(|(rules, last)| {
        let mut rules: Vec<IntervalRule> = rules
            .into_iter()
            .map(|(when, then)| IntervalRule { when, then })
            .collect();
        rules.push(IntervalRule {
            when: IntervalPredicate::Otherwise,
            then: last,
        });
        IntervalRuleMap::new(rules).unwrap()
    })
}

/// Every interval with quarter-unit endpoints in [0, 12].
fn quarter_grid() -> Vec<ClosedInterval> {
    let pts: Vec<_> = (0..=48).map(|k| rat(k, 4)).collect();
    let mut out = Vec::new();
    for (i, a) in pts.iter().enumerate() {
        for b in &pts[i..] {
            out.push(ClosedInterval::new(a.clone(), b.clone()).unwrap());
        }
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn range_is_exactly_what_the_grid_reaches(m in rule_map()) {
        let range = m.range();
        let mut hit: Vec<ClosedInterval> = quarter_grid().iter().map(|u| m.apply(u)).collect();
        hit.sort();
        hit.dedup();
        prop_assert_eq!(range, hit);
    }

    #[test]
    fn first_matching_rule_wins(m in rule_map(), a in 0i64..=12, b in 0i64..=12) {
        let u = iv(a, b);
        let first = m.rules().iter().find(|r| r.when.matches(&u)).unwrap();
        prop_assert_eq!(m.apply(&u), first.then.clone());
    }

    #[test]
    fn predicates_round_trip_through_text(m in rule_map()) {
        for r in m.rules() {
            let back: IntervalPredicate = r.when.to_string().parse().unwrap();
            prop_assert_eq!(&back, &r.when);
        }
    }
}
