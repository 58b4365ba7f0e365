mod common;

use common::{hausdorff_oracle, metric_space};
use fpgraph::metric::{hausdorff_interval, AxiomViolation, ClosedInterval, FiniteMetricSpace};
use fpgraph::rational::{rat, Rational};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn closure_spaces_validate(x in metric_space(6)) {
        prop_assert!(x.validate().is_empty());
    }

    #[test]
    fn hausdorff_is_a_metric_on_the_hyperspace(x in metric_space(4)) {
        let sets = x.hyperspace();
        for a in &sets {
            for b in &sets {
                let ab = x.hausdorff(a, b).unwrap();
                prop_assert_eq!(&ab, &x.hausdorff(b, a).unwrap());
                prop_assert_eq!(ab.is_zero(), a == b);
                for c in &sets {
                    let via = x.hausdorff(a, c).unwrap() + x.hausdorff(c, b).unwrap();
                    prop_assert!(ab <= via);
                }
            }
        }
    }

    #[test]
    fn hausdorff_matches_sup_inf_oracle(x in metric_space(6)) {
        let sets = x.hyperspace();
        for a in &sets {
            for b in &sets {
                prop_assert_eq!(x.hausdorff(a, b).unwrap(), hausdorff_oracle(&x, a, b));
            }
        }
    }

    #[test]
    fn singletons_recover_the_base_metric(x in metric_space(6)) {
        for i in 0..x.len() {
            for j in 0..x.len() {
                let h = x.hausdorff(&x.singleton(i), &x.singleton(j)).unwrap();
                prop_assert_eq!(&h, x.d(i, j));
            }
        }
    }

    #[test]
    fn scaling_scales_hausdorff(x in metric_space(4), p in 1i64..9, q in 1i64..9) {
        let c = rat(p, q);
        let y = x.scaled(&c);
        for a in &x.hyperspace() {
            for b in &x.hyperspace() {
                prop_assert_eq!(
                    y.hausdorff(a, b).unwrap(),
                    c.clone() * x.hausdorff(a, b).unwrap()
                );
            }
        }
    }

    #[test]
    fn perturbed_entry_is_caught(x in metric_space(5), i in 0usize..5, j in 0usize..5) {
        let n = x.len();
        let (i, j) = (i % n, j % n);
        prop_assume!(i != j);
        let mut rows = x.distances().to_vec();
        rows[i][j] = rows[i][j].clone() + rat(1, 7);
        let labels: Vec<&str> = x.labels().iter().map(String::as_str).collect();
        let bad = FiniteMetricSpace::from_rows(&labels, rows).unwrap();
        let found = bad.validate();
        let (lo, hi) = (x.label(i.min(j)).to_string(), x.label(i.max(j)).to_string());
        let flagged = found.iter().any(|v| matches!(
            v,
            AxiomViolation::Symmetry { from, to, .. } if *from == lo && *to == hi
        ));
        prop_assert!(flagged);
    }

    #[test]
    fn interval_formula_matches_grid_oracle(
        a in (0i64..20, 0i64..20), b in (0i64..20, 0i64..20)
    ) {
        let iv = |(x, y): (i64, i64)| ClosedInterval::new(rat(x.min(y), 1), rat(x.max(y), 1)).unwrap();
        let (a, b) = (iv(a), iv(b));
        // Sup over a half-unit grid of each interval, exact gap to the other.
        let gap = |x: &Rational, to: &ClosedInterval| {
            (to.lo() - x).max(Rational::zero()).max(x - to.hi())
        };
        let grid = |s: &ClosedInterval| {
            let steps = ((s.hi() - s.lo()) * rat(2, 1)).to_f64() as i64;
            (0..=steps).map(|k| s.lo() + &rat(k, 2)).collect::<Vec<_>>()
        };
        let one_way = |from: &ClosedInterval, to: &ClosedInterval| {
            grid(from).iter().map(|x| gap(x, to)).max().unwrap()
        };
        let oracle = one_way(&a, &b).max(one_way(&b, &a));
        prop_assert_eq!(hausdorff_interval(&a, &b), oracle);
    }
}

#[test]
fn literal_reading_reports_first_symmetry_violation_at_1_3() {
    let x = fpgraph::corpus::asymmetric_four_point_space();
    let v = x.validate();
    assert_eq!(
        v.first().unwrap().to_string(),
        "symmetry: d(1,3) = 1/4 but d(3,1) = 4/5"
    );
}
