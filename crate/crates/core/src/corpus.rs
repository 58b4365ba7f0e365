//! Builders for the bundled instances in `corpus/`.
//!
//! Each shipped file is exactly the canonical serialization of one builder
//! here, which a golden test enforces.

use crate::certify::Psi2Params;
use crate::gauge::{ClassifyOptions, Formula, GaugeFunction, GaugePiece};
use crate::graph::DirectedGraph;
use crate::instance::{
    FiniteInstance, GaugeDocument, Instance, InstanceBody, InstanceOptions, IntervalInstance,
};
use crate::interval::{IntervalPredicate, IntervalRule, IntervalRuleMap, PointMapGraph};
use crate::maps::TableMap;
use crate::metric::{ClosedInterval, FiniteMetricSpace, PointSet};
use crate::rational::{rat, Rational};

const LABELS: [&str; 4] = ["1", "2", "3", "4"];

/// Four points; 1 and 2 sit at distance 1/4, every other distinct pair at
/// 4/5.
pub fn four_point_space() -> FiniteMetricSpace {
    FiniteMetricSpace::from_fn(&LABELS, |i, j| {
        if i == j {
            rat(0, 1)
        } else if i < 2 && j < 2 {
            rat(1, 4)
        } else {
            rat(4, 5)
        }
    })
    .expect("well-formed")
}

/// Reads "1/4 whenever the first point is 1 or 2" literally, which breaks
/// symmetry: d(1,3) = 1/4 but d(3,1) = 4/5.
pub fn asymmetric_four_point_space() -> FiniteMetricSpace {
    FiniteMetricSpace::from_fn(&LABELS, |i, j| {
        if i == j {
            rat(0, 1)
        } else if i < 2 {
            rat(1, 4)
        } else {
            rat(4, 5)
        }
    })
    .expect("well-formed")
}

/// `E = {(i, j) : i <= j}`.
pub fn order_graph() -> DirectedGraph {
    DirectedGraph::new(4, (0..4).flat_map(|i| (i..4).map(move |j| (i, j)))).expect("in range")
}

/// Loops plus an edge from point 1 to every other point.
pub fn star_graph() -> DirectedGraph {
    DirectedGraph::with_all_loops(4, (1..4).map(|j| (0, j))).expect("in range")
}

fn set(x: &FiniteMetricSpace, labels: &[&str]) -> PointSet {
    x.set(labels).expect("labels exist")
}

/// `½t²` on `[0, 1/2)`, `t/(t+1)` from 1/2 on.
pub fn quadratic_then_mobius_gauge() -> GaugeFunction {
    GaugeFunction::new(vec![
        GaugePiece::new(
            rat(0, 1),
            Some(rat(1, 2)),
            Formula::Quadratic { a: rat(1, 2) },
        ),
        GaugePiece::new(
            rat(1, 2),
            None,
            Formula::Mobius {
                a: rat(1, 1),
                b: rat(0, 1),
                c: rat(1, 1),
                d: rat(1, 1),
            },
        ),
    ])
    .expect("valid cover")
}

/// `t/8` on `[0, 1/4)`, `(t+1)/(t+2)` from 1/4 on.
pub fn eighth_then_mobius_gauge() -> GaugeFunction {
    GaugeFunction::new(vec![
        GaugePiece::new(rat(0, 1), Some(rat(1, 4)), Formula::Linear { a: rat(1, 8) }),
        GaugePiece::new(
            rat(1, 4),
            None,
            Formula::Mobius {
                a: rat(1, 1),
                b: rat(1, 1),
                c: rat(1, 1),
                d: rat(2, 1),
            },
        ),
    ])
    .expect("valid cover")
}

/// `¾t` on `[0, 1)`, `⅚t` from 1 on.
pub fn two_slope_gauge() -> GaugeFunction {
    GaugeFunction::new(vec![
        GaugePiece::new(rat(0, 1), Some(rat(1, 1)), Formula::Linear { a: rat(3, 4) }),
        GaugePiece::new(rat(1, 1), None, Formula::Linear { a: rat(5, 6) }),
    ])
    .expect("valid cover")
}

fn order_graph_maps(x: &FiniteMetricSpace) -> (TableMap, TableMap) {
    let low = set(x, &["1", "2"]);
    let s = TableMap::from_fn(x, |u| {
        if u.is_subset(&low) {
            set(x, &["1"])
        } else {
            low
        }
    });
    let mid = set(x, &["2", "3"]);
    let t = TableMap::from_fn(x, |u| {
        if *u == set(x, &["1"]) {
            *u
        } else if u.is_subset(&mid) {
            set(x, &["1", "2", "3"])
        } else {
            x.full_set()
        }
    });
    (s, t)
}

fn order_graph_instance(name: &str, space: FiniteMetricSpace) -> Instance {
    let (s, t) = order_graph_maps(&space);
    Instance {
        name: name.to_string(),
        body: InstanceBody::Finite(FiniteInstance {
            space,
            graph: order_graph(),
            loops_shorthand: true,
            s,
            t,
        }),
        gauge: quadratic_then_mobius_gauge(),
        params: None,
        options: InstanceOptions::default(),
    }
}

/// Order graph on four points with the max-type pair; `{1}` is the common
/// fixed point.
pub fn order_graph_pair() -> Instance {
    order_graph_instance("example_2_2", four_point_space())
}

/// The same instance over the asymmetric metric; a negative validator
/// fixture.
pub fn asymmetric_fixture() -> Instance {
    order_graph_instance("example_2_2_literal", asymmetric_four_point_space())
}

/// Star graph on four points.
pub fn star_graph_pair() -> Instance {
    let x = four_point_space();
    let one = set(&x, &["1"]);
    let s = TableMap::from_fn(&x, |u| if *u == one { one } else { set(&x, &["1", "2"]) });
    let t = TableMap::from_fn(&x, |u| if *u == one { one } else { x.full_set() });
    Instance {
        name: "example_2_3".to_string(),
        body: InstanceBody::Finite(FiniteInstance {
            space: x,
            graph: star_graph(),
            loops_shorthand: true,
            s,
            t,
        }),
        gauge: eighth_then_mobius_gauge(),
        params: None,
        options: InstanceOptions::default(),
    }
}

/// The star-graph gauge on its own.
pub fn star_graph_gauge() -> GaugeDocument {
    GaugeDocument {
        name: "example_2_3".to_string(),
        gauge: eighth_then_mobius_gauge(),
        classify: ClassifyOptions::default(),
    }
}

fn iv(lo: i64, hi: i64) -> ClosedInterval {
    ClosedInterval::new(rat(lo, 1), rat(hi, 1)).expect("ordered")
}

fn below_ten_rule(below: ClosedInterval, above: ClosedInterval) -> IntervalRuleMap {
    IntervalRuleMap::new(vec![
        IntervalRule {
            when: IntervalPredicate::SubsetOf(iv(0, 10)),
            then: below,
        },
        IntervalRule {
            when: IntervalPredicate::Otherwise,
            then: above,
        },
    ])
    .expect("ends in a catch-all")
}

/// Half-line intervals, the graph of `x ↦ 10` on `[0,10]` and `x ↦ 20`
/// beyond, with the weighted-sum pair.
pub fn half_line_pair() -> Instance {
    let graph = PointMapGraph::new(vec![
        ("[0,10]".parse().expect("literal"), rat(10, 1)),
        ("(10,inf)".parse().expect("literal"), rat(20, 1)),
    ])
    .expect("partition");
    Instance {
        name: "example_2_7".to_string(),
        body: InstanceBody::Interval(IntervalInstance {
            probes: vec![iv(0, 10), iv(10, 20), iv(5, 25), iv(0, 5), iv(11, 12)],
            graph,
            s: below_ten_rule(iv(0, 10), iv(10, 20)),
            t: below_ten_rule(iv(0, 10), iv(5, 25)),
        }),
        gauge: two_slope_gauge(),
        params: Some(half_line_params()),
        options: InstanceOptions::default(),
    }
}

pub fn half_line_params() -> Psi2Params {
    let z = Rational::zero;
    Psi2Params::new(rat(5, 6), z(), rat(1, 6), z(), z()).expect("valid weights")
}

/// `(file name, builder)` for every shipped instance.
pub fn instances() -> Vec<(&'static str, Instance)> {
    vec![
        ("example_2_2.instance", order_graph_pair()),
        ("example_2_3.instance", star_graph_pair()),
        ("example_2_7.instance", half_line_pair()),
        ("example_2_2_literal.instance", asymmetric_fixture()),
    ]
}
