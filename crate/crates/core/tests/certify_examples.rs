use fpgraph::certify::{
    certify_phi, certify_psi1, certify_psi2, check_hypotheses, m1, m2, CertifyError,
    CertifyOptions, Overall, ParamsError, Psi2Params, Role,
};
use fpgraph::corpus;
use fpgraph::gauge::GaugeFunction;
use fpgraph::graph::DirectedGraph;
use fpgraph::instance::InstanceBody;
use fpgraph::maps::TableMap;
use fpgraph::rational::{rat, Rational};
use fpgraph::universe::{FiniteUniverse, Universe};

#[allow(clippy::result_large_err)]
fn weights(
    a: (i64, i64),
    b: (i64, i64),
    c: (i64, i64),
    d1: (i64, i64),
    d2: (i64, i64),
) -> Result<Psi2Params, ParamsError> {
    let r = |(p, q)| rat(p, q);
    Psi2Params::new(r(a), r(b), r(c), r(d1), r(d2))
}

#[test]
fn m1_terms_on_the_order_graph_pair() {
    let inst = corpus::order_graph_pair();
    let InstanceBody::Finite(f) = &inst.body else {
        panic!()
    };
    let u = FiniteUniverse::new(&f.space, &f.graph);
    let (a, b) = (f.space.set(&["1"]).unwrap(), f.space.set(&["3"]).unwrap());
    assert_eq!(m1(&u, &f.s, &f.t, &a, &b), rat(4, 5));
    // The averaged term alone.
    let avg = (u.hausdorff(
        &f.space.set(&["1"]).unwrap(),
        &f.space.set(&["1", "2", "3"]).unwrap(),
    ) + u.hausdorff(&f.space.set(&["1", "2"]).unwrap(), &a))
        / Rational::from(2);
    assert_eq!(avg, rat(21, 40));
    assert_eq!(m1(&u, &f.s, &f.s, &a, &a), Rational::zero());
}

#[test]
fn m2_special_cases() {
    let inst = corpus::order_graph_pair();
    let InstanceBody::Finite(f) = &inst.body else {
        panic!()
    };
    let u = FiniteUniverse::new(&f.space, &f.graph);
    let zero = weights((0, 1), (0, 1), (0, 1), (0, 1), (0, 1)).unwrap();
    let alpha = weights((1, 1), (0, 1), (0, 1), (0, 1), (0, 1)).unwrap();
    for a in &f.space.hyperspace() {
        for b in &f.space.hyperspace() {
            assert_eq!(m2(&u, &f.s, &f.t, a, b, &zero).unwrap(), Rational::zero());
            let first = u.hausdorff(
                &fpgraph::maps::SetMap::apply(&f.t, a),
                &fpgraph::maps::SetMap::apply(&f.t, b),
            );
            assert_eq!(m2(&u, &f.t, &f.t, a, b, &alpha).unwrap(), first);
        }
    }
}

#[test]
fn params_are_gated() {
    assert!(matches!(
        weights((1, 4), (0, 1), (0, 1), (1, 4), (1, 8)),
        Err(ParamsError::DeltaOrder { .. })
    ));
    assert!(matches!(
        weights((1, 2), (1, 2), (1, 4), (0, 1), (0, 1)),
        Err(ParamsError::SumExceedsOne(_))
    ));
    assert!(matches!(
        weights((-1, 2), (0, 1), (0, 1), (0, 1), (0, 1)),
        Err(ParamsError::Negative { .. })
    ));
}

#[test]
fn constant_pair_is_certified() {
    let x = corpus::four_point_space();
    let g = corpus::order_graph();
    let u = FiniteUniverse::new(&x, &g);
    let c = TableMap::constant(&x, x.set(&["1"]).unwrap());
    let r = certify_psi1(
        &u,
        &c,
        &c,
        &corpus::quadratic_then_mobius_gauge(),
        &CertifyOptions::default(),
    )
    .unwrap();
    assert!(r.sweeps[0]
        .records
        .iter()
        .all(|rec| rec.lhs.is_zero() && rec.pass));
    assert_eq!(r.overall, Overall::Certified);
}

#[test]
fn identity_pair_under_half_slope_fails_psi2() {
    let x = corpus::four_point_space();
    let g = corpus::order_graph();
    let u = FiniteUniverse::new(&x, &g);
    let id = TableMap::identity(&x);
    let p = weights((1, 1), (0, 1), (0, 1), (0, 1), (0, 1)).unwrap();
    let r = certify_psi2(
        &u,
        &id,
        &id,
        &GaugeFunction::linear(rat(1, 2)),
        &p,
        &CertifyOptions::default(),
    )
    .unwrap();
    for rec in &r.sweeps[0].records {
        assert_eq!(rec.pass, rec.a == rec.b);
    }
    assert_eq!(r.overall, Overall::Refuted);
}

#[test]
fn invalid_params_are_a_parameter_error() {
    let x = corpus::four_point_space();
    let g = corpus::order_graph();
    let u = FiniteUniverse::new(&x, &g);
    let id = TableMap::identity(&x);
    let mut p = weights((1, 2), (0, 1), (0, 1), (0, 1), (0, 1)).unwrap();
    p.delta1 = rat(1, 4);
    let e = certify_psi2(
        &u,
        &id,
        &id,
        &GaugeFunction::linear(rat(1, 2)),
        &p,
        &CertifyOptions::default(),
    );
    assert!(matches!(
        e,
        Err(CertifyError::Params(ParamsError::DeltaOrder { .. }))
    ));
}

#[test]
fn phi_identity_preserves_edges_but_not_the_inequality() {
    let x = corpus::four_point_space();
    let g = corpus::order_graph();
    let u = FiniteUniverse::new(&x, &g);
    let id = TableMap::identity(&x);
    let r = certify_phi(
        &u,
        &id,
        &GaugeFunction::linear(rat(1, 2)),
        &CertifyOptions::default(),
    )
    .unwrap();
    assert!(r.check("edge_preservation").unwrap().verdict.is_verified());
    assert!(r.check("path_preservation").unwrap().verdict.is_verified());
    for rec in &r.sweeps[0].records {
        assert_eq!(rec.pass, rec.a == rec.b);
    }
    assert_eq!(r.overall, Overall::Refuted);
}

#[test]
fn phi_constant_on_complete_graph_is_certified() {
    let x = corpus::four_point_space();
    let g = DirectedGraph::new(4, (0..4).flat_map(|i| (0..4).map(move |j| (i, j)))).unwrap();
    let u = FiniteUniverse::new(&x, &g);
    let c = TableMap::constant(&x, x.set(&["2", "3"]).unwrap());
    let r = certify_phi(
        &u,
        &c,
        &GaugeFunction::linear(rat(1, 3)),
        &CertifyOptions::default(),
    )
    .unwrap();
    assert_eq!(r.overall, Overall::Certified);
}

#[test]
fn order_graph_pair_hypotheses() {
    let inst = corpus::order_graph_pair();
    let InstanceBody::Finite(f) = &inst.body else {
        panic!()
    };
    let u = FiniteUniverse::new(&f.space, &f.graph);
    let checks = check_hypotheses(&u, &f.s, &f.t).unwrap();
    let get = |n: &str| checks.iter().find(|c| c.name == n).unwrap();
    assert!(get("domain_edges_S").verdict.is_verified());
    assert!(get("domain_edges_T").verdict.is_verified());
    assert!(get("domain_edges_S_backward").verdict.is_verified());
    assert!(get("domain_edges_T_forward").verdict.is_verified());
    assert!(get("weak_compatibility").verdict.is_verified());
    assert_eq!(
        get("range_containment").verdict.witness(),
        Some("{1,2} is in range(S) but not in range(T)")
    );
    assert_eq!(get("range_containment").role, Role::Hypothesis);
}

#[test]
fn larger_gauge_never_loses_certification() {
    // On [0,1/2) the corpus gauge is t^2/2 <= t/(t+1), and beyond it equals t/(t+1).
    let larger = GaugeFunction::new(vec![fpgraph::gauge::GaugePiece::new(
        rat(0, 1),
        None,
        fpgraph::gauge::Formula::Mobius {
            a: rat(1, 1),
            b: rat(0, 1),
            c: rat(1, 1),
            d: rat(1, 1),
        },
    )])
    .unwrap();
    let inst = corpus::order_graph_pair();
    let InstanceBody::Finite(f) = &inst.body else {
        panic!()
    };
    let u = FiniteUniverse::new(&f.space, &f.graph);
    let opts = CertifyOptions::default();
    let small = certify_psi1(&u, &f.s, &f.t, &inst.gauge, &opts).unwrap();
    let big = certify_psi1(&u, &f.s, &f.t, &larger, &opts).unwrap();
    for (a, b) in small.sweeps[0].records.iter().zip(&big.sweeps[0].records) {
        assert!(a.bound <= b.bound);
        assert!(!a.pass || b.pass);
    }
    assert!(small.sweeps[0].all_pass() && big.sweeps[0].all_pass());
    assert_eq!(small.overall, big.overall);
}
