//! Mechanical certification of contraction conditions and theorem
//! hypotheses.
//!
//! A sweep visits every ordered pair `(A, B)` of the universe's family that is
//! joined by a lifted edge and records `lhs`, the comparison value `m`, the
//! bound `ψ(m)` and whether `lhs <= bound` (ties pass). Hypotheses are
//! reported as a checklist; each entry has a role that fixes how it affects
//! the overall verdict:
//!
//! * **definitional**: part of the contraction notion itself (the gauge class,
//!   parameter constraints, edge and path preservation). Refuted means the
//!   instance is not a contraction of the requested kind.
//! * **hypothesis**: a side condition of the fixed-point theorem. Anything but
//!   Verified downgrades the verdict to certified-with-caveats.
//! * **informational**: reported for completeness, no effect on the verdict.
//!
//! ```
//! use fpgraph::certify::{m1, Psi2Params};
//! use fpgraph::graph::DirectedGraph;
//! use fpgraph::maps::TableMap;
//! use fpgraph::metric::FiniteMetricSpace;
//! use fpgraph::rational::rat;
//! use fpgraph::universe::FiniteUniverse;
//!
//! let x = FiniteMetricSpace::from_fn(&["a", "b"], |i, j| {
//!     if i == j { rat(0, 1) } else { rat(3, 1) }
//! })
//! .unwrap();
//! let g = DirectedGraph::with_all_loops(2, []).unwrap();
//! let u = FiniteUniverse::new(&x, &g);
//! let id = TableMap::identity(&x);
//! let (a, b) = (x.set(&["a"]).unwrap(), x.set(&["a", "b"]).unwrap());
//! // With both maps the identity, M1 collapses to the Hausdorff distance.
//! assert_eq!(m1(&u, &id, &id, &a, &b), rat(3, 1));
//! assert!(Psi2Params::new(rat(1, 2), rat(0, 1), rat(0, 1), rat(1, 4), rat(1, 8)).is_err());
//! ```

use std::fmt;

use rayon::prelude::*;
use thiserror::Error;

use crate::gauge::{
    classify_phi, ClassifyOptions, GaugeError, GaugeFunction, GaugeVerdict, Membership, PhiVerdict,
};
use crate::graph::{completeness_witness, transitivity_witness, Lift};
use crate::maps::SetMap;
use crate::rational::Rational;
use crate::universe::Universe;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParamsError {
    #[error("parameter {name} = {value} is negative")]
    Negative { name: &'static str, value: Rational },
    #[error("delta1 = {delta1} exceeds delta2 = {delta2}")]
    DeltaOrder { delta1: Rational, delta2: Rational },
    #[error("parameters sum to {0}, more than 1")]
    SumExceedsOne(Rational),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CertifyError {
    #[error(transparent)]
    Params(#[from] ParamsError),
    #[error(transparent)]
    Gauge(#[from] GaugeError),
    #[error("set {0} is outside the domain of a map")]
    ForeignSet(String),
    #[error("the set family to sweep is empty")]
    EmptyFamily,
}

/// Weights of the five terms of the weighted-sum comparison value.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Psi2Params {
    pub alpha: Rational,
    pub beta: Rational,
    pub gamma: Rational,
    pub delta1: Rational,
    pub delta2: Rational,
}

impl Psi2Params {
    pub fn new(
        alpha: Rational,
        beta: Rational,
        gamma: Rational,
        delta1: Rational,
        delta2: Rational,
    ) -> Result<Self, ParamsError> {
        let p = Psi2Params {
            alpha,
            beta,
            gamma,
            delta1,
            delta2,
        };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<(), ParamsError> {
        for (name, value) in self.named() {
            if value.is_negative() {
                return Err(ParamsError::Negative {
                    name,
                    value: value.clone(),
                });
            }
        }
        if self.delta1 > self.delta2 {
            return Err(ParamsError::DeltaOrder {
                delta1: self.delta1.clone(),
                delta2: self.delta2.clone(),
            });
        }
        let sum: Rational = self.named().into_iter().map(|(_, v)| v.clone()).sum();
        if sum > Rational::one() {
            return Err(ParamsError::SumExceedsOne(sum));
        }
        Ok(())
    }

    pub fn named(&self) -> [(&'static str, &Rational); 5] {
        [
            ("alpha", &self.alpha),
            ("beta", &self.beta),
            ("gamma", &self.gamma),
            ("delta1", &self.delta1),
            ("delta2", &self.delta2),
        ]
    }
}

/// `max{H(TA,TB), H(SA,TA), H(SB,TB), [H(SA,TB) + H(SB,TA)]/2}`.
pub fn m1<U, S, T>(u: &U, s: &S, t: &T, a: &U::Set, b: &U::Set) -> Rational
where
    U: Universe,
    S: SetMap<U::Set> + ?Sized,
    T: SetMap<U::Set> + ?Sized,
{
    let (sa, sb, ta, tb) = (s.apply(a), s.apply(b), t.apply(a), t.apply(b));
    let avg = (u.hausdorff(&sa, &tb) + u.hausdorff(&sb, &ta)) / Rational::from_integer(2);
    [
        u.hausdorff(&ta, &tb),
        u.hausdorff(&sa, &ta),
        u.hausdorff(&sb, &tb),
        avg,
    ]
    .into_iter()
    .max()
    .expect("four terms")
}

/// `αH(TA,TB) + βH(SA,TA) + γH(SB,TB) + δ₁H(SA,TB) + δ₂H(SB,TA)`.
pub fn m2<U, S, T>(
    u: &U,
    s: &S,
    t: &T,
    a: &U::Set,
    b: &U::Set,
    p: &Psi2Params,
) -> Result<Rational, ParamsError>
where
    U: Universe,
    S: SetMap<U::Set> + ?Sized,
    T: SetMap<U::Set> + ?Sized,
{
    p.validate()?;
    Ok(m2_unchecked(u, s, t, a, b, p))
}

fn m2_unchecked<U, S, T>(u: &U, s: &S, t: &T, a: &U::Set, b: &U::Set, p: &Psi2Params) -> Rational
where
    U: Universe,
    S: SetMap<U::Set> + ?Sized,
    T: SetMap<U::Set> + ?Sized,
{
    let (sa, sb, ta, tb) = (s.apply(a), s.apply(b), t.apply(a), t.apply(b));
    let mut total = Rational::zero();
    for (w, x, y) in [
        (&p.alpha, &ta, &tb),
        (&p.beta, &sa, &ta),
        (&p.gamma, &sb, &tb),
        (&p.delta1, &sa, &tb),
        (&p.delta2, &sb, &ta),
    ] {
        // Zero weights skip the distance computation.
        if !w.is_zero() {
            total = total + w * u.hausdorff(x, y);
        }
    }
    total
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CertifyKind {
    Psi1,
    Psi2,
    Phi,
}

impl CertifyKind {
    pub fn name(self) -> &'static str {
        match self {
            CertifyKind::Psi1 => "psi1",
            CertifyKind::Psi2 => "psi2",
            CertifyKind::Phi => "phi",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Verified,
    Refuted(String),
    Inconclusive(String),
}

impl Verdict {
    pub fn is_verified(&self) -> bool {
        matches!(self, Verdict::Verified)
    }

    pub fn is_refuted(&self) -> bool {
        matches!(self, Verdict::Refuted(_))
    }

    pub fn label(&self) -> &'static str {
        match self {
            Verdict::Verified => "verified",
            Verdict::Refuted(_) => "refuted",
            Verdict::Inconclusive(_) => "inconclusive",
        }
    }

    pub fn witness(&self) -> Option<&str> {
        match self {
            Verdict::Verified => None,
            Verdict::Refuted(w) | Verdict::Inconclusive(w) => Some(w),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Role {
    Definitional,
    Hypothesis,
    Informational,
}

impl Role {
    pub fn label(self) -> &'static str {
        match self {
            Role::Definitional => "definitional",
            Role::Hypothesis => "hypothesis",
            Role::Informational => "informational",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub name: &'static str,
    pub role: Role,
    pub verdict: Verdict,
}

impl Check {
    fn new(name: &'static str, role: Role, verdict: Verdict) -> Self {
        Check {
            name,
            role,
            verdict,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairRecord<S> {
    pub a: S,
    pub b: S,
    pub lhs: Rational,
    pub m_value: Rational,
    pub bound: Rational,
    pub pass: bool,
}

/// All edged pairs under one reading of "edge between sets".
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Sweep<S> {
    pub lift: Lift,
    pub records: Vec<PairRecord<S>>,
}

impl<S> Sweep<S> {
    pub fn failures(&self) -> impl Iterator<Item = &PairRecord<S>> {
        self.records.iter().filter(|r| !r.pass)
    }

    pub fn all_pass(&self) -> bool {
        self.records.iter().all(|r| r.pass)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Overall {
    Certified,
    CertifiedWithCaveats,
    Refuted,
}

impl Overall {
    pub fn label(self) -> &'static str {
        match self {
            Overall::Certified => "certified",
            Overall::CertifiedWithCaveats => "certified-with-caveats",
            Overall::Refuted => "refuted",
        }
    }
}

impl fmt::Display for Overall {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GaugeSummary {
    Psi(GaugeVerdict),
    Phi(PhiVerdict),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CertificationReport<S> {
    pub kind: CertifyKind,
    pub sweeps: Vec<Sweep<S>>,
    pub checks: Vec<Check>,
    pub gauge: GaugeSummary,
    /// The gauge that was classified and evaluated.
    pub function: GaugeFunction,
    pub overall: Overall,
}

impl<S> CertificationReport<S> {
    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn sweep(&self, lift: Lift) -> Option<&Sweep<S>> {
        self.sweeps.iter().find(|s| s.lift == lift)
    }
}

/// Verdict policy: a failing pair or a refuted definitional check refutes;
/// otherwise any unverified hypothesis, or an inconclusive definitional
/// check, leaves caveats.
pub fn overall_verdict<S>(sweeps: &[Sweep<S>], checks: &[Check]) -> Overall {
    let pair_failure = sweeps.iter().any(|s| !s.all_pass());
    let definitional_refuted = checks
        .iter()
        .any(|c| c.role == Role::Definitional && c.verdict.is_refuted());
    if pair_failure || definitional_refuted {
        return Overall::Refuted;
    }
    let caveat = checks.iter().any(|c| match c.role {
        Role::Definitional | Role::Hypothesis => !c.verdict.is_verified(),
        Role::Informational => false,
    });
    if caveat {
        Overall::CertifiedWithCaveats
    } else {
        Overall::Certified
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct CertifyOptions {
    /// Also sweep pairs joined by an edge of the symmetrised graph.
    pub undirected_lift: bool,
    pub classify: ClassifyOptions,
}

impl CertifyOptions {
    fn lifts(&self) -> Vec<Lift> {
        if self.undirected_lift {
            vec![Lift::Directed, Lift::Undirected]
        } else {
            vec![Lift::Directed]
        }
    }
}

fn checked_family<U, M>(u: &U, maps: &[&M]) -> Result<Vec<U::Set>, CertifyError>
where
    U: Universe,
    M: SetMap<U::Set> + ?Sized,
{
    let family = u.family();
    if family.is_empty() {
        return Err(CertifyError::EmptyFamily);
    }
    for s in &family {
        if maps.iter().any(|m| !m.accepts(s)) {
            return Err(CertifyError::ForeignSet(u.show(s)));
        }
    }
    Ok(family)
}

/// Ordered pairs of `family` with a lifted edge, evaluated in parallel and
/// collected in pair-index order.
fn sweep<U, F>(u: &U, family: &[U::Set], lift: Lift, eval: F) -> Sweep<U::Set>
where
    U: Universe,
    F: Fn(&U::Set, &U::Set) -> (Rational, Rational, Rational) + Sync,
{
    let f = family.len();
    let records = (0..f * f)
        .into_par_iter()
        .filter_map(|k| {
            let (a, b) = (&family[k / f], &family[k % f]);
            if !u.set_edge(a, b, lift) {
                return None;
            }
            let (lhs, m_value, bound) = eval(a, b);
            let pass = lhs <= bound;
            Some(PairRecord {
                a: a.clone(),
                b: b.clone(),
                lhs,
                m_value,
                bound,
                pass,
            })
        })
        .collect();
    Sweep { lift, records }
}

fn membership_verdict(m: &Membership, g: &GaugeFunction, symbol: &str) -> Verdict {
    match m {
        Membership::Verified => Verdict::Verified,
        Membership::Refuted(w) => Verdict::Refuted(w.describe(g, symbol)),
        Membership::Inconclusive => {
            Verdict::Inconclusive("orbit evidence did not settle convergence".to_string())
        }
    }
}

fn first_failure<X: Clone>(items: &[X], ok: impl Fn(&X) -> bool) -> Option<X> {
    items.iter().find(|x| !ok(x)).cloned()
}

fn orientation_checks<U, M>(u: &U, family: &[U::Set], map: &M, which: &'static str) -> [Check; 3]
where
    U: Universe,
    M: SetMap<U::Set> + ?Sized,
{
    let forward = first_failure(family, |v| u.set_edge(v, &map.apply(v), Lift::Directed));
    let backward = first_failure(family, |v| u.set_edge(&map.apply(v), v, Lift::Directed));
    let one = |fail: &Option<U::Set>, dir: &str| match fail {
        None => Verdict::Verified,
        Some(v) => Verdict::Refuted(format!("no edge {dir} at U = {}", u.show(v))),
    };
    let fwd_v = one(&forward, &format!("U -> {which}(U)"));
    let bwd_v = one(&backward, &format!("{which}(U) -> U"));
    let combined = match (&forward, &backward) {
        (None, _) | (_, None) => Verdict::Verified,
        (Some(f), Some(b)) => Verdict::Refuted(format!(
            "U -> {which}(U) fails at {}, {which}(U) -> U fails at {}",
            u.show(f),
            u.show(b)
        )),
    };
    let (name, fwd_name, bwd_name) = match which {
        "S" => (
            "domain_edges_S",
            "domain_edges_S_forward",
            "domain_edges_S_backward",
        ),
        _ => (
            "domain_edges_T",
            "domain_edges_T_forward",
            "domain_edges_T_backward",
        ),
    };
    [
        Check::new(name, Role::Hypothesis, combined),
        Check::new(fwd_name, Role::Informational, fwd_v),
        Check::new(bwd_name, Role::Informational, bwd_v),
    ]
}

fn loops_check<U: Universe>(u: &U) -> Check {
    let v = match u.missing_loop() {
        None => Verdict::Verified,
        Some(x) => Verdict::Refuted(format!("no loop at {x}")),
    };
    Check::new("diagonal_loops", Role::Hypothesis, v)
}

fn connectivity_check<U: Universe>(u: &U) -> Check {
    let v = match u.weak_connectivity() {
        Ok(()) => Verdict::Verified,
        Err((x, y)) => Verdict::Refuted(format!("{x} and {y} lie in different weak components")),
    };
    Check::new("weak_connectivity", Role::Hypothesis, v)
}

fn p_star_check<U: Universe>(u: &U) -> Check {
    let p = u.p_star();
    let v = if p.holds() {
        Verdict::Verified
    } else {
        Verdict::Inconclusive(p.justification().to_string())
    };
    Check::new("p_star", Role::Hypothesis, v)
}

fn transitivity_check<U: Universe>(u: &U, family: &[U::Set], role: Role) -> Check {
    let v = match transitivity_witness(family, |a, b| u.relation(a, b)) {
        None => Verdict::Verified,
        Some((a, b, c)) => Verdict::Refuted(format!(
            "{} R {} and {} R {} but not {} R {}",
            u.show(&a),
            u.show(&b),
            u.show(&b),
            u.show(&c),
            u.show(&a),
            u.show(&c)
        )),
    };
    Check::new("r_transitivity", role, v)
}

fn completeness_check<U: Universe>(u: &U, name: &'static str, sets: &[U::Set]) -> Check {
    let v = match completeness_witness(sets, |a, b| u.set_edge(a, b, Lift::Directed)) {
        None => Verdict::Verified,
        Some((a, b)) => Verdict::Refuted(format!("no edge {} -> {}", u.show(&a), u.show(&b))),
    };
    Check::new(name, Role::Informational, v)
}

/// Side conditions of the two-map theorems: domain edges in both
/// orientations, range containment, loops, weak connectivity, the sequence
/// stability property, weak compatibility on the coincidence set, and
/// completeness of the coincidence and common-fixed-point sets.
pub fn check_hypotheses<U, S, T>(u: &U, s: &S, t: &T) -> Result<Vec<Check>, CertifyError>
where
    U: Universe,
    S: SetMap<U::Set> + ?Sized,
    T: SetMap<U::Set> + ?Sized,
{
    let family = checked_family::<U, S>(u, &[s])?;
    checked_family::<U, T>(u, &[t])?;
    let mut checks = vec![loops_check(u)];
    checks.extend(orientation_checks(u, &family, s, "S"));
    checks.extend(orientation_checks(u, &family, t, "T"));

    let range_t = t.range();
    let range = match s.range().into_iter().find(|x| !range_t.contains(x)) {
        None => Verdict::Verified,
        Some(x) => Verdict::Refuted(format!("{} is in range(S) but not in range(T)", u.show(&x))),
    };
    checks.push(Check::new("range_containment", Role::Hypothesis, range));
    checks.push(connectivity_check(u));
    checks.push(p_star_check(u));

    let cp: Vec<U::Set> = family
        .iter()
        .filter(|x| s.apply(x) == t.apply(x))
        .cloned()
        .collect();
    let compat = match cp
        .iter()
        .find(|x| s.apply(&t.apply(x)) != t.apply(&s.apply(x)))
    {
        None => Verdict::Verified,
        Some(x) => Verdict::Refuted(format!(
            "S(T(U)) = {} but T(S(U)) = {} at U = {}",
            u.show(&s.apply(&t.apply(x))),
            u.show(&t.apply(&s.apply(x))),
            u.show(x)
        )),
    };
    checks.push(Check::new("weak_compatibility", Role::Hypothesis, compat));
    checks.push(completeness_check(u, "cp_complete", &cp));
    let common: Vec<U::Set> = cp.iter().filter(|x| &s.apply(x) == *x).cloned().collect();
    checks.push(completeness_check(u, "common_fix_complete", &common));
    Ok(checks)
}

fn certify_pair<U, S, T>(
    u: &U,
    s: &S,
    t: &T,
    psi: &GaugeFunction,
    params: Option<&Psi2Params>,
    opts: &CertifyOptions,
) -> Result<CertificationReport<U::Set>, CertifyError>
where
    U: Universe,
    S: SetMap<U::Set> + ?Sized,
    T: SetMap<U::Set> + ?Sized,
{
    if let Some(p) = params {
        p.validate()?;
    }
    let family = checked_family::<U, S>(u, &[s])?;
    let verdict = psi.classify(&opts.classify)?;
    let eval = |a: &U::Set, b: &U::Set| {
        let lhs = u.hausdorff(&s.apply(a), &s.apply(b));
        let m = match params {
            None => m1(u, s, t, a, b),
            Some(p) => m2_unchecked(u, s, t, a, b, p),
        };
        let bound = psi.eval(&m).expect("comparison values are nonnegative");
        (lhs, m, bound)
    };
    let sweeps: Vec<_> = opts
        .lifts()
        .into_iter()
        .map(|lift| sweep(u, &family, lift, eval))
        .collect();

    let mut checks = vec![Check::new(
        "gauge_in_Psi",
        Role::Definitional,
        membership_verdict(&verdict.in_psi, psi, "psi"),
    )];
    if params.is_some() {
        checks.push(Check::new(
            "params_valid",
            Role::Definitional,
            Verdict::Verified,
        ));
    }
    checks.extend(check_hypotheses(u, s, t)?);
    checks.push(transitivity_check(u, &family, Role::Informational));
    let overall = overall_verdict(&sweeps, &checks);
    Ok(CertificationReport {
        kind: if params.is_some() {
            CertifyKind::Psi2
        } else {
            CertifyKind::Psi1
        },
        sweeps,
        checks,
        gauge: GaugeSummary::Psi(verdict),
        function: psi.clone(),
        overall,
    })
}

/// Max-type contraction: `H(S(A), S(B)) <= ψ(M₁(A, B))` on edged pairs.
pub fn certify_psi1<U, S, T>(
    u: &U,
    s: &S,
    t: &T,
    psi: &GaugeFunction,
    opts: &CertifyOptions,
) -> Result<CertificationReport<U::Set>, CertifyError>
where
    U: Universe,
    S: SetMap<U::Set> + ?Sized,
    T: SetMap<U::Set> + ?Sized,
{
    certify_pair(u, s, t, psi, None, opts)
}

/// Weighted-sum contraction: `H(S(A), S(B)) <= ψ(M₂(A, B))` on edged pairs.
pub fn certify_psi2<U, S, T>(
    u: &U,
    s: &S,
    t: &T,
    psi: &GaugeFunction,
    p: &Psi2Params,
    opts: &CertifyOptions,
) -> Result<CertificationReport<U::Set>, CertifyError>
where
    U: Universe,
    S: SetMap<U::Set> + ?Sized,
    T: SetMap<U::Set> + ?Sized,
{
    certify_pair(u, s, t, psi, Some(p), opts)
}

/// Single-map contraction: edge and path preservation, and
/// `H(T(A), T(B)) <= φ(H(A, B))` on edged pairs.
pub fn certify_phi<U, T>(
    u: &U,
    t: &T,
    phi: &GaugeFunction,
    opts: &CertifyOptions,
) -> Result<CertificationReport<U::Set>, CertifyError>
where
    U: Universe,
    T: SetMap<U::Set> + ?Sized,
{
    let family = checked_family::<U, T>(u, &[t])?;
    let verdict = classify_phi(phi);
    let eval = |a: &U::Set, b: &U::Set| {
        let lhs = u.hausdorff(&t.apply(a), &t.apply(b));
        let m = u.hausdorff(a, b);
        let bound = phi.eval(&m).expect("distances are nonnegative");
        (lhs, m, bound)
    };
    let sweeps: Vec<_> = opts
        .lifts()
        .into_iter()
        .map(|lift| sweep(u, &family, lift, eval))
        .collect();

    let pairs = || {
        family
            .iter()
            .flat_map(|a| family.iter().map(move |b| (a, b)))
    };
    let edges = match pairs().find(|(a, b)| {
        u.set_edge(a, b, Lift::Directed) && !u.set_edge(&t.apply(a), &t.apply(b), Lift::Directed)
    }) {
        None => Verdict::Verified,
        Some((a, b)) => Verdict::Refuted(format!(
            "edge {} -> {} but none {} -> {}",
            u.show(a),
            u.show(b),
            u.show(&t.apply(a)),
            u.show(&t.apply(b))
        )),
    };
    let paths =
        match pairs().find(|(a, b)| u.relation(a, b) && !u.relation(&t.apply(a), &t.apply(b))) {
            None => Verdict::Verified,
            Some((a, b)) => Verdict::Refuted(format!(
                "path {} -> {} but none {} -> {}",
                u.show(a),
                u.show(b),
                u.show(&t.apply(a)),
                u.show(&t.apply(b))
            )),
        };
    let x_t = if family
        .iter()
        .any(|v| u.set_edge(v, &t.apply(v), Lift::Directed))
    {
        Verdict::Verified
    } else {
        Verdict::Refuted("no U with an edge U -> T(U)".to_string())
    };
    let fix: Vec<U::Set> = family
        .iter()
        .filter(|v| &t.apply(v) == *v)
        .cloned()
        .collect();

    let checks = vec![
        Check::new(
            "gauge_in_Phi",
            Role::Definitional,
            membership_verdict(&verdict.in_phi, phi, "phi"),
        ),
        Check::new("edge_preservation", Role::Definitional, edges),
        Check::new("path_preservation", Role::Definitional, paths),
        loops_check(u),
        transitivity_check(u, &family, Role::Hypothesis),
        Check::new("x_t_nonempty", Role::Hypothesis, x_t),
        connectivity_check(u),
        p_star_check(u),
        completeness_check(u, "fix_complete", &fix),
    ];
    let overall = overall_verdict(&sweeps, &checks);
    Ok(CertificationReport {
        kind: CertifyKind::Phi,
        sweeps,
        checks,
        gauge: GaugeSummary::Phi(verdict),
        function: phi.clone(),
        overall,
    })
}
