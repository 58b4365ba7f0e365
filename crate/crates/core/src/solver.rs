//! The constructive iteration behind the existence proofs, and exhaustive
//! enumeration of coincidence and fixed points.
//!
//! Starting from `A₀`, each step picks `A_{n+1}` with `T(A_{n+1}) = S(A_n)`.
//! The proof leaves the choice open; here it is the canonically smallest
//! candidate, so traces are reproducible.
//!
//! ```
//! use fpgraph::maps::TableMap;
//! use fpgraph::metric::FiniteMetricSpace;
//! use fpgraph::rational::rat;
//! use fpgraph::solver::{jungck_iterate, Termination};
//!
//! let x = FiniteMetricSpace::from_fn(&["1", "2"], |i, j| {
//!     if i == j { rat(0, 1) } else { rat(1, 1) }
//! })
//! .unwrap();
//! let s = TableMap::constant(&x, x.set(&["1"]).unwrap());
//! let t = TableMap::identity(&x);
//! let trace = jungck_iterate(&s, &t, &x.hyperspace(), &x.full_set(), 4).unwrap();
//! assert_eq!(trace.termination, Termination::CoincidenceFound(x.set(&["1"]).unwrap()));
//! assert_eq!(trace.steps.len(), 2);
//! ```

use rayon::prelude::*;
use thiserror::Error;

use crate::maps::SetMap;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolverError {
    #[error("start set lies outside the maps' domain")]
    ForeignStart,
    #[error("max_steps must be at least 1")]
    NoSteps,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Step<S> {
    pub a: S,
    pub s_of_a: S,
    pub t_of_a: S,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Termination<S> {
    CoincidenceFound(S),
    /// Length of the cycle the preimage choice fell into.
    CycleDetected(usize),
    /// `S(A_n)` has no preimage under `T`.
    RangeViolation(S),
    StepLimit,
}

impl<S> Termination<S> {
    pub fn label(&self) -> &'static str {
        match self {
            Termination::CoincidenceFound(_) => "coincidence-found",
            Termination::CycleDetected(_) => "cycle-detected",
            Termination::RangeViolation(_) => "range-violation",
            Termination::StepLimit => "step-limit",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IterationTrace<S> {
    pub steps: Vec<Step<S>>,
    pub termination: Termination<S>,
}

impl<S: PartialEq> IterationTrace<S> {
    /// `S(A_n) = T(A_{n+1})` for every pair of consecutive steps.
    pub fn links_hold(&self) -> bool {
        self.steps.windows(2).all(|w| w[0].s_of_a == w[1].t_of_a)
    }
}

fn run<S, F, P>(a0: &S, max_steps: usize, eval: F, mut preimage: P) -> IterationTrace<S>
where
    S: Clone + PartialEq,
    F: Fn(&S) -> (S, S),
    P: FnMut(&S) -> Option<S>,
{
    let mut steps: Vec<Step<S>> = Vec::new();
    let mut a = a0.clone();
    loop {
        let (s_of_a, t_of_a) = eval(&a);
        let target = s_of_a.clone();
        let coincide = s_of_a == t_of_a;
        steps.push(Step {
            a: a.clone(),
            s_of_a,
            t_of_a,
        });
        if coincide {
            return IterationTrace {
                steps,
                termination: Termination::CoincidenceFound(a),
            };
        }
        if steps.len() > max_steps {
            return IterationTrace {
                steps,
                termination: Termination::StepLimit,
            };
        }
        let Some(next) = preimage(&target) else {
            return IterationTrace {
                steps,
                termination: Termination::RangeViolation(target),
            };
        };
        if let Some(pos) = steps.iter().position(|st| st.a == next) {
            let period = steps.len() - pos;
            return IterationTrace {
                steps,
                termination: Termination::CycleDetected(period),
            };
        }
        a = next;
    }
}

/// Jungck-type iteration. Preimages are searched among `candidates`, taking
/// the least in canonical order. At most `max_steps` transitions are made.
pub fn jungck_iterate<X, S, T>(
    s: &S,
    t: &T,
    candidates: &[X],
    a0: &X,
    max_steps: usize,
) -> Result<IterationTrace<X>, SolverError>
where
    X: Clone + Ord + Send + Sync,
    S: SetMap<X> + ?Sized,
    T: SetMap<X> + ?Sized,
{
    if max_steps == 0 {
        return Err(SolverError::NoSteps);
    }
    if !s.accepts(a0) || !t.accepts(a0) {
        return Err(SolverError::ForeignStart);
    }
    let mut sorted: Vec<X> = candidates.to_vec();
    sorted.sort();
    sorted.dedup();
    Ok(run(
        a0,
        max_steps,
        |a| (s.apply(a), t.apply(a)),
        |target| sorted.iter().find(|c| &t.apply(c) == target).cloned(),
    ))
}

/// Orbit `A_{n+1} = map(A_n)`, recorded as steps `(A_n, map(A_n), A_n)`; a
/// fixed point is reported as a coincidence of `map` with the identity.
pub fn picard_iterate<X, M>(
    map: &M,
    a0: &X,
    max_steps: usize,
) -> Result<IterationTrace<X>, SolverError>
where
    X: Clone + PartialEq,
    M: SetMap<X> + ?Sized,
{
    if max_steps == 0 {
        return Err(SolverError::NoSteps);
    }
    if !map.accepts(a0) {
        return Err(SolverError::ForeignStart);
    }
    Ok(run(
        a0,
        max_steps,
        |a| (map.apply(a), a.clone()),
        |target| Some(target.clone()),
    ))
}

/// `{U ∈ family : S(U) = T(U)}` in canonical order.
pub fn enumerate_coincidence_points<X, S, T>(s: &S, t: &T, family: &[X]) -> Vec<X>
where
    X: Clone + Ord + Send + Sync,
    S: SetMap<X> + ?Sized,
    T: SetMap<X> + ?Sized,
{
    let mut out: Vec<X> = family
        .par_iter()
        .filter(|u| s.apply(u) == t.apply(u))
        .cloned()
        .collect();
    out.sort();
    out.dedup();
    out
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FixedPoints<X> {
    pub fix_s: Vec<X>,
    pub fix_t: Vec<X>,
    pub common: Vec<X>,
}

pub fn enumerate_common_fixed_points<X, S, T>(s: &S, t: &T, family: &[X]) -> FixedPoints<X>
where
    X: Clone + Ord + Send + Sync,
    S: SetMap<X> + ?Sized,
    T: SetMap<X> + ?Sized,
{
    let mut sorted = family.to_vec();
    sorted.sort();
    sorted.dedup();
    let fixed = |m: &(dyn Fn(&X) -> X + Sync)| -> Vec<X> {
        sorted.par_iter().filter(|u| &m(u) == *u).cloned().collect()
    };
    let fix_s = fixed(&|u| s.apply(u));
    let fix_t = fixed(&|u| t.apply(u));
    let common = fix_s
        .iter()
        .filter(|u| fix_t.contains(u))
        .cloned()
        .collect();
    FixedPoints {
        fix_s,
        fix_t,
        common,
    }
}
