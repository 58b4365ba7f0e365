//! Piecewise comparison functions and their exact classification.
//!
//! A [`GaugeFunction`] partitions `[0, ∞)` into half-open pieces `[lo, hi)`,
//! each carrying one closed form: `a·t`, `a·t²` or the Möbius form
//! `(a·t + b)/(c·t + d)`. All three have degree at most two after clearing
//! denominators, so monotonicity, the comparison `ψ(t) < t` and behaviour at
//! piece boundaries are decided exactly over the rationals. Convergence of
//! `Σ ψⁿ(t)` is a limit statement and is only *evidenced* by orbit iteration,
//! except when the orbit lands in the first piece with a linear form of
//! slope below one, where the geometric tail is a proof.
//!
//! ```
//! use fpgraph::gauge::{GaugeFunction, GaugePiece, Formula, ClassifyOptions, Membership};
//! use fpgraph::rational::rat;
//!
//! let psi = GaugeFunction::new(vec![
//!     GaugePiece::new(rat(0, 1), Some(rat(1, 1)), Formula::Linear { a: rat(3, 4) }),
//!     GaugePiece::new(rat(1, 1), None, Formula::Linear { a: rat(5, 6) }),
//! ])
//! .unwrap();
//! assert_eq!(psi.eval(&rat(40, 3)).unwrap(), rat(100, 9));
//! let verdict = psi.classify(&ClassifyOptions::default()).unwrap();
//! assert_eq!(verdict.in_psi, Membership::Verified);
//! ```

use std::fmt;

use thiserror::Error;

use crate::rational::{rat, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GaugeError {
    #[error("a gauge needs at least one piece")]
    NoPieces,
    #[error("first piece must start at 0, starts at {0}")]
    FirstPieceStart(Rational),
    #[error("piece {index} is empty or reversed: [{lo}, {hi})")]
    EmptyPiece {
        index: usize,
        lo: Rational,
        hi: Rational,
    },
    #[error("piece {index} starts at {found} but the previous piece ends at {expected}")]
    Gap {
        index: usize,
        expected: Rational,
        found: Rational,
    },
    #[error("only the last piece may extend to infinity (piece {0})")]
    EarlyInfinity(usize),
    #[error("last piece must extend to infinity")]
    BoundedCover,
    #[error("rational form of piece {index} has a zero denominator at {at}")]
    ZeroDenominator { index: usize, at: Rational },
    #[error("rational form of piece {index} has an identically zero denominator")]
    DegenerateDenominator { index: usize },
    #[error("gauge argument must be nonnegative, got {0}")]
    NegativeArgument(Rational),
    #[error("classification needs at least one probe")]
    NoProbes,
    #[error("probe {0} is negative")]
    NegativeProbe(Rational),
    #[error("classification needs at least 2 iterations, got {0}")]
    TooFewIterations(usize),
    #[error("tail tolerance must be positive, got {0}")]
    NonPositiveTolerance(Rational),
}

/// Closed form carried by a piece.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Formula {
    Linear {
        a: Rational,
    },
    Quadratic {
        a: Rational,
    },
    /// `(a·t + b)/(c·t + d)`.
    Mobius {
        a: Rational,
        b: Rational,
        c: Rational,
        d: Rational,
    },
}

impl Formula {
    pub fn kind(&self) -> &'static str {
        match self {
            Formula::Linear { .. } => "linear",
            Formula::Quadratic { .. } => "quadratic",
            Formula::Mobius { .. } => "rational",
        }
    }

    pub fn coefficients(&self) -> Vec<Rational> {
        match self {
            Formula::Linear { a } | Formula::Quadratic { a } => vec![a.clone()],
            Formula::Mobius { a, b, c, d } => vec![a.clone(), b.clone(), c.clone(), d.clone()],
        }
    }

    /// Value at `t`, or `None` at a pole.
    pub fn eval(&self, t: &Rational) -> Option<Rational> {
        match self {
            Formula::Linear { a } => Some(a * t),
            Formula::Quadratic { a } => Some(a * t * t),
            Formula::Mobius { a, b, c, d } => {
                let den = c * t + d;
                if den.is_zero() {
                    None
                } else {
                    Some((a * t + b) / den)
                }
            }
        }
    }

    fn denominator_root(&self) -> Option<Rational> {
        match self {
            Formula::Mobius { c, d, .. } if !c.is_zero() => Some(-d / c),
            _ => None,
        }
    }

    fn is_strictly_decreasing(&self) -> bool {
        match self {
            Formula::Linear { a } | Formula::Quadratic { a } => a.is_negative(),
            Formula::Mobius { a, b, c, d } => (a * d - b * c).is_negative(),
        }
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Formula::Linear { a } => write!(f, "{a}·t"),
            Formula::Quadratic { a } => write!(f, "{a}·t²"),
            Formula::Mobius { a, b, c, d } => write!(f, "({a}·t + {b})/({c}·t + {d})"),
        }
    }
}

/// One piece `[lo, hi)` of a gauge; `hi = None` means `+∞`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GaugePiece {
    pub lo: Rational,
    pub hi: Option<Rational>,
    pub formula: Formula,
}

impl GaugePiece {
    pub fn new(lo: Rational, hi: Option<Rational>, formula: Formula) -> Self {
        GaugePiece { lo, hi, formula }
    }

    pub fn contains(&self, t: &Rational) -> bool {
        &self.lo <= t && self.hi.as_ref().is_none_or(|h| t < h)
    }

    /// Some point strictly inside the piece, to the right of `lo`.
    fn interior_point(&self) -> Rational {
        match &self.hi {
            Some(h) => self.lo.midpoint(h),
            None => &self.lo + Rational::one(),
        }
    }
}

/// A piecewise gauge `ψ : [0, ∞) → ℝ` whose pieces partition `[0, ∞)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GaugeFunction {
    pieces: Vec<GaugePiece>,
}

impl GaugeFunction {
    pub fn new(pieces: Vec<GaugePiece>) -> Result<Self, GaugeError> {
        let Some(first) = pieces.first() else {
            return Err(GaugeError::NoPieces);
        };
        if !first.lo.is_zero() {
            return Err(GaugeError::FirstPieceStart(first.lo.clone()));
        }
        for (index, p) in pieces.iter().enumerate() {
            if index > 0 {
                let prev = pieces[index - 1].hi.as_ref().expect("checked below");
                if prev != &p.lo {
                    return Err(GaugeError::Gap {
                        index,
                        expected: prev.clone(),
                        found: p.lo.clone(),
                    });
                }
            }
            match &p.hi {
                Some(hi) if hi <= &p.lo => {
                    return Err(GaugeError::EmptyPiece {
                        index,
                        lo: p.lo.clone(),
                        hi: hi.clone(),
                    })
                }
                None if index + 1 != pieces.len() => return Err(GaugeError::EarlyInfinity(index)),
                _ => {}
            }
            if let Formula::Mobius { c, d, .. } = &p.formula {
                if c.is_zero() && d.is_zero() {
                    return Err(GaugeError::DegenerateDenominator { index });
                }
            }
            if let Some(root) = p.formula.denominator_root() {
                if p.contains(&root) {
                    return Err(GaugeError::ZeroDenominator { index, at: root });
                }
            }
        }
        if pieces.last().expect("nonempty").hi.is_some() {
            return Err(GaugeError::BoundedCover);
        }
        Ok(GaugeFunction { pieces })
    }

    /// Single-piece linear gauge `t ↦ a·t`.
    pub fn linear(a: Rational) -> Self {
        GaugeFunction::new(vec![GaugePiece::new(
            Rational::zero(),
            None,
            Formula::Linear { a },
        )])
        .expect("single piece covers [0, ∞)")
    }

    pub fn pieces(&self) -> &[GaugePiece] {
        &self.pieces
    }

    pub fn piece_index(&self, t: &Rational) -> Result<usize, GaugeError> {
        if t.is_negative() {
            return Err(GaugeError::NegativeArgument(t.clone()));
        }
        Ok(self
            .pieces
            .iter()
            .position(|p| p.contains(t))
            .expect("pieces cover [0, ∞)"))
    }

    /// Exact value from the unique piece containing `t`.
    pub fn eval(&self, t: &Rational) -> Result<Rational, GaugeError> {
        let i = self.piece_index(t)?;
        Ok(self.pieces[i]
            .formula
            .eval(t)
            .expect("denominator nonzero inside its piece"))
    }

    /// `t ↦ c·ψ(t/c)`: the gauge that matches a metric scaled by `c`.
    pub fn rescaled(&self, c: &Rational) -> GaugeFunction {
        assert!(c.is_positive(), "scale factor must be positive");
        let pieces = self
            .pieces
            .iter()
            .map(|p| {
                let formula = match &p.formula {
                    Formula::Linear { a } => Formula::Linear { a: a.clone() },
                    Formula::Quadratic { a } => Formula::Quadratic { a: a / c },
                    Formula::Mobius { a, b, c: cc, d } => Formula::Mobius {
                        a: a * c,
                        b: b * c * c,
                        c: cc.clone(),
                        d: d * c,
                    },
                };
                GaugePiece::new(&p.lo * c, p.hi.as_ref().map(|h| h * c), formula)
            })
            .collect();
        GaugeFunction::new(pieces).expect("scaling preserves the cover")
    }

    /// Membership verdict for the class of nondecreasing gauges with a
    /// convergent iterate series.
    pub fn classify(&self, opts: &ClassifyOptions) -> Result<GaugeVerdict, GaugeError> {
        classify_gauge(self, &opts.probes, opts.iterations, &opts.tail_tolerance)
    }
}

/// Quadratic `a·t² + b·t + c` with exact coefficients.
#[derive(Debug, Clone)]
struct Quad {
    a: Rational,
    b: Rational,
    c: Rational,
}

impl Quad {
    fn eval(&self, t: &Rational) -> Rational {
        (&self.a * t + &self.b) * t + &self.c
    }

    fn slope(&self, t: &Rational) -> Rational {
        Rational::from_integer(2) * &self.a * t + &self.b
    }

    fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero() && self.c.is_zero()
    }

    fn neg(&self) -> Quad {
        Quad {
            a: -&self.a,
            b: -&self.b,
            c: -&self.c,
        }
    }
}

/// `Q` with `sign(Q(t)) = sign(ψ(t) - t)` on the piece.
fn excess_over_identity(piece: &GaugePiece) -> Quad {
    match &piece.formula {
        Formula::Linear { a } => Quad {
            a: Rational::zero(),
            b: a - Rational::one(),
            c: Rational::zero(),
        },
        Formula::Quadratic { a } => Quad {
            a: a.clone(),
            b: -Rational::one(),
            c: Rational::zero(),
        },
        Formula::Mobius { a, b, c, d } => {
            let q = Quad {
                a: -c,
                b: a - d,
                c: b.clone(),
            };
            // The denominator keeps one sign on the piece.
            if (c * &piece.lo + d).is_negative() {
                q.neg()
            } else {
                q
            }
        }
    }
}

/// Some `t` in `[lo, hi) ∩ (0, ∞)` with `q(t) >= 0`, or `None` if there is
/// none. Exact: a quadratic's maximum on an interval sits at the vertex or at
/// an end, and open ends are decided from the value and slope there.
fn find_nonnegative(q: &Quad, lo: &Rational, hi: Option<&Rational>) -> Option<Rational> {
    let inside = |t: &Rational| t.is_positive() && t >= lo && hi.is_none_or(|h| t < h);
    let probe_inside = match hi {
        Some(h) => {
            if lo.is_positive() {
                lo.clone()
            } else {
                h.clone().min(Rational::one()) / Rational::from_integer(2)
            }
        }
        None => {
            if lo.is_positive() {
                lo.clone()
            } else {
                Rational::one()
            }
        }
    };
    if q.is_zero() {
        return Some(probe_inside);
    }
    if lo.is_positive() && !q.eval(lo).is_negative() {
        return Some(lo.clone());
    }
    if q.a.is_negative() {
        let vertex = -&q.b / (Rational::from_integer(2) * &q.a);
        if inside(&vertex) && !q.eval(&vertex).is_negative() {
            return Some(vertex);
        }
    }

    // Open end at 0 (only when the piece starts at 0).
    if lo.is_zero() {
        let v0 = &q.c;
        let positive_near = v0.is_positive()
            || (v0.is_zero() && (q.b.is_positive() || (q.b.is_zero() && q.a.is_positive())));
        if positive_near {
            let mut t = probe_inside.clone();
            loop {
                if q.eval(&t).is_positive() {
                    return Some(t);
                }
                t = t / Rational::from_integer(2);
            }
        }
    }
    match hi {
        Some(h) => {
            let vh = q.eval(h);
            let sh = q.slope(h);
            let positive_near = vh.is_positive()
                || (vh.is_zero() && (sh.is_negative() || (sh.is_zero() && q.a.is_positive())));
            if positive_near {
                let base = if lo.is_positive() {
                    lo.clone()
                } else {
                    Rational::zero()
                };
                let mut gap = h - &base;
                loop {
                    gap = gap / Rational::from_integer(2);
                    let t = h - &gap;
                    if q.eval(&t).is_positive() {
                        return Some(t);
                    }
                }
            }
        }
        None => {
            let grows = q.a.is_positive() || (q.a.is_zero() && q.b.is_positive());
            if grows {
                let mut t = probe_inside.max(Rational::one());
                loop {
                    if q.eval(&t).is_positive() {
                        return Some(t);
                    }
                    t = t * Rational::from_integer(2);
                }
            }
        }
    }
    None
}

/// Replaces a witness by the rational with the smallest denominator that is
/// also a witness, searching denominators up to 64 near the original.
fn simplest_witness(q: &Quad, lo: &Rational, hi: Option<&Rational>, found: Rational) -> Rational {
    const MAX_DENOM: i64 = 64;
    const BUDGET: usize = 20_000;
    let upper = match hi {
        Some(h) => h.clone(),
        None => (&found * Rational::from_integer(2)).max(&found + Rational::one()),
    };
    let inside = |t: &Rational| t.is_positive() && t >= lo && hi.is_none_or(|h| t < h);
    let mut evaluations = 0usize;
    for den in 1..=MAX_DENOM {
        let d = Rational::from_integer(den);
        // Numerators covering [lo, upper].
        let start = (lo * &d).numer().clone() / (lo * &d).denom().clone();
        let mut num = start;
        loop {
            let t = Rational::from(num_rational::BigRational::new(
                num.clone(),
                num_bigint::BigInt::from(den),
            ));
            if t > upper || evaluations >= BUDGET {
                break;
            }
            evaluations += 1;
            if t.denom() == &num_bigint::BigInt::from(den)
                && inside(&t)
                && !q.eval(&t).is_negative()
            {
                return t;
            }
            num += 1;
        }
        if evaluations >= BUDGET {
            break;
        }
    }
    found
}

/// Three-valued outcome of an exact check with a typed witness.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Check<W> {
    Verified,
    Refuted(W),
    Inconclusive(String),
}

impl<W> Check<W> {
    pub fn is_verified(&self) -> bool {
        matches!(self, Check::Verified)
    }

    pub fn is_refuted(&self) -> bool {
        matches!(self, Check::Refuted(_))
    }
}

/// Outcome of the series-convergence test.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SeriesCheck {
    /// Every probe orbit reached 0 or a linear first piece of slope below one.
    Verified,
    /// Orbits contract geometrically to within tolerance, not a proof.
    Evidence,
    /// `s > 0` with `ψ(s) >= s`: the orbit of `s` never decreases.
    Refuted(Rational),
    Inconclusive,
}

/// Exact, re-checkable reason a gauge fails a class condition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GaugeWitness {
    /// `t1 < t2` with `ψ(t1) > ψ(t2)`.
    Decreasing { t1: Rational, t2: Rational },
    /// `t > 0` with `ψ(t) >= t`.
    NotBelowIdentity { t: Rational },
    /// Orbit point `s > 0` with `ψ(s) >= s`.
    SeriesDiverges { s: Rational },
    /// Boundary `t` where the left limit exceeds `ψ(t)`.
    NotUpperSemicontinuous { t: Rational },
}

impl GaugeWitness {
    /// Re-evaluates the witnessed inequality.
    pub fn recheck(&self, psi: &GaugeFunction) -> bool {
        let ev = |t: &Rational| psi.eval(t).ok();
        match self {
            GaugeWitness::Decreasing { t1, t2 } => {
                t1 < t2 && matches!((ev(t1), ev(t2)), (Some(a), Some(b)) if a > b)
            }
            GaugeWitness::NotBelowIdentity { t: s } | GaugeWitness::SeriesDiverges { s } => {
                s.is_positive() && ev(s).is_some_and(|v| &v >= s)
            }
            GaugeWitness::NotUpperSemicontinuous { t } => {
                let Ok(i) = psi.piece_index(t) else {
                    return false;
                };
                if i == 0 || psi.pieces[i].lo != *t {
                    return false;
                }
                match left_limit(&psi.pieces[i - 1].formula, t) {
                    Limit::Finite(l) => l > psi.eval(t).expect("t >= 0"),
                    Limit::PlusInfinity => true,
                    Limit::MinusInfinity => false,
                }
            }
        }
    }
}

impl fmt::Display for GaugeWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GaugeWitness::Decreasing { t1, t2 } => write!(f, "psi({t1}) > psi({t2})"),
            GaugeWitness::NotBelowIdentity { t } => write!(f, "psi({t}) >= {t}"),
            GaugeWitness::SeriesDiverges { s } => write!(f, "orbit point {s} has psi({s}) >= {s}"),
            GaugeWitness::NotUpperSemicontinuous { t } => {
                write!(f, "left limit at {t} exceeds psi({t})")
            }
        }
    }
}

impl GaugeWitness {
    /// Like `Display`, with the gauge's values filled in and the gauge
    /// written as `symbol`.
    pub fn describe(&self, g: &GaugeFunction, symbol: &str) -> String {
        let at = |t: &Rational| match g.eval(t) {
            Ok(v) => format!("{symbol}({t}) = {v}"),
            Err(_) => format!("{symbol}({t}) undefined"),
        };
        match self {
            GaugeWitness::Decreasing { t1, t2 } => format!("{} > {}", at(t1), at(t2)),
            GaugeWitness::NotBelowIdentity { t } => format!("{} >= {t}", at(t)),
            GaugeWitness::SeriesDiverges { s } => format!("orbit stalls at {s}: {} >= {s}", at(s)),
            GaugeWitness::NotUpperSemicontinuous { t } => {
                format!("left limit at {t} exceeds {}", at(t))
            }
        }
    }
}

/// Overall three-valued class membership.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Membership {
    Verified,
    Refuted(GaugeWitness),
    Inconclusive,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GaugeVerdict {
    pub nondecreasing: Check<(Rational, Rational)>,
    pub below_identity: Check<Rational>,
    pub series_convergent: SeriesCheck,
    pub in_psi: Membership,
}

/// Verdict for the φ class: nondecreasing, upper semicontinuous, `φ(t) < t`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PhiVerdict {
    pub nondecreasing: Check<(Rational, Rational)>,
    pub upper_semicontinuous: Check<Rational>,
    pub below_identity: Check<Rational>,
    pub in_phi: Membership,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassifyOptions {
    pub probes: Vec<Rational>,
    pub iterations: usize,
    pub tail_tolerance: Rational,
}

impl Default for ClassifyOptions {
    fn default() -> Self {
        ClassifyOptions {
            probes: default_probes(),
            iterations: 64,
            tail_tolerance: rat(1, 1_000_000),
        }
    }
}

pub fn default_probes() -> Vec<Rational> {
    vec![
        rat(1, 10),
        rat(1, 4),
        rat(1, 2),
        rat(4, 5),
        rat(1, 1),
        rat(2, 1),
        rat(10, 1),
    ]
}

enum Limit {
    Finite(Rational),
    PlusInfinity,
    MinusInfinity,
}

/// Limit of `formula(t)` as `t → x⁻`.
fn left_limit(formula: &Formula, x: &Rational) -> Limit {
    if let Some(v) = formula.eval(x) {
        return Limit::Finite(v);
    }
    let Formula::Mobius { a, b, c, .. } = formula else {
        unreachable!("only the rational form has poles")
    };
    let num = a * x + b;
    if num.is_zero() {
        // Removable: numerator and denominator share the root.
        return Limit::Finite(a / c);
    }
    // Left of the root the denominator has the sign of -c.
    if num.is_positive() == c.is_negative() {
        Limit::PlusInfinity
    } else {
        Limit::MinusInfinity
    }
}

fn check_nondecreasing(psi: &GaugeFunction) -> Check<(Rational, Rational)> {
    for p in &psi.pieces {
        if p.formula.is_strictly_decreasing() {
            return Check::Refuted((p.lo.clone(), p.interior_point()));
        }
    }
    for w in psi.pieces.windows(2) {
        let (left, right) = (&w[0], &w[1]);
        let x = &right.lo;
        let at_x = right.formula.eval(x).expect("inside its piece");
        let exceeds = match left_limit(&left.formula, x) {
            Limit::Finite(l) => l > at_x,
            Limit::PlusInfinity => true,
            Limit::MinusInfinity => false,
        };
        if exceeds {
            // Left piece is nondecreasing here, so points close to x exceed
            // psi(x).
            let mut gap = x - &left.lo;
            loop {
                gap = gap / Rational::from_integer(2);
                let t = x - &gap;
                if left.formula.eval(&t).is_some_and(|v| v > at_x) {
                    return Check::Refuted((t, x.clone()));
                }
            }
        }
    }
    Check::Verified
}

fn check_upper_semicontinuous(psi: &GaugeFunction) -> Check<Rational> {
    for w in psi.pieces.windows(2) {
        let x = &w[1].lo;
        let at_x = w[1].formula.eval(x).expect("inside its piece");
        let bad = match left_limit(&w[0].formula, x) {
            Limit::Finite(l) => l > at_x,
            Limit::PlusInfinity => true,
            Limit::MinusInfinity => false,
        };
        if bad {
            return Check::Refuted(x.clone());
        }
    }
    Check::Verified
}

fn check_below_identity(psi: &GaugeFunction) -> Check<Rational> {
    for p in &psi.pieces {
        let q = excess_over_identity(p);
        if let Some(w) = find_nonnegative(&q, &p.lo, p.hi.as_ref()) {
            let w = simplest_witness(&q, &p.lo, p.hi.as_ref(), w);
            return Check::Refuted(w);
        }
    }
    Check::Verified
}

#[derive(Debug, PartialEq)]
enum OrbitOutcome {
    Proof,
    Evidence,
    Diverges(Rational),
    Unknown,
}

// Orbit operands larger than this are abandoned as inconclusive.
const MAX_ORBIT_BITS: u64 = 1 << 16;
const RATIO_WINDOW: usize = 3;

fn orbit(psi: &GaugeFunction, start: &Rational, iterations: usize, tol: &Rational) -> OrbitOutcome {
    let mut s = start.clone();
    let mut ratios: Vec<Rational> = Vec::new();
    for _ in 0..iterations {
        if s.is_zero() {
            return OrbitOutcome::Proof;
        }
        let i = psi.piece_index(&s).expect("orbit stays nonnegative");
        let piece = &psi.pieces[i];
        let next = piece.formula.eval(&s).expect("inside its piece");
        if next >= s {
            return OrbitOutcome::Diverges(s);
        }
        if next.is_negative() {
            return OrbitOutcome::Unknown;
        }
        if let Formula::Linear { a } = &piece.formula {
            // Trapped in [0, hi) with ratio a < 1 from here on.
            if piece.lo.is_zero() && a < &Rational::one() {
                return OrbitOutcome::Proof;
            }
        }
        ratios.push(&next / &s);
        if ratios.len() >= RATIO_WINDOW {
            let r = ratios[ratios.len() - RATIO_WINDOW..]
                .iter()
                .max()
                .expect("window nonempty")
                .clone();
            if r < Rational::one() {
                let tail = &next / (Rational::one() - &r);
                if &tail < tol {
                    return OrbitOutcome::Evidence;
                }
            }
        }
        if next.bit_size() > MAX_ORBIT_BITS {
            return OrbitOutcome::Unknown;
        }
        s = next;
    }
    OrbitOutcome::Unknown
}

fn check_series(
    psi: &GaugeFunction,
    probes: &[Rational],
    iterations: usize,
    tol: &Rational,
) -> SeriesCheck {
    let mut all_proofs = true;
    let mut inconclusive = false;
    for t in probes {
        match orbit(psi, t, iterations, tol) {
            OrbitOutcome::Proof => {}
            OrbitOutcome::Evidence => all_proofs = false,
            OrbitOutcome::Diverges(s) => return SeriesCheck::Refuted(s),
            OrbitOutcome::Unknown => inconclusive = true,
        }
    }
    if inconclusive {
        SeriesCheck::Inconclusive
    } else if all_proofs {
        SeriesCheck::Verified
    } else {
        SeriesCheck::Evidence
    }
}

/// Classifies `psi` against the class of nondecreasing gauges whose iterate
/// series `Σ ψⁿ(t)` converges.
pub fn classify_gauge(
    psi: &GaugeFunction,
    probes: &[Rational],
    iterations: usize,
    tail_tolerance: &Rational,
) -> Result<GaugeVerdict, GaugeError> {
    if probes.is_empty() {
        return Err(GaugeError::NoProbes);
    }
    if let Some(p) = probes.iter().find(|p| p.is_negative()) {
        return Err(GaugeError::NegativeProbe(p.clone()));
    }
    if iterations < 2 {
        return Err(GaugeError::TooFewIterations(iterations));
    }
    if !tail_tolerance.is_positive() {
        return Err(GaugeError::NonPositiveTolerance(tail_tolerance.clone()));
    }
    let nondecreasing = check_nondecreasing(psi);
    let below_identity = check_below_identity(psi);
    let series_convergent = check_series(psi, probes, iterations, tail_tolerance);

    let in_psi = if let Check::Refuted((t1, t2)) = &nondecreasing {
        Membership::Refuted(GaugeWitness::Decreasing {
            t1: t1.clone(),
            t2: t2.clone(),
        })
    } else if let Check::Refuted(t) = &below_identity {
        Membership::Refuted(GaugeWitness::NotBelowIdentity { t: t.clone() })
    } else if let SeriesCheck::Refuted(s) = &series_convergent {
        Membership::Refuted(GaugeWitness::SeriesDiverges { s: s.clone() })
    } else if nondecreasing.is_verified()
        && below_identity.is_verified()
        && matches!(
            series_convergent,
            SeriesCheck::Verified | SeriesCheck::Evidence
        )
    {
        Membership::Verified
    } else {
        Membership::Inconclusive
    };
    Ok(GaugeVerdict {
        nondecreasing,
        below_identity,
        series_convergent,
        in_psi,
    })
}

/// Classifies `phi` against the class of upper semicontinuous,
/// nondecreasing gauges with `φ(t) < t` for `t > 0`. Inside a piece every
/// closed form is continuous, so semicontinuity is decided at boundaries.
pub fn classify_phi(phi: &GaugeFunction) -> PhiVerdict {
    let nondecreasing = check_nondecreasing(phi);
    let upper_semicontinuous = check_upper_semicontinuous(phi);
    let below_identity = check_below_identity(phi);
    let in_phi = if let Check::Refuted((t1, t2)) = &nondecreasing {
        Membership::Refuted(GaugeWitness::Decreasing {
            t1: t1.clone(),
            t2: t2.clone(),
        })
    } else if let Check::Refuted(t) = &upper_semicontinuous {
        Membership::Refuted(GaugeWitness::NotUpperSemicontinuous { t: t.clone() })
    } else if let Check::Refuted(t) = &below_identity {
        Membership::Refuted(GaugeWitness::NotBelowIdentity { t: t.clone() })
    } else {
        Membership::Verified
    };
    PhiVerdict {
        nondecreasing,
        upper_semicontinuous,
        below_identity,
        in_phi,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lin(a: Rational) -> Formula {
        Formula::Linear { a }
    }

    fn mobius(a: i64, b: i64, c: i64, d: i64) -> Formula {
        Formula::Mobius {
            a: rat(a, 1),
            b: rat(b, 1),
            c: rat(c, 1),
            d: rat(d, 1),
        }
    }

    /// ½t² below 1/2, t/(t+1) above.
    fn quad_then_mobius() -> GaugeFunction {
        GaugeFunction::new(vec![
            GaugePiece::new(
                rat(0, 1),
                Some(rat(1, 2)),
                Formula::Quadratic { a: rat(1, 2) },
            ),
            GaugePiece::new(rat(1, 2), None, mobius(1, 0, 1, 1)),
        ])
        .unwrap()
    }

    /// t/8 below 1/4, (t+1)/(t+2) above.
    fn eighth_then_mobius() -> GaugeFunction {
        GaugeFunction::new(vec![
            GaugePiece::new(rat(0, 1), Some(rat(1, 4)), lin(rat(1, 8))),
            GaugePiece::new(rat(1, 4), None, mobius(1, 1, 1, 2)),
        ])
        .unwrap()
    }

    fn two_slopes() -> GaugeFunction {
        GaugeFunction::new(vec![
            GaugePiece::new(rat(0, 1), Some(rat(1, 1)), lin(rat(3, 4))),
            GaugePiece::new(rat(1, 1), None, lin(rat(5, 6))),
        ])
        .unwrap()
    }

    #[test]
    fn eval_cases() {
        assert_eq!(quad_then_mobius().eval(&rat(4, 5)).unwrap(), rat(4, 9));
        // (9/5)/(14/5); the general value at n/(n+1) is (2n+1)/(3n+2).
        assert_eq!(eighth_then_mobius().eval(&rat(4, 5)).unwrap(), rat(9, 14));
        assert_eq!(two_slopes().eval(&rat(40, 3)).unwrap(), rat(100, 9));
        assert_eq!(quad_then_mobius().eval(&rat(1, 4)).unwrap(), rat(1, 32));
        assert_eq!(
            two_slopes().eval(&rat(-1, 2)),
            Err(GaugeError::NegativeArgument(rat(-1, 2)))
        );
    }

    #[test]
    fn malformed_covers_are_rejected() {
        let f = || lin(rat(1, 2));
        assert_eq!(GaugeFunction::new(vec![]), Err(GaugeError::NoPieces));
        assert!(matches!(
            GaugeFunction::new(vec![GaugePiece::new(rat(1, 1), None, f())]),
            Err(GaugeError::FirstPieceStart(_))
        ));
        assert!(matches!(
            GaugeFunction::new(vec![
                GaugePiece::new(rat(0, 1), Some(rat(1, 1)), f()),
                GaugePiece::new(rat(2, 1), None, f()),
            ]),
            Err(GaugeError::Gap { index: 1, .. })
        ));
        assert_eq!(
            GaugeFunction::new(vec![GaugePiece::new(rat(0, 1), Some(rat(1, 1)), f())]),
            Err(GaugeError::BoundedCover)
        );
        assert!(matches!(
            GaugeFunction::new(vec![
                GaugePiece::new(rat(0, 1), None, f()),
                GaugePiece::new(rat(1, 1), None, f()),
            ]),
            Err(GaugeError::EarlyInfinity(0))
        ));
        // 1/(t - 1) has a pole inside [0, ∞).
        assert!(matches!(
            GaugeFunction::new(vec![GaugePiece::new(rat(0, 1), None, mobius(0, 1, 1, -1))]),
            Err(GaugeError::ZeroDenominator { .. })
        ));
    }

    #[test]
    fn quadratic_then_mobius_is_in_class() {
        let opts = ClassifyOptions {
            probes: vec![rat(1, 10), rat(1, 2), rat(4, 5), rat(2, 1), rat(10, 1)],
            iterations: 64,
            tail_tolerance: rat(1, 1_000_000),
        };
        let v = quad_then_mobius().classify(&opts).unwrap();
        assert_eq!(v.nondecreasing, Check::Verified);
        assert_eq!(v.below_identity, Check::Verified);
        assert_eq!(v.series_convergent, SeriesCheck::Evidence);
        assert_eq!(v.in_psi, Membership::Verified);
    }

    #[test]
    fn eighth_then_mobius_fails_below_identity_at_one_half() {
        let psi = eighth_then_mobius();
        let v = psi.classify(&ClassifyOptions::default()).unwrap();
        assert_eq!(v.below_identity, Check::Refuted(rat(1, 2)));
        assert_eq!(
            v.in_psi,
            Membership::Refuted(GaugeWitness::NotBelowIdentity { t: rat(1, 2) })
        );
        assert_eq!(psi.eval(&rat(1, 2)).unwrap(), rat(3, 5));
        let Membership::Refuted(w) = v.in_psi else {
            unreachable!()
        };
        assert!(w.recheck(&psi));
        // The orbit from 1/4 climbs immediately.
        assert_eq!(v.series_convergent, SeriesCheck::Refuted(rat(1, 4)));
    }

    #[test]
    fn half_identity_is_proved_convergent() {
        let v = GaugeFunction::linear(rat(1, 2))
            .classify(&ClassifyOptions::default())
            .unwrap();
        assert_eq!(v.series_convergent, SeriesCheck::Verified);
        assert_eq!(v.in_psi, Membership::Verified);
    }

    #[test]
    fn two_slope_orbits_reach_the_first_piece() {
        let v = two_slopes().classify(&ClassifyOptions::default()).unwrap();
        assert_eq!(v.series_convergent, SeriesCheck::Verified);
    }

    #[test]
    fn identity_is_refuted_everywhere() {
        let v = GaugeFunction::linear(rat(1, 1))
            .classify(&ClassifyOptions::default())
            .unwrap();
        assert_eq!(v.below_identity, Check::Refuted(rat(1, 1)));
    }

    #[test]
    fn decreasing_pieces_and_downward_jumps_are_refuted() {
        let dec =
            GaugeFunction::new(vec![GaugePiece::new(rat(0, 1), None, mobius(0, 1, 1, 1))]).unwrap();
        let v = dec.classify(&ClassifyOptions::default()).unwrap();
        let Check::Refuted((t1, t2)) = v.nondecreasing else {
            panic!("1/(t+1) decreases")
        };
        assert!(GaugeWitness::Decreasing { t1, t2 }.recheck(&dec));

        let jump = GaugeFunction::new(vec![
            GaugePiece::new(rat(0, 1), Some(rat(1, 1)), lin(rat(1, 2))),
            GaugePiece::new(rat(1, 1), None, lin(rat(1, 4))),
        ])
        .unwrap();
        let Check::Refuted((t1, t2)) = check_nondecreasing(&jump) else {
            panic!("drop from 1/2 to 1/4 at t = 1")
        };
        assert_eq!(t2, rat(1, 1));
        assert!(GaugeWitness::Decreasing { t1, t2 }.recheck(&jump));
        let phi = classify_phi(&jump);
        assert_eq!(phi.upper_semicontinuous, Check::Refuted(rat(1, 1)));
    }

    #[test]
    fn upward_jump_is_upper_semicontinuous() {
        let phi = classify_phi(&quad_then_mobius());
        assert_eq!(phi.upper_semicontinuous, Check::Verified);
        assert_eq!(phi.in_phi, Membership::Verified);
    }

    #[test]
    fn pole_at_a_boundary_is_detected() {
        // t/(1 - t) on [0, 1) blows up before the boundary.
        let g = GaugeFunction::new(vec![
            GaugePiece::new(rat(0, 1), Some(rat(1, 1)), mobius(1, 0, -1, 1)),
            GaugePiece::new(rat(1, 1), None, lin(rat(1, 2))),
        ])
        .unwrap();
        let Check::Refuted((t1, t2)) = check_nondecreasing(&g) else {
            panic!("pole at 1")
        };
        assert!(GaugeWitness::Decreasing { t1, t2 }.recheck(&g));
        assert!(GaugeWitness::NotUpperSemicontinuous { t: rat(1, 1) }.recheck(&g));
    }

    #[test]
    fn touching_identity_only_in_the_limit_is_not_a_witness() {
        // t/(t+1) < t for every t > 0, equality only at 0.
        let g =
            GaugeFunction::new(vec![GaugePiece::new(rat(0, 1), None, mobius(1, 0, 1, 1))]).unwrap();
        assert_eq!(check_below_identity(&g), Check::Verified);
        // 2t on [0,1) exceeds t immediately to the right of 0.
        let h = GaugeFunction::new(vec![
            GaugePiece::new(rat(0, 1), Some(rat(1, 1)), lin(rat(2, 1))),
            GaugePiece::new(rat(1, 1), None, Formula::Linear { a: rat(2, 1) }),
        ])
        .unwrap();
        assert!(check_below_identity(&h).is_refuted());
    }

    #[test]
    fn classification_input_errors() {
        let g = two_slopes();
        assert_eq!(
            classify_gauge(&g, &[], 64, &rat(1, 10)),
            Err(GaugeError::NoProbes)
        );
        assert_eq!(
            classify_gauge(&g, &[rat(1, 1)], 1, &rat(1, 10)),
            Err(GaugeError::TooFewIterations(1))
        );
        assert!(classify_gauge(&g, &[rat(-1, 1)], 64, &rat(1, 10)).is_err());
    }

    #[test]
    fn rescaling_conjugates_values() {
        let g = quad_then_mobius();
        let c = rat(3, 1);
        let h = g.rescaled(&c);
        for t in default_probes() {
            assert_eq!(h.eval(&(&t * &c)).unwrap(), &c * g.eval(&t).unwrap());
        }
    }
}
