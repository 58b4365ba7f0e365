//! Closed intervals of the half-line as hyperspace elements, graphs induced
//! by a piecewise-constant point map, and case-defined interval maps.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::graph::Lift;
use crate::metric::ClosedInterval;
use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IntervalMapError {
    #[error("invalid region literal `{0}`")]
    RegionLiteral(String),
    #[error("invalid rule predicate `{0}`")]
    PredicateLiteral(String),
    #[error("point map needs at least one rule")]
    NoRules,
    #[error("regions must partition [0, inf): {0}")]
    NotAPartition(String),
    #[error("target {0} is negative")]
    NegativeTarget(Rational),
    #[error("rule list must be nonempty")]
    NoIntervalRules,
    #[error("rule {0} is a catch-all but is not last")]
    EarlyCatchAll(usize),
    #[error("last rule must be `otherwise`")]
    NotExhaustive,
}

/// A convex piece of `[0, ∞)` with open or closed ends; `hi = None` is `+∞`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Region {
    pub lo: Rational,
    pub lo_closed: bool,
    pub hi: Option<Rational>,
    pub hi_closed: bool,
}

impl Region {
    pub fn contains(&self, x: &Rational) -> bool {
        let above = if self.lo_closed {
            x >= &self.lo
        } else {
            x > &self.lo
        };
        let below = match &self.hi {
            None => true,
            Some(h) if self.hi_closed => x <= h,
            Some(h) => x < h,
        };
        above && below
    }

    pub fn is_empty(&self) -> bool {
        match &self.hi {
            None => false,
            Some(h) => h < &self.lo || (h == &self.lo && !(self.lo_closed && self.hi_closed)),
        }
    }

    /// Whether the region and `iv` share a point.
    pub fn meets(&self, iv: &ClosedInterval) -> bool {
        let (lo, lo_closed) = if iv.lo() > &self.lo {
            (iv.lo(), true)
        } else if iv.lo() == &self.lo {
            (iv.lo(), self.lo_closed)
        } else {
            (&self.lo, self.lo_closed)
        };
        let (hi, hi_closed) = match &self.hi {
            Some(h) if h < iv.hi() => (h, self.hi_closed),
            Some(h) if h == iv.hi() => (h, self.hi_closed),
            _ => (iv.hi(), true),
        };
        lo < hi || (lo == hi && lo_closed && hi_closed)
    }

    /// Some point of the region other than `avoid`, if one exists.
    fn point_other_than(&self, avoid: &Rational) -> Option<Rational> {
        let mut candidates = Vec::new();
        if self.lo_closed {
            candidates.push(self.lo.clone());
        }
        match &self.hi {
            Some(h) => {
                candidates.push(self.lo.midpoint(h));
                if self.hi_closed {
                    candidates.push(h.clone());
                }
            }
            None => candidates.push(&self.lo + Rational::one()),
        }
        candidates
            .into_iter()
            .find(|c| c != avoid && self.contains(c))
    }
}

impl fmt::Display for Region {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let open = if self.lo_closed { '[' } else { '(' };
        match &self.hi {
            None => write!(f, "{open}{},inf)", self.lo),
            Some(h) => {
                let close = if self.hi_closed { ']' } else { ')' };
                write!(f, "{open}{},{h}{close}", self.lo)
            }
        }
    }
}

impl FromStr for Region {
    type Err = IntervalMapError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || IntervalMapError::RegionLiteral(s.to_string());
        let t = s.trim();
        let lo_closed = match t.chars().next() {
            Some('[') => true,
            Some('(') => false,
            _ => return Err(bad()),
        };
        let hi_closed = match t.chars().last() {
            Some(']') => true,
            Some(')') => false,
            _ => return Err(bad()),
        };
        let inner = &t[1..t.len() - 1];
        let (lo, hi) = inner.split_once(',').ok_or_else(bad)?;
        let lo: Rational = lo.trim().parse().map_err(|_| bad())?;
        let hi = match hi.trim() {
            "inf" => {
                if hi_closed {
                    return Err(bad());
                }
                None
            }
            h => Some(h.parse::<Rational>().map_err(|_| bad())?),
        };
        let r = Region {
            lo,
            lo_closed,
            hi,
            hi_closed,
        };
        if r.lo.is_negative() || r.is_empty() {
            return Err(bad());
        }
        Ok(r)
    }
}

/// Graph on `[0, ∞)` with an edge `a → f(a)` for a piecewise-constant `f`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointMapGraph {
    rules: Vec<(Region, Rational)>,
}

impl PointMapGraph {
    /// `rules` must list regions left to right, partitioning `[0, ∞)`.
    pub fn new(rules: Vec<(Region, Rational)>) -> Result<Self, IntervalMapError> {
        let partition = |msg: String| Err(IntervalMapError::NotAPartition(msg));
        let Some((first, _)) = rules.first() else {
            return Err(IntervalMapError::NoRules);
        };
        if !first.lo.is_zero() || !first.lo_closed {
            return partition(format!("first region {first} must start with [0"));
        }
        for (i, (region, target)) in rules.iter().enumerate() {
            if target.is_negative() {
                return Err(IntervalMapError::NegativeTarget(target.clone()));
            }
            if let Some((next, _)) = rules.get(i + 1) {
                match &region.hi {
                    None => return partition(format!("{region} is unbounded but not last")),
                    Some(h) if h != &next.lo || region.hi_closed == next.lo_closed => {
                        return partition(format!("{region} and {next} do not abut exactly"))
                    }
                    _ => {}
                }
            } else if region.hi.is_some() {
                return partition(format!("last region {region} must extend to inf"));
            }
        }
        Ok(PointMapGraph { rules })
    }

    pub fn rules(&self) -> &[(Region, Rational)] {
        &self.rules
    }

    fn rule_of(&self, x: &Rational) -> usize {
        self.rules
            .iter()
            .position(|(r, _)| r.contains(x))
            .expect("regions cover [0, inf)")
    }

    pub fn image(&self, x: &Rational) -> &Rational {
        &self.rules[self.rule_of(x)].1
    }

    pub fn set_edge(&self, a: &ClosedInterval, b: &ClosedInterval, lift: Lift) -> bool {
        let forward = |a: &ClosedInterval, b: &ClosedInterval| {
            self.rules.iter().any(|(r, t)| r.meets(a) && b.contains(t))
        };
        match lift {
            Lift::Directed => forward(a, b),
            Lift::Undirected => forward(a, b) || forward(b, a),
        }
    }

    /// Points reachable from `a` by paths of length at least one. All such
    /// points are targets, so the set is finite.
    fn reach(&self, a: &ClosedInterval) -> Vec<Rational> {
        let mut seen: Vec<Rational> = Vec::new();
        let mut frontier: Vec<Rational> = self
            .rules
            .iter()
            .filter(|(r, _)| r.meets(a))
            .map(|(_, t)| t.clone())
            .collect();
        while let Some(t) = frontier.pop() {
            if seen.contains(&t) {
                continue;
            }
            frontier.push(self.image(&t).clone());
            seen.push(t);
        }
        seen
    }

    pub fn relation(&self, a: &ClosedInterval, b: &ClosedInterval) -> bool {
        self.reach(a).iter().any(|p| b.contains(p))
    }

    /// `Err((x, y))` names points in different weak components.
    pub fn weak_connectivity(&self) -> Result<(), (Rational, Rational)> {
        let n = self.rules.len();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(parent: &mut [usize], mut i: usize) -> usize {
            while parent[i] != i {
                parent[i] = parent[parent[i]];
                i = parent[i];
            }
            i
        }
        for (i, (_, t)) in self.rules.iter().enumerate() {
            let j = self.rule_of(t);
            let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
            parent[ri] = rj;
        }
        let root0 = find(&mut parent, 0);
        for i in 1..n {
            if find(&mut parent, i) != root0 {
                return Err((self.rules[0].1.clone(), self.rules[i].1.clone()));
            }
        }
        Ok(())
    }

    /// A point without a loop, i.e. with `f(x) != x`.
    pub fn missing_loop(&self) -> Option<Rational> {
        self.rules.iter().find_map(|(r, t)| r.point_other_than(t))
    }
}

/// Predicate vocabulary for case-defined interval maps.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IntervalPredicate {
    SubsetOf(ClosedInterval),
    Equals(ClosedInterval),
    Otherwise,
}

impl IntervalPredicate {
    pub fn matches(&self, u: &ClosedInterval) -> bool {
        match self {
            IntervalPredicate::SubsetOf(i) => u.is_subset(i),
            IntervalPredicate::Equals(i) => u == i,
            IntervalPredicate::Otherwise => true,
        }
    }
}

impl fmt::Display for IntervalPredicate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IntervalPredicate::SubsetOf(i) => write!(f, "subset_of {i}"),
            IntervalPredicate::Equals(i) => write!(f, "equals {i}"),
            IntervalPredicate::Otherwise => f.write_str("otherwise"),
        }
    }
}

impl FromStr for IntervalPredicate {
    type Err = IntervalMapError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || IntervalMapError::PredicateLiteral(s.to_string());
        let t = s.trim();
        if t == "otherwise" {
            return Ok(IntervalPredicate::Otherwise);
        }
        let (word, rest) = t.split_once(' ').ok_or_else(bad)?;
        let iv: ClosedInterval = rest.trim().parse().map_err(|_| bad())?;
        match word {
            "subset_of" => Ok(IntervalPredicate::SubsetOf(iv)),
            "equals" => Ok(IntervalPredicate::Equals(iv)),
            _ => Err(bad()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntervalRule {
    pub when: IntervalPredicate,
    pub then: ClosedInterval,
}

/// First-match rule list ending in a catch-all.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntervalRuleMap {
    rules: Vec<IntervalRule>,
}

impl IntervalRuleMap {
    pub fn new(rules: Vec<IntervalRule>) -> Result<Self, IntervalMapError> {
        if rules.is_empty() {
            return Err(IntervalMapError::NoIntervalRules);
        }
        let last = rules.len() - 1;
        if let Some(i) = rules[..last]
            .iter()
            .position(|r| r.when == IntervalPredicate::Otherwise)
        {
            return Err(IntervalMapError::EarlyCatchAll(i));
        }
        if rules[last].when != IntervalPredicate::Otherwise {
            return Err(IntervalMapError::NotExhaustive);
        }
        Ok(IntervalRuleMap { rules })
    }

    pub fn rules(&self) -> &[IntervalRule] {
        &self.rules
    }

    pub fn apply(&self, u: &ClosedInterval) -> ClosedInterval {
        self.rules
            .iter()
            .find(|r| r.when.matches(u))
            .expect("last rule is a catch-all")
            .then
            .clone()
    }

    /// Whether some interval reaches rule `k` past all earlier rules.
    fn rule_reachable(&self, k: usize) -> bool {
        let earlier = &self.rules[..k];
        let escapes = |j: &ClosedInterval| earlier.iter().all(|r| !r.when.matches(j));
        match &self.rules[k].when {
            IntervalPredicate::Equals(i) => escapes(i),
            IntervalPredicate::SubsetOf(i) => {
                if escapes(i) {
                    return true;
                }
                // `i` itself is taken by an earlier `equals`; a slightly
                // shrunk subinterval escapes whatever `i` escapes by subset.
                if i.lo() == i.hi() {
                    return false;
                }
                let covered_by_subset = earlier
                    .iter()
                    .any(|r| matches!(&r.when, IntervalPredicate::SubsetOf(j) if i.is_subset(j)));
                !covered_by_subset
            }
            // Intervals are bounded, so an interval longer than every
            // earlier one escapes all of them.
            IntervalPredicate::Otherwise => true,
        }
    }

    /// Exact range over all of the hyperspace, in canonical order.
    pub fn range(&self) -> Vec<ClosedInterval> {
        let mut out: Vec<ClosedInterval> = (0..self.rules.len())
            .filter(|&k| self.rule_reachable(k))
            .map(|k| self.rules[k].then.clone())
            .collect();
        out.sort();
        out.dedup();
        out
    }

    /// Every interval named by a predicate or an output.
    pub fn landmarks(&self) -> Vec<ClosedInterval> {
        let mut out = Vec::new();
        for r in &self.rules {
            match &r.when {
                IntervalPredicate::SubsetOf(i) | IntervalPredicate::Equals(i) => {
                    out.push(i.clone())
                }
                IntervalPredicate::Otherwise => {}
            }
            out.push(r.then.clone());
        }
        out.sort();
        out.dedup();
        out
    }
}
