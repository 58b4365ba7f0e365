//! Finite metric spaces, their hyperspaces, and the Pompeiu–Hausdorff metric.
//!
//! On a finite space every nonempty subset is closed and bounded, so the
//! hyperspace is the family of all `2^n - 1` nonempty subsets. Subsets are
//! stored as bitmasks ([`PointSet`]); closed intervals of the half-line
//! ([`ClosedInterval`]) are a separate representation with a closed-form
//! Hausdorff distance.
//!
//! ```
//! use fpgraph::metric::FiniteMetricSpace;
//! use fpgraph::rational::rat;
//!
//! // Three points on a line at 0, 1 and 3.
//! let m = FiniteMetricSpace::from_rows(
//!     &["a", "b", "c"],
//!     vec![
//!         vec![rat(0, 1), rat(1, 1), rat(3, 1)],
//!         vec![rat(1, 1), rat(0, 1), rat(2, 1)],
//!         vec![rat(3, 1), rat(2, 1), rat(0, 1)],
//!     ],
//! )
//! .unwrap();
//! let ab = m.set(&["a", "b"]).unwrap();
//! let c = m.set(&["c"]).unwrap();
//! assert_eq!(m.hausdorff(&ab, &c).unwrap(), rat(3, 1));
//! ```

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::rational::Rational;

/// Largest supported space. Hyperspace sweeps enumerate `2^n - 1` sets.
pub const MAX_POINTS: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MetricError {
    #[error("a metric space needs at least one point")]
    Empty,
    #[error("{0} points exceed the supported maximum of {MAX_POINTS}")]
    TooManyPoints(usize),
    #[error("duplicate point label `{0}`")]
    DuplicateLabel(String),
    #[error("distance matrix has {found} rows, expected {expected}")]
    RowCount { expected: usize, found: usize },
    #[error("distance row {row} has {found} entries, expected {expected}")]
    RowLength {
        row: usize,
        expected: usize,
        found: usize,
    },
    #[error("unknown point label `{0}`")]
    UnknownLabel(String),
    #[error("point index {0} is outside the space")]
    PointOutOfRange(usize),
    #[error("set belongs to a space with {found} points, expected {expected}")]
    ForeignSet { expected: usize, found: usize },
    #[error("sets in the hyperspace must be nonempty")]
    EmptySet,
    #[error("invalid set literal `{0}`")]
    SetLiteral(String),
}

/// One violated instance of a metric axiom, with the witnessing labels.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AxiomViolation {
    /// `d(x, x) != 0`.
    Identity { point: String, value: Rational },
    /// `d(x, y) <= 0` for `x != y`.
    Positivity {
        from: String,
        to: String,
        value: Rational,
    },
    /// `d(x, y) != d(y, x)`, reported once per unordered pair.
    Symmetry {
        from: String,
        to: String,
        forward: Rational,
        backward: Rational,
    },
    /// `d(x, z) > d(x, y) + d(y, z)`.
    Triangle { x: String, y: String, z: String },
}

impl fmt::Display for AxiomViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AxiomViolation::Identity { point, value } => {
                write!(f, "identity: d({point},{point}) = {value}, expected 0")
            }
            AxiomViolation::Positivity { from, to, value } => {
                write!(f, "positivity: d({from},{to}) = {value} is not positive")
            }
            AxiomViolation::Symmetry {
                from,
                to,
                forward,
                backward,
            } => write!(
                f,
                "symmetry: d({from},{to}) = {forward} but d({to},{from}) = {backward}"
            ),
            AxiomViolation::Triangle { x, y, z } => {
                write!(f, "triangle: d({x},{z}) > d({x},{y}) + d({y},{z})")
            }
        }
    }
}

/// Checks a raw labelled matrix against the metric axioms.
///
/// Shape problems are structural errors; axiom failures are returned as the
/// full list of violated instances (empty means the matrix is a metric).
pub fn validate_metric(
    labels: &[String],
    dist: &[Vec<Rational>],
) -> Result<Vec<AxiomViolation>, MetricError> {
    let n = labels.len();
    if dist.len() != n {
        return Err(MetricError::RowCount {
            expected: n,
            found: dist.len(),
        });
    }
    for (row, entries) in dist.iter().enumerate() {
        if entries.len() != n {
            return Err(MetricError::RowLength {
                row,
                expected: n,
                found: entries.len(),
            });
        }
    }

    let mut out = Vec::new();
    for i in 0..n {
        if !dist[i][i].is_zero() {
            out.push(AxiomViolation::Identity {
                point: labels[i].clone(),
                value: dist[i][i].clone(),
            });
        }
    }
    for i in 0..n {
        for j in 0..n {
            if i != j && !dist[i][j].is_positive() {
                out.push(AxiomViolation::Positivity {
                    from: labels[i].clone(),
                    to: labels[j].clone(),
                    value: dist[i][j].clone(),
                });
            }
        }
    }
    for i in 0..n {
        for j in i + 1..n {
            if dist[i][j] != dist[j][i] {
                out.push(AxiomViolation::Symmetry {
                    from: labels[i].clone(),
                    to: labels[j].clone(),
                    forward: dist[i][j].clone(),
                    backward: dist[j][i].clone(),
                });
            }
        }
    }
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                if dist[i][k] > &dist[i][j] + &dist[j][k] {
                    out.push(AxiomViolation::Triangle {
                        x: labels[i].clone(),
                        y: labels[j].clone(),
                        z: labels[k].clone(),
                    });
                }
            }
        }
    }
    Ok(out)
}

/// A nonempty subset of a finite metric space, as a bitmask over point
/// indices.
///
/// Sets remember the size of the space they were built for, which is how
/// cross-space arguments are rejected. Ordering is lexicographic on the sorted
/// index sequence, e.g. `{1} < {1,2} < {1,2,3} < {1,3} < {2}`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct PointSet {
    mask: u32,
    space_len: u8,
}

impl PointSet {
    pub fn from_mask(mask: u32, space_len: usize) -> Result<Self, MetricError> {
        if space_len > MAX_POINTS {
            return Err(MetricError::TooManyPoints(space_len));
        }
        if mask == 0 {
            return Err(MetricError::EmptySet);
        }
        if mask >> space_len != 0 {
            return Err(MetricError::PointOutOfRange(
                (31 - mask.leading_zeros()) as usize,
            ));
        }
        Ok(PointSet {
            mask,
            space_len: space_len as u8,
        })
    }

    pub fn from_indices(
        indices: impl IntoIterator<Item = usize>,
        space_len: usize,
    ) -> Result<Self, MetricError> {
        let mut mask = 0u32;
        for i in indices {
            if i >= space_len {
                return Err(MetricError::PointOutOfRange(i));
            }
            mask |= 1 << i;
        }
        Self::from_mask(mask, space_len)
    }

    pub fn mask(&self) -> u32 {
        self.mask
    }

    pub fn space_len(&self) -> usize {
        self.space_len as usize
    }

    pub fn contains(&self, index: usize) -> bool {
        index < 32 && self.mask & (1 << index) != 0
    }

    pub fn len(&self) -> usize {
        self.mask.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn is_subset(&self, other: &PointSet) -> bool {
        self.mask & !other.mask == 0
    }

    /// Member indices in increasing order.
    pub fn indices(&self) -> impl Iterator<Item = usize> + '_ {
        let mask = self.mask;
        (0..self.space_len as usize).filter(move |i| mask & (1 << i) != 0)
    }
}

impl Ord for PointSet {
    fn cmp(&self, other: &Self) -> Ordering {
        self.space_len
            .cmp(&other.space_len)
            .then_with(|| self.indices().cmp(other.indices()))
    }
}

impl PartialOrd for PointSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A finite metric space with labelled points and an exact distance matrix.
///
/// Construction only checks the shape; use [`FiniteMetricSpace::validate`] for
/// the axioms.
#[derive(Clone)]
pub struct FiniteMetricSpace {
    labels: Vec<String>,
    dist: Vec<Vec<Rational>>,
    // rank[i][j] is the position of dist[i][j] in `levels`; min/max over
    // distances only needs the order, so Hausdorff works on ranks.
    rank: Vec<Vec<u32>>,
    levels: Vec<Rational>,
}

impl PartialEq for FiniteMetricSpace {
    fn eq(&self, other: &Self) -> bool {
        self.labels == other.labels && self.dist == other.dist
    }
}

impl Eq for FiniteMetricSpace {}

impl fmt::Debug for FiniteMetricSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteMetricSpace")
            .field("labels", &self.labels)
            .field("dist", &self.dist)
            .finish()
    }
}

impl FiniteMetricSpace {
    pub fn new(labels: Vec<String>, dist: Vec<Vec<Rational>>) -> Result<Self, MetricError> {
        let n = labels.len();
        if n == 0 {
            return Err(MetricError::Empty);
        }
        if n > MAX_POINTS {
            return Err(MetricError::TooManyPoints(n));
        }
        let mut seen = BTreeSet::new();
        for l in &labels {
            if !seen.insert(l.as_str()) {
                return Err(MetricError::DuplicateLabel(l.clone()));
            }
        }
        // Shape check only; axiom violations are not errors here.
        validate_metric(&labels, &dist)?;

        let levels: Vec<Rational> = dist
            .iter()
            .flatten()
            .cloned()
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        let rank = dist
            .iter()
            .map(|row| {
                row.iter()
                    .map(|v| levels.binary_search(v).expect("value is a level") as u32)
                    .collect()
            })
            .collect();
        Ok(FiniteMetricSpace {
            labels,
            dist,
            rank,
            levels,
        })
    }

    pub fn from_rows(labels: &[&str], dist: Vec<Vec<Rational>>) -> Result<Self, MetricError> {
        Self::new(labels.iter().map(|s| s.to_string()).collect(), dist)
    }

    /// Builds a space from a distance function on indices.
    pub fn from_fn(
        labels: &[&str],
        d: impl Fn(usize, usize) -> Rational,
    ) -> Result<Self, MetricError> {
        let n = labels.len();
        let dist = (0..n).map(|i| (0..n).map(|j| d(i, j)).collect()).collect();
        Self::from_rows(labels, dist)
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, index: usize) -> &str {
        &self.labels[index]
    }

    pub fn index_of(&self, label: &str) -> Result<usize, MetricError> {
        self.labels
            .iter()
            .position(|l| l == label)
            .ok_or_else(|| MetricError::UnknownLabel(label.to_string()))
    }

    pub fn distances(&self) -> &[Vec<Rational>] {
        &self.dist
    }

    pub fn d(&self, i: usize, j: usize) -> &Rational {
        &self.dist[i][j]
    }

    pub fn validate(&self) -> Vec<AxiomViolation> {
        validate_metric(&self.labels, &self.dist).expect("shape checked at construction")
    }

    /// Multiplies every distance by `factor` (must be positive).
    pub fn scaled(&self, factor: &Rational) -> FiniteMetricSpace {
        assert!(factor.is_positive(), "scale factor must be positive");
        let dist = self
            .dist
            .iter()
            .map(|row| row.iter().map(|v| v * factor).collect())
            .collect();
        FiniteMetricSpace::new(self.labels.clone(), dist).expect("same shape")
    }

    pub fn set(&self, labels: &[&str]) -> Result<PointSet, MetricError> {
        let idx = labels
            .iter()
            .map(|l| self.index_of(l))
            .collect::<Result<Vec<_>, _>>()?;
        PointSet::from_indices(idx, self.len())
    }

    pub fn singleton(&self, index: usize) -> PointSet {
        PointSet::from_indices([index], self.len()).expect("index in range")
    }

    pub fn full_set(&self) -> PointSet {
        PointSet::from_mask(full_mask(self.len()), self.len()).expect("nonempty space")
    }

    /// Parses `{a,b}` (braces optional) against this space's labels.
    pub fn parse_set(&self, literal: &str) -> Result<PointSet, MetricError> {
        let t = literal.trim();
        let inner = match (t.strip_prefix('{'), t.ends_with('}')) {
            (Some(rest), true) => &rest[..rest.len() - 1],
            (None, false) => t,
            _ => return Err(MetricError::SetLiteral(literal.to_string())),
        };
        let parts: Vec<&str> = inner
            .split(',')
            .map(str::trim)
            .filter(|s| !s.is_empty())
            .collect();
        if parts.is_empty() {
            return Err(MetricError::EmptySet);
        }
        self.set(&parts)
    }

    /// Canonical `{a,b}` rendering.
    pub fn format_set(&self, set: &PointSet) -> String {
        let names: Vec<&str> = set.indices().map(|i| self.label(i)).collect();
        format!("{{{}}}", names.join(","))
    }

    /// Every nonempty subset, in canonical order.
    pub fn hyperspace(&self) -> Vec<PointSet> {
        let n = self.len();
        let mut sets: Vec<PointSet> = (1..=full_mask(n))
            .map(|m| PointSet::from_mask(m, n).expect("nonzero mask in range"))
            .collect();
        sets.sort();
        sets
    }

    fn check(&self, set: &PointSet) -> Result<(), MetricError> {
        if set.space_len() != self.len() {
            return Err(MetricError::ForeignSet {
                expected: self.len(),
                found: set.space_len(),
            });
        }
        Ok(())
    }

    /// `d(x, B) = min_{b in B} d(x, b)`.
    pub fn set_distance(&self, x: usize, set: &PointSet) -> Result<Rational, MetricError> {
        self.check(set)?;
        if x >= self.len() {
            return Err(MetricError::PointOutOfRange(x));
        }
        let r = set
            .indices()
            .map(|b| self.rank[x][b])
            .min()
            .expect("nonempty set");
        Ok(self.levels[r as usize].clone())
    }

    /// Pompeiu–Hausdorff distance between two subsets.
    pub fn hausdorff(&self, a: &PointSet, b: &PointSet) -> Result<Rational, MetricError> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.hausdorff_unchecked(a, b))
    }

    pub(crate) fn hausdorff_unchecked(&self, a: &PointSet, b: &PointSet) -> Rational {
        if a.mask == b.mask {
            return Rational::zero();
        }
        let r = self.directed_rank(a, b).max(self.directed_rank(b, a));
        self.levels[r as usize].clone()
    }

    fn directed_rank(&self, from: &PointSet, to: &PointSet) -> u32 {
        from.indices()
            .map(|x| {
                to.indices()
                    .map(|y| self.rank[x][y])
                    .min()
                    .expect("nonempty set")
            })
            .max()
            .expect("nonempty set")
    }
}

pub(crate) fn full_mask(n: usize) -> u32 {
    if n >= 32 {
        u32::MAX
    } else {
        (1u32 << n) - 1
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IntervalError {
    #[error("interval lower end {lo} exceeds upper end {hi}")]
    Reversed { lo: Rational, hi: Rational },
    #[error("invalid interval literal `{0}`")]
    Literal(String),
}

/// A closed interval `[lo, hi]` with `lo <= hi`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct ClosedInterval {
    lo: Rational,
    hi: Rational,
}

impl ClosedInterval {
    pub fn new(lo: Rational, hi: Rational) -> Result<Self, IntervalError> {
        if lo > hi {
            return Err(IntervalError::Reversed { lo, hi });
        }
        Ok(ClosedInterval { lo, hi })
    }

    pub fn lo(&self) -> &Rational {
        &self.lo
    }

    pub fn hi(&self) -> &Rational {
        &self.hi
    }

    pub fn contains(&self, x: &Rational) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    pub fn is_subset(&self, other: &ClosedInterval) -> bool {
        other.lo <= self.lo && self.hi <= other.hi
    }

    pub fn scaled(&self, factor: &Rational) -> ClosedInterval {
        assert!(factor.is_positive(), "scale factor must be positive");
        ClosedInterval {
            lo: &self.lo * factor,
            hi: &self.hi * factor,
        }
    }
}

impl fmt::Display for ClosedInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{}]", self.lo, self.hi)
    }
}

impl FromStr for ClosedInterval {
    type Err = IntervalError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || IntervalError::Literal(s.to_string());
        let inner = s
            .trim()
            .strip_prefix('[')
            .and_then(|r| r.strip_suffix(']'))
            .ok_or_else(bad)?;
        let (lo, hi) = inner.split_once(',').ok_or_else(bad)?;
        let lo = lo.trim().parse().map_err(|_| bad())?;
        let hi = hi.trim().parse().map_err(|_| bad())?;
        ClosedInterval::new(lo, hi)
    }
}

/// Hausdorff distance of two closed intervals: `max(|a.lo - b.lo|, |a.hi - b.hi|)`.
pub fn hausdorff_interval(a: &ClosedInterval, b: &ClosedInterval) -> Rational {
    let lo = (&a.lo - &b.lo).abs();
    let hi = (&a.hi - &b.hi).abs();
    lo.max(hi)
}
