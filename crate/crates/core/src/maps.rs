//! Set-valued maps `CB(X) → CB(X)`.
//!
//! On a finite space a map is a total table over all `2ⁿ - 1` nonempty
//! subsets. On the half-line it is a first-match list of interval rules.

use thiserror::Error;

use crate::interval::IntervalRuleMap;
use crate::metric::{full_mask, ClosedInterval, FiniteMetricSpace, PointSet};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MapError {
    #[error("table has no row for {0}")]
    MissingRow(String),
    #[error("table has two rows for {0}")]
    DuplicateRow(String),
    #[error("set built for a {found}-point space, map expects {expected} points")]
    ForeignSet { expected: usize, found: usize },
}

/// A map on hyperspace elements of type `S`.
pub trait SetMap<S>: Sync {
    fn apply(&self, s: &S) -> S;

    /// Whether `s` lies in the map's domain (same underlying space).
    fn accepts(&self, s: &S) -> bool;

    /// Exact range over the whole hyperspace, canonical order, no repeats.
    fn range(&self) -> Vec<S>;

    /// Sets the map mentions explicitly; extra candidates for preimage search.
    fn landmarks(&self) -> Vec<S>;
}

/// Total table over the nonempty subsets of an `n`-point space.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TableMap {
    n: usize,
    // Indexed by mask - 1.
    outputs: Vec<PointSet>,
}

impl TableMap {
    /// Builds from explicit rows; every nonempty subset must appear once.
    pub fn new(
        space: &FiniteMetricSpace,
        rows: impl IntoIterator<Item = (PointSet, PointSet)>,
    ) -> Result<Self, MapError> {
        let n = space.len();
        let mut outputs: Vec<Option<PointSet>> = vec![None; full_mask(n) as usize];
        for (input, output) in rows {
            for s in [&input, &output] {
                if s.space_len() != n {
                    return Err(MapError::ForeignSet {
                        expected: n,
                        found: s.space_len(),
                    });
                }
            }
            let slot = &mut outputs[input.mask() as usize - 1];
            if slot.is_some() {
                return Err(MapError::DuplicateRow(space.format_set(&input)));
            }
            *slot = Some(output);
        }
        let mut missing = space
            .hyperspace()
            .into_iter()
            .filter(|s| outputs[s.mask() as usize - 1].is_none());
        if let Some(s) = missing.next() {
            return Err(MapError::MissingRow(space.format_set(&s)));
        }
        Ok(TableMap {
            n,
            outputs: outputs.into_iter().map(|o| o.expect("checked")).collect(),
        })
    }

    pub fn from_fn(space: &FiniteMetricSpace, f: impl Fn(&PointSet) -> PointSet) -> Self {
        let n = space.len();
        let outputs = (1..=full_mask(n))
            .map(|m| {
                let s = PointSet::from_mask(m, n).expect("nonzero mask");
                let out = f(&s);
                assert_eq!(out.space_len(), n, "output must lie in the same space");
                out
            })
            .collect();
        TableMap { n, outputs }
    }

    pub fn identity(space: &FiniteMetricSpace) -> Self {
        Self::from_fn(space, |s| *s)
    }

    pub fn constant(space: &FiniteMetricSpace, value: PointSet) -> Self {
        Self::from_fn(space, |_| value)
    }

    pub fn space_len(&self) -> usize {
        self.n
    }

    /// `(input, output)` rows in canonical input order.
    pub fn rows(&self) -> Vec<(PointSet, PointSet)> {
        let mut rows: Vec<(PointSet, PointSet)> = self
            .outputs
            .iter()
            .enumerate()
            .map(|(i, out)| {
                (
                    PointSet::from_mask(i as u32 + 1, self.n).expect("nonzero mask"),
                    *out,
                )
            })
            .collect();
        rows.sort();
        rows
    }
}

impl SetMap<PointSet> for TableMap {
    fn apply(&self, s: &PointSet) -> PointSet {
        assert_eq!(s.space_len(), self.n, "set from a different space");
        self.outputs[s.mask() as usize - 1]
    }

    fn accepts(&self, s: &PointSet) -> bool {
        s.space_len() == self.n
    }

    fn range(&self) -> Vec<PointSet> {
        let mut out = self.outputs.clone();
        out.sort();
        out.dedup();
        out
    }

    fn landmarks(&self) -> Vec<PointSet> {
        self.range()
    }
}

impl SetMap<ClosedInterval> for IntervalRuleMap {
    fn apply(&self, s: &ClosedInterval) -> ClosedInterval {
        IntervalRuleMap::apply(self, s)
    }

    fn accepts(&self, s: &ClosedInterval) -> bool {
        !s.lo().is_negative()
    }

    fn range(&self) -> Vec<ClosedInterval> {
        IntervalRuleMap::range(self)
    }

    fn landmarks(&self) -> Vec<ClosedInterval> {
        IntervalRuleMap::landmarks(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn space(n: usize) -> FiniteMetricSpace {
        let labels: Vec<String> = (1..=n).map(|i| i.to_string()).collect();
        let labels: Vec<&str> = labels.iter().map(String::as_str).collect();
        FiniteMetricSpace::from_fn(&labels, |i, j| if i == j { rat(0, 1) } else { rat(1, 1) })
            .unwrap()
    }

    #[test]
    fn table_requires_every_subset() {
        let x = space(2);
        let a = x.set(&["1"]).unwrap();
        let err = TableMap::new(&x, [(a, a)]).unwrap_err();
        assert_eq!(err, MapError::MissingRow("{1,2}".into()));
        let dup = TableMap::new(&x, [(a, a), (a, a)]).unwrap_err();
        assert_eq!(dup, MapError::DuplicateRow("{1}".into()));
    }

    #[test]
    fn identity_and_constant() {
        let x = space(3);
        let id = TableMap::identity(&x);
        let c = TableMap::constant(&x, x.singleton(0));
        for s in x.hyperspace() {
            assert_eq!(id.apply(&s), s);
            assert_eq!(c.apply(&s), x.singleton(0));
        }
        assert_eq!(id.range().len(), 7);
        assert_eq!(c.range(), vec![x.singleton(0)]);
        assert_eq!(TableMap::new(&x, id.rows()).unwrap(), id);
    }
}
