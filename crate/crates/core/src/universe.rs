//! The hyperspace a certification runs over.
//!
//! A [`Universe`] bundles a set representation with its Hausdorff metric, a
//! graph, and the finite family of sets that sweeps range over. For a finite
//! space the family is all of `CB(X)`; for the half-line it is a declared
//! probe family of intervals.

use crate::graph::{DirectedGraph, Lift, PStar};
use crate::interval::PointMapGraph;
use crate::metric::{hausdorff_interval, ClosedInterval, FiniteMetricSpace, PointSet};
use crate::rational::Rational;

pub trait Universe: Sync {
    type Set: Clone + Eq + Ord + std::hash::Hash + std::fmt::Debug + Send + Sync;

    fn hausdorff(&self, a: &Self::Set, b: &Self::Set) -> Rational;

    /// Sets swept by certification, canonical order.
    fn family(&self) -> Vec<Self::Set>;

    fn set_edge(&self, a: &Self::Set, b: &Self::Set, lift: Lift) -> bool;

    /// `A R B`: a path of length at least one from some `a ∈ A` to some `b ∈ B`.
    fn relation(&self, a: &Self::Set, b: &Self::Set) -> bool;

    /// `Err((x, y))` names two points in different weak components.
    fn weak_connectivity(&self) -> Result<(), (String, String)>;

    /// A point without a loop, if any.
    fn missing_loop(&self) -> Option<String>;

    fn p_star(&self) -> PStar;

    fn show(&self, s: &Self::Set) -> String;
}

/// All nonempty subsets of a finite space.
#[derive(Debug, Clone, Copy)]
pub struct FiniteUniverse<'a> {
    pub space: &'a FiniteMetricSpace,
    pub graph: &'a DirectedGraph,
}

impl<'a> FiniteUniverse<'a> {
    pub fn new(space: &'a FiniteMetricSpace, graph: &'a DirectedGraph) -> Self {
        assert_eq!(
            space.len(),
            graph.vertex_count(),
            "graph must live on the space's points"
        );
        FiniteUniverse { space, graph }
    }
}

impl Universe for FiniteUniverse<'_> {
    type Set = PointSet;

    fn hausdorff(&self, a: &PointSet, b: &PointSet) -> Rational {
        self.space.hausdorff_unchecked(a, b)
    }

    fn family(&self) -> Vec<PointSet> {
        self.space.hyperspace()
    }

    fn set_edge(&self, a: &PointSet, b: &PointSet, lift: Lift) -> bool {
        self.graph.set_edge_unchecked(a, b, lift)
    }

    fn relation(&self, a: &PointSet, b: &PointSet) -> bool {
        self.graph.relation_unchecked(a, b)
    }

    fn weak_connectivity(&self) -> Result<(), (String, String)> {
        let comps = self.graph.weak_components();
        if comps.len() == 1 {
            return Ok(());
        }
        let first = |mask: u32| self.space.label(mask.trailing_zeros() as usize).to_string();
        Err((first(comps[0]), first(comps[1])))
    }

    fn missing_loop(&self) -> Option<String> {
        (0..self.space.len())
            .find(|&i| !self.graph.has_edge(i, i))
            .map(|i| self.space.label(i).to_string())
    }

    fn p_star(&self) -> PStar {
        self.graph.property_p_star()
    }

    fn show(&self, s: &PointSet) -> String {
        self.space.format_set(s)
    }
}

/// Closed intervals of `[0, ∞)` with the graph of a point map, swept over a
/// declared probe family.
#[derive(Debug, Clone)]
pub struct IntervalUniverse<'a> {
    probes: Vec<ClosedInterval>,
    pub graph: &'a PointMapGraph,
}

impl<'a> IntervalUniverse<'a> {
    pub fn new(probes: &[ClosedInterval], graph: &'a PointMapGraph) -> Self {
        let mut probes = probes.to_vec();
        probes.sort();
        probes.dedup();
        IntervalUniverse { probes, graph }
    }
}

impl Universe for IntervalUniverse<'_> {
    type Set = ClosedInterval;

    fn hausdorff(&self, a: &ClosedInterval, b: &ClosedInterval) -> Rational {
        hausdorff_interval(a, b)
    }

    fn family(&self) -> Vec<ClosedInterval> {
        self.probes.clone()
    }

    fn set_edge(&self, a: &ClosedInterval, b: &ClosedInterval, lift: Lift) -> bool {
        self.graph.set_edge(a, b, lift)
    }

    fn relation(&self, a: &ClosedInterval, b: &ClosedInterval) -> bool {
        self.graph.relation(a, b)
    }

    fn weak_connectivity(&self) -> Result<(), (String, String)> {
        self.graph
            .weak_connectivity()
            .map_err(|(x, y)| (x.to_string(), y.to_string()))
    }

    fn missing_loop(&self) -> Option<String> {
        self.graph.missing_loop().map(|x| x.to_string())
    }

    fn p_star(&self) -> PStar {
        PStar::Inconclusive(
            "infinite space: the property quantifies over all convergent sequences and is not \
             decided from a finite description"
                .to_string(),
        )
    }

    fn show(&self, s: &ClosedInterval) -> String {
        s.to_string()
    }
}
