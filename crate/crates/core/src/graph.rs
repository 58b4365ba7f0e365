//! Directed graphs on a finite space and the structure they induce on the
//! hyperspace.
//!
//! Edges between *sets* are lifted existentially: there is an edge from `A`
//! to `B` when some `a ∈ A` has an edge to some `b ∈ B`. Likewise `A R B`
//! holds when some `a ∈ A` reaches some `b ∈ B` along a directed path of
//! length at least one. Reachability is computed once, at construction, as a
//! transitive closure over bitmasks.

use std::fmt;

use thiserror::Error;

use crate::metric::{FiniteMetricSpace, PointSet};
use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("a graph needs at least one vertex")]
    EmptyVertexSet,
    #[error("edge endpoint {0} is not a vertex")]
    VertexOutOfRange(usize),
    #[error("set belongs to a space with {found} points, graph has {expected} vertices")]
    ForeignSet { expected: usize, found: usize },
    #[error("epsilon must be positive, got {0}")]
    NonPositiveEpsilon(Rational),
    #[error("set family must be nonempty")]
    EmptyFamily,
}

/// How an edge between two sets is read.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Lift {
    /// Some `(a, b)` with `a ∈ A`, `b ∈ B` is an edge of `G`.
    #[default]
    Directed,
    /// The same test on the symmetrisation `G̃`.
    Undirected,
}

/// A directed graph without parallel edges on the points `0..n` of a finite
/// space.
#[derive(Clone, PartialEq, Eq)]
pub struct DirectedGraph {
    n: usize,
    out: Vec<u32>,
    closure: Vec<u32>,
}

impl fmt::Debug for DirectedGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("DirectedGraph")
            .field("n", &self.n)
            .field("edges", &self.edges())
            .finish()
    }
}

impl DirectedGraph {
    pub fn new(
        n: usize,
        edges: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self, GraphError> {
        if n == 0 {
            return Err(GraphError::EmptyVertexSet);
        }
        if n > crate::metric::MAX_POINTS {
            return Err(GraphError::VertexOutOfRange(n - 1));
        }
        let mut out = vec![0u32; n];
        for (a, b) in edges {
            if a >= n {
                return Err(GraphError::VertexOutOfRange(a));
            }
            if b >= n {
                return Err(GraphError::VertexOutOfRange(b));
            }
            out[a] |= 1 << b;
        }
        Ok(Self::from_adjacency(out))
    }

    /// `edges` plus a loop at every vertex.
    pub fn with_all_loops(
        n: usize,
        edges: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self, GraphError> {
        Self::new(n, edges.into_iter().chain((0..n).map(|i| (i, i))))
    }

    fn from_adjacency(out: Vec<u32>) -> Self {
        let n = out.len();
        // Warshall on bitmask rows.
        let mut closure = out.clone();
        for k in 0..n {
            let bit = 1u32 << k;
            let row_k = closure[k];
            for row in closure.iter_mut() {
                if *row & bit != 0 {
                    *row |= row_k;
                }
            }
        }
        DirectedGraph { n, out, closure }
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        a < self.n && b < self.n && self.out[a] & (1 << b) != 0
    }

    /// Successor mask of vertex `a`.
    pub fn successors(&self, a: usize) -> u32 {
        self.out[a]
    }

    /// Vertices reachable from `a` by a path of length at least one.
    pub fn reachable(&self, a: usize) -> u32 {
        self.closure[a]
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        (0..self.n)
            .flat_map(|a| {
                (0..self.n)
                    .filter(move |&b| self.out[a] & (1 << b) != 0)
                    .map(move |b| (a, b))
            })
            .collect()
    }

    pub fn edge_count(&self) -> usize {
        self.out.iter().map(|m| m.count_ones() as usize).sum()
    }

    /// True iff `(x, x)` is an edge for every vertex.
    pub fn has_all_loops(&self) -> bool {
        (0..self.n).all(|i| self.out[i] & (1 << i) != 0)
    }

    pub fn is_symmetric(&self) -> bool {
        self.edges().iter().all(|&(a, b)| self.has_edge(b, a))
    }

    pub fn is_subgraph_of(&self, other: &DirectedGraph) -> bool {
        self.n == other.n && self.out.iter().zip(&other.out).all(|(a, b)| a & !b == 0)
    }

    /// The reversed graph `G⁻¹`.
    pub fn inverse(&self) -> DirectedGraph {
        let mut out = vec![0u32; self.n];
        for (a, b) in self.edges() {
            out[b] |= 1 << a;
        }
        Self::from_adjacency(out)
    }

    /// The symmetrisation `G̃ = G ∪ G⁻¹`.
    pub fn symmetrized(&self) -> DirectedGraph {
        let inv = self.inverse();
        let out = self.out.iter().zip(&inv.out).map(|(a, b)| a | b).collect();
        Self::from_adjacency(out)
    }

    /// `(G⁻¹, G̃)`.
    pub fn derived_graphs(&self) -> (DirectedGraph, DirectedGraph) {
        (self.inverse(), self.symmetrized())
    }

    fn check(&self, set: &PointSet) -> Result<(), GraphError> {
        if set.space_len() != self.n {
            return Err(GraphError::ForeignSet {
                expected: self.n,
                found: set.space_len(),
            });
        }
        Ok(())
    }

    /// Some `a ∈ A`, `b ∈ B` with `(a, b)` an edge.
    pub fn set_edge(&self, a: &PointSet, b: &PointSet) -> Result<bool, GraphError> {
        self.set_edge_lifted(a, b, Lift::Directed)
    }

    pub fn set_edge_lifted(
        &self,
        a: &PointSet,
        b: &PointSet,
        lift: Lift,
    ) -> Result<bool, GraphError> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.set_edge_unchecked(a, b, lift))
    }

    pub(crate) fn set_edge_unchecked(&self, a: &PointSet, b: &PointSet, lift: Lift) -> bool {
        let forward = a.indices().any(|x| self.out[x] & b.mask() != 0);
        match lift {
            Lift::Directed => forward,
            Lift::Undirected => forward || b.indices().any(|x| self.out[x] & a.mask() != 0),
        }
    }

    /// `A R B`: some `a ∈ A` reaches some `b ∈ B` by a directed path.
    pub fn relation_r(&self, a: &PointSet, b: &PointSet) -> Result<bool, GraphError> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.relation_unchecked(a, b))
    }

    pub(crate) fn relation_unchecked(&self, a: &PointSet, b: &PointSet) -> bool {
        self.reach_of(a) & b.mask() != 0
    }

    pub(crate) fn reach_of(&self, a: &PointSet) -> u32 {
        a.indices().fold(0, |acc, x| acc | self.closure[x])
    }

    /// Transitivity of `R` over `family`; `Some((A, B, C))` is a triple with
    /// `A R B`, `B R C` but not `A R C`.
    pub fn r_transitive(
        &self,
        family: &[PointSet],
    ) -> Result<Option<(PointSet, PointSet, PointSet)>, GraphError> {
        if family.is_empty() {
            return Err(GraphError::EmptyFamily);
        }
        for s in family {
            self.check(s)?;
        }
        Ok(transitivity_witness(family, |a, b| {
            self.relation_unchecked(a, b)
        }))
    }

    /// Connected components of `G̃`, as vertex masks ordered by lowest member.
    pub fn weak_components(&self) -> Vec<u32> {
        let sym = self.symmetrized();
        let mut seen = 0u32;
        let mut comps = Vec::new();
        for v in 0..self.n {
            if seen & (1 << v) != 0 {
                continue;
            }
            let comp = (1u32 << v) | sym.closure[v];
            seen |= comp;
            comps.push(comp);
        }
        comps
    }

    /// `G̃` is connected.
    pub fn weakly_connected(&self) -> bool {
        self.weak_components().len() == 1
    }

    /// Every ordered pair of `family` (both orders, including a set with
    /// itself) is joined by a lifted edge; otherwise the first failing pair.
    pub fn subset_complete(
        &self,
        family: &[PointSet],
    ) -> Result<Option<(PointSet, PointSet)>, GraphError> {
        if family.is_empty() {
            return Err(GraphError::EmptyFamily);
        }
        for s in family {
            self.check(s)?;
        }
        Ok(completeness_witness(family, |a, b| {
            self.set_edge_unchecked(a, b, Lift::Directed)
        }))
    }

    /// Whether the stability condition on convergent sequences holds for the
    /// trivial reason available on finite spaces.
    pub fn property_p_star(&self) -> PStar {
        if self.has_all_loops() {
            PStar::HoldsTrivially(
                "finite space: the least positive Hausdorff distance is bounded away from 0, so a \
                 convergent sequence is eventually constant at its limit, and the loop at each \
                 point gives an edge between the limit and those terms"
                    .to_string(),
            )
        } else {
            PStar::Inconclusive(
                "graph lacks a loop at some vertex; the finite-space argument does not apply"
                    .to_string(),
            )
        }
    }
}

/// Verdict on the sequence-stability property of a graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PStar {
    HoldsTrivially(String),
    Inconclusive(String),
}

impl PStar {
    pub fn holds(&self) -> bool {
        matches!(self, PStar::HoldsTrivially(_))
    }

    pub fn justification(&self) -> &str {
        match self {
            PStar::HoldsTrivially(s) | PStar::Inconclusive(s) => s,
        }
    }
}

/// Threshold graph `{(a, b) : 0 < d(a, b) < ε}` and whether the space is
/// ε-chainable (every two points joined by steps shorter than ε).
pub fn epsilon_chain_graph(
    m: &FiniteMetricSpace,
    epsilon: &Rational,
) -> Result<(DirectedGraph, bool), GraphError> {
    if !epsilon.is_positive() {
        return Err(GraphError::NonPositiveEpsilon(epsilon.clone()));
    }
    let n = m.len();
    let mut edges = Vec::new();
    for a in 0..n {
        for b in 0..n {
            let d = m.d(a, b);
            if d.is_positive() && d < epsilon {
                edges.push((a, b));
            }
        }
    }
    let g = DirectedGraph::new(n, edges)?;
    let chainable = g.weakly_connected();
    Ok((g, chainable))
}

/// First `(A, B, C)` in family order with `rel(A,B)`, `rel(B,C)`, `!rel(A,C)`.
pub fn transitivity_witness<S: Clone>(
    family: &[S],
    rel: impl Fn(&S, &S) -> bool,
) -> Option<(S, S, S)> {
    let f = family.len();
    let words = f.div_ceil(64);
    let rows: Vec<Vec<u64>> = family
        .iter()
        .map(|a| {
            let mut row = vec![0u64; words];
            for (j, b) in family.iter().enumerate() {
                if rel(a, b) {
                    row[j / 64] |= 1 << (j % 64);
                }
            }
            row
        })
        .collect();
    for i in 0..f {
        for j in 0..f {
            if rows[i][j / 64] & (1 << (j % 64)) == 0 {
                continue;
            }
            for (w, (&rj, &ri)) in rows[j].iter().zip(&rows[i]).enumerate() {
                let missing = rj & !ri;
                if missing != 0 {
                    let k = w * 64 + missing.trailing_zeros() as usize;
                    return Some((family[i].clone(), family[j].clone(), family[k].clone()));
                }
            }
        }
    }
    None
}

/// First ordered pair `(A, B)` of `family` with `!edge(A, B)`.
pub fn completeness_witness<S: Clone>(
    family: &[S],
    edge: impl Fn(&S, &S) -> bool,
) -> Option<(S, S)> {
    family.iter().find_map(|a| {
        family
            .iter()
            .find(|b| !edge(a, b))
            .map(|b| (a.clone(), b.clone()))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn ex22_space() -> FiniteMetricSpace {
        FiniteMetricSpace::from_fn(&["1", "2", "3", "4"], |i, j| {
            if i == j {
                rat(0, 1)
            } else if i < 2 && j < 2 {
                rat(1, 4)
            } else {
                rat(4, 5)
            }
        })
        .unwrap()
    }

    fn ex22_graph() -> DirectedGraph {
        let n = 4;
        DirectedGraph::new(n, (0..n).flat_map(|i| (i..n).map(move |j| (i, j)))).unwrap()
    }

    fn ex23_graph() -> DirectedGraph {
        DirectedGraph::with_all_loops(4, (1..4).map(|k| (0, k))).unwrap()
    }

    fn set(m: &FiniteMetricSpace, l: &[&str]) -> PointSet {
        m.set(l).unwrap()
    }

    #[test]
    fn inverse_of_star_graph() {
        let (inv, _) = ex23_graph().derived_graphs();
        let expected = DirectedGraph::with_all_loops(4, (1..4).map(|k| (k, 0))).unwrap();
        assert_eq!(inv, expected);
    }

    #[test]
    fn tilde_of_symmetric_graph_is_itself() {
        let g = DirectedGraph::new(3, [(0, 1), (1, 0), (2, 2)]).unwrap();
        assert_eq!(g.symmetrized(), g);
    }

    #[test]
    fn tilde_of_order_graph_is_complete() {
        let (_, tilde) = ex22_graph().derived_graphs();
        assert_eq!(tilde.edge_count(), 16);
        assert!(tilde.has_all_loops());
    }

    #[test]
    fn set_edge_cases() {
        let m = ex22_space();
        assert!(ex22_graph()
            .set_edge(&set(&m, &["1"]), &set(&m, &["3"]))
            .unwrap());
        let a = set(&m, &["2", "4"]);
        assert!(ex22_graph().set_edge(&a, &a).unwrap());
        assert!(!ex23_graph()
            .set_edge(&set(&m, &["3"]), &set(&m, &["4"]))
            .unwrap());
    }

    #[test]
    fn undirected_lift_sees_reverse_edges() {
        let m = ex22_space();
        let g = ex22_graph();
        let (three, one) = (set(&m, &["3"]), set(&m, &["1"]));
        assert!(!g.set_edge(&three, &one).unwrap());
        assert!(g.set_edge_lifted(&three, &one, Lift::Undirected).unwrap());
    }

    #[test]
    fn relation_r_cases() {
        let m = ex22_space();
        let g = ex23_graph();
        assert!(!g.relation_r(&set(&m, &["3"]), &set(&m, &["4"])).unwrap());
        assert!(g.relation_r(&set(&m, &["1"]), &set(&m, &["4"])).unwrap());
        let a = set(&m, &["3"]);
        assert!(g.relation_r(&a, &a).unwrap());
    }

    #[test]
    fn relation_r_on_order_graph_is_not_transitive() {
        // Every edge goes upward, so {2} reaches {1,2} (via 2) and {1,2}
        // reaches {1} (via 1), yet nothing in {2} reaches 1.
        let m = ex22_space();
        let w = ex22_graph().r_transitive(&m.hyperspace()).unwrap();
        let (a, b, c) = w.expect("order graph is not R-transitive on sets");
        let g = ex22_graph();
        assert!(g.relation_r(&a, &b).unwrap());
        assert!(g.relation_r(&b, &c).unwrap());
        assert!(!g.relation_r(&a, &c).unwrap());
        assert_eq!(
            (m.format_set(&a), m.format_set(&b), m.format_set(&c)),
            ("{2}".into(), "{1,2}".into(), "{1}".into())
        );
        // It is transitive under the symmetrised graph.
        assert_eq!(g.symmetrized().r_transitive(&m.hyperspace()).unwrap(), None);
    }

    #[test]
    fn r_transitive_small_cases() {
        let m = ex22_space();
        assert_eq!(ex22_graph().r_transitive(&[set(&m, &["2"])]).unwrap(), None);
        let path = DirectedGraph::new(3, [(0, 1), (1, 2)]).unwrap();
        let family: Vec<PointSet> = (0..3)
            .map(|i| PointSet::from_indices([i], 3).unwrap())
            .collect();
        assert_eq!(path.r_transitive(&family).unwrap(), None);
        assert_eq!(path.r_transitive(&[]), Err(GraphError::EmptyFamily));
    }

    #[test]
    fn weak_connectivity() {
        assert!(ex23_graph().weakly_connected());
        assert!(ex22_graph().weakly_connected());
        let loops = DirectedGraph::with_all_loops(3, []).unwrap();
        assert!(!loops.weakly_connected());
        assert_eq!(DirectedGraph::new(0, []), Err(GraphError::EmptyVertexSet));
    }

    #[test]
    fn subset_completeness() {
        let m = ex22_space();
        let g = ex22_graph();
        assert_eq!(g.subset_complete(&[set(&m, &["1"])]).unwrap(), None);
        assert_eq!(
            g.subset_complete(&[set(&m, &["1"]), set(&m, &["1", "2"])])
                .unwrap(),
            None
        );
        let w = ex23_graph()
            .subset_complete(&[set(&m, &["3"]), set(&m, &["4"])])
            .unwrap();
        assert_eq!(w, Some((set(&m, &["3"]), set(&m, &["4"]))));
    }

    #[test]
    fn epsilon_chains() {
        let m = ex22_space();
        let (g, chainable) = epsilon_chain_graph(&m, &rat(1, 1)).unwrap();
        assert!(chainable);
        assert_eq!(g.edge_count(), 12);
        assert!(!g.has_all_loops());
        let (g, chainable) = epsilon_chain_graph(&m, &rat(1, 2)).unwrap();
        assert!(!chainable);
        assert_eq!(g.edges(), vec![(0, 1), (1, 0)]);
        let (g, chainable) = epsilon_chain_graph(&m, &rat(1, 5)).unwrap();
        assert!(!chainable);
        assert_eq!(g.edge_count(), 0);
        assert!(epsilon_chain_graph(&m, &rat(0, 1)).is_err());
    }

    #[test]
    fn p_star_verdicts() {
        assert!(ex22_graph().property_p_star().holds());
        assert!(ex23_graph().property_p_star().holds());
        let loop_free = DirectedGraph::new(2, [(0, 1)]).unwrap();
        assert!(!loop_free.property_p_star().holds());
    }
}
