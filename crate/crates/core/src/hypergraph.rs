//! Finite hypergraphs on dense vertex labels `0..n` and their structural
//! predicates: degrees, connectivity, uniformity, linearity, weak
//! bipartiteness, hypertrees and pendency.

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

use crate::bits::{self, Ones, MAX_BITSET_VERTICES};
use crate::dsu::DisjointSets;

/// Vertex label; vertices of a hypergraph on `n` vertices are `0..n`.
pub type Vertex = u32;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HypergraphError {
    #[error("a hypergraph needs at least one vertex")]
    EmptyVertexSet,
    #[error("edge {edge} has {size} vertices, at least 2 are required")]
    EdgeTooSmall { edge: usize, size: usize },
    #[error("vertex {vertex} is out of range for a hypergraph on {n} vertices")]
    VertexOutOfRange { vertex: u64, n: usize },
    #[error("edge {edge} lists vertex {vertex} more than once")]
    RepeatedVertex { edge: usize, vertex: Vertex },
    #[error("edge {edge} duplicates an earlier edge {members:?}")]
    DuplicateEdge { edge: usize, members: Vec<Vertex> },
    #[error("the hypergraph has no edges")]
    NoEdges,
    #[error("invalid bipartition: {0}")]
    InvalidPartition(String),
    #[error("at least 2 vertices are required, got {0}")]
    TooFewVertices(usize),
    #[error("operation supports at most {max} vertices, got {n}")]
    TooManyVertices { n: usize, max: usize },
}

/// A hyperedge: a set of at least two vertices, stored ascending.
///
/// The derived ordering compares member lists lexicographically and is the
/// canonical edge order of a [`Hypergraph`].
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Edge {
    members: Vec<Vertex>,
}

impl Edge {
    /// Wraps members already sorted, distinct and at least two long.
    pub(crate) fn from_sorted(members: Vec<Vertex>) -> Self {
        debug_assert!(members.len() >= 2 && members.windows(2).all(|w| w[0] < w[1]));
        Self { members }
    }

    pub fn members(&self) -> &[Vertex] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    /// Always false for a validated edge; present for API symmetry.
    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.members.binary_search(&v).is_ok()
    }

    /// Bit set of the members, if every member is below 64.
    pub fn bits(&self) -> Option<u64> {
        self.members.iter().try_fold(0u64, |acc, &v| {
            ((v as usize) < MAX_BITSET_VERTICES).then(|| acc | (1u64 << v))
        })
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, v) in self.members.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

/// Immutable hypergraph with canonical (sorted, duplicate-free) edges.
///
/// Degrees are computed once at construction. For `n <= 64` every edge also
/// carries a word-sized bit set that the structural predicates use.
#[derive(Debug, Clone)]
pub struct Hypergraph {
    n: usize,
    edges: Vec<Edge>,
    degrees: Vec<usize>,
    masks: Option<Vec<u64>>,
}

impl PartialEq for Hypergraph {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.edges == other.edges
    }
}

impl Eq for Hypergraph {}

impl PartialOrd for Hypergraph {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Orders by vertex count, then by canonical edge list.
impl Ord for Hypergraph {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.n.cmp(&other.n).then_with(|| self.edges.cmp(&other.edges))
    }
}

impl std::hash::Hash for Hypergraph {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.n.hash(state);
        self.edges.hash(state);
    }
}

impl Hypergraph {
    /// Builds a hypergraph from raw vertex lists.
    ///
    /// Members of each edge may be given in any order; they are sorted. Edges
    /// are sorted into canonical order. Invalid input is rejected, never
    /// repaired: edges of size < 2, out-of-range or repeated vertices, and
    /// duplicate edges are all errors.
    pub fn new<I, E>(n: usize, edge_lists: I) -> Result<Self, HypergraphError>
    where
        I: IntoIterator<Item = E>,
        E: AsRef<[u64]>,
    {
        if n == 0 {
            return Err(HypergraphError::EmptyVertexSet);
        }
        let mut edges = Vec::new();
        for (idx, list) in edge_lists.into_iter().enumerate() {
            let list = list.as_ref();
            let mut members = Vec::with_capacity(list.len());
            for &v in list {
                if v >= n as u64 {
                    return Err(HypergraphError::VertexOutOfRange { vertex: v, n });
                }
                members.push(v as Vertex);
            }
            members.sort_unstable();
            if let Some(w) = members.windows(2).find(|w| w[0] == w[1]) {
                return Err(HypergraphError::RepeatedVertex {
                    edge: idx,
                    vertex: w[0],
                });
            }
            if members.len() < 2 {
                return Err(HypergraphError::EdgeTooSmall {
                    edge: idx,
                    size: members.len(),
                });
            }
            edges.push((idx, Edge { members }));
        }
        let mut seen = BTreeSet::new();
        for (idx, e) in &edges {
            if !seen.insert(e) {
                return Err(HypergraphError::DuplicateEdge {
                    edge: *idx,
                    members: e.members.clone(),
                });
            }
        }
        let mut edges: Vec<Edge> = edges.into_iter().map(|(_, e)| e).collect();
        edges.sort_unstable();
        Ok(Self::from_canonical(n, edges))
    }

    /// Convenience wrapper over [`Hypergraph::new`] for `u32` vertex lists.
    pub fn from_edges(n: usize, edge_lists: &[Vec<Vertex>]) -> Result<Self, HypergraphError> {
        Self::new(
            n,
            edge_lists
                .iter()
                .map(|e| e.iter().map(|&v| v as u64).collect::<Vec<_>>()),
        )
    }

    /// Assembles from edges already known to be valid, sorted and unique.
    pub(crate) fn from_canonical(n: usize, edges: Vec<Edge>) -> Self {
        debug_assert!(edges.windows(2).all(|w| w[0] < w[1]));
        let mut degrees = vec![0usize; n];
        for e in &edges {
            for &v in &e.members {
                degrees[v as usize] += 1;
            }
        }
        let masks =
            (n <= MAX_BITSET_VERTICES).then(|| edges.iter().map(|e| e.bits().expect("members < n <= 64")).collect());
        Self {
            n,
            edges,
            degrees,
            masks,
        }
    }

    /// Builds from edge bit sets on `n <= 64` vertices. Masks must be distinct
    /// and have at least two bits, all below `n`.
    pub(crate) fn from_masks(n: usize, masks: impl IntoIterator<Item = u64>) -> Self {
        let mut edges: Vec<Edge> = masks
            .into_iter()
            .map(|m| Edge {
                members: Ones(m).map(|v| v as Vertex).collect(),
            })
            .collect();
        edges.sort_unstable();
        Self::from_canonical(n, edges)
    }

    /// Vertex count.
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Degree of every vertex, indexed by vertex.
    pub fn degrees(&self) -> &[usize] {
        &self.degrees
    }

    pub fn degree(&self, v: Vertex) -> Result<usize, HypergraphError> {
        self.degrees
            .get(v as usize)
            .copied()
            .ok_or(HypergraphError::VertexOutOfRange {
                vertex: v as u64,
                n: self.n,
            })
    }

    /// Edge bit sets, present when `n <= 64`.
    pub fn edge_masks(&self) -> Option<&[u64]> {
        self.masks.as_deref()
    }

    /// Edge lists as plain vectors, in canonical order.
    pub fn edge_lists(&self) -> Vec<Vec<Vertex>> {
        self.edges.iter().map(|e| e.members.clone()).collect()
    }

    /// True iff every pair of vertices is joined by a path. Isolated vertices
    /// disconnect any hypergraph with `n >= 2`.
    pub fn is_connected(&self) -> bool {
        if self.n == 1 {
            return true;
        }
        if let Some(masks) = &self.masks {
            return bits::spans_connected(bits::full_mask(self.n), masks);
        }
        Self::connected_without(self.n, &self.edges, None)
    }

    fn connected_without(n: usize, edges: &[Edge], skip: Option<usize>) -> bool {
        let mut sets = DisjointSets::new(n);
        for (i, e) in edges.iter().enumerate() {
            if Some(i) == skip {
                continue;
            }
            let first = e.members[0] as usize;
            for &v in &e.members[1..] {
                sets.union(first, v as usize);
            }
        }
        sets.components() == 1
    }

    /// Common edge size, or `None` when sizes differ.
    pub fn uniformity(&self) -> Result<Option<usize>, HypergraphError> {
        let first = self.edges.first().ok_or(HypergraphError::NoEdges)?.len();
        Ok(self.edges.iter().all(|e| e.len() == first).then_some(first))
    }

    /// True iff any two distinct edges share at most one vertex.
    pub fn is_linear(&self) -> bool {
        if let Some(masks) = &self.masks {
            return masks
                .iter()
                .enumerate()
                .all(|(i, a)| masks[i + 1..].iter().all(|b| (a & b).count_ones() <= 1));
        }
        self.edges.iter().enumerate().all(|(i, a)| {
            self.edges[i + 1..]
                .iter()
                .all(|b| a.members.iter().filter(|&&v| b.contains(v)).count() <= 1)
        })
    }

    /// True iff every edge meets both sides of `partition`.
    pub fn is_weak_bipartite_with(&self, partition: &Bipartition) -> Result<bool, HypergraphError> {
        if partition.n != self.n {
            return Err(HypergraphError::InvalidPartition(format!(
                "partition covers {} vertices, hypergraph has {}",
                partition.n, self.n
            )));
        }
        Ok(self.edges.iter().all(|e| {
            let ones = e.members.iter().filter(|&&v| partition.in_side1[v as usize]).count();
            ones > 0 && ones < e.len()
        }))
    }

    /// Searches for a weak bipartition, returning the one whose first side
    /// (which always holds vertex 0) is lexicographically smallest.
    ///
    /// Candidates are visited in lexicographic order with pruning: once a
    /// prefix fixes an edge entirely to one side, no extension can fix it.
    pub fn find_weak_bipartition(&self) -> Result<Option<Bipartition>, HypergraphError> {
        if self.n < 2 {
            return Err(HypergraphError::TooFewVertices(self.n));
        }
        let masks = self.masks.as_ref().ok_or(HypergraphError::TooManyVertices {
            n: self.n,
            max: MAX_BITSET_VERTICES,
        })?;
        let full = bits::full_mask(self.n);
        let found = lex_search(self.n, full, masks, 1, 0);
        Ok(found.map(|side1| Bipartition::from_side1_mask(self.n, side1)))
    }

    /// True iff connected and removing any single edge disconnects.
    pub fn is_hypertree(&self) -> bool {
        if let Some(masks) = &self.masks {
            return bits::is_bridge_tree(bits::full_mask(self.n), masks);
        }
        self.is_connected() && (0..self.edges.len()).all(|i| !Self::connected_without(self.n, &self.edges, Some(i)))
    }

    /// Degree-1 vertices, and edges holding exactly `|e| - 1` of them.
    ///
    /// The edge test is literal: a lone edge whose vertices are all pendent
    /// is not a pendent edge.
    pub fn pendents(&self) -> (Vec<Vertex>, Vec<Edge>) {
        let vertices: Vec<Vertex> = (0..self.n as Vertex)
            .filter(|&v| self.degrees[v as usize] == 1)
            .collect();
        let edges = self
            .edges
            .iter()
            .filter(|e| {
                let p = e.members.iter().filter(|&&v| self.degrees[v as usize] == 1).count();
                p + 1 == e.len()
            })
            .cloned()
            .collect();
        (vertices, edges)
    }

    /// Relabels vertex `v` as `perm[v]`.
    pub fn permuted(&self, perm: &[Vertex]) -> Result<Self, HypergraphError> {
        let mut check = perm.to_vec();
        check.sort_unstable();
        if perm.len() != self.n || check.iter().enumerate().any(|(i, &v)| v as usize != i) {
            return Err(HypergraphError::InvalidPartition(
                "relabeling is not a permutation of the vertex set".into(),
            ));
        }
        let lists: Vec<Vec<Vertex>> = self
            .edges
            .iter()
            .map(|e| e.members.iter().map(|&v| perm[v as usize]).collect())
            .collect();
        Self::from_edges(self.n, &lists)
    }

    /// Copy of `self` with one more edge.
    pub fn with_edge(&self, members: &[Vertex]) -> Result<Self, HypergraphError> {
        let mut lists = self.edge_lists();
        lists.push(members.to_vec());
        Self::from_edges(self.n, &lists)
    }
}

fn lex_search(n: usize, full: u64, edges: &[u64], side1: u64, last: usize) -> Option<u64> {
    let side2 = full & !side1;
    if side2 != 0 && edges.iter().all(|&e| e & side1 != 0 && e & side2 != 0) {
        return Some(side1);
    }
    // vertices <= last outside side1 are committed to side 2
    let committed2 = bits::full_mask(last + 1) & !side1;
    for next in last + 1..n {
        let s1 = side1 | (1u64 << next);
        let fixed2 = committed2 | (bits::full_mask(next) & !s1);
        let below = bits::full_mask(next + 1);
        // an edge inside the decided region that misses a side stays broken
        let dead = edges
            .iter()
            .any(|&e| e & !below == 0 && (e & s1 == 0 || e & fixed2 == 0));
        if dead {
            continue;
        }
        if let Some(found) = lex_search(n, full, edges, s1, next) {
            return Some(found);
        }
    }
    None
}

/// Split of the vertex set into two non-empty sides.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bipartition {
    n: usize,
    in_side1: Vec<bool>,
}

impl Bipartition {
    pub fn new(n: usize, side1: &[Vertex], side2: &[Vertex]) -> Result<Self, HypergraphError> {
        let mut seen = vec![0u8; n];
        for (side, tag) in [(side1, 1u8), (side2, 2u8)] {
            if side.is_empty() {
                return Err(HypergraphError::InvalidPartition(format!("side {tag} is empty")));
            }
            for &v in side {
                let slot = seen.get_mut(v as usize).ok_or_else(|| {
                    HypergraphError::InvalidPartition(format!("vertex {v} is out of range for n = {n}"))
                })?;
                if *slot != 0 {
                    return Err(HypergraphError::InvalidPartition(format!(
                        "vertex {v} appears more than once"
                    )));
                }
                *slot = tag;
            }
        }
        if let Some(v) = seen.iter().position(|&s| s == 0) {
            return Err(HypergraphError::InvalidPartition(format!(
                "vertex {v} is on neither side"
            )));
        }
        Ok(Self {
            n,
            in_side1: seen.iter().map(|&s| s == 1).collect(),
        })
    }

    fn from_side1_mask(n: usize, side1: u64) -> Self {
        Self {
            n,
            in_side1: (0..n).map(|v| side1 >> v & 1 == 1).collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn side1(&self) -> Vec<Vertex> {
        (0..self.n as Vertex).filter(|&v| self.in_side1[v as usize]).collect()
    }

    pub fn side2(&self) -> Vec<Vertex> {
        (0..self.n as Vertex).filter(|&v| !self.in_side1[v as usize]).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn hg(n: usize, edges: &[&[Vertex]]) -> Hypergraph {
        Hypergraph::from_edges(n, &edges.iter().map(|e| e.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    fn k3() -> Hypergraph {
        hg(3, &[&[0, 1], &[0, 2], &[1, 2], &[0, 1, 2]])
    }

    #[test]
    fn build_validates() {
        let h = hg(3, &[&[0, 1, 2]]);
        assert_eq!(h.edge_count(), 1);
        assert_eq!(h.edges()[0].len(), 3);

        let dup = Hypergraph::from_edges(3, &[vec![0, 1], vec![0, 1]]);
        assert!(matches!(dup, Err(HypergraphError::DuplicateEdge { edge: 1, .. })));
        let dup_unsorted = Hypergraph::from_edges(3, &[vec![0, 1], vec![1, 0]]);
        assert!(matches!(dup_unsorted, Err(HypergraphError::DuplicateEdge { .. })));
        assert_eq!(
            Hypergraph::from_edges(2, &[vec![0, 2]]),
            Err(HypergraphError::VertexOutOfRange { vertex: 2, n: 2 })
        );
        assert_eq!(
            Hypergraph::from_edges(3, &[vec![1]]),
            Err(HypergraphError::EdgeTooSmall { edge: 0, size: 1 })
        );
        assert_eq!(Hypergraph::from_edges(0, &[]), Err(HypergraphError::EmptyVertexSet));
        assert!(matches!(
            Hypergraph::from_edges(3, &[vec![1, 1, 2]]),
            Err(HypergraphError::RepeatedVertex { vertex: 1, .. })
        ));
    }

    #[test]
    fn canonical_order_and_equality() {
        let a = hg(4, &[&[2, 3], &[1, 0]]);
        let b = hg(4, &[&[0, 1], &[3, 2]]);
        assert_eq!(a, b);
        assert_eq!(a.edge_lists(), vec![vec![0, 1], vec![2, 3]]);
    }

    #[test]
    fn degrees() {
        let h = hg(3, &[&[0, 1, 2]]);
        assert_eq!(h.degree(0), Ok(1));
        for v in 0..3 {
            assert_eq!(k3().degree(v), Ok(3));
        }
        let path = hg(7, &[&[0, 1, 2], &[2, 3, 4], &[4, 5, 6]]);
        assert_eq!(path.degree(2), Ok(2));
        assert!(path.degree(7).is_err());
    }

    #[test]
    fn connectivity() {
        assert!(hg(7, &[&[0, 1, 2], &[2, 3, 4], &[4, 5, 6]]).is_connected());
        assert!(!hg(4, &[&[0, 1], &[2, 3]]).is_connected());
        assert!(!hg(3, &[&[0, 1]]).is_connected());
        assert!(Hypergraph::from_edges(1, &[]).unwrap().is_connected());
    }

    #[test]
    fn connectivity_beyond_word_size() {
        let chain: Vec<Vec<Vertex>> = (0..69).map(|i| vec![i, i + 1]).collect();
        let h = Hypergraph::from_edges(70, &chain).unwrap();
        assert!(h.edge_masks().is_none());
        assert!(h.is_connected());
        assert!(h.is_hypertree());
        assert!(h.is_linear());
        let broken = Hypergraph::from_edges(70, &chain[1..]).unwrap();
        assert!(!broken.is_connected());
        assert!(!broken.is_hypertree());
    }

    #[test]
    fn uniformity() {
        assert_eq!(k3().uniformity(), Ok(None));
        assert_eq!(hg(5, &[&[0, 1, 2], &[2, 3, 4]]).uniformity(), Ok(Some(3)));
        assert_eq!(hg(2, &[&[0, 1]]).uniformity(), Ok(Some(2)));
        assert_eq!(hg(2, &[]).uniformity(), Err(HypergraphError::NoEdges));
    }

    #[test]
    fn linearity() {
        assert!(hg(5, &[&[0, 1, 2], &[2, 3, 4]]).is_linear());
        assert!(!hg(4, &[&[0, 1, 2], &[0, 1, 3]]).is_linear());
        assert!(hg(3, &[]).is_linear());
    }

    #[test]
    fn weak_bipartite_checks() {
        let h = hg(2, &[&[0, 1]]);
        let b = Bipartition::new(2, &[0], &[1]).unwrap();
        assert_eq!(h.is_weak_bipartite_with(&b), Ok(true));

        let h3 = hg(3, &[&[0, 1]]);
        let b3 = Bipartition::new(3, &[0, 1], &[2]).unwrap();
        assert_eq!(h3.is_weak_bipartite_with(&b3), Ok(false));
        assert!(h3.is_weak_bipartite_with(&b).is_err());

        assert!(Bipartition::new(3, &[0, 1], &[1, 2]).is_err());
        assert!(Bipartition::new(3, &[0, 1], &[]).is_err());
        assert!(Bipartition::new(3, &[0], &[1]).is_err());
        assert!(Bipartition::new(3, &[0], &[1, 3]).is_err());
    }

    #[test]
    fn weak_bipartition_search() {
        let single = hg(3, &[&[0, 1, 2]]);
        let b = single.find_weak_bipartition().unwrap().unwrap();
        assert_eq!(b.side1(), vec![0]);
        assert_eq!(single.is_weak_bipartite_with(&b), Ok(true));

        let triangle = hg(3, &[&[0, 1], &[1, 2], &[0, 2]]);
        assert_eq!(triangle.find_weak_bipartition(), Ok(None));

        // {0} and {0,1} both fail on edge {0,1}/{2,3}; {0,2} is the smallest
        let square = hg(4, &[&[0, 1], &[1, 2], &[2, 3], &[0, 3]]);
        let b = square.find_weak_bipartition().unwrap().unwrap();
        assert_eq!(b.side1(), vec![0, 2]);
        assert_eq!(b.side2(), vec![1, 3]);

        assert_eq!(
            Hypergraph::from_edges(1, &[]).unwrap().find_weak_bipartition(),
            Err(HypergraphError::TooFewVertices(1))
        );
    }

    #[test]
    fn hypertrees() {
        assert!(hg(3, &[&[0, 1, 2]]).is_hypertree());
        assert!(!hg(3, &[&[0, 1], &[1, 2], &[0, 2]]).is_hypertree());
        assert!(hg(5, &[&[0, 1, 2], &[0, 1, 3], &[0, 1, 4]]).is_hypertree());
        assert!(!hg(4, &[&[0, 1], &[2, 3]]).is_hypertree());
    }

    #[test]
    fn pendency() {
        let (pv, pe) = hg(3, &[&[0, 1, 2]]).pendents();
        assert_eq!(pv, vec![0, 1, 2]);
        assert!(pe.is_empty());

        let star = hg(5, &[&[0, 1, 2], &[0, 3, 4]]);
        let (pv, pe) = star.pendents();
        assert_eq!(pv, vec![1, 2, 3, 4]);
        assert_eq!(pe.len(), 2);

        let (pv, pe) = hg(3, &[&[0, 1], &[1, 2]]).pendents();
        assert_eq!(pv, vec![0, 2]);
        assert_eq!(pe.len(), 2);
    }

    #[test]
    fn relabeling() {
        let h = hg(4, &[&[0, 1, 2], &[2, 3]]);
        let p = h.permuted(&[3, 2, 1, 0]).unwrap();
        assert_eq!(p.edge_lists(), vec![vec![0, 1], vec![1, 2, 3]]);
        assert!(h.permuted(&[0, 0, 1, 2]).is_err());
        assert!(h.with_edge(&[0, 1, 2]).is_err());
        assert_eq!(h.with_edge(&[0, 3]).unwrap().edge_count(), 3);
    }
}
