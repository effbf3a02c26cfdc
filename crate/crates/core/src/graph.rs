//! Simple undirected graphs over dense vertex ids `0..n`, with bitset
//! adjacency rows. Everything downstream (treewidth, model search,
//! extraction) is dominated by row intersections, so the representation is
//! chosen for that: one `u64` word block per 64 vertices.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::fmt;

/// A set of vertices of some host graph, stored as a fixed-width bitset.
/// Iteration is always in ascending vertex order.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexSet {
    words: Vec<u64>,
}

impl VertexSet {
    pub fn empty(capacity: usize) -> Self {
        VertexSet { words: vec![0; capacity.div_ceil(64)] }
    }

    pub fn full(n: usize) -> Self {
        let mut s = VertexSet::empty(n);
        for v in 0..n {
            s.insert(v);
        }
        s
    }

    pub fn from_iter(capacity: usize, vs: impl IntoIterator<Item = usize>) -> Self {
        let mut s = VertexSet::empty(capacity);
        for v in vs {
            s.insert(v);
        }
        s
    }

    #[inline]
    pub fn insert(&mut self, v: usize) {
        if v / 64 >= self.words.len() {
            self.words.resize(v / 64 + 1, 0);
        }
        self.words[v / 64] |= 1u64 << (v % 64);
    }

    #[inline]
    pub fn remove(&mut self, v: usize) {
        if v / 64 < self.words.len() {
            self.words[v / 64] &= !(1u64 << (v % 64));
        }
    }

    #[inline]
    pub fn contains(&self, v: usize) -> bool {
        v / 64 < self.words.len() && self.words[v / 64] >> (v % 64) & 1 == 1
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// True iff the two sets share no vertex.
    pub fn is_disjoint(&self, other: &VertexSet) -> bool {
        self.words.iter().zip(&other.words).all(|(a, b)| a & b == 0)
    }

    pub fn is_subset(&self, other: &VertexSet) -> bool {
        self.words
            .iter()
            .enumerate()
            .all(|(i, &w)| w & !other.words.get(i).copied().unwrap_or(0) == 0)
    }

    pub fn intersects(&self, other: &VertexSet) -> bool {
        !self.is_disjoint(other)
    }

    pub fn union_with(&mut self, other: &VertexSet) {
        if other.words.len() > self.words.len() {
            self.words.resize(other.words.len(), 0);
        }
        for (i, &w) in other.words.iter().enumerate() {
            self.words[i] |= w;
        }
    }

    pub fn intersect_with(&mut self, other: &VertexSet) {
        for (i, w) in self.words.iter_mut().enumerate() {
            *w &= other.words.get(i).copied().unwrap_or(0);
        }
    }

    pub fn subtract(&mut self, other: &VertexSet) {
        for (i, w) in self.words.iter_mut().enumerate() {
            *w &= !other.words.get(i).copied().unwrap_or(0);
        }
    }

    pub fn union(&self, other: &VertexSet) -> VertexSet {
        let mut s = self.clone();
        s.union_with(other);
        s
    }

    pub fn intersection(&self, other: &VertexSet) -> VertexSet {
        let mut s = self.clone();
        s.intersect_with(other);
        s
    }

    pub fn difference(&self, other: &VertexSet) -> VertexSet {
        let mut s = self.clone();
        s.subtract(other);
        s
    }

    pub fn first(&self) -> Option<usize> {
        self.iter().next()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(i, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    None
                } else {
                    let b = w.trailing_zeros() as usize;
                    w &= w - 1;
                    Some(i * 64 + b)
                }
            })
        })
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl Serialize for VertexSet {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_vec().serialize(ser)
    }
}

impl<'de> Deserialize<'de> for VertexSet {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        let vs: Vec<usize> = Vec::deserialize(de)?;
        let cap = vs.iter().copied().max().map_or(0, |m| m + 1);
        Ok(VertexSet::from_iter(cap, vs))
    }
}

/// An induced path, recorded as its vertex order. Consecutive vertices must
/// be adjacent and non-consecutive ones non-adjacent in the host graph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PathWitness {
    pub order: Vec<usize>,
}

impl PathWitness {
    pub fn new(order: Vec<usize>) -> Self {
        PathWitness { order }
    }

    pub fn len_edges(&self) -> usize {
        self.order.len().saturating_sub(1)
    }

    pub fn ends(&self) -> (usize, usize) {
        (self.order[0], *self.order.last().unwrap())
    }

    /// Interior vertices, i.e. everything but the two ends.
    pub fn interior(&self) -> &[usize] {
        if self.order.len() <= 2 {
            &[]
        } else {
            &self.order[1..self.order.len() - 1]
        }
    }

    pub fn vertex_set(&self, capacity: usize) -> VertexSet {
        VertexSet::from_iter(capacity, self.order.iter().copied())
    }

    pub fn interior_set(&self, capacity: usize) -> VertexSet {
        VertexSet::from_iter(capacity, self.interior().iter().copied())
    }

    pub fn reversed(&self) -> PathWitness {
        let mut order = self.order.clone();
        order.reverse();
        PathWitness { order }
    }

    /// Subpath from `u` to `v` (both must lie on the path).
    pub fn subpath(&self, u: usize, v: usize) -> Option<PathWitness> {
        let pu = self.order.iter().position(|&x| x == u)?;
        let pv = self.order.iter().position(|&x| x == v)?;
        let (lo, hi) = if pu <= pv { (pu, pv) } else { (pv, pu) };
        let mut order = self.order[lo..=hi].to_vec();
        if pu > pv {
            order.reverse();
        }
        Some(PathWitness { order })
    }
}

/// Simple undirected graph: no loops, no parallel edges, vertices `0..n`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    rows: Vec<VertexSet>,
}

impl Graph {
    pub fn empty(n: usize) -> Self {
        Graph { n, rows: vec![VertexSet::empty(n); n] }
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Graph::empty(n);
        for &(u, v) in edges {
            g.add_edge_checked(u, v)?;
        }
        Ok(g)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn add_edge(&mut self, u: usize, v: usize) {
        self.add_edge_checked(u, v).expect("bad edge");
    }

    pub fn add_edge_checked(&mut self, u: usize, v: usize) -> Result<()> {
        if u == v {
            return Err(Error::invalid(format!("loop at vertex {u}")));
        }
        if u >= self.n || v >= self.n {
            return Err(Error::invalid(format!("edge ({u},{v}) out of range, n={}", self.n)));
        }
        self.rows[u].insert(v);
        self.rows[v].insert(u);
        Ok(())
    }

    #[inline]
    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        self.rows[u].contains(v)
    }

    /// Open neighborhood of `v` as a bit row.
    #[inline]
    pub fn nbrs(&self, v: usize) -> &VertexSet {
        &self.rows[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.rows[v].len()
    }

    pub fn edge_count(&self) -> usize {
        self.rows.iter().map(|r| r.len()).sum::<usize>() / 2
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for u in 0..self.n {
            for v in self.rows[u].iter() {
                if v > u {
                    out.push((u, v));
                }
            }
        }
        out
    }

    pub fn vertices(&self) -> impl Iterator<Item = usize> {
        0..self.n
    }

    pub fn vertex_set(&self) -> VertexSet {
        VertexSet::full(self.n)
    }

    /// Open neighborhood of a set: all vertices outside `x` with a neighbor in `x`.
    pub fn neighborhood_of_set(&self, x: &VertexSet) -> VertexSet {
        let mut out = VertexSet::empty(self.n);
        for v in x.iter() {
            out.union_with(&self.rows[v]);
        }
        out.subtract(x);
        out
    }

    /// Closed neighborhood `N[x] = x ∪ N(x)`.
    pub fn closed_neighborhood(&self, x: &VertexSet) -> VertexSet {
        let mut out = x.clone();
        for v in x.iter() {
            out.union_with(&self.rows[v]);
        }
        out
    }

    /// True iff `x` and `y` are disjoint and no edge joins them.
    /// Overlapping sets are not anticomplete by definition.
    pub fn are_anticomplete(&self, x: &VertexSet, y: &VertexSet) -> bool {
        if !x.is_disjoint(y) {
            return false;
        }
        x.iter().all(|v| self.rows[v].is_disjoint(y))
    }

    /// True iff no edge has both ends in `x`.
    pub fn is_stable_set(&self, x: &VertexSet) -> bool {
        x.iter().all(|v| {
            let mut row = self.rows[v].clone();
            row.intersect_with(x);
            row.is_empty()
        })
    }

    /// True iff `x` induces a complete graph.
    pub fn is_clique(&self, x: &VertexSet) -> bool {
        let k = x.len();
        x.iter().all(|v| self.rows[v].intersection(x).len() == k - 1)
    }

    /// True iff `x` is nonempty and `G[x]` is connected. The empty set is not
    /// considered connected.
    pub fn is_connected_set(&self, x: &VertexSet) -> bool {
        let Some(root) = x.first() else { return false };
        let mut seen = VertexSet::empty(self.n);
        seen.insert(root);
        let mut frontier = vec![root];
        while let Some(v) = frontier.pop() {
            let mut nb = self.rows[v].intersection(x);
            nb.subtract(&seen);
            for w in nb.iter() {
                seen.insert(w);
                frontier.push(w);
            }
        }
        seen == *x
    }

    /// Connected components, each as a vertex set, ordered by least vertex.
    pub fn components(&self) -> Vec<VertexSet> {
        self.components_within(&self.vertex_set())
    }

    /// Connected components of `G[x]`.
    pub fn components_within(&self, x: &VertexSet) -> Vec<VertexSet> {
        let mut remaining = x.clone();
        let mut out = Vec::new();
        while let Some(root) = remaining.first() {
            let mut comp = VertexSet::empty(self.n);
            comp.insert(root);
            let mut frontier = vec![root];
            while let Some(v) = frontier.pop() {
                let mut nb = self.rows[v].intersection(x);
                nb.subtract(&comp);
                for w in nb.iter() {
                    comp.insert(w);
                    frontier.push(w);
                }
            }
            remaining.subtract(&comp);
            out.push(comp);
        }
        out
    }

    /// Validates the PathWitness invariants: distinct vertices, consecutive
    /// adjacent, non-consecutive non-adjacent.
    pub fn is_induced_path(&self, order: &[usize]) -> bool {
        if order.iter().any(|&v| v >= self.n) {
            return false;
        }
        let set = VertexSet::from_iter(self.n, order.iter().copied());
        if set.len() != order.len() {
            return false; // repeated vertex
        }
        for i in 0..order.len() {
            for j in i + 1..order.len() {
                let adj = self.adjacent(order[i], order[j]);
                if (j == i + 1) != adj {
                    return false;
                }
            }
        }
        true
    }

    /// The subgraph induced by `x`, relabeled to `0..|x|`, together with the
    /// map from new ids back to the original ids. Certificates computed on the
    /// induced graph are translated through this map so they verify against
    /// the root instance.
    pub fn induced_subgraph(&self, x: &VertexSet) -> (Graph, Vec<usize>) {
        let verts = x.to_vec();
        let mut pos = vec![usize::MAX; self.n];
        for (i, &v) in verts.iter().enumerate() {
            pos[v] = i;
        }
        let mut g = Graph::empty(verts.len());
        for (i, &v) in verts.iter().enumerate() {
            for w in self.rows[v].intersection(x).iter() {
                if pos[w] > i {
                    g.add_edge(i, pos[w]);
                }
            }
        }
        (g, verts)
    }

    /// The complement graph.
    pub fn complement(&self) -> Graph {
        let mut g = Graph::empty(self.n);
        for u in 0..self.n {
            for v in u + 1..self.n {
                if !self.adjacent(u, v) {
                    g.add_edge(u, v);
                }
            }
        }
        g
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n, self.edges())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p4() -> Graph {
        Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3)]).unwrap()
    }

    fn c4() -> Graph {
        Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap()
    }

    fn k(n: usize) -> Graph {
        let mut g = Graph::empty(n);
        for u in 0..n {
            for v in u + 1..n {
                g.add_edge(u, v);
            }
        }
        g
    }

    #[test]
    fn anticomplete_single_edge_crosses() {
        let g = k(2);
        let x = VertexSet::from_iter(2, [0]);
        let y = VertexSet::from_iter(2, [1]);
        assert!(!g.are_anticomplete(&x, &y));
    }

    #[test]
    fn anticomplete_edgeless() {
        let g = Graph::empty(4);
        let x = VertexSet::from_iter(4, [0, 1]);
        let y = VertexSet::from_iter(4, [2, 3]);
        assert!(g.are_anticomplete(&x, &y));
    }

    #[test]
    fn anticomplete_p4_ends() {
        let g = p4();
        let x = VertexSet::from_iter(4, [0]);
        let y = VertexSet::from_iter(4, [3]);
        assert!(g.are_anticomplete(&x, &y));
    }

    #[test]
    fn anticomplete_overlap_is_false() {
        for g in [k(3), Graph::empty(3), p4()] {
            let x = VertexSet::from_iter(4, [0]);
            assert!(!g.are_anticomplete(&x, &x));
        }
    }

    #[test]
    fn induced_subgraph_of_complete() {
        let g = k(5);
        let x = VertexSet::from_iter(5, [1, 3, 4]);
        let (h, map) = g.induced_subgraph(&x);
        assert_eq!(h.n(), 3);
        assert_eq!(h.edge_count(), 3);
        assert_eq!(map, vec![1, 3, 4]);
    }

    #[test]
    fn induced_subgraph_of_c4_is_p3() {
        let g = c4();
        let x = VertexSet::from_iter(4, [0, 1, 2]);
        let (h, _) = g.induced_subgraph(&x);
        assert_eq!(h.edge_count(), 2);
        assert!(h.is_induced_path(&[0, 1, 2]));
    }

    #[test]
    fn induced_subgraph_empty() {
        let g = c4();
        let (h, map) = g.induced_subgraph(&VertexSet::empty(4));
        assert_eq!(h.n(), 0);
        assert!(map.is_empty());
    }

    #[test]
    fn components_two_triangles() {
        let g = Graph::from_edges(6, &[(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)]).unwrap();
        let comps = g.components();
        assert_eq!(comps.len(), 2);
        assert_eq!(comps[0].to_vec(), vec![0, 1, 2]);
        assert_eq!(comps[1].to_vec(), vec![3, 4, 5]);
        assert!(g.are_anticomplete(&comps[0], &comps[1]));
    }

    #[test]
    fn components_connected_and_edgeless() {
        assert_eq!(p4().components().len(), 1);
        assert_eq!(Graph::empty(5).components().len(), 5);
    }

    #[test]
    fn induced_path_checks() {
        assert!(!c4().is_induced_path(&[0, 1, 2, 3])); // ends adjacent
        assert!(p4().is_induced_path(&[0, 1, 2, 3]));
        assert!(!p4().is_induced_path(&[0, 2, 1, 3])); // 0,2 non-adjacent
    }

    #[test]
    fn stable_set_checks() {
        let g = k(3);
        assert!(!g.is_stable_set(&VertexSet::from_iter(3, [0, 1])));
        assert!(Graph::empty(4).is_stable_set(&VertexSet::from_iter(4, [0, 1, 2, 3])));
        assert!(c4().is_stable_set(&VertexSet::from_iter(4, [0, 2])));
    }
}
