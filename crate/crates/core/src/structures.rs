//! Certificate types for models, blocks and aligned witnesses, plus their
//! verifiers. Certificates are self-contained (vertex ids and structure);
//! verification recomputes every claimed property from the host graph and
//! never trusts the certificate itself. Extraction code is complicated, the
//! verifiers are the trusted base.

use crate::graph::{Graph, PathWitness, VertexSet};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

/// A family of pairwise disjoint connected branch sets, pairwise
/// non-anticomplete: the witness for a complete minor.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CompleteModel {
    pub sets: Vec<VertexSet>,
    /// Present iff the model is linear: one induced-path witness per branch set.
    pub paths: Option<Vec<PathWitness>>,
}

impl CompleteModel {
    pub fn mu(&self) -> usize {
        self.sets.len()
    }

    pub fn is_linear(&self) -> bool {
        self.paths.is_some()
    }

    pub fn vertex_union(&self, capacity: usize) -> VertexSet {
        let mut u = VertexSet::empty(capacity);
        for s in &self.sets {
            u.union_with(s);
        }
        u
    }

    /// Sub-model over the given indices (paths carried along).
    pub fn restrict(&self, idx: &[usize]) -> CompleteModel {
        CompleteModel {
            sets: idx.iter().map(|&i| self.sets[i].clone()).collect(),
            paths: self
                .paths
                .as_ref()
                .map(|ps| idx.iter().map(|&i| ps[i].clone()).collect()),
        }
    }
}

/// Branch sets of a K_{rho,sigma} minor model: every cross pair (A_i, B_j)
/// is non-anticomplete. `a_induced` additionally claims the A-side pairwise
/// anticomplete (symmetrically for B), which is what upgrades a minor to an
/// induced minor.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct BipartiteModel {
    pub a_sets: Vec<VertexSet>,
    pub b_sets: Vec<VertexSet>,
    pub a_induced: bool,
    pub b_induced: bool,
    pub a_paths: Option<Vec<PathWitness>>,
    pub b_paths: Option<Vec<PathWitness>>,
}

impl BipartiteModel {
    pub fn rho(&self) -> usize {
        self.a_sets.len()
    }

    pub fn sigma(&self) -> usize {
        self.b_sets.len()
    }

    pub fn is_induced(&self) -> bool {
        self.a_induced && self.b_induced
    }

    pub fn a_linear(&self) -> bool {
        self.a_paths.is_some()
    }

    pub fn b_linear(&self) -> bool {
        self.b_paths.is_some()
    }

    /// The transpose swaps sides and flags.
    pub fn transpose(&self) -> BipartiteModel {
        BipartiteModel {
            a_sets: self.b_sets.clone(),
            b_sets: self.a_sets.clone(),
            a_induced: self.b_induced,
            b_induced: self.a_induced,
            a_paths: self.b_paths.clone(),
            b_paths: self.a_paths.clone(),
        }
    }

    pub fn a_union(&self, capacity: usize) -> VertexSet {
        let mut u = VertexSet::empty(capacity);
        for s in &self.a_sets {
            u.union_with(s);
        }
        u
    }

    pub fn b_union(&self, capacity: usize) -> VertexSet {
        let mut u = VertexSet::empty(capacity);
        for s in &self.b_sets {
            u.union_with(s);
        }
        u
    }

    pub fn vertex_union(&self, capacity: usize) -> VertexSet {
        self.a_union(capacity).union(&self.b_union(capacity))
    }
}

/// Witness that a model is A-aligned: for each B_j, an orientation (which end
/// the traversal starts from) and per-i windows (u^j_i, v^j_i) along B_j.
///
/// AL1: B_j traverses u_j, u^j_1, v^j_1, ..., u^j_rho, v^j_rho in this order,
/// with the windows pairwise disjoint. AL2: every vertex of B_j with a
/// neighbor in A_i lies on the subpath from u^j_i to v^j_i.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct AlignedWitness {
    pub per_b: Vec<AlignedPathWitness>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct AlignedPathWitness {
    /// The end of B_j the traversal starts from.
    pub start_end: usize,
    /// One (u^j_i, v^j_i) pair per A-set, in A-side order.
    pub windows: Vec<(usize, usize)>,
}

/// A (k,l)-block: a vertex set B with, for each 2-subset {x,y} of B, a list
/// of at least l pairwise internally disjoint induced paths from x to y.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Block {
    pub b: VertexSet,
    /// Keyed by (min, max) of the 2-subset.
    pub paths: BTreeMap<(usize, usize), Vec<PathWitness>>,
}

impl Block {
    pub fn k(&self) -> usize {
        self.b.len()
    }

    pub fn l(&self) -> usize {
        self.paths.values().map(|ps| ps.len()).min().unwrap_or(0)
    }
}

/// Reason string describing why a certificate failed verification, or `Ok`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Checked {
    Ok,
    Bad(String),
}

impl Checked {
    pub fn ok(&self) -> bool {
        matches!(self, Checked::Ok)
    }

    pub fn reason(&self) -> Option<&str> {
        match self {
            Checked::Ok => None,
            Checked::Bad(r) => Some(r),
        }
    }
}

macro_rules! require {
    ($cond:expr, $($msg:tt)*) => {
        if !$cond {
            return Checked::Bad(format!($($msg)*));
        }
    };
}

fn check_branch_sets(g: &Graph, sets: &[VertexSet], what: &str) -> Checked {
    for (i, s) in sets.iter().enumerate() {
        require!(!s.is_empty(), "{what} set {i} is empty");
        require!(
            s.iter().all(|v| v < g.n()),
            "{what} set {i} has a vertex outside the graph"
        );
        require!(g.is_connected_set(s), "{what} set {i} is not connected");
    }
    for i in 0..sets.len() {
        for j in i + 1..sets.len() {
            require!(sets[i].is_disjoint(&sets[j]), "{what} sets {i} and {j} overlap");
        }
    }
    Checked::Ok
}

fn check_linear(g: &Graph, sets: &[VertexSet], paths: &[PathWitness], what: &str) -> Checked {
    require!(paths.len() == sets.len(), "{what}: path witness count mismatch");
    for (i, (s, p)) in sets.iter().zip(paths).enumerate() {
        require!(g.is_induced_path(&p.order), "{what} set {i}: witness is not an induced path");
        require!(
            p.vertex_set(g.n()) == *s,
            "{what} set {i}: path witness does not cover the set"
        );
    }
    Checked::Ok
}

/// Checks every invariant of a complete model against the host graph.
pub fn verify_complete_model(g: &Graph, k: &CompleteModel) -> Checked {
    let c = check_branch_sets(g, &k.sets, "branch");
    if !c.ok() {
        return c;
    }
    for i in 0..k.sets.len() {
        for j in i + 1..k.sets.len() {
            require!(
                !g.are_anticomplete(&k.sets[i], &k.sets[j]),
                "branch sets {i} and {j} are anticomplete"
            );
        }
    }
    if let Some(paths) = &k.paths {
        let c = check_linear(g, &k.sets, paths, "branch");
        if !c.ok() {
            return c;
        }
    }
    Checked::Ok
}

/// Checks every invariant of a bipartite model, including the claimed
/// induced/linear flags.
pub fn verify_bipartite_model(g: &Graph, m: &BipartiteModel) -> Checked {
    let all: Vec<VertexSet> = m.a_sets.iter().chain(&m.b_sets).cloned().collect();
    let c = check_branch_sets(g, &all, "model");
    if !c.ok() {
        return c;
    }
    for (i, a) in m.a_sets.iter().enumerate() {
        for (j, b) in m.b_sets.iter().enumerate() {
            require!(
                !g.are_anticomplete(a, b),
                "cross pair (A_{i}, B_{j}) is anticomplete"
            );
        }
    }
    if m.a_induced {
        for i in 0..m.a_sets.len() {
            for j in i + 1..m.a_sets.len() {
                require!(
                    g.are_anticomplete(&m.a_sets[i], &m.a_sets[j]),
                    "A_induced claimed but A_{i} and A_{j} are not anticomplete"
                );
            }
        }
    }
    if m.b_induced {
        for i in 0..m.b_sets.len() {
            for j in i + 1..m.b_sets.len() {
                require!(
                    g.are_anticomplete(&m.b_sets[i], &m.b_sets[j]),
                    "B_induced claimed but B_{i} and B_{j} are not anticomplete"
                );
            }
        }
    }
    if let Some(ps) = &m.a_paths {
        let c = check_linear(g, &m.a_sets, ps, "A");
        if !c.ok() {
            return c;
        }
    }
    if let Some(ps) = &m.b_paths {
        let c = check_linear(g, &m.b_sets, ps, "B");
        if !c.ok() {
            return c;
        }
    }
    Checked::Ok
}

/// Checks AL1/AL2 for an aligned witness of a B-linear model.
pub fn verify_aligned(g: &Graph, m: &BipartiteModel, w: &AlignedWitness) -> Checked {
    let c = verify_bipartite_model(g, m);
    if !c.ok() {
        return c;
    }
    let Some(b_paths) = &m.b_paths else {
        return Checked::Bad("aligned witness requires a B-linear model".into());
    };
    require!(w.per_b.len() == m.b_sets.len(), "witness covers {} of {} B-sets", w.per_b.len(), m.b_sets.len());
    for (j, (path, wit)) in b_paths.iter().zip(&w.per_b).enumerate() {
        require!(
            wit.windows.len() == m.a_sets.len(),
            "B_{j}: witness has {} windows for {} A-sets",
            wit.windows.len(),
            m.a_sets.len()
        );
        let (e0, e1) = path.ends();
        require!(
            wit.start_end == e0 || wit.start_end == e1,
            "B_{j}: start_end {} is not an end of the path",
            wit.start_end
        );
        // Orient the path so the traversal starts at start_end.
        let order: Vec<usize> = if wit.start_end == e0 {
            path.order.clone()
        } else {
            path.order.iter().rev().copied().collect()
        };
        let pos = |v: usize| order.iter().position(|&x| x == v);
        // AL1: windows appear in order and are pairwise disjoint.
        let mut prev_end: Option<usize> = None;
        for (i, &(u, v)) in wit.windows.iter().enumerate() {
            let (Some(pu), Some(pv)) = (pos(u), pos(v)) else {
                return Checked::Bad(format!("B_{j}: window {i} endpoints not on the path"));
            };
            require!(pu <= pv, "B_{j}: window {i} is reversed");
            if let Some(pe) = prev_end {
                require!(pu > pe, "B_{j}: windows {} and {i} overlap or touch out of order", i - 1);
            }
            prev_end = Some(pv);
        }
        // AL2: attachments of A_i are confined to window i.
        for (i, a) in m.a_sets.iter().enumerate() {
            let (u, v) = wit.windows[i];
            let (pu, pv) = (pos(u).unwrap(), pos(v).unwrap());
            for (p, &x) in order.iter().enumerate() {
                if g.nbrs(x).intersects(a) {
                    require!(
                        p >= pu && p <= pv,
                        "B_{j}: vertex {x} has a neighbor in A_{i} outside window {i}"
                    );
                }
            }
        }
    }
    Checked::Ok
}

/// Checks a (k,l)-block; `strong` additionally demands that paths of distinct
/// pairs meet only in shared endpoints.
pub fn verify_block(g: &Graph, blk: &Block, strong: bool) -> Checked {
    require!(
        blk.b.iter().all(|v| v < g.n()),
        "block vertex set leaves the graph"
    );
    let members = blk.b.to_vec();
    require!(members.len() >= 2, "block needs at least 2 vertices");
    for x in 0..members.len() {
        for y in x + 1..members.len() {
            let key = (members[x], members[y]);
            let Some(paths) = blk.paths.get(&key) else {
                return Checked::Bad(format!("no path family for pair {key:?}"));
            };
            require!(!paths.is_empty(), "empty path family for pair {key:?}");
            for (pi, p) in paths.iter().enumerate() {
                require!(
                    g.is_induced_path(&p.order),
                    "pair {key:?} path {pi} is not an induced path"
                );
                let (a, b) = p.ends();
                require!(
                    (a, b) == key || (b, a) == key,
                    "pair {key:?} path {pi} has wrong ends"
                );
            }
            for pi in 0..paths.len() {
                for pj in pi + 1..paths.len() {
                    let ii = paths[pi].interior_set(g.n());
                    let jj = paths[pj].interior_set(g.n());
                    require!(
                        ii.is_disjoint(&jj),
                        "pair {key:?} paths {pi} and {pj} share an interior vertex"
                    );
                }
            }
        }
    }
    for (k1, ps1) in &blk.paths {
        require!(
            blk.b.contains(k1.0) && blk.b.contains(k1.1) && k1.0 < k1.1,
            "path family key {k1:?} is not a 2-subset of B"
        );
        if strong {
            for (k2, ps2) in &blk.paths {
                if k2 <= k1 {
                    continue;
                }
                let shared: Vec<usize> = [k1.0, k1.1]
                    .iter()
                    .filter(|v| **v == k2.0 || **v == k2.1)
                    .copied()
                    .collect();
                for p1 in ps1 {
                    let v1 = p1.vertex_set(g.n());
                    for p2 in ps2 {
                        let inter = v1.intersection(&p2.vertex_set(g.n()));
                        let expect = VertexSet::from_iter(g.n(), shared.iter().copied());
                        require!(
                            inter == expect,
                            "strongness fails between pairs {k1:?} and {k2:?}"
                        );
                    }
                }
            }
        }
    }
    Checked::Ok
}

/// An induced proper subdivision of a complete graph: branch vertices plus
/// one connecting path per pair.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SubdivisionCert {
    pub branch: Vec<usize>,
    /// One entry per 2-subset of `branch`, keyed by (min, max).
    pub paths: BTreeMap<(usize, usize), PathWitness>,
}

/// Checks that the union of the certificate's paths is an induced subgraph of
/// `g` isomorphic to a proper subdivision of K_s: branch vertices pairwise
/// non-adjacent, each connecting path induced with a nonempty interior,
/// interiors pairwise anticomplete, and every branch vertex anticomplete to
/// the interiors of paths not incident to it.
pub fn verify_subdivision(g: &Graph, cert: &SubdivisionCert) -> Checked {
    let s = cert.branch.len();
    require!(s >= 1, "no branch vertices");
    let bset = VertexSet::from_iter(g.n(), cert.branch.iter().copied());
    require!(bset.len() == s, "branch vertices repeat");
    for i in 0..s {
        for j in i + 1..s {
            require!(
                !g.adjacent(cert.branch[i], cert.branch[j]),
                "branch vertices {} and {} are adjacent",
                cert.branch[i],
                cert.branch[j]
            );
        }
    }
    let mut interiors: Vec<((usize, usize), VertexSet)> = Vec::new();
    for i in 0..s {
        for j in i + 1..s {
            let (x, y) = (cert.branch[i].min(cert.branch[j]), cert.branch[i].max(cert.branch[j]));
            let Some(p) = cert.paths.get(&(x, y)) else {
                return Checked::Bad(format!("missing path for pair ({x},{y})"));
            };
            require!(g.is_induced_path(&p.order), "path ({x},{y}) is not induced");
            let (a, b) = p.ends();
            require!(
                (a == x && b == y) || (a == y && b == x),
                "path ({x},{y}) has wrong ends"
            );
            require!(!p.interior().is_empty(), "path ({x},{y}) has an empty interior");
            interiors.push(((x, y), p.interior_set(g.n())));
        }
    }
    for i in 0..interiors.len() {
        for j in i + 1..interiors.len() {
            require!(
                g.are_anticomplete(&interiors[i].1, &interiors[j].1),
                "interiors of pairs {:?} and {:?} are not anticomplete",
                interiors[i].0,
                interiors[j].0
            );
        }
    }
    for &z in &cert.branch {
        let zset = VertexSet::from_iter(g.n(), [z]);
        for ((x, y), inner) in &interiors {
            if z != *x && z != *y {
                require!(
                    g.are_anticomplete(&zset, inner),
                    "branch vertex {z} attaches to the interior of pair ({x},{y})"
                );
            }
        }
    }
    Checked::Ok
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;

    fn k22() -> Graph {
        // sides {0,1} and {2,3}
        Graph::from_edges(4, &[(0, 2), (0, 3), (1, 2), (1, 3)]).unwrap()
    }

    fn singleton(n: usize, v: usize) -> VertexSet {
        VertexSet::from_iter(n, [v])
    }

    #[test]
    fn k22_identity_model_verifies() {
        let g = k22();
        let m = BipartiteModel {
            a_sets: vec![singleton(4, 0), singleton(4, 1)],
            b_sets: vec![singleton(4, 2), singleton(4, 3)],
            a_induced: true,
            b_induced: true,
            a_paths: Some(vec![PathWitness::new(vec![0]), PathWitness::new(vec![1])]),
            b_paths: Some(vec![PathWitness::new(vec![2]), PathWitness::new(vec![3])]),
        };
        assert!(verify_bipartite_model(&g, &m).ok());
    }

    #[test]
    fn flag_contradiction_rejected() {
        // Same K_{2,2} plus an edge inside the A side; the enlarged A-set now
        // touches the other one, so the A_induced claim must fail.
        let mut g = k22();
        g.add_edge(0, 1);
        let m = BipartiteModel {
            a_sets: vec![singleton(4, 0), singleton(4, 1)],
            b_sets: vec![singleton(4, 2), singleton(4, 3)],
            a_induced: true,
            b_induced: true,
            a_paths: None,
            b_paths: None,
        };
        let res = verify_bipartite_model(&g, &m);
        assert!(!res.ok());
        assert!(res.reason().unwrap().contains("A_induced"));
    }

    #[test]
    fn block_on_k4_single_edges_is_strong() {
        let mut g = Graph::empty(4);
        for u in 0..4 {
            for v in u + 1..4 {
                g.add_edge(u, v);
            }
        }
        let mut paths = BTreeMap::new();
        for u in 0..4usize {
            for v in u + 1..4 {
                paths.insert((u, v), vec![PathWitness::new(vec![u, v])]);
            }
        }
        let blk = Block { b: VertexSet::from_iter(4, 0..4), paths };
        assert!(verify_block(&g, &blk, true).ok());
        assert_eq!(blk.k(), 4);
        assert_eq!(blk.l(), 1);
    }

    #[test]
    fn subdivision_of_k3_is_c6() {
        // triangle on {0,1,2} each edge subdivided once -> C6
        let g = Graph::from_edges(6, &[(0, 3), (3, 1), (1, 4), (4, 2), (2, 5), (5, 0)]).unwrap();
        let mut paths = BTreeMap::new();
        paths.insert((0, 1), PathWitness::new(vec![0, 3, 1]));
        paths.insert((1, 2), PathWitness::new(vec![1, 4, 2]));
        paths.insert((0, 2), PathWitness::new(vec![0, 5, 2]));
        let cert = SubdivisionCert { branch: vec![0, 1, 2], paths };
        assert!(verify_subdivision(&g, &cert).ok());
    }

    #[test]
    fn transpose_swaps_sides() {
        let m = BipartiteModel {
            a_sets: vec![singleton(4, 0)],
            b_sets: vec![singleton(4, 2), singleton(4, 3)],
            a_induced: true,
            b_induced: false,
            a_paths: None,
            b_paths: None,
        };
        let t = m.transpose();
        assert_eq!(t.rho(), 2);
        assert_eq!(t.sigma(), 1);
        assert!(t.b_induced);
        assert!(!t.a_induced);
    }
}
