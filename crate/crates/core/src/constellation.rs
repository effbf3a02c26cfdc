//! Constellations, routes, and the ample/interrupted/zigzag predicates.
//!
//! An (s,l)-constellation is a graph with a stable set S of size s whose
//! removal leaves exactly l components, each an induced path, with every
//! vertex of S attaching to every path. Routes are induced paths between two
//! S-vertices whose interior lives inside one of the paths.

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::graph::{Graph, PathWitness, VertexSet};
use crate::structures::Checked;
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Constellation {
    pub s: VertexSet,
    /// The components of the constellation minus S, each an induced path.
    pub l_paths: Vec<PathWitness>,
    /// Optional linear order on S (used by the interrupted/zigzag predicates).
    pub order: Option<Vec<usize>>,
}

impl Constellation {
    pub fn s_size(&self) -> usize {
        self.s.len()
    }

    pub fn l_count(&self) -> usize {
        self.l_paths.len()
    }

    pub fn vertex_union(&self, capacity: usize) -> VertexSet {
        let mut u = self.s.clone();
        for p in &self.l_paths {
            u.union_with(&p.vertex_set(capacity));
        }
        u
    }
}

/// A route: an induced path with both ends in S and interior inside one of
/// the constellation's paths.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Route {
    /// Full vertex order, S-end to S-end.
    pub witness: PathWitness,
    /// Index of the constellation path hosting the interior.
    pub l_index: usize,
}

impl Route {
    pub fn x(&self) -> usize {
        self.witness.order[0]
    }

    pub fn y(&self) -> usize {
        *self.witness.order.last().unwrap()
    }

    pub fn length(&self) -> usize {
        self.witness.len_edges()
    }

    pub fn interior(&self) -> &[usize] {
        self.witness.interior()
    }
}

/// Which vertex set of a route the interrupted predicate inspects. The two
/// section-level phrasings differ (interior-only vs whole route), but for a
/// constellation they coincide: the ends lie in the stable set S, so no
/// S-vertex can attach to them anyway. Both are kept selectable and a test
/// records the equivalence on every generated instance.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum AttachRule {
    /// Neighbor anywhere on the route (default).
    #[default]
    WholeRoute,
    /// Neighbor in the route interior only.
    InteriorOnly,
}

/// Verifies the constellation invariants against the host graph: S stable,
/// removing S from the certificate's vertex span leaves exactly the listed
/// paths as components, and every S-vertex attaches to every path.
pub fn verify_constellation(g: &Graph, c: &Constellation) -> Checked {
    if c.s.iter().any(|v| v >= g.n()) {
        return Checked::Bad("S leaves the graph".into());
    }
    if !g.is_stable_set(&c.s) {
        return Checked::Bad("S is not a stable set".into());
    }
    if c.l_paths.is_empty() {
        return Checked::Bad("no paths listed".into());
    }
    let mut union = VertexSet::empty(g.n());
    for (i, p) in c.l_paths.iter().enumerate() {
        if p.order.is_empty() {
            return Checked::Bad(format!("path {i} is empty"));
        }
        if !g.is_induced_path(&p.order) {
            return Checked::Bad(format!("path {i} is not an induced path"));
        }
        let vs = p.vertex_set(g.n());
        if vs.intersects(&c.s) {
            return Checked::Bad(format!("path {i} meets S"));
        }
        if vs.intersects(&union) {
            return Checked::Bad(format!("path {i} overlaps another path"));
        }
        union.union_with(&vs);
    }
    // The listed paths must be exactly the components of the span minus S.
    let span = union.union(&c.s);
    let rest = span.difference(&c.s);
    let comps = g.components_within(&rest);
    if comps.len() != c.l_paths.len() {
        return Checked::Bad(format!(
            "span minus S has {} components, certificate lists {}",
            comps.len(),
            c.l_paths.len()
        ));
    }
    for comp in &comps {
        if !c.l_paths.iter().any(|p| p.vertex_set(g.n()) == *comp) {
            return Checked::Bad("a component of the span minus S is not a listed path".into());
        }
    }
    for x in c.s.iter() {
        for (i, p) in c.l_paths.iter().enumerate() {
            if !g.nbrs(x).intersects(&p.vertex_set(g.n())) {
                return Checked::Bad(format!("S-vertex {x} has no neighbor in path {i}"));
            }
        }
    }
    if let Some(ord) = &c.order {
        let os = VertexSet::from_iter(g.n(), ord.iter().copied());
        if os != c.s || ord.len() != c.s.len() {
            return Checked::Bad("order is not a permutation of S".into());
        }
    }
    Checked::Ok
}

/// All routes between distinct S-vertices `x` and `y`, in canonical order
/// (by path index, then by interior endpoints). Complete below `cap`; hitting
/// the cap is an error so incompleteness is never silent.
pub fn enumerate_routes(
    g: &Graph,
    c: &Constellation,
    x: usize,
    y: usize,
    budget: &mut Budget,
) -> Result<Vec<Route>> {
    if x == y {
        return Err(Error::precondition("route ends must be distinct"));
    }
    if !c.s.contains(x) || !c.s.contains(y) {
        return Err(Error::precondition("route ends must lie in S"));
    }
    let mut out = Vec::new();
    for (li, p) in c.l_paths.iter().enumerate() {
        let pos_of: Vec<usize> = p.order.clone();
        let nx: Vec<usize> = (0..pos_of.len()).filter(|&i| g.adjacent(x, pos_of[i])).collect();
        let ny: Vec<usize> = (0..pos_of.len()).filter(|&i| g.adjacent(y, pos_of[i])).collect();
        for &a in &nx {
            for &b in &ny {
                budget.tick(1)?;
                let (lo, hi) = (a.min(b), a.max(b));
                // The segment [lo..hi] is a route interior iff x attaches to
                // it only at a and y only at b.
                let seg_ok = (lo..=hi).all(|i| {
                    (g.adjacent(x, pos_of[i]) == (i == a)) && (g.adjacent(y, pos_of[i]) == (i == b))
                });
                if !seg_ok {
                    continue;
                }
                let mut order = vec![x];
                if a <= b {
                    order.extend(pos_of[lo..=hi].iter().copied());
                } else {
                    order.extend(pos_of[lo..=hi].iter().rev().copied());
                }
                order.push(y);
                debug_assert!(g.is_induced_path(&order));
                out.push(Route { witness: PathWitness::new(order), l_index: li });
            }
        }
    }
    Ok(out)
}

/// All routes between every pair of S-vertices, keyed by (position in S order).
fn all_pair_routes(
    g: &Graph,
    c: &Constellation,
    budget: &mut Budget,
) -> Result<Vec<Vec<Vec<Route>>>> {
    let s: Vec<usize> = c.s.to_vec();
    let mut table = vec![vec![Vec::new(); s.len()]; s.len()];
    for i in 0..s.len() {
        for j in i + 1..s.len() {
            let routes = enumerate_routes(g, c, s[i], s[j], budget)?;
            table[i][j] = routes;
        }
    }
    Ok(table)
}

/// d-ample: no route of length at most d+1. For d=1 this is equivalent to no
/// two S-vertices sharing a neighbor on the paths.
pub fn is_d_ample(g: &Graph, c: &Constellation, d: usize) -> Result<bool> {
    let mut budget = Budget::unlimited();
    let s: Vec<usize> = c.s.to_vec();
    for i in 0..s.len() {
        for j in i + 1..s.len() {
            for r in enumerate_routes(g, c, s[i], s[j], &mut budget)? {
                if r.length() <= d + 1 {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// A linear order on S returned by the interrupted/zigzag deciders.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrderWitness {
    pub order: Vec<usize>,
}

pub const MAX_ORDER_SEARCH: usize = 8;

/// For each pair (i,j) of S-positions and each route between them, the set of
/// S-positions with a neighbor on the route (per the chosen attach rule).
fn route_attach_masks(
    g: &Graph,
    c: &Constellation,
    rule: AttachRule,
    budget: &mut Budget,
) -> Result<Vec<Vec<Vec<u64>>>> {
    let s: Vec<usize> = c.s.to_vec();
    let table = all_pair_routes(g, c, budget)?;
    let masks = table
        .iter()
        .map(|row| {
            row.iter()
                .map(|routes| {
                    routes
                        .iter()
                        .map(|r| {
                            let verts: &[usize] = match rule {
                                AttachRule::WholeRoute => &r.witness.order,
                                AttachRule::InteriorOnly => r.witness.interior(),
                            };
                            let mut mask = 0u64;
                            for (k, &z) in s.iter().enumerate() {
                                if verts.iter().any(|&v| g.adjacent(z, v)) {
                                    mask |= 1 << k;
                                }
                            }
                            mask
                        })
                        .collect()
                })
                .collect()
        })
        .collect();
    Ok(masks)
}

enum OrderGoal<'a> {
    /// Every z placed after both ends of a pair must attach to all its routes.
    Interrupted { allowed_after: &'a [Vec<u64>] },
    /// Fewer than q placed-between vertices may miss a route.
    Zigzag { masks: &'a [Vec<Vec<u64>>], q: usize },
}

fn order_search(s: &[usize], goal: &OrderGoal, supplied: Option<&[usize]>) -> Result<Option<OrderWitness>> {
    let k = s.len();
    let index_of = |v: usize| s.iter().position(|&x| x == v);
    if let Some(ord) = supplied {
        if ord.len() != k {
            return Err(Error::precondition("supplied order must cover S exactly"));
        }
        let mut perm = Vec::with_capacity(k);
        for &v in ord {
            match index_of(v) {
                Some(i) if !perm.contains(&i) => perm.push(i),
                _ => return Err(Error::precondition("supplied order is not a permutation of S")),
            }
        }
        return Ok(if order_valid(&perm, goal) {
            Some(OrderWitness { order: ord.to_vec() })
        } else {
            None
        });
    }
    if k > MAX_ORDER_SEARCH {
        return Err(Error::TooManyOrders { s: k, max: MAX_ORDER_SEARCH });
    }
    let mut perm: Vec<usize> = Vec::with_capacity(k);
    let mut used = vec![false; k];
    if search_rec(&mut perm, &mut used, k, goal) {
        let order = perm.iter().map(|&i| s[i]).collect();
        return Ok(Some(OrderWitness { order }));
    }
    Ok(None)
}

fn search_rec(perm: &mut Vec<usize>, used: &mut [bool], k: usize, goal: &OrderGoal) -> bool {
    if perm.len() == k {
        return true;
    }
    for cand in 0..k {
        if used[cand] {
            continue;
        }
        perm.push(cand);
        used[cand] = true;
        if prefix_ok(perm, used, goal) && search_rec(perm, used, k, goal) {
            return true;
        }
        used[cand] = false;
        perm.pop();
    }
    false
}

/// Incremental feasibility when the last element of the prefix was placed.
fn prefix_ok(perm: &[usize], used: &[bool], goal: &OrderGoal) -> bool {
    let j = perm.len() - 1;
    let y = perm[j];
    match goal {
        OrderGoal::Interrupted { allowed_after } => {
            // Placing y closes pairs (x, y) for earlier x: every still-unplaced
            // vertex will come after both, so must lie in allowed_after[x][y].
            for &x in &perm[..j] {
                let allow = allowed_after[x.min(y)][x.max(y)];
                for (z, &u) in used.iter().enumerate() {
                    if !u && allow & (1 << z) == 0 {
                        return false;
                    }
                }
            }
            true
        }
        OrderGoal::Zigzag { masks, q } => {
            // Placing y fixes the between-set for every earlier x: everything
            // at positions strictly between them is already placed.
            for (pi, &x) in perm[..j].iter().enumerate() {
                let between = &perm[pi + 1..j];
                let (a, b) = (x.min(y), x.max(y));
                for &mask in &masks[a][b] {
                    let missing = between.iter().filter(|&&z| mask & (1 << z) == 0).count();
                    if missing >= *q {
                        return false;
                    }
                }
            }
            true
        }
    }
}

fn order_valid(perm: &[usize], goal: &OrderGoal) -> bool {
    match goal {
        OrderGoal::Interrupted { allowed_after } => {
            for j in 1..perm.len() {
                for i in 0..j {
                    let (a, b) = (perm[i].min(perm[j]), perm[i].max(perm[j]));
                    let allow = allowed_after[a][b];
                    for &z in &perm[j + 1..] {
                        if allow & (1 << z) == 0 {
                            return false;
                        }
                    }
                }
            }
            true
        }
        OrderGoal::Zigzag { masks, q } => {
            for j in 1..perm.len() {
                for i in 0..j {
                    let (a, b) = (perm[i].min(perm[j]), perm[i].max(perm[j]));
                    for &mask in &masks[a][b] {
                        let missing =
                            perm[i + 1..j].iter().filter(|&&z| mask & (1 << z) == 0).count();
                        if missing >= *q {
                            return false;
                        }
                    }
                }
            }
            true
        }
    }
}

/// Decides whether the constellation is interrupted: an order on S such that
/// for x ≺ y ≺ z, every route between x and y carries a neighbor of z.
/// Tries all |S|! orders when none is supplied (|S| <= 8).
pub fn is_interrupted(
    g: &Graph,
    c: &Constellation,
    supplied: Option<&[usize]>,
    rule: AttachRule,
) -> Result<Option<OrderWitness>> {
    let s: Vec<usize> = c.s.to_vec();
    let mut budget = Budget::default();
    let masks = route_attach_masks(g, c, rule, &mut budget)?;
    // Intersect over all routes of each pair: a later vertex must hit all of them.
    let mut allowed_after = vec![vec![u64::MAX; s.len()]; s.len()];
    for i in 0..s.len() {
        for j in i + 1..s.len() {
            let mut inter = u64::MAX;
            for &m in &masks[i][j] {
                inter &= m;
            }
            allowed_after[i][j] = inter;
        }
    }
    order_search(&s, &OrderGoal::Interrupted { allowed_after: &allowed_after }, supplied)
}

/// Decides whether the constellation is q-zigzagged: an order on S such that
/// for x ≺ y, every route between them is missed by fewer than q vertices
/// strictly between x and y.
pub fn is_q_zigzagged(
    g: &Graph,
    c: &Constellation,
    q: usize,
    supplied: Option<&[usize]>,
) -> Result<Option<OrderWitness>> {
    if q == 0 {
        return Err(Error::precondition("q must be at least 1"));
    }
    let s: Vec<usize> = c.s.to_vec();
    let mut budget = Budget::default();
    let masks = route_attach_masks(g, c, AttachRule::WholeRoute, &mut budget)?;
    order_search(&s, &OrderGoal::Zigzag { masks: &masks, q }, supplied)
}

#[cfg(test)]
mod tests {
    use super::*;

    /// The nested 3-constellation: L = l_1..l_9 (ids 3..11), S = {x1,x2,x3}
    /// (ids 0,1,2), N(x1)={l1,l9}, N(x2)={l3,l7}, N(x3)={l2,l8}.
    pub fn nested3() -> (Graph, Constellation) {
        let mut g = Graph::empty(12);
        for i in 3..11 {
            g.add_edge(i, i + 1);
        }
        let l = |i: usize| 2 + i; // l_i -> vertex id
        for (x, ns) in [(0, [1, 9]), (1, [3, 7]), (2, [2, 8])] {
            for n in ns {
                g.add_edge(x, l(n));
            }
        }
        let c = Constellation {
            s: VertexSet::from_iter(12, [0, 1, 2]),
            l_paths: vec![PathWitness::new((3..12).collect())],
            order: Some(vec![0, 1, 2]),
        };
        (g, c)
    }

    #[test]
    fn nested3_verifies() {
        let (g, c) = nested3();
        assert!(verify_constellation(&g, &c).ok());
    }

    #[test]
    fn nested3_routes_x1_x2() {
        // Independent hand check: the only route interiors between x1 and x2
        // are the segments l1..l3 and l7..l9. Any wider segment contains a
        // second neighbor of one end, breaking inducedness.
        let (g, c) = nested3();
        let mut budget = Budget::unlimited();
        let routes = enumerate_routes(&g, &c, 0, 1, &mut budget).unwrap();
        let mut interiors: Vec<Vec<usize>> = routes
            .iter()
            .map(|r| {
                let mut i = r.interior().to_vec();
                i.sort_unstable();
                i
            })
            .collect();
        interiors.sort();
        assert_eq!(interiors, vec![vec![3, 4, 5], vec![9, 10, 11]]);
    }

    #[test]
    fn route_ends_must_differ() {
        let (g, c) = nested3();
        let mut budget = Budget::unlimited();
        assert!(enumerate_routes(&g, &c, 0, 0, &mut budget).is_err());
    }

    #[test]
    fn nested3_is_ample_and_interrupted() {
        let (g, c) = nested3();
        assert!(is_d_ample(&g, &c, 1).unwrap());
        let w = is_interrupted(&g, &c, Some(&[0, 1, 2]), AttachRule::WholeRoute).unwrap();
        assert!(w.is_some());
        // Both attach rules agree (the ends of a route lie in the stable set).
        let w2 = is_interrupted(&g, &c, Some(&[0, 1, 2]), AttachRule::InteriorOnly).unwrap();
        assert_eq!(w.is_some(), w2.is_some());
    }

    #[test]
    fn nested3_broken_attachments_rejected() {
        // Move x3's neighbors to {l4,l5}: the route with interior l7,l8,l9
        // misses x3, so no order starting x1,x2 works; in fact no order works.
        let mut g = Graph::empty(12);
        for i in 3..11 {
            g.add_edge(i, i + 1);
        }
        let l = |i: usize| 2 + i;
        for (x, ns) in [(0, [1, 9]), (1, [3, 7]), (2, [4, 5])] {
            for n in ns {
                g.add_edge(x, l(n));
            }
        }
        let c = Constellation {
            s: VertexSet::from_iter(12, [0, 1, 2]),
            l_paths: vec![PathWitness::new((3..12).collect())],
            order: None,
        };
        assert!(verify_constellation(&g, &c).ok());
        let w = is_interrupted(&g, &c, Some(&[0, 1, 2]), AttachRule::WholeRoute).unwrap();
        assert!(w.is_none());
    }

    #[test]
    fn small_s_vacuous() {
        let (g, c) = nested3();
        // Any 2-subset of S is vacuously interrupted.
        let c2 = Constellation {
            s: VertexSet::from_iter(12, [0, 1]),
            l_paths: c.l_paths.clone(),
            order: None,
        };
        // Not a constellation check here; the predicate itself is what's vacuous.
        let w = is_interrupted(&g, &c2, None, AttachRule::WholeRoute).unwrap();
        assert!(w.is_some());
        let wz = is_q_zigzagged(&g, &c2, 1, None).unwrap();
        assert!(wz.is_some());
    }

    #[test]
    fn interrupted_versus_zigzag_orders() {
        // The two predicates quantify differently: interrupted constrains
        // vertices placed after a pair, 1-zigzagged constrains vertices
        // between a pair. On this instance the interrupted order [x1,x2,x3]
        // is NOT a 1-zigzag order (the route x1-l1-l2-x3 misses x2), but a
        // 1-zigzag order exists with x3 in the middle.
        let (g, c) = nested3();
        let w = is_interrupted(&g, &c, Some(&[0, 1, 2]), AttachRule::WholeRoute).unwrap().unwrap();
        let same_order = is_q_zigzagged(&g, &c, 1, Some(&w.order)).unwrap();
        assert!(same_order.is_none());
        let some_order = is_q_zigzagged(&g, &c, 1, None).unwrap();
        assert_eq!(some_order.unwrap().order, vec![0, 2, 1]);
    }
}
