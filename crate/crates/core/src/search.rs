//! Exhaustive desk-scale searches for minor models and anticomplete pairs.
//!
//! Both searches are exact: a `None` answer means the pruned enumeration ran
//! to completion, and every prune is justified by a monotonicity argument
//! (growing a branch set can only lose disjointness or flag constraints,
//! never regain them; growing one side of an anticomplete pair only shrinks
//! the other side's room). Searches are run under iterative deepening on the
//! total model size, so small witnesses are found before the state space
//! gets wide.

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::graph::{Graph, PathWitness, VertexSet};
use crate::structures::{
    verify_bipartite_model, verify_complete_model, BipartiteModel, CompleteModel,
};
use crate::treewidth::{self, tw_at_least};
use serde::{Deserialize, Serialize};

/// What a connected-set enumeration callback wants next.
enum Walk {
    /// Keep enumerating, including extensions of the current set.
    Continue,
    /// Skip extensions of the current set, keep enumerating elsewhere.
    Prune,
    /// Stop the whole enumeration.
    Stop,
}

/// Searches for a (rho,sigma)-model with the requested induced flags.
/// Branch sets are grown smallest-first (iterative deepening on the total
/// vertex count) with canonical ordering: the minimum vertex increases along
/// each side, which kills permuted duplicates. Induced-flag constraints
/// prune during growth.
pub fn find_bipartite_minor_model(
    g: &Graph,
    rho: usize,
    sigma: usize,
    require_a_induced: bool,
    require_b_induced: bool,
    budget: &mut Budget,
) -> Result<Option<BipartiteModel>> {
    if rho == 0 || sigma == 0 {
        return Err(Error::precondition("model sides must be nonempty"));
    }
    if rho + sigma > g.n() {
        return Ok(None);
    }
    for max_total in rho + sigma..=g.n() {
        let mut st = ModelSearch {
            g,
            rho,
            sigma,
            a_induced: require_a_induced,
            b_induced: require_b_induced,
            a_sets: Vec::new(),
            b_sets: Vec::new(),
            used: VertexSet::empty(g.n()),
            max_total,
        };
        if st.place_a(0, budget)? {
            let model = st.into_model();
            let check = verify_bipartite_model(g, &model);
            if !check.ok() {
                return Err(Error::defect(format!(
                    "model search produced an invalid model: {}",
                    check.reason().unwrap_or("?")
                )));
            }
            return Ok(Some(model));
        }
    }
    Ok(None)
}

struct ModelSearch<'a> {
    g: &'a Graph,
    rho: usize,
    sigma: usize,
    a_induced: bool,
    b_induced: bool,
    a_sets: Vec<VertexSet>,
    b_sets: Vec<VertexSet>,
    used: VertexSet,
    max_total: usize,
}

impl<'a> ModelSearch<'a> {
    fn into_model(self) -> BipartiteModel {
        let path_of = |s: &VertexSet| path_witness_of(self.g, s);
        let a_paths: Option<Vec<PathWitness>> = self.a_sets.iter().map(path_of).collect();
        let b_paths: Option<Vec<PathWitness>> = self.b_sets.iter().map(path_of).collect();
        BipartiteModel {
            a_induced: self.a_induced,
            b_induced: self.b_induced,
            a_sets: self.a_sets,
            b_sets: self.b_sets,
            a_paths,
            b_paths,
        }
    }

    fn slots_left_after_current(&self, placing_a: bool, slot: usize) -> usize {
        if placing_a {
            (self.rho - slot - 1) + self.sigma
        } else {
            self.sigma - slot - 1
        }
    }

    fn place_a(&mut self, slot: usize, budget: &mut Budget) -> Result<bool> {
        if slot == self.rho {
            if !self.a_feasible(self.sigma) {
                return Ok(false);
            }
            return self.place_b(0, budget);
        }
        let min_root = if slot == 0 { 0 } else { self.a_sets[slot - 1].first().unwrap() + 1 };
        for root in min_root..self.g.n() {
            if self.used.contains(root) {
                continue;
            }
            let mut allowed = VertexSet::full(self.g.n());
            allowed.subtract(&self.used);
            for v in 0..root {
                allowed.remove(v);
            }
            if self.a_induced {
                for prev in &self.a_sets[..slot] {
                    allowed.subtract(&self.g.neighborhood_of_set(prev));
                }
                if !allowed.contains(root) {
                    continue;
                }
            }
            let mut found = false;
            enumerate_connected(self.g, root, &allowed, budget, &mut |set, budget| {
                if self.used.len() + set.len() + self.slots_left_after_current(true, slot)
                    > self.max_total
                {
                    return Ok(Walk::Prune);
                }
                self.a_sets.push(set.clone());
                let mut u2 = self.used.clone();
                u2.union_with(set);
                let saved = std::mem::replace(&mut self.used, u2);
                match self.place_a(slot + 1, budget) {
                    Ok(true) => {
                        found = true;
                        Ok(Walk::Stop) // keep the successful assignment in place
                    }
                    Ok(false) => {
                        self.used = saved;
                        self.a_sets.pop();
                        Ok(Walk::Continue)
                    }
                    Err(e) => {
                        self.used = saved;
                        self.a_sets.pop();
                        Err(e)
                    }
                }
            })?;
            if found {
                return Ok(true);
            }
        }
        Ok(false)
    }

    /// Every A-set needs at least `need` usable attachment vertices: the
    /// B-sets are disjoint and each must carry its own contact.
    fn a_feasible(&self, need: usize) -> bool {
        self.a_sets.iter().all(|a| {
            let mut pool = self.g.neighborhood_of_set(a);
            pool.subtract(&self.used);
            pool.len() >= need
        })
    }

    fn place_b(&mut self, slot: usize, budget: &mut Budget) -> Result<bool> {
        if slot == self.sigma {
            return Ok(true);
        }
        let min_root = if slot == 0 { 0 } else { self.b_sets[slot - 1].first().unwrap() + 1 };
        for root in min_root..self.g.n() {
            if self.used.contains(root) {
                continue;
            }
            let mut allowed = VertexSet::full(self.g.n());
            allowed.subtract(&self.used);
            for v in 0..root {
                allowed.remove(v);
            }
            if self.b_induced {
                for prev in &self.b_sets[..slot] {
                    allowed.subtract(&self.g.neighborhood_of_set(prev));
                }
                if !allowed.contains(root) {
                    continue;
                }
            }
            let mut found = false;
            enumerate_connected(self.g, root, &allowed, budget, &mut |set, budget| {
                if self.used.len() + set.len() + self.slots_left_after_current(false, slot)
                    > self.max_total
                {
                    return Ok(Walk::Prune);
                }
                // a completed B-set must touch every A-set
                if !self.a_sets.iter().all(|a| !self.g.are_anticomplete(a, set)) {
                    return Ok(Walk::Continue);
                }
                self.b_sets.push(set.clone());
                let mut u2 = self.used.clone();
                u2.union_with(set);
                let saved = std::mem::replace(&mut self.used, u2);
                let feasible = self.a_feasible(self.sigma - slot - 1);
                let r = if feasible { self.place_b(slot + 1, budget) } else { Ok(false) };
                match r {
                    Ok(true) => {
                        found = true;
                        Ok(Walk::Stop)
                    }
                    Ok(false) => {
                        self.used = saved;
                        self.b_sets.pop();
                        Ok(Walk::Continue)
                    }
                    Err(e) => {
                        self.used = saved;
                        self.b_sets.pop();
                        Err(e)
                    }
                }
            })?;
            if found {
                return Ok(true);
            }
        }
        Ok(false)
    }
}

/// Enumerates connected subsets of `allowed` whose minimum vertex is `root`,
/// via the include/ban expansion tree (each set visited exactly once).
/// Returns Ok(false) iff the callback stopped the enumeration.
fn enumerate_connected(
    g: &Graph,
    root: usize,
    allowed: &VertexSet,
    budget: &mut Budget,
    f: &mut dyn FnMut(&VertexSet, &mut Budget) -> Result<Walk>,
) -> Result<bool> {
    if !allowed.contains(root) {
        return Ok(true);
    }
    let mut set = VertexSet::empty(g.n());
    set.insert(root);
    let mut banned = VertexSet::empty(g.n());
    rec_connected(g, &mut set, &mut banned, allowed, budget, f)
}

fn rec_connected(
    g: &Graph,
    set: &mut VertexSet,
    banned: &mut VertexSet,
    allowed: &VertexSet,
    budget: &mut Budget,
    f: &mut dyn FnMut(&VertexSet, &mut Budget) -> Result<Walk>,
) -> Result<bool> {
    budget.tick(1)?;
    match f(set, budget)? {
        Walk::Stop => return Ok(false),
        Walk::Prune => return Ok(true),
        Walk::Continue => {}
    }
    let mut frontier = g.neighborhood_of_set(set);
    frontier.intersect_with(allowed);
    frontier.subtract(banned);
    let Some(v) = frontier.first() else {
        return Ok(true);
    };
    set.insert(v);
    if !rec_connected(g, set, banned, allowed, budget, f)? {
        return Ok(false);
    }
    set.remove(v);
    banned.insert(v);
    let cont = rec_connected(g, set, banned, allowed, budget, f)?;
    banned.remove(v);
    Ok(cont)
}

fn path_witness_of(g: &Graph, s: &VertexSet) -> Option<PathWitness> {
    let verts = s.to_vec();
    if verts.len() == 1 {
        return Some(PathWitness::new(verts));
    }
    let deg_in = |v: usize| g.nbrs(v).intersection(s).len();
    let ends: Vec<usize> = verts.iter().copied().filter(|&v| deg_in(v) == 1).collect();
    if ends.len() != 2 || verts.iter().any(|&v| deg_in(v) > 2) {
        return None;
    }
    let mut order = vec![ends[0]];
    let mut prev = usize::MAX;
    let mut cur = ends[0];
    while order.len() < verts.len() {
        let next = g.nbrs(cur).intersection(s).iter().find(|&w| w != prev)?;
        order.push(next);
        prev = cur;
        cur = next;
    }
    if g.is_induced_path(&order) {
        Some(PathWitness::new(order))
    } else {
        None
    }
}

/// Searches for a complete mu-model (pairwise non-anticomplete branch sets),
/// smallest-first.
pub fn find_complete_minor_model(
    g: &Graph,
    mu: usize,
    budget: &mut Budget,
) -> Result<Option<CompleteModel>> {
    if mu == 0 {
        return Err(Error::precondition("mu must be at least 1"));
    }
    if mu > g.n() {
        return Ok(None);
    }
    for max_total in mu..=g.n() {
        let mut sets: Vec<VertexSet> = Vec::new();
        let mut used = VertexSet::empty(g.n());
        let mut hit = false;
        place_complete(g, mu, max_total, &mut sets, &mut used, budget, &mut |_, _| {
            hit = true;
            Ok(false)
        })?;
        if hit {
            let model = complete_model_from(g, sets);
            let check = verify_complete_model(g, &model);
            if !check.ok() {
                return Err(Error::defect(format!(
                    "complete-model search produced an invalid model: {}",
                    check.reason().unwrap_or("?")
                )));
            }
            return Ok(Some(model));
        }
    }
    Ok(None)
}

fn complete_model_from(g: &Graph, sets: Vec<VertexSet>) -> CompleteModel {
    let paths: Option<Vec<PathWitness>> = sets.iter().map(|s| path_witness_of(g, s)).collect();
    CompleteModel { sets, paths }
}

/// DFS for complete models bounded by total size. `on_model` sees the graph
/// and the vertex union of each completed model; returning Ok(false) accepts
/// it and stops, Ok(true) keeps searching.
fn place_complete(
    g: &Graph,
    mu: usize,
    max_total: usize,
    sets: &mut Vec<VertexSet>,
    used: &mut VertexSet,
    budget: &mut Budget,
    on_model: &mut dyn FnMut(&Graph, &VertexSet) -> Result<bool>,
) -> Result<bool> {
    if sets.len() == mu {
        return Ok(!on_model(g, used)?);
    }
    let slot = sets.len();
    let min_root = if slot == 0 { 0 } else { sets[slot - 1].first().unwrap() + 1 };
    for root in min_root..g.n() {
        if used.contains(root) {
            continue;
        }
        let mut allowed = VertexSet::full(g.n());
        allowed.subtract(used);
        for v in 0..root {
            allowed.remove(v);
        }
        let mut stop = false;
        enumerate_connected(g, root, &allowed, budget, &mut |set, budget| {
            if used.len() + set.len() + (mu - slot - 1) > max_total {
                return Ok(Walk::Prune);
            }
            if !sets.iter().all(|s| !g.are_anticomplete(s, set)) {
                return Ok(Walk::Continue);
            }
            sets.push(set.clone());
            let mut u2 = used.clone();
            u2.union_with(set);
            let saved = std::mem::replace(used, u2);
            match place_complete(g, mu, max_total, sets, used, budget, on_model) {
                Ok(true) => {
                    stop = true;
                    Ok(Walk::Stop)
                }
                Ok(false) => {
                    *used = saved;
                    sets.pop();
                    Ok(Walk::Continue)
                }
                Err(e) => {
                    *used = saved;
                    sets.pop();
                    Err(e)
                }
            }
        })?;
        if stop {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Evidence that one side of an anticomplete pair has treewidth >= c.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub enum TwEvidence {
    /// A complete (c+1)-model inside the side: tw >= c since tw(K_{c+1}) = c.
    CliqueMinor(CompleteModel),
    /// An induced (c,c)-model inside the side: tw >= c since tw(K_{c,c}) = c.
    BicliqueMinor(BipartiteModel),
    /// No embedded witness; the verifier recomputes the treewidth exactly.
    Recompute,
}

/// Two anticomplete vertex sets, each of treewidth at least `c`, with
/// per-side evidence.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct AnticompletePairCert {
    pub x: VertexSet,
    pub y: VertexSet,
    pub c: usize,
    pub x_evidence: TwEvidence,
    pub y_evidence: TwEvidence,
}

/// Re-checks an anticomplete-pair certificate from scratch.
pub fn verify_anticomplete_pair(
    g: &Graph,
    cert: &AnticompletePairCert,
) -> crate::structures::Checked {
    use crate::structures::Checked;
    if !g.are_anticomplete(&cert.x, &cert.y) {
        return Checked::Bad("sides are not anticomplete".into());
    }
    for (side, ev, name) in
        [(&cert.x, &cert.x_evidence, "X"), (&cert.y, &cert.y_evidence, "Y")]
    {
        match ev {
            TwEvidence::CliqueMinor(k) => {
                if k.mu() != cert.c + 1 {
                    return Checked::Bad(format!("{name}: clique-minor evidence has wrong order"));
                }
                if !k.vertex_union(g.n()).is_subset(side) {
                    return Checked::Bad(format!("{name}: evidence leaves the side"));
                }
                let chk = verify_complete_model(g, k);
                if !chk.ok() {
                    return Checked::Bad(format!("{name}: {}", chk.reason().unwrap_or("?")));
                }
            }
            TwEvidence::BicliqueMinor(m) => {
                if m.rho() != cert.c || m.sigma() != cert.c || !m.is_induced() {
                    return Checked::Bad(format!("{name}: biclique evidence has wrong shape"));
                }
                if !m.vertex_union(g.n()).is_subset(side) {
                    return Checked::Bad(format!("{name}: evidence leaves the side"));
                }
                let chk = verify_bipartite_model(g, m);
                if !chk.ok() {
                    return Checked::Bad(format!("{name}: {}", chk.reason().unwrap_or("?")));
                }
            }
            TwEvidence::Recompute => match tw_at_least(g, side, cert.c) {
                Ok(true) => {}
                Ok(false) => return Checked::Bad(format!("{name}: treewidth below {}", cert.c)),
                Err(e) => return Checked::Bad(format!("{name}: treewidth recheck failed: {e}")),
            },
        }
    }
    Checked::Ok
}

/// Finds two anticomplete vertex sets each of treewidth >= c, or proves
/// there are none.
///
/// The search rests on two reductions. First, a pair (X, Y) with both sides
/// of treewidth >= c exists iff two CONNECTED anticomplete sets with that
/// treewidth exist (treewidth of a disjoint union is the max over
/// components). Second, for c <= 3, "connected with treewidth >= c" is
/// exactly "contains a K_{c+1} minor", so it suffices to enumerate complete
/// (c+1)-models K and ask whether some component of G - N[V(K)] still has
/// treewidth >= c; a model whose vertex union contains an already-checked
/// union is dominated (its complement side only shrinks) and is pruned.
/// For c >= 4 the K_{c+1}-minor equivalence fails and the search falls
/// back to enumerating connected sets with the same complement-side
/// dominance prune and exact treewidth tests.
pub fn find_anticomplete_pair(
    g: &Graph,
    c: usize,
    budget: &mut Budget,
) -> Result<Option<AnticompletePairCert>> {
    if c == 0 {
        return Err(Error::precondition("c must be at least 1"));
    }
    // Seed: component pairs. Two components of treewidth >= c settle it.
    let comps = g.components();
    let mut heavy: Vec<&VertexSet> = Vec::new();
    for comp in &comps {
        if tw_at_least(g, comp, c)? {
            heavy.push(comp);
            if heavy.len() == 2 {
                let cert = pair_cert(g, heavy[0].clone(), heavy[1].clone(), c, budget)?;
                return Ok(Some(cert));
            }
        }
    }
    if c <= 3 {
        find_pair_via_models(g, c, budget)
    } else {
        find_pair_generic(g, c, budget)
    }
}

fn pair_cert(
    g: &Graph,
    x: VertexSet,
    y: VertexSet,
    c: usize,
    budget: &mut Budget,
) -> Result<AnticompletePairCert> {
    let x_evidence = side_evidence(g, &x, c, budget)?;
    let y_evidence = side_evidence(g, &y, c, budget)?;
    let cert = AnticompletePairCert { x, y, c, x_evidence, y_evidence };
    let chk = verify_anticomplete_pair(g, &cert);
    if !chk.ok() {
        return Err(Error::defect(format!(
            "pair search produced an invalid certificate: {}",
            chk.reason().unwrap_or("?")
        )));
    }
    Ok(cert)
}

fn side_evidence(g: &Graph, side: &VertexSet, c: usize, budget: &mut Budget) -> Result<TwEvidence> {
    let (h, map) = g.induced_subgraph(side);
    if let Some(model) = find_complete_minor_model(&h, c + 1, budget)? {
        let sets = model
            .sets
            .iter()
            .map(|s| VertexSet::from_iter(g.n(), s.iter().map(|v| map[v])))
            .collect::<Vec<_>>();
        return Ok(TwEvidence::CliqueMinor(complete_model_from(g, sets)));
    }
    Ok(TwEvidence::Recompute)
}

/// c <= 3: enumerate complete (c+1)-models smallest-first with the dominance
/// prune; checked unions persist across deepening levels.
fn find_pair_via_models(
    g: &Graph,
    c: usize,
    budget: &mut Budget,
) -> Result<Option<AnticompletePairCert>> {
    let mut checked_unions: Vec<VertexSet> = Vec::new();
    let mut answer: Option<(VertexSet, VertexSet)> = None;
    for max_total in (c + 1)..=g.n() {
        let mut sets: Vec<VertexSet> = Vec::new();
        let mut used = VertexSet::empty(g.n());
        place_complete_dominated(
            g,
            c + 1,
            max_total,
            &mut sets,
            &mut used,
            budget,
            &mut checked_unions,
            &mut |g, union| {
                let mut rest = g.vertex_set();
                rest.subtract(&g.closed_neighborhood(union));
                for comp in g.components_within(&rest) {
                    if tw_at_least(g, &comp, c)? {
                        answer = Some((union.clone(), comp));
                        return Ok(false);
                    }
                }
                Ok(true)
            },
        )?;
        if answer.is_some() {
            break;
        }
    }
    match answer {
        Some((x, y)) => Ok(Some(pair_cert(g, x, y, c, budget)?)),
        None => Ok(None),
    }
}

/// Complete-model DFS with the complement-side dominance prune: any state
/// whose union already contains a checked union is skipped, because its
/// complement side is a subset of one that already failed.
#[allow(clippy::too_many_arguments)]
fn place_complete_dominated(
    g: &Graph,
    mu: usize,
    max_total: usize,
    sets: &mut Vec<VertexSet>,
    used: &mut VertexSet,
    budget: &mut Budget,
    checked: &mut Vec<VertexSet>,
    on_model: &mut dyn FnMut(&Graph, &VertexSet) -> Result<bool>,
) -> Result<bool> {
    if checked.iter().any(|ck| ck.is_subset(used)) {
        return Ok(false);
    }
    if sets.len() == mu {
        let keep_going = on_model(g, used)?;
        if !keep_going {
            return Ok(true);
        }
        checked.push(used.clone());
        return Ok(false);
    }
    let slot = sets.len();
    let min_root = if slot == 0 { 0 } else { sets[slot - 1].first().unwrap() + 1 };
    for root in min_root..g.n() {
        if used.contains(root) {
            continue;
        }
        let mut allowed = VertexSet::full(g.n());
        allowed.subtract(used);
        for v in 0..root {
            allowed.remove(v);
        }
        let mut stop = false;
        enumerate_connected(g, root, &allowed, budget, &mut |set, budget| {
            if used.len() + set.len() + (mu - slot - 1) > max_total {
                return Ok(Walk::Prune);
            }
            if !sets.iter().all(|s| !g.are_anticomplete(s, set)) {
                return Ok(Walk::Continue);
            }
            sets.push(set.clone());
            let mut u2 = used.clone();
            u2.union_with(set);
            let saved = std::mem::replace(used, u2);
            match place_complete_dominated(g, mu, max_total, sets, used, budget, checked, on_model)
            {
                Ok(true) => {
                    stop = true;
                    Ok(Walk::Stop)
                }
                Ok(false) => {
                    *used = saved;
                    sets.pop();
                    Ok(Walk::Continue)
                }
                Err(e) => {
                    *used = saved;
                    sets.pop();
                    Err(e)
                }
            }
        })?;
        if stop {
            return Ok(true);
        }
    }
    Ok(false)
}

/// c >= 4 fallback: enumerate connected sets; when one reaches treewidth c,
/// check the complement side; prune expansion beneath any set whose
/// complement side has no heavy component (supersets only shrink it).
fn find_pair_generic(
    g: &Graph,
    c: usize,
    budget: &mut Budget,
) -> Result<Option<AnticompletePairCert>> {
    let all = g.vertex_set();
    let mut answer: Option<(VertexSet, VertexSet)> = None;
    'roots: for root in 0..g.n() {
        let mut allowed = all.clone();
        for v in 0..root {
            allowed.remove(v);
        }
        let mut set = VertexSet::empty(g.n());
        set.insert(root);
        let mut banned = VertexSet::empty(g.n());
        let stop = !rec_pair_generic(g, c, &mut set, &mut banned, &allowed, budget, &mut answer)?;
        if stop {
            break 'roots;
        }
    }
    match answer {
        Some((x, y)) => Ok(Some(pair_cert(g, x, y, c, budget)?)),
        None => Ok(None),
    }
}

fn rec_pair_generic(
    g: &Graph,
    c: usize,
    set: &mut VertexSet,
    banned: &mut VertexSet,
    allowed: &VertexSet,
    budget: &mut Budget,
    answer: &mut Option<(VertexSet, VertexSet)>,
) -> Result<bool> {
    budget.tick(1)?;
    let mut rest = g.vertex_set();
    rest.subtract(&g.closed_neighborhood(set));
    let mut heavy: Option<VertexSet> = None;
    for comp in g.components_within(&rest) {
        if tw_at_least(g, &comp, c)? {
            heavy = Some(comp);
            break;
        }
    }
    let Some(opposite) = heavy else {
        return Ok(true); // prune: no superset of `set` can be paired
    };
    if tw_at_least(g, set, c)? {
        *answer = Some((set.clone(), opposite));
        return Ok(false);
    }
    let mut frontier = g.neighborhood_of_set(set);
    frontier.intersect_with(allowed);
    frontier.subtract(banned);
    let Some(v) = frontier.first() else {
        return Ok(true);
    };
    set.insert(v);
    if !rec_pair_generic(g, c, set, banned, allowed, budget, answer)? {
        return Ok(false);
    }
    set.remove(v);
    banned.insert(v);
    let cont = rec_pair_generic(g, c, set, banned, allowed, budget, answer)?;
    banned.remove(v);
    Ok(cont)
}

/// Exhaustive clique search: the lexicographically least clique of size
/// exactly `k`, if any.
pub fn find_clique(g: &Graph, k: usize, budget: &mut Budget) -> Result<Option<VertexSet>> {
    if k == 0 {
        return Ok(Some(VertexSet::empty(g.n())));
    }
    let mut cur = Vec::new();
    let cand = g.vertex_set();
    if rec_clique(g, k, &mut cur, &cand, budget)? {
        Ok(Some(VertexSet::from_iter(g.n(), cur)))
    } else {
        Ok(None)
    }
}

fn rec_clique(
    g: &Graph,
    k: usize,
    cur: &mut Vec<usize>,
    cand: &VertexSet,
    budget: &mut Budget,
) -> Result<bool> {
    if cur.len() == k {
        return Ok(true);
    }
    if cand.len() + cur.len() < k {
        return Ok(false);
    }
    let from = cur.last().map_or(0, |&v| v + 1);
    for v in cand.iter() {
        if v < from {
            continue;
        }
        budget.tick(1)?;
        cur.push(v);
        let next = cand.intersection(g.nbrs(v));
        if rec_clique(g, k, cur, &next, budget)? {
            return Ok(true);
        }
        cur.pop();
    }
    Ok(false)
}

/// Lexicographically least stable set of size exactly `k`, if any.
pub fn find_stable_set(g: &Graph, k: usize, budget: &mut Budget) -> Result<Option<VertexSet>> {
    let comp = g.complement();
    find_clique(&comp, k, budget)
}

/// Exact treewidth of an induced subgraph (testing convenience).
pub fn treewidth_of_set(g: &Graph, x: &VertexSet) -> Result<usize> {
    let (h, _) = g.induced_subgraph(x);
    treewidth::treewidth_value(&h)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators;

    #[test]
    fn k22_identity_model_found() {
        let g = generators::gen_complete_bipartite(2, 2).unwrap();
        let mut b = Budget::default();
        let m = find_bipartite_minor_model(&g, 2, 2, true, true, &mut b).unwrap().unwrap();
        assert_eq!(m.rho(), 2);
        assert_eq!(m.sigma(), 2);
        assert!(m.a_sets.iter().chain(&m.b_sets).all(|s| s.len() == 1));
    }

    #[test]
    fn p4_has_no_induced_22_model() {
        let g = generators::gen_path(4);
        let mut b = Budget::default();
        assert!(find_bipartite_minor_model(&g, 2, 2, true, true, &mut b).unwrap().is_none());
        assert!(find_bipartite_minor_model(&g, 2, 2, false, false, &mut b).unwrap().is_none());
    }

    #[test]
    fn two_k5s_give_pair_at_4() {
        let mut g = Graph::empty(10);
        for base in [0, 5] {
            for u in 0..5 {
                for v in u + 1..5 {
                    g.add_edge(base + u, base + v);
                }
            }
        }
        let mut b = Budget::default();
        let cert = find_anticomplete_pair(&g, 4, &mut b).unwrap().unwrap();
        assert_eq!(cert.x.to_vec(), vec![0, 1, 2, 3, 4]);
        assert_eq!(cert.y.to_vec(), vec![5, 6, 7, 8, 9]);
    }

    #[test]
    fn complete_graph_has_no_pair() {
        let g = generators::gen_complete(6).unwrap();
        let mut b = Budget::default();
        assert!(find_anticomplete_pair(&g, 1, &mut b).unwrap().is_none());
    }

    #[test]
    fn clique_and_stable_finders() {
        let g = generators::gen_complete(4).unwrap();
        let mut b = Budget::default();
        assert_eq!(find_clique(&g, 3, &mut b).unwrap().unwrap().to_vec(), vec![0, 1, 2]);
        assert!(find_stable_set(&g, 2, &mut b).unwrap().is_none());
        let e = Graph::empty(5);
        assert_eq!(find_stable_set(&e, 3, &mut b).unwrap().unwrap().to_vec(), vec![0, 1, 2]);
    }

    #[test]
    fn complete_minor_model_of_cycle() {
        let g = generators::gen_cycle(6);
        let mut b = Budget::default();
        // C6 has a K3 minor but no K4 minor
        assert!(find_complete_minor_model(&g, 3, &mut b).unwrap().is_some());
        assert!(find_complete_minor_model(&g, 4, &mut b).unwrap().is_none());
    }
}
