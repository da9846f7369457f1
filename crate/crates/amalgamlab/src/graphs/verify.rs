//! Arc-transitivity measurement, vertex and edge kernels, and instance checks of
//! the composition-factor theorem and the kernel chains along paths.

use std::collections::{BTreeSet, HashMap};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::amalgam::par_map;
use crate::error::{Error, Result};
use crate::group::Group;
use crate::structure::{composition_factors, is_soluble, FactorLabel};

use super::SymGraph;

/// Cap on arcs enumerated by [`arc_orbit_count`] and on orbit representatives
/// visited per root by [`local_s_arc_transitivity`].
pub const ARC_BUDGET: usize = 1_000_000;

/// Quotients up to this order get an explicit subnormality certificate.
pub const SUBNORMAL_CERT_BOUND: u64 = 10_000;

pub const MAX_S: usize = 5;

fn order64(g: &Group) -> Result<u64> {
    g.order_u64().ok_or_else(|| Error::Scope(format!("group order {} overflows u64", g.order())))
}

fn extensions(graph: &SymGraph, arc: &[u32]) -> Vec<u32> {
    let last = *arc.last().expect("arcs are nonempty");
    let prev = arc.len().checked_sub(2).map(|i| arc[i]);
    graph.neighbours(last).iter().copied().filter(|&x| Some(x) != prev).collect()
}

/// Number of orbits of the whole group on `t`-arcs, by enumerating every arc.
pub fn arc_orbit_count(graph: &SymGraph, t: usize) -> Result<usize> {
    let mut arcs: Vec<Vec<u32>> = (0..graph.vertex_count() as u32).map(|v| vec![v]).collect();
    for _ in 0..t {
        let mut next = Vec::new();
        for a in &arcs {
            for x in extensions(graph, a) {
                let mut b = a.clone();
                b.push(x);
                next.push(b);
            }
            if next.len() > ARC_BUDGET {
                return Err(Error::Scope(format!("more than {ARC_BUDGET} {t}-arcs")));
            }
        }
        arcs = next;
    }
    let index: HashMap<&[u32], usize> = arcs.iter().enumerate().map(|(i, a)| (a.as_slice(), i)).collect();
    let mut parent: Vec<usize> = (0..arcs.len()).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    let mut count = arcs.len();
    let mut image = Vec::with_capacity(t + 1);
    for g in graph.group().generators() {
        for (i, a) in arcs.iter().enumerate() {
            image.clear();
            image.extend(a.iter().map(|&x| g.apply(x)));
            let j = index[image.as_slice()];
            let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
            if ri != rj {
                parent[ri] = rj;
                count -= 1;
            }
        }
    }
    Ok(count)
}

/// Orbit counts of `G_v` on `t`-arcs starting at one vertex `v`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RootArcs {
    pub root: u32,
    pub part: Option<usize>,
    pub valency: usize,
    /// `orbit_counts[t - 1]` is the number of orbits on `t`-arcs from the root.
    pub orbit_counts: Vec<u64>,
    /// Largest `t` with a single orbit on `t`-arcs, capped by the requested maximum.
    pub s: usize,
}

/// For one root per vertex orbit, counts orbits of the vertex stabiliser on
/// `t`-arcs for `t = 1..=s_max`.
///
/// Orbits on `t`-arcs through a representative `(t-1)`-arc `a` correspond to
/// orbits of the stabiliser of `a` on its extensions, so the count recurses over
/// representatives instead of enumerating arcs.
pub fn local_s_arc_transitivity(graph: &SymGraph, s_max: usize, threads: usize) -> Result<Vec<RootArcs>> {
    if s_max == 0 || s_max > MAX_S {
        return Err(Error::Input(format!("s_max must be in 1..={MAX_S}")));
    }
    if !graph.is_connected() {
        return Err(Error::Input("graph is disconnected".into()));
    }
    let roots: Vec<u32> = graph.group().orbits().iter().map(|o| *o.iter().min().expect("orbits are nonempty")).collect();
    let mut roots = roots;
    roots.sort_unstable();
    par_map(&roots, threads, |&v| {
        let mut counts = vec![0u64; s_max];
        let mut budget = ARC_BUDGET;
        count_orbits(graph, &graph.group().point_stabiliser(v), &mut vec![v], s_max, &mut counts, &mut budget)?;
        let s = counts.iter().take_while(|&&c| c == 1).count();
        Ok(RootArcs { root: v, part: graph.part_of(v), valency: graph.valency(v), orbit_counts: counts, s })
    })
    .into_iter()
    .collect()
}

fn count_orbits(
    graph: &SymGraph,
    stab: &Group,
    arc: &mut Vec<u32>,
    s_max: usize,
    counts: &mut [u64],
    budget: &mut usize,
) -> Result<()> {
    let t = arc.len();
    if t > s_max {
        return Ok(());
    }
    let ext = extensions(graph, arc);
    let mut seen = BTreeSet::new();
    for x in ext {
        if seen.contains(&x) {
            continue;
        }
        seen.extend(stab.orbit(x));
        counts[t - 1] += 1;
        *budget = budget.checked_sub(1).ok_or_else(|| Error::Scope(format!("more than {ARC_BUDGET} arc orbits")))?;
        if t < s_max {
            arc.push(x);
            count_orbits(graph, &stab.point_stabiliser(x), arc, s_max, counts, budget)?;
            arc.pop();
        }
    }
    Ok(())
}

/// Pointwise stabiliser of `v` and its neighbours.
pub fn vertex_kernel(graph: &SymGraph, v: u32) -> Result<Group> {
    path_kernel(graph, &[v])
}

/// Pointwise stabiliser of the neighbourhoods of both ends of an edge.
pub fn edge_kernel(graph: &SymGraph, v: u32, w: u32) -> Result<Group> {
    if !graph.is_adjacent(v, w) {
        return Err(Error::Input(format!("{v}-{w} is not an edge")));
    }
    path_kernel(graph, &[v, w])
}

/// `G^{[1]}` of a vertex sequence: the pointwise stabiliser of every listed
/// vertex and all its neighbours.
pub fn path_kernel(graph: &SymGraph, path: &[u32]) -> Result<Group> {
    let n = graph.vertex_count() as u32;
    if path.iter().any(|&v| v >= n) {
        return Err(Error::Input("vertex out of range".into()));
    }
    let mut pts = Vec::new();
    let mut seen = vec![false; n as usize];
    for &v in path {
        for &x in std::iter::once(&v).chain(graph.neighbours(v)) {
            if !std::mem::replace(&mut seen[x as usize], true) {
                pts.push(x);
            }
        }
    }
    Ok(graph.group().pointwise_stabiliser(&pts))
}

/// Checks that `path` is an arc: consecutive vertices adjacent, no immediate returns.
pub fn is_arc(graph: &SymGraph, path: &[u32]) -> bool {
    !path.is_empty()
        && path.iter().all(|&v| (v as usize) < graph.vertex_count())
        && path.windows(2).all(|w| graph.is_adjacent(w[0], w[1]))
        && path.windows(3).all(|w| w[0] != w[2])
}

/// The groups around an edge and their actions on the two neighbourhoods.
pub struct LocalGroups {
    pub v: u32,
    pub w: u32,
    pub g_v: Group,
    pub g_w: Group,
    pub g_vw: Group,
    /// `G_v` on `Γ(v)`.
    pub local_v: Group,
    /// `G_w` on `Γ(w)`.
    pub local_w: Group,
    /// `G_vw` on `Γ(v)`.
    pub vw_at_v: Group,
    /// `G_vw` on `Γ(w)`.
    pub vw_at_w: Group,
}

impl LocalGroups {
    pub fn at(graph: &SymGraph, v: u32, w: u32) -> Result<LocalGroups> {
        if !graph.is_adjacent(v, w) {
            return Err(Error::Input(format!("{v}-{w} is not an edge")));
        }
        let g = graph.group();
        let (g_v, g_w, g_vw) = (g.point_stabiliser(v), g.point_stabiliser(w), g.pointwise_stabiliser(&[v, w]));
        let on = |h: &Group, x: u32| h.induced_action(graph.neighbours(x)).map(|m| m.image());
        Ok(LocalGroups {
            local_v: on(&g_v, v)?,
            local_w: on(&g_w, w)?,
            vw_at_v: on(&g_vw, v)?,
            vw_at_w: on(&g_vw, w)?,
            v,
            w,
            g_v,
            g_w,
            g_vw,
        })
    }
}

/// A representative edge, oriented from the first part when there is one.
pub fn representative_edge(graph: &SymGraph) -> Result<(u32, u32)> {
    let v = match graph.parts() {
        Some(p) => *p[0].first().ok_or_else(|| Error::Input("empty part".into()))?,
        None => 0,
    };
    let w = *graph.neighbours(v).first().ok_or_else(|| Error::Input(format!("vertex {v} is isolated")))?;
    Ok((v, w))
}

#[derive(Clone, Debug, Serialize)]
pub struct FactorInventory {
    pub g_v: Vec<FactorLabel>,
    pub g_w: Vec<FactorLabel>,
    pub g_vw: Vec<FactorLabel>,
    pub local_v: Vec<FactorLabel>,
    pub local_w: Vec<FactorLabel>,
    pub vw_at_v: Vec<FactorLabel>,
    pub vw_at_w: Vec<FactorLabel>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CompositionReport {
    pub edge: (u32, u32),
    pub edge_transitive: bool,
    pub factors: FactorInventory,
    /// Factors of `G_v` inside those of `G_v^Γ(v)`, `G_vw^Γ(w)`, `G_vw^Γ(v)`.
    pub vertex_v: bool,
    /// The same with the roles of `v` and `w` exchanged.
    pub vertex_w: bool,
    /// Factors of `G_vw` inside those of its two local actions.
    pub edge_stabiliser: bool,
    /// Solubility of `G_v` agrees with joint solubility of `G_v^Γ(v)` and
    /// `G_vw^Γ(w)`, and likewise at `w`.
    pub solubility: bool,
    pub kernel_orders: [u64; 2],
    pub passed: bool,
}

fn within(sub: &[FactorLabel], sources: &[&[FactorLabel]]) -> bool {
    sub.iter().all(|f| sources.iter().any(|s| s.contains(f)))
}

/// Checks both containments of the composition-factor theorem at a
/// representative edge.
pub fn verify_composition_theorem(graph: &SymGraph, seed: u64) -> Result<CompositionReport> {
    if !graph.is_connected() {
        return Err(Error::Input("graph is disconnected".into()));
    }
    let edge_transitive = graph.is_edge_transitive();
    let (v, w) = representative_edge(graph)?;
    let lg = LocalGroups::at(graph, v, w)?;
    let cf = |g: &Group| composition_factors(g, seed);
    let factors = FactorInventory {
        g_v: cf(&lg.g_v)?,
        g_w: cf(&lg.g_w)?,
        g_vw: cf(&lg.g_vw)?,
        local_v: cf(&lg.local_v)?,
        local_w: cf(&lg.local_w)?,
        vw_at_v: cf(&lg.vw_at_v)?,
        vw_at_w: cf(&lg.vw_at_w)?,
    };
    let f = &factors;
    let vertex_v = within(&f.g_v, &[&f.local_v, &f.vw_at_w, &f.vw_at_v]);
    let vertex_w = within(&f.g_w, &[&f.local_w, &f.vw_at_v, &f.vw_at_w]);
    let edge_stabiliser = within(&f.g_vw, &[&f.vw_at_v, &f.vw_at_w]);
    let solubility = is_soluble(&lg.g_v) == (is_soluble(&lg.local_v) && is_soluble(&lg.vw_at_w))
        && is_soluble(&lg.g_w) == (is_soluble(&lg.local_w) && is_soluble(&lg.vw_at_v));
    let kernel_orders = [order64(&vertex_kernel(graph, v)?)?, order64(&vertex_kernel(graph, w)?)?];
    let passed = edge_transitive && vertex_v && vertex_w && edge_stabiliser && solubility;
    Ok(CompositionReport {
        edge: (v, w),
        edge_transitive,
        factors,
        vertex_v,
        vertex_w,
        edge_stabiliser,
        solubility,
        kernel_orders,
        passed,
    })
}

/// One link `K_{i+1} ◁ K_i` of the kernel chain along a path.
#[derive(Clone, Debug, Serialize)]
pub struct ChainStep {
    pub index: usize,
    pub kernel_order: u64,
    pub next_order: u64,
    pub normal: bool,
    /// Order of `G_{v_i v_{i+1}}` acting on `Γ(v_{i+1})`.
    pub local_order: u64,
    /// Part of `v_{i+1}`, when the graph is bipartite.
    pub side: Option<usize>,
    /// Order of the representative edge stabiliser on the neighbourhood of its
    /// end in the same part as `v_{i+1}`; equal to `local_order` when sides alternate.
    pub side_order: Option<u64>,
    pub divides: bool,
    /// Whether the image of `K_i` on `Γ(v_{i+1})` is subnormal in the local
    /// action; `None` above [`SUBNORMAL_CERT_BOUND`].
    pub subnormal: Option<bool>,
}

impl ChainStep {
    fn ok(&self) -> bool {
        self.normal
            && self.divides
            && self.subnormal != Some(false)
            && self.side_order.is_none_or(|o| o == self.local_order)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ChainReport {
    pub path: Vec<u32>,
    /// `G_{v_0}^{[1]}` is normal in `G_{v_0}`.
    pub base_normal: bool,
    pub steps: Vec<ChainStep>,
    pub passed: bool,
}

/// Walks the kernel chain `G_{v_0..v_i}^{[1]}` along an arc.
pub fn verify_chains(graph: &SymGraph, path: &[u32]) -> Result<ChainReport> {
    if !is_arc(graph, path) {
        return Err(Error::Input(format!("{path:?} is not an arc")));
    }
    let g = graph.group();
    let side_orders = match graph.parts() {
        Some(_) => {
            let (u, w) = representative_edge(graph)?;
            let lg = LocalGroups::at(graph, u, w)?;
            Some([order64(&lg.vw_at_v)?, order64(&lg.vw_at_w)?])
        }
        None => None,
    };
    let kernels: Vec<Group> = (1..=path.len()).map(|i| path_kernel(graph, &path[..i])).collect::<Result<_>>()?;
    let base_normal = kernels[0].is_normal_in(&g.point_stabiliser(path[0]));
    let mut steps = Vec::new();
    for i in 0..path.len() - 1 {
        let (k, next) = (&kernels[i], &kernels[i + 1]);
        let (ko, no) = (order64(k)?, order64(next)?);
        let normal = next.is_subgroup_of(k) && next.is_normal_in(k);
        let target = path[i + 1];
        let nbrs = graph.neighbours(target);
        let local = g.pointwise_stabiliser(&[path[i], target]).induced_action(nbrs)?.image();
        let local_order = order64(&local)?;
        let quotient = ko / no.max(1);
        let side = graph.part_of(target);
        let subnormal = if quotient <= SUBNORMAL_CERT_BOUND {
            let q = k.induced_action(nbrs)?.image();
            Some(order64(&q)? == quotient && is_subnormal(&q, &local)?)
        } else {
            None
        };
        steps.push(ChainStep {
            index: i,
            kernel_order: ko,
            next_order: no,
            normal,
            local_order,
            side,
            side_order: side.zip(side_orders).map(|(s, o)| o[s]),
            divides: ko % no.max(1) == 0 && local_order % quotient == 0,
            subnormal,
        });
    }
    let passed = base_normal && steps.iter().all(ChainStep::ok);
    Ok(ChainReport { path: path.to_vec(), base_normal, steps, passed })
}

/// Descends `H ▷ ncl_H(Q) ▷ ncl(ncl_H(Q)) ...` until it stops; `Q` is subnormal
/// in `H` exactly when the descent reaches `Q`.
pub fn is_subnormal(q: &Group, h: &Group) -> Result<bool> {
    if !q.is_subgroup_of(h) {
        return Ok(false);
    }
    let mut cur = h.clone();
    loop {
        if cur.order() == q.order() {
            return Ok(true);
        }
        let next = cur.normal_closure(q.generators())?;
        if next.order() == cur.order() {
            return Ok(false);
        }
        cur = next;
    }
}

/// A path from `v` whose kernel `G_{v_0..v_l}^{[1]}` is trivial.
///
/// Breadth-first over arcs from `v`, keeping at each length the arcs with the
/// smallest kernel (ties by lexicographic order, at most a fixed beam).
pub fn find_trivial_kernel_path(graph: &SymGraph, v: u32) -> Result<Vec<u32>> {
    const BEAM: usize = 32;
    if !graph.is_connected() {
        return Err(Error::Input("graph is disconnected".into()));
    }
    let mut frontier = vec![vec![v]];
    for _ in 0..=2 * graph.vertex_count() {
        let mut scored = Vec::new();
        for path in &frontier {
            let k = path_kernel(graph, path)?;
            if k.is_trivial() {
                return Ok(path.clone());
            }
            scored.push((k.order(), path.clone()));
        }
        let best = scored.iter().map(|(o, _)| o.clone()).min().expect("frontier is nonempty");
        let mut next = Vec::new();
        for (_, path) in scored.into_iter().filter(|(o, _)| *o == best) {
            for x in extensions(graph, &path) {
                let mut p = path.clone();
                p.push(x);
                next.push(p);
            }
        }
        next.sort();
        next.dedup();
        next.truncate(BEAM);
        if next.is_empty() {
            break;
        }
        frontier = next;
    }
    Err(Error::SearchFailed(format!("no path from {v} with trivial kernel; is the action faithful?")))
}

/// `count` random arcs of length `1..=max_len`, from seeded non-backtracking walks.
pub fn random_arcs(graph: &SymGraph, count: usize, max_len: usize, seed: u64) -> Vec<Vec<u32>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = graph.vertex_count() as u32;
    let mut out = Vec::with_capacity(count);
    while out.len() < count && n > 0 {
        let len = rng.gen_range(1..=max_len.max(1));
        let mut path = vec![rng.gen_range(0..n)];
        while path.len() <= len {
            let ext = extensions(graph, &path);
            if ext.is_empty() {
                break;
            }
            path.push(ext[rng.gen_range(0..ext.len())]);
        }
        if path.len() > 1 {
            out.push(path);
        }
    }
    out
}

/// Everything `check` reports for one graph.
#[derive(Clone, Debug, Serialize)]
pub struct GraphCheck {
    pub vertices: usize,
    pub edges: usize,
    pub connected: bool,
    pub edge_transitive: bool,
    pub arcs: Vec<RootArcs>,
    pub composition: CompositionReport,
    pub chains: Vec<ChainReport>,
    pub trivial_kernel_path: Option<Vec<u32>>,
    pub passed: bool,
}

/// Runs the arc count, the composition theorem, and chain checks on `paths`
/// random arcs.
pub fn check_graph(graph: &SymGraph, s_max: usize, paths: usize, seed: u64, threads: usize) -> Result<GraphCheck> {
    let arcs = local_s_arc_transitivity(graph, s_max, threads)?;
    let composition = verify_composition_theorem(graph, seed)?;
    let chains: Vec<ChainReport> =
        random_arcs(graph, paths, 4, seed).iter().map(|p| verify_chains(graph, p)).collect::<Result<_>>()?;
    let trivial_kernel_path = find_trivial_kernel_path(graph, 0).ok();
    let passed = composition.passed && chains.iter().all(|c| c.passed);
    Ok(GraphCheck {
        vertices: graph.vertex_count(),
        edges: graph.edge_count(),
        connected: graph.is_connected(),
        edge_transitive: composition.edge_transitive,
        arcs,
        composition,
        chains,
        trivial_kernel_path,
        passed,
    })
}
