use std::collections::HashSet;

use num_integer::Integer;
use serde::Serialize;

use crate::arith::is_prime;
use crate::catalog::Catalog;
use crate::error::{Error, Result};
use crate::golden::{ExampleConstruction, ExampleRow};
use crate::group::Group;
use crate::perm::Perm;
use crate::structure::{isomorphisms_mod_inner, regular_normal_subgroup, Isomorphism};

use super::SymGraph;

/// Largest vertex count accepted by [`cayley_2at`].
pub const CAYLEY_VERTEX_BOUND: u64 = 10_000;

/// The bipartite graph on the right cosets of `a` and of `b`, two cosets
/// adjacent when they meet. Vertices `0..|G:A|` are the cosets of `a`, with
/// `a` itself first; the cosets of `b` follow, `b` first.
pub fn coset_graph(g: &Group, a: &Group, b: &Group) -> Result<SymGraph> {
    if !a.is_subgroup_of(g) || !b.is_subgroup_of(g) {
        return Err(Error::NotSubgroup("coset graph needs two subgroups of G".into()));
    }
    let (ma, mb) = (g.coset_action(a)?, g.coset_action(b)?);
    let (na, nb) = (ma.target_degree(), mb.target_degree());
    let gens: Vec<Perm> = ma.images().iter().zip(mb.images()).map(|(x, y)| x.direct_sum(y)).collect();
    let vg = Group::new(na + nb, gens)?;

    // A meets B, and the pairs meeting are exactly the images of (A, B).
    let start = (0u32, na as u32);
    let mut seen = HashSet::from([start]);
    let mut queue = vec![start];
    let mut i = 0;
    while i < queue.len() {
        let (x, y) = queue[i];
        for s in vg.generators() {
            let e = (s.apply(x), s.apply(y));
            if seen.insert(e) {
                queue.push(e);
            }
        }
        i += 1;
    }
    let mut adjacency = vec![Vec::new(); na + nb];
    for (x, y) in queue {
        adjacency[x as usize].push(y);
        adjacency[y as usize].push(x);
    }
    for nbrs in &mut adjacency {
        nbrs.sort_unstable();
    }
    let parts = [(0..na as u32).collect(), (na as u32..(na + nb) as u32).collect()];
    let degenerate = a.same_as(g) || b.same_as(g) || a.same_as(b);
    let graph = SymGraph::new(adjacency, Some(parts), vg, format!("coset graph, indices {na} and {nb}"))?
        .flag_degenerate(degenerate);

    let mut both = a.generators().to_vec();
    both.extend_from_slice(b.generators());
    let generated = g.subgroup(both)?.order() == g.order();
    if generated != graph.is_connected() {
        return Err(Error::Verification("connectivity disagrees with <A, B> = G".into()));
    }
    Ok(graph)
}

/// The complete graph on the points of a 2-transitive group.
pub fn complete_graph(g: Group) -> Result<SymGraph> {
    if !g.is_k_transitive(2)? {
        return Err(Error::Input("complete graph needs a 2-transitive group".into()));
    }
    let n = g.degree() as u32;
    let adjacency = (0..n).map(|v| (0..n).filter(|&w| w != v).collect()).collect();
    SymGraph::new(adjacency, None, g, format!("K_{n}"))
}

/// The cycle `C_n` with its full dihedral group.
pub fn cycle_graph(n: usize) -> Result<SymGraph> {
    if n < 3 {
        return Err(Error::Input(format!("a cycle needs at least 3 vertices, got {n}")));
    }
    let m = n as u32;
    let rot = Perm::from_images((0..m).map(|v| (v + 1) % m).collect())?;
    let refl = Perm::from_images((0..m).map(|v| (m - v) % m).collect())?;
    let adjacency = (0..m)
        .map(|v| {
            let mut nb = vec![(v + 1) % m, (v + m - 1) % m];
            nb.sort_unstable();
            nb
        })
        .collect();
    SymGraph::new(adjacency, None, Group::new(n, vec![rot, refl])?, format!("C_{n}"))
}

/// One side of a coupled product: a normal subgroup acting on `degree`
/// points, complemented by `complement`.
struct Side {
    degree: usize,
    normal: Vec<Perm>,
    complement: Group,
}

impl Side {
    fn affine(g: &Group) -> Result<Side> {
        let t = regular_normal_subgroup(g)
            .ok_or_else(|| Error::Input("affine construction needs a regular normal subgroup".into()))?;
        Ok(Side { degree: g.degree(), normal: t.generators().to_vec(), complement: g.point_stabiliser(0) })
    }

    fn whole(g: &Group) -> Side {
        Side { degree: g.degree(), normal: Vec::new(), complement: g.clone() }
    }

    fn normal_order(&self) -> Result<u64> {
        let n = Group::new(self.degree, self.normal.clone())?;
        n.order_u64().ok_or_else(|| Error::Scope("normal subgroup order overflows".into()))
    }
}

/// `(N_L x N_R) : C` on `deg L + deg R` points, `C` acting on the right through `iso`.
fn coupled_product(left: &Side, right: &Side, iso: &Isomorphism) -> Result<Group> {
    let (il, ir) = (Perm::identity(left.degree), Perm::identity(right.degree));
    let mut gens: Vec<Perm> = left.normal.iter().map(|x| x.direct_sum(&ir)).collect();
    gens.extend(right.normal.iter().map(|y| il.direct_sum(y)));
    gens.extend(iso.domain_gens.iter().zip(&iso.images).map(|(x, y)| x.direct_sum(y)));
    let g = Group::new(left.degree + right.degree, gens)?;
    let expected = u128::from(left.normal_order()?) * u128::from(right.normal_order()?)
        * u128::from(left.complement.order_u64().unwrap_or(0));
    if g.order() != expected.into() {
        return Err(Error::Verification(format!("coupled product has order {}, expected {expected}", g.order())));
    }
    Ok(g)
}

fn two_transitive_on(g: &Group, points: std::ops::Range<u32>) -> Result<bool> {
    let pts: Vec<u32> = points.collect();
    if pts.iter().any(|&x| g.orbit(x).len() != pts.len()) {
        return Ok(false);
    }
    g.induced_action(&pts)?.image().is_k_transitive(2)
}

/// Group orders around an edge `{v, w}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct EdgeOrders {
    pub group: u64,
    pub v: u64,
    pub w: u64,
    pub vw: u64,
}

impl EdgeOrders {
    pub fn of(graph: &SymGraph, v: u32, w: u32) -> Result<EdgeOrders> {
        let g = graph.group();
        let o = |h: &Group| h.order_u64().ok_or_else(|| Error::Scope("group order overflows u64".into()));
        Ok(EdgeOrders {
            group: o(g)?,
            v: o(&g.point_stabiliser(v))?,
            w: o(&g.point_stabiliser(w))?,
            vw: o(&g.pointwise_stabiliser(&[v, w]))?,
        })
    }

    /// `|G| = |G_v||G_w|/|G_vw|`, which holds exactly when `G = G_v G_w`.
    pub fn factorises(&self) -> bool {
        u128::from(self.group) * u128::from(self.vw) == u128::from(self.v) * u128::from(self.w)
    }
}

/// A constructed row of the complete bipartite examples.
#[derive(Clone, Debug)]
pub struct BipartiteExample {
    pub row: ExampleRow,
    pub graph: SymGraph,
    /// Edge orders at vertex 0 (stabiliser isomorphic to the left group) and its
    /// first neighbour.
    pub orders: EdgeOrders,
    pub couplings_tried: usize,
}

/// Builds one row of the examples table as a coset graph `K_{m,n}`.
///
/// Vertex 0 has stabiliser isomorphic to the row's left group and valency `m`.
pub fn complete_bipartite_example(row: &ExampleRow, cat: &Catalog) -> Result<BipartiteExample> {
    let entry = |id: &Option<String>| -> Result<_> {
        let id = id.as_deref().ok_or_else(|| Error::Input(format!("{}: missing factor", row.group)))?;
        cat.get(id).ok_or_else(|| Error::Input(format!("unknown catalog id {id}")))
    };
    let (g, a, b, tried) = match &row.construction {
        ExampleConstruction::NotConstructible { reason } => {
            return Err(Error::Input(format!("{} is not constructible: {reason}", row.group)))
        }
        ExampleConstruction::Factorisation { group } => {
            let g = cat.get(group).ok_or_else(|| Error::Input(format!("unknown catalog id {group}")))?.group()?;
            let b = entry(&row.right)?.group()?;
            if !b.is_subgroup_of(&g) {
                return Err(Error::Verification(format!("{} does not lie in {group}", row.right.as_deref().unwrap_or(""))));
            }
            (g.clone(), g.point_stabiliser(0), b, 0)
        }
        ExampleConstruction::AffineProduct | ExampleConstruction::AffineExtension { .. } => {
            let (left, right) = match &row.construction {
                ExampleConstruction::AffineProduct => {
                    (Side::affine(&entry(&row.left)?.group()?)?, Side::affine(&entry(&row.right)?.group()?)?)
                }
                ExampleConstruction::AffineExtension { group } => {
                    let big = cat.get(group).ok_or_else(|| Error::Input(format!("unknown catalog id {group}")))?;
                    (Side::whole(&entry(&row.left)?.group()?), Side::affine(&big.group()?)?)
                }
                _ => unreachable!(),
            };
            let (m, n) = (left.degree as u32, right.degree as u32);
            let couplings = isomorphisms_mod_inner(&left.complement, &right.complement)?;
            let mut found = None;
            for (k, iso) in couplings.iter().enumerate() {
                let g = coupled_product(&left, &right, iso)?;
                let (a, b) = (g.point_stabiliser(m), g.point_stabiliser(0));
                if two_transitive_on(&a, 0..m)? && two_transitive_on(&b, m..m + n)? {
                    found = Some((g, a, b, k + 1));
                    break;
                }
            }
            found.ok_or_else(|| {
                Error::Verification(format!("{}: no coupling of {} tried gives 2-transitive stabilisers", row.group, couplings.len()))
            })?
        }
    };
    let graph = coset_graph(&g, &a, &b)?;
    let graph = SymGraph { provenance: format!("{} acting on K_{{{},{}}}", row.group, row.m, row.n), ..graph };
    let parts = graph.parts().expect("coset graphs are bipartite");
    if (parts[0].len() as u64, parts[1].len() as u64) != (row.n, row.m) || !graph.is_complete_bipartite() {
        return Err(Error::Verification(format!("{}: expected K_{{{},{}}}", row.group, row.m, row.n)));
    }
    for (id, sub) in [(&row.left, &a), (&row.right, &b)] {
        if let Some(e) = id.as_deref().and_then(|id| cat.get(id)) {
            if sub.order_u64() != Some(e.order) {
                return Err(Error::Verification(format!("{}: stabiliser order differs from {}", row.group, e.id)));
            }
        }
    }
    let w = graph.neighbours(0)[0];
    let orders = EdgeOrders::of(&graph, 0, w)?;
    Ok(BipartiteExample { row: row.clone(), graph, orders, couplings_tried: tried })
}

/// Cayley graph of `R = <a_1 s, ..., a_n s>` inside `Z_p^n : (<s> x H)`, where
/// `s` negates every vector and `H` permutes coordinates.
///
/// Vertex `(e, v)` stands for `x -> (-1)^e x + v`; it lies in `R` exactly when
/// the coordinates of `v` sum to `e`. The acting group is `R` by right
/// multiplication together with `H` by conjugation.
pub fn cayley_2at(h: &Group, p: u64) -> Result<SymGraph> {
    let n = h.degree();
    if n < 2 || !h.is_k_transitive(2)? {
        return Err(Error::Input("H must be 2-transitive of degree at least 2".into()));
    }
    if !is_prime(p) {
        return Err(Error::Input(format!("{p} is not prime")));
    }
    let h_order = h.order_u64().ok_or_else(|| Error::Scope("|H| overflows".into()))?;
    if h_order.gcd(&p) != 1 {
        return Err(Error::Input(format!("p = {p} divides |H| = {h_order}")));
    }
    let q = p
        .checked_pow(n as u32 - 1)
        .filter(|&q| 2 * q <= CAYLEY_VERTEX_BOUND)
        .ok_or_else(|| Error::Scope(format!("2 * {p}^{} vertices exceed {CAYLEY_VERTEX_BOUND}", n - 1)))?;
    let (q, pu) = (q as usize, p as usize);

    let decode = |idx: usize| -> (usize, Vec<usize>) {
        let (e, mut code) = (idx / q, idx % q);
        let mut v = vec![0; n];
        for c in v.iter_mut().take(n - 1) {
            *c = code % pu;
            code /= pu;
        }
        let sum: usize = v[..n - 1].iter().sum();
        v[n - 1] = (e + pu * n - sum % pu) % pu;
        (e, v)
    };
    let encode = |e: usize, v: &[usize]| -> u32 {
        let code = v[..n - 1].iter().rev().fold(0, |acc, &c| acc * pu + c);
        (e * q + code) as u32
    };
    let neg = |c: usize| (pu - c) % pu;
    let vertices: Vec<(usize, Vec<usize>)> = (0..2 * q).map(decode).collect();

    // Right multiplication by a_j s: (e, v) -> (1 - e, a_j - v).
    let mut gens = Vec::new();
    for j in 0..n {
        let imgs = vertices
            .iter()
            .map(|(e, v)| {
                let mut w: Vec<usize> = v.iter().map(|&c| neg(c)).collect();
                w[j] = (w[j] + 1) % pu;
                encode(1 - e, &w)
            })
            .collect();
        gens.push(Perm::from_images(imgs)?);
    }
    for x in h.generators() {
        let imgs = vertices
            .iter()
            .map(|(e, v)| {
                let mut w = vec![0; n];
                for (k, &c) in v.iter().enumerate() {
                    w[x.apply(k as u32) as usize] = c;
                }
                encode(*e, &w)
            })
            .collect();
        gens.push(Perm::from_images(imgs)?);
    }
    // Left multiplication by a_i s: (e, v) -> (1 - e, v + (-1)^e a_i).
    let adjacency = vertices
        .iter()
        .map(|(e, v)| {
            let mut nb: Vec<u32> = (0..n)
                .map(|i| {
                    let mut w = v.clone();
                    w[i] = if *e == 0 { (w[i] + 1) % pu } else { (w[i] + pu - 1) % pu };
                    encode(1 - e, &w)
                })
                .collect();
            nb.sort_unstable();
            nb
        })
        .collect();
    let g = Group::new(2 * q, gens)?;
    let graph = SymGraph::new(adjacency, None, g, format!("Cay(R, S) for p = {p}, H of degree {n}"))?;

    let expected = 2 * q as u64 * h_order;
    if graph.group().order_u64() != Some(expected) {
        return Err(Error::Verification(format!("|R:H| = {}, expected {expected}", graph.group().order())));
    }
    if graph.group().point_stabiliser(0).order_u64() != Some(h_order) {
        return Err(Error::Verification("vertex stabiliser differs from H".into()));
    }
    if super::arc_orbit_count(&graph, 2)? != 1 {
        return Err(Error::Verification("not 2-arc-transitive".into()));
    }
    Ok(graph)
}
