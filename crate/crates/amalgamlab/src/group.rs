//! Generated permutation groups backed by a deterministic Schreier–Sims chain.
//!
//! A [`Group`] stores its generators and builds the stabiliser chain on first use.
//! Clones share the cached chain.

use std::collections::HashMap;
use std::fmt;
use std::path::Path;
use std::sync::{Arc, OnceLock};

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::perm::Perm;

/// Default cap on explicit element enumeration.
pub const DEFAULT_ELEMENT_BOUND: u64 = 1_000_000;
/// Largest permitted index for [`Group::coset_action`].
pub const MAX_COSET_INDEX: usize = 100_000;

const NONE: u32 = u32::MAX;

#[derive(Clone, Debug)]
pub struct Level {
    base: u32,
    gens: Vec<Perm>,
    orbit: Vec<u32>,
    slot: Vec<u32>,
    reps: Vec<Perm>,
    reps_inv: Vec<Perm>,
    checked: Vec<usize>,
}

impl Level {
    fn new(degree: usize, base: u32) -> Self {
        let mut slot = vec![NONE; degree];
        slot[base as usize] = 0;
        Level {
            base,
            gens: Vec::new(),
            orbit: vec![base],
            slot,
            reps: vec![Perm::identity(degree)],
            reps_inv: vec![Perm::identity(degree)],
            checked: vec![0],
        }
    }

    pub fn base_point(&self) -> u32 {
        self.base
    }

    pub fn orbit(&self) -> &[u32] {
        &self.orbit
    }

    pub fn strong_generators(&self) -> &[Perm] {
        &self.gens
    }

    /// Transversal element mapping the base point to `point`.
    pub fn transversal(&self, point: u32) -> Option<&Perm> {
        match self.slot[point as usize] {
            NONE => None,
            s => Some(&self.reps[s as usize]),
        }
    }

    pub fn transversal_inverse(&self, point: u32) -> Option<&Perm> {
        match self.slot[point as usize] {
            NONE => None,
            s => Some(&self.reps_inv[s as usize]),
        }
    }

    fn add_gen(&mut self, g: Perm) {
        self.gens.push(g);
        let mut i = 0;
        while i < self.orbit.len() {
            let x = self.orbit[i];
            for k in 0..self.gens.len() {
                let y = self.gens[k].apply(x);
                if self.slot[y as usize] == NONE {
                    let rep = self.reps[i].compose(&self.gens[k]);
                    self.slot[y as usize] = self.orbit.len() as u32;
                    self.orbit.push(y);
                    self.reps_inv.push(rep.inverse());
                    self.reps.push(rep);
                    self.checked.push(0);
                }
            }
            i += 1;
        }
    }
}

/// Base and strong generating set.
#[derive(Clone, Debug)]
pub struct Chain {
    degree: usize,
    levels: Vec<Level>,
}

impl Chain {
    fn build(degree: usize, gens: &[Perm], prefix: &[u32], hint: Option<&BigUint>) -> Chain {
        let mut chain = Chain { degree, levels: Vec::new() };
        for &b in prefix {
            if chain.levels.iter().all(|l| l.base != b) {
                chain.levels.push(Level::new(degree, b));
            }
        }
        let kept = chain.levels.len();
        let mut moved = vec![false; degree];
        for g in gens {
            for (x, &y) in g.images().iter().enumerate() {
                moved[x] |= x as u32 != y;
            }
        }
        for b in 0..degree as u32 {
            if moved[b as usize] && !prefix.contains(&b) {
                chain.levels.push(Level::new(degree, b));
            }
        }
        for g in gens {
            chain.insert_gen(g.clone());
        }
        chain.complete(hint);
        chain.prune(kept);
        chain
    }

    /// Removes redundant levels (trivial basic orbit) after the first `kept`.
    fn prune(&mut self, kept: usize) {
        let mut i = 0;
        self.levels.retain(|l| {
            i += 1;
            i <= kept || l.orbit.len() > 1
        });
    }

    pub fn levels(&self) -> &[Level] {
        &self.levels
    }

    pub fn base(&self) -> Vec<u32> {
        self.levels.iter().map(|l| l.base).collect()
    }

    pub fn order(&self) -> BigUint {
        self.levels.iter().fold(BigUint::one(), |acc, l| acc * BigUint::from(l.orbit.len()))
    }

    fn insert_gen(&mut self, g: Perm) {
        if g.is_identity() {
            return;
        }
        let j = match self.levels.iter().position(|l| g.apply(l.base) != l.base) {
            Some(j) => j,
            None => {
                let b = g.support_min().expect("non-identity permutation moves a point");
                self.levels.push(Level::new(self.degree, b));
                self.levels.len() - 1
            }
        };
        for l in 0..=j {
            self.levels[l].add_gen(g.clone());
        }
    }

    fn complete(&mut self, hint: Option<&BigUint>) {
        let mut i = self.levels.len() as isize - 1;
        while i >= 0 {
            if let Some(h) = hint {
                if &self.order() == h {
                    return;
                }
            }
            match self.check_level(i as usize) {
                Some(j) => i = j as isize,
                None => i -= 1,
            }
        }
    }

    /// Sifts unchecked Schreier generators at level `i`; on the first one that does not
    /// sift, extends the chain and returns the deepest level touched.
    fn check_level(&mut self, i: usize) -> Option<usize> {
        let mut oi = 0;
        while oi < self.levels[i].orbit.len() {
            while self.levels[i].checked[oi] < self.levels[i].gens.len() {
                let lv = &mut self.levels[i];
                let si = lv.checked[oi];
                lv.checked[oi] += 1;
                let x = lv.orbit[oi];
                let s = &lv.gens[si];
                let y = s.apply(x);
                let h = lv.reps[oi].compose(s).compose(&lv.reps_inv[lv.slot[y as usize] as usize]);
                if h.is_identity() {
                    continue;
                }
                let (res, j) = self.sift(h, i + 1);
                if j < self.levels.len() || !res.is_identity() {
                    if j == self.levels.len() {
                        let b = res.support_min().expect("residue is not the identity");
                        self.levels.push(Level::new(self.degree, b));
                    }
                    for l in i + 1..=j {
                        self.levels[l].add_gen(res.clone());
                    }
                    return Some(j);
                }
            }
            oi += 1;
        }
        None
    }

    /// Strips `g` through levels `from..`; returns the residue and the level where it stopped.
    fn sift(&self, mut g: Perm, from: usize) -> (Perm, usize) {
        for (k, l) in self.levels.iter().enumerate().skip(from) {
            let b = g.apply(l.base);
            if b == l.base {
                continue;
            }
            let s = l.slot[b as usize];
            if s == NONE {
                return (g, k);
            }
            g = g.compose(&l.reps_inv[s as usize]);
        }
        (g, self.levels.len())
    }

    fn contains(&self, g: &Perm) -> bool {
        let (res, j) = self.sift(g.clone(), 0);
        j == self.levels.len() && res.is_identity()
    }

    /// Drops the first `k` levels, giving a chain for the pointwise stabiliser of their base points.
    fn tail(&self, k: usize) -> Chain {
        Chain { degree: self.degree, levels: self.levels[k..].to_vec() }
    }

    fn strong_generators(&self) -> Vec<Perm> {
        self.levels.first().map(|l| l.gens.clone()).unwrap_or_default()
    }
}

#[derive(Clone)]
pub struct Group {
    degree: usize,
    gens: Vec<Perm>,
    prefix: Vec<u32>,
    hint: Option<BigUint>,
    chain: Arc<OnceLock<Chain>>,
}

impl fmt::Debug for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Group").field("degree", &self.degree).field("generators", &self.gens).finish()
    }
}

/// JSON group file: `{ "degree": d, "generators": [[...], ...], "name": optional }`.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct GroupFile {
    pub degree: usize,
    pub generators: Vec<Perm>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
}

impl Group {
    pub fn new(degree: usize, gens: Vec<Perm>) -> Result<Group> {
        if degree == 0 {
            return Err(Error::Input("groups of degree 0 are not supported".into()));
        }
        for g in &gens {
            if g.degree() != degree {
                return Err(Error::DegreeMismatch { expected: degree, found: g.degree() });
            }
        }
        Ok(Group::from_parts(degree, gens))
    }

    pub(crate) fn from_parts(degree: usize, gens: Vec<Perm>) -> Group {
        Group { degree, gens, prefix: Vec::new(), hint: None, chain: Arc::new(OnceLock::new()) }
    }

    fn from_chain(chain: Chain) -> Group {
        let gens = chain.strong_generators();
        let cell = OnceLock::new();
        let degree = chain.degree;
        let _ = cell.set(chain);
        Group { degree, gens, prefix: Vec::new(), hint: None, chain: Arc::new(cell) }
    }

    pub fn trivial(degree: usize) -> Group {
        Group::from_parts(degree.max(1), Vec::new())
    }

    /// Same group, chain to be rebuilt with the given base points first.
    pub fn with_base_prefix(&self, prefix: &[u32]) -> Group {
        let order = self.order();
        Group {
            degree: self.degree,
            gens: self.gens.clone(),
            prefix: prefix.to_vec(),
            hint: Some(order),
            chain: Arc::new(OnceLock::new()),
        }
    }

    /// Lets the chain construction stop as soon as it reaches `order`.
    /// Only sound when `order` is the true order.
    pub(crate) fn with_order_hint(mut self, order: BigUint) -> Group {
        self.hint = Some(order);
        self.chain = Arc::new(OnceLock::new());
        self
    }

    /// A subgroup of the same degree; the caller vouches that `gens` lie in `self`.
    pub fn subgroup(&self, gens: Vec<Perm>) -> Result<Group> {
        let h = Group::new(self.degree, gens)?;
        for g in &h.gens {
            if !self.has(g) {
                return Err(Error::NotSubgroup(format!("{g} is not in the group")));
            }
        }
        Ok(h)
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Perm] {
        &self.gens
    }

    pub fn chain(&self) -> &Chain {
        self.chain
            .get_or_init(|| Chain::build(self.degree, &self.gens, &self.prefix, self.hint.as_ref()))
    }

    pub fn base(&self) -> Vec<u32> {
        self.chain().base()
    }

    pub fn strong_generators(&self) -> Vec<Perm> {
        self.chain().strong_generators()
    }

    pub fn order(&self) -> BigUint {
        self.chain().order()
    }

    /// Order as `u64`, or `None` if it does not fit.
    pub fn order_u64(&self) -> Option<u64> {
        self.order().to_u64()
    }

    pub fn is_trivial(&self) -> bool {
        self.chain().levels.is_empty()
    }

    pub fn contains(&self, g: &Perm) -> Result<bool> {
        if g.degree() != self.degree {
            return Err(Error::DegreeMismatch { expected: self.degree, found: g.degree() });
        }
        Ok(self.has(g))
    }

    pub(crate) fn has(&self, g: &Perm) -> bool {
        self.chain().contains(g)
    }

    pub fn is_subgroup_of(&self, other: &Group) -> bool {
        self.degree == other.degree && self.gens.iter().all(|g| other.has(g))
    }

    pub fn same_as(&self, other: &Group) -> bool {
        self.is_subgroup_of(other) && self.order() == other.order()
    }

    pub fn is_normal_in(&self, g: &Group) -> bool {
        g.gens.iter().all(|x| self.gens.iter().all(|n| self.has(&n.conjugate_by(x))))
    }

    pub fn conjugate_by(&self, g: &Perm) -> Group {
        let gens = self.gens.iter().map(|x| x.conjugate_by(g)).collect();
        let mut h = Group::from_parts(self.degree, gens);
        if self.chain.get().is_some() {
            h.hint = Some(self.order());
        }
        h
    }

    /// Some element mapping `a` to `b`.
    pub fn transporter(&self, a: u32, b: u32) -> Option<Perm> {
        if let Some(l) = self.chain.get().and_then(|c| c.levels.first()).filter(|l| l.base == a) {
            return l.transversal(b).cloned();
        }
        schreier_tree(&self.gens, self.degree, a).swap_remove(b as usize)
    }

    pub fn orbit(&self, point: u32) -> Vec<u32> {
        orbit_under(&self.gens, self.degree, point)
    }

    /// All orbits, each sorted, listed by least element.
    pub fn orbits(&self) -> Vec<Vec<u32>> {
        let mut seen = vec![false; self.degree];
        let mut out = Vec::new();
        for x in 0..self.degree as u32 {
            if seen[x as usize] {
                continue;
            }
            let mut o = self.orbit(x);
            for &y in &o {
                seen[y as usize] = true;
            }
            o.sort_unstable();
            out.push(o);
        }
        out
    }

    pub fn is_transitive(&self) -> bool {
        self.orbit(0).len() == self.degree
    }

    pub fn is_k_transitive(&self, k: usize) -> Result<bool> {
        if k == 0 || k > self.degree {
            return Err(Error::Input(format!("k = {k} is outside 1..={}", self.degree)));
        }
        if !self.is_transitive() {
            return Ok(false);
        }
        let prefix: Vec<u32> = (0..k as u32).collect();
        let h = self.with_base_prefix(&prefix);
        let levels = h.chain().levels();
        Ok((0..k).all(|i| levels.get(i).map_or(i + 1 == self.degree, |l| l.orbit.len() == self.degree - i)))
    }

    pub fn point_stabiliser(&self, point: u32) -> Group {
        self.pointwise_stabiliser(&[point])
    }

    pub fn pointwise_stabiliser(&self, points: &[u32]) -> Group {
        let mut prefix = Vec::new();
        for &p in points {
            if !prefix.contains(&p) {
                prefix.push(p);
            }
        }
        let h = self.with_base_prefix(&prefix);
        Group::from_chain(h.chain().tail(prefix.len().min(h.chain().levels.len())))
    }

    /// Stabiliser of a set of points (as a set).
    pub fn setwise_stabiliser(&self, set: &[u32], bound: u64) -> Result<Group> {
        let mut inside = vec![false; self.degree];
        for &x in set {
            inside[x as usize] = true;
        }
        self.filter_subgroup(bound, |g| set.iter().all(|&x| inside[g.apply(x) as usize]))
    }

    /// Subgroup of all elements satisfying `pred`, found by enumeration.
    /// `pred` must define a subgroup.
    pub fn filter_subgroup(&self, bound: u64, mut pred: impl FnMut(&Perm) -> bool) -> Result<Group> {
        let mut sub = Chain::build(self.degree, &[], &[], None);
        let mut gens = Vec::new();
        self.try_for_each_element(bound, |g| {
            if pred(g) && !sub.contains(g) {
                sub.insert_gen(g.clone());
                sub.complete(None);
                gens.push(g.clone());
            }
        })?;
        sub.prune(0);
        let cell = OnceLock::new();
        let _ = cell.set(sub);
        Ok(Group { degree: self.degree, gens, prefix: Vec::new(), hint: None, chain: Arc::new(cell) })
    }

    fn check_bound(&self, bound: u64) -> Result<()> {
        match self.order_u64() {
            Some(n) if n <= bound => Ok(()),
            _ => Err(Error::Scope(format!("group order {} exceeds enumeration bound {bound}", self.order()))),
        }
    }

    /// Visits every element exactly once, as products of transversal elements.
    pub fn try_for_each_element(&self, bound: u64, mut f: impl FnMut(&Perm)) -> Result<()> {
        self.check_bound(bound)?;
        let levels = &self.chain().levels;
        fn rec(levels: &[Level], acc: &Perm, f: &mut dyn FnMut(&Perm)) {
            match levels.split_last() {
                None => f(acc),
                Some((last, rest)) => {
                    for u in &last.reps {
                        rec(rest, &acc.compose(u), f);
                    }
                }
            }
        }
        rec(levels, &Perm::identity(self.degree), &mut f);
        Ok(())
    }

    /// Position of `g` in the mixed-radix numbering of elements by transversal
    /// coordinates, or `None` if `g` is not in the group. Fits in `u64` only for
    /// groups whose order does.
    pub fn element_index(&self, g: &Perm) -> Option<u64> {
        let mut g = g.clone();
        let mut index = 0u64;
        let mut radix = 1u64;
        for l in &self.chain().levels {
            let b = g.apply(l.base);
            let s = l.slot[b as usize];
            if s == NONE {
                return None;
            }
            if b != l.base {
                g = g.compose(&l.reps_inv[s as usize]);
            }
            index += s as u64 * radix;
            radix *= l.orbit.len() as u64;
        }
        g.is_identity().then_some(index)
    }

    /// Inverse of [`Group::element_index`].
    pub fn element_at(&self, mut index: u64) -> Perm {
        let levels = &self.chain().levels;
        let mut slots = Vec::with_capacity(levels.len());
        for l in levels {
            let n = l.orbit.len() as u64;
            slots.push((index % n) as usize);
            index /= n;
        }
        let mut g = Perm::identity(self.degree);
        for (l, &s) in levels.iter().zip(&slots).rev() {
            if s != 0 {
                g = g.compose(&l.reps[s]);
            }
        }
        g
    }

    pub fn elements_bounded(&self, bound: u64) -> Result<Vec<Perm>> {
        let mut out = Vec::new();
        self.try_for_each_element(bound, |g| out.push(g.clone()))?;
        Ok(out)
    }

    pub fn elements(&self) -> Result<Vec<Perm>> {
        self.elements_bounded(DEFAULT_ELEMENT_BOUND)
    }

    /// Uniformly random element.
    pub fn random_element<R: Rng + ?Sized>(&self, rng: &mut R) -> Perm {
        let mut g = Perm::identity(self.degree);
        for l in self.chain().levels.iter().rev() {
            let u = &l.reps[rng.gen_range(0..l.reps.len())];
            g = g.compose(u);
        }
        g
    }

    /// Smallest normal subgroup of `self` containing `seeds`.
    pub fn normal_closure(&self, seeds: &[Perm]) -> Result<Group> {
        for s in seeds {
            if !self.contains(s)? {
                return Err(Error::NotSubgroup(format!("seed {s} is not in the group")));
            }
        }
        Ok(self.normal_closure_unchecked(seeds))
    }

    pub(crate) fn normal_closure_unchecked(&self, seeds: &[Perm]) -> Group {
        let mut chain = Chain::build(self.degree, &[], &[], None);
        let mut gens: Vec<Perm> = Vec::new();
        let add = |c: Perm, chain: &mut Chain, gens: &mut Vec<Perm>| {
            if !chain.contains(&c) {
                chain.insert_gen(c.clone());
                chain.complete(None);
                gens.push(c);
            }
        };
        for s in seeds {
            add(s.clone(), &mut chain, &mut gens);
        }
        let mut i = 0;
        while i < gens.len() {
            for x in &self.gens {
                let c = gens[i].conjugate_by(x);
                add(c, &mut chain, &mut gens);
            }
            i += 1;
        }
        chain.prune(0);
        let cell = OnceLock::new();
        let _ = cell.set(chain);
        Group { degree: self.degree, gens, prefix: Vec::new(), hint: None, chain: Arc::new(cell) }
    }

    pub fn derived_subgroup(&self) -> Group {
        let mut comms = Vec::new();
        for (i, a) in self.gens.iter().enumerate() {
            for b in &self.gens[i + 1..] {
                let c = Perm::commutator(a, b);
                if !c.is_identity() {
                    comms.push(c);
                }
            }
        }
        self.normal_closure_unchecked(&comms)
    }

    /// Centre. Transitive groups use the semiregular centraliser; others enumerate.
    pub fn centre(&self) -> Result<Group> {
        if self.is_transitive() {
            let stab = self.point_stabiliser(0);
            let fixed: Vec<u32> = (0..self.degree as u32)
                .filter(|&x| stab.gens.iter().all(|g| g.apply(x) == x))
                .collect();
            let tree = schreier_tree(&self.gens, self.degree, 0);
            let mut gens = Vec::new();
            for x in fixed {
                if x == 0 {
                    continue;
                }
                // z(0^g) = x^g for g in G
                let mut img = vec![NONE; self.degree];
                for (y, g) in tree.iter().enumerate() {
                    img[y] = g.as_ref().expect("transitive").apply(x);
                }
                if let Ok(z) = Perm::from_images(img) {
                    if self.gens.iter().all(|g| g.compose(&z) == z.compose(g)) && self.has(&z) {
                        gens.push(z);
                    }
                }
            }
            return Ok(Group::from_parts(self.degree, gens));
        }
        let gens = self.gens.clone();
        self.filter_subgroup(DEFAULT_ELEMENT_BOUND, |z| gens.iter().all(|g| g.compose(z) == z.compose(g)))
    }

    /// Centraliser of a single element, by enumeration.
    pub fn centraliser_of(&self, x: &Perm, bound: u64) -> Result<Group> {
        self.filter_subgroup(bound, |z| z.compose(x) == x.compose(z))
    }

    /// Intersection, found by enumerating the smaller group and sifting in the larger.
    pub fn intersection(&self, other: &Group) -> Result<Group> {
        self.intersection_bounded(other, DEFAULT_ELEMENT_BOUND)
    }

    pub fn intersection_bounded(&self, other: &Group, bound: u64) -> Result<Group> {
        if self.degree != other.degree {
            return Err(Error::DegreeMismatch { expected: self.degree, found: other.degree });
        }
        let (small, large) = if self.order() <= other.order() { (self, other) } else { (other, self) };
        small.filter_subgroup(bound, |g| large.has(g))
    }

    pub fn is_soluble_quick(&self) -> bool {
        let mut g = self.clone();
        loop {
            if g.is_trivial() {
                return true;
            }
            let d = g.derived_subgroup();
            if d.order() == g.order() {
                return false;
            }
            g = d;
        }
    }

    /// Smallest block of imprimitivity containing `a` and `b`, as a block-of-point table.
    pub fn minimal_block(&self, a: u32, b: u32) -> Vec<u32> {
        let n = self.degree;
        let mut parent: Vec<u32> = (0..n as u32).collect();
        fn find(p: &mut [u32], mut x: u32) -> u32 {
            while p[x as usize] != x {
                p[x as usize] = p[p[x as usize] as usize];
                x = p[x as usize];
            }
            x
        }
        let mut queue = vec![(a, b)];
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        if ra != rb {
            parent[ra.max(rb) as usize] = ra.min(rb);
        }
        while let Some((x, y)) = queue.pop() {
            for g in &self.gens {
                let (u, v) = (g.apply(x), g.apply(y));
                let (ru, rv) = (find(&mut parent, u), find(&mut parent, v));
                if ru != rv {
                    parent[ru.max(rv) as usize] = ru.min(rv);
                    queue.push((u, v));
                }
            }
        }
        (0..n as u32).map(|x| find(&mut parent, x)).collect()
    }

    /// A nontrivial block system of a transitive group with blocks as small as possible
    /// among those containing point 0, or `None` when primitive.
    pub fn minimal_block_system(&self) -> Option<Vec<Vec<u32>>> {
        if self.degree <= 2 {
            return None;
        }
        let stab = self.point_stabiliser(0);
        let mut best: Option<Vec<u32>> = None;
        let mut best_size = self.degree;
        for orb in stab.orbits() {
            let b = orb[0];
            if b == 0 {
                continue;
            }
            let table = self.minimal_block(0, b);
            let size = table.iter().filter(|&&r| r == table[0]).count();
            if size < best_size {
                best_size = size;
                best = Some(table);
            }
        }
        let table = best?;
        let mut blocks: Vec<Vec<u32>> = Vec::new();
        let mut index: HashMap<u32, usize> = HashMap::new();
        for (x, r) in table.iter().enumerate() {
            let k = *index.entry(*r).or_insert_with(|| {
                blocks.push(Vec::new());
                blocks.len() - 1
            });
            blocks[k].push(x as u32);
        }
        Some(blocks)
    }

    pub fn is_primitive(&self) -> bool {
        self.is_transitive() && self.minimal_block_system().is_none()
    }

    /// Action on a `G`-invariant list of points, relabelled by position.
    pub fn induced_action(&self, points: &[u32]) -> Result<GroupMap> {
        let mut index_of = vec![None; self.degree];
        for (i, &x) in points.iter().enumerate() {
            if x as usize >= self.degree || index_of[x as usize].is_some() {
                return Err(Error::Input(format!("bad point list for degree {}", self.degree)));
            }
            index_of[x as usize] = Some(i as u32);
        }
        let mut images = Vec::with_capacity(self.gens.len());
        for g in &self.gens {
            images.push(g.restrict_to(points, &index_of).ok_or(Error::NotInvariant)?);
        }
        Ok(GroupMap::new(self.clone(), MapKind::InducedAction, Action::Points { points: points.to_vec(), index_of }, images, points.len()))
    }

    /// Action on a `G`-invariant system of blocks.
    pub fn block_action(&self, blocks: &[Vec<u32>]) -> Result<GroupMap> {
        let mut block_of = vec![NONE; self.degree];
        for (i, b) in blocks.iter().enumerate() {
            if b.is_empty() {
                return Err(Error::Input("empty block".into()));
            }
            for &x in b {
                if x as usize >= self.degree || block_of[x as usize] != NONE {
                    return Err(Error::Input("blocks overlap or leave the domain".into()));
                }
                block_of[x as usize] = i as u32;
            }
        }
        let action = Action::Blocks { block_of, blocks: blocks.to_vec() };
        let mut images = Vec::with_capacity(self.gens.len());
        for g in &self.gens {
            images.push(action.map(g).ok_or(Error::NotInvariant)?);
        }
        Ok(GroupMap::new(self.clone(), MapKind::InducedAction, action, images, blocks.len()))
    }

    /// Action on right cosets `Hg` by right multiplication.
    pub fn coset_action(&self, h: &Group) -> Result<GroupMap> {
        if !h.is_subgroup_of(self) {
            return Err(Error::NotSubgroup("coset action needs a subgroup".into()));
        }
        let index = self.order() / h.order();
        let index = index.to_usize().filter(|&i| i <= MAX_COSET_INDEX).ok_or_else(|| {
            Error::Scope(format!("index {} exceeds {MAX_COSET_INDEX}", self.order() / h.order()))
        })?;
        let g_base = self.base();
        let h_chain = Chain::build(self.degree, &h.gens, &g_base, Some(&h.order()));
        let mut table = CosetTable { h_chain, g_base, keys: HashMap::new(), reps: Vec::new() };
        let id = Perm::identity(self.degree);
        let k0 = table.canonical(&id);
        table.keys.insert(k0, 0);
        table.reps.push(id);
        let mut rows = vec![Vec::with_capacity(index); self.gens.len()];
        let mut i = 0;
        while i < table.reps.len() {
            for (s, g) in self.gens.iter().enumerate() {
                let r = table.reps[i].compose(g);
                let key = table.canonical(&r);
                let next = table.reps.len() as u32;
                let j = *table.keys.entry(key).or_insert(next);
                if j == next {
                    table.reps.push(r);
                }
                rows[s].push(j);
            }
            i += 1;
        }
        debug_assert_eq!(table.reps.len(), index);
        let images = rows.into_iter().map(Perm::from_images_unchecked).collect();
        Ok(GroupMap::new(self.clone(), MapKind::CosetAction, Action::Cosets(Arc::new(table)), images, index))
    }

    pub fn to_file(&self, name: Option<String>) -> GroupFile {
        GroupFile { degree: self.degree, generators: self.gens.clone(), name }
    }

    pub fn from_file(f: &GroupFile) -> Result<Group> {
        Group::new(f.degree, f.generators.clone())
    }

    pub fn read_json(path: &Path) -> Result<(Group, Option<String>)> {
        let f: GroupFile = serde_json::from_str(&std::fs::read_to_string(path)?)?;
        Ok((Group::from_file(&f)?, f.name))
    }
}

pub(crate) fn orbit_under(gens: &[Perm], degree: usize, point: u32) -> Vec<u32> {
    let mut seen = vec![false; degree];
    seen[point as usize] = true;
    let mut orbit = vec![point];
    let mut i = 0;
    while i < orbit.len() {
        let x = orbit[i];
        for g in gens {
            let y = g.apply(x);
            if !seen[y as usize] {
                seen[y as usize] = true;
                orbit.push(y);
            }
        }
        i += 1;
    }
    orbit
}

/// For each point of the orbit of `root`, a group element mapping `root` to it.
fn schreier_tree(gens: &[Perm], degree: usize, root: u32) -> Vec<Option<Perm>> {
    let mut tree: Vec<Option<Perm>> = vec![None; degree];
    tree[root as usize] = Some(Perm::identity(degree));
    let mut queue = vec![root];
    let mut i = 0;
    while i < queue.len() {
        let x = queue[i];
        for g in gens {
            let y = g.apply(x);
            if tree[y as usize].is_none() {
                tree[y as usize] = Some(tree[x as usize].as_ref().unwrap().compose(g));
                queue.push(y);
            }
        }
        i += 1;
    }
    tree
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum MapKind {
    InducedAction,
    CosetAction,
    Restriction,
}

#[derive(Debug)]
struct CosetTable {
    h_chain: Chain,
    g_base: Vec<u32>,
    keys: HashMap<Vec<u32>, u32>,
    reps: Vec<Perm>,
}

impl CosetTable {
    /// Images of the base of `G` under the element of `Hg` whose base image is
    /// lexicographically least. Equal exactly for equal cosets.
    fn canonical(&self, g: &Perm) -> Vec<u32> {
        let mut g = g.clone();
        for l in &self.h_chain.levels {
            let (idx, _) = l.orbit.iter().enumerate().min_by_key(|(_, &d)| g.apply(d)).expect("orbit is nonempty");
            g = l.reps[idx].compose(&g);
        }
        self.g_base.iter().map(|&b| g.apply(b)).collect()
    }
}

#[derive(Debug, Clone)]
enum Action {
    Points { points: Vec<u32>, index_of: Vec<Option<u32>> },
    Blocks { block_of: Vec<u32>, blocks: Vec<Vec<u32>> },
    Cosets(Arc<CosetTable>),
}

impl Action {
    fn map(&self, g: &Perm) -> Option<Perm> {
        match self {
            Action::Points { points, index_of } => g.restrict_to(points, index_of),
            Action::Blocks { block_of, blocks } => {
                let mut img = Vec::with_capacity(blocks.len());
                for b in blocks {
                    let target = block_of[g.apply(b[0]) as usize];
                    if target == NONE || b.iter().any(|&x| block_of[g.apply(x) as usize] != target) {
                        return None;
                    }
                    img.push(target);
                }
                Perm::from_images(img).ok()
            }
            Action::Cosets(t) => {
                let img: Option<Vec<u32>> = t.reps.iter().map(|r| t.keys.get(&t.canonical(&r.compose(g))).copied()).collect();
                Some(Perm::from_images_unchecked(img?))
            }
        }
    }
}

/// A homomorphism given by an action of the source group on some structure.
#[derive(Debug, Clone)]
pub struct GroupMap {
    source: Group,
    kind: MapKind,
    action: Action,
    images: Vec<Perm>,
    target_degree: usize,
    kernel: Arc<OnceLock<Group>>,
}

impl GroupMap {
    fn new(source: Group, kind: MapKind, action: Action, images: Vec<Perm>, target_degree: usize) -> GroupMap {
        GroupMap { source, kind, action, images, target_degree, kernel: Arc::new(OnceLock::new()) }
    }

    pub fn source(&self) -> &Group {
        &self.source
    }

    pub fn kind(&self) -> MapKind {
        self.kind
    }

    pub fn target_degree(&self) -> usize {
        self.target_degree
    }

    /// Images of the source generators.
    pub fn images(&self) -> &[Perm] {
        &self.images
    }

    /// Image of an element of the source group.
    pub fn map(&self, g: &Perm) -> Result<Perm> {
        if !self.source.contains(g)? {
            return Err(Error::NotSubgroup(format!("{g} is not in the source group")));
        }
        Ok(self.action.map(g).expect("action is well defined on the source"))
    }

    pub fn image(&self) -> Group {
        let img = Group::from_parts(self.target_degree, self.images.clone());
        match self.kernel.get() {
            Some(k) => img.with_order_hint(self.source.order() / k.order()),
            None => img,
        }
    }

    /// The same action restricted to a subgroup of the source.
    pub fn restrict(&self, sub: &Group) -> Result<GroupMap> {
        if !sub.is_subgroup_of(&self.source) {
            return Err(Error::NotSubgroup("restriction needs a subgroup of the source".into()));
        }
        let images = sub.gens.iter().map(|g| self.action.map(g).expect("well defined")).collect();
        Ok(GroupMap::new(sub.clone(), MapKind::Restriction, self.action.clone(), images, self.target_degree))
    }

    pub fn kernel(&self) -> &Group {
        self.kernel.get_or_init(|| match &self.action {
            Action::Points { points, .. } => self.source.pointwise_stabiliser(points),
            _ => self.kernel_via_sum(),
        })
    }

    /// Builds the source acting on its points and the target points side by side, then
    /// fixes every target point.
    fn kernel_via_sum(&self) -> Group {
        let n = self.source.degree;
        let m = self.target_degree;
        let gens: Vec<Perm> = self.source.gens.iter().zip(&self.images).map(|(g, i)| g.direct_sum(i)).collect();
        let combined = Group::from_parts(n + m, gens).with_order_hint(self.source.order());
        let target: Vec<u32> = (n as u32..(n + m) as u32).collect();
        let stab = combined.pointwise_stabiliser(&target);
        let order = stab.order();
        let points: Vec<u32> = (0..n as u32).collect();
        let index_of: Vec<Option<u32>> = (0..(n + m) as u32).map(|x| (x < n as u32).then_some(x)).collect();
        let gens = stab.gens.iter().map(|g| g.restrict_to(&points, &index_of).expect("source points are invariant")).collect();
        Group::from_parts(n, gens).with_order_hint(order)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn cyc(n: usize, cycles: &[&[u32]]) -> Perm {
        Perm::from_cycles(n, cycles).unwrap()
    }

    fn sym(n: usize) -> Group {
        let long: Vec<u32> = (0..n as u32).collect();
        Group::new(n, vec![cyc(n, &[&long]), cyc(n, &[&[0, 1]])]).unwrap()
    }

    fn big(n: u64) -> BigUint {
        BigUint::from(n)
    }

    #[test]
    fn trivial_group_has_empty_base() {
        let g = Group::new(4, vec![]).unwrap();
        assert_eq!(g.order(), big(1));
        assert!(g.base().is_empty());
    }

    #[test]
    fn degree_zero_is_rejected() {
        assert!(Group::new(0, vec![]).is_err());
    }

    #[test]
    fn symmetric_orders() {
        assert_eq!(sym(6).order(), big(720));
        assert_eq!(sym(9).order(), big(362880));
    }

    #[test]
    fn base_is_ascending_and_deterministic() {
        let g = sym(6);
        assert_eq!(g.base(), vec![0, 1, 2, 3, 4]);
        assert_eq!(sym(6).base(), g.base());
    }

    #[test]
    fn membership_respects_parity() {
        let a6 = Group::new(6, vec![cyc(6, &[&[0, 1, 2]]), cyc(6, &[&[1, 2, 3, 4, 5]])]).unwrap();
        assert_eq!(a6.order(), big(360));
        assert!(!a6.contains(&cyc(6, &[&[0, 1]])).unwrap());
        assert!(a6.contains(&cyc(6, &[&[0, 1], &[2, 3]])).unwrap());
        assert!(a6.contains(&Perm::identity(5)).is_err());
    }

    #[test]
    fn dihedral_square_is_not_two_transitive() {
        let d8 = Group::new(4, vec![cyc(4, &[&[0, 1, 2, 3]]), cyc(4, &[&[1, 3]])]).unwrap();
        assert!(d8.is_k_transitive(1).unwrap());
        assert!(!d8.is_k_transitive(2).unwrap());
        assert!(sym(5).is_k_transitive(5).unwrap());
        assert!(sym(5).is_k_transitive(6).is_err());
    }

    #[test]
    fn stabilisers() {
        let a6 = Group::new(6, vec![cyc(6, &[&[0, 1, 2]]), cyc(6, &[&[1, 2, 3, 4, 5]])]).unwrap();
        assert_eq!(a6.point_stabiliser(0).order(), big(60));
        let h = a6.pointwise_stabiliser(&[0, 1]);
        assert_eq!(h.order(), big(12));
        assert!(h.generators().iter().all(|g| g.apply(0) == 0 && g.apply(1) == 1));
    }

    #[test]
    fn induced_action_on_direct_factor() {
        let s = cyc(6, &[&[0, 1, 2]]);
        let t = cyc(6, &[&[0, 1]]);
        let u = cyc(6, &[&[3, 4, 5]]);
        let v = cyc(6, &[&[3, 4]]);
        let g = Group::new(6, vec![s, t, u, v]).unwrap();
        let m = g.induced_action(&[0, 1, 2]).unwrap();
        assert_eq!(m.kernel().order(), big(6));
        assert_eq!(m.image().order(), big(6));
        assert!(m.kernel().is_normal_in(&g));
        assert!(matches!(g.induced_action(&[0, 3]), Err(Error::NotInvariant)));
    }

    #[test]
    fn coset_actions() {
        let s4 = sym(4);
        let m = s4.coset_action(&s4).unwrap();
        assert_eq!(m.target_degree(), 1);
        let stab = s4.point_stabiliser(3);
        let m = s4.coset_action(&stab).unwrap();
        assert_eq!(m.target_degree(), 4);
        assert!(m.image().is_k_transitive(2).unwrap());
        assert!(m.kernel().is_trivial());
        let v4 = Group::new(4, vec![cyc(4, &[&[0, 1], &[2, 3]]), cyc(4, &[&[0, 2], &[1, 3]])]).unwrap();
        let m = s4.coset_action(&v4).unwrap();
        assert_eq!(m.target_degree(), 6);
        assert_eq!(m.kernel().order(), big(4));
        assert_eq!(m.image().order(), big(6));
        let x = cyc(4, &[&[0, 1, 2]]);
        let y = cyc(4, &[&[1, 2, 3]]);
        let prod = m.map(&x.compose(&y)).unwrap();
        assert_eq!(prod, m.map(&x).unwrap().compose(&m.map(&y).unwrap()));
    }

    #[test]
    fn closures_and_centre() {
        let s4 = sym(4);
        assert_eq!(s4.derived_subgroup().order(), big(12));
        assert_eq!(s4.derived_subgroup().derived_subgroup().order(), big(4));
        assert!(s4.centre().unwrap().is_trivial());
        let c4 = Group::new(4, vec![cyc(4, &[&[0, 1, 2, 3]])]).unwrap();
        assert_eq!(c4.centre().unwrap().order(), big(4));
        let a5 = Group::new(5, vec![cyc(5, &[&[0, 1, 2]]), cyc(5, &[&[0, 1, 2, 3, 4]])]).unwrap();
        assert_eq!(a5.normal_closure(&[cyc(5, &[&[2, 3, 4]])]).unwrap().order(), big(60));
        assert!(a5.normal_closure(&[cyc(5, &[&[0, 1]])]).is_err());
    }

    #[test]
    fn enumeration_and_histogram() {
        let elts = sym(4).elements().unwrap();
        assert_eq!(elts.len(), 24);
        let mut hist = [0usize; 5];
        for e in &elts {
            hist[e.order() as usize] += 1;
        }
        assert_eq!(hist, [0, 1, 9, 8, 6]);
        let mut sorted = elts.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(sorted.len(), 24);
        assert!(sym(10).elements_bounded(1000).is_err());
    }

    #[test]
    fn element_indices_are_a_bijection() {
        let g = sym(5);
        let mut seen = [false; 120];
        for e in g.elements().unwrap() {
            let i = g.element_index(&e).unwrap() as usize;
            assert!(!seen[i]);
            seen[i] = true;
            assert_eq!(g.element_at(i as u64), e);
        }
        let a5 = Group::new(5, vec![cyc(5, &[&[0, 1, 2]]), cyc(5, &[&[0, 1, 2, 3, 4]])]).unwrap();
        assert_eq!(a5.element_index(&cyc(5, &[&[0, 1]])), None);
    }

    #[test]
    fn intersections() {
        let a6 = Group::new(6, vec![cyc(6, &[&[0, 1, 2]]), cyc(6, &[&[1, 2, 3, 4, 5]])]).unwrap();
        let a5 = a6.point_stabiliser(5);
        // (S_4 x S_2) ∩ A_6 on {0,1,2,3} | {4,5}
        let s4 = Group::new(
            6,
            vec![cyc(6, &[&[0, 1, 2]]), cyc(6, &[&[0, 1, 2, 3], &[4, 5]]), cyc(6, &[&[0, 1], &[4, 5]])],
        )
        .unwrap();
        assert_eq!(s4.order(), big(24));
        let i = a5.intersection(&s4).unwrap();
        assert_eq!(i.order(), big(12));
        let fixed4 = a6.pointwise_stabiliser(&[4]).intersection(&s4).unwrap();
        assert_eq!(fixed4.order(), big(12));
        assert!(a6.intersection(&a6).unwrap().same_as(&a6));
    }

    #[test]
    fn blocks_of_imprimitive_group() {
        let d8 = Group::new(4, vec![cyc(4, &[&[0, 1, 2, 3]]), cyc(4, &[&[1, 3]])]).unwrap();
        let blocks = d8.minimal_block_system().unwrap();
        assert_eq!(blocks, vec![vec![0, 2], vec![1, 3]]);
        let m = d8.block_action(&blocks).unwrap();
        assert_eq!(m.kernel().order(), big(4));
        assert!(sym(5).is_primitive());
    }

    #[test]
    fn random_elements_lie_in_group() {
        let g = Group::new(7, vec![cyc(7, &[&[0, 1, 2, 3, 4, 5, 6]]), cyc(7, &[&[1, 2, 4], &[3, 6, 5]])]).unwrap();
        assert_eq!(g.order(), big(21));
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..50 {
            assert!(g.has(&g.random_element(&mut rng)));
        }
    }

    #[test]
    fn group_file_round_trip() {
        let g = sym(5);
        let f = g.to_file(Some("S5".into()));
        let s = serde_json::to_string(&f).unwrap();
        let back: GroupFile = serde_json::from_str(&s).unwrap();
        assert_eq!(back, f);
        assert_eq!(Group::from_file(&back).unwrap().order(), big(120));
        let bad = r#"{"degree":3,"generators":[[0,1]]}"#;
        let f: GroupFile = serde_json::from_str(bad).unwrap();
        assert!(Group::from_file(&f).is_err());
    }
}
