//! Structural invariants: solubility, composition factors, socles, simple-group
//! names, fingerprints and isomorphisms.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::OnceLock;

use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::arith::{factor_counts, factorize, prime_power};
use crate::error::{Error, Result};
use crate::group::{Group, DEFAULT_ELEMENT_BOUND};
use crate::perm::Perm;

/// Largest order handled by the exhaustive isomorphism search.
pub const ISO_SCOPE: u64 = 50_000;
/// Up to this order simplicity is decided over all conjugacy classes.
pub const EXHAUSTIVE_SIMPLICITY_BOUND: u64 = 500_000;
const RANDOM_SAMPLES: usize = 60;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "kind", content = "value", rename_all = "kebab-case")]
pub enum FactorKind {
    Cyclic(u64),
    Alternating(u32),
    NamedSimple(String),
    Unknown,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FactorLabel {
    pub kind: FactorKind,
    pub order: u64,
}

impl FactorLabel {
    pub fn cyclic(p: u64) -> Self {
        FactorLabel { kind: FactorKind::Cyclic(p), order: p }
    }

    pub fn is_cyclic(&self) -> bool {
        matches!(self.kind, FactorKind::Cyclic(_))
    }
}

impl PartialOrd for FactorLabel {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for FactorLabel {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.order, &self.kind).cmp(&(other.order, &other.kind))
    }
}

impl fmt::Display for FactorLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            FactorKind::Cyclic(p) => write!(f, "C{p}"),
            FactorKind::Alternating(n) => write!(f, "A{n}"),
            FactorKind::NamedSimple(s) => write!(f, "{s}"),
            FactorKind::Unknown => write!(f, "?{}", self.order),
        }
    }
}

pub fn is_soluble(g: &Group) -> bool {
    g.is_soluble_quick()
}

/// Orders of the derived series, starting with `|G|` and ending at the perfect core.
pub fn derived_series_orders(g: &Group) -> Vec<u64> {
    let mut out = vec![g.order_u64().unwrap_or(u64::MAX)];
    let mut cur = g.clone();
    loop {
        if cur.is_trivial() {
            return out;
        }
        let d = cur.derived_subgroup();
        if d.order() == cur.order() {
            return out;
        }
        out.push(d.order_u64().unwrap_or(u64::MAX));
        cur = d;
    }
}

fn order_of(g: &Group) -> Result<u64> {
    g.order_u64().ok_or_else(|| Error::Scope(format!("group order {} exceeds 64 bits", g.order())))
}

fn cyclic_factors(n: u64) -> Vec<FactorLabel> {
    factorize(n).expect("positive order").into_iter().map(FactorLabel::cyclic).collect()
}

// ---------------------------------------------------------------------------
// Conjugacy classes

/// Conjugacy classes, with elements addressed by [`Group::element_index`].
#[derive(Clone, Debug)]
pub struct Classes {
    pub class_of: Vec<u32>,
    pub reps: Vec<Perm>,
    pub sizes: Vec<u64>,
    pub orders: Vec<u64>,
}

pub fn conjugacy_classes(g: &Group, bound: u64) -> Result<Classes> {
    let n = order_of(g)?;
    if n > bound {
        return Err(Error::Scope(format!("class computation for order {n} exceeds {bound}")));
    }
    let mut class_of = vec![u32::MAX; n as usize];
    let (mut reps, mut sizes, mut orders) = (Vec::new(), Vec::new(), Vec::new());
    for i in 0..n {
        if class_of[i as usize] != u32::MAX {
            continue;
        }
        let x = g.element_at(i);
        let c = reps.len() as u32;
        class_of[i as usize] = c;
        let mut queue = vec![x.clone()];
        let mut size = 1u64;
        while let Some(y) = queue.pop() {
            for s in g.generators() {
                let z = y.conjugate_by(s);
                let j = g.element_index(&z).expect("conjugate stays in the group") as usize;
                if class_of[j] == u32::MAX {
                    class_of[j] = c;
                    size += 1;
                    queue.push(z);
                }
            }
        }
        orders.push(x.order());
        reps.push(x);
        sizes.push(size);
    }
    Ok(Classes { class_of, reps, sizes, orders })
}

/// Representatives of the classes of elements of prime order; exhaustive within `bound`,
/// otherwise drawn from a seeded random walk.
fn prime_order_seeds(g: &Group, seed: u64) -> (Vec<Perm>, bool) {
    if let Some(n) = g.order_u64() {
        if n <= EXHAUSTIVE_SIMPLICITY_BOUND {
            let classes = conjugacy_classes(g, EXHAUSTIVE_SIMPLICITY_BOUND).expect("within bound");
            let reps = classes
                .reps
                .into_iter()
                .zip(classes.orders)
                .filter(|(_, o)| *o > 1 && prime_power(*o).is_some_and(|(_, e)| e == 1))
                .map(|(x, _)| x)
                .collect();
            return (reps, true);
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    for _ in 0..RANDOM_SAMPLES {
        let x = g.random_element(&mut rng);
        let o = x.order();
        if o == 1 {
            continue;
        }
        let primes = factor_counts(o).expect("positive");
        let (p, _) = primes[rng.gen_range(0..primes.len())];
        out.push(x.pow((o / p) as i64));
    }
    (out, false)
}

/// A proper nontrivial normal subgroup, if one is found.
fn proper_normal_subgroup(g: &Group, seed: u64) -> Option<Group> {
    let (seeds, _) = prime_order_seeds(g, seed);
    let n = g.order();
    seeds.iter().map(|x| g.normal_closure_unchecked(std::slice::from_ref(x))).find(|c| c.order() != n)
}

/// Simplicity test. Exhaustive for orders up to [`EXHAUSTIVE_SIMPLICITY_BOUND`], otherwise
/// based on normal closures of seeded random elements of prime order.
pub fn is_simple(g: &Group, seed: u64) -> bool {
    if g.is_trivial() {
        return false;
    }
    let n = g.order();
    if let Some(n) = n.to_u64() {
        if prime_power(n).is_some_and(|(_, e)| e == 1) {
            return true;
        }
    }
    if g.derived_subgroup().order() != n {
        return false;
    }
    if let Some(rn) = regular_normal_subgroup(g) {
        return rn.order() == n;
    }
    proper_normal_subgroup(g, seed).is_none()
}

/// For a primitive group of prime-power degree, the regular elementary abelian normal
/// subgroup if it exists. The translation taking 0 to 1 lies in the coset `G_0 t`.
pub fn regular_normal_subgroup(g: &Group) -> Option<Group> {
    let d = g.degree();
    let (p, _) = prime_power(d as u64)?;
    if d < 2 || !g.is_transitive() {
        return None;
    }
    let stab = g.point_stabiliser(0);
    let t = g.transporter(0, 1)?;
    let mut found = None;
    let gens = g.generators().to_vec();
    let res = stab.try_for_each_element(DEFAULT_ELEMENT_BOUND, |s| {
        if found.is_some() {
            return;
        }
        let x = s.compose(&t);
        if x.fixed_points().next().is_some() || !x.pow(p as i64).is_identity() {
            return;
        }
        for h in &gens {
            let y = x.conjugate_by(h);
            if x.compose(&y) != y.compose(&x) {
                return;
            }
        }
        let n = g.normal_closure_unchecked(std::slice::from_ref(&x));
        if n.order_u64() == Some(d as u64) {
            found = Some(n);
        }
    });
    res.ok()?;
    found
}

// ---------------------------------------------------------------------------
// Simple groups by order

fn gcd(a: u64, b: u64) -> u64 {
    num_integer::Integer::gcd(&a, &b)
}

fn simple_table() -> &'static BTreeMap<u64, Vec<FactorKind>> {
    static TABLE: OnceLock<BTreeMap<u64, Vec<FactorKind>>> = OnceLock::new();
    TABLE.get_or_init(|| {
        const LIMIT: u128 = 1_000_000_000;
        let mut t: BTreeMap<u64, Vec<FactorKind>> = BTreeMap::new();
        let mut named: Vec<(u128, String)> = Vec::new();
        let mut alt = Vec::new();
        let mut f: u128 = 60;
        for n in 5u32.. {
            if f > LIMIT {
                break;
            }
            alt.push((f, n));
            f *= n as u128 + 1;
        }
        let prime_powers: Vec<u128> = (2u64..5000).filter(|&q| prime_power(q).is_some()).map(|q| q as u128).collect();
        for &q in prime_powers.iter().filter(|&&q| q >= 4) {
            named.push((q * (q * q - 1) / gcd(2, q as u64 - 1) as u128, format!("PSL(2,{q})")));
        }
        for &q in &prime_powers {
            let qq = q * q;
            named.push((q.pow(3) * (q.pow(3) - 1) * (qq - 1) / gcd(3, q as u64 - 1) as u128, format!("PSL(3,{q})")));
            if q >= 3 {
                named.push((q.pow(3) * (q.pow(3) + 1) * (qq - 1) / gcd(3, q as u64 + 1) as u128, format!("PSU(3,{q})")));
                named.push((q.pow(4) * (q.pow(4) - 1) * (qq - 1) / gcd(2, q as u64 - 1) as u128, format!("PSp(4,{q})")));
            }
            if q < 64 {
                named.push((
                    q.pow(6) * (q.pow(4) - 1) * (q.pow(3) - 1) * (qq - 1) / gcd(4, q as u64 - 1) as u128,
                    format!("PSL(4,{q})"),
                ));
                named.push((
                    q.pow(6) * (q.pow(4) - 1) * (q.pow(3) + 1) * (qq - 1) / gcd(4, q as u64 + 1) as u128,
                    format!("PSU(4,{q})"),
                ));
                named.push((q.pow(6) * (q.pow(6) - 1) * (qq - 1), format!("G2({q})")));
            }
        }
        for (q, name) in [(8u128, "Sz(8)"), (32, "Sz(32)")] {
            named.push((q * q * (q * q + 1) * (q - 1), name.to_string()));
        }
        for (o, name) in [
            (1_451_520u128, "Sp(6,2)"),
            (9_999_360, "PSL(5,2)"),
            (13_685_760, "PSU(5,2)"),
            (174_182_400, "O8+(2)"),
            (197_406_720, "O8-(2)"),
            (211_341_312, "3D4(2)"),
            (17_971_200, "2F4(2)'"),
            (7_920, "M11"),
            (95_040, "M12"),
            (443_520, "M22"),
            (10_200_960, "M23"),
            (244_823_040, "M24"),
            (175_560, "J1"),
            (604_800, "J2"),
            (50_232_960, "J3"),
            (44_352_000, "HS"),
            (898_128_000, "McL"),
        ] {
            named.push((o, name.to_string()));
        }
        for (o, n) in alt {
            t.entry(o as u64).or_default().push(FactorKind::Alternating(n));
        }
        // G2(2) is not simple and PSL(3,2), PSL(4,2), PSp(4,3) duplicate smaller names.
        for (o, name) in named {
            if o > LIMIT || name == "G2(2)" {
                continue;
            }
            let entry = t.entry(o as u64).or_default();
            let duplicate = match entry.first() {
                None => false,
                Some(_) => !matches!((o, name.as_str()), (20_160, "PSL(3,4)")),
            };
            if !duplicate && !entry.contains(&FactorKind::NamedSimple(name.clone())) {
                entry.push(FactorKind::NamedSimple(name));
            }
        }
        t
    })
}

/// Name for a simple group of the given order; `has_order_15` separates A8 from PSL(3,4).
pub fn simple_label_for_order(order: u64, has_order_15: impl FnOnce() -> bool) -> Option<FactorLabel> {
    if prime_power(order).is_some_and(|(_, e)| e == 1) {
        return Some(FactorLabel::cyclic(order));
    }
    let kinds = simple_table().get(&order)?;
    let kind = if kinds.len() > 1 {
        if has_order_15() {
            FactorKind::Alternating(8)
        } else {
            FactorKind::NamedSimple("PSL(3,4)".into())
        }
    } else {
        kinds[0].clone()
    };
    Some(FactorLabel { kind, order })
}

fn has_element_of_order(g: &Group, k: u64) -> bool {
    let mut found = false;
    if g.try_for_each_element(DEFAULT_ELEMENT_BOUND, |x| found |= !found && x.order() == k).is_ok() {
        return found;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(15);
    (0..2000).any(|_| g.random_element(&mut rng).order().is_multiple_of(k))
}

fn label_simple(g: &Group) -> FactorLabel {
    let order = g.order_u64().unwrap_or(u64::MAX);
    simple_label_for_order(order, || has_element_of_order(g, 15))
        .unwrap_or(FactorLabel { kind: FactorKind::Unknown, order })
}

/// Identifies a simple group; fails on non-simple input or unknown order.
pub fn simple_id(g: &Group) -> Result<FactorLabel> {
    if !is_simple(g, 0) {
        return Err(Error::Input("group is not simple".into()));
    }
    let label = label_simple(g);
    if label.kind == FactorKind::Unknown {
        return Err(Error::Scope(format!("no simple group of order {} in the table", label.order)));
    }
    Ok(label)
}

// ---------------------------------------------------------------------------
// Composition factors and socle

/// Composition factors with multiplicity, sorted by order.
pub fn composition_factors(g: &Group, seed: u64) -> Result<Vec<FactorLabel>> {
    let mut out = Vec::new();
    descend(g, seed, &mut out)?;
    out.sort();
    Ok(out)
}

fn descend(g: &Group, seed: u64, out: &mut Vec<FactorLabel>) -> Result<()> {
    if g.is_trivial() {
        return Ok(());
    }
    let n = order_of(g)?;
    if is_soluble(g) {
        out.extend(cyclic_factors(n));
        return Ok(());
    }
    let d = g.derived_subgroup();
    let dn = order_of(&d)?;
    if dn != n {
        out.extend(cyclic_factors(n / dn));
        return descend(&d, seed, out);
    }
    // Perfect from here on.
    if !g.is_transitive() {
        let orbit = g
            .orbits()
            .into_iter()
            .find(|o| o.len() > 1)
            .expect("nontrivial group moves a point");
        let map = g.induced_action(&orbit)?;
        descend(&map.image(), seed, out)?;
        return descend(map.kernel(), seed, out);
    }
    if let Some(blocks) = g.minimal_block_system() {
        let map = g.block_action(&blocks)?;
        descend(&map.image(), seed, out)?;
        return descend(map.kernel(), seed, out);
    }
    if let Some(rn) = regular_normal_subgroup(g) {
        if rn.order() != g.order() {
            descend(&rn, seed, out)?;
            return descend(&g.point_stabiliser(0), seed, out);
        }
    }
    match proper_normal_subgroup(g, seed) {
        None => {
            out.push(label_simple(g));
            Ok(())
        }
        Some(nsub) => {
            let map = g.coset_action(&nsub)?;
            descend(&nsub, seed, out)?;
            descend(&map.image(), seed, out)
        }
    }
}

/// Join of all minimal normal subgroups.
///
/// Every minimal normal subgroup is the normal closure of any of its elements of prime
/// order, so the candidates are closures of prime-order class representatives.
pub fn socle(g: &Group, seed: u64) -> Result<Group> {
    if g.is_trivial() {
        return Ok(g.clone());
    }
    if let Some(n) = g.order_u64() {
        if n > DEFAULT_ELEMENT_BOUND && regular_normal_subgroup(g).is_none() {
            return Err(Error::Scope(format!("socle search for order {n} exceeds scope")));
        }
    }
    if g.is_primitive() {
        if let Some(rn) = regular_normal_subgroup(g) {
            return Ok(rn);
        }
    }
    let (seeds, _) = prime_order_seeds(g, seed);
    let mut candidates: Vec<Group> = Vec::new();
    for x in &seeds {
        let c = g.normal_closure_unchecked(std::slice::from_ref(x));
        if !candidates.iter().any(|d| d.same_as(&c)) {
            candidates.push(c);
        }
    }
    let minimal: Vec<&Group> = candidates
        .iter()
        .filter(|c| !candidates.iter().any(|d| d.order() < c.order() && d.is_subgroup_of(c)))
        .collect();
    let gens: Vec<Perm> = minimal.iter().flat_map(|c| c.generators().to_vec()).collect();
    Ok(Group::from_parts(g.degree(), gens))
}

// ---------------------------------------------------------------------------
// Fingerprints

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Fingerprint {
    pub order: u64,
    pub element_orders: BTreeMap<u64, u64>,
    pub derived_series: Vec<u64>,
    pub centre_order: u64,
    pub abelian_invariants: Vec<u64>,
}

pub fn element_order_histogram(g: &Group) -> Result<BTreeMap<u64, u64>> {
    let mut hist = BTreeMap::new();
    g.try_for_each_element(DEFAULT_ELEMENT_BOUND, |x| *hist.entry(x.order()).or_insert(0) += 1)?;
    Ok(hist)
}

/// Invariant factors of an abelian group, ascending (`[2, 12]` for `C2 x C12`).
pub fn abelian_group_invariants(a: &Group) -> Result<Vec<u64>> {
    let n = order_of(a)?;
    let elems = a.elements()?;
    let mut per_prime: Vec<(u64, Vec<u32>)> = Vec::new();
    for (p, e) in factor_counts(n)? {
        // c_k = log_p #{x : x^(p^k) = 1} = sum_i min(k, lambda_i)
        let mut logs = vec![0u32];
        let mut pk = 1i64;
        for _ in 0..e {
            pk *= p as i64;
            let count = elems.iter().filter(|x| x.pow(pk).is_identity()).count() as u64;
            let (_, l) = prime_power(count).unwrap_or((p, 0));
            logs.push(l);
        }
        let mut parts = Vec::new();
        for k in 1..logs.len() {
            let at_least_k = logs[k] - logs[k - 1];
            let at_least_next = if k + 1 < logs.len() { logs[k + 1] - logs[k] } else { 0 };
            for _ in 0..(at_least_k - at_least_next) {
                parts.push(k as u32);
            }
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        per_prime.push((p, parts));
    }
    let len = per_prime.iter().map(|(_, v)| v.len()).max().unwrap_or(0);
    let mut inv: Vec<u64> = (0..len)
        .map(|i| per_prime.iter().map(|(p, v)| v.get(i).map_or(1, |&e| p.pow(e))).product())
        .collect();
    inv.sort_unstable();
    Ok(inv)
}

pub fn abelianization_invariants(g: &Group) -> Result<Vec<u64>> {
    let d = g.derived_subgroup();
    if d.order() == g.order() {
        return Ok(Vec::new());
    }
    if d.is_trivial() {
        return abelian_group_invariants(g);
    }
    abelian_group_invariants(&g.coset_action(&d)?.image())
}

pub fn fingerprint(g: &Group) -> Result<Fingerprint> {
    Ok(Fingerprint {
        order: order_of(g)?,
        element_orders: element_order_histogram(g)?,
        derived_series: derived_series_orders(g),
        centre_order: order_of(&g.centre()?)?,
        abelian_invariants: abelianization_invariants(g)?,
    })
}

// ---------------------------------------------------------------------------
// Isomorphisms

/// An isomorphism given by generator images.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Isomorphism {
    pub domain_gens: Vec<Perm>,
    pub images: Vec<Perm>,
}

fn scope_check(g: &Group) -> Result<u64> {
    let n = order_of(g)?;
    if n > ISO_SCOPE {
        return Err(Error::Scope(format!("isomorphism test for order {n} exceeds {ISO_SCOPE}")));
    }
    Ok(n)
}

/// A short generating sequence, chosen by a seeded search. The last generator is taken
/// from as small a conjugacy class as the search finds.
fn small_generating_set(g: &Group, classes: &Classes) -> Vec<Perm> {
    let n = g.order();
    if g.is_trivial() {
        return Vec::new();
    }
    let class_size = |x: &Perm| classes.sizes[classes.class_of[g.element_index(x).unwrap() as usize] as usize];
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut best: Option<(u64, Vec<Perm>)> = None;
    for _ in 0..400 {
        let x = g.random_element(&mut rng);
        let y = g.random_element(&mut rng);
        if Group::from_parts(g.degree(), vec![x.clone(), y.clone()]).order() != n {
            continue;
        }
        let (x, y) = if class_size(&x) < class_size(&y) { (y, x) } else { (x, y) };
        let score = class_size(&y);
        if best.as_ref().is_none_or(|(s, _)| score < *s) {
            best = Some((score, vec![x, y]));
        }
        if best.as_ref().is_some_and(|(s, _)| *s == 1) {
            break;
        }
    }
    if let Some((_, gens)) = best {
        return gens;
    }
    let mut gens: Vec<Perm> = Vec::new();
    let mut span = Group::from_parts(g.degree(), Vec::new());
    while span.order() != n {
        let x = g.random_element(&mut rng);
        if !span.has(&x) {
            gens.push(x);
            span = Group::from_parts(g.degree(), gens.clone());
        }
    }
    gens
}

/// Words used to prune generator images: exponent sequences over pairs `(x, y)`.
pub(crate) const TEST_WORDS: &[&[(usize, i64)]] = &[
    &[(0, 1), (1, 1)],
    &[(0, 1), (1, -1)],
    &[(0, 2), (1, 1)],
    &[(0, 1), (1, 2)],
    &[(0, -1), (1, -1), (0, 1), (1, 1)],
    &[(0, 1), (1, 1), (0, 1), (1, -1)],
    &[(0, 2), (1, 2)],
    &[(0, 1), (1, 1), (1, 1), (0, -1), (1, 1)],
];

pub(crate) fn eval_word(pair: [&Perm; 2], word: &[(usize, i64)]) -> Perm {
    let mut acc = Perm::identity(pair[0].degree());
    for &(i, e) in word {
        acc = acc.compose(&pair[i].pow(e));
    }
    acc
}

fn word_orders(x: &Perm, y: &Perm) -> Vec<u64> {
    TEST_WORDS.iter().map(|w| eval_word([x, y], w).order()).collect()
}

fn word_orders_match(x: &Perm, y: &Perm, expected: &[u64]) -> bool {
    TEST_WORDS.iter().zip(expected).all(|(w, &o)| eval_word([x, y], w).order() == o)
}

/// Checks that the generator images extend to a bijective homomorphism.
fn extends_to_isomorphism(a: &Group, b: &Group, gens: &[Perm], images: &[Perm]) -> bool {
    let n = a.order_u64().expect("in scope") as usize;
    let mut image_of = vec![u64::MAX; n];
    let mut used = vec![false; n];
    let id_a = Perm::identity(a.degree());
    let id_b = Perm::identity(b.degree());
    let i0 = a.element_index(&id_a).unwrap() as usize;
    let j0 = b.element_index(&id_b).unwrap();
    image_of[i0] = j0;
    used[j0 as usize] = true;
    let mut queue = vec![(id_a, id_b)];
    while let Some((x, y)) = queue.pop() {
        for (g, h) in gens.iter().zip(images) {
            let (x2, y2) = (x.compose(g), y.compose(h));
            let i = a.element_index(&x2).unwrap() as usize;
            let Some(j) = b.element_index(&y2) else { return false };
            if image_of[i] == u64::MAX {
                if used[j as usize] {
                    return false;
                }
                image_of[i] = j;
                used[j as usize] = true;
                queue.push((x2, y2));
            } else if image_of[i] != j {
                return false;
            }
        }
    }
    true
}

struct IsoSearch<'a> {
    a: &'a Group,
    b: &'a Group,
    gens: Vec<Perm>,
    /// Candidate images for each generator.
    candidates: Vec<Vec<Perm>>,
    /// Test-word orders for each pair `(i, j)` with `j < i`.
    pair_orders: Vec<Vec<Vec<u64>>>,
    found: Vec<Vec<Perm>>,
    stop_at_first: bool,
}

impl IsoSearch<'_> {
    fn run(&mut self, assigned: &mut Vec<Perm>) {
        if self.stop_at_first && !self.found.is_empty() {
            return;
        }
        let i = assigned.len();
        if i == self.gens.len() {
            if extends_to_isomorphism(self.a, self.b, &self.gens, assigned) {
                self.found.push(assigned.clone());
            }
            return;
        }
        for k in 0..self.candidates[i].len() {
            let c = &self.candidates[i][k];
            if (0..i).all(|j| word_orders_match(&assigned[j], c, &self.pair_orders[i][j])) {
                assigned.push(c.clone());
                self.run(assigned);
                assigned.pop();
            }
        }
    }
}

fn search_isomorphisms(a: &Group, b: &Group, stop_at_first: bool) -> Result<Vec<Isomorphism>> {
    scope_check(a)?;
    scope_check(b)?;
    if a.order() != b.order() {
        return Ok(Vec::new());
    }
    if a.is_trivial() {
        return Ok(vec![Isomorphism { domain_gens: Vec::new(), images: Vec::new() }]);
    }
    if fingerprint(a)? != fingerprint(b)? {
        return Ok(Vec::new());
    }
    let ca = conjugacy_classes(a, ISO_SCOPE)?;
    let cb = conjugacy_classes(b, ISO_SCOPE)?;
    let gens = small_generating_set(a, &ca);
    let class_of_a = |x: &Perm| ca.class_of[a.element_index(x).unwrap() as usize] as usize;
    let mut candidates = Vec::new();
    for (i, x) in gens.iter().enumerate() {
        let ka = class_of_a(x);
        let (size, ord) = (ca.sizes[ka], ca.orders[ka]);
        let matching: Vec<usize> =
            (0..cb.reps.len()).filter(|&k| cb.sizes[k] == size && cb.orders[k] == ord).collect();
        if i == 0 {
            candidates.push(matching.iter().map(|&k| cb.reps[k].clone()).collect::<Vec<_>>());
        } else {
            let mut list = Vec::new();
            for (j, &k) in cb.class_of.iter().enumerate() {
                if matching.contains(&(k as usize)) {
                    list.push(b.element_at(j as u64));
                }
            }
            candidates.push(list);
        }
    }
    let pair_orders = (0..gens.len()).map(|i| (0..i).map(|j| word_orders(&gens[j], &gens[i])).collect()).collect();
    let mut search = IsoSearch { a, b, gens: gens.clone(), candidates, pair_orders, found: Vec::new(), stop_at_first };
    search.run(&mut Vec::new());
    Ok(search.found.into_iter().map(|images| Isomorphism { domain_gens: gens.clone(), images }).collect())
}

/// An isomorphism from `a` to `b`, or `None` after an exhaustive search.
pub fn are_isomorphic(a: &Group, b: &Group) -> Result<Option<Isomorphism>> {
    Ok(search_isomorphisms(a, b, true)?.into_iter().next())
}

/// All isomorphisms from `a` to `b` up to composition with inner automorphisms of `b`.
pub fn isomorphisms_mod_inner(a: &Group, b: &Group) -> Result<Vec<Isomorphism>> {
    let all = search_isomorphisms(a, b, false)?;
    let mut out: Vec<Isomorphism> = Vec::new();
    let mut seen: Vec<(Perm, Vec<u64>)> = Vec::new();
    for iso in all {
        let b1 = iso.images[0].clone();
        let cent = b.centraliser_of(&b1, ISO_SCOPE)?.elements_bounded(ISO_SCOPE)?;
        let key = cent
            .iter()
            .map(|c| iso.images[1..].iter().map(|y| b.element_index(&y.conjugate_by(c)).unwrap()).collect::<Vec<_>>())
            .min()
            .unwrap_or_default();
        if !seen.iter().any(|(r, k)| *r == b1 && *k == key) {
            seen.push((b1, key));
            out.push(iso);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cyc(n: usize, cycles: &[&[u32]]) -> Perm {
        Perm::from_cycles(n, cycles).unwrap()
    }

    fn sym(n: usize) -> Group {
        let long: Vec<u32> = (0..n as u32).collect();
        Group::new(n, vec![cyc(n, &[&long]), cyc(n, &[&[0, 1]])]).unwrap()
    }

    fn alt(n: usize) -> Group {
        let gens = (2..n as u32).map(|k| cyc(n, &[&[0, 1, k]])).collect();
        Group::new(n, gens).unwrap()
    }

    #[test]
    fn solubility() {
        assert!(is_soluble(&sym(4)));
        assert!(!is_soluble(&alt(5)));
    }

    #[test]
    fn composition_factors_of_small_groups() {
        let f: Vec<String> = composition_factors(&sym(4), 0).unwrap().iter().map(|l| l.to_string()).collect();
        assert_eq!(f, vec!["C2", "C2", "C2", "C3"]);
        let f = composition_factors(&alt(5), 0).unwrap();
        assert_eq!(f, vec![FactorLabel { kind: FactorKind::Alternating(5), order: 60 }]);
        let f: Vec<String> = composition_factors(&sym(6), 0).unwrap().iter().map(|l| l.to_string()).collect();
        assert_eq!(f, vec!["C2", "A6"]);
    }

    #[test]
    fn a8_is_not_psl34() {
        let l = simple_id(&alt(8)).unwrap();
        assert_eq!(l.kind, FactorKind::Alternating(8));
        let l = simple_label_for_order(20_160, || false).unwrap();
        assert_eq!(l.kind, FactorKind::NamedSimple("PSL(3,4)".into()));
        assert_eq!(simple_label_for_order(660, || false).unwrap().to_string(), "PSL(2,11)");
        assert_eq!(simple_label_for_order(60, || false).unwrap().to_string(), "A5");
        assert_eq!(simple_label_for_order(168, || false).unwrap().to_string(), "PSL(2,7)");
    }

    #[test]
    fn simple_order_table_has_one_clash() {
        let clashes: Vec<u64> = simple_table().iter().filter(|(_, v)| v.len() > 1).map(|(o, _)| *o).collect();
        assert_eq!(clashes, vec![20_160]);
    }

    #[test]
    fn simple_id_rejects_composite_groups() {
        assert!(simple_id(&sym(5)).is_err());
    }

    #[test]
    fn socle_of_s4_is_klein() {
        let s = socle(&sym(4), 0).unwrap();
        assert_eq!(s.order_u64(), Some(4));
        assert!(s.is_normal_in(&sym(4)));
        assert_eq!(socle(&alt(5), 0).unwrap().order_u64(), Some(60));
    }

    #[test]
    fn abelian_invariants() {
        let g = Group::new(6, vec![cyc(6, &[&[0, 1]]), cyc(6, &[&[2, 3, 4, 5]])]).unwrap();
        assert_eq!(abelian_group_invariants(&g).unwrap(), vec![2, 4]);
        let g = Group::new(5, vec![cyc(5, &[&[0, 1]]), cyc(5, &[&[2, 3, 4]])]).unwrap();
        assert_eq!(abelian_group_invariants(&g).unwrap(), vec![6]);
        assert_eq!(abelianization_invariants(&sym(4)).unwrap(), vec![2]);
    }

    #[test]
    fn isomorphism_tests() {
        let c4 = Group::new(4, vec![cyc(4, &[&[0, 1, 2, 3]])]).unwrap();
        let v4 = Group::new(4, vec![cyc(4, &[&[0, 1], &[2, 3]]), cyc(4, &[&[0, 2], &[1, 3]])]).unwrap();
        assert!(are_isomorphic(&c4, &v4).unwrap().is_none());
        // S_3 on 3 points and on 6 points (regular).
        let s3 = sym(3);
        let s3_reg = Group::new(6, vec![cyc(6, &[&[0, 1, 2], &[3, 4, 5]]), cyc(6, &[&[0, 3], &[1, 5], &[2, 4]])]).unwrap();
        assert!(are_isomorphic(&s3, &s3_reg).unwrap().is_some());
    }

    #[test]
    fn automorphism_classes() {
        // Out(S_4) = 1, Out(A_4) = 2, Out(C_2 x C_2) = S_3 (inner trivial).
        assert_eq!(isomorphisms_mod_inner(&sym(4), &sym(4)).unwrap().len(), 1);
        assert_eq!(isomorphisms_mod_inner(&alt(4), &alt(4)).unwrap().len(), 2);
        let v4 = Group::new(4, vec![cyc(4, &[&[0, 1], &[2, 3]]), cyc(4, &[&[0, 2], &[1, 3]])]).unwrap();
        assert_eq!(isomorphisms_mod_inner(&v4, &v4).unwrap().len(), 6);
        assert_eq!(isomorphisms_mod_inner(&sym(6), &sym(6)).unwrap().len(), 2);
    }
}
