//! Permutation constructions for the constructed tier of the catalog.
//!
//! Vectors of `GF(q)^d` are numbered `sum v_i q^i`, least significant coordinate
//! first, and matrices act on row vectors.

use std::collections::HashMap;

use num_bigint::BigUint;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::arith::is_prime;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::group::{Group, DEFAULT_ELEMENT_BOUND};
use crate::perm::Perm;

/// Largest affine degree built as a permutation group.
pub const MAX_AFFINE_DEGREE: u64 = 3000;
const SEARCH_ATTEMPTS: usize = 20_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum LinearKind {
    Sl,
    Gl,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum LineVariant {
    Psl,
    Pgl,
    Psigmal,
    Pgammal,
    M10,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FormSign {
    Plus,
    Minus,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Exceptional {
    #[serde(rename = "psl2-11-degree-11")]
    Psl2_11Degree11,
    #[serde(rename = "a7-degree-15")]
    A7Degree15,
    #[serde(rename = "pgammal2-8-degree-28")]
    PGammaL2_8Degree28,
}

/// Matrix data file: `{ "p": prime, "dim": d, "matrices": [[row-major entries], ...] }`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MatrixFile {
    pub p: u32,
    pub dim: usize,
    pub matrices: Vec<Vec<u32>>,
    #[serde(default)]
    pub order: Option<u64>,
    #[serde(default)]
    pub note: Option<String>,
}

const A7_MATRICES: &str = include_str!("../../data/matrices/a7_p2.json");

pub fn build_sym(n: usize) -> Result<Group> {
    check_small_degree(n)?;
    let mut gens = Vec::new();
    if n > 1 {
        gens.push(cycle_on(n, &(0..n as u32).collect::<Vec<_>>()));
        gens.push(cycle_on(n, &[0, 1]));
    }
    Ok(Group::from_parts(n, gens))
}

pub fn build_alt(n: usize) -> Result<Group> {
    check_small_degree(n)?;
    let mut gens = Vec::new();
    if n >= 3 {
        gens.push(cycle_on(n, &[0, 1, 2]));
        let long: Vec<u32> = if n % 2 == 1 { (0..n as u32).collect() } else { (1..n as u32).collect() };
        if n > 3 {
            gens.push(cycle_on(n, &long));
        }
    }
    Ok(Group::from_parts(n, gens))
}

fn check_small_degree(n: usize) -> Result<()> {
    if !(2..=64).contains(&n) {
        return Err(Error::Input(format!("degree {n} outside 2..=64")));
    }
    Ok(())
}

fn cycle_on(n: usize, cycle: &[u32]) -> Perm {
    let mut images: Vec<u32> = (0..n as u32).collect();
    for (i, &x) in cycle.iter().enumerate() {
        images[x as usize] = cycle[(i + 1) % cycle.len()];
    }
    Perm::from_images_unchecked(images)
}

fn vector_count(q: u32, d: usize) -> Result<usize> {
    (q as u64)
        .checked_pow(d as u32)
        .filter(|&n| n <= MAX_AFFINE_DEGREE)
        .map(|n| n as usize)
        .ok_or_else(|| Error::Scope(format!("{q}^{d} exceeds {MAX_AFFINE_DEGREE} points")))
}

fn decode(mut index: usize, q: u32, d: usize) -> Vec<u32> {
    (0..d)
        .map(|_| {
            let c = (index % q as usize) as u32;
            index /= q as usize;
            c
        })
        .collect()
}

fn encode(v: &[u32], q: u32) -> usize {
    v.iter().rev().fold(0, |acc, &c| acc * q as usize + c as usize)
}

/// `v M` for a row vector `v` and a flat row-major `d x d` matrix.
fn times(f: &Field, v: &[u32], m: &[u32]) -> Vec<u32> {
    let d = v.len();
    (0..d)
        .map(|j| (0..d).fold(0, |acc, i| f.add(acc, f.mul(v[i], m[i * d + j]))))
        .collect()
}

fn is_invertible(f: &Field, m: &[u32], d: usize) -> bool {
    let mut a = m.to_vec();
    for col in 0..d {
        let Some(piv) = (col..d).find(|&r| a[r * d + col] != 0) else {
            return false;
        };
        for j in 0..d {
            a.swap(col * d + j, piv * d + j);
        }
        let inv = f.inv(a[col * d + col]);
        for r in col + 1..d {
            let factor = f.mul(a[r * d + col], inv);
            if factor == 0 {
                continue;
            }
            for j in col..d {
                let t = f.mul(factor, a[col * d + j]);
                a[r * d + j] = f.sub(a[r * d + j], t);
            }
        }
    }
    true
}

fn check_matrices(f: &Field, d: usize, matrices: &[Vec<u32>]) -> Result<()> {
    for m in matrices {
        if m.len() != d * d || m.iter().any(|&x| x >= f.order()) {
            return Err(Error::Input(format!("matrix {m:?} is not a {d}x{d} matrix over GF({})", f.order())));
        }
        if !is_invertible(f, m, d) {
            return Err(Error::Input(format!("matrix {m:?} is singular")));
        }
    }
    Ok(())
}

/// The linear maps `v -> vM` as permutations of all `q^d` vectors.
pub fn linear_action(f: &Field, d: usize, matrices: &[Vec<u32>]) -> Result<Vec<Perm>> {
    let n = vector_count(f.order(), d)?;
    check_matrices(f, d, matrices)?;
    Ok(matrices
        .iter()
        .map(|m| {
            let images = (0..n).map(|i| encode(&times(f, &decode(i, f.order(), d), m), f.order()) as u32).collect();
            Perm::from_images_unchecked(images)
        })
        .collect())
}

/// Linear group on the `q^d - 1` nonzero vectors, numbered from `0` for vector `1`.
pub fn nonzero_vector_action(f: &Field, d: usize, matrices: &[Vec<u32>]) -> Result<Group> {
    let full = linear_action(f, d, matrices)?;
    let n = full.first().map_or(vector_count(f.order(), d)?, Perm::degree);
    let gens = full
        .iter()
        .map(|g| Perm::from_images_unchecked(g.images()[1..].iter().map(|&x| x - 1).collect()))
        .collect();
    Ok(Group::from_parts(n - 1, gens))
}

/// `GF(p)^d : <linear part>` on `p^d` points.
pub fn build_affine(p: u32, d: usize, matrices: &[Vec<u32>]) -> Result<Group> {
    if !is_prime(p as u64) {
        return Err(Error::Input(format!("{p} is not prime")));
    }
    if d == 0 {
        return Err(Error::Input("dimension must be positive".into()));
    }
    let f = Field::new(p)?;
    let n = vector_count(p, d)?;
    let mut gens: Vec<Perm> = (0..d)
        .map(|i| {
            let images = (0..n)
                .map(|x| {
                    let mut v = decode(x, p, d);
                    v[i] = (v[i] + 1) % p;
                    encode(&v, p) as u32
                })
                .collect();
            Perm::from_images_unchecked(images)
        })
        .collect();
    gens.extend(linear_action(&f, d, matrices)?);
    Ok(Group::from_parts(n, gens))
}

/// Generators of `SL_d(p)` (elementary transvections), plus a diagonal matrix for `GL_d(p)`.
pub fn linear_generators(f: &Field, d: usize, kind: LinearKind) -> Vec<Vec<u32>> {
    let ident = |m: &mut Vec<u32>| (0..d).for_each(|i| m[i * d + i] = 1);
    let mut out = Vec::new();
    for i in 0..d {
        for j in 0..d {
            if i == j {
                continue;
            }
            for k in 0..f.degree() as u64 {
                let mut m = vec![0; d * d];
                ident(&mut m);
                m[i * d + j] = f.exp(k);
                out.push(m);
            }
        }
    }
    if kind == LinearKind::Gl && f.order() > 2 {
        let mut m = vec![0; d * d];
        ident(&mut m);
        m[0] = f.primitive();
        out.push(m);
    }
    out
}

/// Affine `ASL_d(p)` or `AGL_d(p)`.
pub fn build_affine_linear(p: u32, d: usize, kind: LinearKind) -> Result<Group> {
    let f = Field::new(p)?;
    let g = build_affine(p, d, &linear_generators(&f, d, kind))?;
    Ok(compact(g, 0))
}

/// Subgroups of `AΓL_1(q)`: translations plus `x -> w^a x^(p^s)` for each `(a, s)`.
pub fn build_semilinear(q: u32, generators: &[(u32, u32)]) -> Result<Group> {
    let f = Field::new(q)?;
    let n = vector_count(q, 1)?;
    let p = f.characteristic();
    let mut gens = Vec::new();
    let mut basis = 1u32;
    for _ in 0..f.degree() {
        gens.push(Perm::from_images_unchecked((0..q).map(|x| f.add(x, basis)).collect()));
        basis *= p;
    }
    for &(a, s) in generators {
        let scale = f.exp(a as u64);
        let power = (p as u64).pow(s % f.degree());
        gens.push(Perm::from_images_unchecked((0..q).map(|x| f.mul(scale, f.pow(x, power))).collect()));
    }
    Ok(Group::from_parts(n, gens))
}

/// A subgroup of `PΓL_2(q)` on the projective line; point `q` is infinity.
pub fn build_projective_line(q: u32, variant: LineVariant) -> Result<Group> {
    if q > 128 {
        return Err(Error::Scope(format!("projective line over GF({q}) is too large")));
    }
    let field = Field::new(q)?;
    let f = &field;
    let p = f.characteristic() as u64;
    let inf = q;
    let w = f.primitive();
    let mobius = |map: &dyn Fn(u32) -> u32| {
        Perm::from_images_unchecked((0..=q).map(map).collect())
    };
    let shift = mobius(&|x| if x == inf { inf } else { f.add(x, 1) });
    let scale_by = |a: u32| mobius(&move |x| if x == inf { inf } else { f.mul(a, x) });
    let invert = mobius(&|x| {
        if x == inf {
            0
        } else if x == 0 {
            inf
        } else {
            f.neg(f.inv(x))
        }
    });
    let twist = |a: u32| mobius(&move |x| if x == inf { inf } else { f.mul(a, f.pow(x, p)) });
    let mut gens = vec![shift, invert];
    gens.push(match variant {
        LineVariant::Psl | LineVariant::Psigmal | LineVariant::M10 => scale_by(f.mul(w, w)),
        LineVariant::Pgl | LineVariant::Pgammal => scale_by(w),
    });
    match variant {
        LineVariant::Psigmal | LineVariant::Pgammal => gens.push(twist(1)),
        LineVariant::M10 => {
            if q != 9 {
                return Err(Error::Input("M10 only exists over GF(9)".into()));
            }
            gens.push(twist(w));
        }
        _ => {}
    }
    Ok(Group::from_parts(q as usize + 1, gens))
}

pub fn build_psl2(q: u32) -> Result<Group> {
    build_projective_line(q, LineVariant::Psl)
}

/// `PSL_n(q)` on the points of the projective space.
pub fn build_projective_space(n: usize, q: u32) -> Result<Group> {
    let f = Field::new(q)?;
    let total = vector_count(q, n)?;
    let normalise = |v: &mut [u32]| {
        if let Some(&c) = v.iter().find(|&&c| c != 0) {
            let inv = f.inv(c);
            v.iter_mut().for_each(|x| *x = f.mul(*x, inv));
        }
    };
    let mut index = vec![u32::MAX; total];
    let mut points = Vec::new();
    for (i, slot) in index.iter_mut().enumerate().skip(1) {
        let mut v = decode(i, q, n);
        normalise(&mut v);
        if encode(&v, q) == i {
            *slot = points.len() as u32;
            points.push(v);
        }
    }
    let gens = linear_generators(&f, n, LinearKind::Sl)
        .iter()
        .map(|m| {
            let images = points
                .iter()
                .map(|v| {
                    let mut w = times(&f, v, m);
                    normalise(&mut w);
                    index[encode(&w, q)]
                })
                .collect();
            Perm::from_images_unchecked(images)
        })
        .collect();
    Ok(compact(Group::from_parts(points.len(), gens), 0))
}

fn symplectic(x: u32, y: u32) -> u32 {
    (0..3).fold(0, |acc, i| acc ^ ((x >> (2 * i)) & (y >> (2 * i + 1)) & 1) ^ ((x >> (2 * i + 1)) & (y >> (2 * i)) & 1))
}

/// `Sp_6(2)` on the 36 (plus) or 28 (minus) quadratic forms polarising to the
/// standard symplectic form.
pub fn build_sp6_2(sign: FormSign) -> Result<Group> {
    let base = |x: u32| (0..3).fold(0, |acc, i| acc ^ ((x >> (2 * i)) & (x >> (2 * i + 1)) & 1));
    let mut forms = Vec::new();
    for c in 0..64u32 {
        let mask = (0..64u32).fold(0u64, |m, x| m | (((base(x) ^ (c & x).count_ones()) & 1) as u64) << x);
        let zeros = 64 - mask.count_ones();
        let keep = match sign {
            FormSign::Plus => zeros == 36,
            FormSign::Minus => zeros == 28,
        };
        if keep {
            forms.push(mask);
        } else if zeros != 36 && zeros != 28 {
            return Err(Error::Verification(format!("quadratic form with {zeros} zeros")));
        }
    }
    let expected = if sign == FormSign::Plus { 36 } else { 28 };
    if forms.len() != expected {
        return Err(Error::Verification(format!("found {} forms of the requested type", forms.len())));
    }
    let index: HashMap<u64, u32> = forms.iter().enumerate().map(|(i, &m)| (m, i as u32)).collect();
    let mut gens = Vec::new();
    for v in 1..64u32 {
        let t = |x: u32| if symplectic(x, v) == 1 { x ^ v } else { x };
        let images = forms
            .iter()
            .map(|&mask| {
                let moved = (0..64u32).fold(0u64, |m, x| m | ((mask >> t(x)) & 1) << x);
                index.get(&moved).copied()
            })
            .collect::<Option<Vec<u32>>>()
            .ok_or_else(|| Error::Verification("transvection does not preserve the form type".into()))?;
        gens.push(Perm::from_images_unchecked(images));
    }
    Ok(compact(Group::from_parts(expected, gens), 0))
}

/// The three actions not coming from a natural geometry.
pub fn exceptional_action(kind: Exceptional, seed: u64) -> Result<Group> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    match kind {
        Exceptional::Psl2_11Degree11 => {
            let g = build_psl2(11)?;
            for _ in 0..SEARCH_ATTEMPTS {
                let (Some(x), Some(y)) = (element_of_order(&g, 2, &mut rng), element_of_order(&g, 5, &mut rng)) else {
                    continue;
                };
                let h = Group::from_parts(g.degree(), vec![x, y]);
                if h.order() == BigUint::from(60u32) {
                    return Ok(g.coset_action(&h)?.image());
                }
            }
            Err(Error::SearchFailed("no A5 found in PSL(2,11)".into()))
        }
        Exceptional::A7Degree15 => {
            let data: MatrixFile = serde_json::from_str(A7_MATRICES)?;
            nonzero_vector_action(&Field::new(data.p)?, data.dim, &data.matrices)
        }
        Exceptional::PGammaL2_8Degree28 => {
            let g = build_projective_line(8, LineVariant::Pgammal)?;
            for _ in 0..SEARCH_ATTEMPTS {
                let Some(x) = element_of_order(&g, 9, &mut rng) else { continue };
                let cyclic = Group::from_parts(g.degree(), vec![x.clone()]);
                let n = g.filter_subgroup(DEFAULT_ELEMENT_BOUND, |y| cyclic.has(&x.conjugate_by(y)))?;
                // Order-9 elements outside PSL(2,8) have a smaller normaliser.
                if n.order() == BigUint::from(54u32) {
                    return Ok(g.coset_action(&n)?.image());
                }
            }
            Err(Error::SearchFailed("no element of order 9 in PΓL(2,8)".into()))
        }
    }
}

fn element_of_order(g: &Group, n: u64, rng: &mut ChaCha8Rng) -> Option<Perm> {
    let x = g.random_element(rng);
    let o = x.order();
    o.is_multiple_of(n).then(|| x.pow((o / n) as i64))
}

/// Replaces a long generating list by two random elements generating the same group.
pub(crate) fn compact(g: Group, seed: u64) -> Group {
    if g.generators().len() <= 3 {
        return g;
    }
    let order = g.order();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..64 {
        let gens = vec![g.random_element(&mut rng), g.random_element(&mut rng)];
        let h = Group::from_parts(g.degree(), gens).with_order_hint(order.clone());
        if h.order() == order {
            return h;
        }
    }
    g
}

#[cfg(test)]
mod tests {
    use super::*;

    fn order(g: &Group) -> u64 {
        g.order_u64().unwrap()
    }

    #[test]
    fn symmetric_and_alternating() {
        assert_eq!(order(&build_sym(3).unwrap()), 6);
        assert_eq!(order(&build_sym(2).unwrap()), 2);
        let a6 = build_alt(6).unwrap();
        assert_eq!(order(&a6), 360);
        assert!(a6.is_k_transitive(2).unwrap());
        let a9 = build_alt(9).unwrap();
        assert_eq!(order(&a9), 181440);
        assert_eq!(order(&a9.point_stabiliser(0)), 20160);
        assert!(build_sym(65).is_err());
    }

    #[test]
    fn affine_examples() {
        let c2 = build_affine(2, 1, &[]).unwrap();
        assert_eq!((c2.degree(), order(&c2)), (2, 2));
        let asl = build_affine_linear(3, 2, LinearKind::Sl).unwrap();
        assert_eq!(order(&asl), 216);
        assert!(asl.is_k_transitive(2).unwrap());
        assert!(build_affine(3, 2, &[vec![1, 1, 1, 1]]).is_err());
        assert!(build_affine(4, 1, &[]).is_err());
    }

    #[test]
    fn projective_lines() {
        let g = build_psl2(4).unwrap();
        assert_eq!((g.degree(), order(&g)), (5, 60));
        let g = build_psl2(11).unwrap();
        assert_eq!((g.degree(), order(&g)), (12, 660));
        assert!(g.is_k_transitive(2).unwrap());
        for (v, o) in [
            (LineVariant::Pgl, 720),
            (LineVariant::Psigmal, 720),
            (LineVariant::M10, 720),
            (LineVariant::Pgammal, 1440),
        ] {
            assert_eq!(order(&build_projective_line(9, v).unwrap()), o);
        }
        assert_eq!(order(&build_projective_line(8, LineVariant::Pgammal).unwrap()), 1512);
    }

    #[test]
    fn projective_spaces() {
        for (n, q, k, o) in [(3, 2, 7, 168), (3, 3, 13, 5616), (3, 4, 21, 20160), (4, 2, 15, 20160)] {
            let g = build_projective_space(n, q).unwrap();
            assert_eq!((g.degree(), order(&g)), (k, o));
            assert!(g.is_k_transitive(2).unwrap());
        }
    }

    #[test]
    fn symplectic_forms() {
        let plus = build_sp6_2(FormSign::Plus).unwrap();
        assert_eq!((plus.degree(), order(&plus)), (36, 1451520));
        assert_eq!(order(&plus.point_stabiliser(0)), 40320);
        let minus = build_sp6_2(FormSign::Minus).unwrap();
        assert_eq!((minus.degree(), order(&minus)), (28, 1451520));
        assert!(minus.is_k_transitive(2).unwrap());
    }

    #[test]
    fn exceptional_actions() {
        let g = exceptional_action(Exceptional::Psl2_11Degree11, 0).unwrap();
        assert_eq!((g.degree(), order(&g)), (11, 660));
        assert!(g.is_k_transitive(2).unwrap());
        assert_eq!(order(&g.point_stabiliser(0)), 60);
        let g = exceptional_action(Exceptional::A7Degree15, 0).unwrap();
        assert_eq!((g.degree(), order(&g)), (15, 2520));
        assert_eq!(order(&g.point_stabiliser(0)), 168);
        let g = exceptional_action(Exceptional::PGammaL2_8Degree28, 0).unwrap();
        assert_eq!((g.degree(), order(&g)), (28, 1512));
        assert!(g.is_k_transitive(2).unwrap());
    }

    #[test]
    fn semilinear_groups() {
        let g = build_semilinear(8, &[(1, 0), (0, 1)]).unwrap();
        assert_eq!(order(&g), 168);
        assert_eq!(order(&g.point_stabiliser(0)), 21);
        let q8 = build_semilinear(9, &[(2, 0), (1, 1)]).unwrap();
        assert_eq!(order(&q8), 72);
        assert!(q8.is_k_transitive(2).unwrap());
    }
}
