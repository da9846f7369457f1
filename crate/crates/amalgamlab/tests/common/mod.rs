#![allow(dead_code)]

use amalgamlab::catalog::{build_alt, build_sym, load_catalog};
use amalgamlab::golden;
use amalgamlab::graphs::*;
use amalgamlab::{Group, Perm};
use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::One;

/// Checks a claimed set of primitive prime divisors of `q^n - 1` without factoring.
///
/// Every prime of order below `n` divides some `q^d - 1` with `d | n`, `d < n`;
/// stripping those by repeated gcds leaves a cofactor whose primes are exactly the
/// primitive ones. The claim must divide out that cofactor completely, and each
/// claimed prime must have order exactly `n` (`q^n = 1`, `q^(n/r) != 1` for primes `r | n`).
pub fn ppd_oracle_agrees(q: u64, n: u64, claimed: &[u128]) -> bool {
    let qb = BigUint::from(q);
    let mut m = qb.pow(n as u32) - 1u32;
    for d in (1..n).filter(|d| n.is_multiple_of(*d)) {
        let qd = qb.pow(d as u32) - 1u32;
        loop {
            let g = m.gcd(&qd);
            if g.is_one() {
                break;
            }
            m /= g;
        }
    }
    let prime_divisors_of_n: Vec<u64> = (2..=n).filter(|&r| n.is_multiple_of(r) && (2..r).all(|s| r % s != 0)).collect();
    for &p in claimed {
        let pb = BigUint::from(p);
        if qb.modpow(&BigUint::from(n), &pb) != BigUint::one() {
            return false;
        }
        if prime_divisors_of_n.iter().any(|&r| qb.modpow(&BigUint::from(n / r), &pb).is_one()) {
            return false;
        }
        if !(&m % &pb == BigUint::ZERO) {
            return false;
        }
        while &m % &pb == BigUint::ZERO {
            m /= &pb;
        }
    }
    m.is_one()
}

pub fn perm(degree: usize, cycles: &[&[u32]]) -> Perm {
    Perm::from_cycles(degree, cycles).unwrap()
}

pub fn s4_pieces() -> (Group, Group, Group) {
    let g = build_sym(4).unwrap();
    let a = g.point_stabiliser(3);
    let b = g.subgroup(vec![perm(4, &[&[0, 1, 2, 3]]), perm(4, &[&[0, 2]])]).unwrap();
    (g, a, b)
}

/// `S_3 x S_3` on `3 + 3` points: `K_{3,3}` where each vertex kernel is `S_2`.
pub fn product_k33() -> SymGraph {
    let s3 = build_sym(3).unwrap();
    let id = Perm::identity(3);
    let gens = s3.generators().iter().flat_map(|x| [x.direct_sum(&id), id.direct_sum(x)]).collect();
    let g = Group::new(6, gens).unwrap();
    coset_graph(&g, &g.point_stabiliser(3), &g.point_stabiliser(0)).unwrap()
}

pub fn instances() -> Vec<(String, SymGraph)> {
    let cat = load_catalog().unwrap();
    let mut out = Vec::new();
    for row in golden::examples().rows {
        if let Ok(ex) = complete_bipartite_example(&row, cat) {
            out.push((row.group.clone(), ex.graph));
        }
    }
    out.push(("Cay S3 p=5".into(), cayley_2at(&build_sym(3).unwrap(), 5).unwrap()));
    out.push(("C6".into(), cycle_graph(6).unwrap()));
    out.push(("K8 A8".into(), complete_graph(build_alt(8).unwrap()).unwrap()));
    out.push(("K33 S3xS3".into(), product_k33()));
    let (g, a, b) = s4_pieces();
    out.push(("S4 cosets".into(), coset_graph(&g, &a, &b).unwrap()));
    out
}

