//! Reference groups with conventional names, and naming of computed groups by
//! isomorphism against them.
//!
//! Labels follow a small grammar: `1`, `Cn`, `C2^2`, `Dn` (dihedral of order `n`),
//! `An`, `Sn`, `Q8`, `SL(2,p)`, `GL(2,p)`, `PSL(2,q)`, `n:m` (the subgroup of the
//! affine group of `Z_n` with multipliers of order `m`), direct products `AxB`,
//! and a handful of fixed names such as `(S4xS4):2` or `2^3:PSL(2,7)`.

use std::sync::OnceLock;

use crate::catalog::{
    build_affine, build_affine_linear, build_alt, build_psl2, build_semilinear, build_sym, linear_generators,
    nonzero_vector_action, LinearKind, MatrixFile,
};
use crate::error::Result;
use crate::field::Field;
use crate::group::Group;
use crate::perm::Perm;
use crate::structure::{are_isomorphic, fingerprint, Fingerprint, ISO_SCOPE};

const SL2_4: &str = include_str!("../data/matrices/sl2_4_p2.json");

/// Names tried, in order, when labelling a computed group.
const CANDIDATES: &[&str] = &[
    "1", "C2", "C3", "C2^2", "C4", "C5", "S3", "C6", "C7", "C8", "D8", "Q8", "Q16", "2.S4-", "D10", "C10", "A4", "C12", "C13",
    "D18", "7:3", "5:4", "SL(2,3)", "S4", "2xS4", "GL(2,3)", "A5", "S4xS3", "S5", "SL(2,5)", "PSL(2,7)", "A6",
    "S6", "SL(2,7)", "2^3:PSL(2,7)", "(S4xS4):2", "SL(2,11)", "SL(2,13)", "A7", "S7", "A8", "S8", "2^4:A5",
];

const ALIASES: &[(&str, &str)] = &[
    ("D6", "S3"),
    ("D4", "C2^2"),
    ("Z2^2", "C2^2"),
    ("A3", "C3"),
    ("S2", "C2"),
    ("5:2", "D10"),
    ("9:2", "D18"),
    ("GL(3,2)", "PSL(2,7)"),
    ("PSL(3,2)", "PSL(2,7)"),
    ("SL(3,2)", "PSL(2,7)"),
    ("2^3:GL(3,2)", "2^3:PSL(2,7)"),
    ("AGL(3,2)", "2^3:PSL(2,7)"),
    ("PSL(2,4)", "A5"),
    ("SL(2,4)", "A5"),
    ("PSL(2,5)", "A5"),
    ("PSL(2,9)", "A6"),
    ("Sp(4,2)", "S6"),
    ("PSL(4,2)", "A8"),
    ("SL(4,2)", "A8"),
    ("PGL(2,3)", "S4"),
    ("PSL(2,3)", "A4"),
    ("SL(2,2)", "S3"),
    ("(S4xS4).2", "(S4xS4):2"),
    ("S4wrS2", "(S4xS4):2"),
];

/// Rewrites a label into its canonical spelling.
pub fn canonical_label(label: &str) -> String {
    let s: String = label.chars().filter(|c| !c.is_whitespace()).collect();
    let s = s.replace('×', "x").replace("Z_", "C").replace('_', "");
    let s = if let Some(rest) = s.strip_prefix('Z').filter(|r| r.chars().all(|c| c.is_ascii_digit() || c == '^')) {
        format!("C{rest}")
    } else {
        s
    };
    let s = classical_form(&s).unwrap_or(s);
    ALIASES.iter().find(|(a, _)| *a == s).map_or(s, |(_, b)| b.to_string())
}

/// `GL3(2)` becomes `GL(3,2)`.
fn classical_form(s: &str) -> Option<String> {
    let open = s.find('(')?;
    let (head, tail) = s.split_at(open);
    let q = tail.strip_prefix('(')?.strip_suffix(')')?;
    let split = head.find(|c: char| c.is_ascii_digit())?;
    let (name, n) = head.split_at(split);
    let known = ["GL", "SL", "PGL", "PSL", "Sp", "PSp", "PSU", "SU", "PGammaL", "PSigmaL"];
    (known.contains(&name) && n.chars().all(|c| c.is_ascii_digit()) && q.parse::<u32>().is_ok())
        .then(|| format!("{name}({n},{q})"))
}

pub fn labels_match(a: &str, b: &str) -> bool {
    canonical_label(a) == canonical_label(b)
}

/// A permutation group with the given name, if the grammar knows it.
pub fn reference_group(label: &str) -> Option<Group> {
    let label = canonical_label(label);
    build(&label)
}

fn build(label: &str) -> Option<Group> {
    match label {
        "1" => return Some(Group::trivial(1)),
        "C2^2" => return product(&cyclic(2), &cyclic(2)),
        "2.S4-" => return binary_octahedral(),
        "(S4xS4):2" => {
            let s4 = build_sym(4).ok()?;
            let mut gens: Vec<Perm> = s4.generators().iter().map(|g| g.direct_sum(&Perm::identity(4))).collect();
            gens.push(Perm::from_images((0..8).map(|i| (i + 4) % 8).collect()).ok()?);
            return Group::new(8, gens).ok();
        }
        "3^2:D8" => {
            let s3 = build_sym(3).ok()?;
            let mut gens: Vec<Perm> = s3.generators().iter().map(|g| g.direct_sum(&Perm::identity(3))).collect();
            gens.push(Perm::from_images((0..6).map(|i| (i + 3) % 6).collect()).ok()?);
            return Group::new(6, gens).ok();
        }
        "2^3:PSL(2,7)" => return build_affine_linear(2, 3, LinearKind::Sl).ok(),
        "3^2:GL(2,3)" => return build_affine_linear(3, 2, LinearKind::Gl).ok(),
        "3^2:SL(2,3)" => return build_affine_linear(3, 2, LinearKind::Sl).ok(),
        "2^3:7" => return build_semilinear(8, &[(1, 0)]).ok(),
        "2^3:7:3" => return build_semilinear(8, &[(1, 0), (0, 1)]).ok(),
        "3^2:4" => return build_semilinear(9, &[(2, 0)]).ok(),
        "3^2:8" => return build_semilinear(9, &[(1, 0)]).ok(),
        "3^2:Q8" => return build_semilinear(9, &[(2, 0), (1, 1)]).ok(),
        "3^2:SD16" => return build_semilinear(9, &[(1, 0), (0, 1)]).ok(),
        "SD16" => return Some(build_semilinear(9, &[(1, 0), (0, 1)]).ok()?.point_stabiliser(0)),
        "2^4:A5" => {
            let data: MatrixFile = serde_json::from_str(SL2_4).ok()?;
            return build_affine(data.p, data.dim, &data.matrices).ok();
        }
        _ => {}
    }
    if let Some(g) = parse_matrix_group(label) {
        return Some(g);
    }
    if let Some(q) = label.strip_prefix("PSL(2,").and_then(|r| r.strip_suffix(')')) {
        return build_psl2(q.parse().ok()?).ok();
    }
    if let Some((a, b)) = split_product(label) {
        let left = match a.parse::<u64>() {
            Ok(n) => cyclic(n),
            Err(_) => build(a)?,
        };
        return product(&left, &build(b)?);
    }
    if let Some((n, m)) = label.split_once(':') {
        let (n, m) = (n.parse().ok()?, m.parse().ok()?);
        return holomorph_part(n, m);
    }
    let (head, digits) = label.split_at(1);
    let n: usize = digits.parse().ok()?;
    match head {
        "C" => Some(cyclic(n as u64)),
        "A" if n >= 3 => build_alt(n).ok(),
        "S" if n >= 2 => build_sym(n).ok(),
        "D" if n >= 6 && n.is_multiple_of(2) => Some(dihedral(n / 2)),
        "Q" if n >= 8 && n.is_multiple_of(4) => Some(dicyclic(n / 4)),
        _ => None,
    }
}

fn parse_matrix_group(label: &str) -> Option<Group> {
    let (kind, rest) = if let Some(r) = label.strip_prefix("SL(") {
        (LinearKind::Sl, r)
    } else {
        let r = label.strip_prefix("GL(")?;
        (LinearKind::Gl, r)
    };
    let (d, p) = rest.strip_suffix(')')?.split_once(',')?;
    let (d, p): (usize, u32) = (d.parse().ok()?, p.parse().ok()?);
    let f = Field::new(p).ok()?;
    if f.degree() != 1 {
        return None;
    }
    nonzero_vector_action(&f, d, &linear_generators(&f, d, kind)).ok()
}

/// Splits `AxB` at the first top-level `x`.
fn split_product(label: &str) -> Option<(&str, &str)> {
    let mut depth = 0;
    for (i, c) in label.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            'x' if depth == 0 && i > 0 => return Some((&label[..i], &label[i + 1..])),
            _ => {}
        }
    }
    None
}

fn cyclic(n: u64) -> Group {
    let n = n.max(1) as usize;
    let images = (0..n as u32).map(|i| (i + 1) % n as u32).collect();
    Group::from_parts(n, vec![Perm::from_images_unchecked(images)])
}

fn dihedral(m: usize) -> Group {
    let rot = Perm::from_images_unchecked((0..m as u32).map(|i| (i + 1) % m as u32).collect());
    let refl = Perm::from_images_unchecked((0..m as u32).map(|i| (m as u32 - i) % m as u32).collect());
    Group::from_parts(m, vec![rot, refl])
}

/// `Q_{4m}` through its right regular action on words `a^k b^e`, `k < 2m`.
fn dicyclic(m: usize) -> Group {
    let n = 2 * m;
    let index = |k: usize, e: usize| (e * n + k % n) as u32;
    let mut by_a = vec![0; 2 * n];
    let mut by_b = vec![0; 2 * n];
    for k in 0..n {
        by_a[index(k, 0) as usize] = index(k + 1, 0);
        by_a[index(k, 1) as usize] = index(k + n - 1, 1);
        by_b[index(k, 0) as usize] = index(k, 1);
        by_b[index(k, 1) as usize] = index(k + m, 0);
    }
    Group::from_parts(2 * n, vec![Perm::from_images_unchecked(by_a), Perm::from_images_unchecked(by_b)])
}

/// The normaliser of a quaternion subgroup in `SL(2,7)`, acting regularly on the
/// 48 nonzero vectors.
fn binary_octahedral() -> Option<Group> {
    let sl = parse_matrix_group("SL(2,7)")?;
    let elements = sl.elements().ok()?;
    let fours: Vec<&Perm> = elements.iter().filter(|x| x.order() == 4).collect();
    let q8 = fours.iter().find_map(|a| {
        fours.iter().find_map(|b| {
            let q = Group::from_parts(sl.degree(), vec![(*a).clone(), (*b).clone()]);
            (q.order_u64() == Some(8)).then_some(q)
        })
    })?;
    let gens = q8.generators().to_vec();
    sl.filter_subgroup(336, |g| {
        let gi = g.inverse();
        gens.iter().all(|x| q8.contains(&gi.compose(x).compose(g)).unwrap_or(false))
    })
    .ok()
}

fn product(a: &Group, b: &Group) -> Option<Group> {
    let ia = Perm::identity(a.degree());
    let ib = Perm::identity(b.degree());
    let mut gens: Vec<Perm> = a.generators().iter().map(|g| g.direct_sum(&ib)).collect();
    gens.extend(b.generators().iter().map(|g| ia.direct_sum(g)));
    Group::new(a.degree() + b.degree(), gens).ok()
}

/// `x -> ux + c` on `Z_n` with `u` running over the unique subgroup of order `m`
/// in a cyclic unit group.
fn holomorph_part(n: u64, m: u64) -> Option<Group> {
    let u = (2..n).find(|&u| num_integer::Integer::gcd(&u, &n) == 1 && unit_order(u, n) == m)?;
    let shift = Perm::from_images_unchecked((0..n).map(|x| ((x + 1) % n) as u32).collect());
    let scale = Perm::from_images_unchecked((0..n).map(|x| (x * u % n) as u32).collect());
    Group::new(n as usize, vec![shift, scale]).ok()
}

fn unit_order(u: u64, n: u64) -> u64 {
    let mut x = u % n;
    let mut k = 1;
    while x != 1 {
        x = x * u % n;
        k += 1;
    }
    k
}

struct Reference {
    label: &'static str,
    group: Group,
    order: u64,
    fingerprint: OnceLock<Option<Fingerprint>>,
}

fn references() -> &'static [Reference] {
    static REFS: OnceLock<Vec<Reference>> = OnceLock::new();
    REFS.get_or_init(|| {
        CANDIDATES
            .iter()
            .filter_map(|&label| {
                let group = build(label)?;
                let order = group.order_u64()?;
                Some(Reference { label, group, order, fingerprint: OnceLock::new() })
            })
            .collect()
    })
}

/// Conventional name of `g`, or `[order]` when no reference group matches.
pub fn name_group(g: &Group) -> Result<String> {
    let order = g.order_u64().unwrap_or(u64::MAX);
    let mut fp: Option<Fingerprint> = None;
    for r in references().iter().filter(|r| r.order == order) {
        if order == 1 {
            return Ok(r.label.to_string());
        }
        if fp.is_none() {
            fp = Some(fingerprint(g)?);
        }
        let theirs = r.fingerprint.get_or_init(|| fingerprint(&r.group).ok());
        if theirs.as_ref() != fp.as_ref() {
            continue;
        }
        if order > ISO_SCOPE || are_isomorphic(g, &r.group)?.is_some() {
            return Ok(r.label.to_string());
        }
    }
    Ok(format!("[{}]", g.order()))
}

/// Whether `g` is isomorphic to the group named `label`; `None` when the label is
/// outside the grammar or the order outside the isomorphism scope.
pub fn matches_label(g: &Group, label: &str) -> Result<Option<bool>> {
    let Some(r) = reference_group(label) else {
        return Ok(None);
    };
    if r.order() != g.order() {
        return Ok(Some(false));
    }
    if g.order_u64().is_none_or(|n| n > ISO_SCOPE) {
        return Ok(None);
    }
    if fingerprint(g)? != fingerprint(&r)? {
        return Ok(Some(false));
    }
    Ok(Some(are_isomorphic(g, &r)?.is_some()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn order(label: &str) -> u64 {
        reference_group(label).unwrap().order_u64().unwrap()
    }

    #[test]
    fn grammar_orders() {
        for (label, n) in [
            ("1", 1),
            ("C13", 13),
            ("D6", 6),
            ("D18", 18),
            ("Q8", 8),
            ("SL(2,3)", 24),
            ("GL(2,3)", 48),
            ("SL(2,13)", 2184),
            ("PSL(2,7)", 168),
            ("2xS4", 48),
            ("S4xS3", 144),
            ("(S4xS4).2", 1152),
            ("2^3:GL(3,2)", 1344),
            ("9:6", 54),
            ("7:3", 21),
            ("5xSL(2,3)", 120),
            ("3^2:Q8", 72),
            ("SD16", 16),
            ("Q16", 16),
            ("2.S4-", 48),
            ("3x2.S4-", 144),
        ] {
            assert_eq!(order(label), n, "{label}");
        }
        assert!(reference_group("M24").is_none());
    }

    #[test]
    fn aliases() {
        assert!(labels_match("D6", "S3"));
        assert!(labels_match("Z2^2", "C2^2"));
        assert!(labels_match("GL_3(2)", "PSL(2,7)"));
        assert!(!labels_match("A5", "S5"));
    }

    #[test]
    fn naming_by_isomorphism() {
        let s3_on_6 = Group::new(6, vec![
            Perm::from_cycles(6, &[&[0, 1, 2], &[3, 4, 5]]).unwrap(),
            Perm::from_cycles(6, &[&[0, 3], &[1, 5], &[2, 4]]).unwrap(),
        ])
        .unwrap();
        assert_eq!(name_group(&s3_on_6).unwrap(), "S3");
        assert_eq!(name_group(&reference_group("GL(3,2)").unwrap()).unwrap(), "PSL(2,7)");
        assert_eq!(name_group(&cyclic(9)).unwrap(), "[9]");
        assert_eq!(matches_label(&reference_group("SL(2,3)").unwrap(), "GL(2,3)").unwrap(), Some(false));
        assert_eq!(matches_label(&reference_group("Q8").unwrap(), "Q8").unwrap(), Some(true));
        assert_eq!(matches_label(&reference_group("2.S4-").unwrap(), "GL(2,3)").unwrap(), Some(false));
        assert_eq!(name_group(&reference_group("A4").unwrap()).unwrap(), "A4");
    }
}
