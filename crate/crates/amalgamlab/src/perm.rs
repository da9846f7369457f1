//! Permutations of `{0, .., d-1}` stored as image arrays.
//!
//! Composition reads left to right: `p.compose(&q)` first applies `p`, then `q`,
//! so `(p * q)(x) = q(p(x))`.

use std::fmt;
use std::ops::Mul;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct Perm {
    images: Vec<u32>,
}

impl Perm {
    pub fn identity(degree: usize) -> Self {
        Perm { images: (0..degree as u32).collect() }
    }

    /// Builds a permutation from its image array, rejecting anything that is not a bijection.
    pub fn from_images(images: Vec<u32>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            let x = x as usize;
            if x >= n || seen[x] {
                return Err(Error::Input(format!("image array is not a permutation of 0..{n}")));
            }
            seen[x] = true;
        }
        Ok(Perm { images })
    }

    pub(crate) fn from_images_unchecked(images: Vec<u32>) -> Self {
        debug_assert!(Perm::from_images(images.clone()).is_ok());
        Perm { images }
    }

    /// Builds a permutation from disjoint cycles, e.g. `&[&[0, 1, 2], &[3, 4]]`.
    pub fn from_cycles(degree: usize, cycles: &[&[u32]]) -> Result<Self> {
        let mut images: Vec<u32> = (0..degree as u32).collect();
        let mut touched = vec![false; degree];
        for cycle in cycles {
            for (i, &x) in cycle.iter().enumerate() {
                let y = cycle[(i + 1) % cycle.len()];
                if x as usize >= degree || y as usize >= degree || touched[x as usize] {
                    return Err(Error::Input(format!("bad cycle {cycle:?} for degree {degree}")));
                }
                touched[x as usize] = true;
                images[x as usize] = y;
            }
        }
        Perm::from_images(images)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn apply(&self, x: u32) -> u32 {
        self.images[x as usize]
    }

    pub fn images(&self) -> &[u32] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i as u32 == x)
    }

    /// `self` followed by `other`.
    pub fn compose(&self, other: &Perm) -> Perm {
        debug_assert_eq!(self.degree(), other.degree());
        Perm { images: self.images.iter().map(|&x| other.images[x as usize]).collect() }
    }

    pub fn try_compose(&self, other: &Perm) -> Result<Perm> {
        if self.degree() != other.degree() {
            return Err(Error::DegreeMismatch { expected: self.degree(), found: other.degree() });
        }
        Ok(self.compose(other))
    }

    /// `self` followed by the inverse of `other`.
    pub fn compose_inv(&self, other: &Perm) -> Perm {
        let inv = other.inverse();
        self.compose(&inv)
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0u32; self.images.len()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x as usize] = i as u32;
        }
        Perm { images: inv }
    }

    pub fn pow(&self, exp: i64) -> Perm {
        let mut base = if exp < 0 { self.inverse() } else { self.clone() };
        let mut e = exp.unsigned_abs();
        let mut acc = Perm::identity(self.degree());
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.compose(&base);
            }
            base = base.compose(&base);
            e >>= 1;
        }
        acc
    }

    /// `g^-1 * self * g`.
    pub fn conjugate_by(&self, g: &Perm) -> Perm {
        let mut out = vec![0u32; self.images.len()];
        for (i, &x) in self.images.iter().enumerate() {
            out[g.images[i] as usize] = g.images[x as usize];
        }
        Perm { images: out }
    }

    /// `a^-1 b^-1 a b`.
    pub fn commutator(a: &Perm, b: &Perm) -> Perm {
        a.inverse().compose(&b.inverse()).compose(a).compose(b)
    }

    pub fn cycles(&self) -> Vec<Vec<u32>> {
        let n = self.images.len();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cycle = vec![start as u32];
            seen[start] = true;
            let mut x = self.images[start];
            while x as usize != start {
                seen[x as usize] = true;
                cycle.push(x);
                x = self.images[x as usize];
            }
            out.push(cycle);
        }
        out
    }

    pub fn cycle_type(&self) -> Vec<usize> {
        let mut t: Vec<usize> = self.cycles().iter().map(Vec::len).collect();
        t.sort_unstable_by(|a, b| b.cmp(a));
        t
    }

    pub fn order(&self) -> u64 {
        self.cycles().iter().fold(1u64, |acc, c| acc.lcm(&(c.len() as u64)))
    }

    pub fn is_even(&self) -> bool {
        self.cycles().iter().map(|c| c.len() - 1).sum::<usize>() % 2 == 0
    }

    pub fn fixed_points(&self) -> impl Iterator<Item = u32> + '_ {
        self.images.iter().enumerate().filter(|(i, &x)| *i as u32 == x).map(|(_, &x)| x)
    }

    pub fn support_min(&self) -> Option<u32> {
        self.images.iter().enumerate().find(|(i, &x)| *i as u32 != x).map(|(i, _)| i as u32)
    }

    /// Restriction to `points`, relabelled through `index_of`. Returns `None` when
    /// some point leaves the list.
    pub fn restrict_to(&self, points: &[u32], index_of: &[Option<u32>]) -> Option<Perm> {
        let mut out = Vec::with_capacity(points.len());
        for &x in points {
            out.push(index_of[self.apply(x) as usize]?);
        }
        Some(Perm { images: out })
    }

    /// Disjoint union: `self` on the first block of points, `other` shifted after it.
    pub fn direct_sum(&self, other: &Perm) -> Perm {
        let shift = self.degree() as u32;
        let mut images = self.images.clone();
        images.extend(other.images.iter().map(|&x| x + shift));
        Perm { images }
    }
}

impl Mul for &Perm {
    type Output = Perm;
    fn mul(self, rhs: &Perm) -> Perm {
        self.compose(rhs)
    }
}

impl TryFrom<Vec<u32>> for Perm {
    type Error = Error;
    fn try_from(v: Vec<u32>) -> Result<Self> {
        Perm::from_images(v)
    }
}

impl From<Perm> for Vec<u32> {
    fn from(p: Perm) -> Vec<u32> {
        p.images
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles: Vec<_> = self.cycles().into_iter().filter(|c| c.len() > 1).collect();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for c in cycles {
            write!(f, "(")?;
            for (i, x) in c.iter().enumerate() {
                if i > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{x}")?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn eval(images: &[u32], x: u32) -> u32 {
        images[x as usize]
    }

    #[test]
    fn identity_is_neutral() {
        let q = Perm::from_cycles(5, &[&[0, 3, 1], &[2, 4]]).unwrap();
        assert_eq!(Perm::identity(5).compose(&q), q);
        assert_eq!(q.compose(&Perm::identity(5)), q);
    }

    #[test]
    fn transposition_squares_to_identity() {
        let t = Perm::from_cycles(2, &[&[0, 1]]).unwrap();
        assert!(t.compose(&t).is_identity());
    }

    #[test]
    fn composition_is_left_to_right() {
        let p = Perm::from_cycles(3, &[&[0, 1, 2]]).unwrap();
        let q = Perm::from_cycles(3, &[&[0, 1]]).unwrap();
        let pq = p.compose(&q);
        for x in 0..3 {
            assert_eq!(pq.apply(x), eval(q.images(), eval(p.images(), x)));
        }
        assert_eq!(pq.images(), &[0, 2, 1]);
    }

    #[test]
    fn degree_mismatch_is_reported() {
        let p = Perm::identity(3);
        let q = Perm::identity(4);
        assert!(matches!(p.try_compose(&q), Err(Error::DegreeMismatch { .. })));
    }

    #[test]
    fn rejects_non_bijections() {
        assert!(Perm::from_images(vec![0, 0, 1]).is_err());
        assert!(Perm::from_images(vec![0, 3, 1]).is_err());
    }

    #[test]
    fn order_and_parity() {
        let p = Perm::from_cycles(7, &[&[0, 1, 2], &[3, 4, 5, 6]]).unwrap();
        assert_eq!(p.order(), 12);
        assert!(!p.is_even());
        assert!(p.pow(12).is_identity());
        assert_eq!(p.pow(-1), p.inverse());
    }

    #[test]
    fn conjugation_relabels_cycles() {
        let p = Perm::from_cycles(4, &[&[0, 1]]).unwrap();
        let g = Perm::from_cycles(4, &[&[1, 2, 3]]).unwrap();
        let c = p.conjugate_by(&g);
        assert_eq!(c, g.inverse().compose(&p).compose(&g));
        assert_eq!(c, Perm::from_cycles(4, &[&[0, 2]]).unwrap());
    }

    #[test]
    fn serde_round_trip() {
        let p = Perm::from_cycles(6, &[&[0, 5, 2], &[1, 3]]).unwrap();
        let s = serde_json::to_string(&p).unwrap();
        assert_eq!(s, "[5,3,0,1,4,2]");
        let back: Perm = serde_json::from_str(&s).unwrap();
        assert_eq!(back, p);
        assert!(serde_json::from_str::<Perm>("[0,0]").is_err());
    }
}
