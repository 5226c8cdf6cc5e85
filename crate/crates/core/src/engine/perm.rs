//! Permutations of `{0, …, d-1}` stored as image arrays.
//!
//! Products compose left to right: `a * b` applies `a` first. This is the
//! convention under which the permutation of a matrix product `A·B` acting on
//! row vectors is `perm(A) * perm(B)`.

use alloc::boxed::Box;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt::{self, Write as _};
use core::ops::Mul;

use crate::engine::EngineError;
use crate::ff::lcm;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm {
    images: Box<[u32]>,
}

/// Group elements are permutations of the action domain.
pub type GroupElement = Perm;

impl Perm {
    pub fn identity(degree: usize) -> Self {
        Self {
            images: (0..degree as u32).collect(),
        }
    }

    pub fn from_images(images: Vec<u32>) -> Result<Self, EngineError> {
        let mut seen = vec![false; images.len()];
        for &x in &images {
            let slot = seen
                .get_mut(x as usize)
                .ok_or(EngineError::NotAPermutation)?;
            if core::mem::replace(slot, true) {
                return Err(EngineError::NotAPermutation);
            }
        }
        Ok(Self {
            images: images.into_boxed_slice(),
        })
    }

    pub(crate) fn from_images_unchecked(images: Vec<u32>) -> Self {
        Self {
            images: images.into_boxed_slice(),
        }
    }

    /// Builds a permutation from 0-based cycles.
    pub fn from_cycles(degree: usize, cycles: &[Vec<u32>]) -> Result<Self, EngineError> {
        let mut images: Vec<u32> = (0..degree as u32).collect();
        let mut touched = vec![false; degree];
        for cyc in cycles {
            for (i, &a) in cyc.iter().enumerate() {
                let b = cyc[(i + 1) % cyc.len()];
                if a as usize >= degree || b as usize >= degree {
                    return Err(EngineError::DegreeMismatch {
                        expected: degree,
                        found: a.max(b) as usize + 1,
                    });
                }
                if core::mem::replace(&mut touched[a as usize], true) {
                    return Err(EngineError::NotAPermutation);
                }
                images[a as usize] = b;
            }
        }
        Self::from_images(images)
    }

    /// Parses 1-based cycle notation such as `(1,2)(3,5,4)`; `()` is the
    /// identity.
    pub fn parse_cycles(degree: usize, text: &str) -> Result<Self, EngineError> {
        let mut cycles = Vec::new();
        let mut rest = text.trim();
        while !rest.is_empty() {
            let open = rest
                .strip_prefix('(')
                .ok_or_else(|| EngineError::Parse(String::from(rest)))?;
            let close = open
                .find(')')
                .ok_or_else(|| EngineError::Parse(String::from(rest)))?;
            let body = open[..close].trim();
            if !body.is_empty() {
                let cyc = body
                    .split(',')
                    .map(|s| match s.trim().parse::<u32>() {
                        Ok(v) if v >= 1 => Ok(v - 1),
                        _ => Err(EngineError::Parse(String::from(s))),
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                cycles.push(cyc);
            }
            rest = open[close + 1..].trim_start();
        }
        Self::from_cycles(degree, &cycles)
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

    /// `self` then `other`.
    pub fn then(&self, other: &Perm) -> Perm {
        debug_assert_eq!(self.degree(), other.degree());
        Perm {
            images: self.images.iter().map(|&x| other.images[x as usize]).collect(),
        }
    }

    /// In-place `self = self * other`.
    pub(crate) fn then_assign(&mut self, other: &Perm) {
        for x in self.images.iter_mut() {
            *x = other.images[*x as usize];
        }
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0u32; self.degree()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x as usize] = i as u32;
        }
        Perm {
            images: inv.into_boxed_slice(),
        }
    }

    pub fn pow(&self, mut e: u64) -> Perm {
        let mut base = self.clone();
        let mut acc = Perm::identity(self.degree());
        while e > 0 {
            if e & 1 == 1 {
                acc.then_assign(&base);
            }
            base = base.then(&base);
            e >>= 1;
        }
        acc
    }

    /// `c⁻¹ · self · c`.
    pub fn conjugate_by(&self, c: &Perm) -> Perm {
        // point c(i) goes to c(self(i))
        let mut out = vec![0u32; self.degree()];
        for (i, &x) in self.images.iter().enumerate() {
            out[c.images[i] as usize] = c.images[x as usize];
        }
        Perm {
            images: out.into_boxed_slice(),
        }
    }

    /// `[a, b] = a⁻¹b⁻¹ab`.
    pub fn commutator(&self, other: &Perm) -> Perm {
        self.inverse()
            .then(&other.inverse())
            .then(self)
            .then(other)
    }

    pub fn commutes_with(&self, other: &Perm) -> bool {
        self.images
            .iter()
            .zip(other.images.iter())
            .all(|(&a, &b)| other.images[a as usize] == self.images[b as usize])
    }

    /// Nontrivial cycles, each starting at its smallest point.
    pub fn cycles(&self) -> Vec<Vec<u32>> {
        let mut seen = vec![false; self.degree()];
        let mut out = Vec::new();
        for start in 0..self.degree() {
            if seen[start] || self.images[start] as usize == start {
                continue;
            }
            let mut cyc = Vec::new();
            let mut x = start as u32;
            while !seen[x as usize] {
                seen[x as usize] = true;
                cyc.push(x);
                x = self.images[x as usize];
            }
            out.push(cyc);
        }
        out
    }

    /// Least common multiple of the cycle lengths.
    pub fn order(&self) -> u64 {
        let mut seen = vec![false; self.degree()];
        let mut ord = 1u64;
        for start in 0..self.degree() {
            if seen[start] {
                continue;
            }
            let mut len = 0u64;
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                len += 1;
                x = self.images[x] as usize;
            }
            ord = lcm(ord, len);
        }
        ord
    }

    pub fn is_involution(&self) -> bool {
        !self.is_identity() && self.images.iter().enumerate().all(|(i, &x)| self.images[x as usize] == i as u32)
    }

    pub fn smallest_moved_point(&self) -> Option<u32> {
        self.images
            .iter()
            .enumerate()
            .find(|(i, &x)| *i as u32 != x)
            .map(|(i, _)| i as u32)
    }

    /// 1-based cycle notation; the identity prints as `()`.
    pub fn to_cycle_string(&self) -> String {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return String::from("()");
        }
        let mut s = String::new();
        for cyc in cycles {
            s.push('(');
            for (i, x) in cyc.iter().enumerate() {
                if i > 0 {
                    s.push(',');
                }
                let _ = write!(s, "{}", x + 1);
            }
            s.push(')');
        }
        s
    }
}

impl Mul for &Perm {
    type Output = Perm;

    fn mul(self, rhs: &Perm) -> Perm {
        self.then(rhs)
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_cycle_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_print_round_trip() {
        let p = Perm::parse_cycles(27, "(4,10)(7,15)(9,17)").unwrap();
        assert_eq!(p.to_cycle_string(), "(4,10)(7,15)(9,17)");
        assert_eq!(p.order(), 2);
        assert!(Perm::parse_cycles(5, "(1,6)").is_err());
        assert!(Perm::parse_cycles(5, "(1,2)(2,3)").is_err());
        assert!(Perm::parse_cycles(5, "()").unwrap().is_identity());
    }

    #[test]
    fn composition_is_left_to_right() {
        let a = Perm::parse_cycles(3, "(1,2)").unwrap();
        let b = Perm::parse_cycles(3, "(2,3)").unwrap();
        // 1 -a-> 2 -b-> 3
        assert_eq!((&a * &b).apply(0), 2);
        assert_eq!((&a * &b).order(), 3);
        assert!(!a.commutes_with(&b));
        let c = a.conjugate_by(&b);
        assert_eq!(c, b.inverse().then(&a).then(&b));
        assert_eq!(a.commutator(&b), a.inverse().then(&b.inverse()).then(&a).then(&b));
    }

    #[test]
    fn powers_and_inverse() {
        let p = Perm::parse_cycles(6, "(1,2,3)(4,5)").unwrap();
        assert_eq!(p.order(), 6);
        assert!(p.pow(6).is_identity());
        assert!(p.then(&p.inverse()).is_identity());
        assert!(!p.pow(3).is_identity());
        assert!(p.pow(3).is_involution());
    }
}
