//! Permutation groups backed by a stabilizer chain.

use alloc::vec::Vec;

use super::cayley::CayleyBfs;
use super::chain::{BuildOptions, StabChain};
use super::perm::Perm;
use super::EngineError;

/// Enumeration cap for certifying subgroup orders by base images.
pub const CERTIFY_CAP: usize = 2_000_000;

#[derive(Clone, Debug)]
pub struct FiniteGroup {
    degree: usize,
    gens: Vec<Perm>,
    chain: StabChain,
    certified: bool,
}

fn check_degrees(degree: usize, gens: &[Perm]) -> Result<(), EngineError> {
    for g in gens {
        if g.degree() != degree {
            return Err(EngineError::DegreeMismatch {
                expected: degree,
                found: g.degree(),
            });
        }
    }
    Ok(())
}

impl FiniteGroup {
    pub fn new(degree: usize, gens: Vec<Perm>) -> Result<Self, EngineError> {
        Self::with_options(degree, gens, &BuildOptions::default())
    }

    /// Builds the group whose order is known in advance to be at most
    /// `order`. When that order is reached the chain is certified.
    pub fn with_known_order(degree: usize, gens: Vec<Perm>, order: u128) -> Result<Self, EngineError> {
        let opts = BuildOptions {
            order_bound: Some(order),
            ..BuildOptions::default()
        };
        Self::with_options(degree, gens, &opts)
    }

    pub fn with_options(degree: usize, gens: Vec<Perm>, opts: &BuildOptions) -> Result<Self, EngineError> {
        check_degrees(degree, &gens)?;
        let (chain, certified) = StabChain::build(degree, &gens, opts);
        Ok(Self {
            degree,
            gens,
            chain,
            certified,
        })
    }

    pub fn trivial(degree: usize) -> Self {
        Self {
            degree,
            gens: Vec::new(),
            chain: StabChain::empty(degree, &[]),
            certified: true,
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Perm] {
        &self.gens
    }

    pub fn chain(&self) -> &StabChain {
        &self.chain
    }

    pub fn base(&self) -> Vec<u32> {
        self.chain.base()
    }

    pub fn order(&self) -> u128 {
        self.chain.order()
    }

    /// Whether the chain is known to be complete, so that `order` is exact
    /// and `contains` is a decision procedure.
    pub fn is_certified(&self) -> bool {
        self.certified
    }

    pub fn contains(&self, x: &Perm) -> Result<bool, EngineError> {
        check_degrees(self.degree, core::slice::from_ref(x))?;
        Ok(self.chain.contains(x))
    }

    pub fn element_order(&self, x: &Perm) -> u64 {
        x.order()
    }

    pub fn identity(&self) -> Perm {
        Perm::identity(self.degree)
    }

    /// The subgroup generated by `gens`, which must lie in `self`.
    ///
    /// The subgroup chain starts from this group's base, so when this group
    /// is certified its base also separates subgroup elements and the
    /// subgroup order can be certified by enumerating base images.
    pub fn subgroup(&self, gens: Vec<Perm>) -> Result<Self, EngineError> {
        for g in &gens {
            if !self.contains(g)? {
                return Err(EngineError::NotMember);
            }
        }
        self.subgroup_unchecked(gens)
    }

    pub(crate) fn subgroup_unchecked(&self, gens: Vec<Perm>) -> Result<Self, EngineError> {
        let opts = BuildOptions {
            base_prefix: self.base(),
            order_bound: self.certified.then_some(self.order()),
            verify_budget: 300_000_000,
            ..BuildOptions::default()
        };
        let mut sub = Self::with_options(self.degree, gens, &opts)?;
        if !sub.certified && self.certified {
            // too large to list: the subgroup stays uncertified
            let _ = sub.certify_by_enumeration(CERTIFY_CAP);
        }
        Ok(sub)
    }

    /// A subgroup known to have order at most `bound`; reaching the bound
    /// certifies it without listing elements.
    pub fn subgroup_with_order_bound(&self, gens: Vec<Perm>, bound: u128) -> Result<Self, EngineError> {
        for g in &gens {
            if !self.contains(g)? {
                return Err(EngineError::NotMember);
            }
        }
        let opts = BuildOptions {
            base_prefix: self.base(),
            order_bound: Some(bound),
            verify_budget: 0,
            ..BuildOptions::default()
        };
        Self::with_options(self.degree, gens, &opts)
    }

    /// The subgroup generated by `elems`, keeping only the elements that
    /// enlarge the span of those kept before them.
    pub fn subgroup_from_elements<'a>(&self, elems: impl IntoIterator<Item = &'a Perm>) -> Result<Self, EngineError> {
        let mut partial = StabChain::empty(self.degree, &self.base());
        let mut gens = Vec::new();
        for x in elems {
            if partial.absorb(x) {
                gens.push(x.clone());
            }
        }
        self.subgroup_unchecked(gens)
    }

    /// Completes the chain by listing all elements through their base
    /// images. Requires the chain's base to be a base of the group.
    fn certify_by_enumeration(&mut self, cap: usize) -> Result<(), EngineError> {
        let base = self.base();
        let bfs = CayleyBfs::run(&base, &self.gens, cap)?;
        let mut buf = base.clone();
        for i in 0..bfs.len() {
            buf.copy_from_slice(bfs.tuple(i));
            if !self.chain.strip_base_images(&mut buf) {
                let x = bfs.element(i, &self.gens, self.degree);
                self.chain.absorb(&x);
            }
        }
        debug_assert_eq!(self.chain.order(), bfs.len() as u128);
        self.certified = true;
        Ok(())
    }

    /// Whether `⟨gens⟩` is all of this group. Requires a certified order.
    pub fn is_generated_by(&self, gens: &[Perm]) -> Result<bool, EngineError> {
        if !self.certified {
            return Err(EngineError::Uncertified);
        }
        let sub = self.subgroup(gens.to_vec())?;
        Ok(sub.order() == self.order())
    }

    /// Every element, by breadth-first closure. Needs a certified base.
    pub fn enumerate(&self, cap: usize) -> Result<Vec<Perm>, EngineError> {
        let bfs = CayleyBfs::run(&self.base(), &self.gens, cap)?;
        let mut out: Vec<Perm> = Vec::with_capacity(bfs.len());
        out.push(self.identity());
        for i in 1..bfs.len() {
            let (p, k) = bfs.parent(i).expect("non-root node");
            let x = out[p].then(&self.gens[k]);
            out.push(x);
        }
        Ok(out)
    }

    /// `a ∩ b`, by listing the smaller group and sifting into the larger.
    pub fn intersection(&self, other: &Self, cap: usize) -> Result<Self, EngineError> {
        if other.degree != self.degree {
            return Err(EngineError::DegreeMismatch {
                expected: self.degree,
                found: other.degree,
            });
        }
        let (small, large) = if self.order() <= other.order() {
            (self, other)
        } else {
            (other, self)
        };
        if small.order() > cap as u128 {
            return Err(EngineError::CapExceeded {
                what: "intersection enumeration",
                size: small.order(),
                cap: cap as u128,
            });
        }
        // Base images of `small` identify its elements; sifting them through
        // `large` pre-filters, and a full sift confirms.
        let base = small.base();
        let bfs = CayleyBfs::run(&base, &small.gens, cap)?;
        let same_base = large.base() == base;
        let mut out = Self::trivial(self.degree);
        out.chain = StabChain::empty(self.degree, &base);
        let mut buf = base.clone();
        for i in 1..bfs.len() {
            if same_base {
                buf.copy_from_slice(bfs.tuple(i));
                if !large.chain.strip_base_images(&mut buf) {
                    continue;
                }
            }
            buf.copy_from_slice(bfs.tuple(i));
            if out.chain.strip_base_images(&mut buf) {
                continue;
            }
            let x = bfs.element(i, &small.gens, self.degree);
            if large.chain.contains(&x) {
                out.chain.absorb(&x);
                out.gens.push(x);
            }
        }
        out.certified = small.certified && large.certified;
        Ok(out)
    }

    /// Whether `src[i] ↦ dst[i]` extends to an automorphism, given that both
    /// tuples generate this group.
    ///
    /// The pairs generate a subgroup of `G × G` acting on two copies of the
    /// domain; it is the graph of an automorphism exactly when its order is
    /// `|G|`.
    pub fn tuple_extends_to_automorphism(&self, src: &[Perm], dst: &[Perm]) -> Result<bool, EngineError> {
        if src.len() != dst.len() {
            return Ok(false);
        }
        let d = self.degree;
        let pairs: Vec<Perm> = src
            .iter()
            .zip(dst)
            .map(|(a, b)| {
                let mut im: Vec<u32> = a.images().to_vec();
                im.extend(b.images().iter().map(|&x| x + d as u32));
                Perm::from_images_unchecked(im)
            })
            .collect();
        for (a, b) in src.iter().zip(dst) {
            if a.order() != b.order() {
                return Ok(false);
            }
        }
        let base = self.base();
        let mut points = base.clone();
        points.extend(base.iter().map(|&x| x + d as u32));
        let n = self.order();
        if n > CERTIFY_CAP as u128 {
            return Err(EngineError::CapExceeded {
                what: "automorphism test",
                size: n,
                cap: CERTIFY_CAP as u128,
            });
        }
        match CayleyBfs::run(&points, &pairs, n as usize) {
            Ok(bfs) => {
                if bfs.len() as u128 != n {
                    return Err(EngineError::NotGenerating);
                }
                Ok(true)
            }
            Err(EngineError::CapExceeded { .. }) => Ok(false),
            Err(e) => Err(e),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn s4() -> FiniteGroup {
        FiniteGroup::new(
            4,
            vec![
                Perm::parse_cycles(4, "(1,2)").unwrap(),
                Perm::parse_cycles(4, "(1,2,3,4)").unwrap(),
            ],
        )
        .unwrap()
    }

    #[test]
    fn subgroups_and_membership() {
        let g = s4();
        assert_eq!(g.order(), 24);
        assert!(g.is_certified());
        let v4 = g
            .subgroup(vec![
                Perm::parse_cycles(4, "(1,2)(3,4)").unwrap(),
                Perm::parse_cycles(4, "(1,3)(2,4)").unwrap(),
            ])
            .unwrap();
        assert_eq!(v4.order(), 4);
        assert_eq!(g.subgroup(vec![]).unwrap().order(), 1);
        let outside = FiniteGroup::new(5, vec![]).unwrap();
        assert!(outside.contains(&Perm::identity(4)).is_err());
        assert_eq!(g.enumerate(100).unwrap().len(), 24);
    }

    #[test]
    fn intersection_of_stabilizers() {
        let g = s4();
        let a = g
            .subgroup(vec![
                Perm::parse_cycles(4, "(1,2)").unwrap(),
                Perm::parse_cycles(4, "(1,2,3)").unwrap(),
            ])
            .unwrap();
        let b = g
            .subgroup(vec![
                Perm::parse_cycles(4, "(2,3)").unwrap(),
                Perm::parse_cycles(4, "(2,3,4)").unwrap(),
            ])
            .unwrap();
        let c = a.intersection(&b, 1000).unwrap();
        assert_eq!(c.order(), 2);
        assert!(c.contains(&Perm::parse_cycles(4, "(2,3)").unwrap()).unwrap());
    }

    #[test]
    fn automorphism_extension() {
        let g = s4();
        let src = [
            Perm::parse_cycles(4, "(1,2)").unwrap(),
            Perm::parse_cycles(4, "(2,3)").unwrap(),
            Perm::parse_cycles(4, "(3,4)").unwrap(),
        ];
        let c = Perm::parse_cycles(4, "(1,3,2,4)").unwrap();
        let conj: Vec<Perm> = src.iter().map(|x| x.conjugate_by(&c)).collect();
        assert!(g.tuple_extends_to_automorphism(&src, &conj).unwrap());
        let mut rev = src.to_vec();
        rev.reverse();
        // reversal is induced by conjugation with (1,4)(2,3)
        assert!(g.tuple_extends_to_automorphism(&src, &rev).unwrap());
        let bad = [src[0].clone(), src[2].clone(), src[1].clone()];
        assert!(!g.tuple_extends_to_automorphism(&src, &bad).unwrap());
    }
}
