//! Stabilizer chains with Schreier-vector transversals.
//!
//! Construction runs a seeded random Schreier–Sims phase and then, when the
//! estimated cost fits the budget, the deterministic Schreier-generator
//! check, which makes the chain complete. Without that check a chain is
//! complete only if its order reached a known upper bound; otherwise it is
//! flagged as uncertified and its order is a lower bound.

use alloc::vec;
use alloc::vec::Vec;

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

use super::perm::Perm;

const NONE: u32 = u32::MAX;
const ROOT: u32 = u32::MAX - 1;

#[derive(Clone, Debug)]
struct Level {
    point: u32,
    /// Indices into `StabChain::strong` of generators fixing all earlier
    /// base points.
    gens: Vec<u32>,
    orbit: Vec<u32>,
    /// For orbit points, the generator whose application reached the point in
    /// the Schreier tree; `ROOT` for the base point, `NONE` off the orbit.
    label: Vec<u32>,
}

#[derive(Clone, Debug)]
pub struct StabChain {
    degree: usize,
    strong: Vec<Perm>,
    strong_inv: Vec<Perm>,
    levels: Vec<Level>,
}

#[derive(Clone, Debug)]
pub struct BuildOptions {
    /// Base points to use first, in order.
    pub base_prefix: Vec<u32>,
    /// A known upper bound on the group order; reaching it certifies the
    /// chain.
    pub order_bound: Option<u128>,
    pub seed: u64,
    /// Consecutive trivially-sifting random elements required to stop the
    /// random phase.
    pub patience: usize,
    /// Work estimate (permutation-entry operations) allowed for the
    /// deterministic Schreier-generator check.
    pub verify_budget: u64,
}

impl Default for BuildOptions {
    fn default() -> Self {
        Self {
            base_prefix: Vec::new(),
            order_bound: None,
            seed: 0x0005_eed0_fc57,
            patience: 40,
            verify_budget: 4_000_000_000,
        }
    }
}

/// Product-replacement random elements.
struct RandomSource {
    state: Vec<Perm>,
    acc: Perm,
    rng: ChaCha8Rng,
}

impl RandomSource {
    fn new(gens: &[Perm], degree: usize, seed: u64) -> Self {
        let mut state: Vec<Perm> = gens.iter().filter(|g| !g.is_identity()).cloned().collect();
        if state.is_empty() {
            state.push(Perm::identity(degree));
        }
        let base_len = state.len();
        while state.len() < 10 {
            let g = state[state.len() % base_len].clone();
            state.push(g);
        }
        let mut src = Self {
            state,
            acc: Perm::identity(degree),
            rng: ChaCha8Rng::seed_from_u64(seed),
        };
        for _ in 0..60 {
            src.next();
        }
        src
    }

    fn next(&mut self) -> Perm {
        let n = self.state.len() as u64;
        let i = (self.rng.next_u64() % n) as usize;
        let mut j = (self.rng.next_u64() % (n - 1)) as usize;
        if j >= i {
            j += 1;
        }
        let new = if self.rng.next_u32() & 1 == 0 {
            self.state[i].then(&self.state[j])
        } else {
            self.state[j].then(&self.state[i])
        };
        self.state[i] = new;
        self.acc.then_assign(&self.state[i]);
        self.acc.clone()
    }
}

impl StabChain {
    pub fn empty(degree: usize, base_prefix: &[u32]) -> Self {
        let mut chain = Self {
            degree,
            strong: Vec::new(),
            strong_inv: Vec::new(),
            levels: Vec::new(),
        };
        for &b in base_prefix {
            chain.push_level(b);
        }
        chain
    }

    fn push_level(&mut self, point: u32) {
        let mut label = vec![NONE; self.degree];
        label[point as usize] = ROOT;
        self.levels.push(Level {
            point,
            gens: Vec::new(),
            orbit: vec![point],
            label,
        });
    }

    /// Builds a chain for `⟨gens⟩`; the flag reports whether it is complete.
    pub fn build(degree: usize, gens: &[Perm], opts: &BuildOptions) -> (Self, bool) {
        let mut chain = Self::empty(degree, &opts.base_prefix);
        for g in gens {
            chain.absorb(g);
        }
        if chain.strong.is_empty() {
            return (chain, true);
        }
        let reached = |c: &StabChain| opts.order_bound.is_some_and(|b| c.order() >= b);
        if reached(&chain) {
            return (chain, true);
        }
        let mut src = RandomSource::new(gens, degree, opts.seed);
        let mut quiet = 0;
        while quiet < opts.patience {
            let x = src.next();
            if chain.absorb(&x) {
                quiet = 0;
                if reached(&chain) {
                    return (chain, true);
                }
            } else {
                quiet += 1;
            }
        }
        if chain.verify_cost() <= opts.verify_budget {
            chain.schreier_sims();
            return (chain, true);
        }
        (chain, false)
    }

    /// Sifts `x` and adds the residue as a strong generator if nontrivial.
    /// Returns whether the chain grew.
    pub fn absorb(&mut self, x: &Perm) -> bool {
        let (r, lvl) = self.strip(x);
        if r.is_identity() {
            return false;
        }
        self.add_strong(r, lvl);
        true
    }

    fn add_strong(&mut self, g: Perm, fix_level: usize) {
        if fix_level == self.levels.len() {
            let p = g.smallest_moved_point().expect("nontrivial residue");
            self.push_level(p);
        }
        let k = self.strong.len() as u32;
        self.strong_inv.push(g.inverse());
        self.strong.push(g);
        for j in 0..=fix_level {
            self.levels[j].gens.push(k);
            self.rebuild_orbit(j);
        }
    }

    fn rebuild_orbit(&mut self, j: usize) {
        let Self {
            strong, levels, ..
        } = self;
        let lv = &mut levels[j];
        for &x in &lv.orbit {
            lv.label[x as usize] = NONE;
        }
        lv.orbit.clear();
        lv.label[lv.point as usize] = ROOT;
        lv.orbit.push(lv.point);
        let mut head = 0;
        while head < lv.orbit.len() {
            let x = lv.orbit[head];
            head += 1;
            for &k in &lv.gens {
                let y = strong[k as usize].apply(x);
                if lv.label[y as usize] == NONE {
                    lv.label[y as usize] = k;
                    lv.orbit.push(y);
                }
            }
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn base(&self) -> Vec<u32> {
        self.levels.iter().map(|l| l.point).collect()
    }

    pub fn orbit_lengths(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.orbit.len()).collect()
    }

    pub fn strong_generators(&self) -> &[Perm] {
        &self.strong
    }

    pub fn order(&self) -> u128 {
        self.levels.iter().map(|l| l.orbit.len() as u128).product()
    }

    /// Sifts `x` through the chain. Returns the residue and the index of the
    /// first level whose basic orbit did not contain the required point
    /// (`levels.len()` if all levels passed).
    pub fn strip(&self, x: &Perm) -> (Perm, usize) {
        let mut r = x.clone();
        for (i, lv) in self.levels.iter().enumerate() {
            let mut g = r.apply(lv.point);
            if lv.label[g as usize] == NONE {
                return (r, i);
            }
            while g != lv.point {
                let k = lv.label[g as usize] as usize;
                r.then_assign(&self.strong_inv[k]);
                g = self.strong_inv[k].apply(g);
            }
        }
        (r, self.levels.len())
    }

    pub fn contains(&self, x: &Perm) -> bool {
        x.degree() == self.degree && self.strip(x).0.is_identity()
    }

    /// Sifts the images of the base points under some element of a group for
    /// which this chain's base is a base. On success the tuple is reduced to
    /// the base itself. `imgs` may carry extra trailing points, which are
    /// transformed along.
    pub fn strip_base_images(&self, imgs: &mut [u32]) -> bool {
        for (i, lv) in self.levels.iter().enumerate() {
            let mut g = imgs[i];
            if lv.label[g as usize] == NONE {
                return false;
            }
            while g != lv.point {
                let inv = &self.strong_inv[lv.label[g as usize] as usize];
                for x in imgs[i..].iter_mut() {
                    *x = inv.apply(*x);
                }
                g = imgs[i];
            }
        }
        true
    }

    /// Inverse of the transversal element taking the level's base point to
    /// `gamma`.
    fn transversal_inverse(&self, level: usize, gamma: u32) -> Perm {
        let lv = &self.levels[level];
        let mut r = Perm::identity(self.degree);
        let mut g = gamma;
        while g != lv.point {
            let k = lv.label[g as usize] as usize;
            r.then_assign(&self.strong_inv[k]);
            g = self.strong_inv[k].apply(g);
        }
        r
    }

    fn verify_cost(&self) -> u64 {
        let depth = self.levels.len() as u64 + 4;
        self.levels
            .iter()
            .map(|l| l.orbit.len() as u64 * l.gens.len() as u64)
            .sum::<u64>()
            .saturating_mul(self.degree as u64)
            .saturating_mul(depth)
    }

    /// Deterministic completion: every Schreier generator must sift.
    pub fn schreier_sims(&mut self) {
        let mut i = self.levels.len() as isize - 1;
        while i >= 0 {
            let lvl = i as usize;
            let mut grew_at = None;
            let orbit = self.levels[lvl].orbit.clone();
            'scan: for &gamma in &orbit {
                let u = self.transversal_inverse(lvl, gamma).inverse();
                let gens = self.levels[lvl].gens.clone();
                for k in gens {
                    let s = &self.strong[k as usize];
                    let img = s.apply(gamma);
                    let lv = &self.levels[lvl];
                    if lv.label[img as usize] == k && self.strong_inv[k as usize].apply(img) == gamma {
                        continue;
                    }
                    let h = u.then(s);
                    let (r, at) = self.strip(&h);
                    if !r.is_identity() {
                        self.add_strong(r, at);
                        grew_at = Some(at);
                        break 'scan;
                    }
                }
            }
            match grew_at {
                Some(at) => i = at as isize,
                None => i -= 1,
            }
        }
    }
}
