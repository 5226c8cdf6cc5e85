//! Every C-string of a small group, up to isomorphism.
//!
//! Tuples are built one involution at a time. The i-th entry must commute
//! with entries `1..i−2`; it is taken up to conjugation by the centralizer
//! of the prefix, which visits each tuple once per inner-automorphism class.
//! Every interval `⟨tⱼ..tᵢ⟩` is kept as a bitset over group elements and
//! the intersection property is checked interval by interval as the tuple
//! grows. Classes related by outer automorphisms are merged at the end.

use alloc::boxed::Box;
use alloc::collections::BTreeMap;
use alloc::rc::Rc;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use fixedbitset::FixedBitSet;

use crate::cstring::{CString, CStringError, IpMode, SchlafliSymbol, UnravelledVerdict};
use crate::engine::{normal_subgroups_from_classes, ElementTable, EngineError, FiniteGroup, Perm, Quotient};
use crate::polytope::FVector;
use crate::Caps;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CensusError {
    #[error("group order is not certified")]
    Uncertified,
    #[error("checkpoint does not match this group and these options")]
    CheckpointMismatch,
    #[error("census produced a tuple that fails verification")]
    Inconsistent,
    #[error(transparent)]
    Engine(#[from] EngineError),
    #[error(transparent)]
    CString(#[from] CStringError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CensusOptions {
    pub rank_min: usize,
    pub rank_max: usize,
    /// Keep strings in which adjacent generators commute.
    pub allow_degenerate: bool,
    /// Visit one tuple per conjugacy class of tuples. Off, every tuple is
    /// visited, which only makes sense as a cross-check.
    pub reduce: bool,
}

impl Default for CensusOptions {
    fn default() -> Self {
        Self {
            rank_min: 2,
            rank_max: usize::MAX,
            allow_degenerate: false,
            reduce: true,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CensusRecord {
    pub rank: usize,
    pub schlafli: SchlafliSymbol,
    pub self_dual: bool,
    pub unravelled: bool,
    pub f_vector: FVector,
    pub generators: Vec<Perm>,
}

/// Resumable search state.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CensusCheckpoint {
    pub group_order: u128,
    pub options: CensusOptions,
    /// Pending subtrees, each given by its first two generators.
    pub frontier: Vec<Vec<Perm>>,
    /// Number of frontier entries already explored.
    pub next: usize,
    /// C-strings found so far, one per inner class.
    pub found: Vec<Vec<Perm>>,
}

type Bits = FixedBitSet;

struct Node {
    tuple: Vec<u32>,
    /// `iv[j] = ⟨tⱼ, …, t_last⟩`.
    iv: Vec<Bits>,
    /// Centralizer of the whole prefix.
    cent: Bits,
    /// Centralizer of the prefix without its last entry.
    cent_before_last: Bits,
}

/// Schläfli symbol, f-vector and Petrie order of a tuple.
type Invariants = (Vec<u64>, Vec<u128>, u64);

pub struct Census {
    group: Rc<FiniteGroup>,
    table: ElementTable,
    identity: u32,
    inv: Vec<u32>,
    involutions: Bits,
    right: Vec<Option<Box<[u32]>>>,
    cent: Vec<Option<Bits>>,
    opts: CensusOptions,
    caps: Caps,
    frontier: Vec<Vec<u32>>,
    next: usize,
    found: Vec<Vec<u32>>,
}

impl Census {
    pub fn new(group: Rc<FiniteGroup>, opts: CensusOptions, caps: Caps) -> Result<Self, CensusError> {
        if !group.is_certified() {
            return Err(CensusError::Uncertified);
        }
        if group.order() > caps.census as u128 {
            return Err(EngineError::CapExceeded {
                what: "census",
                size: group.order(),
                cap: caps.census as u128,
            }
            .into());
        }
        let table = ElementTable::new(&group, caps.census)?;
        let n = table.len();
        let identity = table.index_of(&group.identity()).expect("identity enumerated") as u32;
        let inv = (0..n)
            .map(|i| table.index_of(&table.element(i).inverse()).expect("closed") as u32)
            .collect();
        let mut involutions = Bits::with_capacity(n);
        for i in table.involutions() {
            involutions.insert(i);
        }
        let mut census = Self {
            group,
            table,
            identity,
            inv,
            involutions,
            right: vec![None; n],
            cent: vec![None; n],
            opts,
            caps,
            frontier: Vec::new(),
            next: 0,
            found: Vec::new(),
        };
        census.frontier = census.initial_frontier();
        Ok(census)
    }

    pub fn resume(group: Rc<FiniteGroup>, caps: Caps, cp: &CensusCheckpoint) -> Result<Self, CensusError> {
        let mut census = Self::new(group, cp.options, caps)?;
        if cp.group_order != census.group.order() || cp.next > cp.frontier.len() {
            return Err(CensusError::CheckpointMismatch);
        }
        let index = |ts: &Vec<Perm>| -> Result<Vec<u32>, CensusError> {
            ts.iter()
                .map(|t| census.table.index_of(t).map(|i| i as u32).ok_or(CensusError::CheckpointMismatch))
                .collect()
        };
        let frontier = cp.frontier.iter().map(index).collect::<Result<Vec<_>, _>>()?;
        let found = cp.found.iter().map(index).collect::<Result<Vec<_>, _>>()?;
        census.frontier = frontier;
        census.found = found;
        census.next = cp.next;
        Ok(census)
    }

    pub fn checkpoint(&self) -> CensusCheckpoint {
        let perms = |ts: &Vec<u32>| ts.iter().map(|&i| self.table.element(i as usize).clone()).collect();
        CensusCheckpoint {
            group_order: self.group.order(),
            options: self.opts,
            frontier: self.frontier.iter().map(perms).collect(),
            next: self.next,
            found: self.found.iter().map(perms).collect(),
        }
    }

    pub fn group(&self) -> &Rc<FiniteGroup> {
        &self.group
    }

    /// `(explored, total)` frontier subtrees.
    pub fn progress(&self) -> (usize, usize) {
        (self.next, self.frontier.len())
    }

    pub fn is_finished(&self) -> bool {
        self.next == self.frontier.len()
    }

    /// Number of tuples found so far (inner classes, or raw tuples when not
    /// reducing).
    pub fn found_len(&self) -> usize {
        self.found.len()
    }

    /// Explores pending subtrees until done or until `stop` returns true
    /// between subtrees. Returns whether the search is complete.
    pub fn run(&mut self, stop: &mut dyn FnMut() -> bool) -> bool {
        while self.next < self.frontier.len() {
            if stop() {
                return false;
            }
            let node = self.node_from(&self.frontier[self.next].clone());
            self.explore(node);
            self.next += 1;
        }
        true
    }

    fn right_table(&mut self, t: u32) -> &[u32] {
        if self.right[t as usize].is_none() {
            let tp = self.table.element(t as usize).clone();
            let tab = (0..self.table.len())
                .map(|x| self.table.index_of(&self.table.element(x).then(&tp)).expect("closed") as u32)
                .collect();
            self.right[t as usize] = Some(tab);
        }
        self.right[t as usize].as_deref().expect("filled")
    }

    fn centralizer(&mut self, t: u32) -> &Bits {
        if self.cent[t as usize].is_none() {
            let n = self.table.len();
            self.right_table(t);
            let tab = self.right[t as usize].as_deref().expect("filled");
            let mut c = Bits::with_capacity(n);
            for x in 0..n {
                // t·x = (x⁻¹·t)⁻¹
                if tab[x] == self.inv[tab[self.inv[x] as usize] as usize] {
                    c.insert(x);
                }
            }
            self.cent[t as usize] = Some(c);
        }
        self.cent[t as usize].as_ref().expect("filled")
    }

    /// Subgroup generated by involutions, as a bitset.
    fn closure(&mut self, gens: &[u32]) -> Bits {
        for &g in gens {
            self.right_table(g);
        }
        let tabs: Vec<&[u32]> = gens.iter().map(|&g| self.right[g as usize].as_deref().expect("filled")).collect();
        let mut seen = Bits::with_capacity(self.table.len());
        seen.insert(self.identity as usize);
        let mut queue = vec![self.identity];
        let mut head = 0;
        while head < queue.len() {
            let x = queue[head] as usize;
            head += 1;
            for tab in &tabs {
                let y = tab[x];
                if !seen.put(y as usize) {
                    queue.push(y);
                }
            }
        }
        seen
    }

    /// Subgroup generated by arbitrary elements.
    fn general_closure(&self, gens: &[u32]) -> Bits {
        let perms: Vec<&Perm> = gens.iter().map(|&g| self.table.element(g as usize)).collect();
        let mut seen = Bits::with_capacity(self.table.len());
        seen.insert(self.identity as usize);
        let mut queue = vec![self.identity];
        let mut head = 0;
        while head < queue.len() {
            let x = self.table.element(queue[head] as usize);
            head += 1;
            for p in &perms {
                let y = self.table.index_of(&x.then(p)).expect("closed");
                if !seen.put(y) {
                    queue.push(y as u32);
                }
            }
        }
        seen
    }

    fn generators_of(&self, s: &Bits) -> Vec<Perm> {
        let mut gens = Vec::new();
        let mut span = Bits::with_capacity(self.table.len());
        span.insert(self.identity as usize);
        for x in s.ones() {
            if !span.contains(x) {
                gens.push(x as u32);
                span = self.general_closure(&gens);
                if span.count_ones(..) == s.count_ones(..) {
                    break;
                }
            }
        }
        gens.iter().map(|&g| self.table.element(g as usize).clone()).collect()
    }

    /// Least element of each orbit of `acting` on `cands` by conjugation.
    fn orbit_reps(&self, cands: &Bits, acting: &[Perm]) -> Vec<u32> {
        let mut seen = Bits::with_capacity(self.table.len());
        let mut reps = Vec::new();
        for u in cands.ones() {
            if seen.contains(u) {
                continue;
            }
            reps.push(u as u32);
            seen.insert(u);
            let mut stack = vec![u];
            while let Some(x) = stack.pop() {
                let xp = self.table.element(x);
                for s in acting {
                    let y = self.table.index_of(&xp.conjugate_by(s)).expect("closed");
                    if !seen.put(y) {
                        stack.push(y);
                    }
                }
            }
        }
        reps
    }

    fn candidates(&self, allowed: &Bits, acting: &Bits, whole: bool) -> Vec<u32> {
        let mut cands = self.involutions.clone();
        cands.intersect_with(allowed);
        if !self.opts.reduce {
            return cands.ones().map(|x| x as u32).collect();
        }
        let gens = if whole {
            self.group.generators().to_vec()
        } else {
            self.generators_of(acting)
        };
        self.orbit_reps(&cands, &gens)
    }

    fn full(&self) -> Bits {
        let mut b = Bits::with_capacity(self.table.len());
        b.insert_range(..);
        b
    }

    fn initial_frontier(&mut self) -> Vec<Vec<u32>> {
        let mut out = Vec::new();
        if self.opts.rank_max < 2 {
            return out;
        }
        let full = self.full();
        let firsts = self.candidates(&full, &full, true);
        for t1 in firsts {
            let c1 = self.centralizer(t1).clone();
            for t2 in self.candidates(&full, &c1, false) {
                if t2 == t1 || (!self.opts.allow_degenerate && c1.contains(t2 as usize)) {
                    continue;
                }
                out.push(vec![t1, t2]);
            }
        }
        out
    }

    fn node_from(&mut self, tuple: &[u32]) -> Node {
        let m = tuple.len();
        let iv = (0..m).map(|j| self.closure(&tuple[j..])).collect();
        let mut cent = self.full();
        let mut cent_before_last = self.full();
        for (j, &t) in tuple.iter().enumerate() {
            let c = self.centralizer(t).clone();
            if j + 1 < m {
                cent_before_last.intersect_with(&c);
            }
            cent.intersect_with(&c);
        }
        Node {
            tuple: tuple.to_vec(),
            iv,
            cent,
            cent_before_last,
        }
    }

    fn explore(&mut self, node: Node) {
        let m = node.tuple.len();
        let order = self.table.len();
        if node.iv[0].count_ones(..) == order {
            if m >= self.opts.rank_min {
                self.found.push(node.tuple);
            }
            return;
        }
        if m >= self.opts.rank_max {
            return;
        }
        let last = node.tuple[m - 1];
        let cands = self.candidates(&node.cent_before_last, &node.cent, false);
        for u in cands {
            if node.iv[0].contains(u as usize) {
                continue;
            }
            if !self.opts.allow_degenerate && self.centralizer(last).contains(u as usize) {
                continue;
            }
            let mut gens = node.tuple.clone();
            gens.push(u);
            let mut new_iv: Vec<Bits> = vec![Bits::new(); m + 1];
            new_iv[m] = self.closure(&[u]);
            let mut ok = true;
            for j in (0..m).rev() {
                // ⟨tⱼ..t_last⟩ ∩ ⟨tⱼ₊₁..u⟩ must be ⟨tⱼ₊₁..t_last⟩
                let expect = if j + 1 < m { node.iv[j + 1].count_ones(..) } else { 1 };
                if node.iv[j].intersection_count(&new_iv[j + 1]) != expect {
                    ok = false;
                    break;
                }
                new_iv[j] = self.closure(&gens[j..]);
            }
            if !ok {
                continue;
            }
            let mut cent = node.cent.clone();
            cent.intersect_with(self.centralizer(u));
            let child = Node {
                tuple: gens,
                iv: new_iv,
                cent,
                cent_before_last: node.cent.clone(),
            };
            self.explore(child);
        }
    }

    fn perms(&self, tuple: &[u32]) -> Vec<Perm> {
        tuple.iter().map(|&i| self.table.element(i as usize).clone()).collect()
    }

    /// Invariants of a tuple preserved by automorphisms: Schläfli symbol,
    /// f-vector and the order of the product of all generators.
    fn invariants(&mut self, tuple: &[u32]) -> Invariants {
        let perms = self.perms(tuple);
        let sch = perms.windows(2).map(|w| w[0].then(&w[1]).order()).collect();
        let order = self.table.len() as u128;
        let mut f = vec![1u128];
        for j in 0..tuple.len() {
            let rest: Vec<u32> = tuple.iter().enumerate().filter(|&(i, _)| i != j).map(|(_, &t)| t).collect();
            f.push(order / self.closure(&rest).count_ones(..) as u128);
        }
        f.push(1);
        let petrie = perms.iter().skip(1).fold(perms[0].clone(), |acc, p| acc.then(p)).order();
        (sch, f, petrie)
    }

    /// Merges classes related by outer automorphisms and classifies each.
    pub fn finish(&mut self) -> Result<Vec<CensusRecord>, CensusError> {
        let g = self.group.clone();
        let mut buckets: BTreeMap<(usize, Invariants), Vec<usize>> = BTreeMap::new();
        let mut reps: Vec<(Vec<u32>, Invariants)> = Vec::new();
        for tuple in self.found.clone() {
            let (sch, f, petrie) = self.invariants(&tuple);
            let key = (tuple.len(), (sch.clone(), f.clone(), petrie));
            let perms = self.perms(&tuple);
            let bucket = buckets.entry(key).or_default();
            let mut new = true;
            for &r in bucket.iter() {
                let rp = self.perms(&reps[r].0);
                if g.tuple_extends_to_automorphism(&rp, &perms)? {
                    new = false;
                    break;
                }
            }
            if new {
                bucket.push(reps.len());
                reps.push((tuple, (sch, f, petrie)));
            }
        }

        let classes = self.table.conjugacy_classes(g.generators());
        let normals = normal_subgroups_from_classes(&g, &self.table, &classes)?;
        let mut quotients = Vec::new();
        for n in normals.iter().filter(|n| n.order() > 1 && n.order() < g.order()) {
            quotients.push((Quotient::new(&g, n, self.caps.classes)?, n.order()));
        }

        let mut records = Vec::with_capacity(reps.len());
        for (tuple, (sch, f, petrie)) in &reps {
            let perms = self.perms(tuple);
            let cs = CString::with_caps(g.clone(), perms.clone(), self.caps)?;
            if !cs.verify_with(IpMode::Brute)?.is_cstring() {
                return Err(CensusError::Inconsistent);
            }
            let mut rev = perms.clone();
            rev.reverse();
            let mirrored = sch.iter().rev().eq(sch.iter())
                && f.iter().rev().eq(f.iter())
                && *petrie == rev.iter().skip(1).fold(rev[0].clone(), |acc, p| acc.then(p)).order();
            let self_dual = mirrored && g.tuple_extends_to_automorphism(&perms, &rev)?;
            let mut entries = Vec::with_capacity(quotients.len());
            for (q, n_order) in &quotients {
                entries.push(cs.image_in(q, *n_order)?.0);
            }
            records.push(CensusRecord {
                rank: tuple.len(),
                schlafli: SchlafliSymbol(sch.clone()),
                self_dual,
                unravelled: UnravelledVerdict::from_entries(entries).unravelled,
                f_vector: FVector(f.clone()),
                generators: perms,
            });
        }
        records.sort_by(|a, b| {
            (a.rank, &a.schlafli.0, &a.f_vector.0, &a.generators).cmp(&(b.rank, &b.schlafli.0, &b.f_vector.0, &b.generators))
        });
        Ok(records)
    }
}

/// Runs a complete census with default caps.
pub fn enumerate_cstrings(g: &FiniteGroup, rank_min: usize, rank_max: usize) -> Result<Vec<CensusRecord>, CensusError> {
    let opts = CensusOptions {
        rank_min,
        rank_max,
        ..CensusOptions::default()
    };
    let mut census = Census::new(Rc::new(g.clone()), opts, Caps::default())?;
    census.run(&mut || false);
    census.finish()
}

/// Counts for one column of a census row.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct CensusCell {
    pub total: usize,
    pub self_dual: usize,
    pub unravelled: usize,
}

impl CensusCell {
    fn add(&mut self, r: &CensusRecord) {
        self.total += 1;
        self.self_dual += r.self_dual as usize;
        self.unravelled += r.unravelled as usize;
    }
}

/// `i(j)[k]`: `i` strings, `j` self-dual, `k` unravelled; a bare `0` when
/// there are none.
impl fmt::Display for CensusCell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.total == 0 {
            write!(f, "0")
        } else {
            write!(f, "{}({})[{}]", self.total, self.self_dual, self.unravelled)
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CensusRow {
    pub total: CensusCell,
    pub by_rank: BTreeMap<usize, CensusCell>,
}

impl CensusRow {
    pub fn rank(&self, r: usize) -> CensusCell {
        self.by_rank.get(&r).copied().unwrap_or_default()
    }
}

pub fn census_row(records: &[CensusRecord]) -> CensusRow {
    let mut row = CensusRow::default();
    for r in records {
        row.total.add(r);
        row.by_rank.entry(r.rank).or_default().add(r);
    }
    row
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SelftestReport {
    pub reduced: usize,
    pub exhaustive: usize,
}

impl SelftestReport {
    pub fn agrees(&self) -> bool {
        self.reduced == self.exhaustive
    }
}

/// Runs the census with and without the conjugacy reduction.
pub fn census_selftest(g: &FiniteGroup) -> Result<SelftestReport, CensusError> {
    let group = Rc::new(g.clone());
    let mut counts = [0usize; 2];
    for (i, reduce) in [true, false].into_iter().enumerate() {
        let opts = CensusOptions {
            reduce,
            ..CensusOptions::default()
        };
        let mut census = Census::new(group.clone(), opts, Caps::default())?;
        census.run(&mut || false);
        counts[i] = census.finish()?.len();
    }
    Ok(SelftestReport {
        reduced: counts[0],
        exhaustive: counts[1],
    })
}
