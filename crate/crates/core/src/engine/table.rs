//! Fully enumerated groups: element index, conjugacy classes and the lattice
//! of normal subgroups.

use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;

use hashbrown::HashMap;

use super::group::FiniteGroup;
use super::perm::Perm;
use super::EngineError;

/// Default cap on full enumeration.
pub const TABLE_CAP: usize = 1_000_000;

pub struct ElementTable {
    elems: Vec<Perm>,
    index: HashMap<Perm, u32>,
}

#[derive(Clone, Debug)]
pub struct ConjugacyClass {
    /// The least member in the lexicographic order of image arrays.
    pub representative: Perm,
    pub size: usize,
    pub order: u64,
    /// Element indices into the table.
    pub members: Vec<u32>,
}

impl ElementTable {
    pub fn new(g: &FiniteGroup, cap: usize) -> Result<Self, EngineError> {
        if g.order() > cap as u128 {
            return Err(EngineError::CapExceeded {
                what: "element enumeration",
                size: g.order(),
                cap: cap as u128,
            });
        }
        let elems = g.enumerate(cap)?;
        let index = elems
            .iter()
            .enumerate()
            .map(|(i, x)| (x.clone(), i as u32))
            .collect();
        Ok(Self { elems, index })
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn elements(&self) -> &[Perm] {
        &self.elems
    }

    pub fn element(&self, i: usize) -> &Perm {
        &self.elems[i]
    }

    pub fn index_of(&self, x: &Perm) -> Option<usize> {
        self.index.get(x).map(|&i| i as usize)
    }

    pub fn mul(&self, i: usize, j: usize) -> usize {
        self.index_of(&self.elems[i].then(&self.elems[j]))
            .expect("closed under products")
    }

    pub fn involutions(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.elems[i].is_involution()).collect()
    }

    /// Conjugacy classes sorted by element order, then class size, then
    /// representative.
    pub fn conjugacy_classes(&self, gens: &[Perm]) -> Vec<ConjugacyClass> {
        let mut class_of = vec![u32::MAX; self.len()];
        let mut classes = Vec::new();
        for start in 0..self.len() {
            if class_of[start] != u32::MAX {
                continue;
            }
            let id = classes.len() as u32;
            class_of[start] = id;
            let mut members = vec![start as u32];
            let mut head = 0;
            while head < members.len() {
                let x = &self.elems[members[head] as usize];
                head += 1;
                for g in gens {
                    let y = self.index_of(&x.conjugate_by(g)).expect("closed under conjugation");
                    if class_of[y] == u32::MAX {
                        class_of[y] = id;
                        members.push(y as u32);
                    }
                }
            }
            let representative = members
                .iter()
                .map(|&m| &self.elems[m as usize])
                .min()
                .expect("nonempty class")
                .clone();
            members.sort_unstable();
            classes.push(ConjugacyClass {
                order: representative.order(),
                size: members.len(),
                representative,
                members,
            });
        }
        classes.sort_by(|a, b| {
            (a.order, a.size, &a.representative).cmp(&(b.order, b.size, &b.representative))
        });
        classes
    }
}

pub fn conjugacy_classes(g: &FiniteGroup, cap: usize) -> Result<Vec<ConjugacyClass>, EngineError> {
    Ok(ElementTable::new(g, cap)?.conjugacy_classes(g.generators()))
}

/// All normal subgroups, including the trivial group and `g`, sorted by
/// order. Each is a union of classes; the normal closures of single classes
/// are joined pairwise until no new subgroup appears.
pub fn normal_subgroups(g: &FiniteGroup, cap: usize) -> Result<Vec<FiniteGroup>, EngineError> {
    let table = ElementTable::new(g, cap)?;
    let classes = table.conjugacy_classes(g.generators());
    normal_subgroups_from_classes(g, &table, &classes)
}

pub fn normal_subgroups_from_classes(
    g: &FiniteGroup,
    table: &ElementTable,
    classes: &[ConjugacyClass],
) -> Result<Vec<FiniteGroup>, EngineError> {
    // A normal subgroup contains a class iff it contains its representative.
    let signature = |n: &FiniteGroup| -> Vec<bool> {
        classes
            .iter()
            .map(|c| n.chain().contains(&c.representative))
            .collect()
    };
    let mut found: Vec<FiniteGroup> = Vec::new();
    let mut seen: BTreeSet<Vec<bool>> = BTreeSet::new();
    let mut push = |n: FiniteGroup, found: &mut Vec<FiniteGroup>| {
        if seen.insert(signature(&n)) {
            found.push(n);
        }
    };
    push(FiniteGroup::trivial(g.degree()), &mut found);
    for c in classes {
        if c.representative.is_identity() {
            continue;
        }
        let n = g.subgroup_from_elements(c.members.iter().map(|&m| table.element(m as usize)))?;
        push(n, &mut found);
    }
    let mut i = 0;
    while i < found.len() {
        for j in 0..i {
            let n = g.subgroup_from_elements(
                found[i].generators().iter().chain(found[j].generators()),
            )?;
            push(n, &mut found);
        }
        i += 1;
    }
    found.sort_by_key(|n| n.order());
    Ok(found)
}
