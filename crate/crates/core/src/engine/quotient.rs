//! Images in `G/N` for a normal subgroup `N`.
//!
//! The orbits of a normal subgroup are blocks of imprimitivity, so `G` acts on
//! them with a kernel containing `N`. The kernel is exactly `N` once the image
//! order reaches `|G|/|N|`. When that fails, small groups fall back to the
//! action on right cosets of `N`.

use alloc::vec;
use alloc::vec::Vec;

use super::group::FiniteGroup;
use super::perm::Perm;
use super::table::ElementTable;
use super::EngineError;

enum Map {
    Blocks { block_of: Vec<u32>, reps: Vec<u32> },
    Cosets { table: ElementTable, coset_of: Vec<u32>, reps: Vec<u32> },
}

pub struct Quotient {
    group: FiniteGroup,
    map: Map,
}

impl Quotient {
    /// `G/N`, which must be exact: both inputs certified, `N` normal in `G`.
    pub fn new(g: &FiniteGroup, n: &FiniteGroup, cap: usize) -> Result<Self, EngineError> {
        if !g.is_certified() || !n.is_certified() {
            return Err(EngineError::Uncertified);
        }
        for a in n.generators() {
            for s in g.generators() {
                if !n.chain().contains(&a.conjugate_by(s)) {
                    return Err(EngineError::NotNormal);
                }
            }
        }
        let index = g.order() / n.order();
        if let Some(q) = Self::by_blocks(g, n, index)? {
            return Ok(q);
        }
        Self::by_cosets(g, n, index, cap)
    }

    fn by_blocks(g: &FiniteGroup, n: &FiniteGroup, index: u128) -> Result<Option<Self>, EngineError> {
        let d = g.degree();
        let mut block_of = vec![u32::MAX; d];
        let mut reps = Vec::new();
        for start in 0..d as u32 {
            if block_of[start as usize] != u32::MAX {
                continue;
            }
            let id = reps.len() as u32;
            reps.push(start);
            block_of[start as usize] = id;
            let mut stack = vec![start];
            while let Some(x) = stack.pop() {
                for a in n.generators() {
                    let y = a.apply(x);
                    if block_of[y as usize] == u32::MAX {
                        block_of[y as usize] = id;
                        stack.push(y);
                    }
                }
            }
        }
        let map = Map::Blocks { block_of, reps };
        let images: Vec<Perm> = g.generators().iter().map(|x| apply_map(&map, x)).collect();
        let group = FiniteGroup::with_known_order(num_points(&map), images, index)?;
        if group.order() == index && group.is_certified() {
            Ok(Some(Self { group, map }))
        } else {
            Ok(None)
        }
    }

    fn by_cosets(g: &FiniteGroup, n: &FiniteGroup, index: u128, cap: usize) -> Result<Self, EngineError> {
        let table = ElementTable::new(g, cap)?;
        let n_elems = n.enumerate(cap)?;
        let mut coset_of = vec![u32::MAX; table.len()];
        let mut reps = Vec::new();
        for i in 0..table.len() {
            if coset_of[i] != u32::MAX {
                continue;
            }
            let id = reps.len() as u32;
            reps.push(i as u32);
            for m in &n_elems {
                let j = table.index_of(&m.then(table.element(i))).expect("closed");
                coset_of[j] = id;
            }
        }
        debug_assert_eq!(reps.len() as u128, index);
        let map = Map::Cosets {
            table,
            coset_of,
            reps,
        };
        let images: Vec<Perm> = g.generators().iter().map(|x| apply_map(&map, x)).collect();
        let group = FiniteGroup::with_known_order(num_points(&map), images, index)?;
        Ok(Self { group, map })
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn image(&self, x: &Perm) -> Perm {
        apply_map(&self.map, x)
    }
}

fn num_points(map: &Map) -> usize {
    match map {
        Map::Blocks { reps, .. } | Map::Cosets { reps, .. } => reps.len(),
    }
}

fn apply_map(map: &Map, x: &Perm) -> Perm {
    let images = match map {
        Map::Blocks { block_of, reps } => reps
            .iter()
            .map(|&r| block_of[x.apply(r) as usize])
            .collect(),
        Map::Cosets {
            table,
            coset_of,
            reps,
        } => reps
            .iter()
            .map(|&r| {
                let y = table.element(r as usize).then(x);
                coset_of[table.index_of(&y).expect("element of the group")]
            })
            .collect(),
    };
    Perm::from_images_unchecked(images)
}

/// The quotient group together with the images of `xs`.
pub fn quotient_images(
    g: &FiniteGroup,
    n: &FiniteGroup,
    xs: &[Perm],
    cap: usize,
) -> Result<(FiniteGroup, Vec<Perm>), EngineError> {
    let q = Quotient::new(g, n, cap)?;
    let imgs = xs.iter().map(|x| q.image(x)).collect();
    Ok((q.group, imgs))
}
