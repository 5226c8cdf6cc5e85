//! Coxeter groups of types B and D as signed permutations, and a degree-27
//! permutation example.

use alloc::rc::Rc;
use alloc::vec::Vec;

use super::ConstructionError;
use crate::cstring::CString;
use crate::engine::{normal_subgroups, FiniteGroup, Perm, TABLE_CAP};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CoxeterFamily {
    B,
    D,
}

impl CoxeterFamily {
    pub fn order(self, n: usize) -> u128 {
        let fact: u128 = (1..=n as u128).product();
        match self {
            CoxeterFamily::B => (1u128 << n) * fact,
            CoxeterFamily::D => (1u128 << (n - 1)) * fact,
        }
    }
}

impl core::fmt::Display for CoxeterFamily {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.write_str(match self {
            CoxeterFamily::B => "B",
            CoxeterFamily::D => "D",
        })
    }
}

/// A Coxeter group acting on `±1, …, ±n` (point `i` is `+eᵢ`, `i + n` is
/// `−eᵢ`) together with its Coxeter generators.
pub struct CoxeterGroup {
    pub family: CoxeterFamily,
    pub rank: usize,
    pub group: Rc<FiniteGroup>,
    pub generators: Vec<Perm>,
    /// The Coxeter generators ordered along the diagram, when the diagram is
    /// a path: always for B, only `n = 3` for D.
    pub string: Option<CString>,
}

fn swap_coords(n: usize, i: usize, j: usize, signed: bool) -> Perm {
    let mut images: Vec<u32> = (0..2 * n as u32).collect();
    let (ip, in_, jp, jn) = (i, i + n, j, j + n);
    if signed {
        images.swap(ip, jn);
        images.swap(in_, jp);
    } else {
        images.swap(ip, jp);
        images.swap(in_, jn);
    }
    Perm::from_images(images).expect("coordinate swaps are permutations")
}

pub fn coxeter_group(family: CoxeterFamily, n: usize) -> Result<CoxeterGroup, ConstructionError> {
    if n < 3 {
        return Err(ConstructionError::RankTooSmall(n));
    }
    let mut gens: Vec<Perm> = (0..n - 1).map(|i| swap_coords(n, i, i + 1, false)).collect();
    gens.push(match family {
        CoxeterFamily::B => {
            let mut images: Vec<u32> = (0..2 * n as u32).collect();
            images.swap(n - 1, 2 * n - 1);
            Perm::from_images(images)?
        }
        CoxeterFamily::D => swap_coords(n, n - 2, n - 1, true),
    });
    let group = Rc::new(FiniteGroup::with_known_order(2 * n, gens.clone(), family.order(n))?);
    if !group.is_certified() {
        return Err(ConstructionError::Uncertified);
    }
    let string = match (family, n) {
        (CoxeterFamily::B, _) => Some(CString::new(group.clone(), gens.clone())?),
        (CoxeterFamily::D, 3) => Some(CString::new(
            group.clone(),
            alloc::vec![gens[1].clone(), gens[0].clone(), gens[2].clone()],
        )?),
        _ => None,
    };
    Ok(CoxeterGroup {
        family,
        rank: n,
        group,
        generators: gens,
        string,
    })
}

/// Cycles of the four degree-27 generators, points counted from 1.
pub const EXAMPLE55_CYCLES: [&str; 4] = [
    "(4,10)(7,15)(9,17)(12,20)(14,22)(16,23)(19,25)(21,26)(24,27)",
    "(2,4)(5,10)(6,9)(11,17)(12,15)(13,16)(18,23)(19,22)(24,26)",
    "(2,3)(5,8)(7,9)(11,13)(12,16)(15,17)(19,21)(20,23)(25,26)",
    "(1,3)(2,6)(4,9)(5,11)(7,14)(10,17)(12,19)(15,22)(20,25)",
];

pub struct Example55 {
    pub group: Rc<FiniteGroup>,
    pub string: CString,
    /// Every normal subgroup, trivial and full included.
    pub normals: Vec<FiniteGroup>,
}

pub fn example55_group() -> Result<Example55, ConstructionError> {
    example_from_cycles(&EXAMPLE55_CYCLES)
}

pub(crate) fn example_from_cycles(cycles: &[&str]) -> Result<Example55, ConstructionError> {
    let gens = cycles
        .iter()
        .map(|c| Perm::parse_cycles(27, c))
        .collect::<Result<Vec<_>, _>>()?;
    let group = Rc::new(FiniteGroup::new(27, gens.clone())?);
    if !group.is_certified() {
        return Err(ConstructionError::Uncertified);
    }
    let normals = normal_subgroups(&group, TABLE_CAP)?;
    let string = CString::new(group.clone(), gens)?;
    Ok(Example55 {
        group,
        string,
        normals,
    })
}
