//! Face counts and chamber graphs of the polytope attached to a C-string.
//!
//! Chambers are group elements; chamber `g` is `i`-adjacent to `g·tᵢ`.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt::Write as _;

use crate::cstring::{CString, CStringError};
use crate::engine::{CayleyBfs, EngineError};

/// `[1, f₁, …, fₙ, 1]` with `fⱼ = |G| / |⟨tᵢ : i ≠ j⟩|`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FVector(pub Vec<u128>);

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiscStructure {
    /// Number of chambers at distance `1, 2, …` from the base chamber.
    pub layers: Vec<usize>,
}

impl DiscStructure {
    pub fn diameter(&self) -> usize {
        self.layers.len()
    }

    pub fn chambers(&self) -> usize {
        1 + self.layers.iter().sum::<usize>()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GraphFormat {
    Dot,
    EdgeList,
}

pub fn f_vector(cs: &CString) -> Result<FVector, CStringError> {
    let n = cs.rank();
    let full = (1u32 << n) - 1;
    let order = cs.group().order();
    let mut f = Vec::with_capacity(n + 2);
    f.push(1);
    for j in 0..n {
        let sub = cs.parabolic(full & !(1 << j))?;
        f.push(order / sub.order());
    }
    f.push(1);
    Ok(FVector(f))
}

fn chamber_bfs(cs: &CString, cap: usize) -> Result<CayleyBfs, CStringError> {
    let g = cs.group();
    if !g.is_certified() {
        return Err(EngineError::Uncertified.into());
    }
    if g.order() > cap as u128 {
        return Err(EngineError::CapExceeded {
            what: "chamber graph",
            size: g.order(),
            cap: cap as u128,
        }
        .into());
    }
    Ok(CayleyBfs::run(&g.base(), cs.generators(), cap)?)
}

pub fn disc_structure(cs: &CString, cap: usize) -> Result<DiscStructure, CStringError> {
    let bfs = chamber_bfs(cs, cap)?;
    let mut layers = bfs.layer_sizes();
    layers.remove(0);
    Ok(DiscStructure { layers })
}

/// Writes the chamber graph with vertices numbered in BFS discovery order
/// and edges labelled by generator position, counted from 1.
pub fn export_chamber_graph(cs: &CString, format: GraphFormat, cap: usize) -> Result<String, CStringError> {
    let bfs = chamber_bfs(cs, cap)?;
    let mut out = String::new();
    if format == GraphFormat::Dot {
        out.push_str("graph {\n");
    }
    for u in 0..bfs.len() {
        for (i, t) in cs.generators().iter().enumerate() {
            let v = bfs.step(u, t).expect("closed chamber graph");
            if u >= v {
                continue;
            }
            let _ = match format {
                GraphFormat::Dot => writeln!(out, "  v{u} -- v{v} [label=\"{}\"];", i + 1),
                GraphFormat::EdgeList => writeln!(out, "{u} {v} {}", i + 1),
            };
        }
    }
    if format == GraphFormat::Dot {
        out.push_str("}\n");
    }
    Ok(out)
}
