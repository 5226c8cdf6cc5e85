//! Finite fields, permutation groups and string C-groups.
//!
//! The crate is `no_std` and needs only `alloc`.

#![no_std]

extern crate alloc;

pub mod census;
pub mod constructions;
pub mod cstring;
pub mod engine;
pub mod ff;
pub mod linalg;
pub mod polytope;

/// Resource limits shared by the expensive operations.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Caps {
    /// Largest group enumerated for a subgroup intersection.
    pub intersection: usize,
    /// Largest group fully tabulated for conjugacy classes.
    pub classes: usize,
    /// Largest group searched by the census.
    pub census: usize,
    /// Largest chamber graph explored.
    pub bfs: usize,
    /// Largest chamber graph written out.
    pub export: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Self {
            intersection: 2_000_000,
            classes: 1_000_000,
            census: 50_000,
            bfs: 10_000_000,
            export: 100_000,
        }
    }
}
