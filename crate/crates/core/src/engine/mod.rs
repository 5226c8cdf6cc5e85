//! Permutation group engine.

use alloc::string::String;

use crate::ff::FieldError;
use crate::linalg::LinalgError;

pub mod cayley;
pub mod chain;
pub mod group;
pub mod matgroup;
pub mod perm;
pub mod quotient;
pub mod table;

pub use cayley::CayleyBfs;
pub use chain::{BuildOptions, StabChain};
pub use group::FiniteGroup;
pub use matgroup::{matgroup_to_permgroup, BlockAction, VectorAction};
pub use perm::{GroupElement, Perm};
pub use quotient::{quotient_images, Quotient};
pub use table::{conjugacy_classes, normal_subgroups, normal_subgroups_from_classes, ConjugacyClass, ElementTable, TABLE_CAP};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum EngineError {
    #[error("image list is not a permutation")]
    NotAPermutation,
    #[error("degree mismatch: expected {expected}, found {found}")]
    DegreeMismatch { expected: usize, found: usize },
    #[error("cannot parse permutation text `{0}`")]
    Parse(String),
    #[error("matrix is not block-diagonal or block-antidiagonal")]
    NotBlockShaped,
    #[error("matrix group does not act faithfully on the chosen points")]
    UnfaithfulAction,
    #[error("element is not in the group")]
    NotMember,
    #[error("subgroup is not normal")]
    NotNormal,
    #[error("{what} exceeds cap ({size} > {cap})")]
    CapExceeded {
        what: &'static str,
        size: u128,
        cap: u128,
    },
    #[error("tuple does not generate the group")]
    NotGenerating,
    #[error("group order could not be certified")]
    Uncertified,
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}
