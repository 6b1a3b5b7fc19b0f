//! Quadratic-space tools on the norm form: maps, subspaces, elementary
//! isometries and Witt extension.

mod linmap;
mod reflect;
mod stab;
mod subspace;
mod witt;

pub use linmap::{Evidence, LinMap};
pub use reflect::{eichler, hyperbolic_scaling, reflection};
pub use stab::{random_orthogonal_stab1, represent_norm, unit_complement};
pub use subspace::Subspace;
pub(crate) use witt::witt_extend_in_order_unverified;
pub use witt::{
    witt_extend, witt_extend_from, witt_extend_in_order, witt_extend_with, PartialIsometry,
    DEFAULT_HEIGHT_CAP,
};

/// `O(C, n)` membership.
pub fn is_isometry(m: &LinMap) -> bool {
    m.is_isometry()
}

pub fn orthogonal_complement(s: &Subspace) -> Subspace {
    s.orthogonal_complement()
}
