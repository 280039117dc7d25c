//! Permutation arithmetic and enumerated-group infrastructure.
//!
//! Conventions used everywhere in this crate:
//!
//! * products compose right-to-left: `(p * q)(i) = p(q(i))`;
//! * conjugation is `x^g = g^-1 * x * g`;
//! * elements of an enumerated group are sorted lexicographically by
//!   image list, which makes the identity id 0 and every downstream
//!   report deterministic.

pub mod ops;
pub mod perm;
pub mod set;
pub mod table;

pub use ops::{
    cyclic_span, direct_product, greedy_generators, is_subgroup_set, normalizer_of_set,
    quotient_group, right_transversal, subgroup_span, CosetTransversal,
};
pub use perm::{parse_permutation, Permutation};
pub use set::ElementSet;
pub use table::{
    parse_group_text, write_group_text, ElemId, Group, GroupTable, DEFAULT_CLOSURE_CAP,
};
