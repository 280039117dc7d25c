//! Constructors for the named group families and the group-spec parser.

pub mod construct;
pub mod field;
pub mod spec;

pub use construct::{alternating, build_group, cyclic, dihedral, psl2, psl3_3, symmetric};
pub use field::FiniteField;
pub use spec::GroupSpec;
