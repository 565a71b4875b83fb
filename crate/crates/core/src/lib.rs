//! Finite groups, finite rings and group rings, their ideals, and an
//! exhaustive checker for ideal-theoretic statements about group rings.

pub mod cache;
pub mod caps;
pub mod elements;
pub mod error;
pub mod expr;
pub mod grid;
pub mod group;
pub mod ideal;
pub mod maps;
pub mod registry;
pub mod ring;
pub mod span;

pub use caps::Caps;
pub use elements::{Elem, ElementSet};
pub use error::{Error, Result};
pub use expr::{parse_expr, parse_group, GroupExpr, RingExpr};
pub use group::{make_group, GroupTable, Subgroup};
pub use ideal::{Ideal, Property};
pub use ring::{make_ring, FiniteRing};
