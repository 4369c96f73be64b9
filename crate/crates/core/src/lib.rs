//! Computations in the Houghton groups `H_n`: elements, finite subgroups, centralizers
//! of finite and virtually cyclic subgroups, Brown's monoid poset, and brute-force
//! oracles.

pub mod brown;
pub mod centralizer;
mod element;
mod error;
mod map;
pub mod oracle;
mod perm;
mod point;
pub mod subgroup;

pub use element::{conjugator, CycleType, Element, ElementJson, Order};
pub use error::{Error, Result};
pub use point::{RayPoint, TranslationVector};
pub use subgroup::{partition, weyl, FiniteSubgroup};
