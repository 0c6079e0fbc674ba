//! Permutations, Schreier-Sims groups, conjugacy classes and normal structure.

mod classes;
mod group;
mod permutation;
mod structure;

pub use classes::{conjugacy_classes, ClassData};
pub use group::PermGroup;
pub use permutation::Permutation;
