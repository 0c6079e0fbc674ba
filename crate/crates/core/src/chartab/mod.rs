//! Exact character tables, codegrees and the operations built on them.

mod dixon;
mod fusion;
pub mod modp;
mod table;

pub use dixon::class_matrix;
pub use fusion::{
    aut_action, character_orbit, conjugation_class_map, has_extension, induce, inertia_group,
    restrict, ClassFusion,
};
pub use table::{
    character_table, table_from_classes, CharacterTable, ClassFunction, ClassJson, CodegreeRecord,
    TableJson,
};
