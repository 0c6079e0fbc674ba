pub mod builders;
pub mod chartab;
pub mod config;
pub mod cyclo;
pub mod error;
pub mod lietables;
pub mod perm;
pub mod qian;

pub use config::Config;
pub use error::{Error, Result};
pub use perm::{conjugacy_classes, ClassData, PermGroup, Permutation};
