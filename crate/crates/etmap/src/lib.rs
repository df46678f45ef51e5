pub mod classes;
pub mod error;
pub mod field;
pub mod group;
pub mod map;
pub mod parent;
pub mod perm;
pub mod realize;
pub mod suites;

pub use error::{Error, Result};
pub use group::GroupTable;
pub use perm::{Perm, PermGroupSpec};
