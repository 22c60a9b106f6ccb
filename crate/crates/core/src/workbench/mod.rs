//! Serialization, built-in models, random generation, and graph export.

pub mod builtins;
pub mod dot;
pub mod io;
pub mod random;

pub use builtins::{algebra as builtin_algebra, category as builtin_category};
pub use dot::export_dot;
pub use io::{
    load_category_spec, load_spec, load_two_cells, save_category_spec, save_spec, SpecError,
};
pub use random::{random_algebra, RandomAlgebraParams, RandomParamsError};
