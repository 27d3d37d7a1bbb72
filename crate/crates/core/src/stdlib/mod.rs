//! Relations over the standard data types.

pub mod arith;
pub mod list;
pub mod result;
pub mod tree;
