//! Exact computation of mixed stratifying systems, mixed stratified algebra
//! certificates and Ringel duals for quiver algebras with relations.
//!
//! Conventions: an arrow `u -> v` lies in `e_u A e_v`, paths compose left to
//! right, and modules are right modules given as representations where an
//! arrow `u -> v` acts by a `dim M_v x dim M_u` matrix on column vectors.

pub mod algebra;
pub mod corpus;
pub mod error;
pub mod exactlin;
pub mod homext;
pub mod module;
pub mod ringel;
pub mod strata;
pub mod systems;

pub use algebra::{Algebra, Path, Quiver, Relation};
pub use error::{Error, Result};
pub use exactlin::{Field, Matrix, Scalar};
pub use module::{Module, ModuleMap};
