//! Exact computations with the nil affine Hecke algebra and the product
//! 2-representation models built from it.

pub mod gmodels;
pub mod l1l1;
pub mod linalg;
pub mod matrix_alg;
pub mod mutation;
pub mod nilhecke;
pub mod parse;
pub mod poly;
pub mod sample;
pub mod suites;

pub use mutation::{with_mutation, Mutation};
pub use nilhecke::{HeckeError, NilHecke, Perm};
pub use poly::{Monomial, PolyError, Polynomial, Scalar, VarSet};
