//! Tensor products of irreducible sl(2)-modules in characteristic 3.
//!
//! Two independent routes decompose a product of two small modules into
//! indecomposable summands: a structural engine working on explicit matrices
//! over GF(3^k) ([`decompose`]), and a closed-form case table ([`oracle`]).
//! The [`cli`] module cross-checks them pair by pair.

pub mod canon;
pub mod cli;
pub mod decompose;
pub mod descriptor;
pub mod field;
pub mod linalg;
pub mod oracle;
pub mod poly;
pub mod sl2;
pub mod tensor;
