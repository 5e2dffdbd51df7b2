//! Numerical potential theory in `R^d`: fundamental kernels, measures and
//! their counting functions and potentials, differences of subharmonic
//! functions, Nevanlinna characteristics, and checkers for integral bounds
//! of `U^+` against measures with bounded counting functions.

// `!(x > 0.0)` style guards deliberately reject NaN along with bad values
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod criterion;
pub mod dsh;
pub mod error;
pub mod ext;
pub mod kernels;
pub mod measure;
pub mod nevanlinna;
pub mod point;
pub mod quadrature;
pub mod scenario;
