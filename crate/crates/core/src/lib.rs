//! Barut-Girardello coherent states of SU(1,1) and U(N,1) in the analytic
//! representation: special functions, truncated algebra representations, a
//! Schwinger-boson cross-check, measure densities and radial quadrature.

// `!(x > 0.0)` is used on purpose: it rejects NaN as well.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod algebra_su11;
pub mod algebra_un1;
pub mod fock;
pub mod measures;
pub mod quadrature;
pub mod specfun;
