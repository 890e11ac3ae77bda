//! Space-curve toolkit: Frenet apparatus estimation, curve reconstruction
//! from curvature and torsion, Mannheim partner construction and
//! generating-curve analysis.

// `!(x < tol)` is used on purpose: it rejects NaN along with large values.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod curvespace;
pub mod generating;
pub mod numeric;
pub mod mannheim;
pub mod reconstruct;
