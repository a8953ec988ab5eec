//! Exact symbolic engine for filtered bundles.
//!
//! A filtered bundle is described by a coordinate frame (base coordinates of
//! weight zero, fiber coordinates with positive multi-weights) and an atlas of
//! graded-affine transition maps whose coefficients are rational functions of
//! the base coordinates. The crate validates such atlases and implements the
//! canonical constructions on them: associated graded, tangent, vertical and
//! dual vertical lifts, linearisation, total weight, jet prolongation, rank
//! extraction for filtered polynomial algebras, and the affine-tower view.

pub mod bundle;
pub mod field;
pub mod frontend;
pub mod weighted;
pub mod functor;
pub mod graded;
pub mod tower;
