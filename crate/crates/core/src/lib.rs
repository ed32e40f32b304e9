//! Shadows of convex polytopes, hiding one body behind another, and the
//! Minkowski interpolations that maximize volume while still hiding.
//!
//! ```
//! use umbra::directions::DirectionGrid;
//! use umbra::geometry::unit_tetrahedron;
//! use umbra::shadow_analysis::hides_behind;
//!
//! let t = unit_tetrahedron();
//! let grid = DirectionGrid::fibonacci(1_000, 0).unwrap();
//! assert!(hides_behind(&t.reflect().scale(0.5), &t, &grid).verdict.hides());
//! ```
//!
//! The guide in `book/` walks through each module.

// `!(x > 0.0)` rejects NaN along with the out-of-range values.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod directions;
pub mod error;
pub mod geometry;
pub mod io;
pub mod lp;
pub mod minkowski;
pub mod mixed_volumes;
pub mod optimizer;
pub mod polynomial;
pub mod projection;
pub mod scenarios;
pub mod shadow_analysis;
pub mod svg;

pub use error::{Error, Result};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/bodies.md")]
    mod bodies {}
    #[doc = include_str!("../../../book/src/shadows.md")]
    mod shadows {}
    #[doc = include_str!("../../../book/src/hiding.md")]
    mod hiding {}
    #[doc = include_str!("../../../book/src/minkowski.md")]
    mod minkowski {}
    #[doc = include_str!("../../../book/src/mixed-volumes.md")]
    mod mixed_volumes {}
    #[doc = include_str!("../../../book/src/optimizing.md")]
    mod optimizing {}
    #[doc = include_str!("../../../book/src/scenarios.md")]
    mod scenarios {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
