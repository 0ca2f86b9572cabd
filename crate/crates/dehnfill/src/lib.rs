//! Classification of Dehn fillings of torus-knot exteriors and the
//! canopies of their oriented Heegaard trees.
//!
//! The exterior `X` of a non-trivial `(p,q)`-torus knot is a Seifert
//! fibered space over the disk with two exceptional fibers. Filling the
//! boundary along a slope `r/s` produces `S³`, a lens space, a connected
//! sum of two lens spaces, or a small Seifert fibered space, depending only
//! on the intersection number `a = pqs − r` of the filling slope with the
//! regular-fiber slope `pq/1`. On top of that classification, this crate
//! computes how the Heegaard structure changes at each slope: the genus of
//! the filled manifold, which Heegaard surfaces are new, which old ones
//! destabilize or become isotopic or flip, and the canopy (the leaf-bearing
//! crown) of the oriented Heegaard tree, exportable as DOT or JSON.
//!
//! Modules follow the pipeline:
//!
//! - [`slope`]: exact slope arithmetic, lines and lines-of-lines in the
//!   Farey graph, unimodular changes of basis;
//! - [`seifert`]: exceptional fibers, the fiber-flip criterion
//!   `b ≡ ±1 (mod a)`, and the partition calculus for oriented vertical
//!   splittings;
//! - [`torus_knot`]: admissibility conditions and the filling
//!   classification;
//! - [`lens`]: lens space normal forms, homeomorphism, torus flips, and
//!   the four-surface distinctness test for connected sums;
//! - [`canopy`]: case dispatch and canopy graph construction;
//! - [`phenomena`]: per-slope phenomena reports, the core trichotomy,
//!   slope surveys, and the swap-diagram fixture.
//!
//! All arithmetic is exact and arbitrary-precision; every operation is
//! pure, so values can be shared freely across threads.
//!
//! ```
//! use dehnfill::{Slope, TorusKnot};
//!
//! let knot = TorusKnot::new(9, 7).unwrap();
//! let alpha: Slope = "64/1".parse().unwrap();
//! let filled = knot.moser_classify(&alpha);
//! assert_eq!(filled.to_string(), "L(64,49)");
//!
//! let canopy = dehnfill::canopy::build_canopy(&knot, &alpha).unwrap();
//! assert_eq!(canopy.vertex_count(), 3);
//! assert_eq!(canopy.min_leaf_genus(), 1.into());
//! ```

#![cfg_attr(not(any(test, feature = "std")), no_std)]

extern crate alloc;

pub mod canopy;
pub mod lens;
pub mod phenomena;
pub mod seifert;
pub mod slope;
pub mod torus_knot;

pub use canopy::{CanopyGraph, CanopyOptions, FillingCase, InadmissibleKnot};
pub use lens::LensSpace;
pub use phenomena::{PhenomenaReport, Survey};
pub use slope::{Int, Slope, SlopeError, Unimodular};
pub use torus_knot::{FilledManifold, ManifoldKind, TorusKnot};
