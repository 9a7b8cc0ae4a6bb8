//! Exact convex hull machinery for point sets, polytopes stacked on parallel
//! hyperplanes, and spheres with a fixed number of distinct radii.
//!
//! Every geometric predicate runs on arbitrary-precision rationals. The crate
//! is `no_std` (it needs `alloc`); file formats and the command-line harness
//! live in the companion `parhull-cli` crate.
//!
//! Module map:
//!
//! - [`exact`]: rationals, small linear algebra, orientation, a strict
//!   feasibility LP and a minimum-norm convex QP.
//! - [`lattice`]: incremental hulls with full face lattices, f/h-vectors,
//!   polar duals and hyperplane sections.
//! - [`perturb`]: beyond/beneath classification and vertex pulling.
//! - [`parallel`]: layered point sets, crossing faces, bound formulas and the
//!   apex augmentation identity.
//! - [`sphere`]: sphere hulls through the lifting map and a Lorentz-cone test.
//! - [`generators`]: moment-curve points and lower-bound sphere families.
//! - [`minkowski`]: weighted Minkowski sums by slicing a stacked hull.

#![cfg_attr(not(any(test, feature = "std")), no_std)]
#![deny(unsafe_code)]


extern crate alloc;

mod error;
pub mod exact;
pub mod generators;
pub mod lattice;
pub mod minkowski;
pub mod parallel;
pub mod perturb;
pub mod rng;
pub mod sphere;

pub use error::{Error, Result};
pub use exact::{Hyperplane, Point, Rational};
pub use lattice::{Face, FaceLattice};
