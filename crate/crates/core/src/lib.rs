//! Exact convex hulls by the Beneath-and-Beyond (placing) method.
//!
//! Everything here works over the rationals with arbitrary precision, so
//! all predicates are exact and facet sets from different insertion orders
//! compare equal bit for bit. The crate is `no_std` and needs only `alloc`.
//!
//! - [`arith`]: rational scalars, determinants, elimination.
//! - [`geometry`]: points, halfspaces, triangulations, polytopes, polarity.
//! - [`hull`]: the incremental engine and the [`hull::convex_hull`] driver.
//! - [`generators`]: cubes, cross polytopes, dwarfed cubes, products of
//!   simplices and polygons, cyclic polytopes, random spheres.
//! - [`oracle`]: brute-force facet enumeration, f-vectors, triangulation
//!   checks.

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod arith;
mod error;
pub mod generators;
pub mod geometry;
pub mod hull;
pub mod oracle;

pub use error::{Error, Result};
