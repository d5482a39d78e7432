//! Combinatorial toolkit for finite CAT(0) cube complexes.
//!
//! The crate models a finite cube complex purely combinatorially (vertices,
//! edges, squares, higher cubes in a canonical binary corner order) and builds
//! the wall machinery on top of it: hyperplanes as edge parallelism classes,
//! halfspaces, hyperplane complexes, and intersection components. Davis
//! complexes of right-angled Coxeter groups provide the interesting inputs.
//!
//! On the truncated complex (outside a ball around a basepoint) the crate
//! assembles Z/2 edge cocycles from oriented grids of hyperplanes and
//! connectors, checks the square condition, and solves the coboundary system
//! for a vertex parity function. A sparse GF(2) solver backs all of this.
//!
//! The [`curve`] module is independent of the cube-complex machinery: it runs
//! the greedy cover/bypass/detour algorithms on an abstract parametrized
//! curve model.

pub mod complex;
pub mod curve;
pub mod error;
pub mod fixtures;
pub mod gf2;
pub mod grid;
pub mod hyperplane;
pub mod racg;
pub mod simplicial;

pub use error::{Error, Result};
