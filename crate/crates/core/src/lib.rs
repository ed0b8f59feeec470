//! Reduced Alexander polynomials of alternating links, computed both from
//! Alexander's matrix and from arborescence sums over digraphs attached to a
//! diagram, together with the digraph reduction and classification used to
//! decide fibredness and uniqueness of incompressible Seifert surfaces.

pub mod alexander;
pub mod classify;
pub mod diagram;
pub mod digraph;
pub mod error;
pub mod io;
pub mod linkgraphs;
pub mod poly;

pub use error::{Error, Result};
pub use poly::LaurentPoly;
