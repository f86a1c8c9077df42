//! Exact rational geometry: half-open boxes, canonical bands,
//! parallelotopes, and LP-based interior tests.

mod band;
mod parallelotope;
mod polytope;

pub use band::{Band, RatBox};
pub use parallelotope::{
    interior_overlap, linear_image, overlap_translates, overlap_translates_with, Parallelotope,
};
pub use polytope::{ConvexPolytope, HalfSpace};
