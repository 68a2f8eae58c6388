//! Exact rational linear algebra and polyhedral geometry: facet
//! enumeration, cone duality, deterministic triangulation and lattice
//! normalization of faces.

pub mod cone;
pub mod hull;
pub mod integrate;
pub mod lp;
pub mod matrix;
pub mod polytope;

pub use cone::{ConvexCone, SimplicialCone, SimplicialDecomposition};
pub use polytope::{AffineForm, DelzantClass, PolytopeFacet, RationalPolytope};
