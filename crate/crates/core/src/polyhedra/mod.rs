//! Exact polyhedral geometry: inequality and generator forms, recession and
//! polar cones, Motzkin splits, LP distances and cone-in-union decisions.

mod cone;
mod dd;
mod distance;
mod polyhedron;
mod union;

pub use cone::{ConeRepr, PolyCone, Triviality};
pub use dd::{cone_generators, ConeGenerators, DIMENSION_CAP, GENERATOR_CAP};
pub use distance::{distance, distance_to_union, Norm};
pub use polyhedron::{GeneratorRep, Halfspace, Polyhedron};
pub use union::{cone_in_union, Inclusion, PolyUnion};
