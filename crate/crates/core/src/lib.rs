//! Oriented maximal Wicks forms: validation, gluing, symmetries, moves,
//! exhaustive enumeration, exact counting and the hyperbolic geometry of
//! extremal surfaces.

pub mod count;
pub mod enumerate;
pub mod geometry;
pub mod moves;
pub mod symmetry;
pub mod topology;
pub mod words;

pub use count::{count_table, CountError, CountTable, ExactRational};
pub use enumerate::{
    census_stats, certify, enumerate_backtrack, enumerate_constructive, Census, CensusClass, CensusStats,
    EnumerateError, EnumerateOptions,
};
pub use geometry::{extremal_geometry, gauss_bonnet_check, ExtremalGeometry, GeometryError};
pub use moves::{ih_transform, reduce, IhType, MoveError, ReductionType, SidePoint};
pub use symmetry::{automorphisms, Order6Label, SymmetryProfile};
pub use topology::{dual, glue, vertex_signs, SurfaceMap, VertexSign};
pub use words::{canonicalize, parse, validate, FormError, Letter, ParseError, WicksForm, Word};
