//! Exact floor-diagram counts for h-transverse polygons.
//!
//! Modules follow the data flow: [`polygon`] validates the side data,
//! [`diagram`] holds marked floor diagrams and their multiplicities,
//! [`enumeration`] generates the fibres, [`invariants`] folds them into the
//! Welschinger-type numbers, [`lattice`] recasts the same sums as weighted
//! lattice-point counts, [`chambers`] fits quasipolynomials chamber by
//! chamber, and [`oracle`] recomputes everything by brute force.

pub mod chambers;
pub mod diagram;
pub mod enumeration;
pub mod invariants;
pub mod lattice;
pub mod oracle;
pub mod polygon;
pub mod scalar;
pub mod seq;

pub use num::{BigInt, BigRational};

/// Integer type used for every count.
pub type Count = BigInt;
/// Exact field used for fitting and linear algebra.
pub type Rational = BigRational;
/// Polynomials with exact rational coefficients.
pub type Polynomial = chambers::Polynomial<Rational>;
/// Quasipolynomials with exact rational coefficients.
pub type Quasipolynomial = chambers::Quasipolynomial<Rational>;

pub use diagram::{
    Block, Color, DivergenceSequence, Element, FloorTemplate, Marking, MultiplicityWindow, Vertex,
    WeightedFloorDiagram, Xi,
};
pub use polygon::{build_polygon, HTransversePolygon, Sides};
pub use seq::Seq;
