//! Combinatorial analysis of real-defined line arrangements in the plane:
//! intersection lattices, the multiple-point graph, complement presentations,
//! lower central series quotients, the commutator pairing and a classifier.
//!
//! Geometry is generic over an exact field and the integer linear algebra
//! over an exact integer ring; the aliases below fix both to arbitrary
//! precision rationals and integers.

pub mod arrangement;
pub mod classifier;
pub mod error;
pub mod geometry;
pub mod graph;
pub mod io;
pub mod lattice;
pub mod lcs;
pub mod linalg;
pub mod pairing;
pub mod presentation;
pub mod scalar;

pub use num_bigint::BigInt;

pub type Rational = num_rational::BigRational;
pub type Line = arrangement::Line<Rational>;
pub type Arrangement = arrangement::Arrangement<Rational>;
pub type IncidenceLattice = lattice::IncidenceLattice<Rational>;
pub type ProjectiveClosure = geometry::ProjectiveClosure<Rational>;
pub type AffineReduction = geometry::AffineReduction<Rational>;
pub type IntegerMatrix = linalg::Matrix<BigInt>;
pub type ZSubgroup = linalg::ZSubgroup<BigInt>;

pub use arrangement::{normalize, validate, Geometry, Mode, Violation};
pub use classifier::{
    build_certificate, classify, fan_consistency_report, fan_decomposition_consistency, ClassificationOutcome,
    DecompositionReport, FanConsistency, ObstructionCertificate, Verdict,
};
pub use error::{Error, Result};
pub use geometry::{affine_reduction, build_lattice, intersect, projectivize, Intersection, LINE_AT_INFINITY};
pub use graph::{beta, build_graph, find_minimal_cycle, CycleWitness, GraphEdge, MultiplePointGraph};
pub use lattice::{LatticePoint, Location, PointId};
pub use lcs::{
    free_group_lcs_oracle, g2g3, point_summand, xi_projection, AbelianizationSpace, G2G3Element, PointSummand, G2G3,
};
pub use pairing::{
    check_stabilizer_theorem, pairing, point_sum_vector, stabilizer, PairingForm, StabilizerCheck, StabilizerResult,
};
pub use presentation::{
    central_element, pi1_presentation, point_quotient, simplify, tietze, AbelianInvariants, ConjugatorTable,
    GroupPresentation, PointQuotient, TietzeStep, Word,
};
pub use scalar::{ExactField, IntegerRing};
