use alloc::string::String;
use alloc::vec::Vec;

use crate::lattice::LatticePoint;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("lattice mismatch: `{left}` vs `{right}`")]
    LatticeMismatch { left: String, right: String },
    #[error("rank mismatch: expected {expected}, got {got}")]
    RankMismatch { expected: usize, got: usize },
    #[error("exact division failed: remainder is nonzero")]
    NonDivisible,
    #[error("division by zero")]
    DivisionByZero,
    #[error("invalid Cartan type `{0}`")]
    InvalidCartanType(String),
    #[error("lattice basis does not contain the coroot lattice")]
    LatticeMissingCoroots,
    #[error("lattice basis is degenerate")]
    DegenerateLattice,
    #[error("multiplicities are not constant on Weyl orbits (root {0})")]
    MultNotOrbitConstant(usize),
    #[error("invalid root datum: {0}")]
    InvalidDatum(String),
    #[error("index {0} is not a simple root")]
    NotSimple(usize),
    #[error("{0:?} is not dominant")]
    NonDominant(LatticePoint),
    #[error("{0:?} is not strictly dominant")]
    NonStrictlyDominant(LatticePoint),
    #[error("rho-check is not in the cocharacter lattice")]
    RhoNotInLattice,
    #[error("value table is missing entries for {0:?}")]
    MissingTableEntry(Vec<LatticePoint>),
    #[error("no usable constraints inside the box")]
    EmptyConstraintSet,
    #[error("value does not lie in the image of the source group algebra")]
    NotInImageOfRprime,
    #[error("q = {0} is not the square of a rational")]
    IrrationalSqrt(String),
    #[error("specialization point has {got} coordinates, lattice has rank {expected}")]
    PointArity { expected: usize, got: usize },
    #[error("q = {0} must be a rational greater than 1")]
    InvalidQ(String),
    #[error("specialization at zero")]
    ZeroSpecialization,
    #[error("Weyl group enumeration exceeded {0} elements")]
    WeylGroupTooLarge(usize),
    #[error("conductor mismatch")]
    ConductorMismatch,
    #[error("key {0:?} violates the table's index set")]
    InvalidTableKey(LatticePoint),
}
