//! Exact symbolic machinery for spherical Whittaker functions of unramified
//! groups: root data and dual groups, lattice group algebras with Weyl
//! action, Weyl characters, the Bernstein presentation of the Iwahori-Hecke
//! algebra, and evaluators/verifiers for the Whittaker recursion and its
//! closed-form solutions.
//!
//! Everything is exact: coefficients are arbitrary-precision rationals and
//! powers of `v = q^{1/2}` are tracked in [`LaurentScalar`].

#![no_std]

extern crate alloc;

pub mod algebra;
pub mod characters;
pub mod error;
pub mod hecke;
pub mod lattice;
pub mod linalg;
pub mod root_datum;
pub mod scalar;
pub mod weyl;
pub mod whittaker;

pub use algebra::GroupAlgebraElement;
pub use characters::{Character, TensorCoefficients};
pub use error::{Error, Result};
pub use hecke::{BernsteinElement, HeckeAlgebra, ParamPoly, SavinModule, WhittakerModuleModel};
pub use lattice::{LatticeMap, LatticePoint, LatticeTag};
pub use root_datum::{
    CartanFamily, CartanSpec, CartanType, DualGroupDatum, IsogenyDecomposition, LatticeChoice,
    RootDatum,
};
pub use scalar::{LaurentScalar, Rational};
pub use weyl::WeylGroup;
pub use whittaker::{Conductor, SatakeSpecialization, WhittakerTable};
