//! The Iwahori-Hecke algebra in Bernstein presentation, the spherical
//! module model and the Whittaker module model.

mod bernstein;
mod params;
mod savin;

pub use bernstein::{BernsteinElement, HeckeAlgebra, QjMode, ThetaCommutation};
pub use params::{Monomial, ParamPoly, Symbol};
pub use savin::{phi_action, SavinModule, WhittakerModuleModel};
