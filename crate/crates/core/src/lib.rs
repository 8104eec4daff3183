//! Exact symbolic algebra for the Iwahori-Hecke bimodule attached to the
//! dual pair `(GL_n, GL_m)`: Laurent-polynomial coefficients, extended
//! affine Weyl groups as periodic permutations, affine Hecke algebras with
//! Bernstein and parabolic decompositions, and the theta bimodule on orbit
//! indices together with its induced-module presentation.

pub mod bimodule;
pub mod hecke;
pub mod laurent;
pub mod weyl;

pub use bimodule::{InducedElem, ThetaElem};
pub use hecke::HeckeElem;
pub use laurent::LaurentPoly;
pub use weyl::{OrbitIndex, Perm, WeylElem};
