//! Exact finite-field and rational toolkit for genus-5 curves cut out by nets of quadrics,
//! their discriminant quintics, genus-2 webs of quadrics and quadrisecant geometry in `P^3`.

pub mod bivar;
pub mod error;
pub mod field;
pub mod genus2;
pub mod hilbert;
pub mod matrix;
pub mod net;
pub mod poly;
pub mod proj;
pub mod quadrics;
pub mod quintic;
pub mod report;
pub mod numerology;
pub mod pipeline;
pub mod rng;
pub mod spacecurve;
pub mod upoly;

pub use error::{Error, Result};
pub use field::{AnyField, Field, Gf, Rationals, QQ};
pub use matrix::{Matrix, PolyMatrix};
pub use poly::HomogPoly;
pub use upoly::UPoly;
