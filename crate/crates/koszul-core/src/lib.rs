//! Exact Koszul duality between finite dg categories and pointed curved coalgebras.
//!
//! Everything here works over `Q` or `F_p` with exact arithmetic and is `no_std`.

#![no_std]

extern crate alloc;

pub mod barcobar;
pub mod coalgebra;
pub mod curved;
pub mod dgcat;
pub mod error;
pub mod fixtures;
pub mod linalg;
pub mod modcomod;
pub mod nerve;
pub mod scalar;
pub mod simplicial;
pub mod uncurve;
pub mod vector;

pub use dgcat::{DgCategory, Morphism, Retract};
pub use error::{Error, Report};
pub use linalg::{FiniteComplex, GradedSpace, LinearMap};
pub use scalar::{Field, Scalar};
pub use vector::Vector;
