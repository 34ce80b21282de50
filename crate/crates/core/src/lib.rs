//! Symmetric-operator symbols, their multiplicity sets and eigenline
//! surfaces.
//!
//! Start from [`sym2`] for the pointwise algebra, [`multiplicity`] for
//! singular curves and winding numbers over planar charts, [`sphere`] for the
//! `σ_{m,n}` family on the Riemann sphere, [`fresnel`] for biaxial crystals
//! and [`eigenline`] for the double cover of a symmetric section.

pub mod eigenline;
pub mod error;
pub mod fresnel;
pub mod mesh;
pub mod multiplicity;
pub mod report;
pub mod roots;
pub mod section;
pub mod sphere;
pub mod sym2;

pub use error::{Error, Result};
pub use mesh::{TriMesh, Vec3};
pub use section::{SymmetricSection, TangentSection, TrivialSection};
pub use sym2::{ComplexRep, Invertibility, LinearSymbol2, Sym2Value};
