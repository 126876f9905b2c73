//! Computational mirror symmetry for toric del Pezzo surfaces.
//!
//! Two finite directed algebras are built independently and certified
//! isomorphic:
//!
//! * the total morphism algebra of the exceptional collection on the
//!   three-point blow-up of the projective plane, from interior-product
//!   composition rules ([`exceptional`]);
//! * the directed Fukaya category of the mirror superpotential's vanishing
//!   cycles, modelled as straight geodesics on a flat torus with signed
//!   triangle counts for composition ([`torus`], [`fukaya`]).
//!
//! The numerical side ([`critical`], [`branch`]) validates the Morse data of
//! the superpotential: critical-point counts against the Newton-polytope
//! volume, nondegenerate Hessians, distinct critical values, and the
//! branch-point collisions along vanishing paths.

pub mod algebra;
pub mod branch;
pub mod catalog;
pub mod critical;
pub mod defaults;
pub mod exceptional;
pub mod fukaya;
pub mod laurent;
pub mod rational;
pub mod render;
pub mod solver;
pub mod torus;
pub mod vanishing;
pub mod verify;

pub use algebra::{DirectedAlgebra, Label, LinComb};
pub use catalog::{Fan, Surface};
pub use critical::CriticalPoint;
pub use laurent::LaurentPolynomial;
pub use torus::{TorusConfig, TorusLine};
pub use verify::Certificate;
