//! Exact arithmetic for field-of-definition questions about building
//! blocks: 2-torsion classes in `H²(G_ℚ, F*)` attached to a building block,
//! their restrictions to polyquadratic fields, and whether they are killed
//! by the obstruction `δ(ψ)` of some `ψ: G_K → B*/ℚ*`.
//!
//! Everything here is exact: rationals are arbitrary precision and square
//! classes are squarefree integers.
#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod cocycle;
pub mod delta;
pub mod descent;
pub mod f2;
pub mod groups;
pub mod numfield;
pub mod qalg;
pub mod qarith;
pub mod rational;

pub use rational::Rational;
