//! Generalized regular sampling over finite abelian groups.
//!
//! A model space is spanned by subgroup translates of a few generators;
//! samples are the outputs of a convolution system `A` acting on the
//! expansion coefficients. When `A` is a frame system, any left inverse of
//! its transfer matrix gives sampling functions that rebuild the analysis
//! transform `F(s) = <f, U(s) phi>` everywhere from the samples.
//!
//! Groups are products of cyclic groups. Rotation-translation groups on a
//! square torus are handled through their abelian lattice reduction.

pub mod error;
pub mod frame;
pub mod group;
pub mod system;
pub mod dual;
pub mod model;
pub mod semidirect;
pub mod sampling;
pub mod config;
pub mod harness;
