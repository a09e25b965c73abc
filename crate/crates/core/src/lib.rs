//! Dispersive (Casimir-Polder / van der Waals) interaction between a
//! ground-state atom and a planar or weakly corrugated surface.
//!
//! The crate is `no_std` with `alloc`. All transcendental functions go
//! through `libm`, so results are bit-identical across platforms that share
//! the same `libm` build.
//!
//! Layout:
//!
//! * [`optics`]: permittivity models on the imaginary frequency axis,
//!   Fresnel coefficients, dispersion-relation ingestion of real-axis data.
//! * [`atomics`]: dynamic polarizability models and plane-wave matrix
//!   elements of the atomic reflection operators.
//! * [`kernel`]: polarization algebra, first-order non-specular reflection
//!   coefficients and the contracted integrand of the response function.
//! * [`quadrature`]: adaptive integration of the plane potential, the plane
//!   force and the response function `g(k, z_A)`.
//! * [`closedforms`]: analytic limits (Casimir-Polder, van der Waals) and the
//!   modified Bessel functions they need.
//! * [`profile`]: surface profiles, first-order potential and lateral force,
//!   and the quasi-1D condensate probe estimator.
#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod atomics;
pub mod closedforms;
pub mod constants;
mod error;
mod interp;
pub mod kernel;
pub mod optics;
pub mod profile;
pub mod quadrature;
mod vec2;

pub use error::{Error, Result};
pub use interp::{Extrapolation, LogTable};
pub use vec2::Vec2;
