//! Complex dynamics of the modified Chebyshev root-finding family.
//!
//! The family iterates `z - (m f / 2f') (3 - m + m L_f)` with
//! `L_f = f f'' / (f')^2` toward a root of known multiplicity `m`. Applied
//! to a polynomial with two roots of multiplicities `m = Kn` and `n`, the
//! iteration is conjugate to a one-parameter rational map on the Riemann
//! sphere indexed by the multiplicity ratio `K`. This crate builds those
//! operators, classifies their fixed and critical points, iterates orbits,
//! renders parameter spaces / dynamical planes / basins of attraction, and
//! cross-checks every closed form against independent numerical oracles.
//!
//! Module map:
//! - [`sphere`]: points on the extended complex plane.
//! - [`poly`], [`rational`]: dense polynomials and rational maps.
//! - [`operators`]: the iteration operators and conjugating transforms.
//! - [`analysis`]: fixed points, critical points, multipliers, stability.
//! - [`orbits`]: escape-time iteration of a single seed.
//! - [`raster`]: grid renderers and PPM/CSV encoding.
//! - [`verify`]: reproducible oracles for the conjugacy theorems and the
//!   family's reference stability values.

pub mod analysis;
pub mod error;
pub mod operators;
pub mod orbits;
pub mod poly;
pub mod raster;
pub mod rational;
pub mod sphere;
pub mod verify;

pub use error::Error;
pub use num_complex::Complex64;
pub use poly::Polynomial;
pub use rational::RationalMap;
pub use sphere::SpherePoint;
