//! Computations with the finite Hilbert transform
//! `T f(t) = (1/πi) PV ∫_{-1}^{1} f(x)/(x - t) dx` on the interval (-1, 1).
//!
//! The crate is organised around five areas:
//!
//! * [`region`]: the lens-shaped regions `R_p` bounded by two circular arcs
//!   through ±1, the Möbius parameter maps, and a small symbolic set algebra
//!   used to describe spectra.
//! * [`eigen`]: the closed-form eigenfunctions `ξ_λ` and their integrability
//!   criterion against an [`IndexProfile`].
//! * [`spaces`]: rearrangement-invariant spaces modelled by their index data,
//!   decreasing rearrangements, Lorentz quasi-norms and fundamental indices.
//! * [`fht`]: adaptive principal-value quadrature for `T` and checks of the
//!   classical closed-form identities.
//! * [`classifier`]: the decision procedure turning an index profile into the
//!   spectrum and its point / residual / continuous parts.

pub mod classifier;
pub mod eigen;
mod error;
pub mod fht;
pub mod region;
pub mod spaces;

pub use error::{Error, Result};
pub use num_complex::Complex64;

pub use classifier::{classify, classify_lorentz, classify_space, FineSpectra, SpectrumAnswer, ZeroLocation};
pub use region::{ComplexPoint, RegionClass, SpectralSet};
pub use spaces::{Attainment, IndexProfile, SpaceSpec};
