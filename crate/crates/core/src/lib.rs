//! Numerical laboratory for the two-stream instability in paraxial fluids
//! of light.
//!
//! Under paraxial propagation in a defocusing Kerr medium the transverse
//! dynamics of a laser beam obeys a 2D nonlinear Schrödinger equation with
//! the propagation coordinate playing the role of time; light intensity
//! maps onto fluid density and the phase gradient onto a velocity field.
//! Two such fluids with different transverse flow speeds exchange energy
//! through the nonlinearity and can drive a kinetic (two-stream)
//! instability.
//!
//! The crate is organized around that story:
//!
//! - [`scales`]: physical optical parameters -> dimensionless fluid model.
//! - [`dispersion`]: Bogoliubov spectra, the two-fluid quartic dispersion
//!   relation, closed-form roots with an independent oracle, instability
//!   bands, growth rates and stability rasters.
//! - [`solver`]: split-step spectral NLS propagator with single-field and
//!   dual-envelope two-stream configurations.
//! - [`diagnostics`]: Madelung fields, far-field spectra, mode histories
//!   with growth-rate fits, vortex detection, synthetic holograms.
//! - [`vapor`]: two-level atomic-vapor susceptibility, Kerr coefficients
//!   and feasibility numbers for a Rb-85 cell.

pub mod diagnostics;
pub mod dispersion;
pub mod scales;
pub mod solver;
pub mod vapor;

pub use dispersion::{ModeQuery, RootSet, StabilityBand};
pub use scales::{FlowGeometry, FluidScales, OpticalMedium};
pub use solver::{FieldState, Grid, RunSpec, StreamModel};
pub use vapor::{TwoLevelAtom, VaporConditions};
