//! Simulation toolkit for CHSH Bell tests of a spin-1/2 system entangled
//! with a pair of opposite-amplitude coherent wave packets, measured by
//! homodyne detection.
//!
//! The library covers the full chain from first principles to synthetic
//! data:
//!
//! - [`model`] — physical parameters and the elementary closed-form
//!   quantities of the entangled cat state,
//! - [`quadrature`] — homodyne POVM elements, quadrature wavefunctions and
//!   all measured probability distributions,
//! - [`bell`] — the dichotomic position/fringe observables, correlation
//!   functions, the CHSH combination and its maximization, and the
//!   detection-efficiency threshold,
//! - [`experiment`] — shot-by-shot Monte Carlo Bell experiments with
//!   seeded, reproducible sampling,
//! - [`fock`] — an independent brute-force verification path in a
//!   truncated number basis,
//! - [`crosscheck`] — the oracle-vs-analytic comparison suite,
//! - [`settings`] — parsers for measurement-settings files and spin
//!   direction triples.
//!
//! All quantities are expressed in canonical dimensionless harmonic
//! oscillator units. Every function in the crate is a pure function of its
//! arguments and safe for unrestricted concurrent use.

pub mod bell;
pub mod crosscheck;
pub mod experiment;
pub mod fock;
mod integrate;
pub mod model;
pub mod quadrature;
pub mod settings;

pub use bell::{BellResult, BinSets, MatrixElements};
pub use experiment::{CorrelationEstimate, MeasurementSetting, ShotRecord};
pub use model::{CatParams, DetectorModel, SpinDirection, SuperpositionSign};
pub use quadrature::{HomodynePhase, QuadratureGrid};
