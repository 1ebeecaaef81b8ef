//! Boltzmann-entropy estimates for a Newtonian universe.
//!
//! The model: expansion is driven by an inverted isotropic harmonic
//! potential with the Hubble constant as its frequency, the matter content
//! is described by a quantum wavefunction, and gravitational equipotentials
//! are read as isoentropic surfaces. The crate reproduces the resulting
//! entropy estimates both at desk scale (where everything is checked
//! against quadrature oracles) and at astronomical scale (where closed
//! forms are evaluated in log-domain arithmetic).
//!
//! Modules:
//! - [`params`]: cosmological inputs and derived dimensionless scales;
//! - [`numerics`]: log-domain arithmetic, adaptive quadrature, stencils;
//! - [`madelung`]: amplitude/phase decomposition, quantum potential, fluid
//!   correspondence;
//! - [`freewaves`]: perturbative entropy estimates from free waves;
//! - [`exactradial`]: exact interacting eigenfunctions via the confluent
//!   hypergeometric function;
//! - [`vacuummatch`]: matched asymptotic vacuum state, normalisation and
//!   the nonperturbative entropy;
//! - [`qdiagnostic`]: quantum-potential diagnostic of cosmological-principle
//!   violation;
//! - [`report`]: structured run reports for the CLI;
//! - [`verify`]: the self-check suites behind `cosmo-entropy verify`.

pub mod exactradial;
pub mod freewaves;
pub mod madelung;
pub mod numerics;
pub mod params;
pub mod qdiagnostic;
pub mod report;
pub mod vacuummatch;
pub mod verify;

pub use numerics::{LogFloat, QuadratureSpec};
pub use params::{derive_scales, load_params, radius_for_entropy, CosmoParams};
