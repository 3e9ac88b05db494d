//! Design and simulation toolkit for triply-resonant electro-optic
//! microwave-to-optical transducers built from coupled nanophotonic ring
//! resonators.
//!
//! The crate covers the full design chain:
//!
//! * [`spectra`] — supermode doublet of the coupled rings and its tuning
//!   with phase-shifter bias voltage;
//! * [`electrostatics`] — 2D finite-volume solve of the electrode
//!   cross-section for the microwave field and electrode capacitance;
//! * [`coupling`] — electro-optic conversion rate `g` from the uniform-field
//!   expression, and g-vs-FSR design curves;
//! * [`closed_dynamics`] — lossless three-mode Rabi swap, closed form and
//!   numerically integrated with pump depletion;
//! * [`open_system`] — input-output solution with loss: transfer
//!   coefficients, cooperativity, conversion efficiency, pump and scattered
//!   power;
//! * [`quasiparticle`] — microwave-Q degradation from stray optical
//!   absorption in the superconductor;
//! * [`config`] / [`pipeline`] — flat key = value configuration, end-to-end
//!   design reports and sweeps with CSV output.

pub mod closed_dynamics;
pub mod config;
pub mod constants;
pub mod coupling;
pub mod csvio;
pub mod electrostatics;
pub mod error;
pub mod ode;
pub mod open_system;
pub mod pipeline;
pub mod quasiparticle;
pub mod spectra;

pub use error::{Error, Result};
