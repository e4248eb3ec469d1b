//! DM-SFI: reduced ionic density-matrix propagation for strong-field-ionized
//! molecules, driven by subcycle nonadiabatic (PPT-based) or quasistatic
//! (ADK) tunneling-ionization rates.
//!
//! The library covers:
//!
//! - the subcycle nonadiabatic rate w(t) with its full Coulomb-corrected
//!   prefactor and the exponent exp[-(2 kappa^3/3 F0 f(t)) g(t)]
//!   ([`rates`], [`specialfn`]);
//! - saddle-point kinematics: tunneling time, canonical momentum vs birth
//!   time, complex action ([`kinematics`]);
//! - molecular structure amplitudes B_0(theta) from C_{lm'} coefficients and
//!   bundled channel data for H, N2+, and CO2+ ([`channels`]);
//! - the master equation d rho/dt = -i[H_N, rho] + Gamma(t) with the
//!   tunnel-ionization coherence matrix Gamma, in the TIC1 / TIC0 / TIC1-D0
//!   model variants ([`propagator`]);
//! - an independent wave-function-sum oracle for the propagator and
//!   reduced-electron-density-matrix diagnostics ([`wforacle`]);
//! - TOML scenario configs, sweeps, and CSV/JSON output ([`scenario`]).
//!
//! Everything internal is in Hartree atomic units; lab units (nm, W/cm^2,
//! fs, eV) are converted once at the configuration boundary ([`units`]).

pub mod channels;
pub mod error;
pub mod kinematics;
pub mod laser;
pub mod ode;
pub mod propagator;
pub mod rates;
pub mod scenario;
pub mod specialfn;
pub mod units;
pub mod wforacle;

pub use channels::{Channel, MoleculeModel};
pub use error::{Error, Result};
pub use laser::{Envelope, LaserField};
pub use propagator::{
    propagate, ModelVariant, PhaseVariant, PropagationOptions, SimulationResult,
};
pub use rates::{cycle_averaged_rate, ionization_yield, subcycle_rate, RateKind};
pub use scenario::Config;
