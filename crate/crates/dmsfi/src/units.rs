//! Atomic-unit constants and the few conversions allowed at the config boundary.
//!
//! Everything inside the library works in Hartree atomic units; conversions
//! from lab units (eV, fs, nm, W/cm^2) happen exactly once, at construction
//! time of a [`crate::laser::LaserField`] or a molecule model.

/// Hartree energy in eV.
pub const HARTREE_EV: f64 = 27.211386245988;

/// One femtosecond in atomic units of time.
pub const FS_AU: f64 = 41.341374575751;

/// One attosecond in atomic units of time.
pub const AS_AU: f64 = 0.041341374575751;

/// Intensity corresponding to one atomic unit of field, in W/cm^2.
pub const INTENSITY_AU: f64 = 3.50944758e16;

/// omega [a.u.] = OMEGA_NM / lambda [nm].
pub const OMEGA_NM: f64 = 45.5634;

/// Fields below this magnitude (a.u.) are treated as zero by the rate models:
/// the tunneling exponent diverges and the true rate underflows f64 anyway.
pub const FIELD_FLOOR: f64 = 1e-8;

pub fn ev_to_au(e: f64) -> f64 {
    e / HARTREE_EV
}

pub fn au_to_ev(e: f64) -> f64 {
    e * HARTREE_EV
}

pub fn fs_to_au(t: f64) -> f64 {
    t * FS_AU
}

pub fn au_to_fs(t: f64) -> f64 {
    t / FS_AU
}

/// Peak field F0 [a.u.] from intensity [W/cm^2].
pub fn intensity_to_field(intensity_w_cm2: f64) -> f64 {
    (intensity_w_cm2 / INTENSITY_AU).sqrt()
}

/// Carrier angular frequency [a.u.] from wavelength [nm].
pub fn omega_from_wavelength(wavelength_nm: f64) -> f64 {
    OMEGA_NM / wavelength_nm
}
