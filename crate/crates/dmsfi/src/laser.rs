//! Linearly polarized laser field model: carrier + envelope + CEP, all in
//! atomic units after construction.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::units;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Envelope {
    /// Constant envelope (cw sinusoid).
    Cw,
    /// f(t) = cos^2(pi t / tau) on |t| <= tau/2 with tau = 2.75 FWHM.
    CosineSquare,
    /// f(t) = exp(-4 ln2 t^2 / FWHM^2), supported on [-tau, 2 tau], tau = FWHM.
    Gaussian,
}

/// F(t) = F0 f(t) cos(omega t + cep) along z.
///
/// `fwhm` is the FWHM of the *field* envelope f(t), in a.u. Pulse durations
/// quoted as intensity FWHM (the usual lab convention) must be multiplied by
/// sqrt(2) for a Gaussian; [`LaserField::gaussian_intensity_fwhm`] does this.
#[derive(Debug, Clone, Copy)]
pub struct LaserField {
    pub f0: f64,
    pub omega: f64,
    pub cep: f64,
    pub envelope: Envelope,
    pub fwhm: f64,
}

impl LaserField {
    pub fn new(
        wavelength_nm: f64,
        intensity_w_cm2: f64,
        envelope: Envelope,
        field_fwhm_fs: f64,
        cep: f64,
    ) -> Result<Self> {
        if wavelength_nm <= 0.0 || intensity_w_cm2 <= 0.0 {
            return Err(Error::Config(format!(
                "laser: wavelength {wavelength_nm} nm and intensity {intensity_w_cm2} W/cm^2 must be > 0"
            )));
        }
        if envelope != Envelope::Cw && field_fwhm_fs <= 0.0 {
            return Err(Error::Config("laser: pulsed envelope needs fwhm > 0".into()));
        }
        Ok(Self {
            f0: units::intensity_to_field(intensity_w_cm2),
            omega: units::omega_from_wavelength(wavelength_nm),
            cep,
            envelope,
            fwhm: units::fs_to_au(field_fwhm_fs),
        })
    }

    pub fn cw(wavelength_nm: f64, intensity_w_cm2: f64, cep: f64) -> Result<Self> {
        Self::new(wavelength_nm, intensity_w_cm2, Envelope::Cw, 0.0, cep)
    }

    /// Gaussian pulse specified by its intensity-profile FWHM (the value
    /// usually quoted for experiments); the field envelope is sqrt(2) wider.
    pub fn gaussian_intensity_fwhm(
        wavelength_nm: f64,
        intensity_w_cm2: f64,
        intensity_fwhm_fs: f64,
        cep: f64,
    ) -> Result<Self> {
        Self::new(
            wavelength_nm,
            intensity_w_cm2,
            Envelope::Gaussian,
            intensity_fwhm_fs * std::f64::consts::SQRT_2,
            cep,
        )
    }

    /// Envelope f(t) in [0, 1]; zero outside the support window.
    pub fn envelope_at(&self, t: f64) -> f64 {
        match self.envelope {
            Envelope::Cw => 1.0,
            Envelope::Gaussian => {
                let (t0, t1) = self.window();
                if t < t0 || t > t1 {
                    0.0
                } else {
                    (-4.0 * std::f64::consts::LN_2 * t * t / (self.fwhm * self.fwhm)).exp()
                }
            }
            Envelope::CosineSquare => {
                let tau = 2.75 * self.fwhm;
                if t.abs() > 0.5 * tau {
                    0.0
                } else {
                    (std::f64::consts::PI * t / tau).cos().powi(2)
                }
            }
        }
    }

    /// Instantaneous envelope amplitude F0 f(t).
    pub fn envelope_amplitude(&self, t: f64) -> f64 {
        self.f0 * self.envelope_at(t)
    }

    /// Signed field F(t) = F0 f(t) cos(omega t + cep).
    pub fn field_at(&self, t: f64) -> f64 {
        self.envelope_amplitude(t) * (self.omega * t + self.cep).cos()
    }

    /// Vector potential A(t) = -(F0 f(t)/omega) sin(omega t + cep)
    /// (slowly varying envelope).
    pub fn vector_potential(&self, t: f64) -> f64 {
        -self.envelope_amplitude(t) / self.omega * (self.omega * t + self.cep).sin()
    }

    /// Keldysh parameter omega kappa / F0 at the pulse peak.
    pub fn keldysh(&self, kappa: f64) -> f64 {
        self.omega * kappa / self.f0
    }

    /// Carrier period 2 pi / omega.
    pub fn period(&self) -> f64 {
        2.0 * std::f64::consts::PI / self.omega
    }

    /// Simulation window: [-tau, 2 tau] with tau = FWHM for Gaussian pulses,
    /// the full envelope support for cos^2, one carrier period for cw.
    pub fn window(&self) -> (f64, f64) {
        match self.envelope {
            Envelope::Cw => (-0.5 * self.period(), 0.5 * self.period()),
            Envelope::Gaussian => (-self.fwhm, 2.0 * self.fwhm),
            Envelope::CosineSquare => {
                let tau = 2.75 * self.fwhm;
                (-0.5 * tau, 0.5 * tau)
            }
        }
    }
}
