//! Subcycle nonadiabatic and ADK tunneling-ionization rates, the
//! normalization factor, the cycle-averaged (PPT) rate, and pulse yields.
//!
//! The nonadiabatic rate assembles the Coulomb-corrected PPT prefactor with
//! the subcycle exponent exp[-(2 kappa^3 / 3 F0 f(t)) g(t)]. The prefactor
//! tracks the instantaneous field magnitude |F(t)| except for the
//! photon-channel sum A_0, which is frozen at the envelope-peak Keldysh
//! parameter (the normalization is well approximated by its value at the
//! pulse center).

use serde::{Deserialize, Serialize};

use crate::channels::Channel;
use crate::error::Result;
use crate::laser::LaserField;
use crate::specialfn::{a_m, g_of_gamma, g_subcycle, h_of_gamma};
use crate::units::FIELD_FLOOR;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RateKind {
    #[serde(alias = "nonadiabatic")]
    Na,
    Adk,
}

/// |C(t=0)|^2: the m = 0 normalization factor at the pulse peak,
///
///   |C|^2 = |B_0|^2 / (F0 kappa^{2Z/kappa}) sqrt(g h / pi) A_0
///           (F0 sqrt(1+g^2) / 2 kappa^3)^{1/2}
///           (2 kappa^3 / F0)^{2Z/kappa} (1 + 2 e^{-1} gamma)^{-2Z/kappa}
pub fn normalization_sq(channel: &Channel, field: &LaserField, theta: f64) -> Result<f64> {
    let kappa = channel.kappa();
    let z = channel.z;
    let gk = field.keldysh(kappa);
    let b0 = channel.b0(theta, 1.0);
    let g = g_of_gamma(gk)?;
    let h = h_of_gamma(gk)?;
    let a0 = a_m(field.omega, gk, channel.e_ip, 0)?;
    let k3 = kappa.powi(3);
    Ok(b0 * b0 / (field.f0 * kappa.powf(2.0 * z / kappa))
        * (g * h / std::f64::consts::PI).sqrt()
        * a0
        * (field.f0 * (1.0 + gk * gk).sqrt() / (2.0 * k3)).sqrt()
        * (2.0 * k3 / field.f0).powf(2.0 * z / kappa)
        * (1.0 + 2.0 * (-1.0f64).exp() * gk).powf(-2.0 * z / kappa))
}

/// Validity diagnostics for the PPT matching: returns a warning string when
/// F0/kappa^3 or omega/E exceeds 0.3.
pub fn validity_warning(channel: &Channel, field: &LaserField) -> Option<String> {
    let r1 = field.f0 / channel.kappa().powi(3);
    let r2 = field.omega / channel.e_ip;
    if r1 > 0.3 || r2 > 0.3 {
        Some(format!(
            "channel {}: validity ratios F0/kappa^3 = {r1:.3}, omega/E = {r2:.3} exceed 0.3",
            channel.label
        ))
    } else {
        None
    }
}

/// Per-channel constants that do not change along the pulse; precomputed so
/// the propagator right-hand side stays cheap.
#[derive(Debug, Clone)]
pub struct ChannelRateCache {
    pub kappa: f64,
    pub z: f64,
    pub e_ip: f64,
    pub b0_pos: f64,
    pub b0_neg: f64,
    /// ln|B0|^2 - (2Z/k - 1) ln k + ln A_0(omega, gamma_K^peak).
    log_const_na: f64,
    /// ln|B0|^2 - (2Z/k - 1) ln k.
    log_const_adk: f64,
}

impl ChannelRateCache {
    pub fn new(channel: &Channel, field: &LaserField, theta: f64) -> Result<Self> {
        let kappa = channel.kappa();
        let z = channel.z;
        let b0_pos = channel.b0(theta, 1.0);
        let b0_neg = channel.b0(theta, -1.0);
        let b0sq = b0_pos * b0_pos; // |B0| is sign-independent
        let gk_peak = field.keldysh(kappa);
        let a0 = a_m(field.omega, gk_peak, channel.e_ip, 0)?;
        let base = if b0sq > 0.0 {
            b0sq.ln() - (2.0 * z / kappa - 1.0) * kappa.ln()
        } else {
            f64::NEG_INFINITY
        };
        Ok(Self {
            kappa,
            z,
            e_ip: channel.e_ip,
            b0_pos,
            b0_neg,
            log_const_na: base + a0.ln(),
            log_const_adk: base,
        })
    }

    /// Lab-frame B_0 for the current sign of the field.
    pub fn b0_signed(&self, field_sign: f64) -> f64 {
        if field_sign >= 0.0 {
            self.b0_pos
        } else {
            self.b0_neg
        }
    }

    /// Nonadiabatic subcycle rate w(t), computed in log space.
    pub fn na_rate(&self, field: &LaserField, t: f64) -> f64 {
        let f_abs = field.field_at(t).abs();
        let f_env = field.envelope_amplitude(t);
        if f_abs < FIELD_FLOOR || f_env < FIELD_FLOOR || !self.log_const_na.is_finite() {
            return 0.0;
        }
        let (kappa, z) = (self.kappa, self.z);
        let gt = field.omega * kappa / f_abs;
        let k3 = kappa.powi(3);
        let h = h_of_gamma(gt).expect("gt > 0");
        let gsub = g_subcycle(0.0, t, field, kappa);
        if !gsub.is_finite() {
            return 0.0;
        }
        let lw = self.log_const_na
            + 0.5 * (2.0 * h * (1.0 + gt * gt).sqrt()).ln()
            + (f_abs * (1.0 + gt * gt).sqrt() / (2.0 * k3)).ln()
            + (2.0 * z / kappa) * (2.0 * k3 / f_abs).ln()
            - (2.0 * z / kappa) * (1.0 + 2.0 * (-1.0f64).exp() * gt).ln()
            - 2.0 * k3 / (3.0 * f_env) * gsub;
        lw.exp()
    }

    /// Quasistatic ADK rate,
    /// w = |B0|^2 / k^{2Z/k-1} (2k^3/|F|)^{2Z/k-1} exp(-2k^3/3|F|).
    pub fn adk_rate(&self, field: &LaserField, t: f64) -> f64 {
        let f_abs = field.field_at(t).abs();
        if f_abs < FIELD_FLOOR || !self.log_const_adk.is_finite() {
            return 0.0;
        }
        let (kappa, z) = (self.kappa, self.z);
        let k3 = kappa.powi(3);
        let lw = self.log_const_adk + (2.0 * z / kappa - 1.0) * (2.0 * k3 / f_abs).ln()
            - 2.0 * k3 / (3.0 * f_abs);
        lw.exp()
    }

    pub fn rate(&self, kind: RateKind, field: &LaserField, t: f64) -> f64 {
        match kind {
            RateKind::Na => self.na_rate(field, t),
            RateKind::Adk => self.adk_rate(field, t),
        }
    }
}

/// Nonadiabatic subcycle rate (convenience wrapper; for tight loops build a
/// [`ChannelRateCache`] once).
pub fn subcycle_rate(channel: &Channel, field: &LaserField, theta: f64, t: f64) -> f64 {
    match ChannelRateCache::new(channel, field, theta) {
        Ok(c) => c.na_rate(field, t),
        Err(_) => 0.0,
    }
}

/// ADK subcycle rate (convenience wrapper).
pub fn adk_rate(channel: &Channel, field: &LaserField, theta: f64, t: f64) -> f64 {
    match ChannelRateCache::new(channel, field, theta) {
        Ok(c) => c.adk_rate(field, t),
        Err(_) => 0.0,
    }
}

/// Cycle-averaged nonadiabatic rate from the last saddle-point step,
///
///   w_c = |C(0)|^2 (F0^2/kappa^2) sqrt(3 (1+g^2) / (2 g h))
///         exp[-(2 kappa^3 / 3 F0) g(gamma_K)]
pub fn cycle_averaged_rate(channel: &Channel, field: &LaserField, theta: f64) -> Result<f64> {
    let kappa = channel.kappa();
    let gk = field.keldysh(kappa);
    let g = g_of_gamma(gk)?;
    let h = h_of_gamma(gk)?;
    let c2 = normalization_sq(channel, field, theta)?;
    Ok(c2 * field.f0 * field.f0 / (kappa * kappa)
        * (3.0 * (1.0 + gk * gk) / (2.0 * g * h)).sqrt()
        * (-2.0 * kappa.powi(3) / (3.0 * field.f0) * g).exp())
}

/// Pulse ionization yield P = 1 - exp(-int w dt) over the field window
/// (composite Simpson on a grid resolving the carrier).
pub fn ionization_yield(
    channel: &Channel,
    field: &LaserField,
    theta: f64,
    kind: RateKind,
) -> Result<f64> {
    let cache = ChannelRateCache::new(channel, field, theta)?;
    let (t0, t1) = field.window();
    // >= 200 samples per carrier cycle, even count for Simpson
    let cycles = (t1 - t0) / field.period();
    let n = (200.0 * cycles).ceil().max(400.0) as usize * 2;
    let dt = (t1 - t0) / n as f64;
    let mut integral = 0.0;
    for i in 0..=n {
        let t = t0 + i as f64 * dt;
        let w = cache.rate(kind, field, t);
        let coeff = if i == 0 || i == n {
            1.0
        } else if i % 2 == 1 {
            4.0
        } else {
            2.0
        };
        integral += coeff * w;
    }
    integral *= dt / 3.0;
    Ok(1.0 - (-integral).exp())
}
