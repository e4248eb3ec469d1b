//! Saddle-point kinematics: tunneling time, canonical momentum vs birth
//! time, the complex action, and the zero-birth-delay diagnostics.
//!
//! All operations assume a cw carrier (the envelope is approximately
//! constant over the half-cycle in question); phases are omega t + cep.

use crate::error::{Error, Result};
use crate::laser::LaserField;
use crate::specialfn::g_subcycle;
use crate::units::FIELD_FLOOR;

/// gamma(p_perp, t) = omega sqrt(kappa^2 + p_perp^2) / |F(t)|.
pub fn gamma_perp_t(field: &LaserField, kappa: f64, p_perp: f64, t: f64) -> Result<f64> {
    let f = field.field_at(t).abs();
    if f < FIELD_FLOOR {
        return Err(Error::Domain(format!(
            "gamma_perp_t: |F({t})| below field floor"
        )));
    }
    Ok(field.omega * (kappa * kappa + p_perp * p_perp).sqrt() / f)
}

/// One saddle-point solution of the stationary-action condition at real
/// birth time t: t_s = t + i tau with sinh(omega tau) = gamma_perp_t.
#[derive(Debug, Clone, Copy)]
pub struct SaddleSolution {
    pub t_birth: f64,
    pub p_perp: f64,
    pub p_z: f64,
    pub v_z: f64,
    pub tau_tunnel: f64,
    pub gamma_perp_t: f64,
}

pub fn saddle(field: &LaserField, kappa: f64, p_perp: f64, t: f64) -> Result<SaddleSolution> {
    let g = gamma_perp_t(field, kappa, p_perp, t)?;
    let p_z = pz_of_birth(field, kappa, p_perp, t)?;
    Ok(SaddleSolution {
        t_birth: t,
        p_perp,
        p_z,
        v_z: p_z + field.vector_potential(t),
        tau_tunnel: g.asinh() / field.omega,
        gamma_perp_t: g,
    })
}

/// p_z(p_perp, t) = (F0 sin(omega t + cep)/omega) sqrt(1 + gamma^2(p_perp, t)).
///
/// Strictly increasing in t across the open half-cycle; diverges at the
/// field zero crossings.
pub fn pz_of_birth(field: &LaserField, kappa: f64, p_perp: f64, t: f64) -> Result<f64> {
    let g = gamma_perp_t(field, kappa, p_perp, t)?;
    let phase = field.omega * t + field.cep;
    Ok(field.f0 * phase.sin() / field.omega * (1.0 + g * g).sqrt())
}

/// Invert [`pz_of_birth`] on the central half-cycle (phase in (-pi/2, pi/2)):
/// bracketed Newton with bisection fallback; roundtrip accurate to < 1e-10.
pub fn birth_of_pz(field: &LaserField, kappa: f64, p_perp: f64, p_z: f64) -> f64 {
    // Work in the phase variable; gamma_perp at peak field is constant.
    let gk = field.omega * (kappa * kappa + p_perp * p_perp).sqrt() / field.f0;
    let a = field.f0 / field.omega;
    // p_z(phi) = a sin(phi) sqrt(1 + gk^2/cos^2 phi)
    let f = |phi: f64| {
        let c = phi.cos();
        a * phi.sin() * (1.0 + gk * gk / (c * c)).sqrt() - p_z
    };
    let eps = 1e-9;
    let mut lo = -std::f64::consts::FRAC_PI_2 + eps;
    let mut hi = std::f64::consts::FRAC_PI_2 - eps;
    let mut phi = (p_z / a).atan(); // quasistatic guess
    for _ in 0..100 {
        let fv = f(phi);
        if fv > 0.0 {
            hi = phi;
        } else {
            lo = phi;
        }
        // numerical derivative is adequate: f is smooth and monotone
        let dphi = 1e-7;
        let d = (f(phi + dphi) - f(phi - dphi)) / (2.0 * dphi);
        let mut next = phi - fv / d;
        if !(next > lo && next < hi) {
            next = 0.5 * (lo + hi);
        }
        if (next - phi).abs() < 1e-15 {
            phi = next;
            break;
        }
        phi = next;
    }
    (phi - field.cep) / field.omega
}

/// Re S per the saddle-point action at observation time t for an electron
/// born at t_birth with momentum (p_perp, p_z):
///
///   Re S = (E + p^2/2 + U_p)(t - t_b)
///        + p_z (F0/omega^2)[cos th_t - cos th_b sqrt(1 + g_b^2)]
///        - (U_p/2 omega)[sin 2 th_t - sin 2 th_b (1 + 2 g_b^2)]
pub fn action_real(
    field: &LaserField,
    e_ip: f64,
    p_perp: f64,
    p_z: f64,
    t: f64,
    t_birth: f64,
) -> Result<f64> {
    let kappa = (2.0 * e_ip).sqrt();
    let g = gamma_perp_t(field, kappa, p_perp, t_birth)?;
    let up = field.f0 * field.f0 / (4.0 * field.omega * field.omega);
    let p2 = p_perp * p_perp + p_z * p_z;
    let th_t = field.omega * t + field.cep;
    let th_b = field.omega * t_birth + field.cep;
    Ok((e_ip + 0.5 * p2 + up) * (t - t_birth)
        + p_z * field.f0 / (field.omega * field.omega)
            * (th_t.cos() - th_b.cos() * (1.0 + g * g).sqrt())
        - up / (2.0 * field.omega)
            * ((2.0 * th_t).sin() - (2.0 * th_b).sin() * (1.0 + 2.0 * g * g)))
}

/// Im S at the birth time (<= 0):
///
///   Im S = -(E + p^2/2 + U_p) arcsinh(g_b)/omega
///        + p_z (F0/omega^2) g_b sin th_b
///        + (U_p/omega) g_b sqrt(1 + g_b^2) cos 2 th_b
///
/// Satisfies 2 Im S = -(2 kappa_perp^3 / 3 F0) g(p_perp, t_b) exactly at
/// p_perp = 0 and to leading order in p_perp^2 otherwise.
pub fn action_imag(field: &LaserField, e_ip: f64, p_perp: f64, t_birth: f64) -> Result<f64> {
    let kappa = (2.0 * e_ip).sqrt();
    let g = gamma_perp_t(field, kappa, p_perp, t_birth)?;
    let p_z = pz_of_birth(field, kappa, p_perp, t_birth)?;
    let up = field.f0 * field.f0 / (4.0 * field.omega * field.omega);
    let p2 = p_perp * p_perp + p_z * p_z;
    let th_b = field.omega * t_birth + field.cep;
    Ok(-(e_ip + 0.5 * p2 + up) * g.asinh() / field.omega
        + p_z * field.f0 / (field.omega * field.omega) * g * th_b.sin()
        + up / field.omega * g * (1.0 + g * g).sqrt() * (2.0 * th_b).cos())
}

/// Im S via the recast form, Im S = -(kappa_perp^3 / 3 F0) g(p_perp, t).
/// Equals [`action_imag`] at p_perp = 0 (leading order in p_perp^2
/// otherwise); kept as an independent code path for cross-checks.
pub fn action_imag_recast(field: &LaserField, e_ip: f64, p_perp: f64, t_birth: f64) -> f64 {
    let kperp3 = (2.0 * e_ip + p_perp * p_perp).powf(1.5);
    let kappa = (2.0 * e_ip).sqrt();
    -kperp3 / (3.0 * field.f0) * g_subcycle(p_perp, t_birth, field, kappa)
}

/// Birth delay between two channels sharing the same p_z, in units of the
/// birth-time uncertainty 1/sigma_E of the higher-lying channel
/// (sigma_E = E_2 + v^2/2, O(1) constant taken as 1).
///
/// `t` is the birth time of channel 1 (the lower ionization potential);
/// channel 2's birth time is found by matching p_z.
pub fn birth_delay_ratio(
    field: &LaserField,
    e1: f64,
    e2: f64,
    p_perp: f64,
    t: f64,
) -> Result<f64> {
    let k1 = (2.0 * e1).sqrt();
    let k2 = (2.0 * e2).sqrt();
    let p_z = pz_of_birth(field, k1, p_perp, t)?;
    let t2 = birth_of_pz(field, k2, p_perp, p_z);
    let v_z = p_z + field.vector_potential(t2);
    let sigma_e = e2 + 0.5 * (p_perp * p_perp + v_z * v_z);
    Ok((t2 - t).abs() * sigma_e)
}
