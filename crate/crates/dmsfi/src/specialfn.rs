//! Closed-form special functions underlying the nonadiabatic rate and
//! orbital rotation: the PPT g and h functions, the photon-channel sum
//! A_m, the Dawson integral w_0, and Wigner rotation matrices.

use ndarray::Array2;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::laser::LaserField;
use crate::units::FIELD_FLOOR;

/// g(gamma) = (3/2g)[(1 + 1/2g^2) arcsinh g - sqrt(1+g^2)/(2g)].
///
/// Quasistatic limit g -> 0 gives 1; monotone decreasing.
pub fn g_of_gamma(gamma: f64) -> Result<f64> {
    if gamma <= 0.0 {
        return Err(Error::Domain(format!("g_of_gamma: gamma = {gamma} <= 0")));
    }
    let g2 = gamma * gamma;
    Ok((3.0 / (2.0 * gamma))
        * ((1.0 + 0.5 / g2) * gamma.asinh() - (1.0 + g2).sqrt() / (2.0 * gamma)))
}

/// h(gamma): quadratic expansion coefficient of the subcycle g(t) around the
/// field crest, g(t) ~ g(gamma_K) + (wt)^2 h(gamma_K). 2h -> 1 as gamma -> 0.
pub fn h_of_gamma(gamma: f64) -> Result<f64> {
    if gamma <= 0.0 {
        return Err(Error::Domain(format!("h_of_gamma: gamma = {gamma} <= 0")));
    }
    let g2 = gamma * gamma;
    let sq = (1.0 + g2).sqrt();
    Ok((3.0 / (4.0 * gamma))
        * (2.0 * (1.0 + 1.0 / g2) * gamma.asinh() - 3.0 * sq / gamma
            + (1.0 + 1.0 / g2) * gamma / sq))
}

/// Subcycle g(p_perp, t): the tunneling exponent shape factor with
/// gamma_perp_t = omega*sqrt(kappa^2 + p_perp^2)/|F(t)| and the Keldysh
/// parameter taken from the local envelope amplitude F0 f(t).
///
/// Returns +inf when the field magnitude is below the floor; rate code maps
/// that to a vanishing rate.
pub fn g_subcycle(p_perp: f64, t: f64, field: &LaserField, kappa: f64) -> f64 {
    let f_env = field.envelope_amplitude(t);
    let f_abs = field.field_at(t).abs();
    if f_abs < FIELD_FLOOR || f_env < FIELD_FLOOR {
        return f64::INFINITY;
    }
    let gk = field.omega * kappa / f_env;
    let kperp = (kappa * kappa + p_perp * p_perp).sqrt();
    let gpt = field.omega * kperp / f_abs;
    let s2 = (field.omega * t + field.cep).sin().powi(2);
    (3.0 / (2.0 * gk))
        * ((1.0 + s2 * (1.0 + gpt * gpt) / (gk * gk) + 0.5 / (gk * gk)) * gpt.asinh()
            - gpt * (1.0 + gpt * gpt).sqrt() / (2.0 * gk * gk) * (1.0 + 2.0 * s2))
}

/// Dawson integral w_0(x) = (sqrt(pi)/2) e^{-x^2} erfi(x).
///
/// Maclaurin series for |x| <= 1, Rybicki's sampling formula otherwise;
/// both branches are accurate to ~1e-13 relative.
pub fn dawson_w0(x: f64) -> f64 {
    if x == 0.0 {
        return 0.0;
    }
    let ax = x.abs();
    let val = if ax <= 1.0 {
        let mut term = ax;
        let mut sum = ax;
        let mut n = 0u32;
        while term.abs() > 1e-18 * sum.abs() {
            n += 1;
            term *= -2.0 * ax * ax / (2 * n + 1) as f64;
            sum += term;
        }
        sum
    } else {
        // dawsn(x) = (1/sqrt(pi)) sum_{n odd} exp(-(x - n h)^2)/n, h = 0.2
        const H: f64 = 0.2;
        let nmax = ((ax + 9.0) / H) as i64 + 1;
        let mut sum = 0.0;
        let mut n = -nmax - ((nmax + 1) % 2);
        while n <= nmax {
            let d = ax - n as f64 * H;
            if d.abs() <= 9.0 {
                sum += (-d * d).exp() / n as f64;
            }
            n += 2;
        }
        sum / std::f64::consts::PI.sqrt()
    };
    val.copysign(x)
}

/// w_m(x) = (x^{2|m|+1}/2) int_0^1 e^{-x^2 t} t^{|m|} / sqrt(1-t) dt.
///
/// m = 0 reduces to the Dawson integral; |m| > 0 is evaluated by adaptive
/// quadrature after the substitution t = 1 - u^2 removes the endpoint
/// singularity. Only m = 0 sits on the propagation hot path.
pub fn w_m(x: f64, m: u32) -> f64 {
    if m == 0 {
        return dawson_w0(x);
    }
    let mm = m as i32;
    let integrand = |u: f64| {
        let t = 1.0 - u * u;
        2.0 * (-x * x * t).exp() * t.powi(mm)
    };
    let quad = adaptive_simpson(&integrand, 0.0, 1.0, 1e-12, 30);
    0.5 * x.powi(2 * mm + 1) * quad
}

fn adaptive_simpson(f: &dyn Fn(f64) -> f64, a: f64, b: f64, tol: f64, depth: u32) -> f64 {
    fn simpson(a: f64, fa: f64, b: f64, fb: f64, fm: f64) -> f64 {
        (b - a) / 6.0 * (fa + 4.0 * fm + fb)
    }
    fn recurse(
        f: &dyn Fn(f64) -> f64,
        a: f64,
        fa: f64,
        b: f64,
        fb: f64,
        fm: f64,
        whole: f64,
        tol: f64,
        depth: u32,
    ) -> f64 {
        let m = 0.5 * (a + b);
        let lm = 0.5 * (a + m);
        let rm = 0.5 * (m + b);
        let flm = f(lm);
        let frm = f(rm);
        let left = simpson(a, fa, m, fm, flm);
        let right = simpson(m, fm, b, fb, frm);
        if depth == 0 || (left + right - whole).abs() < 15.0 * tol {
            left + right + (left + right - whole) / 15.0
        } else {
            recurse(f, a, fa, m, fm, flm, left, 0.5 * tol, depth - 1)
                + recurse(f, m, fm, b, fb, frm, right, 0.5 * tol, depth - 1)
        }
    }
    let fa = f(a);
    let fb = f(b);
    let fm = f(0.5 * (a + b));
    let whole = simpson(a, fa, b, fb, fm);
    recurse(f, a, fa, b, fb, fm, whole, tol, depth)
}

/// A_m(omega, gamma, E): photon-channel sum of the PPT theory,
///
///   A_m = (4/sqrt(3 pi)) (1/|m|!) gamma^2/(1+gamma^2)
///         sum_{n >= nu} e^{-alpha (n-nu)} w_m(sqrt(beta (n-nu)))
///
/// with alpha = 2[arcsinh gamma - gamma/sqrt(1+gamma^2)],
/// beta = 2 gamma/sqrt(1+gamma^2), nu = (E/omega)(1 + 1/(2 gamma^2)).
///
/// The sum starts at n = ceil(nu) and is truncated at relative term 1e-12
/// (hard cap 1e5 terms; alpha > 0 guarantees geometric decay). For m = 0 and
/// very small alpha the sum is replaced by its exact continuum limit
/// (sqrt(pi beta) / (2 (alpha+beta) sqrt(alpha))), which reproduces the
/// quasistatic limit A_0 -> 1.
pub fn a_m(omega: f64, gamma: f64, e_ip: f64, m: u32) -> Result<f64> {
    if omega <= 0.0 || gamma <= 0.0 || e_ip <= 0.0 {
        return Err(Error::Domain(format!(
            "a_m: omega={omega}, gamma={gamma}, E={e_ip} must all be > 0"
        )));
    }
    let g2 = gamma * gamma;
    let sq = (1.0 + g2).sqrt();
    let alpha = 2.0 * (gamma.asinh() - gamma / sq);
    let beta = 2.0 * gamma / sq;
    let nu = (e_ip / omega) * (1.0 + 0.5 / g2);
    let mut fact = 1.0;
    for k in 1..=m {
        fact *= k as f64;
    }
    let pref = 4.0 / (3.0 * std::f64::consts::PI).sqrt() / fact * g2 / (1.0 + g2);

    if m == 0 && alpha < 3e-4 {
        let s = (std::f64::consts::PI * beta).sqrt() / (2.0 * (alpha + beta) * alpha.sqrt());
        return Ok(pref * s);
    }

    let n0 = nu.ceil();
    let mut sum = 0.0;
    let mut n = n0;
    let mut count = 0u32;
    loop {
        let d = n - nu;
        let term = (-alpha * d).exp() * w_m((beta * d).sqrt(), m);
        sum += term;
        n += 1.0;
        count += 1;
        if count > 10 && term < 1e-12 * sum {
            break;
        }
        if count >= 100_000 {
            break;
        }
    }
    Ok(pref * sum)
}

/// Cached PPT functions for one (laser, channel) combination.
#[derive(Debug, Clone, Copy)]
pub struct PptFunctions {
    pub gamma_k: f64,
    pub g: f64,
    pub h: f64,
    pub a0: f64,
}

impl PptFunctions {
    pub fn new(omega: f64, gamma_k: f64, e_ip: f64) -> Result<Self> {
        Ok(Self {
            gamma_k,
            g: g_of_gamma(gamma_k)?,
            h: h_of_gamma(gamma_k)?,
            a0: a_m(omega, gamma_k, e_ip, 0)?,
        })
    }
}

const MAX_L: i32 = 8;

fn factorial(n: i32) -> f64 {
    (1..=n).map(|k| k as f64).product()
}

/// Wigner small-d matrix element d^l_{m1 m2}(beta) by the factorial sum,
/// valid for l <= 8 (the bundled molecules need l <= 6).
pub fn small_d(l: i32, m1: i32, m2: i32, beta: f64) -> f64 {
    assert!(l >= 0 && l <= MAX_L && m1.abs() <= l && m2.abs() <= l);
    let pref = (factorial(l + m1) * factorial(l - m1) * factorial(l + m2) * factorial(l - m2))
        .sqrt();
    let c = (0.5 * beta).cos();
    let s = (0.5 * beta).sin();
    let mut tot = 0.0;
    for k in 0..=(2 * l) {
        if l + m2 - k < 0 || l - m1 - k < 0 || k + m1 - m2 < 0 {
            continue;
        }
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        tot += sign * c.powi(2 * l + m2 - m1 - 2 * k) * s.powi(m1 - m2 + 2 * k)
            / (factorial(l + m2 - k) * factorial(k) * factorial(k + m1 - m2) * factorial(l - m1 - k));
    }
    let phase = if (m1 - m2).rem_euclid(2) == 0 { 1.0 } else { -1.0 };
    pref * tot * phase
}

/// Full Wigner D matrix for angular momentum l, z-y-z extrinsic Euler angles
/// (alpha, beta, gamma). Rows/columns ordered m = -l..l.
pub fn wigner_d_matrix(l: i32, euler: (f64, f64, f64)) -> Array2<Complex64> {
    let (alpha, beta, gamma) = euler;
    let dim = (2 * l + 1) as usize;
    let mut out = Array2::zeros((dim, dim));
    for (i, m1) in (-l..=l).enumerate() {
        for (j, m2) in (-l..=l).enumerate() {
            let d = small_d(l, m1, m2, beta);
            let phase = Complex64::from_polar(1.0, -(m1 as f64) * alpha - (m2 as f64) * gamma);
            out[(i, j)] = phase * d;
        }
    }
    out
}

/// Q(l, m) = (-1)^{(m+|m|)/2} sqrt[(2l+1)(l+|m|)! / (2 (l-|m|)!)].
pub fn q_factor(l: i32, m: i32) -> Result<f64> {
    if m.abs() > l {
        return Err(Error::Domain(format!("q_factor: |m| = {} > l = {l}", m.abs())));
    }
    let sign = if ((m + m.abs()) / 2) % 2 == 0 { 1.0 } else { -1.0 };
    Ok(sign * ((2 * l + 1) as f64 / 2.0 * factorial(l + m.abs()) / factorial(l - m.abs())).sqrt())
}
