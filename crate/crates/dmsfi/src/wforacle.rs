//! Independent wave-function-sum construction of the reduced ionic density
//! matrix, used as an oracle for the density-matrix propagator, plus
//! reduced-electron-density-matrix diagnostics.
//!
//! The reconstruction evaluates
//!
//!   rho_N(t_end) = sum_b U(t_end, t_b) Gamma(t_b) U^dag(t_end, t_b) dt_b
//!
//! with U the time-ordered propagator of H_N(t). One propagator chain
//! W(t) = U(t, t0) is integrated once (RK4 on a uniform birth grid); each
//! slice then uses U(t_end, t_b) = W(t_end) W(t_b)^dag.

use ndarray::Array2;
use num_complex::Complex64;

use crate::channels::MoleculeModel;
use crate::error::Result;
use crate::kinematics;
use crate::laser::LaserField;
use crate::propagator::{gamma_matrix, ModelVariant, PhaseVariant, RateContext};
use crate::rates::{normalization_sq, RateKind};

/// Eigenvalues of a Hermitian matrix (matrices here are tiny, n <= 6):
/// embed m = X + iY into the real symmetric 2n x 2n matrix [[X, -Y], [Y, X]]
/// (whose spectrum is that of m, doubled) and run cyclic real Jacobi.
pub fn hermitian_eigenvalues(m: &Array2<Complex64>) -> Vec<f64> {
    let n = m.nrows();
    let nn = 2 * n;
    // normalize by the largest entry first: squaring entries of very small
    // matrices (rate matrices deep in the pulse wings can sit near 1e-160)
    // would otherwise underflow into denormals and destroy the sweep
    let amax = m.iter().map(|v| v.norm()).fold(0.0f64, f64::max);
    if amax == 0.0 {
        return vec![0.0; n];
    }
    let mut a = vec![vec![0.0f64; nn]; nn];
    for i in 0..n {
        for j in 0..n {
            a[i][j] = m[(i, j)].re / amax;
            a[i + n][j + n] = m[(i, j)].re / amax;
            a[i][j + n] = -m[(i, j)].im / amax;
            a[i + n][j] = m[(i, j)].im / amax;
        }
    }
    let scale: f64 = a
        .iter()
        .flatten()
        .map(|v| v * v)
        .sum::<f64>()
        .sqrt()
        .max(1e-300);
    for _sweep in 0..100 {
        let mut off = 0.0;
        for p in 0..nn {
            for q in (p + 1)..nn {
                off += a[p][q] * a[p][q];
            }
        }
        if off.sqrt() < 1e-15 * scale {
            break;
        }
        for p in 0..nn {
            for q in (p + 1)..nn {
                let apq = a[p][q];
                if apq.abs() < 1e-300 {
                    continue;
                }
                let theta = (a[q][q] - a[p][p]) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (1.0 + theta * theta).sqrt());
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                for k in 0..nn {
                    let akp = a[k][p];
                    let akq = a[k][q];
                    a[k][p] = c * akp - s * akq;
                    a[k][q] = s * akp + c * akq;
                }
                for k in 0..nn {
                    let apk = a[p][k];
                    let aqk = a[q][k];
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
            }
        }
    }
    let mut eig: Vec<f64> = (0..nn).map(|i| a[i][i] * amax).collect();
    eig.sort_by(|x, y| x.partial_cmp(y).expect("finite eigenvalues"));
    // spectrum is doubled; keep one of each pair
    eig.into_iter().step_by(2).collect()
}

/// Trace distance (1/2) ||a - b||_1 between two Hermitian matrices.
pub fn trace_distance(a: &Array2<Complex64>, b: &Array2<Complex64>) -> f64 {
    let d = a - b;
    0.5 * hermitian_eigenvalues(&d).iter().map(|e| e.abs()).sum::<f64>()
}

/// Reconstruct rho_N(t_end) by summing propagated birth slices on a uniform
/// grid of `n_steps` intervals over the field window. Returns the matrix and
/// the neutral population at the end of the pulse.
///
/// Second-order accurate in the grid spacing (midpoint slices).
pub fn reconstruct_rho(
    molecule: &MoleculeModel,
    field: &LaserField,
    theta: f64,
    variant: ModelVariant,
    kind: RateKind,
    n_steps: usize,
) -> Result<(Array2<Complex64>, f64)> {
    let n = molecule.len();
    let ctx = RateContext::new(molecule, field, theta, kind, PhaseVariant::ThisWork)?;
    let (t0, t1) = field.window();
    let dt = (t1 - t0) / n_steps as f64;
    let include_dipoles = variant != ModelVariant::Tic1D0;

    // neutral population by cumulative trapezoid of the total rate on a
    // finer grid, interpolated to slice midpoints
    let nfine = 8 * n_steps;
    let dtf = (t1 - t0) / nfine as f64;
    let mut w = vec![0.0; n];
    let mut cum = Vec::with_capacity(nfine + 1);
    cum.push(0.0);
    let mut prev = {
        ctx.rates_at(field, t0, &mut w);
        w.iter().sum::<f64>()
    };
    for i in 1..=nfine {
        ctx.rates_at(field, t0 + i as f64 * dtf, &mut w);
        let cur = w.iter().sum::<f64>();
        let last = *cum.last().expect("nonempty");
        cum.push(last + 0.5 * (prev + cur) * dtf);
        prev = cur;
    }
    let rho0_at = |t: f64| -> f64 {
        let x = ((t - t0) / dtf).clamp(0.0, nfine as f64);
        let i = (x.floor() as usize).min(nfine - 1);
        let frac = x - i as f64;
        (-(cum[i] * (1.0 - frac) + cum[i + 1] * frac)).exp()
    };

    let ham = |t: f64| molecule.hamiltonian_at(field, theta, t, include_dipoles);
    let mi = Complex64::new(0.0, -1.0);

    let mut wmat: Array2<Complex64> = Array2::eye(n);
    let mut acc: Array2<Complex64> = Array2::zeros((n, n));
    for istep in 0..n_steps {
        let t = t0 + istep as f64 * dt;
        let tm = t + 0.5 * dt;
        // RK4 for dW/dt = -i H(t) W
        let k1 = ham(t).dot(&wmat) * mi;
        let k2 = ham(tm).dot(&(&wmat + &(&k1 * (0.5 * dt)))) * mi;
        let k3 = ham(tm).dot(&(&wmat + &(&k2 * (0.5 * dt)))) * mi;
        let k4 = ham(t + dt).dot(&(&wmat + &(&k3 * dt))) * mi;
        // midpoint estimate of W for the slice accumulation
        let wmid = &wmat + &((&k1 + &k2) * (0.25 * dt));
        let g = gamma_matrix(&ctx, field, tm, rho0_at(tm), variant);
        let wmid_h = conj_transpose(&wmid);
        acc = acc + wmid_h.dot(&g).dot(&wmid) * Complex64::new(dt, 0.0);
        wmat = &wmat + &((k1 + &(k2 * 2.0) + &(k3 * 2.0) + k4) * (dt / 6.0));
    }
    let w_h = conj_transpose(&wmat);
    let rho = wmat.dot(&acc).dot(&w_h);
    Ok((rho, rho0_at(t1)))
}

fn conj_transpose(m: &Array2<Complex64>) -> Array2<Complex64> {
    let mut out = m.t().to_owned();
    out.mapv_inplace(|v| v.conj());
    out
}

/// Discrete-grid diagnostics of the reduced electron density matrix:
/// momentum-space population density sum_i |a_ip|^2 on `p_grid` (p_z values,
/// p_perp = 0) and the channel-mixing purity proxy Tr(rho_e^2)/Tr(rho_e)^2.
///
/// Amplitudes are the saddle-point ones, |a_ip|^2 = |C_i|^2 e^{2 Im S_i(p)},
/// with the phase e^{-i Re S_i} evaluated at the end of the window. This is
/// a discrete proxy: the continuum (Volkov) normalization is not included.
pub fn electron_dm_diagnostics(
    molecule: &MoleculeModel,
    field: &LaserField,
    theta: f64,
    p_grid: &[f64],
) -> Result<(Vec<f64>, f64)> {
    let n = molecule.len();
    let t_end = field.window().1;
    let mut amps: Vec<Vec<Complex64>> = vec![Vec::with_capacity(p_grid.len()); n];
    for &pz in p_grid {
        for (i, ch) in molecule.channels.iter().enumerate() {
            let kappa = ch.kappa();
            let tb = kinematics::birth_of_pz(field, kappa, 0.0, pz);
            let c2 = normalization_sq(ch, field, theta)?;
            let ims = kinematics::action_imag(field, ch.e_ip, 0.0, tb)?;
            let res = kinematics::action_real(field, ch.e_ip, 0.0, pz, t_end, tb)?;
            let mag2 = c2 * (2.0 * ims).exp();
            amps[i].push(Complex64::from_polar(mag2.sqrt(), -res));
        }
    }
    // population density over p (both half-cycles of a cw field contribute;
    // the mirrored half-cycle maps p_z -> -p_z with equal weight)
    let density: Vec<f64> = (0..p_grid.len())
        .map(|k| {
            let rev = p_grid.len() - 1 - k;
            (0..n)
                .map(|i| amps[i][k].norm_sqr() + amps[i][rev].norm_sqr())
                .sum()
        })
        .collect();
    // channel-mixing purity from the Gram matrix of the amplitude vectors
    let mut gram = Array2::<Complex64>::zeros((n, n));
    for i in 0..n {
        for j in 0..n {
            let mut s = Complex64::new(0.0, 0.0);
            for k in 0..p_grid.len() {
                s += amps[i][k] * amps[j][k].conj();
            }
            gram[(i, j)] = s;
        }
    }
    let tr: f64 = (0..n).map(|i| gram[(i, i)].re).sum();
    let tr2: f64 = gram.iter().map(|v| v.norm_sqr()).sum();
    let purity = if tr > 0.0 { tr2 / (tr * tr) } else { 1.0 };
    Ok((density, purity))
}
