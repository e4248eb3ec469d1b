//! The DM-SFI propagator: ionization matrix Gamma, neutral depletion, and
//! the equation of motion
//!
//!   d rho/dt  = -i [H(t), rho] + Gamma(t),
//!   d rho0/dt = -rho0 sum_i w_i(t),
//!
//! integrated with an adaptive RK5(4) and dense output on a fixed 10-as grid.

use std::collections::BTreeMap;

use ndarray::Array2;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::channels::MoleculeModel;
use crate::error::Result;
use crate::laser::LaserField;
use crate::ode::Dopri5;
use crate::rates::{ChannelRateCache, RateKind};
use crate::units::{self, AS_AU};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ModelVariant {
    /// Full model: tunnel-ionization coherence and dipole couplings.
    #[serde(rename = "TIC1")]
    Tic1,
    /// Dipole couplings only; off-diagonal Gamma zeroed.
    #[serde(rename = "TIC0")]
    Tic0,
    /// Tunnel-ionization coherence only; all dipoles zeroed.
    #[serde(rename = "TIC1-D0")]
    Tic1D0,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PhaseVariant {
    /// Phases as derived here: the Coulomb phase cancels in Gamma.
    ThisWork,
    /// Extra per-channel phase e^{i pi Z/kappa_i} on B_i (the quasistatic
    /// Coulomb phase retained, as in earlier coherence models).
    CoulombPhaseRef,
}

#[derive(Debug, Clone, Copy)]
pub struct PropagationOptions {
    pub variant: ModelVariant,
    pub rate: RateKind,
    pub phase: PhaseVariant,
    pub rtol: f64,
    pub atol: f64,
    /// Maximum integrator step, a.u. (0.1 fs).
    pub max_step: f64,
    /// Dense-output sampling interval, a.u. (10 as).
    pub sample_dt: f64,
}

impl Default for PropagationOptions {
    fn default() -> Self {
        Self {
            variant: ModelVariant::Tic1,
            rate: RateKind::Na,
            phase: PhaseVariant::ThisWork,
            rtol: 1e-8,
            atol: 1e-10,
            max_step: 0.1 * units::FS_AU,
            sample_dt: 10.0 * AS_AU,
        }
    }
}

/// Reduced ionic density matrix plus neutral population at one time.
#[derive(Debug, Clone)]
pub struct IonDensityMatrix {
    pub t: f64,
    pub rho: Array2<Complex64>,
    pub rho0: f64,
}

/// Precomputed per-scenario rate context shared by the propagator and the
/// wave-function oracle.
pub struct RateContext {
    pub caches: Vec<ChannelRateCache>,
    pub kind: RateKind,
    pub phase: PhaseVariant,
}

impl RateContext {
    pub fn new(
        molecule: &MoleculeModel,
        field: &LaserField,
        theta: f64,
        kind: RateKind,
        phase: PhaseVariant,
    ) -> Result<Self> {
        let caches = molecule
            .channels
            .iter()
            .map(|c| ChannelRateCache::new(c, field, theta))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { caches, kind, phase })
    }

    pub fn rates_at(&self, field: &LaserField, t: f64, w: &mut [f64]) {
        for (wi, c) in w.iter_mut().zip(&self.caches) {
            *wi = c.rate(self.kind, field, t);
        }
    }

    /// Complex B_i at the instantaneous field sign, including the optional
    /// Coulomb-phase factor.
    pub fn b_at(&self, field: &LaserField, t: f64, b: &mut [Complex64]) {
        let sign = field.field_at(t).signum();
        for (bi, c) in b.iter_mut().zip(&self.caches) {
            let b0 = c.b0_signed(sign);
            *bi = match self.phase {
                PhaseVariant::ThisWork => Complex64::new(b0, 0.0),
                PhaseVariant::CoulombPhaseRef => {
                    Complex64::from_polar(1.0, std::f64::consts::PI * c.z / c.kappa) * b0
                }
            };
        }
    }
}

/// Ionization matrix Gamma_ij = rho0 (B_i B_j^* / |B_i||B_j|) sqrt(w_i w_j).
///
/// Hermitian, positive semidefinite, rank-1 phase structure
/// (|Gamma_ij|^2 = Gamma_ii Gamma_jj); rows and columns of channels with
/// B_0 = 0 at this orientation are zero.
pub fn gamma_matrix(
    ctx: &RateContext,
    field: &LaserField,
    t: f64,
    rho0: f64,
    variant: ModelVariant,
) -> Array2<Complex64> {
    let n = ctx.caches.len();
    let mut w = vec![0.0; n];
    let mut b = vec![Complex64::new(0.0, 0.0); n];
    ctx.rates_at(field, t, &mut w);
    ctx.b_at(field, t, &mut b);
    let mut g = Array2::zeros((n, n));
    for i in 0..n {
        g[(i, i)] = Complex64::new(rho0 * w[i], 0.0);
        if variant == ModelVariant::Tic0 {
            continue;
        }
        for j in (i + 1)..n {
            let (bi, bj) = (b[i], b[j]);
            if bi.norm() == 0.0 || bj.norm() == 0.0 {
                continue;
            }
            let phase = bi * bj.conj() / (bi.norm() * bj.norm());
            // sqrt before multiplying: the product of two deep-wing rates can
            // underflow even when its square root is representable
            let val = phase * (rho0 * w[i].sqrt() * w[j].sqrt());
            g[(i, j)] = val;
            g[(j, i)] = val.conj();
        }
    }
    g
}

/// gamma_e = omega / Delta: the second adiabaticity parameter for
/// postionization excitation across an energy gap Delta.
pub fn adiabaticity_gamma_e(delta_e_ev: f64, wavelength_nm: f64) -> f64 {
    units::omega_from_wavelength(wavelength_nm) / units::ev_to_au(delta_e_ev)
}

/// Summary scalars of one propagation.
#[derive(Debug, Clone, Serialize)]
pub struct Summary {
    pub final_rho0: f64,
    pub total_yield: f64,
    /// Per-channel final populations, channel order.
    pub final_populations: Vec<f64>,
    /// Degeneracy-summed populations keyed by group label.
    pub grouped_populations: BTreeMap<String, f64>,
    /// max over time of |rho_ij| keyed by "label_i|label_j".
    pub max_abs_coherence: BTreeMap<String, f64>,
    /// |rho_ij| at the end of the pulse.
    pub final_abs_coherence: BTreeMap<String, f64>,
}

/// Time series of the propagated ionic density matrix on the sample grid.
pub struct SimulationResult {
    pub labels: Vec<String>,
    pub times: Vec<f64>,
    pub rho0: Vec<f64>,
    pub rho: Vec<Array2<Complex64>>,
    pub summary: Summary,
}

impl SimulationResult {
    pub fn population(&self, channel: usize) -> Vec<f64> {
        self.rho.iter().map(|r| r[(channel, channel)].re).collect()
    }

    pub fn coherence(&self, i: usize, j: usize) -> Vec<Complex64> {
        self.rho.iter().map(|r| r[(i, j)]).collect()
    }
}

fn pack(rho: &Array2<Complex64>, rho0: f64, y: &mut [f64]) {
    let n = rho.nrows();
    for i in 0..n {
        for j in 0..n {
            y[2 * (i * n + j)] = rho[(i, j)].re;
            y[2 * (i * n + j) + 1] = rho[(i, j)].im;
        }
    }
    y[2 * n * n] = rho0;
}

fn unpack(y: &[f64], n: usize) -> (Array2<Complex64>, f64) {
    let mut rho = Array2::zeros((n, n));
    for i in 0..n {
        for j in 0..n {
            rho[(i, j)] = Complex64::new(y[2 * (i * n + j)], y[2 * (i * n + j) + 1]);
        }
    }
    (rho, y[2 * n * n])
}

/// Propagate the DM-SFI equation of motion over the field window with
/// rho(t0) = 0, rho0(t0) = 1.
pub fn propagate(
    molecule: &MoleculeModel,
    field: &LaserField,
    theta: f64,
    opts: &PropagationOptions,
) -> Result<SimulationResult> {
    let n = molecule.len();
    let ctx = RateContext::new(molecule, field, theta, opts.rate, opts.phase)?;
    let (t0, t1) = field.window();
    let include_dipoles = opts.variant != ModelVariant::Tic1D0;

    let dim = 2 * n * n + 1;
    let mut y0 = vec![0.0; dim];
    y0[2 * n * n] = 1.0;

    let nsamp = ((t1 - t0) / opts.sample_dt).round() as usize;
    let samples: Vec<f64> = (0..=nsamp)
        .map(|i| t0 + (t1 - t0) * i as f64 / nsamp as f64)
        .collect();

    let mut w = vec![0.0; n];
    let mut b = vec![Complex64::new(0.0, 0.0); n];
    let rhs = |t: f64, y: &[f64], dy: &mut [f64]| {
        let (rho, rho0) = unpack(y, n);
        let h = molecule.hamiltonian_at(field, theta, t, include_dipoles);
        ctx.rates_at(field, t, &mut w);
        ctx.b_at(field, t, &mut b);
        let mut drho: Array2<Complex64> = Array2::zeros((n, n));
        // -i [H, rho]
        let comm = h.dot(&rho) - rho.dot(&h);
        for i in 0..n {
            for j in 0..n {
                drho[(i, j)] = Complex64::new(0.0, -1.0) * comm[(i, j)];
            }
        }
        // + Gamma
        for i in 0..n {
            drho[(i, i)] += rho0 * w[i];
            if opts.variant != ModelVariant::Tic0 {
                for j in (i + 1)..n {
                    if b[i].norm() == 0.0 || b[j].norm() == 0.0 {
                        continue;
                    }
                    let phase = b[i] * b[j].conj() / (b[i].norm() * b[j].norm());
                    let val = phase * (rho0 * w[i].sqrt() * w[j].sqrt());
                    drho[(i, j)] += val;
                    drho[(j, i)] += val.conj();
                }
            }
        }
        let wtot: f64 = w.iter().sum();
        pack(&drho, -rho0 * wtot, dy);
    };

    let solver = Dopri5 {
        rtol: opts.rtol,
        atol: opts.atol,
        max_step: opts.max_step,
    };
    let mut times = Vec::with_capacity(samples.len());
    let mut rho0s = Vec::with_capacity(samples.len());
    let mut rhos = Vec::with_capacity(samples.len());
    solver.integrate(rhs, t0, t1, &y0, &samples, |_, t, y| {
        let (rho, rho0) = unpack(y, n);
        times.push(t);
        rho0s.push(rho0);
        rhos.push(rho);
    })?;

    let labels: Vec<String> = molecule.channels.iter().map(|c| c.label.clone()).collect();
    let last = rhos.last().expect("at least one sample");
    let final_populations: Vec<f64> = (0..n).map(|i| last[(i, i)].re).collect();
    let mut grouped = BTreeMap::new();
    for (name, idx) in molecule.population_groups() {
        grouped.insert(name, idx.iter().map(|&i| last[(i, i)].re).sum());
    }
    let mut max_coh = BTreeMap::new();
    let mut final_coh = BTreeMap::new();
    for i in 0..n {
        for j in (i + 1)..n {
            let key = format!("{}|{}", labels[i], labels[j]);
            let mx = rhos
                .iter()
                .map(|r| r[(i, j)].norm())
                .fold(0.0f64, f64::max);
            max_coh.insert(key.clone(), mx);
            final_coh.insert(key, last[(i, j)].norm());
        }
    }
    let final_rho0 = *rho0s.last().expect("at least one sample");
    let summary = Summary {
        final_rho0,
        total_yield: 1.0 - final_rho0,
        final_populations,
        grouped_populations: grouped,
        max_abs_coherence: max_coh,
        final_abs_coherence: final_coh,
    };
    Ok(SimulationResult {
        labels,
        times,
        rho0: rho0s,
        rho: rhos,
        summary,
    })
}

/// Times of the subcycle ionization bursts of one channel: local maxima of
/// the channel's rate w(t) above `frac` of its global maximum, located on a
/// fine scan grid.
pub fn burst_times(
    molecule: &MoleculeModel,
    field: &LaserField,
    theta: f64,
    kind: RateKind,
    channel: usize,
    frac: f64,
) -> Result<Vec<f64>> {
    let ctx = RateContext::new(molecule, field, theta, kind, PhaseVariant::ThisWork)?;
    let (t0, t1) = field.window();
    let dt = 10.0 * AS_AU;
    let nsteps = ((t1 - t0) / dt) as usize;
    let w: Vec<f64> = (0..=nsteps)
        .map(|i| {
            ctx.caches[channel].rate(kind, field, t0 + i as f64 * dt)
        })
        .collect();
    let wmax = w.iter().cloned().fold(0.0f64, f64::max);
    let mut out = Vec::new();
    for i in 1..nsteps {
        if w[i] > w[i - 1] && w[i] >= w[i + 1] && w[i] > frac * wmax {
            out.push(t0 + i as f64 * dt);
        }
    }
    Ok(out)
}
