//! Wave-function-sum oracle: eigen solver sanity, closed-form limits, and
//! electron-density-matrix diagnostics.

use approx::assert_relative_eq;
use ndarray::array;
use num_complex::Complex64;

use dmsfi::propagator::{
    gamma_matrix, propagate, ModelVariant, PhaseVariant, PropagationOptions, RateContext,
};
use dmsfi::rates::{ionization_yield, RateKind};
use dmsfi::wforacle::{
    electron_dm_diagnostics, hermitian_eigenvalues, reconstruct_rho, trace_distance,
};
use dmsfi::{LaserField, MoleculeModel};

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

#[test]
fn eigenvalues_known_matrices() {
    // 2x2 Hermitian with analytic spectrum 1 +/- sqrt(2)
    let m = array![[c(1.0, 0.0), c(1.0, -1.0)], [c(1.0, 1.0), c(1.0, 0.0)]];
    let ev = hermitian_eigenvalues(&m);
    assert_relative_eq!(ev[0], 1.0 - 2f64.sqrt(), max_relative = 1e-12);
    assert_relative_eq!(ev[1], 1.0 + 2f64.sqrt(), max_relative = 1e-12);
    // diagonal matrix
    let d = array![
        [c(3.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)],
        [c(0.0, 0.0), c(-1.0, 0.0), c(0.0, 0.0)],
        [c(0.0, 0.0), c(0.0, 0.0), c(2.0, 0.0)]
    ];
    let ev = hermitian_eigenvalues(&d);
    assert_relative_eq!(ev[0], -1.0, max_relative = 1e-13);
    assert_relative_eq!(ev[1], 2.0, max_relative = 1e-13);
    assert_relative_eq!(ev[2], 3.0, max_relative = 1e-13);
}

#[test]
fn trace_distance_properties() {
    let a = array![[c(0.7, 0.0), c(0.1, 0.2)], [c(0.1, -0.2), c(0.3, 0.0)]];
    assert!(trace_distance(&a, &a) < 1e-14);
    let b = array![[c(1.0, 0.0), c(0.0, 0.0)], [c(0.0, 0.0), c(0.0, 0.0)]];
    let d = trace_distance(&a, &b);
    assert!(d > 0.0);
    assert_relative_eq!(d, trace_distance(&b, &a), max_relative = 1e-12);
}

#[test]
fn single_channel_reproduces_yield() {
    let h = MoleculeModel::builtin("h").unwrap();
    let field = LaserField::gaussian_intensity_fwhm(800.0, 1e14, 5.0, 0.0).unwrap();
    let (rho, rho0) =
        reconstruct_rho(&h, &field, 0.0, ModelVariant::Tic1, RateKind::Na, 8000).unwrap();
    let p = ionization_yield(&h.channels[0], &field, 0.0, RateKind::Na).unwrap();
    assert_relative_eq!(rho[(0, 0)].re, p, max_relative = 1e-4);
    assert_relative_eq!(rho0, 1.0 - p, max_relative = 1e-6);
}

#[test]
fn zero_dipole_coherence_matches_quadrature() {
    // with dipoles off, rho_ij(t_end) = int Gamma_ij(t) e^{-i(E_i - E_j)(t_end - t)} dt
    let n2 = MoleculeModel::builtin("n2").unwrap();
    let field = LaserField::gaussian_intensity_fwhm(900.0, 2e14, 3.7, 0.0).unwrap();
    let theta = 45f64.to_radians();
    let (rho, _) = reconstruct_rho(
        &n2, &field, theta, ModelVariant::Tic1D0, RateKind::Na, 8000,
    )
    .unwrap();

    let ctx =
        RateContext::new(&n2, &field, theta, RateKind::Na, PhaseVariant::ThisWork).unwrap();
    let (t0, t1) = field.window();
    let nsteps = 16000usize;
    let dt = (t1 - t0) / nsteps as f64;
    // rho0 by trapezoid of the total rate
    let n = n2.len();
    let mut w = vec![0.0; n];
    let mut cum = 0.0;
    let mut rho0s = Vec::with_capacity(nsteps + 1);
    ctx.rates_at(&field, t0, &mut w);
    let mut prev: f64 = w.iter().sum();
    rho0s.push(1.0);
    for i in 1..=nsteps {
        ctx.rates_at(&field, t0 + i as f64 * dt, &mut w);
        let cur: f64 = w.iter().sum();
        cum += 0.5 * (prev + cur) * dt;
        prev = cur;
        rho0s.push((-cum).exp());
    }
    let (i, j) = (0, n2.index_of("B").unwrap());
    let de = n2.channels[i].e_ip - n2.channels[j].e_ip;
    let mut acc = Complex64::new(0.0, 0.0);
    for k in 0..nsteps {
        let tm = t0 + (k as f64 + 0.5) * dt;
        let r0 = 0.5 * (rho0s[k] + rho0s[k + 1]);
        let g = gamma_matrix(&ctx, &field, tm, r0, ModelVariant::Tic1D0);
        acc += g[(i, j)] * Complex64::from_polar(1.0, -de * (t1 - tm)) * dt;
    }
    assert!(
        (rho[(i, j)] - acc).norm() < 1e-4 * acc.norm().max(1e-12),
        "oracle {:?} vs quadrature {:?}",
        rho[(i, j)],
        acc
    );
}

#[test]
fn oracle_matches_propagator_converged() {
    let n2 = MoleculeModel::builtin("n2").unwrap();
    let field = LaserField::gaussian_intensity_fwhm(900.0, 2e14, 3.7, 0.0).unwrap();
    let theta = 45f64.to_radians();
    let opts = PropagationOptions::default();
    let dm = propagate(&n2, &field, theta, &opts).unwrap();
    let rho_dm = dm.rho.last().unwrap();
    let (rho_wf, _) =
        reconstruct_rho(&n2, &field, theta, opts.variant, opts.rate, 4000).unwrap();
    assert!(trace_distance(rho_dm, &rho_wf) < 1e-4);
}

#[test]
fn electron_diagnostics() {
    let field = LaserField::cw(800.0, 1e14, 0.0).unwrap();
    let p_grid: Vec<f64> = (0..81).map(|i| -2.0 + 4.0 * i as f64 / 80.0).collect();

    // single channel: channel-mixing purity is exactly 1
    let h = MoleculeModel::builtin("h").unwrap();
    let (density, purity) = electron_dm_diagnostics(&h, &field, 0.0, &p_grid).unwrap();
    assert_relative_eq!(purity, 1.0, max_relative = 1e-12);
    // density symmetric in p_z
    for k in 0..p_grid.len() {
        let r = p_grid.len() - 1 - k;
        assert_relative_eq!(density[k], density[r], max_relative = 1e-10);
    }

    // several channels populated: purity drops below 1
    let n2 = MoleculeModel::builtin("n2").unwrap();
    let (_, purity_n2) =
        electron_dm_diagnostics(&n2, &field, 45f64.to_radians(), &p_grid).unwrap();
    assert!(purity_n2 < 1.0 - 1e-3, "purity = {purity_n2}");
}
