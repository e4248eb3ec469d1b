//! End-to-end acceptance gate: one test (and one printed pass/fail line)
//! per headline result. Run with `--nocapture` to see the measured numbers.

use std::collections::BTreeMap;

use dmsfi::kinematics::{action_imag, birth_delay_ratio};
use dmsfi::propagator::{
    adiabaticity_gamma_e, burst_times, gamma_matrix, propagate, ModelVariant, PhaseVariant,
    PropagationOptions, RateContext,
};
use dmsfi::rates::{adk_rate, subcycle_rate, RateKind};
use dmsfi::units::{au_to_fs, ev_to_au, INTENSITY_AU};
use dmsfi::wforacle::{hermitian_eigenvalues, reconstruct_rho, trace_distance};
use dmsfi::{LaserField, MoleculeModel};

fn report(criterion: u32, pass: bool, detail: &str) {
    println!(
        "criterion {criterion}: {} -- {detail}",
        if pass { "PASS" } else { "FAIL" }
    );
}

fn n2_pulse() -> (MoleculeModel, LaserField) {
    (
        MoleculeModel::builtin("n2").unwrap(),
        LaserField::gaussian_intensity_fwhm(900.0, 2e14, 3.7, 0.0).unwrap(),
    )
}

#[test]
fn criterion_1_keldysh_tables() {
    let field = LaserField::cw(900.0, 2e14, 0.0).unwrap();
    let mut pass = true;
    let mut worst = String::new();
    let tables: [(&str, Vec<(&str, f64, f64)>); 2] = [
        (
            "n2",
            vec![("X", 0.717, 0.0616), ("A+", 0.748, 0.0544), ("B", 0.787, 0.0467)],
        ),
        (
            "co2",
            vec![
                ("X+", 0.675, 0.0739),
                ("A+", 0.765, 0.0509),
                ("B", 0.776, 0.0488),
                ("C", 0.800, 0.0443),
            ],
        ),
    ];
    for (name, rows) in &tables {
        let m = MoleculeModel::builtin(name).unwrap();
        for &(label, gk_want, ratio_want) in rows {
            let kappa = m.channels[m.index_of(label).unwrap()].kappa();
            let gk = field.keldysh(kappa);
            let ratio = field.f0 / kappa.powi(3);
            if (gk - gk_want).abs() > 0.002 || (ratio - ratio_want).abs() > 0.0005 {
                pass = false;
                worst = format!("{name} {label}: gamma_K {gk:.4}, F0/k^3 {ratio:.5}");
            }
        }
    }
    let h_kappa = MoleculeModel::builtin("h").unwrap().channels[0].kappa();
    for (lambda, want) in [(800.0, 1.07), (1600.0, 0.53)] {
        let gk = LaserField::cw(lambda, 1e14, 0.0).unwrap().keldysh(h_kappa);
        if (gk - want).abs() > 0.005 {
            pass = false;
            worst = format!("H at {lambda} nm: gamma_K {gk:.4}");
        }
    }
    report(1, pass, &format!("all gamma_K and F0/kappa^3 table entries {worst}"));
    assert!(pass, "{worst}");
}

#[test]
fn criterion_2_h1s_peak_ratios() {
    let h = MoleculeModel::builtin("h").unwrap();
    let ch = &h.channels[0];
    let mut ratios = Vec::new();
    for lambda in [800.0, 1600.0] {
        let field = LaserField::cw(lambda, 1e14, 0.0).unwrap();
        ratios.push(subcycle_rate(ch, &field, 0.0, 0.0) / adk_rate(ch, &field, 0.0, 0.0));
    }
    let pass = (ratios[0] - 1.14).abs() <= 0.02 && (ratios[1] - 0.67).abs() <= 0.03;
    report(
        2,
        pass,
        &format!(
            "w_NA/w_ADK at peak: {:.4} (target 1.14 +/- 0.02), {:.4} (target 0.67 +/- 0.03)",
            ratios[0], ratios[1]
        ),
    );
    assert!(
        pass,
        "peak-rate ratios {:.4} / {:.4} outside the quoted bands",
        ratios[0], ratios[1]
    );
}

#[test]
fn criterion_3_quasistatic_reduction() {
    // gamma_K <= 0.05 for H 1s: set the intensity from the target gamma_K
    let h = MoleculeModel::builtin("h").unwrap();
    let ch = &h.channels[0];
    let mut pass = true;
    let mut detail = String::new();
    for gk_target in [0.05, 0.02] {
        // fixed tunneling-regime intensity; pick the wavelength for gamma_K
        let intensity = 1e14;
        let f0 = (intensity / INTENSITY_AU).sqrt();
        let omega = gk_target * f0 / ch.kappa();
        let lambda = dmsfi::units::OMEGA_NM / omega;
        let field = LaserField::cw(lambda, intensity, 0.0).unwrap();
        let n = 4000;
        let peak_adk = adk_rate(ch, &field, 0.0, 0.0);
        let mut dev_all = 0.0f64;
        let mut dev_supported = 0.0f64;
        for i in 0..n {
            let t = field.period() * (i as f64 / n as f64 - 0.5);
            let w_adk = adk_rate(ch, &field, 0.0, t);
            if w_adk == 0.0 {
                continue;
            }
            let dev = (subcycle_rate(ch, &field, 0.0, t) / w_adk - 1.0).abs();
            dev_all = dev_all.max(dev);
            if w_adk >= 1e-2 * peak_adk {
                dev_supported = dev_supported.max(dev);
            }
        }
        if dev_supported > 0.1 {
            pass = false;
        }
        detail.push_str(&format!(
            "gamma_K {gk_target}: max dev {dev_all:.3} over all phases, {dev_supported:.3} where w_ADK >= 1% of peak; "
        ));
    }
    report(3, pass, detail.trim_end_matches("; "));
    assert!(pass, "{detail}");
}

#[test]
fn criterion_4_action_diagnostics() {
    let field = LaserField::cw(800.0, 1e14, 0.0).unwrap();
    let (e1, e2) = (ev_to_au(12.0), ev_to_au(15.3));
    let im1 = action_imag(&field, e1, 0.0, 0.0).unwrap();
    let im2 = action_imag(&field, e2, 0.0, 0.0).unwrap();
    let excess = 100.0 * (im2.abs() - im1.abs()) / im1.abs();
    let mut max_ratio = 0.0f64;
    for i in -16..=16 {
        let phase = std::f64::consts::FRAC_PI_4 * i as f64 / 16.0;
        max_ratio =
            max_ratio.max(birth_delay_ratio(&field, e1, e2, 0.0, phase / field.omega).unwrap());
    }
    let pass = (excess - 42.2).abs() <= 1.0 && max_ratio < 1.0;
    report(
        4,
        pass,
        &format!(
            "|Im S_2| excess {excess:.2}% (target 42.2 +/- 1), max birth-delay ratio {max_ratio:.3}"
        ),
    );
    assert!(pass);
}

#[test]
fn criterion_5_oracle_equivalence() {
    let (n2, field) = n2_pulse();
    let theta = 45f64.to_radians();
    let opts = PropagationOptions::default();
    let dm = propagate(&n2, &field, theta, &opts).unwrap();
    let rho_dm = dm.rho.last().unwrap();
    let mut dist = Vec::new();
    for n_steps in [500usize, 1000, 2000] {
        let (rho_wf, _) =
            reconstruct_rho(&n2, &field, theta, opts.variant, opts.rate, n_steps).unwrap();
        dist.push(trace_distance(rho_dm, &rho_wf));
    }
    // convergence at least second order under grid doubling
    let orders: Vec<f64> = (1..dist.len()).map(|i| (dist[i - 1] / dist[i]).log2()).collect();
    let pass = dist[2] < 1e-4 && orders.iter().all(|&o| o >= 2.0);
    report(
        5,
        pass,
        &format!(
            "trace distance {:.2e} at 2000 birth steps; convergence orders {:.1}, {:.1}",
            dist[2], orders[0], orders[1]
        ),
    );
    assert!(pass);
}

#[test]
fn criterion_6_conservation_suite() {
    let scenarios: Vec<(MoleculeModel, LaserField, f64)> = vec![
        (
            MoleculeModel::builtin("n2").unwrap(),
            LaserField::gaussian_intensity_fwhm(900.0, 2e14, 3.7, 0.0).unwrap(),
            45f64.to_radians(),
        ),
        (
            MoleculeModel::builtin("co2").unwrap(),
            LaserField::gaussian_intensity_fwhm(900.0, 2e14, 3.7, 0.0).unwrap(),
            40f64.to_radians(),
        ),
        (
            MoleculeModel::builtin("co2").unwrap(),
            LaserField::gaussian_intensity_fwhm(800.0, 1e14, 20.0, 0.0).unwrap(),
            0.0,
        ),
        (
            MoleculeModel::builtin("h").unwrap(),
            LaserField::gaussian_intensity_fwhm(800.0, 1e14, 5.0, 0.0).unwrap(),
            0.0,
        ),
    ];
    let mut pass = true;
    let mut worst_herm = 0.0f64;
    let mut worst_trace = 0.0f64;
    let mut worst_rank1 = 0.0f64;
    for (m, field, theta) in &scenarios {
        let r = propagate(m, field, *theta, &PropagationOptions::default()).unwrap();
        for (k, rho) in r.rho.iter().enumerate() {
            let mut trace = 0.0;
            for i in 0..m.len() {
                trace += rho[(i, i)].re;
                for j in 0..m.len() {
                    worst_herm = worst_herm.max((rho[(i, j)] - rho[(j, i)].conj()).norm());
                }
            }
            worst_trace = worst_trace.max((trace + r.rho0[k] - 1.0).abs());
        }
        // Gamma structure on a coarse grid
        let ctx =
            RateContext::new(m, field, *theta, RateKind::Na, PhaseVariant::ThisWork).unwrap();
        let (t0, t1) = field.window();
        for i in 0..200 {
            let t = t0 + (t1 - t0) * i as f64 / 199.0;
            let g = gamma_matrix(&ctx, field, t, 1.0, ModelVariant::Tic1);
            let scale = (0..m.len()).map(|i| g[(i, i)].re).fold(0.0f64, f64::max);
            if scale == 0.0 {
                continue;
            }
            for a in 0..m.len() {
                for b in 0..m.len() {
                    let lhs = g[(a, b)].norm_sqr();
                    let rhs = g[(a, a)].re * g[(b, b)].re;
                    worst_rank1 = worst_rank1.max((lhs - rhs).abs() / (scale * scale));
                }
            }
            if hermitian_eigenvalues(&g).iter().any(|&e| e < -1e-12 * scale) {
                pass = false;
            }
        }
    }
    pass = pass && worst_herm < 1e-10 && worst_trace < 1e-7 && worst_rank1 < 1e-12;
    report(
        6,
        pass,
        &format!(
            "hermiticity {worst_herm:.1e}, trace law {worst_trace:.1e}, rank-1 residual {worst_rank1:.1e}"
        ),
    );
    assert!(pass);
}

#[test]
fn criterion_7_n2_fig4_numbers() {
    let (n2, field) = n2_pulse();
    let theta = 45f64.to_radians();
    let na = propagate(&n2, &field, theta, &PropagationOptions::default()).unwrap();
    let adk = propagate(
        &n2,
        &field,
        theta,
        &PropagationOptions {
            rate: RateKind::Adk,
            ..Default::default()
        },
    )
    .unwrap();
    let cp = propagate(
        &n2,
        &field,
        theta,
        &PropagationOptions {
            rate: RateKind::Adk,
            phase: PhaseVariant::CoulombPhaseRef,
            ..Default::default()
        },
    )
    .unwrap();

    let mut pass = true;
    let mut excesses = Vec::new();
    let mut diffs = Vec::new();
    for (group, excess_want, diff_want) in
        [("X", 28.3, 8.96), ("A", 24.8, 6.77), ("B", 15.8, 2.70)]
    {
        let p_na = na.summary.grouped_populations[group];
        let p_adk = adk.summary.grouped_populations[group];
        let p_cp = cp.summary.grouped_populations[group];
        let excess = 100.0 * (p_adk - p_na) / p_na;
        let diff = 100.0 * (p_cp - p_adk).abs() / p_adk;
        if (excess - excess_want).abs() > 3.0 || (diff - diff_want).abs() > 1.5 {
            pass = false;
        }
        excesses.push(format!("{excess:.1}"));
        diffs.push(format!("{diff:.2}"));
    }

    let bursts: Vec<f64> = burst_times(&n2, &field, theta, RateKind::Na, 0, 0.01)
        .unwrap()
        .iter()
        .map(|&t| au_to_fs(t))
        .collect();
    let burst_ok = bursts.len() == 3
        && (bursts[0] + 1.4).abs() <= 0.15
        && bursts[1].abs() <= 0.15
        && (bursts[2] - 1.4).abs() <= 0.15;
    pass = pass && burst_ok;
    report(
        7,
        pass,
        &format!(
            "ADK excesses {}% (targets 28.3/24.8/15.8 +/- 3); phase-variant diffs {}% (targets 8.96/6.77/2.70 +/- 1.5); bursts {:?} fs",
            excesses.join("/"),
            diffs.join("/"),
            bursts
        ),
    );
    assert!(pass);
}

fn co2_angle_scan(
    variant: ModelVariant,
) -> (Vec<BTreeMap<String, f64>>, Vec<BTreeMap<String, f64>>) {
    let co2 = MoleculeModel::builtin("co2").unwrap();
    let field = LaserField::gaussian_intensity_fwhm(900.0, 2e14, 3.7, 0.0).unwrap();
    let opts = PropagationOptions {
        variant,
        ..Default::default()
    };
    let mut pops = Vec::new();
    let mut cohs = Vec::new();
    for i in 0..19 {
        let theta = (5.0 * i as f64).to_radians();
        let r = propagate(&co2, &field, theta, &opts).unwrap();
        pops.push(r.summary.grouped_populations.clone());
        cohs.push(r.summary.final_abs_coherence.clone());
    }
    (pops, cohs)
}

#[test]
fn criterion_8_co2_population_mechanism() {
    let (tic1, _) = co2_angle_scan(ModelVariant::Tic1);
    let (d0, _) = co2_angle_scan(ModelVariant::Tic1D0);
    let peak = |scan: &Vec<BTreeMap<String, f64>>, group: &str| {
        scan.iter().map(|g| g[group]).fold(f64::NEG_INFINITY, f64::max)
    };
    // percentages quoted relative to the TIC1 model: A at its angular peak,
    // B and C at 0 degrees
    let a = 100.0 * (peak(&tic1, "A") - peak(&d0, "A")) / peak(&tic1, "A");
    let b = 100.0 * (tic1[0]["B"] - d0[0]["B"]) / tic1[0]["B"];
    let c = 100.0 * (tic1[0]["C"] - d0[0]["C"]) / tic1[0]["C"];
    let pass =
        (a - 81.4).abs() <= 8.0 && (b - (-43.3)).abs() <= 8.0 && (c - 51.6).abs() <= 8.0;
    report(
        8,
        pass,
        &format!(
            "TIC1 vs TIC1-D0: A {a:+.1}% (target +81.4), B {b:+.1}% (target -43.3), C {c:+.1}% (target +51.6), +/- 8"
        ),
    );
    assert!(pass);
}

#[test]
fn criterion_9_co2_wavelength_scan() {
    let co2 = MoleculeModel::builtin("co2").unwrap();
    let opts = PropagationOptions::default();
    let mut diffs = BTreeMap::new();
    for lambda in [800.0, 1300.0, 5000.0, 6500.0, 8000.0] {
        let field = LaserField::gaussian_intensity_fwhm(lambda, 1e14, 20.0, 0.0).unwrap();
        let r = propagate(&co2, &field, 0.0, &opts).unwrap();
        let g = &r.summary.grouped_populations;
        diffs.insert(lambda as u64, (g["C"] - g["B"]) / r.summary.total_yield);
    }
    let long: Vec<f64> = [5000, 6500, 8000].iter().map(|k| diffs[k]).collect();
    let spread = long.iter().cloned().fold(f64::NEG_INFINITY, f64::max)
        - long.iter().cloned().fold(f64::INFINITY, f64::min);
    let ge = adiabaticity_gamma_e(1.2, 5000.0);
    let pass = (diffs[&800] - (-0.9)).abs() <= 0.1
        && (diffs[&1300] - 0.8).abs() <= 0.1
        && spread < 0.05
        && (ge - 0.207).abs() <= 0.001;
    report(
        9,
        pass,
        &format!(
            "norm CB diff {:+.3} at 800 nm, {:+.3} at 1300 nm, spread {spread:.3} beyond 5000 nm, gamma_e {ge:.4}",
            diffs[&800], diffs[&1300]
        ),
    );
    assert!(pass);
}

#[test]
fn criterion_10_co2_coherence_table() {
    let (_, tic1) = co2_angle_scan(ModelVariant::Tic1);
    let (_, tic0) = co2_angle_scan(ModelVariant::Tic0);
    let (_, d0) = co2_angle_scan(ModelVariant::Tic1D0);
    let peak = |scan: &Vec<BTreeMap<String, f64>>, pair: &str| {
        scan.iter().map(|c| c[pair]).fold(f64::NEG_INFINITY, f64::max)
    };
    // (pair, TIC0 target %, TIC1-D0 target %), both relative to TIC1
    let table: [(&str, f64, f64); 6] = [
        ("X+|A+", -35.4, -53.9),
        ("X+|B", -83.4, 44.7),
        ("B|C", -60.5, -7.94),
        ("A+|C", -90.8, -55.0),
        ("A+|B", -92.9, -52.3),
        ("X+|C", -71.4, 28.9),
    ];
    let mut pass = true;
    let mut rows = Vec::new();
    for (pair, want0, want_d0) in table {
        let base = peak(&tic1, pair);
        let got0 = 100.0 * (peak(&tic0, pair) - base) / base;
        let got_d0 = 100.0 * (peak(&d0, pair) - base) / base;
        if got0.signum() != want0.signum()
            || got_d0.signum() != want_d0.signum()
            || (got0 - want0).abs() > 15.0
            || (got_d0 - want_d0).abs() > 15.0
        {
            pass = false;
        }
        rows.push(format!("{pair} {got0:+.1}/{got_d0:+.1}"));
    }
    report(
        10,
        pass,
        &format!("coherence diffs vs TIC1 (TIC0/TIC1-D0): {}", rows.join(", ")),
    );
    assert!(pass);
}
