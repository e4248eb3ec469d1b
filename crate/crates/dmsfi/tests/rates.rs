//! Rate-model checks: ADK closed form, symmetries, the cycle average, and
//! pulse yields.

use approx::assert_relative_eq;
use dmsfi::rates::{
    adk_rate, cycle_averaged_rate, ionization_yield, normalization_sq, subcycle_rate,
    validity_warning, RateKind,
};
use dmsfi::{LaserField, MoleculeModel};

#[test]
fn adk_hand_value_hydrogen() {
    // H 1s (|B0|^2 = 2, kappa = Z = 1) at the peak of a cw field:
    // w = 2 (2/F) exp(-2/3F)
    let field = LaserField::cw(800.0, 1e14, 0.0).unwrap();
    let h = MoleculeModel::builtin("h").unwrap();
    let f0 = field.f0;
    let want = 2.0 * (2.0 / f0) * (-2.0 / (3.0 * f0)).exp();
    assert_relative_eq!(
        adk_rate(&h.channels[0], &field, 0.0, 0.0),
        want,
        max_relative = 1e-10
    );
}

#[test]
fn rates_symmetric_and_periodic() {
    let field = LaserField::cw(800.0, 1e14, 0.0).unwrap();
    let h = MoleculeModel::builtin("h").unwrap();
    let ch = &h.channels[0];
    let t = 0.13 * field.period();
    let models: [fn(&dmsfi::Channel, &LaserField, f64, f64) -> f64; 2] =
        [subcycle_rate, adk_rate];
    for rate in models {
        let a = rate(ch, &field, 0.0, t);
        let b = rate(ch, &field, 0.0, -t);
        let c = rate(ch, &field, 0.0, t + 0.5 * field.period());
        assert_relative_eq!(a, b, max_relative = 1e-10);
        assert_relative_eq!(a, c, max_relative = 1e-10);
        assert!(a > 0.0);
    }
}

#[test]
fn rates_vanish_off_crest() {
    // both rates drop by orders of magnitude towards the field zero
    let field = LaserField::cw(800.0, 1e14, 0.0).unwrap();
    let h = MoleculeModel::builtin("h").unwrap();
    let ch = &h.channels[0];
    let peak = subcycle_rate(ch, &field, 0.0, 0.0);
    let wing = subcycle_rate(ch, &field, 0.0, 0.2 * field.period());
    assert!(wing < 1e-3 * peak);
    // exactly zero at the crossing
    assert_eq!(subcycle_rate(ch, &field, 0.0, 0.25 * field.period()), 0.0);
    assert_eq!(adk_rate(ch, &field, 0.0, 0.25 * field.period()), 0.0);
}

#[test]
fn cycle_average_consistent_with_subcycle() {
    // the closed-form cycle-averaged rate should agree with the numerical
    // average of the subcycle rate to ~10%
    let h = MoleculeModel::builtin("h").unwrap();
    let ch = &h.channels[0];
    for lambda in [800.0, 1600.0] {
        let field = LaserField::cw(lambda, 1e14, 0.0).unwrap();
        let wc = cycle_averaged_rate(ch, &field, 0.0).unwrap();
        let n = 20000;
        let avg: f64 = (0..n)
            .map(|i| {
                subcycle_rate(ch, &field, 0.0, field.period() * i as f64 / n as f64)
            })
            .sum::<f64>()
            / n as f64;
        assert!(
            (wc - avg).abs() < 0.1 * avg,
            "lambda = {lambda}: closed {wc:.4e} vs avg {avg:.4e}"
        );
    }
}

#[test]
fn normalization_positive_and_orientation_dependent() {
    let field = LaserField::cw(900.0, 2e14, 0.0).unwrap();
    let n2 = MoleculeModel::builtin("n2").unwrap();
    let x = &n2.channels[0];
    let c0 = normalization_sq(x, &field, 0.0).unwrap();
    let c45 = normalization_sq(x, &field, 45f64.to_radians()).unwrap();
    assert!(c0 > 0.0 && c45 > 0.0 && c0 != c45);
    // |C|^2 scales with |B0|^2
    let b0 = x.b0(0.0, 1.0);
    let b45 = x.b0(45f64.to_radians(), 1.0);
    assert_relative_eq!(c0 / c45, (b0 * b0) / (b45 * b45), max_relative = 1e-12);
}

#[test]
fn yield_monotone_in_intensity() {
    let h = MoleculeModel::builtin("h").unwrap();
    let ch = &h.channels[0];
    let mut prev = 0.0;
    for intensity in [0.5e14, 1e14, 2e14, 4e14] {
        let field =
            LaserField::gaussian_intensity_fwhm(800.0, intensity, 10.0, 0.0).unwrap();
        let p = ionization_yield(ch, &field, 0.0, RateKind::Na).unwrap();
        assert!((0.0..=1.0).contains(&p));
        assert!(p > prev);
        prev = p;
    }
}

#[test]
fn adk_overestimates_na_yield_at_long_wavelength() {
    // at 1600 nm (gamma_K ~ 0.5) the ADK pulse yield exceeds the
    // nonadiabatic one
    let h = MoleculeModel::builtin("h").unwrap();
    let ch = &h.channels[0];
    let field = LaserField::gaussian_intensity_fwhm(1600.0, 1e14, 10.0, 0.0).unwrap();
    let p_na = ionization_yield(ch, &field, 0.0, RateKind::Na).unwrap();
    let p_adk = ionization_yield(ch, &field, 0.0, RateKind::Adk).unwrap();
    assert!(p_adk > p_na, "P_adk = {p_adk:.3e}, P_na = {p_na:.3e}");
}

#[test]
fn validity_warnings() {
    let h = MoleculeModel::builtin("h").unwrap();
    let ch = &h.channels[0];
    // benign settings: no warning
    assert!(validity_warning(ch, &LaserField::cw(800.0, 1e14, 0.0).unwrap()).is_none());
    // barrier-suppression regime: warn
    assert!(validity_warning(ch, &LaserField::cw(800.0, 4e15, 0.0).unwrap()).is_some());
}
