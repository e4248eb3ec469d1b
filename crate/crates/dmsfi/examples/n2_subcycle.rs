//! N2 at 45 degrees, 3.7 fs / 900 nm / 2e14 W/cm^2: final-population
//! comparison between ADK and nonadiabatic rates, the Coulomb-phase
//! reference variant, and the subcycle burst times.

use dmsfi::propagator::{burst_times, propagate, PhaseVariant, PropagationOptions};
use dmsfi::rates::RateKind;
use dmsfi::units::au_to_fs;
use dmsfi::{LaserField, MoleculeModel};

fn main() -> dmsfi::Result<()> {
    let n2 = MoleculeModel::builtin("n2")?;
    let field = LaserField::gaussian_intensity_fwhm(900.0, 2e14, 3.7, 0.0)?;
    let theta = 45f64.to_radians();

    let opts_na = PropagationOptions::default();
    let opts_adk = PropagationOptions {
        rate: RateKind::Adk,
        ..Default::default()
    };
    let opts_cp = PropagationOptions {
        rate: RateKind::Adk,
        phase: PhaseVariant::CoulombPhaseRef,
        ..Default::default()
    };
    let na = propagate(&n2, &field, theta, &opts_na)?;
    let adk = propagate(&n2, &field, theta, &opts_adk)?;
    let cp = propagate(&n2, &field, theta, &opts_cp)?;

    println!("state  ADK excess over NA (%)  Coulomb-phase diff (%)");
    for group in ["X", "A", "B"] {
        let p_na = na.summary.grouped_populations[group];
        let p_adk = adk.summary.grouped_populations[group];
        let p_cp = cp.summary.grouped_populations[group];
        println!(
            "{group:<5}  {:>8.2}              {:>8.2}",
            100.0 * (p_adk - p_na) / p_na,
            100.0 * (p_cp - p_adk).abs() / p_adk,
        );
    }

    let bursts = burst_times(&n2, &field, theta, RateKind::Na, 0, 0.01)?;
    let fs: Vec<String> = bursts.iter().map(|&t| format!("{:.2}", au_to_fs(t))).collect();
    println!("X-channel rate bursts at t = {} fs", fs.join(", "));
    Ok(())
}
