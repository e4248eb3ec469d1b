//! Cross-check: the density-matrix propagator against the independent
//! wave-function-sum reconstruction for the N2 45-degree scenario, with the
//! birth-grid convergence table.

use dmsfi::propagator::{propagate, PropagationOptions};
use dmsfi::wforacle::{reconstruct_rho, trace_distance};
use dmsfi::{LaserField, MoleculeModel};

fn main() -> dmsfi::Result<()> {
    let n2 = MoleculeModel::builtin("n2")?;
    let field = LaserField::gaussian_intensity_fwhm(900.0, 2e14, 3.7, 0.0)?;
    let theta = 45f64.to_radians();
    let opts = PropagationOptions::default();
    let dm = propagate(&n2, &field, theta, &opts)?;
    let rho_dm = dm.rho.last().expect("samples");

    println!("birth_steps  trace_distance  order");
    let mut prev: Option<f64> = None;
    for n_steps in [500usize, 1000, 2000, 4000, 8000] {
        let (rho_wf, _) =
            reconstruct_rho(&n2, &field, theta, opts.variant, opts.rate, n_steps)?;
        let d = trace_distance(rho_dm, &rho_wf);
        match prev {
            Some(p) => println!("{n_steps:>11}  {d:.6e}    {:.2}", (p / d).log2()),
            None => println!("{n_steps:>11}  {d:.6e}    -"),
        }
        prev = Some(d);
    }
    Ok(())
}
