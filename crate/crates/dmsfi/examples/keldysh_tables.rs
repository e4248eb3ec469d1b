//! Keldysh parameters and barrier-suppression ratios F0/kappa^3 for the
//! bundled molecules at their reference laser settings.

use dmsfi::{LaserField, MoleculeModel};

fn main() -> dmsfi::Result<()> {
    let field = LaserField::cw(900.0, 2e14, 0.0)?;
    for name in ["n2", "co2"] {
        let m = MoleculeModel::builtin(name)?;
        println!("{} at 900 nm, 2e14 W/cm^2:", m.name);
        println!("  state  E (eV)  gamma_K  F0/kappa^3");
        for ch in &m.channels {
            let kappa = ch.kappa();
            println!(
                "  {:<5}  {:5.1}   {:.3}    {:.4}",
                ch.label,
                dmsfi::units::au_to_ev(ch.e_ip),
                field.keldysh(kappa),
                field.f0 / kappa.powi(3)
            );
        }
    }
    let h = MoleculeModel::builtin("h")?;
    let kappa = h.channels[0].kappa();
    for lambda in [800.0, 1600.0] {
        let f = LaserField::cw(lambda, 1e14, 0.0)?;
        println!("H 1s at {lambda:.0} nm, 1e14 W/cm^2: gamma_K = {:.2}", f.keldysh(kappa));
    }
    Ok(())
}
