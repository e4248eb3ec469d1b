//! Peak-field rate comparison for the H 1s orbital: nonadiabatic vs ADK at
//! 800 nm and 1600 nm, 1e14 W/cm^2 cw field.

use dmsfi::rates::{adk_rate, subcycle_rate};
use dmsfi::{LaserField, MoleculeModel};

fn main() -> dmsfi::Result<()> {
    let h = MoleculeModel::builtin("h")?;
    let ch = &h.channels[0];
    for wavelength in [800.0, 1600.0] {
        let field = LaserField::cw(wavelength, 1e14, 0.0)?;
        let gk = field.keldysh(ch.kappa());
        let w_na = subcycle_rate(ch, &field, 0.0, 0.0);
        let w_adk = adk_rate(ch, &field, 0.0, 0.0);
        println!(
            "{wavelength:6.0} nm: gamma_K = {gk:.3}  w_NA = {w_na:.6e}  w_ADK = {w_adk:.6e}  ratio = {:.4}",
            w_na / w_adk
        );
    }
    Ok(())
}
