//! Zero-birth-delay diagnostics for a two-orbital system (12.0 and 15.3 eV)
//! at 800 nm, 1e14 W/cm^2: Im S comparison at peak field and the birth-delay
//! ratio across the central half-cycle.

use dmsfi::kinematics::{action_imag, birth_delay_ratio, saddle};
use dmsfi::units::ev_to_au;
use dmsfi::LaserField;

fn main() -> dmsfi::Result<()> {
    let field = LaserField::cw(800.0, 1e14, 0.0)?;
    let (e1, e2) = (ev_to_au(12.0), ev_to_au(15.3));

    let im1 = action_imag(&field, e1, 0.0, 0.0)?;
    let im2 = action_imag(&field, e2, 0.0, 0.0)?;
    println!("Im S_1 = {im1:.4}, Im S_2 = {im2:.4}");
    println!(
        "|Im S_2| exceeds |Im S_1| by {:.1}%",
        100.0 * (im2.abs() - im1.abs()) / im1.abs()
    );

    println!("\nwt (rad)  p_z      tau (a.u.)  delay_ratio");
    for i in 0..9 {
        let phase = -std::f64::consts::FRAC_PI_4
            + std::f64::consts::FRAC_PI_2 * i as f64 / 8.0;
        let t = phase / field.omega;
        let kappa1 = (2.0 * e1).sqrt();
        let s = saddle(&field, kappa1, 0.0, t)?;
        let ratio = birth_delay_ratio(&field, e1, e2, 0.0, t)?;
        println!(
            "{phase:+.3}    {:+.4}  {:8.3}    {ratio:.4}",
            s.p_z, s.tau_tunnel
        );
    }
    Ok(())
}
