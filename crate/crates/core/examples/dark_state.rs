//! Exciton basis and darkness of an asymmetric dimer, and the dipole ratio
//! that makes the lower exciton fully dark.

use photocell::model::{
    dark_state_coupling, dark_z_for_coupling, darkness_angle, diagonalize_dimer,
};
use photocell::presets;
use photocell::units::{bose_occupation, K_B};

fn main() -> photocell::Result<()> {
    let p = presets::fig3_params();
    let b = diagonalize_dimer(&p);
    println!(
        "eps1 = {:.6} eV, eps2 = {:.6} eV, J = {} eV, z = {:.6}",
        p.eps1, p.eps2, p.j12, p.z
    );
    println!(
        "eps+ = {:.6} eV, eps- = {:.6} eV, Rabi splitting = {:.6} eV",
        b.eps_plus, b.eps_minus, b.omega_r
    );
    println!("<-|1> = {:.6}, <-|2> = {:.6}", b.ovl_m1, b.ovl_m2);
    println!("kT at 300 K = {:.5} eV", K_B * 300.0);
    println!(
        "photon occupation at 2 eV, 6000 K = {:.5}",
        bose_occupation(2.0, 6000.0)?
    );

    println!("\n  z      J_dark (meV)  tan2(J_dark)  tan2(J = 10 meV)");
    for z in [0.1, 0.2, 0.3, 0.5] {
        let j = dark_state_coupling(z, 0.09)?;
        println!(
            "  {z:.1}  {:12.4}  {:12.2e}  {:16.4}",
            j * 1e3,
            darkness_angle(0.09, z, j, 0.0)?,
            darkness_angle(0.09, z, 0.01, 0.0)?
        );
    }
    println!(
        "dark z for J = 10 meV, 90 meV detuning: {:.6}",
        dark_z_for_coupling(0.01, 0.09)
    );
    Ok(())
}
