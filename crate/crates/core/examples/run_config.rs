//! Building a run from config text and driving a CLI command in-process.

use photocell::cli::{run_command, Command};
use photocell::config::parse_config;

const CONFIG: &str = "
preset = ivpv
j12 = 0.015            # stronger coupling, z follows the dark-state condition
gamma_alphabeta_grid = log(1e-9, 1e-3, 7)
";

fn main() -> photocell::Result<()> {
    let cfg = parse_config(CONFIG)?;
    let p = cfg.params()?;
    println!(
        "z = {:.6}, eps1 = {:.6} eV, eps2 = {:.6} eV",
        p.z, p.eps1, p.eps2
    );

    let out = run_command(Command::Iv, &cfg)?;
    print!("{}", String::from_utf8_lossy(&out.csv));
    print!("{}", out.summary);
    Ok(())
}
