use hpnc::io::{sweep_table, Format};
use hpnc::{sweep_xi2_to_squeezing, StateSpec};

fn main() -> hpnc::Result<()> {
    let spec = StateSpec::SqueezedVacuum { r_sq: 0.5, phase: 0.0 };
    let recs = sweep_xi2_to_squeezing(&spec, 40, &[50, 100, 200, 500, 1000, 2000])?;
    println!("xi^2 against twice the x-quadrature variance, squeezed vacuum r=0.5");
    sweep_table(&recs, false).write(std::io::stdout(), Format::Table)?;
    Ok(())
}
