use hpnc::experiments::error_slope;
use hpnc::io::{sweep_table, Format};
use hpnc::{acs_fidelity_sweep, C64};

fn main() -> hpnc::Result<()> {
    let recs = acs_fidelity_sweep(C64::new(1.0, 0.0), &[10, 30, 100, 300, 1000, 3000])?;
    println!("|<alpha=1 | ACS(N, alpha/sqrt N)>|^2");
    sweep_table(&recs, false).write(std::io::stdout(), Format::Table)?;
    // Poisson weights cancel the 1/N term; the infidelity falls as 1/N^2
    println!("log-log slope of 1 - F: {:.3}", error_slope(&recs).unwrap_or(f64::NAN));
    Ok(())
}
