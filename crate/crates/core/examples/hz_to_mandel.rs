//! N-sweep of the normalised spin Mandel margin. Coherent input converges
//! to the single-mode value with error ~ 1/N; a single photon is exact at
//! every N.

use hpnc::experiments::error_slope;
use hpnc::io::{sweep_table, Format};
use hpnc::{sweep_hz_to_mandel, StateSpec, C64};

fn main() -> hpnc::Result<()> {
    let ns = [50, 100, 200, 400, 800, 1600];
    for (name, spec) in [
        ("coherent alpha=1", StateSpec::coherent(C64::new(1.0, 0.0))),
        ("fock |2>", StateSpec::Fock { n: 2 }),
        ("fock |1>", StateSpec::Fock { n: 1 }),
    ] {
        let recs = sweep_hz_to_mandel(&spec, 40, &ns)?;
        println!("{name}");
        sweep_table(&recs, false).write(std::io::stdout(), Format::Table)?;
        match error_slope(&recs) {
            Some(s) => println!("log-log slope {s:.3}\n"),
            None => println!("log-log slope undefined (zero error)\n"),
        }
    }
    Ok(())
}
