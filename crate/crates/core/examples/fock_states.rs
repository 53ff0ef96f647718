//! Building single-mode states from specs and reading off moments.
//!
//! ```bash
//! cargo run --example fock_states
//! ```

use hpnc::fock::{tail_mass, SingleMode};
use hpnc::{min_quadrature_variance, state_from_spec, Error, StateSpec, C64};

fn main() -> hpnc::Result<()> {
    let specs: Vec<(&str, StateSpec)> = vec![
        ("vacuum", StateSpec::vacuum()),
        ("fock |3>", StateSpec::Fock { n: 3 }),
        ("coherent 1+0.5i", StateSpec::coherent(C64::new(1.0, 0.5))),
        ("squeezed r=0.5", StateSpec::SqueezedVacuum { r_sq: 0.5, phase: 0.0 }),
        ("even cat +-2", StateSpec::cat(&[C64::new(2.0, 0.0), C64::new(-2.0, 0.0)])),
        ("thermal nbar=1", StateSpec::Thermal { nbar: 1.0 }),
    ];
    println!("{:<18} {:>10} {:>22} {:>12} {:>10}", "state", "<n>", "<a>", "min var", "tail");
    for (name, spec) in &specs {
        let s = state_from_spec(spec, 80)?;
        let a = s.moment(0, 1)?;
        let (vmin, _) = min_quadrature_variance(&s);
        println!(
            "{name:<18} {:>10.6} {:>22} {vmin:>12.6} {:>10.1e}",
            s.moment(1, 1)?.re,
            format!("{:.4}{:+.4}i", a.re, a.im),
            tail_mass(&s)
        );
    }

    // the truncation guard refuses states that leak past the cutoff
    match state_from_spec(&StateSpec::coherent(C64::new(4.0, 0.0)), 20) {
        Err(e @ Error::Truncation { .. }) => println!("\ncoherent alpha=4 at dim 20: {e}"),
        other => println!("\nunexpected: {other:?}"),
    }

    let json = serde_json::to_string(&specs[4].1)?;
    println!("cat spec as JSON: {json}");
    Ok(())
}
