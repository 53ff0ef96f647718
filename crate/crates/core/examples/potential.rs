//! Entanglement potential of squeezed vacuum against the Gaussian closed form
//! `nu^2 = 1/4 + sinh^2(r) t^2 (1 - t^2)`, maximal at `t^2 = 1/2`.

use hpnc::{entanglement_potential, pure_state_from_spec, SearchConfig, StateSpec};

fn gaussian(r: f64) -> f64 {
    let nu = (0.25 + r.sinh().powi(2) / 4.0).sqrt();
    let (p, m) = (nu + 0.5, nu - 0.5);
    if m <= 0.0 {
        0.0
    } else {
        p * p.log2() - m * m.log2()
    }
}

fn main() -> hpnc::Result<()> {
    println!("{:>6} {:>12} {:>12} {:>10} {:>8}", "r_sq", "searched", "gaussian", "t^2", "phi");
    for r_sq in [0.1, 0.3, 0.5] {
        let psi = pure_state_from_spec(&StateSpec::SqueezedVacuum { r_sq, phase: 0.0 }, 40)?;
        let search = SearchConfig { t2_points: 9, phi_points: 2, ..SearchConfig::default() };
        let p = entanglement_potential(&psi, &search)?;
        println!(
            "{r_sq:>6} {:>12.8} {:>12.8} {:>10.6} {:>8.4}",
            p.entropy_bits,
            gaussian(r_sq),
            p.params.t * p.params.t,
            p.params.phi
        );
    }
    Ok(())
}
