//! A single-mode state and vacuum meet on a beam splitter. Nonclassical
//! inputs come out entangled; the Schmidt rank of a cat equals its number of
//! coherent components.

use hpnc::beam_splitter::DEFAULT_SCHMIDT_THRESHOLD;
use hpnc::experiments::circle_amplitudes;
use hpnc::{
    apply_bs, bs_route_mandel, embed_with_vacuum, hz_two_mode_violation, mandel_violation, pure_state_from_spec,
    schmidt_analysis, BSParams, ModeState, StateSpec, C64,
};

fn main() -> hpnc::Result<()> {
    let bs = BSParams::balanced(0.0);
    let dim = 40;

    println!("50:50 splitter, vacuum in the second port\n");
    println!("{:<16} {:>6} {:>12} {:>12}", "input", "rank", "entropy", "HZ(1,1)");
    let mut inputs = vec![
        ("coherent 1.5".to_string(), StateSpec::coherent(C64::new(1.5, 0.0))),
        ("fock |1>".to_string(), StateSpec::Fock { n: 1 }),
        ("fock |4>".to_string(), StateSpec::Fock { n: 4 }),
    ];
    for r in 2..=4 {
        inputs.push((format!("cat r={r}"), StateSpec::cat(&circle_amplitudes(r, 2.0))));
    }
    for (name, spec) in &inputs {
        let psi = pure_state_from_spec(spec, dim)?;
        let out = apply_bs(&embed_with_vacuum(&psi, dim)?, &bs)?;
        let s = schmidt_analysis(&out, DEFAULT_SCHMIDT_THRESHOLD);
        let hz = hz_two_mode_violation(&out, 1, 1)?;
        println!("{name:<16} {:>6} {:>12.6} {:>12.3e}", s.rank, s.entropy_bits, hz);
    }

    // the first-order two-mode margin over t^2 r^2 is the input's Mandel margin
    let psi = pure_state_from_spec(&StateSpec::SqueezedVacuum { r_sq: 0.3, phase: 0.0 }, dim)?;
    let direct = mandel_violation(&psi)?;
    println!("\nsqueezed vacuum r=0.3: Mandel margin {direct:.12}");
    for (t2, phi) in [(0.2, 0.0), (0.5, 1.0), (0.8, -2.0)] {
        let p = BSParams::from_t2(t2, phi)?;
        println!("  via splitter t^2={t2}, phi={phi:+}: {:.12}", bs_route_mandel(&ModeState::Pure(psi.clone()), &p)?);
    }
    Ok(())
}
