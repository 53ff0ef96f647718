use hpnc::dicke::{optimal_spin_squeezing, SpinDirection};
use hpnc::{atomic_coherent_state, dicke_mandel_violation, hp_embed, pure_state_from_spec, spin_squeezing_xi2, StateSpec, C64};

fn main() -> hpnc::Result<()> {
    let n = 200;

    let acs = atomic_coherent_state(n, C64::new(0.4, 0.2))?;
    let m = acs.mean_spin();
    println!("ACS N={n}, z=0.4+0.2i: <S> = ({:.4}, {:.4}, {:.4})", m[0], m[1], m[2]);
    let xi = spin_squeezing_xi2(&acs, &SpinDirection::X, &SpinDirection::Y, &SpinDirection::Z)?;
    println!("  xi^2 in the lab frame {xi:.6}, optimal {:.6}", optimal_spin_squeezing(&acs)?.xi2);

    // a squeezed photon mode becomes a spin-squeezed ensemble
    let sq = pure_state_from_spec(&StateSpec::SqueezedVacuum { r_sq: 0.5, phase: 0.0 }, 40)?;
    let d = hp_embed(&sq, n)?;
    let xi = spin_squeezing_xi2(&d, &SpinDirection::X, &SpinDirection::Y, &SpinDirection::Z)?;
    println!("embedded squeezed vacuum r=0.5, N={n}: xi^2 = {xi:.6} (limit e^-1 = {:.6})", (-1.0f64).exp());

    let f2 = pure_state_from_spec(&StateSpec::Fock { n: 2 }, 5)?;
    println!("embedded |2>, N={n}: spin Mandel margin {:.6} (single-mode 2)", dicke_mandel_violation(&hp_embed(&f2, n)?));
    Ok(())
}
