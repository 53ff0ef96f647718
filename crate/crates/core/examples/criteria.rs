use hpnc::criteria::{evaluate_all, DEFAULT_TOLERANCE};
use hpnc::{state_from_spec, StateSpec, C64};

fn main() -> hpnc::Result<()> {
    let battery = [
        ("coherent 1", StateSpec::coherent(C64::new(1.0, 0.0)), 40),
        ("fock |1>", StateSpec::Fock { n: 1 }, 10),
        ("fock |2>", StateSpec::Fock { n: 2 }, 10),
        ("squeezed 0.5", StateSpec::SqueezedVacuum { r_sq: 0.5, phase: 0.0 }, 60),
        ("odd cat 1.5", StateSpec::Cat {
            components: vec![
                hpnc::fock::CatComponent { weight: C64::new(1.0, 0.0), alpha: C64::new(1.5, 0.0) },
                hpnc::fock::CatComponent { weight: C64::new(-1.0, 0.0), alpha: C64::new(-1.5, 0.0) },
            ],
        }, 40),
        ("thermal 1", StateSpec::Thermal { nbar: 1.0 }, 100),
    ];
    println!("positive margin = nonclassical (tolerance {DEFAULT_TOLERANCE:e})\n");
    println!("{:<14} {:>12} {:>12} {:>12} {:>12}", "state", "mandel", "order 3", "first", "squeezing");
    for (name, spec, dim) in battery {
        let s = state_from_spec(&spec, dim)?;
        let r = evaluate_all(&s, 3, DEFAULT_TOLERANCE)?;
        let cell = |i: usize| format!("{:>11.5}{}", r[i].value, if r[i].nonclassical { "*" } else { " " });
        println!("{name:<14} {} {} {} {}", cell(0), cell(1), cell(2), cell(3));
    }
    Ok(())
}
