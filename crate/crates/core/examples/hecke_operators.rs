// Hecke operators, depletion and level raising on the q-expansion of 11a.

use std::path::Path;

use symsq_iwasawa::harness::load_form;
use symsq_iwasawa::qexp::{CoefficientRing, TauMode};

fn main() -> symsq_iwasawa::Result<()> {
    let form = load_form(&Path::new(env!("CARGO_MANIFEST_DIR")).join("data/11a.json"))?;
    let f = form.q_expansion(96)?;
    let show = |v: &[_]| v.iter().take(12).map(|c| f.ring().render(c)).collect::<Vec<_>>().join(" ");
    println!("f      : {}", show(f.coeffs()));

    let t2 = f.hecke_t(2)?;
    println!("T_2 f  : {}", show(t2.coeffs()));
    println!("T_2 f = a_2 f on the overlap: {}", t2.sub(&f.truncate(t2.trunc()).scale(form.eigenvalue(2)?))?.is_zero());

    println!("U_11 f : {}", show(f.hecke_u(11).coeffs()));
    println!("f^[3]  : {}", show(f.deplete(&[3]).coeffs()));

    let g = f.tau(2, TauMode::Unramified)?;
    println!("τ_2 f at level {}: U_2 kills it: {}", g.level(), g.hecke_u(2).is_zero());
    let h = f.tau(11, TauMode::Ordinary)?;
    println!("τ_11 f at level {}: U_11 kills it: {}", h.level(), h.hecke_u(11).is_zero());
    Ok(())
}
