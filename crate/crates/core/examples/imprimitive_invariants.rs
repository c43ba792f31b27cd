// Primitive versus imprimitive invariants for 11a at p = 5.

use std::path::Path;

use symsq_iwasawa::characters::DirichletCharacter;
use symsq_iwasawa::harness::{invariant_report, load_form, Format, Settings};
use symsq_iwasawa::iwasawa::IwasawaElement;

fn main() -> symsq_iwasawa::Result<()> {
    let form = load_form(&Path::new(env!("CARGO_MANIFEST_DIR")).join("data/11a.json"))?;
    let settings = Settings::from_form(&form)?;
    let l = IwasawaElement::from_ints(5, form.precision, form.trunc, &[5, 1]);
    let psi = DirichletCharacter::trivial(1);
    let report = invariant_report(&form, &psi, 0, &[2, 3, 7, 11, 13], Some(&l), &settings)?;
    print!("{}", symsq_iwasawa::harness::report::render(&report, Format::Text));
    Ok(())
}
