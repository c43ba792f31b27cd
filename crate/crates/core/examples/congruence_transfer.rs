// Congruent Λ-elements with μ = 0 share their λ-invariant.

use symsq_iwasawa::harness::{congruence_transfer_check, Report};
use symsq_iwasawa::iwasawa::IwasawaElement;

fn main() -> symsq_iwasawa::Result<()> {
    let el = |c: &[i64]| IwasawaElement::from_ints(5, 6, 12, c);
    let cases = [
        ("T + 5 vs T + 10", el(&[5, 1]), el(&[10, 1])),
        ("5T vs 5T + 25", el(&[0, 5]), el(&[25, 5])),
        ("T vs 2T", el(&[0, 1]), el(&[0, 2])),
        ("T vs T²", el(&[0, 1]), el(&[0, 0, 1])),
    ];
    for (name, f, g) in cases {
        let r = congruence_transfer_check(&f, &g)?;
        println!("{name}: {}", r.text_lines().join(" | "));
    }
    Ok(())
}
