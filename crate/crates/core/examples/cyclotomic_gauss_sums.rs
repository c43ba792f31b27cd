// Exact arithmetic in Q(ζ_n) and Gauss sums of primitive characters.

use symsq_iwasawa::characters::{gauss_sum, DirichletCharacter};
use symsq_iwasawa::cyclotomic::{cyclotomic_polynomial, CycNumber, Embedding};

fn main() -> symsq_iwasawa::Result<()> {
    println!("Φ_12 coefficients: {:?}", cyclotomic_polynomial(12));
    let z = CycNumber::root_of_unity(12, 1);
    println!("ζ_12^6 = {}", z.pow(6));
    println!("ζ_12 + ζ_12^-1 = {}", &z + &z.conj());

    for chi in DirichletCharacter::all(13).into_iter().filter(|c| c.is_primitive()) {
        let g = gauss_sum(&chi);
        let norm = &g * &gauss_sum(&chi.conj());
        println!("order {:2}: G(χ)G(χ̄) = {norm}  (χ(-1)·13 = {})", chi.order(), chi.parity() * 13);
    }

    let emb = Embedding::new(13)?;
    let w = DirichletCharacter::teichmuller(&emb);
    println!("ω(2) in Z/13^3 = {}", w.eval_padic(2, &emb, 3)?);
    Ok(())
}
