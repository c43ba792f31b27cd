// μ and λ invariants and the Weierstrass factorization F = p^μ P(T) U(T).

use symsq_iwasawa::iwasawa::IwasawaElement;

fn main() -> symsq_iwasawa::Result<()> {
    let f = IwasawaElement::from_ints(5, 6, 20, &[25, 50, 5, 10, 5]);
    println!("F = {f}");
    let w = f.weierstrass_prep()?;
    println!("μ = {}, λ = {}", w.mu, w.lambda);
    println!("distinguished: {:?}", w.distinguished);
    println!("unit: {}", w.unit);
    println!("reconstructs F: {}", w.reconstruct() == f);

    let g = IwasawaElement::from_ints(5, 6, 20, &[5, 1]);
    for n in [1, 3, 5] {
        println!("specialize(T + 5, {n}) = {:?}", g.specialize(n)?);
    }
    Ok(())
}
