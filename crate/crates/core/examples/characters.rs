// Dirichlet characters: conductors, parity, Teichmüller components.

use symsq_iwasawa::characters::{tame_wild_split, DirichletCharacter};
use symsq_iwasawa::cyclotomic::Embedding;

fn main() -> symsq_iwasawa::Result<()> {
    let m = 40;
    let all = DirichletCharacter::all(m);
    let primitive = all.iter().filter(|c| c.is_primitive()).count();
    println!("{} characters mod {m}, {primitive} primitive", all.len());
    for chi in all.iter().take(6) {
        println!(
            "images {:?}: order {}, conductor {}, {}",
            chi.images(),
            chi.order(),
            chi.conductor(),
            if chi.is_even() { "even" } else { "odd" }
        );
    }

    let emb = Embedding::new(7)?;
    let omega = DirichletCharacter::teichmuller(&emb);
    let eta = omega.pow(2).mul(&DirichletCharacter::from_images(49, &[(3, 6)])?);
    let (i, wild) = tame_wild_split(&eta, &emb)?;
    println!("η = ω^{i} · (wild character of conductor {})", wild.conductor());
    println!("{}", serde_json::to_string(&eta).unwrap());
    Ok(())
}
