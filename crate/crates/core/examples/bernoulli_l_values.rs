// Generalized Bernoulli numbers and L(1-m, χ).

use symsq_iwasawa::characters::{bernoulli_number, gen_bernoulli, l_value_negative, DirichletCharacter};

fn main() {
    for m in 0..=12 {
        println!("B_{m} = {}", bernoulli_number(m));
    }
    let chi4 = DirichletCharacter::from_images(4, &[(3, 1)]).unwrap();
    println!("B_1(χ_4) = {}", gen_bernoulli(&chi4, 1));
    println!("L(0, χ_4) = {}", l_value_negative(&chi4, 1));
    println!("L(-2, χ_4) = {}", l_value_negative(&chi4, 3));
    println!("ζ(-1) = {}", l_value_negative(&DirichletCharacter::trivial(1), 2));
    for chi in DirichletCharacter::all(7).into_iter().filter(|c| c.order() == 3) {
        println!("cubic mod 7: L(-1, χ) = {}", l_value_negative(&chi, 2));
    }
}
