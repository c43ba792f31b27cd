// The Λ-lift of a symmetric-square Euler factor and its interpolation property.

use symsq_iwasawa::characters::DirichletCharacter;
use symsq_iwasawa::cyclotomic::{CycNumber, Embedding};
use symsq_iwasawa::symsq::{euler_to_lambda, local_factor_value, sigma_q, symsq_factor, SatakeData};

fn main() -> symsq_iwasawa::Result<()> {
    let p = 7;
    let (prec, trunc) = (5, 24);
    let emb = Embedding::new(p)?;
    let psi = DirichletCharacter::teichmuller(&emb).pow(2);
    let t = 2;
    let k = 6;
    let s = SatakeData::unramified(3, 5, CycNumber::one(1), k)?;
    let factor = symsq_factor(&s, &CycNumber::one(1))?;
    println!("P_3(X) = {factor}");
    let lift = euler_to_lambda(&factor, &psi, t, &emb, prec, trunc)?;
    println!("Λ-lift = {lift}");
    for n in (1..k as i64).step_by(2) {
        let lhs = lift.specialize(n)?;
        let rhs = local_factor_value(&factor, &psi, t, n, &emb, prec)?;
        println!("n = {n}: specialization {lhs}, direct value {rhs}");
    }
    let inv = sigma_q(&factor, &psi, t, &emb, prec, trunc)?;
    println!("σ^(3) = {}, μ = {}", inv.sigma, inv.mu);
    Ok(())
}
