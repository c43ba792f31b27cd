// Truncated complex Euler products of the symmetric square of 11a.

use symsq_iwasawa::characters::DirichletCharacter;
use symsq_iwasawa::cyclotomic::CycNumber;
use symsq_iwasawa::symsq::{df_complex, df_convergence, SatakeData};

/// `a_q` of y² + y = x³ - x² - 10x - 20 by point counting.
fn a_11a(q: u64) -> i64 {
    if q == 11 {
        return 1;
    }
    let q = q as i64;
    let mut count = 0;
    for x in 0..q {
        let rhs = (x * x % q * x - x * x - 10 * x - 20).rem_euclid(q);
        count += (0..q).filter(|y| (y * y + y) % q == rhs).count() as i64;
    }
    q - count
}

fn main() -> symsq_iwasawa::Result<()> {
    let qmax = 2000;
    let data: Vec<SatakeData> = symsq_iwasawa::arith::primes_up_to(2 * qmax)
        .into_iter()
        .map(|q| {
            if q == 11 {
                SatakeData::depleted(11, 2)
            } else {
                SatakeData::unramified(q, a_11a(q), CycNumber::one(1), 2).unwrap()
            }
        })
        .collect();
    let chi = DirichletCharacter::trivial(1);
    for s in [3.0, 4.0, 6.0] {
        let v = df_complex(&data, &chi, s, qmax)?;
        let c = df_convergence(&data, &chi, s, qmax)?;
        println!("s = {s}: product = {v:.12}, relative change to 2·Qmax = {:.2e}", c.relative_change);
    }
    Ok(())
}
