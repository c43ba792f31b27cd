// Fixed-precision p-adic integers: units, logarithms, Teichmüller lifts.

use num_bigint::BigInt;
use num_rational::BigRational;
use symsq_iwasawa::padic::{hensel_unit_root, teichmuller, PAdicInt};

fn main() -> symsq_iwasawa::Result<()> {
    let p = 5;
    let x = PAdicInt::from_rational(p, 6, &BigRational::new(BigInt::from(1), BigInt::from(3)))?;
    println!("1/3 in Z/5^6 = {x:?}");
    println!("3 * (1/3) = {}", &x * &PAdicInt::new(p, 6, 3));

    let y = PAdicInt::new(p, 6, 50);
    println!("v(50) = {}, 50 / 25 = {:?}", y.val(), y.div_p_pow(2)?);

    let l = PAdicInt::new(p, 6, 5).log1p()?;
    println!("log(1+5) = {l:?}");

    for a in 1..p {
        let w = teichmuller(a, p, 6)?;
        println!("ω({a}) = {w}, ω({a})^4 = {}", w.pow(4));
    }

    // unit root of X² - a X + p at a = 1
    let alpha = hensel_unit_root(&PAdicInt::new(p, 4, 1), &PAdicInt::new(p, 4, 5))?;
    println!("unit root of X² - X + 5 mod 5^4: {alpha}");
    Ok(())
}
