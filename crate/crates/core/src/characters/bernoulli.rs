use std::sync::{OnceLock, RwLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::DirichletCharacter;
use crate::cyclotomic::CycNumber;

fn cache() -> &'static RwLock<Vec<BigRational>> {
    static CACHE: OnceLock<RwLock<Vec<BigRational>>> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(vec![BigRational::one()]))
}

fn binomials(n: usize) -> Vec<BigInt> {
    let mut row = vec![BigInt::one()];
    for k in 0..n {
        let next = &row[k] * BigInt::from(n - k) / BigInt::from(k + 1);
        row.push(next);
    }
    row
}

/// `B_m` with the convention `B_1 = -1/2`.
pub fn bernoulli_number(m: usize) -> BigRational {
    if let Some(b) = cache().read().unwrap().get(m) {
        return b.clone();
    }
    let mut table = cache().write().unwrap();
    while table.len() <= m {
        let n = table.len();
        // sum_{j<=n} C(n+1, j) B_j = 0
        let c = binomials(n + 1);
        let s = table
            .iter()
            .enumerate()
            .fold(BigRational::zero(), |acc, (j, b)| acc + b * &c[j]);
        table.push(-s / BigInt::from(n + 1));
    }
    table[m].clone()
}

pub fn bernoulli_polynomial(m: usize, x: &BigRational) -> BigRational {
    let c = binomials(m);
    let mut acc = BigRational::zero();
    let mut xp = BigRational::one();
    for j in (0..=m).rev() {
        acc += bernoulli_number(j) * &c[j] * &xp;
        xp *= x;
    }
    acc
}

/// `B_{m,χ} = c^{m-1} Σ_{a=1}^{c} χ(a) B_m(a/c)` for the primitive character
/// of conductor `c` attached to `chi`.
pub fn gen_bernoulli(chi: &DirichletCharacter, m: usize) -> CycNumber {
    let prim = chi.primitive();
    let c = prim.modulus();
    let ord = prim.order();
    let mut acc = vec![BigRational::zero(); ord as usize];
    for a in 1..=c {
        if let Some(k) = prim.exponent(a as i64) {
            let x = BigRational::new(BigInt::from(a), BigInt::from(c));
            acc[k as usize] += bernoulli_polynomial(m, &x);
        }
    }
    let scale = BigRational::from_integer(BigInt::from(c).pow(m as u32 - 1));
    for v in &mut acc {
        *v *= &scale;
    }
    CycNumber::from_rationals(ord, &acc)
}

/// `L(1-m, χ) = -B_{m,χ}/m`.
pub fn l_value_negative(chi: &DirichletCharacter, m: usize) -> CycNumber {
    let b = gen_bernoulli(chi, m);
    -b.scale(&BigRational::new(BigInt::one(), BigInt::from(m)))
}
