use num_bigint::BigInt;
use num_traits::Zero;

use super::DirichletCharacter;
use crate::arith;
use crate::cyclotomic::CycNumber;

/// `G(χ) = Σ_{a mod c} χ(a) ζ_c^a` of the primitive character, as an element
/// of `Q(ζ_L)` with `L = lcm(c, ord χ)`.
pub fn gauss_sum(chi: &DirichletCharacter) -> CycNumber {
    let prim = chi.primitive();
    let c = prim.modulus();
    let ord = prim.order();
    let l = arith::lcm(c, ord);
    let mut acc = vec![BigInt::zero(); l as usize];
    for a in 0..c {
        if let Some(k) = prim.exponent(a as i64) {
            let idx = (k * (l / ord) + a * (l / c)) % l;
            acc[idx as usize] += 1;
        }
    }
    CycNumber::from_dense(l, acc, BigInt::from(1))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn quadratic(m: u64) -> DirichletCharacter {
        DirichletCharacter::all(m)
            .into_iter()
            .find(|c| c.order() == 2 && c.is_primitive())
            .unwrap()
    }

    #[test]
    fn examples() {
        assert_eq!(gauss_sum(&DirichletCharacter::trivial(1)), CycNumber::one(1));
        let g3 = gauss_sum(&quadratic(3));
        assert_eq!(g3, CycNumber::from_dense(3, vec![1.into(), 2.into()], 1.into()));
        assert_eq!(&g3 * &g3, CycNumber::from_int(1, -3));
        let g5 = gauss_sum(&quadratic(5));
        assert_eq!(&g5 * &g5, CycNumber::from_int(1, 5));
    }

    #[test]
    fn norm_identity() {
        for c in 2..=40u64 {
            for chi in DirichletCharacter::all(c) {
                if !chi.is_primitive() {
                    continue;
                }
                let prod = &gauss_sum(&chi) * &gauss_sum(&chi.conj());
                assert_eq!(prod, CycNumber::from_int(1, chi.parity() as i64 * c as i64), "{chi:?}");
            }
        }
    }
}
