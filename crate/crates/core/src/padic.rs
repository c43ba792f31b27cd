//! Elements of Z_p known modulo an explicit power of p.
//!
//! Every value carries its own precision `N`: the residue is only meaningful
//! modulo `p^N`. Binary operations return the smaller of the two precisions,
//! exact division by `p^k` costs `k` digits, and nothing ever raises the
//! claimed precision implicitly.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::arith;
use crate::error::{Error, Result};

/// Valuation of a p-adic value known to finite precision.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Valuation {
    Finite(u32),
    /// The residue vanishes, so only a lower bound is known.
    AtLeast(u32),
}

impl Valuation {
    pub fn finite(self) -> Option<u32> {
        match self {
            Valuation::Finite(v) => Some(v),
            Valuation::AtLeast(_) => None,
        }
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Finite(v) => write!(f, "{v}"),
            Valuation::AtLeast(n) => write!(f, "≥{n}"),
        }
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PAdicInt {
    p: u64,
    prec: u32,
    residue: BigInt,
}

pub(crate) fn prime_power(p: u64, n: u32) -> BigInt {
    num_traits::pow(BigInt::from(p), n as usize)
}

/// v_p of a nonzero big integer.
pub(crate) fn val_bigint(x: &BigInt, p: u64) -> u32 {
    debug_assert!(!x.is_zero());
    let pb = BigInt::from(p);
    let mut v = 0;
    let mut y = x.clone();
    loop {
        let (q, r) = y.div_rem(&pb);
        if !r.is_zero() {
            return v;
        }
        y = q;
        v += 1;
    }
}

impl PAdicInt {
    /// Reduces `residue` (any integer, possibly negative) modulo `p^prec`.
    pub fn new(p: u64, prec: u32, residue: impl Into<BigInt>) -> Self {
        debug_assert!(p >= 3 && p % 2 == 1, "p must be an odd prime");
        let residue = residue.into().mod_floor(&prime_power(p, prec));
        PAdicInt { p, prec, residue }
    }

    pub fn zero(p: u64, prec: u32) -> Self {
        PAdicInt::new(p, prec, 0)
    }

    pub fn one(p: u64, prec: u32) -> Self {
        PAdicInt::new(p, prec, 1)
    }

    /// The image of a rational with denominator prime to p.
    pub fn from_rational(p: u64, prec: u32, x: &BigRational) -> Result<Self> {
        let den = PAdicInt::new(p, prec, x.denom().clone());
        let inv = den.inv()?;
        Ok(&PAdicInt::new(p, prec, x.numer().clone()) * &inv)
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn precision(&self) -> u32 {
        self.prec
    }

    /// Canonical representative in `[0, p^N)`.
    pub fn residue(&self) -> &BigInt {
        &self.residue
    }

    pub fn modulus(&self) -> BigInt {
        prime_power(self.p, self.prec)
    }

    pub fn is_zero(&self) -> bool {
        self.residue.is_zero()
    }

    pub fn val(&self) -> Valuation {
        if self.residue.is_zero() {
            Valuation::AtLeast(self.prec)
        } else {
            Valuation::Finite(val_bigint(&self.residue, self.p))
        }
    }

    pub fn is_unit(&self) -> bool {
        self.val() == Valuation::Finite(0)
    }

    /// Drops precision to `prec`; asking for more than is known is an error.
    pub fn with_precision(&self, prec: u32) -> Result<Self> {
        if prec > self.prec {
            return Err(Error::PrecisionLoss(format!(
                "cannot raise precision from {} to {prec}",
                self.prec
            )));
        }
        Ok(PAdicInt::new(self.p, prec, self.residue.clone()))
    }

    pub fn inv(&self) -> Result<Self> {
        if !self.is_unit() {
            return Err(Error::NotAUnit(self.residue.to_string(), self.p));
        }
        let m = self.modulus();
        let g = self.residue.extended_gcd(&m);
        debug_assert!(g.gcd.is_one());
        Ok(PAdicInt::new(self.p, self.prec, g.x))
    }

    pub fn pow(&self, mut exp: u64) -> Self {
        let m = self.modulus();
        let mut base = self.residue.clone();
        let mut acc = BigInt::one();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = (acc * &base) % &m;
            }
            base = (&base * &base) % &m;
            exp >>= 1;
        }
        PAdicInt::new(self.p, self.prec, acc)
    }

    /// Integer power allowing negative exponents for units.
    pub fn powi(&self, exp: i64) -> Result<Self> {
        if exp >= 0 {
            Ok(self.pow(exp as u64))
        } else {
            Ok(self.inv()?.pow(exp.unsigned_abs()))
        }
    }

    /// Exact division by `p^k`; the result is known to `N - k` digits.
    pub fn div_p_pow(&self, k: u32) -> Result<Self> {
        if k > self.prec {
            return Err(Error::PrecisionLoss(format!(
                "dividing by p^{k} exhausts precision {}",
                self.prec
            )));
        }
        if let Valuation::Finite(v) = self.val() {
            if v < k {
                return Err(Error::NotIntegral(format!(
                    "{} is not divisible by {}^{k}",
                    self.residue, self.p
                )));
            }
        }
        let r = &self.residue / prime_power(self.p, k);
        Ok(PAdicInt::new(self.p, self.prec - k, r))
    }

    /// Multiplication by an ordinary integer scalar.
    pub fn scale(&self, c: impl Into<BigInt>) -> Self {
        PAdicInt::new(self.p, self.prec, &self.residue * c.into())
    }

    /// Residue modulo p as a machine integer.
    pub fn mod_p(&self) -> u64 {
        if self.prec == 0 {
            return 0;
        }
        (&self.residue % BigInt::from(self.p)).to_u64().unwrap()
    }

    fn check_same_prime(&self, other: &Self) {
        assert_eq!(self.p, other.p, "mixing p-adic integers for different primes");
    }

    /// p-adic logarithm of `1 + self`, valid for `val(self) >= 1`, at the
    /// input's own precision.
    pub fn log1p(&self) -> Result<Self> {
        self.log1p_to(self.prec)
    }

    /// p-adic logarithm of `1 + self` to precision `prec <= self.precision()`.
    pub fn log1p_to(&self, prec: u32) -> Result<Self> {
        if prec > self.prec {
            return Err(Error::PrecisionLoss(format!(
                "log needs input precision {prec}, have {}",
                self.prec
            )));
        }
        let p = self.p;
        let vx = match self.val() {
            Valuation::Finite(0) => {
                return Err(Error::NotIntegral(
                    "log1p needs an argument divisible by p".into(),
                ))
            }
            Valuation::Finite(v) => v as u64,
            Valuation::AtLeast(_) => return Ok(PAdicInt::zero(p, prec)),
        };
        // Terms with n*v(x) - v_p(n) >= prec vanish, and that quantity only grows.
        let mut bound = 1u64;
        while bound * vx < prec as u64 + arith::ilog(bound, p) as u64 {
            bound += 1;
        }
        let extra = arith::ilog(bound, p);
        let work = prec + extra;
        let m = prime_power(p, work);
        let x = self.residue.clone();
        let mut xn = BigInt::one();
        let mut sum = PAdicInt::zero(p, prec);
        for n in 1..bound {
            xn = (xn * &x) % &m;
            let vn = arith::val_u64(n, p);
            let unit = n / p.pow(vn);
            let term = PAdicInt::new(p, work, xn.clone())
                .div_p_pow(vn)?
                .with_precision(prec)?;
            let unit_inv = PAdicInt::new(p, prec, unit).inv()?;
            let term = &term * &unit_inv;
            sum = if n % 2 == 1 { &sum + &term } else { &sum - &term };
        }
        Ok(sum)
    }
}

/// Teichmüller lift of `a`: the (p-1)-th root of unity congruent to `a` mod p.
pub fn teichmuller(a: impl Into<BigInt>, p: u64, prec: u32) -> Result<PAdicInt> {
    let mut x = PAdicInt::new(p, prec, a.into());
    if x.mod_p() == 0 {
        return Err(Error::NotAUnit(x.residue.to_string(), p));
    }
    // x -> x^p converges, gaining one digit per step.
    for _ in 0..prec {
        let next = x.pow(p);
        if next == x {
            break;
        }
        x = next;
    }
    Ok(x)
}

/// The unit root of `X^2 - a_p X + c` for ordinary `a_p` and `val(c) >= 1`.
pub fn hensel_unit_root(a_p: &PAdicInt, c: &PAdicInt) -> Result<PAdicInt> {
    a_p.check_same_prime(c);
    if !a_p.is_unit() {
        return Err(Error::NotOrdinary(format!(
            "a_p = {} has positive valuation",
            a_p.residue
        )));
    }
    if c.mod_p() != 0 && c.prec > 0 {
        return Err(Error::NotOrdinary("constant term must be divisible by p".into()));
    }
    let prec = a_p.prec.min(c.prec);
    let a = a_p.with_precision(prec)?;
    let c = c.with_precision(prec)?;
    let mut x = a.clone();
    // Newton iteration; f'(x) = 2x - a is congruent to a mod p, hence a unit.
    for _ in 0..=prec.next_power_of_two().trailing_zeros() + 1 {
        let f = &(&(&x * &x) - &(&a * &x)) + &c;
        if f.is_zero() {
            break;
        }
        let df = &x.scale(2) - &a;
        x = &x - &(&f * &df.inv()?);
    }
    Ok(x)
}

impl fmt::Debug for PAdicInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + O({}^{})", self.residue, self.p, self.prec)
    }
}

impl fmt::Display for PAdicInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.residue)
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident, $op:tt) => {
        impl<'a> $trait<&'a PAdicInt> for &'a PAdicInt {
            type Output = PAdicInt;
            fn $method(self, rhs: &'a PAdicInt) -> PAdicInt {
                self.check_same_prime(rhs);
                let prec = self.prec.min(rhs.prec);
                PAdicInt::new(self.p, prec, &self.residue $op &rhs.residue)
            }
        }
        impl $trait for PAdicInt {
            type Output = PAdicInt;
            fn $method(self, rhs: PAdicInt) -> PAdicInt {
                (&self).$method(&rhs)
            }
        }
    };
}

binop!(Add, add, +);
binop!(Sub, sub, -);
binop!(Mul, mul, *);

impl Neg for &PAdicInt {
    type Output = PAdicInt;
    fn neg(self) -> PAdicInt {
        PAdicInt::new(self.p, self.prec, -&self.residue)
    }
}

impl Neg for PAdicInt {
    type Output = PAdicInt;
    fn neg(self) -> PAdicInt {
        -&self
    }
}

/// Signed representative in `(-p^N/2, p^N/2]`, handy for display.
pub fn balanced(x: &PAdicInt) -> BigInt {
    let m = x.modulus();
    let half: BigInt = &m / 2;
    if x.residue() > &half {
        x.residue() - m
    } else {
        x.residue().clone()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn z(p: u64, n: u32, r: i64) -> PAdicInt {
        PAdicInt::new(p, n, r)
    }

    #[test]
    fn valuation_examples() {
        assert_eq!(z(5, 3, 50).val(), Valuation::Finite(2));
        assert_eq!(z(5, 3, 1).val(), Valuation::Finite(0));
        assert_eq!(z(5, 3, 0).val(), Valuation::AtLeast(3));
        assert_eq!(z(5, 3, 0).val().to_string(), "≥3");
    }

    #[test]
    fn inverse_examples() {
        assert_eq!(z(5, 2, 9).inv().unwrap(), z(5, 2, 14));
        assert_eq!(z(5, 2, 1).inv().unwrap(), z(5, 2, 1));
        assert!(matches!(z(5, 2, 10).inv(), Err(Error::NotAUnit(..))));
    }

    #[test]
    fn teichmuller_examples() {
        assert_eq!(teichmuller(1, 5, 3).unwrap(), z(5, 3, 1));
        assert_eq!(teichmuller(2, 5, 3).unwrap(), z(5, 3, 57));
        assert_eq!(teichmuller(4, 5, 2).unwrap(), z(5, 2, 24));
        assert!(matches!(teichmuller(10, 5, 2), Err(Error::NotAUnit(..))));
    }

    /// Independent oracle: sum the log series over the rationals, then reduce.
    fn log_oracle(p: u64, n: u32, x: i64) -> PAdicInt {
        let mut s = BigRational::zero();
        let xb = BigInt::from(x);
        for k in 1..80u32 {
            let term = BigRational::new(num_traits::pow(xb.clone(), k as usize), BigInt::from(k));
            if k % 2 == 1 {
                s += term;
            } else {
                s -= term;
            }
        }
        PAdicInt::from_rational(p, n, &s).unwrap()
    }

    #[test]
    fn log_examples() {
        assert_eq!(z(5, 2, 0).log1p().unwrap(), z(5, 2, 0));
        let oracle = log_oracle(5, 4, 5).with_precision(2).unwrap();
        assert_eq!(oracle, z(5, 2, 5));
        assert_eq!(z(5, 2, 5).log1p().unwrap(), oracle);
        assert_eq!(z(5, 4, 5).log1p().unwrap(), log_oracle(5, 4, 5));
        // (1+5)(1+5) - 1 = 35
        let l35 = z(5, 2, 35).log1p().unwrap();
        assert_eq!(l35, z(5, 2, 5).log1p().unwrap().scale(2));
        assert!(matches!(z(5, 2, 5).log1p_to(3), Err(Error::PrecisionLoss(_))));
    }

    #[test]
    fn hensel_examples() {
        assert_eq!(hensel_unit_root(&z(5, 2, 1), &z(5, 2, 5)).unwrap(), z(5, 2, 21));
        assert_eq!(hensel_unit_root(&z(5, 1, 2), &z(5, 1, 0)).unwrap(), z(5, 1, 2));
        assert!(matches!(
            hensel_unit_root(&z(5, 2, 5), &z(5, 2, 5)),
            Err(Error::NotOrdinary(_))
        ));
    }

    #[test]
    fn brute_force_unit_root() {
        for a in 1..25i64 {
            if a % 5 == 0 {
                continue;
            }
            for c in [0i64, 5, 10, 15, 20] {
                let x = hensel_unit_root(&z(5, 2, a), &z(5, 2, c)).unwrap();
                let brute: Vec<i64> = (0..25)
                    .filter(|x| (x * x - a * x + c).rem_euclid(25) == 0 && (x - a) % 5 == 0)
                    .collect();
                assert_eq!(brute.len(), 1);
                assert_eq!(x, z(5, 2, brute[0]));
            }
        }
    }

    #[test]
    fn precision_is_min() {
        let s = &z(5, 3, 7) + &z(5, 2, 7);
        assert_eq!(s.precision(), 2);
        assert_eq!(z(5, 3, 50).div_p_pow(2).unwrap(), z(5, 1, 2));
        assert!(z(5, 3, 1).with_precision(4).is_err());
    }
}
