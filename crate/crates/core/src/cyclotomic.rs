//! Exact arithmetic in cyclotomic fields Q(ζ_n).
//!
//! An element is stored in the power basis `1, ζ, …, ζ^{φ(n)-1}` as integer
//! numerators over one positive common denominator. Reduction modulo the
//! n-th cyclotomic polynomial is canonical, so two elements of the same order
//! are equal exactly when their stored data agree.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::arith;
use crate::error::{Error, Result};
use crate::padic::{teichmuller, PAdicInt};

/// Φ_n with its leading term dropped, stored sparsely.
#[derive(Debug)]
struct CycloPoly {
    degree: usize,
    lower: Vec<(usize, BigInt)>,
}

fn cyclo_cache() -> &'static RwLock<HashMap<u64, Arc<CycloPoly>>> {
    static CACHE: OnceLock<RwLock<HashMap<u64, Arc<CycloPoly>>>> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

/// Dense coefficients of the n-th cyclotomic polynomial, constant term first.
pub fn cyclotomic_polynomial(n: u64) -> Vec<BigInt> {
    assert!(n >= 1);
    let rad: u64 = arith::factor(n).iter().map(|&(p, _)| p).product();
    let stretch = (n / rad) as usize;
    // Φ_rad = Π_{d | rad} (x^d - 1)^{μ(rad/d)}
    let mut poly = vec![BigInt::one()];
    let divs = arith::divisors(rad);
    for &d in &divs {
        if arith::moebius(rad / d) == 1 {
            poly = mul_xd_minus_one(&poly, d as usize);
        }
    }
    for &d in &divs {
        if arith::moebius(rad / d) == -1 {
            poly = div_xd_minus_one(&poly, d as usize);
        }
    }
    debug_assert!(poly.last().map(|c| c.is_one()).unwrap_or(false));
    let mut out = vec![BigInt::zero(); (poly.len() - 1) * stretch + 1];
    for (i, c) in poly.into_iter().enumerate() {
        out[i * stretch] = c;
    }
    out
}

fn mul_xd_minus_one(a: &[BigInt], d: usize) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); a.len() + d];
    for (i, c) in a.iter().enumerate() {
        out[i + d] += c;
        out[i] -= c;
    }
    out
}

fn div_xd_minus_one(a: &[BigInt], d: usize) -> Vec<BigInt> {
    let deg = a.len() - 1;
    let qdeg = deg - d;
    let mut q = vec![BigInt::zero(); qdeg + 1];
    for j in (0..=qdeg).rev() {
        let upper = if j + d <= qdeg { q[j + d].clone() } else { BigInt::zero() };
        q[j] = &a[j + d] + upper;
    }
    q
}

fn cyclo(n: u64) -> Arc<CycloPoly> {
    if let Some(c) = cyclo_cache().read().unwrap().get(&n) {
        return c.clone();
    }
    let dense = cyclotomic_polynomial(n);
    let degree = dense.len() - 1;
    let lower = dense[..degree]
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, c)| (i, c.clone()))
        .collect();
    let poly = Arc::new(CycloPoly { degree, lower });
    cyclo_cache().write().unwrap().insert(n, poly.clone());
    poly
}

/// Reduces a dense polynomial in ζ_n modulo Φ_n in place and truncates it.
fn reduce(n: u64, v: &mut Vec<BigInt>) {
    let phi = cyclo(n);
    let d = phi.degree;
    for i in (d..v.len()).rev() {
        if v[i].is_zero() {
            continue;
        }
        let c = std::mem::take(&mut v[i]);
        for (j, cj) in &phi.lower {
            v[i - d + j] -= &c * cj;
        }
    }
    v.resize(d, BigInt::zero());
}

/// The p-adic embedding data shared by every module: a prime and a fixed
/// primitive root used to send ζ_n (for n | p-1) into Z_p.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Embedding {
    p: u64,
    g: u64,
}

impl Embedding {
    /// Uses the smallest primitive root modulo p.
    pub fn new(p: u64) -> Result<Self> {
        Self::validate_prime(p)?;
        Ok(Embedding {
            p,
            g: arith::primitive_root(p).expect("primes have primitive roots"),
        })
    }

    pub fn with_primitive_root(p: u64, g: u64) -> Result<Self> {
        Self::validate_prime(p)?;
        if arith::multiplicative_order(g % p, p) != Some(p - 1) {
            return Err(Error::Schema(format!("{g} is not a primitive root mod {p}")));
        }
        Ok(Embedding { p, g: g % p })
    }

    fn validate_prime(p: u64) -> Result<()> {
        if p < 5 || !arith::is_prime(p) {
            return Err(Error::Schema(format!("p = {p} must be a prime >= 5")));
        }
        Ok(())
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn primitive_root(&self) -> u64 {
        self.g
    }

    /// Discrete logarithm base g modulo p.
    pub fn index(&self, a: u64) -> Option<u64> {
        let a = a % self.p;
        if a == 0 {
            return None;
        }
        let mut x = 1u64;
        for k in 0..self.p - 1 {
            if x == a {
                return Some(k);
            }
            x = arith::mul_mod(x, self.g, self.p);
        }
        None
    }

    /// Image of ζ_n in Z_p modulo p^prec.
    pub fn zeta(&self, n: u64, prec: u32) -> Result<PAdicInt> {
        if (self.p - 1) % n != 0 {
            return Err(Error::NotEmbeddable {
                p: self.p,
                reason: format!("{n} does not divide p - 1"),
            });
        }
        Ok(teichmuller(self.g, self.p, prec)?.pow((self.p - 1) / n))
    }
}

#[derive(Clone)]
pub struct CycNumber {
    order: u64,
    num: Vec<BigInt>,
    den: BigInt,
}

impl CycNumber {
    fn normalize(mut self) -> Self {
        if self.den.is_negative() {
            self.den = -self.den;
            self.num.iter_mut().for_each(|c| *c = -c.clone());
        }
        let mut g = self.den.clone();
        for c in &self.num {
            if g.is_one() {
                break;
            }
            g = g.gcd(c);
        }
        if !g.is_one() && !g.is_zero() {
            self.num.iter_mut().for_each(|c| *c = &*c / &g);
            self.den = &self.den / &g;
        }
        if self.num.iter().all(|c| c.is_zero()) {
            self.den = BigInt::one();
        }
        self
    }

    /// Builds an element from integer numerators of `ζ_n^i` (any length,
    /// including exponents beyond n) over a common denominator.
    pub fn from_dense(order: u64, coeffs: Vec<BigInt>, den: BigInt) -> Self {
        assert!(order >= 1);
        assert!(!den.is_zero(), "zero denominator");
        let n = order as usize;
        let mut v = coeffs;
        if v.len() > n {
            // fold modulo x^n - 1 first
            let mut folded = vec![BigInt::zero(); n];
            for (i, c) in v.into_iter().enumerate() {
                folded[i % n] += c;
            }
            v = folded;
        }
        reduce(order, &mut v);
        CycNumber { order, num: v, den }.normalize()
    }

    /// Builds an element from rational power-basis coefficients.
    pub fn from_rationals(order: u64, coeffs: &[BigRational]) -> Self {
        let den = coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let num = coeffs
            .iter()
            .map(|c| c.numer() * (&den / c.denom()))
            .collect();
        CycNumber::from_dense(order, num, den)
    }

    pub fn zero(order: u64) -> Self {
        CycNumber::from_dense(order, vec![], BigInt::one())
    }

    pub fn one(order: u64) -> Self {
        CycNumber::from_int(order, 1)
    }

    pub fn from_int(order: u64, c: impl Into<BigInt>) -> Self {
        CycNumber::from_dense(order, vec![c.into()], BigInt::one())
    }

    pub fn from_rational(order: u64, c: &BigRational) -> Self {
        CycNumber::from_dense(order, vec![c.numer().clone()], c.denom().clone())
    }

    /// ζ_n^k.
    pub fn root_of_unity(order: u64, k: u64) -> Self {
        let k = (k % order) as usize;
        let mut v = vec![BigInt::zero(); k + 1];
        v[k] = BigInt::one();
        CycNumber::from_dense(order, v, BigInt::one())
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn numerators(&self) -> &[BigInt] {
        &self.num
    }

    pub fn denominator(&self) -> &BigInt {
        &self.den
    }

    /// Power-basis coefficients; always `φ(order)` of them.
    pub fn coeffs(&self) -> Vec<BigRational> {
        self.num
            .iter()
            .map(|c| BigRational::new(c.clone(), self.den.clone()))
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.num.iter().all(|c| c.is_zero())
    }

    pub fn as_rational(&self) -> Option<BigRational> {
        if self.num.iter().skip(1).all(|c| c.is_zero()) {
            let c0 = self.num.first().cloned().unwrap_or_default();
            Some(BigRational::new(c0, self.den.clone()))
        } else {
            None
        }
    }

    /// Re-expresses the element in Q(ζ_m) for a multiple m of the order.
    pub fn promote(&self, m: u64) -> Self {
        assert!(m % self.order == 0, "{m} is not a multiple of {}", self.order);
        if m == self.order {
            return self.clone();
        }
        let step = (m / self.order) as usize;
        let mut v = vec![BigInt::zero(); m as usize];
        for (i, c) in self.num.iter().enumerate() {
            v[i * step] = c.clone();
        }
        CycNumber::from_dense(m, v, self.den.clone())
    }

    /// Product of two elements of the same field.
    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        if self.order != other.order {
            return Err(Error::OrderMismatch(self.order, other.order));
        }
        let mut v = vec![BigInt::zero(); (self.num.len() + other.num.len()).max(1)];
        for (i, a) in self.num.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.num.iter().enumerate() {
                if !b.is_zero() {
                    v[i + j] += a * b;
                }
            }
        }
        Ok(CycNumber::from_dense(self.order, v, &self.den * &other.den))
    }

    fn lifted_pair(&self, other: &Self) -> (Self, Self) {
        let m = arith::lcm(self.order, other.order);
        (self.promote(m), other.promote(m))
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        CycNumber::from_dense(
            self.order,
            self.num.iter().map(|x| x * c.numer()).collect(),
            &self.den * c.denom(),
        )
    }

    pub fn pow(&self, mut exp: u64) -> Self {
        let mut base = self.clone();
        let mut acc = CycNumber::one(self.order);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.try_mul(&base).unwrap();
            }
            exp >>= 1;
            if exp > 0 {
                base = base.try_mul(&base).unwrap();
            }
        }
        acc
    }

    /// The automorphism ζ ↦ ζ^a, for `a` prime to the order.
    pub fn galois(&self, a: u64) -> Self {
        assert_eq!(arith::gcd(a, self.order), 1);
        let n = self.order;
        let mut v = vec![BigInt::zero(); n as usize];
        for (i, c) in self.num.iter().enumerate() {
            v[((i as u64 * a) % n) as usize] += c;
        }
        CycNumber::from_dense(n, v, self.den.clone())
    }

    /// Complex conjugation ζ ↦ ζ^{-1}.
    pub fn conj(&self) -> Self {
        self.galois(self.order - 1)
    }

    /// Image under ζ_n ↦ exp(2πi/n).
    pub fn to_complex(&self) -> Complex64 {
        let den = self.den.to_f64().unwrap_or(f64::INFINITY);
        let n = self.order as f64;
        self.num
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| {
                let angle = 2.0 * std::f64::consts::PI * i as f64 / n;
                Complex64::from_polar(c.to_f64().unwrap_or(f64::NAN) / den, angle)
            })
            .sum()
    }

    /// True when no coefficient has p in its denominator, i.e. the element
    /// is integral at every prime above p.
    pub fn is_p_integral(&self, p: u64) -> bool {
        !(&self.den % BigInt::from(p)).is_zero()
    }

    /// Image in Z_p under ζ_n ↦ teichmuller(g)^{(p-1)/n}.
    pub fn embed_padic(&self, emb: &Embedding, prec: u32) -> Result<PAdicInt> {
        let p = emb.p();
        if (&self.den % BigInt::from(p)).is_zero() {
            return Err(Error::NotEmbeddable {
                p,
                reason: format!("denominator {} is divisible by p", self.den),
            });
        }
        let z = emb.zeta(self.order, prec)?;
        let mut acc = PAdicInt::zero(p, prec);
        for c in self.num.iter().rev() {
            acc = &(&acc * &z) + &PAdicInt::new(p, prec, c.clone());
        }
        Ok(&acc * &PAdicInt::new(p, prec, self.den.clone()).inv()?)
    }
}

/// Product in Q(ζ_n); both factors must have the same order.
pub fn cyc_mul(u: &CycNumber, v: &CycNumber) -> Result<CycNumber> {
    u.try_mul(v)
}

/// Image of `u` in Z_p.
pub fn cyc_embed_padic(u: &CycNumber, emb: &Embedding, prec: u32) -> Result<PAdicInt> {
    u.embed_padic(emb, prec)
}

impl PartialEq for CycNumber {
    fn eq(&self, other: &Self) -> bool {
        if self.order == other.order {
            return self.den == other.den && self.num == other.num;
        }
        let (a, b) = self.lifted_pair(other);
        a.den == b.den && a.num == b.num
    }
}

impl Eq for CycNumber {}

impl fmt::Debug for CycNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for CycNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms = Vec::new();
        for (i, c) in self.coeffs().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            terms.push(match i {
                0 => format!("{c}"),
                1 => format!("({c})*z{}", self.order),
                _ => format!("({c})*z{}^{i}", self.order),
            });
        }
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}

impl Add for &CycNumber {
    type Output = CycNumber;
    fn add(self, rhs: &CycNumber) -> CycNumber {
        let (a, b) = self.lifted_pair(rhs);
        let len = a.num.len();
        let num = (0..len)
            .map(|i| &a.num[i] * &b.den + &b.num[i] * &a.den)
            .collect();
        CycNumber::from_dense(a.order, num, &a.den * &b.den)
    }
}

impl Sub for &CycNumber {
    type Output = CycNumber;
    fn sub(self, rhs: &CycNumber) -> CycNumber {
        self + &(-rhs)
    }
}

impl Mul for &CycNumber {
    type Output = CycNumber;
    fn mul(self, rhs: &CycNumber) -> CycNumber {
        let (a, b) = self.lifted_pair(rhs);
        a.try_mul(&b).unwrap()
    }
}

impl Neg for &CycNumber {
    type Output = CycNumber;
    fn neg(self) -> CycNumber {
        CycNumber {
            order: self.order,
            num: self.num.iter().map(|c| -c).collect(),
            den: self.den.clone(),
        }
    }
}

impl Add for CycNumber {
    type Output = CycNumber;
    fn add(self, rhs: CycNumber) -> CycNumber {
        &self + &rhs
    }
}

impl Sub for CycNumber {
    type Output = CycNumber;
    fn sub(self, rhs: CycNumber) -> CycNumber {
        &self - &rhs
    }
}

impl Mul for CycNumber {
    type Output = CycNumber;
    fn mul(self, rhs: CycNumber) -> CycNumber {
        &self * &rhs
    }
}

impl Neg for CycNumber {
    type Output = CycNumber;
    fn neg(self) -> CycNumber {
        -&self
    }
}

pub(crate) fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let parse_int = |t: &str| {
        t.trim()
            .parse::<BigInt>()
            .map_err(|_| Error::Schema(format!("not an exact rational: {s:?}")))
    };
    match s.split_once('/') {
        Some((n, d)) => {
            let d = parse_int(d)?;
            if d.is_zero() {
                return Err(Error::Schema(format!("zero denominator in {s:?}")));
            }
            Ok(BigRational::new(parse_int(n)?, d))
        }
        None => Ok(BigRational::from_integer(parse_int(s)?)),
    }
}

#[derive(Serialize, Deserialize)]
struct CycRecord {
    order: u64,
    coeffs: Vec<String>,
}

impl Serialize for CycNumber {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        CycRecord {
            order: self.order,
            coeffs: self.coeffs().iter().map(|c| c.to_string()).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for CycNumber {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let rec = CycRecord::deserialize(d)?;
        if rec.order == 0 {
            return Err(serde::de::Error::custom("cyclotomic order must be positive"));
        }
        let coeffs = rec
            .coeffs
            .iter()
            .map(|c| parse_rational(c))
            .collect::<Result<Vec<_>>>()
            .map_err(serde::de::Error::custom)?;
        Ok(CycNumber::from_rationals(rec.order, &coeffs))
    }
}
