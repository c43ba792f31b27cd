//! The Iwasawa algebra `Λ = Z_p[[T]]`, truncated at `T^{D+1}` with
//! coefficients modulo `p^N`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::arith;
use crate::cyclotomic::parse_rational;
use crate::error::{Error, Result};
use crate::padic::{prime_power, teichmuller, val_bigint, PAdicInt, Valuation};

pub const DEFAULT_GUARD: usize = 4;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IwasawaElement {
    p: u64,
    prec: u32,
    coeffs: Vec<BigInt>,
}

impl IwasawaElement {
    /// `coeffs[i]` is the coefficient of `T^i`; the truncation is `len - 1`.
    pub fn new(p: u64, prec: u32, coeffs: Vec<BigInt>) -> Self {
        assert!(!coeffs.is_empty(), "need at least a constant term");
        let m = prime_power(p, prec);
        let coeffs = coeffs.into_iter().map(|c| c.mod_floor(&m)).collect();
        IwasawaElement { p, prec, coeffs }
    }

    pub fn from_ints(p: u64, prec: u32, trunc: usize, coeffs: &[i64]) -> Self {
        let mut v: Vec<BigInt> = coeffs.iter().map(|&c| BigInt::from(c)).collect();
        v.resize(trunc + 1, BigInt::zero());
        v.truncate(trunc + 1);
        Self::new(p, prec, v)
    }

    /// Coefficients at their own precisions; the element gets the minimum.
    pub fn from_padics(coeffs: &[PAdicInt]) -> Self {
        let p = coeffs[0].p();
        let prec = coeffs.iter().map(|c| c.precision()).min().unwrap();
        Self::new(p, prec, coeffs.iter().map(|c| c.residue().clone()).collect())
    }

    pub fn zero(p: u64, prec: u32, trunc: usize) -> Self {
        Self::new(p, prec, vec![BigInt::zero(); trunc + 1])
    }

    pub fn one(p: u64, prec: u32, trunc: usize) -> Self {
        Self::constant(&PAdicInt::one(p, prec), trunc)
    }

    pub fn constant(c: &PAdicInt, trunc: usize) -> Self {
        let mut v = vec![BigInt::zero(); trunc + 1];
        v[0] = c.residue().clone();
        Self::new(c.p(), c.precision(), v)
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn precision(&self) -> u32 {
        self.prec
    }

    pub fn trunc(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn residues(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> PAdicInt {
        PAdicInt::new(self.p, self.prec, self.coeffs.get(i).cloned().unwrap_or_default())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    fn modulus(&self) -> BigInt {
        prime_power(self.p, self.prec)
    }

    pub fn with_trunc(&self, trunc: usize) -> Self {
        let mut v = self.coeffs.clone();
        v.resize(trunc + 1, BigInt::zero());
        IwasawaElement { p: self.p, prec: self.prec, coeffs: v }
    }

    pub fn with_precision(&self, prec: u32) -> Result<Self> {
        if prec > self.prec {
            return Err(Error::PrecisionLoss(format!(
                "cannot raise precision from {} to {prec}",
                self.prec
            )));
        }
        Ok(Self::new(self.p, prec, self.coeffs.clone()))
    }

    fn check(&self, other: &Self) {
        assert_eq!(self.p, other.p, "mixing Iwasawa algebras for different primes");
    }

    pub fn scale(&self, c: &PAdicInt) -> Self {
        assert_eq!(self.p, c.p());
        let prec = self.prec.min(c.precision());
        Self::new(self.p, prec, self.coeffs.iter().map(|a| a * c.residue()).collect())
    }

    /// `(μ, λ)` read from coefficient valuations.
    pub fn mu_lambda(&self) -> Result<(u32, usize)> {
        let mut best: Option<(u32, usize)> = None;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let v = val_bigint(c, self.p);
            if best.is_none_or(|(b, _)| v < b) {
                best = Some((v, i));
                if v == 0 {
                    break;
                }
            }
        }
        best.ok_or(Error::InsufficientPrecision(self.prec))
    }

    pub fn mu(&self) -> Result<u32> {
        Ok(self.mu_lambda()?.0)
    }

    pub fn lambda(&self) -> Result<usize> {
        Ok(self.mu_lambda()?.1)
    }

    /// Weierstrass preparation of the truncated series, viewed as a
    /// polynomial of degree `D`, with the default guard band.
    pub fn weierstrass_prep(&self) -> Result<WeierstrassData> {
        self.weierstrass_prep_with_guard(DEFAULT_GUARD)
    }

    pub fn weierstrass_prep_with_guard(&self, guard: usize) -> Result<WeierstrassData> {
        let (mu, lambda) = self.mu_lambda()?;
        let d = self.trunc();
        if lambda + guard > d {
            return Err(Error::TruncationTooShort { lambda, trunc: d, guard });
        }
        let p = self.p;
        let prec = self.prec - mu;
        let m = prime_power(p, prec);
        let pmu = prime_power(p, mu);
        let g: Vec<BigInt> = self.coeffs.iter().map(|c| (c / &pmu).mod_floor(&m)).collect();
        let pb = BigInt::from(p);
        let ubar: Vec<BigInt> = g[lambda..].iter().map(|c| c.mod_floor(&pb)).collect();
        let ubar_inv = series_inverse_mod_p(&ubar, lambda, p);

        let mut poly = vec![BigInt::zero(); lambda + 1];
        poly[lambda] = BigInt::one();
        let mut unit: Vec<BigInt> = g[lambda..].to_vec();
        let mut pj = BigInt::one();
        for _ in 1..prec {
            pj *= &pb;
            let prod = poly_mul(&poly, &unit);
            // E = (G - P W) / p^j mod p
            let e: Vec<BigInt> = (0..=d)
                .map(|i| {
                    let diff = (&g[i] - prod.get(i).cloned().unwrap_or_default()).mod_floor(&m);
                    debug_assert!((&diff % &pj).is_zero());
                    (diff / &pj).mod_floor(&pb)
                })
                .collect();
            if e.iter().all(|c| c.is_zero()) {
                continue;
            }
            // a = E ū⁻¹ mod (p, T^λ);  b = (E - a ū) / T^λ mod p
            let a: Vec<BigInt> = poly_mul(&e[..lambda], &ubar_inv)
                .into_iter()
                .take(lambda)
                .map(|c| c.mod_floor(&pb))
                .collect();
            let au = poly_mul(&a, &ubar);
            let b: Vec<BigInt> = (lambda..=d)
                .map(|i| (&e[i] - au.get(i).cloned().unwrap_or_default()).mod_floor(&pb))
                .collect();
            for (i, c) in a.into_iter().enumerate() {
                poly[i] = (&poly[i] + c * &pj).mod_floor(&m);
            }
            for (i, c) in b.into_iter().enumerate() {
                unit[i] = (&unit[i] + c * &pj).mod_floor(&m);
            }
        }
        let distinguished = poly.into_iter().map(|c| PAdicInt::new(p, prec, c)).collect();
        unit.resize(d + 1, BigInt::zero());
        Ok(WeierstrassData {
            mu,
            lambda,
            distinguished,
            unit: IwasawaElement::new(p, prec, unit),
            full_precision: self.prec,
        })
    }

    /// `F(x)` for `x` of positive valuation; the truncation must be long
    /// enough that the omitted tail is invisible modulo `p^N`.
    pub fn evaluate(&self, x: &PAdicInt) -> Result<PAdicInt> {
        assert_eq!(self.p, x.p());
        let prec = self.prec.min(x.precision());
        if !x.is_zero() {
            let v = match x.val() {
                Valuation::Finite(v) => v,
                Valuation::AtLeast(v) => v,
            };
            if v == 0 {
                return Err(Error::NotIntegral("evaluation point must be divisible by p".into()));
            }
            if (v as u64) * (self.trunc() as u64 + 1) < prec as u64 {
                return Err(Error::PrecisionLoss(format!(
                    "truncation {} cannot determine F at a point of valuation {v} mod p^{prec}",
                    self.trunc()
                )));
            }
        }
        let m = prime_power(self.p, prec);
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = (acc * x.residue() + c).mod_floor(&m);
        }
        Ok(PAdicInt::new(self.p, prec, acc))
    }

    /// Evaluation at the character `u ↦ u^{1-n}` of `1 + pZ_p`, i.e. at
    /// `T = (1+p)^{1-n} - 1`.
    pub fn specialize(&self, n: i64) -> Result<PAdicInt> {
        let gamma = PAdicInt::new(self.p, self.prec, 1 + self.p);
        let t = &gamma.powi(1 - n)? - &PAdicInt::one(self.p, self.prec);
        self.evaluate(&t)
    }

    /// Coefficientwise congruence modulo p on the common truncation,
    /// optionally up to a scalar unit.
    pub fn congruent_mod_p(&self, other: &Self, allow_unit_scalar: bool) -> Congruence {
        self.check(other);
        let p = self.p;
        let d = self.trunc().min(other.trunc());
        let red = |x: &BigInt| x.mod_floor(&BigInt::from(p)).to_u64().unwrap();
        let f: Vec<u64> = self.coeffs[..=d].iter().map(red).collect();
        let g: Vec<u64> = other.coeffs[..=d].iter().map(red).collect();
        let unit = if allow_unit_scalar {
            match g.iter().position(|&c| c != 0) {
                Some(i) => arith::mul_mod(f[i], arith::inv_mod(g[i], p).unwrap(), p),
                None => 1,
            }
        } else {
            1
        };
        let mismatch = if unit == 0 {
            g.iter().position(|&c| c != 0)
        } else {
            (0..=d).find(|&i| f[i] != arith::mul_mod(unit, g[i], p))
        };
        Congruence { congruent: mismatch.is_none(), unit, first_mismatch: mismatch }
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("serialisable")
    }
}

/// Verdict of [`IwasawaElement::congruent_mod_p`]: `F ≡ unit · G mod p`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Congruence {
    pub congruent: bool,
    pub unit: u64,
    pub first_mismatch: Option<usize>,
}

/// `p^μ · distinguished · unit`; the two factors are known modulo `p^{N-μ}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeierstrassData {
    pub mu: u32,
    pub lambda: usize,
    /// monic, `λ + 1` coefficients from the constant term up
    pub distinguished: Vec<PAdicInt>,
    pub unit: IwasawaElement,
    full_precision: u32,
}

impl WeierstrassData {
    pub fn reconstruct(&self) -> IwasawaElement {
        let p = self.unit.p;
        let poly: Vec<BigInt> = self.distinguished.iter().map(|c| c.residue().clone()).collect();
        let prod = poly_mul(&poly, &self.unit.coeffs);
        let pmu = prime_power(p, self.mu);
        let d = self.unit.trunc();
        let coeffs = (0..=d).map(|i| prod.get(i).cloned().unwrap_or_default() * &pmu).collect();
        IwasawaElement::new(p, self.full_precision, coeffs)
    }

    pub fn is_distinguished(&self) -> bool {
        let l = self.lambda;
        self.distinguished.len() == l + 1
            && self.distinguished[l].residue().is_one()
            && self.distinguished[..l].iter().all(|c| c.mod_p() == 0)
    }
}

fn poly_mul(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// First `n` coefficients of `u⁻¹` modulo p, for `u(0) ≢ 0`.
fn series_inverse_mod_p(u: &[BigInt], n: usize, p: u64) -> Vec<BigInt> {
    let pb = BigInt::from(p);
    let u0 = u[0].to_u64().unwrap();
    let inv0 = BigInt::from(arith::inv_mod(u0, p).unwrap());
    let mut out: Vec<BigInt> = Vec::with_capacity(n);
    for k in 0..n {
        let mut s = if k == 0 { BigInt::one() } else { BigInt::zero() };
        for j in 1..=k.min(u.len() - 1) {
            s -= &u[j] * &out[k - j];
        }
        out.push((s * &inv0).mod_floor(&pb));
    }
    out
}

/// `(1+T)^e = Σ C(e, k) T^k` through `T^D`, modulo `p^N`. Requires `e` to
/// be known to `N + v_p(D!)` digits.
pub fn one_plus_t_pow(e: &PAdicInt, trunc: usize, prec: u32) -> Result<IwasawaElement> {
    let p = e.p();
    let extra = arith::val_factorial(trunc as u64, p);
    let work = prec + extra;
    if e.precision() < work {
        return Err(Error::PrecisionLoss(format!(
            "exponent known to {} digits, binomials through T^{trunc} need {work}",
            e.precision()
        )));
    }
    let m = prime_power(p, work);
    let mut coeffs = Vec::with_capacity(trunc + 1);
    let mut falling = BigInt::one();
    let mut unit_fact = BigInt::one();
    let mut vfact = 0u32;
    for k in 0..=trunc as u64 {
        if k > 0 {
            falling = (falling * (e.residue() - BigInt::from(k - 1))).mod_floor(&m);
            let v = arith::val_u64(k, p);
            vfact += v;
            unit_fact = (unit_fact * BigInt::from(k / p.pow(v))).mod_floor(&m);
        }
        let num = PAdicInt::new(p, work, falling.clone()).div_p_pow(vfact)?;
        let inv = PAdicInt::new(p, num.precision(), unit_fact.clone()).inv()?;
        coeffs.push((&num * &inv).with_precision(prec)?.residue().clone());
    }
    Ok(IwasawaElement::new(p, prec, coeffs))
}

/// `e(q)` with `(1+p)^{e(q)} = q_w`, `q_w = q · ω(q)⁻¹` the projection of `q`
/// to `1 + pZ_p`.
pub fn frobenius_exponent(q: u64, p: u64, prec: u32) -> Result<PAdicInt> {
    if q % p == 0 {
        return Err(Error::BadPrime { q, reason: format!("equals p = {p}") });
    }
    let w = prec + 1;
    let qw = &PAdicInt::new(p, w, q) * &teichmuller(q, p, w)?.inv()?;
    let one = PAdicInt::one(p, w);
    let log_q = (&qw - &one).log1p()?.div_p_pow(1)?;
    let log_g = PAdicInt::new(p, w, p).log1p()?.div_p_pow(1)?;
    Ok(&log_q * &log_g.inv()?)
}

macro_rules! binop {
    ($trait:ident, $method:ident, $body:expr) => {
        impl $trait for &IwasawaElement {
            type Output = IwasawaElement;
            fn $method(self, rhs: &IwasawaElement) -> IwasawaElement {
                self.check(rhs);
                let f: fn(&IwasawaElement, &IwasawaElement) -> IwasawaElement = $body;
                f(self, rhs)
            }
        }
        impl $trait for IwasawaElement {
            type Output = IwasawaElement;
            fn $method(self, rhs: IwasawaElement) -> IwasawaElement {
                (&self).$method(&rhs)
            }
        }
    };
}

binop!(Add, add, |a, b| {
    let d = a.trunc().min(b.trunc());
    let prec = a.prec.min(b.prec);
    IwasawaElement::new(a.p, prec, (0..=d).map(|i| &a.coeffs[i] + &b.coeffs[i]).collect())
});

binop!(Sub, sub, |a, b| {
    let d = a.trunc().min(b.trunc());
    let prec = a.prec.min(b.prec);
    IwasawaElement::new(a.p, prec, (0..=d).map(|i| &a.coeffs[i] - &b.coeffs[i]).collect())
});

binop!(Mul, mul, |a, b| {
    let d = a.trunc().min(b.trunc());
    let prec = a.prec.min(b.prec);
    let m = prime_power(a.p, prec);
    let mut out = vec![BigInt::zero(); d + 1];
    for i in 0..=d {
        if a.coeffs[i].is_zero() {
            continue;
        }
        for j in 0..=d - i {
            out[i + j] += &a.coeffs[i] * &b.coeffs[j];
        }
    }
    IwasawaElement::new(a.p, prec, out.into_iter().map(|c| c.mod_floor(&m)).collect())
});

impl Neg for &IwasawaElement {
    type Output = IwasawaElement;
    fn neg(self) -> IwasawaElement {
        IwasawaElement::new(self.p, self.prec, self.coeffs.iter().map(|c| -c).collect())
    }
}

impl fmt::Debug for IwasawaElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self} (mod {}^{}, T^{})", self.p, self.prec, self.trunc() + 1)
    }
}

impl fmt::Display for IwasawaElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let m = self.modulus();
        let half = &m / 2;
        let mut terms = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let c = if c > &half { c - &m } else { c.clone() };
            terms.push(match i {
                0 => c.to_string(),
                1 => format!("{c}*T"),
                _ => format!("{c}*T^{i}"),
            });
        }
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct Record {
    p: u64,
    precision: u32,
    /// coefficients past the listed ones are zero up to `T^trunc`
    #[serde(default, skip_serializing_if = "Option::is_none")]
    trunc: Option<usize>,
    coeffs: Vec<String>,
}

impl Serialize for IwasawaElement {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        Record {
            p: self.p,
            precision: self.prec,
            trunc: None,
            coeffs: self.coeffs.iter().map(|c| c.to_string()).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for IwasawaElement {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let r = Record::deserialize(d)?;
        if r.p < 5 || !arith::is_prime(r.p) {
            return Err(D::Error::custom(format!("p = {} must be a prime >= 5", r.p)));
        }
        if r.precision == 0 || r.coeffs.is_empty() {
            return Err(D::Error::custom("need positive precision and at least one coefficient"));
        }
        let coeffs = r
            .coeffs
            .iter()
            .map(|s| {
                let x = parse_rational(s).map_err(D::Error::custom)?;
                Ok(PAdicInt::from_rational(r.p, r.precision, &x)
                    .map_err(D::Error::custom)?
                    .residue()
                    .clone())
            })
            .collect::<std::result::Result<Vec<_>, D::Error>>()?;
        let e = IwasawaElement::new(r.p, r.precision, coeffs);
        match r.trunc {
            Some(d) if d + 1 < r.coeffs.len() => {
                Err(D::Error::custom(format!("{} coefficients exceed truncation {d}", r.coeffs.len())))
            }
            Some(d) => Ok(e.with_trunc(d)),
            None => Ok(e),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn el(p: u64, n: u32, d: usize, c: &[i64]) -> IwasawaElement {
        IwasawaElement::from_ints(p, n, d, c)
    }

    #[test]
    fn weierstrass_examples() {
        let f = el(5, 6, 8, &[25, 5, 1]);
        let w = f.weierstrass_prep().unwrap();
        assert_eq!((w.mu, w.lambda), (0, 2));
        let d: Vec<i64> = w.distinguished.iter().map(|c| c.residue().try_into().unwrap()).collect();
        assert_eq!(d, vec![25, 5, 1]);
        assert_eq!(w.unit, IwasawaElement::one(5, 6, 8));
        let w = el(5, 6, 8, &[5, 5]).weierstrass_prep().unwrap();
        assert_eq!((w.mu, w.lambda), (1, 0));
        assert_eq!(w.reconstruct(), el(5, 6, 8, &[5, 5]));
        let w = el(5, 6, 8, &[5, 1]).weierstrass_prep().unwrap();
        assert_eq!((w.mu, w.lambda), (0, 1));
        assert!(matches!(el(5, 3, 8, &[125, 250]).weierstrass_prep(), Err(Error::InsufficientPrecision(3))));
        assert!(matches!(
            el(5, 3, 8, &[5, 5, 5, 5, 5, 1]).weierstrass_prep(),
            Err(Error::TruncationTooShort { lambda: 5, trunc: 8, guard: 4 })
        ));
    }

    #[test]
    fn weierstrass_nontrivial_unit() {
        // (5 + T)(2 + 3T + T^2) with an extra 25 T^4 perturbation
        let f = el(5, 6, 12, &[10, 17, 8, 1, 25]);
        let w = f.weierstrass_prep().unwrap();
        assert_eq!((w.mu, w.lambda), (0, 1));
        assert!(w.is_distinguished());
        assert_eq!(w.reconstruct(), f);
        assert!(w.unit.coeff(0).is_unit());
    }

    #[test]
    fn binomial_examples() {
        assert_eq!(one_plus_t_pow(&PAdicInt::new(5, 8, 1), 3, 4).unwrap(), el(5, 4, 3, &[1, 1]));
        assert_eq!(one_plus_t_pow(&PAdicInt::new(5, 8, 2), 3, 4).unwrap(), el(5, 4, 3, &[1, 2, 1]));
        assert_eq!(one_plus_t_pow(&PAdicInt::new(5, 2, 5), 2, 2).unwrap(), el(5, 2, 2, &[1, 5, 10]));
        assert!(matches!(one_plus_t_pow(&PAdicInt::new(5, 3, 5), 10, 2), Err(Error::PrecisionLoss(_))));
        // negative exponent: (1+T)^{-1} = 1 - T + T^2 - ...
        let inv = one_plus_t_pow(&PAdicInt::new(5, 10, -1), 6, 5).unwrap();
        assert_eq!(inv, el(5, 5, 6, &[1, -1, 1, -1, 1, -1, 1]));
    }

    #[test]
    fn frobenius_examples() {
        let p = 5;
        let n = 3;
        let qw = &PAdicInt::new(p, n, 2) * &teichmuller(2, p, n).unwrap().inv().unwrap();
        assert_eq!(qw, PAdicInt::new(p, n, 11));
        let e = frobenius_exponent(2, p, n + 4).unwrap();
        let series = one_plus_t_pow(&e, 6, n).unwrap();
        assert_eq!(series.evaluate(&PAdicInt::new(p, n, p)).unwrap(), qw);
        // q = ω(q)(1+p): 6·ω(6)⁻¹ = 6 since ω(6) = 1
        assert_eq!(frobenius_exponent(6, p, 4).unwrap(), PAdicInt::one(p, 4));
        assert_eq!(one_plus_t_pow(&PAdicInt::zero(5, 6), 4, 3).unwrap(), IwasawaElement::one(5, 3, 4));
    }

    #[test]
    fn specialization_examples() {
        let f = el(5, 2, 4, &[1, 1]);
        assert_eq!(f.specialize(1).unwrap(), PAdicInt::one(5, 2));
        assert_eq!(f.specialize(3).unwrap(), PAdicInt::new(5, 2, 16));
        assert_eq!(el(5, 2, 4, &[7]).specialize(5).unwrap(), PAdicInt::new(5, 2, 7));
        assert!(matches!(el(5, 6, 2, &[1, 1]).specialize(2), Err(Error::PrecisionLoss(_))));
    }

    #[test]
    fn congruence_examples() {
        let t = el(5, 3, 4, &[0, 1]);
        assert!(t.congruent_mod_p(&el(5, 3, 4, &[0, 1, 5]), false).congruent);
        let c = el(5, 3, 4, &[0, 2]).congruent_mod_p(&t, true);
        assert!(c.congruent);
        assert_eq!(c.unit, 2);
        assert!(!el(5, 3, 4, &[0, 2]).congruent_mod_p(&t, false).congruent);
        assert!(!t.congruent_mod_p(&el(5, 3, 4, &[0, 0, 1]), true).congruent);
    }

    #[test]
    fn json_round_trip() {
        let f = el(7, 3, 5, &[1, -2, 49, 0, 3]);
        let s = serde_json::to_string(&f).unwrap();
        assert_eq!(s, r#"{"p":7,"precision":3,"coeffs":["1","341","49","0","3","0"]}"#);
        let back: IwasawaElement = serde_json::from_str(&s).unwrap();
        assert_eq!(back, f);
        assert!(serde_json::from_str::<IwasawaElement>(r#"{"p":4,"precision":3,"coeffs":["1"]}"#).is_err());
    }
}
