//! Truncated q-expansions `Σ_{n<=D} a(n) qⁿ` and the Hecke-type operators
//! acting on them.
//!
//! Every operator returns the largest truncation on which its output is
//! determined by the input: `T_q` and `U_q` shrink `D` to `⌊D/q⌋`; `V_q`
//! keeps `D` (its output is known much further, but callers get no more
//! than they gave).

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::arith;
use crate::characters::DirichletCharacter;
use crate::cyclotomic::{parse_rational, CycNumber, Embedding};
use crate::error::{Error, Result};
use crate::padic::{hensel_unit_root, PAdicInt};

pub trait CoefficientRing: Clone + fmt::Debug {
    type Elem: Clone + PartialEq + fmt::Debug;

    fn name(&self) -> String;
    fn zero(&self) -> Self::Elem;
    fn from_int(&self, n: &BigInt) -> Self::Elem;
    fn from_cyc(&self, x: &CycNumber) -> Result<Self::Elem>;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn render(&self, a: &Self::Elem) -> String;
    fn parse(&self, s: &str) -> Result<Self::Elem>;
    fn to_padic(&self, a: &Self::Elem, emb: &Embedding, prec: u32) -> Result<PAdicInt>;
}

/// Exact rationals. Character values must be rational (`±1`, `0`).
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Rationals;

impl CoefficientRing for Rationals {
    type Elem = BigRational;

    fn name(&self) -> String {
        "rational".into()
    }
    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn from_int(&self, n: &BigInt) -> BigRational {
        BigRational::from_integer(n.clone())
    }
    fn from_cyc(&self, x: &CycNumber) -> Result<BigRational> {
        x.as_rational()
            .ok_or_else(|| Error::Incompatible(format!("{x} is not rational")))
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn render(&self, a: &BigRational) -> String {
        a.to_string()
    }
    fn parse(&self, s: &str) -> Result<BigRational> {
        parse_rational(s)
    }
    fn to_padic(&self, a: &BigRational, emb: &Embedding, prec: u32) -> Result<PAdicInt> {
        PAdicInt::from_rational(emb.p(), prec, a).map_err(|_| Error::NotEmbeddable {
            p: emb.p(),
            reason: format!("{a} has p in its denominator"),
        })
    }
}

/// Exact elements of cyclotomic fields; operands of different orders are
/// promoted to the lcm.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cyclotomic {
    pub order: u64,
}

impl CoefficientRing for Cyclotomic {
    type Elem = CycNumber;

    fn name(&self) -> String {
        format!("cyclotomic({})", self.order)
    }
    fn zero(&self) -> CycNumber {
        CycNumber::zero(self.order)
    }
    fn from_int(&self, n: &BigInt) -> CycNumber {
        CycNumber::from_int(self.order, n.clone())
    }
    fn from_cyc(&self, x: &CycNumber) -> Result<CycNumber> {
        Ok(x.clone())
    }
    fn add(&self, a: &CycNumber, b: &CycNumber) -> CycNumber {
        a + b
    }
    fn sub(&self, a: &CycNumber, b: &CycNumber) -> CycNumber {
        a - b
    }
    fn mul(&self, a: &CycNumber, b: &CycNumber) -> CycNumber {
        a * b
    }
    fn is_zero(&self, a: &CycNumber) -> bool {
        a.is_zero()
    }
    /// `"c"` for rational values, otherwise `"n:c0,c1,..."`.
    fn render(&self, a: &CycNumber) -> String {
        match a.as_rational() {
            Some(r) => r.to_string(),
            None => {
                let cs: Vec<String> = a.coeffs().iter().map(|c| c.to_string()).collect();
                format!("{}:{}", a.order(), cs.join(","))
            }
        }
    }
    fn parse(&self, s: &str) -> Result<CycNumber> {
        match s.split_once(':') {
            None => Ok(CycNumber::from_rational(self.order, &parse_rational(s)?)),
            Some((n, rest)) => {
                let n: u64 = n
                    .trim()
                    .parse()
                    .map_err(|_| Error::Schema(format!("bad cyclotomic order in {s:?}")))?;
                if n == 0 {
                    return Err(Error::Schema(format!("bad cyclotomic order in {s:?}")));
                }
                let cs = rest
                    .split(',')
                    .map(parse_rational)
                    .collect::<Result<Vec<_>>>()?;
                if cs.len() as u64 != arith::totient(n) {
                    return Err(Error::Schema(format!(
                        "{s:?} needs {} coefficients",
                        arith::totient(n)
                    )));
                }
                Ok(CycNumber::from_rationals(n, &cs))
            }
        }
    }
    fn to_padic(&self, a: &CycNumber, emb: &Embedding, prec: u32) -> Result<PAdicInt> {
        a.embed_padic(emb, prec)
    }
}

/// `Z/p^N` with character values embedded through a fixed primitive root.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PAdic {
    pub embedding: Embedding,
    pub prec: u32,
}

impl PAdic {
    pub fn new(embedding: Embedding, prec: u32) -> Self {
        PAdic { embedding, prec }
    }
}

impl CoefficientRing for PAdic {
    type Elem = PAdicInt;

    fn name(&self) -> String {
        format!("padic({}, {})", self.embedding.p(), self.prec)
    }
    fn zero(&self) -> PAdicInt {
        PAdicInt::zero(self.embedding.p(), self.prec)
    }
    fn from_int(&self, n: &BigInt) -> PAdicInt {
        PAdicInt::new(self.embedding.p(), self.prec, n.clone())
    }
    fn from_cyc(&self, x: &CycNumber) -> Result<PAdicInt> {
        x.embed_padic(&self.embedding, self.prec)
    }
    fn add(&self, a: &PAdicInt, b: &PAdicInt) -> PAdicInt {
        a + b
    }
    fn sub(&self, a: &PAdicInt, b: &PAdicInt) -> PAdicInt {
        a - b
    }
    fn mul(&self, a: &PAdicInt, b: &PAdicInt) -> PAdicInt {
        a * b
    }
    fn is_zero(&self, a: &PAdicInt) -> bool {
        a.is_zero()
    }
    fn render(&self, a: &PAdicInt) -> String {
        a.residue().to_string()
    }
    fn parse(&self, s: &str) -> Result<PAdicInt> {
        PAdicInt::from_rational(self.embedding.p(), self.prec, &parse_rational(s)?)
    }
    fn to_padic(&self, a: &PAdicInt, emb: &Embedding, prec: u32) -> Result<PAdicInt> {
        if emb.p() != self.embedding.p() {
            return Err(Error::Incompatible(format!(
                "coefficients live in Z_{}, not Z_{}",
                self.embedding.p(),
                emb.p()
            )));
        }
        a.with_precision(prec.min(a.precision()))
    }
}

/// A weight in `½Z`, stored doubled.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Weight(u32);

impl Weight {
    pub fn integral(k: u32) -> Self {
        Weight(2 * k)
    }

    pub fn half_integral(twice: u32) -> Self {
        Weight(twice)
    }

    pub fn twice(self) -> u32 {
        self.0
    }

    pub fn as_integer(self) -> Result<u32> {
        if self.0 % 2 == 0 {
            Ok(self.0 / 2)
        } else {
            Err(Error::NonIntegralWeight(self.to_string()))
        }
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0 % 2 == 0 {
            write!(f, "{}", self.0 / 2)
        } else {
            write!(f, "{}/2", self.0)
        }
    }
}

impl Serialize for Weight {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        if self.0 % 2 == 0 {
            s.serialize_u32(self.0 / 2)
        } else {
            s.serialize_str(&self.to_string())
        }
    }
}

impl<'de> Deserialize<'de> for Weight {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Int(u32),
            Str(String),
        }
        match Raw::deserialize(d)? {
            Raw::Int(k) => Ok(Weight::integral(k)),
            Raw::Str(s) => {
                let r = parse_rational(&s).map_err(serde::de::Error::custom)?;
                let twice = r * BigInt::from(2);
                let ok = twice.is_integer() && twice.numer() > &BigInt::zero();
                match (ok, u32::try_from(twice.to_integer())) {
                    (true, Ok(t)) => Ok(Weight(t)),
                    _ => Err(serde::de::Error::custom(format!("bad weight {s:?}"))),
                }
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TauMode {
    /// `h - (U_q h)(qz)`, for `q | level`
    Ordinary,
    /// `h - (T_q h)(qz) + ε(q) q^{k-1} h(q²z)`, for `q ∤ level`
    Unramified,
}

#[derive(Clone, Debug, PartialEq)]
pub struct QExpansion<R: CoefficientRing> {
    pub label: String,
    ring: R,
    weight: Weight,
    level: u64,
    character: DirichletCharacter,
    coeffs: Vec<R::Elem>,
}

/// Output of [`QExpansion::p_stabilize`].
#[derive(Clone, Debug)]
pub struct Stabilization {
    pub form: QExpansion<PAdic>,
    pub alpha: PAdicInt,
    pub beta: PAdicInt,
}

impl<R: CoefficientRing> QExpansion<R> {
    /// `coeffs` are `a(0), …, a(D)`; the character modulus must divide the level.
    pub fn new(
        ring: R,
        label: impl Into<String>,
        weight: Weight,
        level: u64,
        character: DirichletCharacter,
        coeffs: Vec<R::Elem>,
    ) -> Result<Self> {
        if level == 0 || level % character.modulus() != 0 {
            return Err(Error::Incompatible(format!(
                "character modulus {} does not divide level {level}",
                character.modulus()
            )));
        }
        if coeffs.is_empty() {
            return Err(Error::Incompatible("an expansion needs a(0)".into()));
        }
        Ok(QExpansion { label: label.into(), ring, weight, level, character, coeffs })
    }

    pub fn zero(ring: R, weight: Weight, level: u64, character: DirichletCharacter, trunc: usize) -> Result<Self> {
        let coeffs = vec![ring.zero(); trunc + 1];
        Self::new(ring, "0", weight, level, character, coeffs)
    }

    /// The normalised expansion `Σ a(n) qⁿ` with `a(1) = 1` determined
    /// multiplicatively by the Hecke eigenvalues `a(q)`, `q <= trunc` prime.
    pub fn eigenform(
        ring: R,
        label: impl Into<String>,
        k: u32,
        level: u64,
        character: DirichletCharacter,
        eigenvalues: &BTreeMap<u64, R::Elem>,
        trunc: usize,
    ) -> Result<Self> {
        let mut a = vec![ring.zero(); trunc + 1];
        if trunc >= 1 {
            a[1] = ring.from_int(&BigInt::one());
        }
        for q in arith::primes_up_to(trunc as u64) {
            let aq = eigenvalues
                .get(&q)
                .ok_or_else(|| Error::Incompatible(format!("missing eigenvalue a({q})")))?;
            let c = ring.mul(
                &ring.from_cyc(&character.eval(q as i64))?,
                &ring.from_int(&BigInt::from(q).pow(k - 1)),
            );
            // a(q^{r+1}) = a(q) a(q^r) - ε(q) q^{k-1} a(q^{r-1})
            let mut powers = vec![ring.from_int(&BigInt::one()), aq.clone()];
            let mut qr = q as usize;
            while qr * q as usize <= trunc {
                let r = powers.len() - 1;
                let next = ring.sub(&ring.mul(aq, &powers[r]), &ring.mul(&c, &powers[r - 1]));
                powers.push(next);
                qr *= q as usize;
            }
            // multiply into every n = q^r m with q ∤ m, m built already
            for m in 1..=trunc {
                if m % q as usize == 0 || a[m] == ring.zero() && m != 1 {
                    continue;
                }
                let mut n = m * q as usize;
                let mut r = 1;
                while n <= trunc {
                    a[n] = ring.mul(&a[m], &powers[r]);
                    n *= q as usize;
                    r += 1;
                }
            }
        }
        Self::new(ring, label, Weight::integral(k), level, character, a)
    }

    pub fn ring(&self) -> &R {
        &self.ring
    }

    pub fn weight(&self) -> Weight {
        self.weight
    }

    pub fn level(&self) -> u64 {
        self.level
    }

    pub fn character(&self) -> &DirichletCharacter {
        &self.character
    }

    pub fn coeffs(&self) -> &[R::Elem] {
        &self.coeffs
    }

    pub fn coeff(&self, n: usize) -> Option<&R::Elem> {
        self.coeffs.get(n)
    }

    pub fn trunc(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| self.ring.is_zero(c))
    }

    /// Restrict to a smaller truncation.
    pub fn truncate(&self, d: usize) -> Self {
        let mut out = self.clone();
        out.coeffs.truncate(d.min(self.trunc()) + 1);
        out
    }

    fn with(&self, level: u64, coeffs: Vec<R::Elem>) -> Self {
        QExpansion {
            label: self.label.clone(),
            ring: self.ring.clone(),
            weight: self.weight,
            level,
            character: self.character.clone(),
            coeffs,
        }
    }

    /// `ε(q) q^{k-1}` in the coefficient ring.
    fn diamond_scalar(&self, q: u64) -> Result<R::Elem> {
        let k = self.weight.as_integer()?;
        Ok(self.ring.mul(
            &self.ring.from_cyc(&self.character.eval(q as i64))?,
            &self.ring.from_int(&BigInt::from(q).pow(k.saturating_sub(1))),
        ))
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.weight != other.weight || self.character != other.character {
            return Err(Error::Incompatible("weight or character differ".into()));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let d = self.trunc().min(other.trunc());
        let coeffs = (0..=d)
            .map(|n| self.ring.add(&self.coeffs[n], &other.coeffs[n]))
            .collect();
        Ok(self.with(arith::lcm(self.level, other.level), coeffs))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let d = self.trunc().min(other.trunc());
        let coeffs = (0..=d)
            .map(|n| self.ring.sub(&self.coeffs[n], &other.coeffs[n]))
            .collect();
        Ok(self.with(arith::lcm(self.level, other.level), coeffs))
    }

    pub fn scale(&self, c: &R::Elem) -> Self {
        let coeffs = self.coeffs.iter().map(|a| self.ring.mul(c, a)).collect();
        self.with(self.level, coeffs)
    }

    /// `b(n) = a(qn) + ε(q) q^{k-1} a(n/q)`, truncation `⌊D/q⌋`.
    pub fn hecke_t(&self, q: u64) -> Result<Self> {
        if !arith::is_prime(q) {
            return Err(Error::BadPrime { q, reason: "not prime".into() });
        }
        if self.level % q == 0 {
            return Err(Error::BadPrime { q, reason: format!("divides the level {}", self.level) });
        }
        let c = self.diamond_scalar(q)?;
        let q = q as usize;
        let d = self.trunc() / q;
        let coeffs = (0..=d)
            .map(|n| {
                let a = &self.coeffs[q * n];
                if n % q == 0 {
                    self.ring.add(a, &self.ring.mul(&c, &self.coeffs[n / q]))
                } else {
                    a.clone()
                }
            })
            .collect();
        Ok(self.with(self.level, coeffs))
    }

    /// `b(n) = a(qn)`, truncation `⌊D/q⌋`.
    pub fn hecke_u(&self, q: u64) -> Self {
        let q = q as usize;
        let d = self.trunc() / q;
        let coeffs = (0..=d).map(|n| self.coeffs[q * n].clone()).collect();
        self.with(arith::lcm(self.level, q as u64), coeffs)
    }

    /// `b(n) = a(n/q)`, valid through `q(D+1) - 1`.
    fn hecke_v_extended(&self, q: u64) -> Self {
        let q = q as usize;
        let d = q * (self.trunc() + 1) - 1;
        let coeffs = (0..=d)
            .map(|n| if n % q == 0 { self.coeffs[n / q].clone() } else { self.ring.zero() })
            .collect();
        self.with(self.level * q as u64, coeffs)
    }

    /// `b(n) = a(n/q)` (zero when `q ∤ n`); the truncation stays `D`.
    pub fn hecke_v(&self, q: u64) -> Self {
        let mut out = self.hecke_v_extended(q);
        out.coeffs.truncate(self.trunc() + 1);
        out
    }

    /// Zero out every `a(n)` with `n` divisible by a prime of `primes`.
    pub fn deplete(&self, primes: &[u64]) -> Self {
        let mut level = self.level;
        for &q in primes {
            level = arith::lcm(level, q) * q;
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(n, a)| {
                if primes.iter().any(|&q| n as u64 % q == 0) {
                    self.ring.zero()
                } else {
                    a.clone()
                }
            })
            .collect();
        self.with(level, coeffs)
    }

    /// Level raising at `q` with `U_q ∘ τ = 0`; keeps the truncation.
    pub fn tau(&self, q: u64, mode: TauMode) -> Result<Self> {
        let d = self.trunc();
        match mode {
            TauMode::Ordinary => {
                if self.level % q != 0 {
                    return Err(Error::BadMode(format!(
                        "ordinary mode needs {q} | level {}",
                        self.level
                    )));
                }
                let vu = self.hecke_u(q).hecke_v_extended(q).truncate(d);
                let mut out = self.sub(&vu)?;
                out.level = self.level * q;
                Ok(out)
            }
            TauMode::Unramified => {
                if self.level % q == 0 {
                    return Err(Error::BadMode(format!(
                        "unramified mode needs {q} ∤ level {}",
                        self.level
                    )));
                }
                let vt = self.hecke_t(q)?.hecke_v_extended(q).truncate(d);
                let vv = self.hecke_v_extended(q).hecke_v_extended(q).truncate(d);
                let c = self.diamond_scalar(q)?;
                let coeffs = (0..=d)
                    .map(|n| {
                        let x = self.ring.sub(&self.coeffs[n], &vt.coeffs[n]);
                        self.ring.add(&x, &self.ring.mul(&c, &vv.coeffs[n]))
                    })
                    .collect();
                Ok(self.with(self.level * q * q, coeffs))
            }
        }
    }

    /// Coefficients pushed into `Z/p^N`.
    pub fn to_padic(&self, emb: &Embedding, prec: u32) -> Result<QExpansion<PAdic>> {
        let coeffs = self
            .coeffs
            .iter()
            .map(|a| self.ring.to_padic(a, emb, prec))
            .collect::<Result<Vec<_>>>()?;
        Ok(QExpansion {
            label: self.label.clone(),
            ring: PAdic::new(emb.clone(), prec),
            weight: self.weight,
            level: self.level,
            character: self.character.clone(),
            coeffs,
        })
    }

    /// `g = g₀ - β V_p g₀` with `α` the unit root of `X² - a_p X + ε(p) p^{k-1}`
    /// and `β = ε(p) p^{k-1} / α`. Precision is that of `a_p`.
    pub fn p_stabilize(&self, a_p: &PAdicInt, emb: &Embedding) -> Result<Stabilization> {
        let p = emb.p();
        if self.level % p == 0 {
            return Err(Error::BadPrime { q: p, reason: format!("divides the level {}", self.level) });
        }
        let prec = a_p.precision();
        let k = self.weight.as_integer()?;
        let eps = self.character.eval_padic(p as i64, emb, prec)?;
        let c = eps.scale(BigInt::from(p).pow(k - 1));
        let alpha = hensel_unit_root(a_p, &c)?;
        let beta = &c * &alpha.inv()?;
        let g0 = self.to_padic(emb, prec)?;
        let d = self.trunc();
        let v = g0.hecke_v_extended(p).truncate(d);
        let coeffs = (0..=d).map(|n| &g0.coeffs[n] - &(&beta * &v.coeffs[n])).collect();
        let form = g0.with(self.level * p, coeffs);
        Ok(Stabilization { form, alpha, beta })
    }

    pub fn to_json(&self) -> Value {
        json!({
            "label": self.label,
            "weight": self.weight,
            "level": self.level,
            "character": self.character,
            "coeffs": self.coeffs.iter().map(|c| self.ring.render(c)).collect::<Vec<_>>(),
        })
    }

    pub fn from_json(ring: R, v: &Value) -> Result<Self> {
        #[derive(Deserialize)]
        #[serde(deny_unknown_fields)]
        struct Raw {
            label: String,
            weight: Weight,
            level: u64,
            character: DirichletCharacter,
            coeffs: Vec<String>,
        }
        let raw = Raw::deserialize(v)?;
        let coeffs = raw
            .coeffs
            .iter()
            .map(|s| ring.parse(s))
            .collect::<Result<Vec<_>>>()?;
        Self::new(ring, raw.label, raw.weight, raw.level, raw.character, coeffs)
    }
}

/// `θ_χ = ½ Σ_{j ∈ Z} χ(j) q^{j²}` for an even character: `a(j²) = χ(j)` for
/// `j >= 1` and `a(0) = χ(0)/2`. Weight ½, level `4c²`.
pub fn theta(chi: &DirichletCharacter, trunc: usize) -> Result<QExpansion<Cyclotomic>> {
    if !chi.is_even() {
        return Err(Error::OddCharacter);
    }
    let ring = Cyclotomic { order: chi.order() };
    let mut coeffs = vec![ring.zero(); trunc + 1];
    coeffs[0] = chi.eval(0).scale(&BigRational::new(1.into(), 2.into()));
    let mut j = 1usize;
    while j * j <= trunc {
        coeffs[j * j] = chi.eval(j as i64);
        j += 1;
    }
    let c = chi.conductor();
    let label = format!("theta[{}]", chi.modulus());
    QExpansion::new(ring, label, Weight::half_integral(1), arith::lcm(4 * c * c, chi.modulus()), chi.clone(), coeffs)
}
