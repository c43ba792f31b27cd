//! Symmetric-square Euler factors, their lifts to `Λ`, interpolation
//! factors and a floating-point Euler product.
//!
//! For Satake parameters `α, β` at `q` with `αβ = b = ε(q) q^{k-1}` the
//! untwisted factor is
//!
//! ```text
//! Q(Y) = (1 - αβY)(1 - α²Y)(1 - β²Y) = 1 - (a²-b)Y + b(a²-b)Y² - b³Y³
//! ```
//!
//! and the factor twisted by a character value `c` is `P(X) = Q(cX)`.
//! The lift to `Λ` substitutes `Y = ψ_t(q) q⁻¹ (1+T)^{e(q)}`, which makes
//! specialization at `u ↦ u^{1-n}` agree with `Q(ψ_{t+n-1}(q) q^{-n})`.

use std::fmt;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::arith;
use crate::characters::DirichletCharacter;
use crate::cyclotomic::{CycNumber, Embedding};
use crate::error::{Error, Result};
use crate::iwasawa::{frobenius_exponent, one_plus_t_pow, IwasawaElement};
use crate::padic::{teichmuller, PAdicInt, Valuation};
use crate::qexp::{CoefficientRing, Cyclotomic};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Ramification {
    Unramified,
    Ordinary,
    Depleted,
}

impl fmt::Display for Ramification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Ramification::Unramified => "unramified",
            Ramification::Ordinary => "ordinary",
            Ramification::Depleted => "depleted",
        })
    }
}

/// Hecke data at one prime. For ordinary primes `a_q` is the nonzero Satake
/// parameter itself.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SatakeData {
    pub q: u64,
    pub ramification: Ramification,
    pub a_q: CycNumber,
    pub eps_q: CycNumber,
    pub k: u32,
}

impl SatakeData {
    pub fn new(q: u64, ramification: Ramification, a_q: CycNumber, eps_q: CycNumber, k: u32) -> Result<Self> {
        let s = SatakeData { q, ramification, a_q, eps_q, k };
        s.validate()?;
        Ok(s)
    }

    pub fn unramified(q: u64, a_q: i64, eps_q: CycNumber, k: u32) -> Result<Self> {
        Self::new(q, Ramification::Unramified, CycNumber::from_int(1, a_q), eps_q, k)
    }

    pub fn depleted(q: u64, k: u32) -> Self {
        SatakeData {
            q,
            ramification: Ramification::Depleted,
            a_q: CycNumber::zero(1),
            eps_q: CycNumber::zero(1),
            k,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |reason: &str| Err(Error::InvalidSatake { q: self.q, reason: reason.into() });
        if !arith::is_prime(self.q) {
            return bad("q is not prime");
        }
        if self.k == 0 {
            return bad("weight must be positive");
        }
        match self.ramification {
            Ramification::Depleted if !self.a_q.is_zero() => bad("depleted primes have a_q = 0"),
            Ramification::Ordinary if self.a_q.is_zero() => bad("ordinary primes need a nonzero parameter"),
            Ramification::Unramified if self.eps_q.is_zero() => {
                bad("unramified primes need αβ = ε(q)q^{k-1} ≠ 0")
            }
            _ => Ok(()),
        }
    }

    /// `b = ε(q) q^{k-1} = αβ`.
    pub fn det(&self) -> CycNumber {
        self.eps_q.clone() * CycNumber::from_int(1, BigInt::from(self.q).pow(self.k - 1))
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SatakeRecord {
    q: u64,
    #[serde(rename = "type")]
    ramification: Ramification,
    aq: String,
    eps: CycNumber,
    k: u32,
}

impl Serialize for SatakeData {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let ring = Cyclotomic { order: 1 };
        SatakeRecord {
            q: self.q,
            ramification: self.ramification,
            aq: ring.render(&self.a_q),
            eps: self.eps_q.clone(),
            k: self.k,
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for SatakeData {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let r = SatakeRecord::deserialize(d)?;
        let a_q = Cyclotomic { order: 1 }.parse(&r.aq).map_err(D::Error::custom)?;
        SatakeData::new(r.q, r.ramification, a_q, r.eps, r.k).map_err(D::Error::custom)
    }
}

/// `P(X) = Q(cX)`: the untwisted polynomial `Q` plus the twist value `c`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EulerFactor {
    pub q: u64,
    pub ramification: Ramification,
    /// coefficients of `Q(Y)`, constant term first
    pub base: Vec<CycNumber>,
    pub twist: CycNumber,
}

impl EulerFactor {
    /// A user-supplied `Q(Y)` for a bad prime, all of whose local data are
    /// outside the naive Satake description.
    pub fn from_override(q: u64, ramification: Ramification, base: Vec<CycNumber>, twist: CycNumber) -> Result<Self> {
        if base.is_empty() || base[0] != CycNumber::one(1) {
            return Err(Error::InvalidSatake { q, reason: "constant term must be 1".into() });
        }
        if base.len() > 4 {
            return Err(Error::InvalidSatake { q, reason: "degree exceeds 3".into() });
        }
        let mut base = base;
        while base.len() > 1 && base.last().unwrap().is_zero() {
            base.pop();
        }
        Ok(EulerFactor { q, ramification, base, twist })
    }

    pub fn degree(&self) -> usize {
        self.base.len() - 1
    }

    /// Coefficients of `P(X) = Q(cX)`.
    pub fn coefficients(&self) -> Vec<CycNumber> {
        let mut cj = CycNumber::one(1);
        self.base
            .iter()
            .map(|b| {
                let out = b * &cj;
                cj = &cj * &self.twist;
                out
            })
            .collect()
    }

    pub fn eval_complex(&self, x: Complex64) -> Complex64 {
        let cs: Vec<Complex64> = self.coefficients().iter().map(|c| c.to_complex()).collect();
        cs.iter().rev().fold(Complex64::zero(), |acc, c| acc * x + c)
    }

    /// `Q(y)` in `Z/p^N`.
    pub fn eval_base_padic(&self, y: &PAdicInt, emb: &Embedding) -> Result<PAdicInt> {
        let prec = y.precision();
        let mut acc = PAdicInt::zero(y.p(), prec);
        for b in self.base.iter().rev() {
            acc = &(&acc * y) + &b.embed_padic(emb, prec)?;
        }
        Ok(acc)
    }
}

impl fmt::Display for EulerFactor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ring = Cyclotomic { order: 1 };
        let terms: Vec<String> = self
            .coefficients()
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| {
                let c = ring.render(c);
                match i {
                    0 => c,
                    1 => format!("({c})X"),
                    _ => format!("({c})X^{i}"),
                }
            })
            .collect();
        write!(f, "{}", terms.join(" + "))
    }
}

pub fn symsq_factor(s: &SatakeData, chi_q: &CycNumber) -> Result<EulerFactor> {
    s.validate()?;
    let one = CycNumber::one(1);
    let base = match s.ramification {
        Ramification::Depleted => vec![one],
        Ramification::Ordinary => vec![one, -(&s.a_q * &s.a_q)],
        Ramification::Unramified => {
            let b = s.det();
            let e1 = &(&s.a_q * &s.a_q) - &b;
            let e2 = &b * &e1;
            let e3 = b.pow(3);
            vec![one, -e1, e2, -e3]
        }
    };
    Ok(EulerFactor { q: s.q, ramification: s.ramification, base, twist: chi_q.clone() })
}

/// Outcome of [`symsq_dirichlet_coeff_check`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoefficientCheck {
    /// `a(q²)` from the Hecke recursion
    pub expected: CycNumber,
    /// `e₁ / χ(q)` read off the factor
    pub found: CycNumber,
    pub holds: bool,
}

/// Compares the linear coefficient of the factor against `a(q²) = a(q)² - ε(q)q^{k-1}`.
pub fn symsq_dirichlet_coeff_check(s: &SatakeData) -> Result<CoefficientCheck> {
    if s.ramification != Ramification::Unramified {
        return Err(Error::InvalidSatake { q: s.q, reason: "check applies to unramified primes".into() });
    }
    let p = symsq_factor(s, &CycNumber::one(1))?;
    let found = -p.base[1].clone();
    // a(1) = 1, a(q) = a_q, a(q²) = a_q a(q) - b a(1)
    let expected = &(&s.a_q * &s.a_q) - &s.det();
    let holds = found == expected;
    Ok(CoefficientCheck { expected, found, holds })
}

/// `ψ_t(q) = ψ(q) ω(q)^t` in `Z/p^N`.
pub fn twisted_character_value(
    psi: &DirichletCharacter,
    t: i64,
    q: u64,
    emb: &Embedding,
    prec: u32,
) -> Result<PAdicInt> {
    let p = emb.p();
    let omega = teichmuller(q, p, prec)?;
    let psi_q = psi.eval_padic(q as i64, emb, prec)?;
    Ok(&psi_q * &omega.powi(t)?)
}

fn check_q(q: u64, p: u64) -> Result<()> {
    if q == p {
        return Err(Error::BadPrime { q, reason: "the lift needs q ≠ p".into() });
    }
    Ok(())
}

/// The group-like element `ψ_t(q) q⁻¹ (1+T)^{e(q)}` raised to the `j`-th power.
fn frobenius_power(
    j: u64,
    base: &PAdicInt,
    e: &PAdicInt,
    trunc: usize,
    prec: u32,
) -> Result<IwasawaElement> {
    let scalar = base.pow(j);
    let series = one_plus_t_pow(&e.scale(j), trunc, prec)?;
    Ok(series.scale(&scalar))
}

/// The Frobenius element `ψ_t(q) q⁻¹ (1+T)^{e(q)}` in `Λ`.
pub fn frobenius_substitution(
    q: u64,
    psi: &DirichletCharacter,
    t: i64,
    emb: &Embedding,
    prec: u32,
    trunc: usize,
) -> Result<IwasawaElement> {
    let p = emb.p();
    check_q(q, p)?;
    let base = &twisted_character_value(psi, t, q, emb, prec)? * &PAdicInt::new(p, prec, q).inv()?;
    let work = prec + arith::val_factorial(trunc as u64, p);
    let e = frobenius_exponent(q, p, work)?;
    frobenius_power(1, &base, &e, trunc, prec)
}

/// `Q(ψ_t(q) q⁻¹ (1+T)^{e(q)})` modulo `(p^N, T^{D+1})`.
pub fn euler_to_lambda(
    factor: &EulerFactor,
    psi: &DirichletCharacter,
    t: i64,
    emb: &Embedding,
    prec: u32,
    trunc: usize,
) -> Result<IwasawaElement> {
    let p = emb.p();
    let q = factor.q;
    if factor.degree() == 0 {
        let c = factor.base[0].embed_padic(emb, prec)?;
        return Ok(IwasawaElement::constant(&c, trunc));
    }
    check_q(q, p)?;
    let base = &twisted_character_value(psi, t, q, emb, prec)? * &PAdicInt::new(p, prec, q).inv()?;
    // (1+T)^{j e} for j <= 3 needs j e to N + v_p(D!) digits
    let work = prec + arith::val_factorial(trunc as u64, p);
    let e = frobenius_exponent(q, p, work)?;
    let mut acc = IwasawaElement::constant(&factor.base[0].embed_padic(emb, prec)?, trunc);
    for (j, b) in factor.base.iter().enumerate().skip(1) {
        if b.is_zero() {
            continue;
        }
        let term = frobenius_power(j as u64, &base, &e, trunc, prec)?;
        acc = &acc + &term.scale(&b.embed_padic(emb, prec)?);
    }
    Ok(acc)
}

/// The right-hand side of the local-factor identity:
/// `Q(ψ_{t+n-1}(q) q^{-n})` in `Z/p^N`.
pub fn local_factor_value(
    factor: &EulerFactor,
    psi: &DirichletCharacter,
    t: i64,
    n: i64,
    emb: &Embedding,
    prec: u32,
) -> Result<PAdicInt> {
    let p = emb.p();
    if factor.degree() == 0 {
        return factor.base[0].embed_padic(emb, prec);
    }
    check_q(factor.q, p)?;
    let chi = twisted_character_value(psi, t + n - 1, factor.q, emb, prec)?;
    let y = &chi * &PAdicInt::new(p, prec, factor.q).powi(-n)?;
    factor.eval_base_padic(&y, emb)
}

/// `σ^(q)`: the λ-invariant of the lifted factor, with its μ-invariant.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LocalInvariant {
    pub q: u64,
    pub ramification: Ramification,
    pub sigma: usize,
    pub mu: u32,
}

impl LocalInvariant {
    pub fn mu_warning(&self) -> bool {
        self.mu > 0
    }
}

pub fn sigma_q(
    factor: &EulerFactor,
    psi: &DirichletCharacter,
    t: i64,
    emb: &Embedding,
    prec: u32,
    trunc: usize,
) -> Result<LocalInvariant> {
    let lift = euler_to_lambda(factor, psi, t, emb, prec, trunc)?;
    let (mu, sigma) = lift.mu_lambda()?;
    if mu > 0 {
        log::warn!("lifted factor at q = {} has μ = {mu} > 0 at precision {prec}", factor.q);
    }
    Ok(LocalInvariant { q: factor.q, ramification: factor.ramification, sigma, mu })
}

/// The interpolation factor at p.
///
/// Ramified (`r >= 1`): `(p^{n-1} ψ(p)⁻¹ α⁻²)^r`. Unramified:
/// `(1 - p^{n-1}ψ(p)⁻¹α⁻²)(1 - ψ(p)p^{k-1-n})(1 - ψ(p)β²p^{-n})`.
#[allow(clippy::too_many_arguments)]
pub fn ep_factor(
    n: i64,
    psi_p: &PAdicInt,
    alpha: &PAdicInt,
    beta: &PAdicInt,
    r: u32,
    ramified: bool,
    k: u32,
) -> Result<PAdicInt> {
    let p = alpha.p();
    let prec = alpha.precision().min(psi_p.precision()).min(beta.precision());
    let one = PAdicInt::one(p, prec);
    let p_pow = |e: i64| -> Result<PAdicInt> {
        if e < 0 {
            return Err(Error::NotIntegral(format!("p^{e} survives in the interpolation factor")));
        }
        Ok(PAdicInt::new(p, prec, p).pow(e as u64))
    };
    let psi_inv = psi_p.inv()?;
    let alpha_inv2 = alpha.inv()?.pow(2);
    let first = &(&p_pow(n - 1)? * &psi_inv) * &alpha_inv2;
    if ramified {
        if r == 0 {
            return Err(Error::Incompatible("ramified interpolation factor needs r >= 1".into()));
        }
        return Ok(first.pow(r as u64));
    }
    let second = psi_p * &p_pow(k as i64 - 1 - n)?;
    let b2 = beta.pow(2);
    let third = match b2.val() {
        Valuation::Finite(v) if (v as i64) < n => {
            return Err(Error::NotIntegral(format!(
                "β² has valuation {v} < n = {n}, the interpolation factor is not integral"
            )))
        }
        _ => psi_p * &b2.div_p_pow(n as u32)?,
    };
    let prec = third.precision();
    let out = &(&(&one - &first) * &(&one - &second)) * &(&one - &third);
    out.with_precision(prec.min(out.precision()))
}

/// `L · Π P_q`.
pub fn assemble_imprimitive(l: &IwasawaElement, factors: &[IwasawaElement]) -> Result<IwasawaElement> {
    let mut acc = l.clone();
    for f in factors {
        if f.p() != l.p() {
            return Err(Error::Incompatible(format!("factor over Z_{} for L over Z_{}", f.p(), l.p())));
        }
        acc = &acc * f;
    }
    Ok(acc)
}

/// `Π_{q <= Qmax} P_q(χ(q), q^{-s})^{-1}` in double precision.
pub fn df_complex(satake: &[SatakeData], chi: &DirichletCharacter, s: f64, qmax: u64) -> Result<Complex64> {
    let mut data: Vec<&SatakeData> = satake.iter().filter(|d| d.q <= qmax).collect();
    data.sort_by_key(|d| d.q);
    if let Some(d) = data.iter().find(|d| s <= d.k as f64) {
        return Err(Error::Incompatible(format!("s = {s} is not beyond the weight k = {}", d.k)));
    }
    let mut prod = Complex64::new(1.0, 0.0);
    for d in data {
        let x = Complex64::new((d.q as f64).powf(-s), 0.0);
        let factor = symsq_factor(d, &chi.eval(d.q as i64))?.eval_complex(x);
        if (Complex64::new(1.0, 0.0) - factor).norm() >= 1.0 {
            return Err(Error::Divergence(d.q));
        }
        prod /= factor;
    }
    Ok(prod)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Convergence {
    pub at_qmax: (f64, f64),
    pub at_2qmax: (f64, f64),
    pub relative_change: f64,
}

/// [`df_complex`] at `Qmax` and `2·Qmax` with the relative change between them.
pub fn df_convergence(satake: &[SatakeData], chi: &DirichletCharacter, s: f64, qmax: u64) -> Result<Convergence> {
    let a = df_complex(satake, chi, s, qmax)?;
    let b = df_complex(satake, chi, s, 2 * qmax)?;
    Ok(Convergence {
        at_qmax: (a.re, a.im),
        at_2qmax: (b.re, b.im),
        relative_change: (a - b).norm() / b.norm(),
    })
}
