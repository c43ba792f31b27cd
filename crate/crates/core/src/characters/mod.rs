//! Dirichlet characters stored by their values on canonical generators of
//! `(Z/mZ)^×`.
//!
//! The unit group is split by CRT into prime-power pieces: each odd `p^e`
//! contributes one cyclic factor generated by its smallest primitive root,
//! `4` contributes `⟨-1⟩` and `2^e` (`e >= 3`) contributes `⟨-1⟩ × ⟨5⟩`.
//! Every generator is lifted to be `1` modulo the other pieces. A character
//! assigns to generator `g_i` of order `n_i` the value `ζ_{n_i}^{e_i}`; the
//! exponents `e_i` are its canonical data.

mod bernoulli;
mod gauss;

pub use bernoulli::{bernoulli_number, bernoulli_polynomial, gen_bernoulli, l_value_negative};
pub use gauss::gauss_sum;

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, OnceLock, RwLock};

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::arith;
use crate::cyclotomic::{CycNumber, Embedding};
use crate::error::{Error, Result};
use crate::padic::PAdicInt;

const NOT_A_UNIT: u32 = u32::MAX;

#[derive(Debug)]
struct Component {
    local_modulus: u64,
    generator: u64,
    order: u64,
    /// discrete log of each residue modulo `local_modulus`
    table: Vec<u32>,
}

#[derive(Debug)]
struct UnitGroup {
    modulus: u64,
    components: Vec<Component>,
}

impl UnitGroup {
    fn build(m: u64) -> Self {
        let mut components = Vec::new();
        let parts = arith::factor(m);
        let lift = |local: u64, local_mod: u64| -> u64 {
            let mut residues = vec![(local, local_mod)];
            for &(q, e) in &parts {
                let qe = q.pow(e);
                if qe != local_mod {
                    residues.push((1, qe));
                }
            }
            arith::crt(&residues) % m.max(1)
        };
        for &(q, e) in &parts {
            let qe = q.pow(e);
            if q == 2 {
                if e == 1 {
                    continue;
                }
                let mut sign = vec![NOT_A_UNIT; qe as usize];
                let mut five = vec![NOT_A_UNIT; qe as usize];
                let five_order = if e >= 3 { qe / 4 } else { 1 };
                let mut x = 1u64;
                for t in 0..five_order {
                    sign[x as usize] = 0;
                    five[x as usize] = t as u32;
                    let neg = qe - x;
                    sign[neg as usize] = 1;
                    five[neg as usize] = t as u32;
                    x = x * 5 % qe;
                }
                components.push(Component {
                    local_modulus: qe,
                    generator: lift(qe - 1, qe),
                    order: 2,
                    table: sign,
                });
                if e >= 3 {
                    components.push(Component {
                        local_modulus: qe,
                        generator: lift(5, qe),
                        order: five_order,
                        table: five,
                    });
                }
            } else {
                let g = arith::primitive_root(qe).expect("odd prime powers are cyclic");
                let order = qe / q * (q - 1);
                let mut table = vec![NOT_A_UNIT; qe as usize];
                let mut x = 1u64;
                for k in 0..order {
                    table[x as usize] = k as u32;
                    x = arith::mul_mod(x, g, qe);
                }
                components.push(Component {
                    local_modulus: qe,
                    generator: lift(g, qe),
                    order,
                    table,
                });
            }
        }
        UnitGroup { modulus: m, components }
    }

    fn logs(&self, a: i64) -> Option<Vec<u64>> {
        let m = self.modulus as i64;
        let a = a.rem_euclid(m.max(1)) as u64;
        if arith::gcd(a, self.modulus) != 1 && self.modulus > 1 {
            return None;
        }
        Some(
            self.components
                .iter()
                .map(|c| c.table[(a % c.local_modulus) as usize] as u64)
                .collect(),
        )
    }
}

fn unit_group(m: u64) -> Arc<UnitGroup> {
    static CACHE: OnceLock<RwLock<HashMap<u64, Arc<UnitGroup>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| RwLock::new(HashMap::new()));
    if let Some(g) = cache.read().unwrap().get(&m) {
        return g.clone();
    }
    let g = Arc::new(UnitGroup::build(m));
    cache.write().unwrap().insert(m, g.clone());
    g
}

/// Canonical generators of `(Z/mZ)^×` with their orders.
pub fn unit_generators(m: u64) -> Vec<(u64, u64)> {
    unit_group(m)
        .components
        .iter()
        .map(|c| (c.generator, c.order))
        .collect()
}

#[derive(Clone)]
pub struct DirichletCharacter {
    modulus: u64,
    exps: Vec<u64>,
    order: u64,
    group: Arc<UnitGroup>,
}

impl DirichletCharacter {
    /// From exponents `e_i`, one per canonical generator.
    pub fn from_exponents(modulus: u64, exps: Vec<u64>) -> Result<Self> {
        if modulus == 0 {
            return Err(Error::InvalidCharacter("modulus must be positive".into()));
        }
        let group = unit_group(modulus);
        if exps.len() != group.components.len() {
            return Err(Error::InvalidCharacter(format!(
                "modulus {modulus} has {} generators, got {} exponents",
                group.components.len(),
                exps.len()
            )));
        }
        let mut order = 1;
        let mut reduced = Vec::with_capacity(exps.len());
        for (c, e) in group.components.iter().zip(exps) {
            let e = e % c.order;
            order = arith::lcm(order, c.order / arith::gcd(c.order, e));
            reduced.push(e);
        }
        Ok(DirichletCharacter { modulus, exps: reduced, order, group })
    }

    /// From `(generator, exponent)` pairs; generators must be the canonical ones.
    pub fn from_images(modulus: u64, images: &[(u64, u64)]) -> Result<Self> {
        let gens = unit_generators(modulus);
        if gens.len() != images.len() || gens.iter().zip(images).any(|(g, i)| g.0 != i.0) {
            return Err(Error::InvalidCharacter(format!(
                "generators for modulus {modulus} must be {:?}",
                gens.iter().map(|g| g.0).collect::<Vec<_>>()
            )));
        }
        for (&(_, n), &(g, e)) in gens.iter().zip(images) {
            if e >= n {
                return Err(Error::InvalidCharacter(format!(
                    "exponent {e} for generator {g} exceeds its order {n}"
                )));
            }
        }
        Self::from_exponents(modulus, images.iter().map(|i| i.1).collect())
    }

    pub fn trivial(modulus: u64) -> Self {
        let n = unit_group(modulus).components.len();
        Self::from_exponents(modulus, vec![0; n]).unwrap()
    }

    /// Builds the character whose value at each canonical generator `g` is
    /// `ζ_n^{f(g)}`.
    pub fn from_value_fn(modulus: u64, n: u64, f: impl Fn(u64) -> u64) -> Result<Self> {
        let group = unit_group(modulus);
        let mut exps = Vec::with_capacity(group.components.len());
        for c in &group.components {
            let x = f(c.generator) % n;
            let scaled = x as u128 * c.order as u128;
            if scaled % n as u128 != 0 {
                return Err(Error::InvalidCharacter(format!(
                    "value ζ_{n}^{x} at generator {} is not of order dividing {}",
                    c.generator, c.order
                )));
            }
            exps.push((scaled / n as u128) as u64 % c.order);
        }
        Self::from_exponents(modulus, exps)
    }

    /// Every character modulo `m`.
    pub fn all(m: u64) -> Vec<Self> {
        let orders: Vec<u64> = unit_generators(m).iter().map(|g| g.1).collect();
        let mut out = vec![Vec::<u64>::new()];
        for n in orders {
            out = out
                .into_iter()
                .flat_map(|prefix| {
                    (0..n).map(move |e| {
                        let mut v = prefix.clone();
                        v.push(e);
                        v
                    })
                })
                .collect();
        }
        out.into_iter()
            .map(|e| Self::from_exponents(m, e).unwrap())
            .collect()
    }

    /// The Teichmüller character modulo p: `a ↦ ζ_{p-1}^{ind_g(a)}`, which the
    /// embedding sends to the Teichmüller lift of `a`.
    pub fn teichmuller(emb: &Embedding) -> Self {
        let p = emb.p();
        Self::from_value_fn(p, p - 1, |g| emb.index(g).unwrap()).unwrap()
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn exponents(&self) -> &[u64] {
        &self.exps
    }

    pub fn images(&self) -> Vec<(u64, u64)> {
        self.group
            .components
            .iter()
            .zip(&self.exps)
            .map(|(c, &e)| (c.generator, e))
            .collect()
    }

    pub fn is_trivial(&self) -> bool {
        self.order == 1
    }

    /// `χ(a) = ζ_{ord}^k`; `None` when `gcd(a, m) > 1`.
    pub fn exponent(&self, a: i64) -> Option<u64> {
        let logs = self.group.logs(a)?;
        let ord = self.order as u128;
        let mut k = 0u128;
        for ((c, &e), l) in self.group.components.iter().zip(&self.exps).zip(logs) {
            k += (e as u128 * l as u128 % c.order as u128) * ord / c.order as u128;
        }
        Some((k % ord) as u64)
    }

    pub fn eval(&self, a: i64) -> CycNumber {
        match self.exponent(a) {
            Some(k) => CycNumber::root_of_unity(self.order, k),
            None => CycNumber::zero(self.order),
        }
    }

    pub fn eval_padic(&self, a: i64, emb: &Embedding, prec: u32) -> Result<PAdicInt> {
        match self.exponent(a) {
            Some(k) => Ok(emb.zeta(self.order, prec)?.pow(k)),
            None => {
                // still insist on embeddability, so that failures do not depend on `a`
                emb.zeta(self.order, prec)?;
                Ok(PAdicInt::zero(emb.p(), prec))
            }
        }
    }

    /// `χ(-1)` as `+1` or `-1`.
    pub fn parity(&self) -> i32 {
        match self.exponent(-1) {
            Some(0) => 1,
            _ => -1,
        }
    }

    pub fn is_even(&self) -> bool {
        self.parity() == 1
    }

    pub fn conductor(&self) -> u64 {
        let mut cond = 1u64;
        let comps = &self.group.components;
        let mut i = 0;
        while i < comps.len() {
            let c = &comps[i];
            let local_order = |j: usize| comps[j].order / arith::gcd(comps[j].order, self.exps[j]);
            if c.local_modulus % 2 == 0 {
                let sign_nontrivial = self.exps[i] != 0;
                let five_order = if i + 1 < comps.len() && comps[i + 1].local_modulus == c.local_modulus {
                    i += 1;
                    local_order(i)
                } else {
                    1
                };
                if five_order > 1 {
                    cond *= 4 * five_order;
                } else if sign_nontrivial {
                    cond *= 4;
                }
            } else {
                let (q, _) = arith::prime_power(c.local_modulus).unwrap();
                let o = local_order(i);
                if o > 1 {
                    let wild = if o % q == 0 { q.pow(arith::val_u64(o, q)) } else { 1 };
                    cond *= q * wild;
                }
            }
            i += 1;
        }
        cond
    }

    pub fn is_primitive(&self) -> bool {
        self.conductor() == self.modulus
    }

    /// The primitive character inducing this one.
    pub fn primitive(&self) -> Self {
        let c = self.conductor();
        if c == self.modulus {
            return self.clone();
        }
        Self::from_value_fn(c, self.order, |g| {
            let mut a = g;
            while arith::gcd(a, self.modulus) != 1 {
                a += c;
            }
            self.exponent(a as i64).unwrap()
        })
        .unwrap()
    }

    /// The character modulo a multiple `m` of the modulus.
    pub fn induce(&self, m: u64) -> Result<Self> {
        if m % self.modulus != 0 {
            return Err(Error::InvalidCharacter(format!(
                "{m} is not a multiple of {}",
                self.modulus
            )));
        }
        Self::from_value_fn(m, self.order, |g| self.exponent(g as i64).unwrap())
    }

    /// Product character modulo the lcm of the two moduli.
    pub fn mul(&self, other: &Self) -> Self {
        let m = arith::lcm(self.modulus, other.modulus);
        let n = arith::lcm(self.order, other.order);
        Self::from_value_fn(m, n, |g| {
            let a = self.exponent(g as i64).unwrap() * (n / self.order);
            let b = other.exponent(g as i64).unwrap() * (n / other.order);
            (a + b) % n
        })
        .unwrap()
    }

    pub fn pow(&self, k: i64) -> Self {
        let exps = self
            .group
            .components
            .iter()
            .zip(&self.exps)
            .map(|(c, &e)| {
                let n = c.order as i128;
                ((e as i128 * k as i128).rem_euclid(n)) as u64
            })
            .collect();
        Self::from_exponents(self.modulus, exps).unwrap()
    }

    pub fn conj(&self) -> Self {
        self.pow(-1)
    }

    /// True when the primitive character has conductor 1 or p, i.e. it is a
    /// power of the Teichmüller character modulo p.
    pub fn is_teichmuller_power(&self, p: u64) -> bool {
        matches!(self.conductor(), 1) || self.conductor() == p
    }
}

/// Decomposes a character of p-power modulus as `η₁^t · η_w` with `η_w` of
/// p-power order.
pub fn tame_wild_split(eta: &DirichletCharacter, emb: &Embedding) -> Result<(u64, DirichletCharacter)> {
    let p = emb.p();
    let m = eta.modulus();
    if m != 1 && arith::prime_power(m).map(|(q, _)| q) != Some(p) {
        return Err(Error::InvalidCharacter(format!("modulus {m} is not a power of {p}")));
    }
    let omega = DirichletCharacter::teichmuller(emb).induce(m.max(p))?;
    let eta = eta.induce(m.max(p))?;
    for t in 0..p - 1 {
        let wild = eta.mul(&omega.pow(-(t as i64)));
        let o = wild.order();
        if o == 1 || arith::prime_power(o).map(|(q, _)| q) == Some(p) {
            return Ok((t, wild));
        }
    }
    unreachable!("the tame part is a power of the Teichmüller character")
}

/// The paper-side guard `(ψε)² ≢ 1 mod 𝔭`: roots of unity of order prime to p
/// reduce injectively, so the condition fails exactly when `(ψε)²` has
/// p-power order.
pub fn dihedral_condition_holds(psi: &DirichletCharacter, eps: &DirichletCharacter, p: u64) -> bool {
    let o = psi.mul(eps).pow(2).order();
    !(o == 1 || arith::prime_power(o).map(|(q, _)| q) == Some(p))
}

impl PartialEq for DirichletCharacter {
    fn eq(&self, other: &Self) -> bool {
        self.modulus == other.modulus && self.exps == other.exps
    }
}

impl Eq for DirichletCharacter {}

impl fmt::Debug for DirichletCharacter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "χ(mod {}; {:?})", self.modulus, self.images())
    }
}

#[derive(Serialize, Deserialize)]
struct CharacterRecord {
    modulus: u64,
    images: Vec<(u64, u64)>,
}

impl Serialize for DirichletCharacter {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        CharacterRecord { modulus: self.modulus, images: self.images() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for DirichletCharacter {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let rec = CharacterRecord::deserialize(d)?;
        DirichletCharacter::from_images(rec.modulus, &rec.images).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    fn quadratic(m: u64) -> DirichletCharacter {
        DirichletCharacter::all(m)
            .into_iter()
            .find(|c| c.order() == 2 && c.is_primitive())
            .unwrap()
    }

    fn int(n: i64) -> CycNumber {
        CycNumber::from_int(1, n)
    }

    #[test]
    fn eval_examples() {
        assert_eq!(quadratic(5).eval(2), int(-1));
        for chi in DirichletCharacter::all(12) {
            assert_eq!(chi.eval(13), int(1));
        }
        assert_eq!(quadratic(4).eval(2), int(0));
    }

    #[test]
    fn multiplicative_and_consistent() {
        for m in [5u64, 8, 12, 15, 16, 21, 40] {
            for chi in DirichletCharacter::all(m) {
                for a in 0..m as i64 {
                    for b in 0..m as i64 {
                        assert_eq!(chi.eval(a * b), &chi.eval(a) * &chi.eval(b));
                    }
                    assert_eq!(chi.eval(a).is_zero(), arith::gcd(a as u64, m) != 1);
                }
                assert!(chi.eval(-1) == int(1) || chi.eval(-1) == int(-1));
            }
        }
    }

    /// Oracle: smallest divisor d of m with χ(a) = 1 for every unit a ≡ 1 mod d.
    fn brute_conductor(chi: &DirichletCharacter) -> u64 {
        let m = chi.modulus();
        for d in arith::divisors(m) {
            if (1..=m)
                .filter(|&a| arith::gcd(a, m) == 1 && a % d == 1 % d)
                .all(|a| chi.exponent(a as i64) == Some(0))
            {
                return d;
            }
        }
        m
    }

    #[test]
    fn conductor_matches_brute_force() {
        assert_eq!(DirichletCharacter::trivial(12).conductor(), 1);
        assert_eq!(quadratic(5).conductor(), 5);
        let induced = quadratic(4).induce(8).unwrap();
        assert_eq!(induced.conductor(), 4);
        for m in 1..=64u64 {
            for chi in DirichletCharacter::all(m) {
                assert_eq!(chi.conductor(), brute_conductor(&chi), "{chi:?}");
                let prim = chi.primitive();
                assert!(prim.is_primitive());
                for a in 1..m as i64 {
                    if arith::gcd(a as u64, m) == 1 {
                        assert_eq!(prim.eval(a), chi.eval(a));
                    }
                }
            }
        }
    }

    #[test]
    fn tame_wild_examples() {
        let emb = Embedding::new(5).unwrap();
        let omega = DirichletCharacter::teichmuller(&emb);
        let (t, w) = tame_wild_split(&omega, &emb).unwrap();
        assert_eq!(t, 1);
        assert!(w.is_trivial());
        let (t, w) = tame_wild_split(&DirichletCharacter::trivial(25), &emb).unwrap();
        assert_eq!(t, 0);
        assert!(w.is_trivial());
        let eta = DirichletCharacter::all(25).into_iter().find(|c| c.order() == 5).unwrap();
        let (t, w) = tame_wild_split(&eta, &emb).unwrap();
        assert_eq!(t, 0);
        assert_eq!(w, eta);
        // teichmuller embeds as the Teichmüller lift
        for a in 1..5 {
            assert_eq!(
                omega.eval_padic(a, &emb, 4).unwrap(),
                crate::padic::teichmuller(a, 5, 4).unwrap()
            );
        }
    }

    #[test]
    fn tame_wild_round_trip() {
        for p in [5u64, 7] {
            let emb = Embedding::new(p).unwrap();
            let omega = DirichletCharacter::teichmuller(&emb).induce(p * p).unwrap();
            for eta in DirichletCharacter::all(p * p) {
                let (t, w) = tame_wild_split(&eta, &emb).unwrap();
                assert!(t < p - 1);
                let back = omega.pow(t as i64).mul(&w);
                for a in 1..(p * p) as i64 {
                    assert_eq!(back.eval(a), eta.eval(a));
                }
            }
        }
    }

    #[test]
    fn json_round_trip() {
        let chi = DirichletCharacter::all(40).into_iter().nth(7).unwrap();
        let s = serde_json::to_string(&chi).unwrap();
        let back: DirichletCharacter = serde_json::from_str(&s).unwrap();
        assert_eq!(back, chi);
        assert_eq!(serde_json::to_string(&back).unwrap(), s);
        assert!(serde_json::from_str::<DirichletCharacter>(r#"{"modulus":5,"images":[[3,1]]}"#).is_err());
        let _ = BigRational::from_integer(1.into());
    }

    #[test]
    fn dihedral_guard() {
        let q5 = quadratic(5);
        assert!(!dihedral_condition_holds(&q5, &DirichletCharacter::trivial(1), 7));
        let quartic13 = DirichletCharacter::all(13).into_iter().find(|c| c.order() == 4).unwrap();
        assert!(dihedral_condition_holds(&quartic13, &DirichletCharacter::trivial(1), 5));
    }
}
