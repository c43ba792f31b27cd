use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::arith;
use crate::characters::DirichletCharacter;
use crate::cyclotomic::{CycNumber, Embedding};
use crate::error::{Error, Result};
use crate::qexp::{CoefficientRing, Cyclotomic, QExpansion};
use crate::symsq::{symsq_factor, EulerFactor, Ramification, SatakeData};

/// A newform given by Hecke eigenvalues, together with the p-adic working
/// parameters used to study it.
#[derive(Clone, Debug, PartialEq)]
pub struct FormRecord {
    pub label: String,
    pub weight: u32,
    pub level: u64,
    pub character: DirichletCharacter,
    pub eigenvalues: BTreeMap<u64, CycNumber>,
    pub p: u64,
    pub precision: u32,
    pub trunc: usize,
    pub primitive_root: Option<u64>,
    /// untwisted local polynomials replacing the naive ones at bad primes
    pub overrides: BTreeMap<u64, Vec<CycNumber>>,
    /// Galois-theoretic hypotheses asserted by whoever prepared the record
    pub hypotheses: BTreeMap<String, bool>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct Raw {
    label: String,
    weight: u32,
    level: u64,
    character: DirichletCharacter,
    eigenvalues: BTreeMap<String, String>,
    p: u64,
    precision: u32,
    trunc: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    primitive_root: Option<u64>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    overrides: BTreeMap<String, Vec<String>>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    hypotheses: BTreeMap<String, bool>,
}

fn ring() -> Cyclotomic {
    Cyclotomic { order: 1 }
}

impl FormRecord {
    pub fn from_json_str(s: &str) -> Result<Self> {
        let raw: Raw = serde_json::from_str(s)?;
        let mut errors = Vec::new();
        let mut eigenvalues = BTreeMap::new();
        for (q, a) in &raw.eigenvalues {
            match (q.parse::<u64>(), ring().parse(a)) {
                (Ok(q), Ok(a)) if arith::is_prime(q) => {
                    eigenvalues.insert(q, a);
                }
                (Ok(q), Ok(_)) => errors.push(Error::Schema(format!("eigenvalue key {q} is not prime"))),
                (Err(_), _) => errors.push(Error::Schema(format!("eigenvalue key {q:?} is not an integer"))),
                (_, Err(e)) => errors.push(Error::Schema(format!("a_{q}: {e}"))),
            }
        }
        let mut overrides = BTreeMap::new();
        for (q, coeffs) in &raw.overrides {
            let parsed: Result<Vec<CycNumber>> = coeffs.iter().map(|c| ring().parse(c)).collect();
            match (q.parse::<u64>(), parsed) {
                (Ok(q), Ok(c)) => {
                    overrides.insert(q, c);
                }
                (Err(_), _) => errors.push(Error::Schema(format!("override key {q:?} is not an integer"))),
                (_, Err(e)) => errors.push(Error::Schema(format!("override at {q}: {e}"))),
            }
        }
        let rec = FormRecord {
            label: raw.label,
            weight: raw.weight,
            level: raw.level,
            character: raw.character,
            eigenvalues,
            p: raw.p,
            precision: raw.precision,
            trunc: raw.trunc,
            primitive_root: raw.primitive_root,
            overrides,
            hypotheses: raw.hypotheses,
        };
        errors.extend(rec.validate());
        match errors.len() {
            0 => Ok(rec),
            1 => Err(errors.pop().unwrap()),
            _ => Err(Error::Validation(errors)),
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        let raw = Raw {
            label: self.label.clone(),
            weight: self.weight,
            level: self.level,
            character: self.character.clone(),
            eigenvalues: self
                .eigenvalues
                .iter()
                .map(|(q, a)| (q.to_string(), ring().render(a)))
                .collect(),
            p: self.p,
            precision: self.precision,
            trunc: self.trunc,
            primitive_root: self.primitive_root,
            overrides: self
                .overrides
                .iter()
                .map(|(q, c)| (q.to_string(), c.iter().map(|x| ring().render(x)).collect()))
                .collect(),
            hypotheses: self.hypotheses.clone(),
        };
        serde_json::to_value(raw).expect("serialisable")
    }

    /// Every problem with the record, not just the first.
    pub fn validate(&self) -> Vec<Error> {
        let mut errors = Vec::new();
        let p = self.p;
        if p < 5 || !arith::is_prime(p) {
            errors.push(Error::Schema(format!("p = {p} must be a prime >= 5")));
            return errors;
        }
        if self.weight < 2 {
            errors.push(Error::Schema(format!("weight {} must be at least 2", self.weight)));
        }
        if self.precision == 0 {
            errors.push(Error::Schema("precision must be positive".into()));
        }
        if self.level == 0 || self.level % self.character.modulus() != 0 {
            errors.push(Error::Schema(format!(
                "character modulus {} does not divide level {}",
                self.character.modulus(),
                self.level
            )));
        }
        let emb = match self.embedding() {
            Ok(e) => Some(e),
            Err(e) => {
                errors.push(e);
                None
            }
        };
        if (p - 1) % self.character.order() != 0 {
            errors.push(Error::NotEmbeddable {
                p,
                reason: format!("character of order {} does not embed in Z_{p}", self.character.order()),
            });
        }
        for (q, a) in &self.eigenvalues {
            if let Some(emb) = &emb {
                if let Err(e) = a.embed_padic(emb, self.precision.max(1)) {
                    errors.push(Error::NotEmbeddable { p, reason: format!("a_{q}: {e}") });
                }
            }
        }
        match self.eigenvalues.get(&p) {
            None => errors.push(Error::Schema(format!("a_{p} is required to check ordinarity"))),
            Some(a) => {
                if let Some(emb) = &emb {
                    if let Ok(x) = a.embed_padic(emb, self.precision.max(1)) {
                        if !x.is_unit() {
                            errors.push(Error::NotOrdinary(format!("v_{p}(a_{p}) > 0 for a_{p} = {a}")));
                        }
                    }
                }
            }
        }
        for (q, c) in &self.overrides {
            if let Err(e) = EulerFactor::from_override(*q, Ramification::Ordinary, c.clone(), CycNumber::one(1)) {
                errors.push(e);
            }
        }
        errors
    }

    pub fn embedding(&self) -> Result<Embedding> {
        match self.primitive_root {
            Some(g) => Embedding::with_primitive_root(self.p, g),
            None => Embedding::new(self.p),
        }
    }

    pub fn eigenvalue(&self, q: u64) -> Result<&CycNumber> {
        self.eigenvalues
            .get(&q)
            .ok_or_else(|| Error::BadPrime { q, reason: format!("no eigenvalue a_{q} in {}", self.label) })
    }

    /// Naive local data: unramified away from the level, otherwise
    /// ordinary or depleted according to whether `a_q` vanishes.
    pub fn satake(&self, q: u64) -> Result<SatakeData> {
        let a = self.eigenvalue(q)?.clone();
        let eps = self.character.eval(q as i64);
        let ram = if self.level % q != 0 {
            Ramification::Unramified
        } else if a.is_zero() {
            Ramification::Depleted
        } else {
            Ramification::Ordinary
        };
        SatakeData::new(q, ram, a, eps, self.weight)
    }

    /// `P_q = Q(cX)`, honouring overrides.
    pub fn euler_factor(&self, q: u64, chi_q: &CycNumber) -> Result<EulerFactor> {
        if let Some(base) = self.overrides.get(&q) {
            let ram = if self.level % q == 0 { Ramification::Ordinary } else { Ramification::Unramified };
            return EulerFactor::from_override(q, ram, base.clone(), chi_q.clone());
        }
        symsq_factor(&self.satake(q)?, chi_q)
    }

    /// Normalised q-expansion through `trunc`, with coefficients in `Q(ζ)`.
    pub fn q_expansion(&self, trunc: usize) -> Result<QExpansion<Cyclotomic>> {
        let order = self.character.order();
        let ev = self.eigenvalues.clone();
        QExpansion::eigenform(
            Cyclotomic { order },
            self.label.clone(),
            self.weight,
            self.level,
            self.character.clone(),
            &ev,
            trunc,
        )
    }

    pub fn hypotheses_asserted(&self) -> bool {
        self.hypotheses.values().all(|&b| b)
    }
}

pub fn load_form(path: &Path) -> Result<FormRecord> {
    let text = std::fs::read_to_string(path)?;
    FormRecord::from_json_str(&text)
}
