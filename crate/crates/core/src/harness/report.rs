use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use serde::Serialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use super::cache::Cache;
use super::record::FormRecord;
use crate::characters::{dihedral_condition_holds, DirichletCharacter};
use crate::cyclotomic::Embedding;
use crate::error::{Error, Result};
use crate::iwasawa::IwasawaElement;
use crate::qexp::{CoefficientRing, Cyclotomic};
use crate::symsq::{assemble_imprimitive, euler_to_lambda, Ramification};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Text,
}

pub trait Report {
    fn to_value(&self) -> Value;
    fn text_lines(&self) -> Vec<String>;
    fn passed(&self) -> bool;

    /// 0 when every assertion held, 1 otherwise. Input errors (2) never
    /// reach a report.
    fn exit_code(&self) -> i32 {
        if self.passed() {
            0
        } else {
            1
        }
    }
}

/// Writes the report to `path` (or stdout). JSON output has sorted keys and
/// a trailing newline.
pub fn emit_report(report: &dyn Report, format: Format, path: Option<&Path>) -> Result<()> {
    let text = render(report, format);
    match path {
        Some(p) => fs::write(p, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

pub fn render(report: &dyn Report, format: Format) -> String {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&report.to_value()).expect("serialisable");
            s.push('\n');
            s
        }
        Format::Text => {
            let mut s = report.text_lines().join("\n");
            s.push('\n');
            s
        }
    }
}

fn sha256_of(v: &Value) -> String {
    hex::encode(Sha256::digest(v.to_string().as_bytes()))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PrimeRow {
    pub q: u64,
    #[serde(rename = "type")]
    pub ramification: Ramification,
    pub sigma: usize,
    pub mu: u32,
    pub mu_warning: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ElementSummary {
    pub mu: u32,
    pub lambda: usize,
    pub mu_imprimitive: u32,
    pub lambda_imprimitive: usize,
    pub relation_holds: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct InvariantReport {
    pub form: String,
    pub provenance: BTreeMap<String, String>,
    pub primes: Vec<PrimeRow>,
    pub sigma_total: usize,
    pub element: Option<ElementSummary>,
    pub warnings: Vec<String>,
    pub failures: Vec<String>,
}

impl InvariantReport {
    pub fn empty(form: impl Into<String>) -> Self {
        InvariantReport {
            form: form.into(),
            provenance: BTreeMap::new(),
            primes: Vec::new(),
            sigma_total: 0,
            element: None,
            warnings: Vec::new(),
            failures: Vec::new(),
        }
    }
}

impl Report for InvariantReport {
    fn to_value(&self) -> Value {
        serde_json::to_value(self).expect("serialisable")
    }

    fn text_lines(&self) -> Vec<String> {
        let mut out = vec![format!("form {}", self.form)];
        for (k, v) in &self.provenance {
            out.push(format!("input {k} = {v}"));
        }
        for row in &self.primes {
            out.push(format!(
                "q={} type={} sigma={} mu={}{}",
                row.q,
                row.ramification,
                row.sigma,
                row.mu,
                if row.mu_warning { " WARNING mu>0" } else { "" }
            ));
        }
        out.push(format!("sigma_total={}", self.sigma_total));
        if let Some(e) = &self.element {
            out.push(format!(
                "mu={} lambda={} mu_S0={} lambda_S0={} relation={}",
                e.mu,
                e.lambda,
                e.mu_imprimitive,
                e.lambda_imprimitive,
                if e.relation_holds { "holds" } else { "FAILS" }
            ));
        }
        out.extend(self.warnings.iter().map(|w| format!("warning: {w}")));
        out.extend(self.failures.iter().map(|f| format!("FAILED: {f}")));
        out
    }

    fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Computation parameters shared by the harness entry points.
#[derive(Clone, Debug)]
pub struct Settings {
    pub embedding: Embedding,
    pub precision: u32,
    pub trunc: usize,
    pub cache: Option<Cache>,
}

impl Settings {
    pub fn from_form(form: &FormRecord) -> Result<Self> {
        Ok(Settings {
            embedding: form.embedding()?,
            precision: form.precision,
            trunc: form.trunc,
            cache: None,
        })
    }
}

/// The Λ-lift of `P_q` for the form, through the cache when one is set.
pub fn lift_factor(
    form: &FormRecord,
    q: u64,
    psi: &DirichletCharacter,
    t: i64,
    settings: &Settings,
) -> Result<IwasawaElement> {
    let factor = form.euler_factor(q, &psi.eval(q as i64))?;
    let emb = &settings.embedding;
    let compute = || euler_to_lambda(&factor, psi, t, emb, settings.precision, settings.trunc);
    match &settings.cache {
        None => compute(),
        Some(cache) => {
            let ring = Cyclotomic { order: 1 };
            let descriptor = json!({
                "label": form.label,
                "q": q,
                "base": factor.base.iter().map(|c| ring.render(c)).collect::<Vec<_>>(),
                "psi": psi,
                "t": t,
                "p": emb.p(),
                "primitive_root": emb.primitive_root(),
                "precision": settings.precision,
                "trunc": settings.trunc,
            });
            cache.get_or_compute(&descriptor, compute)
        }
    }
}

/// σ-table for `S0` and, when `l` is given, the primitive/imprimitive
/// invariant relation `μ_{S0} = μ`, `λ_{S0} = λ + Σσ^(q)`.
pub fn invariant_report(
    form: &FormRecord,
    psi: &DirichletCharacter,
    t: i64,
    s0: &[u64],
    l: Option<&IwasawaElement>,
    settings: &Settings,
) -> Result<InvariantReport> {
    let p = settings.embedding.p();
    let mut primes: Vec<u64> = s0.to_vec();
    primes.sort_unstable();
    primes.dedup();
    if primes.contains(&p) {
        return Err(Error::BadPrime { q: p, reason: "S0 must exclude p".into() });
    }
    if let Some(l) = l {
        if l.p() != p {
            return Err(Error::Incompatible(format!("L lives over Z_{}, the form uses p = {p}", l.p())));
        }
        if (l.precision(), l.trunc()) != (settings.precision, settings.trunc) {
            return Err(Error::Incompatible(format!(
                "L is known mod (p^{}, T^{}), the factors mod (p^{}, T^{})",
                l.precision(),
                l.trunc() + 1,
                settings.precision,
                settings.trunc + 1
            )));
        }
    }
    let mut report = InvariantReport::empty(form.label.clone());
    let prov = &mut report.provenance;
    prov.insert("form_sha256".into(), sha256_of(&form.to_json()));
    prov.insert("psi".into(), serde_json::to_string(psi)?);
    prov.insert("t".into(), t.to_string());
    prov.insert("S0".into(), format!("{primes:?}"));
    prov.insert("p".into(), p.to_string());
    prov.insert("primitive_root".into(), settings.embedding.primitive_root().to_string());
    prov.insert("precision".into(), settings.precision.to_string());
    prov.insert("trunc".into(), settings.trunc.to_string());
    if let Some(l) = l {
        prov.insert("lambda_element_sha256".into(), sha256_of(&l.to_json()));
    }
    if !form.hypotheses_asserted() {
        report.warnings.push("not every Galois hypothesis is asserted for this form".into());
    }
    if !dihedral_condition_holds(psi, &form.character, p) {
        let msg = "(ψε)² ≡ 1 mod 𝔭: integrality of the lifted values is not guaranteed";
        log::warn!("{msg}");
        report.warnings.push(msg.into());
    }

    let mut lifts = Vec::new();
    for &q in &primes {
        let lift = lift_factor(form, q, psi, t, settings)?;
        let (mu, sigma) = lift.mu_lambda()?;
        if mu > 0 {
            log::warn!("μ = {mu} for the lifted factor at q = {q}");
            report.warnings.push(format!("lifted factor at q = {q} has μ = {mu}"));
        }
        let ramification = form.euler_factor(q, &psi.eval(q as i64))?.ramification;
        report.primes.push(PrimeRow { q, ramification, sigma, mu, mu_warning: mu > 0 });
        report.sigma_total += sigma;
        lifts.push(lift);
    }

    if let Some(l) = l {
        let (mu, lambda) = l.mu_lambda()?;
        let imp = assemble_imprimitive(l, &lifts)?;
        let (mu_imprimitive, lambda_imprimitive) = imp.mu_lambda()?;
        let relation_holds = mu_imprimitive == mu && lambda_imprimitive == lambda + report.sigma_total;
        if !relation_holds {
            report.failures.push(format!(
                "expected (μ, λ) = ({mu}, {}), found ({mu_imprimitive}, {lambda_imprimitive})",
                lambda + report.sigma_total
            ));
        }
        report.element = Some(ElementSummary { mu, lambda, mu_imprimitive, lambda_imprimitive, relation_holds });
    }
    Ok(report)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Verdict {
    /// congruent, `μ(F) = 0`, and then `μ(G) = 0`, `λ(F) = λ(G)`
    #[serde(rename = "holds")]
    Holds,
    /// congruent with `μ(F) = 0`, yet the invariants of `G` differ
    #[serde(rename = "violated")]
    Violated,
    /// hypotheses unmet: `μ(F) > 0` or undetermined
    #[serde(rename = "no conclusion")]
    NoConclusion,
    #[serde(rename = "not congruent")]
    NotCongruent,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub index: usize,
    pub f: String,
    pub g: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TransferReport {
    pub p: u64,
    pub congruent: bool,
    pub unit: u64,
    pub mu_f: Option<u32>,
    pub lambda_f: Option<usize>,
    pub mu_g: Option<u32>,
    pub lambda_g: Option<usize>,
    pub verdict: Verdict,
    pub counterexample: Option<Counterexample>,
}

impl Report for TransferReport {
    fn to_value(&self) -> Value {
        serde_json::to_value(self).expect("serialisable")
    }

    fn text_lines(&self) -> Vec<String> {
        let show = |x: Option<String>| x.unwrap_or_else(|| "undetermined".into());
        let mut out = vec![
            format!("p={} congruent={} unit={}", self.p, self.congruent, self.unit),
            format!(
                "F: mu={} lambda={}",
                show(self.mu_f.map(|v| v.to_string())),
                show(self.lambda_f.map(|v| v.to_string()))
            ),
            format!(
                "G: mu={} lambda={}",
                show(self.mu_g.map(|v| v.to_string())),
                show(self.lambda_g.map(|v| v.to_string()))
            ),
        ];
        out.push(format!("verdict: {}", serde_json::to_value(self.verdict).unwrap().as_str().unwrap()));
        if let Some(c) = &self.counterexample {
            out.push(format!("counterexample: coefficient {} has F = {}, G = {} mod p", c.index, c.f, c.g));
        }
        out
    }

    fn passed(&self) -> bool {
        matches!(self.verdict, Verdict::Holds | Verdict::NoConclusion)
    }
}

/// If `F ≡ uG mod p` for a unit `u` and `μ(F) = 0`, then `μ(G) = 0` and
/// `λ(F) = λ(G)`; this checks that implication on the given pair.
pub fn congruence_transfer_check(f: &IwasawaElement, g: &IwasawaElement) -> Result<TransferReport> {
    if f.p() != g.p() {
        return Err(Error::Incompatible(format!("F over Z_{}, G over Z_{}", f.p(), g.p())));
    }
    let p = f.p();
    let d = f.trunc().min(g.trunc());
    let (f, g) = (f.with_trunc(d), g.with_trunc(d));
    let c = f.congruent_mod_p(&g, true);
    let (mu_f, lambda_f) = f.mu_lambda().map_or((None, None), |(m, l)| (Some(m), Some(l)));
    let (mu_g, lambda_g) = g.mu_lambda().map_or((None, None), |(m, l)| (Some(m), Some(l)));
    let verdict = if !c.congruent {
        Verdict::NotCongruent
    } else if mu_f != Some(0) {
        Verdict::NoConclusion
    } else if mu_g == Some(0) && lambda_f == lambda_g {
        Verdict::Holds
    } else {
        Verdict::Violated
    };
    let counterexample = c.first_mismatch.map(|i| Counterexample {
        index: i,
        f: f.coeff(i).mod_p().to_string(),
        g: g.coeff(i).mod_p().to_string(),
    });
    Ok(TransferReport { p, congruent: c.congruent, unit: c.unit, mu_f, lambda_f, mu_g, lambda_g, verdict, counterexample })
}
