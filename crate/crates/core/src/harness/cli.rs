use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use super::cache::Cache;
use super::record::{load_form, FormRecord};
use super::report::{
    congruence_transfer_check, emit_report, invariant_report, lift_factor, Format, Report, Settings,
};
use crate::characters::DirichletCharacter;
use crate::error::{Error, Result};
use crate::iwasawa::{IwasawaElement, DEFAULT_GUARD};
use crate::qexp::{CoefficientRing, Cyclotomic};

#[derive(Parser, Debug)]
#[command(name = "symsq", version, about = "Euler factors, Λ-lifts and μ/λ invariants for symmetric squares")]
pub struct Cli {
    /// override the prime of the form record
    #[arg(long, global = true)]
    pub p: Option<u64>,
    /// p-adic precision N
    #[arg(long, global = true)]
    pub precision: Option<u32>,
    /// T-adic truncation D
    #[arg(long, global = true)]
    pub trunc: Option<usize>,
    #[arg(long = "primitive-root", global = true)]
    pub primitive_root: Option<u64>,
    /// recompute every lifted factor
    #[arg(long = "no-cache", global = true)]
    pub no_cache: bool,
    #[arg(long = "cache-dir", global = true, default_value = ".symsq-cache")]
    pub cache_dir: PathBuf,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Twist {
    /// character ψ as JSON, inline or a file path; trivial by default
    #[arg(long)]
    pub psi: Option<String>,
    #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
    pub t: i64,
}

#[derive(Args, Debug, Clone)]
pub struct Output {
    #[arg(long, value_enum, default_value = "json")]
    pub format: FormatArg,
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(ValueEnum, Debug, Clone, Copy)]
pub enum FormatArg {
    Json,
    Text,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// print the local factor P_q
    Euler {
        #[arg(long)]
        form: PathBuf,
        #[arg(long)]
        q: u64,
        #[command(flatten)]
        twist: Twist,
        #[command(flatten)]
        out: Output,
    },
    /// Λ-lift of P_q with its μ and λ
    Lift {
        #[arg(long)]
        form: PathBuf,
        #[arg(long)]
        q: u64,
        #[command(flatten)]
        twist: Twist,
        #[command(flatten)]
        out: Output,
    },
    /// σ table over a set of primes
    Sigma {
        #[arg(long)]
        form: PathBuf,
        #[arg(long, value_delimiter = ',')]
        s0: Vec<u64>,
        #[command(flatten)]
        twist: Twist,
        #[command(flatten)]
        out: Output,
    },
    /// Weierstrass data of a Λ-element
    Prep {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, default_value_t = DEFAULT_GUARD)]
        guard: usize,
        #[command(flatten)]
        out: Output,
    },
    /// value of a Λ-element at T = (1+p)^(1-n) - 1
    Specialize {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        n: i64,
        #[command(flatten)]
        out: Output,
    },
    /// congruence-transfer check for two Λ-elements
    Congruence {
        #[arg(long)]
        f: PathBuf,
        #[arg(long)]
        g: PathBuf,
        #[command(flatten)]
        out: Output,
    },
    /// full invariant report
    Report {
        #[arg(long)]
        form: PathBuf,
        #[arg(long, value_delimiter = ',')]
        s0: Vec<u64>,
        /// Λ-element to compare against its imprimitive version
        #[arg(long)]
        lambda: Option<PathBuf>,
        #[command(flatten)]
        twist: Twist,
        #[command(flatten)]
        out: Output,
    },
}

/// Output of the single-object subcommands.
struct Plain {
    value: Value,
    lines: Vec<String>,
}

impl Report for Plain {
    fn to_value(&self) -> Value {
        self.value.clone()
    }
    fn text_lines(&self) -> Vec<String> {
        self.lines.clone()
    }
    fn passed(&self) -> bool {
        true
    }
}

fn is_input_error(e: &Error) -> bool {
    matches!(
        e,
        Error::Io(_)
            | Error::Schema(_)
            | Error::Validation(_)
            | Error::NotOrdinary(_)
            | Error::NotEmbeddable { .. }
            | Error::InvalidCharacter(_)
            | Error::InvalidSatake { .. }
            | Error::Incompatible(_)
            | Error::BadPrime { .. }
            | Error::BadMode(_)
    )
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T> {
    let text = fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    Ok(serde_json::from_str(&text)?)
}

fn parse_psi(arg: &Option<String>) -> Result<DirichletCharacter> {
    match arg {
        None => Ok(DirichletCharacter::trivial(1)),
        Some(s) if s.trim_start().starts_with('{') => Ok(serde_json::from_str(s)?),
        Some(path) => read_json(Path::new(path)),
    }
}

impl Cli {
    fn load(&self, path: &Path) -> Result<FormRecord> {
        let mut form = load_form(path)?;
        let before = (form.p, form.precision, form.trunc, form.primitive_root);
        form.p = self.p.unwrap_or(form.p);
        form.precision = self.precision.unwrap_or(form.precision);
        form.trunc = self.trunc.unwrap_or(form.trunc);
        form.primitive_root = self.primitive_root.or(form.primitive_root);
        if before != (form.p, form.precision, form.trunc, form.primitive_root) {
            let mut errors = form.validate();
            match errors.len() {
                0 => {}
                1 => return Err(errors.pop().unwrap()),
                _ => return Err(Error::Validation(errors)),
            }
        }
        Ok(form)
    }

    fn settings(&self, form: &FormRecord) -> Result<Settings> {
        let mut s = Settings::from_form(form)?;
        if !self.no_cache {
            s.cache = Some(Cache::new(&self.cache_dir));
        }
        Ok(s)
    }

    fn element(&self, path: &Path) -> Result<IwasawaElement> {
        let mut e: IwasawaElement = read_json(path)?;
        if let Some(n) = self.precision {
            e = e.with_precision(n)?;
        }
        if let Some(d) = self.trunc {
            e = e.with_trunc(d);
        }
        Ok(e)
    }

    fn execute(&self) -> Result<(Box<dyn Report>, Output)> {
        let ring = Cyclotomic { order: 1 };
        match &self.command {
            Command::Euler { form, q, twist, out } => {
                let form = self.load(form)?;
                let psi = parse_psi(&twist.psi)?;
                let emb = form.embedding()?;
                let chi = psi.mul(&DirichletCharacter::teichmuller(&emb).pow(twist.t));
                let f = form.euler_factor(*q, &chi.eval(*q as i64))?;
                let coeffs: Vec<String> = f.coefficients().iter().map(|c| ring.render(c)).collect();
                let value = json!({
                    "q": q,
                    "type": f.ramification,
                    "coefficients": coeffs,
                    "base": f.base.iter().map(|c| ring.render(c)).collect::<Vec<_>>(),
                });
                let lines = vec![format!("P_{q}(X) = {f}")];
                Ok((Box::new(Plain { value, lines }), out.clone()))
            }
            Command::Lift { form, q, twist, out } => {
                let form = self.load(form)?;
                let psi = parse_psi(&twist.psi)?;
                let settings = self.settings(&form)?;
                let lift = lift_factor(&form, *q, &psi, twist.t, &settings)?;
                let (mu, lambda) = lift.mu_lambda()?;
                let value = json!({"q": q, "element": lift, "mu": mu, "lambda": lambda});
                let lines = vec![format!("{lift}"), format!("mu={mu} lambda={lambda}")];
                Ok((Box::new(Plain { value, lines }), out.clone()))
            }
            Command::Sigma { form, s0, twist, out } | Command::Report { form, s0, twist, out, lambda: None } => {
                let form = self.load(form)?;
                let psi = parse_psi(&twist.psi)?;
                let settings = self.settings(&form)?;
                let r = invariant_report(&form, &psi, twist.t, s0, None, &settings)?;
                Ok((Box::new(r), out.clone()))
            }
            Command::Report { form, s0, lambda: Some(l), twist, out } => {
                let form = self.load(form)?;
                let psi = parse_psi(&twist.psi)?;
                let settings = self.settings(&form)?;
                let l = self.element(l)?;
                let r = invariant_report(&form, &psi, twist.t, s0, Some(&l), &settings)?;
                Ok((Box::new(r), out.clone()))
            }
            Command::Prep { input, guard, out } => {
                let e = self.element(input)?;
                let w = e.weierstrass_prep_with_guard(*guard)?;
                let poly: Vec<String> = w.distinguished.iter().map(|c| c.to_string()).collect();
                let value = json!({
                    "mu": w.mu,
                    "lambda": w.lambda,
                    "distinguished": poly,
                    "unit": w.unit,
                    "reconstructs": w.reconstruct() == e,
                });
                let lines = vec![
                    format!("mu={} lambda={}", w.mu, w.lambda),
                    format!("distinguished: {}", poly.join(" ")),
                    format!("unit: {}", w.unit),
                ];
                Ok((Box::new(Plain { value, lines }), out.clone()))
            }
            Command::Specialize { input, n, out } => {
                let e = self.element(input)?;
                let v = e.specialize(*n)?;
                let value = json!({"n": n, "p": v.p(), "precision": v.precision(), "value": v.to_string()});
                let lines = vec![format!("{v:?}")];
                Ok((Box::new(Plain { value, lines }), out.clone()))
            }
            Command::Congruence { f, g, out } => {
                let r = congruence_transfer_check(&self.element(f)?, &self.element(g)?)?;
                Ok((Box::new(r), out.clone()))
            }
        }
    }
}

/// Parses the process arguments, runs the subcommand and returns the exit
/// code: 0 all-pass, 1 a failed assertion, 2 an input error.
pub fn run() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    run_cli(&cli)
}

pub fn run_cli(cli: &Cli) -> i32 {
    match cli.execute() {
        Ok((report, out)) => {
            let format = match out.format {
                FormatArg::Json => Format::Json,
                FormatArg::Text => Format::Text,
            };
            if let Err(e) = emit_report(report.as_ref(), format, out.output.as_deref()) {
                eprintln!("error: {e}");
                return 2;
            }
            report.exit_code()
        }
        Err(e) => {
            eprintln!("error: {e}");
            if is_input_error(&e) {
                2
            } else {
                1
            }
        }
    }
}
