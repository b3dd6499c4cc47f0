//! The CLI commands as plain functions: inputs are validated and the whole
//! output is rendered before anything is printed.

use serde::Serialize;

use qschur_core::matrix::enum_compositions;
use qschur_core::quantum::{evaluate_word, GenWord};
use qschur_core::reps::{ssyt_count, weyl_weight_dims};
use qschur_core::ring::Specialization;
use qschur_core::schur::{multiply, SchurElem};
use qschur_core::stab::f_poly;
use qschur_core::verify::{self, Report, VerifyOptions};
use qschur_core::{Error, IntMatZ, Window};

use crate::guard::Guards;
use crate::literal::{pairs, parse_matrix, parse_partition, triples};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Scope {
    Presentation,
    Bases,
    Oracle,
    All,
}

/// Rendered output and process exit status.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub code: i32,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome { stdout, code: 0 }
    }
}

#[derive(Serialize)]
struct TermJson {
    matrix: Vec<[i64; 3]>,
    coeff: String,
}

#[derive(Serialize)]
struct ElemJson<'a> {
    command: &'a str,
    window: String,
    r: i64,
    terms: Vec<TermJson>,
}

fn elem_terms(x: &SchurElem) -> Vec<TermJson> {
    x.terms().iter().map(|(a, c)| TermJson { matrix: triples(a), coeff: c.to_string() }).collect()
}

fn render_elem(cmd: &str, x: &SchurElem, r: i64, fmt: Format) -> String {
    match fmt {
        Format::Text => format!("{x}\n"),
        Format::Json => {
            let j = ElemJson { command: cmd, window: x.window().to_string(), r, terms: elem_terms(x) };
            serde_json::to_string_pretty(&j).unwrap() + "\n"
        }
    }
}

fn basis_in(w: Window, r: i64, a: IntMatZ, which: &str) -> Result<SchurElem, Error> {
    SchurElem::basis(w, r, a).map_err(|e| Error::Domain(format!("{which}: {e}")))
}

pub fn multiply_cmd(window: &str, r: i64, a: &str, b: &str, fmt: Format) -> Result<Outcome, Error> {
    let w: Window = window.parse()?;
    let x = basis_in(w, r, parse_matrix(a, w.lo)?, "--a")?;
    let y = basis_in(w, r, parse_matrix(b, w.lo)?, "--b")?;
    Ok(Outcome::ok(render_elem("multiply", &multiply(&x, &y)?, r, fmt)))
}

pub fn word_cmd(window: &str, r: i64, word: &str, fmt: Format) -> Result<Outcome, Error> {
    let w: Window = window.parse()?;
    let g: GenWord = word.parse()?;
    Ok(Outcome::ok(render_elem("word", &evaluate_word(&g, &w, r)?, r, fmt)))
}

#[derive(Serialize)]
struct FpolyRow {
    matrix: Vec<[i64; 3]>,
    f: String,
    at_v_prime_1: String,
}

#[derive(Serialize)]
struct FpolyJson {
    command: &'static str,
    a: Vec<[i64; 3]>,
    b: Vec<[i64; 3]>,
    rows: Vec<FpolyRow>,
}

/// Matrices here carry no window; `D(...)` starts at index 1.
pub fn fpoly_cmd(a: &str, b: &str, fmt: Format) -> Result<Outcome, Error> {
    let a = parse_matrix(a, 1)?;
    let b = parse_matrix(b, 1)?;
    let table = f_poly(&a, &b)?;
    let mut rows = Vec::new();
    for (c, f) in &table {
        rows.push(FpolyRow { matrix: triples(c), f: f.to_string(), at_v_prime_1: f.specialize(Specialization::One)?.to_string() });
    }
    let out = match fmt {
        Format::Text => {
            let mut s = String::new();
            for (row, c) in rows.iter().zip(table.keys()) {
                s += &format!("[{c}]\t{}\tv'=1: {}\n", row.f, row.at_v_prime_1);
            }
            s
        }
        Format::Json => serde_json::to_string_pretty(&FpolyJson { command: "fpoly", a: triples(&a), b: triples(&b), rows }).unwrap() + "\n",
    };
    Ok(Outcome::ok(out))
}

#[derive(Serialize)]
struct ClaimJson<'a> {
    id: &'a str,
    params: &'a str,
    checked: usize,
    pass: bool,
    witness: Option<&'a str>,
}

#[derive(Serialize)]
struct VerifyJson<'a> {
    command: &'static str,
    scope: String,
    window: String,
    r: i64,
    pass: bool,
    claims: Vec<ClaimJson<'a>>,
}

pub struct VerifyArgs<'a> {
    pub scope: Scope,
    pub window: &'a str,
    pub r: i64,
    pub qs: &'a [u32],
    pub perturb: bool,
    pub format: Format,
}

pub fn verify_cmd(args: &VerifyArgs<'_>, guards: &Guards) -> Result<Outcome, Error> {
    let w: Window = args.window.parse()?;
    let r = args.r;
    let want = |s: Scope| args.scope == s || args.scope == Scope::All;
    // all guards first, so a violation never leaves a partial report
    if want(Scope::Presentation) || want(Scope::Bases) {
        guards.check_verify(&w, r)?;
    }
    if want(Scope::Oracle) {
        if args.qs.is_empty() {
            return Err(Error::Domain("--q needs at least one field size".into()));
        }
        for &q in args.qs {
            guards.oracle.check(q, r, &w)?;
        }
    }
    let mut rep = Report::default();
    if want(Scope::Presentation) {
        rep.extend(verify::verify_presentation(&w, r, VerifyOptions { perturb: args.perturb })?);
    }
    if want(Scope::Bases) {
        rep.extend(verify::basis_report(&w, r)?);
    }
    if want(Scope::Oracle) {
        rep.extend(verify::oracle_report(&w, r, args.qs, &guards.oracle)?);
    }
    let pass = rep.all_pass();
    let stdout = match args.format {
        Format::Text => format!("{rep}{}\n", if pass { "all claims pass" } else { "some claims FAIL" }),
        Format::Json => {
            let claims = rep
                .claims
                .iter()
                .map(|c| ClaimJson { id: c.id, params: &c.params, checked: c.checked, pass: c.pass, witness: c.witness.as_deref() })
                .collect();
            let scope = format!("{:?}", args.scope).to_lowercase();
            let j = VerifyJson { command: "verify", scope, window: w.to_string(), r, pass, claims };
            serde_json::to_string_pretty(&j).unwrap() + "\n"
        }
    };
    Ok(Outcome { stdout, code: if pass { 0 } else { 1 } })
}

#[derive(Serialize)]
struct WeightRow {
    weight: Vec<[i64; 2]>,
    dim: usize,
    ssyt: usize,
}

#[derive(Serialize)]
struct WeightsJson {
    command: &'static str,
    mu: Vec<i64>,
    window: String,
    weights: Vec<WeightRow>,
    total: usize,
}

/// Weight multiplicities of the Weyl module, with the tableau count beside
/// each for comparison.
pub fn weights_cmd(mu: &str, window: &str, guards: &Guards, fmt: Format) -> Result<Outcome, Error> {
    let mu = parse_partition(mu)?;
    let w: Window = window.parse()?;
    let r: i64 = mu.iter().sum();
    guards.check_weights(r)?;
    let dims = weyl_weight_dims(&mu, &w)?;
    let mut rows = Vec::new();
    for lam in enum_compositions(&w, r, None) {
        rows.push((lam.clone(), dims.get(&lam).copied().unwrap_or(0), ssyt_count(&mu, &lam)?));
    }
    let total = rows.iter().map(|x| x.1).sum();
    let out = match fmt {
        Format::Text => {
            let mut s = String::new();
            for (lam, d, k) in &rows {
                s += &format!("{lam}\tdim {d}\tssyt {k}\n");
            }
            s + &format!("total {total}\n")
        }
        Format::Json => {
            let weights = rows.into_iter().map(|(l, dim, ssyt)| WeightRow { weight: pairs(&l), dim, ssyt }).collect();
            serde_json::to_string_pretty(&WeightsJson { command: "weights", mu, window: w.to_string(), weights, total }).unwrap() + "\n"
        }
    };
    Ok(Outcome::ok(out))
}
