//! Acceptance gate: nine criteria, one PASS/FAIL line each. Every comparison
//! is exact; the only numeric tolerances are the runtime budgets below.

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_rational::BigRational;
use qschur_core::hecke;
use qschur_core::matrix::{enum_compositions, enum_xi, enum_xi_pm};
use qschur_core::oracle::{g_table, OracleConfig};
use qschur_core::quantum::{act_gen, gen_image, m_monomial, project_window, Gen, VElem};
use qschur_core::reps::{partitions, ssyt_count, tensor_decomp_check, weyl_weight_dims};
use qschur_core::ring::{balanced_binom, gauss2, Specialization};
use qschur_core::schur::{chain_product, multiply, structure_constants, SchurElem};
use qschur_core::stab::{f_poly, kinf_multiply, specialized_product, KElem};
use qschur_core::verify::{basis_report, verify_presentation, VerifyOptions};
use qschur_core::{Composition, IntMatZ, Laurent, Window};

const ORACLE_BUDGET: Duration = Duration::from_secs(5 * 60);
const STABILIZATION_BUDGET: Duration = Duration::from_secs(10 * 60);

type Outcome = Result<String, String>;

fn w(lo: i64, hi: i64) -> Window {
    Window::new(lo, hi).unwrap()
}

fn e(x: impl std::fmt::Display) -> String {
    x.to_string()
}

fn within(budget: Duration, t: Instant, what: String) -> Outcome {
    let took = t.elapsed();
    if took > budget {
        Err(format!("{what} but took {took:.1?}, budget {budget:?}"))
    } else {
        Ok(format!("{what} in {took:.1?}"))
    }
}

/// Structure constants at v^2 = q against flag counts over F_q.
fn oracle_equivalence() -> Outcome {
    let t = Instant::now();
    let cfg = OracleConfig::default();
    let mut n = 0usize;
    let cases = [(w(1, 2), 1), (w(1, 2), 2), (w(1, 2), 3), (w(1, 3), 2)];
    for (win, r) in cases {
        let xi = enum_xi(&win, r);
        for q in [2u32, 3] {
            let mut counted: BTreeMap<(IntMatZ, IntMatZ, IntMatZ), u64> = BTreeMap::new();
            for c in &xi {
                for ((a, b), k) in g_table(c, &win, q, &cfg).map_err(e)? {
                    counted.insert((a, b, c.clone()), k);
                }
            }
            for a in &xi {
                for b in xi.iter().filter(|b| b.ro() == a.co()) {
                    let sc = structure_constants(a, b, &win, r).map_err(e)?;
                    for c in &xi {
                        let alg = match sc.get(c) {
                            Some(g) => g.eval_q(q as i64).map_err(e)?,
                            None => BigRational::default(),
                        };
                        let geo = counted.get(&(a.clone(), b.clone(), c.clone())).copied().unwrap_or(0);
                        if alg != BigRational::from_integer(BigInt::from(geo)) {
                            return Err(format!("q={q} A={a:?} B={b:?} C={c:?}: algebra {alg}, count {geo}"));
                        }
                        n += 1;
                    }
                }
            }
        }
    }
    within(ORACLE_BUDGET, t, format!("{n} (A, B, C, q) triples agree"))
}

fn counterexample() -> Outcome {
    let e12 = KElem::basis(IntMatZ::unit(1, 2)).map_err(e)?;
    let e21 = KElem::basis(IntMatZ::unit(2, 1)).map_err(e)?;
    let got = kinf_multiply(&e12, &e21).map_err(e)?;
    let want = KElem::from_terms([
        (IntMatZ::unit(1, 1), Laurent::one()),
        (IntMatZ::from_dense(1, &[&[0, 1], &[1, -1]]), Laurent::one()),
    ])
    .map_err(e)?;
    if got != want {
        return Err(format!("K(infinity) product {got}"));
    }
    let win = w(1, 2);
    let x = SchurElem::basis(win, 1, IntMatZ::unit(1, 2)).map_err(e)?;
    let y = SchurElem::basis(win, 1, IntMatZ::unit(2, 1)).map_err(e)?;
    let p = multiply(&x, &y).map_err(e)?;
    if p.to_string() != "[E11]" {
        return Err(format!("r = 1 product {p}"));
    }
    Ok(format!("[E12][E21] = {got} in K(infinity), {p} at r = 1"))
}

fn small_tilde() -> Vec<IntMatZ> {
    let mut out = Vec::new();
    for a11 in -1..=1 {
        for a22 in -1..=1 {
            for a12 in 0..=1 {
                for a21 in 0..=1 {
                    out.push(IntMatZ::from_dense(1, &[&[a11, a12], &[a21, a22]]));
                }
            }
        }
    }
    out
}

/// Smallest shift making every listed matrix nonnegative on its diagonal.
fn base_shift(ms: &[&IntMatZ]) -> i64 {
    -ms.iter().flat_map(|m| m.entries().map(|x| x.2)).min().unwrap_or(0).min(0)
}

fn stabilization() -> Outcome {
    let t = Instant::now();
    let mats = small_tilde();
    let mut n = 0;
    for a in &mats {
        for b in mats.iter().filter(|b| b.ro() == a.co()) {
            let f = f_poly(a, b).map_err(e)?;
            let mut all = vec![a, b];
            all.extend(f.keys());
            let a0 = base_shift(&all);
            for win in [w(1, 2), w(0, 3)] {
                for s in a0..a0 + 4 {
                    let r = a.sigma() + s * win.len() as i64;
                    let x = SchurElem::basis(win, r, a.a_shift(s, &win).map_err(e)?).map_err(e)?;
                    let y = SchurElem::basis(win, r, b.a_shift(s, &win).map_err(e)?).map_err(e)?;
                    let pred = specialized_product(a, b, s, &win).map_err(e)?;
                    if multiply(&x, &y).map_err(e)? != pred {
                        return Err(format!("A={a:?} B={b:?} a={s} window={win}"));
                    }
                    n += 1;
                }
            }
        }
    }
    within(STABILIZATION_BUDGET, t, format!("{n} shifted products match"))
}

fn leads_with(x: &SchurElem, a: &IntMatZ) -> bool {
    x.coeff(a).is_one() && x.terms().keys().all(|b| b == a || b.strictly_below(a))
}

fn triangularity() -> Outcome {
    let win = w(1, 3);
    let xi = enum_xi(&win, 3);
    for a in &xi {
        let c = chain_product(a, &win, 3).map_err(e)?;
        if !leads_with(&c, a) {
            return Err(format!("chain product of {a:?} = {c}"));
        }
        let m = m_monomial(a, &win, 3).map_err(e)?;
        if !leads_with(&m, a) {
            return Err(format!("m^({a:?}) = {m}"));
        }
    }
    Ok(format!("{} chain products and monomials are unitriangular", xi.len()))
}

fn presentation() -> Outcome {
    let mut n = 0;
    for win in [w(-1, 1), w(-2, 2)] {
        for r in 1..=3 {
            let rep = verify_presentation(&win, r, VerifyOptions::default()).map_err(e)?;
            if let Some(c) = rep.failures().next() {
                return Err(format!("{} [{}]: {}", c.id, c.params, c.witness.as_deref().unwrap_or("")));
            }
            n += rep.claims.iter().map(|c| c.checked).sum::<usize>();
        }
    }
    Ok(format!("{n} relation instances hold"))
}

/// j in Z^window with |j_i| <= 1.
fn small_js(win: &Window) -> Vec<Composition> {
    let idx: Vec<i64> = win.indices().collect();
    (0..3usize.pow(idx.len() as u32))
        .map(|mut code| {
            Composition::from_pairs(idx.iter().map(|&i| {
                let x = (code % 3) as i64 - 1;
                code /= 3;
                (i, x)
            }))
        })
        .collect()
}

fn generator_formulas() -> Outcome {
    let win = w(-2, 2);
    let keys: Vec<IntMatZ> = (0..=2).flat_map(|s| enum_xi_pm(&win, s)).collect();
    let js = small_js(&win);
    let mut gens: Vec<Gen> = win.without_last().flat_map(|h| [Gen::E(h), Gen::F(h)]).collect();
    gens.extend(win.indices().map(|i| Gen::K(Composition::unit(i))));
    let mut n = 0;
    for r in 0..=3 {
        let images: Vec<SchurElem> = gens.iter().map(|g| gen_image(g, &win, r)).collect::<Result<_, _>>().map_err(e)?;
        // g [C] for basis elements C, filled on demand
        let mut memo: Vec<BTreeMap<IntMatZ, SchurElem>> = vec![BTreeMap::new(); gens.len()];
        for a in &keys {
            for j in &js {
                let x = VElem::completion(a.clone(), j.clone(), r).map_err(e)?;
                let px = project_window(&x, &win).map_err(e)?;
                for (gi, g) in gens.iter().enumerate() {
                    let lhs = project_window(&act_gen(g, &x), &win).map_err(e)?;
                    let mut rhs = SchurElem::zero(win, r);
                    for (c, k) in px.terms() {
                        if !memo[gi].contains_key(c) {
                            let basis = SchurElem::basis(win, r, c.clone()).map_err(e)?;
                            memo[gi].insert(c.clone(), multiply(&images[gi], &basis).map_err(e)?);
                        }
                        rhs = rhs.add(&memo[gi][c].scale(k)).map_err(e)?;
                    }
                    if lhs != rhs {
                        return Err(format!("{g:?} on A={a:?} j={j} r={r}: {lhs} vs {rhs}"));
                    }
                    n += 1;
                }
            }
        }
    }
    Ok(format!("{n} (generator, A, j, r) actions agree with products"))
}

fn weights() -> Outcome {
    let win = w(1, 3);
    let mut n = 0;
    for r in 1..=4 {
        for mu in partitions(r) {
            let dims = weyl_weight_dims(&mu, &win).map_err(e)?;
            for lam in enum_compositions(&win, r, None) {
                let d = dims.get(&lam).copied().unwrap_or(0);
                let k = ssyt_count(&mu, &lam).map_err(e)?;
                if d != k {
                    return Err(format!("mu={mu:?} lambda={lam}: rank {d}, tableaux {k}"));
                }
                n += 1;
            }
        }
    }
    let mut sizes = Vec::new();
    for (win, rmax) in [(w(1, 2), 4), (w(1, 3), 3)] {
        for r in 1..=rmax {
            let rep = tensor_decomp_check(&win, r).map_err(e)?;
            if !rep.holds() {
                return Err(format!("tensor identity on {win} r={r}: {} vs {}", rep.total, rep.expected));
            }
            sizes.push(rep.expected);
        }
    }
    Ok(format!("{n} weight multiplicities match, tensor identity at sizes {sizes:?}"))
}

fn bases() -> Outcome {
    let mut n = 0;
    for r in 1..=3 {
        let rep = basis_report(&w(-1, 1), r).map_err(e)?;
        if let Some(c) = rep.failures().next() {
            return Err(format!("{} [{}]: {}", c.id, c.params, c.witness.as_deref().unwrap_or("")));
        }
        n += rep.claims.len();
    }
    Ok(format!("{n} basis claims hold on -1:1"))
}

fn ring_identities() -> Outcome {
    let mut n = 0;
    for a in -8i64..=8 {
        for t in 1u32..=5 {
            let lhs = balanced_binom(a + 1, t);
            let r1 = &balanced_binom(a, t).shift(t as i64) + &balanced_binom(a, t - 1).shift(t as i64 - a - 1);
            let r2 = &balanced_binom(a, t).shift(-(t as i64)) + &balanced_binom(a, t - 1).shift(a + 1 - t as i64);
            if lhs != r1 || lhs != r2 || lhs.bar() != lhs {
                return Err(format!("balanced binomial recurrence at a={a} t={t}"));
            }
            if a >= 0 && gauss2(a + 1, t) != &gauss2(a, t - 1) + &gauss2(a, t).shift(2 * t as i64) {
                return Err(format!("gaussian recurrence at n={a} t={t}"));
            }
            n += 1;
        }
    }
    // bar multiplicativity over the structure constants of K(1:3, 2)
    let win = w(1, 3);
    let xi = enum_xi(&win, 2);
    let mut coeffs: Vec<Laurent> = Vec::new();
    for a in &xi {
        for b in xi.iter().filter(|b| b.ro() == a.co()) {
            coeffs.extend(structure_constants(a, b, &win, 2).map_err(e)?.into_values());
        }
    }
    for p in coeffs.windows(2) {
        if (&p[0] * &p[1]).bar() != &p[0].bar() * &p[1].bar() {
            return Err(format!("bar of ({}) * ({})", p[0], p[1]));
        }
        n += 1;
    }
    // every structure polynomial of the stabilization corpus specializes exactly
    let mats = small_tilde();
    for a in &mats {
        for b in mats.iter().filter(|b| b.ro() == a.co()) {
            for (c, f) in f_poly(a, b).map_err(e)? {
                for mode in [Specialization::One, Specialization::VPow(2), Specialization::VPow(3)] {
                    f.specialize(mode).map_err(|x| format!("f({a:?}, {b:?}, {c:?}) at {mode}: {x}"))?;
                    n += 1;
                }
            }
        }
    }
    // Hecke quadratic relation (T_s - v^2)(T_s + 1) = 0 as an extra ring sanity check
    let s = hecke::HeckeElem::capital(hecke::Perm::s(1, 2));
    let left = s.sub(&hecke::HeckeElem::one(2).scale(&Laurent::v(2)));
    let right = s.add(&hecke::HeckeElem::one(2));
    if !hecke::hecke_mult(&left, &right).map_err(e)?.is_zero() {
        return Err("quadratic relation".into());
    }
    Ok(format!("{n} identities and exact specializations"))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 9] = [
        ("oracle equivalence", oracle_equivalence),
        ("K(infinity) counterexample", counterexample),
        ("stabilization", stabilization),
        ("triangularity", triangularity),
        ("presentation relations", presentation),
        ("generator formulas", generator_formulas),
        ("weight multiplicities", weights),
        ("basis reports", bases),
        ("ring identities", ring_identities),
    ];
    let mut failed = 0;
    for (k, (name, run)) in criteria.iter().enumerate() {
        let t = Instant::now();
        match run() {
            Ok(msg) => println!("criterion {}: PASS {name}: {msg} ({:.1?})", k + 1, t.elapsed()),
            Err(msg) => {
                failed += 1;
                println!("criterion {}: FAIL {name}: {msg}", k + 1);
            }
        }
    }
    println!("acceptance: {}/9 criteria pass", 9 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
