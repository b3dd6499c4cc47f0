//! Machine checks at finite windows: the defining relations of the
//! presentation, idempotent commutation, monomial and completion bases, and
//! the flag-counting cross-check.

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use crate::linalg;
use crate::matrix::{enum_compositions, enum_xi, enum_xi_pm, Composition, IntMatZ, Window};
use crate::oracle::{self, OracleConfig};
use crate::quantum::{self, GenWord, Token, VElem};
use crate::ring::{balanced_binom, Laurent};
use crate::schur::{self, SchurElem};
use crate::Error;

/// Outcome of one claim over all its instances at one parameter set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Claim {
    pub id: &'static str,
    pub params: String,
    pub checked: usize,
    pub pass: bool,
    /// First failing instance.
    pub witness: Option<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Report {
    pub claims: Vec<Claim>,
}

impl Report {
    pub fn all_pass(&self) -> bool {
        self.claims.iter().all(|c| c.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Claim> {
        self.claims.iter().filter(|c| !c.pass)
    }

    pub fn extend(&mut self, o: Report) {
        self.claims.extend(o.claims);
        self.claims.sort_by(|a, b| a.id.cmp(b.id).then_with(|| a.params.cmp(&b.params)));
    }

    pub fn get(&self, id: &str) -> Option<&Claim> {
        self.claims.iter().find(|c| c.id == id)
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.claims {
            let tag = if c.pass { "PASS" } else { "FAIL" };
            write!(f, "{tag} {} [{}] {} instance(s)", c.id, c.params, c.checked)?;
            if let Some(w) = &c.witness {
                write!(f, "; witness: {w}")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// Accumulates instances of one claim.
struct Tally {
    id: &'static str,
    params: String,
    checked: usize,
    witness: Option<String>,
}

impl Tally {
    fn new(id: &'static str, params: &str) -> Self {
        Tally { id, params: params.to_string(), checked: 0, witness: None }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok && self.witness.is_none() {
            self.witness = Some(what());
        }
    }

    fn done(self) -> Claim {
        Claim { id: self.id, pass: self.witness.is_none(), params: self.params, checked: self.checked, witness: self.witness }
    }
}

/// Test hooks for negative controls.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct VerifyOptions {
    /// Scale the right side of relation (g) by v so that it must fail.
    pub perturb: bool,
}

/// Evaluation context for words in K(eta, r).
struct Ctx {
    w: Window,
    r: i64,
    cache: BTreeMap<Vec<Token>, SchurElem>,
}

impl Ctx {
    fn new(w: Window, r: i64) -> Self {
        Ctx { w, r, cache: BTreeMap::new() }
    }

    fn ev(&mut self, word: &[Token]) -> SchurElem {
        if let Some(x) = self.cache.get(word) {
            return x.clone();
        }
        let x = quantum::evaluate_word(&GenWord(word.to_vec()), &self.w, self.r).expect("tokens lie in the window");
        self.cache.insert(word.to_vec(), x.clone());
        x
    }

    fn zero(&self) -> SchurElem {
        SchurElem::zero(self.w, self.r)
    }

    fn one(&self) -> SchurElem {
        SchurElem::identity(self.w, self.r)
    }

    /// sum of c * word.
    fn combo(&mut self, terms: &[(Laurent, Vec<Token>)]) -> SchurElem {
        let mut acc = self.zero();
        for (c, word) in terms {
            acc = acc.add(&self.ev(word).scale(c)).unwrap();
        }
        acc
    }
}

fn mul(x: &SchurElem, y: &SchurElem) -> SchurElem {
    schur::multiply(x, y).expect("same algebra")
}

fn e(h: i64) -> Token {
    Token::E(h, 1)
}

fn f(h: i64) -> Token {
    Token::F(h, 1)
}

fn k(i: i64) -> Token {
    Token::Kpow(Composition::unit(i))
}

fn k_lambda(l: &Composition) -> Vec<Token> {
    l.parts().iter().map(|(i, x)| Token::Kbinom(*i, 0, *x as u32)).collect()
}

fn l(s: &str) -> Laurent {
    s.parse().unwrap()
}

/// prod_i [k_i; t_i]! with [x; t]! = (x - 1)(x - v) ... (x - v^{t-1}).
fn bracket_product(ctx: &mut Ctx, t: &Composition) -> SchurElem {
    let mut acc = ctx.one();
    for (i, ti) in t.parts() {
        let ki = ctx.ev(&[k(*i)]);
        for s in 0..*ti {
            let factor = ki.sub(&ctx.one().scale(&Laurent::v(s))).unwrap();
            acc = mul(&acc, &factor);
        }
    }
    acc
}

fn params(w: &Window, r: i64) -> String {
    alloc::format!("eta={w} r={r}")
}

/// Relations (a)-(g), the KKK lemma, idempotent commutation and the
/// divided-power commutator, all evaluated in K(eta, r).
pub fn verify_presentation(w: &Window, r: i64, opts: VerifyOptions) -> Result<Report, Error> {
    if w.len() < 2 || r < 0 {
        return Err(Error::Domain(alloc::format!("presentation checks need |eta| >= 2, got {w} with r = {r}")));
    }
    let p = params(w, r);
    let mut ctx = Ctx::new(*w, r);
    let idx: Vec<i64> = w.indices().collect();
    let hs: Vec<i64> = w.without_last().collect();
    let mut claims = Vec::new();

    let mut t = Tally::new("pres.a", &p);
    for &i in &idx {
        for &j in &idx {
            let ok = ctx.ev(&[k(i), k(j)]) == ctx.ev(&[k(j), k(i)]);
            t.check(ok, || alloc::format!("k{i} k{j}"));
        }
    }
    claims.push(t.done());

    let mut t = Tally::new("pres.b", &p);
    for tt in enum_compositions(w, r + 1, None) {
        let ok = bracket_product(&mut ctx, &tt).is_zero();
        t.check(ok, || alloc::format!("t = {tt}"));
    }
    claims.push(t.done());

    let mut t = Tally::new("pres.c", &p);
    for &i in &hs {
        for &j in &hs {
            if (i - j).abs() <= 1 {
                continue;
            }
            t.check(ctx.ev(&[e(i), e(j)]) == ctx.ev(&[e(j), e(i)]), || alloc::format!("e{i} e{j}"));
            t.check(ctx.ev(&[f(i), f(j)]) == ctx.ev(&[f(j), f(i)]), || alloc::format!("f{i} f{j}"));
        }
    }
    claims.push(t.done());

    for (id, g) in [("pres.d", e as fn(i64) -> Token), ("pres.e", f as fn(i64) -> Token)] {
        let mut t = Tally::new(id, &p);
        for &i in &hs {
            for &j in &hs {
                if (i - j).abs() != 1 {
                    continue;
                }
                let s = ctx.combo(&[
                    (Laurent::one(), alloc::vec![g(i), g(i), g(j)]),
                    (l("-v - v^-1"), alloc::vec![g(i), g(j), g(i)]),
                    (Laurent::one(), alloc::vec![g(j), g(i), g(i)]),
                ]);
                t.check(s.is_zero(), || alloc::format!("i={i} j={j}: {s}"));
            }
        }
        claims.push(t.done());
    }

    let mut t = Tally::new("pres.f", &p);
    for &i in &idx {
        for &j in &hs {
            let ex = (i == j) as i64 - (i == j + 1) as i64;
            let lhs = ctx.ev(&[k(i), e(j)]);
            let rhs = ctx.ev(&[e(j), k(i)]).scale(&Laurent::v(ex));
            t.check(lhs == rhs, || alloc::format!("k{i} e{j}"));
            let lhs = ctx.ev(&[k(i), f(j)]);
            let rhs = ctx.ev(&[f(j), k(i)]).scale(&Laurent::v(-ex));
            t.check(lhs == rhs, || alloc::format!("k{i} f{j}"));
        }
    }
    claims.push(t.done());

    // (g) multiplied through by k_i k_{i+1} (v - v^-1)
    let mut t = Tally::new("pres.g", &p);
    for &i in &hs {
        for &j in &hs {
            let comm = ctx.combo(&[(Laurent::one(), alloc::vec![e(i), f(j)]), (l("-1"), alloc::vec![f(j), e(i)])]);
            let lhs = mul(&comm, &ctx.ev(&[k(i), k(i + 1)])).scale(&l("v - v^-1"));
            let mut rhs = if i == j {
                let two = |x: i64| Token::Kpow(Composition::unit(x).scaled(2));
                ctx.combo(&[(Laurent::one(), alloc::vec![two(i)]), (l("-1"), alloc::vec![two(i + 1)])])
            } else {
                ctx.zero()
            };
            if opts.perturb {
                rhs = rhs.scale(&Laurent::v(1));
            }
            t.check(lhs == rhs, || alloc::format!("i={i} j={j}: lhs {lhs} vs rhs {rhs}"));
        }
    }
    claims.push(t.done());

    let mut t = Tally::new("kkk.1", &p);
    for s in [r + 1, r + 2] {
        for tt in enum_compositions(w, s, None) {
            let ok = bracket_product(&mut ctx, &tt).is_zero();
            t.check(ok, || alloc::format!("t = {tt}"));
        }
    }
    claims.push(t.done());

    let mut t = Tally::new("kkk.2", &p);
    for s in [r, r + 1] {
        for tt in enum_compositions(w, s, None) {
            let got = ctx.ev(&k_lambda(&tt));
            let want = if s == r { SchurElem::basis(*w, r, IntMatZ::diag(&tt))? } else { ctx.zero() };
            t.check(got == want, || alloc::format!("t = {tt}: {got}"));
        }
    }
    claims.push(t.done());

    let mut t = Tally::new("kkk.3", &p);
    for lam in enum_compositions(w, r, None) {
        let kl = k_lambda(&lam);
        let base = ctx.ev(&kl);
        for &i in &idx {
            let mut word = alloc::vec![k(i)];
            word.extend(kl.iter().cloned());
            let ok = ctx.ev(&word) == base.scale(&Laurent::v(lam.get(i)));
            t.check(ok, || alloc::format!("k{i} k_{lam}"));
            for c in -1..=1 {
                for s in 0..=2u32 {
                    let mut word = alloc::vec![Token::Kbinom(i, c, s)];
                    word.extend(kl.iter().cloned());
                    let ok = ctx.ev(&word) == base.scale(&balanced_binom(lam.get(i) + c, s));
                    t.check(ok, || alloc::format!("[k{i}; {c} over {s}] k_{lam}"));
                }
            }
        }
    }
    claims.push(t.done());

    claims.extend(alp_claims(&mut ctx, &p)?);

    let mut t = Tally::new("commute.divided", &p);
    for &i in &hs {
        for kk in 1..=3u32 {
            for ll in 1..=3u32 {
                let lhs = ctx.ev(&[Token::E(i, kk), Token::F(i, ll)]);
                let mut terms = Vec::new();
                for s in 0..=kk.min(ll) {
                    let mut word = Vec::new();
                    if ll > s {
                        word.push(Token::F(i, ll - s));
                    }
                    word.push(Token::KtBinom(i, 2 * s as i64 - kk as i64 - ll as i64, s));
                    if kk > s {
                        word.push(Token::E(i, kk - s));
                    }
                    terms.push((Laurent::one(), word));
                }
                let rhs = ctx.combo(&terms);
                t.check(lhs == rhs, || alloc::format!("i={i} k={kk} l={ll}"));
            }
        }
    }
    claims.push(t.done());

    let mut rep = Report::default();
    rep.extend(Report { claims });
    Ok(rep)
}

/// e_i k_lambda = k_{lambda+alpha_i} e_i and f_i k_lambda = k_{lambda-alpha_i} f_i
/// (zero when the shifted weight leaves Lambda), and the same for the
/// monomials e^(A+), f^(A-) with sigma(A) <= 2.
fn alp_claims(ctx: &mut Ctx, p: &str) -> Result<Vec<Claim>, Error> {
    let (w, r) = (ctx.w, ctx.r);
    let lams = enum_compositions(&w, r, None);
    let mut t = Tally::new("alp.simple", p);
    for lam in &lams {
        for h in w.without_last() {
            for (g, shift) in [(e(h), Composition::alpha(h)), (f(h), Composition::alpha(h).scaled(-1))] {
                let mut lhs = alloc::vec![g.clone()];
                lhs.extend(k_lambda(lam));
                let mu = lam.add(&shift);
                let rhs = if mu.is_nonneg() {
                    let mut word = k_lambda(&mu);
                    word.push(g.clone());
                    ctx.ev(&word)
                } else {
                    ctx.zero()
                };
                t.check(ctx.ev(&lhs) == rhs, || alloc::format!("{g} k_{lam}"));
            }
        }
    }
    let mut claims = alloc::vec![t.done()];

    // Upper monomials: condition lambda >= sigma(A+), new weight lambda - co + ro.
    // Lower monomials: new weight lambda - co + ro as for the upper case, with
    // the condition read on that weight: it must be nonnegative and >= sigma(A-).
    let mut t = Tally::new("alp.general", p);
    for s in 1..=2 {
        for a in enum_xi_pm(&w, s) {
            let (_, up, down) = a.split_pm();
            for (part, upper) in [(up, true), (down, false)] {
                if part.is_zero() {
                    continue;
                }
                let word = quantum::pbw_word(&part, &Composition::zero())?.0;
                let sig = part.bold_sigma();
                for lam in &lams {
                    let mu = lam.sub(&part.co()).add(&part.ro());
                    let live = if upper { sig.le(lam) } else { mu.is_nonneg() && sig.le(&mu) };
                    let mut lhs = word.clone();
                    lhs.extend(k_lambda(lam));
                    let rhs = if live {
                        let mut rw = k_lambda(&mu);
                        rw.extend(word.iter().cloned());
                        ctx.ev(&rw)
                    } else {
                        ctx.zero()
                    };
                    t.check(ctx.ev(&lhs) == rhs, || alloc::format!("{} k_{lam}", GenWord(word.clone())));
                }
            }
        }
    }
    claims.push(t.done());
    Ok(claims)
}

fn laurent_table(elems: &[SchurElem]) -> Vec<Vec<Laurent>> {
    let mut keys: Vec<&IntMatZ> = elems.iter().flat_map(|x| x.terms().keys()).collect();
    keys.sort();
    keys.dedup();
    elems.iter().map(|x| keys.iter().map(|k| x.coeff(k)).collect()).collect()
}

/// Indices j in N^{eta minus its last point} with sigma(j) <= s.
fn j_vectors(w: &Window, s: i64) -> Vec<Composition> {
    if w.len() < 2 || s < 0 {
        return alloc::vec![Composition::zero()];
    }
    let head = Window { lo: w.lo, hi: w.hi - 1 };
    (0..=s).flat_map(|t| enum_compositions(&head, t, None)).collect()
}

fn unitriangular(x: &SchurElem, a: &IntMatZ) -> bool {
    x.coeff(a).is_one() && x.terms().keys().all(|b| b == a || b.strictly_below(a))
}

/// The four basis checks at (eta, r).
pub fn basis_report(w: &Window, r: i64) -> Result<Report, Error> {
    let p = params(w, r);
    let dim = enum_xi(w, r).len();
    let mut claims = Vec::new();

    let mut t = Tally::new("basis.m_triangular", &p);
    let mut control = Tally::new("basis.m_control", &p);
    let mut control_hit = false;
    for a in enum_xi(w, r) {
        let m = quantum::m_monomial(&a, w, r)?;
        t.check(unitriangular(&m, &a), || alloc::format!("m^({a:?}) = {m}"));
        let bare = quantum::m_monomial_without_k(&a, w, r)?;
        control_hit |= !unitriangular(&bare, &a);
    }
    control.check(control_hit, || String::from("dropping k_nu never broke unitriangularity"));
    claims.push(t.done());
    claims.push(control.done());

    let mut family_n = Vec::new();
    let mut family_a = Vec::new();
    for s in 0..=r {
        for a in enum_xi_pm(w, s) {
            for j in j_vectors(w, r - s) {
                family_n.push(quantum::n_monomial(&a, &j, w, r)?);
                family_a.push(quantum::project_window(&VElem::completion(a.clone(), j, r)?, w)?);
            }
        }
    }
    for (id, fam) in [("basis.n_independent", &family_n), ("basis.ajr_independent", &family_a)] {
        let mut t = Tally::new(id, &p);
        let ind = linalg::rows_independent(&laurent_table(fam));
        t.check(ind, || alloc::format!("{} elements are dependent", fam.len()));
        t.check(fam.len() == dim, || alloc::format!("{} elements for dimension {dim}", fam.len()));
        claims.push(t.done());
    }

    let mut t = Tally::new("basis.handy", &p);
    let lams = enum_compositions(w, r, None);
    let mut dets: BTreeMap<Composition, bool> = BTreeMap::new();
    for s in 0..=r {
        for a in enum_xi_pm(w, s) {
            let sig = a.bold_sigma();
            let rows: Vec<&Composition> = lams.iter().filter(|lam| sig.le(lam)).collect();
            let cols = j_vectors(w, r - s);
            if rows.len() != cols.len() {
                t.check(false, || alloc::format!("{a:?}: |Lambda| = {} but |Lambda'| = {}", rows.len(), cols.len()));
                continue;
            }
            let nonzero = *dets.entry(sig.clone()).or_insert_with(|| {
                let m: Vec<Vec<Laurent>> = rows.iter().map(|lam| cols.iter().map(|j| Laurent::v(lam.dot(j))).collect()).collect();
                !linalg::det_laurent(&m).unwrap().is_zero()
            });
            t.check(nonzero, || alloc::format!("{a:?}: determinant vanishes"));
        }
    }
    claims.push(t.done());

    let mut rep = Report::default();
    rep.extend(Report { claims });
    Ok(rep)
}

/// Algebraic structure constants against flag counts, every basis pair of
/// K(eta, r) at each q.
pub fn oracle_report(w: &Window, r: i64, qs: &[u32], cfg: &OracleConfig) -> Result<Report, Error> {
    let p = alloc::format!("{} q={qs:?}", params(w, r));
    let basis = enum_xi(w, r);
    let mut t = Tally::new("oracle.structure_constants", &p);
    for &q in qs {
        for c in &basis {
            let counts = oracle::g_table(c, w, q, cfg)?;
            for a in basis.iter().filter(|a| a.ro() == c.ro()) {
                for b in basis.iter().filter(|b| b.co() == c.co() && b.ro() == a.co()) {
                    let g = schur::structure_constants(a, b, w, r)?;
                    let alg = match g.get(c) {
                        Some(x) => x.eval_q(q as i64)?,
                        None => num_rational::BigRational::from_integer(0.into()),
                    };
                    let cnt = counts.get(&(a.clone(), b.clone())).copied().unwrap_or(0);
                    let ok = alg == num_rational::BigRational::from_integer(cnt.into());
                    t.check(ok, || alloc::format!("q={q} A={a:?} B={b:?} C={c:?}: algebra {alg}, count {cnt}"));
                }
            }
        }
    }
    Ok(Report { claims: alloc::vec![t.done()] })
}
