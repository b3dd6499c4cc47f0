//! The finite-window algebras K(eta, r) in the basis [A], A in Xi(eta, r).
//!
//! Products are computed algebraically: an almost-diagonal left factor acts
//! by the closed fundamental formulas, and a general [A] is written as an
//! ordered product of almost-diagonal factors minus strictly lower terms,
//! recursing on the norm. The same engine, with a different coefficient rule,
//! drives the v'-stabilized algebra in `stab`.

use alloc::collections::BTreeMap;
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;

use spin::Mutex;

use crate::matrix::{Composition, IntMatZ, OrderCmp, Window};
use crate::ring::{gauss2, Coeff, Laurent};
use crate::Error;

/// Sparse combination of basis symbols.
pub type Combo<C> = BTreeMap<IntMatZ, C>;

pub(crate) fn combo_add<C: Coeff>(acc: &mut Combo<C>, m: IntMatZ, c: &C) {
    if c.is_zero() {
        return;
    }
    match acc.get_mut(&m) {
        Some(x) => {
            let s = x.add_ref(c);
            if s.is_zero() {
                acc.remove(&m);
            } else {
                *x = s;
            }
        }
        None => {
            acc.insert(m, c.clone());
        }
    }
}

pub(crate) fn combo_axpy<C: Coeff>(acc: &mut Combo<C>, k: &C, x: &Combo<C>) {
    for (m, c) in x {
        combo_add(acc, m.clone(), &k.mul_ref(c));
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Dir {
    /// Off-diagonal part b E_{h,h+1}.
    Upper,
    /// Off-diagonal part b E_{h+1,h}.
    Lower,
}

/// A matrix whose off-diagonal part is `b E_{h,h+1}` or `b E_{h+1,h}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AlmostDiag {
    pub base: IntMatZ,
    pub h: i64,
    pub b: i64,
    pub dir: Dir,
}

impl AlmostDiag {
    /// Checks that `base - b E` is diagonal and `b >= 0`. Diagonal entries
    /// may be negative here; the finite algebras check nonnegativity.
    pub fn new(base: IntMatZ, h: i64, b: i64, dir: Dir) -> Result<Self, Error> {
        let off = match dir {
            Dir::Upper => (h, h + 1),
            Dir::Lower => (h + 1, h),
        };
        let rest = base.add_unit(off.0, off.1, -b);
        if b < 0 || !rest.is_diagonal() {
            return Err(Error::Domain(alloc::format!("{base:?} is not almost diagonal at h={h}")));
        }
        Ok(AlmostDiag { base, h, b, dir })
    }

    /// Recognize a matrix with at most one off-diagonal entry, adjacent to
    /// the diagonal.
    pub fn from_matrix(m: &IntMatZ) -> Option<Self> {
        let mut off = m.entries().filter(|(i, j, _)| i != j);
        let first = off.next();
        if off.next().is_some() {
            return None;
        }
        match first {
            None => Some(AlmostDiag { base: m.clone(), h: 0, b: 0, dir: Dir::Upper }),
            Some((i, j, a)) if j == i + 1 && a > 0 => Some(AlmostDiag { base: m.clone(), h: i, b: a, dir: Dir::Upper }),
            Some((i, j, a)) if i == j + 1 && a > 0 => Some(AlmostDiag { base: m.clone(), h: j, b: a, dir: Dir::Lower }),
            _ => None,
        }
    }
}

/// One summand of a fundamental formula before its coefficient is formed.
pub(crate) struct FundTerm {
    pub mat: IntMatZ,
    /// Exponent beta or gamma.
    pub exp: i64,
    /// Pairs (N, t) contributing bar([[N t]]).
    pub gauss: Vec<(i64, u32)>,
    /// (diagonal entry, nu) for the v'-factor, present only when stabilized.
    pub stab: Option<(i64, u32)>,
}

fn compositions_over(idx: &[i64], caps: &[i64], total: i64) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    let mut cur = alloc::vec![0i64; idx.len()];
    fn rec(k: usize, left: i64, caps: &[i64], cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if k == cur.len() {
            if left == 0 {
                out.push(cur.clone());
            }
            return;
        }
        let rest: i64 = caps[k + 1..].iter().sum();
        let lo = (left - rest).max(0);
        let hi = left.min(caps[k]);
        for x in lo..=hi {
            cur[k] = x;
            rec(k + 1, left - x, caps, cur, out);
        }
        cur[k] = 0;
    }
    if total >= 0 {
        rec(0, total, caps, &mut cur, &mut out);
    }
    out
}

/// Expand [B][A] for almost-diagonal B with co(B) = ro(A) into summands.
/// In the stabilized variant the diagonal position of the receiving row is
/// unconstrained (up to b) and carries the v'-factor instead of a Gaussian.
pub(crate) fn fundamental_terms(b: &AlmostDiag, a: &IntMatZ, stabilized: bool) -> Vec<FundTerm> {
    if b.b == 0 {
        return alloc::vec![FundTerm { mat: a.clone(), exp: 0, gauss: Vec::new(), stab: None }];
    }
    let h = b.h;
    // Upper: mass moves from row h+1 (source) to row h (target); lower: the reverse.
    let (src, dst) = match b.dir {
        Dir::Upper => (h + 1, h),
        Dir::Lower => (h, h + 1),
    };
    let mut idx: Vec<i64> = a.row(src).filter(|(_, x)| *x > 0).map(|(j, _)| j).collect();
    if stabilized && !idx.contains(&src) {
        idx.push(src);
        idx.sort_unstable();
    }
    let caps: Vec<i64> = idx
        .iter()
        .map(|j| if stabilized && *j == src { b.b } else { a.get(src, *j).max(0) })
        .collect();
    let mut out = Vec::new();
    for nu in compositions_over(&idx, &caps, b.b) {
        let mut mat = a.clone();
        let mut exp = 0i64;
        let mut gauss = Vec::new();
        let mut stab = None;
        for (&i, &n) in idx.iter().zip(nu.iter()) {
            if stabilized && i == dst {
                stab = Some((a.get(dst, dst), n as u32));
            }
            if n == 0 {
                continue;
            }
            mat = mat.add_unit(dst, i, n).add_unit(src, i, -n);
            let f = match b.dir {
                // sum_{j>=i} a_{h,j} - sum_{j>i} a_{h+1,j}
                Dir::Upper => {
                    a.row(h).filter(|(j, _)| *j >= i).map(|e| e.1).sum::<i64>()
                        - a.row(h + 1).filter(|(j, _)| *j > i).map(|e| e.1).sum::<i64>()
                }
                // sum_{j<=i} a_{h+1,j} - sum_{j<i} a_{h,j}
                Dir::Lower => {
                    a.row(h + 1).filter(|(j, _)| *j <= i).map(|e| e.1).sum::<i64>()
                        - a.row(h).filter(|(j, _)| *j < i).map(|e| e.1).sum::<i64>()
                }
            };
            exp += f * n;
            if !(stabilized && i == dst) {
                gauss.push((a.get(dst, i) + n, n as u32));
            }
        }
        for x in 0..nu.len() {
            for y in x + 1..nu.len() {
                exp += nu[x] * nu[y];
            }
        }
        if stabilized && stab.is_none() {
            stab = Some((a.get(dst, dst), 0));
        }
        out.push(FundTerm { mat, exp, gauss, stab });
    }
    out
}

/// Coefficient rule plugged into the multiplication engine.
pub(crate) trait Rule: Send + Sync {
    type C: Coeff;
    const STABILIZED: bool;
    fn coefficient(&self, t: &FundTerm) -> Self::C;
}

pub(crate) struct SchurRule;

pub(crate) fn bar_gauss_product(g: &[(i64, u32)]) -> Laurent {
    g.iter().fold(Laurent::one(), |acc, (n, t)| &acc * &gauss2(*n, *t).bar())
}

impl Rule for SchurRule {
    type C = Laurent;
    const STABILIZED: bool = false;
    fn coefficient(&self, t: &FundTerm) -> Laurent {
        bar_gauss_product(&t.gauss).shift(t.exp)
    }
}

/// The factor sequence whose ordered product is [A] plus lower terms: upper
/// factors for entries above the diagonal (column descending, then row
/// descending, then h ascending), followed by lower factors (row ascending,
/// then column ascending, then h descending). Diagonals are fixed by
/// matching row sums from the left.
pub fn chain_factors(a: &IntMatZ) -> Vec<AlmostDiag> {
    let mut up: Vec<(i64, i64, i64, i64)> = Vec::new();
    let mut low: Vec<(i64, i64, i64, i64)> = Vec::new();
    for (i, j, x) in a.entries() {
        if i < j {
            for h in i..j {
                up.push((i, h, j, x));
            }
        } else if i > j {
            for h in j..i {
                low.push((j, h, i, x));
            }
        }
    }
    if up.is_empty() && low.is_empty() {
        return alloc::vec![AlmostDiag { base: a.clone(), h: 0, b: 0, dir: Dir::Upper }];
    }
    up.sort_by(|p, q| q.2.cmp(&p.2).then(q.0.cmp(&p.0)).then(p.1.cmp(&q.1)));
    low.sort_by(|p, q| p.2.cmp(&q.2).then(p.0.cmp(&q.0)).then(q.1.cmp(&p.1)));
    let mut out = Vec::with_capacity(up.len() + low.len());
    let mut rows = a.ro();
    let steps = up.iter().map(|t| (t, Dir::Upper)).chain(low.iter().map(|t| (t, Dir::Lower)));
    for (&(_, h, _, x), dir) in steps {
        let off = match dir {
            Dir::Upper => IntMatZ::unit(h, h + 1).scaled(x),
            Dir::Lower => IntMatZ::unit(h + 1, h).scaled(x),
        };
        let d = IntMatZ::diag(&rows.sub(&off.ro()));
        let base = d.add(&off);
        rows = base.co();
        out.push(AlmostDiag { base, h, b: x, dir });
    }
    debug_assert_eq!(rows, a.co());
    out
}

pub(crate) struct Engine<R: Rule> {
    rule: R,
    lower: Mutex<BTreeMap<IntMatZ, Arc<Combo<R::C>>>>,
    products: Mutex<BTreeMap<(IntMatZ, IntMatZ), Arc<Combo<R::C>>>>,
}

impl<R: Rule> Engine<R> {
    pub(crate) const fn new(rule: R) -> Self {
        Engine { rule, lower: Mutex::new(BTreeMap::new()), products: Mutex::new(BTreeMap::new()) }
    }

    pub(crate) fn clear(&self) {
        self.lower.lock().clear();
        self.products.lock().clear();
    }

    /// [B] X for almost-diagonal B; keys with co(B) != ro(A) vanish.
    pub(crate) fn fundamental(&self, b: &AlmostDiag, x: &Combo<R::C>) -> Combo<R::C> {
        let cb = b.base.co();
        let mut out = Combo::new();
        for (a, c) in x {
            if a.ro() != cb {
                continue;
            }
            for t in fundamental_terms(b, a, R::STABILIZED) {
                let k = self.rule.coefficient(&t);
                combo_add(&mut out, t.mat, &k.mul_ref(c));
            }
        }
        out
    }

    /// Ordered product of the chain of `a`, applied right to left.
    pub(crate) fn chain_product(&self, a: &IntMatZ) -> Combo<R::C> {
        let chain = chain_factors(a);
        let (last, rest) = chain.split_last().unwrap();
        let mut x = Combo::new();
        x.insert(last.base.clone(), R::C::one());
        for f in rest.iter().rev() {
            x = self.fundamental(f, &x);
        }
        x
    }

    /// chain(A) - [A]; every key is strictly below A.
    pub(crate) fn lower_terms(&self, a: &IntMatZ) -> Arc<Combo<R::C>> {
        if let Some(x) = self.lower.lock().get(a) {
            return x.clone();
        }
        let mut x = self.chain_product(a);
        let lead = x.remove(a);
        assert!(lead.as_ref().is_some_and(|c| *c == R::C::one()), "chain product of {a:?} must lead with [A]");
        for m in x.keys() {
            assert!(m.preceq(a) == OrderCmp::Less, "chain term {m:?} not below {a:?}");
        }
        let x = Arc::new(x);
        self.lower.lock().insert(a.clone(), x.clone());
        x
    }

    /// [A][B].
    pub(crate) fn basis_product(&self, a: &IntMatZ, b: &IntMatZ) -> Arc<Combo<R::C>> {
        if a.co() != b.ro() {
            return Arc::new(Combo::new());
        }
        let key = (a.clone(), b.clone());
        if let Some(x) = self.products.lock().get(&key) {
            return x.clone();
        }
        let mut single = Combo::new();
        single.insert(b.clone(), R::C::one());
        let out = if let Some(ad) = AlmostDiag::from_matrix(a) {
            self.fundamental(&ad, &single)
        } else {
            let chain = chain_factors(a);
            let mut x = single;
            for f in chain.iter().rev() {
                x = self.fundamental(f, &x);
            }
            for (c, k) in self.lower_terms(a).iter() {
                combo_axpy(&mut x, &k.neg_ref(), &self.basis_product(c, b));
            }
            x
        };
        let out = Arc::new(out);
        self.products.lock().insert(key, out.clone());
        out
    }

    pub(crate) fn multiply(&self, x: &Combo<R::C>, y: &Combo<R::C>) -> Combo<R::C> {
        let mut out = Combo::new();
        for (a, ca) in x {
            for (b, cb) in y {
                if a.co() != b.ro() {
                    continue;
                }
                combo_axpy(&mut out, &ca.mul_ref(cb), &self.basis_product(a, b));
            }
        }
        out
    }
}

static SCHUR: Engine<SchurRule> = Engine::new(SchurRule);

/// Drop memoized chain expansions and products.
pub fn clear_caches() {
    SCHUR.clear();
}

/// Element of K(eta, r).
#[derive(Clone, PartialEq, Eq)]
pub struct SchurElem {
    window: Window,
    r: i64,
    terms: Combo<Laurent>,
}

impl SchurElem {
    pub fn zero(window: Window, r: i64) -> Self {
        SchurElem { window, r, terms: Combo::new() }
    }

    fn check_key(window: &Window, r: i64, a: &IntMatZ) -> Result<(), Error> {
        if !a.is_nonneg() || a.sigma() != r || !a.support_in(window) {
            return Err(Error::Domain(alloc::format!("{a:?} is not in Xi({window}, {r})")));
        }
        Ok(())
    }

    /// The basis element [A].
    pub fn basis(window: Window, r: i64, a: IntMatZ) -> Result<Self, Error> {
        Self::check_key(&window, r, &a)?;
        let mut terms = Combo::new();
        terms.insert(a, Laurent::one());
        Ok(SchurElem { window, r, terms })
    }

    pub fn from_terms<I: IntoIterator<Item = (IntMatZ, Laurent)>>(window: Window, r: i64, it: I) -> Result<Self, Error> {
        let mut terms = Combo::new();
        for (a, c) in it {
            Self::check_key(&window, r, &a)?;
            combo_add(&mut terms, a, &c);
        }
        Ok(SchurElem { window, r, terms })
    }

    /// Sum of all [diag lambda], lambda in Lambda(eta, r).
    pub fn identity(window: Window, r: i64) -> Self {
        let terms = crate::matrix::enum_compositions(&window, r, None)
            .into_iter()
            .map(|l| (IntMatZ::diag(&l), Laurent::one()))
            .collect();
        SchurElem { window, r, terms }
    }

    pub fn window(&self) -> Window {
        self.window
    }

    pub fn degree(&self) -> i64 {
        self.r
    }

    pub fn terms(&self) -> &Combo<Laurent> {
        &self.terms
    }

    pub fn coeff(&self, a: &IntMatZ) -> Laurent {
        self.terms.get(a).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    fn same_space(&self, o: &SchurElem) -> Result<(), Error> {
        if self.window != o.window || self.r != o.r {
            return Err(Error::Domain(alloc::format!(
                "K({}, {}) vs K({}, {})",
                self.window, self.r, o.window, o.r
            )));
        }
        Ok(())
    }

    pub fn add(&self, o: &SchurElem) -> Result<SchurElem, Error> {
        self.same_space(o)?;
        let mut t = self.terms.clone();
        for (a, c) in &o.terms {
            combo_add(&mut t, a.clone(), c);
        }
        Ok(SchurElem { window: self.window, r: self.r, terms: t })
    }

    pub fn sub(&self, o: &SchurElem) -> Result<SchurElem, Error> {
        self.add(&o.scale(&Laurent::constant(-1)))
    }

    pub fn scale(&self, k: &Laurent) -> SchurElem {
        let mut t = Combo::new();
        for (a, c) in &self.terms {
            combo_add(&mut t, a.clone(), &(k * c));
        }
        SchurElem { window: self.window, r: self.r, terms: t }
    }

    /// Move to a larger window (same basis symbols).
    pub fn embed(&self, w: Window) -> Result<SchurElem, Error> {
        if !w.contains_window(&self.window) {
            return Err(Error::Domain(alloc::format!("{w} does not contain {}", self.window)));
        }
        Ok(SchurElem { window: w, r: self.r, terms: self.terms.clone() })
    }
}

impl fmt::Display for SchurElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_combo(f, &self.terms)
    }
}

impl fmt::Debug for SchurElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "K({}, {}): {}", self.window, self.r, self)
    }
}

/// Renders `c*[A] + ...` with unit coefficients omitted; zero renders `0`.
pub fn fmt_combo<C: Coeff>(f: &mut fmt::Formatter<'_>, terms: &Combo<C>) -> fmt::Result {
    if terms.is_empty() {
        return f.write_str("0");
    }
    for (k, (a, c)) in terms.iter().enumerate() {
        if k > 0 {
            f.write_str(" + ")?;
        }
        if *c == C::one() {
            write!(f, "[{a}]")?;
        } else {
            write!(f, "({c})*[{a}]")?;
        }
    }
    Ok(())
}

/// [B] X via the fundamental formulas.
pub fn fundamental_left(b: &AlmostDiag, x: &SchurElem) -> Result<SchurElem, Error> {
    SchurElem::check_key(&x.window, x.r, &b.base)?;
    Ok(SchurElem { window: x.window, r: x.r, terms: SCHUR.fundamental(b, &x.terms) })
}

/// Factor sequence for A in Xi(eta, r); every factor lies in Xi(eta, r).
pub fn chevalley_chain(a: &IntMatZ, window: &Window, r: i64) -> Result<Vec<AlmostDiag>, Error> {
    SchurElem::check_key(window, r, a)?;
    let chain = chain_factors(a);
    for f in &chain {
        if !f.base.is_nonneg() || !f.base.support_in(window) {
            return Err(Error::Domain(alloc::format!("chain factor {:?} leaves Xi", f.base)));
        }
    }
    Ok(chain)
}

/// Expand the ordered product of the chain of A.
pub fn chain_product(a: &IntMatZ, window: &Window, r: i64) -> Result<SchurElem, Error> {
    chevalley_chain(a, window, r)?;
    Ok(SchurElem { window: *window, r, terms: SCHUR.chain_product(a) })
}

pub fn multiply(x: &SchurElem, y: &SchurElem) -> Result<SchurElem, Error> {
    x.same_space(y)?;
    Ok(SchurElem { window: x.window, r: x.r, terms: SCHUR.multiply(&x.terms, &y.terms) })
}

/// [A][B] for nonnegative A, B (window-free).
pub fn basis_product(a: &IntMatZ, b: &IntMatZ) -> Combo<Laurent> {
    (*SCHUR.basis_product(a, b)).clone()
}

/// Structure constants g_{A,B,C} in the e-basis: e_A e_B = sum g e_C, with
/// [A] = v^{-d_A} e_A. Each value is a polynomial in v^2.
pub fn structure_constants(a: &IntMatZ, b: &IntMatZ, window: &Window, r: i64) -> Result<BTreeMap<IntMatZ, Laurent>, Error> {
    SchurElem::check_key(window, r, a)?;
    SchurElem::check_key(window, r, b)?;
    let mut out = BTreeMap::new();
    let base = a.d() + b.d();
    for (c, k) in SCHUR.basis_product(a, b).iter() {
        let g = k.shift(base - c.d());
        if !g.is_even() {
            return Err(Error::NotExact(alloc::format!("g_{{{a:?},{b:?},{c:?}}} = {g} is not a polynomial in v^2")));
        }
        out.insert(c.clone(), g);
    }
    Ok(out)
}

/// Convenience: sum of [A + diag lambda] over lambda in Lambda(eta, r - sigma(A)),
/// weighted by v^{lambda . j}.
pub fn completion_sum(a: &IntMatZ, j: &Composition, window: &Window, r: i64) -> Result<SchurElem, Error> {
    let mut terms = Combo::new();
    if !a.support_in(window) {
        return Err(Error::Domain(alloc::format!("{a:?} escapes {window}")));
    }
    for l in crate::matrix::enum_compositions(window, r - a.sigma(), None) {
        combo_add(&mut terms, a.add(&IntMatZ::diag(&l)), &Laurent::v(l.dot(j)));
    }
    Ok(SchurElem { window: *window, r, terms })
}
