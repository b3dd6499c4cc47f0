//! Hecke algebra of the symmetric group, tensor space with its two actions,
//! distinguished double coset representatives and the matrix dictionary.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::matrix::{Composition, IntMatZ, Window};
use crate::quantum::Token;
use crate::ring::{qfact, Laurent};
use crate::schur::SchurElem;
use crate::Error;

/// Permutation of {1..r} in one-line notation, stored 0-based.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm(Vec<usize>);

impl Perm {
    pub fn identity(r: usize) -> Self {
        Perm((0..r).collect())
    }

    /// One-line notation with values in 1..=r.
    pub fn from_one_line(xs: &[usize]) -> Result<Self, Error> {
        let r = xs.len();
        let mut seen = alloc::vec![false; r];
        for &x in xs {
            if x == 0 || x > r || seen[x - 1] {
                return Err(Error::Parse(alloc::format!("{xs:?} is not a permutation")));
            }
            seen[x - 1] = true;
        }
        Ok(Perm(xs.iter().map(|x| x - 1).collect()))
    }

    /// Adjacent transposition (j, j+1), 1 <= j < r.
    pub fn s(j: usize, r: usize) -> Self {
        assert!(j >= 1 && j < r);
        let mut p = Self::identity(r);
        p.0.swap(j - 1, j);
        p
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    /// Image of the 0-based point k.
    pub fn at(&self, k: usize) -> usize {
        self.0[k]
    }

    pub fn one_line(&self) -> Vec<usize> {
        self.0.iter().map(|x| x + 1).collect()
    }

    /// Inversion count.
    pub fn length(&self) -> usize {
        let p = &self.0;
        (0..p.len()).map(|i| (i + 1..p.len()).filter(|&j| p[i] > p[j]).count()).sum()
    }

    /// Composite self after o: k -> self(o(k)).
    pub fn compose(&self, o: &Perm) -> Perm {
        Perm(o.0.iter().map(|&k| self.0[k]).collect())
    }

    pub fn inverse(&self) -> Perm {
        let mut q = alloc::vec![0; self.0.len()];
        for (k, &x) in self.0.iter().enumerate() {
            q[x] = k;
        }
        Perm(q)
    }

    /// l(w s_j) > l(w).
    pub fn right_ascent(&self, j: usize) -> bool {
        self.0[j - 1] < self.0[j]
    }

    /// w s_j.
    pub fn times_s(&self, j: usize) -> Perm {
        let mut p = self.clone();
        p.0.swap(j - 1, j);
        p
    }

    /// Reduced word [j_1, ..., j_l] with w = s_{j_1} ... s_{j_l}.
    pub fn reduced_word(&self) -> Vec<usize> {
        let mut w = self.clone();
        let mut out = Vec::new();
        while let Some(j) = (1..w.0.len()).find(|&j| !w.right_ascent(j)) {
            out.push(j);
            w = w.times_s(j);
        }
        out.reverse();
        out
    }

    /// All of S_r in lexicographic order of one-line notation.
    pub fn all(r: usize) -> Vec<Perm> {
        let mut out = Vec::new();
        let mut cur: Vec<usize> = (0..r).collect();
        loop {
            out.push(Perm(cur.clone()));
            // next lexicographic permutation
            let Some(i) = (1..r).rev().find(|&i| cur[i - 1] < cur[i]) else {
                break;
            };
            let j = (i..r).rev().find(|&j| cur[j] > cur[i - 1]).unwrap();
            cur.swap(i - 1, j);
            cur[i..].reverse();
        }
        out
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (k, x) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{}", x + 1)?;
        }
        f.write_str("]")
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl FromStr for Perm {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        let inner = s.trim().strip_prefix('[').and_then(|t| t.strip_suffix(']'));
        let inner = inner.ok_or_else(|| Error::Parse(alloc::format!("permutation {s:?}")))?;
        let xs: Vec<usize> = inner
            .split(',')
            .map(str::trim)
            .filter(|t| !t.is_empty())
            .map(|t| t.parse().map_err(|_| Error::Parse(alloc::format!("permutation {s:?}"))))
            .collect::<Result<_, _>>()?;
        Perm::from_one_line(&xs)
    }
}

/// Which basis a coefficient table refers to: T_w = v^{l(w)} script-T_w.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Basis {
    Script,
    Capital,
}

/// Element of the Hecke algebra, stored in the script basis.
#[derive(Clone, PartialEq, Eq)]
pub struct HeckeElem {
    r: usize,
    terms: BTreeMap<Perm, Laurent>,
}

fn add_to<K: Ord>(m: &mut BTreeMap<K, Laurent>, k: K, c: &Laurent) {
    if c.is_zero() {
        return;
    }
    let s = match m.get(&k) {
        Some(x) => x + c,
        None => c.clone(),
    };
    if s.is_zero() {
        m.remove(&k);
    } else {
        m.insert(k, s);
    }
}

fn v_minus_inv() -> Laurent {
    &Laurent::v(1) - &Laurent::v(-1)
}

impl HeckeElem {
    pub fn zero(r: usize) -> Self {
        HeckeElem { r, terms: BTreeMap::new() }
    }

    pub fn one(r: usize) -> Self {
        Self::script(Perm::identity(r))
    }

    pub fn script(w: Perm) -> Self {
        let r = w.degree();
        let mut terms = BTreeMap::new();
        terms.insert(w, Laurent::one());
        HeckeElem { r, terms }
    }

    pub fn capital(w: Perm) -> Self {
        let l = w.length() as i64;
        Self::script(w).scale(&Laurent::v(l))
    }

    pub fn from_terms<I: IntoIterator<Item = (Perm, Laurent)>>(r: usize, basis: Basis, it: I) -> Result<Self, Error> {
        let mut terms = BTreeMap::new();
        for (w, c) in it {
            if w.degree() != r {
                return Err(Error::Domain(alloc::format!("{w} is not in S_{r}")));
            }
            let c = match basis {
                Basis::Script => c,
                Basis::Capital => c.shift(w.length() as i64),
            };
            add_to(&mut terms, w, &c);
        }
        Ok(HeckeElem { r, terms })
    }

    pub fn degree(&self) -> usize {
        self.r
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Coefficients in the requested basis.
    pub fn coeffs(&self, basis: Basis) -> BTreeMap<Perm, Laurent> {
        match basis {
            Basis::Script => self.terms.clone(),
            Basis::Capital => self.terms.iter().map(|(w, c)| (w.clone(), c.shift(-(w.length() as i64)))).collect(),
        }
    }

    pub fn coeff(&self, w: &Perm, basis: Basis) -> Laurent {
        let c = self.terms.get(w).cloned().unwrap_or_else(Laurent::zero);
        match basis {
            Basis::Script => c,
            Basis::Capital => c.shift(-(w.length() as i64)),
        }
    }

    pub fn add(&self, o: &HeckeElem) -> HeckeElem {
        let mut t = self.terms.clone();
        for (w, c) in &o.terms {
            add_to(&mut t, w.clone(), c);
        }
        HeckeElem { r: self.r, terms: t }
    }

    pub fn sub(&self, o: &HeckeElem) -> HeckeElem {
        self.add(&o.scale(&Laurent::from(-1)))
    }

    pub fn scale(&self, k: &Laurent) -> HeckeElem {
        if k.is_zero() {
            return Self::zero(self.r);
        }
        HeckeElem { r: self.r, terms: self.terms.iter().map(|(w, c)| (w.clone(), c * k)).collect() }
    }

    /// X script-T_{s_j}.
    pub fn times_s(&self, j: usize) -> HeckeElem {
        let mut t = BTreeMap::new();
        for (w, c) in &self.terms {
            let ws = w.times_s(j);
            if w.right_ascent(j) {
                add_to(&mut t, ws, c);
            } else {
                add_to(&mut t, w.clone(), &(c * &v_minus_inv()));
                add_to(&mut t, ws, c);
            }
        }
        HeckeElem { r: self.r, terms: t }
    }

    /// Coefficient sum in the given basis, rendered as "(c)*T[w]" terms.
    pub fn render(&self, basis: Basis) -> String {
        let c = self.coeffs(basis);
        if c.is_empty() {
            return String::from("0");
        }
        let sym = match basis {
            Basis::Script => "S",
            Basis::Capital => "T",
        };
        let parts: Vec<String> = c.iter().map(|(w, k)| alloc::format!("({k})*{sym}{w}")).collect();
        parts.join(" + ")
    }
}

impl fmt::Display for HeckeElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(Basis::Capital))
    }
}

impl fmt::Debug for HeckeElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "HeckeElem({})", self.render(Basis::Script))
    }
}

fn check_degree(a: usize, b: usize) -> Result<(), Error> {
    if a != b {
        return Err(Error::Domain(alloc::format!("degree mismatch: {a} vs {b}")));
    }
    Ok(())
}

pub fn hecke_mult(x: &HeckeElem, y: &HeckeElem) -> Result<HeckeElem, Error> {
    check_degree(x.r, y.r)?;
    let mut out = HeckeElem::zero(x.r);
    for (w, c) in &y.terms {
        let mut p = x.clone();
        for j in w.reduced_word() {
            p = p.times_s(j);
        }
        out = out.add(&p.scale(c));
    }
    Ok(out)
}

/// Element of the tensor space: words of length r over a window.
#[derive(Clone, PartialEq, Eq)]
pub struct TensorElem {
    r: usize,
    window: Window,
    terms: BTreeMap<Vec<i64>, Laurent>,
}

impl TensorElem {
    pub fn zero(window: Window, r: usize) -> Self {
        TensorElem { r, window, terms: BTreeMap::new() }
    }

    pub fn word(window: Window, w: &[i64]) -> Result<Self, Error> {
        Self::from_terms(window, w.len(), [(w.to_vec(), Laurent::one())])
    }

    pub fn from_terms<I: IntoIterator<Item = (Vec<i64>, Laurent)>>(window: Window, r: usize, it: I) -> Result<Self, Error> {
        let mut terms = BTreeMap::new();
        for (w, c) in it {
            if w.len() != r || !w.iter().all(|i| window.contains(*i)) {
                return Err(Error::Domain(alloc::format!("word {w:?} is not in the degree-{r} tensor space over {window}")));
            }
            add_to(&mut terms, w, &c);
        }
        Ok(TensorElem { r, window, terms })
    }

    pub fn degree(&self) -> usize {
        self.r
    }

    pub fn window(&self) -> Window {
        self.window
    }

    pub fn terms(&self) -> &BTreeMap<Vec<i64>, Laurent> {
        &self.terms
    }

    pub fn coeff(&self, w: &[i64]) -> Laurent {
        self.terms.get(w).cloned().unwrap_or_else(Laurent::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, o: &TensorElem) -> TensorElem {
        let mut t = self.terms.clone();
        for (w, c) in &o.terms {
            add_to(&mut t, w.clone(), c);
        }
        TensorElem { r: self.r, window: self.window, terms: t }
    }

    pub fn scale(&self, k: &Laurent) -> TensorElem {
        let mut t = BTreeMap::new();
        for (w, c) in &self.terms {
            add_to(&mut t, w.clone(), &(c * k));
        }
        TensorElem { r: self.r, window: self.window, terms: t }
    }

    /// t script-T_{s_j} by place permutation.
    pub fn times_s(&self, j: usize) -> TensorElem {
        let mut t = BTreeMap::new();
        for (w, c) in &self.terms {
            let (a, b) = (w[j - 1], w[j]);
            let mut sw = w.clone();
            sw.swap(j - 1, j);
            if a < b {
                add_to(&mut t, sw, c);
            } else if a == b {
                add_to(&mut t, w.clone(), &c.shift(1));
            } else {
                add_to(&mut t, w.clone(), &(c * &v_minus_inv()));
                add_to(&mut t, sw, c);
            }
        }
        TensorElem { r: self.r, window: self.window, terms: t }
    }
}

impl fmt::Display for TensorElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (w, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "({c})*w")?;
            for i in w {
                write!(f, "[{i}]")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for TensorElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TensorElem({self})")
    }
}

/// Right action of the Hecke algebra.
pub fn tensor_act(t: &TensorElem, h: &HeckeElem) -> Result<TensorElem, Error> {
    check_degree(t.r, h.r)?;
    let mut out = TensorElem::zero(t.window, t.r);
    for (w, c) in &h.terms {
        let mut p = t.clone();
        for j in w.reduced_word() {
            p = p.times_s(j);
        }
        out = out.add(&p.scale(c));
    }
    Ok(out)
}

/// Position blocks R_i of a composition, in index order: (index, positions).
fn blocks(l: &Composition) -> Vec<(i64, core::ops::Range<usize>)> {
    let mut out = Vec::new();
    let mut at = 0usize;
    for (i, x) in l.parts() {
        let n = *x as usize;
        out.push((*i, at..at + n));
        at += n;
    }
    out
}

fn check_comp(l: &Composition) -> Result<usize, Error> {
    if !l.is_nonneg() {
        return Err(Error::Domain(alloc::format!("{l} has a negative part")));
    }
    Ok(l.sum() as usize)
}

/// The sorted word 1^{l_1} 2^{l_2} ... of weight l.
pub fn sorted_word(l: &Composition) -> Vec<i64> {
    l.parts().iter().flat_map(|(i, x)| core::iter::repeat_n(*i, *x as usize)).collect()
}

/// Weight of a word.
pub fn word_weight(w: &[i64]) -> Composition {
    Composition::from_pairs(w.iter().map(|i| (*i, 1)))
}

/// The minimal d with (sorted word of its weight) . d = w, where
/// (i . d)_k = i_{d(k)}.
pub fn word_perm(w: &[i64]) -> Perm {
    let sorted = {
        let mut s = w.to_vec();
        s.sort_unstable();
        s
    };
    let mut next: BTreeMap<i64, usize> = BTreeMap::new();
    for (k, i) in sorted.iter().enumerate().rev() {
        next.insert(*i, k);
    }
    let mut d = Vec::with_capacity(w.len());
    for i in w {
        let slot = next.get_mut(i).unwrap();
        d.push(*slot);
        *slot += 1;
    }
    Perm(d)
}

/// Elements of the Young subgroup S_l.
pub fn young_subgroup(l: &Composition) -> Result<Vec<Perm>, Error> {
    let r = check_comp(l)?;
    let b = blocks(l);
    Ok(Perm::all(r).into_iter().filter(|p| b.iter().all(|(_, rg)| rg.clone().all(|k| rg.contains(&p.at(k))))).collect())
}

fn increasing_on(p: &Perm, b: &[(i64, core::ops::Range<usize>)]) -> bool {
    b.iter().all(|(_, rg)| rg.clone().zip(rg.clone().skip(1)).all(|(x, y)| p.at(x) < p.at(y)))
}

/// Distinguished representatives of S_l w S_m: d^{-1} increasing on the
/// l-blocks and d increasing on the m-blocks.
pub fn double_reps(l: &Composition, m: &Composition) -> Result<Vec<Perm>, Error> {
    let r = check_comp(l)?;
    check_degree(r, check_comp(m)?)?;
    let (bl, bm) = (blocks(l), blocks(m));
    Ok(Perm::all(r).into_iter().filter(|d| increasing_on(&d.inverse(), &bl) && increasing_on(d, &bm)).collect())
}

/// a_{ij} = |R^l_i intersect d(R^m_j)|.
pub fn jmath(l: &Composition, d: &Perm, m: &Composition) -> Result<IntMatZ, Error> {
    let r = check_comp(l)?;
    check_degree(r, check_comp(m)?)?;
    check_degree(r, d.degree())?;
    let (bl, bm) = (blocks(l), blocks(m));
    if !(increasing_on(&d.inverse(), &bl) && increasing_on(d, &bm)) {
        return Err(Error::Domain(alloc::format!("{d} is not distinguished for ({l}, {m})")));
    }
    let mut e = Vec::new();
    for (i, ri) in &bl {
        for (j, rj) in &bm {
            let n = rj.clone().filter(|k| ri.contains(&d.at(*k))).count() as i64;
            e.push((*i, *j, n));
        }
    }
    Ok(IntMatZ::from_entries(e))
}

/// Inverse of `jmath`, built directly: each l-block is cut into consecutive
/// pieces of sizes a_{i,j} in column order and d maps each m-block onto its
/// pieces increasingly.
pub fn jmath_inv(a: &IntMatZ) -> Result<(Composition, Perm, Composition), Error> {
    if !a.is_nonneg() {
        return Err(Error::Domain(alloc::format!("{a:?} has a negative entry")));
    }
    let (l, m) = (a.ro(), a.co());
    let r = a.sigma() as usize;
    let bl = blocks(&l);
    let mut targets: BTreeMap<i64, Vec<usize>> = BTreeMap::new();
    for (i, ri) in &bl {
        let mut at = ri.start;
        for (j, x) in a.row(*i) {
            targets.entry(j).or_default().extend(at..at + x as usize);
            at += x as usize;
        }
    }
    let mut d = alloc::vec![0usize; r];
    for (j, rj) in blocks(&m) {
        let mut t = targets.remove(&j).unwrap_or_default();
        t.sort_unstable();
        for (k, x) in rj.zip(t) {
            d[k] = x;
        }
    }
    Ok((l, Perm(d), m))
}

/// Sum of T_x over a set of permutations.
fn t_sum<'a, I: IntoIterator<Item = &'a Perm>>(r: usize, it: I) -> HeckeElem {
    HeckeElem::from_terms(r, Basis::Capital, it.into_iter().map(|w| (w.clone(), Laurent::one()))).unwrap()
}

/// x_l = sum over S_l of T_w.
pub fn x_lambda(l: &Composition) -> Result<HeckeElem, Error> {
    Ok(t_sum(check_comp(l)?, &young_subgroup(l)?))
}

/// y_l = sum over S_l of (-v^-2)^{l(w)} T_w.
pub fn y_lambda(l: &Composition) -> Result<HeckeElem, Error> {
    let r = check_comp(l)?;
    let terms = young_subgroup(l)?.into_iter().map(|w| {
        let n = w.length() as i64;
        let sign = if n % 2 == 0 { 1 } else { -1 };
        (w, Laurent::monomial(sign, -2 * n))
    });
    HeckeElem::from_terms(r, Basis::Capital, terms)
}

/// Conjugate of a composition: l^t_i = #{j : l_j >= i}, indexed from 1.
pub fn conjugate(l: &Composition) -> Composition {
    let top = l.parts().iter().map(|p| p.1).max().unwrap_or(0);
    Composition::from_pairs((1..=top).map(|i| (i, l.parts().iter().filter(|p| p.1 >= i).count() as i64)))
}

/// The unique d in D_{l, l^t} whose matrix has all entries at most one.
pub fn w_lambda(l: &Composition) -> Result<Perm, Error> {
    let lt = conjugate(l);
    let mut found = Vec::new();
    for d in double_reps(l, &lt)? {
        if jmath(l, &d, &lt)?.entries().all(|e| e.2 <= 1) {
            found.push(d);
        }
    }
    if found.len() != 1 {
        return Err(Error::NotExact(alloc::format!("{} candidates for w_{l}", found.len())));
    }
    Ok(found.pop().unwrap())
}

/// z_m = x_m T_{w_m} y_{m^t}.
pub fn z_element(m: &Composition) -> Result<HeckeElem, Error> {
    let w = w_lambda(m)?;
    let xt = hecke_mult(&x_lambda(m)?, &HeckeElem::capital(w))?;
    hecke_mult(&xt, &y_lambda(&conjugate(m))?)
}

/// The element x_m h of x_m H, as a tensor: omega_{sorted word} . h.
pub fn x_module_to_tensor(m: &Composition, h: &HeckeElem, window: Window) -> Result<TensorElem, Error> {
    if !m.support_in(&window) {
        return Err(Error::Domain(alloc::format!("{m} is not supported in {window}")));
    }
    tensor_act(&TensorElem::word(window, &sorted_word(m))?, h)
}

/// Exponent e with [A] = v^{-e} phi^d.
fn normalization(a: &IntMatZ) -> i64 {
    a.transpose().d()
}

fn double_coset_sum(a: &IntMatZ) -> Result<(Composition, HeckeElem), Error> {
    let (l, d, m) = jmath_inv(a)?;
    let r = d.degree();
    let (sl, sm) = (young_subgroup(&l)?, young_subgroup(&m)?);
    let mut coset = BTreeSet::new();
    for u in &sl {
        let ud = u.compose(&d);
        for w in &sm {
            coset.insert(ud.compose(w));
        }
    }
    Ok((l, t_sum(r, &coset).scale(&Laurent::v(-normalization(a)))))
}

/// Left action of K(eta, r) on the tensor space.
pub fn schur_on_tensor(x: &SchurElem, t: &TensorElem) -> Result<TensorElem, Error> {
    if x.window() != t.window || x.degree() != t.r as i64 {
        return Err(Error::Domain(alloc::format!(
            "K({}, {}) cannot act on the degree-{} tensor space over {}",
            x.window(),
            x.degree(),
            t.r,
            t.window
        )));
    }
    let mut cache: BTreeMap<&IntMatZ, (Composition, HeckeElem)> = BTreeMap::new();
    let mut out = TensorElem::zero(t.window, t.r);
    for (w, c) in &t.terms {
        let mu = word_weight(w);
        let h = HeckeElem::script(word_perm(w));
        for (a, k) in x.terms() {
            if a.co() != mu {
                continue;
            }
            if !cache.contains_key(a) {
                cache.insert(a, double_coset_sum(a)?);
            }
            let (l, phi) = &cache[a];
            let y = hecke_mult(phi, &h)?;
            let base = sorted_word(l);
            // read off the x_l H coordinates on the minimal coset representatives
            let bl = blocks(l);
            let mut img = BTreeMap::new();
            for (p, s) in &y.terms {
                if increasing_on(&p.inverse(), &bl) {
                    let word: Vec<i64> = (0..t.r).map(|q| base[p.at(q)]).collect();
                    add_to(&mut img, word, &(s * &(c * k)));
                }
            }
            out = out.add(&TensorElem { r: t.r, window: t.window, terms: img });
        }
    }
    Ok(out)
}

/// Action of E_h, F_h, K^j on the tensor space through
/// Delta(E) = E (x) K~ + 1 (x) E, Delta(F) = F (x) 1 + K~^{-1} (x) F,
/// Delta(K) = K (x) K, with K~_h = K_h K_{h+1}^{-1}. Divided powers divide
/// the iterated action by [m]!.
pub fn gen_on_tensor(g: &Token, t: &TensorElem) -> Result<TensorElem, Error> {
    let w = t.window;
    let mut out = TensorElem::zero(w, t.r);
    match g {
        Token::Kpow(j) => {
            for (word, c) in &t.terms {
                let e: i64 = word.iter().map(|i| j.get(*i)).sum();
                add_to(&mut out.terms, word.clone(), &c.shift(e));
            }
        }
        Token::E(h, m) | Token::F(h, m) => {
            if !(w.contains(*h) && w.contains(h + 1)) {
                return Err(Error::Domain(alloc::format!("{g} reaches outside {w}")));
            }
            let upper = matches!(g, Token::E(..));
            let mut cur = t.clone();
            for _ in 0..*m {
                let mut nxt = BTreeMap::new();
                for (word, c) in &cur.terms {
                    for p in 0..word.len() {
                        let (from, to) = if upper { (h + 1, *h) } else { (*h, h + 1) };
                        if word[p] != from {
                            continue;
                        }
                        // K~ weight of the letters after p (E) or before p (F, inverted)
                        let tilt = |i: i64| (i == *h) as i64 - (i == h + 1) as i64;
                        let e: i64 = if upper {
                            word[p + 1..].iter().map(|i| tilt(*i)).sum()
                        } else {
                            -word[..p].iter().map(|i| tilt(*i)).sum::<i64>()
                        };
                        let mut nw = word.clone();
                        nw[p] = to;
                        add_to(&mut nxt, nw, &c.shift(e));
                    }
                }
                cur = TensorElem { r: t.r, window: w, terms: nxt };
            }
            let f = qfact(*m);
            for (word, c) in cur.terms {
                let q = c.div_exact(&f).ok_or_else(|| Error::NotExact(alloc::format!("{g} coefficient {c} not divisible by [{m}]!")))?;
                add_to(&mut out.terms, word, &q);
            }
        }
        _ => return Err(Error::Domain(alloc::format!("{g} has no direct tensor action here"))),
    }
    Ok(out)
}

/// All words of length r over a window, lexicographic.
pub fn all_words(w: &Window, r: usize) -> Vec<Vec<i64>> {
    let mut out = alloc::vec![Vec::new()];
    for _ in 0..r {
        out = out.into_iter().flat_map(|p: Vec<i64>| w.indices().map(move |i| {
            let mut q = p.clone();
            q.push(i);
            q
        })).collect();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    fn c(start: i64, xs: &[i64]) -> Composition {
        Composition::from_slice(start, xs)
    }

    fn l(s: &str) -> Laurent {
        s.parse().unwrap()
    }

    fn win(lo: i64, hi: i64) -> Window {
        Window::new(lo, hi).unwrap()
    }

    #[test]
    fn permutations() {
        assert_eq!(Perm::all(4).len(), 24);
        for w in Perm::all(4) {
            let rw = w.reduced_word();
            assert_eq!(rw.len(), w.length());
            let back = rw.iter().fold(Perm::identity(4), |p, j| p.times_s(*j));
            assert_eq!(back, w);
            assert_eq!(w.compose(&w.inverse()), Perm::identity(4));
        }
        let p: Perm = "[2,3,1]".parse().unwrap();
        assert_eq!(p.to_string(), "[2,3,1]");
        assert!("[1,1]".parse::<Perm>().is_err());
    }

    #[test]
    fn quadratic_relations() {
        let s = HeckeElem::script(Perm::s(1, 2));
        let ss = hecke_mult(&s, &s).unwrap();
        assert_eq!(ss, s.scale(&l("v - v^-1")).add(&HeckeElem::one(2)));
        let t = HeckeElem::capital(Perm::s(1, 2));
        let tt = hecke_mult(&t, &t).unwrap();
        assert_eq!(tt, t.scale(&l("v^2 - 1")).add(&HeckeElem::one(2).scale(&l("v^2"))));
        for w in Perm::all(3) {
            let x = HeckeElem::script(w);
            assert_eq!(hecke_mult(&x, &HeckeElem::one(3)).unwrap(), x);
            assert_eq!(hecke_mult(&HeckeElem::one(3), &x).unwrap(), x);
        }
        assert!(hecke_mult(&s, &HeckeElem::one(3)).is_err());
    }

    #[test]
    fn basis_conversion_roundtrip() {
        let x = HeckeElem::from_terms(3, Basis::Capital, Perm::all(3).into_iter().map(|w| (w, l("v + 2")))).unwrap();
        let y = HeckeElem::from_terms(3, Basis::Capital, x.coeffs(Basis::Capital)).unwrap();
        assert_eq!(x, y);
        let z = HeckeElem::from_terms(3, Basis::Script, x.coeffs(Basis::Script)).unwrap();
        assert_eq!(x, z);
    }

    #[test]
    fn associativity_s3() {
        let all = Perm::all(3);
        for a in &all {
            for b in &all {
                for d in &all {
                    let (x, y, z) = (HeckeElem::script(a.clone()), HeckeElem::script(b.clone()), HeckeElem::script(d.clone()));
                    let lhs = hecke_mult(&hecke_mult(&x, &y).unwrap(), &z).unwrap();
                    let rhs = hecke_mult(&x, &hecke_mult(&y, &z).unwrap()).unwrap();
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }

    #[test]
    fn place_permutations() {
        let w = win(1, 2);
        let s = HeckeElem::script(Perm::s(1, 2));
        let t12 = TensorElem::word(w, &[1, 2]).unwrap();
        assert_eq!(tensor_act(&t12, &s).unwrap(), TensorElem::word(w, &[2, 1]).unwrap());
        let t11 = TensorElem::word(w, &[1, 1]).unwrap();
        assert_eq!(tensor_act(&t11, &s).unwrap(), t11.scale(&l("v")));
        let t21 = TensorElem::word(w, &[2, 1]).unwrap();
        assert_eq!(tensor_act(&t21, &s).unwrap(), t21.scale(&l("v - v^-1")).add(&t12));
    }

    #[test]
    fn right_action_is_an_action() {
        let w = win(1, 2);
        let all = Perm::all(3);
        for word in all_words(&w, 3) {
            let t = TensorElem::word(w, &word).unwrap();
            for a in &all {
                for b in &all {
                    let (x, y) = (HeckeElem::script(a.clone()), HeckeElem::script(b.clone()));
                    let lhs = tensor_act(&tensor_act(&t, &x).unwrap(), &y).unwrap();
                    let rhs = tensor_act(&t, &hecke_mult(&x, &y).unwrap()).unwrap();
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }

    #[test]
    fn x_lambda_absorbs() {
        for r in 1..=3i64 {
            for mu in crate::matrix::enum_compositions(&win(1, r), r, None) {
                let x = x_lambda(&mu).unwrap();
                for (_, rg) in blocks(&mu) {
                    for j in rg.start + 1..rg.end {
                        assert_eq!(x.times_s(j), x.scale(&Laurent::v(1)), "{mu}");
                    }
                }
            }
        }
    }

    #[test]
    fn double_coset_examples() {
        assert_eq!(double_reps(&c(1, &[1, 1]), &c(1, &[1, 1])).unwrap().len(), 2);
        assert_eq!(double_reps(&c(1, &[1, 1, 1]), &c(1, &[1, 1, 1])).unwrap().len(), 6);
        assert_eq!(double_reps(&c(1, &[3]), &c(1, &[3])).unwrap(), [Perm::identity(3)]);
        assert_eq!(double_reps(&c(1, &[1, 1]), &c(1, &[2])).unwrap(), [Perm::identity(2)]);
        assert!(double_reps(&c(1, &[1]), &c(1, &[2])).is_err());
    }

    #[test]
    fn jmath_examples() {
        let p = c(1, &[1, 1]);
        let id = Perm::identity(2);
        assert_eq!(jmath(&p, &id, &p).unwrap(), IntMatZ::diag(&p));
        assert_eq!(jmath(&p, &Perm::s(1, 2), &p).unwrap(), IntMatZ::unit(1, 2).add(&IntMatZ::unit(2, 1)));
        assert_eq!(jmath(&c(1, &[2]), &id, &p).unwrap(), IntMatZ::unit(1, 1).add(&IntMatZ::unit(1, 2)));
        assert!(jmath(&c(1, &[1, 1, 1]), &"[2,1,3]".parse().unwrap(), &c(1, &[2, 1])).is_err());
    }

    #[test]
    fn jmath_bijection() {
        for r in 1..=3 {
            let w = win(1, 3);
            let comps = crate::matrix::enum_compositions(&w, r, None);
            let mut seen = BTreeSet::new();
            for la in &comps {
                for mu in &comps {
                    for d in double_reps(la, mu).unwrap() {
                        let a = jmath(la, &d, mu).unwrap();
                        assert_eq!((a.ro(), a.co()), (la.clone(), mu.clone()));
                        assert_eq!(jmath_inv(&a).unwrap(), (la.clone(), d, mu.clone()));
                        assert!(seen.insert(a));
                    }
                }
            }
            assert_eq!(seen.len(), crate::matrix::enum_xi(&w, r).len());
        }
    }

    #[test]
    fn z_examples() {
        assert_eq!(z_element(&c(1, &[2])).unwrap(), HeckeElem::one(2).add(&HeckeElem::capital(Perm::s(1, 2))));
        let want = HeckeElem::one(2).sub(&HeckeElem::capital(Perm::s(1, 2)).scale(&l("v^-2")));
        assert_eq!(z_element(&c(1, &[1, 1])).unwrap(), want);
        assert_eq!(z_element(&c(1, &[1])).unwrap(), HeckeElem::one(1));
        assert_eq!(conjugate(&c(1, &[2, 1])), c(1, &[2, 1]));
        assert_eq!(conjugate(&c(1, &[3])), c(1, &[1, 1, 1]));
    }

    #[test]
    fn schur_action_examples() {
        let w = win(1, 2);
        let t = TensorElem::word(w, &[2, 2]).unwrap();
        let id = SchurElem::identity(w, 2);
        assert_eq!(schur_on_tensor(&id, &t).unwrap(), t);
        let e = crate::quantum::gen_image(&crate::quantum::Gen::E(1), &w, 2).unwrap();
        let want = TensorElem::word(w, &[1, 2]).unwrap().scale(&l("v^-1")).add(&TensorElem::word(w, &[2, 1]).unwrap());
        assert_eq!(schur_on_tensor(&e, &t).unwrap(), want);
        assert_eq!(gen_on_tensor(&Token::E(1, 1), &t).unwrap(), want);
        let d = SchurElem::basis(w, 2, IntMatZ::diag(&c(1, &[1, 1]))).unwrap();
        assert!(schur_on_tensor(&d, &t).unwrap().is_zero());
        let u = TensorElem::word(w, &[2, 1]).unwrap();
        assert_eq!(schur_on_tensor(&d, &u).unwrap(), u);
    }

    #[test]
    fn schur_action_is_a_homomorphism() {
        let w = win(1, 2);
        let basis = crate::matrix::enum_xi(&w, 2);
        for word in all_words(&w, 2) {
            let t = TensorElem::word(w, &word).unwrap();
            for a in &basis {
                for b in &basis {
                    let x = SchurElem::basis(w, 2, a.clone()).unwrap();
                    let y = SchurElem::basis(w, 2, b.clone()).unwrap();
                    let lhs = schur_on_tensor(&crate::schur::multiply(&x, &y).unwrap(), &t).unwrap();
                    let rhs = schur_on_tensor(&x, &schur_on_tensor(&y, &t).unwrap()).unwrap();
                    assert_eq!(lhs, rhs, "{a:?} {b:?} {word:?}");
                }
            }
        }
    }

    #[test]
    fn sorted_words_and_perms() {
        let w = [2i64, 1, 3, 1];
        let d = word_perm(&w);
        let base = sorted_word(&word_weight(&w));
        assert_eq!((0..4).map(|k| base[d.at(k)]).collect::<Vec<_>>(), w);
        let t = TensorElem::word(win(1, 3), &base).unwrap();
        assert_eq!(tensor_act(&t, &HeckeElem::script(d)).unwrap(), TensorElem::word(win(1, 3), &w).unwrap());
        assert_eq!(all_words(&win(1, 3), 2).len(), 9);
    }
}
