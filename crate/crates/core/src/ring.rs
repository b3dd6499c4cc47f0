//! Exact arithmetic over Z[v, v^-1], its fraction field, and the two-variable
//! stabilization ring (polynomials in v'^2 with fraction coefficients).

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use core::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::poly::{self, Poly};
use crate::Error;

/// Element of Z[v, v^-1]. Terms sorted by exponent, no zero coefficients.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Laurent {
    terms: Vec<(i64, BigInt)>,
}

impl Laurent {
    pub fn zero() -> Self {
        Laurent { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Self::monomial(1, 0)
    }

    /// `c * v^e`.
    pub fn monomial(c: impl Into<BigInt>, e: i64) -> Self {
        let c = c.into();
        if c.is_zero() {
            return Self::zero();
        }
        Laurent { terms: vec![(e, c)] }
    }

    /// `v^e`.
    pub fn v(e: i64) -> Self {
        Self::monomial(1, e)
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::monomial(c, 0)
    }

    pub fn from_terms<I: IntoIterator<Item = (i64, BigInt)>>(it: I) -> Self {
        let mut m: BTreeMap<i64, BigInt> = BTreeMap::new();
        for (e, c) in it {
            *m.entry(e).or_default() += c;
        }
        Laurent {
            terms: m.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0 == 0 && self.terms[0].1.is_one()
    }

    pub fn terms(&self) -> &[(i64, BigInt)] {
        &self.terms
    }

    pub fn coeff(&self, e: i64) -> BigInt {
        match self.terms.binary_search_by_key(&e, |t| t.0) {
            Ok(k) => self.terms[k].1.clone(),
            Err(_) => BigInt::zero(),
        }
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.terms.first().map(|t| t.0)
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.terms.last().map(|t| t.0)
    }

    /// Multiply by `v^k`.
    pub fn shift(&self, k: i64) -> Self {
        Laurent {
            terms: self.terms.iter().map(|(e, c)| (e + k, c.clone())).collect(),
        }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Laurent {
            terms: self.terms.iter().map(|(e, x)| (*e, x * c)).collect(),
        }
    }

    /// The involution v -> v^-1.
    pub fn bar(&self) -> Self {
        Laurent {
            terms: self.terms.iter().rev().map(|(e, c)| (-e, c.clone())).collect(),
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// True when every exponent is even, i.e. the element lies in Z[v^2, v^-2].
    pub fn is_even(&self) -> bool {
        self.terms.iter().all(|(e, _)| e % 2 == 0)
    }

    /// Split as `v^k * p(v)` with `p(0) != 0`; zero maps to `(0, [])`.
    pub(crate) fn to_poly(&self) -> (i64, Poly) {
        let Some(lo) = self.min_exp() else {
            return (0, Vec::new());
        };
        let hi = self.max_exp().unwrap();
        let mut p = vec![BigInt::zero(); (hi - lo + 1) as usize];
        for (e, c) in &self.terms {
            p[(e - lo) as usize] = c.clone();
        }
        (lo, p)
    }

    pub(crate) fn from_poly(shift: i64, p: &[BigInt]) -> Self {
        Laurent {
            terms: p
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(k, c)| (k as i64 + shift, c.clone()))
                .collect(),
        }
    }

    /// Exact quotient in Z[v, v^-1], or `None` if `d` does not divide.
    pub fn div_exact(&self, d: &Laurent) -> Option<Laurent> {
        assert!(!d.is_zero(), "division by zero");
        if self.is_zero() {
            return Some(Self::zero());
        }
        let (a, pa) = self.to_poly();
        let (b, pb) = d.to_poly();
        if pb.len() == 1 {
            let c = &pb[0];
            let mut terms = Vec::with_capacity(self.terms.len());
            for (e, x) in &self.terms {
                let (q, r) = x.div_rem(c);
                if !r.is_zero() {
                    return None;
                }
                terms.push((e - b, q));
            }
            return Some(Laurent { terms });
        }
        let q = poly::div_exact(&pa, &pb)?;
        Some(Self::from_poly(a - b, &q))
    }

    /// Substitute v^2 := q. Fails on odd exponents.
    pub fn eval_q(&self, q: i64) -> Result<BigRational, Error> {
        if !self.is_even() {
            return Err(Error::Domain("odd exponent: not a polynomial in v^2".into()));
        }
        let q = BigRational::from_integer(BigInt::from(q));
        let mut acc = BigRational::zero();
        for (e, c) in &self.terms {
            acc += BigRational::from_integer(c.clone()) * pow_rat(&q, e / 2);
        }
        Ok(acc)
    }

    /// Substitute v := x.
    pub fn eval_at(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for (e, c) in &self.terms {
            acc += BigRational::from_integer(c.clone()) * pow_rat(x, *e);
        }
        acc
    }

    /// Substitute v := x modulo the prime `p`; `x` must be a unit mod `p`.
    pub fn eval_mod(&self, x: u64, p: u64) -> u64 {
        let xinv = pow_mod(x, p - 2, p);
        let mut acc = 0u64;
        let pb = BigInt::from(p);
        for (e, c) in &self.terms {
            let m = c.mod_floor(&pb);
            let m: u64 = m.try_into().unwrap();
            let base = if *e >= 0 { x } else { xinv };
            let t = mul_mod(m, pow_mod(base, e.unsigned_abs(), p), p);
            acc = (acc + t) % p;
        }
        acc
    }
}

fn pow_rat(x: &BigRational, e: i64) -> BigRational {
    let mut r = BigRational::one();
    let b = if e >= 0 { x.clone() } else { x.recip() };
    for _ in 0..e.unsigned_abs() {
        r *= &b;
    }
    r
}

pub(crate) fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub(crate) fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1u64 % p;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, b, p);
        }
        b = mul_mod(b, b, p);
        e >>= 1;
    }
    r
}

impl From<i64> for Laurent {
    fn from(c: i64) -> Self {
        Laurent::constant(c)
    }
}

impl<'a> Add<&'a Laurent> for &'a Laurent {
    type Output = Laurent;
    fn add(self, o: &Laurent) -> Laurent {
        let mut out = Vec::with_capacity(self.terms.len() + o.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() && j < o.terms.len() {
            let (ea, ca) = &self.terms[i];
            let (eb, cb) = &o.terms[j];
            if ea < eb {
                out.push((*ea, ca.clone()));
                i += 1;
            } else if eb < ea {
                out.push((*eb, cb.clone()));
                j += 1;
            } else {
                let s = ca + cb;
                if !s.is_zero() {
                    out.push((*ea, s));
                }
                i += 1;
                j += 1;
            }
        }
        out.extend_from_slice(&self.terms[i..]);
        out.extend_from_slice(&o.terms[j..]);
        Laurent { terms: out }
    }
}

impl<'a> Sub<&'a Laurent> for &'a Laurent {
    type Output = Laurent;
    fn sub(self, o: &Laurent) -> Laurent {
        self + &(-o)
    }
}

impl Neg for &Laurent {
    type Output = Laurent;
    fn neg(self) -> Laurent {
        Laurent {
            terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }
}

impl Neg for Laurent {
    type Output = Laurent;
    fn neg(self) -> Laurent {
        -&self
    }
}

impl<'a> Mul<&'a Laurent> for &'a Laurent {
    type Output = Laurent;
    fn mul(self, o: &Laurent) -> Laurent {
        if self.is_zero() || o.is_zero() {
            return Laurent::zero();
        }
        if o.terms.len() == 1 {
            let (e, c) = &o.terms[0];
            return Laurent {
                terms: self.terms.iter().map(|(x, y)| (x + e, y * c)).collect(),
            };
        }
        if self.terms.len() == 1 {
            return o * self;
        }
        let lo = self.terms[0].0 + o.terms[0].0;
        let hi = self.max_exp().unwrap() + o.max_exp().unwrap();
        let mut acc = vec![BigInt::zero(); (hi - lo + 1) as usize];
        for (ea, ca) in &self.terms {
            for (eb, cb) in &o.terms {
                acc[(ea + eb - lo) as usize] += ca * cb;
            }
        }
        Laurent::from_poly(lo, &acc)
    }
}

macro_rules! forward_binop {
    ($tr:ident, $m:ident, $t:ty) => {
        impl $tr<$t> for $t {
            type Output = $t;
            fn $m(self, o: $t) -> $t {
                (&self).$m(&o)
            }
        }
        impl<'a> $tr<&'a $t> for $t {
            type Output = $t;
            fn $m(self, o: &$t) -> $t {
                (&self).$m(o)
            }
        }
    };
}
forward_binop!(Add, add, Laurent);
forward_binop!(Sub, sub, Laurent);
forward_binop!(Mul, mul, Laurent);

impl AddAssign<&Laurent> for Laurent {
    fn add_assign(&mut self, o: &Laurent) {
        *self = &*self + o;
    }
}

impl SubAssign<&Laurent> for Laurent {
    fn sub_assign(&mut self, o: &Laurent) {
        *self = &*self - o;
    }
}

impl fmt::Display for Laurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (k, (e, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if k == 0 {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            match (*e, a.is_one()) {
                (0, _) => write!(f, "{a}")?,
                (1, true) => f.write_str("v")?,
                (1, false) => write!(f, "{a}*v")?,
                (e, true) => write!(f, "v^{e}")?,
                (e, false) => write!(f, "{a}*v^{e}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Laurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Laurent({self})")
    }
}

impl FromStr for Laurent {
    type Err = Error;

    /// Accepts sums of terms `c`, `v`, `v^e`, `c*v^e`, `c v^e` joined by `+`/`-`.
    fn from_str(s: &str) -> Result<Self, Error> {
        let bad = |m: &str| Error::Parse(alloc::format!("laurent polynomial {s:?}: {m}"));
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(bad("empty"));
        }
        let bytes = compact.as_bytes();
        let mut terms = Vec::new();
        let mut pos = 0;
        while pos < bytes.len() {
            let mut sign = BigInt::one();
            if bytes[pos] == b'+' || bytes[pos] == b'-' {
                if bytes[pos] == b'-' {
                    sign = -sign;
                }
                pos += 1;
            } else if pos != 0 {
                return Err(bad("expected + or -"));
            }
            // A term ends at the next +/- that is not an exponent sign.
            let start = pos;
            while pos < bytes.len() {
                let b = bytes[pos];
                if (b == b'+' || b == b'-') && pos > start && !matches!(bytes[pos - 1], b'^' | b'(') {
                    break;
                }
                pos += 1;
            }
            let term = &compact[start..pos];
            if term.is_empty() {
                return Err(bad("empty term"));
            }
            let (coef, exp) = match term.find('v') {
                None => (term, None),
                Some(k) => {
                    let c = term[..k].trim_end_matches('*');
                    let rest = &term[k + 1..];
                    let e = if rest.is_empty() {
                        1
                    } else if let Some(x) = rest.strip_prefix('^') {
                        let x = x.trim_start_matches('(').trim_end_matches(')');
                        x.parse::<i64>().map_err(|_| bad("bad exponent"))?
                    } else {
                        return Err(bad("junk after v"));
                    };
                    (c, Some(e))
                }
            };
            let c = if coef.is_empty() {
                if exp.is_none() {
                    return Err(bad("empty term"));
                }
                BigInt::one()
            } else {
                coef.parse::<BigInt>().map_err(|_| bad("bad coefficient"))?
            };
            terms.push((exp.unwrap_or(0), sign * c));
        }
        Ok(Laurent::from_terms(terms))
    }
}

/// Element of Q(v) in canonical form: the denominator is a polynomial in v
/// with nonzero constant term, coprime to the numerator over Z[v], and with
/// positive constant term.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LaurentFrac {
    num: Laurent,
    den: Laurent,
}

impl LaurentFrac {
    pub fn zero() -> Self {
        LaurentFrac { num: Laurent::zero(), den: Laurent::one() }
    }

    pub fn one() -> Self {
        Self::from_laurent(Laurent::one())
    }

    pub fn from_laurent(p: Laurent) -> Self {
        LaurentFrac { num: p, den: Laurent::one() }
    }

    pub fn new(num: Laurent, den: Laurent) -> Result<Self, Error> {
        if den.is_zero() {
            return Err(Error::Domain("zero denominator".into()));
        }
        Ok(Self::reduce(num, den))
    }

    fn reduce(num: Laurent, den: Laurent) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        let (a, mut pn) = num.to_poly();
        let (b, mut pd) = den.to_poly();
        let g = if pd.len() == 1 {
            alloc::vec![poly::content(&pn).gcd(&pd[0])]
        } else {
            poly::gcd(&pn, &pd)
        };
        if !(g.len() == 1 && g[0].is_one()) {
            pn = poly::div_exact(&pn, &g).expect("gcd divides numerator");
            pd = poly::div_exact(&pd, &g).expect("gcd divides denominator");
        }
        if pd[0].is_negative() {
            for c in pn.iter_mut().chain(pd.iter_mut()) {
                *c = -&*c;
            }
        }
        LaurentFrac {
            num: Laurent::from_poly(a - b, &pn),
            den: Laurent::from_poly(0, &pd),
        }
    }

    pub fn num(&self) -> &Laurent {
        &self.num
    }

    pub fn den(&self) -> &Laurent {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// The value as a Laurent polynomial when the denominator is a unit.
    pub fn to_laurent(&self) -> Option<Laurent> {
        if self.den.is_one() {
            Some(self.num.clone())
        } else {
            None
        }
    }

    pub fn bar(&self) -> Self {
        Self::reduce(self.num.bar(), self.den.bar())
    }

    pub fn inv(&self) -> Result<Self, Error> {
        Self::new(self.den.clone(), self.num.clone())
    }

    pub fn scale_laurent(&self, p: &Laurent) -> Self {
        if p.terms.len() == 1 && p.terms[0].1.is_one() {
            return LaurentFrac { num: self.num.shift(p.terms[0].0), den: self.den.clone() };
        }
        Self::reduce(&self.num * p, self.den.clone())
    }
}

impl<'a> Add<&'a LaurentFrac> for &'a LaurentFrac {
    type Output = LaurentFrac;
    fn add(self, o: &LaurentFrac) -> LaurentFrac {
        if o.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return o.clone();
        }
        if self.den == o.den {
            if self.den.is_one() {
                return LaurentFrac::from_laurent(&self.num + &o.num);
            }
            return LaurentFrac::reduce(&self.num + &o.num, self.den.clone());
        }
        LaurentFrac::reduce(&self.num * &o.den + &o.num * &self.den, &self.den * &o.den)
    }
}

impl<'a> Sub<&'a LaurentFrac> for &'a LaurentFrac {
    type Output = LaurentFrac;
    fn sub(self, o: &LaurentFrac) -> LaurentFrac {
        self + &(-o)
    }
}

impl Neg for &LaurentFrac {
    type Output = LaurentFrac;
    fn neg(self) -> LaurentFrac {
        LaurentFrac { num: -&self.num, den: self.den.clone() }
    }
}

impl<'a> Mul<&'a LaurentFrac> for &'a LaurentFrac {
    type Output = LaurentFrac;
    fn mul(self, o: &LaurentFrac) -> LaurentFrac {
        if self.is_zero() || o.is_zero() {
            return LaurentFrac::zero();
        }
        if self.den.is_one() && o.den.is_one() {
            return LaurentFrac::from_laurent(&self.num * &o.num);
        }
        LaurentFrac::reduce(&self.num * &o.num, &self.den * &o.den)
    }
}

forward_binop!(Add, add, LaurentFrac);
forward_binop!(Sub, sub, LaurentFrac);
forward_binop!(Mul, mul, LaurentFrac);

impl fmt::Display for LaurentFrac {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl fmt::Debug for LaurentFrac {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentFrac({self})")
    }
}

/// Polynomial in v'^2 with `LaurentFrac` coefficients; keys are the (even)
/// v'-exponents.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct BiLaurent {
    terms: BTreeMap<u32, LaurentFrac>,
}

/// How v' is specialized.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Specialization {
    /// v' = v^(-a).
    VPow(i64),
    /// v' = 1.
    One,
}

impl BiLaurent {
    pub fn zero() -> Self {
        BiLaurent { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::from_frac(LaurentFrac::one())
    }

    pub fn from_frac(c: LaurentFrac) -> Self {
        Self::from_terms([(0, c)])
    }

    pub fn from_laurent(p: Laurent) -> Self {
        Self::from_frac(LaurentFrac::from_laurent(p))
    }

    /// Build from `(v'-exponent, coefficient)` pairs; exponents must be even.
    pub fn from_terms<I: IntoIterator<Item = (u32, LaurentFrac)>>(it: I) -> Self {
        let mut out = Self::zero();
        for (k, c) in it {
            assert!(k % 2 == 0, "v' exponents are even");
            out.add_term(k, &c);
        }
        out
    }

    fn add_term(&mut self, k: u32, c: &LaurentFrac) {
        if c.is_zero() {
            return;
        }
        let s = match self.terms.get(&k) {
            Some(x) => x + c,
            None => c.clone(),
        };
        if s.is_zero() {
            self.terms.remove(&k);
        } else {
            self.terms.insert(k, s);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (u32, &LaurentFrac)> {
        self.terms.iter().map(|(k, c)| (*k, c))
    }

    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().next_back().copied()
    }

    pub fn specialize(&self, mode: Specialization) -> Result<Laurent, Error> {
        let mut acc = LaurentFrac::zero();
        for (k, c) in &self.terms {
            let t = match mode {
                Specialization::One => c.clone(),
                Specialization::VPow(a) => c.scale_laurent(&Laurent::v(-a * *k as i64)),
            };
            acc = &acc + &t;
        }
        acc.to_laurent().ok_or_else(|| {
            Error::NotExact(alloc::format!("not in Z_1 at this specialization: {self}"))
        })
    }

    pub fn scale(&self, c: &LaurentFrac) -> Self {
        let mut out = Self::zero();
        for (k, x) in &self.terms {
            out.add_term(*k, &(x * c));
        }
        out
    }
}

impl<'a> Add<&'a BiLaurent> for &'a BiLaurent {
    type Output = BiLaurent;
    fn add(self, o: &BiLaurent) -> BiLaurent {
        let mut out = self.clone();
        for (k, c) in &o.terms {
            out.add_term(*k, c);
        }
        out
    }
}

impl<'a> Sub<&'a BiLaurent> for &'a BiLaurent {
    type Output = BiLaurent;
    fn sub(self, o: &BiLaurent) -> BiLaurent {
        self + &(-o)
    }
}

impl Neg for &BiLaurent {
    type Output = BiLaurent;
    fn neg(self) -> BiLaurent {
        BiLaurent { terms: self.terms.iter().map(|(k, c)| (*k, -c)).collect() }
    }
}

impl<'a> Mul<&'a BiLaurent> for &'a BiLaurent {
    type Output = BiLaurent;
    fn mul(self, o: &BiLaurent) -> BiLaurent {
        let mut out = BiLaurent::zero();
        for (ka, ca) in &self.terms {
            for (kb, cb) in &o.terms {
                out.add_term(ka + kb, &(ca * cb));
            }
        }
        out
    }
}

forward_binop!(Add, add, BiLaurent);
forward_binop!(Sub, sub, BiLaurent);
forward_binop!(Mul, mul, BiLaurent);

impl fmt::Display for BiLaurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (n, (k, c)) in self.terms.iter().rev().enumerate() {
            if n > 0 {
                f.write_str(" + ")?;
            }
            match k {
                0 => write!(f, "({c})")?,
                k => write!(f, "({c})*v'^{k}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for BiLaurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BiLaurent({self})")
    }
}

/// Coefficient rings for sparse combinations of basis symbols.
pub trait Coeff: Clone + PartialEq + fmt::Debug + fmt::Display + Send + Sync {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add_ref(&self, o: &Self) -> Self;
    fn mul_ref(&self, o: &Self) -> Self;
    fn neg_ref(&self) -> Self;
    fn from_laurent(p: Laurent) -> Self;
}

impl Coeff for Laurent {
    fn zero() -> Self {
        Laurent::zero()
    }
    fn one() -> Self {
        Laurent::one()
    }
    fn is_zero(&self) -> bool {
        Laurent::is_zero(self)
    }
    fn add_ref(&self, o: &Self) -> Self {
        self + o
    }
    fn mul_ref(&self, o: &Self) -> Self {
        self * o
    }
    fn neg_ref(&self) -> Self {
        -self
    }
    fn from_laurent(p: Laurent) -> Self {
        p
    }
}

impl Coeff for LaurentFrac {
    fn zero() -> Self {
        LaurentFrac::zero()
    }
    fn one() -> Self {
        LaurentFrac::one()
    }
    fn is_zero(&self) -> bool {
        LaurentFrac::is_zero(self)
    }
    fn add_ref(&self, o: &Self) -> Self {
        self + o
    }
    fn mul_ref(&self, o: &Self) -> Self {
        self * o
    }
    fn neg_ref(&self) -> Self {
        -self
    }
    fn from_laurent(p: Laurent) -> Self {
        LaurentFrac::from_laurent(p)
    }
}

impl Coeff for BiLaurent {
    fn zero() -> Self {
        BiLaurent::zero()
    }
    fn one() -> Self {
        BiLaurent::one()
    }
    fn is_zero(&self) -> bool {
        BiLaurent::is_zero(self)
    }
    fn add_ref(&self, o: &Self) -> Self {
        self + o
    }
    fn mul_ref(&self, o: &Self) -> Self {
        self * o
    }
    fn neg_ref(&self) -> Self {
        -self
    }
    fn from_laurent(p: Laurent) -> Self {
        BiLaurent::from_laurent(p)
    }
}

/// Balanced quantum integer [t] = v^(t-1) + v^(t-3) + ... + v^(1-t).
pub fn qint(t: u32) -> Laurent {
    let t = t as i64;
    Laurent::from_terms((0..t).map(|k| (t - 1 - 2 * k, BigInt::one())))
}

/// [m]! = [1][2]...[m].
pub fn qfact(m: u32) -> Laurent {
    (1..=m).fold(Laurent::one(), |acc, t| &acc * &qint(t))
}

/// Gaussian binomial in v^2: prod_{i=1..t} (v^(2(N-i+1)) - 1) / (v^(2i) - 1).
pub fn gauss2(n: i64, t: u32) -> Laurent {
    let mut g = Laurent::one();
    for i in 1..=t as i64 {
        let num = &Laurent::v(2 * (n - i + 1)) - &Laurent::one();
        if num.is_zero() {
            return Laurent::zero();
        }
        let den = &Laurent::v(2 * i) - &Laurent::one();
        g = (&g * &num).div_exact(&den).expect("gaussian binomial is integral");
    }
    g
}

/// Balanced binomial prod_{s=1..t} (v^(a-s+1) - v^(-a+s-1)) / (v^s - v^-s).
pub fn balanced_binom(a: i64, t: u32) -> Laurent {
    let mut num = Laurent::one();
    let mut den = Laurent::one();
    for s in 1..=t as i64 {
        let f = &Laurent::v(a - s + 1) - &Laurent::v(-a + s - 1);
        if f.is_zero() {
            return Laurent::zero();
        }
        num = &num * &f;
        den = &den * &(&Laurent::v(s) - &Laurent::v(-s));
    }
    num.div_exact(&den).expect("balanced binomial is integral")
}

/// prod_{s=0..t-1} (v^lambda - v^s).
pub fn bracket_fact_eval(lambda: i64, t: u32) -> Laurent {
    (0..t as i64).fold(Laurent::one(), |acc, s| &acc * &(&Laurent::v(lambda) - &Laurent::v(s)))
}

/// prod_j (v^(-2 c_j) v'^2 - 1) / (v^(-2j) - 1), j = 1..len.
pub fn stab_binom(c_list: &[i64]) -> BiLaurent {
    let mut acc = BiLaurent::one();
    for (idx, c) in c_list.iter().enumerate() {
        let j = idx as i64 + 1;
        let den = &Laurent::v(-2 * j) - &Laurent::one();
        let hi = LaurentFrac::new(Laurent::v(-2 * c), den.clone()).unwrap();
        let lo = LaurentFrac::new(-Laurent::one(), den).unwrap();
        acc = &acc * &BiLaurent::from_terms([(2, hi), (0, lo)]);
    }
    acc
}

pub fn specialize(f: &BiLaurent, mode: Specialization) -> Result<Laurent, Error> {
    f.specialize(mode)
}

pub fn eval_q(p: &Laurent, q: i64) -> Result<BigRational, Error> {
    p.eval_q(q)
}

impl fmt::Display for Specialization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Specialization::VPow(a) => write!(f, "v'=v^{}", -a),
            Specialization::One => f.write_str("v'=1"),
        }
    }
}

impl Specialization {
    pub fn label(&self) -> String {
        self.to_string()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn l(s: &str) -> Laurent {
        s.parse().unwrap()
    }

    #[test]
    fn quantum_integers_and_factorials() {
        assert!(qint(0).is_zero());
        assert_eq!(qint(1), Laurent::one());
        assert_eq!(qint(2), l("v + v^-1"));
        assert_eq!(qfact(0), Laurent::one());
        assert_eq!(qfact(2), l("v + v^-1"));
        assert_eq!(qfact(3), l("v + v^-1") * l("v^2 + 1 + v^-2"));
        // defining quotient (v^t - v^-t)/(v - v^-1)
        for t in 0..7 {
            let q = (Laurent::v(t) - Laurent::v(-t)).div_exact(&l("v - v^-1")).unwrap();
            assert_eq!(q, qint(t as u32));
        }
    }

    #[test]
    fn gaussian_values() {
        assert_eq!(gauss2(5, 0), Laurent::one());
        assert_eq!(gauss2(2, 1), l("v^2 + 1"));
        assert_eq!(gauss2(1, 1), Laurent::one());
        assert!(gauss2(1, 2).is_zero());
        assert_eq!(gauss2(4, 2), l("v^8 + v^6 + 2v^4 + v^2 + 1"));
    }

    #[test]
    fn gaussian_pascal_and_symmetry() {
        for n in 1..=8i64 {
            for t in 1..=n as u32 {
                let lhs = gauss2(n, t);
                let rhs = Laurent::v(2 * t as i64) * gauss2(n - 1, t) + gauss2(n - 1, t - 1);
                assert_eq!(lhs, rhs, "pascal n={n} t={t}");
                assert_eq!(gauss2(n, t), gauss2(n, n as u32 - t));
                // [[N t]][[N-t s]] = [[N t+s]][[t+s t]]
                for s in 0..=(n as u32 - t) {
                    assert_eq!(
                        gauss2(n, t) * gauss2(n - t as i64, s),
                        gauss2(n, t + s) * gauss2((t + s) as i64, t)
                    );
                }
            }
        }
    }

    #[test]
    fn balanced_binomials() {
        assert_eq!(balanced_binom(7, 0), Laurent::one());
        assert!(balanced_binom(1, 2).is_zero());
        assert_eq!(balanced_binom(2, 1), l("v + v^-1"));
        for a in -4..8i64 {
            for t in 0..4u32 {
                let g = gauss2(a, t).shift(-(t as i64) * (a - t as i64));
                assert_eq!(balanced_binom(a, t), g, "a={a} t={t}");
            }
        }
    }

    #[test]
    fn bracket_factorials() {
        assert_eq!(bracket_fact_eval(3, 0), Laurent::one());
        assert!(bracket_fact_eval(0, 1).is_zero());
        assert_eq!(bracket_fact_eval(2, 1), l("v^2 - 1"));
        for lam in -2..6 {
            for t in 0..5u32 {
                let z = bracket_fact_eval(lam, t).is_zero();
                assert_eq!(z, 0 <= lam && lam < t as i64);
            }
        }
    }

    #[test]
    fn stabilization_binomials() {
        assert_eq!(stab_binom(&[]), BiLaurent::one());
        let f = stab_binom(&[1]);
        assert_eq!(f.specialize(Specialization::VPow(1)).unwrap(), l("v^-2 + 1"));
        assert_eq!(f.specialize(Specialization::VPow(1)).unwrap(), gauss2(2, 1).bar());
        assert_eq!(f.specialize(Specialization::One).unwrap(), Laurent::one());
        for m in -3..4i64 {
            for t in 0..=3u32 {
                let c: Vec<i64> = (1..=t as i64).map(|j| m + t as i64 - j + 1).collect();
                let f = stab_binom(&c);
                for a in 0..5i64 {
                    if m + a < 0 {
                        continue;
                    }
                    let s = f.specialize(Specialization::VPow(a)).unwrap();
                    assert_eq!(s, gauss2(m + a + t as i64, t).bar(), "m={m} t={t} a={a}");
                }
            }
        }
    }

    #[test]
    fn eval_at_q() {
        assert_eq!(Laurent::one().eval_q(2).unwrap(), BigRational::one());
        assert_eq!(l("v^2 + 1").eval_q(2).unwrap(), BigRational::from_integer(3.into()));
        assert!(l("v + v^-1").eval_q(2).is_err());
    }

    #[test]
    fn parse_render_roundtrip() {
        for s in ["v^2 + 1 + v^-2", "0", "-v", "-2 + 3*v^-1", "-5*v^4 + v - 7*v^-3", "2*v"] {
            assert_eq!(l(s).to_string(), s);
        }
        assert_eq!(l("2v^2+v^(-1)"), l("2*v^2 + v^-1"));
        assert!("v^".parse::<Laurent>().is_err());
        assert!("".parse::<Laurent>().is_err());
        assert!("x".parse::<Laurent>().is_err());
    }

    #[test]
    fn fraction_normal_form() {
        let a = LaurentFrac::new(l("v^2 - 1"), l("v - 1")).unwrap();
        assert_eq!(a.to_laurent().unwrap(), l("v + 1"));
        let b = LaurentFrac::new(l("2"), l("-4v^3 - 2v^2")).unwrap();
        assert_eq!(b.den(), &l("2v + 1"));
        assert_eq!(b.num(), &l("-v^-2"));
        let c = LaurentFrac::new(l("v^-1"), l("1 - v^-2")).unwrap();
        assert_eq!(&c + &(-&c), LaurentFrac::zero());
        assert!(LaurentFrac::new(l("1"), Laurent::zero()).is_err());
    }
}
