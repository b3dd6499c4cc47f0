//! Stabilized multiplication over matrices with possibly negative diagonal:
//! structure polynomials f_{A,B,C}(v, v'), the algebra K(infinity) at v' = 1,
//! and the projections onto K(infinity, r).

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::fmt;

use crate::matrix::{IntMatZ, Window};
use crate::ring::{stab_binom, BiLaurent, Laurent, LaurentFrac, Specialization};
use crate::schur::{bar_gauss_product, combo_add, combo_axpy, AlmostDiag, Combo, Engine, FundTerm, Rule, SchurElem};
use crate::Error;

pub(crate) struct StabRule;

impl Rule for StabRule {
    type C = BiLaurent;
    const STABILIZED: bool = true;
    fn coefficient(&self, t: &FundTerm) -> BiLaurent {
        let g = LaurentFrac::from_laurent(bar_gauss_product(&t.gauss).shift(t.exp));
        match t.stab {
            Some((diag, nu)) if nu > 0 => {
                let c: Vec<i64> = (1..=nu as i64).map(|j| diag + nu as i64 - j + 1).collect();
                stab_binom(&c).scale(&g)
            }
            _ => BiLaurent::from_frac(g),
        }
    }
}

static STAB: Engine<StabRule> = Engine::new(StabRule);

pub fn clear_caches() {
    STAB.clear();
}

/// Combination of symbols [A], A with nonnegative off-diagonal entries.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct StabElem {
    terms: Combo<BiLaurent>,
}

fn check_tilde(a: &IntMatZ) -> Result<(), Error> {
    if !a.is_tilde() {
        return Err(Error::Domain(alloc::format!("{a:?} has a negative off-diagonal entry")));
    }
    Ok(())
}

impl StabElem {
    pub fn zero() -> Self {
        StabElem { terms: Combo::new() }
    }

    pub fn basis(a: IntMatZ) -> Result<Self, Error> {
        check_tilde(&a)?;
        let mut terms = Combo::new();
        terms.insert(a, BiLaurent::one());
        Ok(StabElem { terms })
    }

    pub fn from_terms<I: IntoIterator<Item = (IntMatZ, BiLaurent)>>(it: I) -> Result<Self, Error> {
        let mut terms = Combo::new();
        for (a, c) in it {
            check_tilde(&a)?;
            combo_add(&mut terms, a, &c);
        }
        Ok(StabElem { terms })
    }

    pub fn terms(&self) -> &Combo<BiLaurent> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn specialize(&self, mode: Specialization) -> Result<KElem, Error> {
        let mut terms = Combo::new();
        for (a, c) in &self.terms {
            combo_add(&mut terms, a.clone(), &c.specialize(mode)?);
        }
        Ok(KElem { terms })
    }
}

impl fmt::Display for StabElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        crate::schur::fmt_combo(f, &self.terms)
    }
}

impl fmt::Debug for StabElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "StabElem({self})")
    }
}

/// Element of K(infinity): Laurent combination of [A], A in tilde-Xi.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct KElem {
    terms: Combo<Laurent>,
}

impl KElem {
    pub fn zero() -> Self {
        KElem { terms: Combo::new() }
    }

    pub fn basis(a: IntMatZ) -> Result<Self, Error> {
        check_tilde(&a)?;
        let mut terms = Combo::new();
        terms.insert(a, Laurent::one());
        Ok(KElem { terms })
    }

    pub fn from_terms<I: IntoIterator<Item = (IntMatZ, Laurent)>>(it: I) -> Result<Self, Error> {
        let mut terms = Combo::new();
        for (a, c) in it {
            check_tilde(&a)?;
            combo_add(&mut terms, a, &c);
        }
        Ok(KElem { terms })
    }

    pub fn terms(&self) -> &Combo<Laurent> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The anti-automorphism [A] -> [A^T].
    pub fn transpose(&self) -> KElem {
        KElem { terms: self.terms.iter().map(|(a, c)| (a.transpose(), c.clone())).collect() }
    }
}

impl fmt::Display for KElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        crate::schur::fmt_combo(f, &self.terms)
    }
}

impl fmt::Debug for KElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "KElem({self})")
    }
}

/// [B] X with the v'-carrying coefficients.
pub fn stab_fundamental_left(b: &AlmostDiag, x: &StabElem) -> Result<StabElem, Error> {
    check_tilde(&b.base)?;
    Ok(StabElem { terms: STAB.fundamental(b, &x.terms) })
}

/// All nonzero f_{A,B,C}; empty when co(A) != ro(B).
pub fn f_poly(a: &IntMatZ, b: &IntMatZ) -> Result<BTreeMap<IntMatZ, BiLaurent>, Error> {
    check_tilde(a)?;
    check_tilde(b)?;
    Ok((*STAB.basis_product(a, b)).clone())
}

/// Ordered product of the stabilized chain of A.
pub fn stab_chain_product(a: &IntMatZ) -> Result<StabElem, Error> {
    check_tilde(a)?;
    Ok(StabElem { terms: STAB.chain_product(a) })
}

pub fn stab_multiply(x: &StabElem, y: &StabElem) -> StabElem {
    StabElem { terms: STAB.multiply(&x.terms, &y.terms) }
}

/// Product in K(infinity): [A][B] = sum_C f_{A,B,C}(v, 1) [C].
pub fn kinf_multiply(x: &KElem, y: &KElem) -> Result<KElem, Error> {
    let mut out = Combo::new();
    for (a, ca) in &x.terms {
        for (b, cb) in &y.terms {
            if a.co() != b.ro() {
                continue;
            }
            let mut prod = Combo::new();
            for (c, f) in STAB.basis_product(a, b).iter() {
                combo_add(&mut prod, c.clone(), &f.specialize(Specialization::One)?);
            }
            combo_axpy(&mut out, &(ca * cb), &prod);
        }
    }
    Ok(KElem { terms: out })
}

/// [A] if A is nonnegative with sum r, else zero, in K(window, r).
pub fn dot_zeta(a: &IntMatZ, r: i64, window: &Window) -> Result<SchurElem, Error> {
    check_tilde(a)?;
    if a.is_nonneg() && a.sigma() == r {
        SchurElem::basis(*window, r, a.clone())
    } else {
        Ok(SchurElem::zero(*window, r))
    }
}

/// Extend `dot_zeta` linearly.
pub fn dot_zeta_elem(x: &KElem, r: i64, window: &Window) -> Result<SchurElem, Error> {
    let mut out = SchurElem::zero(*window, r);
    for (a, c) in &x.terms {
        out = out.add(&dot_zeta(a, r, window)?.scale(c))?;
    }
    Ok(out)
}

/// sum_C f_{A,B,C}(v, v^{-a}) [aC] on a window, the prediction for [aA][aB].
pub fn specialized_product(a: &IntMatZ, b: &IntMatZ, shift: i64, window: &Window) -> Result<SchurElem, Error> {
    let r = a.sigma() + shift * window.len() as i64;
    let mut terms = Vec::new();
    for (c, f) in f_poly(a, b)? {
        let k = f.specialize(Specialization::VPow(shift))?;
        if k.is_zero() {
            continue;
        }
        terms.push((c.a_shift(shift, window)?, k));
    }
    SchurElem::from_terms(*window, r, terms)
}
