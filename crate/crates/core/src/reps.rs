//! Tableau combinatorics, Specht and Weyl module dimensions, and the
//! tensor-space decomposition identity.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::fmt;

use crate::hecke::{self, HeckeElem, Perm, TensorElem};
use crate::linalg;
use crate::matrix::{enum_compositions, Composition, IntMatZ, Window};
use crate::ring::Laurent;
use crate::schur::SchurElem;
use crate::Error;

/// Filled Young diagram; row k has `shape[k]` entries.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Tableau {
    pub rows: Vec<Vec<i64>>,
}

impl Tableau {
    pub fn shape(&self) -> Vec<i64> {
        self.rows.iter().map(|r| r.len() as i64).collect()
    }

    /// Rows weakly increase, columns strictly increase.
    pub fn is_semistandard(&self) -> bool {
        let rows_ok = self.rows.iter().all(|r| r.windows(2).all(|p| p[0] <= p[1]));
        let cols_ok = self.rows.windows(2).all(|p| p[1].iter().zip(&p[0]).all(|(lo, hi)| lo > hi));
        rows_ok && cols_ok
    }

    pub fn content(&self) -> Composition {
        Composition::from_pairs(self.rows.iter().flatten().map(|i| (*i, 1)))
    }
}

impl fmt::Display for Tableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, r) in self.rows.iter().enumerate() {
            if k > 0 {
                f.write_str("/")?;
            }
            for (j, x) in r.iter().enumerate() {
                if j > 0 {
                    f.write_str(" ")?;
                }
                write!(f, "{x}")?;
            }
        }
        Ok(())
    }
}

pub fn is_partition(mu: &[i64]) -> bool {
    mu.iter().all(|x| *x > 0) && mu.windows(2).all(|p| p[0] >= p[1])
}

fn check_partition(mu: &[i64]) -> Result<(), Error> {
    if !is_partition(mu) {
        return Err(Error::Domain(alloc::format!("{mu:?} is not a partition")));
    }
    Ok(())
}

/// Partitions of r in reverse lexicographic order.
pub fn partitions(r: i64) -> Vec<Vec<i64>> {
    fn rec(left: i64, cap: i64, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if left == 0 {
            out.push(cur.clone());
            return;
        }
        for x in (1..=left.min(cap)).rev() {
            cur.push(x);
            rec(left - x, x, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(r, r, &mut Vec::new(), &mut out);
    out
}

pub fn transpose_partition(mu: &[i64]) -> Vec<i64> {
    let top = mu.first().copied().unwrap_or(0);
    (1..=top).map(|i| mu.iter().filter(|x| **x >= i).count() as i64).collect()
}

/// Semistandard tableaux of shape mu and content lambda, filled letter by
/// letter: the cells holding letter i form a horizontal strip.
pub fn ssyt_list(mu: &[i64], lambda: &Composition) -> Result<Vec<Tableau>, Error> {
    check_partition(mu)?;
    if !lambda.is_nonneg() || lambda.sum() != mu.iter().sum::<i64>() {
        return Err(Error::Domain(alloc::format!("content {lambda} does not match shape {mu:?}")));
    }
    let letters: Vec<(i64, i64)> = lambda.parts().to_vec();
    let mut out = Vec::new();
    let mut rows: Vec<Vec<i64>> = alloc::vec![Vec::new(); mu.len()];
    fn strips(k: usize, left: i64, shape: &[i64], rows: &[Vec<i64>], cur: &mut Vec<i64>, acc: &mut Vec<Vec<i64>>) {
        // cur[k] cells added to row k, bounded by the shape and by the row above
        if k == rows.len() {
            if left == 0 {
                acc.push(cur.clone());
            }
            return;
        }
        let len = rows[k].len() as i64;
        let cap = if k == 0 { shape[0] - len } else { (rows[k - 1].len() as i64).min(shape[k]) - len };
        for x in 0..=cap.max(0).min(left) {
            cur.push(x);
            strips(k + 1, left - x, shape, rows, cur, acc);
            cur.pop();
        }
    }
    fn rec(idx: usize, letters: &[(i64, i64)], shape: &[i64], rows: &mut Vec<Vec<i64>>, out: &mut Vec<Tableau>) {
        if idx == letters.len() {
            out.push(Tableau { rows: rows.clone() });
            return;
        }
        let (letter, n) = letters[idx];
        let mut choices = Vec::new();
        strips(0, n, shape, rows, &mut Vec::new(), &mut choices);
        for ch in choices {
            for (k, x) in ch.iter().enumerate() {
                rows[k].extend(core::iter::repeat_n(letter, *x as usize));
            }
            rec(idx + 1, letters, shape, rows, out);
            for (k, x) in ch.iter().enumerate() {
                let l = rows[k].len() - *x as usize;
                rows[k].truncate(l);
            }
        }
    }
    rec(0, &letters, mu, &mut rows, &mut out);
    Ok(out)
}

pub fn ssyt_count(mu: &[i64], lambda: &Composition) -> Result<usize, Error> {
    Ok(ssyt_list(mu, lambda)?.len())
}

/// Standard tableaux: content (1, ..., 1).
pub fn syt_count(mu: &[i64]) -> Result<usize, Error> {
    let r: i64 = mu.iter().sum();
    ssyt_count(mu, &Composition::from_pairs((1..=r).map(|i| (i, 1))))
}

/// lambda (parts sorted decreasingly) is dominated by mu.
pub fn dominated(lambda: &Composition, mu: &[i64]) -> bool {
    let mut l: Vec<i64> = lambda.parts().iter().map(|p| p.1).filter(|x| *x > 0).collect();
    l.sort_unstable_by(|a, b| b.cmp(a));
    let (mut sl, mut sm) = (0, 0);
    for k in 0..l.len().max(mu.len()) {
        sl += l.get(k).copied().unwrap_or(0);
        sm += mu.get(k).copied().unwrap_or(0);
        if sl > sm {
            return false;
        }
    }
    sl == sm
}

fn mu_comp(mu: &[i64], start: i64) -> Composition {
    Composition::from_slice(start, mu)
}

/// Rank of {z_mu T_w : w in S_r} in the Hecke algebra.
pub fn specht_dim(mu: &[i64]) -> Result<usize, Error> {
    check_partition(mu)?;
    let r = mu.iter().sum::<i64>() as usize;
    let z = hecke::z_element(&mu_comp(mu, 1))?;
    let perms = Perm::all(r);
    let rows: Vec<Vec<Laurent>> = perms
        .iter()
        .map(|w| {
            let zw = hecke::hecke_mult(&z, &HeckeElem::capital(w.clone())).unwrap();
            perms.iter().map(|u| zw.coeff(u, hecke::Basis::Script)).collect()
        })
        .collect();
    linalg::certified_rank(&rows)
}

/// Nonnegative matrices with the given row and column sums.
pub fn matrices_with_margins(ro: &Composition, co: &Composition) -> Vec<IntMatZ> {
    let rows: Vec<(i64, i64)> = ro.parts().iter().copied().filter(|p| p.1 > 0).collect();
    let cols: Vec<(i64, i64)> = co.parts().iter().copied().filter(|p| p.1 > 0).collect();
    let mut out = Vec::new();
    if ro.sum() != co.sum() {
        return out;
    }
    fn rec(k: usize, rows: &[(i64, i64)], cols: &[(i64, i64)], left: &mut Vec<i64>, acc: &mut Vec<(i64, i64, i64)>, out: &mut Vec<IntMatZ>) {
        if k == rows.len() {
            if left.iter().all(|x| *x == 0) {
                out.push(IntMatZ::from_entries(acc.iter().copied()));
            }
            return;
        }
        let mut choice = alloc::vec![0i64; cols.len()];
        fn fill(c: usize, need: i64, k: usize, rows: &[(i64, i64)], cols: &[(i64, i64)], left: &mut Vec<i64>, choice: &mut Vec<i64>, acc: &mut Vec<(i64, i64, i64)>, out: &mut Vec<IntMatZ>) {
            if c == cols.len() {
                if need == 0 {
                    let n = acc.len();
                    for (j, x) in choice.iter().enumerate() {
                        acc.push((rows[k].0, cols[j].0, *x));
                        left[j] -= x;
                    }
                    rec(k + 1, rows, cols, left, acc, out);
                    for (j, x) in choice.iter().enumerate() {
                        left[j] += x;
                    }
                    acc.truncate(n);
                }
                return;
            }
            for x in 0..=need.min(left[c]) {
                choice[c] = x;
                fill(c + 1, need - x, k, rows, cols, left, choice, acc, out);
            }
            choice[c] = 0;
        }
        fill(0, rows[k].1, k, rows, cols, left, &mut choice, acc, out);
    }
    let mut left: Vec<i64> = cols.iter().map(|p| p.1).collect();
    rec(0, &rows, &cols, &mut left, &mut Vec::new(), &mut out);
    out
}

/// The tensor z_mu = x_mu T_{w_mu} y_{mu^t} with mu placed from the window's
/// lower end; the window is widened upward when mu has more parts than fit.
pub fn z_tensor(mu: &[i64], window: &Window) -> Result<(Window, Composition, TensorElem), Error> {
    check_partition(mu)?;
    let need = Window::new(window.lo, window.lo + mu.len().max(1) as i64 - 1)?;
    let hull = window.hull(&need);
    let m = mu_comp(mu, window.lo);
    let w = hecke::w_lambda(&m)?;
    let h = hecke::hecke_mult(&HeckeElem::capital(w), &hecke::y_lambda(&hecke::conjugate(&m))?)?;
    Ok((hull, m.clone(), hecke::x_module_to_tensor(&m, &h, hull)?))
}

/// dim W(eta, mu)_lambda for every lambda in Lambda(eta, r): the rank of
/// {[A] z_mu : ro(A) = lambda, co(A) = mu}. When mu does not fit in eta the
/// computation runs in a widened window and only weights inside eta are kept.
pub fn weyl_weight_dims(mu: &[i64], window: &Window) -> Result<BTreeMap<Composition, usize>, Error> {
    let r: i64 = mu.iter().sum();
    let (hull, m, z) = z_tensor(mu, window)?;
    let mut out = BTreeMap::new();
    for lam in enum_compositions(window, r, None) {
        let mut vecs = Vec::new();
        for a in matrices_with_margins(&lam, &m) {
            let t = hecke::schur_on_tensor(&SchurElem::basis(hull, r, a)?, &z)?;
            vecs.push(t);
        }
        let words: Vec<Vec<i64>> = {
            let mut ws: Vec<Vec<i64>> = vecs.iter().flat_map(|t| t.terms().keys().cloned()).collect();
            ws.sort();
            ws.dedup();
            ws
        };
        let rows: Vec<Vec<Laurent>> = vecs.iter().map(|t| words.iter().map(|w| t.coeff(w)).collect()).collect();
        let rank = if words.is_empty() { 0 } else { linalg::certified_rank(&rows)? };
        out.insert(lam, rank);
    }
    Ok(out)
}

/// Outcome of the bimodule dimension identity at one (eta, r).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecompReport {
    pub window: Window,
    pub r: i64,
    /// sum over mu of dim W(eta, mu) dim S^mu.
    pub total: usize,
    /// |eta|^r.
    pub expected: usize,
    /// (lambda, sum_mu #SSYT(mu, lambda) dim S^mu, number of words of weight lambda).
    pub per_weight: Vec<(Composition, usize, usize)>,
}

impl DecompReport {
    pub fn holds(&self) -> bool {
        self.total == self.expected && self.per_weight.iter().all(|(_, a, b)| a == b)
    }
}

fn multinomial(l: &Composition) -> usize {
    let mut acc: u128 = 1;
    let mut n: u128 = 0;
    for (_, x) in l.parts() {
        for k in 1..=*x as u128 {
            n += 1;
            acc = acc * n / k;
        }
    }
    acc as usize
}

pub fn tensor_decomp_check(window: &Window, r: i64) -> Result<DecompReport, Error> {
    let parts = partitions(r);
    let mut spechts = Vec::new();
    let mut total = 0;
    for mu in &parts {
        let s = specht_dim(mu)?;
        let w: usize = weyl_weight_dims(mu, window)?.values().sum();
        total += w * s;
        spechts.push(s);
    }
    let mut per_weight = Vec::new();
    for lam in enum_compositions(window, r, None) {
        let mut lhs = 0;
        for (mu, s) in parts.iter().zip(&spechts) {
            lhs += ssyt_count(mu, &lam)? * s;
        }
        per_weight.push((lam.clone(), lhs, multinomial(&lam)));
    }
    Ok(DecompReport { window: *window, r, total, expected: window.len().pow(r as u32), per_weight })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(start: i64, xs: &[i64]) -> Composition {
        Composition::from_slice(start, xs)
    }

    fn w(lo: i64, hi: i64) -> Window {
        Window::new(lo, hi).unwrap()
    }

    #[test]
    fn tableau_counts() {
        assert_eq!(ssyt_count(&[2], &c(1, &[2])).unwrap(), 1);
        assert_eq!(ssyt_count(&[1, 1], &c(1, &[2])).unwrap(), 0);
        assert_eq!(ssyt_count(&[2, 1], &c(1, &[1, 1, 1])).unwrap(), 2);
        assert_eq!(ssyt_count(&[2, 2], &c(1, &[2, 1, 1])).unwrap(), 1);
        assert_eq!(syt_count(&[3, 2]).unwrap(), 5);
        assert_eq!(syt_count(&[2, 2, 1]).unwrap(), 5);
        assert!(ssyt_count(&[1, 2], &c(1, &[3])).is_err());
        for t in ssyt_list(&[3, 2, 1], &c(1, &[2, 2, 2])).unwrap() {
            assert!(t.is_semistandard());
            assert_eq!(t.content(), c(1, &[2, 2, 2]));
            assert_eq!(t.shape(), [3, 2, 1]);
        }
    }

    #[test]
    fn kostka_against_brute_force() {
        // fill cells in every possible way and keep the semistandard ones
        for r in 1..=4 {
            for mu in partitions(r) {
                for lam in enum_compositions(&w(1, 3), r, None) {
                    let letters: Vec<i64> = hecke::sorted_word(&lam);
                    let mut seen = alloc::collections::BTreeSet::new();
                    for p in Perm::all(r as usize) {
                        let fill: Vec<i64> = (0..r as usize).map(|k| letters[p.at(k)]).collect();
                        let mut rows = Vec::new();
                        let mut at = 0;
                        for len in &mu {
                            rows.push(fill[at..at + *len as usize].to_vec());
                            at += *len as usize;
                        }
                        let t = Tableau { rows };
                        if t.is_semistandard() {
                            seen.insert(t);
                        }
                    }
                    assert_eq!(ssyt_count(&mu, &lam).unwrap(), seen.len(), "{mu:?} {lam}");
                }
            }
        }
    }

    #[test]
    fn partitions_and_conjugates() {
        assert_eq!(partitions(4).len(), 5);
        assert_eq!(transpose_partition(&[2]), [1, 1]);
        assert_eq!(transpose_partition(&[1, 1]), [2]);
        assert_eq!(transpose_partition(&[2, 1]), [2, 1]);
        for mu in partitions(5) {
            assert_eq!(transpose_partition(&transpose_partition(&mu)), mu);
        }
    }

    #[test]
    fn specht_dimensions() {
        assert_eq!(specht_dim(&[2]).unwrap(), 1);
        assert_eq!(specht_dim(&[1, 1]).unwrap(), 1);
        assert_eq!(specht_dim(&[2, 1]).unwrap(), 2);
        assert_eq!(specht_dim(&[3]).unwrap(), 1);
    }

    #[test]
    fn weyl_examples() {
        let d = weyl_weight_dims(&[2], &w(1, 2)).unwrap();
        assert_eq!(d.values().copied().collect::<Vec<_>>(), [1, 1, 1]);
        let d = weyl_weight_dims(&[1, 1], &w(1, 2)).unwrap();
        assert_eq!(d[&c(1, &[1, 1])], 1);
        assert_eq!(d.values().sum::<usize>(), 1);
        let d = weyl_weight_dims(&[2, 1], &w(1, 2)).unwrap();
        assert_eq!((d[&c(1, &[1, 2])], d[&c(1, &[2, 1])]), (1, 1));
        assert_eq!(d.values().sum::<usize>(), 2);
        assert_eq!(weyl_weight_dims(&[1, 1], &w(1, 1)).unwrap().values().sum::<usize>(), 0);
    }

    #[test]
    fn decomposition_examples() {
        let r = tensor_decomp_check(&w(1, 2), 2).unwrap();
        assert_eq!((r.total, r.expected), (4, 4));
        assert!(r.holds());
        let r = tensor_decomp_check(&w(1, 1), 2).unwrap();
        assert_eq!((r.total, r.expected), (1, 1));
        let r = tensor_decomp_check(&w(1, 2), 1).unwrap();
        assert_eq!((r.total, r.expected), (2, 2));
    }

    #[test]
    fn dominance() {
        assert!(dominated(&c(1, &[1, 2]), &[2, 1]));
        assert!(!dominated(&c(1, &[3, 0]), &[2, 1]));
        assert!(dominated(&c(1, &[1, 1, 1]), &[2, 1]));
    }

    #[test]
    fn margins() {
        assert_eq!(matrices_with_margins(&c(1, &[1, 1]), &c(1, &[1, 1])).len(), 2);
        assert_eq!(matrices_with_margins(&c(1, &[2, 1]), &c(1, &[1, 1, 1])).len(), 3);
        assert!(matrices_with_margins(&c(1, &[2]), &c(1, &[1])).is_empty());
    }
}
