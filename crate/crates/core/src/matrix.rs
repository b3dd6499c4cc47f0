//! Finite-support integer matrices indexed by Z x Z, compositions, windows,
//! and the corner-sum order.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::Error;

/// A finite consecutive segment `[lo, hi]` of Z.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Window {
    pub lo: i64,
    pub hi: i64,
}

impl Window {
    pub fn new(lo: i64, hi: i64) -> Result<Self, Error> {
        if lo > hi {
            return Err(Error::Domain(alloc::format!("empty window {lo}:{hi}")));
        }
        Ok(Window { lo, hi })
    }

    pub fn len(&self) -> usize {
        (self.hi - self.lo + 1) as usize
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn contains(&self, i: i64) -> bool {
        self.lo <= i && i <= self.hi
    }

    pub fn indices(&self) -> core::ops::RangeInclusive<i64> {
        self.lo..=self.hi
    }

    /// The window with its last index removed (empty when `lo == hi`).
    pub fn without_last(&self) -> core::ops::Range<i64> {
        self.lo..self.hi
    }

    pub fn contains_window(&self, o: &Window) -> bool {
        self.lo <= o.lo && o.hi <= self.hi
    }

    /// Smallest window containing both.
    pub fn hull(&self, o: &Window) -> Window {
        Window { lo: self.lo.min(o.lo), hi: self.hi.max(o.hi) }
    }
}

impl fmt::Display for Window {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.lo, self.hi)
    }
}

impl core::str::FromStr for Window {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        let bad = || Error::Parse(alloc::format!("window {s:?}: expected m:n"));
        let (a, b) = s.trim().split_once(':').ok_or_else(bad)?;
        let lo = a.trim().parse().map_err(|_| bad())?;
        let hi = b.trim().parse().map_err(|_| bad())?;
        Window::new(lo, hi)
    }
}

/// Finitely supported integer sequence on Z. Sorted by index, no zero parts.
/// Nonnegativity is checked where an operation needs a genuine composition.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Composition {
    parts: Vec<(i64, i64)>,
}

impl Composition {
    pub fn zero() -> Self {
        Composition { parts: Vec::new() }
    }

    pub fn from_pairs<I: IntoIterator<Item = (i64, i64)>>(it: I) -> Self {
        let mut v: Vec<(i64, i64)> = Vec::new();
        for (i, x) in it {
            v.push((i, x));
        }
        v.sort_unstable_by_key(|p| p.0);
        let mut out: Vec<(i64, i64)> = Vec::with_capacity(v.len());
        for (i, x) in v {
            match out.last_mut() {
                Some(l) if l.0 == i => l.1 += x,
                _ => out.push((i, x)),
            }
        }
        out.retain(|p| p.1 != 0);
        Composition { parts: out }
    }

    /// Parts `xs[k]` placed at indices `start + k`.
    pub fn from_slice(start: i64, xs: &[i64]) -> Self {
        Self::from_pairs(xs.iter().enumerate().map(|(k, x)| (start + k as i64, *x)))
    }

    /// The unit sequence e_i.
    pub fn unit(i: i64) -> Self {
        Composition { parts: alloc::vec![(i, 1)] }
    }

    /// alpha_i = e_i - e_{i+1}.
    pub fn alpha(i: i64) -> Self {
        Self::from_pairs([(i, 1), (i + 1, -1)])
    }

    /// beta_i = -e_i - e_{i+1}.
    pub fn beta(i: i64) -> Self {
        Self::from_pairs([(i, -1), (i + 1, -1)])
    }

    pub fn get(&self, i: i64) -> i64 {
        match self.parts.binary_search_by_key(&i, |p| p.0) {
            Ok(k) => self.parts[k].1,
            Err(_) => 0,
        }
    }

    pub fn parts(&self) -> &[(i64, i64)] {
        &self.parts
    }

    pub fn sum(&self) -> i64 {
        self.parts.iter().map(|p| p.1).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn is_nonneg(&self) -> bool {
        self.parts.iter().all(|p| p.1 >= 0)
    }

    pub fn support_in(&self, w: &Window) -> bool {
        self.parts.iter().all(|p| w.contains(p.0))
    }

    pub fn add(&self, o: &Composition) -> Composition {
        Self::from_pairs(self.parts.iter().chain(o.parts.iter()).copied())
    }

    pub fn sub(&self, o: &Composition) -> Composition {
        Self::from_pairs(self.parts.iter().copied().chain(o.parts.iter().map(|p| (p.0, -p.1))))
    }

    pub fn scaled(&self, c: i64) -> Composition {
        Self::from_pairs(self.parts.iter().map(|p| (p.0, p.1 * c)))
    }

    pub fn dot(&self, o: &Composition) -> i64 {
        self.parts.iter().map(|(i, x)| x * o.get(*i)).sum()
    }

    /// Pointwise `self <= o`.
    pub fn le(&self, o: &Composition) -> bool {
        self.parts.iter().all(|(i, x)| *x <= o.get(*i)) && o.parts.iter().all(|(i, y)| self.get(*i) <= *y)
    }

    /// Dense values on a window.
    pub fn dense(&self, w: &Window) -> Vec<i64> {
        w.indices().map(|i| self.get(i)).collect()
    }

    /// Max absolute part.
    pub fn sup_norm(&self) -> i64 {
        self.parts.iter().map(|p| p.1.abs()).max().unwrap_or(0)
    }
}

impl fmt::Display for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (k, (i, x)) in self.parts.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{i}:{x}")?;
        }
        f.write_str("]")
    }
}

impl fmt::Debug for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// All lambda in Lambda(w, r), optionally bounded pointwise, in
/// lexicographic order of the dense vector read from `w.lo` (largest first).
pub fn enum_compositions(w: &Window, r: i64, bound: Option<&Composition>) -> Vec<Composition> {
    let idx: Vec<i64> = w.indices().collect();
    let caps: Vec<i64> = idx.iter().map(|i| bound.map_or(r, |b| b.get(*i).min(r))).collect();
    let mut out = Vec::new();
    if r < 0 {
        return out;
    }
    let mut cur = alloc::vec![0i64; idx.len()];
    fn rec(k: usize, left: i64, caps: &[i64], cur: &mut Vec<i64>, idx: &[i64], out: &mut Vec<Composition>) {
        if k + 1 == cur.len() {
            if left <= caps[k] && left >= 0 {
                cur[k] = left;
                out.push(Composition::from_pairs(idx.iter().copied().zip(cur.iter().copied())));
            }
            return;
        }
        let top = left.min(caps[k]);
        for x in (0..=top).rev() {
            cur[k] = x;
            rec(k + 1, left - x, caps, cur, idx, out);
        }
        cur[k] = 0;
    }
    rec(0, r, &caps, &mut cur, &idx, &mut out);
    out
}

/// Finite-support matrix over Z x Z. Entries sorted by (row, col), no zeros.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntMatZ {
    entries: Vec<((i64, i64), i64)>,
}

/// Result of comparing two matrices under the corner-sum order.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OrderCmp {
    Less,
    Equal,
    Greater,
    Incomparable,
}

/// sigma, deg, norm and d of a matrix.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MatStats {
    pub sigma: i64,
    pub deg: i64,
    pub norm: i64,
    pub d: i64,
}

impl IntMatZ {
    pub fn zero() -> Self {
        IntMatZ { entries: Vec::new() }
    }

    pub fn from_entries<I: IntoIterator<Item = (i64, i64, i64)>>(it: I) -> Self {
        let mut v: Vec<((i64, i64), i64)> = it.into_iter().map(|(i, j, a)| ((i, j), a)).collect();
        v.sort_unstable_by_key(|e| e.0);
        let mut out: Vec<((i64, i64), i64)> = Vec::with_capacity(v.len());
        for (k, a) in v {
            match out.last_mut() {
                Some(l) if l.0 == k => l.1 += a,
                _ => out.push((k, a)),
            }
        }
        out.retain(|e| e.1 != 0);
        IntMatZ { entries: out }
    }

    /// The matrix unit E_{i,j}.
    pub fn unit(i: i64, j: i64) -> Self {
        IntMatZ { entries: alloc::vec![((i, j), 1)] }
    }

    pub fn diag(l: &Composition) -> Self {
        IntMatZ { entries: l.parts().iter().map(|(i, x)| ((*i, *i), *x)).collect() }
    }

    /// Dense rows placed with top-left corner at `(start, start)`.
    pub fn from_dense(start: i64, rows: &[&[i64]]) -> Self {
        Self::from_entries(rows.iter().enumerate().flat_map(|(r, row)| {
            row.iter().enumerate().map(move |(c, a)| (start + r as i64, start + c as i64, *a))
        }))
    }

    pub fn get(&self, i: i64, j: i64) -> i64 {
        match self.entries.binary_search_by_key(&(i, j), |e| e.0) {
            Ok(k) => self.entries[k].1,
            Err(_) => 0,
        }
    }

    pub fn entries(&self) -> impl Iterator<Item = (i64, i64, i64)> + '_ {
        self.entries.iter().map(|((i, j), a)| (*i, *j, *a))
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn add(&self, o: &IntMatZ) -> IntMatZ {
        Self::from_entries(self.entries().chain(o.entries()))
    }

    pub fn sub(&self, o: &IntMatZ) -> IntMatZ {
        Self::from_entries(self.entries().chain(o.entries().map(|(i, j, a)| (i, j, -a))))
    }

    pub fn scaled(&self, c: i64) -> IntMatZ {
        Self::from_entries(self.entries().map(|(i, j, a)| (i, j, a * c)))
    }

    /// `self + c * E_{i,j}`.
    pub fn add_unit(&self, i: i64, j: i64, c: i64) -> IntMatZ {
        if c == 0 {
            return self.clone();
        }
        let mut e = self.entries.clone();
        match e.binary_search_by_key(&(i, j), |x| x.0) {
            Ok(k) => {
                e[k].1 += c;
                if e[k].1 == 0 {
                    e.remove(k);
                }
            }
            Err(k) => e.insert(k, ((i, j), c)),
        }
        IntMatZ { entries: e }
    }

    pub fn transpose(&self) -> IntMatZ {
        Self::from_entries(self.entries().map(|(i, j, a)| (j, i, a)))
    }

    /// Translate all indices by `k`.
    pub fn translate(&self, k: i64) -> IntMatZ {
        IntMatZ { entries: self.entries.iter().map(|((i, j), a)| ((i + k, j + k), *a)).collect() }
    }

    pub fn is_diagonal(&self) -> bool {
        self.entries.iter().all(|((i, j), _)| i == j)
    }

    pub fn is_nonneg(&self) -> bool {
        self.entries.iter().all(|e| e.1 >= 0)
    }

    /// Off-diagonal entries nonnegative (membership in the tilde-Xi set).
    pub fn is_tilde(&self) -> bool {
        self.entries.iter().all(|((i, j), a)| i == j || *a >= 0)
    }

    /// Smallest window containing all row and column indices.
    pub fn hull(&self) -> Option<Window> {
        let mut lo = i64::MAX;
        let mut hi = i64::MIN;
        for ((i, j), _) in &self.entries {
            lo = lo.min(*i).min(*j);
            hi = hi.max(*i).max(*j);
        }
        (lo <= hi).then_some(Window { lo, hi })
    }

    pub fn support_in(&self, w: &Window) -> bool {
        self.entries.iter().all(|((i, j), _)| w.contains(*i) && w.contains(*j))
    }

    /// Entries of row `i` as `(col, value)`.
    pub fn row(&self, i: i64) -> impl Iterator<Item = (i64, i64)> + '_ {
        let start = self.entries.partition_point(|e| e.0 .0 < i);
        self.entries[start..].iter().take_while(move |e| e.0 .0 == i).map(|((_, j), a)| (*j, *a))
    }

    pub fn row_comp(&self, i: i64) -> Composition {
        Composition::from_pairs(self.row(i))
    }

    pub fn ro(&self) -> Composition {
        Composition::from_pairs(self.entries().map(|(i, _, a)| (i, a)))
    }

    pub fn co(&self) -> Composition {
        Composition::from_pairs(self.entries().map(|(_, j, a)| (j, a)))
    }

    pub fn sigma(&self) -> i64 {
        self.entries.iter().map(|e| e.1).sum()
    }

    pub fn deg(&self) -> i64 {
        self.entries().map(|(i, j, a)| (j - i).abs() * a).sum()
    }

    /// sum_{i<j} C(j-i+1, 2) (a_ij + a_ji).
    pub fn norm(&self) -> i64 {
        self.entries()
            .filter(|(i, j, _)| i != j)
            .map(|(i, j, a)| {
                let k = (j - i).abs() + 1;
                k * (k - 1) / 2 * a
            })
            .sum()
    }

    /// d_A = sum over i >= k, j < l of a_ij a_kl.
    pub fn d(&self) -> i64 {
        let mut s = 0;
        for ((i, j), a) in &self.entries {
            for ((k, l), b) in &self.entries {
                if i >= k && j < l {
                    s += a * b;
                }
            }
        }
        s
    }

    pub fn stats(&self) -> MatStats {
        MatStats { sigma: self.sigma(), deg: self.deg(), norm: self.norm(), d: self.d() }
    }

    /// Corner sum sigma_{i,j} for `i != j`.
    pub fn corner(&self, i: i64, j: i64) -> i64 {
        if i < j {
            self.entries().filter(|(s, t, _)| *s <= i && *t >= j).map(|e| e.2).sum()
        } else {
            self.entries().filter(|(s, t, _)| *s >= i && *t <= j).map(|e| e.2).sum()
        }
    }

    /// Compare `self` (as B) with `a` under B <= A iff all corner sums are <=.
    /// Distinct matrices with identical corner sums (they differ only on the
    /// diagonal) are reported as incomparable.
    pub fn preceq(&self, a: &IntMatZ) -> OrderCmp {
        if self == a {
            return OrderCmp::Equal;
        }
        let w = match (self.hull(), a.hull()) {
            (Some(x), Some(y)) => x.hull(&y),
            (Some(x), None) | (None, Some(x)) => x,
            (None, None) => return OrderCmp::Equal,
        };
        let (mut le, mut ge) = (true, true);
        for i in w.indices() {
            for j in w.indices() {
                if i == j {
                    continue;
                }
                let (x, y) = (self.corner(i, j), a.corner(i, j));
                le &= x <= y;
                ge &= x >= y;
            }
        }
        match (le, ge) {
            (true, false) => OrderCmp::Less,
            (false, true) => OrderCmp::Greater,
            _ => OrderCmp::Incomparable,
        }
    }

    /// Strictly below in the corner-sum order.
    pub fn strictly_below(&self, a: &IntMatZ) -> bool {
        self.preceq(a) == OrderCmp::Less
    }

    /// (strictly upper, diagonal, strictly lower).
    pub fn split_pm(&self) -> (IntMatZ, IntMatZ, IntMatZ) {
        let pick = |f: fn(i64, i64) -> bool| IntMatZ {
            entries: self.entries.iter().filter(|((i, j), _)| f(*i, *j)).cloned().collect(),
        };
        (pick(|i, j| i < j), pick(|i, j| i == j), pick(|i, j| i > j))
    }

    pub fn off_diagonal(&self) -> IntMatZ {
        IntMatZ { entries: self.entries.iter().filter(|((i, j), _)| i != j).cloned().collect() }
    }

    pub fn diagonal(&self) -> Composition {
        Composition::from_pairs(self.entries().filter(|(i, j, _)| i == j).map(|(i, _, a)| (i, a)))
    }

    /// sigma_i(A) = a_ii + sum_{j<i} (a_ij + a_ji).
    pub fn bold_sigma(&self) -> Composition {
        Composition::from_pairs(self.entries().map(|(i, j, a)| (i.max(j), a)))
    }

    /// A + a * I on the window.
    pub fn a_shift(&self, a: i64, w: &Window) -> Result<IntMatZ, Error> {
        if !self.support_in(w) {
            return Err(Error::Domain(alloc::format!("matrix support escapes window {w}")));
        }
        Ok(self.add(&IntMatZ::from_entries(w.indices().map(|i| (i, i, a)))))
    }

    /// Sort key of the fixed linear extension of the corner-sum order.
    pub fn order_key(&self) -> (i64, Vec<((i64, i64), i64)>) {
        (self.norm(), self.entries.clone())
    }

    /// Compact rendering as a sum of matrix units, e.g. `E12+E21+2E22`.
    pub fn unit_string(&self) -> String {
        if self.is_zero() {
            return String::from("0");
        }
        let mut s = String::new();
        for (k, (i, j, a)) in self.entries().enumerate() {
            if a < 0 {
                s.push('-');
            } else if k > 0 {
                s.push('+');
            }
            if a.abs() != 1 {
                s.push_str(&alloc::format!("{}", a.abs()));
            }
            if (0..10).contains(&i) && (0..10).contains(&j) {
                s.push_str(&alloc::format!("E{i}{j}"));
            } else {
                s.push_str(&alloc::format!("E({i},{j})"));
            }
        }
        s
    }
}

impl fmt::Display for IntMatZ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.unit_string())
    }
}

impl fmt::Debug for IntMatZ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.unit_string())
    }
}

/// (row sums, column sums).
pub fn ro_co(a: &IntMatZ) -> (Composition, Composition) {
    (a.ro(), a.co())
}

/// All A in Xi(w, r): nonnegative matrices supported in `w` with sum `r`.
pub fn enum_xi(w: &Window, r: i64) -> Vec<IntMatZ> {
    let cells: Vec<(i64, i64)> = w.indices().flat_map(|i| w.indices().map(move |j| (i, j))).collect();
    let cw = Window { lo: 0, hi: cells.len() as i64 - 1 };
    enum_compositions(&cw, r, None)
        .into_iter()
        .map(|c| IntMatZ::from_entries(c.parts().iter().map(|(k, a)| (cells[*k as usize].0, cells[*k as usize].1, *a))))
        .collect()
}

/// All A with zero diagonal, nonnegative off-diagonal, support in `w`, sum `s`.
pub fn enum_xi_pm(w: &Window, s: i64) -> Vec<IntMatZ> {
    let cells: Vec<(i64, i64)> =
        w.indices().flat_map(|i| w.indices().filter(move |j| *j != i).map(move |j| (i, j))).collect();
    if cells.is_empty() {
        return if s == 0 { alloc::vec![IntMatZ::zero()] } else { Vec::new() };
    }
    let cw = Window { lo: 0, hi: cells.len() as i64 - 1 };
    enum_compositions(&cw, s, None)
        .into_iter()
        .map(|c| IntMatZ::from_entries(c.parts().iter().map(|(k, a)| (cells[*k as usize].0, cells[*k as usize].1, *a))))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(i: i64, j: i64) -> IntMatZ {
        IntMatZ::unit(i, j)
    }

    #[test]
    fn row_and_column_sums() {
        let l = Composition::from_slice(1, &[2, 1]);
        assert_eq!(ro_co(&IntMatZ::diag(&l)), (l.clone(), l));
        assert_eq!(ro_co(&e(1, 2)), (Composition::unit(1), Composition::unit(2)));
        let x = e(1, 2).add(&e(2, 1));
        let ones = Composition::from_slice(1, &[1, 1]);
        assert_eq!(ro_co(&x), (ones.clone(), ones));
    }

    #[test]
    fn statistics() {
        assert_eq!(IntMatZ::zero().stats(), MatStats { sigma: 0, deg: 0, norm: 0, d: 0 });
        assert_eq!(e(1, 2).stats(), MatStats { sigma: 1, deg: 1, norm: 1, d: 0 });
        assert_eq!(e(1, 2).add(&e(2, 1)).stats(), MatStats { sigma: 2, deg: 2, norm: 2, d: 1 });
        assert_eq!(e(1, 3).norm(), 3);
    }

    #[test]
    fn corner_order_examples() {
        let a = e(1, 3);
        assert_eq!(a.preceq(&a), OrderCmp::Equal);
        assert_eq!(e(1, 2).add(&e(2, 3)).preceq(&e(1, 3)), OrderCmp::Less);
        assert_eq!(e(1, 3).preceq(&e(1, 2).add(&e(2, 3))), OrderCmp::Greater);
        assert_eq!(e(1, 2).preceq(&e(2, 1)), OrderCmp::Incomparable);
        assert_eq!(e(1, 1).preceq(&e(2, 2)), OrderCmp::Incomparable);
    }

    #[test]
    fn split_and_bold_sigma() {
        let d = IntMatZ::diag(&Composition::from_slice(1, &[0, 1]));
        assert_eq!(d.split_pm(), (IntMatZ::zero(), d.clone(), IntMatZ::zero()));
        let x = e(1, 2).add(&e(2, 1));
        assert_eq!(x.split_pm(), (e(1, 2), IntMatZ::zero(), e(2, 1)));
        let y = e(1, 2).add(&d);
        assert_eq!(y.split_pm(), (e(1, 2), d.clone(), IntMatZ::zero()));
        assert_eq!(d.bold_sigma(), d.diagonal());
        assert_eq!(e(1, 2).bold_sigma(), Composition::unit(2));
        assert_eq!(e(2, 1).bold_sigma(), Composition::unit(2));
    }

    #[test]
    fn shifts() {
        let w = Window::new(1, 2).unwrap();
        assert_eq!(IntMatZ::zero().a_shift(3, &w).unwrap(), IntMatZ::from_dense(1, &[&[3, 0], &[0, 3]]));
        assert_eq!(e(1, 2).a_shift(1, &w).unwrap(), IntMatZ::from_dense(1, &[&[1, 1], &[0, 1]]));
        let w0 = Window::new(0, 2).unwrap();
        assert_eq!(e(1, 2).a_shift(2, &w0).unwrap(), IntMatZ::from_dense(0, &[&[2, 0, 0], &[0, 2, 1], &[0, 0, 2]]));
        assert!(e(1, 3).a_shift(1, &w).is_err());
    }

    #[test]
    fn compositions() {
        let w = Window::new(1, 2).unwrap();
        assert_eq!(enum_compositions(&w, 1, None), [Composition::unit(1), Composition::unit(2)]);
        let two: Vec<Vec<i64>> = enum_compositions(&w, 2, None).iter().map(|c| c.dense(&w)).collect();
        assert_eq!(two, [[2, 0], [1, 1], [0, 2]]);
        let b = Composition::unit(2);
        assert_eq!(enum_compositions(&w, 1, Some(&b)), [Composition::unit(2)]);
        assert_eq!(enum_xi(&Window::new(1, 3).unwrap(), 3).len(), 165);
        assert_eq!(enum_xi_pm(&Window::new(-1, 1).unwrap(), 2).len(), 21);
    }

    #[test]
    fn corner_order_strictly_increases_norm() {
        let w = Window::new(1, 3).unwrap();
        let xs = enum_xi(&w, 3);
        for a in &xs {
            for b in &xs {
                if b.strictly_below(a) {
                    assert!(b.norm() < a.norm(), "{b:?} < {a:?}");
                }
            }
        }
    }
}
