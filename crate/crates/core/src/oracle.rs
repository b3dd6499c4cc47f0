//! Brute-force structure constants: enumerate step flags in F_q^r, classify
//! pairs by their orbit invariant, and count.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::matrix::{enum_compositions, Composition, IntMatZ, Window};
use crate::ring::Laurent;
use crate::Error;

/// Enumeration bounds for the oracle.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OracleConfig {
    pub max_q: u32,
    pub max_r: i64,
    pub max_window: usize,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig { max_q: 4, max_r: 3, max_window: 3 }
    }
}

impl OracleConfig {
    pub fn check(&self, q: u32, r: i64, w: &Window) -> Result<(), Error> {
        if q > self.max_q || r > self.max_r || w.len() > self.max_window {
            return Err(Error::ScaleGuard(alloc::format!(
                "q={q}, r={r}, |window|={} exceeds q<={}, r<={}, |window|<={}",
                w.len(),
                self.max_q,
                self.max_r,
                self.max_window
            )));
        }
        Ok(())
    }
}

/// GF(q) for a prime power q, elements encoded as base-p digit vectors of
/// polynomials modulo a fixed irreducible.
#[derive(Clone, Debug)]
pub struct Field {
    pub q: u32,
    add: Vec<u8>,
    mul: Vec<u8>,
}

fn prime_power(q: u32) -> Option<(u32, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q.is_multiple_of(*d))?;
    let (mut x, mut k) = (q, 0);
    while x % p == 0 {
        x /= p;
        k += 1;
    }
    (x == 1).then_some((p, k))
}

fn poly_mod(mut a: Vec<u32>, m: &[u32], p: u32) -> Vec<u32> {
    // m monic
    let dm = m.len() - 1;
    while a.len() > dm {
        let lead = a.pop().unwrap() % p;
        let s = a.len() - dm;
        for (j, mj) in m[..dm].iter().enumerate() {
            a[s + j] = (a[s + j] + p * p - lead * mj % p) % p;
        }
    }
    a
}

fn is_irreducible(m: &[u32], p: u32) -> bool {
    let k = m.len() - 1;
    // no monic factor of degree 1..=k/2
    for d in 1..=k / 2 {
        let count = p.pow(d as u32);
        for code in 0..count {
            let mut f: Vec<u32> = (0..d).map(|t| code / p.pow(t as u32) % p).collect();
            f.push(1);
            let mut rem = m.to_vec();
            // long division by monic f
            while rem.len() >= f.len() {
                let lead = *rem.last().unwrap() % p;
                let s = rem.len() - f.len();
                for (j, fj) in f.iter().enumerate() {
                    rem[s + j] = (rem[s + j] + p * p - lead * fj % p) % p;
                }
                rem.pop();
            }
            if rem.iter().all(|c| c % p == 0) {
                return false;
            }
        }
    }
    true
}

impl Field {
    pub fn new(q: u32) -> Result<Self, Error> {
        let (p, k) = prime_power(q).ok_or_else(|| Error::Domain(alloc::format!("{q} is not a prime power")))?;
        let modulus: Vec<u32> = if k == 1 {
            vec![0, 1]
        } else {
            (0..p.pow(k))
                .map(|code| {
                    let mut f: Vec<u32> = (0..k).map(|t| code / p.pow(t) % p).collect();
                    f.push(1);
                    f
                })
                .find(|f| is_irreducible(f, p))
                .expect("irreducible polynomials exist")
        };
        let digits = |x: u32| -> Vec<u32> { (0..k).map(|t| x / p.pow(t) % p).collect() };
        let encode = |v: &[u32]| -> u32 { v.iter().enumerate().map(|(t, d)| d * p.pow(t as u32)).sum() };
        let n = q as usize;
        let mut add = vec![0u8; n * n];
        let mut mul = vec![0u8; n * n];
        for x in 0..q {
            for y in 0..q {
                let (dx, dy) = (digits(x), digits(y));
                let s: Vec<u32> = dx.iter().zip(&dy).map(|(a, b)| (a + b) % p).collect();
                add[(x * q + y) as usize] = encode(&s) as u8;
                let mut prod = vec![0u32; 2 * k as usize];
                for (i, a) in dx.iter().enumerate() {
                    for (j, b) in dy.iter().enumerate() {
                        prod[i + j] = (prod[i + j] + a * b) % p;
                    }
                }
                let r = if k == 1 { vec![prod[0]] } else { poly_mod(prod, &modulus, p) };
                let mut r = r;
                r.resize(k as usize, 0);
                mul[(x * q + y) as usize] = encode(&r) as u8;
            }
        }
        Ok(Field { q, add, mul })
    }

    pub fn add(&self, x: u32, y: u32) -> u32 {
        self.add[(x * self.q + y) as usize] as u32
    }

    pub fn mul(&self, x: u32, y: u32) -> u32 {
        self.mul[(x * self.q + y) as usize] as u32
    }
}

/// A subspace of F_q^n stored as the bitset of its vectors.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subspace {
    bits: Vec<u64>,
    pub dim: u32,
}

impl Subspace {
    fn contains_space(&self, o: &Subspace) -> bool {
        self.bits.iter().zip(&o.bits).all(|(a, b)| b & !a == 0)
    }

    fn meet_count(&self, o: &Subspace) -> u32 {
        self.bits.iter().zip(&o.bits).map(|(a, b)| (a & b).count_ones()).sum()
    }
}

/// F_q^n with vector arithmetic tables and all subspaces.
pub struct Space {
    pub field: Field,
    pub n: usize,
    size: usize,
    vadd: Vec<u32>,
    smul: Vec<u32>,
    by_dim: Vec<Vec<Subspace>>,
}

impl Space {
    pub fn new(q: u32, n: usize) -> Result<Self, Error> {
        let field = Field::new(q)?;
        let size = (q as usize).pow(n as u32);
        let digits = |x: usize| -> Vec<u32> { (0..n).map(|t| (x / (q as usize).pow(t as u32) % q as usize) as u32).collect() };
        let encode = |v: &[u32]| -> u32 { v.iter().enumerate().map(|(t, d)| d * q.pow(t as u32)).sum() };
        let mut vadd = vec![0u32; size * size];
        for x in 0..size {
            for y in 0..size {
                let s: Vec<u32> = digits(x).iter().zip(digits(y)).map(|(a, b)| field.add(*a, b)).collect();
                vadd[x * size + y] = encode(&s);
            }
        }
        let mut smul = vec![0u32; q as usize * size];
        for c in 0..q as usize {
            for x in 0..size {
                let s: Vec<u32> = digits(x).iter().map(|a| field.mul(c as u32, *a)).collect();
                smul[c * size + x] = encode(&s);
            }
        }
        let mut sp = Space { field, n, size, vadd, smul, by_dim: Vec::new() };
        sp.by_dim = (0..=n).map(|d| sp.enumerate_dim(d)).collect();
        Ok(sp)
    }

    pub fn q(&self) -> u32 {
        self.field.q
    }

    /// Vector with coordinates `v` (length n).
    pub fn encode(&self, v: &[u32]) -> u32 {
        v.iter().enumerate().map(|(t, d)| d * self.q().pow(t as u32)).sum()
    }

    pub fn decode(&self, x: u32) -> Vec<u32> {
        (0..self.n).map(|t| x / self.q().pow(t as u32) % self.q()).collect()
    }

    pub fn span(&self, basis: &[u32]) -> Subspace {
        let mut bits = vec![0u64; self.size.div_ceil(64)];
        let mut set = vec![0u32];
        for b in basis {
            let mut next = Vec::with_capacity(set.len() * self.q() as usize);
            for c in 0..self.q() as usize {
                let cb = self.smul[c * self.size + *b as usize];
                for x in &set {
                    next.push(self.vadd[*x as usize * self.size + cb as usize]);
                }
            }
            next.sort_unstable();
            next.dedup();
            set = next;
        }
        for x in &set {
            bits[*x as usize / 64] |= 1 << (x % 64);
        }
        let mut dim = 0;
        while (self.q() as usize).pow(dim) < set.len() {
            dim += 1;
        }
        Subspace { bits, dim }
    }

    fn dim_of_count(&self, c: u32) -> u32 {
        let mut d = 0;
        let mut x = 1u32;
        while x < c {
            x *= self.q();
            d += 1;
        }
        d
    }

    /// All d-dimensional subspaces via reduced row-echelon forms.
    fn enumerate_dim(&self, d: usize) -> Vec<Subspace> {
        let n = self.n;
        let q = self.q();
        let mut out = Vec::new();
        let mut pivots: Vec<usize> = (0..d).collect();
        loop {
            // free cells: row t, column c > pivots[t], c not a pivot
            let free: Vec<(usize, usize)> = (0..d)
                .flat_map(|t| ((pivots[t] + 1)..n).filter(|c| !pivots.contains(c)).map(move |c| (t, c)))
                .collect();
            let total = (q as usize).pow(free.len() as u32);
            for code in 0..total {
                let mut rows = vec![vec![0u32; n]; d];
                for (t, p) in pivots.iter().enumerate() {
                    rows[t][*p] = 1;
                }
                let mut x = code;
                for (t, c) in &free {
                    rows[*t][*c] = (x % q as usize) as u32;
                    x /= q as usize;
                }
                let basis: Vec<u32> = rows.iter().map(|r| self.encode(r)).collect();
                out.push(self.span(&basis));
            }
            // next combination of pivot columns
            let mut k = d;
            loop {
                if k == 0 {
                    return out;
                }
                k -= 1;
                if pivots[k] < n - d + k {
                    pivots[k] += 1;
                    for t in k + 1..d {
                        pivots[t] = pivots[t - 1] + 1;
                    }
                    break;
                }
            }
            if d == 0 {
                return out;
            }
        }
    }

    pub fn subspaces(&self, d: usize) -> &[Subspace] {
        &self.by_dim[d]
    }

    /// Apply the linear map with matrix `g` (row-major, `g[i][j]` maps e_j to
    /// sum_i g[i][j] e_i) to every vector of `s`.
    pub fn apply(&self, g: &[Vec<u32>], s: &Subspace) -> Subspace {
        let mut img = Vec::new();
        for x in 0..self.size as u32 {
            if s.bits[x as usize / 64] >> (x % 64) & 1 == 1 {
                let v = self.decode(x);
                let w: Vec<u32> = (0..self.n)
                    .map(|i| (0..self.n).fold(0, |acc, j| self.field.add(acc, self.field.mul(g[i][j], v[j]))))
                    .collect();
                img.push(self.encode(&w));
            }
        }
        // the image of a subspace is a subspace; span of all its vectors
        let mut bits = vec![0u64; s.bits.len()];
        for x in &img {
            bits[*x as usize / 64] |= 1 << (x % 64);
        }
        Subspace { bits, dim: s.dim }
    }
}

/// Chain V_lo <= ... <= V_hi = F_q^n indexed by a window.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Flag {
    pub window: Window,
    pub spaces: Vec<Subspace>,
}

impl Flag {
    /// Step sizes dim V_i - dim V_{i-1}.
    pub fn step_type(&self) -> Composition {
        let mut prev = 0;
        Composition::from_pairs(self.window.indices().zip(&self.spaces).map(|(i, s)| {
            let d = s.dim as i64 - prev;
            prev = s.dim as i64;
            (i, d)
        }))
    }

    pub fn apply(&self, sp: &Space, g: &[Vec<u32>]) -> Flag {
        Flag { window: self.window, spaces: self.spaces.iter().map(|s| sp.apply(g, s)).collect() }
    }
}

/// a_ij = dim(V_{i-1} + V_i n V'_j) - dim(V_{i-1} + V_i n V'_{j-1}), via the
/// inclusion-exclusion form in terms of intersection dimensions.
pub fn orbit_invariant(sp: &Space, f: &Flag, g: &Flag) -> IntMatZ {
    let l = f.spaces.len();
    let mut dmat = vec![vec![0i64; l + 1]; l + 1];
    for i in 0..l {
        for j in 0..l {
            dmat[i + 1][j + 1] = sp.dim_of_count(f.spaces[i].meet_count(&g.spaces[j])) as i64;
        }
    }
    let lo = f.window.lo;
    IntMatZ::from_entries((0..l).flat_map(|i| {
        let dm = &dmat;
        (0..l).map(move |j| {
            let a = dm[i + 1][j + 1] - dm[i][j + 1] - dm[i + 1][j] + dm[i][j];
            (lo + i as i64, lo + j as i64, a)
        })
    }))
}

/// All flags of step type `mu` (support in `w`, sum n).
pub fn flags_of_type(sp: &Space, w: &Window, mu: &Composition) -> Vec<Flag> {
    let mut out = Vec::new();
    let dims: Vec<usize> = {
        let mut acc = 0i64;
        w.indices().map(|i| {
            acc += mu.get(i);
            acc as usize
        })
        .collect()
    };
    let mut cur: Vec<Subspace> = Vec::with_capacity(dims.len());
    fn rec(sp: &Space, w: &Window, dims: &[usize], cur: &mut Vec<Subspace>, out: &mut Vec<Flag>) {
        let k = cur.len();
        if k == dims.len() {
            out.push(Flag { window: *w, spaces: cur.clone() });
            return;
        }
        if k > 0 && dims[k] == dims[k - 1] {
            let s = cur[k - 1].clone();
            cur.push(s);
            rec(sp, w, dims, cur, out);
            cur.pop();
            return;
        }
        for s in sp.subspaces(dims[k]) {
            if k == 0 || s.contains_space(&cur[k - 1]) {
                cur.push(s.clone());
                rec(sp, w, dims, cur, out);
                cur.pop();
            }
        }
    }
    rec(sp, w, &dims, &mut cur, &mut out);
    out
}

/// A pair (f1, f2) in the orbit O_C, built on a basis indexed by the cells
/// (i, j, k), k < c_ij: f1 spans rows <= i, f2 spans columns <= j.
pub fn canonical_pair(sp: &Space, c: &IntMatZ, w: &Window) -> Result<(Flag, Flag), Error> {
    if !c.is_nonneg() || !c.support_in(w) || c.sigma() as usize != sp.n {
        return Err(Error::Domain(alloc::format!("{c:?} is not in Xi({w}, {})", sp.n)));
    }
    let mut cells = Vec::new();
    for (i, j, a) in c.entries() {
        for _ in 0..a {
            cells.push((i, j));
        }
    }
    let unit = |t: usize| -> u32 {
        let mut v = vec![0u32; sp.n];
        v[t] = 1;
        sp.encode(&v)
    };
    let build = |pick: &dyn Fn(&(i64, i64), i64) -> bool| -> Flag {
        let spaces = w
            .indices()
            .map(|i| {
                let basis: Vec<u32> = cells.iter().enumerate().filter(|(_, c)| pick(c, i)).map(|(t, _)| unit(t)).collect();
                sp.span(&basis)
            })
            .collect();
        Flag { window: *w, spaces }
    };
    let f1 = build(&|c, i| c.0 <= i);
    let f2 = build(&|c, j| c.1 <= j);
    let inv = orbit_invariant(sp, &f1, &f2);
    assert_eq!(&inv, c, "canonical pair has the wrong invariant");
    Ok((f1, f2))
}

/// #{f : (f1, f) in O_A, (f, f2) in O_B} for a given pair.
pub fn g_count_with(sp: &Space, a: &IntMatZ, b: &IntMatZ, f1: &Flag, f2: &Flag) -> u64 {
    if a.co() != b.ro() || a.ro() != f1.step_type() || b.co() != f2.step_type() {
        return 0;
    }
    flags_of_type(sp, &f1.window, &a.co())
        .iter()
        .filter(|f| orbit_invariant(sp, f1, f) == *a && orbit_invariant(sp, f, f2) == *b)
        .count() as u64
}

/// g_{A,B,C;q} from the canonical pair of C.
pub fn g_count(a: &IntMatZ, b: &IntMatZ, c: &IntMatZ, w: &Window, q: u32, cfg: &OracleConfig) -> Result<u64, Error> {
    let r = c.sigma();
    cfg.check(q, r, w)?;
    let sp = Space::new(q, r as usize)?;
    let (f1, f2) = canonical_pair(&sp, c, w)?;
    Ok(g_count_with(&sp, a, b, &f1, &f2))
}

/// For fixed C, all nonzero g_{A,B,C;q} at once: classify every flag f by
/// the pair of invariants (inv(f1, f), inv(f, f2)).
pub fn g_table(c: &IntMatZ, w: &Window, q: u32, cfg: &OracleConfig) -> Result<BTreeMap<(IntMatZ, IntMatZ), u64>, Error> {
    let r = c.sigma();
    cfg.check(q, r, w)?;
    let sp = Space::new(q, r as usize)?;
    let (f1, f2) = canonical_pair(&sp, c, w)?;
    let mut out = BTreeMap::new();
    for mu in enum_compositions(w, r, None) {
        for f in flags_of_type(&sp, w, &mu) {
            let key = (orbit_invariant(&sp, &f1, &f), orbit_invariant(&sp, &f, &f2));
            *out.entry(key).or_insert(0) += 1;
        }
    }
    Ok(out)
}

/// The polynomial in v^2 through the points (q, count): all but the last
/// sample determine it, the last one validates.
pub fn g_interpolate(samples: &[(u32, u64)]) -> Result<Laurent, Error> {
    if samples.len() < 2 {
        return Err(Error::Domain("need at least two samples".into()));
    }
    let (fit, check) = samples.split_at(samples.len() - 1);
    // Newton divided differences over Q.
    let xs: Vec<BigRational> = fit.iter().map(|s| BigRational::from_integer(BigInt::from(s.0))).collect();
    let mut coef: Vec<BigRational> = fit.iter().map(|s| BigRational::from_integer(BigInt::from(s.1))).collect();
    for k in 1..xs.len() {
        for i in (k..xs.len()).rev() {
            coef[i] = (&coef[i] - &coef[i - 1]) / (&xs[i] - &xs[i - k]);
        }
    }
    // expand into the monomial basis
    let mut poly: Vec<BigRational> = vec![BigRational::zero()];
    for k in (0..xs.len()).rev() {
        // poly = poly * (x - xs[k]) + coef[k]
        let mut next = vec![BigRational::zero(); poly.len() + 1];
        for (d, c) in poly.iter().enumerate() {
            next[d + 1] += c;
            next[d] -= c * &xs[k];
        }
        next[0] += &coef[k];
        poly = next;
    }
    let mut terms = Vec::new();
    for (d, c) in poly.iter().enumerate() {
        if !c.is_integer() {
            return Err(Error::NotExact("interpolant has non-integer coefficients".into()));
        }
        terms.push((2 * d as i64, c.to_integer()));
    }
    let p = Laurent::from_terms(terms);
    for (q, n) in check {
        let val = p.eval_q(*q as i64)?;
        if val != BigRational::from_integer(BigInt::from(*n)) {
            return Err(Error::NotExact("degree bound too small: held-out sample disagrees".into()));
        }
    }
    let _ = BigRational::one();
    Ok(p)
}

/// Prime powers in increasing order, starting at 2.
pub fn prime_powers(count: usize) -> Vec<u32> {
    (2u32..).filter(|q| prime_power(*q).is_some()).take(count).collect()
}

/// Interpolate g_{A,B,C} from d_A + d_B + 1 samples plus one validation.
pub fn g_polynomial(a: &IntMatZ, b: &IntMatZ, c: &IntMatZ, w: &Window, cfg: &OracleConfig) -> Result<Laurent, Error> {
    let n = (a.d() + b.d() + 2) as usize;
    let mut samples = Vec::new();
    for q in prime_powers(n) {
        samples.push((q, g_count(a, b, c, w, q, cfg)?));
    }
    g_interpolate(&samples)
}
