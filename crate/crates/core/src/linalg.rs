//! Exact rank and determinant over Z[v, v^-1] by fraction-free elimination,
//! with specialization rechecks at an integer point and modulo a prime.

use alloc::vec::Vec;
use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::ring::Laurent;
use crate::Error;

/// Integral domain with exact division, enough for Bareiss elimination.
trait Domain: Clone {
    fn is_zero(&self) -> bool;
    fn one() -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    fn div_exact(&self, o: &Self) -> Self;
}

impl Domain for Laurent {
    fn is_zero(&self) -> bool {
        Laurent::is_zero(self)
    }
    fn one() -> Self {
        Laurent::one()
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn div_exact(&self, o: &Self) -> Self {
        Laurent::div_exact(self, o).expect("Bareiss quotient is exact")
    }
}

impl Domain for BigInt {
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn one() -> Self {
        One::one()
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn div_exact(&self, o: &Self) -> Self {
        debug_assert!(Zero::is_zero(&(self % o)));
        self / o
    }
}

/// Returns (rank, signed last pivot). The pivot is the determinant when the
/// matrix is square of full rank.
fn bareiss<T: Domain>(mut m: Vec<Vec<T>>) -> (usize, T) {
    let nrows = m.len();
    let ncols = m.first().map_or(0, Vec::len);
    let mut prev = T::one();
    let mut rank = 0;
    let mut negate = false;
    for col in 0..ncols {
        if rank == nrows {
            break;
        }
        let Some(p) = (rank..nrows).find(|&i| !m[i][col].is_zero()) else {
            continue;
        };
        if p != rank {
            m.swap(p, rank);
            negate = !negate;
        }
        let (top, rest) = m.split_at_mut(rank + 1);
        let pivot_row = &top[rank];
        for row in rest.iter_mut() {
            let lead = row[col].clone();
            for j in col + 1..ncols {
                let x = pivot_row[col].mul(&row[j]).sub(&lead.mul(&pivot_row[j]));
                row[j] = x.div_exact(&prev);
            }
            row[col] = T::one().sub(&T::one());
        }
        prev = m[rank][col].clone();
        rank += 1;
    }
    (rank, if negate { prev.neg() } else { prev })
}

/// Rank over Z[v, v^-1].
pub fn rank_laurent(rows: &[Vec<Laurent>]) -> usize {
    // rescaling a row by a unit keeps the rank and shortens the polynomials
    let m = rows
        .iter()
        .map(|r| {
            let lo = r.iter().filter_map(Laurent::min_exp).min().unwrap_or(0);
            r.iter().map(|x| x.shift(-lo)).collect()
        })
        .collect();
    bareiss(m).0
}

pub fn det_laurent(m: &[Vec<Laurent>]) -> Result<Laurent, Error> {
    if m.iter().any(|r| r.len() != m.len()) {
        return Err(Error::Domain(alloc::format!("determinant of a non-square {}-row matrix", m.len())));
    }
    if m.is_empty() {
        return Ok(Laurent::one());
    }
    let (rank, d) = bareiss(m.to_vec());
    Ok(if rank < m.len() { Laurent::zero() } else { d })
}

/// Rank over Q after substituting v = x (x != 0).
pub fn rank_at(rows: &[Vec<Laurent>], x: i64) -> usize {
    assert!(x != 0);
    let m = rows
        .iter()
        .map(|r| {
            let lo = r.iter().filter_map(Laurent::min_exp).min().unwrap_or(0);
            // multiply through by x^{-lo} so every entry is a polynomial value
            r.iter()
                .map(|p| {
                    p.terms().iter().fold(BigInt::zero(), |acc, (e, c)| acc + c * BigInt::from(x).pow((e - lo) as u32))
                })
                .collect()
        })
        .collect();
    bareiss::<BigInt>(m).0
}

/// Rank over F_p after substituting v = x.
pub fn rank_mod(rows: &[Vec<Laurent>], x: u64, p: u64) -> usize {
    let mut m: Vec<Vec<u64>> = rows.iter().map(|r| r.iter().map(|e| e.eval_mod(x, p)).collect()).collect();
    let ncols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..ncols {
        let Some(piv) = (rank..m.len()).find(|&i| m[i][col] != 0) else {
            continue;
        };
        m.swap(piv, rank);
        let inv = crate::ring::pow_mod(m[rank][col], p - 2, p);
        for i in rank + 1..m.len() {
            let f = crate::ring::mul_mod(m[i][col], inv, p);
            if f == 0 {
                continue;
            }
            let (top, rest) = m.split_at_mut(i);
            for (x, y) in rest[0][col..].iter_mut().zip(&top[rank][col..]) {
                *x = (*x + p - crate::ring::mul_mod(f, *y, p)) % p;
            }
        }
        rank += 1;
    }
    rank
}

/// Generic rank and its value at v = 3.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RankCheck {
    pub generic: usize,
    pub at_three: usize,
}

impl RankCheck {
    pub fn agrees(&self) -> bool {
        self.generic == self.at_three
    }
}

pub fn rank_check(rows: &[Vec<Laurent>]) -> RankCheck {
    RankCheck { generic: rank_laurent(rows), at_three: rank_at(rows, 3) }
}

/// Generic rank, rejected unless the v = 3 specialization agrees.
pub fn certified_rank(rows: &[Vec<Laurent>]) -> Result<usize, Error> {
    let c = rank_check(rows);
    if c.agrees() {
        Ok(c.generic)
    } else {
        Err(Error::NotExact(alloc::format!("rank {} drops to {} at v = 3", c.generic, c.at_three)))
    }
}

/// Full row rank of a coefficient table. Full rank after any specialization
/// forces full generic rank, so the cheap checks run first: modulo a prime at
/// v = 3, then over Q at v = 3, then the Laurent elimination.
pub fn rows_independent(rows: &[Vec<Laurent>]) -> bool {
    const P: u64 = 2_147_483_647;
    let n = rows.len();
    rank_mod(rows, 3, P) == n || rank_at(rows, 3) == n || rank_laurent(rows) == n
}
