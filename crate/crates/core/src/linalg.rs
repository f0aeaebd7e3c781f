//! Dense exact-rational linear algebra: just enough for 5x5 lattice maps,
//! kernels of pairing systems, and subspace containment tests.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::Error;
use crate::rat::Rat;

/// Row-major dense matrix over the rationals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mat {
    rows: usize,
    cols: usize,
    data: Vec<Rat>,
}

impl Mat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat { rows, cols, data: vec![Rat::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Mat::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rat::one());
        }
        m
    }

    /// Build from row vectors; every row must have the same length.
    pub fn from_rows(rows: Vec<Vec<Rat>>) -> Result<Self, Error> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(nrows * ncols);
        for row in &rows {
            if row.len() != ncols {
                return Err(Error::DimMismatch { expected: ncols, got: row.len() });
            }
            data.extend(row.iter().cloned());
        }
        Ok(Mat { rows: nrows, cols: ncols, data })
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Rat {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Rat) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Rat] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn transpose(&self) -> Mat {
        let mut t = Mat::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &Mat) -> Result<Mat, Error> {
        if self.cols != other.rows {
            return Err(Error::DimMismatch { expected: self.cols, got: other.rows });
        }
        let mut out = Mat::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for c in 0..other.cols {
                let mut acc = Rat::zero();
                for k in 0..self.cols {
                    acc += self.get(r, k) * other.get(k, c);
                }
                out.set(r, c, acc);
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[Rat]) -> Result<Vec<Rat>, Error> {
        if self.cols != v.len() {
            return Err(Error::DimMismatch { expected: self.cols, got: v.len() });
        }
        let mut out = Vec::with_capacity(self.rows);
        for r in 0..self.rows {
            let mut acc = Rat::zero();
            for k in 0..self.cols {
                acc += self.get(r, k) * &v[k];
            }
            out.push(acc);
        }
        Ok(out)
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols && *self == Mat::identity(self.rows)
    }

    pub fn rank(&self) -> usize {
        rank_of_rows(&(0..self.rows).map(|r| self.row(r).to_vec()).collect::<Vec<_>>())
    }

    /// Basis of the right kernel {x : M x = 0}, each vector scaled to a
    /// primitive integer vector with positive leading entry.
    pub fn nullspace(&self) -> Vec<Vec<Rat>> {
        let mut m: Vec<Vec<Rat>> = (0..self.rows).map(|r| self.row(r).to_vec()).collect();
        let pivots = reduce_to_rref(&mut m, self.cols);
        let pivot_cols: Vec<usize> = pivots.iter().map(|&(_, c)| c).collect();
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if pivot_cols.contains(&free) {
                continue;
            }
            let mut v = vec![Rat::zero(); self.cols];
            v[free] = Rat::one();
            for &(pr, pc) in &pivots {
                // RREF row pr reads x_pc + sum_{c>pc} m[pr][c] x_c = 0
                v[pc] = -m[pr][free].clone();
            }
            basis.push(primitive_scale(&v));
        }
        basis
    }
}

/// Row rank via fraction-exact Gaussian elimination (input left untouched).
pub fn rank_of_rows(rows: &[Vec<Rat>]) -> usize {
    if rows.is_empty() {
        return 0;
    }
    let cols = rows[0].len();
    let mut m: Vec<Vec<Rat>> = rows.to_vec();
    reduce_to_rref(&mut m, cols).len()
}

/// True iff span(sub) is contained in span(sup); both are lists of row
/// vectors of equal length. Tested exactly: appending `sub` to `sup` must
/// not raise the rank.
pub fn span_leq(sub: &[Vec<Rat>], sup: &[Vec<Rat>]) -> bool {
    if sub.is_empty() {
        return true;
    }
    let base = rank_of_rows(sup);
    let mut stacked = sup.to_vec();
    stacked.extend(sub.iter().cloned());
    rank_of_rows(&stacked) == base
}

/// True iff the two row families span the same subspace.
pub fn span_eq(a: &[Vec<Rat>], b: &[Vec<Rat>]) -> bool {
    span_leq(a, b) && span_leq(b, a)
}

/// True iff `v` lies in the span of `rows`.
pub fn span_contains(rows: &[Vec<Rat>], v: &[Rat]) -> bool {
    span_leq(core::slice::from_ref(&v.to_vec()), rows)
}

/// Scale a rational vector to integer entries with gcd 1 and a positive
/// leading nonzero entry. The zero vector is returned unchanged.
pub fn primitive_scale(v: &[Rat]) -> Vec<Rat> {
    let mut lcm = BigInt::one();
    for x in v {
        lcm = lcm.lcm(x.denom());
    }
    let ints: Vec<BigInt> = v.iter().map(|x| (x * Rat::from_integer(lcm.clone())).to_integer()).collect();
    let mut gcd = BigInt::zero();
    for n in &ints {
        gcd = gcd.gcd(n);
    }
    if gcd.is_zero() {
        return v.to_vec();
    }
    let flip = ints.iter().find(|n| !n.is_zero()).map_or(false, |n| n.is_negative());
    ints.into_iter()
        .map(|n| {
            let mut q = &n / &gcd;
            if flip {
                q = -q;
            }
            Rat::from_integer(q)
        })
        .collect()
}

/// In-place reduction to reduced row echelon form; returns (row, col) pivot
/// positions in order.
fn reduce_to_rref(m: &mut Vec<Vec<Rat>>, cols: usize) -> Vec<(usize, usize)> {
    let rows = m.len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(pr) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, pr);
        let inv = m[r][c].clone();
        for x in m[r].iter_mut() {
            *x /= &inv;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for c2 in 0..cols {
                    let sub = &m[r][c2] * &f;
                    m[i][c2] -= sub;
                }
            }
        }
        pivots.push((r, c));
        r += 1;
    }
    pivots
}
