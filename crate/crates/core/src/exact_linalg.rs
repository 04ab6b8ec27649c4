//! Exact integer linear algebra: fraction-free rank, row Hermite normal form with
//! its unimodular transform, integer kernel lattices and LLL reduction.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::combinat::lcm_denominators;

/// Dense matrix of arbitrary-precision integers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Vec<BigInt>>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![vec![BigInt::zero(); cols]; rows] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i][i] = BigInt::one();
        }
        m
    }

    /// Builds a matrix from rows, which must all have length `cols`.
    pub fn from_rows(rows: Vec<Vec<BigInt>>, cols: usize) -> Self {
        assert!(rows.iter().all(|r| r.len() == cols), "ragged matrix");
        IntMatrix { rows: rows.len(), cols, data: rows }
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        Self::from_rows(rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect(), cols)
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i]
    }

    pub fn rows(&self) -> &[Vec<BigInt>] {
        &self.data
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i][j]
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j][i] = self.data[i][j].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows);
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for l in 0..self.cols {
                if self.data[i][l].is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    out.data[i][j] += &self.data[i][l] * &other.data[l][j];
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(self.cols, v.len());
        self.data.iter().map(|r| dot(r, v)).collect()
    }

    /// Submatrix keeping the given columns, in the given order.
    pub fn select_columns(&self, cols: &[usize]) -> IntMatrix {
        let data = self.data.iter().map(|r| cols.iter().map(|&j| r[j].clone()).collect()).collect();
        IntMatrix { rows: self.rows, cols: cols.len(), data }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().flatten().all(Zero::is_zero)
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in &self.data {
            let cells: Vec<String> = r.iter().map(|x| x.to_string()).collect();
            writeln!(f, "[{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

pub(crate) fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Rank over the rationals by fraction-free (Bareiss) elimination.
pub fn rank_exact(a: &IntMatrix) -> usize {
    let mut m = a.data.clone();
    let (r, c) = (a.rows, a.cols);
    let mut rank = 0;
    let mut prev = BigInt::one();
    for col in 0..c {
        if rank == r {
            break;
        }
        let Some(p) = (rank..r).find(|&i| !m[i][col].is_zero()) else {
            continue;
        };
        m.swap(p, rank);
        for i in rank + 1..r {
            for j in col + 1..c {
                let num = &m[rank][col] * &m[i][j] - &m[i][col] * &m[rank][j];
                let (q, rem) = num.div_rem(&prev);
                debug_assert!(rem.is_zero(), "Bareiss division not exact");
                m[i][j] = q;
            }
            m[i][col] = BigInt::zero();
        }
        prev = m[rank][col].clone();
        rank += 1;
    }
    rank
}

/// Rank of a rational matrix (rows scaled to integers first).
pub fn rank_rational(rows: &[Vec<BigRational>]) -> usize {
    let cols = rows.first().map_or(0, |r| r.len());
    rank_exact(&IntMatrix::from_rows(rows.iter().map(|r| scale_to_integers(r)).collect(), cols))
}

/// Multiplies a rational vector by the lcm of its denominators.
pub fn scale_to_integers(v: &[BigRational]) -> Vec<BigInt> {
    let l = BigRational::from_integer(lcm_denominators(v));
    v.iter().map(|x| (x * &l).to_integer()).collect()
}

/// Row Hermite normal form: returns `(H, U)` with `U * A = H`, `U` unimodular,
/// `H` in row echelon form with positive pivots and entries above each pivot
/// reduced into `[0, pivot)`. Zero rows of `H` come last.
pub fn hnf(a: &IntMatrix) -> (IntMatrix, IntMatrix) {
    let (r, c) = (a.rows, a.cols);
    let mut h = a.data.clone();
    let mut u = IntMatrix::identity(r).data;
    let mut piv = 0;
    for col in 0..c {
        if piv == r {
            break;
        }
        // Euclid on the column: smallest nonzero entry becomes the pivot and
        // the rest are reduced modulo it until they vanish.
        while let Some(best) = (piv..r).filter(|&i| !h[i][col].is_zero()).min_by_key(|&i| h[i][col].magnitude().clone())
        {
            h.swap(piv, best);
            u.swap(piv, best);
            let mut done = true;
            for i in piv + 1..r {
                if h[i][col].is_zero() {
                    continue;
                }
                let q = &h[i][col] / &h[piv][col];
                sub_multiple(&mut h, i, piv, &q);
                sub_multiple(&mut u, i, piv, &q);
                done &= h[i][col].is_zero();
            }
            if done {
                break;
            }
        }
        if h[piv][col].is_zero() {
            continue;
        }
        if h[piv][col].is_negative() {
            negate_row(&mut h[piv]);
            negate_row(&mut u[piv]);
        }
        for i in 0..piv {
            let q = h[i][col].div_floor(&h[piv][col]);
            if !q.is_zero() {
                sub_multiple(&mut h, i, piv, &q);
                sub_multiple(&mut u, i, piv, &q);
            }
        }
        piv += 1;
    }
    (IntMatrix { rows: r, cols: c, data: h }, IntMatrix { rows: r, cols: r, data: u })
}

fn negate_row(r: &mut [BigInt]) {
    for x in r.iter_mut() {
        *x = -std::mem::take(x);
    }
}

fn sub_multiple(m: &mut [Vec<BigInt>], target: usize, src: usize, q: &BigInt) {
    for j in 0..m[src].len() {
        let d = q * &m[src][j];
        m[target][j] -= d;
    }
}

/// A basis of an integer lattice, stored as row vectors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticeBasis {
    pub dim: usize,
    pub vectors: Vec<Vec<BigInt>>,
}

impl LatticeBasis {
    pub fn new(dim: usize, vectors: Vec<Vec<BigInt>>) -> Self {
        assert!(vectors.iter().all(|v| v.len() == dim));
        LatticeBasis { dim, vectors }
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    /// LLL-reduced basis of the same lattice (Lovász constant 3/4) with respect
    /// to the inner product `<x, y> = sum_i w_i^2 x_i y_i`; unit weights when
    /// `weights` is `None`.
    pub fn lll_reduced(&self, weights: Option<&[BigInt]>) -> LatticeBasis {
        let w2: Vec<BigInt> = match weights {
            Some(w) => {
                assert_eq!(w.len(), self.dim);
                w.iter().map(|x| x * x).collect()
            }
            None => vec![BigInt::one(); self.dim],
        };
        let mut b = self.vectors.clone();
        lll(&mut b, &w2);
        LatticeBasis { dim: self.dim, vectors: b }
    }

    /// Whether `v` is an integer combination of the basis vectors.
    pub fn contains(&self, v: &[BigInt]) -> bool {
        if v.iter().all(Zero::is_zero) {
            return true;
        }
        if self.is_empty() {
            return false;
        }
        // Reduce v against the HNF of the basis rows.
        let (h, _) = hnf(&IntMatrix::from_rows(self.vectors.clone(), self.dim));
        let mut rest = v.to_vec();
        for row in h.rows() {
            let Some(j) = row.iter().position(|x| !x.is_zero()) else {
                break;
            };
            let (q, r) = rest[j].div_rem(&row[j]);
            if !r.is_zero() {
                return false;
            }
            for (x, y) in rest.iter_mut().zip(row) {
                *x -= &q * y;
            }
        }
        rest.iter().all(Zero::is_zero)
    }

    /// Whether both bases generate the same lattice.
    pub fn same_lattice(&self, other: &LatticeBasis) -> bool {
        self.dim == other.dim
            && self.len() == other.len()
            && self.vectors.iter().all(|v| other.contains(v))
            && other.vectors.iter().all(|v| self.contains(v))
    }
}

/// Basis of the integer kernel lattice `{q in Z^c : A q = 0}`, read off the rows
/// of the unimodular transform that clear the Hermite form of `A^T`.
pub fn kernel_lattice(a: &IntMatrix) -> LatticeBasis {
    let (h, u) = hnf(&a.transpose());
    let vectors = (0..h.nrows()).filter(|&i| h.row(i).iter().all(Zero::is_zero)).map(|i| u.row(i).to_vec()).collect();
    LatticeBasis::new(a.ncols(), vectors)
}

fn winner(x: &[BigInt], y: &[BigInt], w2: &[BigInt]) -> BigInt {
    x.iter().zip(y).zip(w2).map(|((a, b), w)| a * b * w).sum()
}

fn gram_schmidt(b: &[Vec<BigInt>], w2: &[BigInt]) -> (Vec<Vec<BigRational>>, Vec<BigRational>) {
    let n = b.len();
    let gram: Vec<Vec<BigRational>> =
        (0..n).map(|i| (0..n).map(|j| BigRational::from_integer(winner(&b[i], &b[j], w2))).collect()).collect();
    let mut mu = vec![vec![BigRational::zero(); n]; n];
    let mut bn = vec![BigRational::zero(); n];
    for i in 0..n {
        for j in 0..i {
            let mut s = gram[i][j].clone();
            for l in 0..j {
                s -= &mu[j][l] * &mu[i][l] * &bn[l];
            }
            mu[i][j] = s / &bn[j];
        }
        let mut s = gram[i][i].clone();
        for l in 0..i {
            s -= &mu[i][l] * &mu[i][l] * &bn[l];
        }
        bn[i] = s;
        mu[i][i] = BigRational::one();
    }
    (mu, bn)
}

pub(crate) fn round_rational(x: &BigRational) -> BigInt {
    (x + BigRational::new(1.into(), 2.into())).floor().to_integer()
}

fn lll(b: &mut [Vec<BigInt>], w2: &[BigInt]) {
    let n = b.len();
    if n < 2 {
        return;
    }
    let delta = BigRational::new(3.into(), 4.into());
    let (mut mu, mut bn) = gram_schmidt(b, w2);
    let mut k = 1;
    while k < n {
        for j in (0..k).rev() {
            let q = round_rational(&mu[k][j]);
            if q.is_zero() {
                continue;
            }
            let (lo, hi) = b.split_at_mut(k);
            for (x, y) in hi[0].iter_mut().zip(&lo[j]) {
                *x -= &q * y;
            }
            let qr = BigRational::from_integer(q);
            let (mlo, mhi) = mu.split_at_mut(k);
            for (x, y) in mhi[0][..j].iter_mut().zip(&mlo[j][..j]) {
                *x -= &qr * y;
            }
            mu[k][j] -= &qr;
        }
        let lhs = bn[k].clone();
        let rhs = (&delta - &mu[k][k - 1] * &mu[k][k - 1]) * &bn[k - 1];
        if lhs >= rhs {
            k += 1;
        } else {
            b.swap(k, k - 1);
            (mu, bn) = gram_schmidt(b, w2);
            k = (k - 1).max(1);
        }
    }
}

pub(crate) fn gram_schmidt_weighted(b: &[Vec<BigInt>], w2: &[BigInt]) -> (Vec<Vec<BigRational>>, Vec<BigRational>) {
    gram_schmidt(b, w2)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bi(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| x.into()).collect()
    }

    #[test]
    fn rank_identity_and_zero() {
        assert_eq!(rank_exact(&IntMatrix::identity(4)), 4);
        assert_eq!(rank_exact(&IntMatrix::zeros(3, 5)), 0);
        assert_eq!(rank_exact(&IntMatrix::from_i64(&[&[1, 2], &[2, 4]])), 1);
    }

    #[test]
    fn rank_skips_empty_columns() {
        let a = IntMatrix::from_i64(&[&[0, 1, 2], &[0, 2, 5], &[0, 3, 7]]);
        assert_eq!(rank_exact(&a), 2);
    }

    #[test]
    fn hnf_small() {
        let a = IntMatrix::from_i64(&[&[2, 4], &[1, 3]]);
        let (h, u) = hnf(&a);
        assert_eq!(u.mul(&a), h);
        assert_eq!(h, IntMatrix::from_i64(&[&[1, 1], &[0, 2]]));
    }

    #[test]
    fn hnf_zero_and_identity() {
        let z = IntMatrix::zeros(2, 3);
        let (h, u) = hnf(&z);
        assert!(h.is_zero());
        assert_eq!(u, IntMatrix::identity(2));
        let i = IntMatrix::identity(3);
        assert_eq!(hnf(&i), (i.clone(), i));
    }

    #[test]
    fn kernel_of_u1_three_sites() {
        let s = IntMatrix::from_i64(&[&[1, 2, 1, 0], &[0, 1, 2, 1]]);
        let k = kernel_lattice(&s);
        let expected = LatticeBasis::new(4, vec![bi(&[1, 0, -1, 2]), bi(&[0, 1, -2, 3])]);
        assert!(k.same_lattice(&expected));
    }

    #[test]
    fn lll_preserves_lattice() {
        let b = LatticeBasis::new(3, vec![bi(&[1, 1, 1]), bi(&[-1, 0, 2]), bi(&[3, 5, 6])]);
        let r = b.lll_reduced(None);
        assert!(r.same_lattice(&b));
        let w = bi(&[1, 10, 100]);
        assert!(b.lll_reduced(Some(&w)).same_lattice(&b));
    }
}
