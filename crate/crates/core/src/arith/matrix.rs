use alloc::vec::Vec;
use core::ops::{Deref, Index, IndexMut};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::Scalar;
use crate::{Error, Result};

/// A fixed-length list of exact scalars.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Vector(Vec<Scalar>);

impl Vector {
    pub fn new(entries: Vec<Scalar>) -> Self {
        Vector(entries)
    }

    pub fn zeros(len: usize) -> Self {
        Vector(alloc::vec![Scalar::zero(); len])
    }

    /// The `i`-th standard basis vector of length `len`.
    pub fn unit(len: usize, i: usize) -> Self {
        let mut v = Vector::zeros(len);
        v.0[i] = Scalar::one();
        v
    }

    pub fn from_ints(entries: &[i64]) -> Self {
        Vector(entries.iter().map(|&x| Scalar::from(x)).collect())
    }

    pub fn as_slice(&self) -> &[Scalar] {
        &self.0
    }

    pub fn into_inner(self) -> Vec<Scalar> {
        self.0
    }

    pub fn dot(&self, other: &Vector) -> Result<Scalar> {
        if self.len() != other.len() {
            return Err(Error::DimensionMismatch { expected: self.len(), found: other.len() });
        }
        Ok(self.0.iter().zip(&other.0).map(|(a, b)| a * b).sum())
    }

    pub fn sub(&self, other: &Vector) -> Vector {
        Vector(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn add(&self, other: &Vector) -> Vector {
        Vector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn scale(&self, k: &Scalar) -> Vector {
        Vector(self.0.iter().map(|a| a * k).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Scalar::is_zero)
    }
}

impl Deref for Vector {
    type Target = [Scalar];
    fn deref(&self) -> &[Scalar] {
        &self.0
    }
}

impl Index<usize> for Vector {
    type Output = Scalar;
    fn index(&self, i: usize) -> &Scalar {
        &self.0[i]
    }
}

impl IndexMut<usize> for Vector {
    fn index_mut(&mut self, i: usize) -> &mut Scalar {
        &mut self.0[i]
    }
}

impl FromIterator<Scalar> for Vector {
    fn from_iter<I: IntoIterator<Item = Scalar>>(iter: I) -> Self {
        Vector(iter.into_iter().collect())
    }
}

/// A rectangular matrix of exact scalars, stored by rows.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: Vec<Vector>,
    cols: usize,
}

impl Matrix {
    /// Fails if the rows have different lengths. An empty row list gives a
    /// 0×0 matrix.
    pub fn from_rows(rows: Vec<Vector>) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.len());
        for (i, r) in rows.iter().enumerate() {
            if r.len() != cols {
                return Err(Error::Ragged { row: i, expected: cols, found: r.len() });
            }
        }
        Ok(Matrix { rows, cols })
    }

    pub fn with_cols(rows: Vec<Vector>, cols: usize) -> Result<Self> {
        for (i, r) in rows.iter().enumerate() {
            if r.len() != cols {
                return Err(Error::Ragged { row: i, expected: cols, found: r.len() });
            }
        }
        Ok(Matrix { rows, cols })
    }

    pub fn from_ints(rows: &[&[i64]]) -> Result<Self> {
        Matrix::from_rows(rows.iter().map(|r| Vector::from_ints(r)).collect())
    }

    pub fn identity(n: usize) -> Self {
        Matrix { rows: (0..n).map(|i| Vector::unit(n, i)).collect(), cols: n }
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn rows(&self) -> &[Vector] {
        &self.rows
    }

    pub fn row(&self, i: usize) -> &Vector {
        &self.rows[i]
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.rows[i][j]
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        self.rows.swap(a, b);
    }

    pub fn scale_row(&mut self, i: usize, k: &Scalar) {
        self.rows[i] = self.rows[i].scale(k);
    }

    pub fn mul_vec(&self, x: &Vector) -> Result<Vector> {
        if x.len() != self.cols {
            return Err(Error::DimensionMismatch { expected: self.cols, found: x.len() });
        }
        self.rows.iter().map(|r| r.dot(x)).collect()
    }

    fn require_square(&self) -> Result<usize> {
        if self.nrows() != self.cols {
            return Err(Error::NotSquare { rows: self.nrows(), cols: self.cols });
        }
        Ok(self.cols)
    }
}

/// Row-reduced echelon form in place. Returns the pivot columns. Among the
/// candidate rows of a column the entry with the smallest bit size is used.
fn rref(rows: &mut [Vector], cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows.len() {
            break;
        }
        let best = (r..rows.len())
            .filter(|&i| !rows[i][c].is_zero())
            .min_by_key(|&i| rows[i][c].bit_size());
        let Some(p) = best else { continue };
        rows.swap(r, p);
        let inv = rows[r][c].recip().expect("pivot is nonzero");
        rows[r] = rows[r].scale(&inv);
        for i in 0..rows.len() {
            if i == r || rows[i][c].is_zero() {
                continue;
            }
            let f = rows[i][c].clone();
            for j in c..cols {
                let t = &f * &rows[r][j];
                rows[i][j] -= t;
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Rank and pivot columns (the lexicographically first independent column
/// set) of `m`.
pub fn gauss_rank(m: &Matrix) -> (usize, Vec<usize>) {
    let mut rows = m.rows.clone();
    let pivots = rref(&mut rows, m.cols);
    (pivots.len(), pivots)
}

/// Reduced row echelon form of `m` together with its pivot columns; zero
/// rows are dropped.
pub fn row_echelon(m: &Matrix) -> (Vec<Vector>, Vec<usize>) {
    let mut rows = m.rows.clone();
    let pivots = rref(&mut rows, m.cols);
    rows.truncate(pivots.len());
    (rows, pivots)
}

/// Clears denominators row by row. Returns the integer rows and the product
/// of the row multipliers.
fn integerize(m: &Matrix) -> (Vec<Vec<BigInt>>, BigInt) {
    let mut scale = BigInt::one();
    let rows = m
        .rows
        .iter()
        .map(|r| {
            let l = r.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
            let out = r.iter().map(|x| x.numer() * (&l / x.denom())).collect();
            scale *= &l;
            out
        })
        .collect();
    (rows, scale)
}

/// Fraction-free (Bareiss) elimination on an integer square matrix.
/// Returns the determinant.
pub fn bareiss_det(mut a: Vec<Vec<BigInt>>) -> BigInt {
    let n = a.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut negate = false;
    let mut prev = BigInt::one();
    for k in 0..n {
        let best = (k..n).filter(|&i| !a[i][k].is_zero()).min_by_key(|&i| a[i][k].bits());
        let Some(p) = best else { return BigInt::zero() };
        if p != k {
            a.swap(p, k);
            negate = !negate;
        }
        for i in (k + 1)..n {
            for j in (k + 1)..n {
                let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = v / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    if negate {
        -d
    } else {
        d
    }
}

/// Exact determinant via fraction-free elimination.
pub fn det(m: &Matrix) -> Result<Scalar> {
    m.require_square()?;
    let (rows, scale) = integerize(m);
    Scalar::from_ratio(bareiss_det(rows), scale)
}

pub fn det_sign(m: &Matrix) -> Result<i8> {
    Ok(det(m)?.signum())
}

/// Outcome of [`solve_linear`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Solution {
    Unique(Vector),
    Inconsistent,
    Underdetermined,
}

/// Solves `a · x = b` exactly.
pub fn solve_linear(a: &Matrix, b: &Vector) -> Result<Solution> {
    if b.len() != a.nrows() {
        return Err(Error::DimensionMismatch { expected: a.nrows(), found: b.len() });
    }
    let n = a.ncols();
    let mut rows: Vec<Vector> = a
        .rows
        .iter()
        .zip(b.iter())
        .map(|(r, bi)| r.iter().cloned().chain(core::iter::once(bi.clone())).collect())
        .collect();
    let pivots = rref(&mut rows, n + 1);
    if pivots.last() == Some(&n) {
        return Ok(Solution::Inconsistent);
    }
    if pivots.len() < n {
        return Ok(Solution::Underdetermined);
    }
    Ok(Solution::Unique(rows[..n].iter().map(|r| r[n].clone()).collect()))
}

/// A basis of the right null space of `m`.
pub fn kernel(m: &Matrix) -> Vec<Vector> {
    let n = m.ncols();
    let (rows, pivots) = row_echelon(m);
    let free = (0..n).filter(|c| !pivots.contains(c));
    free.map(|f| {
        let mut v = Vector::zeros(n);
        v[f] = Scalar::one();
        for (r, &p) in rows.iter().zip(&pivots) {
            v[p] = -&r[f];
        }
        v
    })
    .collect()
}

/// Divides out the gcd of the entries. The zero vector is returned unchanged.
pub fn make_primitive(v: &mut [BigInt]) {
    let g = v.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if !g.is_zero() && !g.is_one() {
        for x in v.iter_mut() {
            *x /= &g;
        }
    }
}

/// Scales a rational vector by a positive factor to a primitive integer
/// vector.
pub fn primitive_integer(v: &[Scalar]) -> Vec<BigInt> {
    let l = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let mut out: Vec<BigInt> = v.iter().map(|x| x.numer() * (&l / x.denom())).collect();
    make_primitive(&mut out);
    out
}

/// Null space of an integer matrix, each basis vector primitive. Uses
/// integer Gauss–Jordan elimination with row-content removal, so no
/// rationals are formed.
pub fn integer_kernel(rows: &[Vec<BigInt>], cols: usize) -> Vec<Vec<BigInt>> {
    let mut a: Vec<Vec<BigInt>> = rows.to_vec();
    let mut pivots: Vec<usize> = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == a.len() {
            break;
        }
        let best = (r..a.len()).filter(|&i| !a[i][c].is_zero()).min_by_key(|&i| a[i][c].bits());
        let Some(p) = best else { continue };
        a.swap(r, p);
        for i in 0..a.len() {
            if i == r || a[i][c].is_zero() {
                continue;
            }
            let g = a[r][c].gcd(&a[i][c]);
            let fr = &a[i][c] / &g;
            let fi = &a[r][c] / &g;
            for j in 0..cols {
                let v = &a[i][j] * &fi - &a[r][j] * &fr;
                a[i][j] = v;
            }
            make_primitive(&mut a[i]);
        }
        pivots.push(c);
        r += 1;
    }
    a.truncate(pivots.len());
    let mut basis = Vec::new();
    for f in (0..cols).filter(|c| !pivots.contains(c)) {
        // x_f = L, x_p = -a[row][f] * L / a[row][p]
        let l = a.iter().zip(&pivots).fold(BigInt::one(), |acc, (row, &p)| acc.lcm(&row[p].abs()));
        let mut v = alloc::vec![BigInt::zero(); cols];
        v[f] = l.clone();
        for (row, &p) in a.iter().zip(&pivots) {
            v[p] = -(&row[f] * &l) / &row[p];
        }
        make_primitive(&mut v);
        basis.push(v);
    }
    basis
}
