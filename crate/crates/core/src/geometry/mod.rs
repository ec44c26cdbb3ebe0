//! Points, halfspaces, simplices, triangulations and polytopes, with the
//! basic constructions on them: affine bases, hyperplanes through points,
//! simplex volumes, dimension reduction and polarity.

mod embedding;
mod halfspace;
mod polytope;
mod triangulation;

use alloc::vec::Vec;
use core::fmt;
use core::ops::Deref;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;

pub use embedding::{project_to_span, Embedding};
pub use halfspace::Halfspace;
pub use polytope::{Facet, Polytope};
pub use triangulation::{Simplex, Triangulation};

use crate::arith::{det, integer_kernel, Matrix, Scalar, Vector};
use crate::{Error, Result};

/// A point of `Q^d`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Point(Vector);

impl Point {
    pub fn new(coords: Vec<Scalar>) -> Self {
        Point(Vector::new(coords))
    }

    pub fn from_vector(v: Vector) -> Self {
        Point(v)
    }

    pub fn from_ints(coords: &[i64]) -> Self {
        Point(Vector::from_ints(coords))
    }

    pub fn origin(d: usize) -> Self {
        Point(Vector::zeros(d))
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &Vector {
        &self.0
    }

    pub fn into_vector(self) -> Vector {
        self.0
    }

    /// `(D, D·x)` for the least `D > 0` making every entry integral. The
    /// result is a primitive integer vector.
    pub fn homogeneous(&self) -> Vec<BigInt> {
        let den = self.0.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
        let mut out = Vec::with_capacity(self.dim() + 1);
        out.push(den.clone());
        out.extend(self.0.iter().map(|x| x.numer() * (&den / x.denom())));
        out
    }
}

impl Deref for Point {
    type Target = [Scalar];
    fn deref(&self) -> &[Scalar] {
        &self.0
    }
}

impl fmt::Debug for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{x}")?;
        }
        f.write_str(")")
    }
}

fn check_dims(points: &[Point]) -> Result<usize> {
    let d = points.first().ok_or(Error::Empty)?.dim();
    for p in points {
        if p.dim() != d {
            return Err(Error::DimensionMismatch { expected: d, found: p.dim() });
        }
    }
    Ok(d)
}

/// Incrementally maintained linear span of difference vectors `p - origin`,
/// kept in reduced row echelon form.
#[derive(Clone, Debug)]
pub(crate) struct AffineSpan {
    origin: Point,
    rows: Vec<Vector>,
    pivots: Vec<usize>,
}

impl AffineSpan {
    pub(crate) fn new(origin: Point) -> Self {
        AffineSpan { origin, rows: Vec::new(), pivots: Vec::new() }
    }

    pub(crate) fn dim(&self) -> usize {
        self.rows.len()
    }

    fn reduce(&self, p: &Point) -> Vector {
        let mut v = p.coords().sub(self.origin.coords());
        for (row, &c) in self.rows.iter().zip(&self.pivots) {
            if !v[c].is_zero() {
                let f = v[c].clone();
                v = v.sub(&row.scale(&f));
            }
        }
        v
    }

    /// Adds `p` if it enlarges the span; reports whether it did.
    pub(crate) fn try_add(&mut self, p: &Point) -> bool {
        let v = self.reduce(p);
        let Some(c) = v.iter().position(|x| !x.is_zero()) else { return false };
        let v = v.scale(&v[c].recip().expect("nonzero"));
        for row in &mut self.rows {
            if !row[c].is_zero() {
                let f = row[c].clone();
                *row = row.sub(&v.scale(&f));
            }
        }
        let at = self.pivots.partition_point(|&q| q < c);
        self.pivots.insert(at, c);
        self.rows.insert(at, v);
        true
    }

    pub(crate) fn origin(&self) -> &Point {
        &self.origin
    }

    pub(crate) fn rows(&self) -> &[Vector] {
        &self.rows
    }

    pub(crate) fn pivots(&self) -> &[usize] {
        &self.pivots
    }
}

/// Dimension of the affine hull of `points` and the indices of an affine
/// basis, chosen greedily in input order.
pub fn affine_basis(points: &[Point]) -> Result<(usize, Vec<usize>)> {
    check_dims(points)?;
    let mut span = AffineSpan::new(points[0].clone());
    let mut basis = alloc::vec![0];
    for (i, p) in points.iter().enumerate().skip(1) {
        if span.try_add(p) {
            basis.push(i);
        }
    }
    Ok((span.dim(), basis))
}

/// Oriented hyperplane through `pts` (homogeneous integer rows), positive at
/// `inside`.
pub(crate) fn hyperplane_through_homogeneous(
    pts: &[&[BigInt]],
    inside: &[BigInt],
) -> Result<Halfspace> {
    let cols = inside.len();
    let rows: Vec<Vec<BigInt>> = pts.iter().map(|r| r.to_vec()).collect();
    let mut ker = integer_kernel(&rows, cols);
    if ker.len() != 1 {
        return Err(Error::Degenerate);
    }
    let h = Halfspace::from_integers(ker.pop().expect("one kernel vector"))?;
    match h.sign_homogeneous(inside) {
        0 => Err(Error::OrientationUndefined),
        s if s > 0 => Ok(h),
        _ => Ok(h.flipped()),
    }
}

/// The halfspace whose boundary passes through the `d` affinely independent
/// points `pts` and which contains `inside` in its interior.
pub fn hyperplane_through(pts: &[Point], inside: &Point) -> Result<Halfspace> {
    let d = inside.dim();
    if pts.len() != d {
        return Err(Error::DimensionMismatch { expected: d, found: pts.len() });
    }
    for p in pts {
        if p.dim() != d {
            return Err(Error::DimensionMismatch { expected: d, found: p.dim() });
        }
    }
    let hom: Vec<Vec<BigInt>> = pts.iter().map(Point::homogeneous).collect();
    let rows: Vec<&[BigInt]> = hom.iter().map(Vec::as_slice).collect();
    hyperplane_through_homogeneous(&rows, &inside.homogeneous())
}

/// `a0 + a·p`; the sign says inside (+), on (0) or violating (-).
pub fn evaluate(h: &Halfspace, p: &Point) -> Result<Scalar> {
    h.evaluate(p)
}

fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

/// Euclidean volume of the simplex spanned by `d + 1` points of `Q^d`.
pub fn simplex_volume(pts: &[Point]) -> Result<Scalar> {
    let d = check_dims(pts)?;
    if pts.len() != d + 1 {
        return Err(Error::DimensionMismatch { expected: d + 1, found: pts.len() });
    }
    let base = pts[0].coords();
    let edges = Matrix::with_cols(pts[1..].iter().map(|p| p.coords().sub(base)).collect(), d)?;
    let v = det(&edges)?.abs();
    v.checked_div(&Scalar::from_integer(factorial(d)))
}

/// Vertices of the polar dual of the polytope `{x : facets(x) >= 0}` with
/// respect to `interior`: one point per facet, in facet order.
///
/// After translating `interior` to the origin a facet reads `b0 + a·y >= 0`
/// with `b0 > 0`, i.e. `(-a / b0)·y <= 1`, and `-a / b0` is its polar point.
pub fn polar(facets: &[Halfspace], interior: &Point) -> Result<Vec<Point>> {
    let d = interior.dim();
    let normals: Vec<Vector> = facets.iter().map(Halfspace::normal).collect();
    for n in &normals {
        if n.len() != d {
            return Err(Error::DimensionMismatch { expected: d, found: n.len() });
        }
    }
    let (rank, _) = crate::arith::gauss_rank(&Matrix::with_cols(normals.clone(), d)?);
    if rank < d {
        return Err(Error::NotFullDimensional { dim: rank, ambient: d });
    }
    facets
        .iter()
        .zip(normals)
        .enumerate()
        .map(|(i, (h, n))| {
            let b0 = h.evaluate(interior)?;
            if !b0.is_positive() {
                return Err(Error::NotInterior { facet: i, value: alloc::format!("{b0}") });
            }
            let k = -b0.recip()?;
            Ok(Point::from_vector(n.scale(&k)))
        })
        .collect()
}
