use alloc::vec::Vec;

use super::{check_dims, AffineSpan, Halfspace, Point};
use crate::arith::{Scalar, Vector};
use crate::Result;

/// Affine isomorphism between the affine hull of a point set in `Q^d` and
/// `Q^k`, given by keeping `k` coordinates.
///
/// The kept coordinates are the pivot columns of the direction space, which
/// depend only on the affine hull and not on the order of the points.
#[derive(Clone, Debug)]
pub struct Embedding {
    ambient: usize,
    origin: Point,
    directions: Vec<Vector>,
    kept: Vec<usize>,
    equations: Vec<Halfspace>,
}

impl Embedding {
    fn from_span(span: &AffineSpan, ambient: usize) -> Self {
        let kept = span.pivots().to_vec();
        let origin = span.origin().clone();
        let directions = span.rows().to_vec();
        let equations = (0..ambient)
            .filter(|i| !kept.contains(i))
            .map(|i| {
                // x_i - sum_k r_k[i] x_{J_k} = p0_i - sum_k r_k[i] p0_{J_k}
                let mut normal = Vector::zeros(ambient);
                normal[i] = Scalar::one();
                let mut offset = -&origin[i];
                for (r, &j) in directions.iter().zip(&kept) {
                    normal[j] = -&r[i];
                    offset += &r[i] * &origin[j];
                }
                Halfspace::new(offset, normal).expect("x_i has coefficient one").as_equation()
            })
            .collect();
        Embedding { ambient, origin, directions, kept, equations }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.kept.len()
    }

    pub fn is_identity(&self) -> bool {
        self.kept.len() == self.ambient
    }

    /// Coordinates retained by the projection.
    pub fn kept_coordinates(&self) -> &[usize] {
        &self.kept
    }

    /// Equations `a0 + a·x = 0` cutting out the affine hull.
    pub fn equations(&self) -> &[Halfspace] {
        &self.equations
    }

    pub fn project(&self, p: &Point) -> Point {
        Point::new(self.kept.iter().map(|&j| p[j].clone()).collect())
    }

    pub fn lift_point(&self, y: &Point) -> Point {
        let mut x = self.origin.coords().clone();
        for ((r, &j), yk) in self.directions.iter().zip(&self.kept).zip(y.iter()) {
            let t = yk - &self.origin[j];
            x = x.add(&r.scale(&t));
        }
        Point::from_vector(x)
    }

    /// Lifts a halfspace on the projected coordinates to one on `Q^d` that
    /// agrees with it on the affine hull.
    pub fn lift_halfspace(&self, h: &Halfspace) -> Halfspace {
        if self.is_identity() {
            return h.clone();
        }
        let mut coeffs = alloc::vec![num_bigint::BigInt::from(0); self.ambient + 1];
        coeffs[0] = h.coefficients()[0].clone();
        for (k, &j) in self.kept.iter().enumerate() {
            coeffs[j + 1] = h.coefficients()[k + 1].clone();
        }
        Halfspace::from_integers(coeffs).expect("nonzero projected normal")
    }
}

/// Projects `points` onto a coordinate subspace on which the projection is
/// injective over their affine hull.
pub fn project_to_span(points: &[Point]) -> Result<(Vec<Point>, Embedding)> {
    let ambient = check_dims(points)?;
    let mut span = AffineSpan::new(points[0].clone());
    for p in &points[1..] {
        span.try_add(p);
    }
    let emb = Embedding::from_span(&span, ambient);
    let projected = points.iter().map(|p| emb.project(p)).collect();
    Ok((projected, emb))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::hyperplane_through;
    use alloc::vec;

    #[test]
    fn full_dimensional_is_identity() {
        let pts = [Point::from_ints(&[0, 0]), Point::from_ints(&[1, 0]), Point::from_ints(&[0, 1])];
        let (proj, emb) = project_to_span(&pts).unwrap();
        assert!(emb.is_identity());
        assert_eq!(proj, pts.to_vec());
        assert!(emb.equations().is_empty());
    }

    #[test]
    fn single_point_has_dimension_zero() {
        let pts = vec![Point::from_ints(&[3, -1]); 4];
        let (proj, emb) = project_to_span(&pts).unwrap();
        assert_eq!(emb.dim(), 0);
        assert!(proj.iter().all(|p| p.dim() == 0));
        assert_eq!(emb.equations().len(), 2);
        assert_eq!(emb.lift_point(&proj[0]), pts[0]);
    }

    #[test]
    fn square_in_plane_z_equals_one() {
        let pts = [
            Point::from_ints(&[0, 0, 1]),
            Point::from_ints(&[1, 0, 1]),
            Point::from_ints(&[1, 1, 1]),
            Point::from_ints(&[0, 1, 1]),
        ];
        let (proj, emb) = project_to_span(&pts).unwrap();
        assert_eq!(emb.dim(), 2);
        assert_eq!(emb.kept_coordinates(), &[0, 1]);
        assert_eq!(emb.equations(), &[Halfspace::from_ints(&[-1, 0, 0, 1]).unwrap()]);
        let center = Point::new(vec!["1/2".parse().unwrap(), "1/2".parse().unwrap()]);
        for i in 0..4 {
            let edge = [proj[i].clone(), proj[(i + 1) % 4].clone()];
            let h = hyperplane_through(&edge, &center).unwrap();
            let lifted = emb.lift_halfspace(&h);
            for (p, q) in pts.iter().zip(&proj) {
                assert_eq!(lifted.evaluate(p).unwrap(), h.evaluate(q).unwrap());
            }
            assert!(lifted.evaluate(&pts[i]).unwrap().is_zero());
        }
        for (p, q) in pts.iter().zip(&proj) {
            assert_eq!(&emb.lift_point(q), p);
        }
    }
}
