use alloc::collections::BTreeSet;
use alloc::format;
use alloc::vec::Vec;

use super::{polar, AffineSpan, Halfspace, Point};
use crate::{Error, Result};

/// A facet-defining halfspace together with the indices of all points on
/// its boundary hyperplane.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Facet {
    pub halfspace: Halfspace,
    pub incident: Vec<usize>,
}

/// Combined V- and H-description of `conv(points)`.
#[derive(Clone, Debug)]
pub struct Polytope {
    pub points: Vec<Point>,
    /// Indices of the points that are vertices; among coincident points only
    /// the lowest index is listed.
    pub vertex_indices: Vec<usize>,
    pub facets: Vec<Facet>,
    /// Equations `a0 + a·x = 0` of the affine hull, empty when
    /// full-dimensional.
    pub affine_hull: Vec<Halfspace>,
    pub dim: usize,
}

impl Polytope {
    pub fn ambient_dim(&self) -> usize {
        self.points.first().map_or(0, Point::dim)
    }

    pub fn is_full_dimensional(&self) -> bool {
        self.dim == self.ambient_dim()
    }

    pub fn n_vertices(&self) -> usize {
        self.vertex_indices.len()
    }

    pub fn n_facets(&self) -> usize {
        self.facets.len()
    }

    pub fn halfspaces(&self) -> Vec<Halfspace> {
        self.facets.iter().map(|f| f.halfspace.clone()).collect()
    }

    /// Facet halfspaces as a set, for order-independent comparison.
    pub fn facet_set(&self) -> BTreeSet<Halfspace> {
        self.facets.iter().map(|f| f.halfspace.clone()).collect()
    }

    pub fn vertices(&self) -> Vec<Point> {
        self.vertex_indices.iter().map(|&i| self.points[i].clone()).collect()
    }

    /// Checks that every point satisfies every facet and equation, that the
    /// recorded incidences are exact, and that each facet's incident points
    /// span a hyperplane of the affine hull.
    pub fn check(&self) -> Result<()> {
        for (fi, f) in self.facets.iter().enumerate() {
            let mut on = Vec::new();
            for (i, p) in self.points.iter().enumerate() {
                let v = f.halfspace.evaluate(p)?;
                if v.is_negative() {
                    return Err(Error::Inconsistent(format!("point {i} violates facet {fi}")));
                }
                if v.is_zero() {
                    on.push(i);
                }
            }
            if on != f.incident {
                return Err(Error::Inconsistent(format!("facet {fi} has wrong incidences")));
            }
            let mut span = AffineSpan::new(self.points[on[0]].clone());
            for &i in &on[1..] {
                span.try_add(&self.points[i]);
            }
            if span.dim() + 1 != self.dim {
                return Err(Error::Inconsistent(format!("facet {fi} spans dimension {}", span.dim())));
            }
        }
        for (i, p) in self.points.iter().enumerate() {
            for e in &self.affine_hull {
                if !e.evaluate(p)?.is_zero() {
                    return Err(Error::Inconsistent(format!("point {i} off the affine hull")));
                }
            }
        }
        Ok(())
    }

    /// Vertices of the polar dual with respect to `interior`, one per facet.
    pub fn polar(&self, interior: &Point) -> Result<Vec<Point>> {
        if !self.is_full_dimensional() {
            return Err(Error::NotFullDimensional { dim: self.dim, ambient: self.ambient_dim() });
        }
        polar(&self.halfspaces(), interior)
    }
}
