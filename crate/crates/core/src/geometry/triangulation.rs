use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use super::{simplex_volume, Point};
use crate::arith::Scalar;
use crate::{Error, Result};

/// A simplex given by strictly increasing indices into a point list.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Simplex(Vec<usize>);

impl Simplex {
    /// Sorts the indices; fails on repeated indices.
    pub fn new(mut vertices: Vec<usize>) -> Result<Self> {
        vertices.sort_unstable();
        if vertices.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::Degenerate);
        }
        Ok(Simplex(vertices))
    }

    pub(crate) fn from_sorted(vertices: Vec<usize>) -> Self {
        debug_assert!(vertices.windows(2).all(|w| w[0] < w[1]));
        Simplex(vertices)
    }

    pub fn vertices(&self) -> &[usize] {
        &self.0
    }

    /// Dimension `k` of a `k`-simplex.
    pub fn dim(&self) -> usize {
        self.0.len().saturating_sub(1)
    }

    pub fn contains(&self, v: usize) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    /// The codimension-one faces, each missing one vertex.
    pub fn facets(&self) -> impl Iterator<Item = Vec<usize>> + '_ {
        (0..self.0.len()).map(move |skip| {
            self.0.iter().enumerate().filter(|&(i, _)| i != skip).map(|(_, &v)| v).collect()
        })
    }

    pub fn points(&self, points: &[Point]) -> Vec<Point> {
        self.0.iter().map(|&i| points[i].clone()).collect()
    }
}

/// A pure simplicial complex of `dim`-simplices over a point list in
/// `Q^dim`.
#[derive(Clone, Debug)]
pub struct Triangulation {
    points: Vec<Point>,
    cells: Vec<Simplex>,
    dim: usize,
}

impl Triangulation {
    pub fn new(points: Vec<Point>, cells: Vec<Simplex>, dim: usize) -> Result<Self> {
        for p in &points {
            if p.dim() != dim {
                return Err(Error::DimensionMismatch { expected: dim, found: p.dim() });
            }
        }
        for c in &cells {
            if c.0.len() != dim + 1 {
                return Err(Error::DimensionMismatch { expected: dim + 1, found: c.0.len() });
            }
            if let Some(&bad) = c.0.iter().find(|&&i| i >= points.len()) {
                return Err(Error::Inconsistent(alloc::format!("cell references point {bad}")));
            }
        }
        Ok(Triangulation { points, cells, dim })
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn cells(&self) -> &[Simplex] {
        &self.cells
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Number of maximal cells.
    pub fn size(&self) -> usize {
        self.cells.len()
    }

    /// Points used by at least one cell, ascending.
    pub fn vertices(&self) -> Vec<usize> {
        let mut v: Vec<usize> = self.cells.iter().flat_map(|c| c.0.iter().copied()).collect();
        v.sort_unstable();
        v.dedup();
        v
    }

    /// Number of maximal cells containing point `v`.
    pub fn star_size(&self, v: usize) -> usize {
        self.cells.iter().filter(|c| c.contains(v)).count()
    }

    /// For each codimension-one face, the number of maximal cells containing
    /// it.
    pub fn ridge_counts(&self) -> BTreeMap<Vec<usize>, usize> {
        let mut map = BTreeMap::new();
        for c in &self.cells {
            for f in c.facets() {
                *map.entry(f).or_insert(0) += 1;
            }
        }
        map
    }

    pub fn cell_volume(&self, cell: &Simplex) -> Result<Scalar> {
        simplex_volume(&cell.points(&self.points))
    }

    /// Sum of the cell volumes.
    pub fn volume(&self) -> Result<Scalar> {
        let mut total = Scalar::zero();
        for c in &self.cells {
            total += self.cell_volume(c)?;
        }
        Ok(total)
    }
}
