//! Independent, deliberately naive checks: exhaustive facet enumeration,
//! face lattices from incidences, triangulation validation and volumes.
//!
//! Nothing here uses the incremental engine except [`hull_volume`], which
//! runs it under a lexicographic order to get a second, independent
//! triangulation.

use alloc::collections::{BTreeMap, BTreeSet, VecDeque};
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use num_bigint::BigInt;

use crate::arith::{integer_kernel, Scalar};
use crate::geometry::{affine_basis, project_to_span, AffineSpan, Halfspace, Point, Polytope, Triangulation};
use crate::hull::{convex_hull, InsertionOrder};
use crate::{Error, Result};

/// Upper limit on the number of point subsets [`brute_force_hull`] will
/// examine.
pub const MAX_SUBSETS: u128 = 5_000_000;

fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i as u128 + 1))
}

/// Lexicographic successor of a `k`-combination of `0..n`.
fn next_combination(c: &mut [usize], n: usize) -> bool {
    let k = c.len();
    for i in (0..k).rev() {
        if c[i] < n - k + i {
            c[i] += 1;
            for j in i + 1..k {
                c[j] = c[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// All facet-defining halfspaces of a full-dimensional point set, found by
/// testing the hyperplane of every affinely independent `d`-subset for
/// whether it separates the points.
pub fn brute_force_hull(points: &[Point]) -> Result<Vec<Halfspace>> {
    let (dim, _) = affine_basis(points)?;
    let d = points[0].dim();
    if dim < d || d == 0 {
        return Err(Error::NotFullDimensional { dim, ambient: d });
    }
    let subsets = binomial(points.len(), d);
    if subsets > MAX_SUBSETS {
        return Err(Error::TooLarge(format!("{subsets} subsets of size {d} from {} points", points.len())));
    }
    let hom: Vec<Vec<BigInt>> = points.iter().map(Point::homogeneous).collect();
    let mut found = BTreeSet::new();
    let mut c: Vec<usize> = (0..d).collect();
    loop {
        let rows: Vec<Vec<BigInt>> = c.iter().map(|&i| hom[i].clone()).collect();
        let mut ker = integer_kernel(&rows, d + 1);
        if ker.len() == 1 {
            if let Ok(h) = Halfspace::from_integers(ker.pop().expect("one vector")) {
                let signs: Vec<i8> = hom.iter().map(|p| h.sign_homogeneous(p)).collect();
                let neg = signs.iter().any(|&s| s < 0);
                let pos = signs.iter().any(|&s| s > 0);
                match (neg, pos) {
                    (false, true) => {
                        found.insert(h);
                    }
                    (true, false) => {
                        found.insert(h.flipped());
                    }
                    _ => {}
                }
            }
        }
        if !next_combination(&mut c, points.len()) {
            break;
        }
    }
    Ok(found.into_iter().collect())
}

/// Small fixed-width bit set over vertex positions.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
struct Bits(Vec<u64>);

impl Bits {
    fn empty(n: usize) -> Self {
        Bits(alloc::vec![0; n.div_ceil(64)])
    }

    fn set(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }

    fn get(&self, i: usize) -> bool {
        self.0[i / 64] >> (i % 64) & 1 == 1
    }

    fn and(&self, other: &Bits) -> Bits {
        Bits(self.0.iter().zip(&other.0).map(|(a, b)| a & b).collect())
    }

    fn is_empty(&self) -> bool {
        self.0.iter().all(|&w| w == 0)
    }

    fn count(&self) -> usize {
        self.0.iter().map(|w| w.count_ones() as usize).sum()
    }

    fn ones(&self, n: usize) -> impl Iterator<Item = usize> + '_ {
        (0..n).filter(move |&i| self.get(i))
    }
}

/// Facet–vertex incidences: `rows[f][v]` is set iff vertex `v` lies on
/// facet `f`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IncidenceMatrix {
    rows: Vec<Bits>,
    n_vertices: usize,
}

impl IncidenceMatrix {
    /// Fails on duplicate rows.
    pub fn new(rows: &[Vec<bool>], n_vertices: usize) -> Result<Self> {
        let mut out = Vec::with_capacity(rows.len());
        for (f, r) in rows.iter().enumerate() {
            if r.len() != n_vertices {
                return Err(Error::Ragged { row: f, expected: n_vertices, found: r.len() });
            }
            let mut b = Bits::empty(n_vertices);
            for (v, &on) in r.iter().enumerate() {
                if on {
                    b.set(v);
                }
            }
            out.push(b);
        }
        let distinct: BTreeSet<&Bits> = out.iter().collect();
        if distinct.len() != out.len() {
            return Err(Error::Inconsistent(String::from("duplicate facet rows")));
        }
        Ok(IncidenceMatrix { rows: out, n_vertices })
    }

    /// Rows are the polytope's facets, columns its vertices in
    /// `vertex_indices` order.
    pub fn from_polytope(p: &Polytope) -> Result<Self> {
        let rows: Vec<Vec<bool>> = p
            .facets
            .iter()
            .map(|f| p.vertex_indices.iter().map(|v| f.incident.binary_search(v).is_ok()).collect())
            .collect();
        IncidenceMatrix::new(&rows, p.vertex_indices.len())
    }

    pub fn n_facets(&self) -> usize {
        self.rows.len()
    }

    pub fn n_vertices(&self) -> usize {
        self.n_vertices
    }

    pub fn get(&self, facet: usize, vertex: usize) -> bool {
        self.rows[facet].get(vertex)
    }

    /// Number of vertices on each facet.
    pub fn row_counts(&self) -> Vec<usize> {
        self.rows.iter().map(Bits::count).collect()
    }
}

fn affine_dim(points: &[Point], set: &Bits, n: usize) -> usize {
    let mut ones = set.ones(n);
    let Some(first) = ones.next() else { return 0 };
    let mut span = AffineSpan::new(points[first].clone());
    for i in ones {
        span.try_add(&points[i]);
    }
    span.dim()
}

/// f-vector `(f_0, .., f_{dim-1})` of the polytope with incidences `inc`
/// and vertex coordinates `vertices` (in column order).
///
/// Proper faces are the nonempty intersections of facet vertex sets; the
/// dimension of each is its affine rank.
pub fn enumerate_faces(inc: &IncidenceMatrix, vertices: &[Point], dim: usize) -> Result<Vec<usize>> {
    let n = inc.n_vertices;
    if vertices.len() != n {
        return Err(Error::DimensionMismatch { expected: n, found: vertices.len() });
    }
    if dim == 0 {
        return Ok(Vec::new());
    }
    let mut faces: BTreeSet<Bits> = inc.rows.iter().cloned().collect();
    let mut queue: VecDeque<Bits> = faces.iter().cloned().collect();
    while let Some(face) = queue.pop_front() {
        for row in &inc.rows {
            let g = face.and(row);
            if !g.is_empty() && !faces.contains(&g) {
                faces.insert(g.clone());
                queue.push_back(g);
            }
        }
    }
    let mut f = alloc::vec![0usize; dim];
    for face in &faces {
        let k = affine_dim(vertices, face, n);
        if k >= dim {
            return Err(Error::Inconsistent(format!("proper face of dimension {k} in a {dim}-polytope")));
        }
        f[k] += 1;
    }
    for (i, row) in inc.rows.iter().enumerate() {
        if affine_dim(vertices, row, n) + 1 != dim {
            return Err(Error::Inconsistent(format!("facet {i} is not of dimension {}", dim - 1)));
        }
    }
    if f[0] != n {
        return Err(Error::Inconsistent(format!("{} vertex faces for {n} vertices", f[0])));
    }
    Ok(f)
}

/// Outcome of [`validate_triangulation`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValidationReport {
    /// Sum of the cell volumes.
    pub volume_total: Scalar,
    /// Volume of the hull from an independent (lexicographic) placing
    /// triangulation.
    pub hull_volume: Scalar,
    /// Number of maximal cells containing each codimension-one face, as
    /// `count -> number of faces`.
    pub ridge_histogram: BTreeMap<usize, usize>,
    /// Every cell has positive volume.
    pub cells_ok: bool,
    /// Every codimension-one face is interior (two cells) or lies in exactly
    /// one facet (one cell).
    pub boundary_ok: bool,
    /// Volumes agree, so the cells cover the polytope without overlap.
    pub cover_ok: bool,
    /// Every cell vertex is a vertex of the polytope. Placing
    /// triangulations of points not in convex position legitimately use
    /// points that later became interior, so this flag is informational.
    pub vertices_ok: bool,
    pub mismatches: Vec<String>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.cells_ok && self.boundary_ok && self.cover_ok
    }
}

/// Checks `t` against `p`; cell indices refer to `p.points`, and `t`'s
/// coordinates are those of the projection onto the affine hull.
pub fn validate_triangulation(t: &Triangulation, p: &Polytope) -> Result<ValidationReport> {
    if t.points().len() != p.points.len() {
        return Err(Error::DimensionMismatch { expected: p.points.len(), found: t.points().len() });
    }
    if t.dim() != p.dim {
        return Err(Error::DimensionMismatch { expected: p.dim, found: t.dim() });
    }
    let mut mismatches = Vec::new();

    let mut cells_ok = true;
    let mut volume_total = Scalar::zero();
    for (i, c) in t.cells().iter().enumerate() {
        let v = t.cell_volume(c)?;
        if !v.is_positive() {
            cells_ok = false;
            mismatches.push(format!("cell {i} {:?} is degenerate", c.vertices()));
        }
        volume_total += v;
    }

    let counts = t.ridge_counts();
    let mut ridge_histogram = BTreeMap::new();
    let mut boundary_ok = true;
    for (face, &n) in &counts {
        *ridge_histogram.entry(n).or_insert(0) += 1;
        match n {
            2 => {}
            1 => {
                let holders = p
                    .facets
                    .iter()
                    .filter(|f| face.iter().all(|&v| f.halfspace.evaluate(&p.points[v]).is_ok_and(|x| x.is_zero())))
                    .count();
                if holders != 1 {
                    boundary_ok = false;
                    mismatches.push(format!("boundary face {face:?} lies in {holders} facets"));
                }
            }
            _ => {
                boundary_ok = false;
                mismatches.push(format!("face {face:?} shared by {n} cells"));
            }
        }
    }

    let hull_volume = projected_hull_volume(&p.points)?;
    let cover_ok = hull_volume == volume_total;
    if !cover_ok {
        mismatches.push(format!("cell volumes sum to {volume_total}, hull volume is {hull_volume}"));
    }

    let vertex_set: BTreeSet<usize> = p.vertex_indices.iter().copied().collect();
    let vertices_ok = t.vertices().iter().all(|v| vertex_set.contains(v));
    if !vertices_ok {
        mismatches.push(String::from("triangulation uses points that are not vertices"));
    }

    Ok(ValidationReport {
        volume_total,
        hull_volume,
        ridge_histogram,
        cells_ok,
        boundary_ok,
        cover_ok,
        vertices_ok,
        mismatches,
    })
}

fn projected_hull_volume(points: &[Point]) -> Result<Scalar> {
    let (projected, _) = project_to_span(points)?;
    convex_hull(&projected, InsertionOrder::Lexicographic)?.triangulation.volume()
}

/// Volume of `conv(points)` from the placing triangulation under
/// lexicographic insertion.
pub fn hull_volume(points: &[Point]) -> Result<Scalar> {
    let (dim, _) = affine_basis(points)?;
    let d = points[0].dim();
    if dim < d {
        return Err(Error::NotFullDimensional { dim, ambient: d });
    }
    convex_hull(points, InsertionOrder::Lexicographic)?.triangulation.volume()
}
