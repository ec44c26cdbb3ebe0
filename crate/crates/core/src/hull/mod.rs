//! The Beneath-and-Beyond algorithm.
//!
//! Points are placed one at a time. A point beyond some facets of the
//! current polytope `P_k` is joined to every boundary cell of the placing
//! triangulation lying in a violated facet; the boundary is then repaired
//! around the horizon, with new boundary cells grouped into facets by their
//! supporting hyperplane. Violated facets are found by a scan for one
//! violated facet followed by breadth-first search through the dual graph.
//!
//! [`convex_hull`] wraps the engine with dimension reduction and returns the
//! facets, vertices, placing triangulation and operation counts.

mod order;
mod state;
mod stats;

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;

pub use order::InsertionOrder;
pub use state::{BoundaryCell, Facet, FacetId, HullState, Placement};
pub use stats::{HullStats, StepRecord};

use crate::arith::{gauss_rank, solve_linear, Matrix, Scalar, Solution, Vector};
use crate::geometry::{
    project_to_span, Embedding, Halfspace, Point, Polytope, Triangulation,
};
use crate::{Error, Result};

/// Output of [`convex_hull`].
#[derive(Clone, Debug)]
pub struct Hull {
    pub polytope: Polytope,
    /// Placing triangulation over the projected points (see `embedding`);
    /// point indices are those of the input.
    pub triangulation: Triangulation,
    pub stats: HullStats,
    pub embedding: Embedding,
}

/// Convex hull of `points` by Beneath-and-Beyond with the given insertion
/// order.
///
/// Lower-dimensional input is projected onto its affine hull, processed
/// there, and the facets are lifted back; the affine hull equations are
/// reported separately. Duplicates and interior points are allowed.
pub fn convex_hull(points: &[Point], order: InsertionOrder) -> Result<Hull> {
    let perm = order.permutation(points);
    let (projected, embedding) = project_to_span(points)?;
    let dim = embedding.dim();
    let mut state = HullState::initial_simplex(projected, &perm)?;
    state.run()?;

    let mut facets: Vec<crate::geometry::Facet> = state
        .facets()
        .map(|(_, f)| crate::geometry::Facet {
            halfspace: embedding.lift_halfspace(&f.halfspace),
            incident: f.incident.clone(),
        })
        .collect();
    facets.sort_by(|a, b| a.halfspace.cmp(&b.halfspace));

    let vertex_indices = vertices_from_incidences(&state, points);

    let polytope = Polytope {
        points: points.to_vec(),
        vertex_indices,
        facets,
        affine_hull: embedding.equations().to_vec(),
        dim,
    };
    let triangulation = state.triangulation();
    Ok(Hull { polytope, triangulation, stats: state.stats().clone(), embedding })
}

/// A point is a vertex iff the normals of the facets through it span the
/// whole space; among coincident points only the first is reported.
fn vertices_from_incidences(state: &HullState, original: &[Point]) -> Vec<usize> {
    let dim = state.dim();
    let mut first: BTreeMap<&Point, usize> = BTreeMap::new();
    for (i, p) in original.iter().enumerate() {
        first.entry(p).or_insert(i);
    }
    if dim == 0 {
        return alloc::vec![0];
    }
    let mut through: Vec<Vec<Vector>> = alloc::vec![Vec::new(); original.len()];
    for (_, f) in state.facets() {
        let normal = f.halfspace.normal();
        for &p in &f.incident {
            through[p].push(normal.clone());
        }
    }
    (0..original.len())
        .filter(|&i| first[&original[i]] == i)
        .filter(|&i| {
            through[i].len() >= dim && {
                let m = Matrix::with_cols(through[i].clone(), dim).expect("uniform");
                gauss_rank(&m).0 == dim
            }
        })
        .collect()
}

/// Facet-defining halfspaces of `conv(points)` read off a triangulation:
/// a codimension-one face contributes its hyperplane iff that hyperplane
/// does not separate the points.
pub fn extract_facets(t: &Triangulation, points: &[Point]) -> Result<BTreeSet<Halfspace>> {
    let hom: Vec<Vec<num_bigint::BigInt>> = points.iter().map(Point::homogeneous).collect();
    let mut out = BTreeSet::new();
    for face in t.ridge_counts().into_keys() {
        let rows: Vec<&[num_bigint::BigInt]> = face.iter().map(|&v| hom[v].as_slice()).collect();
        let plane = hyperplane_through_unoriented(&rows, t.dim() + 1)?;
        let plane = match hom.iter().map(|h| plane.sign_homogeneous(h)).find(|&s| s != 0) {
            Some(s) if s < 0 => plane.flipped(),
            Some(_) => plane,
            None => return Err(Error::Degenerate),
        };
        if hom.iter().all(|h| plane.sign_homogeneous(h) >= 0) {
            out.insert(plane);
        }
    }
    Ok(out)
}

fn hyperplane_through_unoriented(rows: &[&[num_bigint::BigInt]], cols: usize) -> Result<Halfspace> {
    let owned: Vec<Vec<num_bigint::BigInt>> = rows.iter().map(|r| r.to_vec()).collect();
    let mut ker = crate::arith::integer_kernel(&owned, cols);
    if ker.len() != 1 {
        return Err(Error::Degenerate);
    }
    Halfspace::from_integers(ker.pop().expect("one vector"))
}

/// Affinely independent points of a placing-triangulation cell containing
/// `p`, with barycentric coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Caratheodory {
    pub indices: Vec<usize>,
    pub barycentric: Vec<Scalar>,
}

/// Locates `p` in the placing triangulation of `conv(points)` (input order).
/// Fails with a violated facet or equation as witness when `p` is outside.
pub fn caratheodory(points: &[Point], p: &Point) -> Result<Caratheodory> {
    let hull = convex_hull(points, InsertionOrder::Given)?;
    if p.dim() != hull.embedding.ambient_dim() {
        return Err(Error::DimensionMismatch { expected: hull.embedding.ambient_dim(), found: p.dim() });
    }
    for e in &hull.polytope.affine_hull {
        let v = e.evaluate(p)?;
        if !v.is_zero() {
            let witness = if v.is_negative() { e.clone() } else { e.flipped() };
            return Err(Error::OutsideHull { witness });
        }
    }
    for f in &hull.polytope.facets {
        if f.halfspace.evaluate(p)?.is_negative() {
            return Err(Error::OutsideHull { witness: f.halfspace.clone() });
        }
    }
    let y = hull.embedding.project(p);
    let t = &hull.triangulation;
    let dim = t.dim();
    for cell in t.cells() {
        // sum_i l_i v_i = y, sum_i l_i = 1
        let verts = cell.points(t.points());
        let mut rows = Vec::with_capacity(dim + 1);
        for j in 0..dim {
            rows.push(verts.iter().map(|v| v[j].clone()).collect::<Vector>());
        }
        rows.push(Vector::new(alloc::vec![Scalar::one(); dim + 1]));
        let a = Matrix::with_cols(rows, dim + 1)?;
        let mut rhs: Vec<Scalar> = y.iter().cloned().collect();
        rhs.push(Scalar::one());
        let Solution::Unique(lambda) = solve_linear(&a, &Vector::new(rhs))? else {
            return Err(Error::Degenerate);
        };
        if lambda.iter().all(|l| !l.is_negative()) {
            return Ok(Caratheodory { indices: cell.vertices().to_vec(), barycentric: lambda.into_inner() });
        }
    }
    Err(Error::Inconsistent(alloc::string::String::from("no cell contains the point")))
}
